import random

import pytest

from freesub import _backend, set_backend
from freesub.stallings import fiber_product, fold_from_generators
from freesub.voltage import random_generators, voltage_fiber_product, voltage_fold


def run_all(seed):
    rng = random.Random(seed)
    out = []
    for n in (1, 2, 3):
        ga, gb = random_generators(rng, 2, n), random_generators(rng, 2, n)
        a, b = voltage_fold(ga, 2, n), voltage_fold(gb, 2, n)
        out.append((a, b))
        if a.defect == n and b.defect == n:
            out.append(voltage_fiber_product(a, b))
        pa = fold_from_generators([w for w, _ in ga], 2)
        pb = fold_from_generators([w for w, _ in gb], 2)
        out.append(fiber_product(pa, pb))
    return out


@pytest.mark.skipif(len(_backend.available_backends()) < 2, reason="compiled kernels not built")
def test_backends_agree():
    results = {}
    previous = _backend.current_backend()
    for name in _backend.available_backends():
        set_backend(name)
        results[name] = [run_all(s) for s in range(150)]
    set_backend(previous)
    assert results["python"] == results["cython"]


def test_set_backend_errors():
    with pytest.raises(ValueError):
        set_backend("fortran")


def test_raw_fold_defect(backend):
    k = _backend.kernels
    # two x-loops at the base with voltages 0 and 1 mod 4 fold to defect 1
    n, base, src, tgt, lab, volt, d = k.fold(1, 0, [0, 0], [0, 0], [1, 1], [0, 1], 4, 2)
    assert (n, len(src), d) == (1, 1, 1)


@pytest.mark.parametrize("call", [
    lambda k: k.fold(1, 0, [0], [0], [2], [0], 1, 2),
    lambda k: k.fold(1, 0, [0], [1], [0], [0], 1, 2),
    lambda k: k.prune(2, 0, [0], [-1]),
    lambda k: k.product(2, (1, 0, [0], [0], [5], [0]), (1, 0, [], [], [], []), 1),
])
def test_kernels_reject_bad_edges(backend, call):
    with pytest.raises(ValueError):
        call(_backend.kernels)


def test_env_var_forces_pure_python():
    import os
    import subprocess
    import sys

    env = dict(os.environ, FREESUB_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import freesub; print(freesub.current_backend())"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
