"""Compare the compiled and pure-Python kernels on folding, fiber products
and the extremal sweep.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import timeit

from freesub import _backend, available_backends, set_backend
from freesub.voltage import (
    extremal_family,
    random_generators,
    random_word,
    verify_bound,
    voltage_fiber_product,
    voltage_fold,
)


def fold_workload():
    rng = random.Random(1)
    gens = [[(random_word(rng, 3, 40), rng.randrange(5)) for _ in range(6)] for _ in range(200)]
    return lambda: [voltage_fold(g, 3, 5) for g in gens]


def raw_fold_workload():
    # one petal graph of 50 000 edges handed straight to the kernel
    rng = random.Random(3)
    src, tgt, lab, volt = [], [], [], []
    nv = 1
    for _ in range(500):
        w = random_word(rng, 2, 100, 100)
        prev = 0
        for i, a in enumerate(w.letters):
            nxt = 0 if i == len(w.letters) - 1 else nv
            nv += nxt != 0
            s, t = (prev, nxt) if a > 0 else (nxt, prev)
            src.append(s), tgt.append(t), lab.append(abs(a) - 1), volt.append(0)
            prev = nxt
    return lambda: _backend.kernels.fold(nv, 0, src, tgt, lab, volt, 7, 2)


def product_workload():
    a, b = extremal_family(6, 6, 5)
    return lambda: voltage_fiber_product(a, b)


def random_pairs_workload():
    rng = random.Random(2)
    pairs = []
    while len(pairs) < 200:
        a = voltage_fold(random_generators(rng, 2, 3), 2, 3)
        b = voltage_fold(random_generators(rng, 2, 3), 2, 3)
        if a.defect == 3 and b.defect == 3:
            pairs.append((a, b))
    return lambda: [voltage_fiber_product(a, b) for a, b in pairs]


def sweep_workload():
    def run():
        for k in (2, 3, 4):
            for l in (2, 3, 4):
                for n in (1, 2, 3, 4):
                    verify_bound(*extremal_family(k, l, n))
    return run


WORKLOADS = {
    "fold 200x6 words of length 40": fold_workload,
    "raw fold kernel, 50k edges": raw_fold_workload,
    "fiber product, extremal (6,6,5)": product_workload,
    "fiber product, 200 random pairs": random_pairs_workload,
    "extremal sweep (36 triples)": sweep_workload,
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = available_backends()
    print(f"{'workload':36}" + "".join(f"{b:>12}" for b in backends) + "     speedup")
    for name, make in WORKLOADS.items():
        times = {}
        for b in backends:
            set_backend(b)
            fn = make()
            times[b] = min(timeit.repeat(fn, number=1, repeat=args.repeat))
        row = f"{name:36}" + "".join(f"{times[b] * 1e3:10.1f}ms" for b in backends)
        if len(backends) > 1:
            row += f"  {times['python'] / times['cython']:8.1f}x"
        print(row)


if __name__ == "__main__":
    main()
