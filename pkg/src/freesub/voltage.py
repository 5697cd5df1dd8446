"""Subgroups of ``G = F_k x Z/n`` as core graphs decorated with residues.

A subgroup ``H`` is stored as the core graph of its projection to ``F_k``,
a residue on every edge (gauged so spanning-tree edges carry 0), and the
defect ``H ∩ ({1} x Z/n)`` as a divisor ``d`` of ``n``: the defect is
``d·Z/n`` and residues are meaningful mod ``d``.  ``H`` is free iff
``d == n``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import _backend
from . import stallings
from .stallings import CoreGraph, _core_and_canonicalize, fold_pairs
from .words import RankMismatch, Word, inv, mul

Element = tuple[Word, int]


class NotFreeError(ValueError):
    """A subgroup meets the torsion factor nontrivially."""


class TrivialSubgroupError(ValueError):
    pass


@dataclass(frozen=True)
class VoltageGraph:
    rank: int
    modulus: int
    underlying: CoreGraph
    voltages: tuple[int, ...]
    defect: int

    @property
    def ambient(self) -> tuple[int, int]:
        return self.rank, self.modulus

    def edge_voltage(self, s: int, g: int) -> int:
        return self.voltages[self.underlying.edge_index[s, g]]


def voltage_fold(gens: Iterable[Element], k: int, n: int) -> VoltageGraph:
    """Fold generators ``(word, residue)`` of a subgroup of ``F_k x Z/n``."""
    if n < 1:
        raise ValueError("modulus must be >= 1")
    graph, volts, defect = fold_pairs(gens, k, n)
    return VoltageGraph(k, n, graph, volts, defect)


def from_core_graph(g: CoreGraph, n: int = 1) -> VoltageGraph:
    """``A x {0}`` for a subgroup ``A`` of the free factor."""
    return VoltageGraph(g.rank, n, g, (0,) * len(g.edges), n)


def is_free(v: VoltageGraph) -> bool:
    return v.defect == v.modulus


def rank(v: VoltageGraph) -> int:
    """Rank of the projection to ``F_k``; equals the rank of ``H`` when free."""
    return stallings.rank(v.underlying)


def reduced_rank(v: VoltageGraph) -> int:
    return max(rank(v) - 1, 0)


def residue_of(v: VoltageGraph, w: Word) -> int | None:
    """Residue accumulated along the closed base path spelling ``w``, or
    ``None`` when ``w`` is not in the projection."""
    end, consumed, acc = stallings.read(v.underlying, w, v.voltages)
    if consumed != len(w.letters) or end != v.underlying.base:
        return None
    return acc % v.defect


def membership(v: VoltageGraph, w: Word, c: int) -> bool:
    r = residue_of(v, w)
    return r is not None and (c - r) % v.defect == 0


def basis(v: VoltageGraph) -> list[Element]:
    """Free basis of a free subgroup as ``(word, residue)`` pairs."""
    words = stallings.basis(v.underlying)
    return [(w, residue_of(v, w) % v.modulus) for w in words]


def stabilizer_generators(v: VoltageGraph) -> list[Element]:
    """Generators of ``H ∩ (F_k x {0})``, a finite-index subgroup of ``H``."""
    g = v.underlying
    n, src, tgt, lab, volt = _backend.kernels.product(
        v.rank,
        g.kernel_form(v.voltages),
        stallings.bouquet(v.rank).kernel_form(),
        v.defect,
    )
    core, _ = _core_and_canonicalize(v.rank, n, 0, src, tgt, lab, volt, 1)
    return [(w, 0) for w in stallings.basis(core)]


def coset_key(v: VoltageGraph, w: Word, c: int) -> tuple:
    """Canonical label of the orbit ``H·(w, c)``.

    The reading of ``w`` stops where the core graph ends; the unread suffix
    then names a vertex of a hanging tree of the Schreier graph.
    """
    end, consumed, acc = stallings.read(v.underlying, w, v.voltages)
    return end, w.letters[consumed:], (c - acc) % v.defect


def _check_same_ambient(a: VoltageGraph, b: VoltageGraph) -> None:
    if a.ambient != b.ambient:
        raise RankMismatch(f"ambient groups differ: {a.ambient} vs {b.ambient}")


def voltage_fiber_product(a: VoltageGraph, b: VoltageGraph) -> VoltageGraph:
    """``A ∩ B`` for free subgroups of the same ``F_k x Z/n``."""
    _check_same_ambient(a, b)
    if not (is_free(a) and is_free(b)):
        raise NotFreeError("fiber product needs free subgroups")
    n, src, tgt, lab, volt = _backend.kernels.product(
        a.rank,
        a.underlying.kernel_form(a.voltages),
        b.underlying.kernel_form(b.voltages),
        a.modulus,
    )
    core, volts = _core_and_canonicalize(a.rank, n, 0, src, tgt, lab, volt, a.modulus)
    return VoltageGraph(a.rank, a.modulus, core, volts, a.modulus)


def _power(letter: int, e: int, k: int) -> Word:
    return Word(k, (letter,) * e)


def extremal_family(k: int, l: int, n: int) -> tuple[VoltageGraph, VoltageGraph]:
    """The pair ``(A, B)`` in ``F_2 x Z/n`` attaining the rank bound.

    ``A = {w : exponent sum of x divisible by k-1}`` and ``B`` is the graph of
    ``b -> (y-exponent of b)/(l-1) mod n`` on ``B0 = {y-exponent divisible by
    l-1}``.  Ranks are ``k`` and ``l``.
    """
    if k < 2 or l < 2 or n < 1:
        raise ValueError("need k >= 2, l >= 2, n >= 1")
    x, y = Word(2, (1,)), Word(2, (2,))
    a_gens = [(_power(1, k - 1, 2), 0)]
    a_gens += [(mul(mul(_power(1, i, 2), y), inv(_power(1, i, 2))), 0) for i in range(k - 1)]
    b_gens = [(_power(2, l - 1, 2), 1 % n)]
    b_gens += [(mul(mul(_power(2, j, 2), x), inv(_power(2, j, 2))), 0) for j in range(l - 1)]
    return voltage_fold(a_gens, 2, n), voltage_fold(b_gens, 2, n)


@dataclass(frozen=True)
class BoundReport:
    lhs: int
    rhs_theorem1: int
    rhs_za14: int
    rhs_ass15: int
    equality: bool
    holds: bool
    rank_a: int
    rank_b: int
    rank_intersection: int
    index: int

    def as_dict(self) -> dict:
        return {
            "lhs": self.lhs,
            "rhsTheorem1": self.rhs_theorem1,
            "rhsZa14": self.rhs_za14,
            "rhsASS15": self.rhs_ass15,
            "equality": self.equality,
            "holds": self.holds,
            "rankA": self.rank_a,
            "rankB": self.rank_b,
            "rankIntersection": self.rank_intersection,
            "index": self.index,
        }


def bound_values(n: int, rank_a: int, rank_b: int) -> tuple[int, int, int]:
    """Right-hand sides ``n·(a-1)(b-1)``, six times that, and
    ``n²·(a-1)(b-1) + n - 1``."""
    prod = (rank_a - 1) * (rank_b - 1)
    sharp = n * prod
    return sharp, 6 * sharp, n * n * prod + n - 1


def verify_bound(a: VoltageGraph, b: VoltageGraph) -> BoundReport:
    """Compare ``rank(A ∩ B) - 1`` against the three known upper bounds."""
    _check_same_ambient(a, b)
    for name, v in (("A", a), ("B", b)):
        if not is_free(v):
            raise NotFreeError(f"{name} meets the torsion factor; the bound needs free subgroups")
        if rank(v) == 0:
            raise TrivialSubgroupError(f"{name} is trivial")
    ra, rb = rank(a), rank(b)
    ri = rank(voltage_fiber_product(a, b))
    lhs = max(0, ri - 1)
    sharp, za, ass = bound_values(a.modulus, ra, rb)
    return BoundReport(lhs, sharp, za, ass, lhs == sharp, lhs <= sharp, ra, rb, ri, a.modulus)


def random_word(rng: random.Random, k: int, max_len: int, min_len: int = 1) -> Word:
    length = rng.randint(min_len, max_len)
    letters: list[int] = []
    while len(letters) < length:
        a = rng.choice([i for g in range(1, k + 1) for i in (g, -g)])
        if letters and letters[-1] == -a:
            continue
        letters.append(a)
    return Word(k, tuple(letters))


def random_generators(
    rng: random.Random, k: int, n: int, min_gens: int = 2, max_gens: int = 4, max_len: int = 6
) -> list[Element]:
    count = rng.randint(min_gens, max_gens)
    return [(random_word(rng, k, max_len), rng.randrange(n)) for _ in range(count)]


@dataclass(frozen=True)
class Instance:
    seed: int
    draw: int
    modulus: int
    gens_a: tuple[Element, ...]
    gens_b: tuple[Element, ...]
    report: BoundReport


def random_instances(
    count: int, n: int, seed: int = 0, k: int = 2, max_draws: int | None = None
) -> list[Instance]:
    """Draw free subgroup pairs of ``F_k x Z/n`` with nontrivial intersection
    and verify the bound on each.  Deterministic in ``seed``."""
    rng = random.Random(f"{seed}:{k}:{n}")
    out: list[Instance] = []
    draws = 0
    limit = max_draws if max_draws is not None else 50 * count
    while len(out) < count and draws < limit:
        draws += 1
        ga = random_generators(rng, k, n)
        gb = random_generators(rng, k, n)
        a, b = voltage_fold(ga, k, n), voltage_fold(gb, k, n)
        if not (is_free(a) and is_free(b)) or rank(a) == 0 or rank(b) == 0:
            continue
        report = verify_bound(a, b)
        if report.rank_intersection == 0:
            continue
        out.append(Instance(seed, draws, n, tuple(ga), tuple(gb), report))
    return out


def intersection_generators(a: VoltageGraph, b: VoltageGraph) -> list[Element]:
    return basis(voltage_fiber_product(a, b))


def residues_match_products(
    v: VoltageGraph, gens: Sequence[Element], rng: random.Random, length: int = 5
) -> tuple[Word, int, bool]:
    """Multiply a random sequence of generators; report whether ``v`` accepts it."""
    w, c = Word(v.rank), 0
    for _ in range(rng.randint(0, length)):
        g, r = rng.choice(gens)
        if rng.random() < 0.5:
            g, r = inv(g), -r
        w, c = mul(w, g), (c + r) % v.modulus
    return w, c, membership(v, w, c)
