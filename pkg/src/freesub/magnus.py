"""A computable bi-invariant order on a free group via the Magnus embedding.

``x_i`` maps to ``1 + X_i`` in the ring of noncommuting integer power
series; a nontrivial word is positive when the coefficient of the
degree-lexicographically smallest monomial of ``expand(w) - 1`` is positive
(``X_1 < X_2 < ...``).  Monomials are tuples of generator indices.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .words import RankMismatch, Word, inv, mul

Monomial = tuple[int, ...]


class Sign(enum.IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1


class Comparison(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def monomial_key(m: Monomial) -> tuple[int, Monomial]:
    return (len(m), m)


@dataclass(frozen=True)
class MagnusPolynomial:
    """Truncated noncommutative polynomial with integer coefficients."""

    rank: int
    degree: int
    terms: dict[Monomial, int] = field(default_factory=dict)

    def __post_init__(self):
        for m, c in self.terms.items():
            if c == 0:
                raise ValueError("zero coefficients are not stored")
            if len(m) > self.degree:
                raise ValueError(f"monomial {m} exceeds truncation degree {self.degree}")
            if any(not 1 <= i <= self.rank for i in m):
                raise ValueError(f"monomial {m} uses a variable outside rank {self.rank}")

    @classmethod
    def one(cls, rank: int, degree: int) -> MagnusPolynomial:
        return cls(rank, degree, {(): 1})

    @classmethod
    def from_terms(cls, rank: int, degree: int, terms: dict) -> MagnusPolynomial:
        return cls(rank, degree, {m: c for m, c in terms.items() if c and len(m) <= degree})

    def coefficient(self, m: Monomial) -> int:
        return self.terms.get(tuple(m), 0)

    def __mul__(self, other: MagnusPolynomial) -> MagnusPolynomial:
        if self.rank != other.rank:
            raise RankMismatch("polynomials over different alphabets")
        deg = min(self.degree, other.degree)
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            room = deg - len(m1)
            if room < 0:
                continue
            for m2, c2 in other.terms.items():
                if len(m2) <= room:
                    key = m1 + m2
                    out[key] = out.get(key, 0) + c1 * c2
        return MagnusPolynomial.from_terms(self.rank, deg, out)

    def __sub__(self, other: MagnusPolynomial) -> MagnusPolynomial:
        deg = min(self.degree, other.degree)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) - c
        return MagnusPolynomial.from_terms(self.rank, deg, out)

    def leading_term(self) -> tuple[Monomial, int] | None:
        """Smallest monomial (degree-lex) with a nonzero coefficient."""
        if not self.terms:
            return None
        m = min(self.terms, key=monomial_key)
        return m, self.terms[m]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        from .syntax import COMPACT_ALPHABET

        def name(m):
            if not m:
                return "1"
            if self.rank <= len(COMPACT_ALPHABET):
                return "".join(COMPACT_ALPHABET[i - 1].upper() for i in m)
            return "*".join(f"X{i}" for i in m)

        parts = []
        for m in sorted(self.terms, key=monomial_key):
            c = self.terms[m]
            mag = "" if abs(c) == 1 and m else str(abs(c))
            sign = "-" if c < 0 else "+"
            parts.append(f"{sign} {mag}{name(m) if m else ''}".rstrip())
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def _times_generator(p: dict, i: int, degree: int) -> dict:
    # p * (1 + X_i)
    out = dict(p)
    for m, c in p.items():
        if len(m) < degree:
            key = m + (i,)
            out[key] = out.get(key, 0) + c
    return {m: c for m, c in out.items() if c}


def _times_inverse(p: dict, i: int, degree: int) -> dict:
    # q with q * (1 + X_i) = p, solved degree by degree: q[m X_i] = p[m X_i] - q[m]
    by_len: list[list[Monomial]] = [[] for _ in range(degree + 1)]
    for m in p:
        by_len[len(m)].append(m)
    q: dict[Monomial, int] = {}
    for d in range(degree + 1):
        cands = set(by_len[d])
        if d:
            cands.update(m + (i,) for m in q if len(m) == d - 1)
        for m in cands:
            c = p.get(m, 0)
            if m and m[-1] == i:
                c -= q.get(m[:-1], 0)
            if c:
                q[m] = c
    return q


def expand(w: Word, degree: int) -> MagnusPolynomial:
    """Magnus image of ``w`` truncated above ``degree``."""
    if degree < 1:
        raise ValueError("degree must be >= 1")
    p: dict[Monomial, int] = {(): 1}
    for a in w.letters:
        if a > 0:
            p = _times_generator(p, a, degree)
        else:
            p = _times_inverse(p, -a, degree)
    return MagnusPolynomial(w.rank, degree, p)


def sign(w: Word) -> Sign:
    """Sign of ``w`` in the positive cone of the Magnus order.

    Truncation grows from degree 1 until a non-constant term appears; for a
    reduced word of length L one appears by degree L.
    """
    if not w.letters:
        return Sign.ZERO
    for d in range(1, len(w.letters) + 1):
        terms = expand(w, d).terms
        nonconst = [m for m in terms if m]
        if nonconst:
            m = min(nonconst, key=monomial_key)
            return Sign.POSITIVE if terms[m] > 0 else Sign.NEGATIVE
    raise AssertionError(f"Magnus expansion of nontrivial word {w.letters} vanished")


def compare(u: Word, v: Word) -> Comparison:
    """``LESS`` iff ``u^-1 v`` is positive."""
    if u.rank != v.rank:
        raise RankMismatch(f"cannot compare words of rank {u.rank} and {v.rank}")
    if u.letters == v.letters:
        return Comparison.EQUAL
    return Comparison.LESS if sign(mul(inv(u), v)) is Sign.POSITIVE else Comparison.GREATER


def less(u: Word, v: Word) -> bool:
    return compare(u, v) is Comparison.LESS
