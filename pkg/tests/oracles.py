"""Independent reference computations used only by the tests."""

from __future__ import annotations

from collections import deque
from itertools import product


def reduce_letters(letters):
    out = []
    for a in letters:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def inverse_letters(w):
    return tuple(-a for a in reversed(w))


def subgroup_elements(gens, cap):
    """Reduced words of length <= cap reachable as products of the generators
    and their inverses without any partial product exceeding ``cap``.

    Returns ``{word: certificate}`` where a certificate is a tuple of signed
    generator positions (``+j``/``-j`` for generator ``j-1`` or its inverse).
    """
    moves = []
    for j, g in enumerate(gens, start=1):
        g = tuple(g)
        if g:
            moves.append((j, g))
            moves.append((-j, inverse_letters(g)))
    found = {(): ()}
    queue = deque([()])
    while queue:
        w = queue.popleft()
        for tag, g in moves:
            t = reduce_letters(w + g)
            if len(t) <= cap and t not in found:
                found[t] = found[w] + (tag,)
                queue.append(t)
    return found


def replay(gens, certificate):
    letters = []
    for tag in certificate:
        g = tuple(gens[abs(tag) - 1])
        letters.extend(g if tag > 0 else inverse_letters(g))
    return reduce_letters(letters)


def reduced_words(rank, max_len):
    alphabet = [a for g in range(1, rank + 1) for a in (g, -g)]
    out = [()]
    layer = [()]
    for _ in range(max_len):
        layer = [w + (a,) for w in layer for a in alphabet if not (w and w[-1] == -a)]
        out.extend(layer)
    return out


# -- truncated noncommutative polynomials, by plain convolution --------------

def poly_mul(p, q, degree):
    out = {}
    for (m1, c1), (m2, c2) in product(p.items(), q.items()):
        if len(m1) + len(m2) <= degree:
            out[m1 + m2] = out.get(m1 + m2, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def letter_series(a, degree):
    i = abs(a)
    if a > 0:
        return {(): 1, (i,): 1} if degree >= 1 else {(): 1}
    return {(i,) * j: (-1) ** j for j in range(degree + 1)}


def magnus_oracle(letters, degree):
    p = {(): 1}
    for a in letters:
        p = poly_mul(p, letter_series(a, degree), degree)
    return p


# -- membership without folding ----------------------------------------------

def petal_steps(gens, modulus=1):
    """Unfolded bouquet of generator loops at vertex 0, as directed steps
    ``(u, letter, v, residue)`` in both orientations.  ``gens`` holds words or
    ``(word, residue)`` pairs; a residue rides on the first letter."""
    steps = []
    nv = 1
    for g in gens:
        g, c = (g if len(g) == 2 and isinstance(g[0], tuple) else (g, 0))
        g = tuple(g)
        c %= modulus
        if not g:
            steps.append((0, 0, 0, c))
            continue
        prev = 0
        for i, a in enumerate(g):
            nxt = 0 if i == len(g) - 1 else nv
            if nxt:
                nv += 1
            r = c if i == 0 else 0
            steps.append((prev, a, nxt, r))
            steps.append((nxt, -a, prev, -r % modulus))
            prev = nxt
    return nv, steps


def cancelling_triples(nv, steps, modulus):
    """``(u, v, r)`` such that a walk from u to v reduces to 1 and carries r."""
    rel = {(u, u, 0) for u in range(nv)}
    rel |= {(u, v, r) for (u, a, v, r) in steps if a == 0}
    while True:
        new = set()
        for (u, a, u1, r1) in steps:
            if a == 0:
                continue
            for (v1, b, v, r3) in steps:
                if b == -a:
                    for (x, y, r2) in rel:
                        if x == u1 and y == v1:
                            new.add((u, v, (r1 + r2 + r3) % modulus))
        for (u, v, r) in rel:
            for (v2, w, r2) in rel:
                if v2 == v:
                    new.add((u, w, (r + r2) % modulus))
        if new <= rel:
            return rel
        rel |= new


class WalkOracle:
    """Decides membership in the subgroup generated by ``gens`` inside
    ``F x Z/modulus``: some closed walk at 0 reduces to ``w`` and carries
    residue ``c``.  No folding is involved."""

    def __init__(self, gens, modulus=1):
        self.modulus = modulus
        self.nv, self.steps = petal_steps(gens, modulus)
        self.rel = cancelling_triples(self.nv, self.steps, modulus)

    def _close(self, states):
        m = self.modulus
        return {(v, (r + r2) % m) for (u, v, r2) in self.rel for (x, r) in states if x == u}

    def accepts(self, w, c=0):
        states = self._close({(0, 0)})
        for a in w:
            states = self._close(
                {(v, (r + r1) % self.modulus)
                 for (u, b, v, r1) in self.steps if b == a
                 for (x, r) in states if x == u}
            )
            if not states:
                return False
        return (0, c % self.modulus) in states

    def __contains__(self, w):
        return self.accepts(w, 0) if self.modulus == 1 else any(
            self.accepts(w, c) for c in range(self.modulus))
