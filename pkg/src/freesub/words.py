"""Reduced words in a free group of finite rank.

A letter is a nonzero integer: ``+i`` stands for the generator ``x_i`` and
``-i`` for its inverse, ``1 <= i <= rank``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


class RankMismatch(ValueError):
    """Raised when words from free groups of different rank are combined."""


def _check_letter(letter: int, rank: int) -> None:
    if letter == 0 or abs(letter) > rank:
        raise ValueError(f"letter {letter} out of range for rank {rank}")


@dataclass(frozen=True, slots=True)
class Word:
    """An element of the free group ``F_rank`` as a freely reduced word."""

    rank: int
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise ValueError("rank must be positive")
        prev = 0
        for a in self.letters:
            _check_letter(a, self.rank)
            if a == -prev:
                raise ValueError(f"word {self.letters} is not freely reduced")
            prev = a

    @classmethod
    def identity(cls, rank: int) -> Word:
        return cls(rank, ())

    @classmethod
    def generator(cls, rank: int, index: int) -> Word:
        return cls(rank, (index,))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: Word) -> Word:
        return mul(self, other)

    def __invert__(self) -> Word:
        return inv(self)

    def __pow__(self, n: int) -> Word:
        base = self if n >= 0 else inv(self)
        out = Word(self.rank)
        for _ in range(abs(n)):
            out = mul(out, base)
        return out

    def inverse(self) -> Word:
        return inv(self)

    def __str__(self) -> str:
        from .syntax import format_word

        return format_word(self)


def reduce(letters: Iterable[int], rank: int) -> Word:
    """Freely reduce a sequence of signed generator indices."""
    stack: list[int] = []
    for a in letters:
        _check_letter(a, rank)
        if stack and stack[-1] == -a:
            stack.pop()
        else:
            stack.append(a)
    return Word(rank, tuple(stack))


def mul(u: Word, v: Word) -> Word:
    if u.rank != v.rank:
        raise RankMismatch(f"cannot multiply words of rank {u.rank} and {v.rank}")
    a, b = u.letters, v.letters
    # cancel the longest suffix of u against the matching prefix of v
    i = 0
    n = min(len(a), len(b))
    while i < n and a[len(a) - 1 - i] == -b[i]:
        i += 1
    return Word(u.rank, a[: len(a) - i] + b[i:])


def inv(w: Word) -> Word:
    return Word(w.rank, tuple(-a for a in reversed(w.letters)))


def conjugate(w: Word, by: Word) -> Word:
    """Return ``by * w * by^-1``."""
    return mul(mul(by, w), inv(by))


def exponent_sum(w: Word, index: int) -> int:
    return sum(1 if a == index else -1 if a == -index else 0 for a in w.letters)


def all_reduced_words(rank: int, max_length: int) -> Iterator[Word]:
    """Yield every reduced word of length at most ``max_length`` in order of length."""
    alphabet = [i for g in range(1, rank + 1) for i in (g, -g)]
    layer: list[tuple[int, ...]] = [()]
    yield Word(rank)
    for _ in range(max_length):
        nxt = []
        for w in layer:
            for a in alphabet:
                if w and w[-1] == -a:
                    continue
                nxt.append(w + (a,))
        for w in nxt:
            yield Word(rank, w)
        layer = nxt
