"""Text syntaxes for words and subgroup descriptions.

Two word syntaxes are accepted:

``compact``
    one character per letter; lower case is a generator, upper case its
    inverse.  Generators are numbered in the order ``x y z a b ... w`` so the
    usual two-generator notation ``x, y`` means ``x_1, x_2``.  Rank <= 26.
``indexed``
    tokens ``x<i>`` / ``X<i>`` such as ``x1 X2 x1``; any rank.

The identity is written ``1`` in both.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .words import Word, reduce

COMPACT_ALPHABET = "xyzabcdefghijklmnopqrstuvw"
_COMPACT_INDEX = {c: i + 1 for i, c in enumerate(COMPACT_ALPHABET)}
_INDEXED_TOKEN = re.compile(r"\s*([xX])(\d+)\s*")

SYNTAXES = ("compact", "indexed")


class ParseError(ValueError):
    pass


def _compact_letters(text: str) -> list[int]:
    out = []
    for ch in text:
        if ch.isspace():
            continue
        idx = _COMPACT_INDEX.get(ch.lower())
        if idx is None:
            raise ParseError(f"unexpected character {ch!r} in word {text!r}")
        out.append(idx if ch.islower() else -idx)
    return out


def _indexed_letters(text: str) -> list[int]:
    out = []
    pos = 0
    while pos < len(text):
        m = _INDEXED_TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse {text[pos:]!r} in word {text!r}")
        idx = int(m.group(2))
        if idx < 1:
            raise ParseError(f"generator index must be positive in {text!r}")
        out.append(idx if m.group(1) == "x" else -idx)
        pos = m.end()
    return out


def parse_letters(text: str, syntax: str = "compact") -> list[int]:
    text = text.strip()
    if text in ("", "1"):
        return []
    if syntax == "compact":
        return _compact_letters(text)
    if syntax == "indexed":
        return _indexed_letters(text)
    raise ParseError(f"unknown syntax {syntax!r}")


def infer_rank(texts: list[str], syntax: str = "compact") -> int:
    """Smallest rank that accommodates every generator used (at least 1)."""
    top = 1
    for t in texts:
        for a in parse_letters(t, syntax):
            top = max(top, abs(a))
    return top


def parse_word(text: str, rank: int, syntax: str = "compact") -> Word:
    letters = parse_letters(text, syntax)
    try:
        return reduce(letters, rank)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_word(w: Word, syntax: str | None = None) -> str:
    if syntax is None:
        syntax = "compact" if w.rank <= len(COMPACT_ALPHABET) else "indexed"
    if not w.letters:
        return "1"
    if syntax == "compact":
        if w.rank > len(COMPACT_ALPHABET):
            raise ValueError("compact syntax supports rank <= 26")
        return "".join(
            COMPACT_ALPHABET[abs(a) - 1] if a > 0 else COMPACT_ALPHABET[abs(a) - 1].upper()
            for a in w.letters
        )
    if syntax == "indexed":
        return " ".join(f"x{a}" if a > 0 else f"X{-a}" for a in w.letters)
    raise ValueError(f"unknown syntax {syntax!r}")


@dataclass(frozen=True)
class SubgroupSpec:
    """Generators ``(word, residue)`` of a subgroup of ``F_k x Z/n``.

    ``modulus`` 0 or 1 means the plain free group.
    """

    ambient_rank: int
    modulus: int = 0
    generators: tuple[tuple[Word, int], ...] = field(default=())

    def __post_init__(self):
        if self.ambient_rank < 1:
            raise ParseError("ambientRank must be positive")
        if self.modulus < 0:
            raise ParseError("modulus must be nonnegative")
        for w, c in self.generators:
            if w.rank != self.ambient_rank:
                raise ParseError("generator rank differs from ambientRank")
            if self.modulus >= 2 and not 0 <= c < self.modulus:
                raise ParseError(f"residue {c} not reduced mod {self.modulus}")
            if self.modulus < 2 and c != 0:
                raise ParseError("nonzero residue without a modulus")

    @property
    def n(self) -> int:
        return max(self.modulus, 1)

    def words(self) -> list[Word]:
        return [w for w, _ in self.generators]

    def to_json(self, syntax: str = "compact") -> dict:
        return {
            "ambientRank": self.ambient_rank,
            "modulus": self.modulus,
            "generators": [
                {"word": format_word(w, syntax), "residue": c} for w, c in self.generators
            ],
        }


def _split_generators(text: str) -> list[str]:
    parts = [p.strip() for p in text.split(",")]
    if parts == [""]:
        return []
    if any(p == "" for p in parts):
        raise ParseError(f"empty generator in {text!r}")
    return parts


def parse_generators(
    text: str,
    rank: int | None = None,
    modulus: int = 0,
    syntax: str = "compact",
) -> SubgroupSpec:
    """Parse ``"xx, y, xyX"`` or, with residues, ``"yy:1, x:0"``."""
    words, residues = [], []
    for item in _split_generators(text):
        word_text, sep, res_text = item.partition(":")
        res = 0
        if sep:
            try:
                res = int(res_text)
            except ValueError:
                raise ParseError(f"bad residue in {item!r}") from None
        words.append(word_text)
        residues.append(res)
    if rank is None:
        rank = infer_rank(words, syntax)
    if modulus >= 2:
        residues = [r % modulus for r in residues]
    gens = tuple((parse_word(t, rank, syntax), r) for t, r in zip(words, residues))
    return SubgroupSpec(rank, modulus, gens)


def format_generators(spec: SubgroupSpec, syntax: str = "compact") -> str:
    items = []
    for w, c in spec.generators:
        s = format_word(w, syntax)
        items.append(f"{s}:{c}" if spec.modulus >= 2 else s)
    return ", ".join(items)


def spec_from_json(doc: dict, syntax: str = "compact") -> SubgroupSpec:
    try:
        rank = int(doc["ambientRank"])
        modulus = int(doc.get("modulus", 0))
        gens = []
        for g in doc.get("generators", []):
            res = int(g.get("residue", 0))
            if modulus >= 2:
                res %= modulus
            gens.append((parse_word(str(g["word"]), rank, syntax), res))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed subgroup document: {exc}") from None
    return SubgroupSpec(rank, modulus, tuple(gens))


def load_subgroup(
    arg: str,
    rank: int | None = None,
    modulus: int = 0,
    syntax: str = "compact",
) -> SubgroupSpec:
    """Inline generator list, or a path to a JSON subgroup file."""
    path = Path(arg)
    if arg.endswith(".json") or (len(arg) < 4096 and path.is_file()):
        try:
            doc = json.loads(path.read_text())
        except OSError as exc:
            raise ParseError(f"cannot read {arg}: {exc}") from None
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON in {arg}: {exc}") from None
        return spec_from_json(doc, syntax)
    return parse_generators(arg, rank, modulus, syntax)
