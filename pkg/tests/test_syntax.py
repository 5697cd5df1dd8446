import json

import pytest
from hypothesis import given, strategies as st

from conftest import words
from freesub.syntax import (
    ParseError,
    format_generators,
    format_word,
    load_subgroup,
    parse_generators,
    parse_word,
)
from freesub.words import Word


def test_compact_alphabet_puts_xyz_first():
    assert parse_word("xyX", 2) == Word(2, (1, 2, -1))
    assert parse_word("a", 4) == Word(4, (4,))


def test_indexed_syntax():
    assert parse_word("x1 X2 x1", 2, "indexed") == Word(2, (1, -2, 1))
    assert parse_word("x30X1", 30, "indexed") == Word(30, (30, -1))


def test_identity_spelling():
    assert parse_word("1", 2) == Word(2)
    assert format_word(Word(2)) == "1"


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_word("x!", 2)
    with pytest.raises(ParseError):
        parse_word("z", 2)
    with pytest.raises(ParseError):
        parse_word("x0", 2, "indexed")


@given(words(rank=3), st.sampled_from(["compact", "indexed"]))
def test_word_round_trip(w, syntax):
    assert parse_word(format_word(w, syntax), 3, syntax) == w


@given(st.lists(st.tuples(words(rank=2), st.integers(0, 4)), max_size=4),
       st.sampled_from(["compact", "indexed"]))
def test_generator_list_round_trip(gens, syntax):
    text = ", ".join(f"{format_word(w, syntax)}:{c}" for w, c in gens)
    spec = parse_generators(text, 2, 5, syntax)
    assert parse_generators(format_generators(spec, syntax), 2, 5, syntax) == spec


def test_json_file(tmp_path):
    doc = {"ambientRank": 2, "modulus": 3,
           "generators": [{"word": "yy", "residue": 1}, {"word": "x", "residue": 0}]}
    path = tmp_path / "b.json"
    path.write_text(json.dumps(doc))
    spec = load_subgroup(str(path))
    assert spec.to_json() == doc


def test_rank_inference():
    assert parse_generators("xx, y, xyX").ambient_rank == 2
