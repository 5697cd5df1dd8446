import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

from freesub import _backend
from freesub.syntax import parse_word
from freesub.words import Word, reduce

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(params=_backend.available_backends())
def backend(request):
    previous = _backend.current_backend()
    _backend.set_backend(request.param)
    yield request.param
    _backend.set_backend(previous)


def W(text: str, rank: int = 2) -> Word:
    return parse_word(text, rank)


def words(rank: int = 2, max_size: int = 10):
    letters = st.sampled_from([a for g in range(1, rank + 1) for a in (g, -g)])
    return st.lists(letters, max_size=max_size).map(lambda ls: reduce(ls, rank))


def pytest_terminal_summary(terminalreporter):
    verdicts = sys.modules.get("test_acceptance")
    if verdicts is None or not verdicts.VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(verdicts.VERDICTS):
        terminalreporter.write_line(verdicts.VERDICTS[n])
