import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

from coref_agreement import Annotation, read_annotation

sys.path.insert(0, str(Path(__file__).parent))

FIXTURES = Path(__file__).parent / 'fixtures'

# acceptance lines collected by test_acceptance.py, echoed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section('acceptance criteria')
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def fixtures():
    return FIXTURES


@pytest.fixture
def trains():
    """Figure 1 and Figure 2 codings of the Trains sample."""
    return {name: read_annotation(FIXTURES / ('trains_%s.tsv' % name), name)
            for name in ('ca1', 'ca2', 'ca1_d_prime', 'ca3')}


@st.composite
def labelings(draw, min_n=1, max_n=10):
    n = draw(st.integers(min_n, max_n))
    ids = ['m%d' % i for i in range(n)]
    k = draw(st.integers(1, n))
    return {m: str(draw(st.integers(0, k - 1))) for m in ids}


@st.composite
def annotation_pairs(draw, min_n=1, max_n=10):
    t = draw(labelings(min_n, max_n))
    ids = list(t)
    k = draw(st.integers(1, len(ids)))
    r = {m: str(draw(st.integers(0, k - 1))) for m in ids}
    return Annotation.from_pairs('t', t.items()), Annotation.from_pairs('r', r.items())
