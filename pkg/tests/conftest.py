import itertools

from hypothesis import strategies as st
from sympy.utilities.iterables import partitions

from hmfweights import PlaceStructure

ACCEPTANCE_LINES: list[str] = []


def place_layouts(max_n):
    """Every unordered list of residue degrees with total at most ``max_n``."""
    for n in range(1, max_n + 1):
        for part in partitions(n):
            yield sorted(itertools.chain.from_iterable([d] * m for d, m in part.items()), reverse=True)


def all_weights(ps: PlaceStructure, lo: int, hi: int):
    return itertools.product(range(lo, hi + 1), repeat=ps.n)


@st.composite
def structure_and_weight(draw, lo=-3, hi=12):
    p = draw(st.sampled_from([3, 5, 7]))
    places = draw(st.lists(st.integers(1, 4), min_size=1, max_size=3))
    ps = PlaceStructure(p, places)
    k = draw(st.lists(st.integers(lo, hi), min_size=ps.n, max_size=ps.n))
    return ps, tuple(k)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
