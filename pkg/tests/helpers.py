"""Shared hypothesis strategies and the acceptance result log."""

from __future__ import annotations

from hypothesis import strategies as st

ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


def record(criterion: str, ok: bool, detail: str = "") -> None:
    prev = ACCEPTANCE_RESULTS.get(criterion, (True, ""))
    ACCEPTANCE_RESULTS[criterion] = (prev[0] and ok, detail or prev[1])


@st.composite
def b_weights(draw, max_rank=4, max_coord=6, min_rank=2):
    n = draw(st.integers(min_rank, max_rank))
    coords = sorted(draw(st.lists(st.integers(0, max_coord), min_size=n, max_size=n)), reverse=True)
    return tuple(coords)


@st.composite
def d_weights(draw, max_rank=4, max_coord=6):
    n = draw(st.integers(2, max_rank))
    coords = sorted(draw(st.lists(st.integers(0, max_coord), min_size=n, max_size=n)), reverse=True)
    if draw(st.booleans()):
        coords[-1] = -coords[-1]
    return tuple(coords)


@st.composite
def u_weights(draw, min_len=2, max_len=5, max_coord=6):
    m = draw(st.integers(min_len, max_len))
    return tuple(sorted(draw(st.lists(st.integers(-max_coord, max_coord), min_size=m, max_size=m)), reverse=True))
