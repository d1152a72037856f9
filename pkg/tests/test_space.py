"""Topology primitives checked against the independent brute-force oracle
on every subset of small spaces, plus serialization and parsing behavior."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from topomeasure import oracle
from topomeasure.space import (
    BUILDERS,
    FiniteSpace,
    RegionError,
    SpaceError,
    build_circle,
    build_disk,
    build_interval,
    build_line_window,
    build_punctured_disk,
    build_sphere,
    dump_space,
    grid_cell_id,
    load_space,
    parse_region_literal,
    region,
)

TINY = [
    build_interval(2),
    build_interval(3),
    build_circle(3),
    build_line_window(3),
    build_punctured_disk(3),
    build_disk(3),
    build_sphere(2),
]


def subsets_of_x(sp: FiniteSpace):
    """Every subset of X (regions never contain the infinity cell)."""
    sub = sp.x_mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & sp.x_mask


@pytest.mark.parametrize("sp", TINY, ids=lambda s: s.name)
def test_primitives_match_oracle_on_every_subset(sp: FiniteSpace):
    for mask in subsets_of_x(sp):
        assert sp.closure_mask(mask) == oracle.brute_closure(sp, mask)
        assert sp.is_open_mask(mask) == oracle.brute_is_open(sp, mask)
        assert sp.is_closed_mask(mask) == oracle.brute_is_closed(sp, mask)
        assert sp.is_bounded_mask(mask) == oracle.brute_is_bounded(sp, mask)
        assert sp.is_compact_mask(mask) == oracle.brute_is_compact(sp, mask)
        assert sorted(sp.components_masks(mask)) == sorted(
            oracle.brute_force_components(sp, mask)
        )


@pytest.mark.parametrize("sp", TINY, ids=lambda s: s.name)
def test_up_closure_is_minimal_open_superset(sp: FiniteSpace):
    for mask in subsets_of_x(sp):
        up = sp.up_closure_mask(mask)
        assert mask & up == mask and sp.is_open_mask(up)
        # minimal: dropping any cell outside the input breaks openness
        for c in FiniteSpace.cells_of(up & ~mask):
            assert not sp.is_open_mask(up & ~(1 << c))


@pytest.mark.parametrize("sp", TINY, ids=lambda s: s.name)
def test_interior_closure_duality(sp: FiniteSpace):
    full = sp.x_mask
    for mask in subsets_of_x(sp):
        assert sp.interior_mask(mask) == full & ~sp.closure_mask(full & ~mask)
        assert sp.closure_mask(sp.closure_mask(mask)) == sp.closure_mask(mask)


@pytest.mark.parametrize("name", sorted(BUILDERS))
def test_dump_load_roundtrip(name: str):
    params = {"strip": (4, 2)}.get(name, (4,) if name != "sphere" else (2,))
    sp = BUILDERS[name](*params)
    back = load_space(dump_space(sp))
    assert back.name == sp.name
    assert back.cell_count == sp.cell_count
    assert back.infinity == sp.infinity
    assert back.labels == sp.labels
    for mask in (0, 1, sp.x_mask, sp.vertex_mask()):
        assert back.closure_mask(mask) == sp.closure_mask(mask)
        assert back.up_closure_mask(mask) == sp.up_closure_mask(mask)


def test_compactified_interval_like_circle():
    lw = build_line_window(4)
    hat = lw.compactified()
    assert hat.infinity is None
    assert hat.cell_count == lw.cell_count
    assert hat.is_compact_mask(hat.x_mask)


def test_region_literal_parsing():
    sp = build_disk(3)
    assert parse_region_literal(sp, "@all").cells == sp.x_mask
    assert parse_region_literal(sp, "0,1,2").cells == 0b111
    rim = parse_region_literal(sp, "@rim").cells
    assert rim and all(sp.labels.get(c) == "rim" for c in FiniteSpace.cells_of(rim))
    with pytest.raises(RegionError, match="banana"):
        parse_region_literal(sp, "@banana")
    with pytest.raises(RegionError, match="99"):
        parse_region_literal(sp, "0,99")


def test_grid_cell_lookup_consistent():
    sp = BUILDERS["plane_window"](4)
    p = next(c for c, t in sp.labels.items() if t == "p")
    assert grid_cell_id(sp, "v", 2, 2) == p
    q = grid_cell_id(sp, "q", 1, 1)
    assert sp.dim[q] == 2


def test_builder_validation_errors():
    with pytest.raises(SpaceError):
        build_disk(2)
    with pytest.raises(SpaceError):
        build_interval(0)
    with pytest.raises(SpaceError):
        BUILDERS["plane_window"](3)


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_closure_and_up_closure_properties(data):
    sp = data.draw(st.sampled_from(TINY))
    mask = data.draw(st.integers(min_value=0, max_value=sp.x_mask)) & sp.x_mask
    other = data.draw(st.integers(min_value=0, max_value=sp.x_mask)) & sp.x_mask
    cl = sp.closure_mask
    up = sp.up_closure_mask
    # both operators are idempotent, extensive, and distribute over union
    assert cl(cl(mask)) == cl(mask) and mask & cl(mask) == mask
    assert up(up(mask)) == up(mask) and mask & up(mask) == mask
    assert cl(mask | other) == cl(mask) | cl(other)
    assert up(mask | other) == up(mask) | up(other)


def test_region_helpers():
    sp = build_circle(3)
    r = region(sp, [0, 3])
    assert r.ids() == (0, 3)
    assert 3 in r and 1 not in r
    with pytest.raises(RegionError):
        region(sp, [77])
