"""Genus computation, solid partitions, and the no-partition law.

On a noncompact space whose one-point compactification has genus 0, a
bounded solid set has no nontrivial partition into bounded solid pieces.
When the compactification has positive genus the law genuinely fails (a
loop-like window splits a closed arc into vertex/edge/vertex), and the
tests pin down both directions.
"""

from __future__ import annotations

import pytest

from topomeasure.partition import (
    enumerate_solid_partitions,
    genus,
    hatX_genus0_check,
    is_irreducible,
)
from topomeasure.solid import BudgetExceeded, bounded_solid_catalog, is_solid_mask
from topomeasure.space import (
    BUILDERS,
    FiniteSpace,
    Region,
    build_annulus,
    build_circle,
    build_disk,
    build_line_window,
    build_plane_window,
    build_punctured_disk,
    build_sphere,
    build_strip,
    grid_cell_id,
    region,
)


def test_disk_and_sphere_have_genus_zero_exactly():
    for sp in (build_disk(4), build_sphere(2)):
        g = genus(sp)
        assert g.genus == 0 and g.exact and g.witness is None


@pytest.mark.parametrize("n", [3, 4])
def test_circle_has_genus_one_exactly(n):
    sp = build_circle(n)
    g = genus(sp)
    assert g.genus == 1 and g.exact
    _revalidate_partition_of_x(sp, g)


def test_annulus_has_positive_genus_with_revalidated_witness():
    sp = build_annulus(4)
    g = genus(sp)
    assert g.genus >= 1
    _revalidate_partition_of_x(sp, g)


def _revalidate_partition_of_x(sp: FiniteSpace, g):
    w = g.witness
    assert w is not None and w.target.cells == sp.x_mask
    union = 0
    for part in w.parts:
        assert not union & part.cells, "witness parts overlap"
        union |= part.cells
        assert is_solid_mask(sp, part.cells)
        assert sp.is_open_mask(part.cells) or sp.is_closed_mask(part.cells)
    assert union == sp.x_mask, "witness parts do not cover X"
    closed = [w.parts[i] for i in w.closed_part_indices]
    assert all(sp.is_compact_mask(p.cells) for p in closed)
    assert is_irreducible(w)
    assert g.genus == len(closed) - 1


def test_compactification_genus_classification():
    assert hatX_genus0_check(build_plane_window(4))
    assert hatX_genus0_check(build_punctured_disk(4))
    # the line window compactifies to a circle, the strip to a loop
    assert not hatX_genus0_check(build_line_window(4))
    assert not hatX_genus0_check(build_strip(3, 1))


def test_no_partition_law_on_genus_zero_compactifications():
    sp = build_punctured_disk(4)
    assert hatX_genus0_check(sp)
    seen = 0
    for t in bounded_solid_catalog(sp):
        if not t:
            continue
        for p in enumerate_solid_partitions(Region(sp, t), max_parts=5):
            assert len(p.parts) == 1, (
                f"nontrivial solid partition of {sorted(Region(sp, t).ids())}"
            )
            seen += 1
    assert seen > 0


def test_no_partition_law_fails_on_positive_genus_compactification():
    sp = build_line_window(4)
    arc = region(sp, [1, 2, 5])  # vertex, vertex, and the edge joining them
    assert is_solid_mask(sp, arc.cells)
    nontrivial = [
        p for p in enumerate_solid_partitions(arc, max_parts=4) if len(p.parts) > 1
    ]
    assert nontrivial, "expected the vertex/edge/vertex split to be a solid partition"
    parts = {frozenset(q.ids()) for q in nontrivial[0].parts}
    assert parts == {frozenset([1]), frozenset([2]), frozenset([5])}


def _local_solid_partitions(sp: FiniteSpace, target: int, max_parts: int):
    """Partition enumeration restricted to subsets of the target, for spaces
    whose global catalogs are out of reach.  Solidity of each piece is still
    decided globally."""

    def ok(piece: int) -> bool:
        return (
            sp.is_bounded_mask(piece)
            and is_solid_mask(sp, piece)
            and (sp.is_open_mask(piece) or sp.is_closed_mask(piece))
        )

    def rec(remaining: int, parts: tuple):
        if remaining == 0:
            yield parts
            return
        if len(parts) == max_parts:
            return
        least = remaining & -remaining
        rest = remaining & ~least
        sub = rest
        while True:
            piece = sub | least
            if ok(piece):
                yield from rec(remaining & ~piece, parts + (piece,))
            if sub == 0:
                break
            sub = (sub - 1) & rest

    yield from rec(target, ())


def test_no_partition_law_on_plane_window_targets():
    sp = build_plane_window(4)
    assert hatX_genus0_check(sp)
    q = 1 << grid_cell_id(sp, "q", 1, 1)
    p = 1 << next(c for c, t in sp.labels.items() if t == "p")
    targets = [
        sp.closure_mask(q),  # a closed quad with its frame (9 cells)
        sp.up_closure_mask(p),  # the open star of the central vertex
        sp.closure_mask(q | (1 << grid_cell_id(sp, "q", 2, 1))),  # two quads
    ]
    for t in targets:
        assert sp.is_bounded_mask(t) and is_solid_mask(sp, t)
        found = list(_local_solid_partitions(sp, t, max_parts=4))
        assert found == [(t,)], f"nontrivial partition of a {t.bit_count()}-cell solid"


def test_partition_enumeration_guards():
    sp = build_circle(3)
    with pytest.raises(ValueError):
        list(enumerate_solid_partitions(region(sp, [0, 2])))  # not solid
    with pytest.raises(BudgetExceeded):
        list(enumerate_solid_partitions(Region(sp, sp.x_mask), budget=3))
    lw = build_line_window(3)
    with pytest.raises(ValueError):
        is_irreducible(
            next(enumerate_solid_partitions(region(lw, [1]), max_parts=1))
        )
