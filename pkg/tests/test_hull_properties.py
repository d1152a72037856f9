"""Exhaustive checks of the solid-hull laws on noncompact spaces.

The hull is defined for bounded connected regions that are open or closed,
on a connected, locally connected, noncompact space.  On each such space
small enough for exhaustive enumeration, the laws checked are:

* monotone: A subset of B implies hull(A) subset of hull(B);
* hull(A) is bounded and solid, contains A, and A is solid iff A = hull(A);
* idempotent: hull(hull(A)) = hull(A);
* kind-preserving: open inputs have open hulls, compact inputs compact hulls;
* disjoint bounded connected regions have hulls that are either disjoint or
  one properly contained in the other.

Enumeration is exact: a region is bounded iff every one of its cells has a
bounded closure, so the domain is the set of subsets of the bounded-cell
mask that are connected and open-or-closed.
"""

from __future__ import annotations

import pytest

from topomeasure.solid import hull_mask, is_solid_mask
from topomeasure.space import (
    FiniteSpace,
    build_line_window,
    build_punctured_disk,
    build_strip,
)

SPACES = [
    build_line_window(4),
    build_line_window(6),
    build_punctured_disk(4),
    build_punctured_disk(5),
    build_strip(3, 1),
]


def bounded_cells_mask(sp: FiniteSpace) -> int:
    return sum(1 << c for c in range(sp.cell_count) if sp.is_bounded_mask(1 << c))


def hull_domain(sp: FiniteSpace) -> list[int]:
    """All nonempty bounded connected open-or-closed masks."""
    box = bounded_cells_mask(sp)
    out = []
    sub = box
    while sub:
        if (sp.is_open_mask(sub) or sp.is_closed_mask(sub)) and sp.connected(sub):
            out.append(sub)
        sub = (sub - 1) & box
    return out


_DOMAINS = {sp.name: hull_domain(sp) for sp in SPACES}


@pytest.mark.parametrize("sp", SPACES, ids=lambda s: s.name)
def test_hull_basic_laws(sp: FiniteSpace):
    assert sp.infinity is not None, "hull laws are stated for noncompact spaces"
    domain = _DOMAINS[sp.name]
    assert domain, "enumeration produced an empty domain"
    for a in domain:
        h = hull_mask(sp, a)
        # contains the input, bounded, solid
        assert a & h == a
        assert sp.is_bounded_mask(h)
        assert is_solid_mask(sp, h)
        # fixed point exactly on solid inputs
        assert (h == a) == is_solid_mask(sp, a)
        # idempotent
        assert hull_mask(sp, h) == h
        # kind preserving
        if sp.is_open_mask(a):
            assert sp.is_open_mask(h)
        if sp.is_compact_mask(a):
            assert sp.is_compact_mask(h)


@pytest.mark.parametrize("sp", SPACES, ids=lambda s: s.name)
def test_hull_monotone(sp: FiniteSpace):
    domain = _DOMAINS[sp.name]
    hulls = {a: hull_mask(sp, a) for a in domain}
    for a in domain:
        for b in domain:
            if a & b == a:  # a subset of b
                assert hulls[a] & hulls[b] == hulls[a]


@pytest.mark.parametrize("sp", SPACES, ids=lambda s: s.name)
def test_hulls_of_disjoint_regions_nest_or_avoid(sp: FiniteSpace):
    domain = _DOMAINS[sp.name]
    hulls = {a: hull_mask(sp, a) for a in domain}
    for i, a in enumerate(domain):
        ha = hulls[a]
        for b in domain[i + 1 :]:
            if a & b:
                continue
            hb = hulls[b]
            disjoint = not (ha & hb)
            a_in_b = ha & hb == ha and ha != hb
            b_in_a = ha & hb == hb and ha != hb
            assert disjoint or a_in_b or b_in_a, (
                f"{sp.name}: hulls of disjoint regions "
                f"{sorted(FiniteSpace.cells_of(a))} and "
                f"{sorted(FiniteSpace.cells_of(b))} overlap without nesting"
            )
