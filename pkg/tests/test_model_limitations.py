"""Documented limitations of finite models, pinned down with frozen witnesses.

Finite face posets are not Hausdorff: the minimal open superset of a set of
vertices always pulls in the cells joining them.  As a consequence, the
extension of any two-valued feature-counting function fails two-set
additivity on every finite model — the validators are required to find
those witnesses, and these tests freeze the exact ones so a regression in
either direction (a false pass or a changed witness) is caught.
"""

from __future__ import annotations

import pytest

from topomeasure.extend import TopMeasure, validate_tm
from topomeasure.registry import shipped_entries
from topomeasure.solid import is_solid_mask
from topomeasure.space import build_annulus, build_disk
from topomeasure.ssf import (
    make_aarnes_circle,
    make_restricted_measure,
    uniform_vertex_weights,
    validate_ssf,
)

FROZEN_WITNESSES = {
    "sphere-2:point-majority": {"a": [0], "b": [1], "lhs": "1", "rhs": "0"},
    "disk-4:aarnes": {"a": [0], "b": [1], "lhs": "1", "rhs": "0"},
    "punctured_disk-4:aarnes": {"a": [1], "b": [2, 3, 4], "lhs": "1", "rhs": "0"},
}


@pytest.mark.parametrize("key", sorted(FROZEN_WITNESSES))
def test_two_valued_additivity_failure_witness_is_stable(key):
    entry = next(e for e in shipped_entries() if e.key == key)
    report = validate_tm(TopMeasure(entry.ssf()))
    assert report.conditions["TM1"].counterexample == FROZEN_WITNESSES[key]


def test_forced_closure_mechanism_on_the_disk():
    """Splitting the marked rim vertices into two compact pieces loses all
    mass: every open superset of either piece alone misses the feature, but
    the minimal open superset of the whole piece-set meets it."""
    entry = next(e for e in shipped_entries() if e.key == "disk-4:aarnes")
    sp = entry.space()
    tm = TopMeasure(entry.ssf())
    rim_vertices = sum(
        1 << c for c, t in sp.labels.items() if t == "rim" and sp.dim[c] == 0
    )
    one = 1 << 1
    rest = rim_vertices & ~one
    assert tm.mu_mask(one) == 0 and tm.mu_mask(rest) == 0
    assert tm.mu_mask(rim_vertices) == 1
    # every open superset of the vertex set contains higher cells joining the
    # two pieces; that is where the missing mass comes from
    star = sp.up_closure_mask(rim_vertices)
    joining = star & ~rim_vertices
    assert joining and all(sp.dim[c] >= 1 for c in range(sp.cell_count) if joining >> c & 1)
    assert tm.mu_mask(star) == 1


def test_annulus_uniform_pair_is_rightly_excluded():
    """On the quad annulus the restricted uniform measure disagrees with its
    own extension on a closed solid hook (the extension gains a vertex of
    compact content through the minimal open superset), so the pair is not
    shipped.  The witness is frozen."""
    sp = build_annulus(4)
    lam = make_restricted_measure(sp, uniform_vertex_weights(sp))
    tm = TopMeasure(lam)
    hook = sum(1 << c for c in [0, 2, 3, 4, 5, 10, 11, 12, 16])
    assert sp.is_closed_mask(hook) and is_solid_mask(sp, hook)
    assert lam.value(hook) == 5
    assert tm.mu_mask(hook) == 6


def test_full_rim_subcomplex_variant_breaks_inner_regularity():
    """Marking the whole rim circle (edges included) instead of just its
    vertices makes the feature reachable by open sets with no compact
    content, so the function itself stops being inner regular - the reason
    the shipped variant marks vertices only."""
    sp = build_disk(4)
    rim_full = sum(1 << c for c in [1, 2, 3, 4, 9, 10, 11, 12])
    assert sp.is_closed_mask(rim_full)
    lam = make_aarnes_circle(sp, rim_full, 0)
    report = validate_ssf(lam)
    assert not report.passed
    assert report.conditions["s2"].verdict == "fail"
    witness = report.conditions["s2"].counterexample
    # an open tunnel reaching the rim through a single edge: value 1, but no
    # compact subset inside it carries any mass
    assert witness["value"] == "1" and witness["sup_over_compacts"] == "0"
