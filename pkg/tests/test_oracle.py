"""Engine-versus-oracle equivalence.

The oracle evaluates the extension by literal sup/inf sweeps over full
catalogs built from first principles (bit-matrix order relations, no engine
code).  On every space small enough for it, the engine must agree with the
oracle on every open and every closed region, and the definition-literal
axiom sweeps must agree with the validators' verdicts.
"""

from __future__ import annotations

import pytest

from topomeasure import oracle
from topomeasure.extend import TopMeasure
from topomeasure.registry import RegistryEntry
from topomeasure.solid import downset_catalog, upset_catalog
from topomeasure.space import Region, build_plane_window

PAIRS = [
    RegistryEntry(builder, params, name, True)
    for builder, params in (
        ("interval", (3,)),
        ("circle", (3,)),
        ("circle", (4,)),
        ("line_window", (3,)),
        ("punctured_disk", (3,)),
        ("disk", (3,)),
        ("sphere", (2,)),
    )
    for name in ("uniform", "pointmass", "zero")
]


@pytest.mark.parametrize("entry", PAIRS, ids=lambda e: e.key)
def test_engine_matches_oracle_on_every_region(entry):
    sp = entry.space()
    lam = entry.ssf()
    tm = TopMeasure(lam)
    cache: dict = {}
    checked = 0
    for mask in downset_catalog(sp) + upset_catalog(sp):
        got = tm.mu_mask(mask)
        want = oracle.brute_force_mu(lam.evaluate, Region(sp, mask), cache=cache)
        assert got == want, f"{entry.key}: mask {mask} engine {got} oracle {want}"
        checked += 1
    assert checked >= 4


@pytest.mark.parametrize("entry", PAIRS, ids=lambda e: e.key)
def test_function_axioms_hold_by_literal_sweep(entry):
    sp = entry.space()
    lam = entry.ssf()
    for axiom in ("s1", "s2", "s3"):
        verdict = oracle.exhaustive_axiom_check(lam.evaluate, sp, axiom)
        assert verdict.passed, f"{entry.key}: {axiom} witness {verdict.witness}"


@pytest.mark.parametrize(
    "entry",
    [e for e in PAIRS if e.ssf_name == "uniform"],
    ids=lambda e: e.key,
)
def test_measure_axioms_hold_by_literal_sweep(entry):
    sp = entry.space()
    tm = TopMeasure(entry.ssf())
    for axiom in ("TM1", "TM2", "TM3"):
        verdict = oracle.exhaustive_axiom_check(tm.mu, sp, axiom)
        assert verdict.passed, f"{entry.key}: {axiom} witness {verdict.witness}"


def test_oracle_confirms_additivity_failure_of_two_valued_extension():
    entry = RegistryEntry("disk", (3,), "aarnes", False)
    tm = TopMeasure(entry.ssf())
    verdict = oracle.exhaustive_axiom_check(tm.mu, entry.space(), "TM1")
    assert not verdict.passed and verdict.witness is not None
    a, b = verdict.witness["a"], verdict.witness["b"]
    sp = entry.space()
    assert not a & b
    assert tm.mu_mask(a | b) != tm.mu_mask(a) + tm.mu_mask(b)


def test_oracle_refuses_oversized_spaces_instead_of_degrading():
    sp = build_plane_window(4)
    with pytest.raises(oracle.OracleRefusal):
        oracle.oracle_catalog(sp, "opens")
    with pytest.raises(oracle.OracleRefusal):
        oracle.brute_force_mu(lambda r: 0, Region(sp, 0))
