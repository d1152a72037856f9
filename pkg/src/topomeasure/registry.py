"""Shipped (space, solid-set function) pairs used by the validation suites.

Every entry names a builder at a fixed resolution together with a solid-set
function on it.  Flags record which suites the pair participates in:

``tm_expected``
    The engine-built extension is expected to satisfy TM1-TM3 on this model.
    Pairs built from genuine measures (restricted vertex-weight measures)
    always do.  The two-valued demo functions (aarnes-circle, point-majority)
    do not: their extensions fail TM1 on every finite model, because the
    minimal open superset of a set of marked vertices always pulls in the
    cells joining them (finite models are not Hausdorff, so two disjoint
    compact pieces of the feature set cannot be separated by opens).  Those
    pairs still pass every solid-set-function axiom and are shipped for the
    demos; the validator is expected to *find* their additivity witnesses.

Exclusions (not shipped as pairs at all):

* (annulus, uniform weights): on the quad annulus the restricted uniform
  measure is not a solid-set function for validation purposes - the model has
  closed hooked regions whose minimal open superset gains a full extra vertex
  of compact content, so the extension disagrees with the function on solid
  sets.  The point-mass and zero measures on the annulus are clean and are
  shipped instead.
* sphere resolution 3 (the 3-sphere boundary complex): all axiom sweeps pass
  where measured, but the full validation suites exceed the shipped budgets
  (tens of seconds per pair), so those pairs are exercised by the demo tables
  only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .space import BUILDERS, FiniteSpace
from .ssf import (
    SolidSetFunction,
    make_aarnes_circle,
    make_point_majority,
    make_restricted_measure,
    uniform_vertex_weights,
)

_SPACE_CACHE: dict[tuple[str, tuple], FiniteSpace] = {}


def build_space(builder: str, params: tuple) -> FiniteSpace:
    key = (builder, params)
    hit = _SPACE_CACHE.get(key)
    if hit is None:
        hit = _SPACE_CACHE[key] = BUILDERS[builder](*params)
    return hit


@dataclass(frozen=True)
class RegistryEntry:
    builder: str
    params: tuple
    ssf_name: str  # "uniform" | "pointmass" | "zero" | "point-majority" | "aarnes"
    tm_expected: bool
    # Whether the full measure-axiom validator runs on this pair at shipped
    # budgets (the annulus catalogs are too large for its quadratic sweeps;
    # those pairs are still covered by the path-agreement and solid-set
    # sweeps).
    tm_checked: bool = True
    note: str = ""

    @property
    def key(self) -> str:
        res = "x".join(map(str, self.params))
        return f"{self.builder}-{res}:{self.ssf_name}"

    def space(self) -> FiniteSpace:
        return build_space(self.builder, self.params)

    def ssf(self) -> SolidSetFunction:
        sp = self.space()
        vertices = [
            c for c in FiniteSpace.cells_of(sp.vertex_mask()) if c != sp.infinity
        ]
        if self.ssf_name == "uniform":
            return make_restricted_measure(sp, uniform_vertex_weights(sp))
        if self.ssf_name == "pointmass":
            middle = vertices[len(vertices) // 2]
            return make_restricted_measure(sp, {middle: Fraction(1)})
        if self.ssf_name == "zero":
            return make_restricted_measure(sp, {})
        if self.ssf_name == "point-majority":
            return make_point_majority(sp, vertices[:3])
        if self.ssf_name == "aarnes":
            rim = sum(
                1 << c
                for c, text in sp.labels.items()
                if text == "rim" and sp.dim[c] == 0
            )
            p = sp.infinity if sp.infinity is not None else 0
            return make_aarnes_circle(sp, rim, p)
        raise ValueError(f"unknown registry solid-set function {self.ssf_name!r}")


_MEASURE_SPACES = (
    ("interval", (2,)),
    ("interval", (3,)),
    ("circle", (3,)),
    ("circle", (4,)),
    ("sphere", (2,)),
    ("disk", (4,)),
    ("line_window", (4,)),
    ("punctured_disk", (4,)),
)

_FORCED_CLOSURE_NOTE = (
    "two-valued demo function; TM1 fails on the finite model because the "
    "minimal open superset of the split feature vertices pulls in the cells "
    "joining them"
)


def shipped_entries() -> list[RegistryEntry]:
    entries: list[RegistryEntry] = []
    for builder, params in _MEASURE_SPACES:
        for name in ("uniform", "pointmass", "zero"):
            entries.append(RegistryEntry(builder, params, name, True))
    for name in ("pointmass", "zero"):
        entries.append(
            RegistryEntry(
                "annulus",
                (4,),
                name,
                True,
                tm_checked=False,
                note="annulus catalogs exceed the validator's sweep budget",
            )
        )
    entries.append(
        RegistryEntry(
            "sphere", (2,), "point-majority", False, note=_FORCED_CLOSURE_NOTE
        )
    )
    entries.append(
        RegistryEntry("disk", (4,), "aarnes", False, note=_FORCED_CLOSURE_NOTE)
    )
    entries.append(
        RegistryEntry("punctured_disk", (4,), "aarnes", False, note=_FORCED_CLOSURE_NOTE)
    )
    return entries


def shipped_compact_entries() -> list[RegistryEntry]:
    """The shipped pairs whose space is compact (the compact extension path
    is defined exactly there)."""
    return [e for e in shipped_entries() if e.space().infinity is None]
