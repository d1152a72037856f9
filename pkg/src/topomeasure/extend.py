"""Extension of a solid-set function to a topological measure, plus validators.

General path (any locally compact model):
  λ₁(A) = λ(Ã) − Σ λ(Bᵢ) over the bounded components Bᵢ of the complement,
          for bounded connected open-or-closed A;
  λ₂(K) = Σ λ₁ over the components of a compact K;
  μ(U)  = λ₂(K_max(U)) where K_max(U) is the maximal compact subset of an
          open U (the sup over all compact subsets is attained there because
          λ₂ is monotone);
  μ(F)  = μ(minimal open superset of F) (the inf over open supersets is
          attained at the unique minimal one).

Compact path (compact spaces only, a distinct route used for cross-checking):
  λ₂ᶜ(K) = Σ over components of [λ(X) − Σ λ(complement components)];
  μ(U)   = sup{λ₂ᶜ(K) : K ⊆ U compact} (evaluated at the maximal compact
           subset once λ₂ᶜ is certified monotone, literally otherwise);
  μ(C)   = λ(X) − μ(X \\ C).

A topological measure must satisfy (TM1) additivity for disjoint pairs in
𝒦 ∪ 𝒪 whose union stays in 𝒦 ∪ 𝒪, (TM2) inner regularity on opens, and
(TM3) outer regularity on closeds.  A topological measure extends to a Borel
measure iff it is subadditive on compact pairs (equivalently open pairs);
otherwise it is a *proper* topological measure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .space import FiniteSpace, Region, RegionError
from .solid import (
    BudgetExceeded,
    bounded_solid_catalog,
    downset_catalog,
    hull_mask,
    upset_catalog,
)
from .ssf import ConditionVerdict, SolidSetFunction, _cells
from .values import INF, Value, format_value, is_inf, vadd, vsub, vsum


# ----- the three-stage extension ------------------------------------------------


def lambda1_mask(lam: SolidSetFunction, mask: int) -> Fraction:
    sp = lam.space
    key = ("lambda1", mask)
    hit = lam._memo.get(key)  # λ₁/λ₂/μ share the per-λ memo table
    if hit is not None:
        return hit
    if not sp.connected(mask):
        raise RegionError("lambda1 requires a connected region")
    if not sp.is_bounded_mask(mask):
        raise RegionError("lambda1 requires a bounded region")
    if not (sp.is_open_mask(mask) or sp.is_closed_mask(mask)):
        raise RegionError("lambda1 requires an open or closed region")
    total = lam.value(hull_mask(sp, mask))
    for m in sp.components_masks(sp.x_mask & ~mask):
        if sp.is_bounded_mask(m):
            total -= lam.value(m)
    lam._memo[key] = total
    return total


def lambda2_mask(lam: SolidSetFunction, mask: int) -> Fraction:
    sp = lam.space
    key = ("lambda2", mask)
    hit = lam._memo.get(key)
    if hit is not None:
        return hit
    if not sp.is_compact_mask(mask):
        raise RegionError("lambda2 requires a compact region")
    total = sum(
        (lambda1_mask(lam, m) for m in sp.components_masks(mask)), Fraction(0)
    )
    lam._memo[key] = total
    return total


def k_max_mask(sp: FiniteSpace, open_mask: int) -> int:
    """The maximal compact subset of an open set: cells whose full down-set
    (in the compactified poset) stays inside the set."""
    out = 0
    for c in FiniteSpace.cells_of(open_mask):
        if sp.down[c] & ~open_mask == 0:
            out |= 1 << c
    return out


def mu_open_mask(lam: SolidSetFunction, mask: int) -> Fraction:
    sp = lam.space
    key = ("mu_open", mask)
    hit = lam._memo.get(key)
    if hit is not None:
        return hit
    if not sp.is_open_mask(mask):
        raise RegionError("mu_open requires an open region")
    total = lambda2_mask(lam, k_max_mask(sp, mask))
    lam._memo[key] = total
    return total


def mu_closed_mask(lam: SolidSetFunction, mask: int) -> Fraction:
    sp = lam.space
    if not sp.is_closed_mask(mask):
        raise RegionError("mu_closed requires a closed region")
    return mu_open_mask(lam, sp.up_closure_mask(mask))


def lambda1(lam: SolidSetFunction, a: Region) -> Fraction:
    return lambda1_mask(lam, a.cells)


def lambda2(lam: SolidSetFunction, k: Region) -> Fraction:
    return lambda2_mask(lam, k.cells)


def mu_open(lam: SolidSetFunction, u: Region) -> Fraction:
    return mu_open_mask(lam, u.cells)


def mu_closed(lam: SolidSetFunction, f: Region) -> Fraction:
    return mu_closed_mask(lam, f.cells)


# ----- compact path ----------------------------------------------------------


def _grubb_lambda2c_mask(lam: SolidSetFunction, closed: int) -> Fraction:
    """λ₂ᶜ: per-component complement-subtraction value of a closed set
    (the compact-path counterpart of λ₂, sharing no code with it)."""
    sp = lam.space
    key = ("grubb-l2", closed)
    hit = lam._memo.get(key)
    if hit is not None:
        return hit
    total_x = lam.value(sp.x_mask)
    out = Fraction(0)
    for comp in sp.components_masks(closed):
        piece = total_x
        for m in sp.components_masks(sp.x_mask & ~comp):
            piece -= lam.value(m)
        out += piece
    lam._memo[key] = out
    return out


def _grubb_lambda2c_monotone(lam: SolidSetFunction) -> bool:
    """Whether λ₂ᶜ is monotone along every one-cell extension of a closed set.

    Single-cell extensions connect the whole lattice of closed sets, so
    monotonicity along them certifies global monotonicity, which in turn lets
    the sup over compact subsets of an open set be read off at the maximal
    one.  Certified once per solid-set function.
    """
    hit = lam._memo.get(("grubb-monotone",))
    if hit is not None:
        return hit
    sp = lam.space
    ok = True
    for d in downset_catalog(sp):
        base = _grubb_lambda2c_mask(lam, d)
        for c in FiniteSpace.cells_of(sp.x_mask & ~d):
            if sp.down[c] & sp.x_mask & ~d & ~(1 << c):
                continue  # not a one-cell extension to another closed set
            if _grubb_lambda2c_mask(lam, d | (1 << c)) < base:
                ok = False
                break
        if not ok:
            break
    lam._memo[("grubb-monotone",)] = ok
    return ok


def grubb_mu_mask(lam: SolidSetFunction, mask: int) -> Fraction:
    sp = lam.space
    if sp.infinity is not None:
        raise RegionError("the compact path is defined on compact spaces only")
    if sp.is_open_mask(mask):
        key = ("grubb-mu-open", mask)
        hit = lam._memo.get(key)
        if hit is not None:
            return hit
        if _grubb_lambda2c_monotone(lam):
            out = _grubb_lambda2c_mask(lam, k_max_mask(sp, mask))
        else:
            out = max(
                _grubb_lambda2c_mask(lam, d)
                for d in downset_catalog(sp)
                if not d & ~mask
            )
        lam._memo[key] = out
        return out
    if sp.is_closed_mask(mask):
        return lam.value(sp.x_mask) - grubb_mu_mask(lam, sp.x_mask & ~mask)
    raise RegionError("grubb_mu requires an open or closed region")


def grubb_mu(lam: SolidSetFunction, a: Region) -> Fraction:
    return grubb_mu_mask(lam, a.cells)


# ----- measure objects --------------------------------------------------------


class TopMeasure:
    """Engine-built extension of a solid-set function."""

    def __init__(self, lam: SolidSetFunction):
        self.space = lam.space
        self.lam = lam
        self.kind = f"extension of {lam.kind}"
        self.engine_built = True
        self.compact_finite = True
        self._memo: dict[int, Value] = {}

    def mu_mask(self, mask: int) -> Value:
        hit = self._memo.get(mask)
        if hit is not None:
            return hit
        sp = self.space
        if sp.is_open_mask(mask):
            out = mu_open_mask(self.lam, mask)
        elif sp.is_closed_mask(mask):
            out = mu_closed_mask(self.lam, mask)
        else:
            raise RegionError("a topological measure is defined on open and closed regions")
        self._memo[mask] = out
        return out

    def mu(self, region: Region) -> Value:
        return self.mu_mask(region.cells)

    @property
    def finite(self) -> bool:
        return not is_inf(self.mu_mask(self.space.x_mask))

    def is_simple(self, cap: Optional[int] = None) -> bool:
        """Whether μ takes only the values 0 and 1 on 𝒦 ∪ 𝒪."""
        sp = self.space
        for m in downset_catalog(sp, cap):
            if sp.is_bounded_mask(m) and self.mu_mask(m) not in (0, 1):
                return False
        for m in upset_catalog(sp, cap):
            if self.mu_mask(m) not in (0, 1):
                return False
        return True


class RawTopMeasure:
    """A user-supplied evaluator on open and closed regions; validated, never
    trusted."""

    def __init__(self, space: FiniteSpace, kind: str, fn: Callable[[int], Value]):
        self.space = space
        self.lam = None
        self.kind = kind
        self.engine_built = False
        self._fn = fn
        self._memo: dict[int, Value] = {}

    def mu_mask(self, mask: int) -> Value:
        sp = self.space
        if not (sp.is_open_mask(mask) or sp.is_closed_mask(mask)):
            raise RegionError("a topological measure is defined on open and closed regions")
        hit = self._memo.get(mask)
        if hit is None:
            hit = self._memo[mask] = self._fn(mask)
        return hit

    def mu(self, region: Region) -> Value:
        return self.mu_mask(region.cells)


def make_rule_threshold_tm(
    sp: FiniteSpace, weights: dict[int, Fraction], threshold: Fraction
) -> RawTopMeasure:
    """The rule-based threshold topological measure: weight below the
    threshold collapses to 0, otherwise the region keeps its weight, and
    unbounded regions weigh infinity (open sets use an inclusive threshold,
    compact sets a strict one)."""
    items = sorted(weights.items())

    def weight(mask: int) -> Value:
        if not sp.is_bounded_mask(mask):
            return INF
        return sum((w for c, w in items if mask >> c & 1), Fraction(0))

    def fn(mask: int) -> Value:
        w = weight(mask)
        if sp.is_open_mask(mask):
            if not is_inf(w) and w <= threshold:
                return Fraction(0)
            return w
        if not is_inf(w) and w < threshold:
            return Fraction(0)
        return w

    return RawTopMeasure(sp, "threshold-rule", fn)


# ----- validator ---------------------------------------------------------------


@dataclass(frozen=True)
class TmValidationReport:
    space: str
    kind: str
    conditions: dict[str, ConditionVerdict] = field(default_factory=dict)
    informational: dict[str, ConditionVerdict] = field(default_factory=dict)
    classification: str = "unknown"

    CORE = ("TM1", "TM2", "TM3")

    @property
    def passed(self) -> bool:
        return all(
            self.conditions[name].verdict == "pass"
            for name in self.CORE
            if name in self.conditions
        )

    @property
    def unknown(self) -> bool:
        return any(c.verdict == "unknown" for c in self.conditions.values())

    def to_json(self) -> dict:
        def block(d: dict[str, ConditionVerdict]) -> dict:
            out = {}
            for name in sorted(d):
                c = d[name]
                entry = {"verdict": c.verdict, "method": c.method, "checked": c.checked}
                if c.counterexample is not None:
                    entry["counterexample"] = c.counterexample
                out[name] = entry
            return out

        return {
            "space": self.space,
            "measure": self.kind,
            "conditions": block(self.conditions),
            "informational": block(self.informational),
            "classification": self.classification,
            "passed": self.passed,
        }


def _pair_witness(a: int, b: int, lhs: Value, rhs: Value, extra: str = "") -> dict:
    w = {
        "a": _cells(a),
        "b": _cells(b),
        "lhs": format_value(lhs),
        "rhs": format_value(rhs),
    }
    if extra:
        w["note"] = extra
    return w


def validate_tm(tm, catalog_cap: int = 200_000) -> TmValidationReport:
    sp = tm.space
    conditions: dict[str, ConditionVerdict] = {}
    informational: dict[str, ConditionVerdict] = {}
    try:
        closeds = downset_catalog(sp, catalog_cap)
        opens = upset_catalog(sp, catalog_cap)
    except BudgetExceeded as exc:
        note = {"reason": str(exc)}
        for name in ("TM1", "TM2", "TM3"):
            conditions[name] = ConditionVerdict("unknown", "catalog enumeration", 0, 0, note)
        return TmValidationReport(sp.name, tm.kind, conditions, informational, "unknown")
    compacts = [m for m in closeds if sp.is_bounded_mask(m)]
    mu = tm.mu_mask

    # TM1: additivity over disjoint pairs of 𝒦 ∪ 𝒪 with union in 𝒦 ∪ 𝒪.
    domain = sorted(set(compacts) | set(opens))
    member = set(domain)
    verdict = None
    checked = 0
    for i, a in enumerate(domain):
        for b in domain[i:]:
            if a & b or (a | b) not in member:
                continue
            checked += 1
            lhs = mu(a | b)
            rhs = vadd(mu(a), mu(b))
            if lhs != rhs:
                verdict = ConditionVerdict(
                    "fail", "disjoint pair sweep over compacts and opens", checked, 0,
                    _pair_witness(a, b, lhs, rhs),
                )
                break
        if verdict:
            break
    conditions["TM1"] = verdict or ConditionVerdict(
        "pass", "disjoint pair sweep over compacts and opens", checked
    )

    # TM2: inner regularity on opens.
    verdict = None
    for u in opens:
        best: Value = Fraction(0)
        for k in compacts:
            if not k & ~u:
                v = mu(k)
                if best < v:
                    best = v
        if best != mu(u):
            verdict = ConditionVerdict(
                "fail", "literal sup over compact subsets", len(opens), 0,
                {"open": _cells(u), "sup": format_value(best), "value": format_value(mu(u))},
            )
            break
    conditions["TM2"] = verdict or ConditionVerdict(
        "pass", "literal sup over compact subsets", len(opens)
    )

    # TM3: outer regularity on closeds (X is always an open superset).
    verdict = None
    for f in closeds:
        best: Optional[Value] = None
        for u in opens:
            if not f & ~u:
                v = mu(u)
                if best is None or v < best:
                    best = v
        limit = INF if best is None else best
        if limit != mu(f):
            verdict = ConditionVerdict(
                "fail", "literal inf over open supersets", len(closeds), 0,
                {"closed": _cells(f), "inf": format_value(limit), "value": format_value(mu(f))},
            )
            break
    conditions["TM3"] = verdict or ConditionVerdict(
        "pass", "literal inf over open supersets", len(closeds)
    )

    # (c1) compact carving: μ(U) = μ(K) + μ(U \ K) for compact K inside open U.
    verdict = None
    checked = 0
    for u in opens:
        for k in compacts:
            if k & ~u:
                continue
            checked += 1
            lhs = mu(u)
            rhs = vadd(mu(k), mu(u & ~k))
            if lhs != rhs:
                verdict = ConditionVerdict(
                    "fail", "compact-inside-open sweep", checked, 0,
                    _pair_witness(u, k, lhs, rhs, "lhs=mu(U), rhs=mu(K)+mu(U\\K)"),
                )
                break
        if verdict:
            break
    conditions["c1"] = verdict or ConditionVerdict("pass", "compact-inside-open sweep", checked)

    # (c2) disjoint compact pairs; (c3) disjoint open pairs.
    conditions["c2"] = _disjoint_pair_sweep(mu, compacts, "disjoint compact pairs")
    conditions["c3"] = _disjoint_pair_sweep(mu, opens, "disjoint open pairs")

    # Closed F, compact K additivity (holds for every topological measure).
    verdict = None
    checked = 0
    for f in closeds:
        for k in compacts:
            if f & k:
                continue
            checked += 1
            lhs = mu(f | k)
            rhs = vadd(mu(f), mu(k))
            if lhs != rhs:
                verdict = ConditionVerdict(
                    "fail", "disjoint closed-compact sweep", checked, 0,
                    _pair_witness(f, k, lhs, rhs),
                )
                break
        if verdict:
            break
    conditions["closed_compact_additivity"] = verdict or ConditionVerdict(
        "pass", "disjoint closed-compact sweep", checked
    )

    # Wheeler-style conditions (compact spaces only).
    if sp.infinity is None:
        conditions.update(_wheeler_conditions(sp, mu, closeds, opens))

    # Informational: additivity on 𝒞 ∪ 𝒪 (fails for some proper measures).
    verdict = None
    checked = 0
    co_member = set(closeds) | set(opens)
    for f in closeds:
        for u in opens:
            if f & u or (f | u) not in co_member:
                continue
            checked += 1
            lhs = mu(f | u)
            rhs = vadd(mu(f), mu(u))
            if lhs != rhs:
                verdict = ConditionVerdict(
                    "fail", "disjoint closed-open sweep", checked, 0,
                    _pair_witness(f, u, lhs, rhs),
                )
                break
        if verdict:
            break
    informational["closed_open_additivity"] = verdict or ConditionVerdict(
        "pass", "disjoint closed-open sweep", checked
    )

    # Subadditivity criteria deciding measure-extendability.
    sub_c = _subadditivity_sweep(mu, compacts, "compact pairs")
    sub_o = _subadditivity_sweep(mu, opens, "open pairs")
    informational["subadditivity_compacts"] = sub_c
    informational["subadditivity_opens"] = sub_o
    classification = (
        "measure-extendable"
        if sub_c.verdict == "pass" and sub_o.verdict == "pass"
        else "proper topological measure"
    )

    # Engine-built extensions: μ must restrict to λ on the bounded solids,
    # and a two-valued λ must yield a two-valued μ.
    if getattr(tm, "engine_built", False) and tm.lam is not None:
        lam = tm.lam
        verdict = None
        solids = bounded_solid_catalog(sp, catalog_cap)
        for m in solids:
            if mu(m) != lam.value(m):
                verdict = ConditionVerdict(
                    "fail", "sweep over bounded solids", len(solids), 0,
                    {
                        "solid": _cells(m),
                        "mu": format_value(mu(m)),
                        "lambda": format_value(lam.value(m)),
                    },
                )
                break
        conditions["mu_equals_lambda_on_solids"] = verdict or ConditionVerdict(
            "pass", "sweep over bounded solids", len(solids)
        )
        if lam.is_two_valued():
            bad = None
            for m in domain:
                if mu(m) not in (0, 1):
                    bad = {"region": _cells(m), "mu": format_value(mu(m))}
                    break
            conditions["simplicity_propagation"] = (
                ConditionVerdict("pass", "two-valued sweep over compacts and opens", len(domain))
                if bad is None
                else ConditionVerdict(
                    "fail", "two-valued sweep over compacts and opens", len(domain), 0, bad
                )
            )

    return TmValidationReport(sp.name, tm.kind, conditions, informational, classification)


def _disjoint_pair_sweep(mu, catalog: list[int], label: str) -> ConditionVerdict:
    checked = 0
    for i, a in enumerate(catalog):
        for b in catalog[i:]:
            if a & b:
                continue
            checked += 1
            lhs = mu(a | b)
            rhs = vadd(mu(a), mu(b))
            if lhs != rhs:
                return ConditionVerdict(
                    "fail", f"{label} sweep", checked, 0, _pair_witness(a, b, lhs, rhs)
                )
    return ConditionVerdict("pass", f"{label} sweep", checked)


def _subadditivity_sweep(mu, catalog: list[int], label: str) -> ConditionVerdict:
    checked = 0
    for i, a in enumerate(catalog):
        for b in catalog[i:]:
            checked += 1
            lhs = mu(a | b)
            rhs = vadd(mu(a), mu(b))
            if not (lhs <= rhs):
                return ConditionVerdict(
                    "fail", f"subadditivity over {label}", checked, 0,
                    _pair_witness(a, b, lhs, rhs, "lhs=mu(A∪B) exceeds rhs=mu(A)+mu(B)"),
                )
    return ConditionVerdict("pass", f"subadditivity over {label}", checked)


def _wheeler_conditions(sp, mu, closeds, opens) -> dict[str, ConditionVerdict]:
    out: dict[str, ConditionVerdict] = {}
    # (w1) monotone on closed sets.
    verdict = None
    checked = 0
    for c in closeds:
        for k in closeds:
            if c & ~k:
                continue
            checked += 1
            if not (mu(c) <= mu(k)):
                verdict = ConditionVerdict(
                    "fail", "nested closed pair sweep", checked, 0,
                    _pair_witness(c, k, mu(c), mu(k), "mu not monotone on closeds"),
                )
                break
        if verdict:
            break
    out["wheeler_monotone_closed"] = verdict or ConditionVerdict(
        "pass", "nested closed pair sweep", checked
    )
    # (w3) each closed C pairs with a disjoint closed K almost filling X.
    total = mu(sp.x_mask)
    verdict = None
    for c in closeds:
        best: Value = Fraction(0)
        for k in closeds:
            if not k & c:
                v = mu(k)
                if best < v:
                    best = v
        if vadd(mu(c), best) != total:
            verdict = ConditionVerdict(
                "fail", "max disjoint closed complement sweep", len(closeds), 0,
                {
                    "closed": _cells(c),
                    "mu_plus_best_disjoint": format_value(vadd(mu(c), best)),
                    "mu_X": format_value(total),
                },
            )
            break
    out["wheeler_disjoint_exhaustion"] = verdict or ConditionVerdict(
        "pass", "max disjoint closed complement sweep", len(closeds)
    )
    # (w4) open-closed complement identity.
    verdict = None
    for u in opens:
        if vadd(mu(u), mu(sp.x_mask & ~u)) != total:
            verdict = ConditionVerdict(
                "fail", "open complement sweep", len(opens), 0,
                {
                    "open": _cells(u),
                    "mu_U_plus_mu_complement": format_value(vadd(mu(u), mu(sp.x_mask & ~u))),
                    "mu_X": format_value(total),
                },
            )
            break
    out["wheeler_open_complement"] = verdict or ConditionVerdict(
        "pass", "open complement sweep", len(opens)
    )
    return out


# ----- counterexample search ----------------------------------------------------


def find_nonsubadditive_cover(
    tm,
    max_cover_size: int = 4,
    target: Optional[Region] = None,
    candidates: Optional[list[Region]] = None,
    catalog_cap: int = 200_000,
) -> Optional[list[Region]]:
    """A family of ≤ max_cover_size open/closed regions covering the target
    (default X) whose μ-sum is strictly below μ(target), or None.

    The default candidate pool is every zero-μ member of 𝒦 ∪ 𝒪; an explicit
    pool can be supplied for spaces whose catalogs exceed the cap.
    """
    sp = tm.space
    if max_cover_size < 2:
        raise ValueError("max_cover_size must be at least 2")
    target_mask = sp.x_mask if target is None else target.cells
    target_mu = tm.mu_mask(target_mask)
    if not target_mu > 0:
        return None
    if candidates is not None:
        pool = [r.cells for r in candidates]
    else:
        closeds = downset_catalog(sp, catalog_cap)
        opens = upset_catalog(sp, catalog_cap)
        pool = sorted(
            m
            for m in set(closeds) | set(opens)
            if m and tm.mu_mask(m) == 0
        )
    # Keep only maximal zero-mu candidates: anything a smaller one covers, a
    # maximal one covers too, at the same (zero) cost.
    pool = [m for m in pool if not any(o != m and not m & ~o for o in pool)]

    def rec(uncovered: int, chosen: tuple[int, ...]) -> Optional[tuple[int, ...]]:
        if uncovered == 0:
            return chosen
        if len(chosen) == max_cover_size:
            return None
        least = uncovered & -uncovered
        for m in pool:
            if m & least:
                hit = rec(uncovered & ~m, chosen + (m,))
                if hit is not None:
                    return hit
        return None

    hit = rec(target_mask, ())
    if hit is None:
        return None
    total = vsum(tm.mu_mask(m) for m in hit)
    if not total < target_mu:
        return None
    return [Region(sp, m) for m in hit]
