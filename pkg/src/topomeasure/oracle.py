"""Independent brute-force reference implementations.

Everything in this module recomputes topology and measure values directly
from definitions by exhaustive subset scans, sharing only the
:class:`~topomeasure.space.FiniteSpace` data type with the fast engine (no
algorithmic code): the order relation is rebuilt here by iterating the cover
relation to a fixpoint, connectivity is decided from a reachability matrix,
and the measure extension evaluates its sup/inf literally over every
enumerated candidate.  The fast modules are certified against this one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .space import FiniteSpace, Region
from .values import INF, Value, vsub, vsum


@dataclass(frozen=True)
class OracleBudget:
    max_cells: int = 18
    max_open_sets: int = 200000
    max_family: int = 4


class OracleRefusal(RuntimeError):
    """The space exceeds the oracle budget; the oracle refuses rather than
    degrading to a partial scan."""


def _check_budget(sp: FiniteSpace, budget: OracleBudget) -> None:
    if sp.cell_count > budget.max_cells:
        raise OracleRefusal(
            f"{sp.name} has {sp.cell_count} cells; oracle budget is "
            f"{budget.max_cells}"
        )


# ----- definition-literal order and topology --------------------------------


def _relation_tables(sp: FiniteSpace) -> tuple[list[int], list[int]]:
    """(below, above) bit-matrices of the full order, self included, rebuilt
    by iterating the cover relation to a fixpoint."""
    key = "oracle-relation"
    hit = sp._cache.get(key)
    if hit is not None:
        return hit
    n = sp.cell_count
    below = [1 << c for c in range(n)]
    changed = True
    while changed:
        changed = False
        for lo, hi in sp.covers:
            merged = below[hi] | below[lo]
            if merged != below[hi]:
                below[hi] = merged
                changed = True
    above = [1 << c for c in range(n)]
    for c in range(n):
        for d in range(n):
            if below[d] >> c & 1:
                above[c] |= 1 << d
    sp._cache[key] = (below, above)
    return below, above


def brute_closure(sp: FiniteSpace, mask: int) -> int:
    below, _ = _relation_tables(sp)
    out = mask
    for c in range(sp.cell_count):
        if mask >> c & 1:
            out |= below[c]
    return out & sp.x_mask


def brute_is_closed(sp: FiniteSpace, mask: int) -> bool:
    return brute_closure(sp, mask) == mask


def brute_is_open(sp: FiniteSpace, mask: int) -> bool:
    below, above = _relation_tables(sp)
    for c in range(sp.cell_count):
        if mask >> c & 1 and above[c] & sp.x_mask & ~mask:
            return False
    return True


def brute_is_bounded(sp: FiniteSpace, mask: int) -> bool:
    if sp.infinity is None:
        return True
    below, _ = _relation_tables(sp)
    for c in range(sp.cell_count):
        if mask >> c & 1 and below[c] >> sp.infinity & 1:
            return False
    return True


def brute_is_compact(sp: FiniteSpace, mask: int) -> bool:
    return brute_is_closed(sp, mask) and brute_is_bounded(sp, mask)


def brute_force_components(sp: FiniteSpace, mask: int) -> list[int]:
    """Components of the comparability graph on ``mask`` via repeated
    single-step neighborhood expansion (no engine BFS code)."""
    below, above = _relation_tables(sp)
    cells = [c for c in range(sp.cell_count) if mask >> c & 1]
    comp_of = {c: c for c in cells}
    changed = True
    while changed:
        changed = False
        for c in cells:
            nbrs = (below[c] | above[c]) & mask
            for d in cells:
                if nbrs >> d & 1 and comp_of[d] != comp_of[c]:
                    tgt = min(comp_of[c], comp_of[d])
                    src = max(comp_of[c], comp_of[d])
                    for e in cells:
                        if comp_of[e] == src:
                            comp_of[e] = tgt
                    changed = True
    out: dict[int, int] = {}
    for c in cells:
        out[comp_of[c]] = out.get(comp_of[c], 0) | 1 << c
    return [out[k] for k in sorted(out)]


def brute_is_connected(sp: FiniteSpace, mask: int) -> bool:
    return len(brute_force_components(sp, mask)) <= 1


def brute_force_solid(sp: FiniteSpace, mask: int) -> bool:
    if not brute_is_connected(sp, mask):
        return False
    comps = brute_force_components(sp, sp.x_mask & ~mask)
    if sp.infinity is None:
        return len(comps) <= 1
    return all(not brute_is_bounded(sp, m) for m in comps)


def brute_force_hull(sp: FiniteSpace, mask: int) -> int:
    out = mask
    for m in brute_force_components(sp, sp.x_mask & ~mask):
        if brute_is_bounded(sp, m):
            out |= m
    return out


# ----- catalogs by full subset scan ------------------------------------------


def _scan_catalogs(sp: FiniteSpace, budget: OracleBudget) -> dict[str, list[int]]:
    key = ("oracle-catalogs", budget)
    hit = sp._cache.get(key)
    if hit is not None:
        return hit
    _check_budget(sp, budget)
    opens: list[int] = []
    compacts: list[int] = []
    compact_solids: list[int] = []
    open_solids_bounded: list[int] = []
    for m in range(1 << sp.cell_count):
        if m & ~sp.x_mask:
            continue
        if brute_is_open(sp, m):
            opens.append(m)
            if len(opens) > budget.max_open_sets:
                raise OracleRefusal(
                    f"{sp.name} has more than {budget.max_open_sets} open sets"
                )
            if brute_is_bounded(sp, m) and brute_force_solid(sp, m):
                open_solids_bounded.append(m)
        if brute_is_compact(sp, m):
            compacts.append(m)
            if brute_force_solid(sp, m):
                compact_solids.append(m)
    hit = {
        "opens": opens,
        "compacts": compacts,
        "compact_solids": compact_solids,
        "open_solids_bounded": open_solids_bounded,
    }
    sp._cache[key] = hit
    return hit


def oracle_catalog(sp: FiniteSpace, kind: str, budget: OracleBudget = OracleBudget()) -> list[int]:
    return _scan_catalogs(sp, budget)[kind]


# ----- literal measure extension ---------------------------------------------


def _brute_lambda1(sp: FiniteSpace, lam: Callable[[int], Value], mask: int) -> Value:
    """Def-literal λ₁: λ(hull) minus the λ-sum over bounded complement parts."""
    hull = brute_force_hull(sp, mask)
    total = lam(hull)
    for m in brute_force_components(sp, sp.x_mask & ~mask):
        if brute_is_bounded(sp, m):
            total = vsub(total, lam(m))
    return total


def _brute_lambda2(sp: FiniteSpace, lam: Callable[[int], Value], mask: int) -> Value:
    return vsum(
        _brute_lambda1(sp, lam, m) for m in brute_force_components(sp, mask)
    )


def brute_force_mu(
    lam_eval: Callable[[Region], Value],
    a: Region,
    budget: OracleBudget = OracleBudget(),
    cache: Optional[dict] = None,
) -> Value:
    """Literal sup/inf evaluation of the extension of λ at an open or closed
    region: sup of λ₂ over every compact subset for open regions, inf of the
    open-set value over every open superset for closed regions.

    ``cache`` (one dict per λ) memoizes the oracle's own λ₂ and open-set
    values across calls; it never shortcuts the literal sup/inf.
    """
    sp = a.space
    cats = _scan_catalogs(sp, budget)
    if cache is None:
        cache = {}

    def lam(mask: int) -> Value:
        return lam_eval(Region(sp, mask))

    def lambda2(mask: int) -> Value:
        key = ("l2", mask)
        if key not in cache:
            cache[key] = _brute_lambda2(sp, lam, mask)
        return cache[key]

    def mu_open(mask: int) -> Value:
        key = ("muo", mask)
        if key in cache:
            return cache[key]
        best: Value = Fraction(0)
        for k in cats["compacts"]:
            if k & ~mask:
                continue
            v = lambda2(k)
            if best < v:
                best = v
        cache[key] = best
        return best

    if brute_is_open(sp, a.cells):
        return mu_open(a.cells)
    if brute_is_closed(sp, a.cells):
        best: Optional[Value] = None
        for u in cats["opens"]:
            if a.cells & ~u:
                continue
            v = mu_open(u)
            if best is None or v < best:
                best = v
        return INF if best is None else best
    raise ValueError("brute_force_mu requires an open or closed region")


# ----- definition-literal axiom sweeps ---------------------------------------


@dataclass(frozen=True)
class OracleVerdict:
    axiom: str
    passed: bool
    witness: Optional[dict] = None


def _disjoint_families(catalog: list[int], max_size: int, inside: int):
    """All families (size 1..max_size) of pairwise disjoint nonempty catalog
    members contained in ``inside``, canonical increasing order."""
    members = [m for m in catalog if m and not m & ~inside]

    def rec(start: int, chosen: tuple[int, ...], used: int):
        if chosen:
            yield chosen
        if len(chosen) == max_size:
            return
        for i in range(start, len(members)):
            m = members[i]
            if m & used:
                continue
            yield from rec(i + 1, chosen + (m,), used | m)

    yield from rec(0, (), 0)


def exhaustive_axiom_check(
    evaluator: Callable[[Region], Value],
    sp: FiniteSpace,
    axiom: str,
    budget: OracleBudget = OracleBudget(),
) -> OracleVerdict:
    """Definition-literal quantifier sweep for one axiom.

    Supported ids: ``s1`` (superadditivity over disjoint compact-solid
    families inside a compact solid), ``s2`` (inner regularity of λ on
    bounded open solids), ``s3`` (outer regularity of λ on compact solids),
    ``TM1`` (additivity for disjoint pairs in 𝒦 ∪ 𝒪 whose union is in
    𝒦 ∪ 𝒪), ``TM2`` (inner regularity of μ on opens), ``TM3`` (outer
    regularity of μ on closeds).  Witnesses are minimal in canonical
    (mask-order) terms.
    """
    cats = _scan_catalogs(sp, budget)

    def ev(mask: int) -> Value:
        return evaluator(Region(sp, mask))

    if axiom == "s1":
        for c in cats["compact_solids"]:
            target = ev(c)
            for fam in _disjoint_families(cats["compact_solids"], budget.max_family, c):
                total = vsum(ev(m) for m in fam)
                if total > target:
                    return OracleVerdict(axiom, False, {
                        "container": c, "family": list(fam),
                        "sum": total, "value": target,
                    })
        return OracleVerdict(axiom, True)

    if axiom == "s2":
        for u in cats["open_solids_bounded"]:
            best: Value = Fraction(0)
            found = False
            for c in cats["compact_solids"]:
                if not c & ~u:
                    found = True
                    v = ev(c)
                    if best < v:
                        best = v
            if found and best != ev(u):
                return OracleVerdict(axiom, False, {
                    "open": u, "sup": best, "value": ev(u),
                })
        return OracleVerdict(axiom, True)

    if axiom == "s3":
        for c in cats["compact_solids"]:
            best: Optional[Value] = None
            for u in cats["open_solids_bounded"]:
                if not c & ~u:
                    v = ev(u)
                    if best is None or v < best:
                        best = v
            if best is not None and best != ev(c):
                return OracleVerdict(axiom, False, {
                    "compact": c, "inf": best, "value": ev(c),
                })
        return OracleVerdict(axiom, True)

    if axiom == "TM1":
        domain = sorted(set(cats["compacts"]) | set(cats["opens"]))
        member = set(domain)
        for i, a in enumerate(domain):
            for b in domain[i:]:
                if a & b or (a | b) not in member:
                    continue
                lhs = ev(a | b)
                rhs = vsum((ev(a), ev(b)))
                if lhs != rhs:
                    return OracleVerdict(axiom, False, {
                        "a": a, "b": b, "union": lhs, "sum": rhs,
                    })
        return OracleVerdict(axiom, True)

    if axiom == "TM2":
        for u in cats["opens"]:
            best: Value = Fraction(0)
            for k in cats["compacts"]:
                if not k & ~u:
                    v = ev(k)
                    if best < v:
                        best = v
            if best != ev(u):
                return OracleVerdict(axiom, False, {"open": u, "sup": best, "value": ev(u)})
        return OracleVerdict(axiom, True)

    if axiom == "TM3":
        below, _ = _relation_tables(sp)
        for f in range(1 << sp.cell_count):
            if f & ~sp.x_mask or not brute_is_closed(sp, f):
                continue
            best: Optional[Value] = None
            for u in cats["opens"]:
                if not f & ~u:
                    v = ev(u)
                    if best is None or v < best:
                        best = v
            target = ev(f)
            limit = INF if best is None else best
            if limit != target:
                return OracleVerdict(axiom, False, {"closed": f, "inf": limit, "value": target})
        return OracleVerdict(axiom, True)

    raise ValueError(f"unknown axiom id {axiom!r}")
