"""Separability verification and exact coefficient search.

Verification: a coefficient set is admissible when every single-V row's
|total| is unique among all 2**n row totals, so an X-quadrature readout
(blind to the sign of the phase) identifies each component unambiguously.
Non-single-V rows may collide with each other freely.

Search: row totals have the edge form

    t(v) = sumc + sum_{falling k} c_k - sum_{rising k} c_k

where falling/rising edge positions alternate around the mode ring, and the
single-V rows are exactly the one-arc patterns t_i = sumc + (c_i - c_{i-1}).
Two rows with equal totals collide whatever the probe convention, and total
equality is independent of sumc, so any determined pattern sum that matches a
determined single-V difference kills an entire DFS subtree.  The solver
enumerates shells max|c| = B in lexicographic order with:

  * rotation x sign quotient: admissibility is invariant under cyclic
    rotation of the coefficients and under global negation (reflection is
    NOT invariant and is not used), so only candidates with c_1 = +B are
    scanned and orbits are expanded afterwards;
  * partial-sum collision pruning at one-arc order (all pairwise coefficient
    differences) and two-arc order (alternating four-position sums);
  * a complete gray-code |total| uniqueness check at each surviving leaf.

Every returned set is re-verified through the beam-routing path, which
shares no code with the closed-form totals used here.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import ResourceLimitError, SizeError, ValidationError
from .network import build_chain, route_basis
from .phases import CoefficientSet, PhaseTable, total_phase, validate_coefficients
from .states import BasisState, all_basis_states, w_components

logger = logging.getLogger(__name__)

MAX_N = 20
MAX_BOUND = 64

OBJECTIVES = ("min_max_abs", "min_range")


@dataclass(frozen=True)
class SearchConfig:
    """Bounded-coefficient search request.

    objective "min_max_abs" minimizes the largest |c_k|; "min_range" minimizes
    the largest row |total| (the quantity the homodyne guard max|S|*theta <= pi
    budgets).  Ties always break to the lexicographically smallest canonical
    set.
    """

    n: int
    magnitude_bound: int
    objective: str = "min_max_abs"

    def __post_init__(self) -> None:
        if self.n < 2:
            raise SizeError(f"need at least 2 modes, got n={self.n}")
        if self.magnitude_bound < 1:
            raise ValidationError(f"magnitude bound must be >= 1, got {self.magnitude_bound}")
        if self.objective not in OBJECTIVES:
            raise ValidationError(f"objective must be one of {OBJECTIVES}")


@dataclass(frozen=True)
class DistinguishabilityReport:
    """Outcome of the |total| uniqueness check for the single-V components."""

    n: int
    coefficients: CoefficientSet
    w_totals: dict[BasisState, int]
    passed: bool
    collisions: tuple[tuple[BasisState, BasisState, int], ...]
    integer_margin: int

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "coefficients": list(self.coefficients),
            "pass": self.passed,
            "w_totals": {str(s): t for s, t in self.w_totals.items()},
            "collisions": [
                {"w_component": str(w), "other": str(u), "abs_total": a}
                for w, u, a in self.collisions
            ],
            "integer_margin": self.integer_margin,
        }


def check_distinguishability(table: PhaseTable) -> DistinguishabilityReport:
    """Report whether every single-V row's |total| is unique among all rows."""
    comps = w_components(table.n)
    w_totals = {m: table.total_of(m) for m in comps.members}
    collisions = []
    margin: int | None = None
    for member in comps.members:
        target = abs(w_totals[member])
        for row in table.rows:
            if row.basis == member:
                continue
            d = abs(abs(row.total) - target)
            if d == 0:
                collisions.append((member, row.basis, target))
            if margin is None or d < margin:
                margin = d
    return DistinguishabilityReport(
        n=table.n,
        coefficients=table.coefficients,
        w_totals=w_totals,
        passed=not collisions,
        collisions=tuple(collisions),
        integer_margin=0 if collisions else int(margin if margin is not None else 0),
    )


def certify_admissible(n: int, coefficients: CoefficientSet) -> bool:
    """Independent admissibility check built on simulated beam routing.

    Recomputes every occupation with route_basis rather than the closed form,
    then checks single-V |total| uniqueness directly.
    """
    c = validate_coefficients(coefficients, n)
    topology = build_chain(n)
    totals = [total_phase(c, route_basis(topology, s)) for s in all_basis_states(n)]
    abs_totals = [abs(t) for t in totals]
    states = all_basis_states(n)
    for member in w_components(n).members:
        idx = states.index(member)
        if abs_totals.count(abs_totals[idx]) != 1:
            return False
    return True


# --- exact DFS core -------------------------------------------------------


@njit(cache=True)
def _leaf_check(c, n, wmark, wcount, gen):
    """Complete |total| uniqueness check; returns (ok, max_abs_total, gen)."""
    sumc = 0
    for k in range(n):
        sumc += c[k]
    gen += 1
    for i in range(n):
        prev = c[i - 1] if i > 0 else c[n - 1]
        a = abs(sumc + c[i] - prev)
        if wmark[a] == gen:
            return False, 0, gen
        wmark[a] = gen
        wcount[a] = 0
    t = sumc
    mx = abs(t)
    if wmark[abs(t)] == gen:
        wcount[abs(t)] += 1
    v = 0
    for step in range(1, 1 << n):
        g = 0
        s = step
        while s & 1 == 0:
            s >>= 1
            g += 1
        prev = c[g - 1] if g > 0 else c[n - 1]
        delta = c[g] - prev
        if (v >> g) & 1:
            t -= delta
        else:
            t += delta
        v ^= 1 << g
        a = abs(t)
        if a > mx:
            mx = a
        if wmark[a] == gen:
            wcount[a] += 1
            if wcount[a] > 1:
                return False, 0, gen
    for i in range(n):
        prev = c[i - 1] if i > 0 else c[n - 1]
        if wcount[abs(sumc + c[i] - prev)] != 1:
            return False, 0, gen
    return True, mx, gen


@njit(cache=True)
def _scan_shell(n, B, reps, objs, stats):
    """Collect admissible candidates with c_1 = +B and max|c| = B.

    reps/objs hold the first reps.shape[0] hits; the return value is the true
    count so the caller can detect overflow.  stats accumulates
    (candidates tested, leaves fully checked).
    """
    off = 4 * B
    all_diffs = np.zeros(8 * B + 1, dtype=np.int64)   # pairwise diffs c_a - c_b
    adjv = np.zeros(8 * B + 1, dtype=np.int64)        # determined single-V diffs
    arc2 = np.zeros(8 * B + 1, dtype=np.int64)        # determined two-arc sums
    wmark = np.zeros(4 * n * B + 2, dtype=np.int64)
    wcount = np.zeros(4 * n * B + 2, dtype=np.int64)
    gen = 0
    cap = reps.shape[0]
    found = 0
    c = np.zeros(n, dtype=np.int64)
    val = np.zeros(n, dtype=np.int64)
    k = 0
    val[0] = B
    while k >= 0:
        if val[k] > B:
            k -= 1
            if k >= 0:
                ck = c[k]
                for j in range(k):
                    all_diffs[ck - c[j] + off] -= 1
                    all_diffs[c[j] - ck + off] -= 1
                if k > 0:
                    adjv[ck - c[k - 1] + off] -= 1
                    for j2 in range(k):
                        for j1 in range(j2):
                            for j3 in range(j2 + 1, k):
                                s = c[j1] - c[j2] + c[j3] - ck
                                arc2[s + off] -= 1
                                arc2[-s + off] -= 1
                val[k] += 1
            continue
        ck = val[k]
        stats[0] += 1
        ok = True
        dk = 0
        if k > 0:
            dk = ck - c[k - 1]
            # single-V diff dk vs: empty/full pattern (0), pairwise diffs,
            # two-arc sums, and previously determined single-V diffs
            if dk == 0 or all_diffs[dk + off] > 0 or adjv[dk + off] > 0 or arc2[dk + off] > 0:
                ok = False
            if ok:
                for j in range(k - 1):
                    v1 = ck - c[j]
                    v2 = c[j] - ck
                    if adjv[v1 + off] > 0 or adjv[v2 + off] > 0 or v1 == dk or v2 == dk:
                        ok = False
                        break
            if ok and k >= 3:
                for j2 in range(k):
                    if not ok:
                        break
                    for j1 in range(j2):
                        if not ok:
                            break
                        for j3 in range(j2 + 1, k):
                            s = c[j1] - c[j2] + c[j3] - ck
                            if adjv[s + off] > 0 or adjv[-s + off] > 0 or s == dk or -s == dk:
                                ok = False
                                break
        if ok and k == n - 1:
            d0 = c[0] - ck
            if d0 == 0 or all_diffs[d0 + off] > 0 or adjv[d0 + off] > 0 or arc2[d0 + off] > 0 or d0 == dk:
                ok = False
            if ok:
                for j in range(1, k):
                    if ck - c[j] == d0 or c[j] - ck == d0:
                        ok = False
                        break
        if not ok:
            val[k] += 1
            continue
        if k == n - 1:
            c[k] = ck
            mx = 0
            for j in range(n):
                if abs(c[j]) > mx:
                    mx = abs(c[j])
            if mx == B:
                stats[1] += 1
                adm, obj, gen = _leaf_check(c, n, wmark, wcount, gen)
                if adm:
                    g = 0
                    for j in range(n):
                        a = abs(c[j])
                        if a > 0:
                            if g == 0:
                                g = a
                            else:
                                while a:
                                    g, a = a, g % a
                    if g == 1:  # primitive representatives only
                        if found < cap:
                            for j in range(n):
                                reps[found, j] = c[j]
                            objs[found] = obj
                        found += 1
            val[k] += 1
            continue
        c[k] = ck
        for j in range(k):
            all_diffs[ck - c[j] + off] += 1
            all_diffs[c[j] - ck + off] += 1
        if k > 0:
            adjv[ck - c[k - 1] + off] += 1
            for j2 in range(k):
                for j1 in range(j2):
                    for j3 in range(j2 + 1, k):
                        s = c[j1] - c[j2] + c[j3] - ck
                        arc2[s + off] += 1
                        arc2[-s + off] += 1
        k += 1
        val[k] = -B
    return found


def _orbit_canonical_min(candidates: np.ndarray, n: int) -> CoefficientSet:
    """Lex-min canonical form over all rotation x sign orbit members."""
    best: tuple[int, ...] | None = None
    for row in candidates:
        base = tuple(int(x) for x in row)
        for r in range(n):
            rot = base[r:] + base[:r]
            for sgn in (1, -1):
                cand = tuple(sgn * x for x in rot)
                first = next((x for x in cand if x != 0), 0)
                if first < 0:
                    continue
                if best is None or cand < best:
                    best = cand
    assert best is not None
    return best


def _scan_shell_all(n: int, bound: int) -> tuple[np.ndarray, np.ndarray, tuple[int, int]]:
    """Run one shell scan, growing the buffer if it overflows."""
    cap = 1 << 12
    while True:
        reps = np.zeros((cap, n), dtype=np.int64)
        objs = np.zeros(cap, dtype=np.int64)
        stats = np.zeros(2, dtype=np.int64)
        found = _scan_shell(n, bound, reps, objs, stats)
        if found <= cap:
            return reps[:found], objs[:found], (int(stats[0]), int(stats[1]))
        cap = found


def _guard(config: SearchConfig) -> None:
    if config.n > MAX_N:
        raise ResourceLimitError(f"n={config.n} exceeds the search ceiling {MAX_N}")
    if config.magnitude_bound > MAX_BOUND:
        raise ResourceLimitError(
            f"bound {config.magnitude_bound} exceeds the search ceiling {MAX_BOUND}"
        )


def find_coefficients(config: SearchConfig) -> CoefficientSet | None:
    """Optimal admissible canonical set with all |c_k| <= bound, or None.

    Deterministic: shells are scanned in increasing bound order and ties break
    to the lexicographically smallest canonical set.  The result is re-verified
    through the routing-based certifier before being returned.
    """
    _guard(config)
    n, bound = config.n, config.magnitude_bound
    best: CoefficientSet | None = None
    best_obj: int | None = None
    for b in range(1, bound + 1):
        reps, objs, (tested, leaves) = _scan_shell_all(n, b)
        logger.info(
            "search n=%d shell B=%d: %d candidates tested, %d leaves checked, "
            "%d admissible, current best %s",
            n, b, tested, leaves, len(reps), best,
        )
        if len(reps) == 0:
            continue
        if config.objective == "min_max_abs":
            best = _orbit_canonical_min(reps, n)
            break
        obj_min = int(objs.min())
        if best_obj is None or obj_min < best_obj:
            best_obj = obj_min
            best = _orbit_canonical_min(reps[objs == obj_min], n)
        elif obj_min == best_obj:
            cand = _orbit_canonical_min(reps[objs == obj_min], n)
            if best is None or cand < best:
                best = cand
    if best is None:
        return None
    if not certify_admissible(n, best):
        raise AssertionError(f"search returned a non-admissible set {best}")
    return best


def check_distinguishability_for(n: int, coefficients: CoefficientSet) -> DistinguishabilityReport:
    """Convenience wrapper: build the phase table and check it."""
    from .phases import build_phase_table

    return check_distinguishability(build_phase_table(n, coefficients))


def minimal_coefficients(
    n: int, objective: str = "min_max_abs", max_bound: int = MAX_BOUND
) -> CoefficientSet:
    """Admissible set optimal under the objective, deepening the bound from 1.

    Raises ResourceLimitError when no admissible set exists within max_bound.
    """
    if n < 2:
        raise SizeError(f"need at least 2 modes, got n={n}")
    if max_bound > MAX_BOUND:
        raise ResourceLimitError(f"max_bound {max_bound} exceeds the ceiling {MAX_BOUND}")
    for bound in range(1, max_bound + 1):
        config = SearchConfig(n=n, magnitude_bound=bound, objective=objective)
        _guard(config)
        reps, objs, (tested, leaves) = _scan_shell_all(n, bound)
        logger.info(
            "deepening n=%d B=%d: %d candidates tested, %d leaves checked, %d admissible",
            n, bound, tested, leaves, len(reps),
        )
        if len(reps) == 0:
            continue
        # First feasible bound: optimal for min_max_abs by construction; for
        # min_range, optimal within this bound per the deepening contract.
        if objective == "min_max_abs":
            best = _orbit_canonical_min(reps, n)
        else:
            obj_min = int(objs.min())
            best = _orbit_canonical_min(reps[objs == obj_min], n)
        if not certify_admissible(n, best):
            raise AssertionError(f"search returned a non-admissible set {best}")
        return best
    raise ResourceLimitError(
        f"no admissible set for n={n} with max|c| <= {max_bound}"
    )
