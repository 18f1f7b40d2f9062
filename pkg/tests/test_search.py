"""Tests for the separability verifier and the exact coefficient search.

The oracle here is deliberately primitive: plain itertools enumeration with
totals recomputed from simulated beam routing, sharing no code with the
production DFS or the closed-form occupations.
"""
import itertools
import math

import numpy as np
import pytest

from kerrw import (
    BasisState,
    ResourceLimitError,
    SearchConfig,
    SizeError,
    ValidationError,
    all_basis_states,
    build_chain,
    build_phase_table,
    certify_admissible,
    check_distinguishability,
    find_coefficients,
    minimal_coefficients,
    route_basis,
    total_phase,
    w_components,
)


def oracle_admissible(n, coeffs):
    """Routing-based |total| uniqueness check, independent of production code."""
    topo = build_chain(n)
    states = all_basis_states(n)
    abs_totals = [abs(total_phase(coeffs, route_basis(topo, s))) for s in states]
    for member in w_components(n).members:
        if abs_totals.count(abs_totals[states.index(member)]) != 1:
            return False
    return True


def oracle_minimal(n, max_bound):
    """Exhaustive lex-order deepening over canonical candidates (slow, small n)."""
    for bound in range(1, max_bound + 1):
        for c in itertools.product(range(-bound, bound + 1), repeat=n):
            if max(abs(x) for x in c) != bound:
                continue
            nonzero = [abs(x) for x in c if x != 0]
            if not nonzero or math.gcd(*nonzero) != 1:
                continue
            if next(x for x in c if x != 0) < 0:
                continue
            if oracle_admissible(n, c):
                return bound, c
    return None, None


class TestCheckDistinguishability:
    def test_three_mode_preset_passes(self):
        report = check_distinguishability(build_phase_table(3, (1, -2, 3)))
        assert report.passed
        w_totals = {str(s): t for s, t in report.w_totals.items()}
        assert w_totals == {"HHV": 7, "HVH": -1, "VHH": 0}
        assert report.collisions == ()
        assert report.integer_margin >= 1

    def test_four_mode_preset_passes(self):
        report = check_distinguishability(build_phase_table(4, (1, -2, 5, -8)))
        assert report.passed
        w_totals = {str(s): t for s, t in report.w_totals.items()}
        assert w_totals == {"HHHV": -17, "HHVH": 3, "HVHH": -7, "VHHH": 5}

    def test_minus_one_variant_collides(self):
        # the (1,-1,3) reading makes HVH, VHH and VVH all land on |total| = 1
        report = check_distinguishability(build_phase_table(3, (1, -1, 3)))
        assert not report.passed
        assert report.integer_margin == 0
        colliders = {(str(w), str(u)) for w, u, a in report.collisions if a == 1}
        assert colliders == {
            ("HVH", "VHH"), ("HVH", "VVH"), ("VHH", "HVH"), ("VHH", "VVH"),
        }

    def test_all_zero_collapses_everything(self):
        report = check_distinguishability(build_phase_table(2, (0, 0)))
        assert not report.passed

    def test_margin_value(self):
        # |totals| for (1,-2,3): W at 7,1,0; others at 2,4,5,3,2
        report = check_distinguishability(build_phase_table(3, (1, -2, 3)))
        assert report.integer_margin == 1

    def test_pass_iff_no_collisions_random(self):
        rng = np.random.default_rng(21)
        for _ in range(100):
            n = int(rng.integers(2, 6))
            c = tuple(int(x) for x in rng.integers(-6, 7, size=n))
            report = check_distinguishability(build_phase_table(n, c))
            assert report.passed == (len(report.collisions) == 0)
            assert report.passed == (report.integer_margin >= 1)

    def test_report_dict(self):
        d = check_distinguishability(build_phase_table(3, (1, -2, 3))).to_dict()
        assert d["pass"] is True
        assert d["w_totals"]["HHV"] == 7
        assert d["collisions"] == []


class TestDualRouteAgreement:
    def test_verifier_matches_certifier(self):
        rng = np.random.default_rng(31)
        for _ in range(150):
            n = int(rng.integers(2, 6))
            c = tuple(int(x) for x in rng.integers(-8, 9, size=n))
            report = check_distinguishability(build_phase_table(n, c))
            assert report.passed == certify_admissible(n, c) == oracle_admissible(n, c)

    def test_presets_certified(self):
        assert certify_admissible(3, (1, -2, 3))
        assert certify_admissible(4, (1, -2, 5, -8))


class TestFindCoefficients:
    def test_n2_bound1(self):
        assert find_coefficients(SearchConfig(n=2, magnitude_bound=1)) == (0, 1)

    def test_n3_bound3(self):
        got = find_coefficients(SearchConfig(n=3, magnitude_bound=3))
        assert got == (0, 1, 3)
        assert certify_admissible(3, got)

    def test_infeasible_bound_returns_none(self):
        assert find_coefficients(SearchConfig(n=3, magnitude_bound=2)) is None
        assert find_coefficients(SearchConfig(n=6, magnitude_bound=8)) is None

    def test_bound_monotonicity(self):
        # admissible at B stays admissible (and found) at every larger B
        for bound in (3, 4, 6):
            got = find_coefficients(SearchConfig(n=3, magnitude_bound=bound))
            assert got == (0, 1, 3)

    def test_determinism(self):
        config = SearchConfig(n=4, magnitude_bound=6)
        assert find_coefficients(config) == find_coefficients(config)

    def test_min_range_objective(self):
        got = find_coefficients(SearchConfig(n=3, magnitude_bound=3, objective="min_range"))
        assert got is not None
        assert certify_admissible(3, got)
        # objective value: no admissible set with bound <= 3 has a smaller
        # max row |total| (exhaustive check against the oracle)
        def max_abs_total(c):
            table = build_phase_table(3, c)
            return max(abs(t) for t in table.totals())
        best = min(
            max_abs_total(c)
            for c in itertools.product(range(-3, 4), repeat=3)
            if any(c) and oracle_admissible(3, c)
        )
        assert max_abs_total(got) == best

    def test_config_validation(self):
        with pytest.raises(SizeError):
            SearchConfig(n=1, magnitude_bound=3)
        with pytest.raises(ValidationError):
            SearchConfig(n=3, magnitude_bound=0)
        with pytest.raises(ValidationError):
            SearchConfig(n=3, magnitude_bound=3, objective="nope")

    def test_resource_guards(self):
        with pytest.raises(ResourceLimitError):
            find_coefficients(SearchConfig(n=21, magnitude_bound=2))
        with pytest.raises(ResourceLimitError):
            find_coefficients(SearchConfig(n=3, magnitude_bound=65))


class TestMinimalCoefficients:
    # bounds and lex-min sets cross-validated by two independent enumerations
    FROZEN = {
        2: (1, (0, 1)),
        3: (3, (0, 1, 3)),
        4: (5, (0, 2, -5, -4)),
        5: (6, (0, 5, -6, 6, 4)),
        6: (9, (2, -9, 9, -8, 7, -7)),
    }

    @pytest.mark.parametrize("n", sorted(FROZEN))
    def test_frozen_minima(self, n):
        bound, cset = self.FROZEN[n]
        got = minimal_coefficients(n)
        assert got == cset
        assert max(abs(x) for x in got) == bound
        assert oracle_admissible(n, got)

    @pytest.mark.parametrize("n", [2, 3])
    def test_matches_exhaustive_oracle(self, n):
        bound, cset = oracle_minimal(n, 4)
        assert minimal_coefficients(n) == cset
        assert max(abs(x) for x in minimal_coefficients(n)) == bound

    def test_min_range_returns_certified_set(self):
        got = minimal_coefficients(4, objective="min_range")
        assert oracle_admissible(4, got)
        assert max(abs(x) for x in got) == 5  # same first feasible bound

    def test_ceiling_error(self):
        with pytest.raises(ResourceLimitError):
            minimal_coefficients(6, max_bound=5)

    def test_size_error(self):
        with pytest.raises(SizeError):
            minimal_coefficients(1)


class TestInvariances:
    def test_negation_preserves_admissibility(self):
        rng = np.random.default_rng(41)
        for _ in range(60):
            n = int(rng.integers(2, 6))
            c = tuple(int(x) for x in rng.integers(-6, 7, size=n))
            neg = tuple(-x for x in c)
            a = check_distinguishability(build_phase_table(n, c)).passed
            b = check_distinguishability(build_phase_table(n, neg)).passed
            assert a == b

    def test_rotation_preserves_admissibility(self):
        rng = np.random.default_rng(42)
        for _ in range(60):
            n = int(rng.integers(3, 6))
            c = tuple(int(x) for x in rng.integers(-6, 7, size=n))
            rot = c[1:] + c[:1]
            a = check_distinguishability(build_phase_table(n, c)).passed
            b = check_distinguishability(build_phase_table(n, rot)).passed
            assert a == b

    def test_scaling_preserves_admissibility(self):
        for scale in (2, 3):
            scaled = tuple(scale * x for x in (1, -2, 3))
            assert certify_admissible(3, scaled)

    def test_search_emits_progress(self, caplog):
        with caplog.at_level("INFO", logger="kerrw.search"):
            minimal_coefficients(3)
        assert any("candidates tested" in r.message for r in caplog.records)
