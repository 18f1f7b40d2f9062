"""Tests for PBS chain routing, closed-form occupations, and the roundtrip."""
import json

import numpy as np
import pytest

from kerrw import (
    BasisState,
    SizeError,
    all_basis_states,
    build_chain,
    complement,
    occupations_closed_form,
    roundtrip_identity,
    route_basis,
    sweep_occupations,
    sweep_to_csv,
)

# Reference occupations for the built-in presets: input -> per-mode counts.
TABLE_N3_OCC = {
    "HHH": (1, 1, 1), "HHV": (1, 0, 2), "HVH": (0, 2, 1), "HVV": (0, 1, 2),
    "VHH": (2, 1, 0), "VHV": (2, 0, 1), "VVH": (1, 2, 0), "VVV": (1, 1, 1),
}
TABLE_N4_OCC = {
    "HHHH": (1, 1, 1, 1), "HHHV": (1, 1, 0, 2), "HHVH": (1, 0, 2, 1),
    "HHVV": (1, 0, 1, 2), "HVHH": (0, 2, 1, 1), "HVHV": (0, 2, 0, 2),
    "HVVH": (0, 1, 2, 1), "HVVV": (0, 1, 1, 2), "VHHH": (2, 1, 1, 0),
    "VHHV": (2, 1, 0, 1), "VHVH": (2, 0, 2, 0), "VHVV": (2, 0, 1, 1),
    "VVHH": (1, 2, 1, 0), "VVHV": (1, 2, 0, 1), "VVVH": (1, 1, 2, 0),
    "VVVV": (1, 1, 1, 1),
}


class TestTopology:
    @pytest.mark.parametrize("n,pbs_per_side", [(2, 1), (3, 2), (4, 3), (8, 7)])
    def test_pbs_counts(self, n, pbs_per_side):
        topo = build_chain(n)
        assert topo.left_pbs_count == pbs_per_side
        assert topo.right_pbs_count == pbs_per_side
        assert topo.total_pbs_count == 2 * (n - 1)
        assert len(topo.mode_labels) == n

    def test_chain_wiring(self):
        topo = build_chain(4)
        first, mid, last = topo.left_pbs
        assert first.chain_in == "photon_1" and first.new_in == "photon_2"
        assert mid.chain_in == "pbs_1.pass" and mid.new_in == "photon_3"
        assert last.pass_out == "mode_4"
        assert [p.mode_out for p in topo.left_pbs] == ["mode_1", "mode_2", "mode_3"]

    def test_too_small(self):
        with pytest.raises(SizeError):
            build_chain(1)

    def test_dict_dump_is_jsonable(self):
        dumped = json.dumps(build_chain(3).to_dict())
        assert "mode_1" in dumped


class TestRouting:
    def test_reference_rows(self):
        topo3 = build_chain(3)
        assert route_basis(topo3, BasisState.from_string("HHV")) == (1, 0, 2)
        topo4 = build_chain(4)
        assert route_basis(topo4, BasisState.from_string("HVVH")) == (0, 1, 2, 1)
        topo5 = build_chain(5)
        assert route_basis(topo5, BasisState.from_string("HHHHH")) == (1, 1, 1, 1, 1)

    def test_full_reference_tables(self):
        topo3, topo4 = build_chain(3), build_chain(4)
        for key, occ in TABLE_N3_OCC.items():
            assert route_basis(topo3, BasisState.from_string(key)) == occ
        for key, occ in TABLE_N4_OCC.items():
            assert route_basis(topo4, BasisState.from_string(key)) == occ

    def test_closed_form_reference_rows(self):
        assert occupations_closed_form(3, BasisState.from_string("HVH")) == (0, 2, 1)
        assert occupations_closed_form(4, BasisState.from_string("HVHV")) == (0, 2, 0, 2)
        for n in (2, 5, 9):
            all_v = BasisState.from_string("V" * n)
            assert occupations_closed_form(n, all_v) == (1,) * n

    @pytest.mark.parametrize("n", range(2, 11))
    def test_routing_equals_closed_form(self, n):
        topo = build_chain(n)
        for state in all_basis_states(n):
            assert route_basis(topo, state) == occupations_closed_form(n, state)

    @pytest.mark.parametrize("n", range(2, 9))
    def test_photon_conservation_and_entry_range(self, n):
        topo = build_chain(n)
        for state in all_basis_states(n):
            occ = route_basis(topo, state)
            assert sum(occ) == n
            assert all(x in (0, 1, 2) for x in occ)

    def test_two_count_iff_v_then_h(self):
        for n in (3, 5):
            topo = build_chain(n)
            for state in all_basis_states(n):
                occ = route_basis(topo, state)
                bits = state.v_bits
                for k in range(n):
                    expect_two = bits[k] == 1 and bits[(k + 1) % n] == 0
                    assert (occ[k] == 2) == expect_two

    def test_complement_reflection(self):
        rng = np.random.default_rng(99)
        for _ in range(200):
            n = int(rng.integers(2, 10))
            topo = build_chain(n)
            state = BasisState.from_index(n, int(rng.integers(0, 1 << n)))
            occ = np.array(route_basis(topo, state))
            occ_c = np.array(route_basis(topo, complement(state)))
            assert np.array_equal(occ_c, 2 - occ)

    def test_length_mismatch(self):
        topo = build_chain(3)
        with pytest.raises(SizeError):
            route_basis(topo, BasisState.from_string("HH"))
        with pytest.raises(SizeError):
            occupations_closed_form(3, BasisState.from_string("HH"))


class TestRoundtrip:
    def test_reference_cases(self):
        topo3 = build_chain(3)
        hvh = BasisState.from_string("HVH")
        assert roundtrip_identity(topo3, hvh) == hvh
        topo4 = build_chain(4)
        vvvv = BasisState.from_string("VVVV")
        assert roundtrip_identity(topo4, vvvv) == vvvv

    def test_all_states_n6(self):
        topo = build_chain(6)
        for state in all_basis_states(6):
            assert roundtrip_identity(topo, state) == state

    @pytest.mark.parametrize("n", range(2, 9))
    def test_identity_exhaustive(self, n):
        topo = build_chain(n)
        for state in all_basis_states(n):
            assert roundtrip_identity(topo, state) == state

    def test_length_mismatch(self):
        with pytest.raises(SizeError):
            roundtrip_identity(build_chain(4), BasisState.from_string("HHH"))


class TestSweep:
    def test_sweep_rows(self):
        topo = build_chain(2)
        rows = sweep_occupations(topo)
        assert [(str(s), occ) for s, occ in rows] == [
            ("HH", (1, 1)), ("HV", (0, 2)), ("VH", (2, 0)), ("VV", (1, 1)),
        ]

    def test_sweep_csv(self):
        text = sweep_to_csv(build_chain(2))
        lines = text.splitlines()
        assert lines[0] == "input,mode_1,mode_2"
        assert lines[1] == "HH,1,1"
        assert len(lines) == 5
        assert text.endswith("\n")
