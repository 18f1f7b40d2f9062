"""Polarizing-beam-splitter chain: topology, routing, and roundtrip identity.

The measurement interferometer is a left chain of n-1 PBSs feeding n
Kerr-coupled modes, mirrored by an identical right chain that restores the
input rails.  A PBS transmits H and reflects V, so with one photon per input
rail the routing is classical bookkeeping over (photon, polarization) pairs:

    PBS_1 combines photons 1 and 2; PBS_k combines the pass-through beam of
    PBS_{k-1} with photon k+1.  The beam into Kerr mode k collects the V
    constituents of the chain beam plus the H constituent of the new photon;
    the pass-through beam carries the rest.  The last pass-through feeds
    mode n.

This yields mode occupations with the closed form

    occ_k = 1 + v_k - v_{(k mod n)+1},   v_i = 1 iff photon i is V,

which route_basis reproduces beam by beam and roundtrip_identity inverts.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import SizeError
from .states import BasisState, Polarization, all_basis_states

# One optical rail: set of (photon index, input polarization) pairs.
PortBeam = frozenset[tuple[int, Polarization]]

OccupationVector = tuple[int, ...]


@dataclass(frozen=True)
class PBSNode:
    """Wiring of one left-chain PBS, ports named by what feeds/consumes them."""

    index: int
    chain_in: str
    new_in: str
    mode_out: str
    pass_out: str


@dataclass(frozen=True)
class NetworkTopology:
    n: int
    left_pbs_count: int
    right_pbs_count: int
    mode_labels: tuple[str, ...]
    left_pbs: tuple[PBSNode, ...]

    @property
    def total_pbs_count(self) -> int:
        return self.left_pbs_count + self.right_pbs_count

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "mode_labels": list(self.mode_labels),
            "left_pbs": [
                {
                    "index": p.index,
                    "chain_in": p.chain_in,
                    "new_in": p.new_in,
                    "mode_out": p.mode_out,
                    "pass_out": p.pass_out,
                }
                for p in self.left_pbs
            ],
            "right_pbs": "mirror of left_pbs in reverse order",
        }


def build_chain(n: int) -> NetworkTopology:
    """Chain topology with n-1 PBSs per side and n Kerr modes."""
    if n < 2:
        raise SizeError(f"need at least 2 photons, got {n}")
    nodes = []
    for k in range(1, n):
        nodes.append(
            PBSNode(
                index=k,
                chain_in="photon_1" if k == 1 else f"pbs_{k - 1}.pass",
                new_in=f"photon_{k + 1}",
                mode_out=f"mode_{k}",
                pass_out=f"mode_{n}" if k == n - 1 else f"pbs_{k + 1}.chain",
            )
        )
    return NetworkTopology(
        n=n,
        left_pbs_count=n - 1,
        right_pbs_count=n - 1,
        mode_labels=tuple(f"mode_{k}" for k in range(1, n + 1)),
        left_pbs=tuple(nodes),
    )


def _split(beam: PortBeam) -> tuple[PortBeam, PortBeam]:
    """Transmitted (H) and reflected (V) constituents of a beam."""
    h = frozenset(c for c in beam if c[1] is Polarization.H)
    v = frozenset(c for c in beam if c[1] is Polarization.V)
    return h, v


def _left_pass(topology: NetworkTopology, state: BasisState) -> list[PortBeam]:
    """Simulate the left chain; returns the n mode beams in mode order."""
    pols = state.polarizations
    chain: PortBeam = frozenset({(1, pols[0])})
    beams: list[PortBeam] = []
    for k in range(1, topology.n):
        new: PortBeam = frozenset({(k + 1, pols[k])})
        chain_h, chain_v = _split(chain)
        new_h, new_v = _split(new)
        beams.append(chain_v | new_h)
        chain = chain_h | new_v
    beams.append(chain)
    return beams


def route_basis(topology: NetworkTopology, state: BasisState) -> OccupationVector:
    """Photon count per Kerr mode, obtained by PBS-by-PBS beam bookkeeping."""
    if state.n != topology.n:
        raise SizeError(f"state has {state.n} photons, topology expects {topology.n}")
    return tuple(len(beam) for beam in _left_pass(topology, state))


def occupations_closed_form(n: int, state: BasisState) -> OccupationVector:
    """Cyclic-difference form of the mode occupations; equals route_basis."""
    if state.n != n:
        raise SizeError(f"state has {state.n} photons, expected {n}")
    if n < 2:
        raise SizeError(f"need at least 2 photons, got {n}")
    v = state.v_bits
    return tuple(1 + v[k] - v[(k + 1) % n] for k in range(n))


def roundtrip_identity(topology: NetworkTopology, state: BasisState) -> BasisState:
    """Route through the left chain and its mirror; must return the input.

    The right-side PBSs run the splitting in reverse: the k-th mirror PBS
    pairs the through beam with mode beam k, emitting photon k+1's output
    rail and the reconstruction of the previous pass-through beam.
    """
    if state.n != topology.n:
        raise SizeError(f"state has {state.n} photons, topology expects {topology.n}")
    n = topology.n
    beams = _left_pass(topology, state)
    out_pols: dict[int, Polarization] = {}
    through = beams[n - 1]
    for k in range(n - 1, 0, -1):
        mode_beam = beams[k - 1]
        through_h, through_v = _split(through)
        mode_h, mode_v = _split(mode_beam)
        exit_rail = through_v | mode_h
        through = through_h | mode_v
        (photon, pol), = exit_rail  # exactly one photon exits per rail
        assert photon == k + 1, "mirror routing misdelivered a photon"
        out_pols[photon] = pol
    (photon, pol), = through
    assert photon == 1, "mirror routing misdelivered photon 1"
    out_pols[1] = pol
    return BasisState(tuple(out_pols[i] for i in range(1, n + 1)))


def sweep_occupations(topology: NetworkTopology) -> list[tuple[BasisState, OccupationVector]]:
    """Routing result for every basis state, in table row order."""
    return [(s, route_basis(topology, s)) for s in all_basis_states(topology.n)]


def sweep_to_csv(topology: NetworkTopology) -> str:
    header = "input," + ",".join(topology.mode_labels)
    lines = [header]
    for state, occ in sweep_occupations(topology):
        lines.append(str(state) + "," + ",".join(str(x) for x in occ))
    return "\n".join(lines) + "\n"
