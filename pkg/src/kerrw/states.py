"""Polarization basis states and sparse superpositions.

A basis state is an ordered tuple of H/V polarizations, one per photon,
with photon 1 leftmost.  Superpositions are kept as sparse maps from basis
state to complex amplitude.  Basis states also carry a canonical integer
encoding (bit i-1 set iff photon i is V) so sweeps and tables have one
fixed order.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence

from .errors import SizeError, ValidationError

NORM_TOL = 1e-9
PRUNE_TOL = 1e-12


class Polarization(Enum):
    H = "H"
    V = "V"

    def flipped(self) -> "Polarization":
        return Polarization.V if self is Polarization.H else Polarization.H

    def __str__(self) -> str:
        return self.value


H = Polarization.H
V = Polarization.V


@dataclass(frozen=True)
class BasisState:
    """Ordered polarizations of n >= 2 photons; hashable and immutable."""

    polarizations: tuple[Polarization, ...]

    def __post_init__(self) -> None:
        if len(self.polarizations) < 2:
            raise SizeError(f"need at least 2 photons, got {len(self.polarizations)}")
        if not all(isinstance(p, Polarization) for p in self.polarizations):
            raise ValidationError("polarizations must be Polarization members")

    @classmethod
    def from_string(cls, s: str) -> "BasisState":
        try:
            return cls(tuple(Polarization(ch) for ch in s))
        except ValueError as exc:
            raise ValidationError(f"invalid polarization string {s!r}") from exc

    @classmethod
    def from_index(cls, n: int, index: int) -> "BasisState":
        """Inverse of .index: bit i-1 of index set iff photon i is V."""
        if n < 2:
            raise SizeError(f"need at least 2 photons, got {n}")
        if not 0 <= index < (1 << n):
            raise ValidationError(f"index {index} out of range for n={n}")
        return cls(tuple(V if (index >> i) & 1 else H for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.polarizations)

    @property
    def index(self) -> int:
        """Little-endian V-bit encoding: photon i contributes 2**(i-1) when V."""
        idx = 0
        for i, p in enumerate(self.polarizations):
            if p is V:
                idx |= 1 << i
        return idx

    @property
    def v_bits(self) -> tuple[int, ...]:
        return tuple(1 if p is V else 0 for p in self.polarizations)

    @property
    def weight(self) -> int:
        """Number of V-polarized photons."""
        return sum(self.v_bits)

    def complement(self) -> "BasisState":
        return BasisState(tuple(p.flipped() for p in self.polarizations))

    def __str__(self) -> str:
        return "".join(p.value for p in self.polarizations)

    def __repr__(self) -> str:
        return f"BasisState({self})"


def complement(state: BasisState) -> BasisState:
    """Swap every H for V and vice versa."""
    return state.complement()


def all_basis_states(n: int) -> list[BasisState]:
    """All 2**n basis states in lexicographic H < V order (HH..H first)."""
    if n < 2:
        raise SizeError(f"need at least 2 photons, got {n}")
    return [BasisState(pols) for pols in itertools.product((H, V), repeat=n)]


@dataclass(frozen=True)
class WComponentSet:
    """The n basis states with exactly one V photon.

    Member order runs from V-in-last-position to V-in-first-position,
    e.g. (HHV, HVH, VHH) for n = 3.
    """

    n: int
    members: tuple[BasisState, ...]

    def __iter__(self):
        return iter(self.members)


def w_components(n: int) -> WComponentSet:
    if n < 2:
        raise SizeError(f"need at least 2 photons, got {n}")
    members = []
    for pos in range(n - 1, -1, -1):
        pols = tuple(V if i == pos else H for i in range(n))
        members.append(BasisState(pols))
    return WComponentSet(n=n, members=tuple(members))


@dataclass(frozen=True)
class PhotonicState:
    """Sparse normalized superposition over n-photon basis states.

    Treat as immutable: the amplitude map is never mutated after construction.
    """

    n: int
    amplitudes: dict[BasisState, complex]

    @classmethod
    def from_amplitudes(
        cls, n: int, amplitudes: Mapping[BasisState, complex]
    ) -> "PhotonicState":
        """Validate lengths and normalization, pruning near-zero entries."""
        if n < 2:
            raise SizeError(f"need at least 2 photons, got {n}")
        pruned: dict[BasisState, complex] = {}
        for state, amp in amplitudes.items():
            if state.n != n:
                raise SizeError(f"basis state {state} has {state.n} photons, expected {n}")
            if abs(amp) >= PRUNE_TOL:
                pruned[state] = complex(amp)
        norm_sq = sum(abs(a) ** 2 for a in pruned.values())
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise ValidationError(f"state not normalized: sum |a|^2 = {norm_sq}")
        return cls(n=n, amplitudes=pruned)

    @property
    def support(self) -> list[BasisState]:
        return sorted(self.amplitudes, key=lambda s: s.index)

    def probability(self, state: BasisState) -> float:
        return abs(self.amplitudes.get(state, 0.0)) ** 2

    def isclose(self, other: "PhotonicState", atol: float = 1e-9) -> bool:
        if self.n != other.n:
            return False
        keys = set(self.amplitudes) | set(other.amplitudes)
        return all(
            abs(self.amplitudes.get(k, 0.0) - other.amplitudes.get(k, 0.0)) <= atol
            for k in keys
        )

    def __repr__(self) -> str:
        terms = ", ".join(f"{s}: {a:.4g}" for s, a in sorted(
            self.amplitudes.items(), key=lambda kv: kv[0].index))
        return f"PhotonicState({terms})"


def make_product_state(
    per_photon: Sequence[tuple[complex, complex]]
) -> PhotonicState:
    """Tensor product of single-photon states (amp_H, amp_V) per photon.

    Each pair must be normalized; the expanded state has one entry per
    combination of nonzero factors.
    """
    if len(per_photon) < 2:
        raise SizeError(f"need at least 2 photons, got {len(per_photon)}")
    for i, (a_h, a_v) in enumerate(per_photon):
        norm_sq = abs(a_h) ** 2 + abs(a_v) ** 2
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise ValidationError(
                f"photon {i + 1} amplitudes not normalized: |aH|^2+|aV|^2 = {norm_sq}"
            )
    n = len(per_photon)
    amps: dict[BasisState, complex] = {}
    for pols in itertools.product((H, V), repeat=n):
        amp = complex(1.0)
        for (a_h, a_v), p in zip(per_photon, pols):
            amp *= a_h if p is H else a_v
        if abs(amp) >= PRUNE_TOL:
            amps[BasisState(pols)] = amp
    return PhotonicState.from_amplitudes(n, amps)


def make_w_state(
    n: int, amplitudes: Sequence[complex] | None = None
) -> PhotonicState:
    """Superposition over the single-V components, default uniform 1/sqrt(n).

    Custom amplitudes follow the component order of w_components(n).
    """
    if n < 2:
        raise SizeError(f"need at least 2 photons, got {n}")
    comps = w_components(n)
    if amplitudes is None:
        amp = 1.0 / math.sqrt(n)
        amps = {m: complex(amp) for m in comps.members}
    else:
        if len(amplitudes) != n:
            raise SizeError(f"expected {n} amplitudes, got {len(amplitudes)}")
        norm_sq = sum(abs(a) ** 2 for a in amplitudes)
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise ValidationError(f"amplitudes not normalized: sum |a|^2 = {norm_sq}")
        amps = {m: complex(a) for m, a in zip(comps.members, amplitudes)}
    return PhotonicState.from_amplitudes(n, amps)


def state_to_jsonable(state: PhotonicState) -> dict:
    """JSON-friendly form: basis strings to [re, im] amplitude pairs."""
    return {
        "n": state.n,
        "amplitudes": {
            str(s): [a.real, a.imag]
            for s, a in sorted(state.amplitudes.items(), key=lambda kv: kv[0].index)
        },
    }


def state_from_jsonable(obj: Mapping) -> PhotonicState:
    """Parse either a sparse amplitude map or per-photon product amplitudes.

    Accepted forms:
      {"n": 3, "amplitudes": {"HHV": [re, im], ...}}
      {"product": [[[reH, imH], [reV, imV]], ...]}
    """
    if "product" in obj:
        pairs = []
        for entry in obj["product"]:
            (re_h, im_h), (re_v, im_v) = entry
            pairs.append((complex(re_h, im_h), complex(re_v, im_v)))
        return make_product_state(pairs)
    if "amplitudes" in obj:
        n = int(obj["n"])
        amps = {
            BasisState.from_string(key): complex(re, im)
            for key, (re, im) in obj["amplitudes"].items()
        }
        return PhotonicState.from_amplitudes(n, amps)
    raise ValidationError("state object needs either 'amplitudes' or 'product'")
