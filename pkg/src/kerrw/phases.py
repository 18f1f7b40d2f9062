"""Integer phase accounting for the Kerr-coupled mode chain.

Each mode k is assigned an integer coefficient c_k: one photon crossing that
mode advances the probe phase by c_k units of the base shift theta.  All
arithmetic here is exact integer work; theta itself only enters at the
homodyne layer.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import SizeError, UnsupportedError, ValidationError
from .network import OccupationVector, occupations_closed_form
from .states import BasisState, all_basis_states

CoefficientSet = tuple[int, ...]

MAX_TABLE_N = 24

# Built-in per-mode phase multipliers that make the single-V components
# separable by |total| for three and four photons.
_PRESETS: dict[int, CoefficientSet] = {
    3: (1, -2, 3),
    4: (1, -2, 5, -8),
}


def validate_coefficients(coefficients: Sequence[int], n: int | None = None) -> CoefficientSet:
    c = tuple(int(x) for x in coefficients)
    if any(x != int(x) for x in coefficients):
        raise ValidationError("coefficients must be integers")
    if n is not None and len(c) != n:
        raise SizeError(f"expected {n} coefficients, got {len(c)}")
    if len(c) < 2:
        raise SizeError(f"need at least 2 coefficients, got {len(c)}")
    return c


def canonicalize_coefficients(coefficients: Sequence[int]) -> CoefficientSet:
    """Divide out the gcd of nonzero entries and make the first nonzero positive."""
    c = validate_coefficients(coefficients)
    nonzero = [abs(x) for x in c if x != 0]
    if not nonzero:
        return c
    g = math.gcd(*nonzero)
    c = tuple(x // g for x in c)
    first = next(x for x in c if x != 0)
    if first < 0:
        c = tuple(-x for x in c)
    return c


def preset_coefficients(n: int) -> CoefficientSet:
    """Built-in coefficient sets (n = 3 or 4); other sizes need the search."""
    try:
        return _PRESETS[n]
    except KeyError:
        raise UnsupportedError(
            f"no built-in coefficients for n={n}; use the coefficient search"
        ) from None


def total_phase(coefficients: Sequence[int], occupation: OccupationVector) -> int:
    """Exact integer dot product of coefficients with mode occupations."""
    if len(coefficients) != len(occupation):
        raise SizeError(
            f"{len(coefficients)} coefficients vs {len(occupation)} occupations"
        )
    return sum(int(c) * int(o) for c, o in zip(coefficients, occupation))


@dataclass(frozen=True)
class PhaseRow:
    basis: BasisState
    occupation: OccupationVector
    total: int


@dataclass(frozen=True)
class PhaseTable:
    """All 2**n rows (input, occupations, total) in lexicographic H < V order."""

    n: int
    coefficients: CoefficientSet
    rows: tuple[PhaseRow, ...]

    def totals(self) -> tuple[int, ...]:
        return tuple(r.total for r in self.rows)

    def total_of(self, state: BasisState) -> int:
        return self.rows[_row_index(state)].total

    def to_csv(self) -> str:
        header = "input," + ",".join(f"mode_{k}" for k in range(1, self.n + 1)) + ",total"
        lines = [header]
        for row in self.rows:
            occ = ",".join(str(x) for x in row.occupation)
            lines.append(f"{row.basis},{occ},{row.total}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "coefficients": list(self.coefficients),
            "rows": [
                {
                    "input": str(r.basis),
                    "occupations": list(r.occupation),
                    "total": r.total,
                }
                for r in self.rows
            ],
        }


def _row_index(state: BasisState) -> int:
    # Row order is lexicographic in the H/V string: photon 1 is the most
    # significant digit, unlike the little-endian .index encoding.
    idx = 0
    for bit in state.v_bits:
        idx = (idx << 1) | bit
    return idx


def build_phase_table(n: int, coefficients: Sequence[int]) -> PhaseTable:
    if not 2 <= n <= MAX_TABLE_N:
        raise SizeError(f"n must be in 2..{MAX_TABLE_N}, got {n}")
    c = validate_coefficients(coefficients, n)
    rows = []
    for state in all_basis_states(n):
        occ = occupations_closed_form(n, state)
        rows.append(PhaseRow(basis=state, occupation=occ, total=total_phase(c, occ)))
    return PhaseTable(n=n, coefficients=c, rows=tuple(rows))
