"""Walkthrough: probe phase-shift tables for the PBS/Kerr chain.

Every input polarization pattern sends 0, 1 or 2 photons through each
Kerr-coupled mode; with integer per-mode multipliers the probe picks up an
exact integer total in units of the base phase.  This script prints the
full tables for the built-in 3- and 4-mode coefficient sets and shows the
complement symmetry total(v with all H/V swapped) = 2*sum(c) - total(v).
"""
from kerrw import build_phase_table, complement, preset_coefficients


def show_table(n):
    coeffs = preset_coefficients(n)
    table = build_phase_table(n, coeffs)
    print(f"\n{n}-mode chain, coefficients {coeffs}")
    header = "input".ljust(8) + " ".join(f"m{k}" for k in range(1, n + 1)) + "  total"
    print(header)
    print("-" * len(header))
    for row in table.rows:
        occ = " ".join(f"{x:2d}" for x in row.occupation)
        print(f"{str(row.basis):8s}{occ}  {row.total:4d}")
    return table


def show_complement_symmetry(table):
    two_sum = 2 * sum(table.coefficients)
    print(f"\ncomplement symmetry check (2*sum(c) = {two_sum}):")
    for row in table.rows[: len(table.rows) // 2]:
        mirrored = table.total_of(complement(row.basis))
        print(
            f"  total({row.basis}) = {row.total:4d}   "
            f"total({complement(row.basis)}) = {mirrored:4d}   "
            f"sum = {row.total + mirrored:4d}"
        )


if __name__ == "__main__":
    t3 = show_table(3)
    show_complement_symmetry(t3)
    show_table(4)
    print("\nNote: the all-H and all-V rows always share the total sum(c);")
    print("only the single-V rows need unique |total| values for readout.")
