"""Walkthrough: exact search for the smallest admissible coefficient sets.

minimal_coefficients deepens the magnitude bound B = 1, 2, ... and scans
each shell exhaustively (with rotation/sign symmetry and partial-sum
collision pruning), so the returned bound is provably minimal.  The bound
grows quickly with the photon count: isolating n single-V rows among 2**n
row totals needs ever larger integers.

Run with an integer argument to extend the sweep (n=8 takes a few seconds):
    python demos/coefficient_search.py 8
"""
import sys
import time

from kerrw import (
    SearchConfig,
    build_phase_table,
    certify_admissible,
    check_distinguishability,
    find_coefficients,
    minimal_coefficients,
)

if __name__ == "__main__":
    n_max = int(sys.argv[1]) if len(sys.argv) > 1 else 6

    print("n  minimal max|c|  coefficients                 max|total|  time")
    print("-" * 68)
    for n in range(2, n_max + 1):
        start = time.monotonic()
        coeffs = minimal_coefficients(n)
        elapsed = time.monotonic() - start
        table = build_phase_table(n, coeffs)
        bound = max(abs(c) for c in coeffs)
        spread = max(abs(t) for t in table.totals())
        print(f"{n}  {bound:14d}  {str(coeffs):27s}  {spread:9d}  {elapsed:5.2f}s")
        assert certify_admissible(n, coeffs)

    print("\nBounded search: is anything admissible for n=3 with max|c| <= 2?")
    print(" ", find_coefficients(SearchConfig(n=3, magnitude_bound=2)))

    print("\nAlternative objective: minimize the largest row |total| instead")
    coeffs = minimal_coefficients(4, objective="min_range")
    report = check_distinguishability(build_phase_table(4, coeffs))
    spread = max(abs(t) for t in build_phase_table(4, coeffs).totals())
    print(f"  n=4 min_range -> {coeffs}, max|total| = {spread}, pass = {report.passed}")
