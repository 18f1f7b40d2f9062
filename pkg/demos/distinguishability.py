"""Walkthrough: why coefficient choice matters for single-V readout.

An X-quadrature measurement of the probe resolves |total| but not its sign,
so a component is identifiable only when its |total| is unique among all
2**n rows.  The built-in sets pass; the near-miss variant (1, -1, 3) fails
because three rows collapse onto |total| = 1.
"""
from kerrw import build_phase_table, check_distinguishability


def show_report(n, coeffs):
    report = check_distinguishability(build_phase_table(n, coeffs))
    verdict = "PASS" if report.passed else "FAIL"
    print(f"\ncoefficients {coeffs}: {verdict}")
    print("  single-V totals:", {str(s): t for s, t in report.w_totals.items()})
    print("  integer margin :", report.integer_margin)
    for w, other, shared in report.collisions:
        print(f"  collision: {w} vs {other} share |total| = {shared}")
    return report


if __name__ == "__main__":
    show_report(3, (1, -2, 3))
    show_report(4, (1, -2, 5, -8))

    print("\nSwapping the middle multiplier for -1 looks harmless but is not:")
    show_report(3, (1, -1, 3))

    print("\nScaling an admissible set keeps it admissible (all totals scale):")
    show_report(3, (2, -4, 6))
