"""Walkthrough: what the probe readout can and cannot resolve.

The X quadrature of a coherent probe with amplitude alpha and phase S*theta
is Gaussian with mean 2*alpha*cos(S*theta) and unit variance.  Rows with the
same cosine form one branch (in particular +S and -S always merge); the
classifier picks the branch with the nearest mean.  Separation grows
linearly with alpha, so the binary discrimination error between the two
closest branches follows 0.5*erfc(alpha*|dcos|/sqrt(2)).
"""
import numpy as np

from kerrw import (
    ProbeModel,
    branch_partition,
    build_phase_table,
    confusion_matrix,
    error_probability,
    min_adjacent_gap,
    preset_coefficients,
)

COEFFS = preset_coefficients(3)
THETA = 0.01


def show_branches(alpha):
    table = build_phase_table(3, COEFFS)
    probe = ProbeModel(alpha=alpha, theta=THETA)
    branches = branch_partition(table, probe)
    print(f"\nalpha = {alpha}: {len(branches)} branches")
    for b in branches:
        members = ",".join(str(m) for m in b.members)
        print(f"  {b.label:8s} mean_x = {b.mean_x:10.4f}   members: {members}")
    print(f"  smallest mean gap: {min_adjacent_gap(branches):.4f}")


def show_error_curve():
    print("\nworst-pair binary error vs alpha (closest pair is |S|=0 vs |S|=1):")
    print("  alpha      error")
    for alpha in (0, 100, 1000, 10_000, 50_000, 100_000, 200_000):
        err = error_probability(ProbeModel(alpha=float(alpha), theta=THETA), 0, 1)
        print(f"  {alpha:7d}   {err:8.6f}")


def show_confusion(alpha, trials=20_000):
    probe = ProbeModel(alpha=alpha, theta=THETA)
    cm = confusion_matrix(probe, COEFFS, trials, np.random.default_rng(0))
    frac = np.diag(cm.counts).sum() / cm.counts.sum()
    print(f"\nconfusion matrix at alpha = {alpha} ({trials} trials per branch):")
    print(f"  diagonal fraction = {frac:.4f}")
    labels = [b.label for b in cm.branches]
    print("  " + " ".join(f"{lab:>7s}" for lab in [""] + labels))
    for lab, row in zip(labels, cm.counts):
        print("  " + f"{lab:>7s}" + " ".join(f"{int(x):7d}" for x in row))


if __name__ == "__main__":
    show_branches(100.0)
    show_error_curve()
    show_confusion(1000.0)
    show_confusion(200_000.0)
    print("\nAt small alpha neighbouring branches overlap almost completely;")
    print("pushing alpha up (or theta, within max|S|*theta <= pi) separates them.")
