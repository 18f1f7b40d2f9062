"""Walkthrough: measurement-induced collapse, ideal and noisy.

A measurement projects the state onto the members of the classified branch.
For the uniform three-photon single-V superposition the three components sit
in different branches, so an ideal readout picks each with probability 1/3
and leaves the matching pure component behind.  A superposition living
inside one branch (here (HHH + VVV)/sqrt(2), both with total 2) survives
the measurement untouched: the probe learns nothing that separates its
members.
"""
import math
from collections import Counter

import numpy as np

from kerrw import (
    BasisState,
    PhotonicState,
    ProbeModel,
    make_w_state,
    measure_collapse,
    preset_coefficients,
)

COEFFS = preset_coefficients(3)
PROBE = ProbeModel(alpha=100.0, theta=0.01)


def born_statistics(trials=30_000):
    state = make_w_state(3)
    rng = np.random.default_rng(7)
    counts = Counter()
    posteriors = {}
    for _ in range(trials):
        out = measure_collapse(state, PROBE, COEFFS, rng, ideal=True)
        counts[out.branch.label] += 1
        posteriors[out.branch.label] = out.posterior
    print(f"ideal measurement of the uniform single-V state, {trials} trials:")
    for label, count in sorted(counts.items()):
        post = posteriors[label].support[0]
        print(f"  {label:7s} frequency {count / trials:.4f}  ->  collapses to |{post}>")


def shared_branch_coherence():
    r = 1 / math.sqrt(2)
    cat = PhotonicState.from_amplitudes(
        3,
        {BasisState.from_string("HHH"): r, BasisState.from_string("VVV"): r},
    )
    rng = np.random.default_rng(11)
    out = measure_collapse(cat, PROBE, COEFFS, rng, ideal=True)
    print("\n(HHH + VVV)/sqrt(2) input:")
    print(f"  classified branch {out.branch.label}, members "
          + ", ".join(str(m) for m in out.branch.members))
    print(f"  posterior support: {[str(s) for s in out.posterior.support]}")
    print(f"  posterior unchanged: {out.posterior.isclose(cat)}")


def noisy_measurements(alpha, trials=2000):
    probe = ProbeModel(alpha=alpha, theta=0.01)
    state = make_w_state(3)
    rng = np.random.default_rng(23)
    wrong = invalid = 0
    for _ in range(trials):
        out = measure_collapse(state, probe, COEFFS, rng)
        if out.branch.index != out.true_branch.index:
            wrong += 1
        if not out.valid:
            invalid += 1
    print(f"\nnoisy readout at alpha = {alpha}: "
          f"{wrong / trials:.3f} misclassified, {invalid / trials:.3f} landed in "
          "amplitude-empty branches (flagged, not crashed)")


if __name__ == "__main__":
    born_statistics()
    shared_branch_coherence()
    noisy_measurements(alpha=50.0)
    noisy_measurements(alpha=5000.0)
