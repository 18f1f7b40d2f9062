"""Coherent-probe readout: branch structure, sampling, classification, collapse.

Convention: the measured quadrature is x = a + a†, so a coherent state of
amplitude alpha and phase phi gives a Gaussian outcome with mean
2*alpha*cos(phi) and unit variance.  A row with integer total S puts the
probe at phase S*theta; rows whose cosines coincide form one branch and are
physically indistinguishable by this readout (in particular +S and -S).
"""
from __future__ import annotations

import functools
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .phases import CoefficientSet, PhaseTable, build_phase_table, validate_coefficients
from .states import BasisState, PhotonicState

COSINE_TOL = 1e-12


@dataclass(frozen=True)
class ProbeModel:
    """Coherent probe of amplitude alpha >= 0 and base phase theta per unit shift.

    alpha = 0 is allowed as the degenerate limit (all branch means coincide);
    branch identity is keyed on the cosine, so the partition itself survives.
    """

    alpha: float
    theta: float

    def __post_init__(self) -> None:
        if self.alpha < 0:
            raise ValidationError(f"alpha must be >= 0, got {self.alpha}")
        if not 0 < self.theta <= math.pi:
            raise ValidationError(f"theta must be in (0, pi], got {self.theta}")


@dataclass(frozen=True)
class Branch:
    """Rows sharing one probe cosine; resolvable from other branches only."""

    index: int
    cosine: float
    mean_x: float
    abs_totals: tuple[int, ...]
    members: tuple[BasisState, ...]

    @property
    def label(self) -> str:
        return "|S|=" + "|".join(str(a) for a in self.abs_totals)


@dataclass(frozen=True)
class MeasurementOutcome:
    x: float
    true_branch: Branch
    branch: Branch
    posterior: PhotonicState | None
    valid: bool

    def to_dict(self) -> dict:
        return {
            "x": self.x,
            "true_branch": self.true_branch.index,
            "classified_branch": self.branch.index,
            "valid": self.valid,
            "posterior_support": [str(s) for s in self.posterior.support]
            if self.posterior is not None
            else [],
        }


@dataclass(frozen=True)
class ConfusionMatrix:
    branches: tuple[Branch, ...]
    counts: np.ndarray  # true branch x classified branch
    trials_per_branch: int

    def to_csv(self) -> str:
        header = "true_branch," + ",".join(str(b.index) for b in self.branches)
        lines = [header]
        for b, row in zip(self.branches, self.counts):
            lines.append(str(b.index) + "," + ",".join(str(int(x)) for x in row))
        return "\n".join(lines) + "\n"


def expected_x(probe: ProbeModel, total: int) -> float:
    """Mean quadrature for a row with integer total shift."""
    return 2.0 * probe.alpha * math.cos(total * probe.theta)


def sample_x(probe: ProbeModel, total: int, rng: np.random.Generator) -> float:
    """One homodyne outcome: Gaussian, mean expected_x, unit variance."""
    return float(rng.normal(expected_x(probe, total), 1.0))


def branch_partition(
    table: PhaseTable, probe: ProbeModel, on_out_of_range: str = "warn"
) -> list[Branch]:
    """Group table rows into branches of equal probe cosine.

    Within the guard max|total|*theta <= pi this equals grouping by |total|;
    beyond it, cos is no longer injective on |total| and accidental merges
    are detected (and warned about).  on_out_of_range: "warn" or "error".
    """
    if on_out_of_range not in ("warn", "error"):
        raise ValidationError("on_out_of_range must be 'warn' or 'error'")
    max_abs = max(abs(r.total) for r in table.rows)
    if max_abs * probe.theta > math.pi:
        msg = (
            f"max|total|*theta = {max_abs * probe.theta:.6g} exceeds pi; "
            "distinct |total| values may share a quadrature mean"
        )
        if on_out_of_range == "error":
            raise ValidationError(msg)
        warnings.warn(msg)

    by_abs: dict[int, list[BasisState]] = {}
    for row in table.rows:
        by_abs.setdefault(abs(row.total), []).append(row.basis)
    groups = sorted(by_abs)  # ascending |total|
    cosines = {a: math.cos(a * probe.theta) for a in groups}
    # cluster |total| groups whose cosines coincide within tolerance
    order = sorted(groups, key=lambda a: (-cosines[a], a))
    clusters: list[list[int]] = []
    for a in order:
        if clusters and abs(cosines[clusters[-1][-1]] - cosines[a]) <= COSINE_TOL:
            clusters[-1].append(a)
        else:
            clusters.append([a])
    branches = []
    for idx, cluster in enumerate(clusters):
        if len(cluster) > 1:
            warnings.warn(
                "branch merge: |total| values "
                + ", ".join(str(a) for a in cluster)
                + " share one quadrature mean at this theta"
            )
        members: list[BasisState] = []
        for a in sorted(cluster):
            members.extend(by_abs[a])
        cos_ref = cosines[cluster[0]]
        branches.append(
            Branch(
                index=idx,
                cosine=cos_ref,
                mean_x=2.0 * probe.alpha * cos_ref,
                abs_totals=tuple(sorted(cluster)),
                members=tuple(members),
            )
        )
    return branches


def classify(branches: list[Branch], x: float) -> Branch:
    """Maximum-likelihood branch: nearest mean, midpoint ties to lower index."""
    if not branches:
        raise ValueError("classify needs at least one branch")
    means = np.array([b.mean_x for b in branches])
    return branches[int(np.argmin(np.abs(means - x)))]


def error_probability(probe: ProbeModel, total1: int, total2: int) -> float:
    """Binary ML discrimination error for the two row totals.

    Two unit-variance Gaussians with means 2*alpha*cos(S*theta) have ML error
    0.5*erfc(|alpha*(cos1 - cos2)|/sqrt(2)); symmetric in the arguments.
    """
    dcos = math.cos(total1 * probe.theta) - math.cos(total2 * probe.theta)
    return 0.5 * math.erfc(abs(probe.alpha * dcos) / math.sqrt(2.0))


@functools.lru_cache(maxsize=64)
def _cached_partition(
    n: int, coefficients: CoefficientSet, alpha: float, theta: float
) -> tuple[PhaseTable, tuple[Branch, ...], dict[BasisState, int]]:
    table = build_phase_table(n, coefficients)
    branches = branch_partition(table, ProbeModel(alpha=alpha, theta=theta))
    member_to_branch = {m: b.index for b in branches for m in b.members}
    return table, tuple(branches), member_to_branch


def measure_collapse(
    state: PhotonicState,
    probe: ProbeModel,
    coefficients: CoefficientSet,
    rng: np.random.Generator,
    ideal: bool = False,
) -> MeasurementOutcome:
    """One probe measurement of the state, with projection onto the branch.

    Branch weights follow the squared amplitudes summed over branch members.
    ideal=True samples the branch directly from those weights and reports the
    branch mean as the outcome (noiseless classification); otherwise the true
    branch is sampled, a Gaussian x is drawn around its mean, and maximum
    likelihood may misclassify.  The posterior is the renormalized restriction
    of the state to the classified branch; an amplitude-empty classification
    is flagged invalid rather than raised.
    """
    coefficients = validate_coefficients(coefficients, state.n)
    _, branches, member_to_branch = _cached_partition(
        state.n, coefficients, probe.alpha, probe.theta
    )
    weights = np.zeros(len(branches))
    for s, amp in state.amplitudes.items():
        weights[member_to_branch[s]] += abs(amp) ** 2
    weights /= weights.sum()
    true_idx = int(rng.choice(len(branches), p=weights))
    true_branch = branches[true_idx]
    if ideal:
        classified = true_branch
        x = true_branch.mean_x
    else:
        x = float(rng.normal(true_branch.mean_x, 1.0))
        classified = classify(list(branches), x)
    members = set(classified.members)
    kept = {s: a for s, a in state.amplitudes.items() if s in members}
    weight = sum(abs(a) ** 2 for a in kept.values())
    if weight <= 0.0:
        return MeasurementOutcome(
            x=x, true_branch=true_branch, branch=classified, posterior=None, valid=False
        )
    scale = 1.0 / math.sqrt(weight)
    posterior = PhotonicState.from_amplitudes(
        state.n, {s: a * scale for s, a in kept.items()}
    )
    return MeasurementOutcome(
        x=x, true_branch=true_branch, branch=classified, posterior=posterior, valid=True
    )


def confusion_matrix(
    probe: ProbeModel,
    coefficients: CoefficientSet,
    trials: int,
    rng: np.random.Generator,
) -> ConfusionMatrix:
    """Per-branch classification tallies from repeated noisy measurements.

    Each branch is pinned by a state concentrated on it, so the true branch
    is certain and only readout noise scatters the classification.  Branches
    use independent substreams spawned from the given generator, making the
    tallies reproducible regardless of evaluation order.
    """
    if trials < 1:
        raise ValidationError(f"trials must be >= 1, got {trials}")
    n = len(coefficients)
    coefficients = validate_coefficients(coefficients)
    _, branches, _ = _cached_partition(n, coefficients, probe.alpha, probe.theta)
    k = len(branches)
    means = np.array([b.mean_x for b in branches])
    counts = np.zeros((k, k), dtype=np.int64)
    streams = rng.spawn(k)
    for i, branch in enumerate(branches):
        xs = streams[i].normal(branch.mean_x, 1.0, size=trials)
        # nearest mean, ties to the lower branch index (argmin picks the first)
        classified = np.argmin(np.abs(xs[:, None] - means[None, :]), axis=1)
        counts[i] = np.bincount(classified, minlength=k)
    return ConfusionMatrix(branches=tuple(branches), counts=counts, trials_per_branch=trials)


def min_adjacent_gap(branches: list[Branch]) -> float:
    """Smallest separation between consecutive branch means."""
    if len(branches) < 2:
        return 0.0
    means = sorted(b.mean_x for b in branches)
    return min(b - a for a, b in zip(means, means[1:]))


def worst_pair_error(probe: ProbeModel, branches: list[Branch]) -> tuple[float, float]:
    """(min mean separation, binary ML error of the closest branch pair)."""
    gap = min_adjacent_gap(branches)
    if len(branches) < 2:
        return 0.0, 0.5
    return gap, 0.5 * math.erfc(gap / (2.0 * math.sqrt(2.0)))
