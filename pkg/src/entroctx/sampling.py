"""Finite-shot sampling, distribution-level noise, and noise fitting.

Noise acts on outcome distributions, not on states: per-qubit readout
confusion first, then depolarizing mixing toward uniform. Sampling is a
seeded multinomial draw, so every counts table is reproducible from
(distribution, shots, seed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .contexts import OutcomeDistribution
from .entropy import shannon_entropy

_IDENTITY_FLIP = ((1.0, 0.0), (0.0, 1.0))


@dataclass(frozen=True)
class CountsRecord:
    """Integer shot counts per outcome label for one context."""

    context_label: str
    shots: int
    counts: dict

    def __post_init__(self) -> None:
        if self.shots < 1:
            raise ValueError("shots must be positive")
        if any(int(v) < 0 for v in self.counts.values()):
            raise ValueError("negative count")
        total = sum(int(v) for v in self.counts.values())
        if total != self.shots:
            raise ValueError(f"counts sum to {total}, expected {self.shots}")


@dataclass(frozen=True)
class NoiseModel:
    """Depolarizing weight plus one 2x2 readout-confusion matrix.

    readout_flip[a][b] is the probability of reading bit b when the true
    bit is a; the same matrix applies to every qubit independently.
    """

    depolarizing_epsilon: float = 0.0
    readout_flip: tuple[tuple[float, float], tuple[float, float]] | None = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.depolarizing_epsilon <= 1.0:
            raise ValueError("epsilon must lie in [0, 1]")
        if self.readout_flip is not None:
            flip = np.asarray(self.readout_flip, dtype=float)
            if flip.shape != (2, 2):
                raise ValueError("readout_flip must be 2x2")
            if flip.min() < 0.0 or np.abs(flip.sum(axis=1) - 1.0).max() > 1e-9:
                raise ValueError("readout_flip rows must be probabilities")
            object.__setattr__(
                self, "readout_flip", tuple(tuple(row) for row in flip)
            )

    @property
    def is_trivial(self) -> bool:
        return self.depolarizing_epsilon == 0.0 and (
            self.readout_flip is None or self.readout_flip == _IDENTITY_FLIP
        )


def sample_counts(
    dist: OutcomeDistribution, shots: int, seed: int, context_label: str = ""
) -> CountsRecord:
    """Multinomial draw; identical (dist, shots, seed) gives identical counts."""
    if shots < 1:
        raise ValueError("shots must be positive")
    probs = dist.probs / dist.probs.sum()
    rng = np.random.default_rng(seed)
    drawn = rng.multinomial(shots, probs)
    counts = {label: int(k) for label, k in zip(dist.labels, drawn)}
    return CountsRecord(context_label, shots, counts)


def _apply_readout(dist: OutcomeDistribution, flip: np.ndarray) -> OutcomeDistribution:
    labels = dist.labels
    if not all(
        isinstance(lb, str) and set(lb) <= {"0", "1"} for lb in labels
    ):
        raise ValueError("readout confusion needs bit-string labels")
    width = len(labels[0])
    if any(len(lb) != width for lb in labels) or len(labels) != 2**width:
        raise ValueError("readout confusion needs the full bit-string record")
    order = {format(k, f"0{width}b"): k for k in range(2**width)}
    p = np.zeros(2**width)
    for lb, prob in zip(labels, dist.probs):
        p[order[lb]] = prob
    tensor = p.reshape([2] * width)
    for axis in range(width):
        tensor = np.moveaxis(
            np.tensordot(tensor, flip, axes=([axis], [0])), -1, axis
        )
    flat = tensor.reshape(-1)
    return OutcomeDistribution(
        labels, np.array([flat[order[lb]] for lb in labels])
    )


def apply_noise(dist: OutcomeDistribution, noise: NoiseModel) -> OutcomeDistribution:
    """Readout confusion per qubit, then p -> (1-eps) p + eps/K."""
    out = dist
    if noise.readout_flip is not None and noise.readout_flip != _IDENTITY_FLIP:
        out = _apply_readout(out, np.asarray(noise.readout_flip))
    eps = noise.depolarizing_epsilon
    if eps > 0.0:
        k = len(out.labels)
        probs = (1.0 - eps) * out.probs + eps / k
        out = OutcomeDistribution(out.labels, probs / probs.sum())
    return out


@dataclass(frozen=True)
class DepolarizingFit:
    epsilon: float
    residual: float


_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def _entropy_mismatch(
    dists: list[OutcomeDistribution], targets: list[float], eps: float
) -> float:
    total = 0.0
    for dist, target in zip(dists, targets):
        noisy = apply_noise(dist, NoiseModel(depolarizing_epsilon=eps))
        total += (shannon_entropy(noisy) - target) ** 2
    return total


def fit_depolarizing(
    dists: list[OutcomeDistribution], target_entropies: list[float]
) -> DepolarizingFit:
    """Depolarizing weight whose entropies best match the targets.

    Least-squares in entropy space: a 1e-3 grid scan brackets the global
    minimum (no monotonicity assumed), then golden-section search narrows
    the bracket to 1e-4. Returns the weight and the residual sum of
    squares; with underdetermined targets the residual is the honest
    measure of fit quality.
    """
    if not dists or len(dists) != len(target_entropies):
        raise ValueError("need matching distributions and target entropies")
    targets = [float(t) for t in target_entropies]
    grid = np.linspace(0.0, 1.0, 1001)
    scores = [_entropy_mismatch(dists, targets, e) for e in grid]
    center = int(np.argmin(scores))
    lo = grid[max(center - 1, 0)]
    hi = grid[min(center + 1, len(grid) - 1)]
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc = _entropy_mismatch(dists, targets, c)
    fd = _entropy_mismatch(dists, targets, d)
    while b - a > 1e-4:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = _entropy_mismatch(dists, targets, c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = _entropy_mismatch(dists, targets, d)
    best = 0.5 * (a + b)
    return DepolarizingFit(best, _entropy_mismatch(dists, targets, best))
