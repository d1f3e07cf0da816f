"""Shannon-entropy calculus and the cyclic inequality evaluator.

All entropies are base-2. The witness for an n-cycle of observables is

    M_n = H(X_n X_1) - sum_{i=1}^{n-1} H(X_i X_{i+1}) + sum_{i=2}^{n-1} H(X_i)

and M_n <= 0 for any statistics that arise as marginals of one global
joint distribution; a positive value rules such a model out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .contexts import OutcomeDistribution

PairKey = tuple[int, int]


def _prob_vector(dist) -> np.ndarray:
    if isinstance(dist, OutcomeDistribution):
        return dist.probs
    p = np.asarray(dist, dtype=float)
    if p.ndim != 1:
        raise ValueError("expected a 1-D probability vector")
    if p.min() < -1e-8:
        raise ValueError(f"negative probability {p.min()}")
    if abs(p.sum() - 1.0) > 1e-8:
        raise ValueError(f"probabilities sum to {p.sum()}")
    return np.clip(p, 0.0, None)


def shannon_entropy(dist) -> float:
    """H = -sum p log2 p with 0 log 0 := 0; accepts a distribution or vector."""
    p = _prob_vector(dist)
    p = p[p > 0.0]
    return float(-(p @ np.log2(p)))


def marginal(joint: OutcomeDistribution, slot: int) -> OutcomeDistribution:
    """Marginal over one slot of a joint distribution with composite labels."""
    sums: dict = {}
    for label, prob in zip(joint.labels, joint.probs):
        try:
            key = label[slot]
        except (TypeError, IndexError) as exc:
            raise ValueError(f"label {label!r} does not factor") from exc
        sums[key] = sums.get(key, 0.0) + prob
    labels = tuple(sums)
    return OutcomeDistribution(
        tuple((k,) for k in labels), np.array([sums[k] for k in labels])
    )


def conditional_entropy(joint: OutcomeDistribution) -> float:
    """H(A|B) = H(A,B) - H(B) for a joint over two-part labels (A, B)."""
    for label in joint.labels:
        if not hasattr(label, "__len__") or len(label) != 2:
            raise ValueError(f"label {label!r} does not factor as a pair")
    return shannon_entropy(joint) - shannon_entropy(marginal(joint, 1))


def _pair_key(key) -> PairKey:
    if isinstance(key, str):
        i, j = key.split("-")
        return int(i), int(j)
    i, j = key
    return int(i), int(j)


def _single_key(key) -> int:
    return int(key)


def cycle_pair_keys(n: int) -> tuple[PairKey, ...]:
    return tuple((i, i % n + 1) for i in range(1, n + 1))


def cycle_single_keys(n: int) -> tuple[int, ...]:
    return tuple(range(2, n))


def _lookup(table: Mapping, key, kind: str, normalize) -> float:
    for raw, value in table.items():
        if normalize(raw) == key:
            value = float(value)
            if not math.isfinite(value):
                raise ValueError(f"non-finite entropy for {kind}")
            return value
    raise ValueError(f"missing entropy entry for {kind}")


def evaluate_m_cycle(h_pairs: Mapping, h_singles: Mapping, n: int) -> float:
    """Signed entropy combination M_n; keys (i, j) / "i-j" and i / "i"."""
    if n < 3:
        raise ValueError("cycle needs at least 3 observables")
    pairs = {
        key: _lookup(h_pairs, key, f"pair X{key[0]}X{key[1]}", _pair_key)
        for key in cycle_pair_keys(n)
    }
    singles = {
        key: _lookup(h_singles, key, f"single X{key}", _single_key)
        for key in cycle_single_keys(n)
    }
    wrap = pairs[(n, 1)]
    chain = sum(pairs[(i, i + 1)] for i in range(1, n))
    return wrap - chain + sum(singles.values())


def evaluate_m(h_pairs: Mapping, h_singles: Mapping) -> float:
    """Five-observable witness M = H(X5X1) - chain pairs + interior singles."""
    return evaluate_m_cycle(h_pairs, h_singles, 5)


@dataclass(frozen=True)
class EntropyReport:
    """The eight entropies that enter M, plus the evaluated witness."""

    h_singles: dict[int, float]
    h_pairs: dict[PairKey, float]
    m_value: float
    convention: str
    n_observables: int = 5
    flags: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        singles = {_single_key(k): float(v) for k, v in self.h_singles.items()}
        pairs = {_pair_key(k): float(v) for k, v in self.h_pairs.items()}
        object.__setattr__(self, "h_singles", singles)
        object.__setattr__(self, "h_pairs", pairs)
        for name, value in [*singles.items(), *pairs.items()]:
            if value < -1e-12:
                raise ValueError(f"negative entropy for {name}")
        recomputed = evaluate_m_cycle(pairs, singles, self.n_observables)
        if abs(recomputed - self.m_value) > 1e-12:
            raise ValueError(
                f"m_value {self.m_value} does not recompute from entries "
                f"({recomputed})"
            )

    @classmethod
    def from_entropies(
        cls,
        h_singles: Mapping,
        h_pairs: Mapping,
        convention: str,
        n: int = 5,
        flags: tuple[str, ...] = (),
    ) -> "EntropyReport":
        singles = {_single_key(k): float(v) for k, v in h_singles.items()}
        pairs = {_pair_key(k): float(v) for k, v in h_pairs.items()}
        m = evaluate_m_cycle(pairs, singles, n)
        return cls(singles, pairs, m, convention, n, tuple(flags))


def _sorted_labels(labels) -> list:
    # bit-strings sort lexicographically; eigenvalue tuples sort +1 first
    if all(isinstance(lb, tuple) for lb in labels):
        return sorted(labels, key=lambda lb: tuple(-v for v in lb))
    return sorted(labels, key=str)


def entropies_from_counts(counts) -> OutcomeDistribution:
    """Maximum-likelihood distribution p = count/shots from raw counts.

    Accepts a CountsRecord or a plain label -> count mapping. No smoothing:
    zero-count outcomes stay at probability zero.
    """
    table = counts.counts if hasattr(counts, "counts") else dict(counts)
    total = sum(int(v) for v in table.values())
    if total <= 0:
        raise ValueError("zero total count")
    labels = _sorted_labels(table.keys())
    probs = np.array([int(table[lb]) for lb in labels], dtype=float) / total
    return OutcomeDistribution(tuple(labels), probs)


def estimate_entropy(counts: Mapping, bias_correction: bool = False) -> float:
    """Plug-in entropy of raw counts; optional Miller-Madow correction.

    The correction adds (m - 1) / (2 N ln 2) with m the number of occupied
    outcomes. Off by default: reference reconciliation uses the plain
    maximum-likelihood estimate.
    """
    table = counts.counts if hasattr(counts, "counts") else dict(counts)
    values = np.array([float(v) for v in table.values()])
    total = values.sum()
    if total <= 0:
        raise ValueError("zero total count")
    h = shannon_entropy(values / total)
    if bias_correction:
        occupied = int((values > 0).sum())
        h += (occupied - 1) / (2.0 * total * math.log(2.0))
    return h
