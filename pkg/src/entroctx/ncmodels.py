"""Classical side of the comparison: noncontextual hidden-variable models.

A model is a probability mixture over deterministic +/-1 assignments to the
n cycle observables. Mixtures can never push the entropy witness M above
zero, and a set of pairwise distributions arises from some mixture exactly
when a small linear program is feasible; both facts are implemented here so
each can check the other.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .contexts import OutcomeDistribution, coarse_labels
from .entropy import cycle_pair_keys, cycle_single_keys, evaluate_m_cycle, shannon_entropy

MAX_OBSERVABLES = 20


@dataclass(frozen=True)
class DeterministicAssignment:
    """One +/-1 value per observable; values[k] belongs to X_{k+1}."""

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.values or any(v not in (-1, 1) for v in self.values):
            raise ValueError("assignment values must be +1 or -1")

    def value_of(self, index: int) -> int:
        """Value of observable X_index (1-based)."""
        return self.values[index - 1]


def enumerate_assignments(n: int) -> list[DeterministicAssignment]:
    """All 2^n assignments in binary counting order, bit 0 meaning +1.

    The first observable is the most significant bit, so for n = 2 the
    order is (+,+), (+,-), (-,+), (-,-).
    """
    if n < 1:
        raise ValueError("need at least one observable")
    if n > MAX_OBSERVABLES:
        raise ValueError(f"n = {n} too large (limit {MAX_OBSERVABLES})")
    return [
        DeterministicAssignment(
            tuple(1 if (k >> (n - 1 - j)) & 1 == 0 else -1 for j in range(n))
        )
        for k in range(2**n)
    ]


def value_matrix(n: int) -> np.ndarray:
    """(2^n, n) array of assignment values in canonical order."""
    k = np.arange(2**n)[:, None]
    bits = (k >> (n - 1 - np.arange(n))) & 1
    return 1 - 2 * bits


@dataclass(frozen=True)
class NCModel:
    """Probability weights over the canonical assignment enumeration."""

    weights: np.ndarray

    def __post_init__(self) -> None:
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 1 or (w.size & (w.size - 1)) != 0 or w.size < 2:
            raise ValueError("weights must cover all 2^n assignments")
        if w.min() < 0.0:
            raise ValueError(f"negative weight {w.min()}")
        if abs(w.sum() - 1.0) > 1e-12:
            raise ValueError(f"weights sum to {w.sum()}")
        object.__setattr__(self, "weights", w)

    @property
    def n(self) -> int:
        return int(self.weights.size).bit_length() - 1

    @classmethod
    def uniform(cls, n: int) -> "NCModel":
        return cls(np.full(2**n, 1.0 / 2**n))

    @classmethod
    def point(cls, assignment: DeterministicAssignment) -> "NCModel":
        n = len(assignment.values)
        index = 0
        for v in assignment.values:
            index = (index << 1) | (0 if v == 1 else 1)
        w = np.zeros(2**n)
        w[index] = 1.0
        return cls(w)


@dataclass(frozen=True)
class CycleMarginals:
    """Coarse single and adjacent-pair distributions of one model."""

    singles: dict[int, OutcomeDistribution]
    pairs: dict[tuple[int, int], OutcomeDistribution]


def model_marginals(model: NCModel, n: int | None = None) -> CycleMarginals:
    """Exact marginals of the mixture for each single and adjacent pair."""
    n = model.n if n is None else n
    if 2**n != model.weights.size:
        raise ValueError("model size does not match n")
    values = value_matrix(n)
    w = model.weights
    singles = {}
    for i in range(1, n + 1):
        probs = [float(w[values[:, i - 1] == a].sum()) for a in (+1, -1)]
        singles[i] = OutcomeDistribution(coarse_labels(1), np.array(probs))
    pairs = {}
    for i, j in cycle_pair_keys(n):
        probs = [
            float(w[(values[:, i - 1] == a) & (values[:, j - 1] == b)].sum())
            for a, b in coarse_labels(2)
        ]
        pairs[(i, j)] = OutcomeDistribution(coarse_labels(2), np.array(probs))
    return CycleMarginals(singles, pairs)


def m_of_model(model: NCModel, n: int | None = None) -> float:
    """Witness value of the model's own marginals; always <= 0 up to 1e-9."""
    n = model.n if n is None else n
    marg = model_marginals(model, n)
    h_pairs = {key: shannon_entropy(d) for key, d in marg.pairs.items()}
    h_singles = {i: shannon_entropy(marg.singles[i]) for i in cycle_single_keys(n)}
    return evaluate_m_cycle(h_pairs, h_singles, n)


def _entropy_rows(p: np.ndarray) -> np.ndarray:
    terms = np.where(p > 0.0, p * np.log2(np.where(p > 0.0, p, 1.0)), 0.0)
    return -terms.sum(axis=1)


def m_of_models_batch(weights: np.ndarray, n: int) -> np.ndarray:
    """Vectorized m_of_model over a (batch, 2^n) weight matrix.

    Used by large property runs; agrees with the scalar path row by row.
    """
    w = np.asarray(weights, dtype=float)
    if w.ndim != 2 or w.shape[1] != 2**n:
        raise ValueError("weights must be (batch, 2^n)")
    values = value_matrix(n)
    result = np.zeros(w.shape[0])
    for rank, (i, j) in enumerate(cycle_pair_keys(n)):
        indic = np.array(
            [
                (values[:, i - 1] == a) & (values[:, j - 1] == b)
                for a, b in coarse_labels(2)
            ],
            dtype=float,
        )
        h = _entropy_rows(w @ indic.T)
        result += h if rank == n - 1 else -h
    for i in cycle_single_keys(n):
        indic = np.array([values[:, i - 1] == a for a in (+1, -1)], dtype=float)
        result += _entropy_rows(w @ indic.T)
    return result


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    witness: NCModel | None
    max_constraint_violation: float
    total_violation: float


_PIVOT_EPS = 1e-12


def _simplex_min_violation(a0: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, float]:
    """min sum(u + v) s.t. a0 @ w + u - v = b, all variables >= 0.

    Dense tableau simplex, Bland's rule throughout (lowest eligible index
    enters; among tied ratios the lowest basis index leaves), so the solve
    is deterministic and cannot cycle. The optimum is the least total
    marginal violation any mixture can achieve.
    """
    m, n_w = a0.shape
    full = np.hstack([a0, np.eye(m), -np.eye(m)])
    cost = np.concatenate([np.zeros(n_w), np.ones(2 * m)])
    tableau = np.hstack([full, b.reshape(-1, 1)])
    basis = list(range(n_w, n_w + m))  # u_i = b_i >= 0 is a valid start
    n_cols = full.shape[1]
    while True:
        reduced = cost - cost[basis] @ tableau[:, :n_cols]
        entering = -1
        for j in range(n_cols):
            if reduced[j] < -_PIVOT_EPS:
                entering = j
                break
        if entering < 0:
            break
        column = tableau[:, entering]
        leaving = -1
        best_ratio = np.inf
        for i in range(m):
            if column[i] > _PIVOT_EPS:
                ratio = tableau[i, -1] / column[i]
                if ratio < best_ratio - _PIVOT_EPS or (
                    abs(ratio - best_ratio) <= _PIVOT_EPS
                    and (leaving < 0 or basis[i] < basis[leaving])
                ):
                    best_ratio = ratio
                    leaving = i
        if leaving < 0:
            raise RuntimeError("violation LP reported unbounded")
        tableau[leaving] /= tableau[leaving, entering]
        for i in range(m):
            if i != leaving:
                tableau[i] -= tableau[i, entering] * tableau[leaving]
        basis[leaving] = entering
    solution = np.zeros(n_cols)
    solution[basis] = np.clip(tableau[:, -1], 0.0, None)
    return solution[:n_w], float(cost @ solution)


def _resolve_pair(pair_dists, key: tuple[int, int]) -> OutcomeDistribution:
    for raw, dist in pair_dists.items():
        raw_key = tuple(int(x) for x in raw.split("-")) if isinstance(raw, str) else tuple(raw)
        if raw_key == key:
            if not isinstance(dist, OutcomeDistribution):
                labels = tuple(dist)
                dist = OutcomeDistribution(
                    labels, np.array([float(dist[lab]) for lab in labels])
                )
            return dist
    raise ValueError(f"missing pair distribution for X{key[0]}X{key[1]}")


def lp_feasibility(
    pair_dists, n: int, tolerance: float = 1e-9
) -> FeasibilityResult:
    """Does a mixture of assignments reproduce all adjacent-pair marginals?

    Marginal matching is folded into the objective (minimum total absolute
    violation); feasible means that minimum is at most `tolerance`, which
    lets inconsistent-but-close sampled marginals pass at a loose tolerance
    while exact inputs are held to 1e-9. Inconsistencies between contexts
    (for example two pairs implying different singles) surface as
    infeasibility, never as an exception.
    """
    if n > MAX_OBSERVABLES:
        raise ValueError(f"n = {n} too large (limit {MAX_OBSERVABLES})")
    values = value_matrix(n)
    rows, rhs = [], []
    for i, j in cycle_pair_keys(n):
        dist = _resolve_pair(pair_dists, (i, j))
        table = dist.as_dict()
        for a, b in coarse_labels(2):
            if (a, b) not in table:
                raise ValueError(
                    f"pair X{i}X{j} lacks coarse outcome {(a, b)}"
                )
            rows.append(
                ((values[:, i - 1] == a) & (values[:, j - 1] == b)).astype(float)
            )
            rhs.append(float(table[(a, b)]))
    rows.append(np.ones(2**n))
    rhs.append(1.0)
    a0 = np.array(rows)
    b = np.array(rhs)
    w, total = _simplex_min_violation(a0, b)
    residual = a0 @ w - b
    max_violation = float(np.abs(residual).max())
    feasible = total <= tolerance
    witness = None
    if feasible:
        w = np.clip(w, 0.0, None)
        norm = w.sum()
        witness = NCModel(w / norm) if norm > 0 else NCModel.uniform(n)
    return FeasibilityResult(feasible, witness, max_violation, total)


def singles_from_pairs(pair_dists, n: int) -> dict[int, OutcomeDistribution]:
    """First-slot marginal of pair (i, i+1) as the single for X_i.

    Convention for pairs-only data: each observable's single distribution
    is read off the adjacent pair in which it appears first.
    """
    from .entropy import marginal

    return {
        i: marginal(_resolve_pair(pair_dists, (i, j)), 0)
        for i, j in cycle_pair_keys(n)
    }
