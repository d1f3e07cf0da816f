"""Pauli-string observables: commutation, matrices, spectral projectors, cycles."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_LETTERS = "IXYZ"

_SINGLE = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass(frozen=True)
class PauliString:
    """Tensor product of single-qubit Pauli letters.

    The first letter acts on the most significant qubit (left Kronecker
    factor), so "ZZ" on basis label b1 b0 reads Z on b1 and Z on b0.
    """

    letters: str

    def __post_init__(self) -> None:
        if len(self.letters) < 1:
            raise ValueError("PauliString needs at least one letter")
        bad = set(self.letters) - set(_LETTERS)
        if bad:
            raise ValueError(f"invalid Pauli letters: {sorted(bad)}")

    @property
    def n(self) -> int:
        return len(self.letters)

    @property
    def is_identity(self) -> bool:
        return set(self.letters) == {"I"}

    def __str__(self) -> str:
        return self.letters

    def __iter__(self):
        return iter(self.letters)


def as_pauli(p: PauliString | str) -> PauliString:
    return p if isinstance(p, PauliString) else PauliString(p)


def commutes(p: PauliString | str, q: PauliString | str) -> bool:
    """True iff [P, Q] = 0, by anticommutation parity.

    Two Pauli strings commute exactly when the number of sites where both
    letters are non-identity and different is even.
    """
    p, q = as_pauli(p), as_pauli(q)
    if p.n != q.n:
        raise ValueError(f"length mismatch: {p} vs {q}")
    odd = sum(1 for a, b in zip(p.letters, q.letters)
              if a != "I" and b != "I" and a != b)
    return odd % 2 == 0


def matrix(p: PauliString | str) -> np.ndarray:
    """Dense 2^n x 2^n matrix, Kronecker product in letter order."""
    p = as_pauli(p)
    m = _SINGLE[p.letters[0]]
    for c in p.letters[1:]:
        m = np.kron(m, _SINGLE[c])
    return m


def eigenprojectors(p: PauliString | str) -> tuple[np.ndarray, np.ndarray]:
    """Projectors (P_plus, P_minus) onto the +1 / -1 eigenspaces.

    Raises for the all-identity string, whose only eigenvalue is +1.
    """
    p = as_pauli(p)
    if p.is_identity:
        raise ValueError("degenerate observable with single eigenvalue")
    m = matrix(p)
    eye = np.eye(m.shape[0])
    return (eye + m) / 2, (eye - m) / 2


@dataclass(frozen=True)
class CycleReport:
    n_observables: int
    adjacent_commuting: tuple[bool, ...]
    nonadjacent_commuting: tuple[tuple[int, int, bool], ...]

    @property
    def is_valid_cycle(self) -> bool:
        return all(self.adjacent_commuting)


def verify_cycle(observables: list[PauliString | str]) -> CycleReport:
    """Check the cyclic commutation structure of an ordered observable list.

    Adjacent pairs (i, i+1 mod n) are expected to commute in a valid cycle;
    the report also records commutation for every non-adjacent pair.
    """
    obs = [as_pauli(o) for o in observables]
    if len(obs) < 3:
        raise ValueError("a cycle needs at least 3 observables")
    if len({o.n for o in obs}) != 1:
        raise ValueError("observables must act on the same number of qubits")
    n = len(obs)
    adjacent = tuple(commutes(obs[i], obs[(i + 1) % n]) for i in range(n))
    nonadj = []
    for i in range(n):
        for j in range(i + 1, n):
            if j - i == 1 or (i == 0 and j == n - 1):
                continue
            nonadj.append((i, j, commutes(obs[i], obs[j])))
    return CycleReport(n, adjacent, tuple(nonadj))


# The two shipped five-observable presets, in cycle order X1..X5.
TABLE1_OBSERVABLES = tuple(PauliString(s) for s in ("ZZ", "XX", "XI", "XZ", "IZ"))
TABLE2_OBSERVABLES = tuple(PauliString(s) for s in ("ZZ", "YX", "XZ", "ZX", "XY"))

OBSERVABLE_SETS = {
    "table1": TABLE1_OBSERVABLES,
    "table2": TABLE2_OBSERVABLES,
}
