"""Measurement contexts: exact outcome distributions in two conventions.

A context is one or two mutually commuting Pauli observables measured
together. The coarse convention labels outcomes by eigenvalue tuples; the
fine convention labels them by the full per-qubit readout record in a
diagonalizing basis, which is how hardware actually reports shots and the
only reading under which a single two-outcome observable can carry more
than 1 bit of entropy.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .pauli import PauliString, as_pauli, commutes, eigenprojectors
from .statevec import GateOp, QuantumState, circuit_unitary

_SIGNS = (+1, -1)


@dataclass(frozen=True)
class MeasurementContext:
    observables: tuple[PauliString, ...]
    convention: str = "fine"

    def __post_init__(self) -> None:
        obs = tuple(as_pauli(o) for o in self.observables)
        object.__setattr__(self, "observables", obs)
        if not 1 <= len(obs) <= 2:
            raise ValueError("a context holds one or two observables")
        if self.convention not in ("coarse", "fine"):
            raise ValueError(f"unknown convention {self.convention!r}")
        if len({o.n for o in obs}) != 1:
            raise ValueError("context observables must have equal length")
        for o in obs:
            if o.is_identity:
                raise ValueError("degenerate observable with single eigenvalue")
        if len(obs) == 2 and not commutes(obs[0], obs[1]):
            raise ValueError(f"observables do not commute: {obs[0]}, {obs[1]}")

    @property
    def n_qubits(self) -> int:
        return self.observables[0].n

    def label_text(self) -> str:
        return ",".join(str(o) for o in self.observables)


@dataclass(frozen=True)
class OutcomeDistribution:
    """Labeled probability vector for one measurement context."""

    labels: tuple
    probs: np.ndarray

    def __post_init__(self) -> None:
        p = np.asarray(self.probs, dtype=float)
        if p.shape != (len(self.labels),):
            raise ValueError("labels/probs length mismatch")
        if p.min() < -1e-10:
            raise ValueError(f"negative probability {p.min()}")
        if abs(p.sum() - 1.0) > 1e-10:
            raise ValueError(f"probabilities sum to {p.sum()}")
        object.__setattr__(self, "probs", np.clip(p, 0.0, None))

    def as_dict(self) -> dict:
        return dict(zip(self.labels, self.probs))


def coarse_labels(n_observables: int) -> tuple[tuple[int, ...], ...]:
    return tuple(itertools.product(_SIGNS, repeat=n_observables))


def joint_distribution_coarse(
    state: QuantumState, context: MeasurementContext
) -> OutcomeDistribution:
    """Eigenvalue-outcome distribution p(a) or p(a, b) = <psi|Pa Pb|psi>.

    Projector order is irrelevant because the observables commute.
    """
    projs = [eigenprojectors(o) for o in context.observables]
    labels = coarse_labels(len(context.observables))
    amps = state.amplitudes
    probs = []
    for combo in labels:
        op = projs[0][0 if combo[0] > 0 else 1]
        for k in range(1, len(combo)):
            op = op @ projs[k][0 if combo[k] > 0 else 1]
        probs.append(float(np.real(amps.conj() @ (op @ amps))))
    return OutcomeDistribution(labels, np.clip(probs, 0.0, 1.0))


def local_basis(context: MeasurementContext) -> list[str] | None:
    """Per-qubit measurement letter if one local basis fits all observables.

    A qubit where one observable reads I inherits the other observable's
    letter; a qubit that is I everywhere defaults to Z. Returns None when
    two observables demand different letters on the same qubit.
    """
    basis = []
    for j in range(context.n_qubits):
        letters = {o.letters[j] for o in context.observables} - {"I"}
        if len(letters) > 1:
            return None
        basis.append(letters.pop() if letters else "Z")
    return basis


def _is_bell_type(context: MeasurementContext) -> bool:
    # Two observables that anticommute at every site share a nondegenerate
    # entangled eigenbasis; on two qubits the joint projectors are rank 1.
    if len(context.observables) != 2 or context.n_qubits != 2:
        return False
    p, q = (o.letters for o in context.observables)
    return all(a != "I" and b != "I" and a != b for a, b in zip(p, q))


_ROTATE = {
    "Z": [],
    "X": ["h"],
    "Y": ["sdg", "h"],
}


def basis_change_gates(context: MeasurementContext) -> list[GateOp]:
    """Gates mapping the context's common eigenbasis to the Z basis.

    Local contexts get per-qubit rotations (H for X; Sdg then H for Y);
    the (ZZ, XX) pair gets the Bell template, a CNOT followed by H on the
    control. Anything else raises.
    """
    basis = local_basis(context)
    if basis is not None:
        gates = []
        for j, letter in enumerate(basis):
            gates.extend(GateOp(kind, (j,)) for kind in _ROTATE[letter])
        return gates
    if {o.letters for o in context.observables} == {"ZZ", "XX"}:
        return [GateOp("cnot", (0, 1)), GateOp("h", (0,))]
    pair = " and ".join(str(o) for o in context.observables)
    raise ValueError(f"unsupported entangled context: {pair}")


def joint_distribution_fine(
    state: QuantumState, context: MeasurementContext
) -> OutcomeDistribution:
    """Distribution of the full readout record in a diagonalizing basis.

    Local contexts: rotate each qubit into its basis letter and read the
    computational-basis probabilities; labels are n-bit strings, most
    significant qubit first. Sitewise-anticommuting pairs: measure in the
    simultaneous eigenbasis; each rank-1 joint eigenspace is one basis
    vector, recorded as one bit per observable (0 for eigenvalue +1).
    """
    basis = local_basis(context)
    n = context.n_qubits
    if basis is not None:
        psi = state
        from .statevec import apply_gate

        for j, letter in enumerate(basis):
            for kind in _ROTATE[letter]:
                psi = apply_gate(psi, GateOp(kind, (j,)))
        probs = np.abs(psi.amplitudes) ** 2
        labels = tuple(format(b, f"0{n}b") for b in range(2**n))
        return OutcomeDistribution(labels, probs / probs.sum())
    if _is_bell_type(context):
        coarse = joint_distribution_coarse(state, context)
        labels = tuple(
            "".join("0" if v > 0 else "1" for v in combo)
            for combo in coarse.labels
        )
        return OutcomeDistribution(labels, coarse.probs)
    raise ValueError("fine-grained basis unavailable")


def record_eigenvalues(context: MeasurementContext, label: str) -> tuple[int, ...]:
    """Map one fine record label to the eigenvalue tuple it implies."""
    bits = [1 if ch == "0" else -1 for ch in label]
    if local_basis(context) is not None:
        if len(label) != context.n_qubits:
            raise ValueError("missing eigenvalue map: bad record length")
        values = []
        for o in context.observables:
            v = 1
            for j, letter in enumerate(o.letters):
                if letter != "I":
                    v *= bits[j]
            values.append(v)
        return tuple(values)
    if _is_bell_type(context):
        if len(label) != len(context.observables):
            raise ValueError("missing eigenvalue map: bad record length")
        return tuple(bits)
    raise ValueError("missing eigenvalue map for this context")


def coarsen(
    fine: OutcomeDistribution, context: MeasurementContext
) -> OutcomeDistribution:
    """Bin a fine record distribution into coarse eigenvalue outcomes."""
    labels = coarse_labels(len(context.observables))
    sums = dict.fromkeys(labels, 0.0)
    for label, p in zip(fine.labels, fine.probs):
        sums[record_eigenvalues(context, label)] += p
    return OutcomeDistribution(labels, np.array([sums[c] for c in labels]))


def _qasm_gate(gate: GateOp, n: int) -> str:
    # letter index j lives at hardware qubit q[n-1-j] (lsb at q[0])
    regs = [n - 1 - q for q in gate.qubits]
    if gate.kind == "u3":
        t, p, l = (f"{x:.12g}" for x in gate.params)
        return f"u3({t},{p},{l}) q[{regs[0]}];"
    if gate.kind == "cnot":
        return f"cx q[{regs[0]}], q[{regs[1]}];"
    return f"{gate.kind} q[{regs[0]}];"


def export_measurement_circuit(
    context: MeasurementContext, prep: list[GateOp] | None = None
) -> str:
    """OpenQASM 2.0 text: prep gates, basis change, terminal measurement.

    Raises for entangled contexts outside the (ZZ, XX) Bell template.
    """
    rotation = basis_change_gates(context)
    n = context.n_qubits
    lines = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"// context: {context.label_text()}",
        f"qreg q[{n}];",
        f"creg c[{n}];",
    ]
    if prep:
        lines.append("// state preparation")
        lines.extend(_qasm_gate(g, n) for g in prep)
    lines.append("// basis change")
    lines.extend(_qasm_gate(g, n) for g in rotation)
    lines.append("// readout")
    lines.extend(f"measure q[{k}] -> c[{k}];" for k in range(n))
    return "\n".join(lines) + "\n"


def basis_change_unitary(context: MeasurementContext) -> np.ndarray:
    """Full unitary of the basis-change gate list (for conjugation checks)."""
    return circuit_unitary(basis_change_gates(context), context.n_qubits)
