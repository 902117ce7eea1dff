"""Quantum query circuits under phase, standard and QRAM oracle models.

Qubit 0 is the most significant bit of a basis index, and a register's value
reads its qubits most-significant first.  Circuits start from the all-zeros
state.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence, Union

import numpy as np

from . import sim
from .model import TOL, StructureError, ValidationReport, unitary_deviation, validate
from .sim import Bits, StateVector, as_bits

ORACLE_MODELS = ("phase", "standard", "qram")


class CircuitError(ValueError):
    pass


def _matrix(m) -> np.ndarray:
    arr = np.array(m, dtype=complex)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Unitary:
    targets: tuple[int, ...]
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))
        object.__setattr__(self, "matrix", _matrix(self.matrix))
        k = len(self.targets)
        if self.matrix.shape != (1 << k, 1 << k):
            raise StructureError(f"unitary on {k} qubits needs a {1 << k}x{1 << k} matrix")


@dataclass(frozen=True)
class OracleCall:
    """Query ``O_x`` on the named index register (and value register for the standard model)."""

    index: str
    value: str | None = None


@dataclass(frozen=True, eq=False)
class QramGate:
    """Apply ``u0`` to ``targets`` if ``x_p == 0`` else ``u1``."""

    p: int
    u0: np.ndarray
    u1: np.ndarray
    targets: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))
        object.__setattr__(self, "u0", _matrix(self.u0))
        object.__setattr__(self, "u1", _matrix(self.u1))
        k = len(self.targets)
        if self.u0.shape != (1 << k, 1 << k) or self.u1.shape != self.u0.shape:
            raise StructureError(f"QRAM gate on {k} qubits needs {1 << k}x{1 << k} matrices")


CircuitOp = Union[Unitary, OracleCall, QramGate]


@dataclass(frozen=True, eq=False)
class QueryCircuit:
    n: int
    qubits: int
    oracle_model: str
    registers: Mapping[str, tuple[int, int]]
    ops: tuple[CircuitOp, ...]
    measure_register: str
    accept: frozenset[int]

    def __post_init__(self):
        if self.oracle_model not in ORACLE_MODELS:
            raise StructureError(f"unknown oracle model {self.oracle_model!r}")
        regs = {str(k): (int(v[0]), int(v[1])) for k, v in self.registers.items()}
        object.__setattr__(self, "registers", regs)
        object.__setattr__(self, "ops", tuple(self.ops))
        object.__setattr__(self, "accept", frozenset(int(a) for a in self.accept))
        if self.measure_register not in regs:
            raise StructureError(f"measure register {self.measure_register!r} is not declared")
        for op in self.ops:
            if isinstance(op, OracleCall):
                for name in (op.index, op.value):
                    if name is not None and name not in regs:
                        raise StructureError(f"oracle call names undeclared register {name!r}")

    def qubits_of(self, name: str) -> list[int]:
        start, size = self.registers[name]
        return list(range(start, start + size))

    @property
    def oracle_calls(self) -> int:
        return count_oracle_calls(self)


def count_oracle_calls(c: QueryCircuit) -> int:
    """Number of input accesses: oracle calls, or input-controlled gates in the QRAM model."""
    kind = QramGate if c.oracle_model == "qram" else OracleCall
    return sum(isinstance(op, kind) for op in c.ops)


# --------------------------------------------------------------------------
# simulation
# --------------------------------------------------------------------------

def apply_matrix(state: np.ndarray, matrix: np.ndarray, targets: Sequence[int], qubits: int) -> np.ndarray:
    """Apply ``matrix`` to ``targets`` (first target = most significant) of a flat state."""
    k = len(targets)
    if k == 0:
        return state * matrix[0, 0]
    psi = state.reshape([2] * qubits)
    psi = np.moveaxis(psi, list(targets), list(range(k)))
    shape = psi.shape
    psi = (matrix @ psi.reshape(1 << k, -1)).reshape(shape)
    return np.moveaxis(psi, list(range(k)), list(targets)).reshape(-1)


def register_values(c: QueryCircuit, name: str) -> np.ndarray:
    """Value of register ``name`` for every basis index of the full state."""
    idx = np.arange(1 << c.qubits)
    val = np.zeros_like(idx)
    for q in c.qubits_of(name):
        val = (val << 1) | ((idx >> (c.qubits - 1 - q)) & 1)
    return val


def _padded_bits(bits: np.ndarray, size: int) -> np.ndarray:
    # indices past n read as constant 0
    out = np.zeros(max(size, len(bits)), dtype=np.int8)
    out[: len(bits)] = bits
    return out


def _check_op_shape(c: QueryCircuit, op) -> None:
    if isinstance(op, QramGate):
        if c.oracle_model != "qram":
            raise CircuitError(f"QRAM gate in a {c.oracle_model}-model circuit")
    elif isinstance(op, OracleCall):
        if c.oracle_model == "qram":
            raise CircuitError("oracle call in a qram-model circuit")
        if c.oracle_model == "standard":
            if op.value is None or c.registers[op.value][1] != 1:
                raise CircuitError("standard oracle needs a 1-qubit value register")
        elif op.value is not None:
            raise CircuitError("phase oracle takes no value register")


def simulate_circuit(c: QueryCircuit, x: Bits) -> StateVector:
    bits = as_bits(x, c.n)
    dim = 1 << c.qubits
    state = np.zeros(dim, dtype=complex)
    state[0] = 1.0
    idx = np.arange(dim)
    for op in c.ops:
        _check_op_shape(c, op)
        if isinstance(op, Unitary):
            state = apply_matrix(state, op.matrix, op.targets, c.qubits)
        elif isinstance(op, QramGate):
            if not 0 <= op.p < c.n:
                raise CircuitError(f"QRAM gate reads x_{op.p}, but n={c.n}")
            u = op.u1 if bits[op.p] else op.u0
            state = apply_matrix(state, u, op.targets, c.qubits)
        else:
            a = register_values(c, op.index)
            xa = _padded_bits(bits, 1 << c.registers[op.index][1])[a]
            if c.oracle_model == "phase":
                state = state * np.where(xa == 1, -1.0, 1.0)
            else:
                (vq,) = c.qubits_of(op.value)
                flip = 1 << (c.qubits - 1 - vq)
                state = state[np.where(xa == 1, idx ^ flip, idx)]
    return StateVector(tuple(range(dim)), state)


def accept_prob_circuit(c: QueryCircuit, x: Bits) -> float:
    """Probability that measuring ``measure_register`` yields a value in ``accept``."""
    psi = simulate_circuit(c, x).amps
    vals = register_values(c, c.measure_register)
    mask = np.isin(vals, list(c.accept))
    return float(np.sum(np.abs(psi[mask]) ** 2))


def validate_circuit(c: QueryCircuit, tol: float = TOL) -> ValidationReport:
    rep = ValidationReport()
    for name, (start, size) in c.registers.items():
        if start < 0 or size < 0 or start + size > c.qubits:
            rep.add("register-range", f"register {name}", start + size)
    for k, op in enumerate(c.ops):
        where = f"op {k}"
        try:
            _check_op_shape(c, op)
        except CircuitError as exc:
            rep.add("oracle-model", f"{where} ({exc})", 1.0)
            continue
        if isinstance(op, (Unitary, QramGate)):
            bad = [t for t in op.targets if not 0 <= t < c.qubits]
            if bad or len(set(op.targets)) != len(op.targets):
                rep.add("target-range", where, len(bad) or 1.0)
        if isinstance(op, Unitary):
            dev = unitary_deviation(op.matrix)
            if dev > tol:
                rep.add("unitary", where, dev)
        elif isinstance(op, QramGate):
            if not 0 <= op.p < c.n:
                rep.add("qram-position", where, abs(op.p))
            for bit, u in enumerate((op.u0, op.u1)):
                dev = unitary_deviation(u)
                if dev > tol:
                    rep.add("unitary", f"{where} u{bit}", dev)
    rep.stats["oracle_calls"] = count_oracle_calls(c)
    return rep


validate.register(QueryCircuit)(validate_circuit)
sim.acceptance.register(QueryCircuit)(accept_prob_circuit)


# --------------------------------------------------------------------------
# matrix helpers shared with the transpilers
# --------------------------------------------------------------------------

def embed(matrix: np.ndarray, targets: Sequence[int], qubits: int) -> np.ndarray:
    """Full ``2**qubits`` matrix of ``matrix`` acting on ``targets``."""
    dim = 1 << qubits
    cols = [apply_matrix(e, matrix, targets, qubits) for e in np.eye(dim, dtype=complex)]
    return np.array(cols).T


def xor_permutation(size: int, k: int) -> np.ndarray:
    """Permutation ``|m> -> |m xor k>`` on ``size`` basis states."""
    m = np.arange(size)
    p = np.zeros((size, size), dtype=complex)
    p[m ^ k, m] = 1.0
    return p


def state_preparation(psi: np.ndarray) -> np.ndarray:
    """A unitary whose first column is ``psi`` (Householder reflection up to phase)."""
    psi = np.asarray(psi, dtype=complex)
    d = len(psi)
    phase = psi[0] / abs(psi[0]) if abs(psi[0]) > 0 else 1.0
    e0 = np.zeros(d, dtype=complex)
    e0[0] = 1.0
    w = psi - phase * e0
    nw = np.linalg.norm(w)
    if nw < 1e-15:
        return np.eye(d, dtype=complex) * phase
    w = w / nw
    # the reflection maps phase*e0 onto psi
    h = np.eye(d, dtype=complex) - 2 * np.outer(w, w.conj())
    return h * phase


def complete_unitary(columns: Mapping[int, np.ndarray], dim: int) -> np.ndarray:
    """Unitary whose column ``k`` equals ``columns[k]``; remaining columns span the complement.

    The prescribed columns must be orthonormal to within numerical precision.
    """
    u = np.zeros((dim, dim), dtype=complex)
    fixed = sorted(columns)
    for k in fixed:
        u[:, k] = columns[k]
    free = [k for k in range(dim) if k not in columns]
    if free:
        basis = orthonormal_complement(u[:, fixed], dim)
        if basis.shape[1] != len(free):
            raise StructureError("prescribed columns are not orthonormal")
        u[:, free] = basis
    return u


def orthonormal_complement(cols: np.ndarray, dim: int, tol: float = 1e-8) -> np.ndarray:
    """Orthonormal basis of the complement of the span of ``cols``."""
    if cols.size == 0:
        return np.eye(dim, dtype=complex)
    uu, s, _ = np.linalg.svd(cols, full_matrices=True)
    rank = int(np.sum(s > tol))
    return uu[:, rank:]


def orthonormal_basis(cols: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    if cols.size == 0:
        return np.zeros((cols.shape[0], 0), dtype=complex)
    uu, s, _ = np.linalg.svd(cols, full_matrices=False)
    return uu[:, : int(np.sum(s > tol))]
