"""Exact state-vector evolution and measurement for every program model.

Inputs are bit strings ``x`` where ``x[i]`` is the variable ``x_i``; a
string ``"110"`` means ``x_0 = 1, x_1 = 1, x_2 = 0``.  Truth tables are
indexed little-endian: bit ``i`` of the table index is ``x_i``.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import singledispatch
from typing import Sequence, Union

import numpy as np

from .model import (
    TOL,
    AqbpProgram,
    ClassicalBp,
    GqbpProgram,
    NqbpProgram,
    validate,
)

Bits = Union[str, Sequence[int], np.ndarray]

DEFAULT_MAX_N = 20


class InvalidProgramError(ValueError):
    """Raised when simulation is asked to run a program that fails validation."""

    def __init__(self, report):
        self.report = report
        lines = "; ".join(str(v) for v in report.violations[:5])
        super().__init__(f"invalid program: {lines}")


class NotExactError(ValueError):
    pass


class EnumerationCapError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class StateVector:
    basis: tuple
    amps: np.ndarray

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def __getitem__(self, key) -> complex:
        return complex(self.amps[self.basis.index(key)])


@dataclass(frozen=True)
class NqbpOutcome:
    p_acc: float
    p_rej: float
    p_residual: float


@dataclass(frozen=True, eq=False)
class BooleanTable:
    n: int
    values: np.ndarray

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        if vals.shape != (1 << self.n,):
            raise ValueError(f"table over n={self.n} needs {1 << self.n} values, got {vals.shape}")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, x: Bits) -> float:
        return float(self.values[bits_to_index(as_bits(x, self.n))])

    def is_boolean(self, tol: float = TOL) -> bool:
        return bool(np.all(np.minimum(np.abs(self.values), np.abs(self.values - 1)) <= tol))


# --------------------------------------------------------------------------
# input helpers
# --------------------------------------------------------------------------

def as_bits(x: Bits, n: int) -> np.ndarray:
    if isinstance(x, str):
        if any(ch not in "01" for ch in x):
            raise ValueError(f"input {x!r} is not a bit string")
        bits = np.array([int(ch) for ch in x], dtype=np.int8)
    else:
        bits = np.asarray(x, dtype=np.int8).reshape(-1)
        if np.any((bits != 0) & (bits != 1)):
            raise ValueError("input bits must be 0 or 1")
    if len(bits) != n:
        raise ValueError(f"input has {len(bits)} bits, program expects n={n}")
    return bits


def bits_to_index(bits: Sequence[int]) -> int:
    return sum(int(b) << i for i, b in enumerate(bits))


def index_to_bits(index: int, n: int) -> np.ndarray:
    return np.array([(index >> i) & 1 for i in range(n)], dtype=np.int8)


def bitstring(index: int, n: int) -> str:
    return "".join(str((index >> i) & 1) for i in range(n))


def all_inputs(n: int) -> np.ndarray:
    """All ``2**n`` inputs as rows, row ``k`` being the little-endian bits of ``k``."""
    idx = np.arange(1 << n)
    return ((idx[:, None] >> np.arange(n)[None, :]) & 1).astype(np.int8)


def max_n() -> int:
    return int(os.environ.get("QBP_MAX_N", DEFAULT_MAX_N))


def _require_valid(program, tol=TOL):
    rep = validate(program, tol)
    if not rep.ok:
        raise InvalidProgramError(rep)


# --------------------------------------------------------------------------
# GQBP
# --------------------------------------------------------------------------

def step_matrix(g: GqbpProgram, i: int, x: Bits) -> np.ndarray:
    """``U_i^{O_x}`` as a ``|level i| x |level i-1|`` matrix; column ``v`` is ``delta(v, x_{L(v)}, .)``."""
    if not 1 <= i <= g.length:
        raise IndexError(f"step {i} out of range 1..{g.length}")
    bits = as_bits(x, g.n)
    c0, c1 = g.steps[i - 1]
    sel = bits[g.level_labels(i - 1)].astype(bool)
    return np.where(sel[None, :], c1, c0)


def _gqbp_final_states(g: GqbpProgram, inputs: np.ndarray) -> np.ndarray:
    """Final amplitude vectors for a batch of inputs (rows)."""
    state = np.broadcast_to(g.initial, (len(inputs), len(g.initial))).astype(complex)
    for i, (c0, c1) in enumerate(g.steps, start=1):
        sel = inputs[:, g.level_labels(i - 1)].astype(bool)
        state = np.where(sel, 0, state) @ c0.T + np.where(sel, state, 0) @ c1.T
    return state


def run_gqbp(g: GqbpProgram, x: Bits, check: bool = True) -> StateVector:
    if check:
        _require_valid(g)
    bits = as_bits(x, g.n)
    psi = _gqbp_final_states(g, bits[None, :])[0]
    return StateVector(g.levels[-1], psi)


def accept_prob_gqbp(g: GqbpProgram, x: Bits, check: bool = True) -> float:
    psi = run_gqbp(g, x, check).amps
    return float(np.sum(np.abs(psi[g.accept_mask()]) ** 2))


# --------------------------------------------------------------------------
# AQBP
# --------------------------------------------------------------------------

def aqbp_state(a: AqbpProgram, x: Bits) -> np.ndarray:
    bits = as_bits(x, a.n)
    psi = np.array(a.initial, dtype=complex)
    for s in a.steps:
        psi = s.matrix(bits[s.j]) @ psi
    return psi


def run_aqbp(a: AqbpProgram, x: Bits, check: bool = True) -> float:
    """``||M U_l(x_{j_l}) ... U_1(x_{j_1}) |psi_0>||^2``."""
    if check:
        _require_valid(a)
    psi = aqbp_state(a, x)
    return float(np.sum(np.abs(psi[a.accept_mask()]) ** 2))


def _aqbp_table(a: AqbpProgram, inputs: np.ndarray) -> np.ndarray:
    state = np.broadcast_to(a.initial, (len(inputs), a.d)).astype(complex)
    for s in a.steps:
        sel = inputs[:, s.j].astype(bool)[:, None]
        state = np.where(sel, state @ s.u1.T, state @ s.u0.T)
    return np.sum(np.abs(state[:, a.accept_mask()]) ** 2, axis=1)


# --------------------------------------------------------------------------
# NQBP
# --------------------------------------------------------------------------

def nqbp_unitary(p: NqbpProgram, x: Bits) -> np.ndarray:
    bits = as_bits(x, p.n)
    sel = bits[[p.labels[v] for v in p.nodes]].astype(bool)
    return np.where(sel[None, :], p.c1, p.c0)


def run_nqbp(p: NqbpProgram, x: Bits, check: bool = True) -> NqbpOutcome:
    """Apply ``U^{O_x}`` then observe acc/rej/non, ``steps`` times.

    The non-halting branch is carried unnormalised, so its squared norm after
    the final round is the residual probability.
    """
    if check:
        _require_valid(p)
    if p.steps < 1:
        raise ValueError("NQBP step budget must be at least 1")
    u = nqbp_unitary(p, x)
    acc, rej, non = p.mask("acc"), p.mask("rej"), p.mask("non")
    psi = np.zeros(p.size, dtype=complex)
    psi[p.nodes.index(p.start)] = 1.0
    p_acc = p_rej = 0.0
    for _ in range(p.steps):
        psi = u @ psi
        p_acc += float(np.sum(np.abs(psi[acc]) ** 2))
        p_rej += float(np.sum(np.abs(psi[rej]) ** 2))
        psi = np.where(non, psi, 0)
    return NqbpOutcome(p_acc, p_rej, float(np.sum(np.abs(psi) ** 2)))


# --------------------------------------------------------------------------
# classical
# --------------------------------------------------------------------------

class NonDeterministicError(ValueError):
    pass


def run_deterministic(b: ClassicalBp, x: Bits) -> bool:
    """Follow the unique probability-1 edges from the start node to a sink."""
    bits = as_bits(x, b.n)
    starts = [v for v, p in b.start.items() if p != 0]
    if len(starts) != 1 or abs(b.start[starts[0]] - 1.0) > TOL:
        raise NonDeterministicError("deterministic evolution needs a single start node")
    v = starts[0]
    while v not in b.sinks:
        succ = b.successors(v, int(bits[b.labels[v]]))
        if len(succ) != 1 or abs(next(iter(succ.values())) - 1.0) > TOL:
            raise NonDeterministicError(f"node {v!r} does not have a unique probability-1 edge")
        v = next(iter(succ))
    return v in b.accept


def run_probabilistic(b: ClassicalBp, x: Bits) -> float:
    """Propagate the distribution level by level; return the mass absorbed by accept sinks."""
    bits = as_bits(x, b.n)
    dist = dict(b.start)
    accepted = 0.0
    for lvl in b.levels:
        nxt: dict[str, float] = {}
        for v in lvl:
            mass = dist.get(v, 0.0)
            if mass == 0:
                continue
            if v in b.accept:
                accepted += mass
                continue
            if v in b.reject:
                continue
            for t, p in b.successors(v, int(bits[b.labels[v]])).items():
                nxt[t] = nxt.get(t, 0.0) + mass * p
        dist.update(nxt)
    return accepted


# --------------------------------------------------------------------------
# generic acceptance and truth tables
# --------------------------------------------------------------------------

@singledispatch
def acceptance(program, x: Bits) -> float:
    """Acceptance probability of any supported program or table on input ``x``."""
    raise TypeError(f"cannot simulate {type(program).__name__}")


@acceptance.register
def _(program: GqbpProgram, x: Bits) -> float:
    return accept_prob_gqbp(program, x)


@acceptance.register
def _(program: AqbpProgram, x: Bits) -> float:
    return run_aqbp(program, x)


@acceptance.register
def _(program: NqbpProgram, x: Bits) -> float:
    return run_nqbp(program, x).p_acc


@acceptance.register
def _(program: ClassicalBp, x: Bits) -> float:
    return run_probabilistic(program, x)


@acceptance.register
def _(program: BooleanTable, x: Bits) -> float:
    return program[x]


@singledispatch
def acceptance_vector(program) -> np.ndarray:
    """Acceptance probability for all ``2**n`` inputs, little-endian order."""
    _require_valid(program)
    return np.array([acceptance(program, row) for row in all_inputs(program.n)], dtype=float)


@acceptance_vector.register
def _(program: GqbpProgram) -> np.ndarray:
    _require_valid(program)
    psi = _gqbp_final_states(program, all_inputs(program.n))
    return np.sum(np.abs(psi[:, program.accept_mask()]) ** 2, axis=1)


@acceptance_vector.register
def _(program: AqbpProgram) -> np.ndarray:
    _require_valid(program)
    return _aqbp_table(program, all_inputs(program.n))


@acceptance_vector.register
def _(program: BooleanTable) -> np.ndarray:
    return np.array(program.values)


def truth_table(program, kind: str = "probability", cap: int | None = None) -> BooleanTable:
    """Exhaustively tabulate acceptance.

    ``kind="boolean"`` demands an exact program (every value within 1e-9 of
    0 or 1) and rounds; otherwise :class:`NotExactError` is raised.
    """
    if kind not in ("boolean", "probability"):
        raise ValueError(f"unknown table kind {kind!r}")
    cap = max_n() if cap is None else cap
    if program.n > cap:
        raise EnumerationCapError(f"n={program.n} exceeds the enumeration cap {cap}")
    values = acceptance_vector(program)
    if kind == "boolean":
        dist = np.minimum(np.abs(values), np.abs(values - 1))
        worst = int(np.argmax(dist))
        if dist[worst] > TOL:
            raise NotExactError(
                f"acceptance {values[worst]:.12g} on input {bitstring(worst, program.n)} is not 0 or 1"
            )
        values = np.round(values)
    return BooleanTable(program.n, values)


def final_norms(program) -> np.ndarray:
    """Norm of the final state on every input; for NQBPs the total observed plus residual mass."""
    if isinstance(program, GqbpProgram):
        psi = _gqbp_final_states(program, all_inputs(program.n))
        return np.linalg.norm(psi, axis=1)
    if isinstance(program, AqbpProgram):
        return np.array([np.linalg.norm(aqbp_state(program, row)) for row in all_inputs(program.n)])
    if isinstance(program, NqbpProgram):
        outs = [run_nqbp(program, row) for row in all_inputs(program.n)]
        return np.sqrt([o.p_acc + o.p_rej + o.p_residual for o in outs])
    from .circuit import QueryCircuit, simulate_circuit

    if isinstance(program, QueryCircuit):
        return np.array([simulate_circuit(program, row).norm() for row in all_inputs(program.n)])
    raise TypeError(f"no state norm for {type(program).__name__}")

