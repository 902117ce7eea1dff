"""Reductions between branching-program models and query circuits."""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from math import ceil, log2

import numpy as np

from . import circuit as qc
from .circuit import OracleCall, QramGate, QueryCircuit, Unitary
from .model import (
    TOL,
    AqbpProgram,
    GqbpProgram,
    NqbpProgram,
    QuantumTransformation,
    StructureError,
    measures,
)


class UnsupportedTranspile(ValueError):
    pass


class EarlyHaltWarning(UserWarning):
    """The NQBP may observe acc/rej before its final step, so unrolling may not be exact."""


@dataclass
class TranspileCertificate:
    source: dict
    target: dict
    claim: str
    bound_satisfied: bool
    notes: list[str] = field(default_factory=list)

    def __str__(self) -> str:
        tgt = " ".join(f"{k}={v}" for k, v in self.target.items())
        status = "holds" if self.bound_satisfied else "VIOLATED"
        return f"{tgt}\nbound: {self.claim} ({status})"


def qubits_for(size: int) -> int:
    """Qubits needed to index ``size`` basis states."""
    return ceil(log2(size)) if size > 1 else 0


def nearest_unitary(m: np.ndarray) -> np.ndarray:
    u, _, vh = np.linalg.svd(m)
    return u @ vh


def _pad(u: np.ndarray, size: int) -> np.ndarray:
    out = np.eye(size, dtype=complex)
    out[: u.shape[0], : u.shape[1]] = u
    return out


def _basis(size: int, k: int) -> np.ndarray:
    e = np.zeros(size, dtype=complex)
    e[k] = 1.0
    return e


# --------------------------------------------------------------------------
# AQBP <-> GQBP
# --------------------------------------------------------------------------

def aqbp_to_gqbp(a: AqbpProgram) -> GqbpProgram:
    """Every node of level ``s`` queries ``j_{s+1}`` and the step matrices are ``U_{s+1}(0/1)``."""
    levels = tuple(tuple(f"v{s}_{t}" for t in range(a.d)) for s in range(a.length + 1))
    labels = {v: a.steps[s].j for s in range(a.length) for v in levels[s]}
    steps = tuple((s.u0, s.u1) for s in a.steps)
    accept = frozenset(levels[-1][t] for t in a.accept)
    return GqbpProgram(a.n, levels, labels, a.initial, steps, accept)


# --------------------------------------------------------------------------
# GQBP <-> NQBP
# --------------------------------------------------------------------------

def _step_fillers(c0: np.ndarray, c1: np.ndarray, labels: list[int], tol: float = 1e-8):
    """Columns completing one rectangular step to a unitary, each depending on one bit only.

    For label ``k`` let ``S_k`` span every column of nodes labelled ``k``.
    The spaces ``S_k`` are mutually orthogonal, so the part of ``S_k`` not hit
    for bit ``a`` depends on ``x_k`` alone and can be filled by nodes labelled
    ``k``; the rest of the target level is filled by constant columns.
    """
    fillers = []
    spans = []
    for k in sorted(set(labels)):
        idx = [i for i, lab in enumerate(labels) if lab == k]
        span = qc.orthonormal_basis(np.hstack([c0[:, idx], c1[:, idx]]), tol)
        spans.append(span)
        per_bit = []
        for c in (c0, c1):
            b = c[:, idx]
            rest = span - b @ (b.conj().T @ span)
            per_bit.append(qc.orthonormal_basis(rest, tol))
        if per_bit[0].shape[1] != per_bit[1].shape[1]:
            raise StructureError("step is not well behaved: unequal complements per bit")
        for t in range(per_bit[0].shape[1]):
            fillers.append((k, per_bit[0][:, t], per_bit[1][:, t]))
    const = qc.orthonormal_complement(np.hstack(spans), c0.shape[0], tol) if spans else np.eye(c0.shape[0])
    for t in range(const.shape[1]):
        fillers.append((0, const[:, t], const[:, t]))
    return fillers


def gqbp_to_nqbp(g: GqbpProgram, tol: float = 1e-8) -> NqbpProgram:
    """View a GQBP as an NQBP with ``Q_acc = F`` and ``Q_rej`` = rest of the last level.

    ``U^{O_x}`` must be unitary on all of Q, so the last-level nodes (whose
    amplitude is observed and never evolved) are given columns that map back
    onto level 0 and onto the parts of each level not reached by the step
    into it.  A superposed initial state (or a length-0 program) gets a
    one-node fan-out level.
    """
    levels = [list(lvl) for lvl in g.levels]
    steps = [(np.asarray(c0), np.asarray(c1)) for c0, c1 in g.steps]
    step_labels = [g.level_labels(i) for i in range(g.length)]
    labels = dict(g.labels)
    support = np.flatnonzero(np.abs(g.initial) > 0)
    # an NQBP observes only after applying U, so length 0 also needs the fan-out step
    if len(support) == 1 and g.length > 0:
        start = levels[0][support[0]]
    else:
        start = "fanout"
        while start in labels or any(start in lvl for lvl in levels):
            start = "_" + start
        col = np.asarray(g.initial).reshape(-1, 1)
        levels.insert(0, [start])
        steps.insert(0, (col, col))
        step_labels.insert(0, [0])
        labels[start] = 0

    nodes = [v for lvl in levels for v in lvl]
    pos = {v: k for k, v in enumerate(nodes)}
    size = len(nodes)
    c = [np.zeros((size, size), dtype=complex) for _ in range(2)]
    slots = [(0, {levels[0][j]: 1.0}, {levels[0][j]: 1.0}) for j in range(len(levels[0]))]
    for i, (c0, c1) in enumerate(steps):
        src, tgt = levels[i], levels[i + 1]
        rows = [pos[v] for v in tgt]
        for col_idx, v in enumerate(src):
            c[0][rows, pos[v]] = c0[:, col_idx]
            c[1][rows, pos[v]] = c1[:, col_idx]
        for k, f0, f1 in _step_fillers(c0, c1, step_labels[i], tol):
            slots.append((k, dict(zip(tgt, f0)), dict(zip(tgt, f1))))
    last = levels[-1]
    if len(slots) != len(last):
        raise StructureError(f"unitary completion needs {len(slots)} free columns but the last level has {len(last)}")
    for v, (k, f0, f1) in zip(last, slots):
        labels[v] = k
        for bit, f in enumerate((f0, f1)):
            for t, amp in f.items():
                c[bit][pos[t], pos[v]] = amp
    acc = frozenset(g.accept)
    rej = frozenset(v for v in last if v not in acc)
    non = frozenset(nodes) - acc - rej
    return NqbpProgram(g.n, tuple(nodes), acc, rej, non, labels, start, c[0], c[1], len(steps))


def nqbp_may_halt_early(p: NqbpProgram, tol: float = TOL) -> bool:
    """Whether acc/rej amplitude is syntactically reachable before the final step."""
    halting = p.mask("acc") | p.mask("rej")
    reach = np.zeros(p.size, dtype=bool)
    reach[p.nodes.index(p.start)] = True
    edges = (np.abs(p.c0) > tol) | (np.abs(p.c1) > tol)
    for _ in range(p.steps - 1):
        reach = edges[:, reach].any(axis=1)
        if (reach & halting).any():
            return True
    return False


def nqbp_to_gqbp(p: NqbpProgram) -> GqbpProgram:
    """Unroll ``steps`` copies of Q; edges go from copy i to copy i+1.

    Exact only when no acc/rej amplitude appears before the last step;
    an :class:`EarlyHaltWarning` is issued when that cannot be ruled out.
    """
    if nqbp_may_halt_early(p):
        warnings.warn("NQBP may reach acc/rej before its final step; unrolled GQBP may differ",
                      EarlyHaltWarning, stacklevel=2)
    levels = tuple(tuple(f"c{i}:{v}" for v in p.nodes) for i in range(p.steps + 1))
    labels = {f"c{i}:{v}": p.labels[v] for i in range(p.steps) for v in p.nodes}
    initial = _basis(p.size, p.nodes.index(p.start))
    steps = tuple((p.c0, p.c1) for _ in range(p.steps))
    accept = frozenset(f"c{p.steps}:{v}" for v in p.nodes if v in p.acc)
    return GqbpProgram(p.n, levels, labels, initial, steps, accept)


# --------------------------------------------------------------------------
# QRAM circuits <-> AQBP
# --------------------------------------------------------------------------

def _accept_basis(c: QueryCircuit) -> frozenset[int]:
    vals = qc.register_values(c, c.measure_register)
    return frozenset(int(b) for b in np.flatnonzero(np.isin(vals, list(c.accept))))


def qram_circuit_to_aqbp(c: QueryCircuit) -> AqbpProgram:
    """One AQBP step per QRAM gate on ``d = 2**q`` basis states.

    Plain unitaries are fused into the next gate (``U(a) <- U(a) V``); a
    trailing one into the last gate.
    """
    if c.oracle_model != "qram":
        raise UnsupportedTranspile(f"expected a qram-model circuit, got {c.oracle_model}")
    d = 1 << c.qubits
    pending = np.eye(d, dtype=complex)
    steps: list[list] = []
    for op in c.ops:
        if isinstance(op, Unitary):
            pending = qc.embed(op.matrix, op.targets, c.qubits) @ pending
        elif isinstance(op, QramGate):
            u0 = qc.embed(op.u0, op.targets, c.qubits) @ pending
            u1 = qc.embed(op.u1, op.targets, c.qubits) @ pending
            steps.append([op.p, u0, u1])
            pending = np.eye(d, dtype=complex)
        else:
            raise UnsupportedTranspile("oracle call in a qram-model circuit")
    initial = _basis(d, 0)
    if steps:
        steps[-1][1] = pending @ steps[-1][1]
        steps[-1][2] = pending @ steps[-1][2]
    else:
        initial = pending @ initial
    ts = tuple(QuantumTransformation(j, u0, u1) for j, u0, u1 in steps)
    return AqbpProgram(c.n, d, initial, ts, _accept_basis(c))


def aqbp_to_qram_circuit(a: AqbpProgram) -> QueryCircuit:
    """``log d`` qubits; per step apply ``U(0)`` then, if ``x_j = 1``, ``U(1) U(0)^H``."""
    q = qubits_for(a.d)
    size = 1 << q
    targets = tuple(range(q))
    ops: list = []
    init = np.zeros(size, dtype=complex)
    init[: a.d] = a.initial
    if not np.allclose(init, _basis(size, 0), atol=0, rtol=0):
        ops.append(Unitary(targets, qc.state_preparation(init)))
    for s in a.steps:
        u0, u1 = _pad(s.u0, size), _pad(s.u1, size)
        ops.append(Unitary(targets, u0))
        ops.append(QramGate(s.j, np.eye(size), u1 @ u0.conj().T, targets))
    return QueryCircuit(a.n, q, "qram", {"node": (0, q)}, ops, "node", a.accept)


def aqbp_to_oracle_circuit(a: AqbpProgram) -> QueryCircuit:
    """Registers index (log n), node (log d), value (1); two standard-oracle calls per step."""
    nq, dq = qubits_for(a.n), qubits_for(a.d)
    regs = {"index": (0, nq), "node": (nq, dq), "value": (nq + dq, 1)}
    idx_q = tuple(range(nq))
    node_q = tuple(range(nq, nq + dq))
    val_q = (nq + dq,)
    size = 1 << dq
    ops: list = []
    init = np.zeros(size, dtype=complex)
    init[: a.d] = a.initial
    if not np.allclose(init, _basis(size, 0), atol=0, rtol=0):
        ops.append(Unitary(node_q, qc.state_preparation(init)))
    p0 = np.diag([1.0, 0.0])
    p1 = np.diag([0.0, 1.0])
    for s in a.steps:
        select = qc.xor_permutation(1 << nq, s.j)
        controlled = np.kron(_pad(s.u0, size), p0) + np.kron(_pad(s.u1, size), p1)
        ops += [
            Unitary(idx_q, select),
            OracleCall("index", "value"),
            Unitary(node_q + val_q, controlled),
            OracleCall("index", "value"),
            Unitary(idx_q, select.conj().T),
        ]
    return QueryCircuit(a.n, nq + dq + 1, "standard", regs, ops, "node", a.accept)


# --------------------------------------------------------------------------
# phase circuits -> GQBP, dummy elimination
# --------------------------------------------------------------------------

def phase_circuit_to_gqbp(c: QueryCircuit) -> GqbpProgram:
    """Width ``2**q``, length ``2t+1``: dummy steps carry the unitaries, odd steps the oracle signs.

    Runs of plain unitaries are fused into one full-register matrix, with the
    identity standing in where two oracle calls are adjacent.
    """
    if c.oracle_model != "phase":
        raise UnsupportedTranspile(f"only phase-oracle circuits map to GQBPs, got {c.oracle_model}")
    q = c.qubits
    w = 1 << q
    segments = [np.eye(w, dtype=complex)]
    calls: list[OracleCall] = []
    for op in c.ops:
        if isinstance(op, Unitary):
            segments[-1] = qc.embed(op.matrix, op.targets, q) @ segments[-1]
        elif isinstance(op, OracleCall):
            calls.append(op)
            segments.append(np.eye(w, dtype=complex))
        else:
            raise UnsupportedTranspile("QRAM gate in a phase-model circuit")
    t = len(calls)
    levels = tuple(tuple(f"v{i}_{j}" for j in range(w)) for i in range(2 * t + 2))
    labels: dict[str, int] = {}
    steps = []
    for k in range(t + 1):
        for v in levels[2 * k]:
            labels[v] = 0
        steps.append((segments[k], segments[k]))
        if k == t:
            break
        idx = qc.register_values(c, calls[k].index)
        sign = np.ones(w)
        for j, v in enumerate(levels[2 * k + 1]):
            if idx[j] < c.n:
                labels[v] = int(idx[j])
                sign[j] = -1.0
            else:
                labels[v] = 0  # padded index: constant-0 variable, same edge for both bits
        steps.append((np.eye(w, dtype=complex), np.diag(sign).astype(complex)))
    accept = frozenset(levels[-1][j] for j in _accept_basis(c))
    return GqbpProgram(c.n, levels, labels, _basis(w, 0), tuple(steps), accept)


def is_dummy_step(c0: np.ndarray, c1: np.ndarray, tol: float = TOL) -> bool:
    return bool(np.abs(np.asarray(c0) - np.asarray(c1)).max(initial=0.0) <= tol)


def remove_dummy_levels(g: GqbpProgram, tol: float = TOL) -> GqbpProgram:
    """Fuse every query-independent step into its predecessor (or into the initial vector)."""
    if not any(is_dummy_step(c0, c1, tol) for c0, c1 in g.steps):
        return g
    initial = np.array(g.initial)
    levels = [g.levels[0]]
    steps: list[tuple[np.ndarray, np.ndarray]] = []
    for i, (c0, c1) in enumerate(g.steps):
        if is_dummy_step(c0, c1, tol):
            d = np.asarray(c0)
            if steps:
                p0, p1 = steps[-1]
                steps[-1] = (d @ p0, d @ p1)
            else:
                initial = d @ initial
            levels[-1] = g.levels[i + 1]
        else:
            steps.append((c0, c1))
            levels.append(g.levels[i + 1])
    keep = {v for lvl in levels for v in lvl}
    labels = {v: lab for v, lab in g.labels.items() if v in keep}
    return GqbpProgram(g.n, tuple(levels), labels, initial, tuple(steps), g.accept)


# --------------------------------------------------------------------------
# GQBP -> standard-oracle circuit
# --------------------------------------------------------------------------

def _label_unitary(labels: list[int], wsize: int, isize: int) -> np.ndarray:
    """``|j>|m> -> |j>|m xor L(j)>`` on width x index registers; padded ``j`` has label 0."""
    u = np.zeros((wsize * isize, wsize * isize), dtype=complex)
    for j in range(wsize):
        lab = labels[j] if j < len(labels) else 0
        for m in range(isize):
            u[j * isize + (m ^ lab), j * isize + m] = 1.0
    return u


def _label_eraser(c0, c1, labels: list[int], wsize: int, isize: int, tol: float = 1e-8) -> np.ndarray:
    """``|psi>|k> -> |psi>|0>`` for ``psi`` in the span of columns of nodes labelled ``k``."""
    rows = c0.shape[0]
    total = np.zeros((wsize * isize, wsize * isize), dtype=complex)
    rest = np.eye(wsize, dtype=complex)
    for k in sorted(set(labels)):
        idx = [i for i, lab in enumerate(labels) if lab == k]
        cols = np.zeros((wsize, 2 * len(idx)), dtype=complex)
        cols[:rows] = np.hstack([c0[:, idx], c1[:, idx]])
        basis = qc.orthonormal_basis(cols, tol)
        proj = basis @ basis.conj().T
        rest -= proj
        total += np.kron(proj, qc.xor_permutation(isize, k))
    total += np.kron(rest, np.eye(isize))
    return nearest_unitary(total)


def gqbp_to_oracle_circuit(g: GqbpProgram) -> QueryCircuit:
    """Standard-oracle circuit with ``l`` width registers, an index register and a value qubit.

    Level 0 is prepared in ``W1``; step 1 acts in place on ``W1`` and step
    ``t > 1`` moves the state from ``W{t-1}`` into ``W{t}``, resetting the
    former.  Each step computes the queried index, calls the oracle, applies
    the bit-controlled transition, calls the oracle again, and clears the
    index register by reading which label's column space the new state lies
    in.  Uses ``l*ceil(log w) + ceil(log n) + 1`` qubits and ``2l`` queries.
    """
    l = g.length
    wq = qubits_for(max(len(lvl) for lvl in g.levels))
    nq = qubits_for(g.n)
    wsize, isize = 1 << wq, 1 << nq
    nregs = max(l, 1)
    regs = {f"W{r + 1}": (r * wq, wq) for r in range(nregs)}
    regs["index"] = (nregs * wq, nq)
    regs["value"] = (nregs * wq + nq, 1)
    qubits = nregs * wq + nq + 1

    def q_of(name):
        start, size = regs[name]
        return tuple(range(start, start + size))

    ops: list = []
    init = np.zeros(wsize, dtype=complex)
    init[: len(g.initial)] = g.initial
    if not np.allclose(init, _basis(wsize, 0), atol=0, rtol=0):
        ops.append(Unitary(q_of("W1"), qc.state_preparation(init)))
    for t, (c0, c1) in enumerate(g.steps, start=1):
        src = f"W{max(t - 1, 1)}"
        tgt = f"W{t}"
        labels = g.level_labels(t - 1)
        m, rows = c0.shape[1], c0.shape[0]
        cols = {}
        for i in range(m):
            for a, c in enumerate((c0, c1)):
                beta = np.zeros(wsize, dtype=complex)
                beta[:rows] = c[:, i]
                if src == tgt:
                    cols[i * 2 + a] = np.kron(beta, _basis(2, a))
                else:
                    cols[(i * wsize) * 2 + a] = np.kron(_basis(wsize, 0), np.kron(beta, _basis(2, a)))
        if src == tgt:
            transition = qc.complete_unitary(cols, wsize * 2)
            trans_q = q_of(tgt) + q_of("value")
        else:
            transition = qc.complete_unitary(cols, wsize * wsize * 2)
            trans_q = q_of(src) + q_of(tgt) + q_of("value")
        ops += [
            Unitary(q_of(src) + q_of("index"), _label_unitary(labels, wsize, isize)),
            OracleCall("index", "value"),
            Unitary(trans_q, nearest_unitary(transition)),
            OracleCall("index", "value"),
            Unitary(q_of(tgt) + q_of("index"), _label_eraser(c0, c1, labels, wsize, isize)),
        ]
    last = g.levels[-1]
    accept = frozenset(j for j, v in enumerate(last) if v in g.accept)
    return QueryCircuit(g.n, qubits, "standard", regs, ops, f"W{nregs}", accept)


# --------------------------------------------------------------------------
# dispatcher with bound certificates
# --------------------------------------------------------------------------

def describe(obj) -> dict:
    if isinstance(obj, QueryCircuit):
        return {"qubits": obj.qubits, "queries": qc.count_oracle_calls(obj)}
    m = measures(obj)
    return {"width": m.width, "length": m.length, "size": m.size}


def _cert(src, tgt, claim: str, ok: bool, notes=()) -> TranspileCertificate:
    return TranspileCertificate(describe(src), describe(tgt), claim, bool(ok), list(notes))


TARGETS = ("gqbp", "nqbp", "aqbp", "circuit-qram", "circuit-oracle")


def transpile(obj, to: str, remove_dummies: bool = False):
    """Convert ``obj`` to the model named by ``to``; returns ``(result, certificate)``."""
    if to not in TARGETS:
        raise UnsupportedTranspile(f"unknown target {to!r}; choose from {', '.join(TARGETS)}")
    kind = _kind(obj)
    if to == "gqbp":
        if kind == "gqbp":
            out, cert = obj, _cert(obj, obj, "identity", True)
        elif kind == "aqbp":
            out = aqbp_to_gqbp(obj)
            m, s = measures(out), measures(obj)
            cert = _cert(obj, out, f"(w,l) = ({s.width},{s.length})", (m.width, m.length) == (s.width, s.length))
        elif kind == "nqbp":
            out = nqbp_to_gqbp(obj)
            m = measures(out)
            cert = _cert(obj, out, f"width = {obj.size}, length = {obj.steps}",
                         (m.width, m.length) == (obj.size, obj.steps),
                         ["may halt early"] if nqbp_may_halt_early(obj) else [])
        elif kind == "circuit-phase":
            out = phase_circuit_to_gqbp(obj)
            t, w = qc.count_oracle_calls(obj), 1 << obj.qubits
            m = measures(out)
            cert = _cert(obj, out, f"(2^q, 2t+1) = ({w},{2 * t + 1})", (m.width, m.length) == (w, 2 * t + 1))
        elif kind == "circuit-qram":
            a = qram_circuit_to_aqbp(obj)
            out = aqbp_to_gqbp(a)
            t, w = qc.count_oracle_calls(obj), 1 << obj.qubits
            m = measures(out)
            cert = _cert(obj, out, f"(2^q, t) = ({w},{t})", (m.width, m.length) == (w, t))
        else:
            raise UnsupportedTranspile(
                "standard-oracle circuits cannot be converted to GQBPs; only phase-oracle and QRAM circuits are supported"
            )
        if remove_dummies:
            src_len = measures(out).length
            out = remove_dummy_levels(out)
            m = measures(out)
            if kind == "circuit-phase":
                t = qc.count_oracle_calls(obj)
                cert = _cert(obj, out, f"(2^q, t) = ({1 << obj.qubits},{t})",
                             (m.width, m.length) == (1 << obj.qubits, t))
            else:
                cert = _cert(obj, out, f"length <= {src_len}", m.length <= src_len)
        return out, cert
    if remove_dummies:
        raise UnsupportedTranspile("--remove-dummies applies only when the target is gqbp")
    if to == "nqbp":
        g = obj if kind == "gqbp" else transpile(obj, "gqbp")[0]
        out = gqbp_to_nqbp(g)
        s = measures(g)
        extra = out.steps - s.length
        cert = _cert(g, out, f"size = {s.size}+{extra}, length = {s.length}+{extra}",
                     out.size == s.size + extra and extra in (0, 1))
        return out, cert
    if to == "aqbp":
        if kind != "circuit-qram":
            raise UnsupportedTranspile("only QRAM circuits convert to AQBPs (GQBPs are strictly more general)")
        out = qram_circuit_to_aqbp(obj)
        t = qc.count_oracle_calls(obj)
        cert = _cert(obj, out, f"(2^q, t) = ({1 << obj.qubits},{t})", (out.d, out.length) == (1 << obj.qubits, t))
        return out, cert
    if to == "circuit-qram":
        if kind != "aqbp":
            raise UnsupportedTranspile("only AQBPs convert to QRAM circuits")
        out = aqbp_to_qram_circuit(obj)
        cert = _cert(obj, out, f"qubits = log d = {qubits_for(obj.d)}, gates = l = {obj.length}",
                     out.qubits == qubits_for(obj.d) and qc.count_oracle_calls(out) == obj.length)
        return out, cert
    # circuit-oracle
    if kind == "aqbp":
        out = aqbp_to_oracle_circuit(obj)
        q = qubits_for(obj.n) + qubits_for(obj.d) + 1
        cert = _cert(obj, out, f"qubits = log n + log d + 1 = {q}, queries = 2l = {2 * obj.length}",
                     out.qubits == q and qc.count_oracle_calls(out) == 2 * obj.length)
        return out, cert
    if kind == "gqbp":
        out = gqbp_to_oracle_circuit(obj)
        m = measures(obj)
        q = max(m.length, 1) * qubits_for(m.width) + qubits_for(obj.n) + 1
        cert = _cert(obj, out, f"qubits = l log w + log n + 1 = {q}, queries = 2l = {2 * m.length}",
                     out.qubits == q and qc.count_oracle_calls(out) == 2 * m.length)
        return out, cert
    raise UnsupportedTranspile(f"no reduction from {kind} to {to}")


def _kind(obj) -> str:
    if isinstance(obj, GqbpProgram):
        return "gqbp"
    if isinstance(obj, AqbpProgram):
        return "aqbp"
    if isinstance(obj, NqbpProgram):
        return "nqbp"
    if isinstance(obj, QueryCircuit):
        return f"circuit-{obj.oracle_model}"
    raise UnsupportedTranspile(f"cannot transpile {type(obj).__name__}")
