"""Shared fixtures and slow-but-obvious reference simulators used as test oracles."""
from __future__ import annotations

import numpy as np
from hypothesis import HealthCheck, settings

from qbp import circuit as qc
from qbp.model import GqbpProgram

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def inputs(n: int):
    """All inputs as little-endian bit tuples, table order."""
    for k in range(1 << n):
        yield tuple((k >> i) & 1 for i in range(n))


def reference_gqbp_prob(g: GqbpProgram, x) -> float:
    """Walk the edge list node by node; no matrices involved."""
    amps = {v: complex(a) for v, a in zip(g.levels[0], g.initial)}
    edges = list(g.edges())
    for step in range(1, g.length + 1):
        nxt = {v: 0j for v in g.levels[step]}
        for s, src, bit, tgt, amp in edges:
            if s == step and x[g.labels[src]] == bit:
                nxt[tgt] += amp * amps[src]
        amps = nxt
    return sum(abs(a) ** 2 for v, a in amps.items() if v in g.accept)


def reference_embed(matrix: np.ndarray, targets, qubits: int) -> np.ndarray:
    """Dense operator of ``matrix`` on ``targets`` built entry by entry from bit arithmetic."""
    dim = 1 << qubits
    k = len(targets)
    out = np.zeros((dim, dim), dtype=complex)
    shifts = [qubits - 1 - t for t in targets]
    rest_mask = dim - 1
    for s in shifts:
        rest_mask &= ~(1 << s)
    for col in range(dim):
        sub_in = sum(((col >> s) & 1) << (k - 1 - i) for i, s in enumerate(shifts))
        for sub_out in range(1 << k):
            row = col & rest_mask
            for i, s in enumerate(shifts):
                row |= ((sub_out >> (k - 1 - i)) & 1) << s
            out[row, col] += matrix[sub_out, sub_in]
    return out


def reference_circuit_prob(c: qc.QueryCircuit, x) -> float:
    """Dense-matrix simulation of a circuit, oracle matrices written out explicitly."""
    dim = 1 << c.qubits
    psi = np.zeros(dim, dtype=complex)
    psi[0] = 1
    xs = list(x)

    def reg_val(idx, name):
        v = 0
        for q in c.qubits_of(name):
            v = (v << 1) | ((idx >> (c.qubits - 1 - q)) & 1)
        return v

    def bit(a):
        return xs[a] if a < len(xs) else 0

    for op in c.ops:
        if isinstance(op, qc.Unitary):
            psi = reference_embed(op.matrix, op.targets, c.qubits) @ psi
        elif isinstance(op, qc.QramGate):
            u = op.u1 if xs[op.p] else op.u0
            psi = reference_embed(u, op.targets, c.qubits) @ psi
        elif c.oracle_model == "phase":
            psi = np.array([(-1) ** bit(reg_val(i, op.index)) for i in range(dim)]) * psi
        else:
            (vq,) = c.qubits_of(op.value)
            o = np.zeros((dim, dim))
            for i in range(dim):
                o[i ^ (bit(reg_val(i, op.index)) << (c.qubits - 1 - vq)), i] = 1
            psi = o @ psi
    return float(sum(abs(psi[i]) ** 2 for i in range(dim) if reg_val(i, c.measure_register) in c.accept))


def table_of(fn, n: int) -> np.ndarray:
    return np.array([fn(x) for x in inputs(n)], dtype=float)


# --------------------------------------------------------------------------
# one PASS/FAIL line per acceptance criterion in the terminal summary
# --------------------------------------------------------------------------

_CRITERIA: list[tuple[str, bool, str]] = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        detail = dict(report.user_properties).get("detail", "")
        if not report.passed:
            crash = getattr(report.longrepr, "reprcrash", None)
            detail = crash.message.splitlines()[0] if crash else "failed"
        _CRITERIA.append((report.nodeid.split("::")[-1], report.passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _CRITERIA:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
