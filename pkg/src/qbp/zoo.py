"""Hand-built programs (parity, 3-bit majority, Deutsch-Jozsa) and seeded random instances."""
from __future__ import annotations

import numpy as np

from .circuit import OracleCall, QramGate, QueryCircuit, Unitary
from .model import AqbpProgram, GqbpProgram, QuantumTransformation

R2 = 1 / np.sqrt(2)


def _names(level: int, width: int) -> tuple[str, ...]:
    return tuple(f"v{level}_{j}" for j in range(width))


def build_parity(n: int) -> GqbpProgram:
    """Width-2, length-n/2 program accepting exactly the odd-parity inputs.

    Node ``v{i}_{j}`` queries ``x_{2i+j}``; the two branches accumulate the
    parities of the even and odd positions as signs, and the last step
    interferes them.
    """
    if n < 2 or n % 2:
        raise ValueError(f"parity construction needs even n >= 2, got {n}")
    l = n // 2
    levels = [_names(i, 2) for i in range(l + 1)]
    labels = {f"v{i}_{j}": 2 * i + j for i in range(l) for j in range(2)}
    phase = (np.eye(2), -np.eye(2))
    merge0 = R2 * np.array([[1, 1], [1, -1]])
    merge1 = R2 * np.array([[-1, -1], [-1, 1]])
    steps = [phase] * (l - 1) + [(merge0, merge1)]
    return GqbpProgram(n, tuple(levels), labels, np.array([R2, R2]), tuple(steps), frozenset({f"v{l}_1"}))


def build_maj3() -> GqbpProgram:
    """Width-4, length-2 majority of three bits.

    Step 1 compares ``x_0`` and ``x_1`` by interference, landing on ``v1_0``
    when they agree and on ``v1_1`` otherwise; step 2 reads ``x_0`` or ``x_2``
    respectively.
    """
    levels = (_names(0, 2), _names(1, 2), _names(2, 4))
    labels = {"v0_0": 0, "v0_1": 1, "v1_0": 0, "v1_1": 2}
    s1_0 = R2 * np.array([[1, 1], [1, -1]])
    s1_1 = R2 * np.array([[-1, -1], [-1, 1]])
    s2_0 = np.zeros((4, 2))
    s2_1 = np.zeros((4, 2))
    s2_0[0, 0] = s2_1[1, 0] = 1
    s2_0[2, 1] = s2_1[3, 1] = 1
    return GqbpProgram(3, levels, labels, np.array([R2, R2]), ((s1_0, s1_1), (s2_0, s2_1)),
                       frozenset({"v2_1", "v2_3"}))


def build_dj(n: int) -> GqbpProgram:
    """Length-1 Deutsch-Jozsa program on ``n = 2**m`` bits.

    Node ``v0_i`` queries ``x_i``; the step is the n-point Hadamard transform
    with column signs ``(-1)^{x_i}``, and every node but ``v1_0`` accepts.
    Off-promise inputs accept with probability ``1 - |mean((-1)^x)|^2``.
    """
    if n < 2 or n & (n - 1):
        raise ValueError(f"Deutsch-Jozsa construction needs n a power of two >= 2, got {n}")
    i = np.arange(n)
    dots = np.array([[bin(a & b).count("1") & 1 for a in i] for b in i])
    h = np.where(dots == 1, -1.0, 1.0) / np.sqrt(n)
    levels = (_names(0, n), _names(1, n))
    labels = {f"v0_{k}": k for k in range(n)}
    accept = frozenset(f"v1_{k}" for k in range(1, n))
    return GqbpProgram(n, levels, labels, np.full(n, 1 / np.sqrt(n)), ((h, -h),), accept)


# --------------------------------------------------------------------------
# random instances
# --------------------------------------------------------------------------

def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r)
    return q * (diag / np.abs(diag))


def random_state(d: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return v / np.linalg.norm(v)


def _random_subset(size: int, rng: np.random.Generator) -> list[int]:
    return [k for k in range(size) if rng.random() < 0.5]


def random_phase_gqbp(w: int, l: int, n: int, seed: int) -> GqbpProgram:
    """Width-w, length-l program whose step columns are ``(-1)^a U[:, v]`` for a random unitary U.

    Valid by construction; deterministic in ``seed``.
    """
    if min(w, n) < 1 or l < 0:
        raise ValueError("random_phase_gqbp needs w, n >= 1 and l >= 0")
    rng = np.random.default_rng(seed)
    levels = tuple(_names(i, w) for i in range(l + 1))
    labels = {v: int(rng.integers(n)) for lvl in levels[:-1] for v in lvl}
    steps = []
    for _ in range(l):
        u = random_unitary(w, rng)
        steps.append((u, -u))
    accept = frozenset(levels[-1][k] for k in _random_subset(w, rng))
    return GqbpProgram(n, levels, labels, random_state(w, rng), tuple(steps), accept)


def random_aqbp(d: int, l: int, n: int, seed: int) -> AqbpProgram:
    rng = np.random.default_rng(seed)
    steps = tuple(
        QuantumTransformation(int(rng.integers(n)), random_unitary(d, rng), random_unitary(d, rng))
        for _ in range(l)
    )
    return AqbpProgram(n, d, random_state(d, rng), steps, frozenset(_random_subset(d, rng)))


def random_qram_circuit(q: int, t: int, n: int, seed: int) -> QueryCircuit:
    """``t`` QRAM gates on all ``q`` qubits, each preceded by a random plain unitary."""
    rng = np.random.default_rng(seed)
    targets = tuple(range(q))
    ops = []
    for _ in range(t):
        ops.append(Unitary(targets, random_unitary(1 << q, rng)))
        ops.append(QramGate(int(rng.integers(n)), random_unitary(1 << q, rng), random_unitary(1 << q, rng), targets))
    ops.append(Unitary(targets, random_unitary(1 << q, rng)))
    return QueryCircuit(n, q, "qram", {"r": (0, q)}, ops, "r", frozenset(_random_subset(1 << q, rng)))


def random_phase_circuit(q: int, t: int, n: int, seed: int) -> QueryCircuit:
    """Alternating ``U_t O_x ... U_1 O_x U_0`` on ``q`` qubits with a phase oracle over all qubits."""
    rng = np.random.default_rng(seed)
    targets = tuple(range(q))
    ops = [Unitary(targets, random_unitary(1 << q, rng))]
    for _ in range(t):
        ops.append(OracleCall("r"))
        ops.append(Unitary(targets, random_unitary(1 << q, rng)))
    return QueryCircuit(n, q, "phase", {"r": (0, q)}, ops, "r", frozenset(_random_subset(1 << q, rng)))


def deutsch_circuit() -> QueryCircuit:
    """H, phase oracle, H on one qubit with n=2: measures ``x_0 xor x_1``."""
    h = R2 * np.array([[1, 1], [1, -1]])
    ops = (Unitary((0,), h), OracleCall("r"), Unitary((0,), h))
    return QueryCircuit(2, 1, "phase", {"r": (0, 1)}, ops, "r", frozenset({1}))
