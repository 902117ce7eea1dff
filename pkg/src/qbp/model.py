"""Program representations for branching programs and their validity checks.

All amplitudes are stored densely: a level step of a GQBP is a pair of
complex matrices ``(c0, c1)`` of shape ``(|level i|, |level i-1|)`` whose
column ``v`` is the outgoing amplitude vector ``delta(v, a, .)`` for bit ``a``.
Variable indices are 0-based.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import singledispatch
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

TOL = 1e-9


class StructureError(ValueError):
    """A program is malformed beyond what a validation report can describe."""


def _frozen(a, dtype=complex) -> np.ndarray:
    arr = np.array(a, dtype=dtype)
    arr.setflags(write=False)
    return arr


# --------------------------------------------------------------------------
# GQBP
# --------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GqbpProgram:
    """Levelled quantum branching program ``(Q, E, |v0>, L, delta, F)``.

    ``levels[i]`` lists the node names of level ``i``; ``initial`` is aligned
    with ``levels[0]``; ``steps[i-1] = (c0, c1)`` holds the transition from
    level ``i-1`` to level ``i``.
    """

    n: int
    levels: tuple[tuple[str, ...], ...]
    labels: Mapping[str, int]
    initial: np.ndarray
    steps: tuple[tuple[np.ndarray, np.ndarray], ...]
    accept: frozenset[str]

    def __post_init__(self):
        levels = tuple(tuple(str(v) for v in lvl) for lvl in self.levels)
        object.__setattr__(self, "levels", levels)
        if self.n < 1:
            raise StructureError(f"n must be positive, got {self.n}")
        if not levels or any(len(lvl) == 0 for lvl in levels):
            raise StructureError("every level needs at least one node")
        names = [v for lvl in levels for v in lvl]
        if len(set(names)) != len(names):
            raise StructureError("node names must be unique across levels")
        object.__setattr__(self, "labels", dict(self.labels))
        for lvl in levels[:-1]:
            for v in lvl:
                if v not in self.labels:
                    raise StructureError(f"non-terminal node {v!r} has no label")
        init = _frozen(self.initial)
        if init.shape != (len(levels[0]),):
            raise StructureError(f"initial vector has shape {init.shape}, expected ({len(levels[0])},)")
        object.__setattr__(self, "initial", init)
        if len(self.steps) != len(levels) - 1:
            raise StructureError(f"{len(levels)} levels need {len(levels) - 1} steps, got {len(self.steps)}")
        steps = []
        for i, (c0, c1) in enumerate(self.steps, start=1):
            c0, c1 = _frozen(c0), _frozen(c1)
            shape = (len(levels[i]), len(levels[i - 1]))
            if c0.shape != shape or c1.shape != shape:
                raise StructureError(f"step {i} matrices must have shape {shape}")
            steps.append((c0, c1))
        object.__setattr__(self, "steps", tuple(steps))
        accept = frozenset(str(v) for v in self.accept)
        unknown = accept - set(names)
        if unknown:
            raise StructureError(f"accept set names unknown nodes {sorted(unknown)}")
        object.__setattr__(self, "accept", accept)

    @property
    def length(self) -> int:
        return len(self.steps)

    def level_labels(self, i: int) -> list[int]:
        return [self.labels[v] for v in self.levels[i]]

    def accept_mask(self) -> np.ndarray:
        return np.array([v in self.accept for v in self.levels[-1]], dtype=bool)

    def delta(self, step: int, src: str, bit: int, tgt: str) -> complex:
        """Amplitude of the edge ``src --bit--> tgt`` in level step ``step`` (1-based)."""
        c = self.steps[step - 1][bit]
        return complex(c[self.levels[step].index(tgt), self.levels[step - 1].index(src)])

    def edges(self) -> Iterator[tuple[int, str, int, str, complex]]:
        """Yield ``(step, src, bit, tgt, amp)`` for every nonzero amplitude."""
        for i, pair in enumerate(self.steps, start=1):
            for bit, c in enumerate(pair):
                rows, cols = np.nonzero(c)
                for r, s in sorted(zip(cols.tolist(), rows.tolist())):
                    yield i, self.levels[i - 1][r], bit, self.levels[i][s], complex(c[s, r])

    @classmethod
    def from_edges(
        cls,
        n: int,
        levels: Sequence[Sequence[str]],
        labels: Mapping[str, int],
        initial: Mapping[str, complex],
        transitions: Iterable[tuple[int, str, int, str, complex]],
        accept: Iterable[str],
    ) -> "GqbpProgram":
        """Build from sparse edge records ``(step, src, bit, tgt, amp)``; absent edges are 0."""
        levels = [list(map(str, lvl)) for lvl in levels]
        index = [{v: k for k, v in enumerate(lvl)} for lvl in levels]
        init = np.zeros(len(levels[0]), dtype=complex)
        for v, amp in initial.items():
            if v not in index[0]:
                raise StructureError(f"initial amplitude on {v!r}, which is not in level 0")
            init[index[0][v]] = amp
        steps = [
            (np.zeros((len(levels[i]), len(levels[i - 1])), dtype=complex),
             np.zeros((len(levels[i]), len(levels[i - 1])), dtype=complex))
            for i in range(1, len(levels))
        ]
        for step, src, bit, tgt, amp in transitions:
            if not 1 <= step < len(levels):
                raise StructureError(f"edge step {step} out of range")
            if bit not in (0, 1):
                raise StructureError(f"edge bit must be 0 or 1, got {bit}")
            try:
                r, s = index[step - 1][src], index[step][tgt]
            except KeyError as exc:
                raise StructureError(f"edge {src}->{tgt} is not between levels {step - 1} and {step}") from exc
            steps[step - 1][bit][s, r] = amp
        return cls(n, tuple(map(tuple, levels)), labels, init, tuple(steps), frozenset(accept))


# --------------------------------------------------------------------------
# AQBP
# --------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class QuantumTransformation:
    """``<j, U(0), U(1)>``: apply ``u0`` if ``x_j == 0`` else ``u1``."""

    j: int
    u0: np.ndarray
    u1: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "u0", _frozen(self.u0))
        object.__setattr__(self, "u1", _frozen(self.u1))
        if self.u0.ndim != 2 or self.u0.shape != self.u1.shape or self.u0.shape[0] != self.u0.shape[1]:
            raise StructureError("transformation matrices must be square and of equal shape")

    def matrix(self, bit: int) -> np.ndarray:
        return self.u1 if bit else self.u0


@dataclass(frozen=True, eq=False)
class AqbpProgram:
    n: int
    d: int
    initial: np.ndarray
    steps: tuple[QuantumTransformation, ...]
    accept: frozenset[int]

    def __post_init__(self):
        if self.n < 1 or self.d < 1:
            raise StructureError("n and d must be positive")
        init = _frozen(self.initial)
        if init.shape != (self.d,):
            raise StructureError(f"initial vector must have length d={self.d}")
        object.__setattr__(self, "initial", init)
        object.__setattr__(self, "steps", tuple(self.steps))
        for s in self.steps:
            if s.u0.shape != (self.d, self.d):
                raise StructureError(f"transformation shape {s.u0.shape} does not match d={self.d}")
        object.__setattr__(self, "accept", frozenset(int(a) for a in self.accept))

    @property
    def length(self) -> int:
        return len(self.steps)

    def accept_mask(self) -> np.ndarray:
        mask = np.zeros(self.d, dtype=bool)
        mask[[a for a in self.accept if 0 <= a < self.d]] = True
        return mask


# --------------------------------------------------------------------------
# NQBP
# --------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class NqbpProgram:
    """Node set ``Q = Q_acc + Q_rej + Q_non`` evolved by ``U^{O_x}`` for ``steps`` rounds.

    ``c0``/``c1`` are ``|Q| x |Q|`` with column ``v`` equal to ``delta(v, a, .)``.
    """

    n: int
    nodes: tuple[str, ...]
    acc: frozenset[str]
    rej: frozenset[str]
    non: frozenset[str]
    labels: Mapping[str, int]
    start: str
    c0: np.ndarray
    c1: np.ndarray
    steps: int

    def __post_init__(self):
        nodes = tuple(str(v) for v in self.nodes)
        if len(set(nodes)) != len(nodes):
            raise StructureError("node names must be unique")
        object.__setattr__(self, "nodes", nodes)
        for name in ("acc", "rej", "non"):
            object.__setattr__(self, name, frozenset(str(v) for v in getattr(self, name)))
        object.__setattr__(self, "labels", dict(self.labels))
        missing = [v for v in nodes if v not in self.labels]
        if missing:
            raise StructureError(f"nodes without labels: {missing}")
        if self.start not in nodes:
            raise StructureError(f"start node {self.start!r} is not in Q")
        size = len(nodes)
        for name in ("c0", "c1"):
            m = _frozen(getattr(self, name))
            if m.shape != (size, size):
                raise StructureError(f"{name} must be {size}x{size}")
            object.__setattr__(self, name, m)

    @property
    def size(self) -> int:
        return len(self.nodes)

    def matrix(self, bit: int) -> np.ndarray:
        return self.c1 if bit else self.c0

    def mask(self, part: str) -> np.ndarray:
        members = getattr(self, part)
        return np.array([v in members for v in self.nodes], dtype=bool)

    def edges(self) -> Iterator[tuple[str, int, str, complex]]:
        for bit, c in enumerate((self.c0, self.c1)):
            rows, cols = np.nonzero(c)
            for r, s in sorted(zip(cols.tolist(), rows.tolist())):
                yield self.nodes[r], bit, self.nodes[s], complex(c[s, r])

    @classmethod
    def from_edges(cls, n, nodes, acc, rej, non, labels, start, transitions, steps) -> "NqbpProgram":
        nodes = [str(v) for v in nodes]
        index = {v: k for k, v in enumerate(nodes)}
        c = [np.zeros((len(nodes), len(nodes)), dtype=complex) for _ in range(2)]
        for src, bit, tgt, amp in transitions:
            try:
                c[bit][index[tgt], index[src]] = amp
            except KeyError as exc:
                raise StructureError(f"edge {src}->{tgt} references an unknown node") from exc
        return cls(n, tuple(nodes), acc, rej, non, labels, start, c[0], c[1], steps)


# --------------------------------------------------------------------------
# Classical BP
# --------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ClassicalBp:
    """Levelled deterministic/probabilistic branching program.

    Sinks (``accept`` and ``reject``) have no outgoing edges; every other node
    carries a label and, for each bit, a probability distribution over the
    next level.
    """

    n: int
    levels: tuple[tuple[str, ...], ...]
    labels: Mapping[str, int]
    start: Mapping[str, float]
    transitions: Mapping[tuple[str, int, str], float]
    accept: frozenset[str]
    reject: frozenset[str]

    def __post_init__(self):
        levels = tuple(tuple(str(v) for v in lvl) for lvl in self.levels)
        object.__setattr__(self, "levels", levels)
        names = [v for lvl in levels for v in lvl]
        if len(set(names)) != len(names):
            raise StructureError("node names must be unique across levels")
        object.__setattr__(self, "labels", dict(self.labels))
        object.__setattr__(self, "start", {str(k): float(p) for k, p in self.start.items()})
        object.__setattr__(self, "transitions", {
            (str(s), int(b), str(t)): float(p) for (s, b, t), p in self.transitions.items()
        })
        object.__setattr__(self, "accept", frozenset(map(str, self.accept)))
        object.__setattr__(self, "reject", frozenset(map(str, self.reject)))
        known = set(names)
        for (s, b, t) in self.transitions:
            if s not in known or t not in known:
                raise StructureError(f"edge {s}->{t} references an unknown node")
        for v in self.start:
            if v not in levels[0]:
                raise StructureError(f"start node {v!r} is not in level 0")
        for v in names:
            if v not in self.accept and v not in self.reject and v not in self.labels:
                raise StructureError(f"internal node {v!r} has no label")

    @property
    def sinks(self) -> frozenset[str]:
        return self.accept | self.reject

    def level_of(self) -> dict[str, int]:
        return {v: i for i, lvl in enumerate(self.levels) for v in lvl}

    def successors(self, v: str, bit: int) -> dict[str, float]:
        return {t: p for (s, b, t), p in self.transitions.items() if s == v and b == bit and p != 0}


# --------------------------------------------------------------------------
# Measures and validation
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ProgramMeasures:
    width: int
    length: int
    size: int


@dataclass(frozen=True)
class Violation:
    kind: str
    location: str
    magnitude: float

    def __str__(self) -> str:
        return f"{self.kind} at {self.location}: {self.magnitude:.3e}"


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)
    stats: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, kind: str, location: str, magnitude: float) -> None:
        self.violations.append(Violation(kind, location, float(magnitude)))


def well_behaved_deviation(c0: np.ndarray, c1: np.ndarray, labels: Sequence[int | None]) -> float:
    """Largest deviation from pairwise orthonormality over label-consistent bit pairs.

    Entry ``[v1, v2]`` of ``C_a^H C_b`` must be ``[v1 == v2]`` whenever the
    pair ``(a, b)`` is realisable by some input: always for ``a == b``, and
    for ``a != b`` only when ``v1`` and ``v2`` query different variables.
    """
    if any(lab is None for lab in labels):
        raise StructureError("every source node of a step must carry a label")
    c0 = np.asarray(c0, dtype=complex)
    c1 = np.asarray(c1, dtype=complex)
    m = c0.shape[1]
    if m == 0:
        return 0.0
    if len(labels) != m:
        raise StructureError(f"{len(labels)} labels for {m} source nodes")
    eye = np.eye(m)
    dev = max(np.abs(c0.conj().T @ c0 - eye).max(), np.abs(c1.conj().T @ c1 - eye).max())
    lab = np.asarray(labels)
    distinct = lab[:, None] != lab[None, :]
    if distinct.any():
        dev = max(dev, np.abs((c0.conj().T @ c1)[distinct]).max())
    return float(dev)


def is_quantumly_well_behaved(c0, c1, labels: Sequence[int | None], tol: float = TOL) -> bool:
    """Whether the step with columns ``c0``/``c1`` is an isometry for every input."""
    return well_behaved_deviation(c0, c1, labels) <= tol


def is_classically_well_behaved(transitions: Mapping[tuple[str, int, str], float], tol: float = TOL) -> bool:
    """Every ``(node, bit)`` row is non-negative and sums to 1."""
    return not _classical_row_violations(transitions, tol)


def _classical_row_violations(transitions, tol):
    rows: dict[tuple[str, int], list[float]] = {}
    for (s, b, _), p in transitions.items():
        rows.setdefault((s, b), []).append(p)
    bad = []
    for key, ps in sorted(rows.items()):
        neg = -min(0.0, min(ps))
        off = abs(sum(ps) - 1.0)
        if neg > tol or off > tol:
            bad.append((key, max(neg, off)))
    return bad


def unitary_deviation(u: np.ndarray) -> float:
    u = np.asarray(u, dtype=complex)
    if u.size == 0:
        return 0.0
    return float(np.abs(u.conj().T @ u - np.eye(u.shape[1])).max())


@singledispatch
def validate(program, tol: float = TOL) -> ValidationReport:
    """Check every invariant of ``program``; violations are returned, not raised."""
    raise TypeError(f"cannot validate {type(program).__name__}")


@validate.register
def _(program: GqbpProgram, tol: float = TOL) -> ValidationReport:
    rep = ValidationReport()
    norm_dev = abs(1.0 - float(np.vdot(program.initial, program.initial).real))
    if norm_dev > tol:
        rep.add("initial-norm", "level 0", norm_dev)
    for lvl_idx, lvl in enumerate(program.levels[:-1]):
        for v in lvl:
            lab = program.labels[v]
            if not 0 <= lab < program.n:
                rep.add("label-range", f"node {v}", abs(lab))
    for i, (c0, c1) in enumerate(program.steps, start=1):
        if not np.all(np.isfinite(c0)) or not np.all(np.isfinite(c1)):
            rep.add("non-finite", f"step {i}", float("inf"))
            continue
        dev = well_behaved_deviation(c0, c1, program.level_labels(i - 1))
        if dev > tol:
            rep.add("well-behaved", f"step {i}", dev)
    stray = program.accept - set(program.levels[-1])
    for v in sorted(stray):
        rep.add("accept-not-terminal", f"node {v}", 1.0)
    return rep


@validate.register
def _(program: AqbpProgram, tol: float = TOL) -> ValidationReport:
    rep = ValidationReport()
    norm_dev = abs(1.0 - float(np.vdot(program.initial, program.initial).real))
    if norm_dev > tol:
        rep.add("initial-norm", "initial", norm_dev)
    for i, s in enumerate(program.steps, start=1):
        if not 0 <= s.j < program.n:
            rep.add("query-index", f"step {i}", abs(s.j))
        for bit in (0, 1):
            dev = unitary_deviation(s.matrix(bit))
            if dev > tol:
                rep.add("unitary", f"step {i} U({bit})", dev)
    for a in sorted(program.accept):
        if not 0 <= a < program.d:
            rep.add("accept-index", f"basis {a}", abs(a))
    return rep


@validate.register
def _(program: NqbpProgram, tol: float = TOL) -> ValidationReport:
    rep = ValidationReport()
    parts = [program.acc, program.rej, program.non]
    total = sum(len(p) for p in parts)
    union = program.acc | program.rej | program.non
    if total != len(union) or union != set(program.nodes):
        rep.add("partition", "Q", abs(total - len(program.nodes)) or 1.0)
    for v in program.nodes:
        lab = program.labels[v]
        if not 0 <= lab < program.n:
            rep.add("label-range", f"node {v}", abs(lab))
    dev = well_behaved_deviation(program.c0, program.c1, [program.labels[v] for v in program.nodes])
    if dev > tol:
        rep.add("well-behaved", "U^{O_x}", dev)
    if program.steps < 1:
        rep.add("steps", "budget", program.steps)
    return rep


@validate.register
def _(program: ClassicalBp, tol: float = TOL) -> ValidationReport:
    rep = ValidationReport()
    start_dev = abs(sum(program.start.values()) - 1.0)
    if start_dev > tol or any(p < -tol for p in program.start.values()):
        rep.add("start-distribution", "level 0", max(start_dev, -min(program.start.values(), default=0.0)))
    level = program.level_of()
    for (s, b, t), p in program.transitions.items():
        if level[t] != level[s] + 1 and p != 0:
            rep.add("not-levelled", f"edge {s}->{t}", 1.0)
        if s in program.sinks and p != 0:
            rep.add("sink-has-edge", f"edge {s}->{t}", p)
    for (s, b), mag in _classical_row_violations(program.transitions, tol):
        rep.add("classical-row", f"node {s} bit {b}", mag)
    for lvl_idx, lvl in enumerate(program.levels):
        for v in lvl:
            if v in program.sinks:
                continue
            if not 0 <= program.labels[v] < program.n:
                rep.add("label-range", f"node {v}", abs(program.labels[v]))
            if lvl_idx == len(program.levels) - 1:
                rep.add("dangling", f"node {v}", 1.0)
                continue
            for b in (0, 1):
                if not program.successors(v, b):
                    rep.add("classical-row", f"node {v} bit {b}", 1.0)
    if program.accept & program.reject:
        rep.add("sink-overlap", "F_a & F_r", len(program.accept & program.reject))
    return rep


@singledispatch
def measures(program) -> ProgramMeasures:
    """Width (max nodes per level), length (level steps) and size (total nodes)."""
    raise TypeError(f"no measures for {type(program).__name__}")


@measures.register
def _(program: GqbpProgram) -> ProgramMeasures:
    sizes = [len(lvl) for lvl in program.levels]
    return ProgramMeasures(max(sizes), program.length, sum(sizes))


@measures.register
def _(program: ClassicalBp) -> ProgramMeasures:
    sizes = [len(lvl) for lvl in program.levels]
    return ProgramMeasures(max(sizes), len(sizes) - 1, sum(sizes))


@measures.register
def _(program: AqbpProgram) -> ProgramMeasures:
    return ProgramMeasures(program.d, program.length, program.d * (program.length + 1))


@measures.register
def _(program: NqbpProgram) -> ProgramMeasures:
    return ProgramMeasures(program.size, program.steps, program.size)
