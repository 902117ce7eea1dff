"""JSON interchange documents for programs, circuits and truth tables.

Every document carries ``"kind"`` and ``"version": 1``; complex numbers are
``[re, im]`` pairs and floats are written in shortest round-trip form.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .circuit import OracleCall, QramGate, QueryCircuit, Unitary
from .model import AqbpProgram, ClassicalBp, GqbpProgram, NqbpProgram, QuantumTransformation
from .sim import BooleanTable

VERSION = 1
KINDS = ("gqbp", "aqbp", "nqbp", "classical", "circuit", "table")


class ParseError(ValueError):
    """Malformed document: bad JSON, wrong kind/version or a missing field."""


def _c(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _z(v) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, list) and len(v) == 2 and all(isinstance(t, (int, float)) for t in v):
        return complex(v[0], v[1])
    raise ParseError(f"expected a complex number [re, im], got {v!r}")


def _mat(m: np.ndarray) -> list[list[list[float]]]:
    return [[_c(z) for z in row] for row in np.asarray(m)]


def _unmat(rows) -> np.ndarray:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError("matrix must be a list of rows")
    return np.array([[_z(z) for z in row] for row in rows], dtype=complex).reshape(len(rows), -1)


# --------------------------------------------------------------------------
# serialize
# --------------------------------------------------------------------------

def to_document(obj) -> dict[str, Any]:
    if isinstance(obj, GqbpProgram):
        return {
            "kind": "gqbp", "version": VERSION, "n": obj.n,
            "levels": [list(lvl) for lvl in obj.levels],
            "labels": {v: int(lab) for v, lab in obj.labels.items()},
            "initial": [{"node": v, "amp": _c(a)} for v, a in zip(obj.levels[0], obj.initial) if a != 0],
            "transitions": [
                {"step": s, "from": u, "bit": b, "to": v, "amp": _c(a)} for s, u, b, v, a in obj.edges()
            ],
            "accept": sorted(obj.accept),
        }
    if isinstance(obj, AqbpProgram):
        return {
            "kind": "aqbp", "version": VERSION, "n": obj.n, "d": obj.d,
            "initial": [_c(a) for a in obj.initial],
            "steps": [{"j": s.j, "u0": _mat(s.u0), "u1": _mat(s.u1)} for s in obj.steps],
            "accept": sorted(obj.accept),
        }
    if isinstance(obj, NqbpProgram):
        return {
            "kind": "nqbp", "version": VERSION, "n": obj.n,
            "nodes": list(obj.nodes),
            "partition": {k: [v for v in obj.nodes if v in getattr(obj, k)] for k in ("acc", "rej", "non")},
            "labels": {v: int(obj.labels[v]) for v in obj.nodes},
            "start": obj.start,
            "transitions": [{"from": u, "bit": b, "to": v, "amp": _c(a)} for u, b, v, a in obj.edges()],
            "steps": obj.steps,
        }
    if isinstance(obj, ClassicalBp):
        return {
            "kind": "classical", "version": VERSION, "n": obj.n,
            "levels": [list(lvl) for lvl in obj.levels],
            "labels": {v: int(lab) for v, lab in obj.labels.items()},
            "start": [{"node": v, "prob": p} for v, p in obj.start.items()],
            "transitions": [
                {"from": s, "bit": b, "to": t, "prob": p} for (s, b, t), p in obj.transitions.items()
            ],
            "accept": sorted(obj.accept),
            "reject": sorted(obj.reject),
        }
    if isinstance(obj, QueryCircuit):
        return {
            "kind": "circuit", "version": VERSION, "n": obj.n, "qubits": obj.qubits,
            "oracle_model": obj.oracle_model,
            "registers": {k: list(v) for k, v in obj.registers.items()},
            "ops": [_op_doc(op) for op in obj.ops],
            "measure_register": obj.measure_register,
            "accept": sorted(obj.accept),
        }
    if isinstance(obj, BooleanTable):
        return {"kind": "table", "version": VERSION, "n": obj.n, "values": [float(v) for v in obj.values]}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _op_doc(op) -> dict[str, Any]:
    if isinstance(op, Unitary):
        return {"op": "unitary", "targets": list(op.targets), "matrix": _mat(op.matrix)}
    if isinstance(op, OracleCall):
        doc: dict[str, Any] = {"op": "oracle", "index": op.index}
        if op.value is not None:
            doc["value"] = op.value
        return doc
    return {"op": "qram", "p": op.p, "targets": list(op.targets), "u0": _mat(op.u0), "u1": _mat(op.u1)}


def dumps(obj, indent: int | None = 1) -> str:
    return json.dumps(to_document(obj), indent=indent)


def save(obj, path) -> None:
    Path(path).write_text(dumps(obj) + "\n")


# --------------------------------------------------------------------------
# parse
# --------------------------------------------------------------------------

def from_document(doc: Any):
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise ParseError(f"unknown document kind {kind!r}; expected one of {', '.join(KINDS)}")
    if doc.get("version") != VERSION:
        raise ParseError(f"unsupported version {doc.get('version')!r}")
    try:
        return _PARSERS[kind](doc)
    except KeyError as exc:
        raise ParseError(f"{kind} document is missing field {exc.args[0]!r}") from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"invalid {kind} document: {exc}") from exc


def _gqbp(doc):
    return GqbpProgram.from_edges(
        int(doc["n"]), doc["levels"], {k: int(v) for k, v in doc["labels"].items()},
        {e["node"]: _z(e["amp"]) for e in doc["initial"]},
        ((int(e["step"]), e["from"], int(e["bit"]), e["to"], _z(e["amp"])) for e in doc["transitions"]),
        doc["accept"],
    )


def _aqbp(doc):
    steps = tuple(QuantumTransformation(int(s["j"]), _unmat(s["u0"]), _unmat(s["u1"])) for s in doc["steps"])
    return AqbpProgram(int(doc["n"]), int(doc["d"]), np.array([_z(a) for a in doc["initial"]]), steps,
                       frozenset(int(a) for a in doc["accept"]))


def _nqbp(doc):
    part = doc["partition"]
    return NqbpProgram.from_edges(
        int(doc["n"]), doc["nodes"], part["acc"], part["rej"], part["non"],
        {k: int(v) for k, v in doc["labels"].items()}, doc["start"],
        ((e["from"], int(e["bit"]), e["to"], _z(e["amp"])) for e in doc["transitions"]),
        int(doc["steps"]),
    )


def _classical(doc):
    return ClassicalBp(
        int(doc["n"]), doc["levels"], {k: int(v) for k, v in doc["labels"].items()},
        {e["node"]: float(e["prob"]) for e in doc["start"]},
        {(e["from"], int(e["bit"]), e["to"]): float(e["prob"]) for e in doc["transitions"]},
        frozenset(doc["accept"]), frozenset(doc["reject"]),
    )


def _circuit(doc):
    ops = []
    for k, op in enumerate(doc["ops"]):
        tag = op.get("op")
        if tag == "unitary":
            ops.append(Unitary(tuple(op["targets"]), _unmat(op["matrix"])))
        elif tag == "oracle":
            ops.append(OracleCall(op["index"], op.get("value")))
        elif tag == "qram":
            ops.append(QramGate(int(op["p"]), _unmat(op["u0"]), _unmat(op["u1"]), tuple(op["targets"])))
        else:
            raise ParseError(f"op {k}: unknown op tag {tag!r}")
    return QueryCircuit(
        int(doc["n"]), int(doc["qubits"]), doc["oracle_model"],
        {k: tuple(v) for k, v in doc["registers"].items()}, tuple(ops),
        doc["measure_register"], frozenset(int(a) for a in doc["accept"]),
    )


def _table(doc):
    return BooleanTable(int(doc["n"]), np.array(doc["values"], dtype=float))


_PARSERS = {"gqbp": _gqbp, "aqbp": _aqbp, "nqbp": _nqbp, "classical": _classical,
            "circuit": _circuit, "table": _table}


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return from_document(doc)


def load(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    return loads(text)

