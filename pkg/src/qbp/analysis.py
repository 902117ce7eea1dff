"""Multilinear degree, length lower bounds and brute-force equivalence."""
from __future__ import annotations

from dataclasses import dataclass
from math import ceil

import numpy as np

from . import sim
from .model import GqbpProgram
from .sim import BooleanTable

DEGREE_TOL = 1e-8


@dataclass(frozen=True)
class MultilinearPoly:
    """``sum_S c_S prod_{i in S} x_i``; ``coeffs[m]`` is ``c_S`` for the subset with bitmask ``m``."""

    n: int
    coeffs: np.ndarray

    def coefficient(self, subset) -> float:
        return float(self.coeffs[sum(1 << i for i in subset)])

    def as_dict(self, tol: float = 0.0) -> dict[frozenset[int], float]:
        return {
            frozenset(i for i in range(self.n) if m >> i & 1): float(c)
            for m, c in enumerate(self.coeffs)
            if abs(c) > tol
        }

    def evaluate(self) -> np.ndarray:
        """Values on all ``2**n`` inputs (inverse Moebius transform)."""
        return _zeta(self.coeffs.copy(), self.n, sign=1.0)

    def degree(self, tol: float = DEGREE_TOL) -> int:
        masks = np.flatnonzero(np.abs(self.coeffs) > tol)
        return int(max((bin(int(m)).count("1") for m in masks), default=0))


def _zeta(v: np.ndarray, n: int, sign: float) -> np.ndarray:
    # in-place subset-sum butterfly; sign=-1 gives the Moebius inverse
    for i in range(n):
        v = v.reshape(-1, 2, 1 << i)
        v[:, 1, :] += sign * v[:, 0, :]
        v = v.reshape(-1)
    return v


def multilinear_coefficients(t: BooleanTable) -> MultilinearPoly:
    """``c_S = sum_{T subset S} (-1)^{|S - T|} t(1_T)``, computed in ``O(n 2^n)``."""
    return MultilinearPoly(t.n, _zeta(np.array(t.values, dtype=float), t.n, sign=-1.0))


def exact_degree(t: BooleanTable, tol: float = DEGREE_TOL) -> int:
    return multilinear_coefficients(t).degree(tol)


def length_lower_bound(t: BooleanTable, tol: float = DEGREE_TOL) -> int:
    """Minimum length of any GQBP computing ``t`` exactly: ``ceil(deg/2)``."""
    return ceil(exact_degree(t, tol) / 2)


def approx_length_lower_bound(approx_degree: int) -> int:
    """Bound for bounded-error GQBPs from an externally computed approximate degree."""
    if approx_degree < 0:
        raise ValueError("degree must be non-negative")
    return ceil(approx_degree / 2)


def acceptance_poly_degree(g: GqbpProgram, tol: float = DEGREE_TOL) -> int:
    return exact_degree(sim.truth_table(g), tol)


@dataclass(frozen=True)
class Equivalence:
    equivalent: bool
    max_deviation: float
    witness: str | None

    def __bool__(self) -> bool:
        return self.equivalent

    def __iter__(self):
        return iter((self.equivalent, self.max_deviation, self.witness))


def equivalent(a, b, tol: float = sim.TOL) -> Equivalence:
    """Compare acceptance probabilities of two programs/circuits on every input.

    The witness is the worst input (as a bitstring) when the check fails.
    """
    if a.n != b.n:
        raise ValueError(f"programs read different input lengths ({a.n} vs {b.n})")
    diff = np.abs(sim.truth_table(a).values - sim.truth_table(b).values)
    worst = int(np.argmax(diff)) if diff.size else 0
    dev = float(diff[worst]) if diff.size else 0.0
    ok = dev <= tol
    return Equivalence(ok, dev, None if ok else sim.bitstring(worst, a.n))
