"""Where unrolling an NQBP into a GQBP stops being exact.

An NQBP that puts amplitude on an accepting node before its last step is
observed there; the unrolled GQBP keeps evolving that amplitude.  This sweeps
a one-parameter family and compares both acceptance probabilities.

    python scripts/nqbp_divergence.py --points 5
"""
from __future__ import annotations

import argparse
import warnings
from dataclasses import dataclass

import numpy as np

from qbp import sim
from qbp import transpile as tp
from qbp.model import NqbpProgram


@dataclass
class DivergenceConfig:
    points: int = 5
    steps: int = 2


def leaky(theta: float, steps: int) -> NqbpProgram:
    """Rotation by ``theta`` between a non-halting node and an accepting node."""
    c, s = np.cos(theta), np.sin(theta)
    u = np.array([[c, -s], [s, c]])
    return NqbpProgram(1, ("acc", "non"), {"acc"}, set(), {"non"}, {"acc": 0, "non": 0}, "non", u, u, steps)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(DivergenceConfig()).items():
        ap.add_argument(f"--{name}", type=int, default=default)
    cfg = DivergenceConfig(**vars(ap.parse_args()))
    print(f"{'theta':>7} {'nqbp p_acc':>11} {'unrolled':>9} {'flagged':>8}")
    for theta in np.linspace(0, np.pi / 2, cfg.points):
        p = leaky(theta, cfg.steps)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            g = tp.nqbp_to_gqbp(p)
        a, b = sim.run_nqbp(p, "0").p_acc, sim.accept_prob_gqbp(g, "0")
        print(f"{theta:7.4f} {a:11.6f} {b:9.6f} {bool(caught)!s:>8}")


if __name__ == "__main__":
    main()
