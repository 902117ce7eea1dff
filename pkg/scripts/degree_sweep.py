"""Acceptance-polynomial degree of random phase-family GQBPs against the 2l ceiling.

    python scripts/degree_sweep.py --samples 200 --max-n 6
"""
from __future__ import annotations

import argparse
from collections import Counter
from dataclasses import dataclass

import numpy as np

from qbp import sim, zoo
from qbp.analysis import acceptance_poly_degree, length_lower_bound


@dataclass
class SweepConfig:
    samples: int = 100
    max_w: int = 4
    max_l: int = 3
    max_n: int = 6
    seed: int = 0


def run(cfg: SweepConfig) -> Counter:
    rng = np.random.default_rng(cfg.seed)
    seen: Counter = Counter()
    for k in range(cfg.samples):
        w = int(rng.integers(1, cfg.max_w + 1))
        l = int(rng.integers(1, cfg.max_l + 1))
        n = int(rng.integers(1, cfg.max_n + 1))
        g = zoo.random_phase_gqbp(w, l, n, seed=cfg.seed * 100_003 + k)
        deg = acceptance_poly_degree(g)
        if deg > 2 * l:
            raise AssertionError(f"sample {k}: degree {deg} exceeds 2l = {2 * l}")
        seen[(l, deg)] += 1
    return seen


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(SweepConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    cfg = SweepConfig(**vars(ap.parse_args()))
    seen = run(cfg)
    print(f"{'l':>2} {'deg':>4} {'count':>6}")
    for (l, deg), count in sorted(seen.items()):
        print(f"{l:>2} {deg:>4} {count:>6}")
    print("\nparity: length vs lower bound")
    for n in range(2, min(cfg.max_n, 12) + 1, 2):
        g = zoo.build_parity(n)
        print(f"n={n:<3} length={g.length} bound={length_lower_bound(sim.truth_table(g))}")


if __name__ == "__main__":
    main()
