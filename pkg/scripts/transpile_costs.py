"""Resource accounting and worst-case deviation for every reduction on the zoo programs.

    python scripts/transpile_costs.py
"""
from __future__ import annotations

import argparse
import warnings
from dataclasses import dataclass

from qbp import transpile as tp
from qbp import zoo
from qbp.analysis import equivalent


@dataclass
class CostConfig:
    parity_n: int = 6
    dj_n: int = 8
    random_seed: int = 3


def sources(cfg: CostConfig):
    yield "parity", zoo.build_parity(cfg.parity_n)
    yield "maj3", zoo.build_maj3()
    yield "dj", zoo.build_dj(cfg.dj_n)
    yield "random-aqbp", zoo.random_aqbp(4, 3, 4, cfg.random_seed)
    yield "random-qram", zoo.random_qram_circuit(2, 3, 3, cfg.random_seed)
    yield "random-phase", zoo.random_phase_circuit(2, 3, 4, cfg.random_seed)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(CostConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    cfg = CostConfig(**vars(ap.parse_args()))
    print(f"{'source':<13} {'target':<15} {'source measures':<28} {'target measures':<28} {'bound':<6} deviation")
    for name, src in sources(cfg):
        for to in tp.TARGETS:
            try:
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore", tp.EarlyHaltWarning)
                    out, cert = tp.transpile(src, to, remove_dummies=to == "gqbp")
            except tp.UnsupportedTranspile:
                continue
            dev = equivalent(src, out).max_deviation
            s = " ".join(f"{k}={v}" for k, v in cert.source.items())
            t = " ".join(f"{k}={v}" for k, v in cert.target.items())
            print(f"{name:<13} {to:<15} {s:<28} {t:<28} {'ok' if cert.bound_satisfied else 'FAIL':<6} {dev:.1e}")


if __name__ == "__main__":
    main()
