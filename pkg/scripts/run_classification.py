"""Classify (n, q^(n-2), 3)_q codes step by step and save the registries.

    python scripts/run_classification.py --q 5 --to 6 --out runs/q5
"""

import argparse
import time
from dataclasses import dataclass
from pathlib import Path

from mdsclass.classify import bootstrap_registry, classify_step, save_registry


@dataclass
class Config:
    q: int = 5
    to: int = 6
    workers: int = 1
    out: Path = Path("runs")


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--q", type=int, default=Config.q)
    ap.add_argument("--to", type=int, default=Config.to)
    ap.add_argument("--workers", type=int, default=Config.workers)
    ap.add_argument("--out", type=Path, default=Config.out)
    cfg = Config(**vars(ap.parse_args()))

    reg = bootstrap_registry(cfg.q)
    save_registry(reg, cfg.out)
    print(f"n={reg.n} classes={reg.size}")
    t0 = time.perf_counter()
    while reg.n < cfg.to and reg.size:
        reg, rep = classify_step(reg, cfg.workers)
        save_registry(reg, cfg.out)
        print(f"n={reg.n} classes={reg.size} aut={reg.aut_orders} seeds={rep.seeds_found}/{rep.seeds_kept} "
              f"codes={rep.codes_found} consistent={rep.consistent} t={time.perf_counter() - t0:.1f}s",
              flush=True)
        with (cfg.out / f"n{reg.n}" / "consistency.txt").open("w") as fh:
            for k, a, b, ok in rep.consistency:
                fh.write(f"{k} {a} {b} {'ok' if ok else 'FAIL'}\n")


if __name__ == "__main__":
    main()
