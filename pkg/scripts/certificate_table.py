"""Print the rank certificate for each h, with timings.

    python3 scripts/certificate_table.py --max-h 4
"""

import argparse
import time
from dataclasses import dataclass

from mubcert.bentset import kerdock_construct
from mubcert.unextend import MODULAR_MAX_H, certify_strongly_unextendible


@dataclass
class TableConfig:
    max_h: int = 3
    threads: int = 1


def run(cfg: TableConfig):
    print(f"{'h':>2} {'d':>5} {'bases':>6} {'method':>10} {'rank':>8} {'target':>8} {'verdict':>12} {'secs':>7}")
    for h in range(1, cfg.max_h + 1):
        t0 = time.perf_counter()
        bent = kerdock_construct(h, threads=cfg.threads)
        method = "both" if h <= MODULAR_MAX_H else "structural"
        c = certify_strongly_unextendible(bent, method, threads=cfg.threads)
        dt = time.perf_counter() - t0
        print(f"{h:>2} {1 << (2 * h):>5} {len(bent) + 1:>6} {method:>10} {c.rank:>8} {c.target:>8} "
              f"{c.verdict:>12} {dt:>7.2f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-h", type=int, default=3)
    ap.add_argument("--threads", type=int, default=1)
    a = ap.parse_args()
    run(TableConfig(a.max_h, a.threads))
