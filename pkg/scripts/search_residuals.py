"""Numerical search for a vector unbiased to every basis of a set.

A certified set should keep a positive residual floor on every restart; an
extendible subset should drive the residual to zero.

    python3 scripts/search_residuals.py --restarts 8
"""

import argparse
from dataclasses import dataclass

from mubcert.bentset import kerdock_construct, paper_bent_set_h2
from mubcert.mub import fixture_c4_5mubs, from_bent_set
from mubcert.unextend import search_unbiased_vector


@dataclass
class SearchConfig:
    restarts: int = 8
    iterations: int = 500
    seed: int = 20160416


def cases():
    c4 = fixture_c4_5mubs()
    yield "C4 first 2 bases", c4.subset([0, 1])
    yield "C4 first 3 bases", c4.subset([0, 1, 2])
    yield "C4 all 5 bases", c4
    yield "real h=1 (3 bases, d=4)", from_bent_set(kerdock_construct(1))
    yield "real h=2 (9 bases, d=16)", from_bent_set(paper_bent_set_h2())


def run(cfg: SearchConfig):
    for name, mubs in cases():
        r = search_unbiased_vector(mubs, restarts=cfg.restarts, iterations=cfg.iterations, seed=cfg.seed)
        print(f"{name:<26} best {r.residual:.3e}   worst {max(r.restart_residuals):.3e}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--restarts", type=int, default=8)
    ap.add_argument("--iterations", type=int, default=500)
    ap.add_argument("--seed", type=int, default=20160416)
    a = ap.parse_args()
    run(SearchConfig(a.restarts, a.iterations, a.seed))
