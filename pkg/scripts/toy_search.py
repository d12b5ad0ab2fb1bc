"""Exact maxima of intersecting families on toy affine spaces, with and without tau >= 2."""

import argparse
import json
from dataclasses import dataclass

from agflats.counting import gauss
from agflats.search import search


@dataclass
class SearchConfig:
    instances: tuple = ((3, 2, 2), (4, 2, 2), (3, 2, 3), (4, 3, 2), (2, 1, 3), (3, 1, 2))
    budget: int = 1_000_000
    out: str = ""


def main(cfg: SearchConfig) -> list:
    rows = []
    for n, k, q in cfg.instances:
        for tau_min in (None, 2):
            o = search(n, k, q, tau_min=tau_min, budget=cfg.budget)
            row = dict(n=n, k=k, q=q, tau_min=tau_min, size=o.size, optimal=o.optimal,
                       nodes=o.nodes_explored, pencil=gauss(n - 1, k - 1, q))
            rows.append(row)
            print(" ".join(f"{key}={val}" for key, val in row.items()))
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump(rows, fh, indent=1)
    return rows


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="")
    ap.add_argument("--budget", type=int, default=SearchConfig.budget)
    a = ap.parse_args()
    main(SearchConfig(out=a.out, budget=a.budget))
