"""Build pencil, HM-type and F3-type families, check them and tabulate the results."""

import argparse
import json
import time
from dataclasses import dataclass

from agflats.affine import flat_join
from agflats.families import (
    default_kflat,
    default_line,
    f3_family,
    family_stats,
    hm_family,
    pencil_family,
    seeded_selector,
)


@dataclass
class FamilyConfig:
    params: tuple = ((7, 3, 2), (8, 3, 2), (6, 3, 3), (7, 3, 3))
    seeds: tuple = (None, 0, 1, 2, 3, 4)
    out: str = ""


def build(kind: str, n: int, k: int, q: int, seed):
    E = default_line(n, q)
    if kind == "pencil":
        return pencil_family(E, k)
    if kind == "hm":
        U = default_kflat(n, k, q)
        return hm_family(E, U, None if seed is None else seeded_selector(flat_join(E, U), seed))
    U = default_kflat(n, 3, q, offset=0)
    return f3_family(U, None if seed is None else seeded_selector(U, seed))


def main(cfg: FamilyConfig) -> list:
    rows = []
    for n, k, q in cfg.params:
        for kind in ("pencil", "hm", "f3"):
            if kind == "f3" and k != 3:
                continue
            for seed in cfg.seeds if kind != "pencil" else (None,):
                t0 = time.perf_counter()
                st = family_stats(build(kind, n, k, q, seed))
                row = dict(kind=kind, n=n, k=k, q=q, seed=seed, size=st["size"], intersecting=st["intersecting"],
                           tau=st["tau"]["value"], vs_hm=st.get("vs_hm_bound"), seconds=round(time.perf_counter() - t0, 3))
                rows.append(row)
                print(" ".join(f"{key}={val}" for key, val in row.items()))
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump(rows, fh, indent=1)
    return rows


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="")
    main(FamilyConfig(out=ap.parse_args().out))
