"""Compare every closed-form count with exhaustive enumeration on small spaces."""

import argparse
import time
from collections import Counter
from dataclasses import dataclass

from agflats.oracles import counting_sweep


@dataclass
class SweepConfig:
    qs: tuple = (2, 3)
    max_points: int = 2**13
    max_stream: int = 2**13


def main(cfg: SweepConfig) -> int:
    t0 = time.perf_counter()
    checks, bad = Counter(), 0
    for kind, params, closed, enumerated in counting_sweep(cfg.qs, cfg.max_points, cfg.max_stream):
        checks[kind] += 1
        if closed != enumerated:
            bad += 1
            print(f"MISMATCH {kind} {params}: closed {closed}, enumerated {enumerated}")
    print(f"{dict(checks)}; {bad} mismatches; {time.perf_counter() - t0:.1f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-stream", type=int, default=SweepConfig.max_stream)
    raise SystemExit(main(SweepConfig(max_stream=ap.parse_args().max_stream)))
