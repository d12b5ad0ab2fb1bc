"""Run the three grid audits and write one CSV per audit."""

import argparse
import os
from dataclasses import dataclass, field

from agflats.cli import DEFAULT_GRIDS, run_audit


@dataclass
class AuditConfig:
    out_dir: str = "results"
    grids: dict = field(default_factory=lambda: dict(DEFAULT_GRIDS))


def main(cfg: AuditConfig) -> int:
    os.makedirs(cfg.out_dir, exist_ok=True)
    failed = 0
    for lemma, grid in cfg.grids.items():
        report = run_audit(lemma, grid)
        path = os.path.join(cfg.out_dir, f"audit_{lemma}.csv")
        with open(path, "w") as fh:
            fh.write(report.to_csv())
        print(f"{lemma:10s} {grid:40s} {report.summary()} -> {path}")
        failed += len(report.failures)
    return 1 if failed else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default=AuditConfig.out_dir)
    raise SystemExit(main(AuditConfig(out_dir=ap.parse_args().out_dir)))
