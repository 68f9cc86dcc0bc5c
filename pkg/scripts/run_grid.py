#!/usr/bin/env python3
"""Run the experiment grid from a workspace config and write reports.

By default runs every feature-based experiment in the config; neural
entries are skipped unless --include-neural is given (they train small
recurrent models from scratch and take much longer on CPU).
"""

import argparse
import time
from pathlib import Path

from transproc.cli import main as cli_main
from transproc.config import load_config

NEURAL = {"cnn_char", "mlp_char", "mlp_word"}


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("config", help="path to workspace config.yaml")
    ap.add_argument("--include-neural", action="store_true")
    ap.add_argument("--only", help="comma-separated experiment names")
    args = ap.parse_args()
    cfg = load_config(Path(args.config))
    wanted = set(args.only.split(",")) if args.only else None
    t0 = time.time()
    failures = []
    for exp in cfg.experiments:
        if wanted is not None and exp.name not in wanted:
            continue
        if wanted is None and exp.classifier in NEURAL and not args.include_neural:
            print(f"skip {exp.name} (neural; pass --include-neural)")
            continue
        t1 = time.time()
        rc = cli_main(["run", "--config", args.config, "--experiment", exp.name])
        dt = time.time() - t1
        print(f"{exp.name}: {'ok' if rc == 0 else 'FAILED'} ({dt:.1f} s)")
        if rc != 0:
            failures.append(exp.name)
    rc = cli_main(["report", "--config", args.config])
    print(f"summary table: {'ok' if rc == 0 else 'FAILED'}")
    print(f"total: {time.time() - t0:.1f} s")
    if failures:
        print("failed experiments: " + ", ".join(failures))
        return 1
    return rc


if __name__ == "__main__":
    raise SystemExit(main())
