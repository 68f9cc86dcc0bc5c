#!/usr/bin/env python3
"""Build a self-contained synthetic workspace: bundle, resources, config.

The default census matches the annotated corpus the classifiers were
designed around (4,898 phrase pairs over seven raw categories); --small
builds a quick fixture instead.
"""

import argparse
from pathlib import Path

from transproc.synth import PAPER_CENSUS, SMALL_CENSUS, make_workspace

CONFIG_TEMPLATE = """\
bundle: bundle.jsonl
resources:
  embeddings: resources/embeddings.txt
  table_e_given_f: resources/table_e_given_f.tsv
  table_f_given_e: resources/table_f_given_e.tsv
  concepts: resources/concepts.tsv
  manual_lists: resources/manual_lists.yaml
out_dir: reports
seed: {seed}
normalize: true
experiments:
{experiments}
"""

FEATURE_GRID = [
    ("six_class_full", ("dummy", "forest")),
    ("six_class_200L", ("dummy", "forest")),
    ("binary_3to1", ("dummy", "forest")),
    ("binary_2to1", ("dummy", "forest")),
    ("binary_1to1", ("dummy", "forest", "mlp", "vote_hard", "vote_soft")),
    ("five_class", ("dummy", "forest")),
    ("L_vs_NL_549", ("dummy", "forest")),
    ("LE_vs_nonLE_549", ("dummy", "forest")),
    ("LET_vs_nonLET_549", ("dummy", "forest")),
]

PARAMS = {
    "forest": "{n_trees: 100}",
    "mlp": "{hidden: [64], epochs: 120, lr: 0.01, batch_size: 32}",
    "vote_hard": "{forest: {n_trees: 100}, mlp: {hidden: [64], epochs: 120, lr: 0.01, batch_size: 32}}",
    "vote_soft": "{forest: {n_trees: 100}, mlp: {hidden: [64], epochs: 120, lr: 0.01, batch_size: 32}}",
}

NEURAL = [
    ("binary_1to1", "cnn_char"),
    ("binary_1to1", "mlp_char"),
    ("binary_1to1", "mlp_word"),
    ("five_class", "mlp_word"),
]


def experiment_lines() -> str:
    lines = []
    for task, classifiers in FEATURE_GRID:
        for clf in classifiers:
            entry = f"  - {{name: {task}_{clf}, task: {task}, classifier: {clf}"
            if clf in PARAMS:
                entry += f", params: {PARAMS[clf]}"
            entry += ", save_models: none}"
            lines.append(entry)
    lines.append("  - {name: five_class_forest_ablated, task: five_class, "
                 "classifier: forest, params: {n_trees: 100}, "
                 "groups: [PoS_tagging, surface, syntactic_analysis, "
                 "word_alignment], save_models: none}")
    for task, clf in NEURAL:
        lines.append(f"  - {{name: {task}_{clf}, task: {task}, "
                     f"classifier: {clf}, save_models: none}}")
    return "\n".join(lines)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("out_dir", help="workspace directory to create")
    ap.add_argument("--small", action="store_true",
                    help="build the 118-pair fixture census")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    census = SMALL_CENSUS if args.small else PAPER_CENSUS
    out = Path(args.out_dir)
    paths = make_workspace(out, census, seed=args.seed)
    config = out / "config.yaml"
    config.write_text(CONFIG_TEMPLATE.format(seed=args.seed,
                                             experiments=experiment_lines()),
                      encoding="utf-8")
    total = sum(census.values())
    print(f"workspace: {out} ({total} phrase pairs)")
    for key in sorted(paths):
        print(f"  {key}: {paths[key]}")
    print(f"  config: {config}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
