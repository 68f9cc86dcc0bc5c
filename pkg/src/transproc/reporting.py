"""Report rendering: JSON metrics artifacts and delimited-text tables."""

from __future__ import annotations

import json
from pathlib import Path


def render_result(result, config_hash: str, checksums: dict) -> dict:
    cfg = result.config
    return {
        "experiment": cfg.name,
        "task": cfg.task,
        "classifier": cfg.classifier,
        "params": cfg.params,
        "grid": cfg.grid,
        "groups": cfg.groups,
        "families": cfg.families,
        "folds": cfg.folds,
        "n_features": result.n_features,
        "seed": cfg.seed,
        "derived_seeds": result.seeds,
        "grid_choices": result.grid_choices,
        "config_hash": config_hash,
        "resource_checksums": checksums,
        "metrics": result.metrics.as_dict(),
        "notes": (["hyperparameters tuned by nested 3-fold search inside "
                   "training folds; the reference protocol is undocumented"]
                  if cfg.grid else []),
    }


def write_result(out_dir, result, config_hash: str, checksums: dict) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    doc = render_result(result, config_hash, checksums)
    path = out / f"{result.config.name}.json"
    path.write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n",
                    encoding="utf-8")
    conf = out / f"{result.config.name}_confusion.tsv"
    conf.write_text(render_confusion(result.metrics), encoding="utf-8")
    return path


def render_confusion(metrics) -> str:
    lines = ["gold\\pred\t" + "\t".join(metrics.classes)]
    for cls, row in zip(metrics.classes, metrics.confusion):
        lines.append(cls + "\t" + "\t".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def render_ablation(rows) -> str:
    classes = sorted({c for r in rows for c in r["per_class_f1"]})
    header = ["setting", "n_features", "accuracy", "micro_f1", "macro_f1"]
    header += [f"f1_{c}" for c in classes]
    lines = ["\t".join(header)]
    for r in rows:
        cells = [r["setting"], str(r["n_features"]), f"{r['accuracy']:.4f}",
                 f"{r['micro_f1']:.4f}", f"{r['macro_f1']:.4f}"]
        cells += [f"{r['per_class_f1'].get(c, float('nan')):.4f}"
                  if c in r["per_class_f1"] else "-" for c in classes]
        lines.append("\t".join(cells))
    return "\n".join(lines) + "\n"


def write_ablation(out_dir, name: str, rows, config_hash: str,
                   checksums: dict) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"{name}_ablation.tsv"
    path.write_text(render_ablation(rows), encoding="utf-8")
    doc = {"experiment": name, "config_hash": config_hash,
           "resource_checksums": checksums, "rows": rows}
    (out / f"{name}_ablation.json").write_text(
        json.dumps(doc, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    return path


def summary_line(result) -> str:
    m = result.metrics
    return (f"{result.config.name}: task={result.config.task} "
            f"classifier={result.config.classifier} n={m.n} "
            f"acc={m.accuracy:.4f} micro_f1={m.micro_f1:.4f} "
            f"macro_f1={m.macro_f1:.4f}")


def render_report_table(report_paths) -> str:
    """Roll stored experiment JSON files into one overview table."""
    lines = ["experiment\ttask\tclassifier\tn\taccuracy\tmicro_f1\tmacro_f1"]
    for p in report_paths:
        doc = json.loads(Path(p).read_text(encoding="utf-8"))
        m = doc["metrics"]
        lines.append("\t".join([
            doc["experiment"], doc["task"], doc["classifier"], str(m["n"]),
            f"{m['accuracy']:.4f}", f"{m['micro_f1']:.4f}",
            f"{m['macro_f1']:.4f}"]))
    return "\n".join(lines) + "\n"
