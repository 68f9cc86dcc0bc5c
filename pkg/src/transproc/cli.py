"""Command-line entry point.

Every command reads one YAML config; flags only select experiments, override
paths and seeds, and set verbosity.  Exit codes: 0 success, 1 input or
validation failure, 2 unexpected runtime error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

import numpy as np

from .config import ConfigError, RunConfig, config_hash, load_config
from .corpus import (
    BundleError, class_census, all_phrase_pairs, load_bundle, normalize_corpus,
)
from .evaluation import (
    NEURAL_CLASSIFIERS, ExperimentConfig, ablation_study, run_experiment,
)
from .features import extract_matrix, write_feature_matrix
from .reporting import (
    render_report_table, summary_line, write_ablation, write_result,
)
from .resources import ResourceError, load_resources
from .store import StoreError, load_model, save_model


class _Ctx:
    """Workspace loaded from one config file."""

    def __init__(self, config_path: str, out_override=None, quiet=False):
        self.config_path = Path(config_path)
        self.cfg: RunConfig = load_config(self.config_path)
        self.hash = config_hash(self.config_path)
        base = self.config_path.parent
        self.out_dir = Path(out_override) if out_override \
            else (base / self.cfg.out_dir
                  if not Path(self.cfg.out_dir).is_absolute()
                  else Path(self.cfg.out_dir))
        self.quiet = quiet
        bundle_path = Path(self.cfg.bundle)
        self.bundle_path = bundle_path if bundle_path.is_absolute() \
            else base / bundle_path
        self.resource_paths = {k: self.cfg.resource_path(k, base)
                               for k in self.cfg.resources}

    def say(self, msg: str) -> None:
        if not self.quiet:
            print(msg)

    def load(self):
        for key, p in self.resource_paths.items():
            if not p.exists():
                raise ConfigError(f"resource file for {key!r} missing: {p}")
        if not self.bundle_path.exists():
            raise ConfigError(f"bundle file missing: {self.bundle_path}")
        rp = self.resource_paths
        resources = load_resources(
            embeddings_path=str(rp["embeddings"]),
            table_e_given_f_path=str(rp["table_e_given_f"]),
            table_f_given_e_path=str(rp["table_f_given_e"]),
            concept_graph_path=str(rp["concepts"]),
            manual_lists_path=str(rp["manual_lists"]))
        sentences = load_bundle(self.bundle_path)
        if self.cfg.normalize:
            sentences = normalize_corpus(sentences)
        return sentences, resources


def _add_common(p, experiment=False):
    p.add_argument("--config", required=True, metavar="PATH")
    p.add_argument("--out", metavar="DIR")
    p.add_argument("--seed", type=int)
    p.add_argument("--quiet", action="store_true")
    if experiment:
        p.add_argument("--experiment", required=True, metavar="NAME")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="transproc",
        description="Classify the translation process of bilingual phrase pairs.")
    sub = parser.add_subparsers(dest="command", required=True)
    _add_common(sub.add_parser("validate", help="check bundle and resources"))
    feat = sub.add_parser("featurize", help="export the feature matrix")
    _add_common(feat)
    feat.add_argument("--groups", metavar="CSV",
                      help="comma-separated feature groups to keep")
    feat.add_argument("--families", metavar="CSV",
                      help="comma-separated feature families to keep")
    _add_common(sub.add_parser("run", help="run one configured experiment"),
                experiment=True)
    _add_common(sub.add_parser("ablate", help="feature-group ablation study"),
                experiment=True)
    pred = sub.add_parser("predict", help="label a bundle with a saved model")
    pred.add_argument("model", metavar="MODEL_FILE")
    _add_common(pred)
    _add_common(sub.add_parser("report", help="summarize stored reports"))
    return parser


def cmd_validate(ctx: _Ctx) -> int:
    sentences, resources = ctx.load()
    pairs = [p for _, p in all_phrase_pairs(sentences)]
    census = class_census(pairs)
    ctx.say(f"bundle: {len(sentences)} sentence pairs, "
            f"{len(pairs)} phrase pairs")
    for label, count in sorted(census.items(), key=lambda kv: kv[0].value):
        ctx.say(f"  {label.value}: {count}")
    for key, digest in sorted(resources.checksums.items()):
        ctx.say(f"resource {key}: sha256 {digest[:16]}")
    ctx.say("validation OK")
    return 0


def _csv(value):
    return [v.strip() for v in value.split(",") if v.strip()] if value else None


def cmd_featurize(ctx: _Ctx, groups=None, families=None) -> int:
    sentences, resources = ctx.load()
    units = all_phrase_pairs(sentences)
    matrix, ref = extract_matrix(units, resources, groups=groups,
                                 families=families,
                                 config=ctx.cfg.feature_config)
    ctx.out_dir.mkdir(parents=True, exist_ok=True)
    out = ctx.out_dir / "features.tsv"
    if ref is None:
        out.write_text(f"# config_hash={ctx.hash}\npair_id\tlabel\n",
                       encoding="utf-8")
        ctx.say(f"wrote empty matrix to {out}")
        return 0
    labels = [pair.label.value for _, pair in units]
    write_feature_matrix(out, units, matrix, ref, labels,
                         meta_lines=[f"config_hash={ctx.hash}",
                                     f"seed={ctx.cfg.seed}"])
    ctx.say(f"wrote {matrix.shape[0]}x{matrix.shape[1]} matrix to {out}")
    return 0


def _model_meta(ctx, exp, result, ref):
    meta = {
        "experiment": exp.name, "task": exp.task, "classifier": exp.classifier,
        "groups": exp.groups, "families": exp.families,
        "config_hash": ctx.hash, "seeds": result.seeds,
        "normalize": ctx.cfg.normalize,
    }
    if ref is not None:
        from .evaluation import _column_mask
        mask = _column_mask(ref, exp.groups, exp.families)
        meta["feature_names"] = [n for n, keep in zip(ref.names, mask) if keep]
    return meta


def cmd_run(ctx: _Ctx, name: str, seed_override=None) -> int:
    sentences, resources = ctx.load()
    exp = ctx.cfg.experiment(name)
    if seed_override is not None:
        exp = dataclasses.replace(exp, seed=seed_override)
    units = all_phrase_pairs(sentences)
    full_matrix = full_ref = None
    if exp.classifier not in NEURAL_CLASSIFIERS and exp.classifier != "dummy":
        full_matrix, full_ref = extract_matrix(units, resources,
                                               config=exp.feature_config)
    result = run_experiment(exp, units, resources, full_matrix, full_ref)
    path = write_result(ctx.out_dir, result, ctx.hash, resources.checksums)
    for tag, model in result.models:
        model_path = ctx.out_dir / f"{exp.name}_{tag}.joblib"
        save_model(model_path, model, _model_meta(ctx, exp, result, full_ref))
        ctx.say(f"saved model {model_path}")
    ctx.say(summary_line(result))
    ctx.say(f"report: {path}")
    return 0


def cmd_ablate(ctx: _Ctx, name: str, seed_override=None) -> int:
    sentences, resources = ctx.load()
    exp = ctx.cfg.experiment(name)
    if seed_override is not None:
        exp = dataclasses.replace(exp, seed=seed_override)
    if exp.classifier in NEURAL_CLASSIFIERS:
        raise ConfigError("ablation applies to feature-based classifiers")
    units = all_phrase_pairs(sentences)
    rows = ablation_study(exp, units, resources)
    path = write_ablation(ctx.out_dir, exp.name, rows, ctx.hash,
                          resources.checksums)
    for row in rows:
        ctx.say(f"{row['setting']}: acc={row['accuracy']:.4f} "
                f"macro_f1={row['macro_f1']:.4f}")
    ctx.say(f"ablation table: {path}")
    return 0


def cmd_predict(ctx: _Ctx, model_file: str) -> int:
    sentences, resources = ctx.load()
    model, meta = load_model(model_file)
    units = all_phrase_pairs(sentences)
    ctx.out_dir.mkdir(parents=True, exist_ok=True)
    out = ctx.out_dir / "predictions.tsv"
    if meta.get("classifier") in NEURAL_CLASSIFIERS:
        encoder, net = model
        from .neural.training import predict_proba as neural_proba
        proba = neural_proba(net, encoder, units) if units else np.zeros((0, 0))
        classes = list(net.classes_)
    else:
        matrix, ref = extract_matrix(units, resources,
                                     groups=meta.get("groups"),
                                     families=meta.get("families"),
                                     config=ctx.cfg.feature_config)
        expected = meta.get("feature_names")
        if units and expected is not None and list(ref.names) != list(expected):
            diff = next((i for i, (a, b) in enumerate(zip(ref.names, expected))
                         if a != b), min(len(ref.names), len(expected)))
            raise ConfigError(
                f"model/bundle feature mismatch at column {diff}: "
                f"bundle produces {len(ref.names)} features, model expects "
                f"{len(expected)}")
        proba = model.predict_proba(matrix) if units else np.zeros((0, 0))
        classes = list(model.classes_)
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(f"# config_hash={ctx.hash} model={Path(model_file).name}\n")
        header = ["sentence_id", "src_span", "tgt_span", "predicted"]
        header += [f"p_{c}" for c in classes]
        fh.write("\t".join(header) + "\n")
        for (sent, pair), row in zip(units, proba):
            pred = classes[int(np.argmax(row))]
            cells = [sent.id,
                     f"{pair.src_span[0]}-{pair.src_span[1]}",
                     f"{pair.tgt_span[0]}-{pair.tgt_span[1]}",
                     str(pred)] + [repr(float(p)) for p in row]
            fh.write("\t".join(cells) + "\n")
    ctx.say(f"wrote {len(units)} predictions to {out}")
    return 0


def cmd_report(ctx: _Ctx) -> int:
    paths = sorted(ctx.out_dir.glob("*.json"))
    paths = [p for p in paths
             if not p.name.endswith("_ablation.json")
             and _is_result_doc(p)]
    if not paths:
        ctx.say(f"no experiment reports under {ctx.out_dir}")
        return 0
    table = render_report_table(paths)
    out = ctx.out_dir / "summary.tsv"
    out.write_text(table, encoding="utf-8")
    if not ctx.quiet:
        sys.stdout.write(table)
    ctx.say(f"summary: {out}")
    return 0


def _is_result_doc(path: Path) -> bool:
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError):
        return False
    return isinstance(doc, dict) and "metrics" in doc and "experiment" in doc


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        ctx = _Ctx(args.config, out_override=args.out,
                   quiet=getattr(args, "quiet", False))
        if args.command == "validate":
            return cmd_validate(ctx)
        if args.command == "featurize":
            return cmd_featurize(ctx, groups=_csv(args.groups),
                                 families=_csv(args.families))
        if args.command == "run":
            return cmd_run(ctx, args.experiment, seed_override=args.seed)
        if args.command == "ablate":
            return cmd_ablate(ctx, args.experiment, seed_override=args.seed)
        if args.command == "predict":
            return cmd_predict(ctx, args.model)
        if args.command == "report":
            return cmd_report(ctx)
        raise RuntimeError(f"unhandled command {args.command}")
    except (ConfigError, BundleError, ResourceError, StoreError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:   # pragma: no cover - defensive
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
