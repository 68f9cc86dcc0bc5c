"""Experimental protocol: task subsampling, cross-validation, metrics,
experiment running, and feature-group ablation."""

from __future__ import annotations

from dataclasses import dataclass, field, asdict

import numpy as np

from .corpus import ProcessLabel
from .features import (
    DEFAULT_FEATURE_CONFIG, FAMILIES, FEATURE_GROUPS, FeatureConfig,
    extract_matrix,
)
from .splits import stratified_kfold, train_test_indices
from .classic import (
    DecisionTree, FeatureMLP, RandomForest, StratifiedDummy, VotingEnsemble,
)
from .classic.grid import GridSearch

TASKS = (
    "six_class_full", "six_class_200L", "binary_3to1", "binary_2to1",
    "binary_1to1", "five_class", "L_vs_NL_549", "LE_vs_nonLE_549",
    "LET_vs_nonLET_549",
)

CLASSIC_CLASSIFIERS = ("dummy", "tree", "forest", "mlp", "vote_hard", "vote_soft")
NEURAL_CLASSIFIERS = ("cnn_char", "mlp_char", "mlp_word")

_LITERAL = ProcessLabel.LITERAL.value
_NON_LITERAL = [l.value for l in ProcessLabel if l is not ProcessLabel.LITERAL]


# ---------------------------------------------------------------------------
# Task datasets


def task_dataset(units, task: str, seed: int):
    """Select and relabel instances for a task.

    Returns (indices into units, labels) with indices sorted so downstream
    order never depends on the draw order.  Grouping tasks draw exactly 549
    per side; the LET side counts raw Transposition only, so its complement
    has exactly 549 members.
    """
    if task not in TASKS:
        raise ValueError(f"unknown task {task!r}; expected one of {TASKS}")
    rng = np.random.default_rng(seed)
    labels = [pair.label.value for _, pair in units]
    raw = [pair.raw_label for _, pair in units]
    by_class: dict[str, list[int]] = {}
    for i, lab in enumerate(labels):
        by_class.setdefault(lab, []).append(i)
    lit = by_class.get(_LITERAL, [])
    nonlit = sorted(i for c in _NON_LITERAL for i in by_class.get(c, []))

    def draw(pool: list[int], k: int) -> list[int]:
        if len(pool) < k:
            raise ValueError(
                f"task {task} needs {k} instances but only {len(pool)} available")
        picked = rng.choice(len(pool), size=k, replace=False)
        return [pool[i] for i in picked]

    if task == "six_class_full":
        idx = sorted(range(len(units)))
        return idx, [labels[i] for i in idx]
    if task == "six_class_200L":
        idx = sorted(draw(lit, 200) + nonlit)
        return idx, [labels[i] for i in idx]
    if task in ("binary_3to1", "binary_2to1", "binary_1to1"):
        if task == "binary_3to1":
            keep_lit = list(lit)
        else:
            factor = 2 if task == "binary_2to1" else 1
            keep_lit = draw(lit, factor * len(nonlit))
        idx = sorted(keep_lit + nonlit)
        return idx, ["L" if labels[i] == _LITERAL else "NL" for i in idx]
    if task == "five_class":
        idx = sorted(nonlit)
        return idx, [labels[i] for i in idx]

    # grouping tasks: 549 instances per side
    if task == "L_vs_NL_549":
        side_a, name_a = lit, "L"
        side_b, name_b = nonlit, "NL"
    elif task == "LE_vs_nonLE_549":
        side_a = sorted(lit + by_class.get(ProcessLabel.EQUIVALENCE.value, []))
        side_b = sorted(set(nonlit) - set(by_class.get(
            ProcessLabel.EQUIVALENCE.value, [])))
        name_a, name_b = "LE", "non_LE"
    else:
        in_let = {i for i in range(len(units))
                  if labels[i] == _LITERAL
                  or labels[i] == ProcessLabel.EQUIVALENCE.value
                  or raw[i] == "Transposition"}
        side_a = sorted(in_let)
        side_b = sorted(set(range(len(units))) - in_let)
        name_a, name_b = "LET", "non_LET"
    chosen_a = draw(side_a, 549)
    chosen_b = draw(side_b, 549)
    sel = sorted(chosen_a + chosen_b)
    set_a = set(chosen_a)
    return sel, [name_a if i in set_a else name_b for i in sel]


# ---------------------------------------------------------------------------
# Metrics


@dataclass
class MetricsReport:
    n: int
    classes: list[str]
    accuracy: float
    micro_f1: float
    macro_f1: float
    per_class: dict[str, dict[str, float]]
    confusion: list[list[int]]
    fold_accuracies: list[float] = field(default_factory=list)
    per_fold: list[dict] = field(default_factory=list)

    def as_dict(self) -> dict:
        return asdict(self)


def compute_metrics(gold, predicted, class_set=None) -> MetricsReport:
    """Single-label metrics over pooled predictions.

    micro-F1 equals accuracy in this setting (pooled TP identity); macro-F1
    averages F1 over classes that occur in the gold labels.
    """
    gold = list(gold)
    predicted = list(predicted)
    if len(gold) != len(predicted):
        raise ValueError("gold/predicted length mismatch")
    classes = sorted(set(gold) | set(predicted)) if class_set is None \
        else sorted(class_set)
    col = {c: k for k, c in enumerate(classes)}
    k = len(classes)
    confusion = np.zeros((k, k), dtype=np.int64)
    for g, p in zip(gold, predicted):
        confusion[col[g], col[p]] += 1
    n = len(gold)
    correct = int(np.trace(confusion))
    accuracy = correct / n if n else 0.0
    per_class = {}
    f1_present = []
    for c in classes:
        i = col[c]
        tp = int(confusion[i, i])
        fp = int(confusion[:, i].sum()) - tp
        fn = int(confusion[i, :].sum()) - tp
        prec = tp / (tp + fp) if tp + fp else 0.0
        rec = tp / (tp + fn) if tp + fn else 0.0
        f1 = 2 * prec * rec / (prec + rec) if prec + rec else 0.0
        per_class[c] = {"precision": prec, "recall": rec, "f1": f1,
                        "support": tp + fn}
        if tp + fn:
            f1_present.append(f1)
    # pooled micro counts: every error is one FP and one FN, so micro-F1
    # collapses to accuracy
    micro = accuracy
    macro = float(np.mean(f1_present)) if f1_present else 0.0
    return MetricsReport(n=n, classes=classes, accuracy=accuracy,
                         micro_f1=micro, macro_f1=macro, per_class=per_class,
                         confusion=confusion.tolist())


def aggregate_folds(fold_reports: list[MetricsReport]) -> MetricsReport:
    """Cross-validation aggregate: headline metrics are arithmetic means of
    the per-fold values; the confusion matrix is pooled; per-class scores
    average over folds where the class occurs in gold."""
    if not fold_reports:
        raise ValueError("no folds to aggregate")
    classes = sorted({c for r in fold_reports for c in r.classes})
    col = {c: k for k, c in enumerate(classes)}
    confusion = np.zeros((len(classes), len(classes)), dtype=np.int64)
    for r in fold_reports:
        for gi, g in enumerate(r.classes):
            for pi, p in enumerate(r.classes):
                confusion[col[g], col[p]] += r.confusion[gi][pi]
    per_class = {}
    for c in classes:
        present = [r.per_class[c] for r in fold_reports
                   if c in r.per_class and r.per_class[c]["support"] > 0]
        support = sum(r.per_class[c]["support"] for r in fold_reports
                      if c in r.per_class)
        if present:
            per_class[c] = {
                "precision": float(np.mean([m["precision"] for m in present])),
                "recall": float(np.mean([m["recall"] for m in present])),
                "f1": float(np.mean([m["f1"] for m in present])),
                "support": support,
            }
        else:
            per_class[c] = {"precision": 0.0, "recall": 0.0, "f1": 0.0,
                            "support": support}
    return MetricsReport(
        n=sum(r.n for r in fold_reports), classes=classes,
        accuracy=float(np.mean([r.accuracy for r in fold_reports])),
        micro_f1=float(np.mean([r.micro_f1 for r in fold_reports])),
        macro_f1=float(np.mean([r.macro_f1 for r in fold_reports])),
        per_class=per_class, confusion=confusion.tolist(),
        fold_accuracies=[r.accuracy for r in fold_reports],
        per_fold=[{"accuracy": r.accuracy, "micro_f1": r.micro_f1,
                   "macro_f1": r.macro_f1} for r in fold_reports])


# ---------------------------------------------------------------------------
# Experiment configuration and registry


@dataclass(frozen=True)
class ExperimentConfig:
    name: str
    task: str
    classifier: str
    params: dict = field(default_factory=dict)
    grid: dict | None = None
    groups: list[str] | None = None
    families: list[str] | None = None
    folds: int = 5
    seed: int = 0
    save_models: str = "final"          # none | final | folds
    feature_config: FeatureConfig = DEFAULT_FEATURE_CONFIG

    def __post_init__(self):
        if self.task not in TASKS:
            raise ValueError(f"unknown task {self.task!r}")
        if self.classifier not in CLASSIC_CLASSIFIERS + NEURAL_CLASSIFIERS:
            raise ValueError(f"unknown classifier {self.classifier!r}")
        if self.save_models not in ("none", "final", "folds"):
            raise ValueError(f"bad save_models {self.save_models!r}")


def make_classifier(kind: str, params: dict, seed: int):
    params = dict(params)
    if kind == "dummy":
        return StratifiedDummy(seed=seed)
    if kind == "tree":
        return DecisionTree(**params)
    if kind == "forest":
        return RandomForest(seed=seed, **params)
    if kind == "mlp":
        return FeatureMLP(seed=seed, **params)
    if kind in ("vote_hard", "vote_soft"):
        forest_params = params.get("forest", {})
        mlp_params = params.get("mlp", {})
        members = [RandomForest(seed=seed, **forest_params),
                   FeatureMLP(seed=seed + 1, **mlp_params)]
        return VotingEnsemble(members, mode=kind.split("_")[1])
    raise ValueError(f"unknown classic classifier {kind!r}")


def _column_mask(ref, groups, families) -> np.ndarray:
    keep_g = set(groups) if groups is not None else set(FEATURE_GROUPS)
    keep_f = set(families) if families is not None else set(FAMILIES)
    unknown = (keep_g - set(FEATURE_GROUPS)) | (keep_f - set(FAMILIES))
    if unknown:
        raise ValueError(f"unknown feature groups/families: {sorted(unknown)}")
    return np.array([g in keep_g and f in keep_f
                     for g, f in zip(ref.groups, ref.families)])


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    metrics: MetricsReport
    seeds: dict[str, int]
    n_features: int
    models: list = field(default_factory=list)     # (tag, model) pairs
    grid_choices: list[dict] = field(default_factory=list)


def _derived_seeds(seed: int, folds: int) -> dict[str, int]:
    state = np.random.SeedSequence(seed).generate_state(folds + 3)
    out = {"subsample": int(state[0]), "folds": int(state[1]),
           "final_model": int(state[2])}
    for i in range(folds):
        out[f"fold_{i}"] = int(state[3 + i])
    return out


def run_experiment(cfg: ExperimentConfig, units, resources,
                   full_matrix=None, full_ref=None) -> ExperimentResult:
    """Cross-validated evaluation of one configuration.

    Pass a precomputed (full_matrix, full_ref) over ``units`` to reuse
    extraction across configurations; columns are masked per config.
    """
    seeds = _derived_seeds(cfg.seed, cfg.folds)
    sel, labels = task_dataset(units, cfg.task, seeds["subsample"])
    labels = np.array(labels)
    task_units = [units[i] for i in sel]

    if cfg.classifier in NEURAL_CLASSIFIERS:
        return _run_neural(cfg, task_units, labels, seeds, resources)

    if cfg.classifier == "dummy":
        X = np.zeros((len(sel), 1))
        n_features = 0
    else:
        if full_matrix is None:
            full_matrix, full_ref = extract_matrix(
                units, resources, config=cfg.feature_config)
        mask = _column_mask(full_ref, cfg.groups, cfg.families)
        X = full_matrix[np.ix_(sel, np.nonzero(mask)[0])]
        n_features = int(mask.sum())

    folds = stratified_kfold(labels, cfg.folds, seed=seeds["folds"])
    fold_reports: list[MetricsReport] = []
    models: list = []
    grid_choices: list[dict] = []
    for f in range(cfg.folds):
        tr, te = train_test_indices(folds, f)
        model = _fit(cfg, X[tr], labels[tr], seeds[f"fold_{f}"], grid_choices)
        pred = model.predict(X[te])
        fold_reports.append(compute_metrics(labels[te], pred))
        if cfg.save_models == "folds":
            models.append((f"fold_{f}", model))
    metrics = aggregate_folds(fold_reports)
    if cfg.save_models == "final":
        models.append(("final", _fit(cfg, X, labels, seeds["final_model"],
                                     grid_choices)))
    return ExperimentResult(config=cfg, metrics=metrics, seeds=seeds,
                            n_features=n_features, models=models,
                            grid_choices=grid_choices)


def _fit(cfg: ExperimentConfig, X, y, seed: int, grid_choices: list):
    if cfg.grid:
        def factory(**params):
            merged = {**cfg.params, **params}
            return make_classifier(cfg.classifier, merged, seed)
        search = GridSearch(factory, cfg.grid, seed=seed)
        search.fit(X, y)
        grid_choices.append(search.result_.best_params)
        return search.model_
    model = make_classifier(cfg.classifier, cfg.params, seed)
    return model.fit(X, y)


def _run_neural(cfg: ExperimentConfig, task_units, labels, seeds,
                resources) -> ExperimentResult:
    from .neural.training import TrainConfig, train_model, predict

    params = dict(cfg.params)
    train_cfg = TrainConfig(
        lr=params.pop("lr", 1e-4), epochs=params.pop("epochs", 200),
        batch_size=params.pop("batch_size", 20), seed=0)
    n_classes = len(set(labels.tolist()))
    folds = stratified_kfold(labels, cfg.folds, seed=seeds["folds"])
    fold_reports: list[MetricsReport] = []
    models: list = []
    for f in range(cfg.folds):
        tr, te = train_test_indices(folds, f)
        train_units = [task_units[i] for i in tr]
        encoder, model = _build_neural(
            cfg.classifier, train_units, n_classes, params,
            seeds[f"fold_{f}"], resources)
        fold_train_cfg = TrainConfig(
            lr=train_cfg.lr, epochs=train_cfg.epochs,
            batch_size=train_cfg.batch_size, seed=seeds[f"fold_{f}"])
        train_model(model, encoder, train_units, labels[tr], fold_train_cfg)
        test_units = [task_units[i] for i in te]
        pred = predict(model, encoder, test_units)
        fold_reports.append(compute_metrics(labels[te], pred))
        if cfg.save_models == "folds":
            models.append((f"fold_{f}", (encoder, model)))
    metrics = aggregate_folds(fold_reports)
    if cfg.save_models == "final":
        encoder, model = _build_neural(cfg.classifier, task_units, n_classes,
                                       params, seeds["final_model"], resources)
        final_cfg = TrainConfig(lr=train_cfg.lr, epochs=train_cfg.epochs,
                                batch_size=train_cfg.batch_size,
                                seed=seeds["final_model"])
        train_model(model, encoder, task_units, labels, final_cfg)
        models.append(("final", (encoder, model)))
    return ExperimentResult(config=cfg, metrics=metrics, seeds=seeds,
                            n_features=0, models=models)


def _build_neural(kind: str, train_units, n_classes, params, seed, resources):
    from .neural.encoding import CharEncoder, WordEncoder
    from .neural.models import AlignmentCNN, MeanConcatMLP

    dropout_p = params.get("dropout_p", 0.2)
    hidden = params.get("hidden", 10)
    if kind == "cnn_char":
        enc = CharEncoder(train_units)
        model = AlignmentCNN(enc.vocab_size, n_classes,
                             emb_dim=params.get("emb_dim", 10), hidden=hidden,
                             filters=params.get("filters", 16),
                             kernel=params.get("kernel", 3),
                             grid=params.get("grid", 4),
                             fc_dim=params.get("fc_dim", 32),
                             dropout_p=dropout_p, seed=seed)
    elif kind == "mlp_char":
        enc = CharEncoder(train_units)
        model = MeanConcatMLP(enc.vocab_size, n_classes,
                              emb_dim=params.get("emb_dim", 10), hidden=hidden,
                              mlp_dim=params.get("mlp_dim", 10),
                              dropout_p=dropout_p, seed=seed)
    elif kind == "mlp_word":
        if resources is None or resources.embeddings is None:
            raise ValueError("mlp_word needs an embedding table")
        enc = WordEncoder(train_units, resources.embeddings)
        model = MeanConcatMLP(enc.vocab_size, n_classes, emb_dim=enc.dim,
                              hidden=hidden, mlp_dim=params.get("mlp_dim", 10),
                              dropout_p=dropout_p, seed=seed,
                              pretrained=enc.matrix,
                              train_emb=params.get("train_emb", False))
    else:
        raise ValueError(f"unknown neural classifier {kind!r}")
    return enc, model


# ---------------------------------------------------------------------------
# Ablation


def ablation_study(base: ExperimentConfig, units, resources):
    """Evaluate the full feature set, each group alone, each group left out,
    and each family alone, reusing one extraction pass."""
    full_matrix, full_ref = extract_matrix(units, resources,
                                           config=base.feature_config)
    rows = []

    def run(tag, groups=None, families=None):
        cfg = ExperimentConfig(
            name=f"{base.name}.{tag}", task=base.task,
            classifier=base.classifier, params=base.params, grid=base.grid,
            groups=groups, families=families, folds=base.folds,
            seed=base.seed, save_models="none",
            feature_config=base.feature_config)
        res = run_experiment(cfg, units, resources, full_matrix, full_ref)
        rows.append({"setting": tag, "n_features": res.n_features,
                     "accuracy": res.metrics.accuracy,
                     "micro_f1": res.metrics.micro_f1,
                     "macro_f1": res.metrics.macro_f1,
                     "per_class_f1": {c: m["f1"]
                                      for c, m in res.metrics.per_class.items()}})

    run("all_features")
    for g in FEATURE_GROUPS:
        run(f"only_{g}", groups=[g])
    for g in FEATURE_GROUPS:
        run(f"without_{g}", groups=[x for x in FEATURE_GROUPS if x != g])
    for fam in FAMILIES:
        run(f"only_{fam}", families=[fam])
    return rows
