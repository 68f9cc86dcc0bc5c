"""Acceptance gate: one test per acceptance criterion.

Each test prints exactly one ``ACCEPTANCE <name>: PASS/FAIL/SKIP`` line
(run pytest with ``-s -v tests/test_acceptance.py`` to see them all).

Reference-corpus score criteria need the released annotated dataset, which
is not redistributable with this package.  Point TRANSPROC_RELEASED_DATA at
a config.yaml prepared for that corpus (see README) to activate them; they
skip otherwise.  Everything else runs on shipped synthetic fixtures.
"""

import os
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from transproc.classic import FeatureMLP, RandomForest
from transproc.config import load_config
from transproc.corpus import (
    PhrasePair, all_phrase_pairs, load_bundle, map_label, normalize_corpus,
    serialize_bundle,
)
from transproc.evaluation import (
    ExperimentConfig, compute_metrics, run_experiment, task_dataset,
)
from transproc.features import entropy, levenshtein, lexical_weight
from transproc.neural.autodiff import Tensor, adaptive_max_pool2d
from transproc.neural.encoding import CharEncoder
from transproc.neural.models import AlignmentCNN, MeanConcatMLP
from transproc.neural.training import (
    TrainConfig, gradient_check, predict_proba, train_model,
)
from transproc.resources import load_resources
from transproc.splits import stratified_kfold
from transproc.store import load_model, save_model
from transproc.synth import PAPER_CENSUS, make_workspace

REPO = Path(__file__).resolve().parent.parent
RELEASED = os.environ.get("TRANSPROC_RELEASED_DATA")
REEXTRACTED = os.environ.get("TRANSPROC_REEXTRACTED") == "1"


def emit(name: str, ok: bool, detail: str) -> None:
    print(f"\nACCEPTANCE {name}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"{name}: {detail}"


def skip(name: str, why: str) -> None:
    print(f"\nACCEPTANCE {name}: SKIP ({why})")
    pytest.skip(why)


def census_units(census):
    units = []
    for raw in sorted(census):
        for _ in range(census[raw]):
            units.append((None, PhrasePair((0, 1), (0, 1), raw, map_label(raw))))
    return units


@pytest.fixture(scope="module")
def paper_ws(tmp_path_factory):
    """Synthetic workspace at the reference census scale (4,898 pairs)."""
    root = tmp_path_factory.mktemp("paper_ws")
    paths = dict(make_workspace(root, PAPER_CENSUS, seed=0))
    paths["root"] = root
    return paths


@pytest.fixture(scope="module")
def paper_data(paper_ws):
    sentences = normalize_corpus(load_bundle(paper_ws["bundle"]))
    units = all_phrase_pairs(sentences)
    resources = load_resources(
        embeddings_path=paper_ws["embeddings"],
        table_e_given_f_path=paper_ws["table_e_given_f"],
        table_f_given_e_path=paper_ws["table_f_given_e"],
        concept_graph_path=paper_ws["concepts"],
        manual_lists_path=paper_ws["manual_lists"])
    return units, resources


# ---------------------------------------------------------------------------
# Reference-corpus score criteria (need the released dataset)

# experiment name in the released-data config -> (accuracy %, tolerance)
RELEASED_EXPECTED = {
    "binary_1to1_forest": (87.09, 3.0),
    "binary_2to1_forest": (88.85, 3.0),
    "binary_3to1_forest": (90.16, 3.0),
    "six_class_full_forest": (83.10, 3.0),
    "six_class_200L_forest": (57.04, 4.0),
    "five_class_forest": (55.10, 4.0),
    "five_class_forest_ablated": (55.20, 4.0),
    "L_vs_NL_549_forest": (85.24, 4.0),
    "LE_vs_nonLE_549_forest": (75.32, 4.0),
    "LET_vs_nonLET_549_forest": (79.42, 4.0),
}


def _released_workspace():
    cfg_path = Path(RELEASED)
    cfg = load_config(cfg_path)
    base = cfg_path.parent
    bundle = Path(cfg.bundle)
    sentences = load_bundle(bundle if bundle.is_absolute() else base / bundle)
    if cfg.normalize:
        sentences = normalize_corpus(sentences)
    units = all_phrase_pairs(sentences)
    rp = {k: cfg.resource_path(k, base) for k in cfg.resources}
    resources = load_resources(
        embeddings_path=str(rp["embeddings"]),
        table_e_given_f_path=str(rp["table_e_given_f"]),
        table_f_given_e_path=str(rp["table_f_given_e"]),
        concept_graph_path=str(rp["concepts"]),
        manual_lists_path=str(rp["manual_lists"]))
    return cfg, units, resources


def test_released_corpus_scores():
    name = "released_corpus_scores"
    if not RELEASED:
        skip(name, "released dataset not available; "
                   "set TRANSPROC_RELEASED_DATA to its config.yaml")
    cfg, units, resources = _released_workspace()
    widen = 1.0 if REEXTRACTED else 0.0
    lines, ok = [], True
    for exp_name, (expect, tol) in RELEASED_EXPECTED.items():
        exp = cfg.experiment(exp_name)
        result = run_experiment(exp, units, resources)
        acc = result.metrics.accuracy * 100
        bound = tol + (5.0 - tol) * widen if widen else tol
        hit = abs(acc - expect) <= bound
        ok &= hit
        lines.append(f"{exp_name}={acc:.2f} vs {expect}+/-{bound:g}"
                     + ("" if hit else " MISS"))
        if exp_name == "binary_1to1_forest":
            f1 = sorted(m["f1"] for m in result.metrics.per_class.values())
            hit_f1 = (abs(f1[0] - 0.87) <= 0.04 and abs(f1[1] - 0.88) <= 0.04)
            ok &= hit_f1
            lines.append(f"binary_1to1_f1=({f1[0]:.2f},{f1[1]:.2f})"
                         + ("" if hit_f1 else " MISS"))
    if REEXTRACTED:
        lines.append("re-extracted features: tolerances widened to +/-5.0")
    emit(name, ok, "; ".join(lines))


def test_released_per_class_f1_ordering():
    name = "released_f1_ordering"
    if not RELEASED:
        skip(name, "released dataset not available; "
                   "set TRANSPROC_RELEASED_DATA to its config.yaml")
    cfg, units, resources = _released_workspace()
    result = run_experiment(cfg.experiment("five_class_forest"), units,
                            resources)
    f1 = {c: m["f1"] for c, m in result.metrics.per_class.items()}
    top = max(f1, key=f1.get)
    bottom = min(f1, key=f1.get)
    ok = top == "Contain_Transposition" and bottom == "Generalization"
    emit(name, ok, f"max={top} min={bottom} f1={ {c: round(v, 3) for c, v in f1.items()} }")


# ---------------------------------------------------------------------------
# Dummy baselines match analytic expectations (runs on the census alone)


def test_dummy_analytic_expectations():
    name = "dummy_expectations"
    units = census_units(PAPER_CENSUS)

    def dummy_acc(task):
        cfg = ExperimentConfig(name=f"dummy_{task}", task=task,
                               classifier="dummy", save_models="none")
        return run_experiment(cfg, units, None).metrics.accuracy * 100

    acc_1to1 = dummy_acc("binary_1to1")
    acc_3to1 = dummy_acc("binary_3to1")
    acc_five = dummy_acc("five_class")

    # analytic expectation of a class-prior sampler: sum of squared priors
    n_lit = PAPER_CENSUS["Literal"]
    n_nonlit = sum(PAPER_CENSUS.values()) - n_lit
    merged = {"Equivalence": PAPER_CENSUS["Equivalence"],
              "Generalization": PAPER_CENSUS["Generalization"],
              "Particularization": PAPER_CENSUS["Particularization"],
              "Modulation": PAPER_CENSUS["Modulation"],
              "Contain_Transposition": (PAPER_CENSUS["Transposition"]
                                        + PAPER_CENSUS["Mod+Trans"])}
    five_expect = 100 * sum((v / n_nonlit) ** 2 for v in merged.values())

    checks = [
        ("binary_1to1", acc_1to1, 50.0, 2.0),
        ("binary_3to1", acc_3to1, 62.5, 3.0),
        ("five_class", acc_five, five_expect, 3.0),
    ]
    ok = all(abs(acc - expect) <= tol for _, acc, expect, tol in checks)
    detail = "; ".join(f"{t}={acc:.2f} vs {expect:.2f}+/-{tol:g}"
                       for t, acc, expect, tol in checks)
    emit(name, ok, detail)


# ---------------------------------------------------------------------------
# Neural accuracy floors (synthetic corpus, shortened training schedule)

# The reference training protocol (lr 1e-4, 200 epochs, dropout 0.2) is
# impractical inside a test gate; this schedule reaches the floors in
# minutes on CPU.
NEURAL_SCHEDULE = {"lr": 3e-3, "epochs": 60, "batch_size": 32,
                   "dropout_p": 0.0}
CNN_SCHEDULE = {"lr": 3e-3, "epochs": 12, "batch_size": 32}
CNN_SUBSET = 600


def test_neural_accuracy_floors(paper_data):
    name = "neural_floors"
    units, resources = paper_data

    def cv_acc(kind, task, folds, params):
        cfg = ExperimentConfig(name=f"{kind}_{task}", task=task,
                               classifier=kind, params=params, folds=folds,
                               save_models="none")
        return run_experiment(cfg, units, resources).metrics.accuracy * 100

    word_binary = cv_acc("mlp_word", "binary_1to1", 5, NEURAL_SCHEDULE)
    word_five = cv_acc("mlp_word", "five_class", 5, NEURAL_SCHEDULE)

    # the convolutional model is far slower per step: hold out one third of
    # a balanced subsample instead of full CV
    sel, labels = task_dataset(units, "binary_1to1", seed=7)
    rng = np.random.default_rng(7)
    pick = []
    for side in ("L", "NL"):
        pool = [k for k, lab in enumerate(labels) if lab == side]
        pick += [pool[i] for i in rng.choice(len(pool), size=CNN_SUBSET // 2,
                                             replace=False)]
    sub_units = [units[sel[i]] for i in pick]
    sub_labels = np.array([labels[i] for i in pick])
    folds = stratified_kfold(sub_labels, 3, seed=7)
    te = folds[0]
    tr = np.sort(np.concatenate([folds[1], folds[2]]))
    train_units = [sub_units[i] for i in tr]
    enc = CharEncoder(train_units)
    cnn = AlignmentCNN(enc.vocab_size, 2, seed=7)
    train_model(cnn, enc, train_units, sub_labels[tr],
                TrainConfig(lr=CNN_SCHEDULE["lr"],
                            epochs=CNN_SCHEDULE["epochs"],
                            batch_size=CNN_SCHEDULE["batch_size"], seed=7))
    from transproc.neural.training import predict as neural_predict
    cnn_pred = neural_predict(cnn, enc, [sub_units[i] for i in te])
    cnn_binary = compute_metrics(sub_labels[te], cnn_pred).accuracy * 100

    checks = [("word_mlp_binary", word_binary, 65.0),
              ("word_mlp_five_class", word_five, 38.0),
              ("char_cnn_binary", cnn_binary, 55.0)]
    ok = all(acc >= floor for _, acc, floor in checks)
    detail = "; ".join(f"{t}={acc:.2f} (floor {floor:g})"
                       for t, acc, floor in checks)
    emit(name, ok, detail)


# ---------------------------------------------------------------------------
# Property suite (no external data)


def _prop_lexical_weight_exhaustive():
    """Every alignment over segments of length <= 3 matches a brute-force
    restatement of the mean-of-aligned-probabilities product."""

    class StubTable:
        def __init__(self, probs):
            self.probs = probs          # {(direction, b, a): p}

        def prob(self, direction, word_b, word_a):
            key = (direction, word_b, word_a)
            if key in self.probs:
                return self.probs[key], True
            return 0.0, False

    rng = np.random.default_rng(4)
    words_a = ["a0", "a1", "a2"]
    words_b = ["b0", "b1", "b2"]
    probs = {}
    for wa in words_a:
        for wb in words_b + ["NULL"]:
            if rng.random() < 0.7:      # leave some entries missing
                probs[("e_given_f", wb, wa)] = float(rng.random())
    table = StubTable(probs)

    def oracle(na, nb, links, positions):
        weight, factors, unaligned = 1.0, 0, 0
        for i in positions:
            js = [j for x, j in links if x == i]
            if js:
                s = sum(probs.get(("e_given_f", words_b[j], words_a[i]), 0.0)
                        for j in js)
                weight *= s / len(js)
                factors += 1
            elif ("e_given_f", "NULL", words_a[i]) in probs:
                weight *= probs[("e_given_f", "NULL", words_a[i])]
                factors += 1
            else:
                unaligned += 1
        return (weight if factors else 0.0), unaligned

    checked = 0
    for na in (1, 2, 3):
        for nb in (1, 2, 3):
            cells = [(i, j) for i in range(na) for j in range(nb)]
            for bits in range(2 ** len(cells)):
                links = [cells[k] for k in range(len(cells))
                         if bits >> k & 1]
                positions = list(range(na))
                got = lexical_weight(words_a[:na], words_b[:nb], links,
                                     positions, "e_given_f", table)
                want = oracle(na, nb, links, positions)
                assert got[1] == want[1]
                assert abs(got[0] - want[0]) <= 1e-12 * max(1.0, abs(want[0]))
                checked += 1
    return f"lexical_weight exhaustive ({checked} alignments)"


def _prop_entropy():
    rng = np.random.default_rng(5)
    for _ in range(200):
        p = rng.random(rng.integers(1, 9))
        p /= p.sum()
        want = float(-np.sum(p * np.log(p)))
        assert abs(entropy(p.tolist()) - want) <= 1e-12
    return "entropy matches -sum(p ln p) to 1e-12 (200 draws)"


def _prop_levenshtein():
    def dp(a, b):
        prev = list(range(len(b) + 1))
        for i, ca in enumerate(a, 1):
            cur = [i]
            for j, cb in enumerate(b, 1):
                cur.append(min(prev[j] + 1, cur[-1] + 1,
                               prev[j - 1] + (ca != cb)))
            prev = cur
        return prev[-1]

    rng = np.random.default_rng(6)
    alphabet = "abcdef"
    for _ in range(1000):
        a = "".join(rng.choice(list(alphabet), size=rng.integers(0, 12)))
        b = "".join(rng.choice(list(alphabet), size=rng.integers(0, 12)))
        assert levenshtein(a, b) == dp(a, b)
    return "levenshtein matches DP oracle (1000 pairs)"


def _prop_folds():
    rng = np.random.default_rng(7)
    for _ in range(100):
        n_classes = int(rng.integers(1, 5))
        labels = np.repeat([f"c{i}" for i in range(n_classes)],
                           rng.integers(1, 30, size=n_classes))
        k = int(rng.integers(2, 6))
        folds = stratified_kfold(labels, k, seed=int(rng.integers(1 << 30)))
        assert sorted(i for f in folds for i in f) == list(range(len(labels)))
        for cls in np.unique(labels):
            counts = [int(np.sum(labels[f] == cls)) for f in folds]
            assert max(counts) - min(counts) <= 1
    return "stratified folds satisfy the +/-1 rule (100 censuses)"


def _prop_micro_f1():
    rng = np.random.default_rng(8)
    for _ in range(1000):
        n = int(rng.integers(1, 40))
        gold = rng.choice(list("abcd"), size=n)
        pred = rng.choice(list("abcd"), size=n)
        rep = compute_metrics(gold.tolist(), pred.tolist())
        assert rep.micro_f1 == rep.accuracy
    return "micro-F1 == accuracy (1000 prediction sets)"


def _prop_gradients():
    worst = []

    # feature MLP: one full-batch SGD step at momentum 0 exposes the
    # analytic gradient as (theta0 - theta1)/lr; compare to central
    # differences of the forward mean cross-entropy
    rng = np.random.default_rng(9)
    X = rng.normal(size=(12, 5))
    y = np.array(list("abc") * 4)
    lr = 1e-3
    ref = FeatureMLP(hidden=(6,), epochs=0, seed=2).fit(X, y)
    stepped = FeatureMLP(hidden=(6,), epochs=1, batch_size=12, lr=lr,
                         momentum=0.0, seed=2).fit(X, y)
    Xs = ref._standardize(X)
    onehot = np.zeros((12, 3))
    onehot[np.arange(12), np.unique(y, return_inverse=True)[1]] = 1.0

    def loss(ws, bs):
        h = Xs
        for w, b in zip(ws[:-1], bs[:-1]):
            h = np.maximum(h @ w + b, 0.0)
        z = h @ ws[-1] + bs[-1]
        z = z - z.max(axis=1, keepdims=True)
        p = np.exp(z) / np.exp(z).sum(axis=1, keepdims=True)
        return -np.sum(onehot * np.log(p + 1e-12)) / 12

    h = 1e-6
    err_mlp = 0.0
    for li in range(2):
        analytic_w = (ref.weights_[li] - stepped.weights_[li]) / lr
        analytic_b = (ref.biases_[li] - stepped.biases_[li]) / lr
        for (r, c), a in np.ndenumerate(analytic_w):
            ws = [w.copy() for w in ref.weights_]
            ws[li][r, c] += h
            up = loss(ws, ref.biases_)
            ws[li][r, c] -= 2 * h
            dn = loss(ws, ref.biases_)
            num = (up - dn) / (2 * h)
            scale = max(abs(a), abs(num), 1e-8)
            err_mlp = max(err_mlp, abs(a - num) / scale)
        for (c,), a in np.ndenumerate(analytic_b):
            bs = [b.copy() for b in ref.biases_]
            bs[li][c] += h
            up = loss(ref.weights_, bs)
            bs[li][c] -= 2 * h
            dn = loss(ref.weights_, bs)
            num = (up - dn) / (2 * h)
            scale = max(abs(a), abs(num), 1e-8)
            err_mlp = max(err_mlp, abs(a - num) / scale)
    worst.append(("feature_mlp", err_mlp))

    # both neural architectures, sequences short enough that the recurrent
    # paths (T <= 5) are exercised end to end on tiny hand units
    from transproc.corpus import (AlignmentLink, AnnotatedSentencePair,
                                  ConstituencyNode, Token)

    def unit(src_text, tgt_text, label):
        st = tuple(Token(i, w, w, "NOUN")
                   for i, w in enumerate(src_text.split()))
        tt = tuple(Token(i, w, w, "NOUN")
                   for i, w in enumerate(tgt_text.split()))
        sent = AnnotatedSentencePair(
            id=f"g{src_text}{tgt_text}", src_tokens=st, tgt_tokens=tt,
            src_deps=(), tgt_deps=(),
            src_tree=ConstituencyNode("S", (0, len(st))),
            tgt_tree=ConstituencyNode("S", (0, len(tt))),
            alignment=(AlignmentLink(0, 0),),
            phrase_pairs=(PhrasePair((0, len(st)), (0, len(tt)), label,
                                     map_label(label)),))
        return (sent, sent.phrase_pairs[0])

    # distinct letters per unit so no GRU-state similarity entries coincide
    # and no example's conv maps die entirely (an all-zero pooled vector puts
    # a relu pre-activation exactly on its kink, where central differences
    # and the subgradient legitimately disagree)
    units = [unit("ab ef", "gh kl", "Literal"),
             unit("cd ij", "mn pq", "Modulation"),
             unit("ru", "vw", "Literal"),
             unit("xy", "zs", "Modulation")]
    labels = np.array(["L", "NL", "L", "NL"])
    enc = CharEncoder(units)
    mlp = MeanConcatMLP(enc.vocab_size, 2, emb_dim=3, hidden=2, mlp_dim=3,
                        seed=1)
    worst.append(("mean_concat_mlp", gradient_check(mlp, enc, units, labels)))
    cnn = AlignmentCNN(enc.vocab_size, 2, emb_dim=4, hidden=3, filters=4,
                       fc_dim=4, seed=1)
    worst.append(("alignment_cnn", gradient_check(cnn, enc, units, labels)))

    assert all(err < 1e-4 for _, err in worst), worst
    return ("gradients vs central differences: "
            + ", ".join(f"{n}={e:.2e}" for n, e in worst))


def _prop_adaptive_pool():
    rng = np.random.default_rng(10)
    for _ in range(50):
        h, w = int(rng.integers(1, 30)), int(rng.integers(1, 30))
        x = Tensor(rng.normal(size=(2, 3, max(h, 4), max(w, 4))))
        sizes = np.array([[h, w], [max(h, 4), max(w, 4)]])
        out = adaptive_max_pool2d(x, sizes, grid=4)
        assert out.data.shape == (2, 3, 4, 4)
    return "adaptive pooling emits the fixed grid (50 random shapes)"


def _prop_bit_reproducible():
    rng = np.random.default_rng(11)
    X = rng.normal(size=(40, 6))
    y = rng.choice(["a", "b", "c"], size=40)
    f1 = RandomForest(n_trees=12, seed=5).fit(X, y)
    f2 = RandomForest(n_trees=12, seed=5).fit(X, y)
    assert np.array_equal(f1.predict_proba(X), f2.predict_proba(X))

    from transproc.corpus import (AlignmentLink, AnnotatedSentencePair,
                                  ConstituencyNode, Token)

    def unit(text, label):
        toks = tuple(Token(i, w, w, "NOUN") for i, w in enumerate(text.split()))
        sent = AnnotatedSentencePair(
            id=f"r{text}{label}", src_tokens=toks, tgt_tokens=toks,
            src_deps=(), tgt_deps=(),
            src_tree=ConstituencyNode("S", (0, len(toks))),
            tgt_tree=ConstituencyNode("S", (0, len(toks))),
            alignment=(AlignmentLink(0, 0),),
            phrase_pairs=(PhrasePair((0, len(toks)), (0, len(toks)), label,
                                     map_label(label)),))
        return (sent, sent.phrase_pairs[0])

    units = [unit("aa bb", "Literal"), unit("cc dd", "Modulation")] * 4
    labels = np.array(["L", "NL"] * 4)
    curves, probas = [], []
    for _ in range(2):
        enc = CharEncoder(units)
        model = MeanConcatMLP(enc.vocab_size, 2, emb_dim=3, hidden=2,
                              mlp_dim=3, seed=3)
        curve = train_model(model, enc, units, labels,
                            TrainConfig(lr=1e-3, epochs=3, batch_size=4,
                                        seed=3))
        curves.append(curve)
        probas.append(predict_proba(model, enc, units))
    assert curves[0] == curves[1]
    assert np.array_equal(probas[0], probas[1])
    return "forest and neural training bit-reproducible under a fixed seed"


def _prop_serialization(tmp_path):
    from transproc.synth import SMALL_CENSUS

    ws = tmp_path / "ser_ws"
    paths = make_workspace(ws, SMALL_CENSUS, seed=1)
    sentences = load_bundle(paths["bundle"])
    out = tmp_path / "ser_copy.jsonl"
    serialize_bundle(sentences, out)
    assert load_bundle(out) == sentences
    assert out.read_bytes() == Path(paths["bundle"]).read_bytes()

    rng = np.random.default_rng(12)
    X = rng.normal(size=(30, 4))
    y = rng.choice(["a", "b"], size=30)
    model = RandomForest(n_trees=6, seed=2).fit(X, y)
    mp = tmp_path / "ser_model.joblib"
    save_model(mp, model, {"classifier": "forest"})
    loaded, _ = load_model(mp)
    assert np.array_equal(loaded.predict_proba(X), model.predict_proba(X))
    return "bundle and model serialization round-trip bit-exactly"


def test_property_suite(tmp_path):
    name = "property_suite"
    results = [
        _prop_lexical_weight_exhaustive(),
        _prop_entropy(),
        _prop_levenshtein(),
        _prop_folds(),
        _prop_micro_f1(),
        _prop_gradients(),
        _prop_adaptive_pool(),
        _prop_bit_reproducible(),
        _prop_serialization(tmp_path),
    ]
    emit(name, True, "; ".join(results))


# ---------------------------------------------------------------------------
# Desk-scale runtime: the full feature grid in under 30 minutes


def test_grid_runtime(tmp_path):
    name = "grid_runtime"
    ws = tmp_path / "grid_ws"
    t0 = time.time()
    rc = subprocess.run(
        [sys.executable, str(REPO / "scripts" / "make_synthetic_data.py"),
         str(ws)],
        capture_output=True, text=True, timeout=600).returncode
    assert rc == 0
    proc = subprocess.run(
        [sys.executable, str(REPO / "scripts" / "run_grid.py"),
         str(ws / "config.yaml")],
        capture_output=True, text=True, timeout=30 * 60)
    elapsed = time.time() - t0
    ok = proc.returncode == 0 and elapsed < 30 * 60
    emit(name, ok,
         f"feature grid on {sum(PAPER_CENSUS.values())} pairs in "
         f"{elapsed / 60:.1f} min (budget 30); rc={proc.returncode}"
         + ("" if proc.returncode == 0 else f"; tail={proc.stdout[-300:]}"))


# ---------------------------------------------------------------------------
# Secondary component contract


def test_secondary_adapter_contract():
    name = "adapter_contract"
    emitted = REPO / "adapter" / "emitted" / "config.yaml"
    if not emitted.exists():
        skip(name, "no emitted adapter workspace; run `npm test` in adapter/ "
                   "(its suite enforces validate exit 0 and total tag coverage)")
    proc = subprocess.run(
        [sys.executable, "-m", "transproc.cli", "validate", "--config",
         str(emitted)],
        capture_output=True, text=True, timeout=300)
    emit(name, proc.returncode == 0,
         f"validate rc={proc.returncode} on {emitted}")
