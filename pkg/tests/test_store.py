"""Model persistence: bit-exact round trips and archive validation."""

import joblib
import numpy as np
import pytest

from transproc.classic import RandomForest
from transproc.neural.encoding import CharEncoder
from transproc.neural.models import MeanConcatMLP
from transproc.neural.training import TrainConfig, predict_proba, train_model
from transproc.store import StoreError, load_model, save_model


def test_forest_round_trip_bit_exact(units, feature_matrix, tmp_path):
    matrix, ref = feature_matrix
    labels = np.array([p.label.value for _, p in units])
    model = RandomForest(n_trees=8, seed=3).fit(matrix, labels)
    before = model.predict_proba(matrix)
    meta = {"classifier": "forest", "feature_names": list(ref.names)}
    path = tmp_path / "m.joblib"
    save_model(path, model, meta)
    loaded, meta_back = load_model(path)
    assert meta_back == meta
    after = loaded.predict_proba(matrix)
    assert np.array_equal(before, after)
    assert list(loaded.classes_) == list(model.classes_)


def test_neural_round_trip_bit_exact(units, tmp_path):
    train = units[:12]
    labels = np.array(["L" if i % 2 == 0 else "NL" for i in range(12)])
    encoder = CharEncoder(train)
    model = MeanConcatMLP(encoder.vocab_size, 2, emb_dim=4, hidden=3,
                          mlp_dim=4, seed=5)
    train_model(model, encoder, train, labels,
                TrainConfig(lr=1e-3, epochs=1, batch_size=4, seed=0))
    before = predict_proba(model, encoder, units[:20])
    path = tmp_path / "n.joblib"
    save_model(path, (encoder, model), {"classifier": "mlp_char"})
    (enc2, model2), _ = load_model(path)
    after = predict_proba(model2, enc2, units[:20])
    assert np.array_equal(before, after)
    assert list(model2.classes_) == list(model.classes_)


def test_load_missing_file(tmp_path):
    with pytest.raises(StoreError, match="no model file"):
        load_model(tmp_path / "absent.joblib")


def test_load_rejects_foreign_archive(tmp_path):
    path = tmp_path / "x.joblib"
    joblib.dump({"weights": [1, 2, 3]}, path)
    with pytest.raises(StoreError, match="not a model archive"):
        load_model(path)


def test_load_rejects_wrong_version(tmp_path):
    path = tmp_path / "x.joblib"
    joblib.dump({"store_version": 999, "model": object(), "meta": {}}, path)
    with pytest.raises(StoreError, match="store version"):
        load_model(path)


def test_load_rejects_garbage_bytes(tmp_path):
    path = tmp_path / "x.joblib"
    path.write_bytes(b"\x00\x01not a pickle")
    with pytest.raises(StoreError, match="cannot read"):
        load_model(path)
