"""Trained-model persistence.

A saved file is a joblib archive holding the fitted model object plus a
metadata mapping (kind, class set, feature layout or vocabulary, seeds,
config hash).  Loading restores parameters bit-exactly.
"""

from __future__ import annotations

from pathlib import Path

import joblib

STORE_VERSION = 1


class StoreError(ValueError):
    pass


def save_model(path, model, meta: dict) -> None:
    payload = {"store_version": STORE_VERSION, "model": model,
               "meta": dict(meta)}
    joblib.dump(payload, path)


def load_model(path):
    path = Path(path)
    if not path.exists():
        raise StoreError(f"no model file at {path}")
    try:
        payload = joblib.load(path)
    except Exception as exc:
        raise StoreError(f"cannot read model file {path}: {exc}") from exc
    if not isinstance(payload, dict) or "model" not in payload:
        raise StoreError(f"{path} is not a model archive")
    if payload.get("store_version") != STORE_VERSION:
        raise StoreError(
            f"{path}: store version {payload.get('store_version')} "
            f"not supported (expected {STORE_VERSION})")
    return payload["model"], payload.get("meta", {})
