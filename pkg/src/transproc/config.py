"""Run configuration: one YAML file drives every command."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .evaluation import ExperimentConfig
from .features import DEFAULT_FEATURE_CONFIG, FeatureConfig

RESOURCE_KEYS = ("embeddings", "table_e_given_f", "table_f_given_e",
                 "concepts", "manual_lists")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    bundle: str
    resources: dict[str, str]
    out_dir: str
    experiments: tuple[ExperimentConfig, ...] = ()
    seed: int = 0
    normalize: bool = True
    feature_config: FeatureConfig = DEFAULT_FEATURE_CONFIG

    def experiment(self, name: str) -> ExperimentConfig:
        for exp in self.experiments:
            if exp.name == name:
                return exp
        known = ", ".join(e.name for e in self.experiments) or "(none)"
        raise ConfigError(f"no experiment named {name!r}; available: {known}")

    def resource_path(self, key: str, base: Path) -> Path:
        p = Path(self.resources[key])
        return p if p.is_absolute() else base / p


def _experiment_from_dict(raw: dict, global_seed: int,
                          fc: FeatureConfig) -> ExperimentConfig:
    known = {"name", "task", "classifier", "params", "grid", "groups",
             "families", "folds", "seed", "save_models"}
    unknown = set(raw) - known
    if unknown:
        raise ConfigError(f"unknown experiment fields: {sorted(unknown)}")
    for req in ("name", "task", "classifier"):
        if req not in raw:
            raise ConfigError(f"experiment missing required field {req!r}")
    try:
        return ExperimentConfig(
            name=raw["name"], task=raw["task"], classifier=raw["classifier"],
            params=raw.get("params") or {}, grid=raw.get("grid"),
            groups=raw.get("groups"), families=raw.get("families"),
            folds=int(raw.get("folds", 5)),
            seed=int(raw.get("seed", global_seed)),
            save_models=raw.get("save_models", "final"),
            feature_config=fc)
    except ValueError as exc:
        raise ConfigError(f"experiment {raw.get('name')!r}: {exc}") from exc


def load_config(path) -> RunConfig:
    path = Path(path)
    try:
        raw = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top level must be a mapping")
    for req in ("bundle", "resources", "out_dir"):
        if req not in raw:
            raise ConfigError(f"{path}: missing required field {req!r}")
    resources = raw["resources"]
    if not isinstance(resources, dict) or set(resources) != set(RESOURCE_KEYS):
        raise ConfigError(
            f"{path}: resources must map exactly these keys: {RESOURCE_KEYS}")
    fc_raw = raw.get("feature_config") or {}
    fc = FeatureConfig(
        minimal_constituent=bool(fc_raw.get("minimal_constituent", True)),
        f11_content_only=bool(fc_raw.get("f11_content_only", False)))
    seed = int(raw.get("seed", 0))
    names = [e.get("name") for e in raw.get("experiments", [])]
    dupes = {n for n in names if names.count(n) > 1}
    if dupes:
        raise ConfigError(f"{path}: duplicate experiment names: {sorted(dupes)}")
    experiments = tuple(_experiment_from_dict(e, seed, fc)
                        for e in raw.get("experiments", []))
    return RunConfig(bundle=raw["bundle"], resources=dict(resources),
                     out_dir=raw["out_dir"], experiments=experiments,
                     seed=seed, normalize=bool(raw.get("normalize", True)),
                     feature_config=fc)


def config_hash(path) -> str:
    """Hash of the config file bytes; embedded in every output artifact."""
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def dump_effective(cfg: RunConfig) -> str:
    """Canonical JSON echo of the parsed config, for report embedding."""

    def enc(obj):
        if isinstance(obj, ExperimentConfig):
            d = {k: v for k, v in obj.__dict__.items() if k != "feature_config"}
            return d
        if isinstance(obj, FeatureConfig):
            return obj.__dict__
        raise TypeError(type(obj).__name__)

    payload = {
        "bundle": cfg.bundle, "resources": cfg.resources,
        "out_dir": cfg.out_dir, "seed": cfg.seed, "normalize": cfg.normalize,
        "feature_config": cfg.feature_config,
        "experiments": list(cfg.experiments),
    }
    return json.dumps(payload, default=enc, sort_keys=True, indent=2)
