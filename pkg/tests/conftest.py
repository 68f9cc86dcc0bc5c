"""Shared fixtures: one small synthetic workspace per session."""

import pytest

from transproc.corpus import all_phrase_pairs, load_bundle, normalize_corpus
from transproc.features import extract_matrix
from transproc.resources import load_resources
from transproc.synth import SMALL_CENSUS, make_workspace

CONFIG_YAML = """\
bundle: bundle.jsonl
resources:
  embeddings: resources/embeddings.txt
  table_e_given_f: resources/table_e_given_f.tsv
  table_f_given_e: resources/table_f_given_e.tsv
  concepts: resources/concepts.tsv
  manual_lists: resources/manual_lists.yaml
out_dir: reports
seed: 0
normalize: true
experiments:
  - {name: demo_forest, task: six_class_full, classifier: forest,
     params: {n_trees: 12}, save_models: final}
  - {name: demo_dummy, task: six_class_full, classifier: dummy,
     save_models: none}
  - {name: demo_tree_grid, task: five_class, classifier: tree,
     grid: {max_depth: [2, 6]}, save_models: none}
  - {name: demo_mlp_char, task: binary_1to1, classifier: mlp_char,
     params: {epochs: 2, lr: 0.003, batch_size: 16}, save_models: final}
"""


@pytest.fixture(scope="session")
def workspace(tmp_path_factory):
    root = tmp_path_factory.mktemp("ws")
    paths = dict(make_workspace(root, SMALL_CENSUS, seed=0))
    config = root / "config.yaml"
    config.write_text(CONFIG_YAML, encoding="utf-8")
    paths["config"] = config
    paths["root"] = root
    return paths


@pytest.fixture(scope="session")
def corpus(workspace):
    return normalize_corpus(load_bundle(workspace["bundle"]))


@pytest.fixture(scope="session")
def resources(workspace):
    return load_resources(
        embeddings_path=workspace["embeddings"],
        table_e_given_f_path=workspace["table_e_given_f"],
        table_f_given_e_path=workspace["table_f_given_e"],
        concept_graph_path=workspace["concepts"],
        manual_lists_path=workspace["manual_lists"])


@pytest.fixture(scope="session")
def units(corpus):
    return all_phrase_pairs(corpus)


@pytest.fixture(scope="session")
def feature_matrix(units, resources):
    return extract_matrix(units, resources)
