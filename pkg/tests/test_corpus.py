"""Bundle loading, validation diagnostics, normalization, census."""

import copy
import json

import pytest

from transproc.corpus import (
    BundleError, ProcessLabel, all_phrase_pairs, class_census,
    load_bundle, map_label, normalize_sentence, raw_census,
    sentence_from_record, sentence_to_record, serialize_bundle,
)
from transproc.synth import SMALL_CENSUS


def make_record(sid="s1"):
    side = {
        "tokens": [
            {"surface": "The", "lemma": "the", "upos": "DET"},
            {"surface": "cat", "lemma": "cat", "upos": "NOUN"},
            {"surface": "sleeps", "lemma": "sleep", "upos": "VERB"},
        ],
        "deps": [{"head": 1, "dependent": 0, "relation": "det"},
                 {"head": 2, "dependent": 1, "relation": "nsubj"}],
        "tree": {"label": "S", "span": [0, 3], "children": [
            {"label": "NP", "span": [0, 2], "children": [
                {"label": "DET", "span": [0, 1]},
                {"label": "NOUN", "span": [1, 2]}]},
            {"label": "VP", "span": [2, 3]}]},
    }
    return {
        "format_version": 1,
        "id": sid,
        "src": copy.deepcopy(side),
        "tgt": copy.deepcopy(side),
        "alignment": [[0, 0], [1, 1], [2, 2]],
        "phrase_pairs": [{"src_span": [1, 3], "tgt_span": [1, 3],
                          "raw_label": "Literal"}],
    }


# ---------------------------------------------------------------------------
# Loading and validation


def test_round_trip_identity(tmp_path, corpus):
    path = tmp_path / "bundle.jsonl"
    serialize_bundle(corpus, path)
    again = load_bundle(path)
    assert again == corpus


def test_record_round_trip():
    sent = sentence_from_record(make_record())
    assert sentence_from_record(sentence_to_record(sent)) == sent


def test_load_small_bundle(workspace):
    sentences = load_bundle(workspace["bundle"])
    assert len(sentences) == sum(SMALL_CENSUS.values())
    assert all(len(s.phrase_pairs) == 1 for s in sentences)


@pytest.mark.parametrize("mutate,fieldname", [
    (lambda r: r.__setitem__("format_version", 99), "format_version"),
    (lambda r: r.__setitem__("id", ""), "id"),
    (lambda r: r["src"].__setitem__("tokens", []), "src.tokens"),
    (lambda r: r["src"]["tokens"][0].__setitem__("upos", "NOPE"), "src.tokens"),
    (lambda r: r["tgt"]["deps"][0].__setitem__("relation", "zzz"), "tgt.deps"),
    (lambda r: r["src"]["deps"][0].__setitem__("head", 7), "src.deps"),
    (lambda r: r["src"]["deps"].append(
        {"head": 1, "dependent": 1, "relation": "det"}), "src.deps"),
    (lambda r: r["src"]["tree"].__setitem__("span", [0, 2]), "src.tree"),
    (lambda r: r["alignment"].append([0, 9]), "alignment"),
    (lambda r: r["alignment"].append([0, 0]), "alignment"),
    (lambda r: r["phrase_pairs"][0].__setitem__("src_span", [1, 9]),
     "phrase_pairs"),
    (lambda r: r["phrase_pairs"][0].__setitem__("raw_label", "Mystery"),
     "phrase_pairs"),
])
def test_validation_errors_name_the_field(mutate, fieldname):
    rec = make_record()
    mutate(rec)
    with pytest.raises(BundleError) as err:
        sentence_from_record(rec, record=7)
    assert err.value.record == 7
    assert err.value.fieldname == fieldname
    assert "record 7" in str(err.value)


def test_tree_children_must_tile_parent():
    rec = make_record()
    # drop the middle leaf so the children leave a hole
    rec["src"]["tree"]["children"][0]["children"] = [
        {"label": "DET", "span": [0, 1]}]
    with pytest.raises(BundleError) as err:
        sentence_from_record(rec)
    assert "tile" in str(err.value) or "end at" in str(err.value)


def test_duplicate_sentence_id_rejected(tmp_path):
    path = tmp_path / "dup.jsonl"
    rec = make_record("same")
    path.write_text(json.dumps(rec) + "\n" + json.dumps(rec) + "\n",
                    encoding="utf-8")
    with pytest.raises(BundleError, match="duplicate sentence id"):
        load_bundle(path)


def test_invalid_json_names_record(tmp_path):
    path = tmp_path / "bad.jsonl"
    path.write_text(json.dumps(make_record()) + "\n{oops\n", encoding="utf-8")
    with pytest.raises(BundleError) as err:
        load_bundle(path)
    assert err.value.record == 2


# ---------------------------------------------------------------------------
# Label mapping


def test_map_label_merges_transposition_variants():
    assert map_label("Transposition") is ProcessLabel.CONTAIN_TRANSPOSITION
    assert map_label("Mod+Trans") is ProcessLabel.CONTAIN_TRANSPOSITION
    assert map_label("Literal") is ProcessLabel.LITERAL
    with pytest.raises(BundleError):
        map_label("Calque")


# ---------------------------------------------------------------------------
# Normalization


def test_normalize_lowercases_and_keeps_structure():
    sent = sentence_from_record(make_record())
    norm = normalize_sentence(sent)
    assert [t.surface for t in norm.src_tokens] == ["the", "cat", "sleeps"]
    assert norm.src_tree == sent.src_tree or norm.src_tree.span == (0, 3)
    assert norm.phrase_pairs[0].src_span == (1, 3)


def test_normalize_expands_french_portmanteau():
    rec = make_record()
    rec["tgt"]["tokens"][0] = {"surface": "au", "lemma": "au", "upos": "DET"}
    sent = sentence_from_record(rec)
    norm = normalize_sentence(sent)
    surfaces = [t.surface for t in norm.tgt_tokens]
    assert surfaces[:2] == ["à", "le"]
    assert len(norm.tgt_tokens) == 4
    # spans after the expansion shift right by one
    assert norm.phrase_pairs[0].tgt_span == (2, 4)
    # the expanded token's alignment links are inherited by both pieces
    src_of = sorted((l.src, l.tgt) for l in norm.alignment if l.src == 0)
    assert src_of == [(0, 0), (0, 1)]
    # dependency endpoints move to the first piece
    det_arc = [a for a in norm.tgt_deps if a.relation == "det"][0]
    assert det_arc.dependent == 0 and det_arc.head == 2
    # tree leaves stay single tokens
    for node in norm.tgt_tree.iter_nodes():
        if not node.children:
            assert node.span[1] - node.span[0] == 1


def test_normalize_digits_do_not_grow_token_count():
    rec = make_record()
    rec["src"]["tokens"][1] = {"surface": "42", "lemma": "42", "upos": "NUM"}
    sent = sentence_from_record(rec)
    norm = normalize_sentence(sent)
    assert len(norm.src_tokens) == len(sent.src_tokens)
    assert norm.src_tokens[1].surface == "four two"


def test_normalize_english_clitic():
    rec = make_record()
    rec["src"]["tokens"][2] = {"surface": "n't", "lemma": "not", "upos": "X"}
    sent = sentence_from_record(rec)
    norm = normalize_sentence(sent)
    assert norm.src_tokens[2].surface == "not"
    assert len(norm.src_tokens) == 3


# ---------------------------------------------------------------------------
# Census


def test_class_census_matches_generator(corpus):
    pairs = [p for _, p in all_phrase_pairs(corpus)]
    census = class_census(pairs)
    raw = raw_census(pairs)
    assert raw == SMALL_CENSUS
    assert census[ProcessLabel.LITERAL] == SMALL_CENSUS["Literal"]
    assert census[ProcessLabel.CONTAIN_TRANSPOSITION] == \
        SMALL_CENSUS["Transposition"] + SMALL_CENSUS["Mod+Trans"]
    assert sum(census.values()) == sum(SMALL_CENSUS.values())
