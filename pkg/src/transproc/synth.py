"""Deterministic synthetic corpus and resources for tests and demos.

Builds annotated sentence pairs whose phrase pairs carry class-conditional
signal through every feature family and through both neural encoders:

  Literal            per-token dictionary translation, monotone 1:1 links,
                     matching POS; the target surface is the source surface
                     plus a fixed suffix, so character models see the copy
  Equivalence        two-token idiom with many-to-many links and an
                     idiom-level concept edge
  Generalization     two source tokens collapse onto one target token
  Particularization  one source token expands to two target tokens
  Modulation         the human translation is a different stem than the
                     table's most probable one
  Transposition      same stem family, part of speech flipped
  Mod+Trans          both of the above

The generated corpus is already lowercase and clitic-free; a small slice of
sentences carries digit tokens so normalization has work to do.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .corpus import (
    AlignmentLink, AnnotatedSentencePair, ConstituencyNode, DependencyArc,
    PhrasePair, Token, map_label, serialize_bundle,
)

PAPER_CENSUS = {
    "Literal": 3771, "Equivalence": 289, "Generalization": 86,
    "Particularization": 215, "Modulation": 195, "Transposition": 289,
    "Mod+Trans": 53,
}

SMALL_CENSUS = {
    "Literal": 60, "Equivalence": 12, "Generalization": 8,
    "Particularization": 10, "Modulation": 10, "Transposition": 12,
    "Mod+Trans": 6,
}

N_STEMS = 120

_POS_OF_PREFIX = {"n": "NOUN", "v": "VERB", "j": "ADJ", "r": "ADV"}
_PREFIXES = tuple(_POS_OF_PREFIX)


def _en(prefix: str, k: int) -> str:
    return f"{prefix}ib{k:03d}"


def _fr(prefix: str, k: int) -> str:
    return _en(prefix, k) + "e"


def _leaf(label: str, i: int) -> ConstituencyNode:
    return ConstituencyNode(label=label, span=(i, i + 1))


_PHRASE_LABEL = {"NOUN": "NP", "VERB": "VP", "ADJ": "AP", "ADV": "ADVP"}


def _side_tree(tokens, seg: tuple[int, int]) -> ConstituencyNode:
    """Sentence node over leaf tokens, with a phrase node wrapping the
    segment when it has more than one token (labeled by its first tag)."""
    n = len(tokens)
    children = []
    i = 0
    while i < n:
        if seg[0] == i and seg[1] - seg[0] > 1:
            label = _PHRASE_LABEL.get(tokens[i].upos, "NP")
            leaves = tuple(_leaf("X", j) for j in range(seg[0], seg[1]))
            children.append(ConstituencyNode(label=label, span=seg, children=leaves))
            i = seg[1]
        else:
            children.append(_leaf("X", i))
            i += 1
    return ConstituencyNode(label="S", span=(0, n), children=tuple(children))


def _chain_deps(tokens) -> tuple[DependencyArc, ...]:
    rels = {"NOUN": "nmod", "VERB": "obj", "ADJ": "amod", "ADV": "advmod",
            "DET": "det", "ADP": "case", "PUNCT": "punct", "NUM": "nummod"}
    arcs = []
    for i in range(1, len(tokens)):
        rel = rels.get(tokens[i].upos, "dep")
        arcs.append(DependencyArc(head=i - 1, dependent=i, relation=rel))
    return tuple(arcs)


class _Builder:
    """Accumulates one sentence's tokens and links, then closes it."""

    def __init__(self, sid: str):
        self.sid = sid
        self.src: list[Token] = []
        self.tgt: list[Token] = []
        self.links: list[AlignmentLink] = []
        self.pairs: list[PhrasePair] = []

    def add_src(self, surface, upos, lemma=None) -> int:
        i = len(self.src)
        self.src.append(Token(index=i, surface=surface,
                              lemma=lemma or surface, upos=upos))
        return i

    def add_tgt(self, surface, upos, lemma=None) -> int:
        j = len(self.tgt)
        self.tgt.append(Token(index=j, surface=surface,
                              lemma=lemma or surface, upos=upos))
        return j

    def link(self, i: int, j: int) -> None:
        self.links.append(AlignmentLink(src=i, tgt=j))

    def close(self, seg_src, seg_tgt, raw_label) -> AnnotatedSentencePair:
        self.pairs.append(PhrasePair(src_span=seg_src, tgt_span=seg_tgt,
                                     raw_label=raw_label,
                                     label=map_label(raw_label)))
        return AnnotatedSentencePair(
            id=self.sid,
            src_tokens=tuple(self.src), tgt_tokens=tuple(self.tgt),
            src_deps=_chain_deps(self.src), tgt_deps=_chain_deps(self.tgt),
            src_tree=_side_tree(self.src, seg_src),
            tgt_tree=_side_tree(self.tgt, seg_tgt),
            alignment=tuple(self.links), phrase_pairs=tuple(self.pairs),
            meta={"generator": "synthetic"})


def _context_before(b: _Builder, rng) -> None:
    if rng.random() < 0.5:
        i = b.add_src("the", "DET")
        j = b.add_tgt("le", "DET")
        b.link(i, j)
    if rng.random() < 0.1:
        num = str(rng.integers(10, 99))
        i = b.add_src(num, "NUM")
        j = b.add_tgt(num, "NUM")
        b.link(i, j)


def _context_after(b: _Builder, rng) -> None:
    if rng.random() < 0.4:
        i = b.add_src(".", "PUNCT")
        j = b.add_tgt(".", "PUNCT")
        b.link(i, j)


def _stem(rng) -> tuple[str, int]:
    return _PREFIXES[rng.integers(0, len(_PREFIXES))], int(rng.integers(0, N_STEMS))


def _plural(k: int) -> bool:
    return k % 7 == 0


def _noun_pair(b: _Builder, k: int) -> tuple[int, int]:
    """Literal noun token on both sides; some surfaces inflect so lemma and
    surface differ."""
    en_lemma, fr_lemma = _en("n", k), _fr("n", k)
    en_surf = en_lemma + ("s" if _plural(k) else "")
    fr_surf = fr_lemma + ("s" if _plural(k) else "")
    i = b.add_src(en_surf, "NOUN", en_lemma)
    j = b.add_tgt(fr_surf, "NOUN", fr_lemma)
    return i, j


def _literal(b, rng) -> tuple[tuple[int, int], tuple[int, int]]:
    length = int(rng.integers(1, 4))
    s0, t0 = len(b.src), len(b.tgt)
    for _ in range(length):
        prefix, k = _stem(rng)
        if prefix == "n":
            i, j = _noun_pair(b, k)
        else:
            i = b.add_src(_en(prefix, k), _POS_OF_PREFIX[prefix])
            j = b.add_tgt(_fr(prefix, k), _POS_OF_PREFIX[prefix])
        b.link(i, j)
    return (s0, s0 + length), (t0, t0 + length)


def _equivalence(b, rng):
    kv = int(rng.integers(0, N_STEMS))
    kn = int(rng.integers(0, N_STEMS))
    s0, t0 = len(b.src), len(b.tgt)
    i1 = b.add_src(_en("v", kv), "VERB")
    i2 = b.add_src(_en("n", kn), "NOUN")
    j1 = b.add_tgt(_fr("q", kv), "VERB")
    j2 = b.add_tgt(_fr("z", kn), "NOUN")
    for i in (i1, i2):
        for j in (j1, j2):
            b.link(i, j)
    return (s0, s0 + 2), (t0, t0 + 2)


def _generalization(b, rng):
    k1 = int(rng.integers(0, N_STEMS))
    k2 = int(rng.integers(0, N_STEMS))
    s0, t0 = len(b.src), len(b.tgt)
    i1 = b.add_src(_en("n", k1), "NOUN")
    i2 = b.add_src(_en("n", k2), "NOUN")
    j = b.add_tgt(_fr("g", k1), "NOUN")
    b.link(i1, j)
    b.link(i2, j)
    return (s0, s0 + 2), (t0, t0 + 1)


def _particularization(b, rng):
    k = int(rng.integers(0, N_STEMS))
    k2 = int(rng.integers(0, N_STEMS))
    s0, t0 = len(b.src), len(b.tgt)
    i = b.add_src(_en("n", k), "NOUN")
    j1 = b.add_tgt(_fr("n", k), "NOUN")
    j2 = b.add_tgt(_fr("p", k2), "ADJ")
    b.link(i, j1)
    b.link(i, j2)
    return (s0, s0 + 1), (t0, t0 + 2)


def _modulation(b, rng):
    k = int(rng.integers(0, N_STEMS))
    shifted = (k + 41) % N_STEMS
    s0, t0 = len(b.src), len(b.tgt)
    i = b.add_src(_en("n", k), "NOUN")
    j = b.add_tgt(_fr("n", shifted), "NOUN")
    b.link(i, j)
    return (s0, s0 + 1), (t0, t0 + 1)


def _transposition(b, rng):
    k = int(rng.integers(0, N_STEMS))
    s0, t0 = len(b.src), len(b.tgt)
    i = b.add_src(_en("v", k), "VERB")
    j = b.add_tgt(_fr("n", k), "NOUN")
    b.link(i, j)
    return (s0, s0 + 1), (t0, t0 + 1)


def _mod_trans(b, rng):
    k = int(rng.integers(0, N_STEMS))
    shifted = (k + 67) % N_STEMS
    s0, t0 = len(b.src), len(b.tgt)
    i = b.add_src(_en("v", k), "VERB")
    j = b.add_tgt(_fr("n", shifted), "NOUN")
    b.link(i, j)
    return (s0, s0 + 1), (t0, t0 + 1)


_GENERATORS = {
    "Literal": _literal, "Equivalence": _equivalence,
    "Generalization": _generalization, "Particularization": _particularization,
    "Modulation": _modulation, "Transposition": _transposition,
    "Mod+Trans": _mod_trans,
}


def build_corpus(census: dict[str, int] | None = None, seed: int = 0):
    """One sentence per phrase pair, interleaved across classes in a fixed
    seeded order."""
    census = dict(PAPER_CENSUS if census is None else census)
    unknown = set(census) - set(_GENERATORS)
    if unknown:
        raise ValueError(f"unknown raw labels in census: {sorted(unknown)}")
    rng = np.random.default_rng(seed)
    schedule = [label for label in sorted(census) for _ in range(census[label])]
    rng.shuffle(schedule)
    sentences = []
    for n, raw_label in enumerate(schedule):
        b = _Builder(f"synth-{n:06d}")
        _context_before(b, rng)
        seg_src, seg_tgt = _GENERATORS[raw_label](b, rng)
        _context_after(b, rng)
        sentences.append(b.close(seg_src, seg_tgt, raw_label))
    return sentences


# ---------------------------------------------------------------------------
# Companion resources


def _base_vectors(dim: int, seed: int) -> dict[str, np.ndarray]:
    """One unit vector per (prefix, stem); translations reuse it."""
    rng = np.random.default_rng(seed)
    out = {}
    for prefix in ("n", "v", "j", "r", "q", "z", "g", "p"):
        for k in range(N_STEMS):
            v = rng.normal(size=dim)
            out[f"{prefix}{k}"] = v / np.linalg.norm(v)
    return out


def build_embedding_rows(dim: int = 16, seed: int = 1):
    base = _base_vectors(dim, seed)
    rng = np.random.default_rng(seed + 1)
    rows = {}

    def put(key, stem_key, flip=False):
        vec = base[stem_key] + 0.05 * rng.normal(size=dim)
        rows[key] = -vec if flip else vec

    for k in range(N_STEMS):
        for prefix in _PREFIXES:
            put(f"en/{_en(prefix, k)}", f"{prefix}{k}")
            put(f"fr/{_fr(prefix, k)}", f"{prefix}{k}")
        # idiom / grouped / specified stems keep their own spaces
        for prefix in ("q", "z", "g", "p"):
            put(f"fr/{_fr(prefix, k)}", f"{prefix}{k}")
    for word in ("the", "of", "and"):
        put(f"en/{word}", "n0")
    for word in ("le", "de", "et"):
        put(f"fr/{word}", "n0")
    # inflected noun surfaces
    for k in range(N_STEMS):
        if _plural(k):
            put(f"en/{_en('n', k)}s", f"n{k}")
            put(f"fr/{_fr('n', k)}s", f"n{k}")
    return rows


def write_embeddings(path, rows: dict[str, np.ndarray]) -> None:
    keys = sorted(rows)
    dim = len(next(iter(rows.values())))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{len(keys)} {dim}\n")
        for key in keys:
            vals = " ".join(f"{x:.6f}" for x in rows[key])
            fh.write(f"{key} {vals}\n")


def build_translation_rows():
    """p(generated | conditioning) rows for both directions.

    Dictionary pairs are peaked; every vocabulary word also appears under
    NULL so unaligned factors stay defined.
    """
    e_given_f: list[tuple[str, str, float]] = []
    f_given_e: list[tuple[str, str, float]] = []
    en_vocab: list[str] = []
    for k in range(N_STEMS):
        alt = (k + 1) % N_STEMS
        for prefix in _PREFIXES:
            en, fr = _en(prefix, k), _fr(prefix, k)
            en_vocab.append(en)
            # verbs keep a nominalization leak, so their primary mass is lower
            primary = 0.65 if prefix == "v" else 0.7
            f_given_e.append((en, fr, primary))
            f_given_e.append((en, _fr(prefix, alt), 0.2))
            f_given_e.append((en, "NULL", 0.1))
            e_given_f.append((fr, en, 0.75))
            e_given_f.append((fr, _en(prefix, alt), 0.15))
            e_given_f.append((fr, "NULL", 0.1))
        f_given_e.append((_en("v", k), _fr("n", k), 0.05))
    for en, fr in (("the", "le"), ("of", "de"), ("and", "et")):
        en_vocab.append(en)
        f_given_e.append((en, fr, 0.9))
        f_given_e.append((en, "NULL", 0.1))
        e_given_f.append((fr, en, 0.9))
        e_given_f.append((fr, "NULL", 0.1))
    # NULL rows: uniform leak over a fixed slice of the vocabulary
    null_targets_en = [w for w in en_vocab if w.endswith("0")][:40]
    for w in null_targets_en:
        e_given_f.append(("NULL", w, 0.8 / len(null_targets_en)))
        f_given_e.append(("NULL", w + "e", 0.8 / len(null_targets_en)))
    return e_given_f, f_given_e


def write_translation_table(path, rows) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for cond, gen, p in sorted(rows):
            fh.write(f"{cond}\t{gen}\t{p:.6f}\n")


def build_concept_rows():
    rows = []
    for k in range(N_STEMS):
        for prefix in _PREFIXES:
            rows.append(("relatedto", f"en/{_en(prefix, k)}", f"fr/{_fr(prefix, k)}"))
        # nominalization family: verb and noun share a derivation edge
        rows.append(("derivedfrom", f"en/{_en('v', k)}", f"fr/{_fr('n', k)}"))
        # grouped concept reachable from both specific nouns
        rows.append(("relatedto", f"en/{_en('n', k)}", f"fr/{_fr('g', k)}"))
    # idiom-level nodes for two-token equivalence segments
    for kv in range(N_STEMS):
        for kn in (kv, (kv + 1) % N_STEMS):
            en_node = f"en/{_en('v', kv)}_{_en('n', kn)}"
            fr_node = f"fr/{_fr('q', kv)}_{_fr('z', kn)}"
            rows.append(("relatedto", en_node, fr_node))
    return rows


def write_concepts(path, rows) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rel, a, b in sorted(rows):
            fh.write(f"{rel}\t{a}\t{b}\n")


MANUAL_LISTS_YAML = """\
pos_change_patterns:
  - "VERB -> NOUN"
  - "NOUN -> VERB"
  - "ADJ -> NOUN"
  - "ADJ NOUN -> NOUN"
  - "VERB -> NOUN NOUN"
filter_list:
  - the
  - of
  - and
  - le
  - de
  - et
content_tags: [ADJ, ADV, NOUN, PROPN, VERB]
category_map:
  NOUN: [NP]
  VERB: [VP]
  ADJ: [AP]
  ADV: [ADVP]
"""


def write_resource_files(out_dir, dim: int = 16, seed: int = 1) -> dict[str, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "embeddings": out / "embeddings.txt",
        "table_e_given_f": out / "table_e_given_f.tsv",
        "table_f_given_e": out / "table_f_given_e.tsv",
        "concepts": out / "concepts.tsv",
        "manual_lists": out / "manual_lists.yaml",
    }
    write_embeddings(paths["embeddings"], build_embedding_rows(dim, seed))
    e_given_f, f_given_e = build_translation_rows()
    write_translation_table(paths["table_e_given_f"], e_given_f)
    write_translation_table(paths["table_f_given_e"], f_given_e)
    write_concepts(paths["concepts"], build_concept_rows())
    paths["manual_lists"].write_text(MANUAL_LISTS_YAML, encoding="utf-8")
    return paths


def make_workspace(out_dir, census=None, seed: int = 0, dim: int = 16):
    """Write bundle.jsonl plus resource files; returns all paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    sentences = build_corpus(census, seed)
    bundle = out / "bundle.jsonl"
    serialize_bundle(sentences, bundle)
    paths = write_resource_files(out / "resources", dim=dim, seed=seed + 1)
    paths["bundle"] = bundle
    return paths
