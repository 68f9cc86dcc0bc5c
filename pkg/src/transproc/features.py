"""The eleven feature families computed for a phrase pair in context.

Features are grouped for ablation:

  PoS_tagging        f1 tag-count profiles + cosines, f2 POS-change patterns
  surface            f3 lengths, length ratios, Levenshtein distance
  syntactic_analysis f4 constituency correspondence, f5 dependency profiles
  external_resource  f6 embedding cosines, f7 concept linkage, f8 derivation
  word_alignment     f9 translation entropy, f10 lexical weighting, f11
                     probability gap + unaligned ratios

Extraction is a pure function of (pair, sentence, resources, config); the
emitted vector layout is fixed for a given resource set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .corpus import (
    DEP_RELATIONS, SRC_LANG, TGT_LANG, UPOS_TAGS,
    AnnotatedSentencePair, PhrasePair, Token,
)
from .resources import NULL_WORD, EmbeddingTable, ManualLists, ResourceSet

FEATURE_GROUPS = (
    "PoS_tagging", "surface", "syntactic_analysis", "external_resource",
    "word_alignment",
)

FAMILY_GROUP = {
    "f1": "PoS_tagging", "f2": "PoS_tagging",
    "f3": "surface",
    "f4": "syntactic_analysis", "f5": "syntactic_analysis",
    "f6": "external_resource", "f7": "external_resource", "f8": "external_resource",
    "f9": "word_alignment", "f10": "word_alignment", "f11": "word_alignment",
}

FAMILIES = tuple(FAMILY_GROUP)


@dataclass(frozen=True)
class FeatureConfig:
    """Switches for the underspecified corners of the feature definitions."""

    minimal_constituent: bool = True     # else the shallowest node on the same span
    f11_content_only: bool = False       # gap/unaligned sums over content words only


DEFAULT_FEATURE_CONFIG = FeatureConfig()


@dataclass(frozen=True)
class FeatureVector:
    names: tuple[str, ...]
    groups: tuple[str, ...]
    families: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        assert len(self.names) == len(self.groups) == len(self.families) == len(self.values)

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.names, self.values.tolist()))


class _Emitter:
    """Accumulates (name, value) pairs for one feature family."""

    def __init__(self):
        self.names: list[str] = []
        self.values: list[float] = []

    def emit(self, name: str, value: float) -> None:
        self.names.append(name)
        self.values.append(float(value))


# ---------------------------------------------------------------------------
# Segment views


@dataclass(frozen=True)
class SegmentView:
    """One side of a phrase pair with its derived views.

    If the segment has no content word the original segment stands in for
    the content view.
    """

    tokens: tuple[Token, ...]
    lang: str
    content_tags: frozenset[str]

    @property
    def surfaces(self) -> tuple[str, ...]:
        return tuple(t.surface for t in self.tokens)

    @property
    def lemmas(self) -> tuple[str, ...]:
        return tuple(t.lemma for t in self.tokens)

    @property
    def upos(self) -> tuple[str, ...]:
        return tuple(t.upos for t in self.tokens)

    @property
    def surface(self) -> str:
        return " ".join(self.surfaces)

    @property
    def content_tokens(self) -> tuple[Token, ...]:
        content = tuple(t for t in self.tokens if t.upos in self.content_tags)
        return content if content else self.tokens

    @property
    def has_content(self) -> bool:
        return any(t.upos in self.content_tags for t in self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)


def make_views(pair: PhrasePair, sent: AnnotatedSentencePair,
               lists: ManualLists) -> tuple[SegmentView, SegmentView]:
    src = SegmentView(tokens=sent.src_tokens[pair.src_span[0]:pair.src_span[1]],
                      lang=SRC_LANG, content_tags=lists.content_tags)
    tgt = SegmentView(tokens=sent.tgt_tokens[pair.tgt_span[0]:pair.tgt_span[1]],
                      lang=TGT_LANG, content_tags=lists.content_tags)
    return src, tgt


# ---------------------------------------------------------------------------
# Shared numeric helpers


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    na = float(np.linalg.norm(a))
    nb = float(np.linalg.norm(b))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(np.dot(a, b) / (na * nb))


def levenshtein(a: str, b: str) -> int:
    """Character-level edit distance (unit costs)."""
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    prev = np.arange(len(b) + 1)
    cur = np.empty(len(b) + 1, dtype=np.int64)
    bs = np.frombuffer(b.encode("utf-32-le"), dtype=np.uint32)
    for i, ch in enumerate(a, start=1):
        cur[0] = i
        sub = prev[:-1] + (bs != ord(ch))
        # delete cost from prev row is vectorizable; insert needs the scan
        np.minimum(sub, prev[1:] + 1, out=cur[1:])
        for j in range(1, len(b) + 1):
            if cur[j - 1] + 1 < cur[j]:
                cur[j] = cur[j - 1] + 1
        prev, cur = cur, prev
    return int(prev[-1])


def entropy(probs: Sequence[float]) -> float:
    """Natural-log entropy of a renormalized distribution."""
    total = float(sum(probs))
    if total <= 0.0:
        return 0.0
    h = 0.0
    for p in probs:
        # q can underflow to 0 for subnormal p; x ln x -> 0 there
        q = p / total
        if q > 0.0:
            h -= q * math.log(q)
    return h


# ---------------------------------------------------------------------------
# f1: POS tag profiles


def _pos_counts(tags: Iterable[str]) -> np.ndarray:
    counts = np.zeros(len(UPOS_TAGS))
    index = {t: i for i, t in enumerate(UPOS_TAGS)}
    for tag in tags:
        counts[index[tag]] += 1
    return counts


def f1_pos_profile(src: SegmentView, tgt: SegmentView) -> _Emitter:
    out = _Emitter()
    src_counts = _pos_counts(src.upos)
    tgt_counts = _pos_counts(tgt.upos)
    for tag, v in zip(UPOS_TAGS, src_counts):
        out.emit(f"pos_count_src_{tag}", v)
    for tag, v in zip(UPOS_TAGS, tgt_counts):
        out.emit(f"pos_count_tgt_{tag}", v)
    out.emit("pos_cosine_all", cosine(src_counts, tgt_counts))
    out.emit("pos_cosine_content",
             cosine(_pos_counts(t.upos for t in src.content_tokens),
                    _pos_counts(t.upos for t in tgt.content_tokens)))
    return out


# ---------------------------------------------------------------------------
# f2: POS-change patterns


def f2_pos_pattern(src: SegmentView, tgt: SegmentView, lists: ManualLists) -> _Emitter:
    out = _Emitter()
    matched = False
    for k, (pat_src, pat_tgt) in enumerate(lists.pos_change_patterns):
        fire = src.upos == pat_src and tgt.upos == pat_tgt
        matched = matched or fire
        out.emit(f"pos_pattern_{k}", 1.0 if fire else 0.0)
    out.emit("pos_pattern_none", 0.0 if matched else 1.0)
    return out


# ---------------------------------------------------------------------------
# f3: surface


def f3_surface(src: SegmentView, tgt: SegmentView) -> _Emitter:
    out = _Emitter()
    l_e, l_f = len(src), len(tgt)
    out.emit("len_src", l_e)
    out.emit("len_tgt", l_f)
    out.emit("len_ratio_src_tgt", l_e / l_f)
    out.emit("len_ratio_tgt_src", l_f / l_e)
    out.emit("levenshtein", levenshtein(src.surface, tgt.surface))
    return out


# ---------------------------------------------------------------------------
# f4: constituency correspondence


def covering_constituent(tree, span: tuple[int, int], minimal: bool = True) -> str:
    """Label of the smallest constituent covering ``span`` (root always
    covers, so a cover exists).  With ``minimal=False`` ties on span width
    resolve to the shallowest such node instead of the deepest."""
    best_label = tree.label
    best_width = tree.span[1] - tree.span[0]
    node = tree
    while True:
        candidates = [c for c in node.children
                      if c.span[0] <= span[0] and span[1] <= c.span[1]]
        if not candidates:
            return best_label
        node = candidates[0]
        width = node.span[1] - node.span[0]
        if width < best_width or (minimal and width == best_width):
            best_label = node.label
            best_width = width


def f4_constituency(pair: PhrasePair, sent: AnnotatedSentencePair,
                    lists: ManualLists,
                    config: FeatureConfig = DEFAULT_FEATURE_CONFIG) -> _Emitter:
    out = _Emitter()
    src_single = pair.src_len == 1
    tgt_single = pair.tgt_len == 1
    word_word = seg_seg = word_seg = 0.0
    if src_single and tgt_single:
        word_word = float(sent.src_tokens[pair.src_span[0]].upos
                          == sent.tgt_tokens[pair.tgt_span[0]].upos)
    elif not src_single and not tgt_single:
        src_label = covering_constituent(sent.src_tree, pair.src_span,
                                         config.minimal_constituent)
        tgt_label = covering_constituent(sent.tgt_tree, pair.tgt_span,
                                         config.minimal_constituent)
        seg_seg = float(src_label == tgt_label)
    else:
        if src_single:
            upos = sent.src_tokens[pair.src_span[0]].upos
            label = covering_constituent(sent.tgt_tree, pair.tgt_span,
                                         config.minimal_constituent)
        else:
            upos = sent.tgt_tokens[pair.tgt_span[0]].upos
            label = covering_constituent(sent.src_tree, pair.src_span,
                                         config.minimal_constituent)
        word_seg = float(lists.category_corresponds(upos, label))
    out.emit("const_word_word", word_word)
    out.emit("const_seg_seg", seg_seg)
    out.emit("const_word_seg", word_seg)
    return out


# ---------------------------------------------------------------------------
# f5: dependency profiles


def _relation_counts(arcs, keep: Callable[[int, int], bool]) -> np.ndarray:
    counts = np.zeros(len(DEP_RELATIONS))
    index = {r: i for i, r in enumerate(DEP_RELATIONS)}
    for arc in arcs:
        if keep(arc.head, arc.dependent):
            counts[index[arc.relation]] += 1
    return counts


def f5_dependency(pair: PhrasePair, sent: AnnotatedSentencePair) -> _Emitter:
    out = _Emitter()
    s0, s1 = pair.src_span
    t0, t1 = pair.tgt_span
    in_src = lambda i: s0 <= i < s1
    in_tgt = lambda j: t0 <= j < t1

    inside_src = _relation_counts(sent.src_deps, lambda h, d: in_src(h) and in_src(d))
    inside_tgt = _relation_counts(sent.tgt_deps, lambda h, d: in_tgt(h) and in_tgt(d))

    # context tokens connected by an arc to a span token
    src_ctx = {h if not in_src(h) else d
               for a in sent.src_deps
               for h, d in [(a.head, a.dependent)]
               if in_src(h) != in_src(d)}
    tgt_ctx = {h if not in_tgt(h) else d
               for a in sent.tgt_deps
               for h, d in [(a.head, a.dependent)]
               if in_tgt(h) != in_tgt(d)}

    # keep only context tokens aligned to a connected context token opposite
    kept_src = {c for c in src_ctx
                if any(l.src == c and l.tgt in tgt_ctx for l in sent.alignment)}
    kept_tgt = {c for c in tgt_ctx
                if any(l.tgt == c and l.src in src_ctx for l in sent.alignment)}

    outside_src = _relation_counts(
        sent.src_deps,
        lambda h, d: (in_src(h) and d in kept_src) or (in_src(d) and h in kept_src))
    outside_tgt = _relation_counts(
        sent.tgt_deps,
        lambda h, d: (in_tgt(h) and d in kept_tgt) or (in_tgt(d) and h in kept_tgt))

    for rel, v in zip(DEP_RELATIONS, inside_src):
        out.emit(f"dep_in_src_{rel}", v)
    for rel, v in zip(DEP_RELATIONS, inside_tgt):
        out.emit(f"dep_in_tgt_{rel}", v)
    for rel, v in zip(DEP_RELATIONS, outside_src):
        out.emit(f"dep_out_src_{rel}", v)
    for rel, v in zip(DEP_RELATIONS, outside_tgt):
        out.emit(f"dep_out_tgt_{rel}", v)
    return out


# ---------------------------------------------------------------------------
# f6: embedding similarity


def _segment_vector(words: Sequence[str], content_flags: Sequence[bool],
                    lang: str, emb: EmbeddingTable) -> np.ndarray | None:
    """Multi-word-expression embedding when the joined key exists, else the
    mean of content-word embeddings (misses skipped)."""
    joined = f"{lang}/{'_'.join(words)}"
    vec = emb.lookup(joined)
    if vec is not None:
        return vec
    content = [w for w, is_c in zip(words, content_flags) if is_c]
    if not content:
        content = list(words)
    found = [emb.lookup(f"{lang}/{w}") for w in content]
    found = [v for v in found if v is not None]
    if not found:
        return None
    return np.mean(found, axis=0)


def f6_embedding_similarity(src: SegmentView, tgt: SegmentView,
                            emb: EmbeddingTable) -> _Emitter:
    out = _Emitter()
    for form, words_of in (("surface", lambda v: v.surfaces),
                           ("lemma", lambda v: v.lemmas)):
        vecs = {}
        for side, view in (("src", src), ("tgt", tgt)):
            flags = [t.upos in view.content_tags for t in view.tokens]
            vecs[side] = _segment_vector(words_of(view), flags, view.lang, emb)
        if vecs["src"] is None or vecs["tgt"] is None:
            sim = 0.0
        else:
            sim = cosine(vecs["src"], vecs["tgt"])
        out.emit(f"emb_cosine_{form}", sim)
        out.emit(f"emb_miss_src_{form}", float(vecs["src"] is None))
        out.emit(f"emb_miss_tgt_{form}", float(vecs["tgt"] is None))
    return out


# ---------------------------------------------------------------------------
# f7: concept linkage


def _filtered(words: Sequence[str], lists: ManualLists) -> tuple[str, ...]:
    return tuple(w for w in words if w.lower() not in lists.filter_list)


def f7_concept_link(src: SegmentView, tgt: SegmentView, graph, lists: ManualLists) -> _Emitter:
    out = _Emitter()
    forms = {
        "surface": (src.surfaces, tgt.surfaces),
        "lemma": (src.lemmas, tgt.lemmas),
        "lemma_filtered": (_filtered(src.lemmas, lists), _filtered(tgt.lemmas, lists)),
    }
    for form, (src_words, tgt_words) in forms.items():
        direct = indirect = 0.0
        if src_words and tgt_words:
            en_node = f"{SRC_LANG}/{'_'.join(src_words)}".lower()
            fr_node = f"{TGT_LANG}/{'_'.join(tgt_words)}".lower()
            if graph.directly_linked(en_node, fr_node):
                direct = 1.0
            elif graph.indirectly_linked(en_node, fr_node):
                indirect = 1.0
        out.emit(f"concept_{form}_direct", direct)
        out.emit(f"concept_{form}_indirect", indirect)
        out.emit(f"concept_{form}_unlinked", float(not (direct or indirect)))
    return out


# ---------------------------------------------------------------------------
# f8: derivation ratio


def f8_derivation_ratio(src: SegmentView, tgt: SegmentView, graph,
                        lists: ManualLists) -> _Emitter:
    out = _Emitter()
    src_words = _filtered(src.lemmas, lists)
    tgt_words = _filtered(tgt.lemmas, lists)
    if not src_words or not tgt_words:
        out.emit("derivation_ratio", 0.0)
        out.emit("derivation_miss", 1.0)
        return out
    linked = 0
    for s in src_words:
        en_node = f"{SRC_LANG}/{s}".lower()
        if any(graph.derivation_linked(en_node, f"{TGT_LANG}/{t}".lower())
               for t in tgt_words):
            linked += 1
    out.emit("derivation_ratio", linked / len(src_words))
    out.emit("derivation_miss", 0.0)
    return out


# ---------------------------------------------------------------------------
# f9: translation entropy

# direction of the outgoing distribution for each side: an English word
# generates French words and vice versa
_SIDE_DIRECTION = {"src": "f_given_e", "tgt": "e_given_f"}


def f9_translation_entropy(src: SegmentView, tgt: SegmentView, table) -> _Emitter:
    out = _Emitter()
    for form, words_of in (("surface", lambda ts: [t.surface for t in ts]),
                           ("lemma", lambda ts: [t.lemma for t in ts])):
        for side, view in (("src", src), ("tgt", tgt)):
            direction = _SIDE_DIRECTION[side]
            entropies = []
            misses = 0
            for word in words_of(view.content_tokens):
                dist = table.distribution(direction, word.lower())
                if dist is None:
                    misses += 1
                    continue
                entropies.append(entropy(list(dist.values())))
            mean_h = sum(entropies) / len(entropies) if entropies else 0.0
            out.emit(f"entropy_{form}_{side}", mean_h)
            out.emit(f"entropy_miss_count_{form}_{side}", misses)
            out.emit(f"entropy_allmiss_{form}_{side}", float(not entropies))
    return out


# ---------------------------------------------------------------------------
# f10: bidirectional lexical weighting


def lexical_weight(words_a: Sequence[str], words_b: Sequence[str],
                   links: Sequence[tuple[int, int]], positions_a: Sequence[int],
                   direction: str, table) -> tuple[float, int]:
    """Mean-of-aligned-probabilities product for generating side-a words from
    side-b words under the links (indices local to the segments).

    ``positions_a`` selects which side-a words contribute a factor (the
    content restriction).  An entry missing from the table contributes 0 to
    its factor's sum.  An unaligned word contributes the NULL probability if
    stored; otherwise the factor is skipped and counted.  If every factor is
    skipped the weight is 0.
    """
    by_a: dict[int, list[int]] = {}
    for i, j in links:
        by_a.setdefault(i, []).append(j)
    weight = 1.0
    factors = 0
    unaligned = 0
    for i in positions_a:
        word_a = words_a[i]
        aligned = by_a.get(i)
        if aligned:
            total = 0.0
            for j in aligned:
                p, _hit = table.prob(direction, words_b[j], word_a)
                total += p
            weight *= total / len(aligned)
            factors += 1
        else:
            p_null, hit = table.prob(direction, NULL_WORD, word_a)
            if hit:
                weight *= p_null
                factors += 1
            else:
                unaligned += 1
    if factors == 0:
        return 0.0, unaligned
    return weight, unaligned


def f10_lexical_weighting(pair: PhrasePair, sent: AnnotatedSentencePair,
                          table, lists: ManualLists) -> _Emitter:
    out = _Emitter()
    s0, s1 = pair.src_span
    t0, t1 = pair.tgt_span
    links = [(l.src - s0, l.tgt - t0) for l in sent.alignment
             if s0 <= l.src < s1 and t0 <= l.tgt < t1]
    src_tokens = sent.src_tokens[s0:s1]
    tgt_tokens = sent.tgt_tokens[t0:t1]

    def content_positions(tokens) -> list[int]:
        pos = [i for i, t in enumerate(tokens) if t.upos in lists.content_tags]
        return pos if pos else list(range(len(tokens)))

    src_pos = content_positions(src_tokens)
    tgt_pos = content_positions(tgt_tokens)
    rev_links = [(j, i) for i, j in links]
    for form, word_of in (("surface", lambda t: t.surface.lower()),
                          ("lemma", lambda t: t.lemma.lower())):
        src_words = [word_of(t) for t in src_tokens]
        tgt_words = [word_of(t) for t in tgt_tokens]
        lex_sf, un_sf = lexical_weight(src_words, tgt_words, links, src_pos,
                                       "e_given_f", table)
        lex_ts, un_ts = lexical_weight(tgt_words, src_words, rev_links, tgt_pos,
                                       "f_given_e", table)
        out.emit(f"lex_src_given_tgt_{form}", lex_sf)
        out.emit(f"lex_tgt_given_src_{form}", lex_ts)
        out.emit(f"lex_unaligned_src_{form}", un_sf)
        out.emit(f"lex_unaligned_tgt_{form}", un_ts)
    return out


# ---------------------------------------------------------------------------
# f11: probability gap to the most probable translation


def _gap_one_direction(words_from: Sequence[str], words_to: Sequence[str],
                       direction: str, table) -> tuple[float, int]:
    gap = 0.0
    unaligned = 0
    for s in words_from:
        dist = table.distribution(direction, s)
        if dist is None:
            unaligned += 1
            continue
        p_h = max((dist.get(t, 0.0) for t in words_to), default=0.0)
        if p_h > 0.0:
            gap += max(dist.values()) - p_h
        else:
            unaligned += 1
    return gap, unaligned


def f11_probability_gap(pair: PhrasePair, sent: AnnotatedSentencePair, table,
                        lists: ManualLists,
                        config: FeatureConfig = DEFAULT_FEATURE_CONFIG) -> _Emitter:
    out = _Emitter()
    src_tokens = sent.src_tokens[pair.src_span[0]:pair.src_span[1]]
    tgt_tokens = sent.tgt_tokens[pair.tgt_span[0]:pair.tgt_span[1]]
    if config.f11_content_only:
        src_sel = [t for t in src_tokens if t.upos in lists.content_tags] or list(src_tokens)
        tgt_sel = [t for t in tgt_tokens if t.upos in lists.content_tags] or list(tgt_tokens)
    else:
        src_sel, tgt_sel = list(src_tokens), list(tgt_tokens)
    src_words = [t.surface.lower() for t in src_sel]
    tgt_words = [t.surface.lower() for t in tgt_sel]
    l_src, l_tgt = len(src_tokens), len(tgt_tokens)

    gap_s, un_s = _gap_one_direction(src_words, tgt_words, "f_given_e", table)
    gap_t, un_t = _gap_one_direction(tgt_words, src_words, "e_given_f", table)
    out.emit("gap_src", gap_s)
    out.emit("gap_unaligned_src_over_src", un_s / l_src)
    out.emit("gap_unaligned_src_over_tgt", un_s / l_tgt)
    out.emit("gap_tgt", gap_t)
    out.emit("gap_unaligned_tgt_over_tgt", un_t / l_tgt)
    out.emit("gap_unaligned_tgt_over_src", un_t / l_src)
    return out


# ---------------------------------------------------------------------------
# Assembly


def _family_runs(pair: PhrasePair, sent: AnnotatedSentencePair, res: ResourceSet,
                 config: FeatureConfig) -> list[tuple[str, _Emitter]]:
    src, tgt = make_views(pair, sent, res.manual_lists)
    return [
        ("f1", f1_pos_profile(src, tgt)),
        ("f2", f2_pos_pattern(src, tgt, res.manual_lists)),
        ("f3", f3_surface(src, tgt)),
        ("f4", f4_constituency(pair, sent, res.manual_lists, config)),
        ("f5", f5_dependency(pair, sent)),
        ("f6", f6_embedding_similarity(src, tgt, res.embeddings)),
        ("f7", f7_concept_link(src, tgt, res.concept_graph, res.manual_lists)),
        ("f8", f8_derivation_ratio(src, tgt, res.concept_graph, res.manual_lists)),
        ("f9", f9_translation_entropy(src, tgt, res.trans_table)),
        ("f10", f10_lexical_weighting(pair, sent, res.trans_table, res.manual_lists)),
        ("f11", f11_probability_gap(pair, sent, res.trans_table, res.manual_lists, config)),
    ]


def _normalize_mask(groups: Iterable[str] | None,
                    families: Iterable[str] | None) -> tuple[frozenset, frozenset]:
    g = frozenset(groups) if groups is not None else frozenset(FEATURE_GROUPS)
    fam = frozenset(families) if families is not None else frozenset(FAMILIES)
    unknown_g = g - frozenset(FEATURE_GROUPS)
    unknown_f = fam - frozenset(FAMILIES)
    if unknown_g:
        raise ValueError(f"unknown feature groups: {sorted(unknown_g)}")
    if unknown_f:
        raise ValueError(f"unknown feature families: {sorted(unknown_f)}")
    return g, fam


def assemble(pair: PhrasePair, sent: AnnotatedSentencePair, res: ResourceSet,
             groups: Iterable[str] | None = None,
             families: Iterable[str] | None = None,
             config: FeatureConfig = DEFAULT_FEATURE_CONFIG) -> FeatureVector:
    """Concatenate features f1..f11 in fixed order with group tags.

    ``groups``/``families`` act as an inclusion mask for ablation; masked
    entries are dropped from the vector (not zeroed).
    """
    keep_groups, keep_families = _normalize_mask(groups, families)
    names: list[str] = []
    out_groups: list[str] = []
    out_families: list[str] = []
    values: list[float] = []
    for family, emitter in _family_runs(pair, sent, res, config):
        group = FAMILY_GROUP[family]
        if group not in keep_groups or family not in keep_families:
            continue
        for name, value in zip(emitter.names, emitter.values):
            names.append(f"{family}.{name}")
            out_groups.append(group)
            out_families.append(family)
            values.append(value)
    return FeatureVector(names=tuple(names), groups=tuple(out_groups),
                         families=tuple(out_families),
                         values=np.array(values, dtype=np.float64))


def extract_matrix(units: Sequence[tuple[AnnotatedSentencePair, PhrasePair]],
                   res: ResourceSet,
                   groups: Iterable[str] | None = None,
                   families: Iterable[str] | None = None,
                   config: FeatureConfig = DEFAULT_FEATURE_CONFIG,
                   ) -> tuple[np.ndarray, FeatureVector | None]:
    """Extract the feature matrix for a corpus slice in input order.

    Returns the (n, d) matrix and one reference vector carrying the layout
    (None when ``units`` is empty).
    """
    rows = []
    ref: FeatureVector | None = None
    for sent, pair in units:
        fv = assemble(pair, sent, res, groups, families, config)
        if ref is None:
            ref = fv
        elif fv.names != ref.names:
            raise RuntimeError("feature layout drifted between phrase pairs")
        rows.append(fv.values)
    if not rows:
        return np.zeros((0, 0)), None
    return np.vstack(rows), ref


def write_feature_matrix(path, units, matrix: np.ndarray, ref: FeatureVector,
                         labels: Sequence[str],
                         meta_lines: Sequence[str] = ()) -> None:
    """Export the matrix as TSV: id, label, then ``name|group`` columns.
    ``meta_lines`` are written first as ``#``-prefixed comments."""
    with open(path, "w", encoding="utf-8") as fh:
        for line in meta_lines:
            fh.write(f"# {line}\n")
        header = ["pair_id", "label"] + [f"{n}|{g}" for n, g in zip(ref.names, ref.groups)]
        fh.write("\t".join(header) + "\n")
        for (sent, pair), row, label in zip(units, matrix, labels):
            pid = (f"{sent.id}:{pair.src_span[0]}-{pair.src_span[1]}"
                   f":{pair.tgt_span[0]}-{pair.tgt_span[1]}")
            fh.write("\t".join([pid, label] + [repr(v) for v in row.tolist()]) + "\n")
