"""Data model and IO for annotated bilingual sentence pairs.

A corpus is stored as an annotation bundle: line-delimited JSON, one sentence
pair per line, carrying tokens (surface/lemma/upos), dependency arcs,
constituency trees, word alignment links and labeled phrase spans.  Everything
is validated on load; loaded objects are immutable.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping, Sequence

FORMAT_VERSION = 1

SRC_LANG = "en"
TGT_LANG = "fr"

# Compact universal POS inventory (12 tags).  PROPN is kept separate from NOUN
# because the content-word set distinguishes it.
UPOS_TAGS = (
    "ADJ", "ADP", "ADV", "CONJ", "DET", "NOUN",
    "NUM", "PRON", "PROPN", "PUNCT", "VERB", "X",
)
UPOS_SET = frozenset(UPOS_TAGS)

# Compact unified dependency relation inventory.
DEP_RELATIONS = (
    "root", "nsubj", "obj", "iobj", "obl", "nmod", "amod", "advmod",
    "det", "case", "mark", "cc", "conj", "cop", "aux", "xcomp", "ccomp",
    "acl", "advcl", "appos", "nummod", "compound", "fixed", "flat",
    "expl", "punct", "dep",
)
DEP_SET = frozenset(DEP_RELATIONS)

RAW_LABELS = (
    "Literal", "Equivalence", "Generalization", "Particularization",
    "Modulation", "Transposition", "Mod+Trans",
)


class BundleError(ValueError):
    """Malformed or invariant-violating annotation bundle content."""

    def __init__(self, message: str, record: int | None = None,
                 sentence_id: str | None = None, fieldname: str | None = None):
        self.record = record
        self.sentence_id = sentence_id
        self.fieldname = fieldname
        where = []
        if record is not None:
            where.append(f"record {record}")
        if sentence_id is not None:
            where.append(f"sentence {sentence_id!r}")
        if fieldname is not None:
            where.append(f"field {fieldname!r}")
        prefix = " / ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)


class ProcessLabel(Enum):
    """The six classification categories (two raw labels are merged)."""

    LITERAL = "Literal"
    EQUIVALENCE = "Equivalence"
    GENERALIZATION = "Generalization"
    PARTICULARIZATION = "Particularization"
    MODULATION = "Modulation"
    CONTAIN_TRANSPOSITION = "Contain_Transposition"


_LABEL_MAP = {
    "Literal": ProcessLabel.LITERAL,
    "Equivalence": ProcessLabel.EQUIVALENCE,
    "Generalization": ProcessLabel.GENERALIZATION,
    "Particularization": ProcessLabel.PARTICULARIZATION,
    "Modulation": ProcessLabel.MODULATION,
    "Transposition": ProcessLabel.CONTAIN_TRANSPOSITION,
    "Mod+Trans": ProcessLabel.CONTAIN_TRANSPOSITION,
}


def map_label(raw: str) -> ProcessLabel:
    """Map one of the seven raw annotation categories to its class label."""
    try:
        return _LABEL_MAP[raw]
    except KeyError:
        raise BundleError(f"unknown raw label {raw!r}; expected one of {RAW_LABELS}")


@dataclass(frozen=True)
class Token:
    index: int
    surface: str
    lemma: str
    upos: str


@dataclass(frozen=True)
class DependencyArc:
    head: int
    dependent: int
    relation: str


@dataclass(frozen=True)
class ConstituencyNode:
    label: str
    span: tuple[int, int]
    children: tuple["ConstituencyNode", ...] = ()

    def iter_nodes(self) -> Iterable["ConstituencyNode"]:
        yield self
        for child in self.children:
            yield from child.iter_nodes()


@dataclass(frozen=True)
class AlignmentLink:
    src: int
    tgt: int


@dataclass(frozen=True)
class PhrasePair:
    """One labeled source/target span pair, the classification unit."""

    src_span: tuple[int, int]
    tgt_span: tuple[int, int]
    raw_label: str
    label: ProcessLabel

    @property
    def src_len(self) -> int:
        return self.src_span[1] - self.src_span[0]

    @property
    def tgt_len(self) -> int:
        return self.tgt_span[1] - self.tgt_span[0]


@dataclass(frozen=True)
class AnnotatedSentencePair:
    id: str
    src_tokens: tuple[Token, ...]
    tgt_tokens: tuple[Token, ...]
    src_deps: tuple[DependencyArc, ...]
    tgt_deps: tuple[DependencyArc, ...]
    src_tree: ConstituencyNode
    tgt_tree: ConstituencyNode
    alignment: tuple[AlignmentLink, ...]
    phrase_pairs: tuple[PhrasePair, ...]
    meta: Mapping[str, object] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# Bundle loading / serialization


def _check_tokens(raw: object, side: str, record: int, sid: str) -> tuple[Token, ...]:
    if not isinstance(raw, list) or not raw:
        raise BundleError("token array missing or empty", record, sid, f"{side}.tokens")
    tokens = []
    for i, t in enumerate(raw):
        try:
            surface, lemma, upos = t["surface"], t["lemma"], t["upos"]
        except (TypeError, KeyError) as exc:
            raise BundleError(f"token {i} missing key {exc}", record, sid, f"{side}.tokens")
        if upos not in UPOS_SET:
            raise BundleError(f"unknown POS label {upos!r} on token {i}",
                              record, sid, f"{side}.tokens")
        tokens.append(Token(index=i, surface=str(surface), lemma=str(lemma), upos=upos))
    return tuple(tokens)


def _check_deps(raw: object, n: int, side: str, record: int, sid: str) -> tuple[DependencyArc, ...]:
    if raw is None:
        return ()
    arcs = []
    for i, a in enumerate(raw):
        try:
            head, dep, rel = int(a["head"]), int(a["dependent"]), a["relation"]
        except (TypeError, KeyError, ValueError) as exc:
            raise BundleError(f"arc {i} malformed ({exc})", record, sid, f"{side}.deps")
        if rel not in DEP_SET:
            raise BundleError(f"unknown dependency label {rel!r} on arc {i}",
                              record, sid, f"{side}.deps")
        if head == dep:
            raise BundleError(f"arc {i} is a self loop", record, sid, f"{side}.deps")
        if not (0 <= head < n and 0 <= dep < n):
            raise BundleError(f"arc {i} index out of range (n={n})",
                              record, sid, f"{side}.deps")
        arcs.append(DependencyArc(head=head, dependent=dep, relation=rel))
    return tuple(arcs)


def _check_tree(raw: object, n: int, side: str, record: int, sid: str) -> ConstituencyNode:
    def build(node: object, path: str) -> ConstituencyNode:
        try:
            label = node["label"]
            start, end = int(node["span"][0]), int(node["span"][1])
            children = node.get("children", [])
        except (TypeError, KeyError, IndexError, ValueError) as exc:
            raise BundleError(f"tree node {path} malformed ({exc})",
                              record, sid, f"{side}.tree")
        if not (0 <= start < end <= n):
            raise BundleError(f"tree node {path} span [{start},{end}) out of range",
                              record, sid, f"{side}.tree")
        built = tuple(build(c, f"{path}.{k}") for k, c in enumerate(children))
        if built:
            # children must tile the parent span in order
            cursor = start
            for k, c in enumerate(built):
                if c.span[0] != cursor:
                    raise BundleError(
                        f"tree node {path} children do not tile parent span "
                        f"(child {k} starts at {c.span[0]}, expected {cursor})",
                        record, sid, f"{side}.tree")
                cursor = c.span[1]
            if cursor != end:
                raise BundleError(
                    f"tree node {path} children end at {cursor}, parent ends at {end}",
                    record, sid, f"{side}.tree")
        elif end - start != 1:
            raise BundleError(f"tree leaf {path} spans {end - start} tokens",
                              record, sid, f"{side}.tree")
        return ConstituencyNode(label=str(label), span=(start, end), children=built)

    root = build(raw, "root")
    if root.span != (0, n):
        raise BundleError(f"tree root spans {root.span}, sentence has {n} tokens",
                          record, sid, f"{side}.tree")
    return root


def _check_alignment(raw: object, ns: int, nt: int, record: int, sid: str) -> tuple[AlignmentLink, ...]:
    if raw is None:
        return ()
    seen = set()
    links = []
    for i, pair in enumerate(raw):
        try:
            s, t = int(pair[0]), int(pair[1])
        except (TypeError, IndexError, ValueError) as exc:
            raise BundleError(f"alignment link {i} malformed ({exc})", record, sid, "alignment")
        if not (0 <= s < ns and 0 <= t < nt):
            raise BundleError(f"alignment link {i} = ({s},{t}) out of range",
                              record, sid, "alignment")
        if (s, t) in seen:
            raise BundleError(f"duplicate alignment link ({s},{t})", record, sid, "alignment")
        seen.add((s, t))
        links.append(AlignmentLink(src=s, tgt=t))
    return tuple(links)


def _check_pairs(raw: object, ns: int, nt: int, record: int, sid: str) -> tuple[PhrasePair, ...]:
    if raw is None:
        return ()
    pairs = []
    for i, p in enumerate(raw):
        try:
            ss = (int(p["src_span"][0]), int(p["src_span"][1]))
            ts = (int(p["tgt_span"][0]), int(p["tgt_span"][1]))
            raw_label = p["raw_label"]
        except (TypeError, KeyError, IndexError, ValueError) as exc:
            raise BundleError(f"phrase pair {i} malformed ({exc})",
                              record, sid, "phrase_pairs")
        if not (0 <= ss[0] < ss[1] <= ns):
            raise BundleError(f"phrase pair {i} src span {ss} out of range (n={ns})",
                              record, sid, "phrase_pairs")
        if not (0 <= ts[0] < ts[1] <= nt):
            raise BundleError(f"phrase pair {i} tgt span {ts} out of range (n={nt})",
                              record, sid, "phrase_pairs")
        if raw_label not in _LABEL_MAP:
            raise BundleError(f"phrase pair {i}: unknown raw label {raw_label!r}",
                              record, sid, "phrase_pairs")
        pairs.append(PhrasePair(src_span=ss, tgt_span=ts, raw_label=raw_label,
                                label=map_label(raw_label)))
    return tuple(pairs)


def sentence_from_record(rec: Mapping[str, object], record: int = 0) -> AnnotatedSentencePair:
    """Validate one decoded bundle record and build the sentence pair."""
    if rec.get("format_version") != FORMAT_VERSION:
        raise BundleError(f"unsupported format_version {rec.get('format_version')!r}",
                          record, fieldname="format_version")
    sid = rec.get("id")
    if not isinstance(sid, str) or not sid:
        raise BundleError("missing or empty sentence id", record, fieldname="id")
    try:
        src, tgt = rec["src"], rec["tgt"]
    except KeyError as exc:
        raise BundleError(f"missing side {exc}", record, sid)
    src_tokens = _check_tokens(src.get("tokens"), "src", record, sid)
    tgt_tokens = _check_tokens(tgt.get("tokens"), "tgt", record, sid)
    ns, nt = len(src_tokens), len(tgt_tokens)
    return AnnotatedSentencePair(
        id=sid,
        src_tokens=src_tokens,
        tgt_tokens=tgt_tokens,
        src_deps=_check_deps(src.get("deps"), ns, "src", record, sid),
        tgt_deps=_check_deps(tgt.get("deps"), nt, "tgt", record, sid),
        src_tree=_check_tree(src.get("tree"), ns, "src", record, sid),
        tgt_tree=_check_tree(tgt.get("tree"), nt, "tgt", record, sid),
        alignment=_check_alignment(rec.get("alignment"), ns, nt, record, sid),
        phrase_pairs=_check_pairs(rec.get("phrase_pairs"), ns, nt, record, sid),
        meta=dict(rec.get("meta", {})),
    )


def load_bundle(path: str | Path) -> list[AnnotatedSentencePair]:
    """Load and validate an annotation bundle (one JSON record per line)."""
    sentences: list[AnnotatedSentencePair] = []
    seen_ids: set[str] = set()
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise BundleError(f"invalid JSON ({exc})", record=lineno)
            sent = sentence_from_record(rec, record=lineno)
            if sent.id in seen_ids:
                raise BundleError("duplicate sentence id", lineno, sent.id, "id")
            seen_ids.add(sent.id)
            sentences.append(sent)
    return sentences


def _tree_to_record(node: ConstituencyNode) -> dict:
    rec = {"label": node.label, "span": list(node.span)}
    if node.children:
        rec["children"] = [_tree_to_record(c) for c in node.children]
    return rec


def sentence_to_record(sent: AnnotatedSentencePair) -> dict:
    rec = {
        "format_version": FORMAT_VERSION,
        "id": sent.id,
        "src": {
            "tokens": [{"surface": t.surface, "lemma": t.lemma, "upos": t.upos}
                       for t in sent.src_tokens],
            "deps": [{"head": a.head, "dependent": a.dependent, "relation": a.relation}
                     for a in sent.src_deps],
            "tree": _tree_to_record(sent.src_tree),
        },
        "tgt": {
            "tokens": [{"surface": t.surface, "lemma": t.lemma, "upos": t.upos}
                       for t in sent.tgt_tokens],
            "deps": [{"head": a.head, "dependent": a.dependent, "relation": a.relation}
                     for a in sent.tgt_deps],
            "tree": _tree_to_record(sent.tgt_tree),
        },
        "alignment": [[l.src, l.tgt] for l in sent.alignment],
        "phrase_pairs": [{"src_span": list(p.src_span), "tgt_span": list(p.tgt_span),
                          "raw_label": p.raw_label} for p in sent.phrase_pairs],
    }
    if sent.meta:
        rec["meta"] = dict(sent.meta)
    return rec


def serialize_bundle(sentences: Sequence[AnnotatedSentencePair], path: str | Path) -> None:
    """Write a bundle file; ``load_bundle`` round-trips it exactly."""
    with open(path, "w", encoding="utf-8") as fh:
        for sent in sentences:
            fh.write(json.dumps(sentence_to_record(sent), ensure_ascii=False,
                                sort_keys=True))
            fh.write("\n")


# ---------------------------------------------------------------------------
# Normalization

_EN_DIGITS = {"0": "zero", "1": "one", "2": "two", "3": "three", "4": "four",
              "5": "five", "6": "six", "7": "seven", "8": "eight", "9": "nine"}
_FR_DIGITS = {"0": "zéro", "1": "un", "2": "deux", "3": "trois", "4": "quatre",
              "5": "cinq", "6": "six", "7": "sept", "8": "huit", "9": "neuf"}

_EN_CLITICS = {
    "'re": ("are",), "'m": ("am",), "'ve": ("have",), "'ll": ("will",),
    "'d": ("would",), "'s": ("is",), "n't": ("not",), "'em": ("them",),
}
_FR_CLITICS = {
    "j'": ("je",), "l'": ("le",), "d'": ("de",), "c'": ("ce",), "n'": ("ne",),
    "qu'": ("que",), "s'": ("se",), "t'": ("te",), "m'": ("me",),
    # portmanteau forms expand to two tokens
    "au": ("à", "le"), "aux": ("à", "les"), "du": ("de", "le"),
}


@dataclass(frozen=True)
class NormalizationRules:
    """Clitic map, digit-to-letter map and lowercasing flag for one language."""

    clitics: Mapping[str, tuple[str, ...]]
    digit_words: Mapping[str, str]
    lowercase: bool = True


DEFAULT_EN_RULES = NormalizationRules(clitics=_EN_CLITICS, digit_words=_EN_DIGITS)
DEFAULT_FR_RULES = NormalizationRules(clitics=_FR_CLITICS, digit_words=_FR_DIGITS)
LOWERCASE_ONLY_RULES = NormalizationRules(clitics={}, digit_words={})


def _expand_digits(text: str, digit_words: Mapping[str, str]) -> str:
    if not any(ch in digit_words for ch in text):
        return text
    parts: list[str] = []
    buf = ""
    for ch in text:
        if ch in digit_words:
            if buf:
                parts.append(buf)
                buf = ""
            parts.append(digit_words[ch])
        else:
            buf += ch
    if buf:
        parts.append(buf)
    return " ".join(parts)


def normalize_tokens(tokens: Sequence[Token], rules: NormalizationRules,
                     ) -> tuple[tuple[Token, ...], list[list[int]]]:
    """Normalize token surfaces.

    Returns the new token sequence and the index map old -> list of new
    indices (clitic expansion is the only way the sequence can grow; digit
    words are joined inside the token they replace).
    """
    out: list[Token] = []
    index_map: list[list[int]] = []
    for tok in tokens:
        surface = tok.surface.lower() if rules.lowercase else tok.surface
        lemma = tok.lemma.lower() if rules.lowercase else tok.lemma
        pieces = rules.clitics.get(surface)
        new_indices: list[int] = []
        if pieces is None:
            surface = _expand_digits(surface, rules.digit_words)
            lemma = _expand_digits(lemma, rules.digit_words)
            new_indices.append(len(out))
            out.append(Token(index=len(out), surface=surface, lemma=lemma, upos=tok.upos))
        else:
            for piece in pieces:
                new_indices.append(len(out))
                out.append(Token(index=len(out), surface=piece, lemma=piece, upos=tok.upos))
        index_map.append(new_indices)
    return tuple(out), index_map


def _remap_span(span: tuple[int, int], index_map: list[list[int]]) -> tuple[int, int]:
    return (index_map[span[0]][0], index_map[span[1] - 1][-1] + 1)


def _remap_tree(node: ConstituencyNode, index_map: list[list[int]]) -> ConstituencyNode:
    span = _remap_span(node.span, index_map)
    if not node.children:
        if span[1] - span[0] == 1:
            return ConstituencyNode(label=node.label, span=span)
        # an expanded leaf grows children so leaves stay single tokens
        kids = tuple(ConstituencyNode(label=node.label, span=(i, i + 1))
                     for i in range(span[0], span[1]))
        return ConstituencyNode(label=node.label, span=span, children=kids)
    return ConstituencyNode(label=node.label, span=span,
                            children=tuple(_remap_tree(c, index_map) for c in node.children))


def normalize_sentence(sent: AnnotatedSentencePair,
                       src_rules: NormalizationRules = DEFAULT_EN_RULES,
                       tgt_rules: NormalizationRules = DEFAULT_FR_RULES,
                       ) -> AnnotatedSentencePair:
    """Apply normalization to both sides, remapping spans, arcs and links.

    Expanded tokens inherit the alignment links and span membership of the
    token they came from; dependency endpoints move to the first piece.
    """
    src_tokens, src_map = normalize_tokens(sent.src_tokens, src_rules)
    tgt_tokens, tgt_map = normalize_tokens(sent.tgt_tokens, tgt_rules)

    links: list[AlignmentLink] = []
    seen: set[tuple[int, int]] = set()
    for link in sent.alignment:
        for s in src_map[link.src]:
            for t in tgt_map[link.tgt]:
                if (s, t) not in seen:
                    seen.add((s, t))
                    links.append(AlignmentLink(src=s, tgt=t))

    return AnnotatedSentencePair(
        id=sent.id,
        src_tokens=src_tokens,
        tgt_tokens=tgt_tokens,
        src_deps=tuple(DependencyArc(head=src_map[a.head][0],
                                     dependent=src_map[a.dependent][0],
                                     relation=a.relation) for a in sent.src_deps),
        tgt_deps=tuple(DependencyArc(head=tgt_map[a.head][0],
                                     dependent=tgt_map[a.dependent][0],
                                     relation=a.relation) for a in sent.tgt_deps),
        src_tree=_remap_tree(sent.src_tree, src_map),
        tgt_tree=_remap_tree(sent.tgt_tree, tgt_map),
        alignment=tuple(links),
        phrase_pairs=tuple(PhrasePair(src_span=_remap_span(p.src_span, src_map),
                                      tgt_span=_remap_span(p.tgt_span, tgt_map),
                                      raw_label=p.raw_label, label=p.label)
                           for p in sent.phrase_pairs),
        meta=sent.meta,
    )


def normalize_corpus(sentences: Sequence[AnnotatedSentencePair],
                     src_rules: NormalizationRules = DEFAULT_EN_RULES,
                     tgt_rules: NormalizationRules = DEFAULT_FR_RULES,
                     ) -> list[AnnotatedSentencePair]:
    return [normalize_sentence(s, src_rules, tgt_rules) for s in sentences]


# ---------------------------------------------------------------------------
# Census


def class_census(pairs: Iterable[PhrasePair]) -> dict[ProcessLabel, int]:
    """Exact per-label counts; every label key is present."""
    counts = Counter(p.label for p in pairs)
    return {label: counts.get(label, 0) for label in ProcessLabel}


def raw_census(pairs: Iterable[PhrasePair]) -> dict[str, int]:
    counts = Counter(p.raw_label for p in pairs)
    return {raw: counts.get(raw, 0) for raw in RAW_LABELS}


def all_phrase_pairs(sentences: Iterable[AnnotatedSentencePair]
                     ) -> list[tuple[AnnotatedSentencePair, PhrasePair]]:
    """Flatten a corpus into (sentence, pair) units in corpus order."""
    return [(sent, pair) for sent in sentences for pair in sent.phrase_pairs]
