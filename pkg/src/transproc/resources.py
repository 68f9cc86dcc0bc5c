"""Immutable lexical resources: embeddings, translation tables, concept graph
and the manual lists (POS-change patterns, filter list, content tags, word-tag
to phrase-tag map).

All loaders validate on read and the resulting objects are read-only, so they
can be shared across feature-extraction workers.
"""

from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np
import yaml

log = logging.getLogger(__name__)

CONTENT_TAGS = frozenset({"ADJ", "ADV", "NOUN", "PROPN", "VERB"})
NULL_WORD = "NULL"

MASS_EPSILON = 1e-6


class ResourceError(ValueError):
    """Malformed resource file content."""


def _normalize_key(key: str) -> str:
    return key.lower()


class EmbeddingTable:
    """Dense vectors keyed by language-prefixed word or multi-word expression.

    Keys are lowercased at load; multi-word keys use an underscore joiner
    (e.g. ``en/big_enough``).  Lookup of an absent key returns ``None``,
    never a default vector.
    """

    def __init__(self, vectors: Mapping[str, np.ndarray], dim: int):
        if dim <= 0:
            raise ResourceError(f"embedding dimension must be positive, got {dim}")
        self._vectors = {k: np.asarray(v, dtype=np.float64) for k, v in vectors.items()}
        self.dim = dim
        for k, v in self._vectors.items():
            if v.shape != (dim,):
                raise ResourceError(f"vector for {k!r} has shape {v.shape}, expected ({dim},)")

    def __len__(self) -> int:
        return len(self._vectors)

    def __contains__(self, key: str) -> bool:
        return _normalize_key(key) in self._vectors

    def lookup(self, key: str) -> np.ndarray | None:
        return self._vectors.get(_normalize_key(key))

    def keys(self) -> Iterable[str]:
        return self._vectors.keys()

    def mean_vector(self) -> np.ndarray:
        if not self._vectors:
            return np.zeros(self.dim)
        return np.mean(list(self._vectors.values()), axis=0)


def load_embeddings(path: str | Path) -> EmbeddingTable:
    """Load a word2vec-style text file: header ``count dim``, then one key
    plus ``dim`` reals per line.  Duplicate keys keep the last value (warned).
    """
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise ResourceError(f"{path}: header must be 'count dim', got {header!r}")
        try:
            count, dim = int(header[0]), int(header[1])
        except ValueError:
            raise ResourceError(f"{path}: unparseable header {header!r}")
        vectors: dict[str, np.ndarray] = {}
        for lineno, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            parts = line.rstrip("\n").split(" ")
            key, vals = parts[0], parts[1:]
            if len(vals) != dim:
                raise ResourceError(
                    f"{path}:{lineno}: {len(vals)} values for key {key!r}, expected {dim}")
            try:
                vec = np.array([float(v) for v in vals], dtype=np.float64)
            except ValueError as exc:
                raise ResourceError(f"{path}:{lineno}: unparseable real ({exc})")
            nkey = _normalize_key(key)
            if nkey in vectors:
                log.warning("%s:%d: duplicate embedding key %r, last one wins",
                            path, lineno, nkey)
            vectors[nkey] = vec
    if len(vectors) != count:
        log.warning("%s: header announced %d vectors, loaded %d", path, count, len(vectors))
    return EmbeddingTable(vectors, dim)


class TranslationProbTable:
    """Directional lexical translation probabilities w(e|f) and w(f|e).

    A missing lookup returns probability 0 with a miss marker, so feature
    code can choose skip-vs-zero semantics.
    """

    def __init__(self, e_given_f: Mapping[str, Mapping[str, float]],
                 f_given_e: Mapping[str, Mapping[str, float]]):
        self._tables = {
            "e_given_f": {k: dict(v) for k, v in e_given_f.items()},
            "f_given_e": {k: dict(v) for k, v in f_given_e.items()},
        }
        for name, table in self._tables.items():
            for cond, dist in table.items():
                mass = sum(dist.values())
                if mass > 1.0 + MASS_EPSILON:
                    raise ResourceError(
                        f"{name}: probabilities for conditioning word {cond!r} "
                        f"sum to {mass:.8f} > 1")

    def prob(self, direction: str, conditioning: str, generated: str) -> tuple[float, bool]:
        """Return (probability, hit).  A miss is (0.0, False)."""
        dist = self._tables[direction].get(conditioning)
        if dist is None:
            return 0.0, False
        p = dist.get(generated)
        if p is None:
            return 0.0, False
        return p, True

    def distribution(self, direction: str, conditioning: str) -> Mapping[str, float] | None:
        return self._tables[direction].get(conditioning)

    def n_conditioning(self, direction: str) -> int:
        return len(self._tables[direction])


def _table_key(key: str) -> str:
    # the NULL sentinel must survive normalization or stored NULL rows
    # become unreachable to lookups against NULL_WORD
    return key if key == NULL_WORD else _normalize_key(key)


def _read_prob_rows(path: str | Path) -> dict[str, dict[str, float]]:
    table: dict[str, dict[str, float]] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            parts = line.rstrip("\n").split("\t")
            if len(parts) != 3:
                raise ResourceError(f"{path}:{lineno}: expected 3 tab-separated fields, "
                                    f"got {len(parts)}")
            cond, gen, raw_p = parts
            try:
                p = float(raw_p)
            except ValueError:
                raise ResourceError(f"{path}:{lineno}: unparseable probability {raw_p!r}")
            if not (0.0 <= p <= 1.0):
                raise ResourceError(f"{path}:{lineno}: probability {p} outside [0,1]")
            table.setdefault(_table_key(cond), {})[_table_key(gen)] = p
    return table


def load_translation_table(path_e_given_f: str | Path,
                           path_f_given_e: str | Path) -> TranslationProbTable:
    """Load the two directional TSV files (conditioning, generated, prob)."""
    return TranslationProbTable(
        e_given_f=_read_prob_rows(path_e_given_f),
        f_given_e=_read_prob_rows(path_f_given_e),
    )


@dataclass(frozen=True)
class Assertion:
    relation: str
    start: str
    end: str


class ConceptGraph:
    """Indexed assertion set over language-prefixed nodes.

    Adjacency is symmetric for lookup purposes; assertion direction is kept
    in the records.  A configurable relation subset counts as derivation.
    """

    def __init__(self, assertions: Iterable[Assertion],
                 derivation_relations: Iterable[str] = ("DerivedFrom",)):
        # relation names match case-insensitively across resource variants
        self.derivation_relations = frozenset(r.lower() for r in derivation_relations)
        self._assertions: set[Assertion] = set()
        self._neighbors: dict[str, set[str]] = {}
        self._deriv_neighbors: dict[str, set[str]] = {}
        for a in assertions:
            if a in self._assertions:
                continue
            self._assertions.add(a)
            self._neighbors.setdefault(a.start, set()).add(a.end)
            self._neighbors.setdefault(a.end, set()).add(a.start)
            if a.relation.lower() in self.derivation_relations:
                self._deriv_neighbors.setdefault(a.start, set()).add(a.end)
                self._deriv_neighbors.setdefault(a.end, set()).add(a.start)

    def __len__(self) -> int:
        return len(self._assertions)

    def neighbors(self, node: str) -> frozenset[str]:
        return frozenset(self._neighbors.get(node, ()))

    def derivation_neighbors(self, node: str) -> frozenset[str]:
        return frozenset(self._deriv_neighbors.get(node, ()))

    def directly_linked(self, a: str, b: str) -> bool:
        return b in self._neighbors.get(a, ())

    def indirectly_linked(self, en_node: str, fr_node: str) -> bool:
        """Linked via exactly one intermediate French node."""
        for mid in self._neighbors.get(en_node, ()):
            if mid != fr_node and mid.startswith("fr/") and \
                    fr_node in self._neighbors.get(mid, ()):
                return True
        return False

    def derivation_linked(self, a: str, b: str) -> bool:
        """Directly joined by a derivation assertion, or both joined by
        derivation assertions to a common third node."""
        if b in self._deriv_neighbors.get(a, ()):
            return True
        na = self._deriv_neighbors.get(a)
        nb = self._deriv_neighbors.get(b)
        if not na or not nb:
            return False
        return not na.isdisjoint(nb)


def _node_lang(node: str) -> str:
    return node.split("/", 1)[0] if "/" in node else ""


def load_concept_graph(path: str | Path,
                       derivation_relations: Iterable[str] = ("DerivedFrom",),
                       ) -> ConceptGraph:
    """Load TSV assertions (relation, start, end); keep only pairs whose
    languages are EN-FR (either direction) or FR-FR.  Dropped rows are
    counted and logged."""
    kept: list[Assertion] = []
    dropped = 0
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            parts = line.rstrip("\n").split("\t")
            if len(parts) != 3:
                raise ResourceError(f"{path}:{lineno}: expected 3 tab-separated fields, "
                                    f"got {len(parts)}")
            relation, start, end = parts
            langs = {_node_lang(start), _node_lang(end)}
            if langs in ({"en", "fr"}, {"fr"}):
                kept.append(Assertion(relation=relation,
                                      start=_normalize_key(start),
                                      end=_normalize_key(end)))
            else:
                dropped += 1
    if dropped:
        log.info("%s: dropped %d assertions outside EN-FR/FR-FR", path, dropped)
    graph = ConceptGraph(kept, derivation_relations)
    graph.dropped_rows = dropped
    return graph


@dataclass(frozen=True)
class ManualLists:
    """POS-change patterns, filter word list, content tag set, category map."""

    pos_change_patterns: tuple[tuple[tuple[str, ...], tuple[str, ...]], ...]
    filter_list: frozenset[str]
    content_tags: frozenset[str]
    category_map: Mapping[str, frozenset[str]]

    def is_content(self, upos: str) -> bool:
        return upos in self.content_tags

    def category_corresponds(self, upos: str, phrase_label: str) -> bool:
        return phrase_label in self.category_map.get(upos, frozenset())


def _parse_pattern(raw: str) -> tuple[tuple[str, ...], tuple[str, ...]]:
    for arrow in ("->", "→"):
        if arrow in raw:
            lhs, rhs = raw.split(arrow, 1)
            src = tuple(lhs.split())
            tgt = tuple(rhs.split())
            if not src or not tgt:
                raise ResourceError(f"malformed POS-change pattern {raw!r}")
            return src, tgt
    raise ResourceError(f"POS-change pattern {raw!r} has no arrow")


def load_manual_lists(path: str | Path) -> ManualLists:
    """Load the structured manual-lists config (YAML)."""
    with open(path, "r", encoding="utf-8") as fh:
        data = yaml.safe_load(fh)
    if not isinstance(data, dict):
        raise ResourceError(f"{path}: expected a mapping at top level")
    tags = frozenset(data.get("content_tags", ()))
    if tags != CONTENT_TAGS:
        raise ResourceError(
            f"{path}: content_tags must be exactly {sorted(CONTENT_TAGS)}, "
            f"got {sorted(tags)}")
    patterns = tuple(_parse_pattern(p) for p in data.get("pos_change_patterns", ()))
    filter_list = frozenset(str(w).lower() for w in data.get("filter_list", ()))
    raw_map = data.get("category_map", {})
    category_map = {str(k): frozenset(str(v) for v in vs) for k, vs in raw_map.items()}
    return ManualLists(pos_change_patterns=patterns, filter_list=filter_list,
                       content_tags=tags, category_map=category_map)


@dataclass(frozen=True)
class ResourceSet:
    """Everything feature extraction needs, loaded once and shared."""

    embeddings: EmbeddingTable
    trans_table: TranslationProbTable
    concept_graph: ConceptGraph
    manual_lists: ManualLists
    checksums: Mapping[str, str] = field(default_factory=dict)


def file_checksum(path: str | Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def load_resources(embeddings_path: str | Path,
                   table_e_given_f_path: str | Path,
                   table_f_given_e_path: str | Path,
                   concept_graph_path: str | Path,
                   manual_lists_path: str | Path) -> ResourceSet:
    paths = {
        "embeddings": embeddings_path,
        "table_e_given_f": table_e_given_f_path,
        "table_f_given_e": table_f_given_e_path,
        "concept_graph": concept_graph_path,
        "manual_lists": manual_lists_path,
    }
    return ResourceSet(
        embeddings=load_embeddings(embeddings_path),
        trans_table=load_translation_table(table_e_given_f_path, table_f_given_e_path),
        concept_graph=load_concept_graph(concept_graph_path),
        manual_lists=load_manual_lists(manual_lists_path),
        checksums={name: file_checksum(p) for name, p in paths.items()},
    )
