"""Segment-to-index encoding for the neural models.

Both encoders emit right-padded index arrays plus 0/1 masks.  Index 0 is
padding and index 1 the unknown symbol; real symbols start at 2 in sorted
order so vocabularies are reproducible.
"""

from __future__ import annotations

import numpy as np

PAD, UNK = 0, 1


def segment_text(sent, span, side: str) -> str:
    tokens = sent.src_tokens if side == "src" else sent.tgt_tokens
    return " ".join(t.surface for t in tokens[span[0]:span[1]])


def segment_words(sent, span, side: str) -> list[str]:
    tokens = sent.src_tokens if side == "src" else sent.tgt_tokens
    return [t.surface for t in tokens[span[0]:span[1]]]


class CharEncoder:
    """Characters of the space-joined segment text, spaces included."""

    def __init__(self, units):
        symbols = set()
        for sent, pair in units:
            symbols.update(segment_text(sent, pair.src_span, "src"))
            symbols.update(segment_text(sent, pair.tgt_span, "tgt"))
        self.itos = ["<pad>", "<unk>", *sorted(symbols)]
        self.stoi = {s: i for i, s in enumerate(self.itos)}

    @property
    def vocab_size(self) -> int:
        return len(self.itos)

    def _ids(self, sent, pair, side) -> list[int]:
        span = pair.src_span if side == "src" else pair.tgt_span
        text = segment_text(sent, span, side)
        return [self.stoi.get(ch, UNK) for ch in text]

    def encode(self, units):
        return _pad_batch([(self._ids(s, p, "src"), self._ids(s, p, "tgt"))
                           for s, p in units])


class WordEncoder:
    """Tokens mapped through a pretrained embedding table.

    Words are keyed as ``lang/surface`` (lowercased).  The embedding matrix
    is assembled once: PAD row is zero, UNK row is the table mean, known
    words keep their pretrained vectors.
    """

    def __init__(self, units, table, src_lang="en", tgt_lang="fr"):
        self.langs = {"src": src_lang, "tgt": tgt_lang}
        keys = set()
        for sent, pair in units:
            for side in ("src", "tgt"):
                span = pair.src_span if side == "src" else pair.tgt_span
                for w in segment_words(sent, span, side):
                    keys.add(f"{self.langs[side]}/{w.lower()}")
        self.itos = ["<pad>", "<unk>", *sorted(keys)]
        self.stoi = {s: i for i, s in enumerate(self.itos)}
        dim = table.dim
        matrix = np.zeros((len(self.itos), dim))
        matrix[UNK] = table.mean_vector()
        for key in self.itos[2:]:
            vec = table.lookup(key)
            matrix[self.stoi[key]] = vec if vec is not None else matrix[UNK]
        self.matrix = matrix

    @property
    def vocab_size(self) -> int:
        return len(self.itos)

    @property
    def dim(self) -> int:
        return self.matrix.shape[1]

    def _ids(self, sent, pair, side) -> list[int]:
        span = pair.src_span if side == "src" else pair.tgt_span
        lang = self.langs[side]
        return [self.stoi.get(f"{lang}/{w.lower()}", UNK)
                for w in segment_words(sent, span, side)]

    def encode(self, units):
        return _pad_batch([(self._ids(s, p, "src"), self._ids(s, p, "tgt"))
                           for s, p in units])


def _pad_batch(pairs_of_ids):
    """Right-pad to the batch max length per side; empty sides get one PAD
    step with an all-zero mask so downstream shapes stay valid."""
    src_ids = [s for s, _ in pairs_of_ids]
    tgt_ids = [t for _, t in pairs_of_ids]

    def pad(seqs):
        T = max(1, max((len(s) for s in seqs), default=1))
        idx = np.zeros((len(seqs), T), dtype=np.int64)
        mask = np.zeros((len(seqs), T))
        for r, s in enumerate(seqs):
            idx[r, :len(s)] = s
            mask[r, :len(s)] = 1.0
        return idx, mask

    si, sm = pad(src_ids)
    ti, tm = pad(tgt_ids)
    sizes = np.stack([np.maximum(sm.sum(axis=1), 1).astype(np.int64),
                      np.maximum(tm.sum(axis=1), 1).astype(np.int64)], axis=1)
    return {"src_idx": si, "src_mask": sm, "tgt_idx": ti, "tgt_mask": tm,
            "sizes": sizes}
