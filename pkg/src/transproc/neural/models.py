"""Two sequence classifiers over a shared bidirectional GRU encoder.

AlignmentCNN builds a source-target dot-product alignment matrix from the
per-step encoder outputs and classifies it with one convolution layer,
adaptive max pooling to a fixed grid, and a fully-connected head.

MeanConcatMLP averages each side's encoder outputs over time, concatenates
the two vectors and classifies with a small tanh MLP.

Both accept batches from the encoders in .encoding and preserve
batch-composition invariance: a pair's logits do not depend on the padding
introduced by its batch neighbours (dropout off).
"""

from __future__ import annotations

import numpy as np

from . import autodiff as ad
from .autodiff import Tensor
from .layers import BiGRUEncoder, Dense, glorot


class _EmbeddingBase:
    def __init__(self, rng, vocab_size, emb_dim, pretrained=None, train_emb=True):
        if pretrained is not None:
            data = np.array(pretrained, dtype=np.float64)
            assert data.shape == (vocab_size, emb_dim)
        else:
            data = glorot(rng, (vocab_size, emb_dim))
            data[0] = 0.0
        self.embedding = Tensor(data, requires_grad=train_emb)

    def _embed(self, idx: np.ndarray) -> Tensor:
        return ad.gather_rows(self.embedding, idx)


class AlignmentCNN(_EmbeddingBase):
    def __init__(self, vocab_size, n_classes, emb_dim=10, hidden=10, filters=16,
                 kernel=3, grid=4, fc_dim=32, dropout_p=0.2, seed=0,
                 pretrained=None, train_emb=True):
        rng = np.random.default_rng(seed)
        super().__init__(rng, vocab_size, emb_dim, pretrained, train_emb)
        self.encoder = BiGRUEncoder(rng, emb_dim, hidden)
        self.conv_k = Tensor(glorot(rng, (filters, 1, kernel, kernel)), requires_grad=True)
        self.conv_b = Tensor(np.zeros(filters), requires_grad=True)
        self.fc = Dense(rng, filters * grid * grid, fc_dim, "fc")
        self.out = Dense(rng, fc_dim, n_classes, "out")
        self.grid = grid
        self.dropout_p = dropout_p
        self.n_classes = n_classes

    def forward(self, batch, drop_rng=None) -> Tensor:
        src = self.encoder.run(self._embed(batch["src_idx"]), batch["src_mask"])
        tgt = self.encoder.run(self._embed(batch["tgt_idx"]), batch["tgt_mask"])
        src = ad.dropout(src, self.dropout_p, drop_rng)
        tgt = ad.dropout(tgt, self.dropout_p, drop_rng)
        align = ad.bmm(src, ad.transpose_last2(tgt))
        B, Ts, Tt = align.data.shape
        x = ad.reshape(align, (B, 1, Ts, Tt))
        h = ad.relu(ad.conv2d_same(x, self.conv_k, self.conv_b))
        h = ad.dropout(h, self.dropout_p, drop_rng)
        pooled = ad.adaptive_max_pool2d(h, batch["sizes"], self.grid)
        flat = ad.reshape(pooled, (B, -1))
        hidden = ad.dropout(ad.relu(self.fc(flat)), self.dropout_p, drop_rng)
        return self.out(hidden)

    def parameters(self):
        params = []
        if self.embedding.requires_grad:
            params.append(("embedding", self.embedding))
        params += self.encoder.parameters()
        params += [("conv.k", self.conv_k), ("conv.b", self.conv_b)]
        params += self.fc.parameters() + self.out.parameters()
        return params


class MeanConcatMLP(_EmbeddingBase):
    def __init__(self, vocab_size, n_classes, emb_dim=10, hidden=10, mlp_dim=10,
                 dropout_p=0.2, seed=0, pretrained=None, train_emb=True):
        rng = np.random.default_rng(seed)
        super().__init__(rng, vocab_size, emb_dim, pretrained, train_emb)
        self.encoder = BiGRUEncoder(rng, emb_dim, hidden)
        self.hidden = Dense(rng, 4 * hidden, mlp_dim, "hidden")
        self.out = Dense(rng, mlp_dim, n_classes, "out")
        self.dropout_p = dropout_p
        self.n_classes = n_classes

    def forward(self, batch, drop_rng=None) -> Tensor:
        from .layers import masked_mean_over_time
        src = self.encoder.run(self._embed(batch["src_idx"]), batch["src_mask"])
        tgt = self.encoder.run(self._embed(batch["tgt_idx"]), batch["tgt_mask"])
        rep = ad.concat([masked_mean_over_time(src, batch["src_mask"]),
                         masked_mean_over_time(tgt, batch["tgt_mask"])], axis=-1)
        rep = ad.dropout(rep, self.dropout_p, drop_rng)
        hidden = ad.dropout(ad.tanh(self.hidden(rep)), self.dropout_p, drop_rng)
        return self.out(hidden)

    def parameters(self):
        params = []
        if self.embedding.requires_grad:
            params.append(("embedding", self.embedding))
        params += self.encoder.parameters()
        params += self.hidden.parameters() + self.out.parameters()
        return params
