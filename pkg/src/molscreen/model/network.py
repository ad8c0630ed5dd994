"""The graph attention network: edge-aware attention blocks with graph
normalisation and additive skips, seed-based attention pooling, and gated
fusion of the pooled embedding with global descriptors."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .. import autodiff as ad
from ..autodiff import Tensor
from ..features.graph import FeaturizedGraph
from ..features.scaler import FeatureScaler, apply_scaler
from .config import ModelConfig


class EmptyGraph(ValueError):
    pass


class LayoutVersionMismatch(ValueError):
    pass


@dataclass
class GraphBatch:
    """Several molecules merged into one node/edge soup with graph ids.

    Self-loop edges (zero edge features) follow the real directed edges so
    isolated nodes still receive a well-defined attention update.
    """

    node_features: np.ndarray
    edge_index: np.ndarray
    edge_features: np.ndarray
    graph_id: np.ndarray
    n_graphs: int
    node_counts: np.ndarray
    global_std: np.ndarray


def build_batch(graphs: list[FeaturizedGraph], scaler: FeatureScaler) -> GraphBatch:
    if not graphs:
        raise EmptyGraph("empty batch")
    nodes = []
    edges = []
    efeats = []
    gids = []
    counts = []
    offset = 0
    for g, graph in enumerate(graphs):
        n = graph.n_nodes
        if n == 0:
            raise EmptyGraph(f"graph {g} has no nodes")
        nodes.append(graph.node_features)
        if graph.n_edges:
            edges.append(graph.edge_index + offset)
            efeats.append(graph.edge_features)
        gids.append(np.full(n, g, dtype=np.int64))
        counts.append(n)
        offset += n
    node_features = np.concatenate(nodes, axis=0)
    total_nodes = node_features.shape[0]
    bond_dim = graphs[0].edge_features.shape[1]
    real_index = (
        np.concatenate(edges, axis=1)
        if edges
        else np.zeros((2, 0), dtype=np.int64)
    )
    loop_index = np.stack([np.arange(total_nodes)] * 2)
    edge_index = np.concatenate([real_index, loop_index], axis=1)
    edge_features = np.concatenate(
        [
            np.concatenate(efeats, axis=0)
            if efeats
            else np.zeros((0, bond_dim)),
            np.zeros((total_nodes, bond_dim)),
        ],
        axis=0,
    )
    global_raw = np.stack([g.global_features for g in graphs])
    return GraphBatch(
        node_features=node_features,
        edge_index=edge_index,
        edge_features=edge_features,
        graph_id=np.concatenate(gids),
        n_graphs=len(graphs),
        node_counts=np.asarray(counts, dtype=np.float64),
        global_std=apply_scaler(scaler, global_raw),
    )


class Model:
    """Parameter container plus the forward pass; immutable once trained."""

    def __init__(
        self,
        config: ModelConfig,
        scaler: FeatureScaler,
        params=None,
        layout_version: str | None = None,
    ):
        from ..features.atom_bond import LAYOUT_VERSION

        self.config = config
        self.scaler = scaler
        self.layout_version = layout_version or LAYOUT_VERSION
        self.params: dict[str, Tensor] = params if params is not None else self._init_params()

    # ------------------------------------------------------------ parameters

    def _init_params(self) -> dict[str, Tensor]:
        cfg = self.config
        rng = np.random.default_rng(cfg.seed)
        H = cfg.hidden_dim

        def glorot(rows, cols):
            scale = math.sqrt(2.0 / (rows + cols))
            return Tensor(rng.normal(0.0, scale, (rows, cols)), requires_grad=True)

        def zeros(*shape):
            return Tensor(np.zeros(shape), requires_grad=True)

        def ones(*shape):
            return Tensor(np.ones(shape), requires_grad=True)

        p: dict[str, Tensor] = {}
        p["in.W"] = glorot(cfg.atom_dim, H)
        p["in.b"] = zeros(H)
        for i in range(cfg.n_blocks):
            pre = f"block{i}."
            for norm in ("norm1", "norm2"):
                p[pre + norm + ".alpha"] = ones(H)
                p[pre + norm + ".gamma"] = ones(H)
                p[pre + norm + ".beta"] = zeros(H)
            p[pre + "conv.Wq"] = glorot(H, H)
            p[pre + "conv.Wk"] = glorot(H, H)
            p[pre + "conv.Wv"] = glorot(H, H)
            p[pre + "conv.Wek"] = glorot(cfg.bond_dim, H)
            p[pre + "conv.Wev"] = glorot(cfg.bond_dim, H)
            p[pre + "ffn.W1"] = glorot(H, 2 * H)
            p[pre + "ffn.b1"] = zeros(2 * H)
            p[pre + "ffn.W2"] = glorot(2 * H, H)
            p[pre + "ffn.b2"] = zeros(H)
        p["norm_f.alpha"] = ones(H)
        p["norm_f.gamma"] = ones(H)
        p["norm_f.beta"] = zeros(H)

        p["pool.seeds"] = Tensor(
            rng.normal(0.0, 0.1, (cfg.pool_seeds, H)), requires_grad=True
        )
        for name in ("Wq", "Wk", "Wv", "Wsq", "Wsk", "Wsv"):
            p[f"pool.{name}"] = glorot(H, H)

        p["fuse.Wg"] = glorot(cfg.global_dim, H)
        p["fuse.bg"] = zeros(H)
        p["fuse.Wgate"] = glorot(H, H)
        p["fuse.bgate"] = zeros(H)

        out_dim = 2 if cfg.task == "classify" else 1
        p["head.W"] = glorot(H, out_dim)
        p["head.b"] = zeros(out_dim)
        return p

    # ----------------------------------------------------------------- layers

    def _graph_norm(self, x: Tensor, prefix: str, batch: GraphBatch) -> Tensor:
        p = self.params
        gid = batch.graph_id
        G = batch.n_graphs
        inv = Tensor(1.0 / batch.node_counts[:, None])
        mean = ad.scatter_add(x, gid, G) * inv
        centred = x - p[prefix + ".alpha"] * ad.gather(mean, gid)
        var = ad.scatter_add(ad.square(centred), gid, G) * inv
        std = ad.sqrt(var + Tensor(np.full_like(var.data, 1e-5)))
        normed = centred / ad.gather(std, gid)
        return p[prefix + ".gamma"] * normed + p[prefix + ".beta"]

    def _attention(
        self,
        q: Tensor,
        k: Tensor,
        v: Tensor,
        target: np.ndarray,
        n_targets: int,
        training: bool,
        rng,
    ) -> Tensor:
        """Shared-value multi-head attention over grouped rows.

        q, k, v are row-aligned (one row per candidate pair); `target`
        groups rows for the softmax.  Heads act on query/key subspaces and
        their attention weights are averaged before weighting the values.
        """
        cfg = self.config
        heads, dh = cfg.n_heads, cfg.hidden_dim // cfg.n_heads
        E = q.data.shape[0]
        qh = ad.reshape(q, (E, heads, dh))
        kh = ad.reshape(k, (E, heads, dh))
        logits = ad.reduce_sum(qh * kh, axis=2) * Tensor(np.asarray(1.0 / math.sqrt(dh)))
        alpha = ad.segment_softmax(logits, target, n_targets)
        if training and cfg.dropout_p > 0:
            alpha = ad.dropout(alpha, cfg.dropout_p, rng, training)
        weight = ad.reduce_mean(alpha, axis=1, keepdims=True)
        return ad.scatter_add(v * weight, target, n_targets)

    def _conv(self, x: Tensor, e: Tensor, block: int, batch: GraphBatch, training, rng) -> Tensor:
        p = self.params
        pre = f"block{block}.conv."
        src, dst = batch.edge_index
        q = ad.gather(ad.matmul(x, p[pre + "Wq"]), dst)
        k = ad.gather(ad.matmul(x, p[pre + "Wk"]), src) + ad.matmul(e, p[pre + "Wek"])
        v = ad.gather(ad.matmul(x, p[pre + "Wv"]), src) + ad.matmul(e, p[pre + "Wev"])
        return self._attention(q, k, v, dst, x.data.shape[0], training, rng)

    def _ffn(self, x: Tensor, block: int) -> Tensor:
        p = self.params
        pre = f"block{block}.ffn."
        hidden = ad.relu(ad.matmul(x, p[pre + "W1"]) + p[pre + "b1"])
        return ad.matmul(hidden, p[pre + "W2"]) + p[pre + "b2"]

    def _pool(self, x: Tensor, batch: GraphBatch, training, rng) -> Tensor:
        """k learned seeds attend over each graph, one self-attention pass
        over the slots, then the slot mean."""
        p = self.params
        cfg = self.config
        k = cfg.pool_seeds
        N = x.data.shape[0]
        G = batch.n_graphs

        seed_q = ad.matmul(p["pool.seeds"], p["pool.Wq"])
        node_k = ad.matmul(x, p["pool.Wk"])
        node_v = ad.matmul(x, p["pool.Wv"])

        node_rows = np.repeat(np.arange(N), k)
        seed_rows = np.tile(np.arange(k), N)
        slot_of_row = batch.graph_id[node_rows] * k + seed_rows
        q = ad.gather(seed_q, seed_rows)
        kk = ad.gather(node_k, node_rows)
        vv = ad.gather(node_v, node_rows)
        slots = self._attention(q, kk, vv, slot_of_row, G * k, training, rng)

        # self-attention among each graph's k slots (with residual)
        sq = ad.matmul(slots, p["pool.Wsq"])
        sk = ad.matmul(slots, p["pool.Wsk"])
        sv = ad.matmul(slots, p["pool.Wsv"])
        g_idx = np.repeat(np.arange(G), k * k)
        t_idx = np.tile(np.repeat(np.arange(k), k), G)
        s_idx = np.tile(np.arange(k), G * k)
        target_slot = g_idx * k + t_idx
        source_slot = g_idx * k + s_idx
        mixed = self._attention(
            ad.gather(sq, target_slot),
            ad.gather(sk, source_slot),
            ad.gather(sv, source_slot),
            target_slot,
            G * k,
            training,
            rng,
        )
        slots = slots + mixed

        graph_of_slot = np.repeat(np.arange(G), k)
        return ad.scatter_add(slots, graph_of_slot, G) * Tensor(np.asarray(1.0 / k))

    def _fuse(self, pooled: Tensor, batch: GraphBatch) -> Tensor:
        p = self.params
        g = ad.matmul(Tensor(batch.global_std), p["fuse.Wg"]) + p["fuse.bg"]
        gate = ad.sigmoid(ad.matmul(g, p["fuse.Wgate"]) + p["fuse.bgate"])
        return gate * pooled + (Tensor(np.asarray(1.0)) - gate) * g

    # ---------------------------------------------------------------- forward

    def forward(
        self,
        batch: GraphBatch,
        training: bool = False,
        rng: np.random.Generator | None = None,
        node_features: Tensor | None = None,
    ) -> Tensor:
        """Logits (G, 2) for classification or (G, 1) for regression."""
        p = self.params
        if training and rng is None:
            rng = np.random.default_rng(self.config.seed)
        x_in = node_features if node_features is not None else Tensor(batch.node_features)
        e = Tensor(batch.edge_features)
        x = ad.matmul(x_in, p["in.W"]) + p["in.b"]
        for i in range(self.config.n_blocks):
            x = x + self._conv(self._graph_norm(x, f"block{i}.norm1", batch), e, i, batch, training, rng)
            x = x + self._ffn(self._graph_norm(x, f"block{i}.norm2", batch), i)
        x = self._graph_norm(x, "norm_f", batch)
        pooled = self._pool(x, batch, training, rng)
        fused = self._fuse(pooled, batch)
        return ad.matmul(fused, p["head.W"]) + p["head.b"]

    # ------------------------------------------------------------- inference

    def make_batch(self, graphs: list[FeaturizedGraph]) -> GraphBatch:
        for g in graphs:
            if g.layout_version != self.layout_version:
                raise LayoutVersionMismatch(
                    f"graph layout {g.layout_version!r} != model layout "
                    f"{self.layout_version!r}"
                )
        return build_batch(graphs, self.scaler)

    def predict_scores(self, graphs: list[FeaturizedGraph]) -> np.ndarray:
        """Probability of the positive class (classify) or the raw value
        (regress), one per graph."""
        out = self.forward(self.make_batch(graphs)).data
        if self.config.task == "classify":
            return _positive_probability(out)
        return out[:, 0]

    def positive_logits(self, graphs: list[FeaturizedGraph]) -> np.ndarray:
        out = self.forward(self.make_batch(graphs)).data
        if self.config.task == "classify":
            return out[:, 1]
        return out[:, 0]


def _positive_probability(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    return e[:, 1] / e.sum(axis=1)


def clone_params(params: dict[str, Tensor]) -> dict[str, Tensor]:
    return {
        name: Tensor(t.data.copy(), requires_grad=t.requires_grad)
        for name, t in params.items()
    }
