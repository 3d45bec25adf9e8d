"""Sentence-graph ranking: similarity matrix, damped rank iteration, top-N pick.

Sentences are vertices, clamped cosine similarities are edge weights, and
scores follow the additive damped formulation (scores need not sum to 1):

    S_i = (1 - d) + d * sum_j  w_ji / strength_j * S_j

Isolated vertices keep exactly ``1 - d`` and contribute nothing.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from datetime import datetime, timezone

from . import kernels
from .corpus import ApiCorpus, CorpusConfig, build_corpus
from .errors import CorpusTooSmall, DimensionMismatch, EmptyCorpus
from .preprocess import PrepConfig, attach_tokens, dedup
from .vectorize import (
    EMBEDDINGS,
    TFIDF,
    EmbeddingModel,
    SentenceVector,
    embed_corpus,
    tfidf_vectors,
)

BY_RANK = "by_rank"
BY_POSITION = "by_position"


@dataclass(frozen=True)
class SimilarityGraph:
    n: int
    weights: tuple[tuple[float, ...], ...]


@dataclass(frozen=True)
class TextRankConfig:
    damping: float = 0.85
    tolerance: float = 1e-6
    max_iterations: int = 100
    top_n: int = 3
    order_mode: str = BY_RANK

    def __post_init__(self):
        if not 0.0 < self.damping < 1.0:
            raise ValueError("damping must lie in (0, 1)")
        if self.tolerance <= 0.0:
            raise ValueError("tolerance must be positive")
        if self.max_iterations < 1 or self.top_n < 1:
            raise ValueError("max_iterations and top_n must be >= 1")
        if self.order_mode not in (BY_RANK, BY_POSITION):
            raise ValueError(f"unknown order mode {self.order_mode!r}")


@dataclass(frozen=True)
class RankVector:
    scores: tuple[float, ...]
    iterations_used: int
    converged: bool


@dataclass(frozen=True)
class SummaryEntry:
    original_text: str
    score: float
    source_post_id: int
    source_kind: str
    corpus_index: int


@dataclass(frozen=True)
class Summary:
    api_name: str
    entries: tuple[SummaryEntry, ...]
    config_snapshot: dict = field(default_factory=dict)
    generated_at: str = ""


def similarity_matrix(vectors: list[SentenceVector]) -> SimilarityGraph:
    """Symmetric nonnegative sentence-similarity weights, zero diagonal."""
    dims = {v.dimension for v in vectors}
    if len(dims) > 1:
        raise DimensionMismatch(f"mixed vector dimensions: {sorted(dims)}")
    rows = kernels.cosine_matrix([list(v.components) for v in vectors])
    return SimilarityGraph(n=len(vectors), weights=tuple(tuple(r) for r in rows))


def pagerank(graph: SimilarityGraph, cfg: TextRankConfig) -> RankVector:
    """Iterate scores from all-ones until the residual beats the tolerance."""
    scores, iterations, converged = kernels.pagerank(
        [list(row) for row in graph.weights],
        cfg.damping,
        cfg.tolerance,
        cfg.max_iterations,
    )
    return RankVector(tuple(scores), iterations, converged)


def select_top(ranks: RankVector, corpus: ApiCorpus, cfg: TextRankConfig) -> Summary:
    """Top-N sentences by score; ties go to the earlier corpus index."""
    if not corpus.sentences:
        raise EmptyCorpus(corpus.api_name)
    if len(ranks.scores) != len(corpus.sentences):
        raise ValueError("rank vector does not match corpus size")

    order = sorted(
        range(len(corpus.sentences)), key=lambda i: (-ranks.scores[i], i)
    )
    picked = order[: cfg.top_n]
    if cfg.order_mode == BY_POSITION:
        picked.sort(
            key=lambda i: (
                corpus.sentences[i].source_post_id,
                corpus.sentences[i].position,
            )
        )
    entries = tuple(
        SummaryEntry(
            original_text=corpus.sentences[i].original_text,
            score=ranks.scores[i],
            source_post_id=corpus.sentences[i].source_post_id,
            source_kind=corpus.sentences[i].source_kind,
            corpus_index=i,
        )
        for i in picked
    )
    return Summary(api_name=corpus.api_name, entries=entries)


def vectorize_corpus(
    corpus: ApiCorpus, mode: str, model: EmbeddingModel | None = None
) -> list[SentenceVector]:
    if mode == EMBEDDINGS:
        if model is None:
            raise ValueError("embeddings mode needs a loaded model")
        return embed_corpus(corpus, model)
    if mode == TFIDF:
        return tfidf_vectors(corpus)
    raise ValueError(f"unknown vectorizer mode {mode!r}")


def summarize(
    api_name: str,
    dataset,
    corpus_cfg: CorpusConfig | None = None,
    prep_cfg: PrepConfig | None = None,
    rank_cfg: TextRankConfig | None = None,
    vectorizer: str = TFIDF,
    model: EmbeddingModel | None = None,
    prepared_corpus: ApiCorpus | None = None,
) -> Summary:
    """Full composition: corpus -> preprocessing -> vectors -> graph -> top-N.

    Deterministic for fixed inputs and configuration; only ``generated_at``
    varies between runs.  Warns :class:`CorpusTooSmall` when fewer sentences
    than ``top_n`` survive.
    """
    corpus_cfg = corpus_cfg or CorpusConfig()
    prep_cfg = prep_cfg or PrepConfig()
    rank_cfg = rank_cfg or TextRankConfig()

    if prepared_corpus is not None:
        corpus = prepared_corpus
    else:
        corpus = build_corpus(dataset, api_name, corpus_cfg)
        corpus = dedup(attach_tokens(corpus, prep_cfg))

    if not corpus.sentences:
        raise EmptyCorpus(api_name)
    if len(corpus.sentences) < rank_cfg.top_n:
        warnings.warn(
            f"{api_name}: corpus holds {len(corpus.sentences)} sentences, "
            f"fewer than top_n={rank_cfg.top_n}",
            CorpusTooSmall,
            stacklevel=2,
        )

    vectors = vectorize_corpus(corpus, vectorizer, model)
    graph = similarity_matrix(vectors)
    ranks = pagerank(graph, rank_cfg)
    summary = select_top(ranks, corpus, rank_cfg)

    snapshot = {
        "vectorizer": vectorizer,
        "score_threshold": corpus.score_threshold_used,
        "include_titles": corpus_cfg.include_titles,
        "titles_scope": corpus_cfg.titles_scope,
        "lowercase": prep_cfg.lowercase,
        "damping": rank_cfg.damping,
        "tolerance": rank_cfg.tolerance,
        "max_iterations": rank_cfg.max_iterations,
        "top_n": rank_cfg.top_n,
        "order_mode": rank_cfg.order_mode,
        "kernel_backend": kernels.BACKEND,
    }
    return Summary(
        api_name=summary.api_name,
        entries=summary.entries,
        config_snapshot=snapshot,
        generated_at=datetime.now(timezone.utc).isoformat(),
    )


def summary_to_dict(summary: Summary) -> dict:
    """The documented summary JSON shape."""
    return {
        "api": summary.api_name,
        "generated_at": summary.generated_at,
        "config": summary.config_snapshot,
        "entries": [
            {
                "text": e.original_text,
                "score": e.score,
                "post_id": e.source_post_id,
                "kind": e.source_kind,
                "index": e.corpus_index,
            }
            for e in summary.entries
        ],
    }


def render_text(summary: Summary) -> str:
    """Plain-text summary: sentences joined by single spaces."""
    return " ".join(e.original_text for e in summary.entries)
