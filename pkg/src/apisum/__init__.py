"""apisum: mine Q&A posts for API methods and summarize each from its discussions.

Pipeline stages, each usable as a library module or a CLI subcommand:

- :mod:`apisum.ingest` / :mod:`apisum.remote` -- parse, filter, and persist posts
- :mod:`apisum.entities` -- extract code entities, validate and rank API methods
- :mod:`apisum.corpus` -- per-API sentence corpus from titles and scored answers
- :mod:`apisum.preprocess` -- cleaning, stopwords, lemmatization, dedup
- :mod:`apisum.vectorize` -- mean-pooled embeddings or TF-IDF sentence vectors
- :mod:`apisum.textrank` -- similarity graph, rank iteration, summary assembly
"""

from .ingest import Dataset, IngestConfig, RawPost, filter_dataset, parse_dump
from .entities import ApiMethodStats, EntityFilterConfig, count_mentions, rank_top_k
from .corpus import ApiCorpus, CorpusConfig, SentenceRecord, build_corpus
from .preprocess import PrepConfig, dedup, preprocess_sentence
from .vectorize import EmbeddingModel, SentenceVector, cosine, load_embeddings
from .textrank import Summary, TextRankConfig, pagerank, similarity_matrix, summarize

__version__ = "0.1.0"

__all__ = [
    "ApiCorpus",
    "ApiMethodStats",
    "CorpusConfig",
    "Dataset",
    "EmbeddingModel",
    "EntityFilterConfig",
    "IngestConfig",
    "PrepConfig",
    "RawPost",
    "SentenceRecord",
    "SentenceVector",
    "Summary",
    "TextRankConfig",
    "build_corpus",
    "cosine",
    "count_mentions",
    "dedup",
    "filter_dataset",
    "load_embeddings",
    "pagerank",
    "parse_dump",
    "preprocess_sentence",
    "rank_top_k",
    "similarity_matrix",
    "summarize",
    "__version__",
]
