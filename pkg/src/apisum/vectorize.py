"""Sentence vectors: mean-pooled word embeddings or a from-scratch TF-IDF.

The embedding file format is plain text: a ``V D`` header line, then V lines
of ``token c1 .. cD``.  A sentence embeds as the unweighted mean of its
known-token vectors; a sentence of only unknown tokens becomes the zero
vector and later an isolated graph vertex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import ApiCorpus
from .errors import DimensionMismatch, EmptyModel, FormatError

EMBEDDINGS = "embeddings"
TFIDF = "tfidf"


@dataclass(frozen=True)
class EmbeddingModel:
    dimension: int
    vocab: dict[str, tuple[float, ...]] = field(default_factory=dict)

    def __contains__(self, token):
        return token in self.vocab

    def __len__(self):
        return len(self.vocab)


@dataclass(frozen=True)
class SentenceVector:
    components: tuple[float, ...]
    known_token_count: int

    @property
    def dimension(self) -> int:
        return len(self.components)


def load_embeddings(path) -> EmbeddingModel:
    """Parse a text embedding file; duplicate tokens keep the first vector."""
    path = Path(path)
    with path.open("r", encoding="utf-8") as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise FormatError(1, "header must be two integers: vocab size, dimension")
        try:
            size, dim = int(header[0]), int(header[1])
        except ValueError as exc:
            raise FormatError(1, f"bad header: {exc}") from exc
        if size == 0:
            raise EmptyModel(str(path))
        if dim <= 0:
            raise FormatError(1, f"dimension must be positive, got {dim}")

        vocab: dict[str, tuple[float, ...]] = {}
        for line_no in range(2, size + 2):
            line = fh.readline()
            if not line:
                raise FormatError(line_no, "file ends before declared vocab size")
            parts = line.split()
            if len(parts) != dim + 1:
                raise FormatError(
                    line_no, f"expected {dim} components, found {len(parts) - 1}"
                )
            token = parts[0]
            try:
                vector = tuple(float(x) for x in parts[1:])
            except ValueError as exc:
                raise FormatError(line_no, f"non-numeric component: {exc}") from exc
            if not all(math.isfinite(x) for x in vector):
                raise FormatError(line_no, "non-finite component")
            vocab.setdefault(token, vector)
    return EmbeddingModel(dimension=dim, vocab=vocab)


def embed_sentence(tokens, model: EmbeddingModel) -> SentenceVector:
    """Componentwise mean over the tokens present in the vocabulary."""
    known = [model.vocab[t] for t in tokens if t in model.vocab]
    if not known:
        return SentenceVector((0.0,) * model.dimension, 0)
    count = len(known)
    components = tuple(
        sum(vec[k] for vec in known) / count for k in range(model.dimension)
    )
    return SentenceVector(components, count)


def tfidf_vectors(corpus: ApiCorpus) -> list[SentenceVector]:
    """TF-IDF vectors over the corpus vocabulary (first-appearance order).

    component(t, s) = count of t in s  *  ln(N / df(t)), no smoothing.
    """
    token_lists = [rec.processed_tokens for rec in corpus.sentences]
    vocab: dict[str, int] = {}
    for tokens in token_lists:
        for t in tokens:
            if t not in vocab:
                vocab[t] = len(vocab)

    n_sentences = len(token_lists)
    df = [0] * len(vocab)
    for tokens in token_lists:
        for t in set(tokens):
            df[vocab[t]] += 1
    idf = [math.log(n_sentences / d) for d in df]

    vectors = []
    for tokens in token_lists:
        components = [0.0] * len(vocab)
        for t in tokens:
            components[vocab[t]] += 1.0
        for idx in range(len(vocab)):
            components[idx] *= idf[idx]
        vectors.append(SentenceVector(tuple(components), len(tokens)))
    return vectors


def embed_corpus(corpus: ApiCorpus, model: EmbeddingModel) -> list[SentenceVector]:
    return [embed_sentence(rec.processed_tokens, model) for rec in corpus.sentences]


def cosine(v1: SentenceVector, v2: SentenceVector) -> float:
    """Cosine similarity in [-1, 1]; zero-norm vectors are similar to nothing."""
    a, b = v1.components, v2.components
    if len(a) != len(b):
        raise DimensionMismatch(f"{len(a)} != {len(b)}")
    dot = sum(x * y for x, y in zip(a, b))
    norm_a = math.sqrt(sum(x * x for x in a))
    norm_b = math.sqrt(sum(y * y for y in b))
    if norm_a == 0.0 or norm_b == 0.0:
        return 0.0
    value = dot / (norm_a * norm_b)
    return max(-1.0, min(1.0, value))
