"""Command-line front end: each stage standalone plus an end-to-end pipeline.

Exit codes: 0 success, 1 hard error (partial pipeline failure included),
2 configuration or usage error.
"""

from __future__ import annotations

import json
import sys
import time
import warnings
from datetime import datetime, timezone
from pathlib import Path

import click

from . import config as cfgmod
from . import corpus as corpusmod
from . import entities, ingest, kernels, remote, textrank
from .errors import ApisumError, ConfigError
from .preprocess import PrepConfig, attach_tokens, dedup, load_lemma_exceptions, load_stopwords
from .vectorize import load_embeddings

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CONFIG = 2


def _write_json(path: Path, payload) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(
        json.dumps(payload, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )


def _read_json(path):
    return json.loads(Path(path).read_text(encoding="utf-8"))


def _fail(message: str, code: int = EXIT_ERROR):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def api_filename(api_name: str) -> str:
    return api_name.replace("()", "").replace("(", "_").replace(")", "_") + ".json"


@click.group()
def main():
    """Mine posts for API methods and summarize each one from its discussions."""


def _ingest_config(tag, date_from, date_to, source) -> ingest.IngestConfig:
    source_map = {"dump": "dump_file", "jsonl": "jsonl_file", "remote": "remote"}
    try:
        return ingest.IngestConfig(
            tag=tag,
            date_from=cfgmod.parse_date(date_from),
            date_to=cfgmod.parse_date(date_to),
            source=source_map[source],
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _build_dataset(source, input_path, endpoint, icfg, lenient) -> ingest.Dataset:
    if source == "remote":
        posts = list(remote.fetch_remote(icfg, endpoint))
    elif source == "dump":
        with open(input_path, "rb") as fh:
            posts = list(ingest.parse_dump(fh, "xml_rows", lenient=lenient))
    else:
        with open(input_path, "r", encoding="utf-8") as fh:
            posts = list(ingest.parse_dump(fh, "jsonl", lenient=lenient))
    return ingest.filter_dataset(posts, icfg)


@main.command("ingest")
@click.option("--source", type=click.Choice(["dump", "jsonl", "remote"]), required=True)
@click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--endpoint", help="Base URL of the REST source.")
@click.option("--tag", default="android", show_default=True)
@click.option("--from", "date_from", default="2009-01-01", show_default=True)
@click.option("--to", "date_to", default="2020-04-30", show_default=True)
@click.option("--lenient", is_flag=True, help="Skip malformed rows instead of aborting.")
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
def ingest_cmd(source, input_path, endpoint, tag, date_from, date_to, lenient, out_path):
    """Parse and filter posts into a store file."""
    if source == "remote" and not endpoint:
        _fail("--endpoint is required with --source remote", EXIT_CONFIG)
    if source != "remote" and not input_path:
        _fail("--input is required with --source dump/jsonl", EXIT_CONFIG)
    try:
        icfg = _ingest_config(tag, date_from, date_to, source)
        dataset = _build_dataset(source, input_path, endpoint, icfg, lenient)
        ingest.store_save(dataset, out_path)
    except ConfigError as exc:
        _fail(str(exc), EXIT_CONFIG)
    except (ApisumError, OSError) as exc:
        _fail(f"{type(exc).__name__}: {exc}")
    click.echo(
        f"stored {len(dataset.questions)} questions and "
        f"{len(dataset.answers)} answers to {out_path}"
    )


def _entity_config(denylist, qualmap, top_k, inline_length_cap, count_blocks):
    return entities.EntityFilterConfig(
        denylist=entities.load_denylist(denylist),
        qualified_names=entities.load_qualifier_map(qualmap),
        top_k=top_k,
        inline_length_cap=inline_length_cap,
        count_blocks=count_blocks,
    )


@main.command("extract-apis")
@click.option("--store", "store_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--top-k", default=15, show_default=True, type=click.IntRange(min=1))
@click.option("--denylist", type=click.Path(exists=True, dir_okay=False))
@click.option("--qualmap", type=click.Path(exists=True, dir_okay=False))
@click.option("--inline-length-cap", default=120, show_default=True, type=click.IntRange(min=1))
@click.option("--count-blocks", is_flag=True, help="Count mentions inside code blocks too.")
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
def extract_apis_cmd(store_path, top_k, denylist, qualmap, inline_length_cap, count_blocks, out_path):
    """Rank the most-mentioned API methods in a store."""
    try:
        dataset = ingest.store_load(store_path)
        ecfg = _entity_config(denylist, qualmap, top_k, inline_length_cap, count_blocks)
        ranked = entities.rank_top_k(entities.count_mentions(dataset, ecfg), ecfg)
        _write_json(Path(out_path), [_stats_dict(s) for s in ranked])
    except (ApisumError, OSError) as exc:
        _fail(f"{type(exc).__name__}: {exc}")
    click.echo(f"wrote {len(ranked)} methods to {out_path}")


def _stats_dict(stats: entities.ApiMethodStats) -> dict:
    return {
        "name": stats.name,
        "question_mentions": stats.question_mentions,
        "answer_mentions": stats.answer_mentions,
        "total": stats.total,
    }


def _prep_config(stopwords, lemma_exceptions, lowercase) -> PrepConfig:
    return PrepConfig(
        stopword_list=load_stopwords(stopwords),
        lemma_exceptions=load_lemma_exceptions(lemma_exceptions),
        lowercase=lowercase,
    )


def _prepared_corpus(dataset, api, ccfg, pcfg):
    built = corpusmod.build_corpus(dataset, api, ccfg)
    return dedup(attach_tokens(built, pcfg))


@main.command("build-corpus")
@click.option("--store", "store_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--api", required=True, help='Canonical method name, e.g. "app.Activity.onCreate()".')
@click.option("--threshold", default="3", show_default=True,
              help="Minimum answer score, or 'auto' for ceil(mean).")
@click.option("--include-titles/--no-titles", default=True, show_default=True)
@click.option("--titles-scope", type=click.Choice(["question-mention", "thread"]),
              default="question-mention", show_default=True)
@click.option("--stopwords", type=click.Path(exists=True, dir_okay=False))
@click.option("--lemma-exceptions", type=click.Path(exists=True, dir_okay=False))
@click.option("--no-lowercase", is_flag=True)
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
def build_corpus_cmd(store_path, api, threshold, include_titles, titles_scope,
                     stopwords, lemma_exceptions, no_lowercase, out_path):
    """Assemble and preprocess the sentence corpus for one API method."""
    try:
        ccfg = corpusmod.CorpusConfig(
            score_threshold=cfgmod.parse_threshold(threshold),
            include_titles=include_titles,
            titles_scope=titles_scope,
        )
    except (ConfigError, ValueError) as exc:
        _fail(str(exc), EXIT_CONFIG)
    try:
        dataset = ingest.store_load(store_path)
        pcfg = _prep_config(stopwords, lemma_exceptions, not no_lowercase)
        prepared = _prepared_corpus(dataset, api, ccfg, pcfg)
        _write_json(Path(out_path), corpusmod.corpus_to_dict(prepared))
    except (ApisumError, OSError) as exc:
        _fail(f"{type(exc).__name__}: {exc}")
    click.echo(f"wrote {len(prepared.sentences)} sentences to {out_path}")


def _rank_config(damping, tolerance, max_iterations, top_n, order_mode):
    try:
        return textrank.TextRankConfig(
            damping=damping,
            tolerance=tolerance,
            max_iterations=max_iterations,
            top_n=top_n,
            order_mode=order_mode,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


@main.command("summarize")
@click.option("--store", "store_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--corpus", "corpus_path", type=click.Path(exists=True, dir_okay=False),
              help="Prepared corpus JSON from build-corpus (skips rebuilding).")
@click.option("--api", required=True)
@click.option("--threshold", default="3", show_default=True)
@click.option("--include-titles/--no-titles", default=True, show_default=True)
@click.option("--titles-scope", type=click.Choice(["question-mention", "thread"]),
              default="question-mention", show_default=True)
@click.option("--stopwords", type=click.Path(exists=True, dir_okay=False))
@click.option("--lemma-exceptions", type=click.Path(exists=True, dir_okay=False))
@click.option("--no-lowercase", is_flag=True)
@click.option("--vectorizer", type=click.Choice(["embeddings", "tfidf"]),
              default="tfidf", show_default=True)
@click.option("--embeddings", "embeddings_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--damping", default=0.85, show_default=True)
@click.option("--tolerance", default=1e-6, show_default=True)
@click.option("--max-iterations", default=100, show_default=True, type=click.IntRange(min=1))
@click.option("--top-n", default=3, show_default=True, type=click.IntRange(min=1))
@click.option("--order-mode", type=click.Choice(["by_rank", "by_position"]),
              default="by_rank", show_default=True)
@click.option("--out", "out_path", type=click.Path(dir_okay=False))
@click.option("--text", "render", is_flag=True, help="Print the plain-text summary.")
def summarize_cmd(store_path, corpus_path, api, threshold, include_titles, titles_scope,
                  stopwords, lemma_exceptions, no_lowercase, vectorizer, embeddings_path,
                  damping, tolerance, max_iterations, top_n, order_mode, out_path, render):
    """Summarize one API method from a store or a prepared corpus."""
    if not store_path and not corpus_path:
        _fail("one of --store or --corpus is required", EXIT_CONFIG)
    if vectorizer == "embeddings" and not embeddings_path:
        _fail("--embeddings is required with --vectorizer embeddings", EXIT_CONFIG)
    try:
        rcfg = _rank_config(damping, tolerance, max_iterations, top_n, order_mode)
        ccfg = corpusmod.CorpusConfig(
            score_threshold=cfgmod.parse_threshold(threshold),
            include_titles=include_titles,
            titles_scope=titles_scope,
        )
    except (ConfigError, ValueError) as exc:
        _fail(str(exc), EXIT_CONFIG)
    try:
        model = load_embeddings(embeddings_path) if vectorizer == "embeddings" else None
        pcfg = _prep_config(stopwords, lemma_exceptions, not no_lowercase)
        if corpus_path:
            prepared = corpusmod.corpus_from_dict(_read_json(corpus_path))
            dataset = None
        else:
            dataset = ingest.store_load(store_path)
            prepared = None
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            summary = textrank.summarize(
                api,
                dataset,
                corpus_cfg=ccfg,
                prep_cfg=pcfg,
                rank_cfg=rcfg,
                vectorizer=vectorizer,
                model=model,
                prepared_corpus=prepared,
            )
        for warning in caught:
            click.echo(f"warning: {warning.message}", err=True)
        if out_path:
            _write_json(Path(out_path), textrank.summary_to_dict(summary))
        if render or not out_path:
            click.echo(textrank.render_text(summary))
    except (ApisumError, OSError) as exc:
        _fail(f"{type(exc).__name__}: {exc}")


@main.command("pipeline")
@click.option("--config", "config_path", type=click.Path(dir_okay=False),
              envvar="APISUM_CONFIG", help="Config file (key=value or JSON).")
@click.option("--source", type=click.Choice(["dump", "jsonl", "remote"]))
@click.option("--input", "input")
@click.option("--endpoint")
@click.option("--tag")
@click.option("--from", "date_from")
@click.option("--to", "date_to")
@click.option("--store")
@click.option("--top-k", "top_k", type=int)
@click.option("--denylist")
@click.option("--qualmap")
@click.option("--score-threshold", "score_threshold")
@click.option("--vectorizer", type=click.Choice(["embeddings", "tfidf"]))
@click.option("--embeddings", "embeddings")
@click.option("--top-n", "top_n", type=int)
@click.option("--order-mode", "order_mode", type=click.Choice(["by_rank", "by_position"]))
@click.option("--out-dir", "out_dir")
def pipeline_cmd(config_path, **overrides):
    """Run ingest, extraction, and per-API summarization end to end."""
    try:
        file_values = cfgmod.load_config_file(config_path) if config_path else {}
        cfg = cfgmod.merge_config(file_values, overrides)
    except ConfigError as exc:
        _fail(str(exc), EXIT_CONFIG)
    sys.exit(run_pipeline(cfg))


def run_pipeline(cfg: cfgmod.PipelineConfig) -> int:
    out_dir = Path(cfg.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest = {
        "schema": "apisum-run 1",
        "config_hash": cfgmod.config_hash(cfg),
        "effective_config": dict(cfg.__dict__),
        "kernel_backend": kernels.BACKEND,
        "started_at": datetime.now(timezone.utc).isoformat(),
        "stages": [],
        "apis": [],
    }
    failed = False

    def stage(name):
        start = time.perf_counter()

        def finish(status):
            manifest["stages"].append(
                {"name": name, "status": status,
                 "seconds": round(time.perf_counter() - start, 6)}
            )

        return finish

    try:
        finish = stage("ingest")
        icfg = _ingest_config(cfg.tag, cfg.date_from, cfg.date_to, cfg.source)
        dataset = _build_dataset(cfg.source, cfg.input, cfg.endpoint, icfg, cfg.lenient)
        store_path = Path(cfg.store) if cfg.store else out_dir / "store.jsonl"
        ingest.store_save(dataset, store_path)
        finish("ok")
        click.echo(f"ingest: {len(dataset)} posts -> {store_path}")

        finish = stage("extract-apis")
        ecfg = _entity_config(cfg.denylist, cfg.qualmap, cfg.top_k,
                              cfg.inline_length_cap, cfg.count_blocks)
        ranked = entities.rank_top_k(entities.count_mentions(dataset, ecfg), ecfg)
        _write_json(out_dir / "apis.json", [_stats_dict(s) for s in ranked])
        finish("ok")
        click.echo(f"extract-apis: {len(ranked)} methods -> {out_dir / 'apis.json'}")
    except (ApisumError, OSError) as exc:
        finish("failed")
        manifest["finished_at"] = datetime.now(timezone.utc).isoformat()
        _write_json(out_dir / "run_manifest.json", manifest)
        click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
        return EXIT_ERROR

    ccfg = corpusmod.CorpusConfig(
        score_threshold=cfgmod.parse_threshold(cfg.score_threshold),
        include_titles=cfg.include_titles,
        titles_scope=cfg.titles_scope,
    )
    pcfg = _prep_config(cfg.stopwords, cfg.lemma_exceptions, cfg.lowercase)
    rcfg = _rank_config(cfg.damping, cfg.tolerance, cfg.max_iterations,
                        cfg.top_n, cfg.order_mode)
    model = load_embeddings(cfg.embeddings) if cfg.vectorizer == "embeddings" else None

    finish = stage("summarize")
    for stats in ranked:
        api = stats.name
        try:
            prepared = _prepared_corpus(dataset, api, ccfg, pcfg)
            _write_json(out_dir / "corpus" / api_filename(api),
                        corpusmod.corpus_to_dict(prepared))
            with warnings.catch_warnings(record=True) as caught:
                warnings.simplefilter("always")
                summary = textrank.summarize(
                    api, dataset,
                    corpus_cfg=ccfg, prep_cfg=pcfg, rank_cfg=rcfg,
                    vectorizer=cfg.vectorizer, model=model,
                    prepared_corpus=prepared,
                )
            for warning in caught:
                click.echo(f"warning: {warning.message}", err=True)
            _write_json(out_dir / "summaries" / api_filename(api),
                        textrank.summary_to_dict(summary))
            manifest["apis"].append({"name": api, "status": "ok"})
            click.echo(f"summarize: {api} -> {len(summary.entries)} sentences")
        except (ApisumError, OSError) as exc:
            failed = True
            manifest["apis"].append(
                {"name": api, "status": "failed", "error": f"{type(exc).__name__}: {exc}"}
            )
            click.echo(f"error: summarize {api}: {type(exc).__name__}: {exc}", err=True)
    finish("partial" if failed else "ok")

    manifest["finished_at"] = datetime.now(timezone.utc).isoformat()
    _write_json(out_dir / "run_manifest.json", manifest)
    return EXIT_ERROR if failed else EXIT_OK


if __name__ == "__main__":
    main()
