"""Command-line interface: ingest, serve, recommend, stats, export, demo-data.

State lives in a data directory (``--data`` or the QUADWALK_DATA environment
variable) holding an append-only journal that is replayed on open.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from . import analytics, demo
from .ingest import OAIParseError, ingest_records, parse_oaipmh
from .recommenders import (
    NewsRequest,
    RefereeRequest,
    UnknownGrammarError,
    discover,
    load_named_grammar,
    news,
    referees,
)
from .report import write_report
from .service import create_app
from .store import QuadStore
from .terms import IRI, Term, TermError, parse_datetime
from .vocab import UnknownClassError
from .walker import RankedList, WalkerConfig, WalkerEngine, WalkError

JOURNAL_NAME = "journal.nq"


def _open_store(data_dir: str) -> QuadStore:
    directory = Path(data_dir)
    directory.mkdir(parents=True, exist_ok=True)
    return QuadStore(journal=directory / JOURNAL_NAME)


def _iri(text: str, what: str = "IRI") -> IRI:
    try:
        return IRI(text)
    except TermError as exc:
        raise click.ClickException(f"invalid {what} {text!r}: {exc}") from exc


def _label(term: Term) -> str:
    return term.value if isinstance(term, IRI) else term.nq()


def _print_ranked(ranked: RankedList, report_dir: str | None, stem: str):
    rows = [(_label(term), score) for term, score in ranked]
    for label, score in rows:
        click.echo(f"{label}\t{score:.12g}")
    if not rows:
        click.echo("(no results)", err=True)
    if report_dir:
        tsv, png = write_report(rows, report_dir, stem)
        click.echo(f"report: {tsv} {png}", err=True)


@click.group()
@click.option(
    "--data",
    envvar="QUADWALK_DATA",
    default="./quadwalk-data",
    show_default=True,
    help="Data directory holding the store journal.",
)
@click.pass_context
def main(ctx: click.Context, data: str):
    """Quad store, energy walker, and scholarly recommenders."""
    ctx.ensure_object(dict)
    ctx.obj["data"] = data


@main.command()
@click.argument("files", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--graph", required=True, help="Provider graph IRI receiving the records.")
@click.pass_context
def ingest(ctx: click.Context, files: tuple[str, ...], graph: str):
    """Translate OAI-PMH Dublin Core XML files into the store."""
    store = _open_store(ctx.obj["data"])
    provider = _iri(graph, "graph IRI")
    total_records = 0
    total_quads = 0
    try:
        for path in files:
            records = parse_oaipmh(Path(path).read_bytes())
            stats = ingest_records(store, records, provider)
            total_records += stats.records
            total_quads += stats.quads_added
            click.echo(
                f"{path}: {stats.records} records, {stats.quads_added} quads added "
                f"({stats.articles_created} articles, {stats.persons_created} persons, "
                f"{stats.concepts_created} concepts)"
            )
    except OAIParseError as exc:
        raise click.ClickException(str(exc)) from exc
    finally:
        store.close()
    click.echo(f"total: {total_records} records, {total_quads} quads")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8411, show_default=True, type=int)
@click.pass_context
def serve(ctx: click.Context, host: str, port: int):
    """Run the HTTP JSON API."""
    import uvicorn

    store = _open_store(ctx.obj["data"])
    uvicorn.run(create_app(store), host=host, port=port, log_level="info")


def _cfg_from_flags(mode: str, decay: float, threshold: float, max_steps: int, rng_seed: int):
    try:
        return WalkerConfig(
            mode=mode,
            decay=decay,
            energy_threshold=threshold,
            max_steps=max_steps,
            rng_seed=rng_seed,
        )
    except WalkError as exc:
        raise click.ClickException(str(exc)) from exc


@main.command()
@click.argument("grammar")
@click.option("--seed", "seeds", multiple=True, required=True, help="Seed resource IRI (repeatable).")
@click.option("--return-type", "return_types", multiple=True, help="Class IRI filter (discover only).")
@click.option("--concept", default=None, help="Concept IRI (news only).")
@click.option("--now", default=None, help="Feed clock, ISO timestamp (news only).")
@click.option("--half-life", default=7 * 86400.0, show_default=True, type=float, help="Seconds (news only).")
@click.option("--depth", default=2, show_default=True, type=int, help="Coauthor depth (referee only).")
@click.option("--decay", default=0.85, show_default=True, type=float)
@click.option("--threshold", default=1e-4, show_default=True, type=float)
@click.option("--max-steps", default=12, show_default=True, type=int)
@click.option("--mode", default="diffusion", show_default=True, type=click.Choice(["diffusion", "montecarlo"]))
@click.option("--rng-seed", default=7, show_default=True, type=int)
@click.option("--report-dir", default=None, type=click.Path(file_okay=False), help="Write TSV + PNG here.")
@click.pass_context
def recommend(
    ctx: click.Context,
    grammar: str,
    seeds: tuple[str, ...],
    return_types: tuple[str, ...],
    concept: str | None,
    now: str | None,
    half_life: float,
    depth: int,
    decay: float,
    threshold: float,
    max_steps: int,
    mode: str,
    rng_seed: int,
    report_dir: str | None,
):
    """Run a recommender or named grammar over seed resources."""
    store = _open_store(ctx.obj["data"])
    seed_terms = [_iri(s, "seed IRI") for s in seeds]
    cfg = _cfg_from_flags(mode, decay, threshold, max_steps, rng_seed)
    try:
        if grammar == "discover":
            ranked = discover(store, seed_terms, [_iri(t).value for t in return_types], cfg)
        elif grammar == "referee":
            req = RefereeRequest(article=seed_terms[0], max_depth_coauthor=depth, decay=decay)
            ranked = referees(store, req)
        elif grammar == "news":
            if concept is None:
                raise click.ClickException("news needs --concept")
            stamp = parse_datetime(now) if now else None
            if stamp is None:
                from datetime import datetime, timezone

                stamp = datetime.now(timezone.utc)
            req = NewsRequest(
                user=seed_terms[0], concept=_iri(concept), now=stamp, half_life=half_life
            )
            ranked = news(store, req, cfg)
        else:
            loaded = load_named_grammar(grammar)
            ranked = WalkerEngine(store).execute(loaded, seed_terms, cfg).positive()
    except (UnknownGrammarError, UnknownClassError, WalkError, ValueError) as exc:
        raise click.ClickException(str(exc)) from exc
    finally:
        store.close()
    _print_ranked(ranked, report_dir, f"recommend-{grammar}")


@main.command()
@click.argument("metric", type=click.Choice(analytics.METRICS))
@click.argument("resource")
@click.option("--other", default=None, help="Second resource (co_usage).")
@click.option("--year", default=None, type=int, help="Citation year (impact_factor).")
@click.option("--report-dir", default=None, type=click.Path(file_okay=False), help="Write TSV + PNG here.")
@click.pass_context
def stats(
    ctx: click.Context,
    metric: str,
    resource: str,
    other: str | None,
    year: int | None,
    report_dir: str | None,
):
    """Compute one metric for one resource."""
    store = _open_store(ctx.obj["data"])
    try:
        rep = analytics.report(
            store,
            metric,
            _iri(resource, "resource IRI"),
            other=_iri(other) if other else None,
            year=year,
        )
    except ValueError as exc:
        raise click.ClickException(str(exc)) from exc
    finally:
        store.close()
    click.echo(f"{_label(rep.resource)}\t{rep.metric}\t{rep.value:.12g}")
    if rep.window:
        click.echo(f"window\t{rep.window[0]}\t{rep.window[1]}", err=True)
    if report_dir:
        tsv, png = write_report(
            [(_label(rep.resource), rep.value)], report_dir, f"stats-{metric}", value_label=metric
        )
        click.echo(f"report: {tsv} {png}", err=True)


@main.command()
@click.option("--out", required=True, type=click.Path(dir_okay=False, writable=True))
@click.option("--graph", default=None, help="Limit the export to one graph IRI.")
@click.pass_context
def export(ctx: click.Context, out: str, graph: str | None):
    """Serialize the store (or one graph) as sorted N-Quads."""
    store = _open_store(ctx.obj["data"])
    try:
        data = store.export_nquads(graph=_iri(graph) if graph else None)
    finally:
        store.close()
    Path(out).write_bytes(data)
    click.echo(f"wrote {out} ({data.decode('utf-8').count(chr(10))} quads)")


@main.command(name="load")
@click.argument("files", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def load_cmd(ctx: click.Context, files: tuple[str, ...]):
    """Load N-Quads files into the store."""
    store = _open_store(ctx.obj["data"])
    total = 0
    try:
        for path in files:
            added = store.load_nquads(Path(path).read_bytes())
            total += added
            click.echo(f"{path}: {added} quads added")
    except Exception as exc:  # parse errors carry line context
        raise click.ClickException(str(exc)) from exc
    finally:
        store.close()
    click.echo(f"total: {total} quads")


@main.command(name="demo-data")
@click.option(
    "--fixture",
    default="all",
    show_default=True,
    type=click.Choice(["feed", "corpus", "all"]),
)
@click.pass_context
def demo_data(ctx: click.Context, fixture: str):
    """Populate the store with the built-in demo fixtures."""
    store = _open_store(ctx.obj["data"])
    try:
        before = len(store)
        if fixture == "feed":
            demo.build_feed_fixture(store)
        elif fixture == "corpus":
            demo.build_corpus_fixture(store)
        else:
            demo.build_all(store)
        click.echo(f"added {len(store) - before} quads ({fixture})")
    finally:
        store.close()


if __name__ == "__main__":
    main(sys.argv[1:])
