"""Command-line front door: single-text analysis, corpus tables, curve export.

Exit codes: 0 success, 1 usage/IO problems (unreadable files, missing or
malformed embeddings), 2 metric-domain problems (text too short, no
vocabulary overlap, not enough positive lags).
"""

from __future__ import annotations

import csv
import io
import json
import os
import sys
from pathlib import Path

import click

from .embeddings import EmbeddingTable, load_embedding_table, tokenize, embed_sequence
from .errors import EmbeddingFileError, MetricError
from .lawfit import (
    GRID_MODES,
    AnalysisConfig,
    GapelmaperReport,
    analyze_text,
    effective_tau_max,
)
from .autocorr import autocorrelation_fft

EMBEDDINGS_ENV = "LTG_EMBEDDINGS"

EXIT_IO = 1
EXIT_METRIC = 2


def _fail(message: str, code: int) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _resolve_embeddings(path: str | None) -> str:
    path = path or os.environ.get(EMBEDDINGS_ENV)
    if not path:
        _fail(
            f"no embeddings given; pass --embeddings or set ${EMBEDDINGS_ENV}",
            EXIT_IO,
        )
    return path


def _load_table(path: str | None) -> tuple[EmbeddingTable, str]:
    resolved = _resolve_embeddings(path)
    try:
        return load_embedding_table(resolved), resolved
    except OSError as exc:
        _fail(f"cannot read embeddings: {exc}", EXIT_IO)
    except EmbeddingFileError as exc:
        _fail(f"bad embeddings file: {exc}", EXIT_IO)


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        _fail(str(exc), EXIT_IO)


def _report_lines(report: GapelmaperReport, fmt: str) -> str:
    row = report.to_dict()
    if fmt == "json":
        return json.dumps(row, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(row.keys())
        writer.writerow(row.values())
        return buf.getvalue()
    width = max(len(k) for k in row)
    return "".join(f"{k:<{width}}  {v}\n" for k, v in row.items())


def _analysis_options(fn):
    fn = click.option(
        "--embeddings", type=click.Path(), default=None,
        help=f"Embedding table path (default: ${EMBEDDINGS_ENV}).",
    )(fn)
    fn = click.option("--tau-min", type=int, default=10, show_default=True)(fn)
    fn = click.option("--tau-max", type=int, default=10_000, show_default=True)(fn)
    fn = click.option(
        "--grid", "grid_mode", type=click.Choice(GRID_MODES),
        default="geometric20", show_default=True,
    )(fn)
    return fn


def _config(
    tau_min: int, tau_max: int, grid_mode: str, fmt: str, embeddings_path: str
) -> AnalysisConfig:
    try:
        return AnalysisConfig(
            embeddings_path=embeddings_path, tau_min=tau_min, tau_max=tau_max,
            grid_mode=grid_mode, output_format=fmt,
        )
    except ValueError as exc:
        _fail(str(exc), EXIT_IO)


@click.group()
@click.version_option(package_name="ltg")
def main() -> None:
    """Measure long-range structure of texts and serve the challenge API."""


@main.command()
@click.argument("file_path", metavar="FILE")
@_analysis_options
@click.option(
    "--format", "fmt", type=click.Choice(["json", "csv", "table"]),
    default="json", show_default=True,
)
def analyze(file_path, embeddings, tau_min, tau_max, grid_mode, fmt) -> None:
    """Score one text and print its report."""
    table, resolved = _load_table(embeddings)
    config = _config(tau_min, tau_max, grid_mode, fmt, resolved)
    text = _read_text(file_path)
    try:
        report = analyze_text(text, table, config)
    except MetricError as exc:
        _fail(str(exc), EXIT_METRIC)
    click.echo(_report_lines(report, fmt), nl=False)


@main.command()
@click.argument("directory", metavar="DIR")
@_analysis_options
@click.option(
    "--format", "fmt", type=click.Choice(["csv", "table"]),
    default="table", show_default=True,
)
def corpus(directory, embeddings, tau_min, tau_max, grid_mode, fmt) -> None:
    """Score every file in DIR, one row per file (sorted by name).

    A file that cannot be scored gets its error in the last column;
    other files are unaffected.
    """
    root = Path(directory)
    try:
        files = sorted(
            p for p in root.iterdir() if p.is_file() and not p.name.startswith(".")
        )
    except OSError as exc:
        _fail(str(exc), EXIT_IO)
    if not files:
        _fail(f"no files in {directory}", EXIT_IO)
    table, resolved = _load_table(embeddings)
    config = _config(tau_min, tau_max, grid_mode, fmt, resolved)
    header = ["name", "mape_power", "mape_exp", "gapelmaper", "error"]
    rows: list[list[str]] = []
    for path in files:
        try:
            report = analyze_text(path.read_text(encoding="utf-8"), table, config)
            rows.append(
                [path.name, str(report.mape_power), str(report.mape_exp),
                 str(report.gapelmaper), ""]
            )
        except (OSError, MetricError) as exc:
            code = exc.code if isinstance(exc, MetricError) else "ReadError"
            rows.append([path.name, "", "", "", f"{code}: {exc}"])
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        click.echo(buf.getvalue(), nl=False)
    else:
        widths = [max(len(header[i]), *(len(r[i]) for r in rows)) for i in range(5)]
        for row in [header] + rows:
            click.echo("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())


@main.command()
@click.argument("file_path", metavar="FILE")
@_analysis_options
def curve(file_path, embeddings, tau_min, tau_max, grid_mode) -> None:
    """Print the full autocorrelation curve of FILE as CSV (tau,c).

    Emits every lag from 1 to min(tau-max, N/2), including lags where
    the value is not positive.
    """
    table, resolved = _load_table(embeddings)
    config = _config(tau_min, tau_max, grid_mode, "csv", resolved)
    text = _read_text(file_path)
    try:
        seq = embed_sequence(tokenize(text), table)
        curve_ = autocorrelation_fft(seq, max(1, effective_tau_max(seq.n, config.tau_max)))
    except MetricError as exc:
        _fail(str(exc), EXIT_METRIC)
    out = ["tau,c"]
    out.extend(f"{int(t)},{v}" for t, v in zip(curve_.lags, curve_.values))
    click.echo("\n".join(out))


@main.command()
@click.option("--log", "log_path", type=click.Path(), required=True,
              help="Append-only event log (created if missing).")
@click.option("--prompts", "prompts_path", type=click.Path(exists=True), required=True,
              help="JSON file with the registered prompts.")
@click.option("--embeddings", type=click.Path(), default=None,
              help=f"Embedding table path (default: ${EMBEDDINGS_ENV}).")
@click.option("--min-tokens", type=int, default=40_000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--ui", "ui_dir", type=click.Path(exists=True, file_okay=False),
              default=None, help="Serve this directory as the web UI.")
def serve(log_path, prompts_path, embeddings, min_tokens, host, port, ui_dir) -> None:
    """Run the challenge HTTP service."""
    import uvicorn

    from .service import ChallengeService, create_app, load_prompts

    table, _ = _load_table(embeddings)
    prompts = load_prompts(prompts_path)
    service = ChallengeService(
        log_path, prompts=prompts, table=table, min_tokens=min_tokens
    )
    app = create_app(service, ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
