"""Command-line entry points: serve the API, or run/analyze/validate levels
directly from files."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .analysis import analyze_level
from .board import RouteExplosion
from .engine import InvalidConfig, mine_from_doc, run_to_completion
from .levels import build_config, build_mutants, level_from_doc, validate
from .serialize import ParseError, SchemaError


def _load_level_file(path: str):
    try:
        doc = json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise click.ClickException(f"no such file: {path}")
    except json.JSONDecodeError as e:
        raise click.ClickException(f"{path} is not valid JSON: {e}")
    try:
        return level_from_doc(doc)
    except (SchemaError, ParseError) as e:
        raise click.ClickException(f"{path}: {e}")


@click.group()
def main() -> None:
    """Critter mine game tools."""


@main.command()
@click.option("--data-dir", default="data", show_default=True, envvar="DATA_DIR")
@click.option("--port", default=8000, show_default=True, type=int, envvar="PORT")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--ui-dir", default=None, help="Directory of built UI assets to serve at /")
def serve(data_dir: str, port: int, host: str, ui_dir: str | None) -> None:
    """Run the HTTP API (and optionally the browser UI)."""
    import uvicorn

    from .service import create_app

    app = create_app(Path(data_dir), Path(ui_dir) if ui_dir else None)
    uvicorn.run(app, host=host, port=port)


@main.command("run-level")
@click.option("--level", "level_path", required=True, help="Level JSON file")
@click.option("--mines", "mines_path", required=True, help="JSON file with a list of mines")
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
def run_level(level_path: str, mines_path: str, seed: int, fmt: str) -> None:
    """Simulate one game and print the score report."""
    level = _load_level_file(level_path)
    try:
        mine_docs = json.loads(Path(mines_path).read_text())
        mines = [mine_from_doc(m) for m in mine_docs]
    except FileNotFoundError:
        raise click.ClickException(f"no such file: {mines_path}")
    except (json.JSONDecodeError, SchemaError, ParseError) as e:
        raise click.ClickException(f"{mines_path}: {e}")
    try:
        state, report = run_to_completion(build_config(level, mines, seed))
    except InvalidConfig as e:
        raise click.ClickException(str(e))
    if fmt == "json":
        click.echo(json.dumps({"seed": seed, "score": report.to_doc(), "events": state.events}))
        return
    click.echo(f"level: {level.name} (seed {seed})")
    click.echo(f"healthy saved:   {report.healthy_saved}")
    click.echo(f"healthy trapped: {report.healthy_trapped}")
    click.echo(f"mutants trapped: {report.mutants_trapped}")
    click.echo(f"mutants escaped: {report.mutants_escaped}")
    click.echo(f"mines used:      {report.mines_used}")
    click.echo(f"time bonus:      {report.time_bonus}")
    click.echo(f"total:           {report.total}")


@main.command()
@click.option("--level", "level_path", required=True, help="Level JSON file")
@click.option("--cap", default=10_000, show_default=True, type=int, help="Route enumeration cap")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
def analyze(level_path: str, cap: int, fmt: str) -> None:
    """Print the kill matrix, minimal mine set and equivalent mutants."""
    level = _load_level_file(level_path)
    try:
        report = analyze_level(level.board, level.cut, build_mutants(level), cap)
    except RouteExplosion as e:
        raise click.ClickException(str(e))
    doc = report.to_doc()
    if fmt == "json":
        click.echo(json.dumps(doc))
        return
    click.echo(f"routes: {doc['routeCount']}")
    click.echo(f"candidate mines: {len(doc['mines'])}")
    click.echo(f"minimal mine set ({doc['certificate']['status']}): {len(doc['minimalMines'])} mines")
    for mine in doc["minimalMines"]:
        click.echo(f"  - at ({mine['x']},{mine['y']})")
    if doc["equivalentMutants"]:
        click.echo("equivalent mutants: " + ", ".join(doc["equivalentMutants"]))
    else:
        click.echo("equivalent mutants: none")


@main.command("validate")
@click.option("--level", "level_path", required=True, help="Level JSON file")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
def validate_cmd(level_path: str, fmt: str) -> None:
    """Check a level and exit 2 if it has errors."""
    level = _load_level_file(level_path)
    issues = validate(level)
    if fmt == "json":
        click.echo(
            json.dumps(
                {"issues": [{"severity": i.severity, "code": i.code, "detail": i.detail} for i in issues]}
            )
        )
    else:
        if not issues:
            click.echo("ok: no issues")
        for issue in issues:
            click.echo(str(issue))
    if any(i.severity == "ERROR" for i in issues):
        sys.exit(2)


if __name__ == "__main__":
    main()
