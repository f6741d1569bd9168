"""RadoKit CLI - partition regularity toolkit command line interface."""
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, NoReturn, Optional

import typer
from pydantic import ValidationError as PydanticValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape
from rich.table import Table

from radokit_core import __version__, api
from radokit_core.cache import ResultCache
from radokit_core.config import get_config, get_config_manager
from radokit_core.exceptions import ParseError, RadoKitError, ResourceExceeded, SemanticError
from radokit_core.schemas import BatchJob
from radokit_core.utils import format_int_set

# Setup logging; stderr keeps --json output on stdout clean
logging.basicConfig(
    level=logging.INFO,
    format="%(message)s",
    handlers=[RichHandler(console=Console(stderr=True), rich_tracebacks=True, show_path=False)]
)
logger = logging.getLogger("radokit")

# Rich console for pretty output
console = Console()

# CLI app
app = typer.Typer(
    name="radokit",
    help="RadoKit - u-equivalence, Rado witnesses and monochromatic solution search",
    no_args_is_help=True,
)

config_app = typer.Typer(help="Configuration commands")
app.add_typer(config_app, name="config")

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_PARSE = 2
EXIT_SEMANTIC = 3
EXIT_RESOURCE = 4

_state: dict[str, Any] = {"cache": True}

JSON_OPTION = typer.Option(False, "--json", help="Print the result as JSON")


def exit_code_for(e: Exception) -> int:
    """Map an exception to the CLI exit-code contract."""
    if isinstance(e, ParseError):
        return EXIT_PARSE
    if isinstance(e, SemanticError):
        return EXIT_SEMANTIC
    if isinstance(e, ResourceExceeded):
        return EXIT_RESOURCE
    return EXIT_INTERNAL


def error_document(e: Exception) -> dict[str, Any]:
    """JSON form of an error."""
    doc: dict[str, Any] = {"error": str(e), "exit_code": exit_code_for(e), "type": type(e).__name__}
    if isinstance(e, ParseError):
        doc["position"] = e.position
    if isinstance(e, ResourceExceeded):
        doc["nodes"] = e.used
        doc["partial"] = e.partial
    return doc


def handle_error(e: Exception, as_json: bool = False) -> NoReturn:
    """Handle and display errors nicely."""
    code = exit_code_for(e)
    if as_json:
        typer.echo(json.dumps(error_document(e), sort_keys=True))
    elif isinstance(e, RadoKitError):
        console.print(f"[red]Error:[/red] {escape(str(e))}")
        if isinstance(e, ResourceExceeded) and e.partial:
            depth = e.partial.get("not_forced_up_to")
            console.print(f"  Partial: a valid coloring of 1..{depth} was found before the budget ran out")
            console.print("  Raise the budget with --budget or RADOKIT_BUDGET.")
    else:
        console.print(f"[red]Unexpected error:[/red] {escape(str(e))}")
    if code == EXIT_INTERNAL:
        logger.exception("Unexpected error")
    raise typer.Exit(code)


def _get_cache() -> Optional[ResultCache]:
    config = get_config()
    if not (_state["cache"] and config.cache_enabled):
        return None
    return ResultCache(config.resolved_cache_path)


def _run(command: str, args: dict[str, Any], as_json: bool, render: Callable[[dict[str, Any]], None]) -> None:
    try:
        result = api.execute(command, args, _get_cache())
    except Exception as e:
        handle_error(e, as_json)
    if as_json:
        typer.echo(json.dumps(result, sort_keys=True))
    else:
        render(result)


def _fmt(values: list[str]) -> str:
    return "[" + ",".join(values) + "]"


@app.callback()
def main_callback(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable debug logging"),
    no_cache: bool = typer.Option(False, "--no-cache", help="Do not read or write the result cache"),
):
    """RadoKit - u-equivalence, Rado witnesses and monochromatic solution search."""
    _state["cache"] = not no_cache
    logging.getLogger().setLevel(logging.DEBUG if verbose else get_config().log_level.upper())


# ============================================================================
# u-equivalence Commands
# ============================================================================

@app.command("canon")
def canon_cmd(
    string: Optional[str] = typer.Argument(None, help="String literal, e.g. '[3,0,0,-4,1,1]'"),
    file: Optional[Path] = typer.Option(None, "--file", "-f", help="Read the string literal from a file"),
    trace: bool = typer.Option(False, "--trace", help="Show every reduction step"),
    as_json: bool = JSON_OPTION,
):
    """Reduce an integer string to its normal form."""
    if file is not None:
        try:
            string = file.read_text(encoding="utf-8").strip()
        except OSError as e:
            handle_error(e, as_json)
    if string is None:
        handle_error(ParseError("a string literal or --file is required", 1), as_json)

    def render(result: dict[str, Any]) -> None:
        for step in result.get("trace") or []:
            console.print(f"  {step['rule']:<8} @{step['index']}: {_fmt(step['result'])}", markup=False)
        console.print(_fmt(result["canonical"]), markup=False)

    _run("canon", {"string": string, "trace": trace}, as_json, render)


@app.command("equal")
def equal_cmd(
    left: str = typer.Argument(..., help="Combination, e.g. '2U (+) U'"),
    right: str = typer.Argument(..., help="Combination, e.g. '2U (+) 2U (+) U'"),
    as_json: bool = JSON_OPTION,
):
    """Decide whether two combinations agree for every idempotent U."""
    def render(result: dict[str, Any]) -> None:
        verdict = "[green]true[/green]" if result["equal"] else "[red]false[/red]"
        console.print(verdict)
        console.print(f"  left:  {escape(result['left'])}")
        console.print(f"  right: {escape(result['right'])}")

    _run("equal", {"left": left, "right": right}, as_json, render)


# ============================================================================
# Witness Commands
# ============================================================================

def _render_verification(report: dict[str, Any]) -> None:
    table = Table(title="Family Verification")
    table.add_column("Check", style="cyan")
    table.add_column("Result")
    for key, label in (
        ("sum_zero", "sum c_i P_i = 0"),
        ("all_u_equivalent", "every P_i u-equivalent to target"),
        ("pairwise_distinct", "P_i pairwise distinct"),
    ):
        table.add_row(label, "[green]yes[/green]" if report[key] else "[red]no[/red]")
    console.print(table)


@app.command("witness")
def witness_cmd(
    equation: str = typer.Argument(..., help="Equation, e.g. '3x1+x2+x3-x4-4x5=0'"),
    verify: bool = typer.Option(False, "--verify", help="Also verify the constructed family"),
    as_json: bool = JSON_OPTION,
):
    """Compute the witness combination of a sum-zero equation."""
    def render(result: dict[str, Any]) -> None:
        console.print(f"\n[bold]Equation:[/bold] {escape(result['equation'])}")
        console.print(f"  Sorted coefficients: {_fmt(result['sorted_coeffs'])}", markup=False)
        console.print(f"  Permutation: {result['permutation']}", markup=False)
        console.print(f"  a = {_fmt(result['witness'])}", markup=False)
        console.print(f"  Combination: {escape(result['combination'])}")
        status = "[green]holds[/green]" if result["system_holds"] else "[red]fails[/red]"
        console.print(f"  Linear system: {status}")
        if result.get("verification"):
            _render_verification(result["verification"])

    _run("witness", {"equation": equation, "verify": verify}, as_json, render)


@app.command("family")
def family_cmd(
    equation: str = typer.Argument(..., help="Equation, e.g. 'x+y-2z=0'"),
    as_json: bool = JSON_OPTION,
):
    """Show the polynomial family built from the witness."""
    def render(result: dict[str, Any]) -> None:
        table = Table(title=f"Family for a = {_fmt(result['witness'])}")
        table.add_column("P", style="cyan")
        table.add_column("Coefficients")
        table.add_column("Polynomial", style="magenta")
        for i, (coeffs, poly) in enumerate(zip(result["family"], result["polynomials"]), start=1):
            table.add_row(f"P{i}", escape(_fmt(coeffs)), poly)
        console.print(table)

    _run("family", {"equation": equation}, as_json, render)


@app.command("verify")
def verify_cmd(
    equation: Optional[str] = typer.Argument(None, help="Equation the family should solve"),
    target: Optional[str] = typer.Option(None, "--target", "-t", help="Target string, e.g. '[1,2]'"),
    family: Optional[str] = typer.Option(None, "--family", help="Family as JSON, e.g. '[[1,2,2],[1,0,2],[1,1,2]]'"),
    distinct: bool = typer.Option(True, "--distinct/--no-distinct", help="Require pairwise distinct members"),
    example: Optional[str] = typer.Option(None, "--example", help="Built-in example (3ap)"),
    as_json: bool = JSON_OPTION,
):
    """Verify a polynomial family (the constructed one by default)."""
    args = {"equation": equation, "target": target, "family": family, "distinct": distinct, "example": example}
    _run("verify", args, as_json, _render_verification)


# ============================================================================
# Search Commands
# ============================================================================

@app.command("solve")
def solve_cmd(
    equation: str = typer.Argument(..., help="Equation, e.g. 'x+y-2z=0'"),
    members: Optional[str] = typer.Option(None, "--set", "-s", help="Finite set, e.g. '1,2,3'"),
    n_max: Optional[int] = typer.Option(None, "--max", "-n", help="Use the set 1..N"),
    distinct: bool = typer.Option(False, "--distinct", help="Require pairwise distinct entries"),
    limit: Optional[int] = typer.Option(None, "--limit", "-l", help="Maximum number of solutions"),
    as_json: bool = JSON_OPTION,
):
    """List solutions inside a finite set."""
    def render(result: dict[str, Any]) -> None:
        if not result["solutions"]:
            console.print("No solutions found.")
            return
        for sol in result["solutions"]:
            console.print(f"  ({', '.join(sol)})", markup=False)
        console.print(f"\n{result['count']} solution(s)")

    args = {"equation": equation, "members": members, "n_max": n_max, "distinct": distinct, "limit": limit}
    _run("solve", args, as_json, render)


@app.command("force")
def force_cmd(
    equation: str = typer.Argument(..., help="Equation, e.g. 'x+y-2z=0'"),
    colors: int = typer.Option(2, "--colors", "-r", help="Number of colors"),
    distinct: bool = typer.Option(False, "--distinct", help="Require pairwise distinct solutions"),
    n_max: int = typer.Option(12, "--max", "-n", help="Largest segment 1..N to search"),
    budget: Optional[int] = typer.Option(None, "--budget", "-b", help="Node budget (default: RADOKIT_BUDGET or 10^8)"),
    symmetry: Optional[bool] = typer.Option(None, "--symmetry/--no-symmetry", help="Break color symmetry"),
    workers: Optional[int] = typer.Option(None, "--workers", "-w", help="Worker processes (0 = all CPUs)"),
    exhaustive: bool = typer.Option(False, "--exhaustive", help="Try every coloring without pruning"),
    as_json: bool = JSON_OPTION,
):
    """Find the least N forcing a monochromatic solution in every coloring."""
    config = get_config()
    args = {
        "equation": equation,
        "colors": colors,
        "distinct": distinct,
        "n_max": n_max,
        "budget": budget if budget is not None else config.budget,
        "symmetry": symmetry if symmetry is not None else config.symmetry_breaking,
        "workers": workers if workers is not None else config.workers,
        "exhaustive": exhaustive,
    }

    def render(result: dict[str, Any]) -> None:
        if result["forced"]:
            console.print(
                f"[green]Forced:[/green] every {colors}-coloring of 1..{result['n']} "
                "contains a monochromatic solution"
            )
        else:
            console.print(f"[yellow]Not forced[/yellow] on 1..{result['n']}")
            console.print(f"  Certificate coloring: {result['certificate']}", markup=False)
        console.print(f"  Nodes explored: {result['nodes']}")

    _run("force", args, as_json, render)


def _render_sums(result: dict[str, Any]) -> None:
    console.print(format_int_set(int(v) for v in result["sums"]), markup=False)
    console.print(f"  {result['count']} sum(s)")
    if result.get("monochromatic_color") is not None:
        console.print(f"  Monochromatic in color {result['monochromatic_color']}")


@app.command("mtsums")
def mtsums_cmd(
    ground: str = typer.Option(..., "--ground", "-g", help="Strictly increasing ground sequence, e.g. '1,2,3'"),
    coeffs: str = typer.Option("1", "--coeffs", "-c", help="Block coefficients, e.g. '2,1'"),
    coloring: Optional[str] = typer.Option(None, "--coloring", help="Coloring of 1..N as JSON to test"),
    as_json: bool = JSON_OPTION,
):
    """Enumerate Milliken-Taylor sums."""
    _run("mtsums", {"ground": ground, "coeffs": coeffs, "coloring": coloring}, as_json, _render_sums)


@app.command("fs")
def fs_cmd(
    ground: str = typer.Option(..., "--ground", "-g", help="Strictly increasing ground sequence, e.g. '1,2,4'"),
    coloring: Optional[str] = typer.Option(None, "--coloring", help="Coloring of 1..N as JSON to test"),
    as_json: bool = JSON_OPTION,
):
    """Enumerate the finite sums of a sequence."""
    _run("fs", {"ground": ground, "coloring": coloring}, as_json, _render_sums)


# ============================================================================
# Batch and Misc Commands
# ============================================================================

@app.command("batch")
def batch_cmd():
    """Run jobs from stdin, one JSON object {"command": ..., "args": {...}} per line."""
    cache = _get_cache()
    first_failure = EXIT_OK
    for lineno, line in enumerate(sys.stdin, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            job = BatchJob.model_validate_json(line)
        except PydanticValidationError as e:
            error = ParseError(f"line {lineno}: not a valid job ({e.error_count()} errors)", 1)
            typer.echo(json.dumps({"ok": False, **error_document(error)}, sort_keys=True))
            first_failure = first_failure or EXIT_PARSE
            continue
        try:
            result = api.execute(job.command, job.args, cache)
        except Exception as e:
            if exit_code_for(e) == EXIT_INTERNAL:
                logger.exception(f"Job on line {lineno} failed")
            doc = {"ok": False, "command": job.command, **error_document(e)}
            typer.echo(json.dumps(doc, sort_keys=True))
            first_failure = first_failure or exit_code_for(e)
            continue
        typer.echo(json.dumps({"ok": True, "command": job.command, "result": result}, sort_keys=True))
    if first_failure:
        raise typer.Exit(first_failure)


# ============================================================================
# Config Commands
# ============================================================================

@config_app.command("show")
def show_config_cmd():
    """Show current configuration."""
    config = get_config()
    console.print("\n[bold]RadoKit Configuration:[/bold]")
    for key, value in config.model_dump().items():
        console.print(f"  {key}: {value}", markup=False)


@config_app.command("path")
def config_path_cmd():
    """Show configuration file path."""
    console.print(f"Config file: {get_config_manager().config_path}", markup=False)


@config_app.command("set")
def config_set_cmd(
    key: str = typer.Argument(..., help="Setting name, e.g. budget"),
    value: str = typer.Argument(..., help="New value"),
):
    """Store a setting in the config file."""
    manager = get_config_manager()
    try:
        manager.update(**{key: value})
        manager.save()
    except (RadoKitError, OSError) as e:
        handle_error(e, False)
    console.print(f"[green]✓[/green] {key} = {manager.file_values[key]}")


@config_app.command("reset")
def config_reset_cmd():
    """Restore default settings in the config file."""
    manager = get_config_manager()
    manager.reset()
    try:
        manager.save()
    except OSError as e:
        handle_error(e, False)
    console.print("[green]✓[/green] Configuration reset to defaults")


# ============================================================================
# Root Commands
# ============================================================================

@app.command("version")
def version_cmd():
    """Show RadoKit version."""
    console.print(f"RadoKit v{__version__}")


def main():
    """Main entry point."""
    try:
        app()
    except KeyboardInterrupt:
        console.print("\n[dim]Interrupted[/dim]")
        sys.exit(0)


if __name__ == "__main__":
    main()
