"""
Command-line interface.

    python cli.py invariants field16.coeff
    python cli.py batch tables/ --format csv --no-timing
    python cli.py family gtf --p 3 --e 1 --n 5 --k 1 --m 2 --auto-c
"""
import functools
import sys
from pathlib import Path
from typing import Optional
import logging

import click

from config import settings
from core.belconfig import (
    configuration_from_decomposition,
    decomposition_algebra,
    decomposition_from_rank_factorization,
    verify_configuration,
)
from core.belrank import bel_rank, witness_isotope
from core.errors import (
    DegenerateUError,
    DegenerateWError,
    NotASemifieldError,
    ParseError,
    SearchSpaceTooLargeError,
    SemifieldError,
)
from core.families import (
    field_semifield,
    frobenius_twist_form,
    gtf,
    relative_trace_form,
)
from core.formats import (
    format_coeff,
    format_decomp,
    format_table,
    read_algebra,
    read_decomposition,
    write_text,
)
from core.gf import get_context
from core.linmap import LinMap
from core.semifield import knuth, rebase
from engine import InvariantEngine, load_labels, render_records, render_summary
from models import ConfigurationReport

logger = logging.getLogger(__name__)

EXIT_CODES = (
    (ParseError, 2),
    (NotASemifieldError, 3),
    (SearchSpaceTooLargeError, 4),
)


def exit_code_for(error: Exception) -> int:
    for kind, code in EXIT_CODES:
        if isinstance(error, kind):
            return code
    return 1


def handle_errors(command):
    """Report errors on stderr and exit with their code."""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except (SemifieldError, ValueError) as e:
            click.echo(f"error: {e}", err=True)
            if isinstance(e, SearchSpaceTooLargeError):
                click.echo("hint: rerun with --mode budget --budget N", err=True)
            sys.exit(exit_code_for(e))
    return wrapper


def search_options(command):
    """Rank search and output flags shared by the invariant commands."""
    options = [
        click.option("--mode", type=click.Choice(["exhaustive", "budget"]), default=None,
                     help="Rank search mode."),
        click.option("--budget", type=int, default=None, help="Random candidates in budget mode."),
        click.option("--seed", type=int, default=None, help="Seed of the budget-mode generator."),
        click.option("--threads", type=int, default=None, help="Worker processes for the exhaustive search."),
        click.option("--early-exit/--no-early-exit", default=None,
                     help="Stop once the nuclei lower bound is reached."),
        click.option("--format", "fmt", type=click.Choice(["jsonl", "csv"]), default=None),
        click.option("--force", is_flag=True, help="Skip the semifield check."),
        click.option("--no-timing", is_flag=True, help="Write millis as null."),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def make_engine(mode, budget, seed, threads, early_exit, force, no_timing) -> InvariantEngine:
    return InvariantEngine(
        mode=mode,
        budget=budget,
        seed=seed,
        threads=threads,
        early_exit=early_exit,
        force=force,
        include_timing=False if no_timing else None,
    )


def emit(text: str, output: Optional[str]) -> None:
    if output:
        write_text(output, text)
    else:
        click.echo(text, nl=False)


output_option = click.option("-o", "--output", type=click.Path(dir_okay=False), default=None,
                             help="Write to a file instead of stdout.")


@click.group()
@click.option("--verbose", is_flag=True, help="Debug logging.")
def cli(verbose: bool):
    """Matrix rank and BEL-rank invariants of finite semifields."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else settings.log_level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )


@cli.command()
@click.argument("input_path", type=click.Path(exists=True, dir_okay=False))
@search_options
@handle_errors
def invariants(input_path, mode, budget, seed, threads, early_exit, fmt, force, no_timing):
    """Invariant record of one COEFF, TABLE or DECOMP file."""
    engine = make_engine(mode, budget, seed, threads, early_exit, force, no_timing)
    path = Path(input_path)
    record = engine.analyze(read_algebra(path), path.name)
    click.echo(render_records([record], fmt or settings.output_format), nl=False)


@cli.command()
@click.argument("directory", type=click.Path(exists=True, file_okay=False))
@click.option("--labels", "labels_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="CSV of file,label rows for per-label histograms.")
@click.option("--save-report", is_flag=True, help="Also save a JSON report under the reports directory.")
@search_options
@handle_errors
def batch(directory, labels_path, save_report, mode, budget, seed, threads, early_exit, fmt, force, no_timing):
    """One record per file in DIRECTORY, followed by the brk histogram."""
    engine = make_engine(mode, budget, seed, threads, early_exit, force, no_timing)
    labels = load_labels(Path(labels_path)) if labels_path else None
    report = engine.analyze_directory(Path(directory), labels)
    if not report.records:
        return
    fmt = fmt or settings.output_format
    click.echo(render_records(report.records, fmt), nl=False)
    click.echo(render_summary(report, fmt), nl=False)
    if save_report:
        engine.save_report(report)


@cli.command()
@click.argument("kind", type=click.Choice(["field", "gtf", "twist", "trace"]))
@click.option("--p", "p", type=int, required=True)
@click.option("--e", "e", type=int, default=1, show_default=True)
@click.option("--n", "n", type=int, required=True)
@click.option("--k", "k", type=int, default=1, show_default=True, help="Twist exponent (gtf, twist).")
@click.option("--m", "m", type=int, default=2, show_default=True, help="Second twist exponent (gtf).")
@click.option("--c", "c", type=int, default=None, help="GTF constant as an element code.")
@click.option("--auto-c", is_flag=True, help="Use the smallest valid GTF constant.")
@click.option("--f", "f_text", default=None, help="Coefficients of f (twist, trace).")
@click.option("--s", "s", type=int, default=1, show_default=True, help="Trace subfield degree (trace).")
@click.option("--table", "as_table", is_flag=True, help="Emit a TABLE file instead of COEFF.")
@output_option
@handle_errors
def family(kind, p, e, n, k, m, c, auto_c, f_text, s, as_table, output):
    """Build a field, GTF or two-term form."""
    ctx = get_context(p, e, n)
    if kind == "field":
        S = field_semifield(ctx)
    elif kind == "gtf":
        if (c is None) == (not auto_c):
            raise click.UsageError("gtf needs exactly one of --c or --auto-c")
        S = gtf(ctx, k, m, None if auto_c else c)
    else:
        if f_text is None:
            raise click.UsageError(f"--f is required for {kind}")
        f = LinMap.from_text(ctx, f_text)
        S = frobenius_twist_form(ctx, f, k) if kind == "twist" else relative_trace_form(ctx, f, s)
    emit(format_table(S) if as_table else format_coeff(S), output)


@cli.command()
@click.argument("input_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--to", "target", type=click.Choice(["coeff", "table"]), required=True)
@output_option
@handle_errors
def convert(input_path, target, output):
    """Convert between COEFF and TABLE (DECOMP input is accepted too)."""
    S = read_algebra(input_path)
    emit(format_table(S) if target == "table" else format_coeff(S), output)


@cli.command("verify-bel")
@click.argument("decomp_path", type=click.Path(exists=True, dir_okay=False))
@handle_errors
def verify_bel(decomp_path):
    """Check the configuration of a DECOMP file against the Desarguesian spread."""
    D = read_decomposition(decomp_path)
    try:
        report = verify_configuration(configuration_from_decomposition(D))
    except (DegenerateUError, DegenerateWError) as e:
        report = ConfigurationReport(ok=False, r=D.r, dim_u=0, dim_w=0)
        click.echo(f"degenerate configuration: {e}", err=True)
    click.echo(report.model_dump_json())
    if not report.ok:
        sys.exit(3)


@cli.command("knuth")
@click.argument("input_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--word", required=True, help="Word over d and t, applied left to right.")
@output_option
@handle_errors
def knuth_command(input_path, word, output):
    """Apply dual/transpose operations and emit COEFF."""
    if set(word) - {"d", "t"}:
        raise click.BadParameter("only the letters d and t are allowed", param_hint="--word")
    emit(format_coeff(knuth(read_algebra(input_path), word)), output)


@cli.command()
@click.argument("input_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--minimal", is_flag=True, help="Decompose the rank-minimising isotope (r = brk).")
@click.option("--mode", type=click.Choice(["exhaustive", "budget"]), default=None)
@click.option("--budget", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--threads", type=int, default=None)
@output_option
@handle_errors
def decompose(input_path, minimal, mode, budget, seed, threads, output):
    """Write the DECOMP file of the rank factorisation of M(S^dtd)."""
    S = read_algebra(input_path)
    if minimal:
        result = bel_rank(S, mode=mode, budget=budget, seed=seed, threads=threads)
        S = witness_isotope(S, result)
    D = decomposition_from_rank_factorization(S)
    if decomposition_algebra(D) != S:
        raise SemifieldError("rank factorisation does not reproduce the algebra")
    emit(format_decomp(D), output)


@cli.command("rebase")
@click.argument("input_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--e", "e_prime", type=int, required=True, help="Exponent of the smaller base field p^e'.")
@output_option
@handle_errors
def rebase_command(input_path, e_prime, output):
    """Re-express the algebra over the subfield F_{p^e'}."""
    emit(format_coeff(rebase(read_algebra(input_path), e_prime)), output)


if __name__ == "__main__":
    cli()
