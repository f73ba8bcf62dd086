"""Command-line front-end.

Exit codes: 0 success, 1 property violation, 2 input error, 3 resource limit.
JSON and DOT go to standard output, logs to standard error.
"""
import functools
import logging
import sys

import click

from cli.loader import load_theory
from cli.reports import check_report, lattice_dot, lattice_report, scan_report, systems_report, to_json
from core.errors import EngineError
from core.lattice import enumerate_self_bicommutant
from quantum.decomposition import check_special_pair_claims, parse_decomposition
from verification.suites import SUITES, run_suites


def engine_errors(command):
    """Maps engine errors onto their exit codes"""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except EngineError as e:
            logging.error(f"{type(e).__name__}: {e}")
            click.echo(f"error: {type(e).__name__}: {e}", err=True)
            sys.exit(e.exit_code)
    return wrapper


def theory_options(command):
    command = click.option('--max-order', type=click.IntRange(min=1), default=None,
                           help='Cap on the group order, overriding the configuration and the input.')(command)
    command = click.option('--input', 'input_path', required=True, type=click.Path(dir_okay=False),
                           help='Theory specification (JSON); bare names resolve under data/theories.')(command)
    return command


@click.group()
def cli():
    """Finite-model engine for global reversible process theories."""


@cli.command()
@theory_options
@click.option('--format', 'output_format', type=click.Choice(['json', 'dot']), default='json', show_default=True)
@engine_errors
def lattice(input_path, max_order, output_format):
    """Enumerate the lattice of self-bicommutant subgroups."""
    theory, subgroups = load_theory(input_path, max_order)
    result = enumerate_self_bicommutant(theory)
    if output_format == 'dot':
        click.echo(''.join(lattice_dot(result, subgroups)), nl=False)
    else:
        click.echo(to_json(lattice_report(result, subgroups)))


@cli.command()
@theory_options
@engine_errors
def systems(input_path, max_order):
    """List every system, the named subgroups and the pairwise compatibility matrix."""
    theory, subgroups = load_theory(input_path, max_order)
    click.echo(to_json(systems_report(theory, enumerate_self_bicommutant(theory), subgroups)))


@cli.command()
@theory_options
@click.option('--suite', type=click.Choice([*SUITES, 'all']), default='all', show_default=True)
@engine_errors
def check(input_path, max_order, suite):
    """Run a property suite; exit 1 when any property fails."""
    theory, _ = load_theory(input_path, max_order)
    report = check_report(run_suites(theory, [suite]))
    click.echo(to_json(report))
    if not report['holds']:
        sys.exit(1)


@cli.command()
@click.option('--decomposition', required=True, help='Sector decomposition, e.g. "2x1+1x3".')
@engine_errors
def quantum(decomposition):
    """Sector calculus for a subgroup of the projective unitary group."""
    click.echo(to_json(check_special_pair_claims(parse_decomposition(decomposition))))


@cli.command('scan-mixed')
@theory_options
@engine_errors
def scan_mixed(input_path, max_order):
    """Find subgroups having both product and non-product global states."""
    theory, _ = load_theory(input_path, max_order)
    click.echo(to_json(scan_report(theory, enumerate_self_bicommutant(theory))))


def main():
    logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')
    cli()


if __name__ == "__main__":
    main()
