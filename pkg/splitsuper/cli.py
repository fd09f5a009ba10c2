"""
Command line interface for splitsuper.

Usage:
    splitsuper [--json] [--non-regular] COMMAND ...

Exit codes: 0 success, 1 usage, 2 parse, 3 validation failure,
4 not split or hypotheses unmet, 5 internal assertion.
"""

import logging
import sys
from typing import Callable, Dict, Optional, Tuple

import click

from splitsuper import __version__, config, reports
from splitsuper.catalog import CATALOG, get_entry
from splitsuper.exceptions import SuperalgebraError
from splitsuper.models.superalgebra import Superalgebra
from splitsuper.utils.exactlin import Subspace

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 3
EXIT_THEOREM = 5


class SplitsuperGroup(click.Group):
    """Maps usage errors to exit 1 and returns the command's own exit code."""

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            code = super().main(args=args, prog_name=prog_name, complete_var=complete_var,
                                standalone_mode=False, **extra)
        except click.ClickException as e:
            e.show()
            sys.exit(EXIT_USAGE)
        except click.Abort:
            click.echo('Aborted!', err=True)
            sys.exit(EXIT_USAGE)
        sys.exit(code if isinstance(code, int) else EXIT_OK)


def _emit(ctx: click.Context, command: str, produce: Callable[[], Tuple[Dict, int]]) -> int:
    try:
        body, code = produce()
    except SuperalgebraError as e:
        logger.error(f"{command} failed with {e.category}: {e.message}")
        body, code = reports.error_report(e), e.exit_code
    report = reports.envelope(command, body)
    if ctx.obj['json']:
        click.echo(reports.to_json(report))
    else:
        click.echo(reports.render_text(report))
    return code


def _parse_indices(value: Optional[str]) -> Optional[list]:
    if value is None:
        return None
    try:
        return [int(part) for part in value.split(',') if part.strip()]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated basis indices, got {value!r}", param_hint='--magsa')


def _load(ctx: click.Context, path: str) -> Tuple[Superalgebra, Optional[Subspace]]:
    from splitsuper.utils.document_parser import load_document

    alg, H = load_document(path)
    if ctx.obj['non_regular'] and alg.regular:
        alg = alg.with_twist(alg.twist, regular=False)
    return alg, H


def _pipeline(ctx: click.Context, path: str, magsa: Optional[str] = None):
    """Load, validate, pick the MAGSA and decompose into root spaces."""
    from splitsuper.services.homsuper_service import require_valid
    from splitsuper.services.rootspace_service import (
        extend_to_magsa, magsa_from_indices, root_decomposition, verify_magsa
    )

    indices = _parse_indices(magsa)
    alg, H = _load(ctx, path)
    require_valid(alg)
    if indices is not None:
        H = magsa_from_indices(alg, indices)
    elif H is None:
        logger.warning("No MAGSA given; using a greedy abelian graded phi-stable subspace")
        H = extend_to_magsa(alg)
    magsa_check = verify_magsa(alg, H)
    dec = root_decomposition(alg, H)
    return alg, dec, magsa_check


@click.group(cls=SplitsuperGroup)
@click.version_option(__version__, prog_name='splitsuper')
@click.option('--json', 'as_json', is_flag=True, help='Emit machine-readable JSON reports.')
@click.option('--non-regular', is_flag=True, help='Treat the twist as possibly non-invertible.')
@click.pass_context
def cli(ctx, as_json, non_regular):
    """Structure theory of split regular Hom-Lie superalgebras."""
    logging.basicConfig(
        level=getattr(logging, config.LOG_LEVEL.upper(), logging.WARNING),
        format=config.LOG_FORMAT,
        stream=sys.stderr,
    )
    ctx.ensure_object(dict)
    ctx.obj['json'] = as_json
    ctx.obj['non_regular'] = non_regular


@cli.command()
@click.argument('path', type=click.Path(dir_okay=False))
@click.pass_context
def validate(ctx, path):
    """Check every Hom-Lie superalgebra axiom."""
    from splitsuper.services.homsuper_service import validate as validate_algebra

    def produce():
        alg, _ = _load(ctx, path)
        report = validate_algebra(alg)
        return reports.validation_report(alg, report), EXIT_OK if report.passed else EXIT_VALIDATION

    return _emit(ctx, 'validate', produce)


@cli.command()
@click.argument('path', type=click.Path(dir_okay=False))
@click.option('--magsa', default=None, help='Comma-separated basis indices spanning H.')
@click.pass_context
def roots(ctx, path, magsa):
    """Root system, root spaces and phi-cycles."""
    def produce():
        alg, dec, magsa_check = _pipeline(ctx, path, magsa)
        return reports.roots_report(alg, dec, magsa_check), EXIT_OK

    return _emit(ctx, 'roots', produce)


@cli.command()
@click.argument('path', type=click.Path(dir_okay=False))
@click.option('--magsa', default=None, help='Comma-separated basis indices spanning H.')
@click.option('--pair', nargs=2, type=int, default=None, help='Two root indices to test.')
@click.option('--witness', is_flag=True, help='Include connection chains.')
@click.pass_context
def connections(ctx, path, magsa, pair, witness):
    """Partition the roots into connection classes."""
    from splitsuper.services.connection_service import are_connected, connection_classes, connection_witness

    def produce():
        alg, dec, _ = _pipeline(ctx, path, magsa)
        for index in pair or ():
            if not 0 <= index < len(dec.roots):
                raise click.BadParameter(f"root index {index} out of range", param_hint='--pair')
        partition = connection_classes(dec)
        connected = are_connected(dec, pair[0], pair[1]) if pair else None
        witnesses = None
        if witness and pair:
            witnesses = [connection_witness(dec, pair[0], pair[1])]
        elif witness:
            witnesses = [connection_witness(dec, min(members), b)
                         for members in partition.classes for b in members]
        return reports.connections_report(partition, pair, connected, witnesses), EXIT_OK

    return _emit(ctx, 'connections', produce)


@cli.command()
@click.argument('path', type=click.Path(dir_okay=False))
@click.option('--magsa', default=None, help='Comma-separated basis indices spanning H.')
@click.pass_context
def decompose(ctx, path, magsa):
    """L = U + sum of the class ideals."""
    from splitsuper.services.connection_service import connection_classes
    from splitsuper.services.decomposition_service import global_decomposition

    def produce():
        alg, dec, _ = _pipeline(ctx, path, magsa)
        partition = connection_classes(dec)
        decomposition = global_decomposition(dec, partition)
        return reports.decomposition_report(alg, partition, decomposition), EXIT_OK

    return _emit(ctx, 'decompose', produce)


@cli.command()
@click.argument('path', type=click.Path(dir_okay=False))
@click.option('--magsa', default=None, help='Comma-separated basis indices spanning H.')
@click.pass_context
def simplicity(ctx, path, magsa):
    """Structure flags and a graded simplicity verdict."""
    from splitsuper.services.connection_service import connection_classes
    from splitsuper.services.decomposition_service import certify_simple, structure_flags

    def produce():
        alg, dec, _ = _pipeline(ctx, path, magsa)
        partition = connection_classes(dec)
        flags = structure_flags(dec, partition)
        verdict = certify_simple(alg, dec, partition)
        return reports.simplicity_report(alg, flags, verdict), EXIT_OK

    return _emit(ctx, 'simplicity', produce)


@cli.command()
@click.argument('path', type=click.Path(dir_okay=False))
@click.option('--magsa', default=None, help='Comma-separated basis indices spanning H.')
@click.pass_context
def components(ctx, path, magsa):
    """Decompose into simple components."""
    from splitsuper.services.connection_service import connection_classes
    from splitsuper.services.decomposition_service import simple_components

    def produce():
        alg, dec, _ = _pipeline(ctx, path, magsa)
        partition = connection_classes(dec)
        return reports.components_report(alg, simple_components(alg, dec, partition)), EXIT_OK

    return _emit(ctx, 'components', produce)


@cli.command()
@click.argument('name', type=click.Choice(sorted(CATALOG)))
@click.option('--param', type=int, default=None, help='Entry parameter (truncation N, twist t or n).')
@click.option('--emit', 'emit_path', type=click.Path(dir_okay=False), default=None,
              help='Write the fixture as a document.')
@click.pass_context
def catalog(ctx, name, param, emit_path):
    """Build a built-in fixture."""
    from splitsuper.utils.document_parser import dump_document, save_document

    entry = get_entry(name)
    if param is not None:
        value = param
    else:
        value = config.CATALOG_DEFAULT_N if entry.parameter == 'N' else entry.default
    try:
        alg, H = entry.build(value)
    except (ValueError, ZeroDivisionError) as e:
        raise click.BadParameter(str(e), param_hint='--param')

    def produce():
        body = {
            'name': entry.name,
            'parameter': {entry.parameter: value},
            'algebra': reports.algebra_summary(alg),
            'H': reports.describe_subspace(alg, H),
            'expected': entry.expected(value),
            'notes': entry.notes,
        }
        if emit_path:
            save_document(alg, emit_path, H)
            body['emitted'] = emit_path
        else:
            body['document'] = dump_document(alg, H)
        return body, EXIT_OK

    return _emit(ctx, 'catalog', produce)


@cli.command()
@click.option('--seeds', type=click.IntRange(min=0), default=None, help='Number of random instances.')
@click.option('--max-dim', type=click.IntRange(min=3), default=None, help='Dimension bound per instance.')
@click.pass_context
def fuzz(ctx, seeds, max_dim):
    """Run the property suite over random instances."""
    from splitsuper.runner_service import run_property_suite

    def produce():
        suite = run_property_suite(seeds, max_dim)
        return suite.to_dict(), EXIT_OK if suite.passed else EXIT_THEOREM

    return _emit(ctx, 'fuzz', produce)


def main():
    cli()


if __name__ == '__main__':
    main()
