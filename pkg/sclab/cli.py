"""
sclab Command Line

    python -m sclab count n p [--poly] [--origin]
    python -m sclab enumerate n p [--origin] [--list] [--cross-check]
    python -m sclab saturate [FILE]
    python -m sclab witness m n p [--op OP] [--output DIR]
    python -m sclab verify --m 3-4 --n 3 --p 3,4 --op xor [--format table|csv|json]
    python -m sclab sequences bell|rao|a296 k

Exit status: 0 success, 1 verification failure, 2 usage error,
3 size or budget rejection. Logs go to stderr; stdout carries only results,
so identical invocations produce identical output.
"""

from pathlib import Path
from typing import Iterable, Optional
import itertools
import json
import logging
import sys

import click
from pydantic import ValidationError

from sclab.config import get_config
from sclab.schemas import (
    CliConfig,
    CountResponse,
    DfaDocument,
    NfaDocument,
    VerificationReportSchema,
)
from sclab.services.automata import BooleanOp, boolean_product, catenate
from sclab.services.combinatorics import alpha, alpha_poly, alpha_prime, sequence
from sclab.services.complexity import VerificationReport
from sclab.services.errors import (
    DegenerateOperationError,
    SizeError,
    UnknownOperationError,
)
from sclab.services.sweep import VerificationSweep, reports_to_csv
from sclab.services.tableaux import Tableau, enumerate_saturated, saturate
from sclab.services.witness import witness_triple

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_SIZE = 3

TABLE_COLUMNS = ('m', 'n', 'p', 'op', 'computed', 'predicted', 'bound_only', 'status')


class SizeRange(click.ParamType):
    """Accepts `3`, `3-5` and `3,4,6`; yields a list of ints."""

    name = 'range'

    def convert(self, value, param, ctx):
        if isinstance(value, list):
            return value
        sizes: list[int] = []
        try:
            for part in str(value).split(','):
                low, sep, high = part.strip().partition('-')
                if sep:
                    sizes.extend(range(int(low), int(high) + 1))
                else:
                    sizes.append(int(low))
        except ValueError:
            self.fail(f'{value!r} is not a size, a range a-b or a comma list', param, ctx)
        if not sizes:
            self.fail(f'{value!r} is an empty range', param, ctx)
        return sizes


def _flatten(groups) -> list[int]:
    return [size for group in groups for size in group]


# ============================================================================
# Rendering
# ============================================================================

def render_table(reports: list[VerificationReport]) -> str:
    rows = [TABLE_COLUMNS] + [
        (
            str(r.m), str(r.n), str(r.p), r.op.name.lower(), str(r.computed_sc),
            str(r.predicted), str(r.bound_only).lower(), r.status,
        )
        for r in reports
    ]
    widths = [max(len(row[i]) for row in rows) for i in range(len(TABLE_COLUMNS))]
    lines = ['  '.join(cell.rjust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    return '\n'.join(lines) + '\n'


def render_json(reports: list[VerificationReport]) -> str:
    records = [
        VerificationReportSchema.model_validate(r).model_dump(mode='json', exclude={'elapsed_ms'})
        for r in reports
    ]
    return json.dumps(records, indent=2) + '\n'


def _emit(text: str, output: Optional[Path]) -> None:
    if output is None:
        click.echo(text, nl=False)
    else:
        output.write_text(text, encoding='utf-8')
        logger.info(f'Wrote {output}')


def _emit_lines(chunks: Iterable[str], output: Optional[Path]) -> None:
    if output is None:
        for chunk in chunks:
            click.echo(chunk, nl=False)
    else:
        with output.open('w', encoding='utf-8') as handle:
            handle.writelines(chunks)
        logger.info(f'Wrote {output}')


# ============================================================================
# Subcommand bodies
# ============================================================================

def _count(config: CliConfig) -> int:
    n, p = config.n[0], config.p[0]
    if config.output_format == 'json':
        response = CountResponse(
            n=n,
            p=p,
            alpha=str(alpha(n, p)),
            alpha_prime=str(alpha_prime(n, p)) if n and p else None,
            poly=alpha_poly(n, p).to_strings(),
        )
        _emit(response.model_dump_json(indent=2) + '\n', config.output)
    elif config.poly:
        _emit(' '.join(alpha_poly(n, p).to_strings()) + '\n', config.output)
    elif config.origin:
        _emit(f'{alpha_prime(n, p)}\n', config.output)
    else:
        _emit(f'{alpha(n, p)}\n', config.output)
    return EXIT_OK


def _enumerate(config: CliConfig, cell_limit: int) -> int:
    n, p = config.n[0], config.p[0]

    def selected():
        for t in enumerate_saturated(n, p, limit=cell_limit):
            if not config.origin or t.is_marked(0, 0):
                yield t

    # Counted first, then listed in a second pass.
    total = sum(1 for _ in selected())
    if config.list_tableaux:
        listing = (f'\n{t.to_text()}\n' for t in selected())
        _emit_lines(itertools.chain([f'{total}\n'], listing), config.output)
    else:
        _emit(f'{total}\n', config.output)

    if config.cross_check:
        expected = alpha_prime(n, p) if config.origin else alpha(n, p)
        if expected != total:
            logger.error(f'❌ Enumeration gives {total}, the formula gives {expected}')
            return EXIT_FAILED
        logger.info(f'✅ Enumeration matches the formula ({expected})')
    return EXIT_OK


def _saturate(config: CliConfig) -> int:
    _emit(saturate(Tableau.from_text(config.tableau)).to_text() + '\n', config.output)
    return EXIT_OK


def _witness(config: CliConfig) -> int:
    directory = config.output or Path('.')
    directory.mkdir(parents=True, exist_ok=True)
    ops = [BooleanOp.from_name(name) for name in config.op]
    a, b, c = witness_triple(config.m[0], config.n[0], config.p[0])
    documents = [
        (f'{name}.json', DfaDocument.from_dfa(dfa)) for name, dfa in (('a', a), ('b', b), ('c', c))
    ]
    for op in ops:
        nfa = catenate(a, boolean_product(b, c, op))
        documents.append((f'catenation-{op.name.lower()}.json', NfaDocument.from_nfa(nfa)))
    for filename, document in documents:
        path = directory / filename
        path.write_text(document.model_dump_json(indent=2) + '\n', encoding='utf-8')
        click.echo(str(path))
    return EXIT_OK


def _verify(config: CliConfig) -> int:
    ops = [BooleanOp.from_name(name) for name in (config.op or ['xor'])]
    sweep = VerificationSweep(budget=config.budget, dispatch=config.dispatch, workers=config.workers)
    reports = sweep.run(sweep.cases(config.m, config.n, config.p, ops))

    renderers = {'table': render_table, 'csv': reports_to_csv, 'json': render_json}
    _emit(renderers[config.output_format](reports), config.output)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


def _sequences(config: CliConfig) -> int:
    values = sequence(config.sequence, config.length)
    _emit(' '.join(str(v) for v in values) + '\n', config.output)
    return EXIT_OK


def run(config: CliConfig, cell_limit: Optional[int] = None) -> int:
    """
    Execute one validated invocation and return its exit status.

    Size and budget rejections map to 3, unknown or degenerate operations
    to 2 and failed verifications to 1.
    """
    if cell_limit is None:
        cell_limit = get_config().enumeration_cell_limit
    handlers = {
        'count': _count,
        'saturate': _saturate,
        'enumerate': lambda c: _enumerate(c, cell_limit),
        'witness': _witness,
        'verify': _verify,
        'sequences': _sequences,
    }
    try:
        return handlers[config.subcommand](config)
    except SizeError as e:
        click.echo(f'Error: {e}', err=True)
        return EXIT_SIZE
    except (UnknownOperationError, DegenerateOperationError) as e:
        click.echo(f'Error: {e}', err=True)
        return EXIT_USAGE


# ============================================================================
# click wiring
# ============================================================================

def _invoke(ctx: click.Context, **fields) -> None:
    try:
        config = CliConfig(**fields)
    except ValidationError as e:
        raise click.UsageError(
            '; '.join(f"{'.'.join(map(str, err['loc'])) or 'config'}: {err['msg']}" for err in e.errors()),
            ctx,
        ) from None
    ctx.exit(run(config, ctx.obj['settings'].enumeration_cell_limit))


@click.group()
@click.option('-v', '--verbose', is_flag=True, help='Log at DEBUG level.')
@click.pass_context
def cli(ctx: click.Context, verbose: bool):
    """State complexity lab: saturated tableaux and catenation with boolean operations."""
    settings = get_config()
    level = logging.DEBUG if verbose else getattr(logging, settings.log_level, logging.INFO)
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format='%(asctime)s %(levelname)s %(name)s: %(message)s',
    )
    ctx.ensure_object(dict)
    ctx.obj['settings'] = settings


@cli.command()
@click.argument('n', type=click.IntRange(min=0))
@click.argument('p', type=click.IntRange(min=0))
@click.option('--poly', is_flag=True, help='Print the coefficients of α_{n,p}(t), lowest degree first.')
@click.option('--origin', is_flag=True, help='Count tableaux with cell (0, 0) marked.')
@click.option('--format', 'output_format', type=click.Choice(['table', 'json']), default='table')
@click.pass_context
def count(ctx, n, p, poly, origin, output_format):
    """Number of saturated n×p tableaux."""
    _invoke(ctx, subcommand='count', n=[n], p=[p], poly=poly, origin=origin, output_format=output_format)


@cli.command('enumerate')
@click.argument('n', type=click.IntRange(min=0))
@click.argument('p', type=click.IntRange(min=0))
@click.option('--origin', is_flag=True, help='Keep only tableaux with cell (0, 0) marked.')
@click.option('--list', 'list_tableaux', is_flag=True, help='Print every tableau in the text format.')
@click.option('--cross-check', is_flag=True, help='Compare the count with the formula; exit 1 on mismatch.')
@click.pass_context
def enumerate_command(ctx, n, p, origin, list_tableaux, cross_check):
    """Enumerate saturated n×p tableaux exhaustively."""
    _invoke(
        ctx, subcommand='enumerate', n=[n], p=[p],
        origin=origin, list_tableaux=list_tableaux, cross_check=cross_check,
    )


@cli.command('saturate')
@click.argument('source', type=click.File('r', encoding='utf-8'), default='-')
@click.option('-o', '--output', type=click.Path(dir_okay=False, path_type=Path), default=None)
@click.pass_context
def saturate_command(ctx, source, output):
    """Print Sat(T) for an X/. tableau read from SOURCE (default stdin)."""
    _invoke(ctx, subcommand='saturate', tableau=source.read(), output=output)


@cli.command()
@click.argument('m', type=int)
@click.argument('n', type=int)
@click.argument('p', type=int)
@click.option('-o', '--output', type=click.Path(file_okay=False, path_type=Path), default=None,
              help='Directory for a.json, b.json and c.json (default: current directory).')
@click.option('--op', 'ops', multiple=True,
              help='Also write the NFA for A·(B op C) as catenation-<op>.json, repeatable.')
@click.pass_context
def witness(ctx, m, n, p, output, ops):
    """Write the witness DFAs A, B, C as JSON documents."""
    _invoke(ctx, subcommand='witness', m=[m], n=[n], p=[p], op=list(ops), output=output)


@cli.command()
@click.option('--m', 'ms', type=SizeRange(), multiple=True, required=True)
@click.option('--n', 'ns', type=SizeRange(), multiple=True, required=True)
@click.option('--p', 'ps', type=SizeRange(), multiple=True, required=True)
@click.option('--op', 'ops', multiple=True, default=('xor',), show_default=True,
              help='Operation name or alias, repeatable (see docs/operations.md).')
@click.option('--format', 'output_format', type=click.Choice(['table', 'csv', 'json']), default='table')
@click.option('--budget', type=click.IntRange(min=1), envvar='SC_LAB_BUDGET', default=None,
              help='State budget for the combined automaton.')
@click.option('--dispatch', type=click.Choice(['local', 'celery']), default='local')
@click.option('--workers', type=click.IntRange(min=1), default=1, help='Process pool size for local dispatch.')
@click.option('-o', '--output', type=click.Path(dir_okay=False, path_type=Path), default=None)
@click.pass_context
def verify(ctx, ms, ns, ps, ops, output_format, budget, dispatch, workers, output):
    """Compare computed and predicted state complexities on the witness triple."""
    _invoke(
        ctx, subcommand='verify',
        m=_flatten(ms), n=_flatten(ns), p=_flatten(ps), op=list(ops),
        output_format=output_format,
        budget=budget or ctx.obj['settings'].budget,
        dispatch=dispatch, workers=workers, output=output,
    )


@cli.command()
@click.argument('name', type=click.Choice(['bell', 'rao', 'a296'], case_sensitive=False))
@click.argument('k', type=click.IntRange(min=0))
@click.pass_context
def sequences(ctx, name, k):
    """Print terms 0..k of a Bell-family sequence."""
    _invoke(ctx, subcommand='sequences', sequence=name.lower(), length=k)


if __name__ == '__main__':
    cli()
