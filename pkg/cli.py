"""
Command-line interface for the A-loop engine.
Commands should contain NO business logic - delegate to services immediately.
"""
import functools
import json

import click

import services
import storage
from errors import LoopError

EXIT_FAILED = 1
EXIT_INPUT = 2


def _int_list(ctx, param, value):
    """Parse '2,2' style options."""
    if value is None or value == '':
        return ()
    try:
        return tuple(int(v) for v in value.split(','))
    except ValueError:
        raise click.BadParameter(f'expected comma-separated integers, got {value!r}')


def _handle_errors(fn):
    """Report LoopError as an input error with exit code 2."""
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except LoopError as exc:
            click.echo(f'error: {type(exc).__name__}: {exc}', err=True)
            click.get_current_context().exit(EXIT_INPUT)
        except OSError as exc:
            click.echo(f'error: {exc}', err=True)
            click.get_current_context().exit(EXIT_INPUT)
    return wrapper


def _emit(data, fmt: str, text_lines=None):
    if fmt == 'json':
        click.echo(json.dumps(data, indent=2, default=str))
    else:
        for line in (text_lines if text_lines is not None else _text(data)):
            click.echo(line)


def _text(data, indent: str = ''):
    for key, value in data.items():
        if isinstance(value, dict):
            yield f'{indent}{key}:'
            yield from _text(value, indent + '  ')
        else:
            yield f'{indent}{key}: {value}'


format_option = click.option('--format', 'fmt', type=click.Choice(['text', 'json']), default='text',
                             show_default=True, help='Output format.')


@click.group()
@click.option('--env', 'config_name', default=None,
              help='Configuration profile (development, testing, production).')
@click.pass_context
def cli(ctx, config_name):
    """Commutative A-loops: constructions, analysis and classification."""
    from app import create_app
    ctx.obj = create_app(config_name)


# ========== Construction Commands ==========

@cli.command()
@click.option('--family', type=click.Choice(services.FAMILIES), required=True)
@click.option('--n', type=int, default=None)
@click.option('--a', type=int, default=0)
@click.option('--b', type=int, default=0)
@click.option('--moduli', callback=_int_list, default=None, help='Cyclic factors, e.g. 2,2.')
@click.option('--images', callback=_int_list, default=None, help='Images of f for the gf family.')
@click.option('--k', type=int, default=None)
@click.option('--l', type=int, default=None)
@click.option('--base', type=click.Path(exists=True, dir_okay=False), default=None)
@click.option('--theta', type=click.Path(exists=True, dir_okay=False), default=None)
@click.option('--out', type=click.Path(dir_okay=False), default=None,
              help='Table file to write (.json gets the fingerprint block).')
@format_option
@click.pass_obj
@_handle_errors
def construct(cfg, family, n, a, b, moduli, images, k, l, base, theta, out, fmt):
    """Build a loop from one of the construction families."""
    L, provenance = services.construct(family, n=n, a=a, b=b, moduli=moduli, images=images,
                                       k=k, l=l, base=base, theta=theta,
                                       catalog_dir=cfg.CATALOG_DIR)
    report = {'provenance': provenance, **services.analyze(L, mlt_limit=cfg.MLT_LIMIT)}
    if out:
        written = storage.write_table(L, out)
        report['file'] = {'path': written.path, 'format': written.format}
    elif fmt == 'text':
        click.echo(storage.format_aloop(L), nl=False)
    else:
        report['table'] = L.table.tolist()
    _emit(report, fmt)


# ========== Analysis Commands ==========

@cli.command()
@click.argument('path', type=click.Path(exists=True, dir_okay=False))
@format_option
@click.pass_obj
@_handle_errors
def analyze(cfg, path, fmt):
    """Structural report of a table file."""
    L = storage.read_table(path)
    _emit(services.analyze(L, mlt_limit=cfg.MLT_LIMIT), fmt)


@cli.command()
@click.argument('first', type=click.Path(exists=True, dir_okay=False))
@click.argument('second', type=click.Path(exists=True, dir_okay=False))
@format_option
@_handle_errors
def iso(first, second, fmt):
    """Decide isomorphism; prints the certificate as a 0-based image list."""
    _emit(services.compare_isomorphic(storage.read_table(first), storage.read_table(second)), fmt)


@cli.command()
@click.argument('first', type=click.Path(exists=True, dir_okay=False))
@click.argument('second', type=click.Path(exists=True, dir_okay=False))
@format_option
@_handle_errors
def isotopic(first, second, fmt):
    """Decide isotopy through principal isotopes."""
    _emit(services.compare_isotopic(storage.read_table(first), storage.read_table(second)), fmt)


@cli.command()
@click.argument('source', type=click.Path(exists=True, dir_okay=False))
@click.argument('target', type=click.Path(dir_okay=False))
@click.option('--to', 'target_format', type=click.Choice(['aloop', 'json']), default=None,
              help='Output format; inferred from the extension by default.')
@_handle_errors
def convert(source, target, target_format):
    """Convert between ALOOP v1 text and JSON."""
    written = services.convert(source, target, target_format)
    click.echo(f'{written.path} ({written.format})')


# ========== Classification Commands ==========

@cli.command('enumerate')
@click.option('--order', type=int, required=True)
@click.option('--center', type=click.Choice(services.CENTER_FILTERS), default='any', show_default=True,
              help='nontrivial keeps only loops with |Z(Q)| > 1.')
@click.option('--exponent', type=int, default=None)
@click.option('--jobs', type=int, default=None)
@format_option
@click.pass_obj
@_handle_errors
def enumerate_catalog(cfg, order, center, exponent, jobs, fmt):
    """Classify the commutative A-loops of a supported order."""
    result = services.enumerate_order(order, exponent=exponent, jobs=jobs or cfg.JOBS,
                                      catalog_dir=cfg.CATALOG_DIR, orbit_limit=cfg.ORBIT_LIMIT,
                                      mlt_limit=cfg.MLT_LIMIT, center=center)
    data = {
        'summary': result['summary'],
        'reports': [r.to_dict() for r in result['reports']],
        'catalog': result['catalog'],
    }
    lines = list(_text(result['summary']))
    for r in result['reports']:
        lines.append(f'{r.base}: dim C={r.dim_c} dim B={r.dim_b} dim D={r.dim_d} '
                     f'orbits={r.orbits} nonassociative={r.extensions} classes={len(r.classes)}')
    if result['catalog']:
        lines.append(f'catalog: {result["catalog"]}')
    _emit(data, fmt, lines)


@cli.command('classify-p3')
@click.option('--p', 'p', type=int, required=True)
@format_option
@_handle_errors
def classify_p3(p, fmt):
    """Isomorphism classes of Terg(Z_p, a, b)."""
    report = services.classify_p3(p)
    lines = [f'Terg(Z_{p}, a, b): {len(report["classes"])} classes']
    for c in report['classes']:
        members = ' '.join(f'({a},{b})' for a, b in c['members'])
        lines.append(f'  {members}  order-{p * p} elements={c["elements_of_order_p2"]} |Mlt|={c["mlt"]}')
    _emit(report, fmt, lines)


@cli.command('verify-paper')
@click.option('--suite', type=click.Choice(services.SUITES), default='quick', show_default=True)
@click.option('--jobs', type=int, default=None)
@format_option
@click.pass_obj
@_handle_errors
def verify_claims(cfg, suite, jobs, fmt):
    """Run a verification suite; exit code 1 when a claim fails."""
    verdicts = services.verify_claims(suite, jobs=jobs or cfg.JOBS, orbit_limit=cfg.ORBIT_LIMIT,
                                      mlt_limit=cfg.MLT_LIMIT, catalog_dir=cfg.CATALOG_DIR)
    failed = [v for v in verdicts if not v.passed]
    lines = [f'[{"ok" if v.passed else "FAIL"}] {v.claim}: expected {v.expected}, computed {v.computed}'
             for v in verdicts]
    lines.append(f'{len(verdicts) - len(failed)}/{len(verdicts)} claims verified')
    _emit({'suite': suite, 'verdicts': [v.to_dict() for v in verdicts], 'passed': not failed},
          fmt, lines)
    if failed:
        click.get_current_context().exit(EXIT_FAILED)
