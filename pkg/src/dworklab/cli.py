"""
dworklab command-line interface.

Every subcommand prints one JSON document on stdout. Exit status: 0 on success, 1 when an
analysis refuses its input or fails, 2 on usage errors.
"""

import functools
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional

import click
import yaml

from . import __version__
from .algebra import Form
from .analysis import (
    bad_primes,
    codimensions,
    corollary_threshold,
    deligne_after_specialization,
    delta_threshold,
    find_derivative_witness,
    generate_example,
    intertwining_rank,
    is_dwork_regular,
    is_nonsingular,
    nonregular_example,
    relabel_for_rank,
)
from .center import compute_center, decide_decomposability
from .config import load_config, resolve_cache_dir, section
from .counterexample import (
    Constants,
    build_boxes,
    feasible_instance,
    growth_experiment,
    lower_bound_chain,
    omega_star_measure,
    solve_parameters,
)
from .errors import (
    DenominatorDivisibleByQ,
    DworklabError,
    FormSyntaxError,
    ModulusMismatch,
    NotPrimeError,
    ParameterRangeError,
    PreconditionError,
    SingularMatrixError,
    VariableCountMismatch,
    VariableIndexError,
    ZeroPolynomialError,
)
from .expsum import SumTableCache, good_pairs, scan_all_pairs, weil_deligne_bound
from .parsers import parse_field_poly, parse_form
from .records import dumps

logger = logging.getLogger(__name__)

USAGE_ERRORS = (
    FormSyntaxError,
    ParameterRangeError,
    VariableCountMismatch,
    VariableIndexError,
    ModulusMismatch,
    NotPrimeError,
    DenominatorDivisibleByQ,
    SingularMatrixError,
    ZeroPolynomialError,
)


def _int_list(text: Optional[str]) -> List[int]:
    if not text:
        return []
    try:
        return [int(v) for v in text.replace(' ', '').split(',') if v]
    except ValueError:
        raise click.BadParameter(f'expected comma-separated integers, got {text!r}')


def _float_list(text: Optional[str]) -> List[float]:
    if not text:
        return []
    try:
        return [float(v) for v in text.replace(' ', '').split(',') if v]
    except ValueError:
        raise click.BadParameter(f'expected comma-separated numbers, got {text!r}')


def emits_json(func):
    """Print the command's result as JSON and map errors to exit codes."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            result = func(*args, **kwargs)
        except USAGE_ERRORS as e:
            raise click.UsageError(str(e))
        except PreconditionError as e:
            click.echo(f'refused: {e}', err=True)
            sys.exit(1)
        except DworklabError as e:
            click.echo(f'error: {e}', err=True)
            sys.exit(1)
        click.echo(dumps(result))
    return wrapper


def _settings(ctx: click.Context) -> Dict:
    return ctx.obj


def _form(text: str, n: Optional[int] = None) -> Form:
    return parse_form(text, n)


def _constants(settings: Dict, overrides: Dict) -> Constants:
    return Constants.from_config(settings['config'], overrides)


def _constant_overrides(pairs) -> Dict[str, float]:
    out = {}
    for pair in pairs:
        name, _, value = pair.partition('=')
        if not value:
            raise click.BadParameter(f'expected name=value, got {pair!r}')
        out[name.strip()] = float(value)
    return out


@click.group()
@click.version_option(__version__)
@click.option('--config', 'config_path', type=click.Path(exists=True, dir_okay=False),
              help='YAML configuration file')
@click.option('--seed', type=int, default=None, help='Seed for randomized searches')
@click.option('--threads', type=click.IntRange(min=1), default=None,
              help='Worker count (default: number of CPUs)')
@click.option('--cache-dir', type=click.Path(file_okay=False), default=None,
              help='Directory for cached exponential-sum tables')
@click.option('--log-level', type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR']),
              default=None, help='Logging level (stderr)')
@click.pass_context
def cli(ctx, config_path, seed, threads, cache_dir, log_level):
    """Dwork-regular forms, exponential sums and counterexample experiments."""
    config = load_config(Path(config_path) if config_path else None)
    level = log_level or section(config, 'logging').get('level', 'WARNING')
    logging.basicConfig(stream=sys.stderr, level=getattr(logging, str(level).upper(), logging.WARNING),
                        format='%(levelname)s %(name)s: %(message)s')
    ctx.obj = {
        'config': config,
        'seed': seed,
        'threads': threads or os.cpu_count() or 1,
        'cache': SumTableCache(resolve_cache_dir(cache_dir, config)),
    }


@cli.command()
@click.option('--form', 'text', required=True, help='Form text, e.g. "x1^3+x1*x2^2"')
@click.option('--n', type=int, default=None, help='Number of variables')
@emits_json
def rank(text, n):
    """Intertwining rank and witness variable."""
    return intertwining_rank(_form(text, n))


@cli.command('dwork-check')
@click.option('--form', 'text', required=True)
@click.option('--n', type=int, default=None)
@click.option('--q', type=int, default=None, help='Work over F_q instead of Q')
@click.pass_context
@emits_json
def dwork_check(ctx, text, n, q):
    """Dwork-regularity by the subset criterion."""
    h = parse_field_poly(text, q, n) if q else _form(text, n)
    settings = _settings(ctx)
    return is_dwork_regular(h, settings['config'], settings['threads'])


@cli.command()
@click.option('--form', 'text', required=True)
@click.option('--n', type=int, default=None)
@click.option('--q', type=int, default=None)
@click.option('--variables', default=None, help='Comma-separated 1-based variables')
@click.pass_context
@emits_json
def nonsingular(ctx, text, n, q, variables):
    """Projective nonsingularity of a form."""
    h = parse_field_poly(text, q, n) if q else _form(text, n)
    subset = _int_list(variables) or None
    return {'nonsingular': is_nonsingular(h, subset, _settings(ctx)['config'])}


@cli.command('bad-primes')
@click.option('--form', 'text', required=True)
@click.option('--n', type=int, default=None)
@click.option('--q-max', type=int, required=True)
@click.option('--progress/--no-progress', default=False)
@click.pass_context
@emits_json
def bad_primes_cmd(ctx, text, n, q_max, progress):
    """Primes q <= q_max at which a Dwork-regular form stops being so."""
    settings = _settings(ctx)
    return bad_primes(_form(text, n), q_max, settings['config'], settings['threads'], progress)


@cli.command('deligne-specialize')
@click.option('--form', 'text', required=True)
@click.option('--n', type=int, default=None)
@click.option('--q', type=int, default=None)
@click.option('--values', required=True, help='Values of X_1..X_r, comma-separated')
@click.pass_context
@emits_json
def deligne_specialize(ctx, text, n, q, values):
    """Deligne certificate after fixing X_1..X_r."""
    h = parse_field_poly(text, q, n) if q else _form(text, n)
    cert = deligne_after_specialization(h, _int_list(values), _settings(ctx)['config'])
    return {
        'is_deligne': cert.is_deligne,
        'degree': cert.degree,
        'leading_form': cert.leading_form,
        'variables': cert.variables,
    }


@cli.command()
@click.option('--form', 'text', required=True)
@click.option('--n', type=int, default=None)
@emits_json
def center(text, n):
    """Harrison center basis."""
    return compute_center(_form(text, n))


@cli.command()
@click.option('--form', 'text', required=True)
@click.option('--n', type=int, default=None)
@click.pass_context
@emits_json
def decompose(ctx, text, n):
    """Decomposability over Q."""
    settings = _settings(ctx)
    return decide_decomposability(_form(text, n), settings['config'], settings['seed'])


@cli.command()
@click.option('--n', type=int, required=True)
@click.option('--k', type=int, required=True)
@click.option('--r', type=int, default=None)
@click.option('--nonregular', is_flag=True, help='Nonsingular but not Dwork-regular example')
@emits_json
def examples(n, k, r, nonregular):
    """Example forms of the families."""
    if nonregular:
        return {'form': nonregular_example(n, k), 'n': n, 'k': k}
    if r is None:
        raise click.UsageError('--r is required unless --nonregular is given')
    return {'form': generate_example(n, k, r), 'n': n, 'k': k, 'r': r}


@cli.command()
@click.option('--n', type=int, required=True)
@click.option('--k', type=int, required=True)
@emits_json
def codim(n, k):
    """Codimensions of the extreme rank strata."""
    top, bottom = codimensions(n, k)
    return {'codim_rank_n_minus_1': top, 'codim_rank_1': bottom,
            'decomposable_threshold': corollary_threshold(n, k)}


@cli.command()
@click.option('--n', type=int, required=True)
@click.option('--k', type=int, required=True)
@click.option('--r', type=str, required=True, help='Rank (may be rational, e.g. 3/2)')
@emits_json
def delta(n, k, r):
    """delta(n, k, r) and the regularity threshold 1/4 + delta."""
    d = delta_threshold(n, k, Fraction(r))
    return {'delta': d, 's_threshold': Fraction(1, 4) + d}


@cli.command('expsum-table')
@click.option('--poly', 'text', required=True, help='Polynomial over F_q')
@click.option('--q', type=int, required=True)
@click.option('--m', type=int, default=None, help='Number of variables')
@click.option('--entries/--no-entries', default=False, help='Include every T(a, b)')
@click.pass_context
@emits_json
def expsum_table(ctx, text, q, m, entries):
    """All complete sums T(a, b; q)."""
    settings = _settings(ctx)
    poly = parse_field_poly(text, q, m)
    table = settings['cache'].get_or_compute(poly, settings['config'])
    out = {
        'q': table.q, 'm': table.m, 'k': table.k,
        'parseval': table.check_parseval(),
        'conjugate_symmetric': table.check_conjugate_symmetry(),
        'max_nonzero_frequency': table.max_nonzero_frequency(),
        'weil_deligne_bound': weil_deligne_bound(table.k, table.m, table.q),
    }
    if entries:
        out['values'] = table.values
    return out


@cli.command('good-pairs')
@click.option('--poly', 'text', required=True)
@click.option('--q', type=int, required=True)
@click.option('--m', type=int, default=None)
@click.option('--alpha1', type=float, default=0.5)
@click.option('--list/--no-list', 'listing', default=False)
@click.pass_context
@emits_json
def good_pairs_cmd(ctx, text, q, m, alpha1, listing):
    """Good pairs of a Deligne polynomial over F_q."""
    settings = _settings(ctx)
    poly = parse_field_poly(text, q, m)
    table = settings['cache'].get_or_compute(poly, settings['config'])
    good = good_pairs(table, alpha1=alpha1)
    out = good.to_dict()
    if listing:
        out['pairs'] = [[a] + list(b) for a, b in good.pairs]
    return out


@cli.command()
@click.option('--n', type=int, required=True)
@click.option('--k', type=int, required=True)
@click.option('--r', type=int, required=True)
@click.option('--j', type=int, default=None, help='Also check the instance R = 2^j')
@emits_json
def params(n, k, r, j):
    """Closed-form counterexample parameters."""
    plan = solve_parameters(n, k, r)
    out = plan.to_dict()
    if j is not None:
        out['instance'] = feasible_instance(plan, j=j)
    return out


def instance_options(func):
    """Options shared by boxes and lower-bound."""
    options = [
        click.option('--form', 'text', default='generate', show_default=True,
                     help='Leading form, or "generate" for the example family'),
        click.option('--n', type=int, required=True),
        click.option('--k', type=int, required=True),
        click.option('--r', type=int, required=True),
        click.option('--j', type=int, default=None, help='R = 2^j on the progression'),
        click.option('--explicit', default=None, help='R,L,Q,S1 of an explicit instance'),
        click.option('--implied', default='1,1,1', show_default=True,
                     help='Implied constants of the three size conditions'),
        click.option('--constant', 'constant_pairs', multiple=True,
                     help='Override a constant, e.g. c5=0.03'),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _setup(settings: Dict, text, n, k, r, j, explicit, implied, constant_pairs):
    plan = solve_parameters(n, k, r)
    form = generate_example(n, k, r) if text == 'generate' else _form(text, n)
    p_k, report = relabel_for_rank(form)
    if report.rank != r:
        raise ParameterRangeError(f'form has intertwining rank {report.rank}, not {r}')
    witness = find_derivative_witness(p_k, r, config=settings['config'])
    constants = _constants(settings, _constant_overrides(constant_pairs))
    implied_constants = tuple(_float_list(implied))
    if len(implied_constants) != 3:
        raise click.BadParameter('--implied needs three numbers')
    common = dict(implied_constants=implied_constants, witness_value=witness.value,
                  constants=constants.as_dict(), delta0=constants.delta0)
    if explicit:
        values = _float_list(explicit)
        if len(values) != 4:
            raise click.BadParameter('--explicit needs R,L,Q,S1')
        R, L, Q, S1 = values
        instance = feasible_instance(plan, R=R, L=L, Q=Q, S1=S1, **common)
    elif j is not None:
        instance = feasible_instance(plan, j=j, **common)
    else:
        raise click.UsageError('give --j or --explicit')
    return instance, p_k, witness, constants


@cli.command()
@instance_options
@click.pass_context
@emits_json
def boxes(ctx, text, n, k, r, j, explicit, implied, constant_pairs):
    """Good-pair boxes and the measures of Omega and Omega*."""
    settings = _settings(ctx)
    instance, p_k, witness, constants = _setup(settings, text, n, k, r, j, explicit,
                                               implied, constant_pairs)
    boxset = build_boxes(instance, p_k, witness.M, constants, settings['config'],
                         threads=settings['threads'], seed=settings['seed'],
                         cache=settings['cache'])
    out = boxset.to_dict()
    out['instance'] = instance
    out['omega_star'] = omega_star_measure(boxset, instance, witness.value)
    return out


@cli.command('lower-bound')
@instance_options
@click.option('--q', type=int, required=True)
@click.option('--a', type=int, required=True)
@click.option('--b', required=True, help='Linear frequencies, comma-separated')
@click.option('--offsets', default=None, help='Offsets o_1, o_{r+1}, .., o_n (zeros if omitted)')
@click.pass_context
@emits_json
def lower_bound(ctx, text, n, k, r, j, explicit, implied, constant_pairs, q, a, b, offsets):
    """Certified lower bound for |S(2R/L; w, t)| at a good-box point."""
    settings = _settings(ctx)
    instance, p_k, witness, constants = _setup(settings, text, n, k, r, j, explicit,
                                               implied, constant_pairs)
    freqs = _int_list(b)
    offs = _float_list(offsets) or [0.0] * (len(freqs) + 1)
    return lower_bound_chain(instance, p_k, witness, (q, a, freqs), offs, constants,
                             settings['config'])


def _load_experiment(path: Path) -> Dict:
    with open(path) as f:
        return yaml.safe_load(f) or {}


@cli.command()
@click.option('--experiment', type=click.Path(exists=True, dir_okay=False), default=None,
              help='Experiment YAML: n, k, r, form, j_list, s, constants')
@click.option('--n', type=int, default=None)
@click.option('--k', type=int, default=None)
@click.option('--r', type=int, default=None)
@click.option('--form', 'text', default='generate')
@click.option('--j-list', default=None, help='Comma-separated exponents')
@click.option('--s', 's_text', default=None, help='Sobolev exponent (rational allowed)')
@click.option('--progress/--no-progress', default=False)
@click.pass_context
@emits_json
def growth(ctx, experiment, n, k, r, text, j_list, s_text, progress):
    """Certified ratio along R = 2^j."""
    settings = _settings(ctx)
    spec = _load_experiment(Path(experiment)) if experiment else {}
    n = n or spec.get('n')
    k = k or spec.get('k')
    r = r or spec.get('r')
    if None in (n, k, r):
        raise click.UsageError('n, k and r are required')
    text = spec.get('form', text) if text == 'generate' else text
    js = _int_list(j_list) or list(spec.get('j_list', []))
    s_value = s_text if s_text is not None else spec.get('s')
    if not js or s_value is None:
        raise click.UsageError('j_list and s are required')
    plan = solve_parameters(n, k, r)
    form = generate_example(n, k, r) if text == 'generate' else _form(text, n)
    p_k, report = relabel_for_rank(form)
    if report.rank != r:
        raise ParameterRangeError(f'form has intertwining rank {report.rank}, not {r}')
    constants = _constants(settings, spec.get('constants') or {})
    return growth_experiment(plan, p_k, js, Fraction(str(s_value)), constants,
                             settings['config'], threads=settings['threads'],
                             seed=settings['seed'], cache=settings['cache'],
                             progress=progress)


def main(argv: Optional[List[str]] = None) -> int:
    try:
        cli.main(args=argv, prog_name='dworklab', standalone_mode=False)
    except click.UsageError as e:
        e.show()
        return 2
    except click.ClickException as e:
        e.show()
        return 1
    except SystemExit as e:
        return int(e.code or 0)
    return 0


if __name__ == '__main__':
    sys.exit(main())
