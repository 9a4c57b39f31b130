#!/usr/bin/env python3
"""
Run every growth experiment in a directory and write a summary table.
"""

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Dict, List

import pandas as pd
import yaml

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

from dworklab.analysis import generate_example, relabel_for_rank
from dworklab.config import load_config, resolve_cache_dir
from dworklab.counterexample import Constants, growth_experiment, solve_parameters
from dworklab.errors import DworklabError
from dworklab.expsum import SumTableCache
from dworklab.parsers import parse_form
from dworklab.records import save_records, to_jsonable

logger = logging.getLogger('batch_experiments')


def find_experiment_files(directory: Path) -> List[Path]:
    """Find all experiment YAML files in directory."""
    return sorted(list(directory.glob('*.yaml')) + list(directory.glob('*.yml')))


def run_experiment(path: Path, config: Dict, cache: SumTableCache, threads=None, seed=None) -> Dict:
    """
    Run one growth experiment.

    Args:
        path: Experiment YAML (n, k, r, form, j_list, s, constants)
        config: dworklab configuration
        cache: Table cache shared across experiments
        threads: Worker count
        seed: Monte Carlo seed

    Returns:
        GrowthReport as a JSON-safe dict
    """
    with open(path) as f:
        spec = yaml.safe_load(f) or {}
    n, k, r = spec['n'], spec['k'], spec['r']
    text = spec.get('form', 'generate')
    form = generate_example(n, k, r) if text == 'generate' else parse_form(text, n)
    p_k, _ = relabel_for_rank(form)
    constants = Constants.from_config(config, spec.get('constants') or {})
    report = growth_experiment(solve_parameters(n, k, r), p_k, spec['j_list'],
                               Fraction(str(spec['s'])), constants, config,
                               threads=threads, seed=seed, cache=cache)
    return to_jsonable(report)


def summarize(results: Dict[str, Dict]) -> pd.DataFrame:
    rows = []
    for name, result in results.items():
        rows.append({
            'experiment': name,
            'n': result['n'], 'k': result['k'], 'r': result['r'],
            's': result['s'],
            'rows': len(result['rows']),
            'skipped': len(result['skipped']),
            'monotonicity': result['monotonicity'],
            'slope': result['slope'],
            'analytic_exponent': float(Fraction(result['analytic_exponent'])),
        })
    return pd.DataFrame(rows)


def main():
    parser = argparse.ArgumentParser(
        description='Run growth experiments and summarize the certified ratios'
    )
    parser.add_argument(
        'experiment_directory',
        type=Path,
        help='Directory containing experiment YAML files'
    )
    parser.add_argument(
        '--config',
        type=Path,
        help='Path to config YAML file'
    )
    parser.add_argument(
        '--output-dir',
        type=Path,
        default=Path('experiment_results'),
        help='Directory for per-experiment JSON and the summary (default: experiment_results)'
    )
    parser.add_argument('--threads', type=int, default=None, help='Worker count')
    parser.add_argument('--seed', type=int, default=None, help='Monte Carlo seed')
    parser.add_argument('--cache-dir', default=None, help='Table cache directory')
    parser.add_argument(
        '--verbose', '-v',
        action='store_true',
        help='Verbose output'
    )

    args = parser.parse_args()
    logging.basicConfig(stream=sys.stderr, level=logging.INFO if args.verbose else logging.WARNING,
                        format='%(levelname)s %(name)s: %(message)s')

    if not args.experiment_directory.exists():
        logger.error('directory not found: %s', args.experiment_directory)
        sys.exit(1)

    files = find_experiment_files(args.experiment_directory)
    if not files:
        logger.error('no YAML files found in %s', args.experiment_directory)
        sys.exit(1)

    config = load_config(args.config)
    cache = SumTableCache(resolve_cache_dir(args.cache_dir, config))
    args.output_dir.mkdir(parents=True, exist_ok=True)

    results = {}
    for i, path in enumerate(files, 1):
        logger.info('[%d/%d] %s', i, len(files), path.name)
        try:
            results[path.stem] = run_experiment(path, config, cache, args.threads, args.seed)
        except (DworklabError, KeyError) as e:
            logger.error('%s failed: %s', path.name, e)
            continue
        save_records(results[path.stem]['rows'], args.output_dir / f'{path.stem}.json',
                     summary={k: v for k, v in results[path.stem].items() if k != 'rows'})

    if not results:
        sys.exit(1)
    frame = summarize(results)
    frame.to_csv(args.output_dir / 'summary.csv', index=False)
    save_records(frame.to_dict(orient='records'), args.output_dir / 'summary.json')
    print(frame.to_string(index=False))


if __name__ == '__main__':
    main()
