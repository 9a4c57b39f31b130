"""
Configuration loading for dworklab.
"""

import copy
import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

logger = logging.getLogger(__name__)

DEFAULT_CONFIG: Dict[str, Any] = {
    'constants': {'c0': 0.1, 'c1': 0.01, 'c2': 0.01, 'c3': 0.01, 'c4': 0.5, 'c5': 0.5},
    'witness': {'b_start': 2, 'b_max': 32},
    'center': {'idempotent_height': 20, 'random_trials': 2000},
    'expsum': {'memory_cap_bytes': 2 ** 28, 'error_scale': None},
    'groebner': {'prepass': True, 'prepass_height': 2},
    'boxes': {'monte_carlo_samples': 10 ** 6},
    'quadrature': {'start_nodes': 4, 'max_nodes': 128, 'rtol': 1e-6},
    'profile': {'samples': 2 ** 14},
    'cache': {'dir': None},
    'logging': {'level': 'WARNING'},
}

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parents[2] / 'config' / 'dworklab.yaml'


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(path: Optional[Path] = None) -> Dict[str, Any]:
    """
    Load a YAML config and merge it over the defaults.

    Args:
        path: Config file; the repository's config/dworklab.yaml if omitted and present

    Returns:
        Complete configuration dict
    """
    if path is None and DEFAULT_CONFIG_PATH.exists():
        path = DEFAULT_CONFIG_PATH
    if path is None:
        return copy.deepcopy(DEFAULT_CONFIG)
    path = Path(path)
    with open(path) as f:
        loaded = yaml.safe_load(f) or {}
    logger.debug('loaded config from %s', path)
    return _merge(DEFAULT_CONFIG, loaded)


def merged(config: Optional[Dict[str, Any]]) -> Dict[str, Any]:
    """Defaults overlaid with a (possibly partial) config dict."""
    return _merge(DEFAULT_CONFIG, config or {})


def section(config: Optional[Dict[str, Any]], name: str) -> Dict[str, Any]:
    return merged(config).get(name, {})


def resolve_cache_dir(flag: Optional[str] = None, config: Optional[Dict[str, Any]] = None) -> Path:
    """--cache-dir, then $DWORKLAB_CACHE, then config cache.dir, then ./.dworklab."""
    if flag:
        return Path(flag)
    env = os.environ.get('DWORKLAB_CACHE')
    if env:
        return Path(env)
    configured = section(config, 'cache').get('dir')
    if configured:
        return Path(configured)
    return Path('.dworklab')
