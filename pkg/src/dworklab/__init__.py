"""
dworklab: exact analysis of higher-degree forms, finite-field exponential sums and
counterexample experiments for Schrödinger-type maximal estimates.
"""

__version__ = '0.1.0'

from .config import load_config
from .errors import DworklabError, PreconditionError

__all__ = [
    '__version__',
    'load_config',
    'DworklabError',
    'PreconditionError',
]
