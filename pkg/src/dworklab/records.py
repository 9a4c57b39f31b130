"""
JSON conversion of analysis results.

Rationals become "p/q" strings and complex numbers [re, im] pairs.
"""

import json
import time
from dataclasses import asdict, is_dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

from .algebra import FieldElem, Polynomial, RationalMatrix


def to_jsonable(obj: Any) -> Any:
    """Recursively convert results into plain JSON types."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, FieldElem):
        return obj.residue
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, RationalMatrix):
        return to_jsonable(obj.to_lists())
    if isinstance(obj, Polynomial):
        from .parsers import print_form
        return print_form(obj)
    if hasattr(obj, 'to_dict'):
        return to_jsonable(obj.to_dict())
    if is_dataclass(obj):
        return to_jsonable(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_jsonable(v) for v in items]
    raise TypeError(f'cannot serialize {type(obj).__name__}')


def dumps(obj: Any) -> str:
    """Deterministic JSON text: sorted keys, fixed indentation."""
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2)


def save_records(records: List[Dict], filepath: Path, summary: Optional[Dict] = None) -> None:
    """
    Save experiment records to a JSON file.

    Args:
        records: Per-experiment results
        filepath: Output path
        summary: Optional aggregate section
    """
    data = {
        'timestamp': time.time(),
        'summary': summary or {},
        'records': records,
    }
    with open(filepath, 'w') as f:
        f.write(dumps(data))


def load_records(filepath: Path) -> Dict:
    with open(filepath, 'r') as f:
        return json.load(f)
