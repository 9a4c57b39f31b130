"""
On-disk cache of complete-sum tables.

Layout: b'DWXS', u32 version, u32 q, u32 m, u32 k, 32-byte polynomial digest, then
q^(m+1) little-endian complex128 values in row-major (a, b_1, ..., b_m) order.
"""

import logging
import os
import struct
import tempfile
from pathlib import Path
from typing import Dict, Optional

import numpy as np

from ..algebra import FieldPoly
from ..errors import CacheFormatError
from .tables import SumTable, poly_hash, scan_all_pairs

logger = logging.getLogger(__name__)

MAGIC = b'DWXS'
VERSION = 1
HEADER = struct.Struct('<4sIIII32s')


def write_table(table: SumTable, path: Path) -> None:
    """Write atomically through a temporary file in the same directory."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    header = HEADER.pack(MAGIC, VERSION, table.q, table.m, table.k, table.poly_digest)
    payload = np.ascontiguousarray(table.values, dtype='<c16').tobytes()
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix='.tmp-', suffix='.dwxs')
    try:
        with os.fdopen(fd, 'wb') as f:
            f.write(header)
            f.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_table(path: Path, poly: FieldPoly) -> SumTable:
    """
    Read a cached table for `poly`.

    Raises:
        CacheFormatError: bad magic, version, digest, shape or size
    """
    data = Path(path).read_bytes()
    if len(data) < HEADER.size:
        raise CacheFormatError(f'{path}: truncated header')
    magic, version, q, m, k, digest = HEADER.unpack_from(data)
    if magic != MAGIC:
        raise CacheFormatError(f'{path}: bad magic {magic!r}')
    if version != VERSION:
        raise CacheFormatError(f'{path}: unsupported version {version}')
    if q != poly.q or m != poly.n:
        raise CacheFormatError(f'{path}: table for q={q}, m={m}')
    if digest != poly_hash(poly):
        raise CacheFormatError(f'{path}: polynomial digest mismatch')
    expected = 16 * q ** (m + 1)
    body = data[HEADER.size:]
    if len(body) != expected:
        raise CacheFormatError(f'{path}: expected {expected} value bytes, found {len(body)}')
    values = np.frombuffer(body, dtype='<c16').reshape((q,) * (m + 1)).astype(np.complex128)
    return SumTable(q=q, m=m, k=k, poly=poly, values=values, poly_digest=digest)


class SumTableCache:
    """Directory of .dwxs tables keyed by polynomial digest."""

    def __init__(self, directory: Path):
        self.directory = Path(directory)

    def path_for(self, poly: FieldPoly) -> Path:
        digest = poly_hash(poly).hex()[:16]
        return self.directory / f'sums-q{poly.q}-m{poly.n}-{digest}.dwxs'

    def get(self, poly: FieldPoly) -> Optional[SumTable]:
        path = self.path_for(poly)
        if not path.exists():
            return None
        try:
            return read_table(path, poly)
        except CacheFormatError as e:
            logger.warning('ignoring unreadable cache entry: %s', e)
            return None

    def put(self, table: SumTable) -> Path:
        path = self.path_for(table.poly)
        write_table(table, path)
        logger.debug('cached table at %s', path)
        return path

    def get_or_compute(self, poly: FieldPoly, config: Optional[Dict] = None,
                       k: Optional[int] = None) -> SumTable:
        table = self.get(poly)
        if table is None:
            table = scan_all_pairs(poly, config, k)
            self.put(table)
        return table
