"""Vectorized sweeps over every left quasigroup of a small order.

All (n!)^n tables of order n <= 4 fit comfortably in memory as one uint8
array of shape (T, n, n).  Identity flags and per-partition congruence
checks are computed with numpy gathers over the whole stack at once, so the
exhaustive acceptance criteria stay inside their time budget.  Anything
group-theoretic falls back to per-table code on the (small) subsets where
it is needed.
"""

from __future__ import annotations

from itertools import permutations

import numpy as np

from .errors import OrderTooLarge
from .partition import Partition

BULK_CAP = 4


def all_tables_array(n: int) -> np.ndarray:
    """Stack of all (n!)^n tables, shape (T, n, n), rows in lexicographic
    row-tuple order."""
    if n > BULK_CAP:
        raise OrderTooLarge(f"full table stack capped at order {BULK_CAP}")
    perms = np.array(list(permutations(range(n))), dtype=np.uint8)
    f = len(perms)
    t = f ** n
    grids = np.indices([f] * n).reshape(n, t)
    out = np.empty((t, n, n), dtype=np.uint8)
    for r in range(n):
        out[:, r, :] = perms[grids[r]]
    return out


def ldiv_array(tables: np.ndarray) -> np.ndarray:
    """Rowwise inverse permutations (the left-division table stack)."""
    return np.argsort(tables, axis=2).astype(np.uint8)


def _gather(flat: np.ndarray, rows: np.ndarray, cols: np.ndarray, n: int) -> np.ndarray:
    """values[t, ...] = table[t, rows[t, ...], cols[t, ...]]."""
    idx = rows.astype(np.int32) * n + cols.astype(np.int32)
    return np.take_along_axis(flat, idx.reshape(flat.shape[0], -1),
                              axis=1).reshape(rows.shape)


def idempotent_mask(tables: np.ndarray) -> np.ndarray:
    n = tables.shape[1]
    diag = tables[:, np.arange(n), np.arange(n)]
    return (diag == np.arange(n, dtype=np.uint8)).all(axis=1)


def two_divisible_mask(tables: np.ndarray) -> np.ndarray:
    n = tables.shape[1]
    diag = np.sort(tables[:, np.arange(n), np.arange(n)], axis=1)
    return (diag == np.arange(n, dtype=np.uint8)).all(axis=1)


def latin_mask(tables: np.ndarray) -> np.ndarray:
    n = tables.shape[1]
    cols = np.sort(tables, axis=1)
    return (cols == np.arange(n, dtype=np.uint8)[None, :, None]).all(axis=(1, 2))


def permutation_mask(tables: np.ndarray) -> np.ndarray:
    return (tables == tables[:, :1, :]).all(axis=(1, 2))


def faithful_mask(tables: np.ndarray) -> np.ndarray:
    n = tables.shape[1]
    out = np.ones(tables.shape[0], dtype=bool)
    for a in range(n):
        for b in range(a + 1, n):
            out &= (tables[:, a, :] != tables[:, b, :]).any(axis=1)
    return out


def sm1_mask(tables: np.ndarray) -> np.ndarray:
    """(x*x)*(y*z) == (x*y)*(x*z) for all triples."""
    t, n, _ = tables.shape
    flat = tables.reshape(t, n * n)
    diag = tables[:, np.arange(n), np.arange(n)]
    ok = np.ones(t, dtype=bool)
    for x in range(n):
        sx = diag[:, x:x + 1]
        for y in range(n):
            lhs = _gather(flat, np.repeat(sx, n, axis=1), tables[:, y, :], n)
            rhs = _gather(flat, np.repeat(tables[:, x, y:y + 1], n, axis=1),
                          tables[:, x, :], n)
            ok &= (lhs == rhs).all(axis=1)
    return ok


def sm2_mask(tables: np.ndarray, ldiv: np.ndarray) -> np.ndarray:
    """(x\\y)*(x\\z) == (x*x)\\(y*z) for all triples."""
    t, n, _ = tables.shape
    flat = tables.reshape(t, n * n)
    ldflat = ldiv.reshape(t, n * n)
    diag = tables[:, np.arange(n), np.arange(n)]
    ok = np.ones(t, dtype=bool)
    for x in range(n):
        sx = diag[:, x:x + 1]
        for y in range(n):
            lhs = _gather(flat, np.repeat(ldiv[:, x, y:y + 1], n, axis=1),
                          ldiv[:, x, :], n)
            rhs = _gather(ldflat, np.repeat(sx, n, axis=1), tables[:, y, :], n)
            ok &= (lhs == rhs).all(axis=1)
    return ok


def rack_mask(tables: np.ndarray) -> np.ndarray:
    """x*(y*z) == (x*y)*(x*z) for all triples."""
    t, n, _ = tables.shape
    flat = tables.reshape(t, n * n)
    ok = np.ones(t, dtype=bool)
    for x in range(n):
        xs = np.full((t, n), x, dtype=np.uint8)
        for y in range(n):
            lhs = _gather(flat, xs, tables[:, y, :], n)
            rhs = _gather(flat, np.repeat(tables[:, x, y:y + 1], n, axis=1),
                          tables[:, x, :], n)
            ok &= (lhs == rhs).all(axis=1)
    return ok


def medial_mask(tables: np.ndarray) -> np.ndarray:
    """(x*y)*(z*u) == (x*z)*(y*u) for all quadruples."""
    t, n, _ = tables.shape
    flat = tables.reshape(t, n * n)
    ok = np.ones(t, dtype=bool)
    for x in range(n):
        for y in range(n):
            xy = np.repeat(tables[:, x, y:y + 1], n, axis=1)
            for z in range(y, n):
                lhs = _gather(flat, xy, tables[:, z, :], n)
                rhs = _gather(flat, np.repeat(tables[:, x, z:z + 1], n, axis=1),
                              tables[:, y, :], n)
                ok &= (lhs == rhs).all(axis=1)
    return ok


def congruence_direct_mask(tables: np.ndarray, ldiv: np.ndarray,
                           alpha: Partition) -> np.ndarray:
    """Direct compatibility of one partition across the whole stack."""
    t = tables.shape[0]
    bid = np.array(alpha.block_id, dtype=np.uint8)
    ok = np.ones(t, dtype=bool)
    for a, b in alpha.related_pairs():
        if a > b:
            continue
        ok &= (bid[tables[:, :, a]] == bid[tables[:, :, b]]).all(axis=1)
        ok &= (bid[ldiv[:, :, a]] == bid[ldiv[:, :, b]]).all(axis=1)
        ok &= (bid[tables[:, a, :]] == bid[tables[:, b, :]]).all(axis=1)
        ok &= (bid[ldiv[:, a, :]] == bid[ldiv[:, b, :]]).all(axis=1)
    return ok


def blocks_mask(tables: np.ndarray, ldiv: np.ndarray,
                alpha: Partition) -> np.ndarray:
    """Rows and inverse rows map each block onto a block, stackwide."""
    t, n, _ = tables.shape
    bid = np.array(alpha.block_id, dtype=np.uint8)
    ok = np.ones(t, dtype=bool)
    for stack in (tables, ldiv):
        for block in alpha.blocks():
            if len(block) == 1:
                continue
            imgs = bid[stack[:, :, list(block)]]
            ok &= (imgs == imgs[:, :, :1]).all(axis=2).all(axis=1)
    return ok
