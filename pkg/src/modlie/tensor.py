"""Bracket-tensor helpers shared by the algebra modules.

A structure tensor ``C`` has shape (n, n, n) with ``[b_i, b_j] = sum_k C[i, j, k] b_k``.
Entries are integers; when ``p`` is given they are reduced mod p.
"""
from __future__ import annotations

from typing import Optional

import numpy as np


def _finish(x: np.ndarray, p: Optional[int]) -> np.ndarray:
    x = np.rint(x).astype(np.int64)
    return x % p if p else x


def brackets(C: np.ndarray, X: np.ndarray, Y: np.ndarray, p: Optional[int]) -> np.ndarray:
    """All products [x, y] for rows x of X and y of Y; shape (len(X), len(Y), n)."""
    n = C.shape[0]
    X = np.atleast_2d(X).astype(np.float64)
    Y = np.atleast_2d(Y).astype(np.float64)
    left = (X @ C.reshape(n, n * n).astype(np.float64))
    if p:
        left = np.rint(left) % p
    left = left.reshape(-1, n, n)
    out = np.einsum("jb,abk->ajk", Y, left, optimize=True)
    return _finish(out, p)


def antisymmetry_defect(C: np.ndarray, p: Optional[int]) -> Optional[tuple[int, int]]:
    S = C + C.transpose(1, 0, 2)
    diag = C[np.arange(C.shape[0]), np.arange(C.shape[0])]
    if p:
        S = S % p
        diag = diag % p
    bad = np.argwhere(np.any(S != 0, axis=2))
    if bad.size:
        return tuple(int(v) for v in bad[0])
    bad = np.flatnonzero(np.any(diag != 0, axis=1))
    if bad.size:
        return (int(bad[0]), int(bad[0]))
    return None


def jacobi_scan(C: np.ndarray, p: Optional[int], stop_at_first: bool = True):
    """Exhaustive Jacobi check over all basis triples.

    Returns ``(n_bad, witness)`` where ``witness`` is the first failing triple
    (i, j, k) together with the defect vector, or ``None``.
    """
    n = C.shape[0]
    Cf = C.astype(np.float64)
    flat = Cf.reshape(n * n, n)
    n_bad = 0
    witness = None
    block = max(1, 20000 // max(n * n, 1) + 1)
    for i0 in range(0, n, block):
        idx = np.arange(i0, min(n, i0 + block))
        # [b_i, [b_j, b_k]]
        t1 = np.tensordot(flat, Cf[idx], axes=([1], [1]))  # (j*k, i, m)
        t1 = t1.reshape(n, n, len(idx), n).transpose(2, 0, 1, 3)
        # [b_j, [b_k, b_i]]
        u = Cf[:, idx, :]  # (k, i, l)
        t2 = np.einsum("kil,jlm->ijkm", u, Cf, optimize=True)
        # [b_k, [b_i, b_j]]
        v = Cf[idx]  # (i, j, l)
        t3 = np.einsum("ijl,klm->ijkm", v, Cf, optimize=True)
        J = np.rint(t1 + t2 + t3).astype(np.int64)
        if p:
            J %= p
        bad = np.any(J != 0, axis=3)
        cnt = int(bad.sum())
        if cnt:
            n_bad += cnt
            if witness is None:
                a, j, k = np.argwhere(bad)[0]
                witness = ((int(idx[a]), int(j), int(k)), J[a, j, k].copy())
            if stop_at_first:
                return n_bad, witness
    return n_bad, witness
