"""Exact linear algebra over the run field (ranks, echelon forms, kernels)."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .ring import FieldSpec

_NUMPY_P_LIMIT = 3_000_000_000  # p^2 must fit in int64


def echelon(rows: Sequence[dict], field: FieldSpec) -> list[dict]:
    """Reduced row echelon form of sparse rows ``{col: value}``.

    Pivot columns are the smallest column index of each row; rows are returned
    sorted by pivot.
    """
    p = field.characteristic
    pivots: dict = {}  # pivot col -> row (normalized)
    for row in rows:
        r = {c: v for c, v in row.items() if v}
        while r:
            c = min(r)
            prow = pivots.get(c)
            if prow is None:
                break
            f = r[c]
            for cc, vv in prow.items():
                nv = r.get(cc, 0) - f * vv
                if p:
                    nv %= p
                if nv:
                    r[cc] = nv
                else:
                    r.pop(cc, None)
        if not r:
            continue
        c = min(r)
        inv = field.inv(r[c])
        r = {cc: (vv * inv % p if p else vv * inv) for cc, vv in r.items()}
        # keep the basis fully reduced
        for pc, prow in pivots.items():
            f = prow.get(c)
            if f:
                for cc, vv in r.items():
                    nv = prow.get(cc, 0) - f * vv
                    if p:
                        nv %= p
                    if nv:
                        prow[cc] = nv
                    else:
                        prow.pop(cc, None)
        pivots[c] = r
    return [pivots[c] for c in sorted(pivots)]


def _rank_numpy(rows: Sequence[dict], ncols: int, p: int) -> int:
    m = len(rows)
    A = np.zeros((m, ncols), dtype=np.int64)
    for i, row in enumerate(rows):
        for c, v in row.items():
            A[i, c] = v % p
    r = 0
    for c in range(ncols):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = (A[r] * inv) % p
        below = A[r + 1:, c]
        nzr = np.flatnonzero(below)
        if nzr.size:
            idx = r + 1 + nzr
            A[idx] = (A[idx] - np.outer(A[idx, c], A[r])) % p
        r += 1
    return r


def rank(rows: Sequence[dict], field: FieldSpec, ncols: int | None = None) -> int:
    """Rank of the matrix whose rows are sparse dicts."""
    rows = [r for r in rows if r]
    if not rows:
        return 0
    if ncols is None:
        ncols = max(max(r) for r in rows) + 1
    p = field.characteristic
    if p and p < _NUMPY_P_LIMIT and len(rows) * ncols > 400:
        if len(rows) > ncols:
            # rank is transpose invariant; eliminate along the short side
            t: list[dict] = [dict() for _ in range(ncols)]
            for i, row in enumerate(rows):
                for c, v in row.items():
                    t[c][i] = v
            return _rank_numpy(t, len(rows), p)
        return _rank_numpy(rows, ncols, p)
    return len(echelon(rows, field))


def nullspace(matrix: Sequence[Sequence], field: FieldSpec) -> list[list]:
    """Basis of ``{v : matrix · v = 0}`` for a dense matrix (list of rows)."""
    if not matrix:
        return []
    n = len(matrix[0])
    ech = echelon([{j: field(v) for j, v in enumerate(row) if v} for row in matrix], field)
    pivcols = [min(r) for r in ech]
    free = [j for j in range(n) if j not in set(pivcols)]
    basis = []
    for fcol in free:
        v = [field.zero] * n
        v[fcol] = field.one
        for r, pc in zip(ech, pivcols):
            v[pc] = field.neg(r.get(fcol, field.zero)) if r.get(fcol) else field.zero
        basis.append(v)
    return basis


def det(matrix: Sequence[Sequence], field: FieldSpec):
    """Determinant over the field by Gaussian elimination."""
    n = len(matrix)
    A = [[field(v) for v in row] for row in matrix]
    p = field.characteristic
    d = field.one
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            return field.zero
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            d = field.neg(d)
        d = d * A[c][c] % p if p else d * A[c][c]
        inv = field.inv(A[c][c])
        for r in range(c + 1, n):
            f = A[r][c] * inv
            if f:
                A[r] = [(a - f * b) % p if p else a - f * b for a, b in zip(A[r], A[c])]
    return d
