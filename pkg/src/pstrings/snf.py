"""Smith normal form over the integers.

:func:`smith_normal_form` returns unimodular certificates and is meant for
small dense matrices. :func:`invariant_factors` handles the large sparse
boundary matrices of nerves: it eliminates unit pivots sparsely and only
hands the leftover core to the dense routine.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .linalg import int_det, int_matmul


@dataclass(frozen=True)
class SmithResult:
    U: tuple
    D: tuple
    V: tuple

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    def to_json(self) -> dict:
        return {"U": [list(r) for r in self.U], "D": [list(r) for r in self.D], "V": [list(r) for r in self.V]}


def _eye(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(a: Sequence[Sequence[int]], ncols: int | None = None) -> SmithResult:
    """``U A V = D`` with ``U, V`` unimodular and ``d_1 | d_2 | ...`` nonnegative.

    Pivoting is deterministic: the nonzero entry of least absolute value in
    the active block, ties broken by row then column.
    """
    m = len(a)
    n = len(a[0]) if m else (ncols or 0)
    if any(len(r) != n for r in a):
        raise ValueError("ragged matrix")
    A = [[int(x) for x in r] for r in a]
    U, V = _eye(m), _eye(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row dst += q * row src
        if q:
            A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
            U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        if q:
            for r in A:
                r[dst] += q * r[src]
            for r in V:
                r[dst] += q * r[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = abs(A[i][j])
                if x and (best is None or x < best[0]):
                    best = (x, i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        p = A[t][t]
        dirty = False
        for i in range(t + 1, m):
            if A[i][t]:
                add_row(i, t, -(A[i][t] // p))
                dirty |= A[i][t] != 0
        for j in range(t + 1, n):
            if A[t][j]:
                add_col(j, t, -(A[t][j] // p))
                dirty |= A[t][j] != 0
        if dirty:
            continue
        bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
        if bad is not None:
            add_row(t, bad[0], 1)
            continue
        if p < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    freeze = lambda M: tuple(tuple(r) for r in M)
    return SmithResult(freeze(U), freeze(A), freeze(V))


def check_smith(a: Sequence[Sequence[int]], res: SmithResult) -> list[str]:
    """Verify a certificate exactly; returns the list of failed conditions."""
    problems = []
    m = len(a)
    n = len(res.V)
    if m and n and int_matmul(int_matmul(res.U, a), res.V) != [list(r) for r in res.D]:
        problems.append("U A V != D")
    if m and abs(int_det(res.U)) != 1:
        problems.append("U is not unimodular")
    if n and abs(int_det(res.V)) != 1:
        problems.append("V is not unimodular")
    D = res.D
    for i in range(m):
        for j in range(n):
            if i != j and D[i][j]:
                problems.append("D is not diagonal")
                break
    d = res.diagonal
    for x, y in zip(d, d[1:]):
        if x < 0 or (x == 0 and y != 0) or (x and y % x):
            problems.append("diagonal is not a divisibility chain")
            break
    if d and d[-1] < 0:
        problems.append("negative diagonal entry")
    return problems


def invariant_factors(rows: Sequence[dict], ncols: int) -> list[int]:
    """Nonzero invariant factors (sorted by divisibility) of a sparse integer matrix.

    ``rows`` are ``{column: value}`` maps. Unit pivots are eliminated first,
    each contributing a factor 1; the remaining core goes to
    :func:`smith_normal_form`.
    """
    live = {}
    cols: dict[int, set] = {}
    for i, r in enumerate(rows):
        r = {c: int(v) for c, v in r.items() if v}
        if any(not 0 <= c < ncols for c in r):
            raise ValueError("column index out of range")
        if r:
            live[i] = r
            for c in r:
                cols.setdefault(c, set()).add(i)
    ones = 0
    while True:
        pivot = None
        for i, r in live.items():
            for c, v in r.items():
                if v in (1, -1):
                    cost = (len(r) - 1) * (len(cols[c]) - 1)
                    if pivot is None or cost < pivot[0]:
                        pivot = (cost, i, c)
                    if cost == 0:
                        break
            if pivot is not None and pivot[0] == 0:
                break
        if pivot is None:
            break
        _, pi, pc = pivot
        prow = live.pop(pi)
        for c in prow:
            cols[c].discard(pi)
        sign = prow[pc]
        for i in list(cols[pc]):
            r = live[i]
            q = r[pc] * sign
            for c, v in prow.items():
                nv = r.get(c, 0) - q * v
                if nv:
                    if c not in r:
                        cols.setdefault(c, set()).add(i)
                    r[c] = nv
                elif c in r:
                    del r[c]
                    cols[c].discard(i)
            if not r:
                del live[i]
        # the pivot column is now zero outside the pivot row; the column
        # operations clearing the rest of the pivot row do not touch other rows
        del cols[pc]
        ones += 1
    core_cols = sorted({c for r in live.values() for c in r})
    factors = [1] * ones
    if live:
        index = {c: k for k, c in enumerate(core_cols)}
        dense = [[0] * len(core_cols) for _ in live]
        for k, r in enumerate(live.values()):
            for c, v in r.items():
                dense[k][index[c]] = v
        factors += [d for d in smith_normal_form(dense).diagonal if d]
    return sorted(factors)


def dense_to_sparse(a: Sequence[Sequence[int]]) -> list[dict]:
    return [{j: v for j, v in enumerate(r) if v} for r in a]


def gcd_all(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
