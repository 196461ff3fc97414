"""Exact linear and matrix algebra helpers.

Matrices are lists of lists whose entries are either ``Fraction`` or any
ring element supporting ``+``, ``-``, ``*`` (e.g. :class:`mclab.poly.Poly`).
Elimination routines work over ``Fraction`` with deterministic pivoting so
every basis this package produces is reproducible bit for bit.
"""

from __future__ import annotations

from fractions import Fraction as Q
from math import gcd
from typing import Callable

Matrix = list


# ---------------------------------------------------------------------------
# generic matrix arithmetic
# ---------------------------------------------------------------------------

def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = a[i][0] * b[0][j]
            for t in range(1, k):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: Matrix, c) -> Matrix:
    return [[x * c for x in row] for row in a]


def frac_identity(n: int) -> Matrix:
    return [[Q(1) if i == j else Q(0) for j in range(n)] for i in range(n)]


def frac_zero(n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    return [[Q(0)] * m for _ in range(n)]


def mat_map(a: Matrix, f: Callable) -> Matrix:
    return [[f(x) for x in row] for row in a]


def mat_eq(a: Matrix, b: Matrix) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def unipotent_inverse(a: Matrix, identity: Matrix) -> Matrix:
    """Inverse of I + N with N nilpotent, by the finite Neumann series."""
    n = len(a)
    nil = mat_sub(a, identity)
    out = [row[:] for row in identity]
    power = [row[:] for row in identity]
    for k in range(1, n + 1):
        power = mat_mul(power, nil)
        if all(_is_zeroish(x) for row in power for x in row):
            break
        out = mat_add(out, power) if k % 2 == 0 else mat_sub(out, power)
    return out


def _is_zeroish(x) -> bool:
    if isinstance(x, Q) or isinstance(x, int):
        return x == 0
    return x.is_zero()


def nilpotent_exp(nil: Matrix, identity: Matrix) -> Matrix:
    n = len(nil)
    out = [row[:] for row in identity]
    power = [row[:] for row in identity]
    fact = Q(1)
    for k in range(1, n + 1):
        power = mat_mul(power, nil)
        if all(_is_zeroish(x) for row in power for x in row):
            break
        fact *= k
        out = mat_add(out, mat_scale(power, Q(1) / fact))
    return out


def unipotent_log(a: Matrix, identity: Matrix) -> Matrix:
    n = len(a)
    nil = mat_sub(a, identity)
    out = [[x * Q(0) for x in row] for row in nil]
    power = [row[:] for row in identity]
    for k in range(1, n + 1):
        power = mat_mul(power, nil)
        if all(_is_zeroish(x) for row in power for x in row):
            break
        sign = Q(1, k) if k % 2 == 1 else Q(-1, k)
        out = mat_add(out, mat_scale(power, sign))
    return out


# ---------------------------------------------------------------------------
# elimination over Fraction (dense rows)
# ---------------------------------------------------------------------------

def rref(rows: list[list[Q]]) -> tuple[list[list[Q]], list[int]]:
    """Reduced row echelon form with leftmost-pivot selection."""
    m = [row[:] for row in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = Q(1) / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: list[list[Q]]) -> int:
    return len(rref(rows)[1])


def solve(a: list[list[Q]], b: list[Q]) -> list[Q] | None:
    """One exact solution of A x = b, or None when inconsistent.

    Free variables are pinned to zero, so the result is deterministic.
    """
    if not a:
        return [] if all(x == 0 for x in b) else None
    aug = [row[:] + [bb] for row, bb in zip(a, b)]
    red, pivots = rref(aug)
    ncols = len(a[0])
    if ncols in pivots:
        return None
    x = [Q(0)] * ncols
    for r, c in enumerate(pivots):
        x[c] = red[r][ncols]
    return x


def coordinates_in_span(basis: list[list[Q]], target: list[Q]) -> list[Q] | None:
    """Coefficients expressing target over the given basis vectors, or None."""
    if not basis:
        return [] if all(x == 0 for x in target) else None
    a = [[basis[j][i] for j in range(len(basis))] for i in range(len(target))]
    return solve(a, list(target))


# ---------------------------------------------------------------------------
# sparse fraction-free nullspace
# ---------------------------------------------------------------------------

def _row_to_int(row: dict[int, Q]) -> dict[int, int]:
    if not row:
        return {}
    den = 1
    for v in row.values():
        den = den * v.denominator // gcd(den, v.denominator)
    ints = {c: int(v * den) for c, v in row.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, abs(v))
    if g > 1:
        ints = {c: v // g for c, v in ints.items()}
    return ints


def sparse_nullspace(rows: list[dict[int, Q]], ncols: int) -> list[list[Q]]:
    """Exact nullspace basis of a sparse rational matrix.

    Fraction-free: rows are scaled to coprime integers and eliminated by
    cross-multiplication, removing integer content after every step.
    Pivoting is deterministic (columns left to right, first usable row),
    and each basis vector is normalized to leading coefficient one, so the
    basis depends only on the input, never on dict ordering.
    """
    work = [_row_to_int(r) for r in rows]
    work = [r for r in work if r]
    pivot_of_col: dict[int, dict[int, int]] = {}
    pivots: list[int] = []
    for col in range(ncols):
        pr = None
        for idx, r in enumerate(work):
            if r.get(col):
                pr = idx
                break
        if pr is None:
            continue
        piv = work.pop(pr)
        pv = piv[col]
        still = []
        for r in work:
            a = r.get(col)
            if a:
                new = {}
                for c in set(r) | set(piv):
                    v = r.get(c, 0) * pv - piv.get(c, 0) * a
                    if v:
                        new[c] = v
                g = 0
                for v in new.values():
                    g = gcd(g, abs(v))
                if g > 1:
                    new = {c: v // g for c, v in new.items()}
                r = new
            if r:
                still.append(r)
        work = still
        pivot_of_col[col] = piv
        pivots.append(col)
    free = [c for c in range(ncols) if c not in pivot_of_col]
    basis = []
    for fc in free:
        vec = [Q(0)] * ncols
        vec[fc] = Q(1)
        for col in reversed(pivots):
            piv = pivot_of_col[col]
            s = Q(0)
            for c, v in piv.items():
                if c != col:
                    s += v * vec[c]
            vec[col] = -s / piv[col]
        basis.append(vec)
    return basis


# ---------------------------------------------------------------------------
# symmetric forms
# ---------------------------------------------------------------------------

def symmetric_signature(m: list[list[Q]]) -> tuple[int, int, int]:
    """(rank, n_plus, n_minus) of a rational symmetric matrix.

    Congruence diagonalization over the rationals; exact.
    """
    a = [row[:] for row in m]
    n = len(a)
    plus = minus = 0
    for k in range(n):
        if a[k][k] == 0:
            swap = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if swap is not None:
                for t in range(n):
                    a[k][t], a[swap][t] = a[swap][t], a[k][t]
                for t in range(n):
                    a[t][k], a[t][swap] = a[t][swap], a[t][k]
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    continue
                for t in range(n):
                    a[k][t] += a[j][t]
                for t in range(n):
                    a[t][k] += a[t][j]
        d = a[k][k]
        if d == 0:
            continue
        if d > 0:
            plus += 1
        else:
            minus += 1
        for i in range(k + 1, n):
            if a[i][k] != 0:
                f = a[i][k] / d
                for t in range(n):
                    a[i][t] -= f * a[k][t]
                for t in range(n):
                    a[t][i] -= f * a[t][k]
    return plus + minus, plus, minus
