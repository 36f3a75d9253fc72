"""Dense linear algebra over exact rationals and floats.

Matrices are plain lists of row lists.  Entries may be ``int``/``Fraction``
(the exact backend), ``float`` (the numeric backend), or :class:`~orbitkit.jets.Jet`
for derivative propagation; the arithmetic helpers are generic over all three.

Rank certificates are the workhorse here.  The exact path clears denominators
row by row and runs fraction-free Bareiss elimination over Python integers, so
a reported rank is a proof, not an estimate.  The float path is a cross-check
via SVD with a relative threshold.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence

import numpy as np

Row = List
Matrix = List[Row]


def zeros(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]


def identity(size: int) -> Matrix:
    return [[Fraction(int(r == c)) for c in range(size)] for r in range(size)]


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_neg(a: Matrix) -> Matrix:
    return [[-x for x in row] for row in a]


def mat_scale(s, a: Matrix) -> Matrix:
    return [[s * x for x in row] for row in a]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols_b = len(b[0]) if b else 0
    bt = [[b[k][c] for k in range(len(b))] for c in range(cols_b)]
    return [[_dot(row, col) for col in bt] for row in a]


def _dot(u: Sequence, v: Sequence):
    total = u[0] * v[0]
    for x, y in zip(u[1:], v[1:]):
        total += x * y
    return total


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def trace(a: Matrix):
    total = a[0][0]
    for k in range(1, len(a)):
        total += a[k][k]
    return total


def trace_product(a: Matrix, b: Matrix):
    """tr(a b) without forming the product matrix."""
    total = None
    for i, row in enumerate(a):
        for j, x in enumerate(row):
            term = x * b[j][i]
            total = term if total is None else total + term
    return total


def is_zero_matrix(a: Matrix) -> bool:
    return all(x == 0 for row in a for x in row)


def max_abs(a: Matrix) -> float:
    return max((abs(x) for row in a for x in row), default=0.0)


def exp_nilpotent(m: Matrix) -> Matrix:
    """Exponential of a nilpotent matrix, summed exactly.

    Raises ValueError when the argument fails to be nilpotent (the power
    series would not terminate).
    """
    size = len(m)
    result = identity(size)
    term = identity(size)
    for k in range(1, size + 1):
        term = mat_scale(Fraction(1, k), mat_mul(term, m))
        if is_zero_matrix(term):
            return result
        result = mat_add(result, term)
    raise ValueError("matrix is not nilpotent")


# ---------------------------------------------------------------------------
# Exact rank / kernel / solve
# ---------------------------------------------------------------------------


def _integer_rows(rows: Matrix) -> List[List[int]]:
    """Scale each row by the lcm of its denominators; rank is unchanged."""
    out = []
    for row in rows:
        denom = 1
        for x in row:
            if isinstance(x, Fraction):
                denom = denom * x.denominator // gcd(denom, x.denominator)
            elif not isinstance(x, int):
                raise TypeError(f"exact rank requires int/Fraction entries, got {type(x).__name__}")
        scaled = []
        for x in row:
            if isinstance(x, Fraction):
                scaled.append(int(x * denom))
            else:
                scaled.append(x * denom)
        out.append(scaled)
    return out


def rank_exact(rows: Matrix, stop_at: Optional[int] = None) -> int:
    """Rank over the rationals via fraction-free Bareiss elimination.

    ``stop_at`` allows early exit as soon as the rank is known to reach that
    value, which keeps membership tests (rank <= 2?) cheap on large systems.
    """
    m = [row[:] for row in _integer_rows(rows)]
    m = [row for row in m if any(row)]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot_row = None
        best = None
        for r in range(rank, nrows):
            entry = m[r][col]
            if entry != 0 and (best is None or abs(entry) < best):
                best = abs(entry)
                pivot_row = r
        if pivot_row is None:
            continue
        m[rank], m[pivot_row] = m[pivot_row], m[rank]
        piv = m[rank][col]
        for r in range(rank + 1, nrows):
            factor = m[r][col]
            row_r = m[r]
            row_p = m[rank]
            for c in range(col + 1, ncols):
                row_r[c] = (row_r[c] * piv - factor * row_p[c]) // prev
            row_r[col] = 0
        prev = piv
        rank += 1
        if stop_at is not None and rank >= stop_at:
            return rank
        if rank == nrows:
            break
    return rank


def rank_float(rows: Matrix, rel_tol: float = 1e-8) -> int:
    """Numerical rank: singular values above rel_tol * largest."""
    arr = np.array([[float(x) for x in row] for row in rows], dtype=float)
    if arr.size == 0:
        return 0
    sigma = np.linalg.svd(arr, compute_uv=False)
    if sigma.size == 0 or sigma[0] == 0.0:
        return 0
    return int(np.sum(sigma > rel_tol * sigma[0]))


def rref(rows: Matrix):
    """Reduced row echelon form over Fraction.  Returns (matrix, pivot columns)."""
    m = [[Fraction(x) if isinstance(x, int) else x for x in row] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((k for k in range(r, nrows) if m[k][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for k in range(nrows):
            if k != r and m[k][c] != 0:
                factor = m[k][c]
                m[k] = [x - factor * y for x, y in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def kernel_basis(rows: Matrix) -> List[List[Fraction]]:
    """Basis of the right kernel {v : rows @ v = 0}, exact."""
    if not rows:
        return []
    ncols = len(rows[0])
    reduced, pivots = rref(rows)
    free_cols = [c for c in range(ncols) if c not in pivots]
    basis = []
    for free in free_cols:
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -reduced[r][free]
        basis.append(vec)
    return basis


def solve_exact(a: Matrix, b: Sequence) -> Optional[List[Fraction]]:
    """One exact solution of a x = b (free variables set to zero), or None."""
    if not a:
        return [] if all(x == 0 for x in b) else None
    augmented = [list(row) + [rhs] for row, rhs in zip(a, b)]
    ncols = len(a[0])
    reduced, pivots = rref(augmented)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = reduced[r][ncols]
    return x


def solve_float(a: Matrix, b: Sequence) -> np.ndarray:
    arr = np.array([[float(x) for x in row] for row in a], dtype=float)
    rhs = np.array([float(x) for x in b], dtype=float)
    solution, *_ = np.linalg.lstsq(arr, rhs, rcond=None)
    return solution
