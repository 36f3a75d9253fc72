"""Block model for the orthogonal Lie algebra so(2n+2) and minimal nilpotents.

The bilinear form is fixed once and for all as J = [[0, I], [I, 0]] with two
blocks of size n+1, so(J) = {M : M^T J + J M = 0}.  Rows and columns are split
1 + n + 1 + n, and an element is stored by its independent blocks::

    [  w    u     0    v   ]
    [  x    A    -v^T  B   ]      x, y, u, v in C^n,  A in gl_n,
    [  0    y    -w   -x   ]      B, C skew n x n,  w a scalar.
    [ -y^T  C   -u^T  -A^T ]

This raggedly redundant matrix layout is exactly the generic element of so(J);
``BlockElement.from_matrix`` validates the relation and reads the blocks back.

A diagonal torus acts by conjugation and grades the blocks by weight:
w, A carry 0; x, v carry +1; y, u carry -1; B carries +2; C carries -2.

The minimal nilpotent orbit closure in so(2n+2) is cut out by ``M @ M == 0``
together with ``rank(M) <= 2``; the analogue inside gl_n (for the traceless
rank-one matrices) is ``A @ A == 0`` with ``rank(A) <= 1``.  Both membership
tests run exactly over Fraction entries and with tolerances over floats.

Coordinate names used by the charts are 1-based, e.g. ``a[2,3]``, ``b[1,4]``,
``x[1]``; square brackets always hold block-row/column indices.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from . import linalg
from .jets import Jet


class ChartDomainError(ValueError):
    """Raised when a requested point falls outside a chart's domain."""


def coerce_scalar(x):
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, (Fraction, float, Jet)):
        return x
    raise TypeError(f"unsupported scalar type {type(x).__name__}")


def _coerce_vector(vec, n) -> tuple:
    vec = tuple(coerce_scalar(x) for x in vec)
    if len(vec) != n:
        raise ValueError(f"expected length-{n} vector, got {len(vec)}")
    return vec


def _coerce_square(mat, n, skew=False) -> tuple:
    rows = tuple(tuple(coerce_scalar(x) for x in row) for row in mat)
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValueError(f"expected {n}x{n} matrix")
    if skew:
        for i in range(n):
            for j in range(n):
                if not rows[i][j] == -rows[j][i]:
                    raise ValueError("matrix is not skew-symmetric")
    return rows


def pairing_matrix(n: int) -> linalg.Matrix:
    """The split symmetric form J = [[0, I_{n+1}], [I_{n+1}, 0]]."""
    size = 2 * n + 2
    half = n + 1
    j = linalg.zeros(size, size)
    for k in range(half):
        j[k][half + k] = Fraction(1)
        j[half + k][k] = Fraction(1)
    return j


def _partner(index: int, n: int) -> int:
    half = n + 1
    return index + half if index < half else index - half


def is_orthogonal_element(m: linalg.Matrix, n: int, atol: Optional[float] = None) -> bool:
    """Check M^T J + J M = 0, i.e. (r, c) entries satisfy M[p(c)][r] = -M[p(r)][c]."""
    size = 2 * n + 2
    if len(m) != size or any(len(row) != size for row in m):
        return False
    for r in range(size):
        for c in range(size):
            residual = m[_partner(c, n)][r] + m[_partner(r, n)][c]
            if atol is None:
                if not residual == 0:
                    return False
            elif abs(residual) > atol:
                return False
    return True


@dataclass(frozen=True)
class BlockElement:
    """Element of so(2n+2) stored by blocks (see module docstring)."""

    n: int
    w: object = 0
    x: tuple = ()
    y: tuple = ()
    u: tuple = ()
    v: tuple = ()
    A: tuple = ()
    B: tuple = ()
    C: tuple = ()

    def __post_init__(self):
        n = self.n
        if n < 2:
            raise ValueError("block model needs n >= 2")
        zero_vec = (Fraction(0),) * n
        zero_mat = tuple((Fraction(0),) * n for _ in range(n))
        object.__setattr__(self, "w", coerce_scalar(self.w))
        for name, default in (("x", zero_vec), ("y", zero_vec), ("u", zero_vec), ("v", zero_vec)):
            val = getattr(self, name)
            object.__setattr__(self, name, _coerce_vector(val, n) if val else default)
        for name, skew in (("A", False), ("B", True), ("C", True)):
            val = getattr(self, name)
            object.__setattr__(self, name, _coerce_square(val, n, skew=skew) if val else zero_mat)

    # -- construction ------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "BlockElement":
        return cls(n=n)

    @classmethod
    def from_matrix(cls, m: linalg.Matrix, atol: Optional[float] = None) -> "BlockElement":
        size = len(m)
        if size % 2 != 0 or size < 6:
            raise ValueError("matrix size must be 2n+2 with n >= 2")
        n = size // 2 - 1
        if not is_orthogonal_element(m, n, atol=atol):
            raise ValueError("matrix does not satisfy M^T J + J M = 0")
        return cls(
            n=n,
            w=m[0][0],
            u=tuple(m[0][1 + k] for k in range(n)),
            v=tuple(m[0][n + 2 + k] for k in range(n)),
            x=tuple(m[1 + k][0] for k in range(n)),
            y=tuple(m[n + 1][1 + k] for k in range(n)),
            A=tuple(tuple(m[1 + r][1 + c] for c in range(n)) for r in range(n)),
            B=tuple(tuple(m[1 + r][n + 2 + c] for c in range(n)) for r in range(n)),
            C=tuple(tuple(m[n + 2 + r][1 + c] for c in range(n)) for r in range(n)),
        )

    # -- linear structure ----------------------------------------------------

    def matrix(self) -> linalg.Matrix:
        n = self.n
        size = 2 * n + 2
        m = [[Fraction(0)] * size for _ in range(size)]
        m[0][0] = self.w
        m[n + 1][n + 1] = -self.w
        for k in range(n):
            m[0][1 + k] = self.u[k]
            m[0][n + 2 + k] = self.v[k]
            m[1 + k][0] = self.x[k]
            m[1 + k][n + 1] = -self.v[k]
            m[n + 1][1 + k] = self.y[k]
            m[n + 1][n + 2 + k] = -self.x[k]
            m[n + 2 + k][0] = -self.y[k]
            m[n + 2 + k][n + 1] = -self.u[k]
        for r in range(n):
            for c in range(n):
                m[1 + r][1 + c] = self.A[r][c]
                m[1 + r][n + 2 + c] = self.B[r][c]
                m[n + 2 + r][1 + c] = self.C[r][c]
                m[n + 2 + r][n + 2 + c] = -self.A[c][r]
        return m

    def _map(self, fn: Callable) -> "BlockElement":
        n = self.n
        return BlockElement(
            n=n,
            w=fn(self.w),
            x=tuple(fn(t) for t in self.x),
            y=tuple(fn(t) for t in self.y),
            u=tuple(fn(t) for t in self.u),
            v=tuple(fn(t) for t in self.v),
            A=tuple(tuple(fn(t) for t in row) for row in self.A),
            B=tuple(tuple(fn(t) for t in row) for row in self.B),
            C=tuple(tuple(fn(t) for t in row) for row in self.C),
        )

    def __add__(self, other: "BlockElement") -> "BlockElement":
        if self.n != other.n:
            raise ValueError("size mismatch")
        pairs = zip
        return BlockElement(
            n=self.n,
            w=self.w + other.w,
            x=tuple(a + b for a, b in pairs(self.x, other.x)),
            y=tuple(a + b for a, b in pairs(self.y, other.y)),
            u=tuple(a + b for a, b in pairs(self.u, other.u)),
            v=tuple(a + b for a, b in pairs(self.v, other.v)),
            A=tuple(tuple(a + b for a, b in pairs(ra, rb)) for ra, rb in pairs(self.A, other.A)),
            B=tuple(tuple(a + b for a, b in pairs(ra, rb)) for ra, rb in pairs(self.B, other.B)),
            C=tuple(tuple(a + b for a, b in pairs(ra, rb)) for ra, rb in pairs(self.C, other.C)),
        )

    def __neg__(self) -> "BlockElement":
        return self._map(lambda t: -t)

    def __sub__(self, other: "BlockElement") -> "BlockElement":
        return self + (-other)

    def scale(self, s) -> "BlockElement":
        s = coerce_scalar(s)
        return self._map(lambda t: s * t)

    def __rmul__(self, s) -> "BlockElement":
        return self.scale(s)

    def is_zero(self) -> bool:
        return all(self.block_is_zero(name) for name in ("w", "x", "y", "u", "v", "A", "B", "C"))

    def block_is_zero(self, name: str) -> bool:
        val = getattr(self, name)
        if name == "w":
            return val == 0
        if name in ("x", "y", "u", "v"):
            return all(t == 0 for t in val)
        return all(t == 0 for row in val for t in row)

    # -- torus weights and parabolic pieces ----------------------------------

    def weight_part(self, d: int) -> "BlockElement":
        n = self.n
        if d == 0:
            return BlockElement(n=n, w=self.w, A=self.A)
        if d == 1:
            return BlockElement(n=n, x=self.x, v=self.v)
        if d == -1:
            return BlockElement(n=n, y=self.y, u=self.u)
        if d == 2:
            return BlockElement(n=n, B=self.B)
        if d == -2:
            return BlockElement(n=n, C=self.C)
        raise ValueError("weights range over -2..2")

    def weight_support(self) -> Tuple[int, ...]:
        present = []
        for d in (-2, -1, 0, 1, 2):
            if not self.weight_part(d).is_zero():
                present.append(d)
        return tuple(present)

    def uplus_part(self) -> "BlockElement":
        return BlockElement(n=self.n, x=self.x, y=self.y)

    def uminus_part(self) -> "BlockElement":
        return BlockElement(n=self.n, u=self.u, v=self.v)

    def levi_part(self) -> "BlockElement":
        return BlockElement(n=self.n, w=self.w, A=self.A, B=self.B, C=self.C)

    def center_part(self) -> "BlockElement":
        return BlockElement(n=self.n, w=self.w)

    def semisimple_levi_part(self) -> "BlockElement":
        return BlockElement(n=self.n, A=self.A, B=self.B, C=self.C)

    def trace_a(self):
        return linalg.trace([list(r) for r in self.A])


def bracket(a: BlockElement, b: BlockElement) -> BlockElement:
    """Lie bracket, computed on matrices and read back through the block form."""
    return BlockElement.from_matrix(linalg.commutator(a.matrix(), b.matrix()))


def adjoint_exp(v: BlockElement, target: BlockElement) -> BlockElement:
    """Ad(exp v) target for nilpotent v, exactly."""
    ev = linalg.exp_nilpotent(v.matrix())
    ev_inv = linalg.exp_nilpotent(linalg.mat_neg(v.matrix()))
    return BlockElement.from_matrix(linalg.mat_mul(ev, linalg.mat_mul(target.matrix(), ev_inv)))


# ---------------------------------------------------------------------------
# Embeddings and flips
# ---------------------------------------------------------------------------


def embed_gl(n: int, a) -> BlockElement:
    return BlockElement(n=n, A=a)


def embed_uplus(x, y) -> BlockElement:
    x = tuple(x)
    return BlockElement(n=len(x), x=x, y=y)


def embed_uminus(u, v) -> BlockElement:
    u = tuple(u)
    return BlockElement(n=len(u), u=u, v=v)


def flip_minus_blocks(e: BlockElement) -> BlockElement:
    """Conjugation by the orthogonal swap of the two n-blocks.

    Exchanges u <-> v and x <-> -y while sending A to -A^T and B <-> C.  It
    preserves the orbit closure, the trace-zero shell, and the locus x = y = 0,
    which is how fiber statements over (u, 0) transfer to (0, v).
    """
    n = e.n
    return BlockElement(
        n=n,
        w=e.w,
        x=tuple(-t for t in e.y),
        y=tuple(-t for t in e.x),
        u=e.v,
        v=e.u,
        A=tuple(tuple(-e.A[c][r] for c in range(n)) for r in range(n)),
        B=e.C,
        C=e.B,
    )


def flip_odd_blocks(e: BlockElement) -> BlockElement:
    """Conjugation by the orthogonal swap of the two 1-blocks (e_0 <-> e_{n+1}).

    Exchanges x <-> -v and y <-> u, negates w, and fixes A, B, C.  It maps the
    component {v = 0} of the central fiber onto {x = 0} and back.
    """
    return BlockElement(
        n=e.n,
        w=-e.w,
        x=tuple(-t for t in e.v),
        y=e.u,
        u=e.y,
        v=tuple(-t for t in e.x),
        A=e.A,
        B=e.B,
        C=e.C,
    )


def flip_minus_matrix(n: int) -> linalg.Matrix:
    """The permutation matrix realizing flip_minus_blocks by conjugation."""
    size = 2 * n + 2
    g = linalg.zeros(size, size)
    g[0][0] = Fraction(1)
    g[n + 1][n + 1] = Fraction(1)
    for k in range(n):
        g[1 + k][n + 2 + k] = Fraction(1)
        g[n + 2 + k][1 + k] = Fraction(1)
    return g


def flip_odd_matrix(n: int) -> linalg.Matrix:
    size = 2 * n + 2
    g = linalg.identity(size)
    g[0][0] = Fraction(0)
    g[n + 1][n + 1] = Fraction(0)
    g[0][n + 1] = Fraction(1)
    g[n + 1][0] = Fraction(1)
    return g


# ---------------------------------------------------------------------------
# Bases
# ---------------------------------------------------------------------------


def _unit_vector(n, k):
    return tuple(Fraction(int(t == k)) for t in range(n))


def _unit_matrix(n, r, c):
    return tuple(tuple(Fraction(int(rr == r and cc == c)) for cc in range(n)) for rr in range(n))


def _skew_unit(n, r, c):
    rows = [[Fraction(0)] * n for _ in range(n)]
    rows[r][c] = Fraction(1)
    rows[c][r] = Fraction(-1)
    return tuple(tuple(row) for row in rows)


def so_basis(n: int) -> List[Tuple[str, BlockElement]]:
    """Ordered basis of so(2n+2) in block coordinates; dim (n+1)(2n+1)."""
    basis: List[Tuple[str, BlockElement]] = [("w", BlockElement(n=n, w=1))]
    for k in range(n):
        basis.append((f"x[{k + 1}]", BlockElement(n=n, x=_unit_vector(n, k))))
    for k in range(n):
        basis.append((f"y[{k + 1}]", BlockElement(n=n, y=_unit_vector(n, k))))
    for k in range(n):
        basis.append((f"u[{k + 1}]", BlockElement(n=n, u=_unit_vector(n, k))))
    for k in range(n):
        basis.append((f"v[{k + 1}]", BlockElement(n=n, v=_unit_vector(n, k))))
    for r in range(n):
        for c in range(n):
            basis.append((f"a[{r + 1},{c + 1}]", BlockElement(n=n, A=_unit_matrix(n, r, c))))
    for r in range(n):
        for c in range(r + 1, n):
            basis.append((f"b[{r + 1},{c + 1}]", BlockElement(n=n, B=_skew_unit(n, r, c))))
    for r in range(n):
        for c in range(r + 1, n):
            basis.append((f"c[{r + 1},{c + 1}]", BlockElement(n=n, C=_skew_unit(n, r, c))))
    return basis


@functools.lru_cache(maxsize=None)
def so_basis_entries(n: int) -> Tuple[Tuple[str, Tuple[Tuple[int, int, int], ...]], ...]:
    """Sparse matrix entries (row, col, sign) of each so_basis element.

    Every basis matrix has at most two nonzero entries, so products and trace
    pairings against them cost a handful of multiplications; hand-assembled
    Jacobians and Gram matrices are built from this table.
    """
    out = []
    for name, e in so_basis(n):
        m = e.matrix()
        entries = tuple((p, q, int(s)) for p, row in enumerate(m)
                        for q, s in enumerate(row) if s != 0)
        out.append((name, entries))
    return tuple(out)


def from_coordinates(n: int, coords: Mapping[str, object]) -> BlockElement:
    """Element from basis-coordinate values keyed by the so_basis names.

    Missing names default to zero; skew pairs b[r,c] / c[r,c] use only the
    r < c representative, matching the basis.
    """
    get = lambda name: coords.get(name, 0)
    a = tuple(tuple(get(f"a[{r},{c}]") for c in range(1, n + 1)) for r in range(1, n + 1))
    skew = lambda prefix: tuple(
        tuple(
            get(f"{prefix}[{r},{c}]") if r < c else (-get(f"{prefix}[{c},{r}]") if r > c else 0)
            for c in range(1, n + 1)
        )
        for r in range(1, n + 1)
    )
    vec = lambda prefix: tuple(get(f"{prefix}[{k}]") for k in range(1, n + 1))
    return BlockElement(n=n, w=get("w"), x=vec("x"), y=vec("y"), u=vec("u"),
                        v=vec("v"), A=a, B=skew("b"), C=skew("c"))


def to_coordinates(e: BlockElement) -> Dict[str, object]:
    """Basis-coordinate values of an element, keyed by the so_basis names."""
    n = e.n
    coords: Dict[str, object] = {"w": e.w}
    for prefix in ("x", "y", "u", "v"):
        for k, t in enumerate(getattr(e, prefix)):
            coords[f"{prefix}[{k + 1}]"] = t
    for r in range(n):
        for c in range(n):
            coords[f"a[{r + 1},{c + 1}]"] = e.A[r][c]
    for prefix, block in (("b", e.B), ("c", e.C)):
        for r in range(n):
            for c in range(r + 1, n):
                coords[f"{prefix}[{r + 1},{c + 1}]"] = block[r][c]
    return coords


def levi_basis(n: int) -> List[Tuple[str, BlockElement]]:
    return [(name, e) for name, e in so_basis(n)
            if name == "w" or name.startswith(("a[", "b[", "c["))]


def uplus_basis(n: int) -> List[Tuple[str, BlockElement]]:
    return [(name, e) for name, e in so_basis(n) if name.startswith(("x[", "y["))]


def uminus_basis(n: int) -> List[Tuple[str, BlockElement]]:
    return [(name, e) for name, e in so_basis(n) if name.startswith(("u[", "v["))]


def torus_generator(n: int) -> BlockElement:
    """Generator of the grading torus: A = identity, every other block zero."""
    return BlockElement(n=n, A=tuple(_unit_vector(n, k) for k in range(n)))


# ---------------------------------------------------------------------------
# Membership
# ---------------------------------------------------------------------------


def is_minimal_member(e: BlockElement, atol: Optional[float] = None) -> bool:
    """Membership in the minimal orbit closure: M @ M = 0 and rank(M) <= 2."""
    m = e.matrix()
    square = linalg.mat_mul(m, m)
    if atol is None:
        if not linalg.is_zero_matrix(square):
            return False
        return linalg.rank_exact(m, stop_at=3) <= 2
    scale = 1.0 + linalg.max_abs(m) ** 2
    if linalg.max_abs(square) > atol * scale:
        return False
    return linalg.rank_float(m, rel_tol=atol) <= 2


def is_minimal_gl_member(a: Sequence[Sequence], atol: Optional[float] = None) -> bool:
    """Minimal nilpotent membership in gl_n: A @ A = 0 and rank(A) <= 1."""
    rows = [list(r) for r in a]
    square = linalg.mat_mul(rows, rows)
    if atol is None:
        if not linalg.is_zero_matrix(square):
            return False
        return linalg.rank_exact(rows, stop_at=2) <= 1
    scale = 1.0 + linalg.max_abs(rows) ** 2
    if linalg.max_abs(square) > atol * scale:
        return False
    return linalg.rank_float(rows, rel_tol=atol) <= 1


def pair_to_nilpotent(x: Sequence, y: Sequence, atol: Optional[float] = None):
    """The rank-one matrix (x_k y_l) attached to an incidence pair x . y = 0."""
    x = [coerce_scalar(t) for t in x]
    y = [coerce_scalar(t) for t in y]
    pairing = sum(a * b for a, b in zip(x, y))
    if atol is None:
        if not pairing == 0:
            raise ValueError("pair is not on the incidence quadric")
    elif abs(pairing) > atol:
        raise ValueError("pair is not on the incidence quadric")
    return tuple(tuple(a * b for b in y) for a in x)


# ---------------------------------------------------------------------------
# Charts on the orbit closure
# ---------------------------------------------------------------------------


def _check_indices(n: int, *indices: int):
    for idx in indices:
        if not 1 <= idx <= n:
            raise ValueError(f"index {idx} out of range 1..{n}")


def _take(coords: Mapping[str, object], names: Sequence[str]) -> Dict[str, object]:
    missing = [name for name in names if name not in coords]
    if missing:
        raise ChartDomainError(f"missing chart coordinates: {missing}")
    extra = [name for name in coords if name not in names]
    if extra:
        raise ChartDomainError(f"unexpected chart coordinates: {extra}")
    return {name: coerce_scalar(coords[name]) for name in names}


def _rows_from_pivots(n: int, pivot_rows: Dict[int, List], coeffs: Dict[int, Tuple]) -> linalg.Matrix:
    """Assemble a rank <= 2 matrix whose every row is a combination of two pivot rows.

    ``coeffs[r]`` holds (alpha, beta) with row_r = alpha * first + beta * second,
    ordered as the pivot rows were inserted.
    """
    size = 2 * n + 2
    (r1_idx, row1), (r2_idx, row2) = list(pivot_rows.items())
    m: linalg.Matrix = []
    for r in range(size):
        if r == r1_idx:
            m.append(list(row1))
        elif r == r2_idx:
            m.append(list(row2))
        else:
            alpha, beta = coeffs[r]
            m.append([alpha * a + beta * b for a, b in zip(row1, row2)])
    return m


def chart_a_pivot_names(n: int, i: int, j: int) -> List[str]:
    """Free coordinates of the orbit-closure chart on {a_ij != 0}; 4n-2 of them."""
    names = [f"x[{i}]", f"v[{i}]"]
    names += [f"a[{i},{k}]" for k in range(1, n + 1) if k != i]
    names += [f"b[{i},{k}]" for k in range(1, n + 1) if k not in (i, j)]
    names += [f"y[{j}]", f"u[{j}]"]
    names += [f"c[{j},{k}]" for k in range(1, n + 1) if k not in (i, j)]
    names += [f"a[{k},{j}]" for k in range(1, n + 1) if k != i]
    return names


def chart_a_pivot(n: int, i: int, j: int, coords: Mapping[str, object],
                  validate: bool = True) -> BlockElement:
    """Point of the minimal orbit closure from the chart where a_ij != 0.

    Free data: the full matrix rows through the pivot (row i of A with b-row i,
    x_i, v_i; column j of A with c-row j, y_j, u_j).  The three remaining
    unknowns b_ij, c_ji, a_ii are each linear in the pivot and solved here;
    every other matrix row is the unique combination of the two pivot rows
    dictated by its entries in the pivot columns.
    """
    _check_indices(n, i, j)
    if i == j:
        raise ChartDomainError("chart needs two distinct indices")
    c = _take(coords, chart_a_pivot_names(n, i, j))
    aij = c[f"a[{i},{j}]"]
    if aij == 0:
        raise ChartDomainError("pivot coordinate a[i,j] is zero")
    xi, vi = c[f"x[{i}]"], c[f"v[{i}]"]
    yj, uj = c[f"y[{j}]"], c[f"u[{j}]"]
    others = [k for k in range(1, n + 1) if k not in (i, j)]
    a_row = {k: c[f"a[{i},{k}]"] for k in range(1, n + 1) if k != i}
    a_col = {k: c[f"a[{k},{j}]"] for k in range(1, n + 1) if k != i}
    b_row = {k: c[f"b[{i},{k}]"] for k in others}
    c_row = {k: c[f"c[{j},{k}]"] for k in others}

    b_row[j] = (xi * vi - sum(a_row[k] * b_row[k] for k in others)) / aij
    b_row[i] = Fraction(0)
    c_row[i] = (yj * uj - sum(a_col[k] * c_row[k] for k in others)) / aij
    c_row[j] = Fraction(0)
    a_row[i] = -(xi * uj - yj * vi + aij * a_col[j]
                 + sum(a_row[k] * a_col[k] - b_row[k] * c_row[k] for k in others)) / aij
    a_col[i] = aij

    row_i = ([xi] + [a_row[k] for k in range(1, n + 1)] + [-vi]
             + [b_row[k] for k in range(1, n + 1)])
    row_j = ([-yj] + [c_row[k] for k in range(1, n + 1)] + [-uj]
             + [-a_col[k] for k in range(1, n + 1)])

    coeffs: Dict[int, Tuple] = {0: (uj / aij, -vi / aij), n + 1: (yj / aij, xi / aij)}
    for k in range(1, n + 1):
        if k != i:
            coeffs[k] = (a_col[k] / aij, b_row[k] / aij)
        if k != j:
            coeffs[n + 1 + k] = (-c_row[k] / aij, a_row[k] / aij)

    m = _rows_from_pivots(n, {i: row_i, n + 1 + j: row_j}, coeffs)
    e = BlockElement.from_matrix(m)
    if validate and not is_minimal_member(e):
        raise RuntimeError("chart construction left the orbit closure")
    return e


def chart_b_pivot_names(n: int, i: int, j: int) -> List[str]:
    """Free coordinates of the trace-zero shell chart on {b_ij != 0}; 4n-3 of them."""
    names = [f"x[{i}]", f"x[{j}]", f"v[{i}]", f"v[{j}]"]
    names += [f"a[{i},{k}]" for k in range(1, n + 1) if k not in (i, j)]
    names += [f"a[{j},{k}]" for k in range(1, n + 1) if k not in (i, j)]
    names += [f"b[{i},{k}]" for k in range(1, n + 1) if k != i]
    names += [f"b[{j},{k}]" for k in range(1, n + 1) if k not in (i, j)]
    return names


def chart_b_pivot(n: int, i: int, j: int, coords: Mapping[str, object],
                  validate: bool = True) -> BlockElement:
    """Point of the shell (orbit closure with trace A = 0) where b_ij != 0.

    The four diagonal-adjacent unknowns a_ij, a_ji, a_ii, a_jj are solved from
    the three pivot-row products plus the trace condition; rows i and j of the
    (x | A | v | B) strip are the pivot rows.
    """
    _check_indices(n, i, j)
    if i == j:
        raise ChartDomainError("chart needs two distinct indices")
    c = _take(coords, chart_b_pivot_names(n, i, j))
    bij = c[f"b[{i},{j}]"]
    if bij == 0:
        raise ChartDomainError("pivot coordinate b[i,j] is zero")
    xi, xj = c[f"x[{i}]"], c[f"x[{j}]"]
    vi, vj = c[f"v[{i}]"], c[f"v[{j}]"]
    others = [k for k in range(1, n + 1) if k not in (i, j)]
    a_row_i = {k: c[f"a[{i},{k}]"] for k in others}
    a_row_j = {k: c[f"a[{j},{k}]"] for k in others}
    b_row_i = {k: c[f"b[{i},{k}]"] for k in range(1, n + 1) if k != i}
    b_row_j = {k: c[f"b[{j},{k}]"] for k in others}
    b_row_i[i] = Fraction(0)
    b_row_j[j] = Fraction(0)
    b_row_j[i] = -bij

    a_row_i[j] = (xi * vi - sum(a_row_i[k] * b_row_i[k] for k in others)) / bij
    a_row_j[i] = -(xj * vj - sum(a_row_j[k] * b_row_j[k] for k in others)) / bij
    diff = (xi * vj + xj * vi
            - sum(a_row_i[k] * b_row_j[k] + a_row_j[k] * b_row_i[k] for k in others)) / bij
    diag_sum = -sum(-a_row_i[k] * b_row_j[k] + a_row_j[k] * b_row_i[k] for k in others) / bij
    a_row_i[i] = (diag_sum - diff) / 2
    a_row_j[j] = (diag_sum + diff) / 2

    row_i = ([xi] + [a_row_i[k] for k in range(1, n + 1)] + [-vi]
             + [b_row_i[k] for k in range(1, n + 1)])
    row_j = ([xj] + [a_row_j[k] for k in range(1, n + 1)] + [-vj]
             + [b_row_j[k] for k in range(1, n + 1)])

    coeffs: Dict[int, Tuple] = {0: (vj / bij, -vi / bij), n + 1: (-xj / bij, xi / bij)}
    for k in others:
        coeffs[k] = (-b_row_j[k] / bij, b_row_i[k] / bij)
    for k in range(1, n + 1):
        coeffs[n + 1 + k] = (-a_row_j[k] / bij, a_row_i[k] / bij)

    m = _rows_from_pivots(n, {i: row_i, j: row_j}, coeffs)
    e = BlockElement.from_matrix(m)
    if validate:
        if not is_minimal_member(e):
            raise RuntimeError("chart construction left the orbit closure")
        if not e.trace_a() == 0:
            raise RuntimeError("chart construction left the trace-zero shell")
    return e


def chart_u_pivot_names(n: int, i: int) -> List[str]:
    """Free coordinates of the orbit-closure chart on {u_i != 0}; 4n-2 of them."""
    names = [f"u[{k}]" for k in range(1, n + 1)]
    names += [f"v[{k}]" for k in range(1, n + 1) if k != i]
    names += [f"a[{k},{i}]" for k in range(1, n + 1)]
    names += [f"c[{i},{k}]" for k in range(1, n + 1) if k != i]
    return names


def chart_u_pivot(n: int, i: int, coords: Mapping[str, object],
                  validate: bool = True) -> BlockElement:
    """Point of the minimal orbit closure from the chart where u_i != 0.

    Free data: the full u and most of v, column i of A, row i of C.  The
    remaining unknowns v_i, y_i, w are solved from the pivot-row products, and
    the first matrix row together with row n+1+i span everything.
    """
    _check_indices(n, i)
    c = _take(coords, chart_u_pivot_names(n, i))
    ui = c[f"u[{i}]"]
    if ui == 0:
        raise ChartDomainError("pivot coordinate u[i] is zero")
    u_vec = {k: c[f"u[{k}]"] for k in range(1, n + 1)}
    v_vec = {k: c[f"v[{k}]"] for k in range(1, n + 1) if k != i}
    a_col = {k: c[f"a[{k},{i}]"] for k in range(1, n + 1)}
    c_row = {k: c[f"c[{i},{k}]"] for k in range(1, n + 1) if k != i}
    c_row[i] = Fraction(0)

    v_vec[i] = -sum(u_vec[k] * v_vec[k] for k in range(1, n + 1) if k != i) / ui
    y_i = sum(a_col[k] * c_row[k] for k in range(1, n + 1)) / ui
    w = -sum(u_vec[k] * a_col[k] - v_vec[k] * c_row[k] for k in range(1, n + 1)) / ui

    row_top = ([w] + [u_vec[k] for k in range(1, n + 1)] + [Fraction(0)]
               + [v_vec[k] for k in range(1, n + 1)])
    row_i = ([-y_i] + [c_row[k] for k in range(1, n + 1)] + [-ui]
             + [-a_col[k] for k in range(1, n + 1)])

    coeffs: Dict[int, Tuple] = {n + 1: (y_i / ui, w / ui)}
    for k in range(1, n + 1):
        coeffs[k] = (a_col[k] / ui, v_vec[k] / ui)
        if k != i:
            coeffs[n + 1 + k] = (-c_row[k] / ui, u_vec[k] / ui)

    m = _rows_from_pivots(n, {0: row_top, n + 1 + i: row_i}, coeffs)
    e = BlockElement.from_matrix(m)
    if validate and not is_minimal_member(e):
        raise RuntimeError("chart construction left the orbit closure")
    return e


@dataclass
class ChartPoint:
    """A chart id with indices and free-coordinate values; replayable."""

    chart: str
    n: int
    i: int
    j: Optional[int]
    coords: Dict[str, object] = field(default_factory=dict)

    _BUILDERS = {
        "a-pivot": (chart_a_pivot, chart_a_pivot_names, 2),
        "b-pivot": (chart_b_pivot, chart_b_pivot_names, 2),
        "u-pivot": (chart_u_pivot, chart_u_pivot_names, 1),
    }

    def element(self, validate: bool = True) -> BlockElement:
        builder, _, arity = self._BUILDERS[self.chart]
        if arity == 2:
            return builder(self.n, self.i, self.j, self.coords, validate=validate)
        return builder(self.n, self.i, self.coords, validate=validate)

    def names(self) -> List[str]:
        _, namer, arity = self._BUILDERS[self.chart]
        if arity == 2:
            return namer(self.n, self.i, self.j)
        return namer(self.n, self.i)
