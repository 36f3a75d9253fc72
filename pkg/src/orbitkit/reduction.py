"""The scaling-torus action on the trace-zero shell and its quotient strata.

The one-parameter torus acts on the block model with weights

    w, A : 0      x, v : +1      y, u : -1      B : +2      C : -2

and the shell is the trace moment level ``tr A = 0`` inside the orbit
closure.  This module classifies torus orbits on the shell (limits, closed
orbits, isotropy), labels the three quotient strata, certifies their
dimensions by Jacobian rank, and builds the two local slice models at
non-free closed orbits: a hypertoric model at torus-fixed points and a sign
flip model at order-two points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

from . import linalg, models, sampling
from .certificates import EquationSystem, Parametrization
from .models import BlockElement, ChartDomainError

BLOCK_WEIGHTS = {"w": 0, "A": 0, "x": 1, "v": 1, "y": -1, "u": -1, "B": 2, "C": -2}


def cstar_act(scalar, e: BlockElement) -> BlockElement:
    """Scale every block by the torus weight: lambda . e."""
    if scalar == 0:
        raise ValueError("torus elements are nonzero scalars")
    lam = Fraction(scalar) if isinstance(scalar, int) else scalar
    inv = 1 / lam
    sq, isq = lam * lam, inv * inv
    scale_vec = lambda vec, s: tuple(s * t for t in vec)
    scale_mat = lambda mat, s: tuple(tuple(s * t for t in row) for row in mat)
    return BlockElement(
        n=e.n, w=e.w, A=e.A,
        x=scale_vec(e.x, lam), v=scale_vec(e.v, lam),
        y=scale_vec(e.y, inv), u=scale_vec(e.u, inv),
        B=scale_mat(e.B, sq), C=scale_mat(e.C, isq),
    )


def is_shell_member(e: BlockElement, atol: Optional[float] = None) -> bool:
    """Orbit-closure membership plus the trace moment condition tr A = 0."""
    if not models.is_minimal_member(e, atol=atol):
        return False
    t = e.trace_a()
    if atol is None:
        return t == 0
    return abs(float(t)) <= atol * (1.0 + linalg.max_abs(e.matrix()))


# ---------------------------------------------------------------------------
# Orbit classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrbitStatus:
    limit_at_zero: bool      # the orbit extends over lambda -> 0
    limit_at_infinity: bool  # the orbit extends over lambda -> infinity
    fixed: bool
    closed: bool


def orbit_status(e: BlockElement) -> OrbitStatus:
    support = e.weight_support()
    has_negative = any(d < 0 for d in support)
    has_positive = any(d > 0 for d in support)
    fixed = not has_negative and not has_positive
    at_zero = not has_negative
    at_infinity = not has_positive
    closed = fixed or (not at_zero and not at_infinity)
    return OrbitStatus(limit_at_zero=at_zero, limit_at_infinity=at_infinity,
                       fixed=fixed, closed=closed)


def isotropy_label(e: BlockElement) -> str:
    """Which subgroup of the torus fixes e: "trivial", "order-two", or "torus"."""
    support = e.weight_support()
    if 1 in support or -1 in support:
        return "trivial"
    if 2 in support or -2 in support:
        return "order-two"
    return "torus"


def stratum_label(e: BlockElement) -> str:
    """Quotient stratum of a shell point whose own orbit is closed.

    Points with non-closed orbits are labeled "nonclosed"; their image in the
    quotient is decided by the closed orbit in their closure, not by e itself.
    """
    x, y = not e.block_is_zero("x"), not e.block_is_zero("y")
    u, v = not e.block_is_zero("u"), not e.block_is_zero("v")
    if (x and y) or (u and v):
        return "trivial"
    if not (x or y or u or v):
        even = not e.block_is_zero("B") or not e.block_is_zero("C")
        return "order-two" if even else "torus"
    return "nonclosed"


def orbit_equivalent(e1: BlockElement, e2: BlockElement) -> Optional[Dict[str, Fraction]]:
    """Exact witness that e2 = lambda . e1 for some rational lambda, or None.

    Points with only even-weight support are compared through lambda^2; the
    witness then carries "lambda_squared" instead of "lambda".
    """
    if e1.n != e2.n:
        return None
    for block in BLOCK_WEIGHTS:
        if e1.block_is_zero(block) != e2.block_is_zero(block):
            return None
    if e1.is_zero():
        return {"lambda": Fraction(1)}

    def entries(e, block):
        val = getattr(e, block)
        if block in ("x", "y", "u", "v"):
            return list(val)
        return [t for row in val for t in row]

    for block, weight in (("x", 1), ("v", 1), ("y", -1), ("u", -1)):
        pair = next(((a, b) for a, b in zip(entries(e1, block), entries(e2, block)) if a != 0), None)
        if pair is None:
            continue
        a, b = pair
        if b == 0:
            return None
        lam = Fraction(b, a) if weight == 1 else Fraction(a, b)
        return {"lambda": lam} if cstar_act(lam, e1) == e2 else None

    for block, weight in (("B", 2), ("C", -2)):
        pair = next(((a, b) for a, b in zip(entries(e1, block), entries(e2, block)) if a != 0), None)
        if pair is None:
            continue
        a, b = pair
        if b == 0:
            return None
        ratio = Fraction(b, a) if weight == 2 else Fraction(a, b)
        scaled = BlockElement(
            n=e1.n, w=e1.w, A=e1.A, x=e1.x, y=e1.y, u=e1.u, v=e1.v,
            B=tuple(tuple(ratio * t for t in row) for row in e1.B),
            C=tuple(tuple(t / ratio for t in row) for row in e1.C),
        )
        return {"lambda_squared": ratio} if scaled == e2 else None

    return {"lambda": Fraction(1)} if e1 == e2 else None


# ---------------------------------------------------------------------------
# The order-two dichotomy sweep
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepReport:
    n: int
    samples: int
    closed: int
    label_agreements: int


def closed_orbit_sweep(n: int, samples: int, seed: int) -> SweepReport:
    """Sample the even part of the shell and count closed (order-two) orbits.

    Points come from the b-pivot chart with both odd rows zeroed, so their
    support is contained in the even blocks (A, B, C) with B nonzero.  Such a
    point has a closed orbit exactly when C is nonzero as well; below n = 4
    the chart forces C = 0 identically, so no closed orbits of this type
    exist there.
    """
    rng = sampling.rng_stream(seed, "reduction", "order-two-sweep", str(n))
    closed = 0
    agreements = 0
    for _ in range(samples):
        i, j = sorted(rng.sample(range(1, n + 1), 2))
        coords = sampling.chart_b_levi_coords(rng, n, i, j)
        point = models.chart_b_pivot(n, i, j, coords)
        status = orbit_status(point)
        if status.closed:
            closed += 1
            if isotropy_label(point) == stratum_label(point) == "order-two":
                agreements += 1
    return SweepReport(n=n, samples=samples, closed=closed, label_agreements=agreements)


# ---------------------------------------------------------------------------
# Slice models at non-free closed orbits
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HypertoricSliceModel:
    """Local model at a torus-fixed point: a torus quotient of conjugate pairs.

    Each entry of ``pairs`` is (z, w, weight): two chart coordinates paired by
    the symplectic form, with the slice torus acting by weight on z and by
    -weight on w.  The moment of the slice torus, evaluated in the a-pivot
    chart, equals minus the pivot times the trace moment of the chart point,
    so the shell condition matches the hypertoric moment level exactly.
    """

    n: int
    i: int
    j: int
    pairs: Tuple[Tuple[str, str, int], ...]

    def moment(self, coords: Mapping[str, object]):
        total = 0
        for z, w, weight in self.pairs:
            if weight:
                total += weight * coords[z] * coords[w]
        return total

    def moment_identity_residual(self, coords: Mapping[str, object]):
        """moment + pivot * trace moment; identically zero on the chart."""
        point = models.chart_a_pivot(self.n, self.i, self.j, coords)
        pivot = coords[f"a[{self.i},{self.j}]"]
        return self.moment(coords) + pivot * point.trace_a()

    @property
    def quotient_dimension(self) -> int:
        return 2 * len(self.pairs) - 2

    @property
    def weights(self) -> Tuple[int, ...]:
        return tuple(weight for _, _, weight in self.pairs)


def slice_model_cstar(n: int, i: int, j: int) -> HypertoricSliceModel:
    """Hypertoric slice data at the torus-fixed stratum, in the a-pivot chart."""
    models._check_indices(n, i, j)
    if i == j:
        raise ChartDomainError("the chart needs two distinct indices")
    pairs: List[Tuple[str, str, int]] = [
        (f"x[{i}]", f"u[{j}]", 1),
        (f"y[{j}]", f"v[{i}]", -1),
    ]
    pairs += [(f"c[{j},{k}]", f"b[{i},{k}]", -2) for k in range(1, n + 1) if k not in (i, j)]
    pairs += [(f"a[{k},{j}]", f"a[{i},{k}]", 0) for k in range(1, n + 1) if k not in (i, j)]
    pairs.append((f"a[{j},{j}]", f"a[{i},{j}]", 0))
    return HypertoricSliceModel(n=n, i=i, j=j, pairs=tuple(pairs))


@dataclass(frozen=True)
class OrderTwoSliceModel:
    """Local model at an order-two closed orbit: a sign flip on four coordinates.

    The slice is the b-pivot chart with the pivot frozen; the residual order
    two isotropy acts by negating exactly the odd-weight coordinates listed in
    ``flipped`` and fixing the rest.
    """

    n: int
    i: int
    j: int
    pivot: str
    slice_coords: Tuple[str, ...]
    flipped: Tuple[str, ...]

    @property
    def slice_dimension(self) -> int:
        return len(self.slice_coords)

    @property
    def fixed_dimension(self) -> int:
        return len(self.slice_coords) - len(self.flipped)

    def linear_invariants(self) -> Tuple[str, ...]:
        return ()

    def quadratic_invariants(self) -> Tuple[Tuple[str, str], ...]:
        out = []
        for p, z in enumerate(self.flipped):
            for w in self.flipped[p:]:
                out.append((z, w))
        return tuple(out)

    def sign_flip(self, coords: Mapping[str, object]) -> Dict[str, object]:
        return {name: (-t if name in self.flipped else t) for name, t in coords.items()}

    def action_residual(self, coords: Mapping[str, object]) -> BlockElement:
        """chart(flipped coords) minus (-1) . chart(coords); identically zero."""
        flipped_point = models.chart_b_pivot(self.n, self.i, self.j, self.sign_flip(coords))
        acted = cstar_act(-1, models.chart_b_pivot(self.n, self.i, self.j, coords))
        return flipped_point - acted


def slice_model_z2(n: int, i: int, j: int) -> OrderTwoSliceModel:
    if n < 4:
        raise ValueError("closed order-two orbits require n >= 4")
    models._check_indices(n, i, j)
    if i == j:
        raise ChartDomainError("the chart needs two distinct indices")
    pivot = f"b[{i},{j}]"
    names = models.chart_b_pivot_names(n, i, j)
    slice_coords = tuple(name for name in names if name != pivot)
    flipped = (f"x[{i}]", f"x[{j}]", f"v[{i}]", f"v[{j}]")
    return OrderTwoSliceModel(n=n, i=i, j=j, pivot=pivot,
                              slice_coords=slice_coords, flipped=flipped)


# ---------------------------------------------------------------------------
# Equation systems and parametrizations for dimension certificates
# ---------------------------------------------------------------------------


def _basis_entries(n: int) -> Tuple[Tuple[str, Tuple[Tuple[int, int, int], ...]], ...]:
    return models.so_basis_entries(n)


def _det3(m, rows, cols):
    (a, b, c), (d, e, f_), (g, h, k) = (
        [m[r][cols[0]], m[r][cols[1]], m[r][cols[2]]] for r in rows
    )
    return a * (e * k - f_ * h) - b * (d * k - f_ * g) + c * (d * h - e * g)


def _cofactor3(m, rows, cols):
    s = [[m[r][c] for c in cols] for r in rows]
    cof = [[0] * 3 for _ in range(3)]
    for p in range(3):
        for q in range(3):
            r1, r2 = [t for t in range(3) if t != p]
            c1, c2 = [t for t in range(3) if t != q]
            minor = s[r1][c1] * s[r2][c2] - s[r1][c2] * s[r2][c1]
            cof[p][q] = minor if (p + q) % 2 == 0 else -minor
    return cof


def shell_equation_system(n: int, i: int, j: int) -> EquationSystem:
    """Equations cutting the shell near an a-pivot point, with exact Jacobian.

    The system is: every entry of the matrix square, every 3x3 minor bordering
    the invertible 2x2 pivot block (rows through the pivot, columns through
    the pivot), and the trace moment.  At a smooth shell point its Jacobian
    corank is the shell dimension 4n - 3.
    """
    models._check_indices(n, i, j)
    if i == j:
        raise ChartDomainError("the pivot needs two distinct indices")
    size = 2 * n + 2
    border_rows = (i, n + 1 + j)          # matrix rows holding the pivot entries
    border_cols = (j, n + 1 + i)
    other_rows = [r for r in range(size) if r not in border_rows]
    other_cols = [c for c in range(size) if c not in border_cols]
    names = [name for name, _ in models.so_basis(n)]
    entry_table = _basis_entries(n)

    def matrix_of(point: Mapping[str, object]):
        return models.from_coordinates(n, point).matrix()

    def equations(point: Mapping[str, object]) -> List:
        m = matrix_of(point)
        square = linalg.mat_mul(m, m)
        vals = [t for row in square for t in row]
        for r in other_rows:
            rows = (border_rows[0], border_rows[1], r)
            for c in other_cols:
                vals.append(_det3(m, rows, (border_cols[0], border_cols[1], c)))
        vals.append(sum(m[1 + k][1 + k] for k in range(n)))
        return vals

    def jacobian_rule(point: Mapping[str, object]) -> linalg.Matrix:
        m = matrix_of(point)
        n_square = size * size
        n_minor = len(other_rows) * len(other_cols)
        rows_out = [[0] * len(names) for _ in range(n_square + n_minor + 1)]
        cofactors = {}
        for ridx, r in enumerate(other_rows):
            rows = (border_rows[0], border_rows[1], r)
            for cidx, c in enumerate(other_cols):
                cols = (border_cols[0], border_cols[1], c)
                cofactors[(ridx, cidx)] = (rows, cols, _cofactor3(m, rows, cols))
        for col, (_, entries) in enumerate(entry_table):
            for (p, q, s) in entries:
                for t in range(size):
                    rows_out[p * size + t][col] += s * m[q][t]
                    rows_out[t * size + q][col] += m[t][p] * s
                for (ridx, cidx), (rows, cols, cof) in cofactors.items():
                    if p in rows and q in cols:
                        alpha = rows.index(p)
                        beta = cols.index(q)
                        rows_out[n_square + ridx * len(other_cols) + cidx][col] += cof[alpha][beta] * s
        trace_row = rows_out[-1]
        for col, name in enumerate(names):
            if name.startswith("a["):
                r, c = name[2:-1].split(",")
                if r == c:
                    trace_row[col] = 1
        return rows_out

    return EquationSystem(
        name=f"shell equations at a-block pivot ({i},{j})",
        coord_names=names,
        equations=equations,
        jacobian_rule=jacobian_rule,
    )


def minimal_gl_equation_system(n: int) -> EquationSystem:
    """Square, all 2x2 minors, and trace of an n x n matrix A.

    Cuts out the rank-one square-zero cone, the minimal nilpotent orbit
    closure of the traceless square matrices; corank of the Jacobian at a
    nonzero point is its dimension 2n - 2.
    """
    names = [f"a[{r},{c}]" for r in range(1, n + 1) for c in range(1, n + 1)]

    def assemble(point: Mapping[str, object]):
        return [[point[f"a[{r},{c}]"] for c in range(1, n + 1)] for r in range(1, n + 1)]

    def equations(point: Mapping[str, object]) -> List:
        a = assemble(point)
        square = linalg.mat_mul(a, a)
        vals = [t for row in square for t in row]
        for r1 in range(n):
            for r2 in range(r1 + 1, n):
                for c1 in range(n):
                    for c2 in range(c1 + 1, n):
                        vals.append(a[r1][c1] * a[r2][c2] - a[r1][c2] * a[r2][c1])
        vals.append(sum(a[k][k] for k in range(n)))
        return vals

    return EquationSystem(name="rank-one square-zero cone", coord_names=names,
                          equations=equations)


def shell_chart_parametrization(n: int, i: int, j: int) -> Parametrization:
    """The b-pivot chart as a map into the ambient algebra; rank is 4n - 3."""
    names = models.chart_b_pivot_names(n, i, j)
    return Parametrization(
        name=f"shell chart at b-block pivot ({i},{j})",
        param_names=names,
        mapping=lambda point: models.chart_b_pivot(n, i, j, point, validate=False),
    )


def torus_stratum_parametrization(n: int, pivot: int = 1) -> Parametrization:
    """Rank-one square-zero matrices as an outer product; rank is 2n - 2.

    Parameters are the non-pivot entries of the two vectors; the pivot entry
    of the first is frozen at one and the incidence condition solves the
    pivot entry of the second.
    """
    if not 1 <= pivot <= n:
        raise ValueError("pivot out of range")
    left = [f"left[{k}]" for k in range(1, n + 1) if k != pivot]
    right = [f"right[{k}]" for k in range(1, n + 1) if k != pivot]

    def mapping(point: Mapping[str, object]):
        xi = [point[f"left[{k}]"] if k != pivot else 1 for k in range(1, n + 1)]
        eta = [point[f"right[{k}]"] if k != pivot else 0 for k in range(1, n + 1)]
        eta[pivot - 1] = -sum(a * b for a, b in zip(xi, eta))
        return [[xi[r] * eta[c] for c in range(n)] for r in range(n)]

    return Parametrization(name="torus-fixed stratum chart", param_names=left + right,
                           mapping=mapping)


def order_two_stratum_parametrization(n: int, i: int, j: int) -> Parametrization:
    """The even part of the b-pivot chart (odd rows zeroed); rank is 4n - 7."""
    names = [name for name in models.chart_b_pivot_names(n, i, j)
             if not name.startswith(("x[", "v["))]
    odd = {name: 0 for name in models.chart_b_pivot_names(n, i, j)
           if name.startswith(("x[", "v["))}

    def mapping(point: Mapping[str, object]):
        full = dict(point)
        full.update(odd)
        return models.chart_b_pivot(n, i, j, full, validate=False)

    return Parametrization(name="order-two stratum chart", param_names=names,
                           mapping=mapping)
