"""Stability, quotient fibers, and the cotangent comparison map.

For the scaling torus on the trace-zero shell N, a point is plus-semistable
when some positive-weight block (x, v, B) is nonzero.  This module verifies
the geometry behind the two torus quotients and the main comparison:

* every semistable orbit is closed inside the semistable locus, so the
  proj-quotient is a geometric quotient;
* the fiber of the proj-to-affine map over a nonzero torus-fixed point is a
  weighted projective cone with weights (1, 1, 2, ..., 2), and over the
  vertex it has exactly two components of dimension 2n - 1;
* the plus-block-free graph G (x = y = 0 on the shell) fibers over the minus
  quadric cone with fibers cut by two linear forms and one quadric; its
  dimension is 4n - 5 for n >= 3 and 4 for n = 2;
* the complement of the locus over generic plus pairs has codimension two in
  the shell for n >= 3, and splits into three divisors for n = 2;
* a cotangent covector at a rank-one square-zero matrix pushes forward to a
  unique shell point, exactly and equivariantly.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from . import linalg, models, reduction, sampling
from .certificates import EquationSystem, Parametrization
from .models import BlockElement

POSITIVE_BLOCKS = ("x", "v", "B")
NEGATIVE_BLOCKS = ("y", "u", "C")


def is_semistable(e: BlockElement, side: str = "plus") -> bool:
    blocks = POSITIVE_BLOCKS if side == "plus" else NEGATIVE_BLOCKS
    return any(not e.block_is_zero(b) for b in blocks)


def semistable_orbit_closed_in_locus(e: BlockElement, side: str = "plus") -> bool:
    """A semistable orbit is closed within the semistable locus.

    Either the orbit is closed in the whole shell, or its unique limit point
    is the weight-zero part, which carries no blocks of the semistable sign
    and therefore falls outside the locus.  The function re-derives this for
    the given point and returns the verdict (always True on valid input).
    """
    if not is_semistable(e, side):
        raise ValueError("point is not semistable on this side")
    status = reduction.orbit_status(e)
    if status.closed:
        return True
    if side == "plus":
        # a plus-semistable point can only degenerate at lambda -> 0
        if not status.limit_at_zero or status.limit_at_infinity:
            return False
    else:
        if not status.limit_at_infinity or status.limit_at_zero:
            return False
    return not is_semistable(e.weight_part(0), side)


@dataclass(frozen=True)
class QuotientImage:
    """Affine-quotient data of a semistable point: representative and flag."""

    representative: BlockElement
    exceptional: bool


def quotient_image(e: BlockElement, side: str = "plus") -> QuotientImage:
    """The closed orbit below a semistable point in the affine quotient.

    When blocks of the opposite sign are present the orbit is already closed
    and represents itself; otherwise the point sits over the torus-fixed cone
    and belongs to the exceptional locus of the proj-to-affine map, with the
    weight-zero part as its affine image.
    """
    if not is_semistable(e, side):
        raise ValueError("point is not semistable on this side")
    opposite = NEGATIVE_BLOCKS if side == "plus" else POSITIVE_BLOCKS
    if any(not e.block_is_zero(b) for b in opposite):
        return QuotientImage(representative=e, exceptional=False)
    return QuotientImage(representative=e.weight_part(0), exceptional=True)


# ---------------------------------------------------------------------------
# Fibers over nonzero torus-fixed points: weighted projective cones
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExceptionalFiber:
    """Cone over the exceptional fiber at a nonzero torus-fixed base point.

    Points have the fixed A block of the base, no negative blocks, and are
    parametrized by n affine coordinates carrying torus weights (1, 1, 2...):
    the fiber itself is the weighted projective quotient of this cone.
    """

    n: int
    i: int
    j: int
    base: BlockElement
    param_names: Tuple[str, ...]
    param_weights: Tuple[int, ...]

    def point(self, values: Mapping[str, object], validate: bool = True) -> BlockElement:
        coords = self._chart_coords(values)
        out = models.chart_a_pivot(self.n, self.i, self.j, coords, validate=validate)
        return out

    def _chart_coords(self, values: Mapping[str, object]) -> Dict[str, object]:
        n, i, j = self.n, self.i, self.j
        coords: Dict[str, object] = {}
        for k in range(1, n + 1):
            if k != i:
                coords[f"a[{i},{k}]"] = self.base.A[i - 1][k - 1]
                coords[f"a[{k},{j}]"] = self.base.A[k - 1][j - 1]
        coords[f"y[{j}]"] = 0
        coords[f"u[{j}]"] = 0
        for k in range(1, n + 1):
            if k not in (i, j):
                coords[f"c[{j},{k}]"] = 0
        for name in self.param_names:
            coords[name] = values[name]
        return coords

    def scaled_params(self, scalar, values: Mapping[str, object]) -> Dict[str, object]:
        lam = Fraction(scalar) if isinstance(scalar, int) else scalar
        return {name: (lam ** weight) * values[name]
                for name, weight in zip(self.param_names, self.param_weights)}

    def parametrization(self) -> Parametrization:
        return Parametrization(
            name="exceptional fiber cone over a fixed point",
            param_names=self.param_names,
            mapping=lambda point: self.point(point, validate=False),
        )


def exceptional_fiber(base: BlockElement, i: int, j: int) -> ExceptionalFiber:
    n = base.n
    models._check_indices(n, i, j)
    if i == j:
        raise ValueError("the chart needs two distinct indices")
    if not base.weight_part(0) == base or base.w != 0:
        raise ValueError("base must be supported on the A block")
    if base.A[i - 1][j - 1] == 0:
        raise ValueError("base A entry at the pivot must be nonzero")
    if not models.is_minimal_member(base) or base.trace_a() != 0:
        raise ValueError("base must be a rank-one square-zero A block")
    names = [f"x[{i}]", f"v[{i}]"]
    weights = [1, 1]
    for k in range(1, n + 1):
        if k not in (i, j):
            names.append(f"b[{i},{k}]")
            weights.append(2)
    return ExceptionalFiber(n=n, i=i, j=j, base=base,
                            param_names=tuple(names), param_weights=tuple(weights))


# ---------------------------------------------------------------------------
# The fiber over the cone vertex: two components
# ---------------------------------------------------------------------------


def central_component_parametrization(n: int, i: int, kind: str = "x") -> Parametrization:
    """One component of the vertex fiber: positive odd vector plus wedge B.

    kind "x": points (x, B = x wedge b) with the b pivot entry absorbed;
    kind "v": the mirror component with v in place of x.  Each is (2n-1)-
    dimensional; their union is the whole vertex fiber.
    """
    if kind not in ("x", "v"):
        raise ValueError("kind must be 'x' or 'v'")
    models._check_indices(n, i)
    vec_names = [f"odd[{k}]" for k in range(1, n + 1)]
    wedge_names = [f"wedge[{k}]" for k in range(1, n + 1) if k != i]

    def mapping(point: Mapping[str, object]):
        vec = [point[f"odd[{k}]"] for k in range(1, n + 1)]
        pivot = vec[i - 1]
        beta = {k: point[f"wedge[{k}]"] for k in range(1, n + 1) if k != i}
        rows = []
        for r in range(1, n + 1):
            row = []
            for c in range(1, n + 1):
                if r == i:
                    val = beta[c] if c != i else 0
                elif c == i:
                    val = -beta[r]
                else:
                    val = (vec[r - 1] * beta[c] - vec[c - 1] * beta[r]) / pivot
                row.append(val)
            rows.append(tuple(row))
        b = tuple(rows)
        if kind == "x":
            return BlockElement(n=n, x=tuple(vec), B=b)
        return BlockElement(n=n, v=tuple(vec), B=b)

    return Parametrization(name=f"vertex fiber component ({kind} side)",
                           param_names=vec_names + wedge_names, mapping=mapping)


def central_member_component(e: BlockElement) -> Optional[str]:
    """Which vertex-fiber component a positive-weight-only point belongs to.

    Input must be supported on (x, v, B).  Returns "x" or "v" for points on
    a single component, "intersection" for B-only points (reachable from
    both), and None for non-members; membership forces x = 0 or v = 0.
    """
    for block in ("w", "y", "u", "A", "C"):
        if not e.block_is_zero(block):
            raise ValueError("point is not supported on the positive blocks")
    if not models.is_minimal_member(e):
        return None
    x_zero = e.block_is_zero("x")
    v_zero = e.block_is_zero("v")
    if x_zero and v_zero:
        return "intersection"
    if v_zero:
        return "x"
    if x_zero:
        return "v"
    raise AssertionError("membership with both odd positive blocks nonzero")


def central_crossing_curve(n: int, p: Sequence, q: Sequence, t) -> BlockElement:
    """Curve x = t p with constant B = p wedge q, entering the x component.

    For t != 0 the point lies on the x side of the vertex fiber; at t = 0 it
    degenerates to the B-only intersection, witnessing that B-only points lie
    in the closure of both components (use the mirror via the odd-block flip).
    """
    p, q = tuple(p), tuple(q)
    b = tuple(tuple(p[r] * q[c] - p[c] * q[r] for c in range(n)) for r in range(n))
    x = tuple(t * pk for pk in p)
    return BlockElement(n=n, x=x, B=b)


# ---------------------------------------------------------------------------
# The plus-block-free graph G and its fibers over the minus cone
# ---------------------------------------------------------------------------


def minus_graph_equation_system(n: int, i: int) -> EquationSystem:
    """Three equations cutting {x = y = 0} out of the u-pivot chart.

    On the chart they are equivalent to w = 0, trace A = 0, and the vanishing
    of the pivot y coordinate, which together kill both plus blocks.  Their
    Jacobian rank at a generic graph point is 3 for n >= 3 and 2 for n = 2
    (the quadric becomes dependent), giving dimensions 4n - 5 and 4.
    """
    models._check_indices(n, i)
    names = models.chart_u_pivot_names(n, i)

    def equations(point: Mapping[str, object]) -> List:
        lin_a = sum(point[f"u[{k}]"] * point[f"a[{k},{i}]"] for k in range(1, n + 1))
        lin_c = sum(point[f"v[{k}]"] * point[f"c[{i},{k}]"]
                    for k in range(1, n + 1) if k != i)
        quad = sum(point[f"a[{k},{i}]"] * point[f"c[{i},{k}]"]
                   for k in range(1, n + 1) if k != i)
        return [lin_a, lin_c, quad]

    return EquationSystem(name="plus-free graph in the u-pivot chart",
                          coord_names=names, equations=equations)


def minus_graph_coords(rng, n: int, i: int) -> Dict[str, Fraction]:
    """u-pivot chart coordinates satisfying the three graph equations."""
    for _ in range(200):
        coords = sampling.chart_u_coords(rng, n, i)
        others = [k for k in range(1, n + 1) if k != i]
        ui = coords[f"u[{i}]"]
        coords[f"a[{i},{i}]"] = -sum(coords[f"u[{k}]"] * coords[f"a[{k},{i}]"]
                                     for k in others) / ui
        k1 = others[0]
        v1 = sampling.rational_nonzero(rng)
        coords[f"v[{k1}]"] = v1
        rest = sum(coords[f"v[{k}]"] * coords[f"c[{i},{k}]"] for k in others[1:])
        coords[f"c[{i},{k1}]"] = -rest / v1
        quad = sum(coords[f"a[{k},{i}]"] * coords[f"c[{i},{k}]"] for k in others)
        if quad == 0:
            return coords
        if n == 2:
            continue
        k2 = others[1]
        coef = coords[f"a[{k2},{i}]"] - coords[f"a[{k1},{i}]"] * coords[f"v[{k2}]"] / v1
        if coef == 0:
            continue
        delta = -quad / coef
        coords[f"c[{i},{k2}]"] += delta
        coords[f"c[{i},{k1}]"] -= coords[f"v[{k2}]"] * delta / v1
        return coords
    raise RuntimeError("failed to sample a graph point")


@dataclass(frozen=True)
class MinusFiberReport:
    """Classification of one graph fiber over a minus-cone base point."""

    n: int
    base_kind: str            # "mixed", "u-only", or "v-only"
    flipped: bool             # base was brought to u != 0 by the minus flip
    pivot: int
    ambient_dim: int          # free fiber coordinates in the chart: 2n - 1
    solve_dim: int            # after the two linear constraints
    quadric_rank: int         # rank of the restricted quadric
    quadric_corank: int
    fiber_dim: int
    singular_dim: Optional[int]   # dimension of the restricted radical, if a cone


def minus_fiber_report(n: int, u: Sequence, v: Sequence) -> MinusFiberReport:
    u = tuple(Fraction(t) if isinstance(t, int) else t for t in u)
    v = tuple(Fraction(t) if isinstance(t, int) else t for t in v)
    if sum(a * b for a, b in zip(u, v)) != 0:
        raise ValueError("base point must satisfy u . v = 0")
    u_zero = all(t == 0 for t in u)
    v_zero = all(t == 0 for t in v)
    if u_zero and v_zero:
        raise ValueError("base point must be nonzero; the vertex fiber is the even locus")
    flipped = False
    if u_zero:
        u, v = v, u
        flipped = True
    base_kind = "v-only" if flipped else ("u-only" if v_zero else "mixed")
    pivot = next(k for k in range(1, n + 1) if u[k - 1] != 0)

    a_names = [f"a[{k},{pivot}]" for k in range(1, n + 1)]
    c_names = [f"c[{pivot},{k}]" for k in range(1, n + 1) if k != pivot]
    names = a_names + c_names
    row_a = [u[k - 1] for k in range(1, n + 1)] + [Fraction(0)] * len(c_names)
    row_c = [Fraction(0)] * len(a_names) + [v[k - 1] for k in range(1, n + 1) if k != pivot]
    linear = [row_a, row_c]
    kernel = linalg.kernel_basis(linear)
    solve_dim = len(kernel)

    size = len(names)
    gram = [[Fraction(0)] * size for _ in range(size)]
    for idx, k in enumerate([k for k in range(1, n + 1) if k != pivot]):
        a_pos = k - 1
        c_pos = len(a_names) + idx
        gram[a_pos][c_pos] = Fraction(1, 2)
        gram[c_pos][a_pos] = Fraction(1, 2)

    restricted = [[sum(kr[s] * sum(gram[s][t] * kc[t] for t in range(size))
                       for s in range(size))
                   for kc in kernel] for kr in kernel]
    if all(t == 0 for row in restricted for t in row):
        rank = 0
        corank = solve_dim
        fiber_dim = solve_dim
        singular_dim = None
    else:
        rank = linalg.rank_exact(restricted)
        corank = solve_dim - rank
        fiber_dim = solve_dim - 1
        singular_dim = corank
    return MinusFiberReport(n=n, base_kind=base_kind, flipped=flipped, pivot=pivot,
                            ambient_dim=size, solve_dim=solve_dim, quadric_rank=rank,
                            quadric_corank=corank, fiber_dim=fiber_dim,
                            singular_dim=singular_dim)


def minus_fiber_sample_points(n: int, u: Sequence, v: Sequence,
                              report: Optional[MinusFiberReport] = None) -> List[BlockElement]:
    """Exact points of a graph fiber: the origin plus radical directions.

    Radical vectors of the restricted quadric are isotropic, so they solve all
    three constraints; each is completed to a chart point over the given base
    and must land on the shell with both plus blocks zero.
    """
    if report is None:
        report = minus_fiber_report(n, u, v)
    if report.flipped:
        u, v = v, u
    u = tuple(Fraction(t) if isinstance(t, int) else t for t in u)
    v = tuple(Fraction(t) if isinstance(t, int) else t for t in v)
    pivot = report.pivot
    a_names = [f"a[{k},{pivot}]" for k in range(1, n + 1)]
    c_names = [f"c[{pivot},{k}]" for k in range(1, n + 1) if k != pivot]
    names = a_names + c_names
    row_a = [u[k - 1] for k in range(1, n + 1)] + [Fraction(0)] * len(c_names)
    row_c = [Fraction(0)] * len(a_names) + [v[k - 1] for k in range(1, n + 1) if k != pivot]
    kernel = linalg.kernel_basis([row_a, row_c])

    size = len(names)
    gram = [[Fraction(0)] * size for _ in range(size)]
    for idx, k in enumerate([k for k in range(1, n + 1) if k != pivot]):
        gram[k - 1][len(a_names) + idx] = Fraction(1, 2)
        gram[len(a_names) + idx][k - 1] = Fraction(1, 2)
    restricted = [[sum(kr[s] * sum(gram[s][t] * kc[t] for t in range(size))
                       for s in range(size))
                   for kc in kernel] for kr in kernel]

    vectors = [[Fraction(0)] * size]
    if kernel:
        if all(t == 0 for row in restricted for t in row):
            radical = [[Fraction(int(p == q)) for q in range(len(kernel))]
                       for p in range(len(kernel))]
        else:
            radical = linalg.kernel_basis(restricted)
        for combo in radical:
            vec = [sum(combo[p] * kernel[p][s] for p in range(len(kernel)))
                   for s in range(size)]
            vectors.append(vec)

    points = []
    for vec in vectors:
        coords = {name: val for name, val in zip(names, vec)}
        for k in range(1, n + 1):
            coords[f"u[{k}]"] = u[k - 1]
            if k != pivot:
                coords[f"v[{k}]"] = v[k - 1]
        element = models.chart_u_pivot(n, pivot, coords)
        if report.flipped:
            element = models.flip_minus_blocks(element)
        points.append(element)
    return points


@dataclass(frozen=True)
class FamilyDimension:
    name: str
    base_dim: int
    fiber_dim: int

    @property
    def total(self) -> int:
        return self.base_dim + self.fiber_dim


@dataclass(frozen=True)
class GraphDimensionReport:
    n: int
    families: Tuple[FamilyDimension, ...]
    dimension: int


def minus_graph_dimension(n: int, seed: int = 0) -> GraphDimensionReport:
    """Dimension of the plus-free graph from its fibration over the minus cone.

    Families: generic (both u, v nonzero) bases form the smooth part of the
    quadric cone (dimension 2n - 1); one-block bases form two n-planes; the
    fiber over the vertex is the whole even locus, whose dimension is the
    larger of the torus cone and the order-two stratum.  Fiber dimensions are
    read off exact rank computations at sampled bases.
    """
    rng = sampling.rng_stream(seed, "vgit", "graph-dimension", str(n))
    pivot = rng.randint(1, n)
    u, v = sampling.isotropic_pair_with_pivot(rng, n, pivot)
    mixed = minus_fiber_report(n, u, v)
    u_only = minus_fiber_report(n, sampling.nonzero_vector(rng, n), (0,) * n)
    families = (
        FamilyDimension("mixed base", 2 * n - 1, mixed.fiber_dim),
        FamilyDimension("u-only base", n, u_only.fiber_dim),
        FamilyDimension("v-only base", n, u_only.fiber_dim),
        FamilyDimension("vertex base", 0, max(2 * n - 2, 4 * n - 7)),
    )
    return GraphDimensionReport(n=n, families=families,
                                dimension=max(f.total for f in families))


# ---------------------------------------------------------------------------
# The complement of the big locus: codimension in the shell
# ---------------------------------------------------------------------------


def degenerate_family_parametrization(n: int, pivot: int = 1) -> Parametrization:
    """Shell points whose plus part is an x-only vector, by minus shears.

    Parameters: the base vector x (pivot entry nonzero at samples), the
    u part of the shear with its pivot entry solved so the trace moment stays
    zero, and the full v part.  The map has a one-dimensional stabilizer, so
    its rank is 3n - 2; the mirror family (y-only base) is its image under
    the minus-block flip.
    """
    if not 1 <= pivot <= n:
        raise ValueError("pivot out of range")
    names = [f"base[{k}]" for k in range(1, n + 1)]
    names += [f"shear_u[{k}]" for k in range(1, n + 1) if k != pivot]
    names += [f"shear_v[{k}]" for k in range(1, n + 1)]

    def mapping(point: Mapping[str, object]):
        x = [point[f"base[{k}]"] for k in range(1, n + 1)]
        u = [point[f"shear_u[{k}]"] if k != pivot else 0 for k in range(1, n + 1)]
        u[pivot - 1] = -sum(a * b for a, b in zip(x, u)) / x[pivot - 1]
        v = [point[f"shear_v[{k}]"] for k in range(1, n + 1)]
        shear = models.embed_uminus(tuple(u), tuple(v))
        base = models.embed_uplus(tuple(x), (0,) * n)
        return models.adjoint_exp(shear, base)

    return Parametrization(name="x-only degenerate family", param_names=names,
                           mapping=mapping)


def degenerate_family_equation_system(n: int, i: int, j: int) -> EquationSystem:
    """Shell equations plus vanishing of the full y block; corank is 3n - 2."""
    base = reduction.shell_equation_system(n, i, j)
    y_names = [f"y[{k}]" for k in range(1, n + 1)]
    base_rule = base.jacobian_rule

    def equations(point: Mapping[str, object]) -> List:
        return base.equations(point) + [point[name] for name in y_names]

    def jacobian_rule(point: Mapping[str, object]) -> linalg.Matrix:
        jac = base_rule(point)
        for name in y_names:
            row = [0] * len(base.coord_names)
            row[list(base.coord_names).index(name)] = 1
            jac.append(row)
        return jac

    return EquationSystem(name="x-only degenerate locus", coord_names=base.coord_names,
                          equations=equations, jacobian_rule=jacobian_rule)


def trace_pairing_functional(base: BlockElement):
    """The linear form on minus shears measuring the trace moment shift.

    For an x-only plus point, shifting by exp of a shear changes the trace
    moment by trace A of the bracket, which equals minus the dot product of
    x with the u part of the shear.
    """
    def functional(shear: BlockElement):
        return models.bracket(shear, base).trace_a()
    return functional


@dataclass(frozen=True)
class BoundaryComponent:
    name: str
    dimension: int
    route: str


@dataclass(frozen=True)
class BoundaryReport:
    n: int
    shell_dim: int
    components: Tuple[BoundaryComponent, ...]
    codimension: int


def boundary_report(n: int, seed: int = 0) -> BoundaryReport:
    """Codimension of the complement of the generic-plus locus in the shell.

    The complement is covered by the two degenerate odd families (plus part
    an x-only or y-only vector) and the plus-free graph.  Component dimensions
    come from exact Jacobian ranks; the shell has dimension 4n - 3.
    """
    from . import certificates

    rng = sampling.rng_stream(seed, "vgit", "boundary", str(n))
    family = degenerate_family_parametrization(n, pivot=1)
    point = {name: sampling.rational(rng) for name in family.param_names}
    point["base[1]"] = sampling.rational_nonzero(rng)
    family_cert = certificates.certify_parametrization(family, point)

    graph = minus_graph_equation_system(n, 1)
    graph_point = minus_graph_coords(rng, n, 1)
    graph_cert = certificates.certify_equations(graph, graph_point)

    components = (
        BoundaryComponent("x-only family", family_cert.dimension, "parametrization rank"),
        BoundaryComponent("y-only family", family_cert.dimension, "minus-flip conjugate"),
        BoundaryComponent("plus-free graph", graph_cert.dimension, "chart equations rank"),
    )
    shell_dim = 4 * n - 3
    return BoundaryReport(n=n, shell_dim=shell_dim, components=components,
                          codimension=shell_dim - max(c.dimension for c in components))


# ---------------------------------------------------------------------------
# Cotangent pushforward onto the shell
# ---------------------------------------------------------------------------


def sl_tangent_basis(theta) -> List[List[List]]:
    """An independent family of matrix brackets spanning the orbit tangent.

    theta is a rank-one square-zero n x n matrix; the tangent space of its
    conjugation orbit has dimension 2n - 2 and is spanned by brackets with
    matrix units.
    """
    n = len(theta)
    candidates = []
    for r in range(n):
        for c in range(n):
            unit = [[Fraction(int(p == r and q == c)) for q in range(n)] for p in range(n)]
            candidates.append(linalg.commutator(unit, [list(row) for row in theta]))
    flats = [[t for row in m for t in row] for m in candidates]
    chosen: List[int] = []
    reduced: List[Tuple[int, List]] = []
    for idx, vec in enumerate(flats):
        row = list(vec)
        for piv, base_row in reduced:
            if row[piv] != 0:
                factor = row[piv]
                row = [a - factor * b for a, b in zip(row, base_row)]
        piv = next((k for k, t in enumerate(row) if t != 0), None)
        if piv is None:
            continue
        inv = row[piv]
        reduced.append((piv, [t / inv for t in row]))
        chosen.append(idx)
    return [candidates[k] for k in chosen]


def pair_differential(x: Sequence, y: Sequence, xdot: Sequence, ydot: Sequence):
    """Derivative of the outer-product map (x, y) -> x y^T along (xdot, ydot)."""
    n = len(x)
    return [[xdot[r] * y[c] + x[r] * ydot[c] for c in range(n)] for r in range(n)]


@functools.lru_cache(maxsize=None)
def _levi_minus_entries(n: int):
    """Sparse entry lists for the levi and minus bases, in basis order."""
    table = dict(models.so_basis_entries(n))
    levi = tuple(table[name] for name, _ in models.levi_basis(n))
    minus = tuple(table[name] for name, _ in models.uminus_basis(n))
    return levi, minus


def _expand_in_columns(columns: Sequence[Sequence], vectors: Sequence[Sequence]) -> List[List]:
    """Coefficients of each vector in the span of independent columns.

    A single Gaussian elimination over the block [columns | vectors] serves
    every vector; raises ValueError if any vector leaves the span.
    """
    height = len(columns[0])
    k = len(columns)
    aug = [[col[r] for col in columns] + [vec[r] for vec in vectors]
           for r in range(height)]
    for col in range(k):
        pivot_row = next((r for r in range(col, height) if aug[r][col] != 0), None)
        if pivot_row is None:
            raise ValueError("columns are not independent")
        aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        inv = aug[col][col]
        aug[col] = [t / inv for t in aug[col]]
        lead = aug[col]
        for r in range(height):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], lead)]
    for r in range(k, height):
        if any(t != 0 for t in aug[r][k:]):
            raise ValueError("a direction does not push into the orbit tangent")
    return [[aug[j][k + i] for j in range(k)] for i in range(len(vectors))]


def alpha_pushforward(x: Sequence, y: Sequence, psi_values: Sequence) -> BlockElement:
    """Shell point representing a cotangent covector at the matrix x y^T.

    psi_values are the covector's values on sl_tangent_basis(x y^T), in that
    order.  The output o is the unique shell point over the plus pair (x, y)
    whose invariant pairing with every even-block generator reproduces the
    covector applied to the pushed-forward tangent vector.  Raises ValueError
    when the pair is degenerate or the assembled system is inconsistent.
    """
    x = tuple(x)
    y = tuple(y)
    n = len(x)
    theta = models.pair_to_nilpotent(x, y)
    tangent = sl_tangent_basis(theta)
    if len(psi_values) != len(tangent):
        raise ValueError("covector values must match the tangent basis length")
    tangent_columns = [[t for row in m for t in row] for m in tangent]

    base = models.embed_uplus(x, y)
    bm = base.matrix()
    size = 2 * n + 2
    levi_entries, minus_entries = _levi_minus_entries(n)
    base_col0 = [bm[q][0] for q in range(size)]
    base_rowt = list(bm[n + 1])

    def tr3(ea, eb):
        total = 0
        for p, q, s in ea:
            for p2, q2, s2 in eb:
                if q == p2:
                    total += s * s2 * bm[q2][p]
        return total

    # For each levi direction l, assemble in one pass the pairing row
    # kappa(xhat, [l, e_m]) over the minus basis and the (x, y) bands of
    # [l, xhat]; the remaining blocks of [l, xhat] do not enter the
    # outer-product differential.
    rows = []
    moved_vectors = []
    for ent_l in levi_entries:
        rows.append([tr3(ent_l, ent_m) - tr3(ent_m, ent_l) for ent_m in minus_entries])
        l00 = sum(s for p, q, s in ent_l if p == 0 and q == 0)
        ltt = sum(s for p, q, s in ent_l if p == n + 1 and q == n + 1)
        moved_x = [-xv * l00 for xv in x]
        moved_y = [ltt * yv for yv in y]
        for p, q, s in ent_l:
            if 1 <= p <= n and base_col0[q]:
                moved_x[p - 1] += s * base_col0[q]
            if 1 <= q <= n and base_rowt[p]:
                moved_y[q - 1] -= s * base_rowt[p]
        dq = pair_differential(x, y, moved_x, moved_y)
        moved_vectors.append([t for row in dq for t in row])
    coefficient_rows = _expand_in_columns(tangent_columns, moved_vectors)
    rhs = [sum(c * p for c, p in zip(coeffs, psi_values)) for coeffs in coefficient_rows]
    solution = linalg.solve_exact(rows, rhs)
    if solution is None:
        raise ValueError("covector system is inconsistent")
    shear = BlockElement.zero(n)
    for t, (_, e) in zip(solution, models.uminus_basis(n)):
        shear = shear + e.scale(t)
    return models.adjoint_exp(shear, base)


def symplectic_trace(a: BlockElement, b: BlockElement):
    return linalg.trace_product(a.matrix(), b.matrix())
