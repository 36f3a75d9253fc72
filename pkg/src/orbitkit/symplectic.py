"""Symplectic identities on the big cell of a minimal nilpotent orbit.

The big cell sits over the cone X of rank-two elements of the plus-unipotent
block: every point decomposes as ``o = Ad(exp v) xhat`` with ``xhat`` the
plus-block part of ``o`` and ``v`` a minus-block shear.  On this cell the
toolkit verifies, exactly over rationals:

* the shear-potential identity ``eta + d f = beta`` relating the three
  one-forms built from the invariant pairing;
* the curve rule ``d/dt o(t) = Ad(exp v) ([dv, xhat] + dx)``;
* nondegeneracy of the orbit two-form via exact Gram ranks.

The invariant pairing is ``kappa(a, b) = tr(ab)``.  With this normalization
the grading torus generator h (identity A-block) pairs as
``kappa(h, e) = 2 tr A(e)``, so the Hamiltonian generating the torus action is
twice the trace moment; the factor two is asserted exactly and carried
explicitly by the floating-point pairing check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import linalg, models
from .jets import Jet
from .models import BlockElement


def trace_form(a, b):
    """tr(ab) on block elements or raw square matrices."""
    am = a.matrix() if isinstance(a, BlockElement) else a
    bm = b.matrix() if isinstance(b, BlockElement) else b
    return linalg.trace_product(am, bm)


def kks_pairing(o: BlockElement, g1: BlockElement, g2: BlockElement):
    """The orbit two-form on generator fields: omega([g1,o],[g2,o]) = kappa(o,[g1,g2])."""
    return trace_form(o, models.bracket(g1, g2))


@dataclass(frozen=True)
class LiftedPoint:
    """A big-cell point o = Ad(exp v) xhat with its base and shear."""

    base: BlockElement    # xhat, supported on the plus blocks (x, y)
    shear: BlockElement   # v, supported on the minus blocks (u, v)
    point: BlockElement   # o


def assemble_lift(base: BlockElement, shear: BlockElement) -> LiftedPoint:
    if not (base.uplus_part() == base):
        raise ValueError("base must be supported on the plus blocks")
    if not (shear.uminus_part() == shear):
        raise ValueError("shear must be supported on the minus blocks")
    if not models.is_minimal_member(base):
        raise ValueError("base is not in the orbit closure (x . y != 0?)")
    point = models.adjoint_exp(shear, base)
    return LiftedPoint(base=base, shear=shear, point=point)


def recover_lift(o: BlockElement, atol: Optional[float] = None) -> LiftedPoint:
    """Invert the big-cell decomposition: find v with o = Ad(exp v) (plus part of o).

    The shear solves the linear system [v, xhat] = (levi part of o); any
    solution works because two solutions differ by a stabilizer direction,
    which the reassembly identity absorbs.  Raises ValueError when o is not on
    the big cell (inconsistent system or failed reassembly).
    """
    base = o.uplus_part()
    if base.is_zero():
        raise ValueError("point has no plus-block part; not on the big cell")
    minus = models.uminus_basis(o.n)
    target = o.levi_part()
    columns = [models.bracket(e, base) for _, e in minus]
    flat = lambda e: [t for row in e.matrix() for t in row]
    matrix = [list(col) for col in zip(*[flat(c) for c in columns])]
    rhs = flat(target)
    if atol is None:
        solution = linalg.solve_exact(matrix, rhs)
        if solution is None:
            raise ValueError("levi part is not a shear bracket; not on the big cell")
    else:
        solution = list(linalg.solve_float(matrix, rhs))
    shear = BlockElement.zero(o.n)
    for t, (_, e) in zip(solution, minus):
        shear = shear + e.scale(Fraction(t) if isinstance(t, (int, Fraction)) else t)
    point = models.adjoint_exp(shear, base)
    residual = point - o
    if atol is None:
        if not residual.is_zero():
            raise ValueError("reassembly failed; point is not on the big cell")
    elif linalg.max_abs(residual.matrix()) > atol * (1.0 + linalg.max_abs(o.matrix())):
        raise ValueError("reassembly failed beyond tolerance")
    return LiftedPoint(base=base, shear=shear, point=o)


# ---------------------------------------------------------------------------
# The three one-forms and their exact relation
# ---------------------------------------------------------------------------


def potential(lift: LiftedPoint):
    """f = kappa(xhat, v), the shear potential of the big cell."""
    return trace_form(lift.base, lift.shear)


def potential_differential(lift: LiftedPoint, g: BlockElement):
    """df evaluated on the generator field of g: kappa(g, xhat) + (1/2) kappa([v,xhat],[v,g])."""
    vx = models.bracket(lift.shear, lift.base)
    vg = models.bracket(lift.shear, g)
    return trace_form(g, lift.base) + Fraction(1, 2) * trace_form(vx, vg)


def eta_form(lift: LiftedPoint, g: BlockElement):
    """The twisted one-form: kappa(g, [v, xhat]) - kappa([v, xhat], [v, g])."""
    vx = models.bracket(lift.shear, lift.base)
    vg = models.bracket(lift.shear, g)
    return trace_form(g, vx) - trace_form(vx, vg)


def beta_form(o: BlockElement, g: BlockElement):
    """The tautological pairing kappa(g, o); well defined on generator fields."""
    return trace_form(g, o)


def eta_df_beta_residual(lift: LiftedPoint, g: BlockElement):
    """eta + df - beta on the generator field of g; identically zero on the cell.

    Expanded so the two brackets [v, xhat] and [v, g] are formed once instead
    of once per summand.
    """
    vx = models.bracket(lift.shear, lift.base)
    vg = models.bracket(lift.shear, g)
    return (trace_form(g, lift.base) + trace_form(g, vx)
            - Fraction(1, 2) * trace_form(vx, vg)
            - trace_form(g, lift.point))


def curve_derivative_residual(base: BlockElement, shear: BlockElement,
                              base_dot: BlockElement, shear_dot: BlockElement) -> BlockElement:
    """Difference between the jet derivative of Ad(exp v(t)) x(t) and its closed form.

    The closed form is Ad(exp v) ([dv, x] + dx); the identity holds because the
    minus block is abelian.  Returns the derivative-part block element, which
    must vanish.
    """
    jet_shear = _jet_element(shear, shear_dot)
    jet_base = _jet_element(base, base_dot)
    moved = models.adjoint_exp(jet_shear, jet_base)
    closed = models.adjoint_exp(shear, models.bracket(shear_dot, base) + base_dot)
    derivative = moved._map(lambda t: t.du if isinstance(t, Jet) else 0 * t)
    return derivative - closed


def _jet_element(value: BlockElement, slope: BlockElement) -> BlockElement:
    pair = lambda a, b: Jet(a, b)
    n = value.n
    return BlockElement(
        n=n,
        w=pair(value.w, slope.w),
        x=tuple(pair(a, b) for a, b in zip(value.x, slope.x)),
        y=tuple(pair(a, b) for a, b in zip(value.y, slope.y)),
        u=tuple(pair(a, b) for a, b in zip(value.u, slope.u)),
        v=tuple(pair(a, b) for a, b in zip(value.v, slope.v)),
        A=tuple(tuple(pair(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(value.A, slope.A)),
        B=tuple(tuple(pair(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(value.B, slope.B)),
        C=tuple(tuple(pair(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(value.C, slope.C)),
    )


# ---------------------------------------------------------------------------
# Orbit two-form nondegeneracy
# ---------------------------------------------------------------------------


def _independent_indices(vectors: List[List], limit: Optional[int] = None) -> List[int]:
    chosen: List[int] = []
    reduced: List[Tuple[int, List]] = []
    for idx, vec in enumerate(vectors):
        row = list(vec)
        for pivot, base_row in reduced:
            if row[pivot] != 0:
                factor = row[pivot]
                row = [a - factor * b for a, b in zip(row, base_row)]
        pivot = next((k for k, t in enumerate(row) if t != 0), None)
        if pivot is None:
            continue
        inv = row[pivot]
        row = [t / inv for t in row]
        reduced.append((pivot, row))
        chosen.append(idx)
        if limit is not None and len(chosen) == limit:
            break
    return chosen


def tangent_frame(o: BlockElement) -> List[BlockElement]:
    """A maximal independent family of generator tangents [g, o], g in the basis."""
    basis = models.so_basis(o.n)
    tangents = [models.bracket(g, o) for _, g in basis]
    flats = [[t for row in tangent.matrix() for t in row] for tangent in tangents]
    indices = _independent_indices(flats)
    return [basis[k][1] for k in indices]


def kks_gram(o: BlockElement, frame: Optional[Sequence[BlockElement]] = None) -> linalg.Matrix:
    """Gram matrix of the orbit two-form on a tangent frame at o."""
    if frame is None:
        frame = tangent_frame(o)
    return [[kks_pairing(o, g1, g2) for g2 in frame] for g1 in frame]


def kks_gram_rank(o: BlockElement, backend: str = "exact", rel_tol: float = 1e-8) -> int:
    """Rank of the orbit two-form over the full generator basis at o.

    Stabilizer directions fall in the radical of the full-basis Gram by
    invariance of the pairing, so its rank agrees with the rank on any tangent
    frame.  Each basis matrix carries at most two nonzero entries, which lets
    the Gram assemble from sparse entry lookups:
    kappa(o, [g_i, g_j]) = tr(g_i g_j o) - tr(g_j g_i o).
    """
    entries = [ent for _, ent in models.so_basis_entries(o.n)]
    om = o.matrix()

    def product_trace(ea, eb):
        total = 0
        for p, q, s in ea:
            for p2, q2, s2 in eb:
                if q == p2:
                    total += s * s2 * om[q2][p]
        return total

    d = len(entries)
    gram = [[0] * d for _ in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            val = product_trace(entries[i], entries[j]) - product_trace(entries[j], entries[i])
            gram[i][j] = val
            gram[j][i] = -val
    if backend == "exact":
        return linalg.rank_exact(gram)
    gram_float = [[float(t) for t in row] for row in gram]
    return linalg.rank_float(gram_float, rel_tol=rel_tol)


# ---------------------------------------------------------------------------
# Floating-point differential checks
# ---------------------------------------------------------------------------


def _float_matrix(e: BlockElement) -> np.ndarray:
    return np.array([[float(t) for t in row] for row in e.matrix()], dtype=float)


def _expm(m: np.ndarray) -> np.ndarray:
    """Scaling-and-squaring Taylor exponential; ample accuracy for small norms."""
    norm = np.abs(m).sum(axis=1).max() if m.size else 0.0
    squarings = max(0, int(np.ceil(np.log2(norm))) + 1) if norm > 0.5 else 0
    scaled = m / (2.0 ** squarings)
    result = np.eye(m.shape[0])
    term = np.eye(m.shape[0])
    for k in range(1, 24):
        term = term @ scaled / k
        result = result + term
    for _ in range(squarings):
        result = result @ result
    return result


def flow_point(o: BlockElement, g: BlockElement, t: float) -> np.ndarray:
    """Ad(exp(t g)) o as a float matrix."""
    gm = _float_matrix(g)
    om = _float_matrix(o)
    forward = _expm(t * gm)
    backward = _expm(-t * gm)
    return forward @ om @ backward


def directional_derivative(function, o: BlockElement, g: BlockElement, step: float) -> float:
    """Central difference of function(matrix) along the flow of g through o."""
    plus = function(flow_point(o, g, step))
    minus = function(flow_point(o, g, -step))
    return (plus - minus) / (2.0 * step)


def trace_a_of_matrix(m: np.ndarray) -> float:
    n = (m.shape[0] - 2) // 2
    return float(sum(m[1 + k, 1 + k] for k in range(n)))


def hamiltonian_pairing_residual(o: BlockElement, g: BlockElement, step: float = 1e-5) -> Tuple[float, float]:
    """(lhs, rhs) for the torus Hamiltonian identity.

    lhs = omega(torus field, g field) at o; rhs = 2 * d/dt tr A(Ad(exp tg) o),
    the factor 2 being the exact normalization kappa(h, .) = 2 tr A.
    """
    h = models.torus_generator(o.n)
    lhs = float(kks_pairing(o, h, g))
    rhs = 2.0 * directional_derivative(trace_a_of_matrix, o, g, step)
    return lhs, rhs


def beta_function(g: BlockElement):
    gm = None

    def evaluate(m: np.ndarray) -> float:
        nonlocal gm
        if gm is None:
            gm = _float_matrix(g)
        return float(np.trace(gm @ m))

    return evaluate


def exterior_derivative_residual(o: BlockElement, h: BlockElement, g: BlockElement,
                                 step: float = 1e-5) -> Tuple[float, float]:
    """(lhs, rhs) for the full three-term exterior derivative of beta.

    lhs = del_h beta(., g) - del_g beta(., h) - beta([[g,h], o]) computed by
    central differences along the two generator flows; rhs = kappa(o, [g, h]).
    With the generator-field convention [field_h, field_g] = field_[g,h], this
    is Cartan's formula; the two-term truncation would be off by a factor.
    """
    term_h = directional_derivative(beta_function(g), o, h, step)
    term_g = directional_derivative(beta_function(h), o, g, step)
    gh = models.bracket(g, h)
    correction = float(beta_form(o, gh))
    lhs = term_h - term_g - correction
    rhs = float(kks_pairing(o, g, h))
    return lhs, rhs
