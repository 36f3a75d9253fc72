"""Exact and floating checks for the big-cell symplectic identities."""

from fractions import Fraction

import numpy as np
import pytest

from orbitkit import linalg, models, sampling, symplectic
from orbitkit.models import BlockElement


def _lift(rng, n):
    x, y = sampling.quadric_pair(rng, n)
    base = models.embed_uplus(x, y)
    shear = sampling.uminus_element(rng, n)
    return symplectic.assemble_lift(base, shear)


def test_trace_form_symmetric_and_invariant():
    rng = sampling.rng_stream(11, "symplectic", "invariance")
    for n in (2, 3):
        for _ in range(5):
            a = sampling.block_element(rng, n)
            b = sampling.block_element(rng, n)
            g = sampling.block_element(rng, n)
            assert symplectic.trace_form(a, b) == symplectic.trace_form(b, a)
            lhs = symplectic.trace_form(models.bracket(g, a), b)
            rhs = symplectic.trace_form(a, models.bracket(g, b))
            assert lhs + rhs == 0


def test_torus_pairing_is_twice_trace_moment():
    rng = sampling.rng_stream(12, "symplectic", "normalization")
    for n in (2, 3, 4):
        h = models.torus_generator(n)
        for _ in range(5):
            e = sampling.block_element(rng, n)
            assert symplectic.trace_form(h, e) == 2 * e.trace_a()


def test_assemble_and_recover_roundtrip():
    rng = sampling.rng_stream(13, "symplectic", "roundtrip")
    for n in (2, 3):
        for _ in range(5):
            lift = _lift(rng, n)
            recovered = symplectic.recover_lift(lift.point)
            assert recovered.point == lift.point
            assert recovered.base == lift.base
            reassembled = models.adjoint_exp(recovered.shear, recovered.base)
            assert reassembled == lift.point


def test_recover_rejects_points_off_the_cell():
    bad = models.embed_uminus((1, 0), (0, 0))
    with pytest.raises(ValueError):
        symplectic.recover_lift(bad)


def test_eta_plus_df_equals_beta_exactly():
    rng = sampling.rng_stream(14, "symplectic", "one-forms")
    for n in (2, 3):
        basis = models.so_basis(n)
        for _ in range(6):
            lift = _lift(rng, n)
            for _, g in basis:
                assert symplectic.eta_df_beta_residual(lift, g) == 0
            g = sampling.block_element(rng, n)
            assert symplectic.eta_df_beta_residual(lift, g) == 0


def test_potential_ignores_stabilizer_shears():
    rng = sampling.rng_stream(15, "symplectic", "stabilizer")
    for n in (2, 3):
        for _ in range(4):
            lift = _lift(rng, n)
            minus = models.uminus_basis(n)
            columns = [models.bracket(e, lift.base) for _, e in minus]
            flat = [[t for row in c.matrix() for t in row] for c in columns]
            matrix = [list(col) for col in zip(*flat)]
            kernel = linalg.kernel_basis(matrix)
            assert kernel, "expected a stabilizer direction inside the minus block"
            for coeffs in kernel:
                w = BlockElement.zero(n)
                for t, (_, e) in zip(coeffs, minus):
                    w = w + e.scale(t)
                assert models.bracket(w, lift.base).is_zero()
                assert symplectic.trace_form(lift.base, w) == 0
                shifted = symplectic.assemble_lift(lift.base, lift.shear + w)
                assert shifted.point == lift.point
                assert symplectic.potential(shifted) == symplectic.potential(lift)


def _tangent_pair(rng, n, x, y):
    xdot = sampling.rational_vector(rng, n)
    ydot = sampling.rational_vector(rng, n)
    dot = lambda a, b: sum(p * q for p, q in zip(a, b))
    norm = dot(x, x)
    correction = Fraction(dot(x, ydot) + dot(xdot, y), norm)
    ydot = tuple(t - correction * xt for t, xt in zip(ydot, x))
    assert dot(x, ydot) + dot(xdot, y) == 0
    return xdot, ydot


def test_curve_derivative_matches_closed_form():
    rng = sampling.rng_stream(16, "symplectic", "curves")
    for n in (2, 3):
        for _ in range(6):
            x, y = sampling.quadric_pair(rng, n)
            base = models.embed_uplus(x, y)
            shear = sampling.uminus_element(rng, n)
            xdot, ydot = _tangent_pair(rng, n, x, y)
            base_dot = models.embed_uplus(xdot, ydot)
            shear_dot = sampling.uminus_element(rng, n)
            residual = symplectic.curve_derivative_residual(base, shear, base_dot, shear_dot)
            assert residual.is_zero()


def test_gram_rank_is_orbit_dimension():
    rng = sampling.rng_stream(17, "symplectic", "gram")
    for n in (2, 3):
        for _ in range(3):
            lift = _lift(rng, n)
            assert symplectic.kks_gram_rank(lift.point) == 4 * n - 2
            assert symplectic.kks_gram_rank(lift.point, backend="float") == 4 * n - 2


def test_gram_rank_on_other_orbit_shapes():
    rng = sampling.rng_stream(18, "symplectic", "gram-shapes")
    for n in (2, 3):
        point = sampling.shell_point(rng, n)
        assert symplectic.kks_gram_rank(point) == 4 * n - 2


def test_expm_matches_exact_on_nilpotent():
    rng = sampling.rng_stream(19, "symplectic", "expm")
    v = sampling.uminus_element(rng, 3)
    exact = linalg.exp_nilpotent(v.matrix())
    approx = symplectic._expm(symplectic._float_matrix(v))
    exact_np = np.array([[float(t) for t in row] for row in exact])
    assert np.max(np.abs(approx - exact_np)) < 1e-12
    g = sampling.block_element(rng, 2)
    gm = symplectic._float_matrix(g)
    prod = symplectic._expm(gm) @ symplectic._expm(-gm)
    assert np.max(np.abs(prod - np.eye(gm.shape[0]))) < 1e-10


def test_hamiltonian_pairing_float():
    rng = sampling.rng_stream(20, "symplectic", "hamiltonian")
    for n in (2, 3):
        for _ in range(5):
            lift = _lift(rng, n)
            g = sampling.block_element(rng, n)
            lhs, rhs = symplectic.hamiltonian_pairing_residual(lift.point, g)
            scale = max(1.0, abs(lhs), abs(rhs))
            assert abs(lhs - rhs) <= 1e-6 * scale


def test_exterior_derivative_three_terms():
    rng = sampling.rng_stream(21, "symplectic", "cartan")
    for n in (2, 3):
        for _ in range(4):
            lift = _lift(rng, n)
            g = sampling.block_element(rng, n)
            h = sampling.block_element(rng, n)
            lhs, rhs = symplectic.exterior_derivative_residual(lift.point, h, g)
            scale = max(1.0, abs(lhs), abs(rhs))
            assert abs(lhs - rhs) <= 1e-6 * scale
