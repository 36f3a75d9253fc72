"""Torus action, orbit classification, slices, and dimension certificates."""

from fractions import Fraction

import pytest

from orbitkit import certificates, models, reduction, sampling
from orbitkit.models import BlockElement


def test_torus_action_is_a_group_action_and_preserves_the_shell():
    rng = sampling.rng_stream(31, "reduction", "action")
    for n in (2, 3):
        for _ in range(4):
            e = sampling.shell_point(rng, n)
            lam, mu = Fraction(3, 2), Fraction(-5, 7)
            assert reduction.cstar_act(lam * mu, e) == reduction.cstar_act(
                lam, reduction.cstar_act(mu, e))
            assert reduction.cstar_act(Fraction(1), e) == e
            moved = reduction.cstar_act(lam, e)
            assert reduction.is_shell_member(moved)


def test_torus_action_matches_weight_decomposition():
    rng = sampling.rng_stream(32, "reduction", "weights")
    e = sampling.block_element(rng, 3)
    lam = Fraction(2, 3)
    moved = reduction.cstar_act(lam, e)
    expected = BlockElement.zero(3)
    for d in (-2, -1, 0, 1, 2):
        expected = expected + e.weight_part(d).scale(lam ** d)
    assert moved == expected


def test_shell_membership():
    rng = sampling.rng_stream(33, "reduction", "shell")
    assert reduction.is_shell_member(sampling.shell_point(rng, 3))
    assert reduction.is_shell_member(sampling.torus_fixed_point(rng, 3))
    assert reduction.is_shell_member(sampling.minus_generic_shell_point(rng, 3))
    off_shell = models.chart_a_pivot(3, 1, 2, sampling.chart_a_coords(rng, 3, 1, 2))
    if off_shell.trace_a() != 0:
        assert not reduction.is_shell_member(off_shell)
    not_member = BlockElement(n=3, A=((1, 0, 0), (0, -1, 0), (0, 0, 0)))
    assert not reduction.is_shell_member(not_member)


def test_orbit_status_by_support():
    rng = sampling.rng_stream(34, "reduction", "status")
    n = 3
    generic = sampling.shell_point(rng, n)
    status = reduction.orbit_status(generic)
    assert status.closed and not status.fixed
    assert not status.limit_at_zero and not status.limit_at_infinity

    x_only = models.embed_uplus((1, 0, 0), (0, 0, 0))
    status = reduction.orbit_status(x_only)
    assert status.limit_at_zero and not status.limit_at_infinity and not status.closed

    y_only = models.embed_uplus((0, 0, 0), (1, 0, 0))
    status = reduction.orbit_status(y_only)
    assert status.limit_at_infinity and not status.limit_at_zero and not status.closed

    fixed = sampling.torus_fixed_point(rng, n)
    status = reduction.orbit_status(fixed)
    assert status.fixed and status.closed
    assert status.limit_at_zero and status.limit_at_infinity


def test_order_two_closure_requires_both_even_blocks():
    rng = sampling.rng_stream(35, "reduction", "even-status")
    for _ in range(10):
        point = sampling.order_two_point(rng, 4)
        status = reduction.orbit_status(point)
        assert status.closed == (not point.block_is_zero("C"))


def test_isotropy_matches_stratum_on_closed_orbits():
    rng = sampling.rng_stream(36, "reduction", "labels")
    for n in (2, 3, 4):
        for _ in range(10):
            plus = sampling.shell_point(rng, n)
            assert reduction.isotropy_label(plus) == reduction.stratum_label(plus) == "trivial"
            minus = sampling.minus_generic_shell_point(rng, n)
            assert reduction.isotropy_label(minus) == reduction.stratum_label(minus) == "trivial"
            fixed = sampling.torus_fixed_point(rng, n)
            assert reduction.isotropy_label(fixed) == reduction.stratum_label(fixed) == "torus"
    for _ in range(10):
        even = sampling.order_two_point(rng, 4)
        if reduction.orbit_status(even).closed:
            assert reduction.isotropy_label(even) == reduction.stratum_label(even) == "order-two"


def test_nonclosed_points_get_flagged():
    x_only = models.embed_uplus((1, 2), (0, 0))
    assert reduction.stratum_label(x_only) == "nonclosed"
    assert reduction.isotropy_label(x_only) == "trivial"


def test_orbit_equivalence_odd_support():
    rng = sampling.rng_stream(37, "reduction", "equivalence")
    for n in (2, 3):
        for lam in (Fraction(2), Fraction(-3, 4)):
            e = sampling.shell_point(rng, n)
            witness = reduction.orbit_equivalent(e, reduction.cstar_act(lam, e))
            assert witness == {"lambda": lam}
            other = sampling.shell_point(rng, n)
            if reduction.orbit_equivalent(e, other) is not None:
                continue
            assert reduction.orbit_equivalent(e, other) is None


def test_orbit_equivalence_even_support_uses_lambda_squared():
    rng = sampling.rng_stream(38, "reduction", "even-equivalence")
    point = sampling.order_two_point(rng, 4)
    lam = Fraction(3, 5)
    moved = reduction.cstar_act(lam, point)
    witness = reduction.orbit_equivalent(point, moved)
    assert witness == {"lambda_squared": lam * lam}


def test_orbit_equivalence_rejects_support_mismatch():
    a = models.embed_uplus((1, 0), (0, 0))
    b = models.embed_uplus((0, 0), (1, 0))
    assert reduction.orbit_equivalent(a, b) is None
    zero = BlockElement.zero(2)
    assert reduction.orbit_equivalent(zero, zero) == {"lambda": Fraction(1)}
    assert reduction.orbit_equivalent(zero, a) is None


def test_closed_orbit_sweep_dichotomy():
    low = reduction.closed_orbit_sweep(2, 60, seed=101)
    assert low.closed == 0
    mid = reduction.closed_orbit_sweep(3, 60, seed=102)
    assert mid.closed == 0
    high = reduction.closed_orbit_sweep(4, 60, seed=103)
    assert high.closed >= 54
    assert high.label_agreements == high.closed


def test_hypertoric_slice_pairs_cover_the_chart():
    for n, i, j in ((2, 1, 2), (3, 2, 1), (4, 2, 3)):
        model = reduction.slice_model_cstar(n, i, j)
        assert len(model.pairs) == 2 * n - 1
        seen = [name for z, w, _ in model.pairs for name in (z, w)]
        assert sorted(seen) == sorted(models.chart_a_pivot_names(n, i, j))
        assert model.quotient_dimension == 4 * n - 4
        expected = sorted([1, -1] + [-2] * (n - 2) + [0] * (n - 1))
        assert sorted(model.weights) == expected
    assert reduction.slice_model_cstar(2, 1, 2).weights == (1, -1, 0)


def test_hypertoric_moment_matches_trace_moment():
    rng = sampling.rng_stream(39, "reduction", "slice-moment")
    for n, i, j in ((2, 1, 2), (3, 3, 1), (4, 2, 4)):
        model = reduction.slice_model_cstar(n, i, j)
        for _ in range(6):
            coords = sampling.chart_a_coords(rng, n, i, j)
            assert model.moment_identity_residual(coords) == 0


def test_order_two_slice_model_data():
    with pytest.raises(ValueError):
        reduction.slice_model_z2(3, 1, 2)
    for n, i, j in ((4, 1, 3), (5, 2, 5)):
        model = reduction.slice_model_z2(n, i, j)
        assert model.slice_dimension == 4 * n - 4
        assert model.fixed_dimension == 4 * n - 8
        assert model.linear_invariants() == ()
        assert len(model.quadratic_invariants()) == 10
        assert model.pivot not in model.slice_coords


def test_order_two_slice_action_is_the_sign_flip():
    rng = sampling.rng_stream(40, "reduction", "slice-action")
    for n, i, j in ((4, 1, 3), (5, 4, 2)):
        model = reduction.slice_model_z2(n, i, j)
        for _ in range(4):
            coords = sampling.chart_b_coords(rng, n, i, j)
            assert model.action_residual(coords).is_zero()


def _shell_coordinate_point(rng, n, i, j):
    coords = sampling.chart_a_shell_coords(rng, n, i, j)
    element = models.chart_a_pivot(n, i, j, coords)
    return models.to_coordinates(element), element


def test_coordinate_roundtrip():
    rng = sampling.rng_stream(41, "reduction", "coords")
    e = sampling.block_element(rng, 3)
    assert models.from_coordinates(3, models.to_coordinates(e)) == e


def test_shell_equation_system_certifies_shell_dimension():
    rng = sampling.rng_stream(42, "reduction", "shell-system")
    for n, i, j in ((2, 1, 2), (3, 2, 3)):
        system = reduction.shell_equation_system(n, i, j)
        point, element = _shell_coordinate_point(rng, n, i, j)
        assert element.trace_a() == 0
        cert = certificates.certify_equations(system, point)
        assert cert.point_on_variety
        assert cert.dimension == 4 * n - 3
        assert cert.ambient_dim == (n + 1) * (2 * n + 1)


def test_shell_jacobian_rule_matches_jet_jacobian():
    rng = sampling.rng_stream(43, "reduction", "jacobian-rule")
    n, i, j = 2, 1, 2
    system = reduction.shell_equation_system(n, i, j)
    point, _ = _shell_coordinate_point(rng, n, i, j)
    by_rule = system.jacobian(point)
    by_jets = certificates.EquationSystem(
        name="jet route", coord_names=system.coord_names,
        equations=system.equations).jacobian(point)
    assert by_rule == by_jets


def test_minimal_gl_system_certifies_2n_minus_2():
    rng = sampling.rng_stream(44, "reduction", "gl-system")
    for n in (3, 4):
        system = reduction.minimal_gl_equation_system(n)
        a = sampling.rank_one_nilpotent(rng, n)
        point = {f"a[{r},{c}]": a[r - 1][c - 1] for r in range(1, n + 1) for c in range(1, n + 1)}
        cert = certificates.certify_equations(system, point)
        assert cert.point_on_variety
        assert cert.dimension == 2 * n - 2


def test_stratum_parametrization_ranks():
    rng = sampling.rng_stream(45, "reduction", "parametrizations")
    for n in (2, 3):
        chart = reduction.shell_chart_parametrization(n, 1, 2)
        coords = sampling.chart_b_coords(rng, n, 1, 2)
        cert = certificates.certify_parametrization(chart, coords)
        assert cert.dimension == 4 * n - 3
    for n in (3, 4):
        torus = reduction.torus_stratum_parametrization(n)
        point = {name: sampling.rational_nonzero(rng) for name in torus.param_names}
        cert = certificates.certify_parametrization(torus, point)
        assert cert.dimension == 2 * n - 2
    for n in (4, 5):
        even = reduction.order_two_stratum_parametrization(n, 1, 2)
        point = sampling.chart_b_levi_coords(rng, n, 1, 2)
        point = {name: point[name] for name in even.param_names}
        cert = certificates.certify_parametrization(even, point)
        assert cert.dimension == 4 * n - 7
