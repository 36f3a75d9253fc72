"""End-to-end acceptance checks, one test per headline guarantee.

Each test re-verifies a shipped claim at its stated sample count and
tolerance, independently of the harness registry: exact identities by
rational arithmetic, dimensions by Jacobian-rank certificates, float
claims by finite differences.  Run with -v for one pass/fail line each.
"""

import time
from fractions import Fraction

from orbitkit import (certificates, harness, models, reduction, sampling,
                      symplectic, vgit)
from orbitkit.models import BlockElement

SEED = 20260819


def _stream(*labels):
    return sampling.rng_stream(SEED, "acceptance", *(str(t) for t in labels))


def _lift(rng, n):
    x, y = sampling.quadric_pair(rng, n)
    base = models.embed_uplus(x, y)
    return symplectic.assemble_lift(base, sampling.uminus_element(rng, n))


def _off_pivot(e):
    return next(((i, j) for i in range(1, e.n + 1) for j in range(1, e.n + 1)
                 if i != j and e.A[i - 1][j - 1] != 0), None)


def _relative_gap(lhs, rhs):
    return abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))


def test_01_shear_potential_identity_exact_on_200_triples_per_size():
    started = time.perf_counter()
    triples = 0
    for n in (2, 3, 4):
        for k in range(200):
            rng = _stream("one-form", n, k)
            lift = _lift(rng, n)
            g = sampling.block_element(rng, n)
            assert symplectic.eta_df_beta_residual(lift, g) == 0
            triples += 1
    elapsed = time.perf_counter() - started
    assert triples == 600
    assert elapsed < 30.0
    print(f"PASS eta + df = beta exactly on {triples} triples in {elapsed:.1f}s")


def test_02_curve_rule_exact_on_100_jets_per_size():
    jets = 0
    for n in (2, 3):
        zero = BlockElement.zero(n)
        for k in range(100):
            rng = _stream("curve-rule", n, k)
            x, y = sampling.quadric_pair(rng, n)
            base = models.embed_uplus(x, y)
            shear = sampling.uminus_element(rng, n)
            base_dot = models.embed_uplus(sampling.rational_vector(rng, n),
                                          sampling.rational_vector(rng, n))
            shear_dot = sampling.uminus_element(rng, n)
            residual = symplectic.curve_derivative_residual(base, shear,
                                                            base_dot, shear_dot)
            assert residual == zero
            jets += 1
    assert jets == 200
    print(f"PASS sheared-curve derivative rule exact on {jets} jets")


def test_03_orbit_form_rank_is_4n_minus_2_at_20_points_per_size():
    for n in (2, 3, 4):
        for k in range(20):
            rng = _stream("form-rank", n, k)
            lift = _lift(rng, n)
            rank = symplectic.kks_gram_rank(lift.point, backend="exact")
            assert rank == 4 * n - 2, (n, k, rank)
    print("PASS orbit two-form has exact rank 4n-2 at 60 sampled points")


def test_04_torus_hamiltonian_matches_trace_moment_to_1e6():
    n = 3
    worst = 0.0
    for k in range(50):
        rng = _stream("moment", n, k)
        lift = _lift(rng, n)
        g = sampling.block_element(rng, n)
        lhs, rhs = symplectic.hamiltonian_pairing_residual(lift.point, g, step=1e-5)
        gap = _relative_gap(lhs, rhs)
        worst = max(worst, gap)
        assert gap <= 1e-6, (k, lhs, rhs, gap)
    print(f"PASS torus Hamiltonian pairing matches flow rate; worst gap {worst:.2e}")


def test_05_dimension_certificates_by_exact_jacobian_rank():
    started = time.perf_counter()
    points = 5
    for n in (3, 4, 5):
        for k in range(points):
            rng = _stream("dims", n, k)

            e = sampling.shell_point(rng, n)
            spot = _off_pivot(e)
            while spot is None:
                e = sampling.shell_point(rng, n)
                spot = _off_pivot(e)
            cert = certificates.certify_equations(
                reduction.shell_equation_system(n, *spot), models.to_coordinates(e))
            assert cert.point_on_variety and cert.dimension == 4 * n - 3

            param = reduction.torus_stratum_parametrization(n, pivot=1 + k % n)
            point = {name: sampling.rational_nonzero(rng) for name in param.param_names}
            assert certificates.certify_parametrization(param, point).dimension == 2 * n - 2

            i, j = 1 + k % n, 1 + (k + 1) % n
            param = reduction.order_two_stratum_parametrization(n, i, j)
            point = {name: sampling.rational(rng) for name in param.param_names}
            point[f"b[{i},{j}]"] = sampling.rational_nonzero(rng)
            assert certificates.certify_parametrization(param, point).dimension == 4 * n - 7

            cert = certificates.certify_equations(
                vgit.minus_graph_equation_system(n, 1 + k % n),
                vgit.minus_graph_coords(rng, n, 1 + k % n))
            assert cert.point_on_variety and cert.dimension == 4 * n - 5

            for kind in ("x", "v"):
                param = vgit.central_component_parametrization(n, 1 + k % n, kind)
                point = {name: sampling.rational(rng) for name in param.param_names}
                point[f"odd[{1 + k % n}]"] = sampling.rational_nonzero(rng)
                assert certificates.certify_parametrization(param, point).dimension == 2 * n - 1

            fiber = None
            while fiber is None:
                a0 = sampling.rank_one_nilpotent(rng, n)
                spot = next(((i, j) for i in range(1, n + 1) for j in range(1, n + 1)
                             if i != j and a0[i - 1][j - 1] != 0), None)
                if spot is not None:
                    fiber = vgit.exceptional_fiber(models.embed_gl(n, a0), *spot)
            values = {name: sampling.rational_nonzero(rng) for name in fiber.param_names}
            assert certificates.certify_parametrization(fiber.parametrization(),
                                                        values).dimension == n

    for k in range(points):
        rng = _stream("dims-small", 2, k)
        cert = certificates.certify_equations(vgit.minus_graph_equation_system(2, 1),
                                              vgit.minus_graph_coords(rng, 2, 1))
        assert cert.point_on_variety and cert.dimension == 4

    elapsed = time.perf_counter() - started
    assert elapsed < 60.0
    print(f"PASS exact-rank dimension certificates, 5 points each, in {elapsed:.1f}s")


def test_06_isotropy_matches_stratum_on_200_closed_orbits_per_size():
    for n in (2, 3, 4):
        generators = [sampling.shell_point, sampling.minus_generic_shell_point,
                      sampling.torus_fixed_point]
        if n >= 4:
            generators.append(sampling.order_two_point)
        closed = 0
        mismatches = 0
        draws = 0
        while closed < 200 and draws < 600:
            rng = _stream("labels", n, draws)
            e = generators[draws % len(generators)](rng, n)
            draws += 1
            if not reduction.orbit_status(e).closed:
                continue
            closed += 1
            if reduction.isotropy_label(e) != reduction.stratum_label(e):
                mismatches += 1
        assert closed == 200, (n, closed, draws)
        assert mismatches == 0, (n, mismatches)
    print("PASS isotropy and stratum labels agree on 200 closed orbits per size")


def test_07_even_block_closure_dichotomy():
    for n in (2, 3):
        sweep = reduction.closed_orbit_sweep(n, 100, SEED)
        assert sweep.samples == 100
        assert sweep.closed == 0, (n, sweep.closed)
    for n in (4, 5):
        sweep = reduction.closed_orbit_sweep(n, 100, SEED)
        assert sweep.samples == 100
        assert sweep.closed >= 90, (n, sweep.closed)
        assert sweep.label_agreements == sweep.closed
    print("PASS even-block orbits: 0/100 closed at n=2,3; >=90/100 closed at n=4,5")


def test_08_slice_models_moment_and_involution_ledger():
    for n in (2, 3, 4):
        expected_weights = sorted([1, -1] + [-2] * (n - 2) + [0] * (n - 1))
        for k in range(50):
            rng = _stream("slice", n, k)
            i = rng.randint(1, n)
            j = i
            while j == i:
                j = rng.randint(1, n)
            model = reduction.slice_model_cstar(n, i, j)
            assert sorted(model.weights) == expected_weights
            coords = sampling.chart_a_coords(rng, n, i, j)
            assert model.moment_identity_residual(coords) == 0
    for n in (4, 5):
        for i, j in ((1, 2), (2, n), (n - 1, 1)):
            model = reduction.slice_model_z2(n, i, j)
            assert len(model.flipped) == 4
            assert model.fixed_dimension == 4 * n - 8
            assert model.slice_dimension == 4 * n - 4
    print("PASS slice moments exact at 50 points per size; sign-flip ledger as stated")


def test_09_minus_cone_fiber_classification():
    for n in (2, 3, 4):
        for k in range(20):
            rng = _stream("fibers", n, k)
            u, v = sampling.isotropic_pair_with_pivot(rng, n, 1 + k % n)
            mixed = vgit.minus_fiber_report(n, u, v)
            if n == 2:
                assert mixed.quadric_rank == 0
                assert mixed.fiber_dim == 1
                assert mixed.singular_dim is None
            else:
                assert mixed.fiber_dim == 2 * n - 4
                assert mixed.singular_dim == 1
            u_only = vgit.minus_fiber_report(n, sampling.nonzero_vector(rng, n), (0,) * n)
            v_only = vgit.minus_fiber_report(n, (0,) * n, sampling.nonzero_vector(rng, n))
            for report in (u_only, v_only):
                assert report.fiber_dim == 2 * n - 3
                assert report.singular_dim == 0
    print("PASS fiber over the minus cone: smooth, one-point-singular, or a line")


def test_10_cotangent_descent_and_boundary_codimension():
    for n in (3, 4):
        for k in range(50):
            rng = _stream("descent", n, k)
            x, y = sampling.quadric_pair(rng, n)
            psi = [sampling.rational(rng) for _ in range(2 * n - 2)]
            lam = sampling.rational_nonzero(rng)
            o = vgit.alpha_pushforward(x, y, psi)
            assert reduction.is_shell_member(o)
            assert vgit.is_semistable(o, "plus")
            scaled = vgit.alpha_pushforward([lam * t for t in x],
                                            [t / lam for t in y], psi)
            assert scaled == reduction.cstar_act(lam, o)
            psi2 = list(psi)
            psi2[k % len(psi)] += 1
            o2 = vgit.alpha_pushforward(x, y, psi2)
            assert o2 != o
            assert reduction.orbit_equivalent(o, o2) is None
    for n in (3, 4):
        assert vgit.boundary_report(n, seed=SEED).codimension == 2
    report = vgit.boundary_report(2, seed=SEED)
    assert report.codimension == 1
    assert len(report.components) == 3
    assert all(c.dimension == 4 for c in report.components)
    print("PASS cotangent covectors descend injectively and equivariantly; "
          "boundary codimension 2 (three divisors at n=2)")


def test_11_reports_are_deterministic():
    config = harness.RunConfig(ns=(2, 3), samples=5, seed=SEED)
    first = harness.run(config).to_json()
    second = harness.run(config).to_json()
    assert first == second
    print("PASS identical configurations produce byte-identical reports")
