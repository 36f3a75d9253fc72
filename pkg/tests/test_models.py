"""Block model, membership predicates, and the three rational charts."""

from fractions import Fraction

import pytest

from orbitkit import linalg, models, sampling
from orbitkit.models import (
    BlockElement,
    ChartDomainError,
    ChartPoint,
    chart_a_pivot,
    chart_b_pivot,
    chart_u_pivot,
    embed_gl,
    embed_uminus,
    embed_uplus,
    pair_to_nilpotent,
)

F = Fraction


def test_matrix_layout_frozen_n2():
    e = BlockElement(
        n=2, w=1, x=(1, 0), y=(0, 0), u=(0, 0), v=(0, 2),
        A=((1, 2), (3, 4)), B=((0, 5), (-5, 0)), C=((0, 0), (0, 0)),
    )
    expected = [
        [1, 0, 0, 0, 0, 2],
        [1, 1, 2, 0, 0, 5],
        [0, 3, 4, -2, -5, 0],
        [0, 0, 0, -1, -1, 0],
        [0, 0, 0, 0, -1, -3],
        [0, 0, 0, 0, -2, -4],
    ]
    assert e.matrix() == [[F(t) for t in row] for row in expected]


def test_every_block_element_is_orthogonal():
    rng = sampling.rng_stream(11, "models", "orth")
    for n in (2, 3, 4):
        for _ in range(5):
            e = sampling.block_element(rng, n)
            assert models.is_orthogonal_element(e.matrix(), n)


def test_matrix_roundtrip():
    rng = sampling.rng_stream(12, "models", "roundtrip")
    for n in (2, 3, 5):
        e = sampling.block_element(rng, n)
        assert BlockElement.from_matrix(e.matrix()) == e


def test_from_matrix_rejects_non_orthogonal():
    bad = linalg.identity(6)
    with pytest.raises(ValueError):
        BlockElement.from_matrix(bad)


def test_skew_validation():
    with pytest.raises(ValueError):
        BlockElement(n=2, B=((0, 1), (1, 0)))


def test_bracket_closure_and_antisymmetry():
    rng = sampling.rng_stream(13, "models", "bracket")
    a = sampling.block_element(rng, 3)
    b = sampling.block_element(rng, 3)
    ab = models.bracket(a, b)
    ba = models.bracket(b, a)
    assert ab == -ba
    # from_matrix inside bracket() already validated closure under the form


def test_weight_decomposition_sums():
    rng = sampling.rng_stream(14, "models", "weights")
    e = sampling.block_element(rng, 3)
    total = BlockElement.zero(3)
    for d in (-2, -1, 0, 1, 2):
        total = total + e.weight_part(d)
    assert total == e
    assert e.uplus_part() + e.uminus_part() + e.levi_part() == e


def test_torus_grading_by_bracket():
    """[t, e] scales each graded block by its weight, t the torus generator."""
    rng = sampling.rng_stream(15, "models", "grading")
    n = 3
    t = models.torus_generator(n)
    e = sampling.block_element(rng, n)
    com = models.bracket(t, e)
    for d in (-2, -1, 0, 1, 2):
        assert com.weight_part(d) == e.weight_part(d).scale(d)


def test_membership_known_members():
    assert models.is_minimal_member(embed_uplus((1, 0, 0), (0, 1, 0)))
    assert models.is_minimal_member(embed_uminus((2, 0), (0, 3)))
    assert models.is_minimal_member(embed_gl(3, ((0, 1, 0), (0, 0, 0), (0, 0, 0))))
    assert models.is_minimal_member(BlockElement.zero(2))


def test_membership_rejects_generic():
    rng = sampling.rng_stream(16, "models", "nonmember")
    e = sampling.block_element(rng, 3)
    assert not models.is_minimal_member(e)


def test_membership_needs_square_zero():
    # rank 2 but square nonzero: x and y not incident
    e = embed_uplus((1, 0), (1, 0))
    assert not models.is_minimal_member(e)


def test_gl_membership():
    assert models.is_minimal_gl_member(((0, 1), (0, 0)))
    assert not models.is_minimal_gl_member(((1, 0), (0, 0)))  # square != 0
    assert not models.is_minimal_gl_member(((0, 1, 0), (0, 0, 1), (0, 0, 0)))  # rank 2


def test_pair_to_nilpotent():
    theta = pair_to_nilpotent((1, 2, 0), (2, -1, 5))
    assert theta == ((F(2), F(-1), F(5)), (F(4), F(-2), F(10)), (F(0), F(0), F(0)))
    assert models.is_minimal_gl_member(theta)
    with pytest.raises(ValueError):
        pair_to_nilpotent((1, 0), (1, 0))


def test_flips_are_conjugations():
    rng = sampling.rng_stream(17, "models", "flips")
    for n in (2, 3):
        e = sampling.block_element(rng, n)
        g = models.flip_minus_matrix(n)
        conj = linalg.mat_mul(g, linalg.mat_mul(e.matrix(), g))
        assert models.flip_minus_blocks(e).matrix() == conj
        h = models.flip_odd_matrix(n)
        conj2 = linalg.mat_mul(h, linalg.mat_mul(e.matrix(), h))
        assert models.flip_odd_blocks(e).matrix() == conj2
        # both are involutions
        assert models.flip_minus_blocks(models.flip_minus_blocks(e)) == e
        assert models.flip_odd_blocks(models.flip_odd_blocks(e)) == e


# -- charts -------------------------------------------------------------------


def test_chart_a_membership_and_roundtrip():
    rng = sampling.rng_stream(18, "models", "chart-a")
    for n, i, j in ((2, 1, 2), (3, 2, 1), (4, 3, 4)):
        coords = sampling.chart_a_coords(rng, n, i, j)
        e = chart_a_pivot(n, i, j, coords)
        assert models.is_minimal_member(e)
        # free coordinates are read back off the element unchanged
        assert e.x[i - 1] == coords[f"x[{i}]"]
        assert e.v[i - 1] == coords[f"v[{i}]"]
        assert e.y[j - 1] == coords[f"y[{j}]"]
        assert e.u[j - 1] == coords[f"u[{j}]"]
        for k in range(1, n + 1):
            if k != i:
                assert e.A[i - 1][k - 1] == coords[f"a[{i},{k}]"]
                assert e.A[k - 1][j - 1] == coords[f"a[{k},{j}]"]
            if k not in (i, j):
                assert e.B[i - 1][k - 1] == coords[f"b[{i},{k}]"]
                assert e.C[j - 1][k - 1] == coords[f"c[{j},{k}]"]


def test_chart_a_trace_identities():
    """Pivot-product relations tie the trace of A to the chart coordinates."""
    rng = sampling.rng_stream(19, "models", "chart-a-trace")
    for n, i, j in ((2, 1, 2), (3, 1, 3), (4, 2, 3), (5, 4, 1)):
        coords = sampling.chart_a_coords(rng, n, i, j)
        e = chart_a_pivot(n, i, j, coords)
        aij = e.A[i - 1][j - 1]
        trace = e.trace_a()
        # diagonal product relation, one k at a time
        for k in range(1, n + 1):
            assert e.A[k - 1][k - 1] * aij == (
                e.A[i - 1][k - 1] * e.A[k - 1][j - 1]
                + e.B[i - 1][k - 1] * e.C[j - 1][k - 1]
            )
        # summed form
        total = sum(
            e.A[i - 1][k - 1] * e.A[k - 1][j - 1] + e.B[i - 1][k - 1] * e.C[j - 1][k - 1]
            for k in range(1, n + 1)
        )
        assert aij * trace == total
        # moment-pairing form over the free coordinates
        cross = sum(e.B[i - 1][k - 1] * e.C[j - 1][k - 1]
                    for k in range(1, n + 1) if k not in (i, j))
        assert -aij * trace == (
            e.x[i - 1] * e.u[j - 1] - e.v[i - 1] * e.y[j - 1] - 2 * cross
        )


def test_chart_a_shell_solve():
    rng = sampling.rng_stream(20, "models", "chart-a-shell")
    for n in (2, 3, 4):
        coords = sampling.chart_a_shell_coords(rng, n, 1, 2)
        e = chart_a_pivot(n, 1, 2, coords)
        assert e.trace_a() == 0
        assert models.is_minimal_member(e)


def test_chart_b_membership_and_trace():
    rng = sampling.rng_stream(21, "models", "chart-b")
    for n, i, j in ((2, 1, 2), (3, 2, 3), (4, 4, 1), (5, 2, 5)):
        coords = sampling.chart_b_coords(rng, n, i, j)
        e = chart_b_pivot(n, i, j, coords)
        assert models.is_minimal_member(e)
        assert e.trace_a() == 0
        assert e.B[i - 1][j - 1] == coords[f"b[{i},{j}]"]
        assert e.x[i - 1] == coords[f"x[{i}]"]
        assert e.v[j - 1] == coords[f"v[{j}]"]
        # skew-pair relation determined by the two pivot rows
        bij = e.B[i - 1][j - 1]
        for k in range(1, n + 1):
            for l in range(1, n + 1):
                assert e.C[k - 1][l - 1] * bij == (
                    e.A[i - 1][k - 1] * e.A[j - 1][l - 1]
                    - e.A[i - 1][l - 1] * e.A[j - 1][k - 1]
                )


def test_chart_b_levi_locus():
    rng = sampling.rng_stream(22, "models", "chart-b-levi")
    for n in (2, 3, 4, 5):
        e = chart_b_pivot(n, 1, 2, sampling.chart_b_levi_coords(rng, n, 1, 2))
        assert all(t == 0 for t in e.x + e.y + e.u + e.v)
        assert e.w == 0
        assert models.is_minimal_member(e)
        assert e.trace_a() == 0


def test_chart_u_membership_and_identities():
    rng = sampling.rng_stream(23, "models", "chart-u")
    for n, i in ((2, 1), (3, 2), (4, 4)):
        coords = sampling.chart_u_coords(rng, n, i)
        e = chart_u_pivot(n, i, coords)
        assert models.is_minimal_member(e)
        # u . v = 0 always holds on the closure
        assert sum(a * b for a, b in zip(e.u, e.v)) == 0
        # trace identity through the pivot
        ui = e.u[i - 1]
        assert ui * e.trace_a() == sum(
            e.u[k - 1] * e.A[k - 1][i - 1] + e.v[k - 1] * e.C[i - 1][k - 1]
            for k in range(1, n + 1)
        )


def test_chart_domain_errors():
    rng = sampling.rng_stream(24, "models", "chart-errors")
    coords = sampling.chart_a_coords(rng, 3, 1, 2)
    coords["a[1,2]"] = F(0)
    with pytest.raises(ChartDomainError):
        chart_a_pivot(3, 1, 2, coords)
    with pytest.raises(ChartDomainError):
        chart_a_pivot(3, 1, 1, {})
    with pytest.raises(ChartDomainError):
        chart_a_pivot(3, 1, 2, {"x[1]": 1})
    good = sampling.chart_u_coords(rng, 3, 1)
    good["u[1]"] = F(0)
    with pytest.raises(ChartDomainError):
        chart_u_pivot(3, 1, good)


def test_chart_point_dispatch():
    rng = sampling.rng_stream(25, "models", "chart-point")
    coords = sampling.chart_b_coords(rng, 3, 1, 3)
    point = ChartPoint(chart="b-pivot", n=3, i=1, j=3, coords=coords)
    assert point.element() == chart_b_pivot(3, 1, 3, coords)
    assert set(point.names()) == set(coords)


def test_shell_samplers():
    rng = sampling.rng_stream(26, "models", "samplers")
    for n in (2, 3, 4):
        e = sampling.shell_point(rng, n)
        assert models.is_minimal_member(e) and e.trace_a() == 0
        assert any(t != 0 for t in e.x) and any(t != 0 for t in e.y)
        m = sampling.minus_generic_shell_point(rng, n)
        assert models.is_minimal_member(m) and m.trace_a() == 0
        z = sampling.order_two_point(rng, n)
        assert models.is_minimal_member(z) and z.trace_a() == 0
        t = sampling.torus_fixed_point(rng, n)
        assert models.is_minimal_member(t) and t.trace_a() == 0
