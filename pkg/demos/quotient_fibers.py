#!/usr/bin/env python3
"""Fibers of the proj-to-affine quotient map, certified dimension by dimension.

Over a nonzero scaling-fixed point the fiber is an n-dimensional weighted
cone; over the vertex it breaks into two components of dimension 2n - 1
crossing along the pure-two-block locus; over the minus cone the plus-free
graph fibers by two linear forms and a quadric.  The boundary of the
generic-plus locus has codimension two (three divisors at n = 2).
"""

from orbitkit import certificates, models, reduction, sampling, vgit


def main():
    n = 3
    rng = sampling.rng_stream(2026, "demo-fibers")

    print(f"== fiber over a nonzero scaling-fixed point (n={n}) ==")
    a0 = sampling.rank_one_nilpotent(rng, n)
    spot = next((i, j) for i in range(1, n + 1) for j in range(1, n + 1)
                if i != j and a0[i - 1][j - 1] != 0)
    fiber = vgit.exceptional_fiber(models.embed_gl(n, a0), *spot)
    print(f"  parameters {list(fiber.param_names)}")
    print(f"  weights    {list(fiber.param_weights)} (a cone with weights 1,1,2,...)")
    values = {name: sampling.rational_nonzero(rng) for name in fiber.param_names}
    cert = certificates.certify_parametrization(fiber.parametrization(), values)
    print(f"  certified dimension {cert.dimension} (= n)")
    lam = sampling.rational_nonzero(rng)
    point = fiber.point(values)
    scaled = fiber.point(fiber.scaled_params(lam, values))
    print(f"  equivariance under scaling by {lam}: "
          f"{scaled == reduction.cstar_act(lam, point)}")

    print("\n== the two components over the vertex ==")
    for kind in ("x", "v"):
        param = vgit.central_component_parametrization(n, 1, kind)
        values = {name: sampling.rational(rng) for name in param.param_names}
        values["odd[1]"] = sampling.rational_nonzero(rng)
        cert = certificates.certify_parametrization(param, values)
        e = param.mapping(values)
        print(f"  component {kind!r}: dimension {cert.dimension} (= 2n - 1), "
              f"classified back as {vgit.central_member_component(e)!r}")
    curve = vgit.central_crossing_curve(n, (1, 0, 0), (0, 1, 0), 0)
    print(f"  crossing curve at t=0 lands on the intersection: "
          f"{vgit.central_member_component(curve)!r}")

    print("\n== fibers over the minus cone ==")
    u, v = sampling.isotropic_pair_with_pivot(rng, n, 1)
    for label, (bu, bv) in (("mixed", (u, v)),
                            ("u-only", (sampling.nonzero_vector(rng, n), (0,) * n)),
                            ("v-only", ((0,) * n, sampling.nonzero_vector(rng, n)))):
        report = vgit.minus_fiber_report(n, bu, bv)
        print(f"  {label:7s} base: fiber dim {report.fiber_dim}, "
              f"quadric corank {report.quadric_corank}, "
              f"singular locus dim {report.singular_dim}")

    print("\n== plus-free graph and the boundary ==")
    for size in (2, 3, 4):
        graph = vgit.minus_graph_dimension(size, seed=2026)
        boundary = vgit.boundary_report(size, seed=2026)
        dims = sorted(c.dimension for c in boundary.components)
        print(f"  n={size}: graph dimension {graph.dimension}, boundary components "
              f"{dims}, codimension {boundary.codimension}")
    print("  (three dimension-4 divisors at n=2; codimension two from n=3 on)")


if __name__ == "__main__":
    main()
