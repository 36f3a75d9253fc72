#!/usr/bin/env python3
"""Tour of the block matrix model: coordinates, membership, charts, flips.

Builds elements of the orbit model in block coordinates
(w, x, y, u, v, A, B, C), checks the membership predicate (square zero,
rank at most two, trace-free A), and shows how pivot charts and the two
block flips move points around, all in exact rational arithmetic.
"""

from fractions import Fraction

from orbitkit import models, reduction, sampling


def show(title, e):
    coords = {name: val for name, val in models.to_coordinates(e).items() if val}
    print(f"  {title}: n={e.n}, nonzero coords {coords}")


def main():
    n = 3
    rng = sampling.rng_stream(2026, "demo-block-model")

    print("== a generic member from the u-pivot chart ==")
    coords = sampling.chart_u_coords(rng, n, 1)
    e = models.chart_u_pivot(n, 1, coords)
    show("chart point", e)
    m = e.matrix()
    sq = [[sum(m[r][k] * m[k][c] for k in range(2 * n + 2))
           for c in range(2 * n + 2)] for r in range(2 * n + 2)]
    print(f"  square is zero: {all(all(t == 0 for t in row) for row in sq)}")
    print(f"  member of the orbit model: {models.is_minimal_member(e)}")
    print(f"  trace moment tr A = {e.trace_a()} (zero means the point is on the shell)")

    print("\n== weight decomposition under the scaling action ==")
    for d in (-2, -1, 0, 1, 2):
        part = e.weight_part(d)
        blocks = [b for b in ("w", "x", "y", "u", "v", "A", "B", "C")
                  if not part.block_is_zero(b)]
        print(f"  weight {d:+d}: blocks {blocks or ['-']}")
    lam = Fraction(3, 2)
    acted = reduction.cstar_act(lam, e)
    rebuilt = sum((e.weight_part(d).scale(lam ** d) for d in (-2, -1, 0, 1, 2)),
                  models.BlockElement.zero(n))
    print(f"  scaling by {lam} equals the graded rescale: {acted == rebuilt}")

    print("\n== the two block flips are involutions ==")
    for flip in (models.flip_minus_blocks, models.flip_odd_blocks):
        image = flip(e)
        print(f"  {flip.__name__}: member={models.is_minimal_member(image)}, "
              f"involution={flip(image) == e}")

    print("\n== the outer-product model in size n ==")
    x, y = sampling.quadric_pair(rng, n)
    theta = models.pair_to_nilpotent(x, y)
    print(f"  x = {[str(t) for t in x]}, y = {[str(t) for t in y]}, "
          f"x.y = {sum(a * b for a, b in zip(x, y))}")
    print(f"  theta = x y^T is square-zero rank-one: "
          f"{all(sum(theta[r][k] * theta[k][c] for k in range(n)) == 0 for r in range(n) for c in range(n))}")
    print(f"  embedded plus pair reproduces (x, y): "
          f"{models.embed_uplus(x, y).x == tuple(x)}")


if __name__ == "__main__":
    main()
