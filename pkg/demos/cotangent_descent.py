#!/usr/bin/env python3
"""Pushing a cotangent covector forward onto the shell, exactly.

A rank-one square-zero matrix theta = x y^T carries a (2n-2)-dimensional
orbit tangent space.  A covector psi on that space determines a unique shell
point over the plus pair (x, y): its pairing with every degree-zero generator
reproduces psi applied to the pushed-forward tangent vector.  The demo builds
the point, verifies the defining equations, and shows equivariance,
injectivity, and the zero-covector section.
"""

from fractions import Fraction

from orbitkit import linalg, models, reduction, sampling, vgit


def main():
    n = 3
    rng = sampling.rng_stream(2026, "demo-descent")

    x, y = sampling.quadric_pair(rng, n)
    theta = models.pair_to_nilpotent(x, y)
    tangent = vgit.sl_tangent_basis(theta)
    print(f"== covector at theta = x y^T, n={n} ==")
    print(f"  x = {[str(t) for t in x]}, y = {[str(t) for t in y]}")
    print(f"  orbit tangent dimension {len(tangent)} (= 2n - 2)")

    psi = [sampling.rational(rng) for _ in tangent]
    o = vgit.alpha_pushforward(x, y, psi)
    print(f"\n  covector values {[str(t) for t in psi]}")
    print(f"  image is on the shell: {reduction.is_shell_member(o)}")
    print(f"  image lies over the pair: {o.x == tuple(x) and o.y == tuple(y)}")
    print(f"  image is plus-semistable: {vgit.is_semistable(o, 'plus')}")

    print("\n== the defining equations, checked independently ==")
    worst = []
    for name, l in models.levi_basis(n):
        moved = models.bracket(l, o)
        dq = vgit.pair_differential(x, y, moved.x, moved.y)
        coeffs = linalg.solve_exact(
            [list(col) for col in zip(*[[t for row in m for t in row] for m in tangent])],
            [t for row in dq for t in row])
        lhs = vgit.symplectic_trace(o, l)
        rhs = sum(c * p for c, p in zip(coeffs, psi))
        worst.append(lhs - rhs)
    print(f"  kappa(o, l) minus psi(push(l)) over all degree-zero l: "
          f"{sorted(set(worst))} (exact zeros)")

    print("\n== equivariance, injectivity, zero section ==")
    lam = Fraction(5, 2)
    scaled = vgit.alpha_pushforward([lam * t for t in x], [t / lam for t in y], psi)
    print(f"  rescaling the pair by {lam} rescales the image: "
          f"{scaled == reduction.cstar_act(lam, o)}")
    psi2 = list(psi)
    psi2[0] += 1
    o2 = vgit.alpha_pushforward(x, y, psi2)
    print(f"  different covector, inequivalent image: "
          f"{o2 != o and reduction.orbit_equivalent(o, o2) is None}")
    zero = vgit.alpha_pushforward(x, y, [Fraction(0)] * len(tangent))
    print(f"  zero covector returns the bare plus embedding: "
          f"{zero == models.embed_uplus(x, y)}")


if __name__ == "__main__":
    main()
