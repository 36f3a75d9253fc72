"""Deterministic random data for property checks.

Every stream is keyed by ``sha256(f"{seed}|{label}|{label}|...")``, so each
(check, sample index) pair owns an independent generator: adding checks or
reordering suites never shifts the values another check draws.

Rationals are drawn with small numerators and denominators to keep exact
arithmetic fast; open conditions (nonzero pivots, nonzero vectors) are enforced
by bounded rejection resampling.
"""

from __future__ import annotations

import hashlib
import random
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from . import models

_MAX_RESAMPLE = 200


def rng_stream(seed: int, *labels) -> random.Random:
    key = "|".join([str(seed), *(str(part) for part in labels)])
    digest = hashlib.sha256(key.encode("utf-8")).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def rational(rng: random.Random, low: int = -9, high: int = 9, max_den: int = 4) -> Fraction:
    return Fraction(rng.randint(low, high), rng.randint(1, max_den))


def rational_nonzero(rng: random.Random, low: int = -9, high: int = 9, max_den: int = 4) -> Fraction:
    for _ in range(_MAX_RESAMPLE):
        value = rational(rng, low, high, max_den)
        if value != 0:
            return value
    raise RuntimeError("resampling failed to produce a nonzero rational")


def rational_vector(rng: random.Random, n: int) -> Tuple[Fraction, ...]:
    return tuple(rational(rng) for _ in range(n))


def nonzero_vector(rng: random.Random, n: int) -> Tuple[Fraction, ...]:
    for _ in range(_MAX_RESAMPLE):
        vec = rational_vector(rng, n)
        if any(t != 0 for t in vec):
            return vec
    raise RuntimeError("resampling failed to produce a nonzero vector")


def square_matrix(rng: random.Random, n: int) -> Tuple[Tuple[Fraction, ...], ...]:
    return tuple(rational_vector(rng, n) for _ in range(n))


def skew_matrix(rng: random.Random, n: int) -> Tuple[Tuple[Fraction, ...], ...]:
    rows = [[Fraction(0)] * n for _ in range(n)]
    for r in range(n):
        for c in range(r + 1, n):
            val = rational(rng)
            rows[r][c] = val
            rows[c][r] = -val
    return tuple(tuple(row) for row in rows)


def block_element(rng: random.Random, n: int) -> models.BlockElement:
    """A generic element of so(2n+2); almost never in the orbit closure."""
    return models.BlockElement(
        n=n,
        w=rational(rng),
        x=rational_vector(rng, n),
        y=rational_vector(rng, n),
        u=rational_vector(rng, n),
        v=rational_vector(rng, n),
        A=square_matrix(rng, n),
        B=skew_matrix(rng, n),
        C=skew_matrix(rng, n),
    )


def quadric_pair(rng: random.Random, n: int) -> Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]:
    """(x, y) with x . y = 0 and both nonzero: a regular incidence pair."""
    for _ in range(_MAX_RESAMPLE):
        x = nonzero_vector(rng, n)
        raw = rational_vector(rng, n)
        xx = sum(t * t for t in x)
        xy = sum(a * b for a, b in zip(x, raw))
        y = tuple(b - xy * a / xx for a, b in zip(x, raw))
        if any(t != 0 for t in y):
            return x, y
    raise RuntimeError("resampling failed to produce a regular incidence pair")


def isotropic_pair_with_pivot(rng: random.Random, n: int, i: int
                              ) -> Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]:
    """(u, v) with u . v = 0, u_i != 0 and v != 0 (base point for minus-side fibers)."""
    for _ in range(_MAX_RESAMPLE):
        u = rational_vector(rng, n)
        if u[i - 1] == 0:
            continue
        raw = rational_vector(rng, n)
        uu = sum(t * t for t in u)
        uv = sum(a * b for a, b in zip(u, raw))
        v = tuple(b - uv * a / uu for a, b in zip(u, raw))
        if any(t != 0 for t in v):
            return u, v
    raise RuntimeError("resampling failed to produce an isotropic pair")


def rank_one_nilpotent(rng: random.Random, n: int) -> Tuple[Tuple[Fraction, ...], ...]:
    """A nonzero rank-one square-zero matrix sigma^T tau with sigma . tau = 0."""
    sigma, tau = quadric_pair(rng, n)
    return models.pair_to_nilpotent(sigma, tau)


# ---------------------------------------------------------------------------
# Chart coordinate dictionaries
# ---------------------------------------------------------------------------


def _fill(rng: random.Random, names: Sequence[str], nonzero: Sequence[str] = ()) -> Dict[str, Fraction]:
    coords = {}
    for name in names:
        coords[name] = rational_nonzero(rng) if name in nonzero else rational(rng)
    return coords


def chart_a_coords(rng: random.Random, n: int, i: int, j: int) -> Dict[str, Fraction]:
    names = models.chart_a_pivot_names(n, i, j)
    return _fill(rng, names, nonzero=(f"a[{i},{j}]",))


def chart_a_shell_coords(rng: random.Random, n: int, i: int, j: int) -> Dict[str, Fraction]:
    """Chart coordinates adjusted so the resulting point has trace A = 0.

    Solves the moment-pairing relation for u_j, which is possible on the open
    locus x_i != 0.
    """
    coords = chart_a_coords(rng, n, i, j)
    coords[f"x[{i}]"] = rational_nonzero(rng)
    others = [k for k in range(1, n + 1) if k not in (i, j)]
    cross = sum(coords[f"b[{i},{k}]"] * coords[f"c[{j},{k}]"] for k in others)
    coords[f"u[{j}]"] = (coords[f"v[{i}]"] * coords[f"y[{j}]"] + 2 * cross) / coords[f"x[{i}]"]
    return coords


def chart_b_coords(rng: random.Random, n: int, i: int, j: int) -> Dict[str, Fraction]:
    names = models.chart_b_pivot_names(n, i, j)
    return _fill(rng, names, nonzero=(f"b[{i},{j}]",))


def chart_b_levi_coords(rng: random.Random, n: int, i: int, j: int) -> Dict[str, Fraction]:
    """b-pivot coordinates with the odd strip zeroed: x = v = 0 on the output."""
    coords = chart_b_coords(rng, n, i, j)
    for name in (f"x[{i}]", f"x[{j}]", f"v[{i}]", f"v[{j}]"):
        coords[name] = Fraction(0)
    return coords


def chart_u_coords(rng: random.Random, n: int, i: int) -> Dict[str, Fraction]:
    names = models.chart_u_pivot_names(n, i)
    return _fill(rng, names, nonzero=(f"u[{i}]",))


# ---------------------------------------------------------------------------
# Shell points by stratum
# ---------------------------------------------------------------------------


def shell_point(rng: random.Random, n: int) -> models.BlockElement:
    """Generic trace-zero shell point with x and y nonzero (closed orbit)."""
    i = rng.randint(1, n)
    j = rng.randint(1, n)
    while j == i:
        j = rng.randint(1, n)
    coords = chart_a_shell_coords(rng, n, i, j)
    coords[f"y[{j}]"] = rational_nonzero(rng)
    cross = sum(coords[f"b[{i},{k}]"] * coords[f"c[{j},{k}]"]
                for k in range(1, n + 1) if k not in (i, j))
    coords[f"u[{j}]"] = (coords[f"v[{i}]"] * coords[f"y[{j}]"] + 2 * cross) / coords[f"x[{i}]"]
    return models.chart_a_pivot(n, i, j, coords)


def minus_generic_shell_point(rng: random.Random, n: int) -> models.BlockElement:
    """Shell point supported on the minus blocks: u, v nonzero, x = y = 0."""
    u, v = quadric_pair(rng, n)
    return models.embed_uminus(u, v)


def order_two_point(rng: random.Random, n: int) -> models.BlockElement:
    """Shell point with all odd blocks zero and (B, C) != 0."""
    i = rng.randint(1, n)
    j = rng.randint(1, n)
    while j == i:
        j = rng.randint(1, n)
    return models.chart_b_pivot(n, i, j, chart_b_levi_coords(rng, n, i, j))


def torus_fixed_point(rng: random.Random, n: int) -> models.BlockElement:
    """Shell point supported on A alone: a nonzero square-zero rank-one block."""
    return models.embed_gl(n, rank_one_nilpotent(rng, n))


def uminus_element(rng: random.Random, n: int) -> models.BlockElement:
    return models.embed_uminus(rational_vector(rng, n), rational_vector(rng, n))
