"""Builders for structured configurations: products, pyramids, dilates,
the strongly-indecomposable tower, nested-fiber families, and point files.
"""

from __future__ import annotations

import itertools
from pathlib import Path

from toricode.lattice import (
    LatticeConfiguration,
    LatticePolytope,
    Point,
    convex_hull,
    direction_vectors,
    lattice_length,
    parse_points,
    primitive,
)

# Exceptional triangle skewed by [[1, 2], [0, 1]] so that no pair of its
# lattice points differs in the second coordinate only; the tower step
# below requires all direction vectors to have nonzero first coordinate.
_TOWER_BASE = ((0, 0), (4, 1), (5, 2))


def product_config(S1, S2) -> LatticeConfiguration:
    """Cartesian product of two configurations, in the sum of their dimensions."""
    a = LatticeConfiguration.of(S1) if not isinstance(S1, LatticeConfiguration) else S1
    b = LatticeConfiguration.of(S2) if not isinstance(S2, LatticeConfiguration) else S2
    return LatticeConfiguration.of([p + r for p in a for r in b], dim=a.dim + b.dim)


def pyramid(Q: LatticePolytope) -> LatticePolytope:
    """Pyramid over Q: the hull of Q x {0} and the new unit vertex."""
    if Q.dim < 1:
        raise ValueError("pyramid over a single point is not defined")
    m = Q.ambient_dim
    apex = tuple(0 for _ in range(m)) + (1,)
    return convex_hull([v + (0,) for v in Q.vertices] + [apex])


def dilate(P: LatticePolytope, k: int) -> LatticePolytope:
    """k-fold dilate of P; k = 0 collapses to the origin."""
    if k < 0:
        raise ValueError("dilation factor must be nonnegative")
    if k == 0:
        return convex_hull([tuple(0 for _ in range(P.ambient_dim))])
    return convex_hull([tuple(k * c for c in v) for v in P.vertices])


def _first_coordinates(P: LatticePolytope) -> list[int]:
    """Canonical-sign first coordinates of all direction vectors of P."""
    return [v[0] for v in direction_vectors(P)]


def _shear_fixing_first(P: LatticePolytope) -> LatticePolytope:
    """Apply x1 -> x1 + b.x_rest so no direction vector has zero first coordinate."""
    m = P.ambient_dim
    dirs = sorted(direction_vectors(P))
    if all(v[0] != 0 for v in dirs):
        return P
    for radius in itertools.count(1):
        for b in itertools.product(range(-radius, radius + 1), repeat=m - 1):
            if max(abs(x) for x in b) != radius:
                continue
            if all(v[0] + sum(bj * vj for bj, vj in zip(b, v[1:])) != 0 for v in dirs):
                return convex_hull([
                    (v[0] + sum(bj * vj for bj, vj in zip(b, v[1:])),) + v[1:]
                    for v in P.vertices])


def sind_tower(m: int) -> LatticePolytope:
    """A strongly indecomposable polytope in Z^m with exactly 2^m lattice points.

    Stacks P x {0} against alpha(P) x {1}, where alpha = [[a, 1], [a-1, 1]]
    on the first two coordinates with the smallest a >= 2 that pushes every
    direction vector's first coordinate beyond the maximum in P; the
    choice is verified constructively, never assumed.
    """
    if not 2 <= m <= 4:
        raise ValueError("tower construction supports 2 <= m <= 4")
    P = convex_hull(_TOWER_BASE)
    for dim in range(2, m):
        P = _shear_fixing_first(P)
        k = max(_first_coordinates(P))
        for a in itertools.count(2):
            alpha_rows = [[a, 1] + [0] * (dim - 2), [a - 1, 1] + [0] * (dim - 2)]
            alpha_rows += [[0, 0] + [int(i == j) for j in range(dim - 2)]
                           for i in range(dim - 2)]
            image = convex_hull([tuple(sum(r[i] * v[i] for i in range(dim)) for r in alpha_rows)
                                 for v in P.vertices])
            if min(_first_coordinates(image)) > k:
                break
        P = convex_hull([v + (0,) for v in P.vertices] +
                        [v + (1,) for v in image.vertices])
        pts = P.lattice_points()
        if len(pts) != 2 ** (dim + 1):
            raise AssertionError(f"tower level {dim + 1} has {len(pts)} lattice points")
        residues = {tuple(c % 2 for c in p) for p in pts}
        if len(residues) != len(pts):
            raise AssertionError("tower lattice points must be distinct mod 2")
    return P


def nested_fiber_family(levels: int, base, step_segment) -> LatticeConfiguration:
    """Stack greedy nested fibers: S_i is the largest set with
    S_i + {a, b} in S_{i-1}, placed at height i.

    Errors out if a fiber empties before reaching the requested level.
    """
    if levels < 0:
        raise ValueError("levels must be nonnegative")
    fibers = [set(tuple(p) for p in base)]
    if not fibers[0]:
        raise ValueError("base configuration must be nonempty")
    a, b = (tuple(int(c) for c in p) for p in step_segment)
    step = tuple(x - y for x, y in zip(b, a))
    if not any(step):
        raise ValueError("segment endpoints must differ")
    if lattice_length(step) != 1:
        raise ValueError("step segment must be primitive")
    for i in range(1, levels + 1):
        prev = fibers[-1]
        nxt = {tuple(c - ac for c, ac in zip(s, a)) for s in prev} \
            & {tuple(c - bc for c, bc in zip(s, b)) for s in prev}
        if not nxt:
            raise ValueError(f"nested fiber {i} is empty; base too small for {levels} levels")
        fibers.append(nxt)
    stacked = [p + (i,) for i, fiber in enumerate(fibers) for p in fiber]
    return LatticeConfiguration.of(stacked)


def load_configuration(path) -> LatticeConfiguration:
    """Read a point file (one point per line; '#' comments) into a configuration."""
    text = Path(path).read_text(encoding="utf-8")
    pts = parse_points(text)
    if not pts:
        raise ValueError(f"{path}: empty configuration")
    return LatticeConfiguration.of(pts)
