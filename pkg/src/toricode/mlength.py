"""Minkowski length of lattice polytopes and the census of small polygons.

The length L(P) is the largest number of positive-dimensional summands
whose Minkowski sum fits in P up to translation; primitive segments
suffice as summands, so the search is a depth-first walk over
non-decreasing multisets of primitive direction vectors of P, pruned by
exact containment of the partial zonotope.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

from toricode.lattice import (
    LatticePolytope,
    Point,
    canonical_form,
    contains_translate,
    convex_hull,
    direction_vectors,
    lattice_point_count_2d,
    minkowski_sum,
    segment,
)


@dataclass(frozen=True)
class Decomposition:
    """A multiset of positive-dimensional summands plus the placing translation."""

    summands: tuple[LatticePolytope, ...]
    translation: Point

    def verify(self, target: LatticePolytope) -> bool:
        """Re-check the defining property: sum of summands + t inside target."""
        if any(s.dim == 0 for s in self.summands) and self.summands:
            return False
        if not self.summands:
            return target.contains_lattice_point(self.translation)
        total = self.summands[0]
        for s in self.summands[1:]:
            total = minkowski_sum(total, s)
        return all(target.contains_lattice_point(tuple(a + b for a, b in zip(v, self.translation)))
                   for v in total.vertices)


@dataclass(frozen=True)
class MLResult:
    """L(P) with a segments-only witness; the exceptional flag is optional."""

    length: int
    witness: Decomposition
    has_exceptional_witness: bool | None = None


def minkowski_length(P: LatticePolytope, check_exceptional: bool = False) -> MLResult:
    """Exact L(P) by depth-first search over primitive segment summands."""
    m = P.ambient_dim
    origin = tuple(0 for _ in range(m))
    if P.dim == 0:
        witness = Decomposition(summands=(), translation=P.vertices[0])
        flag = False if (check_exceptional and m == 2) else None
        return MLResult(length=0, witness=witness, has_exceptional_witness=flag)

    dirs = sorted(direction_vectors(P))
    segs = [segment(v) for v in dirs]
    best_chain: list[int] = []
    best_t: Point = origin

    def dfs(zono: LatticePolytope, start: int, chain: list[int]):
        nonlocal best_chain, best_t
        for i in range(start, len(dirs)):
            bigger = minkowski_sum(zono, segs[i])
            t = contains_translate(bigger, P)
            if t is None:
                continue
            chain.append(i)
            if len(chain) > len(best_chain):
                best_chain = chain.copy()
                best_t = t
            dfs(bigger, i, chain)
            chain.pop()

    dfs(convex_hull([origin]), 0, [])
    witness = Decomposition(summands=tuple(segs[i] for i in best_chain), translation=best_t)
    result = MLResult(length=len(best_chain), witness=witness)
    if check_exceptional and m == 2:
        result = MLResult(length=result.length, witness=witness,
                          has_exceptional_witness=has_exceptional_in_some_maximal(P, result.length))
    return result


def is_strongly_indecomposable(P: LatticePolytope) -> bool:
    """True when L(P) = 1; undefined (error) for a single point."""
    if P.dim == 0:
        raise ValueError("strong indecomposability needs a positive-dimensional polytope")
    return minkowski_length(P).length == 1


def _exceptional_subtriangles(P: LatticePolytope):
    """All exceptional triangles whose lattice points lie in P.

    A 3-subset spans one exactly when the hull is 2-dimensional with all
    edges primitive and exactly four lattice points (the fourth is then
    interior).
    """
    pts = list(P.lattice_points())
    seen = set()
    for combo in itertools.combinations(pts, 3):
        (ax, ay), (bx, by), (cx, cy) = combo
        if (bx - ax) * (cy - ay) - (by - ay) * (cx - ax) == 0:
            continue
        edges_primitive = all(
            gcd(abs(p[0] - q[0]), abs(p[1] - q[1])) == 1
            for p, q in itertools.combinations(combo, 2))
        if not edges_primitive:
            continue
        T = convex_hull(combo)
        if T.num_lattice_points() != 4:
            continue
        if T.vertices in seen:
            continue
        seen.add(T.vertices)
        yield T


def has_exceptional_in_some_maximal(P: LatticePolytope, length: int | None = None) -> bool:
    """Does some maximal decomposition of P contain an exceptional triangle?

    Forces one exceptional triangle found inside P as a summand and asks
    the segment search for the remaining L(P) - 1 summands.
    """
    if P.ambient_dim != 2:
        raise ValueError("exceptional-triangle analysis is only defined for m = 2")
    L = minkowski_length(P).length if length is None else length
    if L == 0:
        return False
    dirs = sorted(direction_vectors(P))
    segs = [segment(v) for v in dirs]

    def can_extend(zono: LatticePolytope, start: int, remaining: int) -> bool:
        if remaining == 0:
            return True
        for i in range(start, len(dirs)):
            bigger = minkowski_sum(zono, segs[i])
            if contains_translate(bigger, P) is None:
                continue
            if can_extend(bigger, i, remaining - 1):
                return True
        return False

    for T in _exceptional_subtriangles(P):
        if L == 1:
            return True
        if can_extend(T, 0, L - 1):
            return True
    return False


# --- census of small polygons ---------------------------------------------


def classify_polygons_by_length(target_length: int, max_points: int,
                                margin: int | None = None) -> list[LatticePolytope]:
    """All AGL(2, Z)-classes of polygons (segments included) with the given
    Minkowski length and at most ``max_points`` lattice points, as canonical
    forms.

    Classes are grown one lattice point at a time: every class with N+1
    points arises from a class with N points by re-adding a removed
    vertex, and subpolytopes never have larger length, so growth can be
    pruned at ``target_length``.  Candidate points range over a window
    wide enough that any equivalent placement of the next point has a
    representative inside it (hulls with few lattice points cannot reach
    far from their base: the lattice point count caps the area).
    """
    if target_length not in (1, 2, 3):
        raise ValueError("classification supports target lengths 1, 2, 3 only")
    if max_points < 1:
        raise ValueError("max_points must be positive")
    window = margin if margin is not None else 2 * max_points + 2

    point_class = canonical_form(convex_hull([(0, 0)]))
    seen: dict[tuple, tuple[LatticePolytope, int]] = {
        point_class.vertices: (point_class, 0)}
    frontier = [point_class]
    level = 1
    while frontier and level < max_points:
        fresh: dict[tuple, tuple[LatticePolytope, int]] = {}
        for rep in frontier:
            lo, hi = rep.bounding_box()
            pts_set = rep.lattice_point_set()
            for zx in range(lo[0] - window, hi[0] + window + 1):
                for zy in range(lo[1] - window, hi[1] + window + 1):
                    z = (zx, zy)
                    if z in pts_set:
                        continue
                    Q = convex_hull(rep.vertices + (z,))
                    if lattice_point_count_2d(Q) != level + 1:
                        continue
                    C = canonical_form(Q)
                    key = C.vertices
                    if key in seen or key in fresh:
                        continue
                    L = minkowski_length(C).length
                    if L > target_length:
                        continue
                    fresh[key] = (C, L)
        seen.update(fresh)
        frontier = [poly for poly, _ in fresh.values()]
        level += 1

    matches = [poly for poly, L in seen.values()
               if L == target_length and poly.num_lattice_points() <= max_points]
    return sorted(matches, key=lambda p: (p.num_lattice_points(), p.vertices))


def max_points_for_length(length: int) -> int:
    """Largest lattice point count among polygon classes of the given length.

    The search universe is capped by the pigeonhole bound (length+1)^2
    on the lattice point count.
    """
    if length not in (1, 2, 3):
        raise ValueError("supported lengths are 1, 2, 3")
    classes = classify_polygons_by_length(length, (length + 1) ** 2)
    if not classes:
        raise AssertionError("census unexpectedly empty")
    return max(p.num_lattice_points() for p in classes)
