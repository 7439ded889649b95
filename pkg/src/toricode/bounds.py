"""Closed-form distance formulas and bounds, with exact evaluation harnesses.

Every function returns a BoundReport carrying the integer value, whether
the statement is an equality or a one-sided bound, an optional validity
caveat, and a witness of how the value was reached.  Bounds that need
exact fiber or projection distances compute them with the exhaustive
engine, so reported values are never estimates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import isqrt

from toricode.codes import build_code, min_distance_exhaustive
from toricode.gf import make_field
from toricode.lattice import LatticeConfiguration, LatticePolytope, primitive
from toricode.mlength import has_exceptional_in_some_maximal, minkowski_length


@dataclass(frozen=True)
class BoundReport:
    """An evaluated formula: value, its logical strength, caveats, witness."""

    value: int
    kind: str  # equality | lower | upper | check
    validity_caveat: str | None = None
    witness: object = None


def exact_distance(points, q: int, dim: int | None = None) -> int:
    """Exact minimum distance of the generalized toric code of the points.

    Zero-dimensional configurations (empty coordinate tuples) have
    distance 1: the block length is (q-1)^0 = 1 and the code is the full
    line.
    """
    pts = [tuple(p) for p in points]
    if not pts:
        raise ValueError("distance of an empty configuration is undefined")
    m = dim if dim is not None else len(pts[0])
    if m == 0:
        return 1
    code = build_code(pts, make_field(q), m)
    return min_distance_exhaustive(code).d


def simplex_distance(ell: int, m: int, q: int) -> BoundReport:
    """Distance of the code of the standard m-simplex with side ell."""
    if ell < 0 or ell > q - 2:
        raise ValueError(f"side {ell} does not fit the torus cube for q={q}")
    value = (q - 1) ** (m - 1) * (q - 1 - ell)
    caveat = "degenerate: the dilated simplex is a single point" if ell == 0 else None
    return BoundReport(value=value, kind="equality", validity_caveat=caveat)


def box_distance(lengths, q: int) -> BoundReport:
    """Distance of the code of the box [0, l_1] x ... x [0, l_m]."""
    ls = [int(x) for x in lengths]
    if not ls:
        raise ValueError("box needs at least one side length")
    for l in ls:
        if l < 0 or l > q - 2:
            raise ValueError(f"side {l} does not fit the torus cube for q={q}")
    value = 1
    for l in ls:
        value *= (q - 1 - l)
    caveat = "degenerate: the box is a single point" if all(l == 0 for l in ls) else None
    return BoundReport(value=value, kind="equality", validity_caveat=caveat)


def product_distance(d_left: int, d_right: int) -> BoundReport:
    """Distance of a product configuration from its factor distances."""
    if d_left < 1 or d_right < 1:
        raise ValueError("factor distances must be positive")
    return BoundReport(value=d_left * d_right, kind="equality")


def pyramid_distance(d_base: int, q: int) -> BoundReport:
    """Distance of the code of a (dilated) pyramid from the base distance."""
    if d_base < 1:
        raise ValueError("base distance must be positive")
    return BoundReport(value=(q - 1) * d_base, kind="equality")


def _ceil_2_sqrt_minus_1(q: int) -> int:
    """ceil(2 sqrt(q) - 1), exactly."""
    s = isqrt(4 * q)
    ceil_2rq = s if s * s == 4 * q else s + 1
    return ceil_2rq - 1


def mlength_lower_bound(P: LatticePolytope, q: int) -> BoundReport:
    """Lower bound (q-1)(q-1-L) on the polygon code distance, with the
    curve-counting correction subtracted when some maximal decomposition
    contains an exceptional triangle.

    The correction is rounded up (the bound down), keeping the bound
    valid.  The bound itself only holds for q at least a threshold
    alpha(P) that this library does not compute; the caveat says so.
    """
    if P.ambient_dim != 2:
        raise ValueError("the length bound applies to lattice polygons only")
    L = minkowski_length(P).length
    if L >= q - 1:
        raise ValueError(f"needs L < q-1, got L={L} with q={q}")
    exceptional = has_exceptional_in_some_maximal(P, L)
    value = (q - 1) * (q - 1 - L)
    if exceptional:
        value -= _ceil_2_sqrt_minus_1(q)
    return BoundReport(
        value=value, kind="lower",
        validity_caveat="valid for q >= alpha(P); the threshold alpha(P) is "
                        "not computed by this library",
        witness={"mlength": L, "exceptional_summand": exceptional})


def _require_in_cube(S, q: int):
    """The fiber/projection theorems assume S inside [0, q-2]^m; outside
    points alias other exponent classes and break the decomposition."""
    for p in S:
        if any(c < 0 or c > q - 2 for c in p):
            raise ValueError(
                f"point {tuple(p)} lies outside the exponent cube [0, {q-2}]^m")


def _project(point, axes):
    return tuple(point[i] for i in axes)


def inductive_bound(S: LatticeConfiguration, projection_axes, q: int) -> BoundReport:
    """min over subsets S' of the projection of d(S') * max_{a in S'} d(S_a).

    Exact distances everywhere: the projected codes live in the chosen
    coordinates, the fiber codes in the complementary ones; a fiber over
    a full projection is a point in zero dimensions, with distance 1.
    """
    _require_in_cube(S, q)
    m = S.dim
    axes = tuple(sorted(set(int(a) for a in projection_axes)))
    if not axes or any(a < 0 or a >= m for a in axes):
        raise ValueError("projection axes must be a nonempty subset of the coordinates")
    co_axes = tuple(i for i in range(m) if i not in axes)
    proj = sorted({_project(p, axes) for p in S})
    if len(proj) > 16:
        raise ValueError(f"projection has {len(proj)} points; subset enumeration capped at 16")
    fibers = {a: [] for a in proj}
    for p in S:
        fibers[_project(p, axes)].append(_project(p, co_axes))
    fiber_d = {a: exact_distance(pts, q, dim=len(co_axes)) for a, pts in fibers.items()}

    cache: dict[tuple, int] = {}

    def proj_distance(subset: tuple) -> int:
        if subset not in cache:
            cache[subset] = exact_distance(subset, q, dim=len(axes))
        return cache[subset]

    best = None
    best_subset = None
    for r in range(1, len(proj) + 1):
        for subset in itertools.combinations(proj, r):
            term = proj_distance(subset) * max(fiber_d[a] for a in subset)
            if best is None or term < best:
                best, best_subset = term, subset
    return BoundReport(value=best, kind="lower",
                       witness={"subset": best_subset})


def _last_coordinate_fibers(S: LatticeConfiguration):
    """Fibers over the last coordinate, which must be {0, ..., l}."""
    heights = sorted({p[-1] for p in S})
    if heights != list(range(len(heights))) or heights[0] != 0:
        raise ValueError(
            f"projection onto the last coordinate must be {{0,...,l}}, got {heights}")
    fibers = [[] for _ in heights]
    for p in S:
        fibers[p[-1]].append(p[:-1])
    return fibers


def corollary_last_bound(S: LatticeConfiguration, q: int) -> BoundReport:
    """min over i of (q-1-i) d(S_i) for consecutive last-coordinate fibers
    with nondecreasing distances."""
    _require_in_cube(S, q)
    fibers = _last_coordinate_fibers(S)
    ell = len(fibers) - 1
    ds = [exact_distance(f, q, dim=S.dim - 1) for f in fibers]
    for i in range(ell):
        if ds[i] > ds[i + 1]:
            raise ValueError(
                f"fiber distances not nondecreasing: d(S_{i})={ds[i]} > "
                f"d(S_{i+1})={ds[i+1]}; the bound does not apply")
    terms = [(q - 1 - i) * ds[i] for i in range(ell + 1)]
    i_best = min(range(ell + 1), key=lambda i: terms[i])
    return BoundReport(value=terms[i_best], kind="lower",
                       witness={"fiber_index": i_best, "fiber_distances": ds})


def _is_segment_point_set(T: list) -> tuple | None:
    """If T is the full lattice point set of a segment, return its step vector."""
    pts = sorted(set(tuple(p) for p in T))
    if len(pts) == 1:
        return tuple(0 for _ in pts[0])
    v = primitive(tuple(a - b for a, b in zip(pts[-1], pts[0])))
    expected = []
    for i in range(len(pts)):
        expected.append(tuple(a + i * b for a, b in zip(pts[0], v)))
    return v if pts == sorted(expected) else None


def _translate_into(sumset: set, target: set) -> tuple | None:
    s0 = min(sumset)
    for b in sorted(target):
        t = tuple(x - y for x, y in zip(b, s0))
        if all(tuple(x + y for x, y in zip(p, t)) in target for p in sumset):
            return t
    return None


def check_translate_inequality(S: LatticeConfiguration, T, S_big: LatticeConfiguration,
                               q: int) -> BoundReport:
    """Verify (q-1) d(S_big) <= (q-|T|) d(S) for a segment point set T with
    S + T inside S_big up to translation; reports the slack."""
    _require_in_cube(S, q)
    _require_in_cube(S_big, q)
    t_pts = [tuple(p) for p in T]
    if _is_segment_point_set(t_pts) is None:
        raise ValueError("T must be the full lattice point set of a segment")
    sumset = {tuple(a + b for a, b in zip(s, t)) for s in S for t in t_pts}
    shift = _translate_into(sumset, set(tuple(p) for p in S_big))
    if shift is None:
        raise ValueError("S + T is not contained in S_big up to a lattice translation")
    lhs = (q - 1) * exact_distance(list(S_big), q, dim=S_big.dim)
    rhs = (q - len(set(t_pts))) * exact_distance(list(S), q, dim=S.dim)
    return BoundReport(value=rhs - lhs, kind="check",
                       witness={"lhs": lhs, "rhs": rhs, "holds": lhs <= rhs,
                                "translation": shift})


def nested_fiber_distance(S: LatticeConfiguration, q: int) -> BoundReport:
    """Exact d(S) = (q-1) d(S_0) for nested last-coordinate fibers.

    Searches for a primitive segment step v with S_i + {0, v} inside
    S_{i-1} up to translation for every i; errors if no candidate works.
    """
    _require_in_cube(S, q)
    fibers = [set(f) for f in _last_coordinate_fibers(S)]
    ell = len(fibers) - 1
    d0 = exact_distance(list(fibers[0]), q, dim=S.dim - 1)
    if ell == 0:
        return BoundReport(value=(q - 1) * d0, kind="equality",
                           witness={"segment": None})
    if S.dim == 1:
        raise ValueError("nested-fiber condition fails: fibers are points")
    candidates = set()
    for i in range(ell):
        for a, b in itertools.combinations(sorted(fibers[i]), 2):
            candidates.add(primitive(tuple(x - y for x, y in zip(b, a))))
    for v in sorted(candidates):
        shifts = []
        for i in range(1, ell + 1):
            grown = fibers[i] | {tuple(x + y for x, y in zip(p, v)) for p in fibers[i]}
            t = _translate_into(grown, fibers[i - 1])
            if t is None:
                break
            shifts.append(t)
        else:
            return BoundReport(value=(q - 1) * d0, kind="equality",
                               witness={"segment": v, "translations": tuple(shifts)})
    raise ValueError("nested-fiber condition fails: no primitive segment nests the fibers")
