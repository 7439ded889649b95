"""Exact integer lattice geometry: points, hulls, Minkowski sums, equivalence.

Everything here is integer arithmetic; there is no floating point and no
tolerance anywhere.  Points are plain tuples of ints.  Polytopes store
their minimal vertex set and lazily cache derived data (dimension,
facets, lattice points) behind a lock, so values are immutable and safe
to share across threads.

Degenerate polytopes (points, segments, polygons inside a larger
ambient space) are first class: they are handled through exact integer
coordinates on the sublattice spanned by their affine hull.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from math import gcd

import numpy as np

Point = tuple[int, ...]


class PointFormatError(ValueError):
    """A point file line that does not parse; carries the line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def _as_point(p) -> Point:
    out = tuple(int(c) for c in p)
    for c, raw in zip(out, p):
        if c != raw:
            raise ValueError(f"non-integer coordinate in {tuple(p)!r}")
    return out


# --- exact integer linear algebra ---------------------------------------


def int_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    m = [list(map(int, r)) for r in rows]
    if not m:
        return 0
    cols = len(m[0])
    rank = 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                a, b = m[rank][c], m[i][c]
                m[i] = [a * x - b * y for x, y in zip(m[i], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def _hnf_with_transform(rows: list[list[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Row HNF of an integer matrix: returns (H, U) with U unimodular, U*A = H."""
    a = [list(map(int, r)) for r in rows]
    n = len(a)
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    row = 0
    cols = len(a[0]) if a else 0
    for col in range(cols):
        piv = None
        for i in range(row, n):
            if a[i][col]:
                piv = i
                break
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        u[row], u[piv] = u[piv], u[row]
        # clear below with gcd steps
        for i in range(row + 1, n):
            while a[i][col]:
                q = a[row][col] // a[i][col]
                a[row] = [x - q * y for x, y in zip(a[row], a[i])]
                u[row] = [x - q * y for x, y in zip(u[row], u[i])]
                a[row], a[i] = a[i], a[row]
                u[row], u[i] = u[i], u[row]
        if a[row][col] < 0:
            a[row] = [-x for x in a[row]]
            u[row] = [-x for x in u[row]]
        row += 1
        if row == n:
            break
    return a, u


def integer_kernel(rows: list[list[int]]) -> list[list[int]]:
    """Basis of {x in Z^n : A x = 0} for integer A (rows are equations)."""
    if not rows:
        return []
    n = len(rows[0])
    transposed = [[rows[i][j] for i in range(len(rows))] for j in range(n)]
    h, u = _hnf_with_transform(transposed)
    return [u[i] for i in range(n) if not any(h[i])]


def saturated_basis(vectors: list[Point]) -> list[Point]:
    """Basis of span_R(vectors) intersected with Z^m (the saturated lattice)."""
    vecs = [list(v) for v in vectors if any(v)]
    if not vecs:
        return []
    normals = integer_kernel(vecs)
    if not normals:
        m = len(vecs[0])
        return [tuple(int(i == j) for j in range(m)) for i in range(m)]
    return [tuple(b) for b in integer_kernel(normals)]


def _det(matrix: list[list[int]]) -> int:
    n = len(matrix)
    if n == 0:
        return 1
    if n == 1:
        return matrix[0][0]
    if n == 2:
        return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
    total = 0
    for j in range(n):
        if matrix[0][j]:
            minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
            total += (-1) ** j * matrix[0][j] * _det(minor)
    return total


def solve_integer(basis_cols: list[Point], target: Point) -> Point | None:
    """Solve B y = target over the integers; B has full column rank.

    Returns None if the system has no integer solution (Cramer on a
    nonsingular square subsystem, then verification).
    """
    m, r = len(target), len(basis_cols)
    rows = [[basis_cols[j][i] for j in range(r)] for i in range(m)]
    for subset in itertools.combinations(range(m), r):
        sq = [rows[i] for i in subset]
        d = _det(sq)
        if d == 0:
            continue
        ys = []
        for j in range(r):
            rep = [row[:j] + [target[i]] + row[j + 1:]
                   for row, i in zip(sq, subset)]
            num = _det(rep)
            if num % d:
                return None
            ys.append(num // d)
        if all(sum(basis_cols[j][i] * ys[j] for j in range(r)) == target[i]
               for i in range(m)):
            return tuple(ys)
        return None
    return None


def complete_to_unimodular(basis: list[Point]) -> list[list[int]]:
    """Square unimodular matrix whose first columns are the given saturated basis.

    With U B = [[T], [0]] from the HNF (|det T| = 1 because the basis is
    saturated), the last columns of U^{-1} complete B.
    """
    r = len(basis)
    m = len(basis[0])
    bm = [[basis[j][i] for j in range(r)] for i in range(m)]
    if r == m:
        if abs(_det(bm)) != 1:
            raise ValueError("full basis is not unimodular")
        return bm
    h, u = _hnf_with_transform(bm)
    if abs(_det([row[:r] for row in h[:r]])) != 1:
        raise ValueError("basis is not saturated")
    u_inv = _unimodular_inverse(u)
    mat = [[bm[i][j] if j < r else u_inv[i][j] for j in range(m)] for i in range(m)]
    if abs(_det(mat)) != 1:
        raise AssertionError("completion must be unimodular")
    return mat


def primitive(v: Point) -> Point:
    """Divide by the gcd and make the first nonzero coordinate positive."""
    g = 0
    for c in v:
        g = gcd(g, abs(c))
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    w = tuple(c // g for c in v)
    for c in w:
        if c:
            return w if c > 0 else tuple(-x for x in w)
    raise AssertionError("unreachable")


def lattice_length(v: Point) -> int:
    """Number of lattice steps along v: gcd of the coordinates."""
    g = 0
    for c in v:
        g = gcd(g, abs(c))
    return g


# --- configurations -------------------------------------------------------


@dataclass(frozen=True)
class LatticeConfiguration:
    """A deduplicated, canonically sorted finite set of lattice points."""

    dim: int
    points: tuple[Point, ...]

    @classmethod
    def of(cls, points, dim: int | None = None) -> "LatticeConfiguration":
        pts = sorted({_as_point(p) for p in points})
        if not pts and dim is None:
            raise ValueError("empty configuration needs an explicit dimension")
        d = dim if dim is not None else len(pts[0])
        if any(len(p) != d for p in pts):
            raise ValueError("configuration points have mixed dimensions")
        return cls(dim=d, points=tuple(pts))

    def __iter__(self):
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, p) -> bool:
        return _as_point(p) in self.points

    def translate(self, t: Point) -> "LatticeConfiguration":
        return LatticeConfiguration.of(
            [tuple(a + b for a, b in zip(p, t)) for p in self.points], dim=self.dim)

    def as_array(self) -> np.ndarray:
        return np.array(self.points, dtype=np.int64).reshape(len(self.points), self.dim)


def parse_points(text: str, dim: int | None = None) -> list[Point]:
    """Parse the point text format: one point per line, '#' comments allowed."""
    pts: list[Point] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            p = tuple(int(tok) for tok in line.split())
        except ValueError:
            raise PointFormatError(line_no, f"cannot parse {line!r} as integers") from None
        if dim is not None and len(p) != dim:
            raise PointFormatError(line_no, f"expected {dim} coordinates, got {len(p)}")
        if pts and len(p) != len(pts[0]):
            raise PointFormatError(line_no, "inconsistent number of coordinates")
        pts.append(p)
    return pts


def format_points(points) -> str:
    return "\n".join(" ".join(str(c) for c in p) for p in points) + "\n"


# --- polytopes ------------------------------------------------------------


class LatticePolytope:
    """Convex hull of lattice points, stored by its minimal vertex set."""

    __slots__ = ("vertices", "ambient_dim", "_lock", "_dim", "_facets",
                 "_equalities", "_points", "_point_set", "_grid",
                 "_intrinsic", "_dirs")

    def __init__(self, vertices: tuple[Point, ...]):
        # callers go through convex_hull(); this trusts minimality
        self.vertices = tuple(sorted(vertices))
        self.ambient_dim = len(self.vertices[0])
        self._lock = threading.RLock()
        self._dim = None
        self._facets = None
        self._equalities = None
        self._points = None
        self._point_set = None
        self._grid = None
        self._intrinsic = None
        self._dirs = None

    # identity ----------------------------------------------------------
    def __eq__(self, other) -> bool:
        return isinstance(other, LatticePolytope) and other.vertices == self.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __repr__(self) -> str:
        return f"LatticePolytope{list(self.vertices)!r}"

    # basic geometry ------------------------------------------------------
    @property
    def dim(self) -> int:
        if self._dim is None:
            v0 = self.vertices[0]
            diffs = [[c - d for c, d in zip(v, v0)] for v in self.vertices[1:]]
            self._dim = int_rank(diffs) if diffs else 0
        return self._dim

    def bounding_box(self) -> tuple[Point, Point]:
        arr = np.array(self.vertices, dtype=np.int64)
        return tuple(int(x) for x in arr.min(axis=0)), tuple(int(x) for x in arr.max(axis=0))

    def translate(self, t: Point) -> "LatticePolytope":
        t = _as_point(t)
        return LatticePolytope(tuple(tuple(a + b for a, b in zip(v, t))
                                     for v in self.vertices))

    # lazy caches ---------------------------------------------------------
    def _ensure_points(self):
        if self._points is not None:
            return
        with self._lock:
            if self._points is not None:
                return
            pts = _enumerate_lattice_points(self)
            lo, hi = self.bounding_box()
            shape = tuple(h - l + 1 for l, h in zip(lo, hi))
            grid = np.zeros(shape, dtype=bool)
            for p in pts:
                grid[tuple(c - l for c, l in zip(p, lo))] = True
            self._point_set = frozenset(pts)
            self._grid = (grid, lo)
            self._points = tuple(sorted(pts))

    def lattice_points(self) -> LatticeConfiguration:
        self._ensure_points()
        return LatticeConfiguration(dim=self.ambient_dim, points=self._points)

    def lattice_point_set(self) -> frozenset:
        self._ensure_points()
        return self._point_set

    def num_lattice_points(self) -> int:
        self._ensure_points()
        return len(self._points)

    def contains_lattice_point(self, p: Point) -> bool:
        self._ensure_points()
        return tuple(p) in self._point_set

    def contains_lattice_array(self, pts: np.ndarray) -> np.ndarray:
        """Vectorized membership of integer points (n, m) -> bool mask."""
        self._ensure_points()
        grid, lo = self._grid
        shifted = pts - np.array(lo, dtype=np.int64)
        ok = np.all((shifted >= 0) & (shifted < np.array(grid.shape)), axis=1)
        out = np.zeros(len(pts), dtype=bool)
        if ok.any():
            idx = tuple(shifted[ok].T)
            out[ok] = grid[idx]
        return out


def convex_hull(points) -> LatticePolytope:
    """Hull of a configuration; the vertex set is reduced to the extreme points."""
    if isinstance(points, LatticeConfiguration):
        pts = list(points.points)
    else:
        pts = [_as_point(p) for p in points]
    pts = sorted(set(pts))
    if not pts:
        raise ValueError("empty configuration")
    if len({len(p) for p in pts}) != 1:
        raise ValueError("points have mixed dimensions")
    return LatticePolytope(tuple(_extreme_points(pts)))


def _extreme_points(pts: list[Point]) -> list[Point]:
    if len(pts) == 1:
        return pts
    m = len(pts[0])
    v0 = pts[0]
    diffs = [[c - d for c, d in zip(p, v0)] for p in pts[1:]]
    r = int_rank(diffs)
    if r == 0:
        return [v0]
    if r < m:
        basis, origin, intr = _intrinsic_coords(pts)
        inner = _extreme_points(intr)
        back = {iv: pv for iv, pv in zip(intr, pts)}
        return sorted(back[v] for v in inner)
    if m == 1:
        return [min(pts), max(pts)]
    if m == 2:
        return _hull_2d(pts)
    facets = _facets_full_dim(pts, m)
    out = []
    for p in pts:
        active = [n for (n, b) in facets if sum(a * c for a, c in zip(n, p)) == b]
        if len(active) >= m and int_rank([list(n) for n in active]) == m:
            out.append(p)
    return sorted(out)


def _hull_cycle_2d(pts: list[Point]) -> list[Point]:
    """Counterclockwise vertex cycle by Andrew monotone chain (exact)."""
    pts = sorted(set(pts))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    return lower[:-1] + upper[:-1]


def _hull_2d(pts: list[Point]) -> list[Point]:
    return sorted(set(_hull_cycle_2d(pts)))


def _cofactor_normal(rows: list[list[int]]) -> list[int]:
    """Integer normal to the span of (m-1) vectors in Z^m via cofactors."""
    m = len(rows[0])
    out = []
    for j in range(m):
        minor = [r[:j] + r[j + 1:] for r in rows]
        out.append((-1) ** j * _det(minor))
    return out


def _facets_full_dim(pts: list[Point], m: int) -> list[tuple[Point, int]]:
    """All facet inequalities n.x <= b of a full-dimensional hull."""
    arr = np.array(pts, dtype=np.int64)
    facets = {}
    for subset in itertools.combinations(range(len(pts)), m):
        base = pts[subset[0]]
        rows = [[pts[i][j] - base[j] for j in range(m)] for i in subset[1:]]
        if int_rank(rows) != m - 1:
            continue
        normal = _cofactor_normal(rows)
        if not any(normal):
            continue
        normal = list(primitive(tuple(normal)))
        b = sum(a * c for a, c in zip(normal, base))
        vals = arr @ np.array(normal, dtype=np.int64)
        if (vals <= b).all():
            facets[(tuple(normal), int(b))] = True
        elif (vals >= b).all():
            facets[(tuple(-x for x in normal), -int(b))] = True
    return [(n, b) for (n, b) in facets]


def _polytope_facets(P: LatticePolytope) -> list[tuple[Point, int]]:
    if P._facets is None:
        with P._lock:
            if P._facets is None:
                P._facets = _facets_full_dim(list(P.vertices), P.ambient_dim)
    return P._facets


def _intrinsic_coords(pts: list[Point]):
    """Exact coordinates of points on the saturated lattice of their affine hull.

    Returns (basis, origin, intrinsic points); every input point is
    origin + basis . y with integer y, because the basis is saturated.
    """
    origin = min(pts)
    diffs = [tuple(c - d for c, d in zip(p, origin)) for p in pts]
    basis = saturated_basis(diffs)
    intr = []
    for d in diffs:
        y = solve_integer(basis, d)
        if y is None:
            raise AssertionError("saturated basis must solve integrally")
        intr.append(y)
    return basis, origin, intr


def _enumerate_lattice_points(P: LatticePolytope) -> list[Point]:
    m = P.ambient_dim
    r = P.dim
    if r == 0:
        return [P.vertices[0]]
    if r < m:
        basis, origin, intr = _intrinsic_coords(list(P.vertices))
        inner = convex_hull(intr)
        out = []
        for y in _enumerate_lattice_points(inner):
            out.append(tuple(o + sum(b[i] * c for b, c in zip(basis, y))
                             for i, o in enumerate(origin)))
        return sorted(out)
    lo, hi = P.bounding_box()
    cells = 1
    for l, h in zip(lo, hi):
        cells *= (h - l + 1)
    if cells > 10**8:
        raise ValueError(f"bounding box with {cells} cells exceeds the scan budget")
    if m == 1:
        return [(x,) for x in range(lo[0], hi[0] + 1)]
    axes = [np.arange(l, h + 1, dtype=np.int64) for l, h in zip(lo, hi)]
    mesh = np.meshgrid(*axes, indexing="ij")
    grid = np.stack([g.ravel() for g in mesh], axis=1)
    mask = np.ones(len(grid), dtype=bool)
    for normal, b in _polytope_facets(P):
        mask &= (grid @ np.array(normal, dtype=np.int64)) <= b
    return sorted(map(tuple, grid[mask].tolist()))


# --- operations -----------------------------------------------------------


def lattice_points(P: LatticePolytope) -> LatticeConfiguration:
    """Exact enumeration of P intersected with the integer lattice."""
    return P.lattice_points()


def lattice_point_count_2d(P: LatticePolytope) -> int:
    """Lattice point count of a polygon from area and boundary counts.

    Twice the area plus the boundary count determines the total by
    Pick's identity; this avoids scanning the bounding box and is exact
    integer arithmetic throughout.
    """
    if P.ambient_dim != 2:
        raise ValueError("count-by-area applies to m = 2 only")
    if P.dim == 0:
        return 1
    if P.dim == 1:
        a, b = P.vertices[0], P.vertices[-1]
        return lattice_length((a[0] - b[0], a[1] - b[1])) + 1
    cycle = _hull_cycle_2d(list(P.vertices))
    twice_area = 0
    boundary = 0
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        twice_area += a[0] * b[1] - a[1] * b[0]
        boundary += lattice_length((b[0] - a[0], b[1] - a[1]))
    twice_area = abs(twice_area)
    return (twice_area + boundary) // 2 + 1


def minkowski_sum(P: LatticePolytope, Q: LatticePolytope) -> LatticePolytope:
    """Hull of pairwise vertex sums."""
    if P.ambient_dim != Q.ambient_dim:
        raise ValueError("Minkowski sum needs equal ambient dimension")
    sums = [tuple(a + b for a, b in zip(p, q))
            for p in P.vertices for q in Q.vertices]
    return convex_hull(sums)


def segment(v: Point, origin: Point | None = None) -> LatticePolytope:
    """The lattice segment from the origin (or ``origin``) along v."""
    v = _as_point(v)
    o = _as_point(origin) if origin is not None else tuple(0 for _ in v)
    return convex_hull([o, tuple(a + b for a, b in zip(o, v))])


def contains_translate(inner: LatticePolytope, outer: LatticePolytope) -> Point | None:
    """A lattice translation t with inner + t inside outer, or None.

    Scans integer translations in the bounding-box difference; by
    convexity it is enough to test the (lattice) vertices of inner.
    """
    if inner.ambient_dim != outer.ambient_dim:
        raise ValueError("dimension mismatch")
    ilo, ihi = inner.bounding_box()
    olo, ohi = outer.bounding_box()
    ranges = []
    total = 1
    for il, ih, ol, oh in zip(ilo, ihi, olo, ohi):
        lo, hi = ol - il, oh - ih
        if lo > hi:
            return None
        ranges.append(range(lo, hi + 1))
        total *= hi - lo + 1
    verts = np.array(inner.vertices, dtype=np.int64)
    ts = np.array(list(itertools.product(*ranges)), dtype=np.int64)
    pts = (ts[:, None, :] + verts[None, :, :]).reshape(-1, inner.ambient_dim)
    ok = outer.contains_lattice_array(pts).reshape(total, len(verts)).all(axis=1)
    hits = np.nonzero(ok)[0]
    if hits.size == 0:
        return None
    return tuple(int(c) for c in ts[hits[0]])


def direction_vectors(P: LatticePolytope) -> frozenset:
    """All primitive directions realized by pairs of lattice points of P,
    with the first nonzero coordinate positive."""
    if P._dirs is None:
        with P._lock:
            if P._dirs is None:
                pts = list(P.lattice_points())
                dirs = set()
                for a, b in itertools.combinations(pts, 2):
                    dirs.add(primitive(tuple(x - y for x, y in zip(a, b))))
                P._dirs = frozenset(dirs)
    return P._dirs


# --- affine-unimodular maps ------------------------------------------------


@dataclass(frozen=True)
class AffineUnimodularMap:
    """x -> A x + t with A an integer matrix of determinant +-1."""

    matrix: tuple[tuple[int, ...], ...]
    translation: Point

    def __post_init__(self):
        if abs(_det([list(r) for r in self.matrix])) != 1:
            raise ValueError("matrix must have determinant +-1")

    def apply_point(self, p: Point) -> Point:
        return tuple(sum(a * c for a, c in zip(row, p)) + t
                     for row, t in zip(self.matrix, self.translation))

    def apply_polytope(self, P: LatticePolytope) -> LatticePolytope:
        return convex_hull([self.apply_point(v) for v in P.vertices])

    def apply_config(self, S: LatticeConfiguration) -> LatticeConfiguration:
        return LatticeConfiguration.of([self.apply_point(p) for p in S])

    @classmethod
    def identity(cls, m: int, translation: Point | None = None) -> "AffineUnimodularMap":
        t = translation if translation is not None else tuple(0 for _ in range(m))
        return cls(matrix=tuple(tuple(int(i == j) for j in range(m)) for i in range(m)),
                   translation=_as_point(t))


def _compose(matrix: list[list[int]], amap: AffineUnimodularMap,
             extra_translation: Point) -> AffineUnimodularMap:
    """(matrix, extra) after amap: x -> matrix (A x + t) + extra."""
    a = [[sum(matrix[i][k] * amap.matrix[k][j] for k in range(len(matrix)))
          for j in range(len(matrix))] for i in range(len(matrix))]
    t = tuple(sum(matrix[i][k] * amap.translation[k] for k in range(len(matrix)))
              + extra_translation[i] for i in range(len(matrix)))
    return AffineUnimodularMap(matrix=tuple(map(tuple, a)), translation=t)


def agl_equivalent(P: LatticePolytope, Q: LatticePolytope) -> AffineUnimodularMap | None:
    """Search for an affine-unimodular map with alpha(P) = Q (m <= 3).

    Anchors an affine lattice basis of P's points to candidate tuples of
    Q's points, solves for the matrix and verifies on the full lattice
    point sets.  Degenerate polytopes are matched through intrinsic
    coordinates and the map is lifted back to the ambient lattice.
    """
    if P.ambient_dim != Q.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    m = P.ambient_dim
    if m > 3:
        raise ValueError("unsupported dimension")
    if P.dim != Q.dim:
        return None
    sp, sq = P.lattice_point_set(), Q.lattice_point_set()
    if len(sp) != len(sq) or len(P.vertices) != len(Q.vertices):
        return None
    r = P.dim
    if r == 0:
        t = tuple(b - a for a, b in zip(P.vertices[0], Q.vertices[0]))
        return AffineUnimodularMap.identity(m, t)
    if r == m:
        return _agl_full_dim(P, Q)

    bp, op_, intr_p = _intrinsic_coords(sorted(sp))
    bq, oq, intr_q = _intrinsic_coords(sorted(sq))
    inner = agl_equivalent(convex_hull(intr_p), convex_hull(intr_q))
    if inner is None:
        return None
    cp = complete_to_unimodular(bp)
    cq = complete_to_unimodular(bq)
    # ambient = C_q . (inner ⊕ id) . C_p^{-1}, fixed up by translations
    inner_full = [[inner.matrix[i][j] if i < r and j < r else int(i == j)
                   for j in range(m)] for i in range(m)]
    cp_inv = _unimodular_inverse(cp)
    a = _mat_mul(_mat_mul(cq, inner_full), cp_inv)
    inner_t = list(inner.translation) + [0] * (m - r)
    shift = [sum(cq[i][j] * inner_t[j] for j in range(m)) for i in range(m)]
    ax0 = [sum(a[i][j] * op_[j] for j in range(m)) for i in range(m)]
    t = tuple(oq[i] + shift[i] - ax0[i] for i in range(m))
    cand = AffineUnimodularMap(matrix=tuple(map(tuple, a)), translation=t)
    if {cand.apply_point(p) for p in sp} == sq:
        return cand
    return None


def _mat_mul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)]


def _unimodular_inverse(mat):
    n = len(mat)
    d = _det(mat)
    inv = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = [r[:i] + r[i + 1:] for k, r in enumerate(mat) if k != j]
            row.append(d * (-1) ** (i + j) * _det(minor))
        inv.append(row)
    return inv


def _adjugate(mat: list[list[int]]) -> list[list[int]]:
    m = len(mat)
    adj = []
    for i in range(m):
        row = []
        for j in range(m):
            minor = [r[:i] + r[i + 1:] for k, r in enumerate(mat) if k != j]
            row.append((-1) ** (i + j) * _det(minor))
        adj.append(row)
    return adj


def _agl_full_dim(P: LatticePolytope, Q: LatticePolytope) -> AffineUnimodularMap | None:
    m = P.ambient_dim
    sp = sorted(P.lattice_point_set())
    sq_set = Q.lattice_point_set()
    sq = sorted(sq_set)
    v0 = P.vertices[0]
    # deterministic affine basis from P's points
    basis_pts: list[Point] = []
    chosen: list[list[int]] = []
    for p in sp:
        d = [a - b for a, b in zip(p, v0)]
        if any(d) and int_rank(chosen + [d]) == len(chosen) + 1:
            chosen.append(d)
            basis_pts.append(p)
        if len(chosen) == m:
            break
    if len(chosen) < m:
        return None
    x_cols = [[chosen[j][i] for j in range(m)] for i in range(m)]
    dx = _det(x_cols)
    x_adj = _adjugate(x_cols)
    for w0 in Q.vertices:
        for images in itertools.permutations(sq, m):
            y_cols = [[images[j][i] - w0[i] for j in range(m)] for i in range(m)]
            if abs(_det(y_cols)) != abs(dx):
                continue
            num = _mat_mul(y_cols, x_adj)  # A * dx
            if any(num[i][j] % dx for i in range(m) for j in range(m)):
                continue
            a = [[num[i][j] // dx for j in range(m)] for i in range(m)]
            if abs(_det(a)) != 1:
                continue
            amap = AffineUnimodularMap(
                matrix=tuple(map(tuple, a)),
                translation=tuple(w0[i] - sum(a[i][j] * v0[j] for j in range(m))
                                  for i in range(m)))
            if {amap.apply_point(p) for p in sp} == sq_set:
                return amap
    return None


# --- canonical form (m = 2) -------------------------------------------------


def _encode_points(points: list[Point]) -> tuple:
    arr = sorted(points)
    lo = tuple(min(p[i] for p in arr) for i in range(len(arr[0])))
    return tuple(tuple(c - l for c, l in zip(p, lo)) for p in arr)


def canonical_form(P: LatticePolytope) -> LatticePolytope:
    """Distinguished representative of the AGL(2, Z) orbit of a polygon.

    Candidate images: every hull edge direction is mapped onto (1, 0)
    (both orientations, both determinant signs), composed with shears
    x -> x + t y for t in a window centered at the width-minimizing
    shear.  The window center and size depend only on shear-invariant
    data, so the candidate image set is identical for every
    representative of an orbit; the lexicographically least translated
    lattice-point encoding is therefore an orbit invariant, idempotent
    by construction.
    """
    if P.ambient_dim != 2:
        raise ValueError("canonical form is only defined for m = 2")
    pts = sorted(P.lattice_point_set())
    if P.dim == 0:
        return convex_hull([(0, 0)])
    if P.dim == 1:
        length = max(lattice_length(tuple(a - b for a, b in zip(p, pts[0])))
                     for p in pts)
        return convex_hull([(0, 0), (length, 0)])

    cycle = _hull_cycle_2d(list(P.vertices))
    edge_dirs = set()
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        d = primitive(tuple(x - y for x, y in zip(b, a)))
        edge_dirs.add(d)
        edge_dirs.add(tuple(-x for x in d))

    best = None
    for u in sorted(edge_dirs):
        u1, u2 = u
        p0, q0 = _xgcd_pair(u1, u2)  # p0 u1 + q0 u2 = 1
        for lam in (1, -1):
            row2 = (-lam * u2, lam * u1)
            base = [(p0, q0), row2]
            xs = [p0 * x + q0 * y for x, y in pts]
            ys = [row2[0] * x + row2[1] * y for x, y in pts]
            t_c, w_min = _width_minimizing_shear(xs, ys)
            h = max(ys) - min(ys)
            radius = 2 * (len(pts) + h + w_min + 4)
            for t in range(t_c - radius, t_c + radius + 1):
                enc = _encode_points(list(zip((x + t * y for x, y in zip(xs, ys)), ys)))
                if best is None or enc < best:
                    best = enc
    return convex_hull(best)


def _width_minimizing_shear(xs: list[int], ys: list[int]) -> tuple[int, int]:
    """Leftmost integer t minimizing max(x + t y) - min(x + t y).

    The width is convex piecewise-linear in t, so a ternary search over
    a bracket that provably contains the minimizer is exact.
    """
    def width(t: int) -> int:
        vals = [x + t * y for x, y in zip(xs, ys)]
        return max(vals) - min(vals)

    span = max(xs) - min(xs) + max(ys) - min(ys) + 1
    lo, hi = -2 * span - 2, 2 * span + 2
    while hi - lo > 2:
        m1 = lo + (hi - lo) // 3
        m2 = hi - (hi - lo) // 3
        if width(m1) < width(m2):
            hi = m2
        else:
            lo = m1
    best_t = min(range(lo, hi + 1), key=width)
    w_min = width(best_t)
    # convexity makes the minimizer set an interval; its left end is a
    # shear-equivariant anchor, the search trajectory is not
    while width(best_t - 1) == w_min:
        best_t -= 1
    return best_t, w_min


def _xgcd_pair(a: int, b: int) -> tuple[int, int]:
    """(x, y) with a x + b y = gcd(a, b) = 1 for primitive (a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r == -1:
        old_s, old_t = -old_s, -old_t
    return old_s, old_t
