import itertools

import pytest

from toricode.bounds import (
    box_distance,
    check_translate_inequality,
    corollary_last_bound,
    exact_distance,
    inductive_bound,
    mlength_lower_bound,
    nested_fiber_distance,
    product_distance,
    pyramid_distance,
    simplex_distance,
)
from toricode.constructions import nested_fiber_family, product_config, pyramid
from toricode.lattice import LatticeConfiguration, convex_hull, lattice_points


def config(pts):
    return LatticeConfiguration.of(pts)


# --- closed forms ---------------------------------------------------------


def test_simplex_distance_values():
    assert simplex_distance(2, 2, 5).value == 8
    assert simplex_distance(1, 1, 5).value == 3
    assert simplex_distance(3, 2, 5).value == (5 - 1) ** 1 * 1
    assert simplex_distance(2, 3, 4).value == 9


def test_simplex_distance_range_errors():
    with pytest.raises(ValueError):
        simplex_distance(4, 2, 5)
    with pytest.raises(ValueError):
        simplex_distance(-1, 2, 5)


def test_simplex_degenerate_flagged():
    r = simplex_distance(0, 2, 5)
    assert r.value == 16 and r.validity_caveat


def test_box_distance_values():
    assert box_distance((1, 2), 5).value == 6
    assert box_distance((2, 2), 4).value == 1
    r = box_distance((0, 0), 5)
    assert r.value == 16 and r.validity_caveat


def test_box_distance_range_error():
    with pytest.raises(ValueError):
        box_distance((1, 4), 5)


def test_product_distance_matches_brute_force():
    s1, s2 = [(0,), (1,)], [(0,), (2,)]
    d1 = exact_distance(s1, 5)
    d2 = exact_distance(s2, 5)
    S = product_config(s1, s2)
    assert product_distance(d1, d2).value == d1 * d2 == exact_distance(list(S), 5)


def test_product_distance_identity():
    assert product_distance(7, 1).value == 7


def test_product_of_segments_reproduces_box():
    d1 = exact_distance([(i,) for i in range(2)], 5)
    d2 = exact_distance([(i,) for i in range(3)], 5)
    assert product_distance(d1, d2).value == box_distance((1, 2), 5).value


def test_pyramid_distance_matches_brute_force():
    Q = convex_hull([(0,), (1,)])
    P = pyramid(Q)
    d_base = exact_distance([(i,) for i in range(2)], 5)
    want = pyramid_distance(d_base, 5).value
    assert want == 12
    assert exact_distance(list(lattice_points(P)), 5) == want


def test_nested_pyramid_brute_force():
    Q = convex_hull([(0,), (1,)])
    P2 = pyramid(pyramid(Q))
    d = exact_distance(list(lattice_points(P2)), 5)
    assert d == (5 - 1) ** 2 * 3


# --- Minkowski length bound ------------------------------------------------


def test_mlength_bound_square_q8():
    r = mlength_lower_bound(convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)]), 8)
    assert r.value == 35
    assert r.kind == "lower"
    assert "alpha" in r.validity_caveat


def test_mlength_bound_exceptional_q9():
    r = mlength_lower_bound(convex_hull([(0, 0), (2, 1), (1, 2)]), 9)
    assert r.value == 51
    assert r.witness["exceptional_summand"]


def test_mlength_bound_requires_small_length():
    with pytest.raises(ValueError, match="L"):
        mlength_lower_bound(convex_hull([(0, 0), (3, 0), (0, 3), (3, 3)]), 5)


def test_mlength_bound_corpus_never_exceeds_exact():
    """Record-keeping sweep: the bound should sit below the exact distance
    on small polygons for q in {7, 8, 9}; violations are reported, not
    asserted, because the bound's validity threshold is not computable."""
    polys = [
        convex_hull([(0, 0), (1, 0), (0, 1)]),
        convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)]),
        convex_hull([(0, 0), (2, 1), (1, 2)]),
        convex_hull([(0, 0), (2, 0), (0, 1)]),
    ]
    findings = []
    for q in (7, 8, 9):
        for P in polys:
            bound = mlength_lower_bound(P, q).value
            exact = exact_distance(list(lattice_points(P)), q)
            if bound > exact:
                findings.append((q, P.vertices, bound, exact))
    if findings:
        print("\nbound-above-exact findings (threshold unknown):", findings)


# --- inductive bound --------------------------------------------------------


def test_inductive_bound_product_is_tight():
    S = product_config([(0,), (1,)], [(0,), (1,), (2,)])
    r = inductive_bound(S, (1,), 5)
    exact = exact_distance(list(S), 5)
    assert r.value == exact == 6


def test_inductive_bound_identity_projection_tight():
    S = config([(0, 0), (1, 0), (0, 1), (1, 1)])
    exact = exact_distance(list(S), 5)
    r = inductive_bound(S, (0, 1), 5)
    assert r.value == exact


def test_inductive_bound_never_exceeds_exact(rng):
    for _ in range(40):
        q = rng.choice([4, 5])
        span = min(3, q - 2)  # the theorems need S inside the exponent cube
        size = rng.randint(1, 7)
        pts = set()
        while len(pts) < size:
            pts.add((rng.randint(0, span), rng.randint(0, span)))
        S = config(sorted(pts))
        exact = exact_distance(list(S), q)
        for axes in ((0,), (1,)):
            assert inductive_bound(S, axes, q).value <= exact


def test_fiber_bounds_reject_points_outside_cube():
    S = config([(0, 0), (3, 0)])  # 3 > q-2 for q = 4
    with pytest.raises(ValueError, match="cube"):
        inductive_bound(S, (0,), 4)
    with pytest.raises(ValueError, match="cube"):
        corollary_last_bound(S, 4)


def test_inductive_bound_rejects_bad_axes():
    S = config([(0, 0), (1, 1)])
    with pytest.raises(ValueError):
        inductive_bound(S, (), 5)
    with pytest.raises(ValueError):
        inductive_bound(S, (2,), 5)


def test_inductive_bound_single_point_projection():
    S = config([(0, 0), (0, 1), (0, 2)])
    r = inductive_bound(S, (0,), 5)
    # sole fiber {0,1,2} has d = 2; single-point projection has d = 4
    assert r.value == 4 * 2


# --- last-coordinate corollary ----------------------------------------------


def test_corollary_single_fiber():
    S = config([(0, 0), (1, 0), (2, 0)])
    r = corollary_last_bound(S, 5)
    assert r.value == (5 - 1) * exact_distance([(0,), (1,), (2,)], 5)


def test_corollary_staircase_bound_and_exactness():
    S = config([(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (0, 2)])
    r = corollary_last_bound(S, 5)
    assert r.value == 8
    assert exact_distance(list(S), 5) == 8


def test_corollary_requires_consecutive_heights():
    with pytest.raises(ValueError, match="0"):
        corollary_last_bound(config([(0, 0), (0, 2)]), 5)


def test_corollary_reports_monotonicity_violation():
    # fiber 0 = {0,1,2} (d=2), fiber 1 = {0} (d=4): fine; reversed violates
    S = config([(0, 0), (0, 1), (1, 1), (2, 1)])
    with pytest.raises(ValueError, match="d\\(S_0\\)"):
        corollary_last_bound(S, 5)


def test_corollary_random_soundness(rng):
    count = 0
    while count < 15:
        sizes = [rng.randint(1, 3) for _ in range(rng.randint(1, 3))]
        pts = []
        for h, size in enumerate(sizes):
            pts += [(x, h) for x in rng.sample(range(4), size)]
        S = config(pts)
        try:
            r = corollary_last_bound(S, 5)
        except ValueError:
            continue
        count += 1
        assert r.value <= exact_distance(list(S), 5)


# --- translate inequality ----------------------------------------------------


def test_translate_inequality_tight_example():
    r = check_translate_inequality(config([(0,)]), [(0,), (1,)],
                                   config([(0,), (1,)]), 5)
    assert r.witness["holds"] and r.value == 0
    assert r.witness["lhs"] == 12 and r.witness["rhs"] == 12


def test_translate_inequality_single_point_segment():
    S = config([(0, 0), (1, 1)])
    r = check_translate_inequality(S, [(0, 0)], S, 5)
    assert r.witness["holds"]


def test_translate_inequality_rejects_non_segment():
    with pytest.raises(ValueError, match="segment"):
        check_translate_inequality(config([(0, 0)]), [(0, 0), (1, 0), (0, 1)],
                                   config([(0, 0)]), 5)


def test_translate_inequality_rejects_non_containment():
    with pytest.raises(ValueError, match="contained"):
        check_translate_inequality(config([(0,), (2,)]), [(0,), (1,)],
                                   config([(0,), (1,)]), 5)


def test_translate_inequality_random_admissible_triples(rng):
    count = 0
    while count < 20:
        size = rng.randint(1, 4)
        S = set()
        while len(S) < size:
            S.add((rng.randint(0, 2), rng.randint(0, 2)))
        k = rng.randint(1, 2)
        v = rng.choice([(1, 0), (0, 1), (1, 1)])
        T = [(i * v[0], i * v[1]) for i in range(k + 1)]
        big = sorted({(s[0] + t[0], s[1] + t[1]) for s in S for t in T})
        if any(c > 3 for p in big for c in p):
            continue
        r = check_translate_inequality(config(sorted(S)), T, config(big), 5)
        assert r.witness["holds"], (sorted(S), T, big)
        count += 1


# --- nested fibers ------------------------------------------------------------


def test_nested_fiber_family_distance():
    S = nested_fiber_family(2, [(i,) for i in range(4)], ((0,), (1,)))
    r = nested_fiber_distance(S, 5)
    assert r.kind == "equality"
    assert r.value == (5 - 1) * exact_distance([(i,) for i in range(4)], 5)
    assert r.value == exact_distance(list(S), 5)
    assert r.witness["segment"] == (1,)


def test_nested_fiber_trivial_single_level():
    S = config([(0, 0), (1, 0), (2, 0)])
    r = nested_fiber_distance(S, 5)
    assert r.value == (5 - 1) * exact_distance([(0,), (1,), (2,)], 5)


def test_nested_fiber_condition_failure():
    # fibers of equal size cannot nest: S_1 + {a,b} has more points than S_0
    S = config([(0, 0), (2, 0), (0, 1), (2, 1)])
    with pytest.raises(ValueError, match="nested-fiber"):
        nested_fiber_distance(S, 5)


# --- corpus soundness sweep ----------------------------------------------------


def test_soundness_sweep_small_corpus():
    """Every applicable bound stays below the exact distance and every
    equality formula matches it, over all S in [0,2]^2 with |S| <= 5."""
    grid = [(x, y) for x in range(3) for y in range(3)]
    boxes = {tuple(sorted((x, y) for x in range(a + 1) for y in range(b + 1))):
             (a, b) for a in range(3) for b in range(3)}
    simplices = {tuple(sorted((x, y) for x in range(3) for y in range(3)
                              if x + y <= ell)): ell for ell in range(3)}
    for q in (4, 5):
        for size in (1, 2, 3, 4, 5):
            for pts in itertools.combinations(grid, size):
                S = config(pts)
                exact = exact_distance(list(S), q)
                ib = inductive_bound(S, (1,), q)
                assert ib.value <= exact, (q, pts)
                heights = sorted({p[1] for p in pts})
                if heights == list(range(len(heights))):
                    try:
                        cb = corollary_last_bound(S, q)
                    except ValueError:
                        cb = None
                    if cb is not None:
                        assert cb.value <= exact, (q, pts)
                key = tuple(sorted(pts))
                if key in boxes:
                    assert box_distance(boxes[key], q).value == exact, (q, pts)
                if key in simplices:
                    assert simplex_distance(simplices[key], 2, q).value == exact, (q, pts)
