import pytest

from conftest import random_polygon, random_unimodular
from toricode.lattice import contains_translate, convex_hull, lattice_points, minkowski_sum
from toricode.mlength import (
    Decomposition,
    classify_polygons_by_length,
    has_exceptional_in_some_maximal,
    is_strongly_indecomposable,
    max_points_for_length,
    minkowski_length,
)

EXCEPTIONAL = convex_hull([(0, 0), (2, 1), (1, 2)])
UNIT_SQUARE = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)])


def test_point_has_length_zero():
    r = minkowski_length(convex_hull([(4, 5)]))
    assert r.length == 0
    assert r.witness.summands == ()


def test_primitive_segment_has_length_one():
    assert minkowski_length(convex_hull([(0, 0), (1, 0)])).length == 1
    assert minkowski_length(convex_hull([(0, 0), (3, 2)])).length == 1


def test_exceptional_triangle_has_length_one():
    assert minkowski_length(EXCEPTIONAL).length == 1


def test_square_side_two():
    r = minkowski_length(convex_hull([(0, 0), (2, 0), (0, 2), (2, 2)]))
    assert r.length == 4
    dirs = sorted(s.vertices[1] for s in r.witness.summands)
    assert dirs == [(0, 1), (0, 1), (1, 0), (1, 0)]


@pytest.mark.parametrize("ell", [1, 2, 3])
def test_dilated_simplex_length(ell):
    P = convex_hull([(0, 0), (ell, 0), (0, ell)])
    assert minkowski_length(P).length == ell


def test_segment_length_scales():
    for v in [(1, 0), (1, 2)]:
        for k in range(1, 6):
            P = convex_hull([(0, 0), (k * v[0], k * v[1])])
            assert minkowski_length(P).length == k


def test_witness_verifies_independently(rng):
    for _ in range(15):
        P = random_polygon(rng)
        r = minkowski_length(P)
        assert r.witness.verify(P)
        assert len(r.witness.summands) == r.length


def test_decomposition_verify_rejects_bad_translation():
    r = minkowski_length(UNIT_SQUARE)
    bad = Decomposition(summands=r.witness.summands, translation=(50, 50))
    assert not bad.verify(UNIT_SQUARE)


def test_strongly_indecomposable_examples():
    assert is_strongly_indecomposable(convex_hull([(0, 0), (1, 0), (0, 1)]))
    assert is_strongly_indecomposable(EXCEPTIONAL)
    assert not is_strongly_indecomposable(UNIT_SQUARE)
    assert not is_strongly_indecomposable(convex_hull([(0, 0), (2, 0)]))
    with pytest.raises(ValueError):
        is_strongly_indecomposable(convex_hull([(0, 0)]))


def test_superadditive_under_minkowski_sum(rng):
    for _ in range(8):
        P, Q = random_polygon(rng, span=2), random_polygon(rng, span=2)
        lp = minkowski_length(P).length
        lq = minkowski_length(Q).length
        assert minkowski_length(minkowski_sum(P, Q)).length >= lp + lq


def test_length_is_agl_invariant(rng):
    for _ in range(10):
        P = random_polygon(rng)
        alpha = random_unimodular(rng)
        assert minkowski_length(alpha.apply_polytope(P)).length == minkowski_length(P).length


def test_length_monotone_under_inclusion(rng):
    for _ in range(10):
        P = random_polygon(rng)
        pts = list(lattice_points(P))
        sub = rng.sample(pts, rng.randint(1, len(pts)))
        Q = convex_hull(sub)
        assert minkowski_length(Q).length <= minkowski_length(P).length


def test_exceptional_in_maximal_examples():
    assert has_exceptional_in_some_maximal(EXCEPTIONAL)
    assert not has_exceptional_in_some_maximal(UNIT_SQUARE)


def test_exceptional_in_maximal_simplex3_regression():
    # frozen output of the forced-summand search
    P = convex_hull([(0, 0), (3, 0), (0, 3)])
    assert has_exceptional_in_some_maximal(P) is False


def test_exceptional_in_maximal_needs_m2():
    with pytest.raises(ValueError):
        has_exceptional_in_some_maximal(convex_hull([(0, 0, 0), (1, 0, 0)]))


def test_classify_length_one():
    classes = classify_polygons_by_length(1, 4)
    assert len(classes) == 3
    profile = sorted((p.dim, p.num_lattice_points()) for p in classes)
    assert profile == [(1, 2), (2, 3), (2, 4)]


def test_classify_rejects_bad_target():
    with pytest.raises(ValueError):
        classify_polygons_by_length(4, 25)


def test_max_points_length_one():
    assert max_points_for_length(1) == 4


def test_length_one_census_respects_pigeonhole_bound():
    for poly in classify_polygons_by_length(1, 4):
        assert poly.num_lattice_points() <= 4


def test_census_members_have_claimed_length():
    for target in (1, 2):
        for poly in classify_polygons_by_length(target, 5):
            assert minkowski_length(poly).length == target


def test_witness_segments_fit_in_target(rng):
    for _ in range(10):
        P = random_polygon(rng)
        r = minkowski_length(P)
        if not r.witness.summands:
            continue
        total = r.witness.summands[0]
        for s in r.witness.summands[1:]:
            total = minkowski_sum(total, s)
        assert contains_translate(total, P) is not None
