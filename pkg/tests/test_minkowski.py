import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from latwidth import linalg as la
from latwidth.corpus import CorpusSpec, exhaustive_symmetric, generate_corpus, random_unimodular
from latwidth.errors import HypothesisError
from latwidth.lattice import enumerate_lattice_points
from latwidth.minkowski import (
    Mod3Table,
    facet_layering,
    mod3_complete,
    recognize_cross_polytope,
    recognize_standard_cube,
    verify_3d_bound,
    verify_mink_equality,
    verify_packing,
    verify_vertex_bound,
)
from latwidth.polytope import affine_image, cross_polytope, cube, hull_canonicalize, volume
from latwidth.width import dual_body, lattice_width

from conftest import CROSS2, CUBE2, HEXAGON, SHEARED_CUBE, TRIANGLE

F = Fraction


class Test3dBound:
    def test_cube(self):
        rep = verify_3d_bound(CUBE2)
        assert rep.passed and rep.witnesses["count"] == 9 and rep.witnesses["gamma_bijective"]

    @pytest.mark.parametrize("P,n", [(CROSS2, 5), (HEXAGON, 7)])
    def test_strict(self, P, n):
        rep = verify_3d_bound(P)
        assert rep.passed and rep.witnesses["count"] == n and not rep.witnesses["gamma_bijective"]

    def test_hypotheses(self):
        with pytest.raises(HypothesisError, match="hypothesis: central symmetry failed"):
            verify_3d_bound(TRIANGLE)
        with pytest.raises(HypothesisError, match="interior lattice points"):
            verify_3d_bound(cube(2, 2))
        with pytest.raises(HypothesisError, match="full dimension"):
            verify_3d_bound(hull_canonicalize([(1, 1), (-1, -1)]))
        with pytest.raises(HypothesisError, match="central symmetry"):
            verify_3d_bound(hull_canonicalize([(0, 0), (2, 0), (0, 2), (2, 2)]))


class TestVertexBound:
    def test_cross(self):
        rep = verify_vertex_bound(CROSS2)
        assert rep.witnesses["applicable"] and rep.passed and rep.witnesses["count"] == 5

    def test_cube_not_applicable(self):
        rep = verify_vertex_bound(CUBE2)
        assert not rep.witnesses["applicable"]
        assert rep.witnesses["condition"] == "condition not applicable"
        pairs = {(w["point"], tuple(sorted(w["combination_of"]))) for w in rep.witnesses["all_witnesses"]}
        assert ((1, 0), ((1, -1), (1, 1))) in pairs

    def test_hexagon_tight(self):
        rep = verify_vertex_bound(HEXAGON)
        assert rep.passed and rep.witnesses["count"] == 7 == 2**3 - 1


class TestMod3:
    def test_examples(self):
        assert mod3_complete(CUBE2, (1, 1), (1, 0)) == ((1, -1), (1, 0))
        assert mod3_complete(CUBE2, (0, 0), (0, 0)) == ((0, 0), (0, 0))
        assert mod3_complete(CUBE2, (1, 1), (-1, -1)) == ((0, 0), (0, 0))

    def test_errors(self):
        with pytest.raises(HypothesisError, match="γ not bijective"):
            mod3_complete(CROSS2, (0, 0), (1, 0))
        with pytest.raises(HypothesisError):
            mod3_complete(CUBE2, (2, 0), (0, 0))

    @pytest.mark.parametrize("P", [CUBE2, SHEARED_CUBE, cube(3)])
    def test_algebra(self, P):
        pts = enumerate_lattice_points(P).points
        table = Mod3Table(pts)
        z = table.complete
        for x in pts:
            assert z(x, x)[0] == x
            for y in pts:
                zz, w = z(x, y)
                assert zz == z(y, x)[0]
                assert z(x, zz)[0] == y
                assert all(3 * b == a1 + a2 + a3 for a1, a2, a3, b in zip(x, y, zz, w))
                if x != y:
                    assert zz != x and zz != y


class TestLayering:
    def test_cube(self):
        rep = facet_layering(CUBE2)
        assert rep.passed and rep.bijection_ok and rep.prism_ok
        assert rep.facet.outer_normal == (1, 0) and rep.interior_point_x == (1, 0)
        top, mid, bot = rep.layers
        assert top == ((1, -1), (1, 0), (1, 1))
        assert mid == ((0, -1), (0, 0), (0, 1))
        assert bot == ((-1, -1), (-1, 0), (-1, 1))

    def test_sheared(self):
        rep = facet_layering(SHEARED_CUBE)
        assert rep.passed
        assert all(la.dot(rep.u_F, SHEARED_CUBE.vertices[i]) == 1 for i in rep.facet.vertex_indices)

    def test_cube3(self):
        rep = facet_layering(cube(3))
        assert rep.passed and rep.interior_point_x == (1, 0, 0)
        assert [len(L) for L in rep.layers] == [9, 9, 9]
        assert rep.face_witnesses[1]["dim"] >= 1 and rep.face_witnesses[2]["dim"] >= 2

    def test_requires_equality(self):
        with pytest.raises(HypothesisError):
            facet_layering(HEXAGON)


class TestRecognizers:
    def test_cube(self):
        assert recognize_standard_cube(CUBE2).basis == ((0, 1), (1, 0))
        assert recognize_standard_cube(SHEARED_CUBE).basis == ((1, 0), (1, 1))
        r = recognize_standard_cube(CROSS2)
        assert not r and "determinant" in r.reason

    def test_cube_requires_origin(self):
        assert not recognize_standard_cube(affine_image(CUBE2, t=(1, 0)))

    def test_cross(self):
        w = recognize_cross_polytope(hull_canonicalize([(2, 0), (-2, 0), (2, 2), (-2, -2)]))
        assert w and w.center == (0, 0) and w.scale == 2 and w.basis == ((1, 0), (1, 1))
        r = recognize_cross_polytope(hull_canonicalize([(1, 0), (-1, 0), (1, 2), (-1, -2)]))
        assert not r and "determinant 2" in r.reason
        r = recognize_cross_polytope(CUBE2)
        assert not r and "determinant" in r.reason

    def test_cross_translated_scaled(self):
        P = affine_image(cross_polytope(3), [[1, 1, 0], [0, 1, 0], [0, 0, -1]], (F(1, 2), 3, -1), F(3, 4))
        w = recognize_cross_polytope(P)
        assert w and w.scale == F(3, 4) and abs(la.det(w.basis)) == 1

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10**6), st.sampled_from([2, 3]))
    def test_invariance(self, seed, d):
        rng = random.Random(seed)
        T = random_unimodular(rng, d, 2)
        t = tuple(rng.randint(-2, 2) for _ in range(d))
        lam = F(rng.randint(1, 4), rng.randint(1, 3))
        assert recognize_standard_cube(affine_image(cube(d), T))
        assert recognize_cross_polytope(affine_image(cross_polytope(d), T, t, lam))
        assert not recognize_standard_cube(affine_image(cross_polytope(d), T))
        assert not recognize_cross_polytope(affine_image(cube(d), T, t, lam))

    def test_cross_duality(self):
        rng = random.Random(8)
        for d in (2, 3):
            for _ in range(3):
                T = random_unimodular(rng, d, 2)
                X = affine_image(cross_polytope(d), T, scale=F(5, 2))
                assert recognize_standard_cube(dual_body(lattice_width(X)).hull)
                C = affine_image(cube(d), T)
                assert recognize_cross_polytope(dual_body(lattice_width(C)).hull)


class TestPacking:
    def test_cube(self):
        rep = verify_packing(CUBE2)
        assert rep.passed and rep.witnesses["tiles"]
        assert rep.witnesses["packed_volume"] == 36 == rep.witnesses["volume_3P"]

    def test_cross(self):
        rep = verify_packing(CROSS2)
        assert rep.passed and not rep.witnesses["tiles"]
        assert (rep.witnesses["packed_volume"], rep.witnesses["volume_3P"]) == (10, 18)

    def test_hexagon(self):
        rep = verify_packing(HEXAGON)
        assert rep.passed and (rep.witnesses["packed_volume"], rep.witnesses["volume_3P"]) == (21, 27)


class TestEquality:
    def test_cube3(self):
        rep = verify_mink_equality(cube(3))
        assert rep.passed and rep.witnesses["count"] == 27

    def test_cross3(self):
        rep = verify_mink_equality(cross_polytope(3))
        assert rep.passed and rep.witnesses["count"] == 7 and rep.witnesses["cube"] is None

    def test_sheared(self):
        rep = verify_mink_equality(SHEARED_CUBE)
        assert rep.passed and rep.witnesses["count"] == 9


def test_verifiers_on_symmetric_corpus():
    corpus = exhaustive_symmetric(2, 2)
    corpus += generate_corpus(CorpusSpec(seed=9, dim=3, family="random-symmetric", bound=1, count=8))
    for P in corpus:
        d = P.dim_ambient
        assert verify_3d_bound(P).passed
        assert verify_packing(P).passed
        assert verify_mink_equality(P).passed
        assert volume(P) <= 2**d
        rep = verify_vertex_bound(P)
        assert rep.passed


def test_exhaustive_enumeration_against_independent_count():
    # float geometry is exact enough here: all coordinates are small integers
    shapely = pytest.importorskip("shapely.geometry")
    import itertools

    box = list(itertools.product(range(-2, 3), repeat=2))
    pairs = [p for p in box if p > (-p[0], -p[1])]
    seen = set()
    # a symmetric polygon with P°_Z = {0} has at most 6 vertices
    for k in (1, 2, 3):
        for sub in itertools.combinations(pairs, k):
            pts = list(sub) + [(-a, -b) for a, b in sub]
            hull = shapely.MultiPoint(pts).convex_hull
            if hull.geom_type != "Polygon":
                continue
            inner = [p for p in box if hull.contains(shapely.Point(p))]
            if inner == [(0, 0)]:
                seen.add(tuple(sorted(tuple(map(int, c)) for c in hull.exterior.coords[:-1])))
    ours = {tuple(tuple(int(a) for a in v) for v in P.vertices) for P in exhaustive_symmetric(2, 2)}
    assert len(ours) == len(seen) == 24
    assert ours == seen
