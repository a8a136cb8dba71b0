from fractions import Fraction
from math import comb

import pytest

from torsig.fan import (
    ConvexityClass,
    classify,
    cone_hull,
    h_cone_generators,
    is_flag,
    normal_fan,
    singularity_index,
    star_ray_indices,
)
from torsig.generators import (
    associahedron,
    associahedron_ambient,
    corpus,
    corpus_entry,
    cube,
    permutohedron,
    permutohedron_ambient,
    polygon,
)
from torsig.invariants import h_vector, sigma
from torsig.linalg import dot, solve
from torsig.polytope import AngleClass

F = Fraction


def test_cube_examples():
    assert cube(2).f_vector() == (4, 4, 1)
    assert cube(3).f_vector() == (8, 12, 6, 1)
    assert sigma(cube(4).f_vector()) == 0
    with pytest.raises(ValueError):
        cube(0)


def test_polygon_presets():
    assert polygon("triangle").f_vector() == (3, 3, 1)
    assert polygon("rectangle-2x1").n_facets == 4
    with pytest.raises(ValueError):
        polygon("heptagon")


def test_permutohedron_structure():
    p = permutohedron(4)
    assert p.ambient_dim == 3
    assert p.n_vertices == 24
    assert p.n_facets == 14
    assert p.is_simple()
    with pytest.raises(ValueError):
        permutohedron(1)


def test_permutohedron_euclidean_invariants():
    # Hyperplane realizations are non-acute for n <= 5, and adjacent facet
    # normals are never orthogonal (obtuse in codimension one).
    for n in range(2, 6):
        ambient = permutohedron_ambient(n)
        assert ambient.angle_class() in (
            AngleClass.NON_ACUTE_ONLY,
            AngleClass.OBTUSE,
        )
        projected, _ = ambient.project_full_dim()
        fan = normal_fan(projected)
        for c in fan.max_cones:
            members = sorted(c)
            for i in members:
                for j in members:
                    if i < j:
                        na = ambient.facets[i].inner_normal
                        nb = ambient.facets[j].inner_normal
                        assert dot(na, nb) > 0


def test_associahedron_counts():
    for n in range(4, 9):
        a = associahedron(n)
        assert a.ambient_dim == n - 3
        assert a.n_vertices == comb(2 * (n - 2), n - 2) // (n - 1)  # Catalan
        assert a.n_facets == n * (n - 3) // 2
        assert a.is_simple()
    with pytest.raises(ValueError):
        associahedron(3)


def test_associahedron_locally_convex_up_to_7():
    for n in range(4, 8):
        fan = normal_fan(associahedron(n))
        assert classify(fan).overall >= ConvexityClass.LOCALLY_CONVEX


def _interval_inequality_normals(n, i, j, basis):
    """Fan-coordinate normals of the region x_i..x_j >= x_(i-1), x_(j+1).

    Each ambient inequality e_k - e_b (k in [i, j], b a boundary neighbor)
    lies in the span of the projection basis; its coordinate vector there is
    the fan-space normal.
    """
    nodes = n - 2
    cols = [tuple(F(b[t]) for b in basis) for t in range(nodes)]
    normals = []
    for k in range(i, j + 1):
        for b in (i - 1, j + 1):
            if 0 <= b < nodes:
                w = [0] * nodes
                w[k], w[b] = 1, -1
                coeffs = solve(cols, w)
                assert coeffs is not None
                normals.append(coeffs)
    return normals


def _h_cones_equal(rows_a, rows_b, d):
    for outer, inner in ((rows_a, rows_b), (rows_b, rows_a)):
        lin, rays = h_cone_generators(list(inner), d)
        for v in rays:
            if any(dot(n, v) < 0 for n in outer):
                return False
        for v in lin:
            if any(dot(n, v) != 0 for n in outer):
                return False
    return True


def test_loday_fan_stars_match_interval_inequalities():
    # The star of the ray of facet [i, j] must be exactly the chambers where
    # the coordinates i..j dominate both boundary neighbors; checked for
    # n <= 6 by exact H-cone equality in fan coordinates.
    for n in (4, 5, 6):
        ambient = associahedron_ambient(n)
        projected, basis = ambient.project_full_dim()
        fan = normal_fan(projected)
        nodes = n - 2
        intervals = [
            (i, j)
            for i in range(nodes)
            for j in range(i, nodes)
            if not (i == 0 and j == nodes - 1)
        ]
        assert len(intervals) == len(fan.rays)
        d = fan.dim
        for ray_idx, (i, j) in enumerate(intervals):
            hull = cone_hull(
                [fan.rays[r] for r in star_ray_indices(fan, ray_idx)]
            )
            want = _interval_inequality_normals(n, i, j, basis)
            assert _h_cones_equal(list(hull.facet_normals), want, d), (n, i, j)


def test_corpus_contents():
    entries = corpus()
    assert len(entries) >= 12
    names = [e.name for e in entries]
    assert len(set(names)) == len(names)
    for required in (
        "triangle",
        "square",
        "delzant-hexagon",
        "square-x-square",
        "triangle-x-triangle",
        "hexagon-x-hexagon",
    ):
        assert required in names
    assert sigma(corpus_entry("hexagon-x-hexagon").polytope.f_vector()) == 4
    assert sigma(corpus_entry("triangle-x-triangle").polytope.f_vector()) == 1
    with pytest.raises(ValueError):
        corpus_entry("dodecahedron")


def test_corpus_all_simple():
    for e in corpus():
        assert e.polytope.is_simple(), e.name
        assert e.euclidean_model.is_simple(), e.name


def test_corpus_expected_values():
    for e in corpus():
        p = e.polytope
        exp = e.expected
        f = p.f_vector()
        if "f" in exp:
            assert f == exp["f"], e.name
        if "sigma" in exp:
            assert sigma(f) == exp["sigma"], e.name
        fan = normal_fan(p)
        if "m" in exp:
            assert singularity_index(fan) == exp["m"], e.name
        if "convexity" in exp:
            assert classify(fan).overall.label == exp["convexity"], e.name
        if "angle" in exp:
            assert e.euclidean_model.angle_class().label == exp["angle"], e.name
        if "flag" in exp:
            assert is_flag(fan) == exp["flag"], e.name
        assert e.notes


def test_product_fans_never_pointed():
    for name in ("square-x-square", "triangle-x-triangle", "hexagon-x-hexagon"):
        e = corpus_entry(name)
        fan = normal_fan(e.polytope)
        cls = classify(fan)
        assert cls.overall < ConvexityClass.LOCALLY_POINTED_CONVEX
        assert all(c < ConvexityClass.LOCALLY_POINTED_CONVEX for c in cls.per_ray)
        # The star of any ray contains the other factor's lineality.
        hull = cone_hull([fan.rays[i] for i in star_ray_indices(fan, 0)])
        assert not hull.facet_normals or hull.lineality_basis
