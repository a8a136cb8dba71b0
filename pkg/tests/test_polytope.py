import json
from fractions import Fraction
from itertools import permutations, product as iproduct
from random import Random

import pytest

from torsig.errors import EmptyError, StepLimitError, UnboundedError
from torsig.generators import cube, permutohedron_ambient, polygon
from torsig.polytope import AngleClass, Facet, Polytope, product

F = Fraction


def fr(*values):
    return tuple(F(v) for v in values)


# --- independent oracle -------------------------------------------------------


def ordered_set_partition_counts(n):
    """Number of ordered set partitions of an n-set by block count, brute force.

    The first block ranges over every nonempty subset of what remains, so the
    block sequence is ordered.
    """
    counts = {}

    def rec(remaining, blocks):
        if not remaining:
            counts[blocks] = counts.get(blocks, 0) + 1
            return
        members = sorted(remaining)
        for bits in range(1, 1 << len(members)):
            block = {members[i] for i in range(len(members)) if bits >> i & 1}
            rec(remaining - block, blocks + 1)

    rec(frozenset(range(n)), 0)
    return counts


# --- hulls ---------------------------------------------------------------------


def test_from_vertices_square():
    p = Polytope.from_vertices([fr(0, 0), fr(1, 0), fr(1, 1), fr(0, 1)])
    assert p.n_facets == 4
    assert p.intrinsic_dim == 2
    assert p.f_vector() == (4, 4, 1)


def test_from_vertices_triangle_normals():
    p = Polytope.from_vertices([fr(0, 0), fr(1, 0), fr(0, 1)])
    facets = {(f.inner_normal, f.offset) for f in p.facets}
    assert facets == {((1, 0), F(0)), ((0, 1), F(0)), ((-1, -1), F(-1))}


def test_from_vertices_discards_interior_points():
    pts = [fr(*bits) for bits in iproduct((0, 1), repeat=3)]
    pts.append(fr(F(1, 2), F(1, 2), F(1, 2)))
    p = Polytope.from_vertices(pts)
    assert p.n_vertices == 8
    assert p.n_facets == 6


def test_from_vertices_single_point_and_segment():
    pt = Polytope.from_vertices([fr(3, 4)])
    assert pt.intrinsic_dim == 0
    assert pt.f_vector() == (1,)
    seg = Polytope.from_vertices([fr(0, 0), fr(1, 1), fr(F(1, 2), F(1, 2))])
    assert seg.intrinsic_dim == 1
    assert seg.n_vertices == 2
    assert seg.f_vector() == (2, 1)


def test_from_halfspaces_square():
    facets = [
        Facet((1, 0), F(0)),
        Facet((0, 1), F(0)),
        Facet((-1, 0), F(-1)),
        Facet((0, -1), F(-1)),
    ]
    p = Polytope.from_halfspaces(facets, 2)
    assert set(p.vertices) == {fr(0, 0), fr(1, 0), fr(0, 1), fr(1, 1)}
    assert p.n_facets == 4


def test_from_halfspaces_triangle_drops_redundant():
    facets = [
        Facet((1, 0), F(0)),
        Facet((0, 1), F(0)),
        Facet((-1, -1), F(-1)),
        Facet((1, 1), F(0)),  # redundant: implied by the first two
    ]
    p = Polytope.from_halfspaces(facets, 2)
    assert p.n_facets == 3
    assert p.f_vector() == (3, 3, 1)


def test_from_halfspaces_unbounded_and_empty():
    with pytest.raises(UnboundedError):
        Polytope.from_halfspaces([Facet((1, 0), F(0)), Facet((0, 1), F(0))], 2)
    with pytest.raises(EmptyError):
        Polytope.from_halfspaces(
            [Facet((1, 0), F(1)), Facet((-1, 0), F(0)), Facet((0, 1), F(0)),
             Facet((0, -1), F(-1))],
            2,
        )
    # Empty even though a lineality direction exists.
    with pytest.raises(EmptyError):
        Polytope.from_halfspaces([Facet((1, 0), F(1)), Facet((-1, 0), F(0))], 2)


def test_halfspace_vertex_roundtrip():
    for name in ("triangle", "square", "obtuse-pentagon", "delzant-hexagon"):
        p = polygon(name)
        q = Polytope.from_halfspaces(p.facets, 2)
        assert set(q.vertices) == set(p.vertices)


# --- face lattice ----------------------------------------------------------------


def test_f_vector_examples():
    assert polygon("square").f_vector() == (4, 4, 1)
    assert cube(3).f_vector() == (8, 12, 6, 1)


def test_f_vector_permutohedron_against_partition_oracle():
    p = permutohedron_ambient(4)
    f = p.f_vector()
    counts = ordered_set_partition_counts(4)
    # Faces of dimension j correspond to ordered set partitions into n-j blocks.
    assert f == (counts[4], counts[3], counts[2], counts[1])
    assert f == (24, 36, 14, 1)


def test_euler_relation():
    for p in (polygon("triangle"), polygon("obtuse-pentagon"), cube(3), cube(4),
              permutohedron_ambient(4)):
        f = p.f_vector()
        assert sum((-1) ** i * fi for i, fi in enumerate(f)) == 1


def square_pyramid():
    return Polytope.from_vertices(
        [fr(1, 1, 0), fr(1, -1, 0), fr(-1, 1, 0), fr(-1, -1, 0), fr(0, 0, 1)]
    )


def test_is_simple():
    assert cube(3).is_simple()
    assert not square_pyramid().is_simple()
    assert permutohedron_ambient(4).is_simple()


def test_pyramid_f_vector():
    assert square_pyramid().f_vector() == (5, 8, 5, 1)


# --- angles ----------------------------------------------------------------------


def test_angle_class_examples():
    assert cube(3).angle_class() is AngleClass.NON_ACUTE_ONLY
    assert polygon("triangle").angle_class() is AngleClass.NEITHER
    assert polygon("obtuse-pentagon").angle_class() is AngleClass.OBTUSE


def test_obtuse_pentagon_corner_products_by_hand():
    p = polygon("obtuse-pentagon")
    verts = list(p.vertices)
    n = len(verts)
    # Walk the boundary in vertex order (the preset lists them cyclically).
    for i in range(n):
        prev, cur, nxt = verts[i - 1], verts[i], verts[(i + 1) % n]
        u1 = tuple(a - b for a, b in zip(prev, cur))
        u2 = tuple(a - b for a, b in zip(nxt, cur))
        assert sum(a * b for a, b in zip(u1, u2)) < 0


def test_angle_class_ambient_metric_nonfull_dim():
    # Regular hexagon inside the plane x+y+z = 3: every corner is obtuse.
    pts = [fr(*perm) for perm in permutations((0, 1, 2))]
    p = Polytope.from_vertices(pts)
    assert p.intrinsic_dim == 2
    assert p.angle_class() is AngleClass.OBTUSE


def test_angle_class_invariant_under_signed_permutations():
    rng = Random(31)
    for p in (polygon("obtuse-pentagon"), cube(3), polygon("triangle")):
        d = p.ambient_dim
        expected = p.angle_class()
        for _ in range(5):
            perm = list(range(d))
            rng.shuffle(perm)
            signs = [rng.choice((-1, 1)) for _ in range(d)]
            verts = [
                tuple(signs[j] * v[perm[j]] for j in range(d)) for v in p.vertices
            ]
            assert Polytope.from_vertices(verts).angle_class() is expected


# --- projection --------------------------------------------------------------------


def test_project_full_dim_segment():
    seg = Polytope.from_vertices([fr(0, 0), fr(1, 1)])
    q, basis = seg.project_full_dim()
    assert q.ambient_dim == 1
    assert basis == ((1, 1),)
    assert set(q.vertices) == {(F(0),), (F(1),)}


def test_project_full_dim_hexagon():
    pts = [fr(*perm) for perm in permutations((0, 1, 2))]
    p = Polytope.from_vertices(pts)
    q, basis = p.project_full_dim()
    assert q.ambient_dim == 2
    assert q.n_vertices == 6
    assert q.f_vector() == (6, 6, 1)
    # Basis spans the sum-zero direction space.
    assert all(sum(b) == 0 for b in basis)


def test_project_full_dim_identity_on_full():
    sq = polygon("square")
    q, basis = sq.project_full_dim()
    assert q is sq
    assert basis == ((1, 0), (0, 1))


# --- products ---------------------------------------------------------------------


def test_product_square_segment_is_cube():
    seg = Polytope.from_vertices([fr(0), fr(1)])
    p = product(polygon("square"), seg)
    assert p.f_vector() == cube(3).f_vector()
    assert p.is_simple()


def test_product_f_polynomial_multiplicative():
    cases = [
        (polygon("triangle"), polygon("triangle"), (9, 18, 15, 6, 1)),
        (polygon("delzant-hexagon"), polygon("delzant-hexagon"), (36, 72, 48, 12, 1)),
    ]
    for a, b, expected in cases:
        p = product(a, b)
        assert p.f_vector() == expected
        fa, fb = a.f_vector(), b.f_vector()
        conv = [0] * (len(fa) + len(fb) - 1)
        for i, x in enumerate(fa):
            for j, y in enumerate(fb):
                conv[i + j] += x * y
        assert p.f_vector() == tuple(conv)


# --- serialization -------------------------------------------------------------------


def test_json_roundtrip_with_facets():
    p = polygon("obtuse-pentagon")
    data = json.loads(json.dumps(p.to_json_dict()))
    q = Polytope.from_json_dict(data)
    assert q.vertices == p.vertices
    assert q.facets == p.facets


def test_json_without_facets_runs_hull():
    data = {"dim": 2, "vertices": [["0", "0"], ["1", "0"], ["0", "1"]]}
    q = Polytope.from_json_dict(data)
    assert q.n_facets == 3


def test_json_rejects_bad_facet():
    data = polygon("square").to_json_dict()
    data["facets"][0]["offset"] = "5"
    with pytest.raises(ValueError):
        Polytope.from_json_dict(data)


def test_rational_coordinates_roundtrip():
    p = Polytope.from_vertices([fr(0, 0), fr(F(1, 3), 0), fr(0, F(2, 5))])
    data = p.to_json_dict()
    assert ["1/3", "0"] in data["vertices"]
    q = Polytope.from_json_dict(data)
    assert set(q.vertices) == set(p.vertices)


# --- guards -----------------------------------------------------------------------


def test_step_limit_guard(monkeypatch):
    monkeypatch.setenv("TORSIG_STEP_LIMIT", "10")
    with pytest.raises(StepLimitError):
        Polytope.from_vertices([fr(0, 0), fr(1, 0), fr(0, 1), fr(1, 1)])
    monkeypatch.setenv("TORSIG_STEP_LIMIT", "1000000")
    p = Polytope.from_vertices([fr(0, 0), fr(1, 0), fr(0, 1), fr(1, 1)])
    assert p.n_facets == 4


def test_duplicate_vertices_rejected():
    with pytest.raises(ValueError):
        Polytope(1, ((F(0),), (F(0),)), ())
