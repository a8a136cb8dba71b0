"""Built-in polytope families and the labeled example corpus.

Generators supply facet structure analytically, so no hull enumeration runs
even for the larger permutohedra; brute-force hulls stay reserved for small
ad-hoc inputs.  Families living in a hyperplane (permutohedra, associahedra)
are returned in full-dimensional saturated-lattice coordinates; their
hyperplane presentations remain available because Euclidean angle data only
makes sense in the ambient metric of the original realization.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations

from torsig.fan import Fan, arrangement_fan
from torsig.linalg import dot, saturated_basis
from torsig.polytope import Facet, Polytope, product

F0 = Fraction(0)


def cube(d: int) -> Polytope:
    """Unit cube [0,1]^d with its 2d coordinate facets."""
    if d < 1:
        raise ValueError("cube needs d >= 1")
    vertices = []
    for bits in range(1 << d):
        vertices.append(tuple(Fraction(bits >> i & 1) for i in range(d)))
    facets = []
    for i in range(d):
        e = tuple(1 if j == i else 0 for j in range(d))
        facets.append(Facet(e, F0))
        facets.append(Facet(tuple(-x for x in e), Fraction(-1)))
    return Polytope(d, tuple(vertices), tuple(facets))


def permutohedron_ambient(n: int) -> Polytope:
    """Permutohedron on n letters in the hyperplane sum(x) = n(n-1)/2.

    Vertices are the permutations of (0, 1, ..., n-1); one facet per proper
    nonempty position set S, with inequality sum_{i in S} x_i >= |S|(|S|-1)/2
    (tight exactly when the positions S hold the |S| smallest values).
    """
    if n < 2:
        raise ValueError("permutohedron needs n >= 2")
    vertices = tuple(
        tuple(Fraction(v) for v in perm) for perm in permutations(range(n))
    )
    facets = []
    for k in range(1, n):
        threshold = Fraction(k * (k - 1), 2)
        for s in combinations(range(n), k):
            normal = tuple(1 if i in s else 0 for i in range(n))
            facets.append(Facet(normal, threshold))
    return Polytope(n, vertices, tuple(facets))


def permutohedron(n: int) -> Polytope:
    """Full-dimensional permutohedron, rewritten to saturated lattice coordinates."""
    projected, _ = permutohedron_ambient(n).project_full_dim()
    return projected


@lru_cache(maxsize=None)
def _loday_points(nleaves: int) -> tuple[tuple[int, ...], ...]:
    """Vertex coordinate vectors, one per planar binary tree on nleaves leaves.

    The i-th coordinate is (leaves left of internal node i) * (leaves right
    of it), nodes numbered in left-to-right order.
    """
    if nleaves == 1:
        return ((),)
    out = []
    for k in range(1, nleaves):
        for left in _loday_points(k):
            for right in _loday_points(nleaves - k):
                out.append(left + (k * (nleaves - k),) + right)
    return tuple(out)


def associahedron_ambient(n: int) -> Polytope:
    """Associahedron of the n-gon in the hyperplane sum(x) = binom(n-1, 2).

    Vertices correspond to triangulations of a convex n-gon (equivalently
    binary trees on n-1 leaves); one facet per contiguous coordinate interval
    [i, j] other than the whole range, with inequality
    sum_{k=i..j} x_k >= L(L+1)/2 for L = j - i + 1.
    """
    if n < 4:
        raise ValueError("associahedron needs n >= 4")
    nodes = n - 2
    vertices = tuple(
        tuple(Fraction(c) for c in v) for v in _loday_points(n - 1)
    )
    facets = []
    for i in range(nodes):
        for j in range(i, nodes):
            if i == 0 and j == nodes - 1:
                continue
            length = j - i + 1
            normal = tuple(1 if i <= k <= j else 0 for k in range(nodes))
            facets.append(Facet(normal, Fraction(length * (length + 1), 2)))
    return Polytope(nodes, vertices, tuple(facets))


def associahedron(n: int) -> Polytope:
    """Full-dimensional associahedron in saturated lattice coordinates."""
    projected, _ = associahedron_ambient(n).project_full_dim()
    return projected


_POLYGON_PRESETS = ("triangle", "square", "rectangle-2x1", "delzant-hexagon",
                    "obtuse-pentagon")


def polygon(preset: str) -> Polytope:
    """Named polygon presets used throughout the test corpus."""
    if preset == "triangle":
        return Polytope(
            2,
            (vec2(0, 0), vec2(1, 0), vec2(0, 1)),
            (
                Facet((1, 0), F0),
                Facet((0, 1), F0),
                Facet((-1, -1), Fraction(-1)),
            ),
        )
    if preset == "square":
        return cube(2)
    if preset == "rectangle-2x1":
        return Polytope(
            2,
            (vec2(0, 0), vec2(2, 0), vec2(2, 1), vec2(0, 1)),
            (
                Facet((1, 0), F0),
                Facet((0, 1), F0),
                Facet((-1, 0), Fraction(-2)),
                Facet((0, -1), Fraction(-1)),
            ),
        )
    if preset == "delzant-hexagon":
        return permutohedron(3)
    if preset == "obtuse-pentagon":
        # Integer pentagon with every corner strictly obtuse (checked in tests).
        return Polytope(
            2,
            (vec2(0, 0), vec2(3, 0), vec2(4, 2), vec2(2, 4), vec2(-1, 2)),
            (
                Facet((0, 1), F0),
                Facet((-2, 1), Fraction(-6)),
                Facet((-1, -1), Fraction(-6)),
                Facet((2, -3), Fraction(-8)),
                Facet((2, 1), F0),
            ),
        )
    raise ValueError(f"unknown polygon preset {preset!r}; options: {_POLYGON_PRESETS}")


def vec2(a, b) -> tuple[Fraction, Fraction]:
    return (Fraction(a), Fraction(b))


_ARRANGEMENT_PRESETS = ("coordinate", "A2", "B2")


def _restrict_to_span(normals) -> list[tuple[int, ...]]:
    """Rewrite hyperplane normals as functionals on their own span."""
    basis = saturated_basis([tuple(Fraction(c) for c in n) for n in normals])
    return [tuple(dot(n, b) for b in basis) for n in normals]


def arrangement_preset(name: str) -> Fan:
    """Chamber fans of small reflection-style arrangements."""
    if name == "coordinate":
        return arrangement_fan([(1, 0), (0, 1)])
    if name == "A2":
        ambient = [(1, -1, 0), (1, 0, -1), (0, 1, -1)]
        return arrangement_fan(_restrict_to_span(ambient))
    if name == "B2":
        return arrangement_fan([(1, 0), (0, 1), (1, 1), (1, -1)])
    raise ValueError(
        f"unknown arrangement preset {name!r}; options: {_ARRANGEMENT_PRESETS}"
    )


@dataclass(frozen=True)
class CorpusEntry:
    """A named polytope with frozen expected values.

    `polytope` is the full-dimensional working model (what the fan machinery
    consumes); `euclidean_model` is the presentation whose ambient metric
    carries the angle data, which differs whenever the family is naturally
    realized inside a hyperplane.  Expected-value provenance is recorded in
    `notes`.
    """

    name: str
    polytope: Polytope
    euclidean_model: Polytope
    expected: dict = field(default_factory=dict)
    notes: str = ""


def _entry(name, poly, euclid=None, notes="", **expected) -> CorpusEntry:
    return CorpusEntry(name, poly, euclid if euclid is not None else poly,
                       dict(expected), notes)


@lru_cache(maxsize=1)
def corpus() -> tuple[CorpusEntry, ...]:
    """The labeled example suite, products included."""
    tri = polygon("triangle")
    sq = polygon("square")
    hexa = polygon("delzant-hexagon")
    hex_ambient = permutohedron_ambient(3)
    perm4a, perm5a = permutohedron_ambient(4), permutohedron_ambient(5)
    entries = [
        _entry(
            "triangle", tri,
            f=(3, 3, 1), sigma=1, m=1, convexity="NotLocallyConvex",
            angle="Neither", flag=False,
            notes="f(-2) = 3 - 6 + 4 by hand; 45-degree corners are acute",
        ),
        _entry(
            "square", sq,
            f=(4, 4, 1), sigma=0, m=1, convexity="LocallyConvex",
            angle="NonAcuteOnly", flag=True,
            notes="every star of the coordinate-cross fan is a halfplane",
        ),
        _entry(
            "rectangle-2x1", polygon("rectangle-2x1"),
            f=(4, 4, 1), sigma=0, m=1, convexity="LocallyConvex",
            angle="NonAcuteOnly",
            notes="same fan as the square: convex stars, none pointed",
        ),
        _entry(
            "obtuse-pentagon", polygon("obtuse-pentagon"),
            f=(5, 5, 1), sigma=-1, m=120, convexity="LocallyStronglyConvex",
            angle="Obtuse",
            notes="all five corner inner products negative by hand; "
                  "cone dets 2,2,3,5,8 give m = 120",
        ),
        _entry(
            "delzant-hexagon", hexa, hex_ambient,
            f=(6, 6, 1), sigma=-2, m=1, convexity="LocallyStronglyConvex",
            angle="Obtuse", flag=True,
            notes="hexagon of permutations of (0,1,2); unimodular fan, "
                  "120-degree corners in the hyperplane metric",
        ),
        _entry(
            "cube-3", cube(3),
            f=(8, 12, 6, 1), sigma=0, m=1, convexity="LocallyConvex",
            angle="NonAcuteOnly",
            notes="right angles everywhere; odd dimension forces sigma = 0",
        ),
        _entry(
            "cube-4", cube(4),
            f=(16, 32, 24, 8, 1), sigma=0, m=1, convexity="LocallyConvex",
            angle="NonAcuteOnly",
            notes="f(-2) of (1+2t)^4-style expansion: 16-64+96-64+16 = 0",
        ),
        _entry(
            "permutohedron-2", permutohedron(2), permutohedron_ambient(2),
            f=(2, 1), sigma=0, m=1, convexity="LocallyStronglyConvex",
            notes="segment; link conditions are vacuous in dimension 1",
        ),
        _entry(
            "permutohedron-4", permutohedron(4), perm4a,
            f=(24, 36, 14, 1), sigma=0, m=1,
            convexity="LocallyPointedConvex", angle="NonAcuteOnly",
            notes="face counts are ordered set partitions of 4; square "
                  "2-faces rule out obtuseness, flat walls rule out strong",
        ),
        _entry(
            "permutohedron-5", permutohedron(5), perm5a,
            f=(120, 240, 150, 30, 1), sigma=16, m=1,
            convexity="LocallyPointedConvex", angle="NonAcuteOnly",
            notes="sigma = 5! [x^5] tanh = 16; ordered set partitions of 5",
        ),
        _entry(
            "associahedron-4", associahedron(4), associahedron_ambient(4),
            f=(2, 1), sigma=0,
            notes="segment between the two bracketings of three factors",
        ),
        _entry(
            "associahedron-5", associahedron(5), associahedron_ambient(5),
            f=(5, 5, 1), sigma=-1, convexity="LocallyConvex",
            notes="pentagon; interval facets [1,j] give halfplane stars, "
                  "so convex but never pointed",
        ),
        _entry(
            "associahedron-6", associahedron(6), associahedron_ambient(6),
            f=(14, 21, 9, 1), sigma=0, convexity="LocallyConvex",
            notes="14 triangulations of the hexagon, 9 interval facets",
        ),
        _entry(
            "associahedron-7", associahedron(7), associahedron_ambient(7),
            f=(42, 84, 56, 14, 1), sigma=2, convexity="LocallyConvex",
            notes="signed Catalan value +C_3 = 2",
        ),
        _entry(
            "associahedron-8", associahedron(8), associahedron_ambient(8),
            f=(132, 330, 300, 120, 20, 1), sigma=0, convexity="LocallyConvex",
            notes="132 triangulations of the octagon; even case gives 0",
        ),
        _entry(
            "square-x-square", product(sq, sq),
            f=(16, 32, 24, 8, 1), sigma=0, m=1, convexity="LocallyConvex",
            angle="NonAcuteOnly",
            notes="(4+4t+t^2)^2 expanded; product stars inherit lineality",
        ),
        _entry(
            "triangle-x-triangle", product(tri, tri),
            f=(9, 18, 15, 6, 1), sigma=1, m=1, convexity="NotLocallyConvex",
            angle="Neither", flag=False,
            notes="(3+3t+t^2)^2 expanded; sigma multiplicative: 1*1",
        ),
        _entry(
            "hexagon-x-hexagon", product(hexa, hexa),
            product(hex_ambient, hex_ambient),
            f=(36, 72, 48, 12, 1), sigma=4, m=1, convexity="LocallyConvex",
            angle="NonAcuteOnly",
            notes="(6+6t+t^2)^2 expanded; sigma multiplicative: (-2)^2",
        ),
    ]
    return tuple(entries)


def corpus_entry(name: str) -> CorpusEntry:
    for e in corpus():
        if e.name == name:
            return e
    raise ValueError(f"no corpus entry named {name!r}")
