"""Complete simplicial fans and the star-convexity classifier.

A Fan is a table of primitive integer rays plus maximal cones given as
ray-index sets; all cone identity is by index set.  The classifier decides,
for every ray, whether the union of cones containing it has convex support,
convex and line-free support, or additionally exposes every cone of the
ray's link; fans are graded NotLocallyConvex < LocallyConvex <
LocallyPointedConvex < LocallyStronglyConvex by the minimum over rays.

Convexity is decided globally: the support of a star is compared against its
convex hull by checking which maximal cones of the fan meet the hull in full
dimension.  Full-dimensionality of exact cone intersections is settled by
enumerating extreme rays of the intersection (double description at desk
scale), with cheap interior-point and separating-facet shortcuts first.

Fans are immutable after construction; per-ray classification is pure and
cached on the instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from itertools import combinations
from math import lcm

from torsig.errors import NotSimpleError, NotSimplicialError
from torsig.linalg import (
    IVec,
    dot,
    hyperplane_normal,
    int_det,
    nullspace,
    rank,
    scale_to_primitive,
    vneg,
)

Cone = frozenset


class ConvexityClass(IntEnum):
    """Star-convexity levels, ordered so that stronger compares greater."""

    NOT_LOCALLY_CONVEX = 0
    LOCALLY_CONVEX = 1
    LOCALLY_POINTED_CONVEX = 2
    LOCALLY_STRONGLY_CONVEX = 3

    @property
    def label(self) -> str:
        return {
            ConvexityClass.NOT_LOCALLY_CONVEX: "NotLocallyConvex",
            ConvexityClass.LOCALLY_CONVEX: "LocallyConvex",
            ConvexityClass.LOCALLY_POINTED_CONVEX: "LocallyPointedConvex",
            ConvexityClass.LOCALLY_STRONGLY_CONVEX: "LocallyStronglyConvex",
        }[self]

    @classmethod
    def from_label(cls, label: str) -> "ConvexityClass":
        for member in cls:
            if member.label == label:
                return member
        raise ValueError(f"unknown convexity class {label!r}")


@dataclass(frozen=True)
class ConeH:
    """H-description of a cone: {x : <x, n> >= 0 for all facet normals}.

    lineality_basis spans the kernel of the normal matrix; an empty normal
    list means the whole space.
    """

    facet_normals: tuple[IVec, ...]
    lineality_basis: tuple[IVec, ...]


@dataclass(frozen=True)
class FanClassification:
    per_ray: tuple[ConvexityClass, ...]
    overall: ConvexityClass


class Fan:
    """Complete simplicial fan: primitive rays plus maximal cones of full size."""

    def __init__(self, dim: int, rays, max_cones, validate: bool = True):
        self.dim = dim
        self.rays: tuple[IVec, ...] = tuple(tuple(int(c) for c in r) for r in rays)
        self.max_cones: tuple[Cone, ...] = tuple(frozenset(c) for c in max_cones)
        self._mult: dict[Cone, int] = {}
        self._classification: FanClassification | None = None
        self._complete: bool | None = None
        if validate:
            self._validate()

    def _validate(self) -> None:
        if any(len(r) != self.dim for r in self.rays):
            raise ValueError("ray dimension mismatch")
        for r in self.rays:
            if tuple(scale_to_primitive(r)) != r:
                raise ValueError(f"ray {r} is not primitive")
        if len(set(self.rays)) != len(self.rays):
            raise ValueError("duplicate rays")
        used = set()
        for c in self.max_cones:
            if len(c) != self.dim:
                raise NotSimplicialError("maximal cone of wrong size")
            if self.multiplicity(c) == 0:
                raise NotSimplicialError("maximal cone with dependent rays")
            used |= c
        if used != set(range(len(self.rays))):
            raise ValueError("every ray must appear in some maximal cone")

    def multiplicity(self, cone: Cone) -> int:
        """|det| of the primitive ray generators of a maximal cone."""
        c = frozenset(cone)
        if c not in self._mult:
            self._mult[c] = abs(int_det([self.rays[i] for i in sorted(c)]))
        return self._mult[c]

    def max_cones_with_ray(self, ray: int) -> list[Cone]:
        return [c for c in self.max_cones if ray in c]

    def is_complete(self) -> bool:
        """Wall test: every (dim-1)-face of a maximal cone lies in exactly two."""
        if self._complete is None:
            counts: dict[Cone, int] = {}
            for c in self.max_cones:
                for i in c:
                    wall = c - {i}
                    counts[wall] = counts.get(wall, 0) + 1
            self._complete = bool(self.max_cones) and all(
                v == 2 for v in counts.values()
            )
        return self._complete

    def spans_cone(self, indices) -> bool:
        """True iff the index set spans a cone of the fan."""
        s = frozenset(indices)
        return any(s <= c for c in self.max_cones)

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dim,
            "rays": [[str(c) for c in r] for r in self.rays],
            "max_cones": sorted(sorted(c) for c in self.max_cones),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Fan":
        dim = int(data["dim"])
        rays = [tuple(int(Fraction(c)) for c in r) for r in data["rays"]]
        cones = [frozenset(int(i) for i in c) for c in data["max_cones"]]
        return cls(dim, rays, cones)

    def __repr__(self) -> str:
        return f"Fan(dim {self.dim}, {len(self.rays)} rays, {len(self.max_cones)} max cones)"


# ---------------------------------------------------------------------------
# Construction


def normal_fan(p) -> Fan:
    """Inner-normal fan of a full-dimensional simple rational polytope.

    Rays are the primitive inner facet normals; each vertex contributes the
    maximal cone spanned by the normals of its facets.
    """
    if p.intrinsic_dim != p.ambient_dim:
        raise ValueError(
            "normal_fan needs a full-dimensional polytope; use project_full_dim first"
        )
    if not p.is_simple():
        raise NotSimpleError("normal_fan of a non-simple polytope")
    rays = [f.inner_normal for f in p.facets]
    cones = [frozenset(p.vertex_facets(v)) for v in range(p.n_vertices)]
    return Fan(p.ambient_dim, rays, cones)


def arrangement_fan(normals) -> Fan:
    """Fan of chambers of a central hyperplane arrangement.

    Chambers are enumerated by feasible sign vectors; their extreme rays are
    extracted exactly.  Raises NotSimplicialError when some chamber is not a
    simplicial cone (including non-essential arrangements).
    """
    hyps = []
    seen = set()
    for n in normals:
        p = scale_to_primitive(n)
        key = p if p > vneg(p) else vneg(p)
        if key not in seen:
            seen.add(key)
            hyps.append(key)
    if not hyps:
        raise ValueError("arrangement_fan needs at least one hyperplane")
    d = len(hyps[0])
    if nullspace(hyps):
        raise NotSimplicialError(
            "arrangement is not essential: chambers contain a line"
        )
    ray_table: dict[IVec, int] = {}
    cones = []
    m = len(hyps)
    for bits in range(1 << m):
        signs = [1 if bits >> i & 1 else -1 for i in range(m)]
        rows = [tuple(s * x for x in h) for s, h in zip(signs, hyps)]
        chamber_rays = set()
        for subset in combinations(range(m), d - 1):
            v = hyperplane_normal([rows[i] for i in subset], d)
            if v is None:
                continue
            if all(dot(r, v) >= 0 for r in rows):
                chamber_rays.add(v)
            elif all(dot(r, v) <= 0 for r in rows):
                chamber_rays.add(vneg(v))
        rays = sorted(chamber_rays)
        if rank(rays) < d:
            continue
        if len(rays) != d:
            raise NotSimplicialError(
                f"chamber with {len(rays)} extreme rays in dimension {d}"
            )
        idx = []
        for r in rays:
            if r not in ray_table:
                ray_table[r] = len(ray_table)
            idx.append(ray_table[r])
        cones.append(frozenset(idx))
    table = sorted(ray_table, key=ray_table.get)
    fan = Fan(d, table, cones)
    if not fan.is_complete():
        raise NotSimplicialError("sign-vector chambers do not tile the space")
    return fan


# ---------------------------------------------------------------------------
# Stars, links, hulls


def star(fan: Fan, ray: int) -> set[Cone]:
    """All nonempty cones lying in a common cone with the given ray."""
    out: set[Cone] = set()
    for c in fan.max_cones_with_ray(ray):
        members = sorted(c)
        for k in range(1, len(members) + 1):
            for sub in combinations(members, k):
                out.add(frozenset(sub))
    return out


def link(fan: Fan, ray: int) -> set[Cone]:
    """Cones of the star meeting the ray's cone only at the origin."""
    return {c for c in star(fan, ray) if ray not in c}


def star_ray_indices(fan: Fan, ray: int) -> tuple[int, ...]:
    return tuple(sorted({i for c in fan.max_cones_with_ray(ray) for i in c}))


def cone_hull(rays) -> ConeH:
    """H-description of the positive hull of full-dimensional ray sets.

    Facets are found by brute force over (d-1)-subsets spanning a hyperplane
    with all rays on one side.  When no valid facet exists the hull is the
    whole space: empty facet list, full lineality.
    """
    vecs = [tuple(int(c) for c in r) for r in rays]
    if not vecs:
        raise ValueError("cone_hull of no rays")
    d = len(vecs[0])
    normals = set()
    seen_hyperplanes = set()
    for subset in combinations(range(len(vecs)), d - 1):
        n = hyperplane_normal([vecs[i] for i in subset], d)
        if n is None:
            continue
        key = n if n > vneg(n) else vneg(n)
        if key in seen_hyperplanes:
            continue
        seen_hyperplanes.add(key)
        vals = [dot(n, v) for v in vecs]
        if all(x >= 0 for x in vals):
            normals.add(n)
        if all(x <= 0 for x in vals):
            normals.add(vneg(n))
    facet_normals = tuple(sorted(normals))
    if facet_normals:
        lineality = tuple(
            scale_to_primitive(v) for v in nullspace(facet_normals)
        )
    else:
        lineality = tuple(
            tuple(1 if i == j else 0 for j in range(d)) for i in range(d)
        )
    return ConeH(facet_normals, lineality)


def simplicial_cone_normals(ray_vectors) -> list[IVec]:
    """Facet normals of the simplicial cone spanned by independent rays."""
    d = len(ray_vectors[0])
    if len(ray_vectors) != d:
        raise ValueError("simplicial cone needs exactly dim rays")
    out = []
    for i in range(d):
        others = [ray_vectors[j] for j in range(d) if j != i]
        n = hyperplane_normal(others, d)
        if n is None:
            raise NotSimplicialError("dependent rays in simplicial cone")
        s = dot(n, ray_vectors[i])
        if s == 0:
            raise NotSimplicialError("dependent rays in simplicial cone")
        out.append(n if s > 0 else vneg(n))
    return out


def _row_basis(rows):
    out = []
    for r in rows:
        if rank(out + [r]) > len(out):
            out.append(r)
    return out


def h_cone_generators(rows, d: int):
    """Generators (lineality basis, extreme-ray list) of {x : <row, x> >= 0}.

    Splits off the lineality space, then enumerates extreme rays of the
    pointed quotient cone from (r-1)-subsets of constraints; returned rays
    are lifted back to the original coordinates.
    """
    if not rows:
        identity = [tuple(1 if i == j else 0 for j in range(d)) for i in range(d)]
        return identity, []
    lin = nullspace(rows)
    ldim = len(lin)
    if ldim == d:
        return lin, []
    if ldim:
        w = _row_basis(rows)
        arows = [tuple(dot(row, wb) for wb in w) for row in rows]
        r = len(w)
    else:
        w = None
        arows = list(rows)
        r = d
    cands = []
    if r == 1:
        for v in ((Fraction(1),), (Fraction(-1),)):
            if all(a[0] * v[0] >= 0 for a in arows):
                cands.append(v)
    else:
        for subset in combinations(range(len(arows)), r - 1):
            kern = nullspace([arows[i] for i in subset])
            if len(kern) != 1:
                continue
            v = kern[0]
            if all(dot(a, v) >= 0 for a in arows):
                cands.append(v)
            elif all(dot(a, v) <= 0 for a in arows):
                cands.append(vneg(v))
    if w is not None:
        # Lift quotient-coordinate rays back: x = sum_j t_j w_j.
        cands = [
            tuple(sum(t[j] * w[j][k] for j in range(r)) for k in range(d))
            for t in cands
        ]
    return lin, cands


def h_cone_dim(rows, d: int) -> int:
    """Dimension of {x : <row, x> >= 0 for all rows}."""
    lin, rays = h_cone_generators(rows, d)
    return len(lin) + rank(rays)


# ---------------------------------------------------------------------------
# Classification


def _intersection_full_dim(cone_rays, hull: ConeH, d: int) -> bool:
    """Decide whether a simplicial max cone meets the hull in full dimension."""
    centroid = tuple(sum(col) for col in zip(*cone_rays))
    if all(dot(n, centroid) > 0 for n in hull.facet_normals):
        return True
    for n in hull.facet_normals:
        if all(dot(n, r) <= 0 for r in cone_rays):
            return False
    rows = simplicial_cone_normals(cone_rays) + list(hull.facet_normals)
    return h_cone_dim(rows, d) == d


def _star_is_convex(fan: Fan, smax: set[Cone], hull: ConeH) -> bool:
    if not hull.facet_normals:
        # Hull is the whole space: convex only when the star covers everything.
        return len(smax) == len(fan.max_cones)
    for c in fan.max_cones:
        if c in smax:
            continue
        cone_rays = [fan.rays[i] for i in sorted(c)]
        if _intersection_full_dim(cone_rays, hull, fan.dim):
            return False
    return True


def _star_is_strong(fan: Fan, ray: int, smax: set[Cone], srays, hull: ConeH) -> bool:
    link_cones: set[Cone] = set()
    for c in smax:
        rest = sorted(c - {ray})
        for k in range(1, len(rest) + 1):
            for sub in combinations(rest, k):
                link_cones.add(frozenset(sub))
    for sigma in link_cones:
        svecs = [fan.rays[i] for i in sigma]
        active = [
            n
            for n in hull.facet_normals
            if all(dot(n, v) == 0 for v in svecs)
        ]
        if not active:
            return False
        exposed = {
            i
            for i in srays
            if all(dot(n, fan.rays[i]) == 0 for n in active)
        }
        if exposed != set(sigma):
            return False
    return True


def classify_ray(fan: Fan, ray: int) -> ConvexityClass:
    """Convexity class of the star of one ray."""
    smax = set(fan.max_cones_with_ray(ray))
    srays = star_ray_indices(fan, ray)
    hull = cone_hull([fan.rays[i] for i in srays])
    if not _star_is_convex(fan, smax, hull):
        return ConvexityClass.NOT_LOCALLY_CONVEX
    if not hull.facet_normals or hull.lineality_basis:
        return ConvexityClass.LOCALLY_CONVEX
    if _star_is_strong(fan, ray, smax, srays, hull):
        return ConvexityClass.LOCALLY_STRONGLY_CONVEX
    return ConvexityClass.LOCALLY_POINTED_CONVEX


def classify(fan: Fan) -> FanClassification:
    """Per-ray convexity classes and their minimum over all rays."""
    if fan._classification is not None:
        return fan._classification
    if not fan.is_complete():
        raise NotSimplicialError("classify needs a complete simplicial fan")
    per_ray = tuple(classify_ray(fan, i) for i in range(len(fan.rays)))
    overall = min(per_ray)
    result = FanClassification(per_ray, overall)
    fan._classification = result
    return result


def is_flag(fan: Fan) -> bool:
    """True iff every pairwise-adjacent ray set spans a cone of the fan."""
    n = len(fan.rays)
    adj: list[set[int]] = [set() for _ in range(n)]
    for c in fan.max_cones:
        for i in c:
            for j in c:
                if i != j:
                    adj[i].add(j)

    def grow(clique: frozenset, cands: set[int]) -> bool:
        for v in sorted(cands):
            s = clique | {v}
            if not fan.spans_cone(s):
                return False
            if not grow(s, {u for u in cands if u > v and u in adj[v]}):
                return False
        return True

    for i in range(n):
        for j in sorted(adj[i]):
            if j <= i:
                continue
            cands = {u for u in adj[i] & adj[j] if u > j}
            if not grow(frozenset((i, j)), cands):
                return False
    return True


def singularity_index(fan: Fan) -> int:
    """lcm over maximal cones of |det| of the primitive ray generators.

    Equals 1 exactly when the fan is unimodular (the Delzant case).
    """
    return lcm(*(fan.multiplicity(c) for c in fan.max_cones))


def fan_sigma(fan: Fan) -> int:
    """Alternating h-sum of the fan from its own cone counts.

    Counts distinct cones of each dimension and evaluates the matching face
    polynomial at -2; for a normal fan this equals the polytope's value.
    """
    d = fan.dim
    seen: set[Cone] = set()
    for c in fan.max_cones:
        members = sorted(c)
        for k in range(1, d + 1):
            for sub in combinations(members, k):
                seen.add(frozenset(sub))
    counts = [0] * (d + 1)
    counts[0] = 1
    for c in seen:
        counts[len(c)] += 1
    return sum(counts[k] * (-2) ** (d - k) for k in range(d + 1))
