"""Rational polytopes: hulls, face lattices, angles, projections, products.

A Polytope stores exact rational vertices together with an irredundant list
of integer-normal facets and the vertex-facet incidence.  The face lattice is
enumerated from the incidence alone (closed vertex sets under intersections
of facet vertex sets), never by recomputing hulls, and face dimensions come
from ranks of active facet normals restricted to the direction space, so
everything works for polytopes sitting in a proper affine subspace.

Instances are immutable after construction; all operations are pure.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from math import comb, gcd

from torsig.errors import EmptyError, StepLimitError, UnboundedError
from torsig.linalg import (
    IVec,
    Vec,
    dot,
    nullspace,
    rank,
    saturated_basis,
    scale_to_primitive,
    solve,
    vec,
    vsub,
)

_DEFAULT_STEP_LIMIT = 10**8


def _step_limit() -> int:
    return int(os.environ.get("TORSIG_STEP_LIMIT", str(_DEFAULT_STEP_LIMIT)))


def _guard_steps(steps: int, what: str) -> None:
    limit = _step_limit()
    if steps > limit:
        raise StepLimitError(
            f"{what} needs ~{steps} elementary steps, over the limit {limit} "
            "(set TORSIG_STEP_LIMIT to raise it)"
        )


class AngleClass(Enum):
    """Euclidean angle classification from the corners of all 2-faces."""

    OBTUSE = "Obtuse"
    NON_ACUTE_ONLY = "NonAcuteOnly"
    NEITHER = "Neither"

    @property
    def label(self) -> str:
        return self.value

    @property
    def non_acute(self) -> bool:
        return self is not AngleClass.NEITHER


@dataclass(frozen=True)
class Facet:
    """Supporting halfspace <x, inner_normal> >= offset with primitive integer normal."""

    inner_normal: IVec
    offset: Fraction

    def value_at(self, point: Vec) -> Fraction:
        return dot(point, self.inner_normal) - self.offset


class Polytope:
    """Immutable rational polytope with exact incidence data."""

    def __init__(
        self,
        ambient_dim: int,
        vertices: tuple[Vec, ...],
        facets: tuple[Facet, ...],
        validate: bool = True,
    ):
        self.ambient_dim = ambient_dim
        self.vertices = vertices
        self.facets = facets
        if len(set(vertices)) != len(vertices):
            raise ValueError("duplicate vertices")
        if not vertices:
            raise ValueError("a polytope needs at least one vertex")
        if any(len(v) != ambient_dim for v in vertices):
            raise ValueError("vertex dimension mismatch")

        base = vertices[0]
        dirs = [vsub(v, base) for v in vertices[1:]]
        basis = tuple(saturated_basis(dirs)) if dirs else ()
        self._base = base
        self._dir_basis: tuple[IVec, ...] = tuple(tuple(b) for b in basis)
        self.intrinsic_dim = len(self._dir_basis)
        self._ycoords = self._project_points(vertices)

        # Facet normals as functionals on the direction space; used for all
        # face-dimension computations (rank of active normals).
        self._restricted_normals: tuple[IVec, ...] = tuple(
            tuple(dot(f.inner_normal, b) for b in self._dir_basis) for f in facets
        )
        self._facet_masks = self._build_incidence(validate)
        if validate:
            self._validate()
        self._face_dims: dict[int, int] | None = None

    # -- construction helpers ------------------------------------------------

    def _project_points(self, points: tuple[Vec, ...]) -> tuple[Vec, ...]:
        if not self._dir_basis:
            return tuple(() for _ in points)
        cols = tuple(
            tuple(Fraction(b[t]) for b in self._dir_basis)
            for t in range(self.ambient_dim)
        )
        out = []
        for p in points:
            y = solve(cols, vsub(p, self._base))
            if y is None:
                raise ValueError("point outside the affine hull of the vertex set")
            out.append(y)
        return tuple(out)

    def _build_incidence(self, validate: bool) -> tuple[int, ...]:
        masks = []
        for f in self.facets:
            mask = 0
            for i, v in enumerate(self.vertices):
                val = f.value_at(v)
                if val < 0:
                    raise ValueError(
                        f"facet inequality violated at vertex {i}: {v}"
                    )
                if val == 0:
                    mask |= 1 << i
            masks.append(mask)
        return tuple(masks)

    def _validate(self) -> None:
        if len({(f.inner_normal, f.offset) for f in self.facets}) != len(self.facets):
            raise ValueError("duplicate facets")
        d = self.intrinsic_dim
        for j, mask in enumerate(self._facet_masks):
            touching = [self._ycoords[i] for i in _bits(mask)]
            if not touching:
                raise ValueError(f"facet {j} touches no vertex")
            diffs = [vsub(p, touching[0]) for p in touching[1:]]
            if rank(diffs) != d - 1:
                raise ValueError(f"facet {j} does not support a facet of the polytope")
        for i in range(len(self.vertices)):
            active = [
                self._restricted_normals[j]
                for j, mask in enumerate(self._facet_masks)
                if mask >> i & 1
            ]
            if rank(active) != d:
                raise ValueError(f"point {i} is not a vertex")

    # -- basic queries ---------------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_facets(self) -> int:
        return len(self.facets)

    def vertex_facets(self, i: int) -> tuple[int, ...]:
        """Indices of the facets through vertex i."""
        return tuple(
            j for j, mask in enumerate(self._facet_masks) if mask >> i & 1
        )

    def is_simple(self) -> bool:
        """True iff every vertex lies on exactly intrinsic_dim facets."""
        d = self.intrinsic_dim
        return all(
            sum(mask >> i & 1 for mask in self._facet_masks) == d
            for i in range(len(self.vertices))
        )

    # -- face lattice ------------------------------------------------------------

    def face_dims(self) -> dict[int, int]:
        """All nonempty faces as vertex bitmasks, mapped to their dimension.

        Faces are the closed sets of the vertex-facet incidence: the full
        vertex set plus all intersections of facet vertex sets.  The empty
        face is omitted.
        """
        if self._face_dims is not None:
            return self._face_dims
        top = (1 << len(self.vertices)) - 1
        seen = {top}
        queue = [top]
        while queue:
            s = queue.pop()
            for fm in self._facet_masks:
                t = s & fm
                if t and t not in seen:
                    seen.add(t)
                    queue.append(t)
        dims = {}
        d = self.intrinsic_dim
        for mask in seen:
            active = [
                self._restricted_normals[j]
                for j, fm in enumerate(self._facet_masks)
                if fm & mask == mask
            ]
            dims[mask] = d - rank(active)
        self._face_dims = dims
        return dims

    def faces_of_dim(self, k: int) -> list[int]:
        """Vertex bitmasks of all k-dimensional faces."""
        return [mask for mask, dim in self.face_dims().items() if dim == k]

    def f_vector(self) -> tuple[int, ...]:
        """Face counts (f_0, ..., f_d) with d the intrinsic dimension."""
        counts = [0] * (self.intrinsic_dim + 1)
        for dim in self.face_dims().values():
            counts[dim] += 1
        return tuple(counts)

    def angle_class(self) -> AngleClass:
        """Classify all corners of all 2-faces by edge-vector inner products.

        Obtuse when every corner inner product is negative, NonAcuteOnly when
        none is positive but some vanish, Neither otherwise.  Uses the ambient
        inner product, so non-full-dimensional polytopes are fine.
        """
        dims = self.face_dims()
        edges = [m for m, dim in dims.items() if dim == 1]
        any_zero = False
        for fmask in (m for m, dim in dims.items() if dim == 2):
            polygon_edges = [e for e in edges if e & fmask == e]
            at_vertex: dict[int, list[int]] = {}
            for e in polygon_edges:
                a, b = _bits(e)
                at_vertex.setdefault(a, []).append(b)
                at_vertex.setdefault(b, []).append(a)
            for v, nbrs in at_vertex.items():
                u1 = vsub(self.vertices[nbrs[0]], self.vertices[v])
                u2 = vsub(self.vertices[nbrs[1]], self.vertices[v])
                ip = dot(u1, u2)
                if ip > 0:
                    return AngleClass.NEITHER
                if ip == 0:
                    any_zero = True
        return AngleClass.NON_ACUTE_ONLY if any_zero else AngleClass.OBTUSE

    # -- coordinate changes -----------------------------------------------------

    def project_full_dim(self) -> tuple["Polytope", tuple[IVec, ...]]:
        """Rewrite in coordinates of a saturated lattice basis of the direction space.

        Returns the combinatorially identical full-dimensional polytope and the
        basis used; a full-dimensional input is returned unchanged with the
        standard basis.
        """
        n = self.ambient_dim
        if self.intrinsic_dim == n:
            identity = tuple(
                tuple(1 if i == j else 0 for j in range(n)) for i in range(n)
            )
            return self, identity
        new_facets = []
        for f in self.facets:
            restricted = tuple(dot(f.inner_normal, b) for b in self._dir_basis)
            offset = f.offset - Fraction(dot(f.inner_normal, self._base))
            g = 0
            for x in restricted:
                g = gcd(g, abs(x))
            if g == 0:
                raise ValueError("facet normal vanishes on the direction space")
            new_facets.append(
                Facet(tuple(x // g for x in restricted), offset / g)
            )
        projected = Polytope(
            self.intrinsic_dim, self._ycoords, tuple(new_facets)
        )
        return projected, self._dir_basis

    # -- serialization ------------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "dim": self.ambient_dim,
            "vertices": [[str(c) for c in v] for v in self.vertices],
            "facets": [
                {
                    "normal": [str(c) for c in f.inner_normal],
                    "offset": str(f.offset),
                }
                for f in self.facets
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Polytope":
        dim = int(data["dim"])
        vertices = [vec(v) for v in data["vertices"]]
        if any(len(v) != dim for v in vertices):
            raise ValueError("vertex dimension disagrees with 'dim'")
        if "facets" in data and data["facets"] is not None:
            facets = [
                Facet(
                    tuple(int(Fraction(c)) for c in f["normal"]),
                    Fraction(f["offset"]),
                )
                for f in data["facets"]
            ]
            return cls(dim, tuple(vertices), tuple(facets))
        return cls.from_vertices(vertices)

    # -- constructors ---------------------------------------------------------------

    @classmethod
    def from_vertices(cls, points) -> "Polytope":
        """Exact convex hull by brute force over candidate facet hyperplanes.

        Intended for small ad-hoc inputs; generators that know their facet
        structure should construct the Polytope directly.  Enumeration size is
        guarded by TORSIG_STEP_LIMIT.
        """
        pts = []
        seen = set()
        for p in points:
            t = vec(p)
            if t not in seen:
                seen.add(t)
                pts.append(t)
        if not pts:
            raise ValueError("from_vertices needs at least one point")
        ambient = len(pts[0])
        if any(len(p) != ambient for p in pts):
            raise ValueError("points of mixed dimension")
        base = pts[0]
        dirs = [vsub(p, base) for p in pts[1:]]
        basis = saturated_basis(dirs) if dirs else []
        k = len(basis)
        if k == 0:
            return cls(ambient, (pts[0],), ())

        cols = tuple(tuple(Fraction(b[t]) for b in basis) for t in range(ambient))
        ys = []
        for p in pts:
            y = solve(cols, vsub(p, base))
            assert y is not None
            ys.append(y)

        n = len(pts)
        _guard_steps(comb(n, k) * n, "convex hull enumeration")
        hyperplanes = set()
        zero_row = [(Fraction(0),) * k]
        for subset in combinations(range(n), k):
            diffs = [vsub(ys[i], ys[subset[0]]) for i in subset[1:]]
            kernel = nullspace(diffs if diffs else zero_row)
            if len(kernel) != 1:
                continue
            normal = scale_to_primitive(kernel[0])
            offset = Fraction(dot(ys[subset[0]], normal))
            vals = [dot(y, normal) for y in ys]
            if all(v >= offset for v in vals):
                hyperplanes.add((normal, offset))
            elif all(v <= offset for v in vals):
                hyperplanes.add((tuple(-c for c in normal), -offset))

        facet_list = sorted(hyperplanes)
        # Keep only genuine vertices: points whose active facet normals span.
        vertex_idx = []
        for i, y in enumerate(ys):
            active = [nrm for nrm, off in facet_list if dot(y, nrm) == off]
            if rank(active) == k:
                vertex_idx.append(i)

        ambient_facets = tuple(
            _lift_facet(nrm, off, basis, base, ambient) for nrm, off in facet_list
        )
        return cls(ambient, tuple(pts[i] for i in vertex_idx), ambient_facets)

    @classmethod
    def from_halfspaces(cls, facets, ambient_dim: int) -> "Polytope":
        """Vertex enumeration of a bounded halfspace intersection.

        Raises UnboundedError when the intersection is unbounded and
        EmptyError when it is empty.
        """
        fs = []
        seenf = set()
        for f in facets:
            key = (tuple(f.inner_normal), Fraction(f.offset))
            if key not in seenf:
                seenf.add(key)
                fs.append(Facet(key[0], key[1]))
        normals = [f.inner_normal for f in fs]
        offsets = [f.offset for f in fs]
        m = len(fs)
        d = ambient_dim
        if m == 0:
            raise UnboundedError("no constraints")
        lin = nullspace(normals)
        if lin:
            if _pointed_region_nonempty([vec(r) for r in _row_basis(normals)],
                                        normals, offsets):
                raise UnboundedError("halfspace intersection contains a line")
            raise EmptyError("halfspace intersection is empty")
        _guard_steps(comb(m, d) * m, "halfspace vertex enumeration")
        verts = []
        seen = set()
        for subset in combinations(range(m), d):
            mat = [vec(normals[i]) for i in subset]
            rhs = [offsets[i] for i in subset]
            x = solve(mat, rhs)
            if x is None or rank(mat) < d:
                continue
            if all(dot(x, normals[i]) >= offsets[i] for i in range(m)) and x not in seen:
                seen.add(x)
                verts.append(x)
        if not verts:
            raise EmptyError("halfspace intersection is empty")
        if _has_recession_ray(normals, d):
            raise UnboundedError("halfspace intersection is unbounded")
        diffs = [vsub(v, verts[0]) for v in verts[1:]]
        if rank(diffs) < d:
            return cls.from_vertices(verts)
        kept = []
        for f in fs:
            touching = [v for v in verts if f.value_at(v) == 0]
            if touching:
                tdiffs = [vsub(v, touching[0]) for v in touching[1:]]
                if rank(tdiffs) == d - 1:
                    kept.append(f)
        return cls(d, tuple(sorted(verts)), tuple(kept))

    def __repr__(self) -> str:
        return (
            f"Polytope(dim {self.intrinsic_dim} in R^{self.ambient_dim}, "
            f"{self.n_vertices} vertices, {self.n_facets} facets)"
        )


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _lift_facet(nrm: IVec, off: Fraction, basis, base: Vec, ambient: int) -> Facet:
    """Lift a direction-space facet <nrm, y> >= off to an ambient Facet.

    Chooses the ambient normal w in the span of the basis with
    <w, x - base> = <nrm, y> for x = base + sum_j y_j b_j, then rescales to a
    primitive integer normal.
    """
    k = len(basis)
    gram = [[Fraction(dot(bi, bj)) for bj in basis] for bi in basis]
    u = solve(gram, [Fraction(c) for c in nrm])
    assert u is not None
    w = tuple(
        sum(u[j] * basis[j][t] for j in range(k)) for t in range(ambient)
    )
    amb_normal = scale_to_primitive(w)
    t0 = next(t for t in range(ambient) if w[t] != 0)
    scale = Fraction(amb_normal[t0]) / w[t0]
    amb_offset = scale * (Fraction(off) + dot(w, base))
    return Facet(amb_normal, amb_offset)


def _row_basis(rows):
    """A maximal linearly independent subset of the rows."""
    out = []
    for r in rows:
        if rank(out + [r]) > len(out):
            out.append(r)
    return out


def _pointed_region_nonempty(wbasis, normals, offsets) -> bool:
    """Feasibility of {N x >= c} after quotienting out the lineality of N."""
    r = len(wbasis)
    a = [tuple(dot(n, w) for w in wbasis) for n in normals]
    m = len(a)
    for subset in combinations(range(m), r):
        mat = [a[i] for i in subset]
        rhs = [offsets[i] for i in subset]
        if rank(mat) < r:
            continue
        t = solve(mat, rhs)
        if t is None:
            continue
        if all(dot(t, a[i]) >= offsets[i] for i in range(m)):
            return True
    return False


def _has_recession_ray(normals, d: int) -> bool:
    """True iff {x : N x >= 0} contains a nonzero vector (N with trivial kernel)."""
    m = len(normals)
    if d == 1:
        return any(all(n[0] * s >= 0 for n in normals) for s in (1, -1))
    for subset in combinations(range(m), d - 1):
        mat = [normals[i] for i in subset]
        kernel = nullspace(mat)
        if len(kernel) != 1:
            continue
        v = kernel[0]
        if all(dot(v, n) >= 0 for n in normals) or all(dot(v, n) <= 0 for n in normals):
            return True
    return False


def product(p: "Polytope", q: "Polytope") -> "Polytope":
    """Cartesian product; the f-polynomial is the product of the factors'."""
    na, nb = p.ambient_dim, q.ambient_dim
    vertices = tuple(v + w for v in p.vertices for w in q.vertices)
    facets = [
        Facet(f.inner_normal + (0,) * nb, f.offset) for f in p.facets
    ] + [
        Facet((0,) * na + f.inner_normal, f.offset) for f in q.facets
    ]
    return Polytope(na + nb, vertices, tuple(facets))
