"""Exact rational linear algebra on plain tuples.

Vectors are tuples of `fractions.Fraction` (alias `Vec`); lattice vectors are
tuples of `int` (alias `IVec`); matrices are tuples of row vectors.  All
arithmetic is exact and all results are new immutable values, so everything
here is safe to share between threads.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from torsig.errors import NotABasisError, ZeroVectorError

Vec = tuple[Fraction, ...]
IVec = tuple[int, ...]
Mat = tuple[Vec, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def vec(values: Iterable) -> Vec:
    """Coerce an iterable of numbers or 'p/q' strings to a rational vector."""
    return tuple(Fraction(v) for v in values)


def ivec(values: Iterable) -> IVec:
    """Coerce to an integer vector, rejecting non-integral entries."""
    out = []
    for v in values:
        f = Fraction(v)
        if f.denominator != 1:
            raise ValueError(f"expected integer entry, got {v}")
        out.append(f.numerator)
    return tuple(out)


def dot(a: Sequence, b: Sequence):
    if len(a) != len(b):
        raise ValueError("dimension mismatch in dot product")
    return sum(x * y for x, y in zip(a, b))


def vadd(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def vscale(c, a: Sequence) -> Vec:
    return tuple(c * x for x in a)


def is_zero(a: Sequence) -> bool:
    return all(x == 0 for x in a)


def vneg(a: Sequence) -> tuple:
    return tuple(-x for x in a)


def primitive(v: Sequence[int]) -> IVec:
    """Divide an integer vector by the gcd of its entries, keeping direction."""
    w = tuple(int(x) for x in v)
    g = 0
    for x in w:
        g = gcd(g, abs(x))
    if g == 0:
        raise ZeroVectorError("primitive() of the zero vector")
    return tuple(x // g for x in w)


def scale_to_primitive(v: Sequence[Fraction]) -> IVec:
    """Scale a nonzero rational vector by a positive rational to a primitive integer vector."""
    fracs = [Fraction(x) for x in v]
    if all(x == 0 for x in fracs):
        raise ZeroVectorError("cannot scale the zero vector")
    den_lcm = 1
    for x in fracs:
        den_lcm = den_lcm * x.denominator // gcd(den_lcm, x.denominator)
    ints = [int(x * den_lcm) for x in fracs]
    return primitive(ints)


def int_det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free (Bareiss) elimination."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def determinant(rows: Sequence[Sequence]) -> Fraction:
    """Exact determinant of a square rational matrix."""
    n = len(rows)
    if n == 0:
        return ONE
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if all(isinstance(x, int) for r in rows for x in r):
        return Fraction(int_det(rows))
    a = [[Fraction(x) for x in r] for r in rows]
    det = ONE
    for k in range(n):
        piv = None
        for i in range(k, n):
            if a[i][k] != 0:
                piv = i
                break
        if piv is None:
            return ZERO
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        inv = 1 / a[k][k]
        for i in range(k + 1, n):
            if a[i][k] == 0:
                continue
            f = a[i][k] * inv
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    return det


def _echelon(rows: Sequence[Sequence], rhs: Sequence | None = None):
    """Row echelon form; returns (matrix, rhs, pivot column list)."""
    a = [[Fraction(x) for x in r] for r in rows]
    b = [Fraction(x) for x in rhs] if rhs is not None else None
    m = len(a)
    n = len(a[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        if b is not None:
            b[r], b[piv] = b[piv], b[r]
        inv = 1 / a[r][c]
        for i in range(r + 1, m):
            if a[i][c] == 0:
                continue
            f = a[i][c] * inv
            for j in range(c, n):
                a[i][j] -= f * a[r][j]
            if b is not None:
                b[i] -= f * b[r]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a, b, pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    _, _, pivots = _echelon(rows)
    return len(pivots)


def solve(rows: Sequence[Sequence], rhs: Sequence) -> Vec | None:
    """One exact solution of M x = b, or None when inconsistent.

    When the system is underdetermined the free variables are set to zero,
    which makes the returned solution a deterministic canonical choice.
    """
    m = len(rows)
    if len(rhs) != m:
        raise ValueError("dimension mismatch between matrix and right-hand side")
    if m == 0:
        return ()
    n = len(rows[0])
    a, b, pivots = _echelon(rows, rhs)
    for i in range(len(pivots), m):
        if b[i] != 0:
            return None
    x = [ZERO] * n
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        s = b[i] - sum(a[i][j] * x[j] for j in range(c + 1, n))
        x[c] = s / a[i][c]
    return tuple(x)


def nullspace(rows: Sequence[Sequence]) -> list[Vec]:
    """Exact basis of the kernel of M (one vector per free column)."""
    if not rows:
        return []
    n = len(rows[0])
    a, _, pivots = _echelon(rows)
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    basis = []
    for fc in free:
        x = [ZERO] * n
        x[fc] = ONE
        for i in range(len(pivots) - 1, -1, -1):
            c = pivots[i]
            s = -sum(a[i][j] * x[j] for j in range(c + 1, n))
            x[c] = s / a[i][c]
        basis.append(tuple(x))
    return basis


def inverse(rows: Sequence[Sequence]) -> Mat:
    """Exact inverse of a square rational matrix; NotABasisError when singular."""
    n = len(rows)
    a = [[Fraction(x) for x in r] + [ONE if i == j else ZERO for j in range(n)]
         for i, r in enumerate(rows)]
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, n):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            raise NotABasisError("matrix is singular")
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(n):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return tuple(tuple(row[n:]) for row in a)


def dual_basis(basis: Sequence[Sequence]) -> list[Vec]:
    """Dual basis under the standard inner product.

    For independent vectors a_1..a_k spanning a subspace W, returns the
    unique vectors b_1..b_k in W with <a_i, b_j> = delta_ij.  For a full
    basis of the ambient space these are the columns of the inverse matrix.
    """
    b = [vec(row) for row in basis]
    if not b:
        return []
    k = len(b)
    gram = [[dot(b[i], b[j]) for j in range(k)] for i in range(k)]
    try:
        ginv = inverse(gram)
    except NotABasisError:
        raise NotABasisError("dual_basis() of linearly dependent vectors") from None
    duals = []
    for j in range(k):
        d = tuple(sum(ginv[j][i] * b[i][t] for i in range(k)) for t in range(len(b[0])))
        duals.append(d)
    return duals


def hyperplane_normal(rows: Sequence[Sequence[int]], dim: int) -> IVec | None:
    """Primitive integer normal of the hyperplane spanned by dim-1 integer rows.

    Returns None when the rows do not span a hyperplane.  Computed from signed
    maximal minors, so no rational arithmetic is involved.
    """
    if len(rows) != dim - 1:
        raise ValueError("hyperplane_normal needs dim-1 rows")
    comps = []
    sign = 1
    for j in range(dim):
        minor = [[r[c] for c in range(dim) if c != j] for r in rows]
        comps.append(sign * int_det(minor))
        sign = -sign
    if all(c == 0 for c in comps):
        return None
    return primitive(comps)


def integer_kernel(rows: Sequence[Sequence[int]]) -> list[IVec]:
    """Basis of the saturated integer kernel {x in Z^n : M x = 0}.

    Uses unimodular column operations, so the result is a direct summand of
    Z^n (no finite index is lost).
    """
    m = len(rows)
    if m == 0:
        raise ValueError("integer_kernel needs at least one row")
    n = len(rows[0])
    acols = [[rows[r][c] for r in range(m)] for c in range(n)]
    ucols = [[1 if i == c else 0 for i in range(n)] for c in range(n)]
    active = list(range(n))
    for r in range(m):
        while True:
            nz = [c for c in active if acols[c][r] != 0]
            if len(nz) <= 1:
                break
            j = min(nz, key=lambda c: abs(acols[c][r]))
            for k in nz:
                if k == j:
                    continue
                q = acols[k][r] // acols[j][r]
                if q:
                    aj, ak = acols[j], acols[k]
                    for i in range(m):
                        ak[i] -= q * aj[i]
                    uj, uk = ucols[j], ucols[k]
                    for i in range(n):
                        uk[i] -= q * uj[i]
        nz = [c for c in active if acols[c][r] != 0]
        if nz:
            active.remove(nz[0])
    return [tuple(ucols[c]) for c in active]


def saturated_basis(directions: Sequence[Sequence[Fraction]]) -> list[IVec]:
    """Basis of the saturated lattice (span of directions) intersected with Z^n.

    Accepts rational spanning vectors; zero vectors are ignored.
    """
    scaled = []
    n = None
    for d in directions:
        n = len(d) if n is None else n
        if not is_zero(d):
            scaled.append(list(scale_to_primitive(d)))
    if n is None:
        raise ValueError("saturated_basis needs at least one vector")
    if not scaled:
        return []
    normals = integer_kernel(scaled)
    if not normals:
        return [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    return integer_kernel([list(v) for v in normals])
