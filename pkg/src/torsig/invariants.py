"""Face-count invariants of simple polytopes and the associated lower bounds.

The central quantity is the alternating h-vector sum, written sigma here:
sigma = h(-1) = f(-2).  For an even-dimensional rational simple polytope it
equals the signature of the toric variety of the normal fan, which the chow
module recomputes independently.  This module also holds the exact even
power-series machinery (1 - x*cot(x), tanh) behind the bound computations and
the closed-form benchmark sequences.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from torsig.errors import OddDimensionError
from torsig.fan import ConvexityClass

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# f- and h-vectors


def h_vector(f: tuple[int, ...]) -> tuple[int, ...]:
    """Coefficients of f(t-1), i.e. the h-vector of a simple polytope."""
    d = len(f) - 1
    return tuple(
        sum(f[j] * comb(j, i) * (-1) ** (j - i) for j in range(i, d + 1))
        for i in range(d + 1)
    )


def sigma(f: tuple[int, ...]) -> int:
    """Alternating h-vector sum, evaluated as f(-2)."""
    return sum(fi * (-2) ** i for i, fi in enumerate(f))


def dehn_sommerville_ok(h: tuple[int, ...]) -> bool:
    """True iff the h-vector is palindromic."""
    return tuple(h) == tuple(reversed(h))


# ---------------------------------------------------------------------------
# Truncated even power series over the rationals


@dataclass(frozen=True)
class RationalSeries:
    """Dense truncated power series with exact rational coefficients.

    coefficients[k] is the coefficient of x^k; arithmetic truncates at
    truncation_order consistently.
    """

    coefficients: tuple[Fraction, ...]
    truncation_order: int

    def __post_init__(self):
        if len(self.coefficients) != self.truncation_order + 1:
            raise ValueError("coefficient list does not match truncation order")

    def coeff(self, k: int) -> Fraction:
        return self.coefficients[k] if 0 <= k <= self.truncation_order else ZERO

    def __add__(self, other: "RationalSeries") -> "RationalSeries":
        order = min(self.truncation_order, other.truncation_order)
        return RationalSeries(
            tuple(self.coeff(k) + other.coeff(k) for k in range(order + 1)), order
        )

    def __mul__(self, other: "RationalSeries") -> "RationalSeries":
        order = min(self.truncation_order, other.truncation_order)
        coeffs = [ZERO] * (order + 1)
        for i, a in enumerate(self.coefficients[: order + 1]):
            if a == 0:
                continue
            for j in range(order + 1 - i):
                b = other.coeff(j)
                if b != 0:
                    coeffs[i + j] += a * b
        return RationalSeries(tuple(coeffs), order)

    def pow(self, n: int) -> "RationalSeries":
        result = series_one(self.truncation_order)
        for _ in range(n):
            result = result * self
        return result


def series_one(order: int) -> RationalSeries:
    return RationalSeries((ONE,) + (ZERO,) * order, order)


def series_inverse(s: RationalSeries) -> RationalSeries:
    """Multiplicative inverse of a series with unit constant term."""
    if s.coeff(0) == 0:
        raise ValueError("series with zero constant term has no inverse")
    order = s.truncation_order
    inv0 = 1 / s.coeff(0)
    out = [inv0]
    for n in range(1, order + 1):
        acc = sum(s.coeff(k) * out[n - k] for k in range(1, n + 1))
        out.append(-inv0 * acc)
    return RationalSeries(tuple(out), order)


@lru_cache(maxsize=None)
def one_minus_x_cot_x(order: int) -> RationalSeries:
    """Truncated expansion of 1 - x*cot(x); all odd coefficients vanish.

    The coefficient of x^(2n) is the positive rational b_n that scales the
    degree-n terms of the signature (L-class) expansion.
    """
    if order < 2:
        raise ValueError("order must be at least 2")
    sinc = RationalSeries(
        tuple(
            Fraction((-1) ** (k // 2), factorial(k + 1)) if k % 2 == 0 else ZERO
            for k in range(order + 1)
        ),
        order,
    )
    cos = RationalSeries(
        tuple(
            Fraction((-1) ** (k // 2), factorial(k)) if k % 2 == 0 else ZERO
            for k in range(order + 1)
        ),
        order,
    )
    x_cot_x = cos * series_inverse(sinc)
    coeffs = tuple(
        (ONE if k == 0 else ZERO) - x_cot_x.coeff(k) for k in range(order + 1)
    )
    return RationalSeries(coeffs, order)


def bernoulli_b(n: int) -> Fraction:
    """Coefficient of x^(2n) in 1 - x*cot(x); defined by the series itself.

    Reading the value off the series sidesteps the classical-vs-modern
    Bernoulli numbering; b_1 = 1/3, b_2 = 1/45, b_3 = 2/945, all positive.
    """
    if n < 1:
        raise ValueError("bernoulli_b is defined for n >= 1")
    return one_minus_x_cot_x(2 * n).coeff(2 * n)


@lru_cache(maxsize=None)
def tanh_series(order: int) -> RationalSeries:
    """Truncated expansion of tanh(x) = sinh(x)/cosh(x)."""
    sinh = RationalSeries(
        tuple(
            Fraction(1, factorial(k)) if k % 2 == 1 else ZERO for k in range(order + 1)
        ),
        order,
    )
    cosh = RationalSeries(
        tuple(
            Fraction(1, factorial(k)) if k % 2 == 0 else ZERO for k in range(order + 1)
        ),
        order,
    )
    return sinh * series_inverse(cosh)


def tanh_sigma(n: int) -> int:
    """n! times the coefficient of x^n in tanh(x).

    This is the alternating h-vector sum of the (n-1)-dimensional
    permutohedron; zero for even n.
    """
    if n < 1:
        raise ValueError("n must be positive")
    value = factorial(n) * tanh_series(n).coeff(n)
    assert value.denominator == 1
    return int(value)


def associahedron_sigma(n: int) -> int:
    """Signed Catalan value of the (n-3)-dimensional associahedron.

    Zero for even n; for odd n it is (-1)^((n-3)/2) * C_((n-1)/2) with the
    Catalan convention C_k = binom(2k-2, k-1)/k.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    if n % 2 == 0:
        return 0
    k = (n - 1) // 2
    catalan = comb(2 * k - 2, k - 1) // k
    return (-1) ** ((n - 3) // 2) * catalan


# ---------------------------------------------------------------------------
# Lower bounds


def bound_rhs(f: tuple[int, ...], m: int, case: str) -> Fraction:
    """Right-hand side of the even-dimensional lower bounds.

    case "ii": f_{d-1} / (3 m^(d-1)).
    case "iii": coefficient of x^d in t^d f(1/t) / m^(d-1) after substituting
    t -> 1 - x*cot(x).
    """
    d = len(f) - 1
    if d % 2 != 0:
        raise OddDimensionError("bounds are defined for even dimension only")
    if m < 1:
        raise ValueError("m must be a positive integer")
    if case == "ii":
        return Fraction(f[d - 1], 3 * m ** (d - 1))
    if case == "iii":
        s = one_minus_x_cot_x(d)
        total = ZERO
        power = series_one(d)
        for p in range(1, d // 2 + 1):
            power = power * s
            total += f[d - p] * power.coeff(d)
        return total / m ** (d - 1)
    raise ValueError(f"unknown bound case {case!r}")


def polygon_inequality_rhs(m: int) -> Fraction:
    """Vertex-count threshold 12/(3 - 1/m) for pointed-convex polygon fans."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    return Fraction(12 * m, 3 * m - 1)


def kappa(sig: int, d: int) -> Fraction:
    """Local curvature-style quantity sigma / 2^d."""
    return Fraction(sig, 2**d)


def mirror_euler(sig: int, n_facets: int, d: int) -> int:
    """Euler characteristic 2^(n-d) * sigma of the mirrored manifold."""
    if n_facets < d + 1:
        raise ValueError("a d-polytope has at least d+1 facets")
    return 2 ** (n_facets - d) * sig


def corner_euler(sigmas: list[int], d: int) -> Fraction:
    """Sum of cell sigmas divided by 2^d.

    Integrality is the caller's claim: it holds whenever the input really is
    the cell list of a corner decomposition.
    """
    return Fraction(sum(sigmas), 2**d)


# ---------------------------------------------------------------------------
# Bound reports

_CASE_REQUIREMENT = {
    "i": ConvexityClass.LOCALLY_CONVEX,
    "ii": ConvexityClass.LOCALLY_POINTED_CONVEX,
    "iii": ConvexityClass.LOCALLY_STRONGLY_CONVEX,
}


@dataclass(frozen=True)
class BoundReport:
    """Outcome of one lower-bound check on an even-dimensional polytope."""

    theorem_case: str  # "i" | "ii" | "iii" | "none"
    lhs: int
    rhs: Fraction
    satisfied: bool
    classification: ConvexityClass
    m: int

    def to_json_dict(self) -> dict:
        return {
            "theorem_case": self.theorem_case,
            "lhs": self.lhs,
            "rhs": str(self.rhs),
            "satisfied": self.satisfied,
            "classification": self.classification.label,
            "m": self.m,
        }


def licensed_cases(classification: ConvexityClass) -> list[str]:
    """Bound cases the classifier result licenses, weakest first."""
    return [c for c, need in _CASE_REQUIREMENT.items() if classification >= need]


def bound_report(
    f: tuple[int, ...],
    m: int,
    classification: ConvexityClass,
    case: str | None = None,
) -> BoundReport:
    """Build a BoundReport, refusing cases the classification does not license.

    Without an explicit case the strongest licensed one is used; if nothing is
    licensed (or a forced case is not licensed) the report carries
    theorem_case "none" and asserts nothing.
    """
    d = len(f) - 1
    if d % 2 != 0:
        raise OddDimensionError("bound reports require even dimension")
    lhs = (-1) ** (d // 2) * sigma(f)
    allowed = licensed_cases(classification)
    chosen = case if case is not None else (allowed[-1] if allowed else "none")
    if chosen != "none" and chosen not in _CASE_REQUIREMENT:
        raise ValueError(f"unknown bound case {chosen!r}")
    if chosen not in allowed:
        chosen = "none"
    if chosen == "none":
        return BoundReport("none", lhs, ZERO, True, classification, m)
    rhs = ZERO if chosen == "i" else bound_rhs(f, m, chosen)
    return BoundReport(chosen, lhs, rhs, lhs >= rhs, classification, m)
