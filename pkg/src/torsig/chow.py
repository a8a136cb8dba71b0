"""Toric intersection numbers and the signature via the L-class expansion.

Intersection numbers of toric divisors on the (orbifold) variety of a
complete simplicial fan are evaluated by a moving-lemma reduction: for a
monomial with a repeated factor D_j0, pick a functional u with u(n_j0) = 1
that vanishes on the other support rays; the linear-equivalence relation
sum_j u(n_j) D_j = 0 then rewrites one factor of D_j0 as a combination of
divisors outside the support.  Each step lowers the total excess
sum(exponent - 1) by one, and the base cases are squarefree monomials: value
1/|det| on a maximal cone's ray set (the reciprocal multiplicity), 0 when the
support spans no cone.

The signature expansion sums b_{n_1}...b_{n_p} * (-1)^p * D_{i_1}^{2n_1} ...
D_{i_p}^{2n_p} over index sets whose rays pairwise span 2-cones and over
compositions n_1+...+n_p = d/2; the result equals (-1)^(d/2) times the
alternating h-vector sum for normal fans, which the caller can cross-check.

Evaluation is pure given an immutable fan; the memo table is a coherent
cache (one value per canonical monomial).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from random import Random

from torsig.errors import NotSimplicialError, OddDimensionError, WrongDegreeError
from torsig.fan import Fan
from torsig.invariants import bernoulli_b
from torsig.linalg import dot, nullspace, solve, vadd, vscale

ZERO = Fraction(0)


@dataclass(frozen=True)
class DivisorMonomial:
    """Product of toric divisors: sorted (ray index, positive exponent) pairs."""

    exponents: tuple[tuple[int, int], ...]

    @classmethod
    def make(cls, exps: dict[int, int]) -> "DivisorMonomial":
        items = tuple(sorted((r, e) for r, e in exps.items() if e))
        if any(e < 0 for _, e in items):
            raise ValueError("negative exponent in divisor monomial")
        return cls(items)

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.exponents)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(r for r, _ in self.exponents)

    def to_json_dict(self) -> dict:
        return {str(r): e for r, e in self.exponents}


@dataclass(frozen=True)
class MonomialTerm:
    """One monomial of the degree-d signature expansion with its sign check."""

    monomial: DivisorMonomial
    value: Fraction
    sign_ok: bool  # (-1)^p * value >= 0 with p the support size

    def to_json_dict(self) -> dict:
        return {
            "monomial": self.monomial.to_json_dict(),
            "value": str(self.value),
            "sign_ok": self.sign_ok,
        }


class ChowEvaluator:
    """Evaluates divisor monomials on one fan, with a shared memo table.

    With an rng, the reduction pivot and the functional u are randomized
    (the value is pivot-independent, which the tests exercise); without one,
    choices are canonical and results are memoized.
    """

    def __init__(self, fan: Fan, rng: Random | None = None):
        if not fan.is_complete():
            raise NotSimplicialError("intersection numbers need a complete fan")
        self.fan = fan
        self.rng = rng
        self._memo: dict[tuple, Fraction] = {}
        self._cones_by_ray: list[list[frozenset]] = [
            fan.max_cones_with_ray(i) for i in range(len(fan.rays))
        ]

    def _spans_cone(self, support: tuple[int, ...]) -> bool:
        s = frozenset(support)
        return any(s <= c for c in self._cones_by_ray[support[0]])

    def evaluate(self, monomial: DivisorMonomial) -> Fraction:
        if monomial.degree != self.fan.dim:
            raise WrongDegreeError(
                f"monomial degree {monomial.degree} != fan dimension {self.fan.dim}"
            )
        return self._eval(monomial.exponents)

    def _eval(self, key: tuple[tuple[int, int], ...]) -> Fraction:
        # The memo is coherent also under randomization: within one evaluator
        # each submonomial gets one (possibly random) reduction, and the cached
        # value is reused for it.
        if key in self._memo:
            return self._memo[key]
        support = tuple(r for r, _ in key)
        if not self._spans_cone(support):
            value = ZERO
        elif all(e == 1 for _, e in key):
            value = Fraction(1, self.fan.multiplicity(frozenset(support)))
        else:
            value = self._reduce(key, support)
        self._memo[key] = value
        return value

    def _reduce(self, key, support) -> Fraction:
        heavy = [r for r, e in key if e >= 2]
        pivot = self.rng.choice(heavy) if self.rng else heavy[0]
        rays = self.fan.rays
        rows = [rays[pivot]] + [rays[r] for r in support if r != pivot]
        rhs = (1,) + (0,) * (len(rows) - 1)
        u = solve(rows, rhs)
        assert u is not None, "support rays of a cone are independent"
        if self.rng:
            for w in nullspace(rows):
                u = vadd(u, vscale(Fraction(self.rng.randint(-3, 3)), w))
        exps = dict(key)
        exps[pivot] -= 1
        total = ZERO
        in_support = set(support)
        for j, ray in enumerate(rays):
            if j in in_support:
                continue
            c = dot(u, ray)
            if c == 0:
                continue
            exps[j] = 1
            child = tuple(sorted(exps.items()))
            total -= c * self._eval(child)
            del exps[j]
        return total


def evaluate(fan: Fan, monomial: DivisorMonomial, rng: Random | None = None) -> Fraction:
    """Intersection number of a degree-d divisor monomial on a complete fan."""
    if rng is None:
        ev = getattr(fan, "_chow_evaluator", None)
        if ev is None:
            ev = ChowEvaluator(fan)
            fan._chow_evaluator = ev
        return ev.evaluate(monomial)
    return ChowEvaluator(fan, rng).evaluate(monomial)


def _adjacency(fan: Fan) -> list[set[int]]:
    n = len(fan.rays)
    adj: list[set[int]] = [set() for _ in range(n)]
    for c in fan.max_cones:
        for i in c:
            for j in c:
                if i != j:
                    adj[i].add(j)
    return adj


def _cliques_up_to(adj: list[set[int]], kmax: int):
    """All index sets of size 1..kmax whose members are pairwise adjacent."""
    n = len(adj)

    def grow(clique: tuple[int, ...], cands: set[int]):
        yield clique
        if len(clique) == kmax:
            return
        for v in sorted(cands):
            yield from grow(clique + (v,), {u for u in cands if u > v and u in adj[v]})

    for i in range(n):
        yield from grow((i,), {j for j in adj[i] if j > i})


def _compositions(total: int, parts: int):
    """Ordered tuples of positive integers of given length summing to total."""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def signature_via_l_class(fan: Fan) -> Fraction:
    """Signature of the toric variety from divisor intersection numbers.

    Sums the degree-d part of the multiplicative class with even-series
    coefficients b_n over supports pairwise spanning 2-cones; supports that
    span no cone contribute zero and are pruned up front.  The fan dimension
    must be even.
    """
    d = fan.dim
    if d % 2 != 0:
        raise OddDimensionError("the signature expansion needs even dimension")
    ev = ChowEvaluator(fan)
    half = d // 2
    total = ZERO
    adj = _adjacency(fan)
    for support in _cliques_up_to(adj, half):
        p = len(support)
        if not ev._spans_cone(support):
            continue
        for comp in _compositions(half, p):
            mono = DivisorMonomial.make(
                {r: 2 * n for r, n in zip(support, comp)}
            )
            coeff = Fraction((-1) ** p)
            for n in comp:
                coeff *= bernoulli_b(n)
            total += coeff * ev.evaluate(mono)
    return Fraction((-1) ** half) * total


def monomial_sign_report(fan: Fan) -> list[MonomialTerm]:
    """Every degree-d monomial term of the signature expansion with its value.

    Terms run over all index sets i_1 < ... < i_p and compositions
    n_1 + ... + n_p = d/2; sign_ok records whether (-1)^p * value >= 0.
    """
    d = fan.dim
    if d % 2 != 0:
        raise OddDimensionError("the signature expansion needs even dimension")
    ev = ChowEvaluator(fan)
    half = d // 2
    out = []
    for p in range(1, half + 1):
        for support in combinations(range(len(fan.rays)), p):
            for comp in _compositions(half, p):
                mono = DivisorMonomial.make(
                    {r: 2 * n for r, n in zip(support, comp)}
                )
                value = ev.evaluate(mono)
                out.append(
                    MonomialTerm(mono, value, (-1) ** p * value >= 0)
                )
    return out
