"""Executable acceptance suite: one checkable criterion per function.

Each criterion returns a CriterionResult with per-check detail lines; the
CLI's corpus-verify command prints them as a pass/fail table and the pytest
acceptance module asserts them one by one.  All comparisons are exact
(rational arithmetic), so there are no tolerances anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from random import Random

from torsig.chow import ChowEvaluator, DivisorMonomial, evaluate, monomial_sign_report, signature_via_l_class
from torsig.fan import (
    ConvexityClass,
    Fan,
    classify,
    is_flag,
    normal_fan,
    singularity_index,
)
from torsig.generators import (
    arrangement_preset,
    associahedron,
    corpus,
    permutohedron,
)
from torsig.invariants import (
    associahedron_sigma,
    bound_report,
    dehn_sommerville_ok,
    h_vector,
    licensed_cases,
    polygon_inequality_rhs,
    sigma,
    tanh_sigma,
)
from torsig.linalg import dot, dual_basis, rank
from torsig.polytope import AngleClass


@dataclass
class CriterionResult:
    cid: str
    title: str
    passed: bool
    details: list[str]


@dataclass
class EntryAnalysis:
    name: str
    d: int
    f: tuple[int, ...]
    h: tuple[int, ...]
    sig: int
    angle: AngleClass
    fan: Fan
    overall: ConvexityClass
    m: int
    flag: bool


@lru_cache(maxsize=1)
def corpus_analysis() -> tuple[EntryAnalysis, ...]:
    out = []
    for e in corpus():
        p = e.polytope
        f = p.f_vector()
        fan = normal_fan(p)
        out.append(
            EntryAnalysis(
                name=e.name,
                d=p.intrinsic_dim,
                f=f,
                h=h_vector(f),
                sig=sigma(f),
                angle=e.euclidean_model.angle_class(),
                fan=fan,
                overall=classify(fan).overall,
                m=singularity_index(fan),
                flag=is_flag(fan),
            )
        )
    return tuple(out)


def _by_name(name: str) -> EntryAnalysis:
    for a in corpus_analysis():
        if a.name == name:
            return a
    raise KeyError(name)


class _Checker:
    def __init__(self):
        self.details: list[str] = []
        self.passed = True

    def check(self, ok: bool, message: str) -> None:
        self.details.append(f"{'ok' if ok else 'FAIL'}: {message}")
        self.passed = self.passed and bool(ok)

    def result(self, cid: str, title: str) -> CriterionResult:
        return CriterionResult(cid, title, self.passed, self.details)


def criterion_1() -> CriterionResult:
    """Signature via intersection numbers equals f(-2) on the named fans."""
    c = _Checker()
    expected = {
        "triangle": 1,
        "square": 0,
        "delzant-hexagon": -2,
        "triangle-x-triangle": 1,
        "square-x-square": 0,
    }
    for name, want in expected.items():
        a = _by_name(name)
        chow = signature_via_l_class(a.fan)
        c.check(
            chow == a.sig == want,
            f"{name}: chow {chow} == combinatorial {a.sig} == expected {want}",
        )
    return c.result("criterion-1", "central signature identity at desk scale")


def criterion_2(slow: bool = False) -> CriterionResult:
    """End-to-end permutohedron signatures match n! [x^n] tanh(x)."""
    c = _Checker()
    expected = {2: 0, 3: -2, 4: 0, 5: 16, 6: 0}
    if slow:
        expected[7] = -272
    for n, want in expected.items():
        s = sigma(permutohedron(n).f_vector())
        series = tanh_sigma(n)
        c.check(
            s == series == want,
            f"permutohedron({n}): face lattice {s} == tanh coefficient {series} == {want}",
        )
    return c.result("criterion-2", "tanh generating function for permutohedra")


def criterion_3() -> CriterionResult:
    """End-to-end associahedron signatures match the signed Catalan formula."""
    c = _Checker()
    expected = {4: 0, 5: -1, 6: 0, 7: 2, 8: 0}
    for n, want in expected.items():
        s = sigma(associahedron(n).f_vector())
        closed = associahedron_sigma(n)
        c.check(
            s == closed == want,
            f"associahedron({n}): face lattice {s} == Catalan formula {closed} == {want}",
        )
    return c.result("criterion-3", "Catalan formula for associahedra")


def criterion_4() -> CriterionResult:
    """Classifier ground truth on the three polygon benchmarks."""
    c = _Checker()
    tri = _by_name("triangle")
    c.check(
        tri.overall == ConvexityClass.NOT_LOCALLY_CONVEX,
        f"triangle classified {tri.overall.label}",
    )
    rect = _by_name("rectangle-2x1")
    c.check(
        rect.overall == ConvexityClass.LOCALLY_CONVEX,
        f"rectangle classified {rect.overall.label} (convex, not pointed)",
    )
    hexa = _by_name("delzant-hexagon")
    c.check(
        hexa.overall == ConvexityClass.LOCALLY_STRONGLY_CONVEX and hexa.m == 1,
        f"delzant-hexagon classified {hexa.overall.label} with m = {hexa.m}",
    )
    return c.result("criterion-4", "classifier ground truth for polygons")


def criterion_5() -> CriterionResult:
    """Every licensed lower bound holds on the corpus; the hexagon is tight."""
    c = _Checker()
    for a in corpus_analysis():
        if a.d % 2 != 0:
            continue
        for case in licensed_cases(a.overall):
            rep = bound_report(a.f, a.m, a.overall, case=case)
            c.check(
                rep.satisfied and rep.theorem_case == case,
                f"{a.name} case {case}: lhs {rep.lhs} >= rhs {rep.rhs}",
            )
    hexa = _by_name("delzant-hexagon")
    for case in ("ii", "iii"):
        rep = bound_report(hexa.f, hexa.m, hexa.overall, case=case)
        c.check(
            rep.lhs == rep.rhs == 2,
            f"delzant-hexagon case {case} tight: lhs {rep.lhs} == rhs {rep.rhs} == 2",
        )
    return c.result("criterion-5", "lower bounds as a corpus property")


def _primitive_box_vectors(bound: int) -> list[tuple[int, int]]:
    out = []
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            if (a, b) != (0, 0) and gcd(abs(a), abs(b)) == 1:
                out.append((a, b))
    return out


def _circular_rank(vectors: list[tuple[int, int]]) -> dict[tuple[int, int], int]:
    def half(v):
        return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1

    import functools

    def cmp(v, w):
        hv, hw = half(v), half(w)
        if hv != hw:
            return -1 if hv < hw else 1
        cross = v[0] * w[1] - v[1] * w[0]
        return 0 if cross == 0 else (-1 if cross > 0 else 1)

    ordered = sorted(vectors, key=functools.cmp_to_key(cmp))
    return {v: i for i, v in enumerate(ordered)}


def unimodular_pentagon_fans(bound: int = 5):
    """All complete 2-d fans with 5 rays in the box, every adjacent det = 1.

    Yields each fan once, as a tuple of rays in counterclockwise order.
    """
    prim = _primitive_box_vectors(bound)
    rank_of = _circular_rank(prim)
    total = len(prim)
    succ = {
        v: [w for w in prim if v[0] * w[1] - v[1] * w[0] == 1] for v in prim
    }

    def rel(v, start_rank):
        return (rank_of[v] - start_rank) % total

    for v1 in prim:
        r1 = rank_of[v1]
        stack = [(v1, (v1,))]
        while stack:
            last, path = stack.pop()
            if len(path) == 5:
                if last[0] * v1[1] - last[1] * v1[0] == 1 and min(
                    rank_of[v] for v in path
                ) == r1:
                    yield path
                continue
            for w in succ[last]:
                if rel(w, r1) > rel(last, r1):
                    stack.append((w, path + (w,)))


def criterion_6() -> CriterionResult:
    """Polygon vertex-count inequality, plus the pentagon non-existence search."""
    c = _Checker()
    for a in corpus_analysis():
        if a.d != 2:
            continue
        if a.overall >= ConvexityClass.LOCALLY_POINTED_CONVEX:
            rhs = polygon_inequality_rhs(a.m)
            c.check(
                a.f[0] >= rhs,
                f"{a.name}: f0 {a.f[0]} >= 12/(3 - 1/{a.m}) = {rhs}",
            )
    fans = 0
    pointed = 0
    for rays in unimodular_pentagon_fans(5):
        fans += 1
        fan = Fan(2, rays, [frozenset((i, (i + 1) % 5)) for i in range(5)])
        if classify(fan).overall >= ConvexityClass.LOCALLY_POINTED_CONVEX:
            pointed += 1
    c.check(fans > 0, f"enumerated {fans} unimodular complete 5-ray fans in [-5,5]^2")
    c.check(
        pointed == 0,
        f"none of the {fans} unimodular 5-ray fans is locally pointed convex",
    )
    return c.result("criterion-6", "polygon inequality and pentagon search")


def criterion_7() -> CriterionResult:
    """Angle-to-convexity and convexity-to-flagness implication chains."""
    c = _Checker()
    for a in corpus_analysis():
        if a.angle.non_acute:
            c.check(
                a.overall >= ConvexityClass.LOCALLY_CONVEX,
                f"{a.name}: angle {a.angle.label} implies at least locally convex "
                f"(got {a.overall.label})",
            )
        if a.angle is AngleClass.OBTUSE:
            c.check(
                a.overall == ConvexityClass.LOCALLY_STRONGLY_CONVEX,
                f"{a.name}: obtuse implies locally strongly convex (got {a.overall.label})",
            )
        if a.overall >= ConvexityClass.LOCALLY_CONVEX:
            c.check(a.flag, f"{a.name}: locally convex implies flag")
    for preset in ("coordinate", "A2", "B2"):
        fan = arrangement_preset(preset)
        cls = classify(fan).overall
        c.check(
            cls >= ConvexityClass.LOCALLY_CONVEX,
            f"arrangement {preset}: simplicial arrangement fan is locally convex "
            f"(got {cls.label})",
        )
    return c.result("criterion-7", "implication chain properties")


def _robustness_schedule():
    """(fan, monomial, m, pointed) cases for the randomized evaluator runs."""
    cases = []
    for a in corpus_analysis():
        fan, d = a.fan, a.d
        if d < 2 or d > 4:
            continue
        n = len(fan.rays)
        monos = [DivisorMonomial.make({i: d}) for i in range(0, n, max(1, n // 3))[:3]]
        some_cone = sorted(fan.max_cones[0])
        if d >= 2:
            monos.append(
                DivisorMonomial.make({some_cone[0]: d - 1, some_cone[1]: 1})
            )
        if d == 4:
            monos.append(
                DivisorMonomial.make({some_cone[0]: 2, some_cone[1]: 2})
            )
        for mono in monos:
            cases.append((a, mono))
    return cases


def criterion_8(runs: int = 500) -> CriterionResult:
    """Randomized pivot robustness and denominator bounds for the evaluator."""
    c = _Checker()
    cases = _robustness_schedule()
    canonical = [evaluate(a.fan, mono) for a, mono in cases]
    mismatches = 0
    for ridx in range(runs):
        a, mono = cases[ridx % len(cases)]
        value = ChowEvaluator(a.fan, Random(987_000 + ridx)).evaluate(mono)
        if value != canonical[ridx % len(cases)]:
            mismatches += 1
    c.check(
        mismatches == 0,
        f"{runs} randomized pivot runs across {len(cases)} monomials all match "
        "the canonical values",
    )
    bad_denominator = []
    for (a, mono), value in zip(cases, canonical):
        scaled = value * a.m ** (a.d - 1)
        if scaled.denominator != 1:
            bad_denominator.append((a.name, mono))
    c.check(
        not bad_denominator,
        "every evaluated value lies in (1/m^(d-1)) * Z",
    )
    for a in corpus_analysis():
        if a.d < 2 or a.d > 4:
            continue
        if a.overall < ConvexityClass.LOCALLY_POINTED_CONVEX:
            continue
        # Pointedness makes the conormal top self-intersection on each divisor
        # at least 1/m^(d-1); that integral is (-1)^(d-1) D_i^d, which reads
        # -D_i^d in the even dimensions the lower bounds live in.
        threshold = Fraction(1, a.m ** (a.d - 1))
        sign = (-1) ** (a.d - 1)
        worst = min(
            sign * evaluate(a.fan, DivisorMonomial.make({i: a.d}))
            for i in range(len(a.fan.rays))
        )
        label = "-D_i^d" if a.d % 2 == 0 else "+D_i^d"
        c.check(
            worst >= threshold,
            f"{a.name} (pointed): min over rays of {label} is {worst} >= {threshold}",
        )
    return c.result("criterion-8", "chow evaluator robustness and denominators")


def _chain_root_family(rng: Random, d: int):
    """A basis with pairwise non-positive inner products and a path-shaped
    obtuseness graph, randomly rescaled, perturbed, and rotated by a signed
    permutation."""
    rows = []
    for i in range(d - 1):
        r = [0] * d
        r[i], r[i + 1] = 1, -1
        rows.append(r)
    last = [0] * d
    last[d - 1] = 1
    rows.append(last)
    for i in range(d):
        s = rng.randint(1, 3)
        rows[i] = [s * x for x in rows[i]]
    for _ in range(2 * d):
        i = rng.randrange(d)
        t = rng.randrange(d)
        delta = rng.choice((-1, 1))
        cand = [list(r) for r in rows]
        cand[i][t] += delta
        ok = all(
            dot(cand[a], cand[b]) <= 0 for a in range(d) for b in range(a + 1, d)
        ) and rank(cand) == d
        if ok:
            rows = cand
    perm = list(range(d))
    rng.shuffle(perm)
    signs = [rng.choice((-1, 1)) for _ in range(d)]
    return [tuple(signs[j] * r[perm[j]] for j in range(d)) for r in rows]


def _block_family(rng: Random, d1: int, d2: int):
    """Direct sum of two chain families: disconnected obtuseness graph."""
    a = _chain_root_family(rng, d1)
    b = _chain_root_family(rng, d2)
    return [r + (0,) * d2 for r in a] + [(0,) * d1 + r for r in b]


def _obtuseness_graph_connected(rows) -> bool:
    d = len(rows)
    adjacency = {
        i: {j for j in range(d) if j != i and dot(rows[i], rows[j]) < 0}
        for i in range(d)
    }
    seen = {0}
    frontier = [0]
    while frontier:
        v = frontier.pop()
        for w in adjacency[v]:
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    return len(seen) == d


def criterion_9() -> CriterionResult:
    """Structural invariants: palindromes, odd vanishing, Euler, dual bases."""
    c = _Checker()
    c.check(
        all(dehn_sommerville_ok(a.h) for a in corpus_analysis()),
        "h-vectors of all corpus entries are palindromic",
    )
    odd = [a for a in corpus_analysis() if a.d % 2 == 1]
    c.check(
        all(a.sig == 0 for a in odd),
        f"sigma vanishes for all {len(odd)} odd-dimensional corpus entries",
    )
    c.check(
        all(
            sum((-1) ** i * fi for i, fi in enumerate(a.f)) == 1
            for a in corpus_analysis()
        ),
        "Euler relation holds on every corpus face lattice",
    )
    rng = Random(20250809)
    failures = 0
    connected_seen = 0
    for _ in range(200):
        d = rng.randint(2, 5)
        if d >= 4 and rng.random() < 0.35:
            rows = _block_family(rng, d // 2, d - d // 2)
        else:
            rows = _chain_root_family(rng, d)
        duals = dual_basis(rows)
        pairs = [
            dot(duals[i], duals[j]) for i in range(d) for j in range(i + 1, d)
        ]
        if any(v < 0 for v in pairs):
            failures += 1
        if _obtuseness_graph_connected(rows):
            connected_seen += 1
            if any(v <= 0 for v in pairs):
                failures += 1
    c.check(
        failures == 0,
        f"dual-basis sign laws hold on 200 random instances "
        f"({connected_seen} with connected obtuseness graph)",
    )
    return c.result("criterion-9", "structural invariants and dual-basis laws")


def run_all(slow: bool = False) -> list[CriterionResult]:
    return [
        criterion_1(),
        criterion_2(slow=slow),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
    ]
