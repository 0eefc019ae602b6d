"""Explicit fibrewise Strom structure (u, h) on (K x K, diagonal).

Built from Milnor's average of two points: with barycentric coordinates
xi, eta of x, y and m = sum_b min(xi_b, eta_b),

    v = 3 - 3m                      in [0, 3], zero exactly on the diagonal
    mu(x, y) = min(xi, eta) / m     defined when m > 0
    lambda(x, y, t)                 straight legs x -> mu -> y
    w = clamp(2 - v, 0, 1)
    u = min(1, v)
    h((x, y), t) = (lambda(x, y, min(t, w)), y)   if v < 3
                 = (x, y)                         if v > 2

All arithmetic is exact, so each identity checked by :func:`verify_strom`
holds or fails exactly at every sample.
"""

from __future__ import annotations

import numbers
import random
from gmpy2 import mpq as Rational

from .complex_core import (
    BaryPoint,
    ComplexError,
    OpenSet,
    ProductPoint,
    SimplicialComplex,
    diagonal_vertex_points,
    sample_product_points,
)

ONE = Rational(1)
HALF = Rational(1, 2)


class OutsideNeighbourhoodError(ComplexError):
    """Milnor's average is only defined where the supports overlap (v < 3)."""


def _same_complex(x: BaryPoint, y: BaryPoint):
    if x.complex is not y.complex:
        raise ComplexError("points come from different complexes")


def overlap(x: BaryPoint, y: BaryPoint) -> Rational:
    """sum over vertices of min(xi_b, eta_b)."""
    _same_complex(x, y)
    yw = dict(y.weights)
    total = Rational(0)
    for v, a in x.weights:
        b = yw.get(v)
        if b:
            total += a if a < b else b
    return total


def v_function(K: SimplicialComplex, x: BaryPoint, y: BaryPoint) -> Rational:
    return 3 - 3 * overlap(x, y)


def milnor_average(K: SimplicialComplex, x: BaryPoint, y: BaryPoint) -> BaryPoint:
    _same_complex(x, y)
    yw = dict(y.weights)
    mins = []
    for v, a in x.weights:
        b = yw.get(v)
        if b:
            mins.append((v, a if a < b else b))
    total = sum((m for _, m in mins), Rational(0))
    if not total:
        raise OutsideNeighbourhoodError("supports of x and y are disjoint")
    return BaryPoint(x.complex, tuple((v, m / total) for v, m in mins))


def milnor_path(K: SimplicialComplex, x: BaryPoint, y: BaryPoint, t) -> BaryPoint:
    t = Rational(t)
    if not 0 <= t <= 1:
        raise ValueError(f"time {t} outside [0, 1]")
    mu = milnor_average(K, x, y)
    if t <= HALF:
        return x.combine(1 - 2 * t, mu, 2 * t)
    return mu.combine(2 - 2 * t, y, 2 * t - 1)


def w_of_v(v: Rational) -> Rational:
    if v <= 1:
        return ONE
    if v >= 2:
        return Rational(0)
    return 2 - v


def w_function(K: SimplicialComplex, x: BaryPoint, y: BaryPoint) -> Rational:
    return w_of_v(v_function(K, x, y))


def u_function(K: SimplicialComplex, x: BaryPoint, y: BaryPoint) -> Rational:
    return min(ONE, v_function(K, x, y))


class StromStructure:
    """Evaluators for (u, h) and the auxiliaries v, w, mu, lambda on one complex.

    ``clamp=False`` builds the mutant whose first clause uses lambda(x, y, t)
    instead of lambda(x, y, min(t, w)); it is kept for mutation tests.
    """

    def __init__(self, K: SimplicialComplex, clamp: bool = True):
        self.complex = K
        self.clamp = clamp
        self._v_cache: dict = {}

    def v(self, p: ProductPoint) -> Rational:
        try:
            return self._v_cache[p]
        except KeyError:
            pass
        if len(self._v_cache) > 50_000:
            self._v_cache.clear()
        val = self._v_cache[p] = v_function(self.complex, p.first, p.second)
        return val

    def u(self, p: ProductPoint) -> Rational:
        return min(ONE, self.v(p))

    def w(self, p: ProductPoint) -> Rational:
        return w_of_v(self.v(p))

    def mu(self, p: ProductPoint) -> BaryPoint:
        return milnor_average(self.complex, p.first, p.second)

    def lam(self, p: ProductPoint, t) -> BaryPoint:
        t = Rational(t)
        if t == 0:
            return p.first
        if t == 1:
            return p.second if self.v(p) < 3 else milnor_path(self.complex, p.first, p.second, t)
        return milnor_path(self.complex, p.first, p.second, t)

    def h_moving(self, p: ProductPoint, t) -> ProductPoint:
        """First clause, valid where v < 3."""
        t = Rational(t)
        s = min(t, self.w(p)) if self.clamp else t
        return ProductPoint(self.lam(p, s), p.second)

    @staticmethod
    def h_stationary(p: ProductPoint, t) -> ProductPoint:
        """Second clause, valid where v > 2."""
        return p

    def h(self, p: ProductPoint, t) -> ProductPoint:
        if self.v(p) < 3:
            return self.h_moving(p, t)
        return self.h_stationary(p, t)

    def retract(self, p: ProductPoint) -> ProductPoint:
        """r(p) = h(p, 1)."""
        return self.h(p, 1)

    def sublevel(self, bound, closed: bool = False) -> OpenSet:
        """u^{-1}([0, bound)) (or [0, bound] with ``closed``)."""
        bound = Rational(bound)
        if closed:
            return OpenSet(lambda p: self.u(p) <= bound, f"u<={bound}")
        return OpenSet(lambda p: self.u(p) < bound, f"u<{bound}")

    @property
    def neighbourhood(self) -> OpenSet:
        """U = u^{-1}([0, 1)), deformed into the diagonal by h."""
        return self.sublevel(1)


def _l1(p: ProductPoint, q: ProductPoint) -> Rational:
    total = Rational(0)
    for a, b in ((p.first, q.first), (p.second, q.second)):
        aw, bw = dict(a.weights), dict(b.weights)
        for v in set(aw) | set(bw):
            total += abs(aw.get(v, 0) - bw.get(v, 0))
    return total


def _carrier_partner(p: ProductPoint, rng: random.Random) -> ProductPoint:
    """Random point of the same product cell, so the segment p--q is straight."""
    def partner(x: BaryPoint) -> BaryPoint:
        raw = [rng.randint(1, 24) for _ in x.weights]
        tot = sum(raw)
        return BaryPoint(x.complex, tuple((v, Rational(r, tot)) for (v, _), r in zip(x.weights, raw)))

    return ProductPoint(partner(p.first), partner(p.second))


def _midpoint(p: ProductPoint, q: ProductPoint) -> ProductPoint:
    return ProductPoint(p.first.combine(HALF, q.first, HALF), p.second.combine(HALF, q.second, HALF))


def verify_strom(K: SimplicialComplex, sample_count: int = 10_000, seed: int = 0,
                 structure: StromStructure | None = None) -> dict:
    """Check every Strom-structure identity at seeded sample points.

    Samples are ``sample_count`` seeded product points plus the diagonal
    vertex points. Returns ``{complex, samples, checks: [{name, pass,
    witness?}], pass}``; the first failing point of each check is kept as
    its witness.
    """
    S = structure or StromStructure(K)
    rng = random.Random(f"strom:{seed}")
    points = sample_product_points(K, sample_count, seed) + diagonal_vertex_points(K)
    names = [
        "ranges",
        "zero_set_is_diagonal",
        "initial_identity",
        "fibrewise_over_second_factor",
        "pointed_on_diagonal",
        "retracts_neighbourhood_into_diagonal",
        "branch_agreement",
        "lipschitz_in_barycentric_l1",
        "v_midpoint_convex",
    ]
    witness: dict = {}

    def fail(name, **info):
        if name not in witness:
            witness[name] = {k: _show(v) for k, v in info.items()}

    for p in points:
        v, u, w = S.v(p), S.u(p), S.w(p)
        if not (0 <= v <= 3 and 0 <= u <= 1 and 0 <= w <= 1):
            fail("ranges", point=p, v=v)
        if (u == 0) != p.on_diagonal:
            fail("zero_set_is_diagonal", point=p, u=u)
        if S.h(p, 0) != p:
            fail("initial_identity", point=p)
        times = (Rational(0), Rational(1, 4), HALF, Rational(rng.randint(0, 48), 48), ONE)
        for t in times:
            if S.h(p, t).second != p.second:
                fail("fibrewise_over_second_factor", point=p, t=t)
            if p.on_diagonal and S.h(p, t) != p:
                fail("pointed_on_diagonal", point=p, t=t)
            if 2 < v < 3 and S.h_moving(p, t) != S.h_stationary(p, t):
                fail("branch_agreement", point=p, t=t, v=v)
        if u < 1:
            r = S.h(p, 1)
            if not (r.on_diagonal and r.second == p.second):
                fail("retracts_neighbourhood_into_diagonal", point=p, image=r)
        q = _carrier_partner(p, rng)
        mid = _midpoint(p, q)
        d = _l1(p, q)
        for f in (S.v, S.u, S.w):
            if abs(f(p) - f(q)) > 3 * d:
                fail("lipschitz_in_barycentric_l1", a=p, b=q)
        if 2 * S.v(mid) > S.v(p) + S.v(q):
            fail("v_midpoint_convex", a=p, b=q)

    checks = []
    for n in names:
        entry = {"name": n, "pass": n not in witness}
        if n in witness:
            entry["witness"] = witness[n]
        checks.append(entry)
    report = {
        "complex": K.name,
        "samples": len(points),
        "random_samples": sample_count,
        "seed": seed,
        "checks": checks,
        "pass": all(c["pass"] for c in checks),
    }
    if sample_count == 0:
        report["warning"] = "no random samples; only diagonal vertex points were checked"
    return report


def _show(x):
    if isinstance(x, numbers.Rational) and not isinstance(x, int):
        return str(x)
    if isinstance(x, BaryPoint):
        return {str(v): str(w) for v, w in x.weights}
    if isinstance(x, ProductPoint):
        return [_show(x.first), _show(x.second)]
    return x
