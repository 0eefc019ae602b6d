"""Paths on |K|, motion planners, and the section/compression translations.

A motion planner is a list of open sets of K x K, each with a section of the
endpoint map (a continuous choice of path from a to b). Equivalently each set
carries a fibrewise homotopy over the second factor that pushes it into the
diagonal. The translations between the two pictures, and the procedures that
turn an arbitrary cover into one whose homotopies fix the diagonal, live here.

Open sets are exact predicates. Every validation here is a statement about
the sampled points only.
"""

from __future__ import annotations

import bisect
import math
import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

from gmpy2 import mpq as Rational

from .complex_core import (
    BaryPoint,
    ComplexError,
    OpenSet,
    ProductPoint,
    SimplicialComplex,
    diagonal_vertex_points,
    sample_product_points,
    shares_simplex,
)
from .fixtures import circle, point
from .strom_milnor import StromStructure

ONE = Rational(1)
HALF = Rational(1, 2)
THIRD = Rational(1, 3)
TWO_THIRDS = Rational(2, 3)


class PathError(ComplexError):
    pass


class SectionInvalidError(ValueError):
    """A section's path does not start at a or end at b."""


class CompressionInvalidError(ValueError):
    """A homotopy is not a fibrewise compression into the diagonal."""


class InapplicableError(ValueError):
    """Neither hypothesis of the same-size pointed upgrade holds."""


class FixtureError(ValueError):
    pass


# ------------------------------------------------------------------ paths


class PLPath:
    """Piecewise-linear path: straight segments between consecutive breakpoints.

    Each pair of consecutive points must lie in a common simplex so the
    segment between them exists in |K|.
    """

    def __init__(self, times: Sequence, points: Sequence[BaryPoint]):
        times = tuple(Rational(t) for t in times)
        points = tuple(points)
        if len(times) != len(points) or len(times) < 2:
            raise PathError("need matching times and points, at least two of each")
        if times[0] != 0 or times[-1] != 1:
            raise PathError("breakpoint times must run from 0 to 1")
        if any(a >= b for a, b in zip(times, times[1:])):
            raise PathError("breakpoint times must be strictly increasing")
        for i, (p, q) in enumerate(zip(points, points[1:])):
            if not shares_simplex(p, q):
                raise PathError(f"segment {i} has no carrier simplex")
        self.times = times
        self.points = points

    @classmethod
    def constant(cls, b: BaryPoint) -> "PLPath":
        return cls((0, 1), (b, b))

    @property
    def start(self) -> BaryPoint:
        return self.points[0]

    @property
    def end(self) -> BaryPoint:
        return self.points[-1]

    def __call__(self, t) -> BaryPoint:
        t = Rational(t)
        if not 0 <= t <= 1:
            raise PathError(f"time {t} outside [0, 1]")
        k = bisect.bisect_right(self.times, t)
        if k == len(self.times):
            return self.points[-1]
        t0, t1 = self.times[k - 1], self.times[k]
        a = (t1 - t) / (t1 - t0)
        return self.points[k - 1].combine(a, self.points[k], 1 - a)

    def __repr__(self):
        return f"PLPath({len(self.times)} breakpoints)"


class CurvePath:
    """Path given by an exact evaluator ``t -> BaryPoint``."""

    def __init__(self, evaluate: Callable, label: str = ""):
        self._evaluate = evaluate
        self.label = label

    @property
    def start(self) -> BaryPoint:
        return self(0)

    @property
    def end(self) -> BaryPoint:
        return self(1)

    def __call__(self, t) -> BaryPoint:
        t = Rational(t)
        if not 0 <= t <= 1:
            raise PathError(f"time {t} outside [0, 1]")
        return self._evaluate(t)


@dataclass(frozen=True)
class Section:
    """Continuous choice of path from a to b for (a, b) in ``domain``."""

    domain: OpenSet
    evaluate: Callable[[ProductPoint], object]
    description: str = ""

    def __call__(self, p: ProductPoint):
        return self.evaluate(p)


@dataclass(frozen=True)
class FibrewiseHomotopy:
    """Homotopy on ``domain`` that keeps the second coordinate fixed."""

    domain: OpenSet
    evaluate: Callable[[ProductPoint, object], ProductPoint]
    description: str = ""

    def __call__(self, p: ProductPoint, t) -> ProductPoint:
        return self.evaluate(p, Rational(t))


@dataclass(frozen=True)
class MotionPlanner:
    complex: SimplicialComplex
    sections: tuple
    monoidal: bool
    name: str = ""
    demo: bool = False

    @property
    def size(self) -> int:
        return len(self.sections)


def planner_size(planner: MotionPlanner) -> int:
    return planner.size


def drop_set(planner: MotionPlanner, index: int) -> MotionPlanner:
    """Copy of ``planner`` without one of its sets (a coverage mutant)."""
    kept = tuple(s for i, s in enumerate(planner.sections) if i != index)
    return MotionPlanner(planner.complex, kept, planner.monoidal,
                         f"{planner.name}-without-{index}", planner.demo)


# ----------------------------------------------------------- translations


def section_to_compression(s: Section, check_points: Sequence[ProductPoint] = ()) -> FibrewiseHomotopy:
    """H(a, b; t) = (s(a, b)(t), b).

    Raises :class:`SectionInvalidError` if the endpoint contract fails at
    any check point inside the domain.
    """
    for p in check_points:
        if p in s.domain:
            path = s(p)
            if path(0) != p.first or path(1) != p.second:
                raise SectionInvalidError(f"section path at {p} has wrong endpoints")

    def evaluate(p, t):
        return ProductPoint(s(p)(t), p.second)

    return FibrewiseHomotopy(s.domain, evaluate, f"compression of {s.description}".strip())


def compression_to_section(H: FibrewiseHomotopy, check_points: Sequence[ProductPoint] = ()) -> Section:
    """s(a, b)(t) = first coordinate of H(a, b; t).

    Raises :class:`CompressionInvalidError` if at a check point H does not
    start at the point, end on the diagonal, or keep the second coordinate.
    """
    for p in check_points:
        if p not in H.domain:
            continue
        start, end = H(p, 0), H(p, 1)
        if start != p:
            raise CompressionInvalidError(f"H(p, 0) != p at {p}")
        if not end.on_diagonal or end.second != p.second:
            raise CompressionInvalidError(f"H(p, 1) is not (b, b) at {p}")

    def evaluate(p):
        return CurvePath(lambda t: H(p, t).first, "compression path")

    return Section(H.domain, evaluate, f"section of {H.description}".strip())


def is_monoidal_section(s: Section, diagonal: Sequence[ProductPoint], times=None) -> bool:
    """s(b, b) is the constant path at every sampled diagonal point in the domain."""
    times = times or _PROBE_TIMES
    return all(s(d)(t) == d.first for d in diagonal if d in s.domain for t in times)


def is_stationary_on_diagonal(H: FibrewiseHomotopy, diagonal: Sequence[ProductPoint], times=None) -> bool:
    times = times or _PROBE_TIMES
    return all(H(d, t) == d for d in diagonal if d in H.domain for t in times)


_PROBE_TIMES = tuple(Rational(k, 8) for k in range(9))


# ------------------------------------------------------ circle geometry


class CircleGeometry:
    """Angle coordinate on the n-gon with vertices 0..n-1 in cyclic order.

    Vertex k sits at angle k; the point (1 - s) k + s (k + 1) sits at k + s.
    Angles are taken mod n.
    """

    def __init__(self, K: SimplicialComplex):
        n = len(K.vertices)
        if K.dimension != 1 or list(K.vertices) != list(range(n)) or n < 3:
            raise FixtureError("circle geometry needs an n-gon on vertices 0..n-1")
        for i in range(n):
            if (i, (i + 1) % n) not in K:
                raise FixtureError(f"edge {{{i}, {(i + 1) % n}}} missing from the n-gon")
        if K.count(1) != n:
            raise FixtureError("n-gon must have exactly n edges")
        self.complex = K
        self.n = n

    def angle(self, x: BaryPoint) -> Rational:
        sup = x.support
        if len(sup) == 1:
            return Rational(sup[0])
        i, j = sup
        if j == (i + 1) % self.n:
            return i + x[j]
        return j + x[i]  # the closing edge {0, n-1}

    def point_at(self, theta) -> BaryPoint:
        theta = Rational(theta) % self.n
        k = int(theta)  # floor, theta >= 0
        s = theta - k
        if not s:
            return self.complex.vertex_point(k)
        return BaryPoint.from_weights(self.complex, {k: 1 - s, (k + 1) % self.n: s})

    def ccw_distance(self, a: BaryPoint, b: BaryPoint) -> Rational:
        return (self.angle(b) - self.angle(a)) % self.n

    def signed_distance(self, a: BaryPoint, b: BaryPoint) -> Rational:
        """Angle from a to b in (-n/2, n/2]."""
        d = self.ccw_distance(a, b)
        return d - self.n if d > Rational(self.n, 2) else d

    def in_arc(self, x: BaryPoint, start, length) -> bool:
        """x lies in the open arc of angles (start, start + length)."""
        return 0 < (self.angle(x) - Rational(start)) % self.n < Rational(length)

    def unwrap(self, x: BaryPoint, start) -> Rational:
        """Angle of x in [start, start + n)."""
        start = Rational(start)
        return start + (self.angle(x) - start) % self.n

    def angle_path(self, knots: Sequence, times: Sequence) -> PLPath:
        """PL path through the angles ``knots`` at ``times``, broken at every vertex crossed."""
        out_t, out_p = [], []
        for (th0, th1), (t0, t1) in zip(zip(knots, knots[1:]), zip(times, times[1:])):
            th0, th1, t0, t1 = map(Rational, (th0, th1, t0, t1))
            if not out_t:
                out_t.append(t0)
                out_p.append(self.point_at(th0))
            if th0 != th1:
                lo, hi = sorted((th0, th1))
                ks = range(math.floor(lo) + 1, math.ceil(hi))  # integers strictly inside (lo, hi)
                ks = ks if th1 > th0 else reversed(ks)
                for k in ks:
                    out_t.append(t0 + (t1 - t0) * (k - th0) / (th1 - th0))
                    out_p.append(self.point_at(k))
            out_t.append(t1)
            out_p.append(self.point_at(th1))
        return PLPath(out_t, out_p)

    def ccw_path(self, a: BaryPoint, b: BaryPoint, full_turn: bool = False) -> PLPath:
        """Counter-clockwise path from a to b; when a == b, a full loop if ``full_turn``."""
        d = self.ccw_distance(a, b)
        if not d:
            if not full_turn:
                return PLPath.constant(a)
            d = Rational(self.n)
        th = self.angle(a)
        return self.angle_path((th, th + d), (0, 1))

    def short_path(self, a: BaryPoint, b: BaryPoint) -> PLPath:
        th = self.angle(a)
        return self.angle_path((th, th + self.signed_distance(a, b)), (0, 1))


def _as_geometry(K_or_geo) -> CircleGeometry:
    return K_or_geo if isinstance(K_or_geo, CircleGeometry) else CircleGeometry(K_or_geo)


# ---------------------------------------------------------- sections


def strom_section(strom: StromStructure, bound=1) -> Section:
    """Two-leg path a -> mu(a, b) -> b on u < bound (bound <= 1)."""
    bound = Rational(bound)
    if not 0 < bound <= 1:
        raise ValueError("Strom section needs 0 < bound <= 1")

    def evaluate(p):
        return PLPath((0, HALF, 1), (p.first, strom.mu(p), p.second))

    return Section(strom.sublevel(bound), evaluate, f"milnor path on u<{bound}")


def strom_compression(strom: StromStructure, bound=1) -> FibrewiseHomotopy:
    """The Strom homotopy h restricted to u < bound."""
    return FibrewiseHomotopy(strom.sublevel(bound), lambda p, t: strom.h(p, t),
                             f"strom h on u<{Rational(bound)}")


def ccw_section(geo) -> Section:
    geo = _as_geometry(geo)
    return Section(OpenSet(lambda p: not p.on_diagonal, "x != y"),
                   lambda p: geo.ccw_path(p.first, p.second), "counter-clockwise path")


def loop_section(geo) -> Section:
    """Counter-clockwise path on all of K x K, with a full turn when a == b.

    Satisfies the endpoint contract everywhere but is not monoidal.
    """
    geo = _as_geometry(geo)
    return Section(OpenSet(lambda p: True, "everything"),
                   lambda p: geo.ccw_path(p.first, p.second, full_turn=True), "full-turn loop")


def circle_planner(n: int = 12) -> MotionPlanner:
    """Two-set planner on the n-gon: Milnor paths near the diagonal, counter-clockwise paths off it."""
    if n < 3:
        raise FixtureError("circle planner needs n >= 3")
    K = circle(n)
    geo = CircleGeometry(K)
    strom = StromStructure(K)
    return MotionPlanner(K, (strom_section(strom), ccw_section(geo)), monoidal=False,
                         name=f"circle{n}", demo=True)


def point_planner() -> MotionPlanner:
    K = point()
    whole = OpenSet(lambda p: True, "everything")
    return MotionPlanner(K, (Section(whole, lambda p: PLPath.constant(p.first), "constant"),),
                         monoidal=True, name="point", demo=True)


def planner_from_description(desc: dict, K: SimplicialComplex | None = None) -> MotionPlanner:
    """Build a planner from ``{complex, sets: [{kind, params}], monoidal}``.

    Kinds: ``u_sublevel`` (``params.bound`` <= 1, Milnor paths) and
    ``predicate_tag`` with ``params.tag`` one of ``off_diagonal_ccw`` or
    ``full_turn_loop`` (n-gon complexes only).
    """
    from .fixtures import get_complex

    if K is None:
        K = get_complex(str(desc["complex"]))
    strom = StromStructure(K)
    sections = []
    for entry in desc.get("sets", []):
        kind, params = entry.get("kind"), entry.get("params", {}) or {}
        if kind == "u_sublevel":
            sections.append(strom_section(strom, Rational(str(params.get("bound", 1)))))
        elif kind == "predicate_tag":
            tag = params.get("tag")
            if tag == "off_diagonal_ccw":
                sections.append(ccw_section(K))
            elif tag == "full_turn_loop":
                sections.append(loop_section(K))
            else:
                raise FixtureError(f"unknown predicate tag {tag!r}")
        else:
            raise FixtureError(f"unknown set kind {kind!r}")
    if not sections:
        raise FixtureError("planner description has no sets")
    return MotionPlanner(K, tuple(sections), bool(desc.get("monoidal", False)),
                         str(desc.get("name", "described")), demo=True)


# ----------------------------------------------------------- validation


def _check_list(names, witness):
    out = []
    for n in names:
        entry = {"name": n, "pass": n not in witness}
        if n in witness:
            entry["witness"] = witness[n]
        out.append(entry)
    return out


def _show(x):
    from .strom_milnor import _show as show
    return show(x)


def validate_planner(K: SimplicialComplex, planner: MotionPlanner, sample_count: int = 10_000,
                     seed: int = 0) -> dict:
    """Check coverage, endpoint contracts and (if monoidal) s(b, b) = c_b at samples."""
    from .linalg import QQ
    from .ring_invariants import zero_divisor_cup_length

    rng = random.Random(f"planner:{seed}")
    points = sample_product_points(K, sample_count, seed) + diagonal_vertex_points(K)
    diagonal = [p for p in points if p.on_diagonal]
    names = ["coverage", "endpoint_contract", "path_carrier"]
    if planner.monoidal:
        names += ["diagonal_containment", "constant_on_diagonal"]
    witness: dict = {}

    def fail(name, **info):
        witness.setdefault(name, {k: _show(v) for k, v in info.items()})

    for p in points:
        hit = False
        for i, s in enumerate(planner.sections):
            if p not in s.domain:
                continue
            hit = True
            try:
                path = s(p)
                ends = (path(0), path(1))
                path(Rational(rng.randint(0, 64), 64))
            except PathError as exc:
                fail("path_carrier", point=p, set=i, error=str(exc))
                continue
            if ends != (p.first, p.second):
                fail("endpoint_contract", point=p, set=i)
        if not hit:
            fail("coverage", point=p)
    if planner.monoidal:
        for d in diagonal:
            for i, s in enumerate(planner.sections):
                if d not in s.domain:
                    fail("diagonal_containment", point=d, set=i)
                elif not is_monoidal_section(s, [d]):
                    fail("constant_on_diagonal", point=d, set=i)

    zcl = zero_divisor_cup_length(K, QQ)
    checks = _check_list(names, witness)
    return {
        "complex": K.name,
        "planner": planner.name,
        "demo_fixture": planner.demo,
        "monoidal": planner.monoidal,
        "size": planner.size,
        "samples": len(points),
        "seed": seed,
        "validated_at": f"validated at {len(points)} samples",
        "zcl_bound": {"field": "Q", "zcl": zcl, "expected": "size >= zcl+1",
                      "holds": planner.size >= zcl + 1},
        "checks": checks,
        "pass": all(c["pass"] for c in checks),
    }


def cover_from_planner(planner: MotionPlanner, check_points=()) -> list[FibrewiseHomotopy]:
    return [section_to_compression(s, check_points) for s in planner.sections]


def validate_cover(K: SimplicialComplex, cover: Sequence[FibrewiseHomotopy], sample_count: int = 2000,
                   seed: int = 0, pointed: bool = True) -> dict:
    """Check that ``cover`` covers K x K by fibrewise compressions into the diagonal.

    With ``pointed`` every set must also contain the diagonal samples and its
    homotopy must fix them for all sampled times.
    """
    rng = random.Random(f"cover:{seed}")
    points = sample_product_points(K, sample_count, seed) + diagonal_vertex_points(K)
    names = ["coverage", "initial_identity", "ends_on_diagonal", "fibrewise"]
    if pointed:
        names += ["diagonal_containment", "stationary_on_diagonal"]
    witness: dict = {}

    def fail(name, **info):
        witness.setdefault(name, {k: _show(v) for k, v in info.items()})

    base_times = (Rational(0), THIRD, HALF, TWO_THIRDS, ONE)
    for p in points:
        times = base_times + (Rational(rng.randint(0, 96), 96),)
        members = [i for i, H in enumerate(cover) if p in H.domain]
        if not members:
            fail("coverage", point=p)
        if pointed and p.on_diagonal:
            for i, H in enumerate(cover):
                if i not in members:
                    fail("diagonal_containment", point=p, set=i)
        for i in members:
            H = cover[i]
            if H(p, 0) != p:
                fail("initial_identity", point=p, set=i)
            end = H(p, 1)
            if not (end.on_diagonal and end.second == p.second):
                fail("ends_on_diagonal", point=p, set=i, image=end)
            for t in times:
                q = H(p, t)
                if q.second != p.second:
                    fail("fibrewise", point=p, set=i, t=t)
                if pointed and p.on_diagonal and q != p:
                    fail("stationary_on_diagonal", point=p, set=i, t=t)

    checks = _check_list(names, witness)
    return {
        "complex": K.name,
        "size": len(cover),
        "pointed": pointed,
        "samples": len(points),
        "seed": seed,
        "validated_at": f"validated at {len(points)} samples",
        "checks": checks,
        "pass": all(c["pass"] for c in checks),
    }


# ------------------------------------------------- pointed covers


DEFAULT_BANDS = (HALF, THIRD, TWO_THIRDS)


def cover_plus_one(cover: Sequence[FibrewiseHomotopy], strom: StromStructure,
                   bands=DEFAULT_BANDS) -> list[FibrewiseHomotopy]:
    """Pointed cover with one extra set.

    With ``bands = (cut, inner, outer)`` each input set U_i becomes
    (U_i minus u <= cut) together with u < inner, contracted by H_i and by h
    respectively, and the new last set is u < outer contracted by h. The
    default bands are (1/2, 1/3, 2/3); ``inner < cut`` keeps the two pieces
    apart and ``outer > cut`` makes the new set catch what the cut removed.
    """
    cut, inner, outer = (Rational(b) for b in bands)
    u = strom.u
    out = []
    for i, H in enumerate(cover):
        def member(p, H=H):
            return u(p) < inner or (u(p) > cut and p in H.domain)

        def evaluate(p, t, H=H):
            return strom.h(p, t) if u(p) < inner else H(p, t)

        out.append(FibrewiseHomotopy(OpenSet(member, f"(U{i} minus u<={cut}) or u<{inner}"),
                                     evaluate, f"pointed set {i}"))
    out.append(FibrewiseHomotopy(strom.sublevel(outer), lambda p, t: strom.h(p, t),
                                 f"strom h on u<{outer}"))
    return out


def _pulled_back_contraction(H: FibrewiseHomotopy, strom: StromStructure):
    """Contraction of r^{-1}(U): run h to the end, then H from r(x)."""
    def G(p, t):
        if t <= HALF:
            return strom.h(p, 2 * t)
        return H(strom.retract(p), 2 * t - 1)
    return G


def _misses_diagonal(H: FibrewiseHomotopy, probes) -> bool:
    return not any(p in H.domain for p in probes if p.on_diagonal)


def _contains_diagonal_projection(H: FibrewiseHomotopy, probes) -> bool:
    inside = [p for p in probes if p in H.domain]
    return bool(inside) and all(ProductPoint(p.second, p.second) in H.domain for p in inside)


def upgrade_condition(cover: Sequence[FibrewiseHomotopy], case: int, probes) -> int | None:
    """Index of the first set meeting hypothesis ``case`` at the probes, else None."""
    test = {1: _misses_diagonal, 2: _contains_diagonal_projection}.get(case)
    if test is None:
        raise ValueError("case must be 1 or 2")
    for i, H in enumerate(cover):
        if test(H, probes):
            return i
    return None


def _case_two_homotopy(H0: FibrewiseHomotopy, strom: StromStructure):
    """Pointed contraction of r^{-1}(U_0) together with u < 2/3."""
    def evaluate(p, t):
        if p.on_diagonal:
            return p
        u = strom.u(p)
        if t <= THIRD:
            return strom.h(p, 3 * t)
        if u < TWO_THIRDS:
            return strom.retract(p)
        base = ProductPoint(p.second, p.second)
        if u < 1:
            if t <= u - THIRD:
                return H0(base, 3 * t - 1)
            if t <= Rational(5, 3) - u:
                return H0(base, 3 * u - 2)
            return H0(base, 3 - 3 * t)
        if t <= TWO_THIRDS:
            return H0(strom.retract(p), 3 * t - 1)
        return H0(base, 3 - 3 * t)
    return evaluate


def pointed_upgrade(cover: Sequence[FibrewiseHomotopy], strom: StromStructure, case: int,
                    probes: Sequence[ProductPoint] | None = None, seed: int = 0) -> list[FibrewiseHomotopy]:
    """Pointed cover of the same size, under hypothesis 1 or 2.

    Case 1 needs a set missing the diagonal; case 2 needs a set U with
    (b, b) in U whenever (a, b) is. Both are tested at ``probes``.
    Raises :class:`InapplicableError` when the requested hypothesis fails.
    """
    K = strom.complex
    if probes is None:
        probes = sample_product_points(K, 1000, seed) + diagonal_vertex_points(K)
    chosen = upgrade_condition(cover, case, probes)
    if chosen is None:
        raise InapplicableError(f"no set of the cover satisfies hypothesis {case}")
    u, r = strom.u, strom.retract
    out = []
    for i, H in enumerate(cover):
        G = _pulled_back_contraction(H, strom)
        if i == chosen:
            def member(p, H=H):
                return u(p) < TWO_THIRDS or r(p) in H.domain

            if case == 1:
                def evaluate(p, t, G=G):
                    return strom.h(p, t) if u(p) < TWO_THIRDS else G(p, t)
            else:
                evaluate = _case_two_homotopy(H, strom)
            desc = f"r^-1(U{i}) or u<2/3"
        else:
            def member(p, H=H):
                return u(p) < THIRD or (u(p) > HALF and r(p) in H.domain)

            def evaluate(p, t, G=G):
                return strom.h(p, t) if u(p) < THIRD else G(p, t)
            desc = f"(r^-1(U{i}) minus u<=1/2) or u<1/3"
        out.append(FibrewiseHomotopy(OpenSet(member, desc), evaluate, f"pointed set {i} (case {case})"))
    return out


# ------------------------------------------------ cover fixtures on S^1


def circle_cover(n: int = 12) -> tuple[StromStructure, list[FibrewiseHomotopy]]:
    """Size-2 cover: counter-clockwise compression off the diagonal, h near it.

    The first set misses the diagonal, so hypothesis 1 applies.
    """
    K = circle(n)
    geo = CircleGeometry(K)
    strom = StromStructure(K)
    off = section_to_compression(ccw_section(geo))
    return strom, [off, strom_compression(strom)]


def _arc_detour(geo: CircleGeometry, start, length):
    """Compression of {x in arc, y in arc}: x to the arc's midpoint, then on to y."""
    start, length = Rational(start), Rational(length)
    mid = start + length / 2

    def evaluate(p, t):
        path = geo.angle_path((geo.unwrap(p.first, start), mid, geo.unwrap(p.second, start)),
                              (0, HALF, 1))
        return ProductPoint(path(t), p.second)

    return evaluate


def product_arc_cover(n: int = 12) -> tuple[StromStructure, list[FibrewiseHomotopy]]:
    """Size-3 cover whose first set is {x in A', y in A} with A inside A'.

    Its homotopy detours through the midpoint of A', so it moves diagonal
    points; hypothesis 2 holds for it.
    """
    K = circle(n)
    geo = CircleGeometry(K)
    strom = StromStructure(K)
    half = Rational(n, 2)
    outer = (Rational(-1), half + 2)   # arc A' = (-1, n/2 + 1)
    inner = (Rational(0), half)        # arc A = (0, n/2)
    box = OpenSet(lambda p: geo.in_arc(p.first, *outer) and geo.in_arc(p.second, *inner),
                  "x in A', y in A")
    first = FibrewiseHomotopy(box, _arc_detour(geo, *outer), "detour through the arc midpoint")
    off = section_to_compression(ccw_section(geo))
    return strom, [first, strom_compression(strom), off]


def obstructed_cover(n: int = 12) -> tuple[StromStructure, list[FibrewiseHomotopy]]:
    """Size-3 cover of S^1 x S^1 where neither upgrade hypothesis holds.

    Two sets are short-path neighbourhoods of the diagonal cut down to
    x in an arc; the third joins far pairs (counter-clockwise) to a third
    such piece. Each set meets the diagonal only over part of the circle.
    """
    K = circle(n)
    geo = CircleGeometry(K)
    strom = StromStructure(K)
    half = Rational(n, 2)
    arcs = ((Rational(-1), half + 2), (half - 1, half + 2))
    near_width, ahead_min, ahead_max = HALF, Rational(1, 5), n - THIRD

    def short(p, t):
        return ProductPoint(geo.short_path(p.first, p.second)(t), p.second)

    sets = []
    for k, arc in enumerate(arcs):
        dom = OpenSet(lambda p, arc=arc: abs(geo.signed_distance(p.first, p.second)) < near_width
                      and geo.in_arc(p.first, *arc), f"near pairs with x in arc {k}")
        sets.append(FibrewiseHomotopy(dom, short, "short path"))

    def near3(p):
        return abs(geo.signed_distance(p.first, p.second)) < Rational(1, 4) and geo.in_arc(p.first, 0, half)

    def far(p):
        return ahead_min < geo.ccw_distance(p.first, p.second) < ahead_max

    def mixed(p, t):
        if near3(p):
            return short(p, t)
        return ProductPoint(geo.ccw_path(p.first, p.second)(t), p.second)

    sets.append(FibrewiseHomotopy(OpenSet(lambda p: near3(p) or far(p), "far pairs or near pairs over an arc"),
                                  mixed, "counter-clockwise or short path"))
    return strom, sets


__all__ = [
    "CircleGeometry", "CompressionInvalidError", "CurvePath", "FibrewiseHomotopy", "FixtureError",
    "InapplicableError", "MotionPlanner", "PLPath", "PathError", "Section", "SectionInvalidError",
    "ccw_section", "circle_cover", "circle_planner", "compression_to_section", "cover_from_planner",
    "cover_plus_one", "drop_set", "is_monoidal_section", "is_stationary_on_diagonal", "loop_section",
    "obstructed_cover", "planner_from_description", "planner_size", "point_planner",
    "pointed_upgrade", "product_arc_cover", "section_to_compression", "strom_compression",
    "strom_section", "upgrade_condition", "validate_cover", "validate_planner",
]
