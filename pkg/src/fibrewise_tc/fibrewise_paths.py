"""Homotopy lifting through the endpoint map and extension from the two track ends.

Both combinators are pure reparametrizations of the data they are given:

* ``lift_homotopy``: given a family of fibrewise paths phi(w) and a homotopy
  H(w, s) of their endpoint pairs with H(w, 0) = (phi(w)(0), phi(w)(1)),
  produce paths L(w, s) with L(w, 0) = phi(w) and endpoints H(w, s).
  The path L(w, s) runs backwards along the first coordinate of H, then
  along phi(w) squeezed into the middle, then forwards along the second
  coordinate of H.

* ``extend_homotopy``: given a map phi on the track q(z, t) and homotopies
  of its two ends, produce E(z, t, s) with E(., ., 0) = phi and E equal to
  the end homotopies at t = 0 and t = 1.

Points are whatever the supplied callables return; equality is exact.
"""

from __future__ import annotations

import random
from typing import Callable, Sequence

from gmpy2 import mpq as Rational

from .complex_core import ProductPoint, SimplicialComplex, diagonal_vertex_points, sample_product_points
from .strom_milnor import StromStructure, _show

THIRD = Rational(1, 3)


class NotALiftError(ValueError):
    """H(w, 0) does not match the endpoints of phi(w)."""


class NotAnExtensionError(ValueError):
    """The end homotopies do not start at phi, or move section points."""


class UndefinedBranchError(ValueError):
    """No branch of the piecewise formula covers the requested time."""


PathFamily = Callable[[object, object], object]   # (w, t) -> point
PairHomotopy = Callable[[object, object], tuple]  # (w, s) -> (point, point)


# ------------------------------------------------------------------ lift


def lift_branches(phi: PathFamily, H: PairHomotopy) -> dict:
    """The three open-interval formulas of the lift, each as (w, s, t) -> point."""
    return {
        "first_end": lambda w, s, t: H(w, s - 3 * t)[0],
        "middle": lambda w, s, t: phi(w, (3 * t - s) / (3 - 2 * s)),
        "second_end": lambda w, s, t: H(w, 3 * t - 3 + s)[1],
    }


def lift_homotopy(phi: PathFamily, H: PairHomotopy, check_at: Sequence = (),
                  last_row_at_one: bool = True) -> Callable:
    """Lifted homotopy L(w, s)(t), returned as a callable ``(w, s, t) -> point``.

    ``check_at`` lists parameters w where H(w, 0) = (phi(w)(0), phi(w)(1)) is
    verified up front; a mismatch raises :class:`NotALiftError`.

    With ``last_row_at_one=False`` the closing row is keyed on t = 0 instead
    of t = 1, duplicating the opening row; the value at t = 1 then has no
    branch for s > 0 and evaluation raises :class:`UndefinedBranchError`.
    """
    for w in check_at:
        if tuple(H(w, 0)) != (phi(w, 0), phi(w, 1)):
            raise NotALiftError(f"H(w, 0) is not the endpoint pair of phi(w) at w={w!r}")
    br = lift_branches(phi, H)

    def evaluate(w, s, t):
        s, t = Rational(s), Rational(t)
        if not (0 <= s <= 1 and 0 <= t <= 1):
            raise ValueError("s and t must lie in [0, 1]")
        if t == 0:
            return H(w, s)[0]
        if t < s / 3:
            return br["first_end"](w, s, t)
        if t == s / 3:
            return phi(w, 0)
        if t < (3 - s) / 3:
            return br["middle"](w, s, t)
        if t == (3 - s) / 3:
            return phi(w, 1)
        if t < 1:
            return br["second_end"](w, s, t)
        if last_row_at_one:
            return H(w, s)[1]
        raise UndefinedBranchError(f"no branch covers t=1 at s={s}")

    return evaluate


def lift_seams(phi: PathFamily, H: PairHomotopy, w, s) -> list[tuple[str, object, object, object]]:
    """(name, left formula, row value, right formula) at the two interior seams."""
    s = Rational(s)
    br = lift_branches(phi, H)
    a, b = s / 3, (3 - s) / 3
    return [
        ("t=s/3", br["first_end"](w, s, a), phi(w, 0), br["middle"](w, s, a)),
        ("t=(3-s)/3", br["middle"](w, s, b), phi(w, 1), br["second_end"](w, s, b)),
    ]


# ---------------------------------------------------------------- extend


def extend_branches(phi: PathFamily, H: Callable) -> dict:
    """Open-interval formulas of the extension, each as (z, t, s) -> point.

    ``H(end, z, s)`` is the homotopy on end ``end`` (0 or 1) of the track.
    """
    return {
        "first_end": lambda z, t, s: H(0, z, s - 3 * t),
        "middle": lambda z, t, s: phi(z, (3 * t - s) / (3 - 2 * s)),
        "second_end": lambda z, t, s: H(1, z, 3 * t - 3 + s),
    }


def extend_homotopy(phi: PathFamily, H: Callable, is_base: Callable[[object], bool] = lambda z: False,
                    check_at: Sequence = (), check_times: Sequence = ()) -> Callable:
    """Extended homotopy E(q(z, t), s), returned as ``(z, t, s) -> point``.

    ``phi(z, t)`` evaluates the map on the track point q(z, t); ``H(end, z, s)``
    is the homotopy on the end copy ``end`` in {0, 1}. ``is_base(z)`` marks
    points on the section, which must be fixed by H.

    At each z in ``check_at`` the ends must agree with phi at s = 0 and, for
    section points, H must stay put for the ``check_times``; otherwise
    :class:`NotAnExtensionError` is raised.
    """
    for z in check_at:
        for end in (0, 1):
            if H(end, z, 0) != phi(z, end):
                raise NotAnExtensionError(f"H(in{end} z, 0) != phi(q(z, {end})) at z={z!r}")
        if is_base(z):
            for s in check_times:
                if H(0, z, s) != z or H(1, z, s) != z:
                    raise NotAnExtensionError(f"end homotopy moves the section point {z!r}")
    br = extend_branches(phi, H)

    def evaluate(z, t, s):
        t, s = Rational(t), Rational(s)
        if not (0 <= s <= 1 and 0 <= t <= 1):
            raise ValueError("s and t must lie in [0, 1]")
        if t < s / 3:
            return br["first_end"](z, t, s)
        if t == s / 3:
            return phi(z, 0)
        if t < (3 - s) / 3:
            return br["middle"](z, t, s)
        if t == (3 - s) / 3:
            return phi(z, 1)
        return br["second_end"](z, t, s)

    return evaluate


def extend_seams(phi: PathFamily, H: Callable, z, s) -> list[tuple[str, object, object, object]]:
    s = Rational(s)
    br = extend_branches(phi, H)
    a, b = s / 3, (3 - s) / 3
    return [
        ("t=s/3", br["first_end"](z, a, s), phi(z, 0), br["middle"](z, a, s)),
        ("t=(3-s)/3", br["middle"](z, b, s), phi(z, 1), br["second_end"](z, b, s)),
    ]


# ------------------------------------------------------------ fixtures


def strom_lift_fixture(strom: StromStructure):
    """Paths and endpoint homotopy built from the Strom structure.

    Parameters w are points (a, b) with u < 1. The path phi(w) is t -> h(w, t)
    inside the fibre over b; H(w, s) moves its start along h(w, s/2) and its
    end (b, b) along the Milnor path from b towards a.
    """
    def phi(w, t):
        return strom.h(w, t)

    def H(w, s):
        s = Rational(s)
        back = ProductPoint(w.second, w.first)
        return (strom.h(w, s / 2), ProductPoint(strom.lam(back, s / 2), w.second))

    return phi, H


def strom_extend_fixture(strom: StromStructure):
    """Track map q(z, t) -> h(z, t) with end homotopies h(z, s/2) and h(z, 1 - s/2)."""
    def phi(z, t):
        return strom.h(z, t)

    def H(end, z, s):
        s = Rational(s)
        return strom.h(z, s / 2) if end == 0 else strom.h(z, 1 - s / 2)

    return phi, H


def _grid(n: int):
    return [Rational(k, n - 1) for k in range(n)]


def _report(K, names, witness, extra):
    checks = []
    for n in names:
        entry = {"name": n, "pass": n not in witness}
        if n in witness:
            entry["witness"] = witness[n]
        checks.append(entry)
    return {"complex": K.name, **extra, "checks": checks, "pass": all(c["pass"] for c in checks)}


def _random_rational(rng: random.Random, denom: int = 97) -> Rational:
    return Rational(rng.randint(0, denom), denom)


def verify_lift(K: SimplicialComplex, sample_count: int = 1000, seed: int = 0, grid: int = 21,
                grid_params: int = 4, strom: StromStructure | None = None) -> dict:
    """Check the lifting laws on a (s, t) grid plus random (w, s, t) samples."""
    strom = strom or StromStructure(K)
    rng = random.Random(f"lift:{seed}")
    params = [p for p in sample_product_points(K, 4 * (sample_count + grid_params), seed) if strom.u(p) < 1]
    params += diagonal_vertex_points(K)
    phi, H = strom_lift_fixture(strom)
    L = lift_homotopy(phi, H, check_at=params[:50])
    names = ["initial_path", "endpoints", "fibrewise", "seam_agreement"]
    witness: dict = {}

    def fail(name, **info):
        witness.setdefault(name, {k: _show(v) for k, v in info.items()})

    def check(w, s, t):
        val = L(w, s, t)
        base = H(w, s)
        if s == 0 and val != phi(w, t):
            fail("initial_path", w=w, t=t)
        if val.second != w.second:
            fail("fibrewise", w=w, s=s, t=t)
        if t == 0 and val != base[0] or t == 1 and val != base[1]:
            fail("endpoints", w=w, s=s, t=t)

    def seams(w, s):
        for name, left, row, right in lift_seams(phi, H, w, s):
            if not left == row == right:
                fail("seam_agreement", w=w, s=s, seam=name)

    grid_ws = params[-grid_params:]
    for w in grid_ws:
        for s in _grid(grid):
            seams(w, s)
            for t in _grid(grid):
                check(w, s, t)
    points = 0
    for i in range(sample_count):
        w = params[i % len(params)]
        s, t = _random_rational(rng), _random_rational(rng)
        check(w, s, t)
        check(w, s, Rational(0))
        check(w, s, Rational(1))
        check(w, Rational(0), t)
        seams(w, s)
        points += 1
    return _report(K, names, witness, {"grid": f"{grid}x{grid}", "grid_parameters": len(grid_ws),
                                       "random_samples": points, "seed": seed})


def verify_extend(K: SimplicialComplex, sample_count: int = 1000, seed: int = 0, grid: int = 21,
                  grid_params: int = 4, strom: StromStructure | None = None) -> dict:
    """Check the extension laws on a (s, t) grid plus random (z, t, s) samples."""
    strom = strom or StromStructure(K)
    rng = random.Random(f"extend:{seed}")
    zs = sample_product_points(K, sample_count, seed) + diagonal_vertex_points(K)
    phi, H = strom_extend_fixture(strom)

    def is_base(z):
        return z.on_diagonal

    E = extend_homotopy(phi, H, is_base, check_at=zs[:50], check_times=_grid(5))
    names = ["initial_map", "first_end", "second_end", "section_stationary", "seam_agreement"]
    witness: dict = {}

    def fail(name, **info):
        witness.setdefault(name, {k: _show(v) for k, v in info.items()})

    def check(z, t, s):
        val = E(z, t, s)
        if s == 0 and val != phi(z, t):
            fail("initial_map", z=z, t=t)
        if t == 0 and val != H(0, z, s):
            fail("first_end", z=z, s=s)
        if t == 1 and val != H(1, z, s):
            fail("second_end", z=z, s=s)
        if is_base(z) and val != z:
            fail("section_stationary", z=z, t=t, s=s)

    def seams(z, s):
        for name, left, row, right in extend_seams(phi, H, z, s):
            if not left == row == right:
                fail("seam_agreement", z=z, s=s, seam=name)

    grid_zs = zs[:grid_params - 1] + zs[-1:]
    for z in grid_zs:
        for s in _grid(grid):
            seams(z, s)
            for t in _grid(grid):
                check(z, t, s)
    for i in range(sample_count):
        z = zs[i]
        t, s = _random_rational(rng), _random_rational(rng)
        check(z, t, s)
        check(z, Rational(0), s)
        check(z, Rational(1), s)
        check(z, t, Rational(0))
        seams(z, s)
    return _report(K, names, witness, {"grid": f"{grid}x{grid}", "grid_parameters": len(grid_zs),
                                       "random_samples": sample_count, "seed": seed})


__all__ = [
    "NotALiftError", "NotAnExtensionError", "UndefinedBranchError", "extend_branches",
    "extend_homotopy", "extend_seams", "lift_branches", "lift_homotopy", "lift_seams",
    "strom_extend_fixture", "strom_lift_fixture", "verify_extend", "verify_lift",
]
