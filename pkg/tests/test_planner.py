import random

import pytest
from gmpy2 import mpq

from fibrewise_tc.complex_core import (
    OpenSet, ProductPoint, diagonal_vertex_points, sample_product_points,
)
from fibrewise_tc.fixtures import BUILTINS, circle
from fibrewise_tc.linalg import QQ
from fibrewise_tc.planner import (
    CircleGeometry, CompressionInvalidError, FibrewiseHomotopy, FixtureError, InapplicableError,
    PLPath, PathError, Section, SectionInvalidError, circle_cover, circle_planner,
    compression_to_section, cover_plus_one, drop_set, is_monoidal_section, is_stationary_on_diagonal,
    loop_section, obstructed_cover, planner_from_description, point_planner, pointed_upgrade,
    product_arc_cover, section_to_compression, strom_compression, strom_section, validate_cover,
    validate_planner,
)
from fibrewise_tc.ring_invariants import zero_divisor_cup_length
from fibrewise_tc.strom_milnor import StromStructure

HALF, THIRD = mpq(1, 2), mpq(1, 3)


def test_pl_path_validation():
    K = circle(4)
    a, b, c = (K.vertex_point(i) for i in (0, 1, 2))
    with pytest.raises(PathError):
        PLPath((0, 1), (a, c))  # no common simplex
    with pytest.raises(PathError):
        PLPath((0, HALF, HALF, 1), (a, a, b, b))
    with pytest.raises(PathError):
        PLPath((mpq(1, 4), 1), (a, b))
    path = PLPath((0, HALF, 1), (a, b, c))
    assert path(mpq(1, 4)) == K.point({0: HALF, 1: HALF})
    assert path(1) == c
    with pytest.raises(PathError):
        path(2)


def test_circle_geometry_round_trips_angles():
    geo = CircleGeometry(circle(5))
    for k in range(50):
        th = mpq(k, 10)
        assert geo.angle(geo.point_at(th)) == th % 5


def test_circle_geometry_rejects_other_complexes():
    with pytest.raises(FixtureError):
        CircleGeometry(BUILTINS["s2"]())


def test_constant_section_gives_stationary_homotopy():
    K = circle(3)
    sec = Section(OpenSet(lambda p: p.on_diagonal), lambda p: PLPath.constant(p.first))
    H = section_to_compression(sec)
    d = ProductPoint(K.vertex_point(1), K.vertex_point(1))
    assert all(H(d, t) == d for t in (0, THIRD, 1))


def test_strom_section_slides_first_coordinate():
    K = circle(12)
    S = StromStructure(K)
    a = K.point({0: mpq(3, 4), 1: mpq(1, 4)})
    b = K.point({0: mpq(1, 2), 1: mpq(1, 2)})
    p = ProductPoint(a, b)
    H = section_to_compression(strom_section(S), [p])
    assert H(p, 0) == p
    assert H(p, HALF) == ProductPoint(S.mu(p), b)
    assert H(p, 1) == ProductPoint(b, b)


def test_invalid_section_raises():
    K = circle(6)
    wrong = Section(OpenSet(lambda p: True), lambda p: PLPath.constant(p.first))
    pts = sample_product_points(K, 20, 0)
    with pytest.raises(SectionInvalidError):
        section_to_compression(wrong, pts)


def test_invalid_compression_raises():
    K = circle(6)
    idle = FibrewiseHomotopy(OpenSet(lambda p: True), lambda p, t: p)
    with pytest.raises(CompressionInvalidError):
        compression_to_section(idle, sample_product_points(K, 20, 0))


def test_stationary_diagonal_homotopy_gives_constant_section():
    K = circle(6)
    H = FibrewiseHomotopy(OpenSet(lambda p: p.on_diagonal), lambda p, t: p)
    s = compression_to_section(H, diagonal_vertex_points(K))
    d = diagonal_vertex_points(K)[2]
    assert all(s(d)(t) == d.first for t in (0, HALF, 1))


def _round_trip_failures(section, points, rng):
    H = section_to_compression(section, points)
    back = compression_to_section(H, points)
    again = section_to_compression(back)
    bad = 0
    for p in points:
        if p not in section.domain:
            continue
        t = mpq(rng.randint(0, 60), 60)
        bad += back(p)(t) != section(p)(t)
        bad += again(p, t) != H(p, t)
    return bad


@pytest.mark.parametrize("n", [3, 7, 12])
def test_round_trip_on_circle_planner(n):
    P = circle_planner(n)
    pts = sample_product_points(P.complex, 200, n)
    for s in P.sections:
        assert _round_trip_failures(s, pts, random.Random(n)) == 0


def test_round_trip_on_strom_sections():
    for name in ("s2", "t2"):
        S = StromStructure(BUILTINS[name]())
        pts = sample_product_points(S.complex, 200, 1)
        assert _round_trip_failures(strom_section(S), pts, random.Random(2)) == 0


def test_monoidal_flag_matches_stationary_compression():
    K = circle(8)
    S = StromStructure(K)
    diag = [p for p in sample_product_points(K, 400, 5) if p.on_diagonal] + diagonal_vertex_points(K)
    sections = [strom_section(S), loop_section(K), circle_planner(8).sections[1]]
    verdicts = []
    for s in sections:
        H = section_to_compression(s)
        verdicts.append((is_monoidal_section(s, diag), is_stationary_on_diagonal(H, diag)))
    assert verdicts[0] == (True, True)
    assert verdicts[1] == (False, False)
    assert all(a == b for a, b in verdicts)


def test_strom_h_gives_monoidal_section():
    S = StromStructure(BUILTINS["t2"]())
    s = compression_to_section(strom_compression(S), sample_product_points(S.complex, 100, 0))
    assert is_monoidal_section(s, diagonal_vertex_points(S.complex))


@pytest.mark.parametrize("n", range(3, 25))
def test_circle_planner_valid(n):
    P = circle_planner(n)
    rep = validate_planner(P.complex, P, 300, seed=n)
    assert rep["pass"] and rep["size"] == 2
    assert rep["zcl_bound"]["zcl"] + 1 == 2 == zero_divisor_cup_length(P.complex, QQ) + 1


def test_circle_planner_paths():
    P = circle_planner(12)
    K = P.complex
    d = ProductPoint(K.vertex_point(3), K.vertex_point(3))
    assert d in P.sections[0].domain and d not in P.sections[1].domain
    assert all(P.sections[0](d)(t) == d.first for t in (0, HALF, 1))
    a, b = K.vertex_point(0), K.vertex_point(6)
    path = P.sections[1](ProductPoint(a, b))
    assert path(0) == a and path(1) == b
    assert path(HALF) == K.vertex_point(3)  # counter-clockwise, not via vertex 9


def test_circle_planner_needs_three_vertices():
    with pytest.raises(FixtureError):
        circle_planner(2)


def test_dropped_set_loses_coverage():
    P = circle_planner(12)
    rep = validate_planner(P.complex, drop_set(P, 1), 300, 0)
    failed = [c for c in rep["checks"] if not c["pass"]]
    assert [c["name"] for c in failed] == ["coverage"] and "witness" in failed[0]


def test_point_planner():
    P = point_planner()
    rep = validate_planner(P.complex, P, 50, 0)
    assert rep["pass"] and rep["size"] == 1 and rep["monoidal"]


def test_planner_description(tmp_path):
    desc = {"complex": "s1:10", "monoidal": False,
            "sets": [{"kind": "u_sublevel", "params": {"bound": 1}},
                     {"kind": "predicate_tag", "params": {"tag": "off_diagonal_ccw"}}]}
    P = planner_from_description(desc)
    assert validate_planner(P.complex, P, 200, 0)["pass"]
    with pytest.raises(FixtureError):
        planner_from_description({"complex": "s1", "sets": [{"kind": "nope"}]})


def test_monoidal_claim_checked():
    K = circle(6)
    P = planner_from_description({"complex": "s1:6", "monoidal": True,
                                  "sets": [{"kind": "predicate_tag", "params": {"tag": "full_turn_loop"}}]})
    rep = validate_planner(K, P, 100, 0)
    assert not rep["pass"]
    assert {c["name"] for c in rep["checks"] if not c["pass"]} == {"constant_on_diagonal"}


# ------------------------------------------------------------- covers


def test_cover_plus_one_on_circle():
    strom, cover = circle_cover(12)
    K = strom.complex
    assert validate_cover(K, cover, 600, 0, pointed=False)["pass"]
    assert not validate_cover(K, cover, 600, 0, pointed=True)["pass"]
    out = cover_plus_one(cover, strom)
    rep = validate_cover(K, out, 600, 0)
    assert rep["pass"] and rep["size"] == len(cover) + 1


def test_cover_plus_one_band_structure():
    strom, cover = circle_cover(9)
    out = cover_plus_one(cover, strom)
    pts = sample_product_points(strom.complex, 600, 3)
    for p in pts:
        if p.on_diagonal:
            assert all(p in V.domain for V in out)
        u = strom.u(p)
        for H, V in zip(cover, out):
            # U_i minus the closed half band never meets u < 1/3
            assert not (u < THIRD and u > HALF)
            if p in V.domain and u >= THIRD:
                assert p in H.domain and u > HALF


def test_cover_plus_one_band_mutant_misses_points():
    strom, cover = circle_cover(12)
    out = cover_plus_one(cover, strom, bands=(HALF, THIRD, THIRD))
    rep = validate_cover(strom.complex, out, 600, 0)
    failed = [c for c in rep["checks"] if not c["pass"]]
    assert [c["name"] for c in failed] == ["coverage"] and failed[0]["witness"]


def test_case_one_upgrade():
    strom, cover = circle_cover(12)
    out = pointed_upgrade(cover, strom, 1)
    assert len(out) == len(cover)
    assert validate_cover(strom.complex, out, 600, 1)["pass"]


def test_case_two_upgrade():
    strom, cover = product_arc_cover(12)
    K = strom.complex
    assert validate_cover(K, cover, 600, 0, pointed=False)["pass"]
    # the first set's own homotopy moves diagonal points
    d = ProductPoint(K.vertex_point(1), K.vertex_point(1))
    assert d in cover[0].domain and cover[0](d, HALF) != d
    out = pointed_upgrade(cover, strom, 2)
    assert len(out) == 3
    assert validate_cover(K, out, 600, 1)["pass"]


def test_case_two_exercises_every_branch():
    strom, cover = product_arc_cover(12)
    out = pointed_upgrade(cover, strom, 2)
    seen = set()
    for p in sample_product_points(strom.complex, 2000, 4):
        if p in out[0].domain:
            u = strom.u(p)
            seen.add("diagonal" if p.on_diagonal else "low" if u < mpq(2, 3) else "band" if u < 1 else "outside")
    assert seen == {"diagonal", "low", "band", "outside"}


def test_case_two_branch_seams():
    strom, cover = product_arc_cover(12)
    H0 = cover[0]
    out = pointed_upgrade(cover, strom, 2)[0]
    for p in sample_product_points(strom.complex, 1500, 8):
        if p not in out.domain or p.on_diagonal:
            continue
        base = ProductPoint(p.second, p.second)
        u = strom.u(p)
        assert strom.h(p, 1) == strom.retract(p)
        if u >= mpq(2, 3):
            assert out(p, THIRD) == strom.retract(p)
            if u < 1:
                assert H0(base, 3 * u - 2) == out(p, u - THIRD) == out(p, mpq(5, 3) - u)
            else:
                assert H0(strom.retract(p), 1) == H0(base, 1) == out(p, mpq(2, 3))


def test_upgrade_inapplicable():
    strom, cover = obstructed_cover(12)
    assert validate_cover(strom.complex, cover, 600, 0, pointed=False)["pass"]
    for case in (1, 2):
        with pytest.raises(InapplicableError):
            pointed_upgrade(cover, strom, case)


def test_upgrade_case_must_be_one_or_two():
    strom, cover = circle_cover(6)
    with pytest.raises(ValueError):
        pointed_upgrade(cover, strom, 3)
