import pytest
from gmpy2 import mpq

from fibrewise_tc.complex_core import sample_product_points
from fibrewise_tc.fibrewise_paths import (
    NotALiftError, NotAnExtensionError, UndefinedBranchError, extend_homotopy, extend_seams,
    lift_homotopy, lift_seams, strom_extend_fixture, strom_lift_fixture, verify_extend, verify_lift,
)
from fibrewise_tc.fixtures import BUILTINS, STANDARD
from fibrewise_tc.strom_milnor import StromStructure

S = StromStructure(BUILTINS["t2"]())
W = [p for p in sample_product_points(S.complex, 200, 1) if S.u(p) < 1 and not p.on_diagonal][:10]
TIMES = [mpq(k, 12) for k in range(13)]


def _lift():
    phi, H = strom_lift_fixture(S)
    return phi, H, lift_homotopy(phi, H, check_at=W)


def test_lift_at_s_zero_is_phi():
    phi, H, L = _lift()
    for w in W:
        assert all(L(w, 0, t) == phi(w, t) for t in TIMES)


def test_lift_endpoints_follow_H():
    phi, H, L = _lift()
    for w in W:
        for s in TIMES:
            assert (L(w, s, 0), L(w, s, 1)) == H(w, s)


def test_lift_thirds_at_s_one():
    phi, H, L = _lift()
    w = W[0]
    assert L(w, 1, mpq(1, 6)) == H(w, mpq(1, 2))[0]
    assert L(w, 1, mpq(1, 2)) == phi(w, mpq(1, 2))
    assert L(w, 1, mpq(5, 6)) == H(w, mpq(1, 2))[1]


def test_constant_homotopy_keeps_endpoints():
    phi = lambda w, t: S.h(w, t)
    H = lambda w, s: (phi(w, 0), phi(w, 1))
    L = lift_homotopy(phi, H, check_at=W)
    for w in W:
        for s in TIMES:
            assert L(w, s, 0) == w and L(w, s, 1) == S.retract(w)


def test_lift_precondition():
    phi, H = strom_lift_fixture(S)
    shifted = lambda w, s: H(w, s / 2 + mpq(1, 2))
    with pytest.raises(NotALiftError):
        lift_homotopy(phi, shifted, check_at=W)


def test_last_row_keyed_at_zero_leaves_t_one_undefined():
    phi, H = strom_lift_fixture(S)
    L = lift_homotopy(phi, H, last_row_at_one=False)
    assert L(W[0], 0, 1) == phi(W[0], 1)
    with pytest.raises(UndefinedBranchError):
        L(W[0], mpq(1, 2), 1)


def test_lift_seams_agree():
    phi, H = strom_lift_fixture(S)
    for w in W:
        for s in TIMES:
            for _, left, row, right in lift_seams(phi, H, w, s):
                assert left == row == right


def _extend():
    phi, H = strom_extend_fixture(S)
    Z = sample_product_points(S.complex, 40, 2)
    return phi, H, Z, extend_homotopy(phi, H, lambda z: z.on_diagonal, check_at=Z, check_times=TIMES)


def test_extend_at_s_zero_is_phi():
    phi, H, Z, E = _extend()
    for z in Z:
        assert all(E(z, t, 0) == phi(z, t) for t in TIMES)


def test_extend_matches_end_homotopies():
    phi, H, Z, E = _extend()
    for z in Z:
        for s in TIMES:
            assert E(z, 0, s) == H(0, z, s)
            assert E(z, 1, s) == H(1, z, s)


def test_extend_fixes_section_points():
    phi, H, Z, E = _extend()
    for z in Z:
        if z.on_diagonal:
            assert all(E(z, t, s) == z for t in TIMES for s in TIMES)


def test_extend_seams_agree():
    phi, H, Z, _ = _extend()
    for z in Z:
        for s in TIMES:
            for _, left, row, right in extend_seams(phi, H, z, s):
                assert left == row == right


def test_extend_preconditions():
    phi, H = strom_extend_fixture(S)
    Z = sample_product_points(S.complex, 40, 2)
    moved = [z for z in Z if not z.on_diagonal and S.u(z) < 1]
    with pytest.raises(NotAnExtensionError):
        extend_homotopy(phi, lambda end, z, s: H(1 - end, z, s), check_at=moved)
    with pytest.raises(NotAnExtensionError):
        extend_homotopy(phi, lambda end, z, s: z if s == 0 else H(end, z, s), check_at=moved)


def test_extend_rejects_moving_section_points():
    phi, H = strom_extend_fixture(S)
    off = W[0]

    def drifting(end, z, s):
        return off if z.on_diagonal and s > 0 else H(end, z, s)

    diag = [z for z in sample_product_points(S.complex, 40, 2) if z.on_diagonal]
    with pytest.raises(NotAnExtensionError):
        extend_homotopy(phi, drifting, lambda z: z.on_diagonal, check_at=diag, check_times=TIMES)


@pytest.mark.parametrize("name", STANDARD)
def test_verifiers_pass(name):
    K = BUILTINS[name]()
    a = verify_lift(K, 200, 0, grid=11)
    b = verify_extend(K, 200, 0, grid=11)
    assert a["pass"] and b["pass"]


def test_verifier_catches_wrong_middle_reparametrisation(monkeypatch):
    import fibrewise_tc.fibrewise_paths as fp

    original = fp.lift_branches

    def skewed(phi, H):
        br = original(phi, H)
        br["middle"] = lambda w, s, t: phi(w, t)
        return br

    monkeypatch.setattr(fp, "lift_branches", skewed)
    rep = fp.verify_lift(BUILTINS["s2"](), 200, 0, grid=11)
    assert not rep["pass"]
