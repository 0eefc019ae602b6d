import random

import pytest
from hypothesis import given, settings, strategies as st

from fibrewise_tc.chain_algebra import (
    Cochain, DegreeError, NotACocycleError, betti_numbers, boundary_matrix, coboundary,
    cochain_from_simplices, cohomology_basis, cup_product, integer_homology, unit_cochain,
)
from fibrewise_tc.fixtures import BUILTINS, STANDARD, circle, sphere
from fibrewise_tc.linalg import GF, QQ, ZZ

import oracles

FIELDS = {"q": (QQ, 0), "f2": (GF(2), 2), "f3": (GF(3), 3)}


def facets_of(K):
    return [list(f) for f in K.facets()]


def test_circle_boundary_columns():
    D = boundary_matrix(circle(3), 1)
    for col in D.columns:
        assert sorted(col.values()) == [-1, 1]


def test_boundary_squares_to_zero_on_tetrahedron_boundary():
    K = sphere(2)
    assert (boundary_matrix(K, 1) @ boundary_matrix(K, 2)).is_zero()


@pytest.mark.parametrize("name", STANDARD)
def test_boundary_squares_to_zero(name):
    K = BUILTINS[name]()
    for k in range(2, K.dimension + 1):
        assert (boundary_matrix(K, k - 1) @ boundary_matrix(K, k)).is_zero()


def test_boundary_degree_out_of_range():
    with pytest.raises(DegreeError):
        boundary_matrix(circle(3), 2)
    with pytest.raises(DegreeError):
        boundary_matrix(circle(3), 0)


def test_boundary_rank_on_triangle_circle():
    assert oracles.rank(boundary_matrix(circle(3), 1).dense()) == 2


@pytest.mark.parametrize("name", STANDARD)
@pytest.mark.parametrize("field", sorted(FIELDS))
def test_betti_numbers_match_dense_oracle(name, field):
    R, p = FIELDS[field]
    K = BUILTINS[name]()
    assert betti_numbers(K, R) == oracles.betti(facets_of(K), p)


@pytest.mark.parametrize("name", STANDARD)
def test_integer_homology_matches_sympy_snf(name):
    K = BUILTINS[name]()
    assert integer_homology(K) == oracles.integer_homology(facets_of(K))


def test_integer_coefficients_rejected_for_betti():
    with pytest.raises(ValueError):
        betti_numbers(circle(3), ZZ)


@pytest.mark.parametrize("name", STANDARD)
@pytest.mark.parametrize("field", sorted(FIELDS))
def test_cohomology_basis_size_is_betti(name, field):
    R, p = FIELDS[field]
    K = BUILTINS[name]()
    assert cohomology_basis(K, R).betti == oracles.Cohomology(facets_of(K), p).betti()


def test_coboundaries_reduce_to_zero():
    K = BUILTINS["t2"]()
    B = cohomology_basis(K, QQ)
    rng = random.Random(1)
    for _ in range(10):
        c = Cochain(0, {i: rng.randint(-3, 3) for i in range(K.count(0))})
        assert B.is_coboundary(coboundary(K, c, QQ))


def test_reduce_rejects_non_cocycles():
    K = BUILTINS["t2"]()
    B = cohomology_basis(K, QQ)
    with pytest.raises(NotACocycleError):
        B.reduce(Cochain(1, {0: QQ(1)}))


def test_representatives_reduce_to_unit_vectors():
    K = BUILTINS["t2"]()
    B = cohomology_basis(K, QQ)
    for k, reps in enumerate(B.reps):
        for i, r in enumerate(reps):
            assert B.reduce(r) == [int(i == j) for j in range(len(reps))]


def test_cup_rejects_non_cocycle():
    K = BUILTINS["t2"]()
    bad = Cochain(1, {0: QQ(1)})
    with pytest.raises(NotACocycleError):
        cup_product(K, QQ, bad, unit_cochain(K, QQ))


def test_cup_formula_on_a_triangle():
    K = sphere(2)
    a = cochain_from_simplices(K, 1, {(0, 1): 2})
    b = cochain_from_simplices(K, 1, {(1, 2): 3})
    prod = cup_product(K, QQ, a, b, check=False)
    assert prod.values == {K.index_of((0, 1, 2)): 6}


@pytest.mark.parametrize("name", STANDARD)
def test_unit_law_in_cohomology(name):
    K = BUILTINS[name]()
    B = cohomology_basis(K, QQ)
    one = unit_cochain(K, QQ)
    for reps in B.reps:
        for r in reps:
            assert B.reduce(cup_product(K, QQ, r, one)) == B.reduce(r)
            assert B.reduce(cup_product(K, QQ, one, r)) == B.reduce(r)


def test_torus_products_against_oracle():
    K = BUILTINS["t2"]()
    B = cohomology_basis(K, QQ)
    H = oracles.Cohomology(facets_of(K))
    a, b = B.reps[1]
    ab = cup_product(K, QQ, a, b)
    assert B.reduce(ab) != [0]
    assert B.is_coboundary(cup_product(K, QQ, a, a))
    # the oracle agrees that a.b is a nonzero class and a.a is zero
    as_dict = lambda c: {K.simplices(c.degree)[i]: v for i, v in c.values.items()}
    assert not H.is_zero_class(2, as_dict(ab))
    assert H.is_zero_class(2, as_dict(cup_product(K, QQ, a, a)))


@pytest.mark.parametrize("name", STANDARD)
@pytest.mark.parametrize("field", sorted(FIELDS))
def test_graded_commutativity_in_cohomology(name, field):
    R, _ = FIELDS[field]
    K = BUILTINS[name]()
    B = cohomology_basis(K, R)
    reps = [r for lst in B.reps for r in lst]
    for x in reps:
        for y in reps:
            if x.degree + y.degree > K.dimension:
                continue
            sign = -1 if x.degree * y.degree % 2 else 1
            diff = cup_product(K, R, x, y) - sign * cup_product(K, R, y, x)
            diff = Cochain(diff.degree, {k: R(v) for k, v in diff.values.items() if R(v)})
            assert B.is_coboundary(diff)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from(["s2", "t2", "rp2"]))
def test_leibniz_rule_on_random_cochains(seed, name):
    K = BUILTINS[name]()
    rng = random.Random(seed)
    p = rng.choice([0, 1])
    q = rng.choice([0, 1]) if p + 1 < K.dimension else 0
    a = Cochain(p, {i: QQ(rng.randint(-2, 2)) for i in range(K.count(p))})
    b = Cochain(q, {i: QQ(rng.randint(-2, 2)) for i in range(K.count(q))})
    lhs = coboundary(K, cup_product(K, QQ, a, b, check=False), QQ)
    rhs = cup_product(K, QQ, coboundary(K, a, QQ), b, check=False) + \
        (-1) ** p * cup_product(K, QQ, a, coboundary(K, b, QQ), check=False)
    assert lhs.values == rhs.values
