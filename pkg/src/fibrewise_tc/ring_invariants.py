"""Cohomology rings, cup length and zero-divisor cup length.

Two independent routes to the zero-divisor cup length are provided:

* ``zero_divisor_cup_length`` works in the algebraic Kunneth model
  H*(K) (x) H*(K) with Koszul signs, where the diagonal pull-back is the
  multiplication map a (x) b -> ab;
* ``zcl_via_product_complex`` triangulates K x K, computes its cohomology
  ring directly, and takes the kernel of the simplicial diagonal pull-back.

They must agree for every complex and field.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .chain_algebra import Cochain, CohomologyBasis, cohomology_basis, cup_product, unit_cochain
from .complex_core import SimplicialComplex, diagonal_map, product_complex
from .linalg import Coefficients, Echelon, QQ, GF, axpy, column_reduce


class GradedRing:
    """Finite-dimensional graded-commutative algebra given by structure constants.

    Elements are sparse dicts ``{basis index: coefficient}``.
    ``table[(i, j)]`` is the product of basis elements ``i`` and ``j``.
    """

    def __init__(self, field: Coefficients, degrees, table: dict, unit: dict, labels=None):
        self.field = field
        self.degrees = tuple(degrees)
        self.table = table
        self.unit = unit
        self.labels = tuple(labels) if labels is not None else tuple(f"e{i}" for i in range(len(self.degrees)))
        self.factor: GradedRing | None = None

    @property
    def dimension(self) -> int:
        return len(self.degrees)

    @property
    def top_degree(self) -> int:
        return max(self.degrees, default=0)

    def basis_in_degree(self, d: int) -> list[int]:
        return [i for i, di in enumerate(self.degrees) if di == d]

    def basis_product(self, i: int, j: int) -> dict:
        return self.table.get((i, j), {})

    def mul(self, x: dict, y: dict) -> dict:
        F = self.field
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                prod = self.basis_product(i, j)
                if prod:
                    axpy(out, F(a * b), prod, F)
        return out

    def element(self, **coeffs) -> dict:
        idx = {lab: i for i, lab in enumerate(self.labels)}
        return {idx[k]: self.field(v) for k, v in coeffs.items() if self.field(v)}

    def degree_of(self, x: dict) -> int | None:
        ds = {self.degrees[i] for i in x}
        if len(ds) > 1:
            return None
        return ds.pop() if ds else None

    def positive_basis(self) -> list[dict]:
        return [{i: self.field(1)} for i, d in enumerate(self.degrees) if d > 0]

    def check_axioms(self) -> list[str]:
        """Return a list of violated ring axioms on basis elements (empty when fine)."""
        F = self.field
        bad = []
        n = self.dimension
        basis = [{i: F(1)} for i in range(n)]
        for i in range(n):
            if self.mul(self.unit, basis[i]) != basis[i] or self.mul(basis[i], self.unit) != basis[i]:
                bad.append(f"unit law fails on {self.labels[i]}")
        for i in range(n):
            for j in range(n):
                p = self.basis_product(i, j)
                if p and self.degree_of(p) != self.degrees[i] + self.degrees[j]:
                    bad.append(f"grading fails on {self.labels[i]}*{self.labels[j]}")
                sign = -1 if (self.degrees[i] * self.degrees[j]) % 2 else 1
                q = {k: F(sign * v) for k, v in self.basis_product(j, i).items() if F(sign * v)}
                if p != q:
                    bad.append(f"graded commutativity fails on {self.labels[i]},{self.labels[j]}")
                for k in range(n):
                    left = self.mul(self.mul(basis[i], basis[j]), basis[k])
                    right = self.mul(basis[i], self.mul(basis[j], basis[k]))
                    if left != right:
                        bad.append(f"associativity fails on {i},{j},{k}")
        return bad


def span_basis(vectors, F: Coefficients) -> list[dict]:
    ech, _ = column_reduce(vectors, F)
    return ech.basis()


def power_chain(ring: GradedRing, generators: list[dict]) -> list[list[dict]]:
    """Bases of J, J^2, J^3, ... for the two-sided ideal J spanned by ``generators``.

    J^{m+1} is the span of products x*y with x running over a basis of J and y
    over a basis of J^m; bilinearity makes this the whole power. The chain
    stops at the first zero power.
    """
    F = ring.field
    first = span_basis(generators, F)
    chain = []
    current = first
    while current:
        chain.append(current)
        if len(chain) > ring.top_degree + 1:
            break  # powers of a positive-degree ideal vanish past the top degree
        current = span_basis([ring.mul(x, y) for x in first for y in current], F)
    return chain


def cup_length(ring: GradedRing) -> int:
    """Largest m with (H^+)^m != 0."""
    return len(power_chain(ring, ring.positive_basis()))


def cohomology_ring(K: SimplicialComplex, R: Coefficients = QQ) -> GradedRing:
    return _cohomology_ring(K, R)


@lru_cache(maxsize=32)
def _cohomology_ring(K: SimplicialComplex, R: Coefficients) -> GradedRing:
    B = cohomology_basis(K, R)
    return _ring_from_basis(B)


def _ring_from_basis(B: CohomologyBasis) -> GradedRing:
    K, R = B.complex, B.field
    reps: list[Cochain] = [c for lst in B.reps for c in lst]
    degrees = [c.degree for c in reps]
    offsets = {}
    pos = 0
    for k, lst in enumerate(B.reps):
        offsets[k] = pos
        pos += len(lst)
    labels = []
    for k, lst in enumerate(B.reps):
        labels += [f"h{k}_{i}" for i in range(len(lst))]

    def coords(c: Cochain) -> dict:
        if c.degree > K.dimension:
            return {}
        vec = B.reduce(c)
        off = offsets[c.degree]
        return {off + i: v for i, v in enumerate(vec) if v}

    table = {}
    for i, a in enumerate(reps):
        for j, b in enumerate(reps):
            if a.degree + b.degree > K.dimension:
                continue
            prod = coords(cup_product(K, R, a, b, check=False))
            if prod:
                table[(i, j)] = prod
    unit = coords(unit_cochain(K, R))
    return GradedRing(R, degrees, table, unit, labels)


# ------------------------------------------------------------- tensor square


def tensor_square(ring: GradedRing, koszul: bool = True) -> GradedRing:
    """H (x) H with (a(x)b)(c(x)d) = (-1)^{|b||c|} ac (x) bd.

    ``koszul=False`` drops the sign; it exists only as a mutant for the
    verification suite.
    """
    F = ring.field
    n = ring.dimension
    degrees = [ring.degrees[i] + ring.degrees[j] for i in range(n) for j in range(n)]
    labels = [f"{ring.labels[i]}|{ring.labels[j]}" for i in range(n) for j in range(n)]
    table = {}
    for a in range(n):
        for b in range(n):
            for c in range(n):
                ac = ring.basis_product(a, c)
                if not ac:
                    continue
                sign = -1 if koszul and (ring.degrees[b] * ring.degrees[c]) % 2 else 1
                for d in range(n):
                    bd = ring.basis_product(b, d)
                    if not bd:
                        continue
                    out = {}
                    for k, x in ac.items():
                        for l, y in bd.items():
                            v = F(sign * x * y)
                            if v:
                                out[k * n + l] = v
                    if out:
                        table[(a * n + b, c * n + d)] = out
    unit = {}
    for i, x in ring.unit.items():
        for j, y in ring.unit.items():
            v = F(x * y)
            if v:
                unit[i * n + j] = v
    sq = GradedRing(F, degrees, table, unit, labels)
    sq.factor = ring
    return sq


def pure_tensor(sq: GradedRing, x: dict, y: dict) -> dict:
    """x (x) y inside a ring built by :func:`tensor_square`."""
    n = sq.factor.dimension
    F = sq.field
    out = {}
    for i, a in x.items():
        for j, b in y.items():
            v = F(a * b)
            if v:
                out[i * n + j] = v
    return out


@dataclass
class Ideal:
    ring: GradedRing
    basis_by_degree: dict = field(default_factory=dict)

    def basis(self) -> list[dict]:
        return [v for d in sorted(self.basis_by_degree) for v in self.basis_by_degree[d]]

    @property
    def dimension(self) -> int:
        return sum(len(v) for v in self.basis_by_degree.values())

    def contains(self, x: dict) -> bool:
        ech = Echelon(self.ring.field)
        for v in self.basis():
            ech.add(v)
        return ech.contains(x)

    def is_ideal(self) -> bool:
        R = self.ring
        for v in self.basis():
            for i in range(R.dimension):
                e = {i: R.field(1)}
                if not self.contains(R.mul(e, v)) or not self.contains(R.mul(v, e)):
                    return False
        return True


def kernel_ideal(ring: GradedRing, images: list[dict]) -> Ideal:
    """Kernel of a degree-preserving linear map given on basis elements."""
    F = ring.field
    ideal = Ideal(ring)
    for d in sorted(set(ring.degrees)):
        idx = ring.basis_in_degree(d)
        _, ker = column_reduce([images[i] for i in idx], F, track=True)
        vecs = [{idx[j]: c for j, c in combo.items()} for combo in ker]
        if vecs:
            ideal.basis_by_degree[d] = vecs
    return ideal


def zero_divisor_ideal(sq: GradedRing) -> Ideal:
    """Kernel of multiplication a (x) b -> ab on a ring built by :func:`tensor_square`."""
    base = sq.factor
    n = base.dimension
    images = [base.basis_product(i // n, i % n) for i in range(sq.dimension)]
    return kernel_ideal(sq, images)


def zero_divisor_cup_length(K: SimplicialComplex | GradedRing, R: Coefficients = QQ,
                            koszul: bool = True) -> int:
    ring = K if isinstance(K, GradedRing) else cohomology_ring(K, R)
    sq = tensor_square(ring, koszul=koszul)
    return len(power_chain(sq, zero_divisor_ideal(sq).basis()))


# ------------------------------------------------------ product-complex route


@dataclass
class ProductComplexData:
    product: SimplicialComplex
    ring: GradedRing
    restriction: list  # basis index of H*(KxK) -> coordinates in H*(K)
    ideal: Ideal


def diagonal_pullback_data(K: SimplicialComplex, R: Coefficients = QQ) -> ProductComplexData:
    P = product_complex(K, K)
    diag = diagonal_map(K, P)
    BP = cohomology_basis(P, R)
    BK = cohomology_basis(K, R)
    ringP = _ring_from_basis(BP)
    offsets = []
    pos = 0
    for lst in BK.reps:
        offsets.append(pos)
        pos += len(lst)
    images = []
    for lst in BP.reps:
        for rep in lst:
            k = rep.degree
            if k > K.dimension:
                images.append({})
                continue
            vals = {}
            for j, s in enumerate(K.simplices(k)):
                v = rep.values.get(P.index_of(diag(s)))
                if v:
                    vals[j] = v
            coords = BK.reduce(Cochain(k, vals))
            images.append({offsets[k] + i: v for i, v in enumerate(coords) if v})
    return ProductComplexData(P, ringP, images, kernel_ideal(ringP, images))


def zcl_via_product_complex(K: SimplicialComplex, R: Coefficients = QQ) -> int:
    """Cup length of ker(diagonal^*) computed inside H*(K x K) of the triangulated product."""
    data = diagonal_pullback_data(K, R)
    return len(power_chain(data.ring, data.ideal.basis()))


# ---------------------------------------------------------------- reporting


DEFAULT_FIELDS = (QQ, GF(2), GF(3))


def invariants_record(K: SimplicialComplex, R: Coefficients, product: bool = True) -> dict:
    ring = cohomology_ring(K, R)
    zcl = zero_divisor_cup_length(ring)
    rec = {
        "complex": K.name,
        "field": R.name,
        "betti": list(cohomology_basis(K, R).betti),
        "cup_length": cup_length(ring),
        "zcl_tensor": zcl,
        "zcl_product": zcl_via_product_complex(K, R) if product else None,
        "tcm_lower_bound": zcl + 1,
    }
    return rec


def tc_lower_bound_report(K: SimplicialComplex, fields=DEFAULT_FIELDS, product: bool = True) -> dict:
    """Per-field invariants plus the bounds TCM >= TC >= zcl + 1 and TC <= TCM <= TC + 1."""
    records = [invariants_record(K, R, product) for R in fields]
    best = max(r["zcl_tensor"] for r in records)
    return {
        "complex": K.name,
        "results": records,
        "max_zcl": best,
        "tcm_lower_bound": best + 1,
        "tc_lower_bound": best + 1,
        "bounds": [
            f"TCM >= {best + 1}",
            f"TC >= {best + 1}",
            "TC <= TCM <= TC + 1",
        ],
        "consistent": all(r["zcl_product"] in (None, r["zcl_tensor"]) for r in records),
    }
