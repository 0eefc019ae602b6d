"""Simplicial chains, homology, cohomology bases and the Alexander-Whitney cup product."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .complex_core import SimplicialComplex
from .linalg import Coefficients, Echelon, QQ, ZZ, column_reduce, normalize, smith_diagonal


class DegreeError(ValueError):
    pass


class NotACocycleError(ValueError):
    pass


@dataclass(frozen=True)
class SparseMatrix:
    """``shape = (rows, cols)``; ``columns[j]`` maps row index to entry."""

    shape: tuple
    columns: tuple

    def dense(self) -> list[list[int]]:
        m, n = self.shape
        out = [[0] * n for _ in range(m)]
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                out[i][j] = v
        return out

    def transpose(self) -> "SparseMatrix":
        m, n = self.shape
        rows: list[dict] = [dict() for _ in range(m)]
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                rows[i][j] = v
        return SparseMatrix((n, m), tuple(rows))

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape[1] != other.shape[0]:
            raise ValueError("shape mismatch")
        cols = []
        for col in other.columns:
            acc: dict = {}
            for k, b in col.items():
                for i, a in self.columns[k].items():
                    acc[i] = acc.get(i, 0) + a * b
            cols.append({i: v for i, v in acc.items() if v})
        return SparseMatrix((self.shape[0], other.shape[1]), tuple(cols))

    def is_zero(self) -> bool:
        return not any(self.columns)


def boundary_matrix(K: SimplicialComplex, k: int) -> SparseMatrix:
    """Matrix of the boundary map C_k -> C_{k-1}, entries (-1)^i in the row of face i."""
    if not 1 <= k <= K.dimension:
        raise DegreeError(f"boundary degree {k} outside 1..{K.dimension}")
    return _boundary(K, k)


@lru_cache(maxsize=64)
def _boundary(K: SimplicialComplex, k: int) -> SparseMatrix:
    cols = []
    for s in K.simplices(k):
        col = {}
        for i in range(len(s)):
            col[K.index_of(s[:i] + s[i + 1:])] = (-1) ** i
        cols.append(col)
    return SparseMatrix((K.count(k - 1), K.count(k)), tuple(cols))


def coboundary_columns(K: SimplicialComplex, k: int) -> list[dict]:
    """Columns of delta^k : C^k -> C^{k+1} (one per k-simplex)."""
    if k >= K.dimension or k < 0:
        return [dict() for _ in range(K.count(k))]
    return list(_boundary(K, k + 1).transpose().columns)


def _require_field(R: Coefficients):
    if not R.is_field:
        raise ValueError("field coefficients required; use integer_homology for Z")


def betti_numbers(K: SimplicialComplex, R: Coefficients = QQ) -> tuple[int, ...]:
    """b_k = dim ker d_k - rank d_{k+1} over the field R."""
    _require_field(R)
    ranks = [0] * (K.dimension + 2)
    for k in range(1, K.dimension + 1):
        ranks[k] = len(column_reduce(_boundary(K, k).columns, R)[0])
    return tuple(K.count(k) - ranks[k] - ranks[k + 1] for k in range(K.dimension + 1))


def integer_homology(K: SimplicialComplex) -> list[tuple[int, list[int]]]:
    """Per degree ``(free rank, torsion coefficients)`` via Smith normal form."""
    diags = [[] for _ in range(K.dimension + 2)]
    for k in range(1, K.dimension + 1):
        diags[k] = smith_diagonal(_boundary(K, k).dense())
    out = []
    for k in range(K.dimension + 1):
        rank_k = len(diags[k])
        rank_k1 = len(diags[k + 1])
        free = K.count(k) - rank_k - rank_k1
        torsion = [d for d in diags[k + 1] if d > 1]
        out.append((free, torsion))
    return out


# ---------------------------------------------------------------- cochains


@dataclass(frozen=True)
class Cochain:
    degree: int
    values: dict  # simplex index -> coefficient

    def __add__(self, other):
        return _lincomb(((1, self), (1, other)))

    def __sub__(self, other):
        return _lincomb(((1, self), (-1, other)))

    def __rmul__(self, a):
        return Cochain(self.degree, {k: a * v for k, v in self.values.items() if a * v})

    def __neg__(self):
        return (-1) * self


def _lincomb(terms):
    terms = list(terms)
    deg = terms[0][1].degree
    acc: dict = {}
    for a, c in terms:
        if c.degree != deg:
            raise DegreeError("adding cochains of different degrees")
        for k, v in c.values.items():
            acc[k] = acc.get(k, 0) + a * v
    return Cochain(deg, {k: v for k, v in acc.items() if v})


def cochain_from_simplices(K: SimplicialComplex, k: int, values: dict) -> Cochain:
    return Cochain(k, {K.index_of(s): v for s, v in values.items() if v})


def unit_cochain(K: SimplicialComplex, R: Coefficients = QQ) -> Cochain:
    return Cochain(0, {i: R(1) for i in range(K.count(0))})


def coboundary(K: SimplicialComplex, c: Cochain, R: Coefficients = QQ) -> Cochain:
    k = c.degree
    out: dict = {}
    if k < K.dimension:
        for j, s in enumerate(K.simplices(k + 1)):
            acc = 0
            for i in range(len(s)):
                acc += (-1) ** i * c.values.get(K.index_of(s[:i] + s[i + 1:]), 0)
            acc = R(acc)
            if acc:
                out[j] = acc
    return Cochain(k + 1, out)


def cup_product(K: SimplicialComplex, R: Coefficients, alpha: Cochain, beta: Cochain,
                check: bool = True) -> Cochain:
    """Alexander-Whitney product: (a u b)[v0..v_{p+q}] = a[v0..vp] * b[vp..v_{p+q}]."""
    if check:
        for c in (alpha, beta):
            if coboundary(K, c, R).values:
                raise NotACocycleError(f"degree-{c.degree} input is not a cocycle")
    p, q = alpha.degree, beta.degree
    out: dict = {}
    if not alpha.values or not beta.values:
        return Cochain(p + q, out)
    front_pos = K._pos[p]
    back_pos = K._pos[q]
    av, bv = alpha.values, beta.values
    for j, s in enumerate(K.simplices(p + q)):
        a = av.get(front_pos[s[: p + 1]])
        if not a:
            continue
        b = bv.get(back_pos[s[p:]])
        if not b:
            continue
        x = R(a * b)
        if x:
            out[j] = x
    return Cochain(p + q, out)


class CohomologyBasis:
    """Representative cocycles for H^*(K; R) plus coordinate reduction.

    ``reps[k]`` are cocycles whose classes form a basis of H^k. ``reduce``
    maps any cocycle to its coordinates in that basis; a coboundary reduces
    to the zero vector, and a non-cocycle raises :class:`NotACocycleError`.
    """

    def __init__(self, K: SimplicialComplex, R: Coefficients):
        _require_field(R)
        self.complex = K
        self.field = R
        self.reps: list[list[Cochain]] = []
        self._echelons: list[Echelon] = []
        images: list[Echelon] = []
        kernels: list[list[dict]] = []
        for k in range(K.dimension + 1):
            ech, ker = column_reduce(coboundary_columns(K, k), R, track=True)
            images.append(ech)  # image of delta^k lives in degree k+1
            kernels.append(ker)
        for k in range(K.dimension + 1):
            ech = Echelon(R)
            if k > 0:
                for piv, vec in images[k - 1].pivots.items():
                    ech.pivots[piv] = vec
                    ech._tags[piv] = None
            expected = len(kernels[k]) - (len(images[k - 1]) if k > 0 else 0)
            reps = []
            for z in kernels[k]:
                if len(reps) == expected:
                    break
                idx = len(reps)
                residual = ech.reduce(z)
                if residual:
                    ech.add(residual, {idx: R(1)})
                    reps.append(Cochain(k, normalize(residual, R)))
            self.reps.append(reps)
            self._echelons.append(ech)

    @property
    def betti(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.reps)

    def reduce(self, c: Cochain) -> list:
        """Coordinates of the class of cocycle ``c``."""
        k = c.degree
        if k < 0 or k > self.complex.dimension:
            return []
        residual, coeffs = self._echelons[k].reduce(normalize(c.values, self.field),
                                                    want_coeffs=True)
        if residual:
            raise NotACocycleError(f"degree-{k} cochain is not a cocycle")
        R = self.field
        return [R(coeffs.get(i, 0)) for i in range(len(self.reps[k]))]

    def is_coboundary(self, c: Cochain) -> bool:
        return not any(self.reduce(c))


@lru_cache(maxsize=32)
def cohomology_basis(K: SimplicialComplex, R: Coefficients = QQ) -> CohomologyBasis:
    return CohomologyBasis(K, R)


__all__ = [
    "Coefficients", "Cochain", "CohomologyBasis", "DegreeError", "NotACocycleError",
    "SparseMatrix", "betti_numbers", "boundary_matrix", "coboundary", "coboundary_columns",
    "cochain_from_simplices", "cohomology_basis", "cup_product", "integer_homology",
    "unit_cochain", "ZZ",
]
