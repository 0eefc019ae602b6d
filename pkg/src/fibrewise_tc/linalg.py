"""Exact linear algebra over Q, F_p and Z.

Vectors are sparse dicts ``{index: coefficient}`` with no stored zeros.
Matrices are handed around as lists of such column vectors. Elimination uses
the largest nonzero index as the pivot ("low" entry), so that an echelon basis
is a dict ``{pivot: vector}`` with every vector normalised to a leading 1.

Dense matrices are fine for the fixture sizes; the column-list representation
is the seam where a sparse backend would plug in.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable


class CoefficientError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Coefficients:
    """A coefficient ring: ``rationals``, ``prime`` (with modulus ``p``) or ``integers``."""

    kind: str
    p: int = 0

    def __post_init__(self):
        if self.kind not in ("rationals", "prime", "integers"):
            raise CoefficientError(f"unknown coefficient kind {self.kind!r}")
        if self.kind == "prime" and not _is_prime(self.p):
            raise CoefficientError(f"modulus {self.p} is not prime")

    @property
    def is_field(self) -> bool:
        return self.kind != "integers"

    @property
    def name(self) -> str:
        if self.kind == "rationals":
            return "Q"
        if self.kind == "integers":
            return "Z"
        return f"F{self.p}"

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == "prime" else 0

    def __call__(self, x):
        if self.kind == "prime":
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
            return int(x) % self.p
        if self.kind == "rationals":
            return Fraction(x)
        return int(x)

    def inv(self, x):
        if self.kind == "prime":
            return pow(x, -1, self.p)
        if self.kind == "rationals":
            return 1 / Fraction(x)
        if x in (1, -1):
            return x
        raise CoefficientError(f"{x} is not a unit in Z")

    def neg(self, x):
        return self(-x)

    def __str__(self):
        return self.name


QQ = Coefficients("rationals")
ZZ = Coefficients("integers")


def GF(p: int) -> Coefficients:
    return Coefficients("prime", p)


def parse_field(text: str) -> Coefficients:
    """Parse ``q``, ``f2``, ``f3``, ``fp:<p>`` or ``z``."""
    t = text.strip().lower()
    if t in ("q", "qq", "rationals"):
        return QQ
    if t in ("z", "zz", "integers"):
        return ZZ
    if t.startswith("fp:"):
        return GF(int(t[3:]))
    if t.startswith("f") and t[1:].isdigit():
        return GF(int(t[1:]))
    raise CoefficientError(f"cannot parse coefficient field {text!r}")


# ---------------------------------------------------------------- sparse vectors


def axpy(y: dict, a, x: dict, F: Coefficients) -> None:
    """In place ``y += a * x``."""
    p = F.p if F.kind == "prime" else 0
    for k, xv in x.items():
        nv = y.get(k, 0) + a * xv
        if p:
            nv %= p
        if nv:
            y[k] = nv
        else:
            y.pop(k, None)


def scale(x: dict, a, F: Coefficients) -> dict:
    if F.kind == "prime":
        return {k: (a * v) % F.p for k, v in x.items() if (a * v) % F.p}
    return {k: a * v for k, v in x.items() if a * v}


def normalize(col: dict, F: Coefficients) -> dict:
    out = {}
    for k, v in col.items():
        v = F(v)
        if v:
            out[k] = v
    return out


class Echelon:
    """Echelon basis of a subspace, keyed by pivot (largest index)."""

    def __init__(self, field: Coefficients):
        self.field = field
        self.pivots = {}
        self._tags = {}

    def __len__(self):
        return len(self.pivots)

    def reduce(self, vec: dict, want_coeffs: bool = False):
        """Reduce ``vec`` against the basis.

        Returns the residual, and with ``want_coeffs`` also the dict of
        subtracted multiples keyed by tag (tags given at :meth:`add`).
        """
        F = self.field
        v = dict(vec)
        coeffs: dict = {}
        while v:
            low = max(v)
            piv = self.pivots.get(low)
            if piv is None:
                break
            c = v[low]
            axpy(v, F.neg(c), piv, F)
            if want_coeffs:
                tag = self._tags[low]
                if tag is not None:
                    for t, tc in tag.items():
                        nv = F(coeffs.get(t, 0) + c * tc)
                        if nv:
                            coeffs[t] = nv
                        else:
                            coeffs.pop(t, None)
        if want_coeffs:
            return v, coeffs
        return v

    def add(self, vec: dict, tag: dict | None = None) -> int | None:
        """Reduce and insert ``vec``; returns the new pivot, or None if dependent.

        ``tag`` is a linear combination of labels that ``vec`` stands for;
        it is carried through reduction so :meth:`reduce` can report
        coordinates with respect to the labelled vectors.
        """
        F = self.field
        v = dict(vec)
        t = dict(tag) if tag is not None else None
        while v:
            low = max(v)
            piv = self.pivots.get(low)
            if piv is None:
                break
            c = v[low]
            axpy(v, F.neg(c), piv, F)
            ptag = self._tags[low]
            if t is not None and ptag is not None:
                axpy(t, F.neg(c), ptag, F)
        if not v:
            return None
        low = max(v)
        inv = F.inv(v[low])
        v = scale(v, inv, F)
        if t is not None:
            t = scale(t, inv, F)
        self.pivots[low] = v
        self._tags[low] = t
        return low

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def basis(self) -> list[dict]:
        return [self.pivots[k] for k in sorted(self.pivots)]


def column_reduce(columns: Iterable[dict], F: Coefficients, track: bool = False):
    """Reduce columns left to right.

    Returns ``(echelon, kernel)``: an :class:`Echelon` of the column space and,
    when ``track`` is set, a basis of the kernel as combinations of column
    indices.
    """
    ech = Echelon(F)
    kernel = []
    for j, col in enumerate(columns):
        v = normalize(col, F)
        combo = {j: F(1)} if track else None
        while v:
            low = max(v)
            piv = ech.pivots.get(low)
            if piv is None:
                break
            c = v[low]
            axpy(v, F.neg(c), piv, F)
            if track:
                axpy(combo, F.neg(c), ech._tags[low], F)
        if v:
            low = max(v)
            inv = F.inv(v[low])
            ech.pivots[low] = scale(v, inv, F)
            ech._tags[low] = scale(combo, inv, F) if track else None
        elif track:
            kernel.append(combo)
    return ech, kernel


def rank(columns: Iterable[dict], F: Coefficients) -> int:
    return len(column_reduce(columns, F)[0])


def nullspace(columns: list[dict], F: Coefficients) -> list[dict]:
    return column_reduce(columns, F, track=True)[1]


# ------------------------------------------------------------- integer matrices


def smith_diagonal(rows: list[list[int]]) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form of an integer matrix.

    Plain dense elimination with gcd steps; entries are returned positive
    and in divisibility order.
    """
    A = [list(map(int, r)) for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    diag = []
    top = 0
    for col in range(n):
        if top >= m:
            break
        # bring a nonzero entry of the remaining block into (top, col)
        while True:
            piv = None
            best = None
            for i in range(top, m):
                for j in range(col, n):
                    if A[i][j] and (best is None or abs(A[i][j]) < best):
                        best = abs(A[i][j])
                        piv = (i, j)
            if piv is None:
                return _sorted_divisibility(diag)
            i, j = piv
            A[top], A[i] = A[i], A[top]
            for r in A:
                r[col], r[j] = r[j], r[col]
            a = A[top][col]
            clean = True
            for i in range(top + 1, m):
                q = A[i][col] // a
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[top])]
                if A[i][col]:
                    clean = False
            for j in range(col + 1, n):
                q = A[top][j] // a
                if q:
                    for r in A:
                        r[j] -= q * r[col]
                if A[top][j]:
                    clean = False
            if not clean:
                continue
            # divisibility: a must divide the rest of the block
            bad = None
            for i in range(top + 1, m):
                for j in range(col + 1, n):
                    if A[i][j] % a:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            A[top] = [x + y for x, y in zip(A[top], A[bad])]
        diag.append(abs(A[top][col]))
        top += 1
    return _sorted_divisibility(diag)


def _sorted_divisibility(diag: list[int]) -> list[int]:
    from math import gcd

    d = [x for x in diag if x]
    # turn any diagonal into invariant-factor form
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                g = gcd(d[i], d[j])
                l = d[i] * d[j] // g
                if (d[i], d[j]) != (g, l):
                    d[i], d[j] = g, l
                    changed = True
    return sorted(d)
