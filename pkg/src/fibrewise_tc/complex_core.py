"""Finite simplicial complexes, exact barycentric points and product complexes."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from gmpy2 import mpq as Rational
from itertools import combinations
from typing import Callable, Hashable, Iterable, Sequence


class ComplexError(ValueError):
    """Raised for malformed complexes and points."""


class MalformedSimplexError(ComplexError):
    pass


class UnknownVertexError(ComplexError, LookupError):
    pass


class UnknownSimplexError(ComplexError, LookupError):
    pass


class SimplicialComplex:
    """A finite abstract simplicial complex with a fixed vertex order.

    Simplices are stored as tuples sorted by vertex order, grouped by
    dimension; ``simplices(k)`` lists them in lexicographic index order, which
    is the basis order used by every chain/cochain computation downstream.
    """

    def __init__(self, vertices: Sequence[Hashable], simplices: Iterable[Iterable[Hashable]],
                 name: str = ""):
        self.vertices = tuple(vertices)
        self.name = name
        self._index = {v: i for i, v in enumerate(self.vertices)}
        if len(self._index) != len(self.vertices):
            raise MalformedSimplexError("repeated vertex label")
        by_dim: dict[int, set] = {}
        for s in simplices:
            t = self._canonical(s)
            by_dim.setdefault(len(t) - 1, set()).add(t)
        top = max(by_dim) if by_dim else -1
        self._by_dim = [sorted(by_dim.get(k, ()), key=self._key) for k in range(top + 1)]
        self._pos = [{s: i for i, s in enumerate(lst)} for lst in self._by_dim]
        self._check()

    def _canonical(self, s) -> tuple:
        s = list(s)
        if not s:
            raise MalformedSimplexError("empty simplex")
        if len(set(s)) != len(s):
            raise MalformedSimplexError(f"duplicate vertex in simplex {s}")
        for v in s:
            if v not in self._index:
                raise UnknownVertexError(f"vertex {v!r} not declared")
        return tuple(sorted(s, key=self._index.__getitem__))

    def _key(self, s):
        return tuple(self._index[v] for v in s)

    def _check(self):
        for k in range(1, len(self._by_dim)):
            lower = self._pos[k - 1]
            for s in self._by_dim[k]:
                for i in range(len(s)):
                    if s[:i] + s[i + 1:] not in lower:
                        raise MalformedSimplexError(f"face of {s} missing")
        used = {v for (v,) in self._by_dim[0]} if self._by_dim else set()
        if used != set(self.vertices):
            raise MalformedSimplexError("every vertex must appear in a simplex")

    # -- queries
    @property
    def dimension(self) -> int:
        return len(self._by_dim) - 1

    def simplices(self, k: int) -> list[tuple]:
        if 0 <= k < len(self._by_dim):
            return self._by_dim[k]
        return []

    def all_simplices(self) -> list[tuple]:
        return [s for lst in self._by_dim for s in lst]

    def count(self, k: int) -> int:
        return len(self.simplices(k))

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(lst) for lst in self._by_dim)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    def index_of(self, simplex) -> int:
        t = self.canonical(simplex)
        try:
            return self._pos[len(t) - 1][t]
        except (IndexError, KeyError):
            raise UnknownSimplexError(f"{simplex} is not a simplex") from None

    def canonical(self, simplex) -> tuple:
        return self._canonical(simplex)

    def __contains__(self, simplex) -> bool:
        try:
            t = self._canonical(simplex)
        except ComplexError:
            return False
        k = len(t) - 1
        return k < len(self._pos) and t in self._pos[k]

    def vertex_index(self, v) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise UnknownVertexError(f"unknown vertex {v!r}") from None

    def facets(self) -> list[tuple]:
        """Maximal simplices."""
        covered = set()
        for k in range(1, len(self._by_dim)):
            for s in self._by_dim[k]:
                for i in range(len(s)):
                    covered.add(s[:i] + s[i + 1:])
        return [s for s in self.all_simplices() if s not in covered]

    # -- points
    def vertex_point(self, v) -> "BaryPoint":
        self.vertex_index(v)
        return BaryPoint(self, ((v, Rational(1)),))

    def point(self, weights: dict) -> "BaryPoint":
        return BaryPoint.from_weights(self, weights)

    def __repr__(self):
        return f"SimplicialComplex({self.name or '?'}, f={self.f_vector()})"


def build_complex(facets: Sequence[Sequence[Hashable]], labels: Sequence[Hashable] | None = None,
                  name: str = "") -> SimplicialComplex:
    """Closure of a facet family; vertex order is ``labels`` (default: sorted labels)."""
    if not facets:
        raise MalformedSimplexError("facet list is empty")
    for f in facets:
        if not f:
            raise MalformedSimplexError("empty facet")
        if len(set(f)) != len(f):
            raise MalformedSimplexError(f"duplicate vertex in facet {list(f)}")
    if labels is None:
        labels = sorted({v for f in facets for v in f})
    else:
        declared = set(labels)
        for f in facets:
            for v in f:
                if v not in declared:
                    raise UnknownVertexError(f"vertex {v!r} not in label set")
    faces = set()
    for f in facets:
        f = tuple(f)
        for k in range(1, len(f) + 1):
            faces.update(frozenset(c) for c in combinations(f, k))
    return SimplicialComplex(labels, faces, name=name)


# ------------------------------------------------------------------ points


@dataclass(frozen=True)
class BaryPoint:
    """Point of |K| given by exact barycentric weights.

    ``weights`` holds only the positive coordinates, sorted by vertex order,
    so two points are equal iff their coordinates agree.
    """

    complex: SimplicialComplex = field(compare=False, repr=False)
    weights: tuple

    @classmethod
    def from_weights(cls, K: SimplicialComplex, weights: dict) -> "BaryPoint":
        items = []
        total = Rational(0)
        for v, w in weights.items():
            w = Rational(w)
            if w < 0:
                raise ComplexError(f"negative weight at {v!r}")
            K.vertex_index(v)
            total += w
            if w:
                items.append((v, w))
        if total != 1:
            raise ComplexError(f"weights sum to {total}, not 1")
        items.sort(key=lambda it: K.vertex_index(it[0]))
        support = tuple(v for v, _ in items)
        if support not in K:
            raise ComplexError(f"support {support} is not a simplex")
        return cls(K, tuple(items))

    @property
    def support(self) -> tuple:
        return tuple(v for v, _ in self.weights)

    def as_dict(self) -> dict:
        return dict(self.weights)

    def __getitem__(self, v) -> Rational:
        for u, w in self.weights:
            if u == v:
                return w
        return Rational(0)

    def combine(self, a, other: "BaryPoint", b) -> "BaryPoint":
        """The affine combination ``a*self + b*other`` (``a + b == 1``, both >= 0).

        The caller guarantees the two supports lie in a common simplex.
        """
        a, b = Rational(a), Rational(b)
        if a == 1:
            return self
        if b == 1:
            return other
        acc: dict = {}
        for v, w in self.weights:
            acc[v] = acc.get(v, 0) + a * w
        for v, w in other.weights:
            acc[v] = acc.get(v, 0) + b * w
        K = self.complex
        items = sorted(((v, w) for v, w in acc.items() if w), key=lambda it: K.vertex_index(it[0]))
        return BaryPoint(K, tuple(items))

    def __repr__(self):
        inner = ", ".join(f"{v!r}: {w}" for v, w in self.weights)
        return "BaryPoint({" + inner + "})"


def shares_simplex(x: BaryPoint, y: BaryPoint) -> bool:
    """True when the supports of x and y span a simplex (a straight segment exists)."""
    return tuple(set(x.support) | set(y.support)) in x.complex


@dataclass(frozen=True)
class ProductPoint:
    first: BaryPoint
    second: BaryPoint

    def __post_init__(self):
        if self.first.complex is not self.second.complex:
            raise ComplexError("product coordinates come from different complexes")

    @property
    def complex(self) -> SimplicialComplex:
        return self.first.complex

    @property
    def on_diagonal(self) -> bool:
        return self.first == self.second

    def __iter__(self):
        yield self.first
        yield self.second


def diagonal_point(x: BaryPoint) -> ProductPoint:
    return ProductPoint(x, x)


@dataclass(frozen=True)
class OpenSet:
    """An open set given by an exact membership predicate."""

    membership: Callable[[object], bool]
    description: str = ""

    def __contains__(self, p) -> bool:
        return bool(self.membership(p))


def star_neighborhood(K: SimplicialComplex, beta) -> OpenSet:
    """Open star of a vertex: points whose barycentric coordinate at ``beta`` is positive."""
    K.vertex_index(beta)
    return OpenSet(lambda x: x[beta] > 0, f"star({beta!r})")


# --------------------------------------------------------------- products


def _staircases(p: int, q: int):
    """Maximal monotone lattice paths from (0, 0) to (p, q)."""
    for rights in combinations(range(p + q), p):
        i = j = 0
        path = [(0, 0)]
        rs = set(rights)
        for step in range(p + q):
            if step in rs:
                i += 1
            else:
                j += 1
            path.append((i, j))
        yield path


def product_complex(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    """Staircase triangulation of |K| x |L|.

    Vertices are pairs in lexicographic order. For facets sigma, tau the top
    simplices of sigma x tau are the maximal monotone chains of vertex pairs;
    the diagonal of K x K is a subcomplex.
    """
    if not K.vertices or not L.vertices:
        raise ComplexError("product of an empty complex")
    verts = [(a, b) for a in K.vertices for b in L.vertices]
    tops = set()
    for s in K.facets():
        for t in L.facets():
            for path in _staircases(len(s) - 1, len(t) - 1):
                tops.add(tuple((s[i], t[j]) for i, j in path))
    faces = set()
    for top in tops:
        for k in range(1, len(top) + 1):
            faces.update(combinations(top, k))
    name = f"{K.name}x{L.name}" if K.name or L.name else ""
    return SimplicialComplex(verts, faces, name=name)


@dataclass(frozen=True)
class SimplicialMap:
    source: SimplicialComplex
    target: SimplicialComplex
    vertex_map: dict

    def __call__(self, simplex) -> tuple:
        return self.target.canonical(self.vertex_map[v] for v in simplex)

    def image(self) -> list[tuple]:
        return [self(s) for s in self.source.all_simplices()]


def diagonal_map(K: SimplicialComplex, P: SimplicialComplex | None = None) -> SimplicialMap:
    """v -> (v, v) into the staircase product K x K."""
    if P is None:
        P = product_complex(K, K)
    m = SimplicialMap(K, P, {v: (v, v) for v in K.vertices})
    for s in K.all_simplices():
        if m(s) not in P:
            raise ComplexError(f"diagonal image of {s} missing from product")
    return m


# --------------------------------------------------------------- sampling


def _random_weights(rng: random.Random, simplex: Sequence, scale: int = 24) -> dict:
    raw = [rng.randint(1, scale) for _ in simplex]
    tot = sum(raw)
    return {v: Rational(r, tot) for v, r in zip(simplex, raw)}


def random_point(K: SimplicialComplex, simplex, seed: int) -> BaryPoint:
    """Deterministic point in the open simplex ``simplex`` (all weights positive)."""
    if simplex not in K:
        raise UnknownSimplexError(f"{simplex} is not a simplex of {K.name or 'K'}")
    s = K.canonical(simplex)
    rng = random.Random(f"{seed}:{K.index_of(s)}:{len(s)}")
    return BaryPoint.from_weights(K, _random_weights(rng, s))


def _point_in(K, rng, simplex):
    return BaryPoint.from_weights(K, _random_weights(rng, simplex))


def sample_points(K: SimplicialComplex, n: int, seed: int) -> list[BaryPoint]:
    rng = random.Random(seed)
    simplices = K.all_simplices()
    return [_point_in(K, rng, rng.choice(simplices)) for _ in range(n)]


def sample_product_points(K: SimplicialComplex, n: int, seed: int) -> list[ProductPoint]:
    """Seeded mix of points of |K| x |K|.

    Roughly a quarter each of: independent pairs, pairs in a common simplex,
    near-diagonal pairs (y a small perturbation of x) and diagonal pairs, so
    every sublevel band of the Strom function is populated.
    """
    rng = random.Random(seed)
    simplices = K.all_simplices()
    facets = K.facets()
    out = []
    for i in range(n):
        kind = i % 4
        if kind == 0:
            x = _point_in(K, rng, rng.choice(simplices))
            y = _point_in(K, rng, rng.choice(simplices))
        elif kind == 1:
            f = rng.choice(facets)
            x = _point_in(K, rng, _subface(rng, f))
            y = _point_in(K, rng, _subface(rng, f))
        elif kind == 2:
            f = rng.choice(facets)
            x = _point_in(K, rng, _subface(rng, f))
            z = _point_in(K, rng, f)
            eps = Rational(rng.randint(1, 12), 24)
            y = x.combine(1 - eps, z, eps)
        else:
            x = _point_in(K, rng, rng.choice(simplices))
            y = x
        if rng.random() < 0.5:
            x, y = y, x
        out.append(ProductPoint(x, y))
    return out


def _subface(rng, f):
    k = rng.randint(1, len(f))
    return tuple(sorted(rng.sample(list(f), k), key=list(f).index))


def diagonal_vertex_points(K: SimplicialComplex) -> list[ProductPoint]:
    return [diagonal_point(K.vertex_point(v)) for v in K.vertices]
