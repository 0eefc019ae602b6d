"""Built-in complexes and the JSON fixture loader."""

from __future__ import annotations

import json
from itertools import combinations
from pathlib import Path

from .complex_core import ComplexError, SimplicialComplex, build_complex


def point() -> SimplicialComplex:
    return build_complex([[0]], name="point")


def circle(n: int = 3) -> SimplicialComplex:
    """Boundary of an n-gon."""
    if n < 3:
        raise ComplexError("a circle needs at least 3 vertices")
    return build_complex([[i, (i + 1) % n] for i in range(n)], name=f"s1_{n}" if n != 3 else "s1")


def sphere(n: int) -> SimplicialComplex:
    """S^n as the boundary of the (n+1)-simplex."""
    if n < 1:
        raise ComplexError("sphere dimension must be >= 1")
    verts = range(n + 2)
    return build_complex([list(c) for c in combinations(verts, n + 1)], name=f"s{n}")


def torus() -> SimplicialComplex:
    """Seven-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7."""
    facets = []
    for i in range(7):
        facets.append([i, (i + 1) % 7, (i + 3) % 7])
        facets.append([i, (i + 2) % 7, (i + 3) % 7])
    return build_complex(facets, name="t2")


def projective_plane() -> SimplicialComplex:
    """Six-vertex RP^2 (the half-icosahedron)."""
    facets = [
        [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
        [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
    ]
    return build_complex(facets, name="rp2")


def wedge_circle_sphere() -> SimplicialComplex:
    """S^1 v S^2 glued at vertex 0."""
    facets = [[0, 1], [1, 2], [0, 2], [0, 3, 4], [0, 3, 5], [0, 4, 5], [3, 4, 5]]
    return build_complex(facets, name="s1vs2")


BUILTINS = {
    "point": point,
    "s1": circle,
    "s2": lambda: sphere(2),
    "s3": lambda: sphere(3),
    "t2": torus,
    "rp2": projective_plane,
    "s1vs2": wedge_circle_sphere,
}

# Fixtures the test and acceptance sweeps run over.
STANDARD = ("point", "s1", "s2", "s3", "t2", "rp2", "s1vs2")


def load_json(path: str | Path) -> SimplicialComplex:
    """Read ``{"name": str, "facets": [[int, ...], ...]}``."""
    data = json.loads(Path(path).read_text())
    if not isinstance(data, dict) or "facets" not in data:
        raise ComplexError(f"{path}: expected an object with a 'facets' list")
    facets = data["facets"]
    if not isinstance(facets, list) or not all(isinstance(f, list) for f in facets):
        raise ComplexError(f"{path}: 'facets' must be a list of vertex lists")
    for f in facets:
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in f):
            raise ComplexError(f"{path}: vertices must be integers")
    return build_complex(facets, name=str(data.get("name", Path(path).stem)))


def get_complex(spec: str) -> SimplicialComplex:
    """Resolve a built-in name (``s1``, ``s1:12``, ``sphere:4``, ...) or a JSON path."""
    key = spec.strip().lower()
    if key in BUILTINS:
        return BUILTINS[key]()
    if key.startswith("s1:"):
        return circle(int(key[3:]))
    if key.startswith("sphere:"):
        return sphere(int(key[7:]))
    if key.startswith("circle") and key[6:].isdigit():
        return circle(int(key[6:]))
    p = Path(spec)
    if p.suffix == ".json" or p.exists():
        if not p.exists():
            raise ComplexError(f"no such fixture file: {spec}")
        return load_json(p)
    raise ComplexError(f"unknown complex {spec!r}")
