"""The full icosahedral group as exact matrices, orbits, and vertex configurations."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .field import (
    ONE,
    TAU,
    ZERO,
    FieldScalar,
    Mat3,
    Vec3,
    det3,
    identity3,
    mat_mul,
    mat_vec,
    scale,
    vec,
)

__all__ = [
    "SymmetryGroup",
    "VertexConfiguration",
    "generate_h3",
    "close_group",
    "reflection",
    "icosahedron_points",
    "dodecahedron_points",
    "icosidodecahedron_points",
    "standard_configuration",
    "CONFIGURATION_NAMES",
    "point_key",
]

CONFIGURATION_NAMES = ("two-icosahedra", "dodecahedron", "icosidodecahedron")


def _mat_key(m: Mat3):
    return tuple(x.key() for row in m for x in row)


def point_key(p: Vec3):
    """Structural sort key for exact points (deterministic, not geometric)."""
    return tuple(x.key() for x in p)


def reflection(normal: Vec3) -> Mat3:
    """Matrix of the reflection in the plane through 0 orthogonal to ``normal``."""
    nn = normal[0] * normal[0] + normal[1] * normal[1] + normal[2] * normal[2]
    c = FieldScalar(2) / nn
    rows = []
    for i in range(3):
        rows.append(
            tuple((ONE if i == j else ZERO) - c * normal[i] * normal[j] for j in range(3))
        )
    return tuple(rows)  # type: ignore[return-value]


def close_group(generators: Sequence[Mat3], limit: int = 10_000) -> List[Mat3]:
    """All products of the generators (breadth-first closure)."""
    ident = identity3()
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for g in generators:
                h = mat_mul(m, g)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
                    if len(seen) > limit:
                        raise ValueError("matrix group closure exceeds limit")
        frontier = nxt
    return list(seen)


class SymmetryGroup:
    """A finite group of exact orthogonal 3x3 matrices.

    Elements are stored sorted by their entries so that iteration order, and
    everything downstream of it, is reproducible.
    """

    def __init__(self, elements: Sequence[Mat3], generators: Sequence[Mat3] = ()):
        self.elements: Tuple[Mat3, ...] = tuple(sorted(set(elements), key=_mat_key))
        self.generators: Tuple[Mat3, ...] = tuple(generators)
        self._index = {m: i for i, m in enumerate(self.elements)}
        self._perm_cache: Dict[Tuple[Vec3, ...], List[Tuple[int, ...]]] = {}

    def __len__(self):
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, m):
        return m in self._index

    def index(self, m: Mat3) -> int:
        return self._index[m]

    def is_closed(self) -> bool:
        return all(mat_mul(g, h) in self._index for g in self.elements for h in self.elements)

    def rotation_subgroup(self) -> "SymmetryGroup":
        return SymmetryGroup([m for m in self.elements if det3(m) == 1])

    def orbit(self, p: Vec3) -> List[Vec3]:
        """The orbit of ``p``, sorted structurally."""
        return sorted({mat_vec(m, p) for m in self.elements}, key=point_key)

    def stabilizer(self, p: Vec3) -> "SymmetryGroup":
        p = tuple(p)
        return SymmetryGroup([m for m in self.elements if mat_vec(m, p) == p])

    def point_permutations(self, points: Sequence[Vec3]) -> List[Tuple[int, ...]]:
        """Permutation of ``points`` induced by every element, in element order.

        Raises ``ValueError`` if some element maps a point outside the set.
        Results are memoised per point tuple.
        """
        points = tuple(tuple(p) for p in points)
        cached = self._perm_cache.get(points)
        if cached is not None:
            return cached
        where: Dict[Vec3, int] = {tuple(p): i for i, p in enumerate(points)}
        perms = []
        for m in self.elements:
            img = []
            for p in points:
                q = mat_vec(m, p)
                j = where.get(q)
                if j is None:
                    raise ValueError(f"point set is not invariant: {p} -> {q}")
                img.append(j)
            perms.append(tuple(img))
        self._perm_cache[points] = perms
        return perms


@lru_cache(maxsize=None)
def generate_h3() -> SymmetryGroup:
    """Full icosahedral group (order 120) from three reflections.

    The mirrors are ``x = 0``, ``y = 0`` and the plane with unit normal
    ``(-tau, -1, tau - 1) / 2``; their pairwise angles are pi/5, pi/3 and
    pi/2, which is the Coxeter diagram of H3.  All three are mirrors of the
    standard icosahedron below.
    """
    half = Fraction(1, 2)
    gens = (
        reflection(vec(1, 0, 0)),
        reflection((-TAU * half, FieldScalar(-half), (TAU - 1) * half)),
        reflection(vec(0, 1, 0)),
    )
    return SymmetryGroup(close_group(gens), gens)


def _cyclic(points):
    out = set()
    for x, y, z in points:
        out.update({(x, y, z), (y, z, x), (z, x, y)})
    return sorted(out, key=point_key)


def _signs(*coords):
    """All sign combinations of the given coordinates (zero stays zero)."""
    choices = [(c,) if not c else (c, -c) for c in coords]
    return [tuple(t) for t in product(*choices)]


def icosahedron_points() -> List[Vec3]:
    """Cyclic permutations of ``(0, +-1, +-tau)``; circumradius^2 = tau + 2."""
    return _cyclic(_signs(ZERO, ONE, TAU))


def dodecahedron_points() -> List[Vec3]:
    cube = _signs(ONE, ONE, ONE)
    return sorted(set(cube) | set(_cyclic(_signs(ZERO, TAU, TAU.inverse()))), key=point_key)


def icosidodecahedron_points() -> List[Vec3]:
    half = Fraction(1, 2)
    axial = _cyclic(_signs(TAU, ZERO, ZERO))
    other = _cyclic(_signs(FieldScalar(half), TAU * TAU * half, TAU * half))
    return sorted(set(axial) | set(other), key=point_key)


@dataclass(frozen=True)
class VertexConfiguration:
    """Named union of H3-orbits used as candidate vertex set.

    ``orbits[k]`` is a sorted list of points; the flattened ``vertices``
    concatenates the orbits in order, which fixes vertex indices.
    ``ratio`` is the circumradius ratio of the second orbit to the first for
    ``two-icosahedra`` and ``None`` otherwise.
    """

    name: str
    orbits: Tuple[Tuple[Vec3, ...], ...]
    ratio: Optional[FieldScalar] = None
    vertices: Tuple[Vec3, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(p for orb in self.orbits for p in orb))

    def orbit_of(self, i: int) -> int:
        """Index of the orbit holding vertex ``i``."""
        for k, orb in enumerate(self.orbits):
            if i < len(orb):
                return k
            i -= len(orb)
        raise IndexError(i)

    def underlying_solid(self) -> List[Vec3]:
        """Vertices of the regular or quasi-regular solid the configuration sits on."""
        return {
            "two-icosahedra": icosahedron_points,
            "dodecahedron": dodecahedron_points,
            "icosidodecahedron": icosidodecahedron_points,
        }[self.name]()

    def with_ratio(self, ratio: FieldScalar) -> "VertexConfiguration":
        return standard_configuration(self.name, ratio)


def standard_configuration(name: str, ratio: Optional[FieldScalar] = None) -> VertexConfiguration:
    """Build one of the three vertex configurations.

    ``two-icosahedra`` needs a ratio ``> 0`` and ``!= 1``: the inner orbit is
    the standard icosahedron, the outer one is the same scaled by ``ratio``.
    """
    if name == "two-icosahedra":
        if ratio is None:
            raise ValueError("two-icosahedra needs a ratio")
        ratio = FieldScalar._coerce(ratio)
        if ratio.sign() <= 0:
            raise ValueError(f"ratio must be positive, got {ratio}")
        if ratio == 1:
            raise ValueError("ratio 1 makes the two icosahedra coincide")
        ico = icosahedron_points()
        return VertexConfiguration(name, (tuple(ico), tuple(scale(ratio, p) for p in ico)), ratio)
    if ratio is not None:
        raise ValueError(f"{name} takes no ratio")
    if name == "dodecahedron":
        return VertexConfiguration(name, (tuple(dodecahedron_points()),))
    if name == "icosidodecahedron":
        return VertexConfiguration(name, (tuple(icosidodecahedron_points()),))
    raise ValueError(f"unknown configuration {name!r}; expected one of {CONFIGURATION_NAMES}")
