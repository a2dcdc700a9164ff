"""Geometric analysis of realizations: families, planarity, face centres."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import mpmath

from .field import (
    ONE,
    ZERO,
    FieldScalar,
    Vec3,
    centroid,
    coplanar,
    cross,
    dot,
    norm2,
    parallel_same_direction,
    sub,
)
from .flags import FlagSystem
from .realization import (
    SkeletalPolyhedron,
    canonical_cycle,
    face_orbits,
    family_key,
)
from .symmetry import VertexConfiguration, generate_h3

__all__ = [
    "Poly",
    "RealizationFamily",
    "PlanarityAnalysis",
    "planarity_ratios",
    "analyze_planarity",
    "field_roots",
    "FaceOrbitClass",
    "classify_face_centers",
    "edge_traversal_check",
    "solid_structure",
    "SolidStructure",
    "petrie_polyhedron",
    "faces_planar",
]


# ---------------------------------------------------------------------------
# univariate polynomials over Q(sqrt 5)
# ---------------------------------------------------------------------------


class Poly:
    """Polynomial in one variable with :class:`FieldScalar` coefficients (low degree first)."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Sequence = ()):
        c = [FieldScalar._coerce(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.c: Tuple[FieldScalar, ...] = tuple(c)

    @classmethod
    def x(cls) -> "Poly":
        return cls([ZERO, ONE])

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"Poly({[str(x) for x in self.c]})"

    def _lift(self, other):
        return other if isinstance(other, Poly) else Poly([other])

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.c), len(other.c))
        a = self.c + (ZERO,) * (n - len(self.c))
        b = other.c + (ZERO,) * (n - len(other.c))
        return Poly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-x for x in self.c])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        if not self.c or not other.c:
            return Poly()
        out = [ZERO] * (len(self.c) + len(other.c) - 1)
        for i, x in enumerate(self.c):
            if not x:
                continue
            for j, y in enumerate(other.c):
                out[i + j] = out[i + j] + x * y
        return Poly(out)

    __rmul__ = __mul__

    def __call__(self, x) -> FieldScalar:
        acc = ZERO
        for coef in reversed(self.c):
            acc = acc * x + coef
        return acc

    def conjugate(self) -> "Poly":
        return Poly([x.conjugate() for x in self.c])

    def derivative(self) -> "Poly":
        return Poly([x * k for k, x in enumerate(self.c)][1:])

    def divmod(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        quot = [ZERO] * max(len(rem) - len(other.c) + 1, 0)
        lead_inv = other.c[-1].inverse()
        while len(rem) >= len(other.c) and any(rem):
            shift = len(rem) - len(other.c)
            f = rem[-1] * lead_inv
            quot[shift] = f
            for i, y in enumerate(other.c):
                rem[shift + i] = rem[shift + i] - f * y
            rem.pop()
            while rem and not rem[-1]:
                rem.pop()
        return Poly(quot), Poly(rem)

    def monic(self) -> "Poly":
        inv = self.c[-1].inverse()
        return Poly([x * inv for x in self.c])

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while b:
            a, b = b, a.divmod(b)[1]
        return a.monic() if a else a

    def squarefree(self) -> "Poly":
        g = self.gcd(self.derivative())
        if g.degree <= 0:
            return self.monic()
        return self.divmod(g)[0].monic()


def _mp(x: FieldScalar):
    return mpmath.mpf(x.a.numerator) / x.a.denominator + mpmath.mpf(x.b.numerator) / x.b.denominator * mpmath.sqrt(5)


def _real_roots(f: Poly) -> List:
    if f.degree < 1:
        return []
    coeffs = [_mp(x) for x in reversed(f.c)]
    roots = mpmath.polyroots(coeffs, maxsteps=500, extraprec=400)
    return [mpmath.re(r) for r in roots if abs(mpmath.im(r)) < mpmath.mpf(10) ** -30]


def field_roots(f: Poly) -> Tuple[List[FieldScalar], List[float]]:
    """Real roots of ``f``: those in Q(sqrt 5) exactly, the rest as floats.

    A root ``x`` in the field has its conjugate among the roots of the
    conjugate polynomial, so every pair of numeric roots proposes a
    candidate ``a + b*sqrt 5``; candidates are kept only if they are exact
    roots.  Roots not matched this way are reported numerically.
    """
    if not f:
        raise ValueError("zero polynomial has every number as a root")
    f = f.squarefree()
    with mpmath.workdps(60):
        xs = _real_roots(f)
        ys = _real_roots(f.conjugate())
        exact: List[FieldScalar] = []
        for x in xs:
            for y in ys:
                a = Fraction(mpmath.nstr((x + y) / 2, 50)).limit_denominator(10**12)
                b = Fraction(mpmath.nstr((x - y) / (2 * mpmath.sqrt(5)), 50)).limit_denominator(10**12)
                z = FieldScalar(a, b)
                if z not in exact and not f(z):
                    exact.append(z)
        numeric = [float(x) for x in xs if all(abs(x - _mp(z)) > mpmath.mpf(10) ** -40 for z in exact)]
    exact.sort(key=float)
    return exact, sorted(numeric)


# ---------------------------------------------------------------------------
# families on two concentric icosahedra
# ---------------------------------------------------------------------------


def _det4(rows) -> Poly:
    """Determinant of a 4x4 matrix of polynomials (cofactor expansion)."""

    def det(m):
        if len(m) == 1:
            return m[0][0]
        total = Poly()
        for j in range(len(m)):
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            term = m[0][j] * det(minor)
            total = total + term if j % 2 == 0 else total - term
        return total

    return det(rows)


@dataclass(frozen=True)
class RealizationFamily:
    """A combinatorial template on two concentric icosahedra, valid for every ratio.

    Vertex ``i`` of the template is vertex ``i`` of
    ``standard_configuration("two-icosahedra", ratio)``; edges and faces are
    index tuples and do not depend on the ratio.
    """

    edges: Tuple[Tuple[int, int], ...]
    faces: Tuple[Tuple[int, ...], ...]
    target: str
    sample_ratio: FieldScalar

    @classmethod
    def from_polyhedron(cls, poly: SkeletalPolyhedron, config: VertexConfiguration, target: str):
        if config.name != "two-icosahedra":
            raise ValueError("families live on the two-icosahedra configuration")
        return cls(poly.edges, poly.faces, target, config.ratio)

    def config(self, ratio) -> VertexConfiguration:
        from .symmetry import standard_configuration

        return standard_configuration("two-icosahedra", ratio)

    def instantiate(self, ratio) -> SkeletalPolyhedron:
        return SkeletalPolyhedron(self.config(ratio).vertices, self.edges, self.faces, generate_h3())

    def symbolic_vertices(self) -> List[Tuple[Poly, Poly, Poly]]:
        """Vertex coordinates as polynomials in the ratio."""
        base = self.config(self.sample_ratio)
        out = []
        for i, p in enumerate(base.vertices):
            if base.orbit_of(i) == 0:
                out.append(tuple(Poly([x]) for x in p))
            else:
                inner = base.orbits[0][i - len(base.orbits[0])]
                out.append(tuple(Poly([ZERO, x]) for x in inner))
        return out

    def coplanarity_polynomials(self) -> List[Poly]:
        """Nonzero 4-point coplanarity determinants of one face per face orbit.

        All faces are coplanar exactly at the common roots of these.
        """
        sym = self.symbolic_vertices()
        poly = self.instantiate(self.sample_ratio)
        out = []
        for orb in face_orbits(poly):
            face = self.faces[orb[0]]
            for quad in combinations(face, 4):
                rows = [list(sym[v]) + [Poly([ONE])] for v in quad]
                d = _det4(rows)
                if d and d not in out:
                    out.append(d)
        return out


def faces_planar(poly: SkeletalPolyhedron) -> bool:
    return all(coplanar(poly.face_points(i)) for i in range(len(poly.faces)))


@dataclass(frozen=True)
class PlanarityAnalysis:
    ratios: Tuple[FieldScalar, ...]  # canonical ratios >= 1 with all faces planar
    always_planar: bool
    non_field_roots: Tuple[float, ...]  # informational: numeric roots outside Q(sqrt 5)
    polynomials: Tuple[Poly, ...]


def analyze_planarity(family: RealizationFamily) -> PlanarityAnalysis:
    """Ratios at which every face of the family is planar.

    The ratio and its reciprocal describe similar polyhedra (up to swapping
    the orbits), so the result is reported as the ratio of the larger to the
    smaller circumradius.
    """
    polys = family.coplanarity_polynomials()
    if not polys:
        return PlanarityAnalysis((), True, (), ())
    g = polys[0]
    for p in polys[1:]:
        g = g.gcd(p)
    ratios: List[FieldScalar] = []
    loose: List[float] = []
    if g.degree >= 1:
        exact, numeric = field_roots(g)
        for lam in exact:
            if lam.sign() <= 0 or lam == 1:
                continue
            # confirm on the actual polyhedron, every face
            if not faces_planar(family.instantiate(lam)):
                raise AssertionError(f"planarity root {lam} not confirmed")
            canon = lam if lam > 1 else lam.inverse()
            if canon not in ratios:
                ratios.append(canon)
        loose = [x for x in numeric if x > 0 and abs(x - 1) > 1e-12]
    ratios.sort(key=float)
    return PlanarityAnalysis(tuple(ratios), False, tuple(loose), tuple(polys))


def planarity_ratios(family: RealizationFamily) -> FrozenSet[FieldScalar]:
    return frozenset(analyze_planarity(family).ratios)


# ---------------------------------------------------------------------------
# the underlying solids
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SolidStructure:
    points: Tuple[Vec3, ...]
    edges: Tuple[Tuple[int, int], ...]
    facets: Tuple[Tuple[int, ...], ...]  # vertex cycles in boundary order


@lru_cache(maxsize=None)
def _solid_structure_cached(points: Tuple[Vec3, ...]) -> SolidStructure:
    n = len(points)
    d2 = {(i, j): norm2(sub(points[i], points[j])) for i in range(n) for j in range(i + 1, n)}
    shortest = min(d2.values())
    edges = tuple(sorted(e for e, d in d2.items() if d == shortest))
    adj: Dict[int, set] = {i: set() for i in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    facet_sets = set()
    for v in range(n):
        for u, w in combinations(sorted(adj[v]), 2):
            normal = cross(sub(points[u], points[v]), sub(points[w], points[v]))
            if not any(normal):
                continue
            h = dot(normal, points[v])
            signs = {(dot(normal, p) - h).sign() for p in points}
            if signs <= {0, 1} or signs <= {0, -1}:
                facet_sets.add(frozenset(i for i, p in enumerate(points) if dot(normal, p) == h))
    facets = []
    for fs in facet_sets:
        # walk the facet boundary along solid edges
        start = min(fs)
        cyc = [start]
        prev = None
        while True:
            nxt = min(x for x in adj[cyc[-1]] & fs if x != prev and (len(cyc) < 2 or x != cyc[-2]))
            if nxt == start:
                break
            prev = cyc[-1]
            cyc.append(nxt)
        facets.append(canonical_cycle(cyc))
    return SolidStructure(points, edges, tuple(sorted(facets, key=lambda f: (len(f), f))))


def solid_structure(config: VertexConfiguration) -> SolidStructure:
    """Edges and facets of the convex solid underlying ``config``."""
    return _solid_structure_cached(tuple(config.underlying_solid()))


@dataclass(frozen=True)
class FaceOrbitClass:
    orbit_size: int
    center: str  # "vertex", "edge", "face", "central" or "none"
    element_count: int  # number of solid elements of that kind
    element_size: Optional[int] = None  # gon-ness of the solid face, when center == "face"
    shape: Optional[str] = None  # "pentagram" / "pentagon" for faces on pentagons
    planar: Optional[bool] = None

    def to_dict(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if v is not None}


def classify_face_centers(poly: SkeletalPolyhedron, config: VertexConfiguration) -> List[FaceOrbitClass]:
    """Where the centroid of each face orbit points relative to the underlying solid."""
    solid = solid_structure(config)
    pts = solid.points
    mids = [tuple((pts[u][k] + pts[v][k]) * Fraction(1, 2) for k in range(3)) for u, v in solid.edges]
    centers = [centroid([pts[i] for i in f]) for f in solid.facets]
    out = []
    for orb in face_orbits(poly):
        kinds = set()
        for fi in orb:
            c = centroid(poly.face_points(fi))
            if not any(c):
                kinds.add(("central", 0, None, None))
                continue
            hit = None
            for p in pts:
                if parallel_same_direction(c, p):
                    hit = ("vertex", len(pts), None, None)
                    break
            if hit is None:
                for m in mids:
                    if parallel_same_direction(c, m):
                        hit = ("edge", len(solid.edges), None, None)
                        break
            if hit is None:
                for facet, fc in zip(solid.facets, centers):
                    if parallel_same_direction(c, fc):
                        count = sum(1 for f in solid.facets if len(f) == len(facet))
                        shape = None
                        if len(facet) == 5 and len(poly.faces[fi]) == 5:
                            own = {pts[i] for i in facet}
                            shape = "pentagram" if set(poly.face_points(fi)) == own else "pentagon"
                        hit = ("face", count, len(facet), shape)
                        break
            kinds.add(hit or ("none", 0, None, None))
        if len(kinds) != 1:
            raise AssertionError("face orbit has inconsistent centre classification")
        kind, count, size, shape = kinds.pop()
        planar = all(coplanar(poly.face_points(fi)) for fi in orb)
        out.append(FaceOrbitClass(len(orb), kind, count, size, shape, planar))
    return out


def edge_traversal_check(poly: SkeletalPolyhedron, config: VertexConfiguration) -> bool:
    """True iff every edge is a diagonal of some pentagonal facet of the underlying solid."""
    if config.name not in ("dodecahedron", "icosidodecahedron"):
        raise ValueError("edge traversal is defined for the dodecahedron and icosidodecahedron")
    solid = solid_structure(config)
    where = {p: i for i, p in enumerate(solid.points)}
    solid_edges = set(solid.edges)
    pentagons = [set(f) for f in solid.facets if len(f) == 5]
    for u, v in poly.edges:
        a, b = where.get(poly.vertices[u]), where.get(poly.vertices[v])
        if a is None or b is None:
            return False
        if (min(a, b), max(a, b)) in solid_edges:
            return False
        if not any(a in pent and b in pent for pent in pentagons):
            return False
    return True


def petrie_polyhedron(poly: SkeletalPolyhedron) -> SkeletalPolyhedron:
    """Same vertices and edges, faces replaced by the Petrie polygons."""
    fs: FlagSystem = poly.flag_system()
    pet = fs.petrie()
    vertex_at = {}
    for fi, face in enumerate(poly.faces):
        m = len(face)
        for pos in range(m):
            for side in (0, 1):
                vertex_at[len(vertex_at)] = face[(pos + side) % m]
    faces = []
    for orb in pet.faces():
        # walk the face: alternate s0' and s1 from one flag
        start = orb[0]
        cyc = []
        x = start
        while True:
            cyc.append(vertex_at[x])
            x = pet.s1[pet.s0[x]]
            if x == start:
                break
        faces.append(canonical_cycle(cyc))
    faces.sort()
    return SkeletalPolyhedron(poly.vertices, poly.edges, tuple(faces), poly.symmetry)
