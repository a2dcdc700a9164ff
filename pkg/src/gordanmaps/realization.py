"""Skeletal polyhedra with full icosahedral symmetry.

The search takes a vertex configuration and a target regular map and
returns every skeletal polyhedron on those vertices whose edges form one
symmetry orbit, whose faces are unions of orbits of p-cycles covering each
edge exactly twice, and whose underlying map is isomorphic to the target.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .field import Vec3, coplanar, mat_mul, scale
from .flags import FlagSystem, InvalidFlagSystem, MapInvariants
from .symmetry import SymmetryGroup, VertexConfiguration, generate_h3, point_key

__all__ = [
    "SkeletalPolyhedron",
    "PolyhedronError",
    "DegenerateGeometryError",
    "EdgeIncidenceError",
    "DisconnectedGraphError",
    "DisconnectedVertexFigureError",
    "SymmetryBreakageError",
    "NotIndexTwoError",
    "CycleLimitExceeded",
    "IndexTwoCertificate",
    "validate",
    "search",
    "index_two_certificate",
    "orbit_census",
    "canonical_cycle",
    "similarity_key",
    "family_key",
    "DEFAULT_MAX_CYCLES",
]

log = logging.getLogger(__name__)

DEFAULT_MAX_CYCLES = 200_000


class PolyhedronError(ValueError):
    """A skeletal polyhedron axiom is violated."""


class DegenerateGeometryError(PolyhedronError):
    pass


class EdgeIncidenceError(PolyhedronError):
    """Some edge does not lie in exactly two faces."""


class DisconnectedGraphError(PolyhedronError):
    pass


class DisconnectedVertexFigureError(PolyhedronError):
    pass


class SymmetryBreakageError(PolyhedronError):
    """A declared symmetry does not preserve vertices, edges or faces."""


class NotIndexTwoError(PolyhedronError):
    pass


class CycleLimitExceeded(RuntimeError):
    pass


def canonical_cycle(cycle: Sequence) -> tuple:
    """Rotate/reflect a cyclic sequence to its least representative."""
    n = len(cycle)
    best = None
    for seq in (list(cycle), list(reversed(cycle))):
        for k in range(n):
            cand = tuple(seq[k:] + seq[:k])
            if best is None or cand < best:
                best = cand
    return best


def _edge(u: int, v: int) -> Tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SkeletalPolyhedron:
    """Exact vertices, edges (index pairs), faces (index cycles) and a symmetry group."""

    vertices: Tuple[Vec3, ...]
    edges: Tuple[Tuple[int, int], ...]
    faces: Tuple[Tuple[int, ...], ...]
    symmetry: Optional[SymmetryGroup] = None
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    @classmethod
    def from_faces(cls, vertices, faces, symmetry=None) -> "SkeletalPolyhedron":
        edges = sorted({_edge(f[i], f[(i + 1) % len(f)]) for f in faces for i in range(len(f))})
        return cls(tuple(vertices), tuple(edges), tuple(tuple(f) for f in faces), symmetry)

    @property
    def f_vector(self) -> Tuple[int, int, int]:
        return (len(self.vertices), len(self.edges), len(self.faces))

    def flag_system(self) -> FlagSystem:
        if "flags" not in self._cache:
            self._cache["flags"] = FlagSystem.from_faces(self.faces)
        return self._cache["flags"]

    def vertex_permutations(self) -> List[Tuple[int, ...]]:
        """Vertex permutation of every symmetry element, in group order."""
        if "vperms" not in self._cache:
            if self.symmetry is None:
                raise ValueError("polyhedron has no symmetry group attached")
            try:
                self._cache["vperms"] = self.symmetry.point_permutations(self.vertices)
            except ValueError as exc:
                raise SymmetryBreakageError(str(exc)) from None
        return self._cache["vperms"]

    def face_points(self, i: int) -> List[Vec3]:
        return [self.vertices[v] for v in self.faces[i]]


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def _connected(nodes, adjacency) -> bool:
    nodes = list(nodes)
    if not nodes:
        return True
    seen = {nodes[0]}
    stack = [nodes[0]]
    while stack:
        x = stack.pop()
        for y in adjacency.get(x, ()):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(nodes)


def validate(poly: SkeletalPolyhedron) -> MapInvariants:
    """Check every skeletal polyhedron axiom and return the map invariants.

    Each violation raises its own :class:`PolyhedronError` subclass.
    """
    n = len(poly.vertices)
    if len(set(poly.vertices)) != n:
        raise DegenerateGeometryError("coincident vertices")
    edge_set = set()
    for u, v in poly.edges:
        if u == v or not (0 <= u < n and 0 <= v < n):
            raise DegenerateGeometryError(f"bad edge ({u}, {v})")
        edge_set.add(_edge(u, v))
    if len(edge_set) != len(poly.edges):
        raise DegenerateGeometryError("repeated edge")

    count: Dict[Tuple[int, int], int] = {e: 0 for e in edge_set}
    for fi, face in enumerate(poly.faces):
        if len(face) < 2 or len(set(face)) != len(face):
            raise DegenerateGeometryError(f"face {fi} is not a polygon")
        for i in range(len(face)):
            e = _edge(face[i], face[(i + 1) % len(face)])
            if e not in count:
                raise EdgeIncidenceError(f"face {fi} uses {e}, which is not an edge")
            count[e] += 1
    bad = sorted(e for e, c in count.items() if c != 2)
    if bad:
        raise EdgeIncidenceError(
            f"{len(bad)} edges do not lie in exactly two faces, e.g. {bad[0]} in {count[bad[0]]}"
        )

    adj: Dict[int, set] = {i: set() for i in range(n)}
    for u, v in edge_set:
        adj[u].add(v)
        adj[v].add(u)
    if not _connected(range(n), adj):
        raise DisconnectedGraphError("edge graph is not connected")

    figure: Dict[int, Dict[int, set]] = {i: {} for i in range(n)}
    for face in poly.faces:
        m = len(face)
        for i in range(m):
            u, v, w = face[i - 1], face[i], face[(i + 1) % m]
            fig = figure[v]
            fig.setdefault(u, set()).add(w)
            fig.setdefault(w, set()).add(u)
    for v in range(n):
        if adj[v] and not _connected(adj[v], figure[v]):
            raise DisconnectedVertexFigureError(f"vertex-figure at vertex {v} is not connected")

    if poly.symmetry is not None:
        _check_symmetry(poly, edge_set)

    try:
        return poly.flag_system().invariants()
    except InvalidFlagSystem as exc:
        raise PolyhedronError(f"incidences do not form a map: {exc}") from None


def _check_symmetry(poly: SkeletalPolyhedron, edge_set):
    face_set = {canonical_cycle(f) for f in poly.faces}
    for perm in poly.vertex_permutations():
        for u, v in edge_set:
            if _edge(perm[u], perm[v]) not in edge_set:
                raise SymmetryBreakageError("a symmetry does not preserve the edges")
        for f in poly.faces:
            if canonical_cycle([perm[v] for v in f]) not in face_set:
                raise SymmetryBreakageError("a symmetry does not preserve the faces")


# ---------------------------------------------------------------------------
# orbits under the symmetry group
# ---------------------------------------------------------------------------


def _orbit_partition(items, act):
    """Partition ``items`` (hashable) into orbits; ``act(item)`` lists all images."""
    seen = set()
    orbits = []
    for x in items:
        if x in seen:
            continue
        orb = set(act(x))
        seen |= orb
        orbits.append(orb)
    return orbits


def orbit_census(poly: SkeletalPolyhedron) -> Tuple[int, int, int]:
    """Numbers of vertex, edge and face orbits under the symmetry group."""
    perms = poly.vertex_permutations()
    vo = _orbit_partition(range(len(poly.vertices)), lambda v: (p[v] for p in perms))
    eo = _orbit_partition(poly.edges, lambda e: (_edge(p[e[0]], p[e[1]]) for p in perms))
    fo = _orbit_partition(
        [canonical_cycle(f) for f in poly.faces],
        lambda f: (canonical_cycle([p[v] for v in f]) for p in perms),
    )
    return (len(vo), len(eo), len(fo))


def face_orbits(poly: SkeletalPolyhedron) -> List[List[int]]:
    """Face indices grouped by symmetry orbit, in order of first appearance."""
    perms = poly.vertex_permutations()
    index = {canonical_cycle(f): i for i, f in enumerate(poly.faces)}
    parts = _orbit_partition(
        list(index),
        lambda f: (canonical_cycle([p[v] for v in f]) for p in perms),
    )
    return [sorted(index[f] for f in part) for part in parts]


# ---------------------------------------------------------------------------
# index two
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IndexTwoCertificate:
    aut_order: int
    symmetry_order: int
    # witness[k] is the flag permutation induced by symmetry element k
    witness: Tuple[Tuple[int, ...], ...]

    @property
    def index(self) -> int:
        return self.aut_order // self.symmetry_order

    def summary(self) -> dict:
        return {
            "aut_order": self.aut_order,
            "symmetry_order": self.symmetry_order,
            "index": self.index,
            "faithful": len(set(self.witness)) == len(self.witness),
        }


def _flag_table(poly: SkeletalPolyhedron):
    # flag numbering matches FlagSystem.from_faces
    flags = []
    for fi, face in enumerate(poly.faces):
        m = len(face)
        for pos in range(m):
            for side in (0, 1):
                flags.append((face[(pos + side) % m], _edge(face[pos], face[(pos + 1) % m]), fi))
    return flags


def index_two_certificate(poly: SkeletalPolyhedron) -> IndexTwoCertificate:
    """Embed the symmetry group into the map automorphisms and check index 2."""
    fs = poly.flag_system()
    if not fs.is_regular():
        raise NotIndexTwoError("underlying map is not regular")
    group = poly.symmetry
    perms = poly.vertex_permutations()
    flags = _flag_table(poly)
    face_index = {canonical_cycle(f): i for i, f in enumerate(poly.faces)}
    where = {fl: k for k, fl in enumerate(flags)}
    witness = []
    for p in perms:
        img = []
        for v, (a, b), fi in flags:
            g_face = face_index.get(canonical_cycle([p[x] for x in poly.faces[fi]]))
            k = where.get((p[v], _edge(p[a], p[b]), g_face))
            if g_face is None or k is None:
                raise SymmetryBreakageError("a symmetry does not act on the flags")
            img.append(k)
        witness.append(tuple(img))
    for phi in witness:
        for s in fs.s:
            if any(phi[s[x]] != s[phi[x]] for x in range(len(fs))):
                raise SymmetryBreakageError("induced flag map is not a map automorphism")
    if len(set(witness)) != len(witness):
        raise NotIndexTwoError("symmetry group does not act faithfully on the flags")
    # homomorphism: witness(g h) = witness(g) o witness(h), checked on generators
    gens = group.generators or group.elements
    for k, g in enumerate(group.elements):
        for h in gens:
            gh = witness[group.index(mat_mul(g, h))]
            wg, wh = witness[k], witness[group.index(h)]
            if any(gh[x] != wg[wh[x]] for x in range(len(fs))):
                raise NotIndexTwoError("induced map is not a homomorphism")
    aut, sym = fs.aut_order, group.order
    if aut != 2 * sym:
        raise NotIndexTwoError(f"symmetry group has index {Fraction(aut, sym)} in the automorphism group, not 2")
    return IndexTwoCertificate(aut, sym, tuple(witness))


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------


def _simple_cycles(adj: List[List[int]], p: int, limit: int) -> List[Tuple[int, ...]]:
    """All simple p-cycles, each once, as canonical tuples."""
    out = []
    n = len(adj)
    for s in range(n):
        path = [s]
        on_path = {s}

        def extend():
            v = path[-1]
            if len(path) == p:
                if s in adj[v] and path[1] < path[-1]:
                    out.append(tuple(path))
                    if len(out) > limit:
                        raise CycleLimitExceeded(
                            f"more than {limit} {p}-cycles; raise max_cycles to continue"
                        )
                return
            for w in adj[v]:
                if w > s and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    extend()
                    path.pop()
                    on_path.discard(w)

        extend()
    return out


def _cycle_orbits(cycles, perms):
    seen = set()
    orbits = []
    for c in cycles:
        if c in seen:
            continue
        orb = {canonical_cycle([p[v] for v in c]) for p in perms}
        seen |= orb
        orbits.append(sorted(orb))
    return orbits


def _exact_double_covers(orbits, edges, p):
    """Unions of cycle orbits covering every edge exactly twice."""
    edge_idx = {e: i for i, e in enumerate(edges)}
    cover = []
    for orb in orbits:
        c = [0] * len(edges)
        for cyc in orb:
            for i in range(p):
                c[edge_idx[_edge(cyc[i], cyc[(i + 1) % p])]] += 1
        cover.append(c)
    found = []

    def rec(start, chosen, total):
        if all(t == 2 for t in total):
            found.append(list(chosen))
            return
        for k in range(start, len(orbits)):
            new = [a + b for a, b in zip(total, cover[k])]
            if max(new) <= 2:
                chosen.append(k)
                rec(k + 1, chosen, new)
                chosen.pop()

    rec(0, [], [0] * len(edges))
    return found


def similarity_key(poly: SkeletalPolyhedron):
    """Key that agrees for similar polyhedra (same face structure up to scale).

    Each vertex orbit in turn is normalised to have largest coordinate 1; the
    smallest resulting sorted face list is the key.
    """
    perms = poly.vertex_permutations() if poly.symmetry is not None else [tuple(range(len(poly.vertices)))]
    vorbits = _orbit_partition(range(len(poly.vertices)), lambda v: (p[v] for p in perms))
    best = None
    for orb in vorbits:
        m = max(abs(x) for v in orb for x in poly.vertices[v])
        s = m.inverse()
        keys = [point_key(scale(s, q)) for q in poly.vertices]
        faces = sorted(canonical_cycle([keys[v] for v in f]) for f in poly.faces)
        cand = tuple(faces)
        if best is None or cand < best:
            best = cand
    return best


def _all_faces_planar(poly: SkeletalPolyhedron) -> bool:
    return all(coplanar(poly.face_points(i)) for i in range(len(poly.faces)))


def family_key(poly: SkeletalPolyhedron, config: VertexConfiguration):
    """Similarity key that also identifies ratio ``lam`` with ``1/lam``.

    On two concentric orbits, the polyhedron at ratio ``lam`` is similar to
    the one obtained by swapping the roles of the orbits at ratio ``1/lam``,
    so both instantiations of the index template belong to one family.
    """
    key = similarity_key(poly)
    if config.ratio is None:
        return key
    other = config.with_ratio(config.ratio.inverse())
    swapped = SkeletalPolyhedron(other.vertices, poly.edges, poly.faces, poly.symmetry)
    return min(key, similarity_key(swapped))


def _candidate_edge_orbits(n: int, perms) -> List[List[Tuple[int, int]]]:
    """Orbits of vertex pairs; each orbit led by its lexicographically least pair."""
    return [
        sorted(orb)
        for orb in _orbit_partition(
            combinations(range(n), 2), lambda e: (_edge(p[e[0]], p[e[1]]) for p in perms)
        )
    ]


def _search_edge_orbit(args):
    config, target_s, edges, max_cycles = args
    target = FlagSystem(*target_s, check=False)
    p, q = target.type
    group = generate_h3()
    verts = config.vertices
    n = len(verts)
    perms = group.point_permutations(verts)
    adj: List[List[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    for a in adj:
        a.sort()
    cycles = _simple_cycles(adj, p, max_cycles)
    orbits = _cycle_orbits(cycles, perms)
    log.debug("%s: edge orbit %s, %d %d-cycles in %d orbits", config.name, edges[0], len(cycles), p, len(orbits))
    out = []
    for choice in _exact_double_covers(orbits, edges, p):
        faces = sorted(c for k in choice for c in orbits[k])
        poly = SkeletalPolyhedron(tuple(verts), tuple(edges), tuple(faces), group)
        try:
            inv = validate(poly)
        except PolyhedronError as exc:
            log.debug("rejected candidate: %s", exc)
            continue
        if inv.f_vector != target.f_vector or inv.type != (p, q):
            continue
        if poly.flag_system().isomorphic(target):
            out.append(poly)
    return out


def search(
    config: VertexConfiguration,
    target: FlagSystem,
    max_cycles: int = DEFAULT_MAX_CYCLES,
    jobs: int = 1,
) -> List[SkeletalPolyhedron]:
    """All icosahedral skeletal polyhedra on ``config`` realizing ``target``.

    Results are distinct up to similarity (with ``lam ~ 1/lam`` on two
    orbits, see :func:`family_key`) and sorted deterministically.  An
    empty list means no realization exists on this configuration.
    """
    t = target.type
    if t is None:
        raise ValueError("target map must be equivelar")
    _, q = t
    group = generate_h3()
    verts = config.vertices
    n = len(verts)
    f1 = len(target) // 4
    perms = group.point_permutations(verts)

    tasks = []
    for orb in _candidate_edge_orbits(n, perms):
        if len(orb) != f1:
            continue
        deg = [0] * n
        for u, v in orb:
            deg[u] += 1
            deg[v] += 1
        if any(d != q for d in deg):
            continue
        tasks.append((config, target.s, orb, max_cycles))

    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            batches = list(ex.map(_search_edge_orbit, tasks))
    else:
        batches = [_search_edge_orbit(task) for task in tasks]

    results: Dict[tuple, SkeletalPolyhedron] = {}
    for batch in batches:
        for poly in batch:
            key = family_key(poly, config)
            # within a family prefer the planar-faced representative, if any
            if key not in results or (_all_faces_planar(poly) and not _all_faces_planar(results[key])):
                results[key] = poly
    return [results[k] for k in sorted(results)]
