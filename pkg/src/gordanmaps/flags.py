"""Maps on closed surfaces as flag systems.

A map with ``n`` flags is three fixed-point-free involutions ``s0, s1, s2``
on ``range(n)``: ``s0`` changes the vertex of a flag, ``s1`` the edge and
``s2`` the face.  Vertices, edges and faces are the orbits of
``<s1, s2>``, ``<s0, s2>`` and ``<s0, s1>``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import asdict, dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

__all__ = [
    "FlagSystem",
    "InvalidFlagSystem",
    "MapInvariants",
    "HexadMember",
    "hexad",
    "isomorphic",
    "MAP_LABELS",
    "type_label",
]

Perm = Tuple[int, ...]

# Census names of the Gordan relatives, keyed by (p, q, r).
MAP_LABELS: Dict[Tuple[int, int, int], str] = {
    (4, 5, 6): "R4.2",
    (5, 4, 6): "R4.2*",
    (6, 5, 4): "R9.16*",
    (5, 6, 4): "R9.16",
    (4, 6, 5): "N12.1",
    (6, 4, 5): "N12.1*",
}


def type_label(p, q, r) -> str:
    return f"{{{p},{q}}}_{r}"


class InvalidFlagSystem(ValueError):
    """The three permutations do not describe a map."""


def _orbits(gens: Sequence[Perm], n: int) -> Tuple[List[List[int]], List[int]]:
    label = [-1] * n
    orbits: List[List[int]] = []
    for start in range(n):
        if label[start] >= 0:
            continue
        k = len(orbits)
        label[start] = k
        orb = [start]
        stack = [start]
        while stack:
            x = stack.pop()
            for g in gens:
                y = g[x]
                if label[y] < 0:
                    label[y] = k
                    orb.append(y)
                    stack.append(y)
        orbits.append(sorted(orb))
    return orbits, label


def _compose(f: Perm, g: Perm) -> Perm:
    """``f`` after ``g``."""
    return tuple(f[x] for x in g)


@dataclass(frozen=True)
class MapInvariants:
    f_vector: Tuple[int, int, int]
    type: Optional[Tuple[int, int]]
    petrie_length: Optional[int]
    orientable: bool
    euler_characteristic: int
    genus: int
    flags: int
    aut_order: int
    regular: bool
    label: Optional[str] = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["f_vector"] = list(self.f_vector)
        d["type"] = list(self.type) if self.type else "non-equivelar"
        if self.type and self.petrie_length:
            d["symbol"] = type_label(*self.type, self.petrie_length)
        return d


class FlagSystem:
    """Immutable flag system; see the module docstring for conventions."""

    __slots__ = ("s", "_cache")

    def __init__(self, s0: Iterable[int], s1: Iterable[int], s2: Iterable[int], check: bool = True):
        self.s: Tuple[Perm, Perm, Perm] = (tuple(s0), tuple(s1), tuple(s2))
        self._cache: dict = {}
        if check:
            self._check()

    def _check(self):
        n = len(self.s[0])
        if n == 0:
            raise InvalidFlagSystem("empty flag system")
        for i, g in enumerate(self.s):
            if len(g) != n or sorted(g) != list(range(n)):
                raise InvalidFlagSystem(f"s{i} is not a permutation of {n} flags")
            for x in range(n):
                if g[x] == x:
                    raise InvalidFlagSystem(f"s{i} fixes flag {x}")
                if g[g[x]] != x:
                    raise InvalidFlagSystem(f"s{i} is not an involution")
        s0, _, s2 = self.s
        for x in range(n):
            if s0[s2[x]] != s2[s0[x]]:
                raise InvalidFlagSystem("s0 and s2 do not commute")
            if s0[s2[x]] == x:
                raise InvalidFlagSystem(f"s0*s2 fixes flag {x}")
        if len(_orbits(self.s, n)[0]) != 1:
            raise InvalidFlagSystem("flag system is not connected")

    @property
    def s0(self) -> Perm:
        return self.s[0]

    @property
    def s1(self) -> Perm:
        return self.s[1]

    @property
    def s2(self) -> Perm:
        return self.s[2]

    def __len__(self):
        return len(self.s[0])

    def __eq__(self, other):
        return isinstance(other, FlagSystem) and self.s == other.s

    def __hash__(self):
        return hash(self.s)

    def __repr__(self):
        return f"FlagSystem(flags={len(self)}, f_vector={self.f_vector})"

    # construction -----------------------------------------------------------

    @classmethod
    def from_faces(cls, faces: Sequence[Sequence[int]]) -> "FlagSystem":
        """Flag system of a polyhedral complex given by vertex cycles.

        Every edge must lie in exactly two faces.  Flags are ``(face,
        position, side)``: the edge from ``face[pos]`` to ``face[pos+1]``
        with the vertex at ``side`` (0 for the start, 1 for the end).
        """
        index = {}
        flags = []
        for fi, face in enumerate(faces):
            m = len(face)
            for pos in range(m):
                for side in (0, 1):
                    index[(fi, pos, side)] = len(flags)
                    flags.append((fi, pos, side))
        edge_sides: Dict[frozenset, List[Tuple[int, int]]] = {}
        for fi, face in enumerate(faces):
            m = len(face)
            for pos in range(m):
                e = frozenset((face[pos], face[(pos + 1) % m]))
                if len(e) != 2:
                    raise InvalidFlagSystem(f"face {fi} has a degenerate edge")
                edge_sides.setdefault(e, []).append((fi, pos))
        for e, occ in edge_sides.items():
            if len(occ) != 2:
                raise InvalidFlagSystem(f"edge {sorted(e)} lies in {len(occ)} faces")
        n = len(flags)
        s0, s1, s2 = [0] * n, [0] * n, [0] * n
        for k, (fi, pos, side) in enumerate(flags):
            face = faces[fi]
            m = len(face)
            s0[k] = index[(fi, pos, 1 - side)]
            # same vertex, other edge of the face at that vertex
            if side == 0:
                s1[k] = index[(fi, (pos - 1) % m, 1)]
            else:
                s1[k] = index[(fi, (pos + 1) % m, 0)]
            v = face[(pos + side) % m]
            e = frozenset((face[pos], face[(pos + 1) % m]))
            (f1, p1), (f2, p2) = edge_sides[e]
            ofi, opos = (f2, p2) if (f1, p1) == (fi, pos) else (f1, p1)
            other = faces[ofi]
            oside = 0 if other[opos] == v else 1
            s2[k] = index[(ofi, opos, oside)]
        return cls(s0, s1, s2)

    # cells ------------------------------------------------------------------

    def _cells(self, i: int, j: int):
        key = ("cells", i, j)
        if key not in self._cache:
            self._cache[key] = _orbits((self.s[i], self.s[j]), len(self))
        return self._cache[key]

    def vertices(self) -> List[List[int]]:
        return self._cells(1, 2)[0]

    def edges(self) -> List[List[int]]:
        return self._cells(0, 2)[0]

    def faces(self) -> List[List[int]]:
        return self._cells(0, 1)[0]

    def vertex_of(self) -> List[int]:
        return self._cells(1, 2)[1]

    def edge_of(self) -> List[int]:
        return self._cells(0, 2)[1]

    def face_of(self) -> List[int]:
        return self._cells(0, 1)[1]

    @property
    def f_vector(self) -> Tuple[int, int, int]:
        return (len(self.vertices()), len(self.edges()), len(self.faces()))

    def face_sizes(self) -> List[int]:
        return [len(f) // 2 for f in self.faces()]

    def vertex_degrees(self) -> List[int]:
        return [len(v) // 2 for v in self.vertices()]

    @property
    def type(self) -> Optional[Tuple[int, int]]:
        """``(p, q)`` if all faces are p-gons and all vertices q-valent, else None."""
        fs, vd = set(self.face_sizes()), set(self.vertex_degrees())
        if len(fs) == 1 and len(vd) == 1:
            return (fs.pop(), vd.pop())
        return None

    # operations -------------------------------------------------------------

    def dual(self) -> "FlagSystem":
        s0, s1, s2 = self.s
        return FlagSystem(s2, s1, s0, check=False)

    def petrie(self) -> "FlagSystem":
        """Petrie-dual: faces replaced by Petrie polygons (``s0 -> s0*s2``)."""
        s0, s1, s2 = self.s
        return FlagSystem(_compose(s0, s2), s1, s2, check=True)

    def petrie_length(self) -> Optional[int]:
        """Common length of the Petrie polygons, or None if they differ."""
        s0, s1, s2 = self.s
        orbs, _ = _orbits((_compose(s0, s2), s1), len(self))
        sizes = {len(o) // 2 for o in orbs}
        return sizes.pop() if len(sizes) == 1 else None

    # topology ---------------------------------------------------------------

    @property
    def euler_characteristic(self) -> int:
        f0, f1, f2 = self.f_vector
        return f0 - f1 + f2

    def is_orientable(self) -> bool:
        """True iff the flag graph is bipartite."""
        n = len(self)
        color = [-1] * n
        color[0] = 0
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for g in self.s:
                y = g[x]
                if color[y] < 0:
                    color[y] = 1 - color[x]
                    queue.append(y)
                elif color[y] == color[x]:
                    return False
        return True

    @property
    def genus(self) -> int:
        chi = self.euler_characteristic
        return (2 - chi) // 2 if self.is_orientable() else 2 - chi

    # automorphisms ----------------------------------------------------------

    def transport(self, other: "FlagSystem", a: int, b: int) -> Optional[List[int]]:
        """The unique map commuting with s0, s1, s2 sending flag ``a`` to ``b``.

        Returns the flag bijection as a list, or None if none exists.
        """
        n = len(self)
        if len(other) != n:
            return None
        phi = [-1] * n
        used = [False] * n
        phi[a] = b
        used[b] = True
        stack = [a]
        while stack:
            x = stack.pop()
            for g, h in zip(self.s, other.s):
                y, z = g[x], h[phi[x]]
                if phi[y] < 0:
                    if used[z]:
                        return None
                    phi[y] = z
                    used[z] = True
                    stack.append(y)
                elif phi[y] != z:
                    return None
        return phi

    def automorphisms(self) -> List[List[int]]:
        key = "aut"
        if key not in self._cache:
            self._cache[key] = [
                phi for b in range(len(self)) if (phi := self.transport(self, 0, b)) is not None
            ]
        return self._cache[key]

    @property
    def aut_order(self) -> int:
        return len(self.automorphisms())

    def is_regular(self) -> bool:
        return self.aut_order == len(self)

    def canonical_form(self) -> Tuple[Perm, Perm, Perm]:
        """Lexicographically least breadth-first relabelling over all start flags.

        Two flag systems are isomorphic iff their canonical forms agree.
        """
        key = "canon"
        if key in self._cache:
            return self._cache[key]
        n = len(self)
        best = None
        for start in range(n):
            new = [-1] * n
            order = [start]
            new[start] = 0
            i = 0
            while i < len(order):
                x = order[i]
                i += 1
                for g in self.s:
                    y = g[x]
                    if new[y] < 0:
                        new[y] = len(order)
                        order.append(y)
            form = tuple(tuple(new[g[x]] for x in order) for g in self.s)
            if best is None or form < best:
                best = form
        self._cache[key] = best
        return best

    def isomorphic(self, other: "FlagSystem") -> bool:
        if len(self) != len(other) or self.f_vector != other.f_vector:
            return False
        return any(self.transport(other, 0, b) is not None for b in range(len(other)))

    def invariants(self) -> MapInvariants:
        t = self.type
        r = self.petrie_length()
        label = MAP_LABELS.get((t[0], t[1], r)) if t and r else None
        return MapInvariants(
            f_vector=self.f_vector,
            type=t,
            petrie_length=r,
            orientable=self.is_orientable(),
            euler_characteristic=self.euler_characteristic,
            genus=self.genus,
            flags=len(self),
            aut_order=self.aut_order,
            regular=self.is_regular(),
            label=label,
        )


def isomorphic(m1: FlagSystem, m2: FlagSystem) -> bool:
    return m1.isomorphic(m2)


@dataclass(frozen=True)
class HexadMember:
    word: str  # sequence of "d" (dual) and "P" (petrie) applied to the seed, left to right
    map: FlagSystem
    invariants: MapInvariants

    @property
    def symbol(self) -> str:
        inv = self.invariants
        if inv.type is None or inv.petrie_length is None:
            return "non-equivelar"
        return type_label(*inv.type, inv.petrie_length)


def hexad(seed: FlagSystem) -> List[HexadMember]:
    """Petrie relatives of ``seed``: closure under dual and Petrie-dual, up to isomorphism."""
    found: List[Tuple[str, FlagSystem]] = [("", seed)]
    queue = deque(found)
    while queue:
        word, m = queue.popleft()
        for op, img in (("d", m.dual()), ("P", m.petrie())):
            if not any(img.isomorphic(other) for _, other in found):
                found.append((word + op, img))
                queue.append((word + op, img))
    return [HexadMember(w, m, m.invariants()) for w, m in found]
