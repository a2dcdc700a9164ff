"""Coset enumeration for the groups of the maps {p,q}_r.

The group is generated by three involutions ``rho0, rho1, rho2`` subject to
``(rho0 rho1)^p = (rho1 rho2)^q = (rho0 rho2)^2 = (rho0 rho1 rho2)^r = 1``.
Enumerating cosets of the trivial subgroup gives the regular action of the
group on itself, which is read off directly as a flag system.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from .flags import FlagSystem

__all__ = [
    "Presentation",
    "CosetTable",
    "EnumerationOverflow",
    "PresentationCollapse",
    "enumerate_cosets",
    "to_flag_system",
    "build",
    "petrie_length",
    "DEFAULT_MAX_COSETS",
]

DEFAULT_MAX_COSETS = 100_000
NGENS = 3


class EnumerationOverflow(RuntimeError):
    """Coset enumeration needed more cosets than allowed."""


class PresentationCollapse(ValueError):
    """The quotient is too small to define a map."""


@dataclass(frozen=True)
class Presentation:
    p: int
    q: int
    r: int

    def __post_init__(self):
        for name in ("p", "q", "r"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 2:
                raise ValueError(f"{name} must be an integer >= 2, got {v!r}")

    @property
    def relators(self) -> List[Tuple[int, ...]]:
        """Relators as words in generator indices; ``rho_i^2`` is implicit."""
        return [
            (0, 1) * self.p,
            (1, 2) * self.q,
            (0, 2) * 2,
            (0, 1, 2) * self.r,
        ]


@dataclass(frozen=True)
class CosetTable:
    """Complete coset table: ``rows[c][i]`` is coset ``c`` times ``rho_i``."""

    rows: Tuple[Tuple[int, int, int], ...]
    presentation: Presentation

    def __len__(self):
        return len(self.rows)

    def column(self, i: int) -> Tuple[int, ...]:
        return tuple(row[i] for row in self.rows)


class _Enumerator:
    # HLT strategy with coincidence handling; every generator is its own inverse.

    def __init__(self, relators, max_cosets):
        self.relators = relators
        self.max_cosets = max_cosets
        self.table: List[List[int]] = []
        self.parent: List[int] = []
        self.live = 0

    def new_coset(self) -> int:
        if self.live >= self.max_cosets:
            raise EnumerationOverflow(f"coset table exceeded {self.max_cosets} cosets")
        c = len(self.table)
        self.table.append([-1] * NGENS)
        self.parent.append(c)
        self.live += 1
        return c

    def define(self, c: int, x: int):
        d = self.new_coset()
        self.table[c][x] = d
        self.table[d][x] = c

    def rep(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def merge(self, a: int, b: int, queue: List[int]):
        a, b = self.rep(a), self.rep(b)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            self.parent[hi] = lo
            self.live -= 1
            queue.append(hi)

    def coincidence(self, a: int, b: int):
        queue: List[int] = []
        self.merge(a, b, queue)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            for x in range(NGENS):
                d = self.table[g][x]
                if d < 0:
                    continue
                self.table[d][x] = -1
                m, n = self.rep(g), self.rep(d)
                if self.table[m][x] >= 0:
                    self.merge(n, self.table[m][x], queue)
                elif self.table[n][x] >= 0:
                    self.merge(m, self.table[n][x], queue)
                else:
                    self.table[m][x] = n
                    self.table[n][x] = m

    def scan_and_fill(self, c: int, word):
        t = self.table
        f, b = c, c
        i, j = 0, len(word) - 1
        while True:
            while i <= j and t[f][word[i]] >= 0:
                f = t[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and t[b][word[j]] >= 0:
                b = t[b][word[j]]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                t[f][word[i]] = b
                t[b][word[i]] = f
                return
            self.define(f, word[i])

    def run(self) -> List[List[int]]:
        self.new_coset()
        c = 0
        while c < len(self.table):
            if self.parent[c] == c:
                for w in self.relators:
                    self.scan_and_fill(c, w)
                    if self.parent[c] != c:
                        break
                if self.parent[c] == c:
                    for x in range(NGENS):
                        if self.table[c][x] < 0:
                            self.define(c, x)
            c += 1
        return self._standardize()

    def _standardize(self) -> List[List[int]]:
        # breadth-first renumbering from the identity coset
        t = self.table
        new = {0: 0}
        order = [0]
        k = 0
        while k < len(order):
            c = order[k]
            k += 1
            for x in range(NGENS):
                d = self.rep(t[c][x])
                if d not in new:
                    new[d] = len(order)
                    order.append(d)
        return [[new[self.rep(t[c][x])] for x in range(NGENS)] for c in order]


def enumerate_cosets(pres: Presentation, max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    """Regular coset table of the group of ``pres``.

    Raises :class:`EnumerationOverflow` if more than ``max_cosets`` live
    cosets are needed at any point.
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be >= 1")
    rows = _Enumerator(pres.relators, max_cosets).run()
    # every relator must close up at every coset
    for c in range(len(rows)):
        for w in pres.relators:
            d = c
            for x in w:
                d = rows[d][x]
            if d != c:
                raise AssertionError("coset table does not satisfy the relators")
    return CosetTable(tuple(tuple(r) for r in rows), pres)


def to_flag_system(table: CosetTable) -> FlagSystem:
    """Flags are group elements; ``s_i`` is right multiplication by ``rho_i``."""
    n = len(table)
    cols = [table.column(i) for i in range(NGENS)]
    for i, col in enumerate(cols):
        if any(col[c] == c for c in range(n)):
            raise PresentationCollapse(f"presentation collapses: rho{i} acts trivially")
    s02 = [cols[0][cols[2][c]] for c in range(n)]
    if any(s02[c] == c for c in range(n)):
        raise PresentationCollapse("presentation collapses: rho0 rho2 acts trivially")
    return FlagSystem(*cols)


def build(p: int, q: int, r: int, max_cosets: int = DEFAULT_MAX_COSETS) -> FlagSystem:
    """The regular map ``{p,q}_r`` as a flag system."""
    return to_flag_system(enumerate_cosets(Presentation(p, q, r), max_cosets))


def petrie_length(m: FlagSystem) -> int:
    """Length of the Petrie polygons of a regular map."""
    r = m.petrie_length()
    if r is None:
        raise ValueError("Petrie polygons have different lengths")
    return r
