"""End-to-end reproduction of the icosahedral realizations of the Gordan relatives."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .field import FieldScalar
from .flags import MAP_LABELS, FlagSystem, HexadMember, hexad
from .geometry import (
    FaceOrbitClass,
    RealizationFamily,
    analyze_planarity,
    classify_face_centers,
    edge_traversal_check,
    faces_planar,
    petrie_polyhedron,
)
from .presentation import DEFAULT_MAX_COSETS, build
from .realization import (
    DEFAULT_MAX_CYCLES,
    IndexTwoCertificate,
    SkeletalPolyhedron,
    family_key,
    index_two_certificate,
    orbit_census,
    search,
    validate,
)
from .symmetry import VertexConfiguration, standard_configuration

__all__ = [
    "GORDAN",
    "CensusRow",
    "Census",
    "describe",
    "gordan_census",
    "parse_symbol",
    "SCHEMA",
]

GORDAN = (5, 4, 6)
SCHEMA = "gordanmaps.census/1"

# report order: families first, then individual polyhedra
_FAMILY_ORDER = ["{4,5}_6", "{6,5}_4"]
_INDIVIDUAL_ORDER = ["{4,6}_5", "{5,6}_4", "{6,4}_5", "{5,4}_6"]


def parse_symbol(text: str) -> Tuple[int, int, int]:
    """``"{4,5}_6"`` (or ``"4,5,6"``) -> ``(4, 5, 6)``."""
    t = text.strip().replace("{", "").replace("}", "").replace("_", ",").replace(" ", "")
    parts = [x for x in t.split(",") if x]
    if len(parts) != 3 or not all(x.isdigit() for x in parts):
        raise ValueError(f"cannot read map symbol {text!r}; expected e.g. '{{4,5}}_6'")
    p, q, r = (int(x) for x in parts)
    return p, q, r


@dataclass
class CensusRow:
    symbol: str
    configuration: str
    kind: str  # "family" or "individual"
    polyhedron: SkeletalPolyhedron
    config: VertexConfiguration
    f_vector: Tuple[int, int, int]
    orbits: Tuple[int, int, int]
    map_label: Optional[str]
    orientable: bool
    genus: int
    certificate: IndexTwoCertificate
    face_centers: List[FaceOrbitClass]
    planar_faces: str
    planar_ratios: Tuple[FieldScalar, ...] = ()
    edge_traversal: Optional[bool] = None
    family: Optional[RealizationFamily] = field(default=None, repr=False)

    @property
    def vertex_orbits(self) -> int:
        return self.orbits[0]

    def to_dict(self) -> dict:
        d = {
            "type": self.symbol,
            "f_vector": list(self.f_vector),
            "vertex_orbits": self.orbits[0],
            "edge_orbits": self.orbits[1],
            "face_orbits": self.orbits[2],
            "map": self.map_label,
            "planar_faces": self.planar_faces,
            "kind": self.kind,
            "configuration": self.configuration,
            "orientable": self.orientable,
            "genus": self.genus,
            "index_two": self.certificate.summary(),
            "face_centers": [c.to_dict() for c in self.face_centers],
        }
        if self.config.ratio is not None:
            d["ratio"] = str(self.config.ratio)
            d["planar_at_ratio"] = faces_planar(self.polyhedron)
        if self.kind == "family":
            d["planar_ratios"] = [str(x) for x in self.planar_ratios]
        if self.edge_traversal is not None:
            d["edges_traverse_pentagons"] = self.edge_traversal
        return d


@dataclass
class Census:
    ratio: FieldScalar
    rows: List[CensusRow]
    petrie_pairs: List[Tuple[int, int]]  # row indices sharing vertices and edges

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "ratio": str(self.ratio),
            "rows": [r.to_dict() for r in self.rows],
            "petrie_pairs": [list(p) for p in self.petrie_pairs],
        }


def describe(
    poly: SkeletalPolyhedron,
    config: VertexConfiguration,
    symbol: str,
) -> CensusRow:
    """Validate one realization and collect everything reported about it."""
    inv = validate(poly)
    cert = index_two_certificate(poly)
    kind = "family" if config.name == "two-icosahedra" else "individual"
    p, q = inv.type
    label = MAP_LABELS.get((p, q, inv.petrie_length))
    fam = None
    ratios: Tuple[FieldScalar, ...] = ()
    traversal = None
    if kind == "family":
        fam = RealizationFamily.from_polyhedron(poly, config, symbol)
        ratios = analyze_planarity(fam).ratios
        planar = "Yes, for one polyhedron" if ratios else "No"
    else:
        planar = "Yes" if faces_planar(poly) else "No"
        traversal = edge_traversal_check(poly, config)
    return CensusRow(
        symbol=symbol,
        configuration=config.name,
        kind=kind,
        polyhedron=poly,
        config=config,
        f_vector=inv.f_vector,
        orbits=orbit_census(poly),
        map_label=label,
        orientable=inv.orientable,
        genus=inv.genus,
        certificate=cert,
        face_centers=classify_face_centers(poly, config),
        planar_faces=planar,
        planar_ratios=ratios,
        edge_traversal=traversal,
        family=fam,
    )


def _align_petrie_partners(found: Dict[str, List[SkeletalPolyhedron]], config) -> None:
    # choose, for each {6,5}_4 family, the orientation that is the geometric
    # Petrie dual of the {4,5}_6 realization on the same edges
    left, right = found.get("{4,5}_6", []), found.get("{6,5}_4", [])
    for i, s in enumerate(right):
        for t in left:
            if t.edges == s.edges:
                dual = petrie_polyhedron(t)
                if family_key(dual, config) == family_key(s, config):
                    right[i] = dual
                break


def gordan_census(
    ratio=FieldScalar(2),
    jobs: int = 1,
    max_cosets: int = DEFAULT_MAX_COSETS,
    max_cycles: int = DEFAULT_MAX_CYCLES,
) -> Census:
    """Search all three configurations for all six Petrie relatives of {5,4}_6."""
    relatives: List[HexadMember] = hexad(build(*GORDAN, max_cosets=max_cosets))
    configs = [
        standard_configuration("two-icosahedra", ratio),
        standard_configuration("dodecahedron"),
        standard_configuration("icosidodecahedron"),
    ]
    family_rows: List[CensusRow] = []
    individual_rows: List[CensusRow] = []
    for config in configs:
        found = {m.symbol: search(config, m.map, max_cycles=max_cycles, jobs=jobs) for m in relatives}
        if config.name == "two-icosahedra":
            _align_petrie_partners(found, config)
        for sym, polys in found.items():
            for poly in polys:
                row = describe(poly, config, sym)
                (family_rows if row.kind == "family" else individual_rows).append(row)

    def fam_key(r: CensusRow):
        order = _FAMILY_ORDER.index(r.symbol) if r.symbol in _FAMILY_ORDER else len(_FAMILY_ORDER)
        return (not r.planar_ratios, order, r.polyhedron.edges)

    def ind_key(r: CensusRow):
        order = _INDIVIDUAL_ORDER.index(r.symbol) if r.symbol in _INDIVIDUAL_ORDER else len(_INDIVIDUAL_ORDER)
        return (order, r.configuration, r.polyhedron.faces)

    rows = sorted(family_rows, key=fam_key) + sorted(individual_rows, key=ind_key)
    pairs = []
    for i, a in enumerate(rows):
        for j in range(i + 1, len(rows)):
            b = rows[j]
            pa, pb = a.polyhedron, b.polyhedron
            if pa.vertices == pb.vertices and pa.edges == pb.edges:
                pairs.append((i, j))
    return Census(FieldScalar._coerce(ratio), rows, pairs)
