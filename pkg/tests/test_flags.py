import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CUBE_FACES, OCTAHEDRON_FACES, TETRAHEDRON_FACES
from gordanmaps.flags import FlagSystem, InvalidFlagSystem, hexad

SIX = {"{5,4}_6", "{4,5}_6", "{6,4}_5", "{4,6}_5", "{6,5}_4", "{5,6}_4"}


def random_map(seed: int, edges: int) -> FlagSystem:
    """Random connected map: 4 flags per edge, random fixed-point-free s1."""
    rng = random.Random(seed)
    n = 4 * edges
    s0 = [x ^ 1 for x in range(n)]
    s2 = [x ^ 2 for x in range(n)]
    while True:
        perm = list(range(n))
        rng.shuffle(perm)
        s1 = [0] * n
        for a, b in zip(perm[::2], perm[1::2]):
            s1[a], s1[b] = b, a
        try:
            return FlagSystem(s0, s1, s2)
        except InvalidFlagSystem:  # disconnected draw
            continue


maps = st.builds(random_map, st.integers(0, 10**6), st.integers(1, 12))


def _brute_cells(faces):
    # oracle straight from the face list
    verts = {v for f in faces for v in f}
    edges = {frozenset((f[i], f[(i + 1) % len(f)])) for f in faces for i in range(len(f))}
    return len(verts), len(edges), len(faces)


def test_tetrahedron_counts(tetrahedron):
    assert len(tetrahedron) == 24
    assert tetrahedron.f_vector == (4, 6, 4) == _brute_cells(TETRAHEDRON_FACES)
    assert tetrahedron.type == (3, 3)


def test_gordan_f_vectors(gordan):
    assert gordan.f_vector == (30, 60, 24)
    assert gordan.dual().f_vector == (24, 60, 30)


def test_dual_of_gordan_is_45_6(gordan, relatives):
    assert gordan.dual().isomorphic(relatives["{4,5}_6"].map)
    assert gordan.dual().invariants().type == (4, 5)


def test_tetrahedron_self_dual(tetrahedron):
    assert tetrahedron.dual().isomorphic(tetrahedron)
    assert tetrahedron.dual().canonical_form() == tetrahedron.canonical_form()


def test_cube_octahedron_duality(cube):
    octa = FlagSystem.from_faces(OCTAHEDRON_FACES)
    assert cube.dual().isomorphic(octa)
    assert not cube.isomorphic(octa)


def _hand_petrie_polygons():
    # Petrie polygons of the cube traced by hand on CUBE_FACES' labelling:
    # zig-zag walks using two consecutive edges of a face, never three
    return [
        (0, 1, 5, 7, 6, 2),
        (0, 1, 3, 7, 6, 4),
        (0, 2, 3, 7, 5, 4),
        (1, 3, 2, 6, 4, 5),
    ]


def test_cube_petrie_dual(cube):
    pd = cube.petrie()
    assert pd.f_vector == (8, 12, 4)
    assert set(pd.face_sizes()) == {6}
    assert pd.isomorphic(FlagSystem.from_faces(_hand_petrie_polygons()))
    assert cube.petrie_length() == 6


def test_petrie_of_gordan(gordan, relatives):
    p = gordan.petrie()
    assert p.isomorphic(relatives["{6,4}_5"].map)
    inv = p.invariants()
    assert (inv.type, inv.petrie_length) == ((6, 4), 5)


@pytest.mark.parametrize(
    "symbol, orientable, genus",
    [
        ("{5,4}_6", True, 4),
        ("{4,5}_6", True, 4),
        ("{4,6}_5", False, 12),
        ("{6,4}_5", False, 12),
        ("{6,5}_4", True, 9),
        ("{5,6}_4", True, 9),
    ],
)
def test_relative_topology(relatives, symbol, orientable, genus):
    inv = relatives[symbol].invariants
    assert inv.orientable is orientable
    assert inv.genus == genus


def test_relatives_regular(relatives):
    assert set(relatives) == SIX
    for m in relatives.values():
        assert m.invariants.regular
        assert m.invariants.aut_order == 240
        assert m.invariants.flags == 240 == 4 * m.invariants.f_vector[1]


def test_relatives_pairwise_non_isomorphic(relatives):
    ms = list(relatives.values())
    for i, a in enumerate(ms):
        for b in ms[i + 1:]:
            assert not a.map.isomorphic(b.map)
            assert a.map.canonical_form() != b.map.canonical_form()


def test_gordan_vs_dual_not_isomorphic(gordan):
    assert gordan.isomorphic(gordan)
    assert not gordan.isomorphic(gordan.dual())


def test_words_land_in_hexad(gordan, relatives):
    # every word of length <= 5 in d and P stays inside the six
    forms = {m.map.canonical_form() for m in relatives.values()}
    frontier = [gordan]
    for _ in range(5):
        frontier = [g for m in frontier for g in (m.dual(), m.petrie())]
        assert {m.canonical_form() for m in frontier} <= forms
    # P, then d, then P: {5,4}_6 -> {6,4}_5 -> {4,6}_5 -> {5,6}_4
    assert gordan.petrie().dual().petrie().isomorphic(relatives["{5,6}_4"].map)


def test_subdivided_face_not_regular(cube):
    split = [f for f in CUBE_FACES[1:]] + [(0, 1, 3), (0, 3, 2)]
    m = FlagSystem.from_faces(split)
    assert cube.is_regular() and cube.aut_order == 48
    assert not m.is_regular()
    assert m.type is None


def test_tetrahedron_hexad_collapses(tetrahedron):
    members = hexad(tetrahedron)
    assert len(members) < 6
    forms = [m.map.canonical_form() for m in members]
    assert len(set(forms)) == len(forms)


def test_invalid_systems_rejected():
    with pytest.raises(InvalidFlagSystem):
        FlagSystem([1, 0, 3, 2], [0, 1, 2, 3], [2, 3, 0, 1])  # fixed points
    with pytest.raises(InvalidFlagSystem):
        FlagSystem([1, 0], [1, 0], [1, 0])  # s0*s2 has fixed points
    with pytest.raises(InvalidFlagSystem):
        FlagSystem.from_faces([(0, 1, 2)])  # edges on one face


@settings(max_examples=100, deadline=None)
@given(maps)
def test_involution_laws(m):
    assert m.dual().dual().s == m.s
    assert m.petrie().petrie().s == m.s


@settings(max_examples=60, deadline=None)
@given(maps)
def test_petrie_keeps_vertices_and_edges(m):
    p = m.petrie()
    assert p.vertices() == m.vertices()
    assert p.edges() == m.edges()
    assert len(p) == 4 * p.f_vector[1]


@settings(max_examples=60, deadline=None)
@given(maps, st.integers(0, 10**6))
def test_isomorphism_agrees_with_canonical_form(m, seed):
    rng = random.Random(seed)
    n = len(m)
    sigma = list(range(n))
    rng.shuffle(sigma)
    inv = [0] * n
    for i, x in enumerate(sigma):
        inv[x] = i
    relabelled = FlagSystem(*[[sigma[g[inv[x]]] for x in range(n)] for g in m.s])
    assert relabelled.isomorphic(m)
    assert relabelled.canonical_form() == m.canonical_form()
    other = random_map(seed + 1, n // 4)
    assert other.isomorphic(m) == (other.canonical_form() == m.canonical_form())


@settings(max_examples=60, deadline=None)
@given(maps)
def test_euler_and_genus(m):
    f0, f1, f2 = m.f_vector
    chi = m.euler_characteristic
    assert chi == f0 - f1 + f2
    assert m.genus == ((2 - chi) // 2 if m.is_orientable() else 2 - chi)


def test_regular_count_identities(tetrahedron, cube, relatives):
    built = [tetrahedron, cube] + [m.map for m in relatives.values()]
    for m in built:
        p, q = m.type
        f0, f1, f2 = m.f_vector
        assert p * f2 == 2 * f1 == q * f0
        assert len(hexad(m)) <= 6
