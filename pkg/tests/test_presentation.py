import pytest

from conftest import CUBE_FACES, TETRAHEDRON_FACES
from gordanmaps.flags import FlagSystem
from gordanmaps.presentation import (
    EnumerationOverflow,
    Presentation,
    PresentationCollapse,
    build,
    enumerate_cosets,
    petrie_length,
)

HEXAD_TRIPLES = [(5, 4, 6), (4, 5, 6), (6, 4, 5), (4, 6, 5), (6, 5, 4), (5, 6, 4)]
SMALL_TRIPLES = [(3, 3, 4), (4, 3, 6), (3, 4, 6), (2, 2, 2), (3, 5, 10), (5, 3, 10)]


def permutation_group_order(gens):
    """Closure of a set of permutations, by brute force."""
    n = len(gens[0])
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                gh = tuple(h[g[x]] for x in range(n))
                if gh not in seen:
                    seen.add(gh)
                    nxt.append(gh)
        frontier = nxt
    return len(seen)


def test_gordan_group_order():
    m = build(5, 4, 6)
    assert len(m) == 240
    assert permutation_group_order(m.s) == 240  # regular action


def test_tetrahedron_order_oracle():
    hand = FlagSystem.from_faces(TETRAHEDRON_FACES)
    assert permutation_group_order(hand.s) == 24
    built = build(3, 3, 4)
    assert len(built) == 24
    assert built.isomorphic(hand)


def test_cube_order_oracle():
    hand = FlagSystem.from_faces(CUBE_FACES)
    assert permutation_group_order(hand.s) == 48
    built = build(4, 3, 6)
    assert len(built) == 48
    assert built.isomorphic(hand)


def test_222_is_eight_element_group():
    # Z2^3 acting on itself: s_i flips bit i
    hand = FlagSystem(*[[x ^ (1 << i) for x in range(8)] for i in range(3)])
    assert permutation_group_order(hand.s) == 8
    built = build(2, 2, 2)
    assert built.isomorphic(hand)
    assert built.type == (2, 2)


@pytest.mark.parametrize(
    "triple, f_vector, orientable, genus",
    [
        ((5, 4, 6), (30, 60, 24), True, 4),
        ((4, 5, 6), (24, 60, 30), True, 4),
        ((6, 4, 5), (30, 60, 20), False, 12),
    ],
)
def test_built_invariants(triple, f_vector, orientable, genus):
    m = build(*triple)
    inv = m.invariants()
    assert inv.f_vector == f_vector
    assert inv.type == triple[:2]
    assert inv.petrie_length == triple[2]
    assert inv.orientable is orientable
    assert inv.genus == genus
    assert inv.regular


def test_petrie_lengths(cube):
    assert petrie_length(build(5, 4, 6)) == 6
    assert petrie_length(build(6, 5, 4)) == 4
    assert petrie_length(cube) == 6


def test_overflow():
    with pytest.raises(EnumerationOverflow):
        build(5, 4, 6, max_cosets=50)
    # the bound caps live cosets during enumeration, not the final order
    assert len(build(5, 4, 6, max_cosets=2000)) == 240


def test_collapse():
    with pytest.raises(PresentationCollapse):
        build(3, 3, 3)


@pytest.mark.parametrize("bad", [(1, 4, 6), (5, 0, 6), (5, 4, 1)])
def test_presentation_rejects_small(bad):
    with pytest.raises(ValueError):
        Presentation(*bad)


def test_coset_numbering_deterministic():
    a = enumerate_cosets(Presentation(5, 4, 6))
    b = enumerate_cosets(Presentation(5, 4, 6))
    assert a.rows == b.rows
    assert len(a) == 240


@pytest.mark.parametrize("p, q, r", HEXAD_TRIPLES + SMALL_TRIPLES)
def test_dual_and_petrie_rules(p, q, r):
    m = build(p, q, r)
    assert m.dual().isomorphic(build(q, p, r))
    assert m.petrie().isomorphic(build(r, q, p))


@pytest.mark.parametrize("p, q, r", HEXAD_TRIPLES + SMALL_TRIPLES)
def test_orientable_iff_r_even(p, q, r):
    assert build(p, q, r).is_orientable() == (r % 2 == 0)


@pytest.mark.parametrize("p, q, r", HEXAD_TRIPLES)
def test_hexad_triples_order_240(p, q, r):
    m = build(p, q, r)
    assert len(m) == 240 and m.is_regular()
