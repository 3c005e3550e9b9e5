import json

import pytest

from k3tk import (EvenLattice, InputError, MukaiVector, content, dual, ell,
                  mukai_from_chern, mukai_pairing, primitive, square)

from .conftest import random_lattice, random_vector
from .oracles import pairing_brute


def test_pairing_structure_sheaf(gram2):
    v0 = MukaiVector(1, (0,), 1)
    assert mukai_pairing(v0, v0, gram2) == -2


def test_pairing_omega_unit(gram2):
    assert mukai_pairing(MukaiVector(0, (0,), 1), MukaiVector(1, (0,), 0), gram2) == -1


def test_pairing_hand_expansion(gram2):
    x = MukaiVector(2, (1,), 1)
    y = MukaiVector(1, (0,), 1)
    assert mukai_pairing(x, y, gram2) == 2 * 1 * 0 - 2 * 1 - 1 * 1 == -3


def test_pairing_matches_brute_oracle(rng):
    for _ in range(300):
        lat = random_lattice(rng)
        x = random_vector(rng, lat.rank)
        y = random_vector(rng, lat.rank)
        expect = pairing_brute((x.r, x.c1, x.a), (y.r, y.c1, y.a), lat.gram)
        assert mukai_pairing(x, y, lat) == expect


def test_pairing_symmetric_even_dual_invariant(rng):
    for _ in range(2000):
        lat = random_lattice(rng)
        x = random_vector(rng, lat.rank)
        y = random_vector(rng, lat.rank)
        assert mukai_pairing(x, y, lat) == mukai_pairing(y, x, lat)
        assert mukai_pairing(x, x, lat) % 2 == 0
        assert mukai_pairing(dual(x), dual(y), lat) == mukai_pairing(x, y, lat)


def test_pairing_dimension_mismatch(gram2):
    with pytest.raises(InputError):
        mukai_pairing(MukaiVector(1, (0, 0), 1), MukaiVector(1, (0, 0), 1), gram2)


def test_from_chern_structure_sheaf(gram2):
    assert mukai_from_chern(1, (0,), 0, gram2) == MukaiVector(1, (0,), 1)


def test_from_chern_ideal_sheaf(gram2):
    for n in range(6):
        assert mukai_from_chern(1, (0,), -n, gram2) == MukaiVector(1, (0,), 1 - n)


def test_from_chern_zero_sheaf(gram2):
    assert mukai_from_chern(0, (0,), 0, gram2) == MukaiVector(0, (0,), 0)


def test_chern_roundtrip(rng):
    for _ in range(200):
        lat = random_lattice(rng)
        v = random_vector(rng, lat.rank)
        w = mukai_from_chern(v.r, v.c1, v.a - v.r, lat)
        assert (w.r, w.c1, w.a - w.r) == (v.r, v.c1, v.a - v.r)
        assert w == v


def test_dual_examples(gram2):
    assert dual(MukaiVector(1, (0,), 1)) == MukaiVector(1, (0,), 1)
    assert dual(MukaiVector(2, (3,), -1)) == MukaiVector(2, (-3,), -1)


def test_dual_involution(rng):
    for _ in range(200):
        v = random_vector(rng, 3)
        assert dual(dual(v)) == v


def test_ell_primitive_square(gram2):
    assert ell(MukaiVector(2, (2,), 3), gram2) == 2
    assert primitive(MukaiVector(2, (2,), 3), gram2)
    assert not primitive(MukaiVector(2, (2,), 4), gram2)
    for n in range(-3, 6):
        v = MukaiVector(1, (0,), 1 - n)
        assert square(v, gram2) == 2 * n - 2
        # cross-check: dim = <v^2> + 2 = 2n
        assert square(v, gram2) + 2 == 2 * n


def test_ell_zero_top(gram2):
    assert ell(MukaiVector(0, (0,), 5), gram2) == 0
    assert content(MukaiVector(0, (0,), 5)) == 5


def test_even_lattice_validation():
    with pytest.raises(InputError):
        EvenLattice(((1,),))                      # odd diagonal
    with pytest.raises(InputError):
        EvenLattice(((2, 1), (0, 2)))             # asymmetric
    with pytest.raises(InputError):
        EvenLattice(((2, 1), (1, 2), (0, 0)))     # not square


def test_json_roundtrip(gram2):
    doc = gram2.to_json()
    assert EvenLattice.from_json(json.loads(json.dumps(doc))) == gram2
    v = MukaiVector(2, (-3,), 7)
    assert MukaiVector.from_json(json.loads(json.dumps(v.to_json()))) == v
    with pytest.raises(InputError):
        EvenLattice.from_json({"rank": 2, "gram": [[2]]})
    with pytest.raises(InputError):
        MukaiVector.from_json({"r": 1})
