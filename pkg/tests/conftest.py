import random

import pytest

from k3tk import EvenLattice, MukaiVector


def random_lattice(rng: random.Random, max_rank: int = 4,
                   spread: int = 4) -> EvenLattice:
    rank = rng.randint(1, max_rank)
    g = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        g[i][i] = 2 * rng.randint(-spread, spread)
        for j in range(i):
            g[i][j] = g[j][i] = rng.randint(-spread, spread)
    return EvenLattice(tuple(tuple(row) for row in g))


def random_vector(rng: random.Random, rank: int, spread: int = 9) -> MukaiVector:
    return MukaiVector(rng.randint(-spread, spread),
                       tuple(rng.randint(-spread, spread) for _ in range(rank)),
                       rng.randint(-spread, spread))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20260810)


@pytest.fixture
def gram2() -> EvenLattice:
    """The default surface: Pic = Z H with (H^2) = 2."""
    return EvenLattice(((2,),))
