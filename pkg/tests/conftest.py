import random
from pathlib import Path

import pytest

from toricode.lattice import AffineUnimodularMap, convex_hull

REPO_ROOT = Path(__file__).resolve().parents[1]
CHAMPIONS = REPO_ROOT / "champions"


@pytest.fixture
def rng():
    return random.Random(20240809)


def random_unimodular(rng, m=2, steps=6, shift=5):
    """Random affine-unimodular map as a product of elementary shears/swaps."""
    mat = [[int(i == j) for j in range(m)] for i in range(m)]

    def matmul(a, b):
        return [[sum(a[i][k] * b[k][j] for k in range(m)) for j in range(m)]
                for i in range(m)]

    for _ in range(steps):
        kind = rng.randrange(3)
        g = [[int(i == j) for j in range(m)] for i in range(m)]
        i, j = rng.sample(range(m), 2)
        if kind == 0:
            g[i][j] = rng.choice([-2, -1, 1, 2])
        elif kind == 1:
            g[i][i], g[j][j] = 0, 0
            g[i][j], g[j][i] = 1, 1
        else:
            g[i][i] = -1
        mat = matmul(g, mat)
    t = tuple(rng.randint(-shift, shift) for _ in range(m))
    return AffineUnimodularMap(matrix=tuple(map(tuple, mat)), translation=t)


def random_polygon(rng, span=3, max_pts=6):
    pts = {(rng.randint(0, span), rng.randint(0, span))
           for _ in range(rng.randint(1, max_pts))}
    return convex_hull(sorted(pts))
