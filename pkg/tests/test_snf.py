"""Smith normal form and abelian group presentations."""

import random

from milnorforge.snf import AbGroupPresentation, mat_mul, snf


def is_diagonal(d):
    return all(x == 0 for i, row in enumerate(d) for j, x in enumerate(row) if i != j)


def test_frozen_snf_example():
    m = [[2, 4, 4], [-6, 6, 12], [10, 4, 16]]
    u, d, v = snf(m)
    assert mat_mul(mat_mul(u, m), v) == d
    assert is_diagonal(d)
    assert [d[i][i] for i in range(3)] == [2, 2, 156]


def test_snf_divisibility_chain_random():
    rng = random.Random(5)
    for _ in range(30):
        rows, cols = rng.randint(1, 4), rng.randint(1, 4)
        m = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
        u, d, v = snf(m)
        assert mat_mul(mat_mul(u, m), v) == d
        assert is_diagonal(d)
        diag = [d[i][i] for i in range(min(rows, cols))]
        for a, b in zip(diag, diag[1:]):
            if a != 0:
                assert b % a == 0
            else:
                assert b == 0


def test_presentation_invariant_factors():
    # Z^2 / <(2,0),(0,12)> = Z/2 x Z/12
    g = AbGroupPresentation(2, [[2, 0], [0, 12]])
    assert g.invariant_factors == [2, 12]


def test_presentation_of_trivial_group():
    g = AbGroupPresentation(2, [[1, 0], [0, 1]])
    assert g.invariant_factors == []


def test_presentation_with_free_part():
    # Z^2 / <(2,4)> = Z/2 x Z  (factor 0 denotes a free summand)
    g = AbGroupPresentation(2, [[2, 4]])
    assert 0 in g.invariant_factors


def test_coordinates_kill_relations():
    g = AbGroupPresentation(2, [[3, 0], [0, 5]])
    assert g.coordinates([3, 0]) == [0] * len(g.coordinates([3, 0]))
    assert g.coordinates([0, 5]) == [0] * len(g.coordinates([0, 5]))
    a = g.coordinates([1, 2])
    b = g.coordinates([4, 7])  # differs by the relation lattice
    assert a == b
