import random
from itertools import combinations, permutations

import pytest

from spg.matroid import (
    Matroid,
    NotAMatroidError,
    canonical_form,
    from_mask,
    is_isomorphic,
    rank2_profile,
    to_mask,
)


def exceptional_positroid_4_9() -> Matroid:
    """Rank-4 matroid on 9 elements with exactly three 4-element non-bases."""
    nonbases = {to_mask(s) for s in [(0, 1, 2, 3), (3, 4, 5, 6), (0, 6, 7, 8)]}
    bases = [c for c in combinations(range(9), 4) if to_mask(c) not in nonbases]
    return Matroid.from_bases(9, 4, bases)


def rank2_matroid(n, loop_elems, classes):
    """Rank-2 matroid from explicit loops and parallel classes (0-based)."""
    class_of = {}
    for i, cls in enumerate(classes):
        for e in cls:
            class_of[e] = i
    bases = [
        (a, b)
        for a, b in combinations(range(n), 2)
        if a in class_of and b in class_of and class_of[a] != class_of[b]
    ]
    return Matroid.from_bases(n, 2, bases)


def test_from_bases_uniform():
    m = Matroid.from_bases(4, 2, combinations(range(4), 2))
    assert len(m.bases) == 6
    assert m == Matroid.uniform(2, 4)


def test_from_bases_rejects_exchange_violation():
    with pytest.raises(NotAMatroidError, match="exchange fails"):
        Matroid.from_bases(4, 2, [(0, 1), (2, 3)])


def test_exceptional_positroid_valid():
    m = exceptional_positroid_4_9()
    assert len(m.bases) == 126 - 3
    assert len(m.nonbases()) == 3


def test_rank_queries():
    u24 = Matroid.uniform(2, 4)
    assert u24.rank((0,)) == 1
    assert u24.rank(()) == 0
    assert exceptional_positroid_4_9().rank((0, 1, 2, 3)) == 3


def test_flats_of_rank_uniform():
    u24 = Matroid.uniform(2, 4)
    assert u24.flats_of_rank(1) == [1, 2, 4, 8]
    u36 = Matroid.uniform(3, 6)
    assert len(u36.flats_of_rank(2)) == 15


def test_flats_include_lines():
    # rank-3 matroid with one 3-point line {0,1,2} on 5 points
    line = to_mask((0, 1, 2))
    bases = [c for c in combinations(range(5), 3) if to_mask(c) != line]
    m = Matroid.from_bases(5, 3, bases)
    assert line in m.flats_of_rank(2)


def test_half_coloop_cases():
    assert not Matroid.uniform(2, 4).has_half_coloop()
    assert not Matroid.uniform(3, 6).has_half_coloop()
    # rank-2 profile with classes {0,1},{2}: r=2 and |P_r|=1
    m = rank2_matroid(3, [], [(0, 1), (2,)])
    w = m.half_coloop()
    assert w is not None
    assert w.flat1 | w.flat2 == m.full_mask & ~(1 << w.e)


def test_coloop_is_half_coloop():
    # direct sum U_{1,1} + U_{1,3}: element 0 is a coloop
    bases = [(0, j) for j in (1, 2, 3)]
    m = Matroid.from_bases(4, 2, bases)
    assert not m.is_self_projecting()
    w = m.half_coloop()
    assert w.flat1 == w.flat2 == to_mask((1, 2, 3))


def test_half_coloop_matches_bruteforce():
    # oracle: enumerate all pairs of rank-(k-1) flats directly
    rng = random.Random(5)
    mats = [
        Matroid.uniform(2, 4),
        Matroid.uniform(2, 5),
        Matroid.uniform(3, 6),
        rank2_matroid(4, [], [(0, 1), (2,), (3,)]),
        rank2_matroid(5, [4], [(0, 1), (2, 3)]),
        exceptional_positroid_4_9(),
    ]
    for _ in range(10):
        n = rng.randint(4, 6)
        cols = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(3)]
        from spg.linalg import QMatrix, rank as mrank

        q = QMatrix(cols)
        if mrank(q) == 3:
            mats.append(Matroid.from_matrix(q))
    for m in mats:
        flats = m.flats_of_rank(m.k - 1)
        brute = False
        for f1 in flats:
            for f2 in flats:
                u = f1 | f2
                missing = m.full_mask & ~u
                if missing and missing & (missing - 1) == 0:
                    brute = True
        assert m.has_half_coloop() == brute


def test_disjoint_basis_property():
    assert Matroid.uniform(2, 4).has_disjoint_basis_property()
    assert not Matroid.uniform(2, 3).has_disjoint_basis_property()
    assert exceptional_positroid_4_9().has_disjoint_basis_property()


def test_no_half_coloop_implies_dbp_spot():
    for m in [Matroid.uniform(2, 4), Matroid.uniform(3, 6), Matroid.uniform(3, 7),
              exceptional_positroid_4_9()]:
        if not m.has_half_coloop():
            assert m.has_disjoint_basis_property()


def test_dual():
    u24 = Matroid.uniform(2, 4)
    assert u24.dual() == u24
    m = exceptional_positroid_4_9()
    assert m.dual().dual() == m


def test_simplify():
    m = rank2_matroid(5, [4], [(0, 1), (2,), (3,)])
    s = m.simplify()
    assert (s.n, s.k) == (3, 2)
    assert s == Matroid.uniform(2, 3)


def test_simplify_preserves_self_projecting():
    base = rank2_matroid(4, [], [(0,), (1,), (2,), (3,)])  # U_{2,4}
    fat = rank2_matroid(7, [6], [(0, 1), (2,), (3,), (4, 5)])
    assert base.is_self_projecting()
    assert fat.is_self_projecting() == fat.simplify().is_self_projecting()


def test_circuits_uniform():
    u24 = Matroid.uniform(2, 4)
    assert sorted(from_mask(c) for c in u24.circuits()) == sorted(
        combinations(range(4), 3)
    )


def test_canonical_form_class_function():
    rng = random.Random(31)
    mats = [
        Matroid.uniform(2, 4),
        rank2_matroid(5, [], [(0, 1), (2,), (3,), (4,)]),
        Matroid.uniform(3, 6),
        exceptional_positroid_4_9(),
    ]
    for m in mats:
        cf = canonical_form(m)
        for _ in range(6):
            perm = list(range(m.n))
            rng.shuffle(perm)
            assert canonical_form(m.relabel(perm)) == cf


def test_canonical_form_distinguishes():
    u36 = Matroid.uniform(3, 6)
    line = to_mask((0, 1, 2))
    other = Matroid.from_bases(
        6, 3, [c for c in combinations(range(6), 3) if to_mask(c) not in (line, to_mask((3, 4, 5)))]
    )
    assert canonical_form(u36) != canonical_form(other)
    assert not is_isomorphic(u36, other)


def test_is_isomorphic_small_exhaustive():
    # every relabeling of a matroid is isomorphic to it; a different matroid is not
    m = rank2_matroid(4, [], [(0, 1), (2,), (3,)])
    for perm in permutations(range(4)):
        assert is_isomorphic(m, m.relabel(list(perm)))
    assert not is_isomorphic(m, Matroid.uniform(2, 4))


def test_rank2_profile():
    u24 = Matroid.uniform(2, 4)
    p = rank2_profile(u24)
    assert p.loops == 0 and p.shape == (1, 1, 1, 1)

    m = rank2_matroid(4, [], [(0, 1), (2,), (3,)])
    p = rank2_profile(m)
    assert p.shape == (2, 1, 1)

    hc = rank2_matroid(4, [], [(0, 1), (2, 3)])
    assert not rank2_profile(hc).has_half_coloop()
    hc2 = rank2_matroid(3, [], [(0, 1), (2,)])
    assert rank2_profile(hc2).has_half_coloop()
    assert hc2.has_half_coloop()


def test_rank2_profile_requires_rank2():
    with pytest.raises(ValueError):
        rank2_profile(Matroid.uniform(3, 6))


def test_from_matrix():
    from _data import RIGID_4x9

    m = Matroid.from_matrix(RIGID_4x9)
    assert (m.n, m.k) == (9, 4)
    assert m.rank(m.full_mask) == 4
