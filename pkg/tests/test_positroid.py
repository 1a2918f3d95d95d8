import random
from itertools import combinations

import pytest

from spg.linalg import sign_insert
from spg.matroid import Matroid, from_mask, to_mask
from spg.positroid import (
    bases_from_necklace,
    derive_necklace,
    enumerate_positroids,
    is_grassmann_necklace,
    is_orthopositroid,
    is_orthopositroid_any,
    necklaces,
    positroid_from_necklace_masks,
    survey_positroids,
)

from test_matroid import exceptional_positroid_4_9


def brute_positroid_count(k, n):
    """Independent oracle: matroids whose derived necklace regenerates them."""
    all_subs = list(combinations(range(n), k))
    count = 0
    for mask in range(1, 1 << len(all_subs)):
        bases = [all_subs[i] for i in range(len(all_subs)) if mask >> i & 1]
        try:
            m = Matroid.from_bases(n, k, bases)
        except Exception:
            continue
        nk = derive_necklace(m)
        regen = bases_from_necklace(nk, k, n)
        if sorted(regen) == sorted(tuple(sorted(from_mask(b))) for b in m.bases):
            count += 1
    return count


def test_necklace_enumeration_matches_bruteforce():
    # all (2,4) and (1,3) necklaces give exactly the matroids fixed by the
    # necklace -> bases closure, each exactly once
    for (k, n) in [(1, 3), (2, 4)]:
        chains = list(necklaces(k, n))
        mats = {positroid_from_necklace_masks(c, k, n) for c in chains}
        assert len(mats) == len(chains)  # necklace <-> positroid is bijective
        assert len(mats) == brute_positroid_count(k, n)


def test_necklace_validity_and_roundtrip():
    for chain in necklaces(2, 5):
        necklace = [tuple(sorted(from_mask(c))) for c in chain]
        assert is_grassmann_necklace(necklace, 2, 5)
        m = positroid_from_necklace_masks(chain, 2, 5)
        assert derive_necklace(m) == necklace
        # derived basis sets satisfy the exchange axiom
        Matroid.from_bases(m.n, m.k, [from_mask(b) for b in m.bases])


def test_uniform_necklace():
    u = Matroid.uniform(3, 6)
    nk = derive_necklace(u)
    assert nk[0] == (0, 1, 2)
    assert nk[1] == (1, 2, 3)
    assert nk[5] == (0, 1, 5)


def test_loopless_filter():
    full = list(necklaces(2, 4))
    loopless = list(necklaces(2, 4, loopless=True))
    assert len(loopless) < len(full)
    for chain in loopless:
        m = positroid_from_necklace_masks(chain, 2, 4)
        assert m.loops() == 0
    # no loopless positroid is missed
    kept = {positroid_from_necklace_masks(c, 2, 4) for c in loopless}
    for chain in full:
        m = positroid_from_necklace_masks(chain, 2, 4)
        if m.loops() == 0:
            assert m in kept


def brute_orthopositroid(m, sv):
    """Literal double loop over (S,T) building the signed witness sets."""
    k, n = m.k, m.n
    for s in combinations(range(n), k - 1):
        for t in combinations(range(n), k - 1):
            a_plus, a_minus = [], []
            for ell in range(n):
                if ell in s or ell in t:
                    continue
                if not (m.is_basis(s + (ell,)) and m.is_basis(t + (ell,))):
                    continue
                val = sv[ell] * sign_insert(s, ell) * sign_insert(t, ell)
                (a_plus if val == 1 else a_minus).append(ell)
            if (not a_plus) != (not a_minus):
                return False
    return True


def test_orthopositroid_u24():
    u24 = Matroid.uniform(2, 4)
    assert is_orthopositroid(u24, (1, -1, 1, -1))
    assert not is_orthopositroid(u24, (1, 1, 1, 1))
    assert brute_orthopositroid(u24, (1, -1, 1, -1))
    assert not brute_orthopositroid(u24, (1, 1, 1, 1))


def test_orthopositroid_matches_bruteforce():
    rng = random.Random(7)
    mats = [m for m in enumerate_positroids(2, 5, loopless=True) if m.is_simple()]
    mats += [m for m in enumerate_positroids(3, 6, loopless=True) if m.is_simple()][:10]
    for m in mats:
        for _ in range(4):
            sv = tuple(rng.choice((1, -1)) for _ in range(m.n))
            assert is_orthopositroid(m, sv) == brute_orthopositroid(m, sv)


def test_orthopositroid_global_negation_invariance():
    rng = random.Random(9)
    mats = [m for m in enumerate_positroids(3, 6, loopless=True) if m.is_simple()][:8]
    for m in mats:
        sv = tuple(rng.choice((1, -1)) for _ in range(m.n))
        neg = tuple(-v for v in sv)
        assert is_orthopositroid(m, sv) == is_orthopositroid(m, neg)


def test_survey_rows_small():
    assert survey_positroids(3, 6).row() == (8, 2, 2)
    assert survey_positroids(3, 7).row() == (13, 5, 5)


def test_orthopositroids_are_self_projecting():
    s = survey_positroids(3, 7)
    for m, sp, ortho in zip(s.representatives, s.sp_flags, s.ortho_flags):
        if ortho:
            assert sp


def test_exceptional_4_9_is_not_orthopositroid():
    m = exceptional_positroid_4_9()
    assert m.is_self_projecting()
    assert not is_orthopositroid_any(m)
    # in particular it fails for every high-signature vector
    for sv in [(1, -1, 1, -1, 1, -1, 1, -1, 1), (1, 1, -1, -1, 1, 1, -1, -1, 1)]:
        assert not is_orthopositroid(m, sv)


def test_enumerate_positroids_contains_uniform():
    mats = list(enumerate_positroids(2, 4))
    assert Matroid.uniform(2, 4) in mats
