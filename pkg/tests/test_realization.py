import random
from fractions import Fraction as Q
from itertools import combinations

import pytest

from spg.groebner import Budget, BudgetExceeded, normal_form
from spg.linalg import QMatrix, multi_veronese, rank
from spg.matroid import Matroid, from_mask, to_mask
from spg.realization import (
    VERDICT_BOTH_EMPTY,
    VERDICT_EQUAL,
    VERDICT_S_EMPTY,
    VERDICT_SMALLER,
    VERDICT_UNDETERMINED,
    compare_spaces,
    coordinatize,
    find_frame_relabeling,
    realization_space,
    sgr_vanishing_test,
    sp_realization_space,
)
from spg.selfproj import certify_self_projecting, random_cayley_point

from _data import GENERIC_3x6, RIGID_4x9


def rank2_matroid(n, classes):
    cls = {}
    for i, c in enumerate(classes):
        for e in c:
            cls[e] = i
    bases = [(a, b) for a, b in combinations(range(n), 2) if cls[a] != cls[b]]
    return Matroid.from_bases(n, 2, bases)


def test_coordinatize_uniform():
    c = coordinatize(Matroid.uniform(2, 4))
    assert c.perm == (0, 1, 2, 3)
    assert to_mask((0, 1)) in c.matroid.bases


def test_coordinatize_relabels_when_needed():
    # lex-least basis of the two-triangle matroid is not {0,1,2}
    line1, line2 = to_mask((0, 1, 2)), to_mask((3, 4, 5))
    m = Matroid.from_bases(
        6, 3, [c for c in combinations(range(6), 3) if to_mask(c) not in (line1, line2)]
    )
    c = coordinatize(m)
    assert to_mask((0, 1, 2)) in c.matroid.bases
    assert sorted(c.perm) == list(range(6))
    # the relabeled matroid is the original pushed through the permutation
    assert c.matroid == m.relabel(c.perm)


def test_frame_relabeling():
    u36 = Matroid.uniform(3, 6)
    c = find_frame_relabeling(u36)
    assert c is not None and c.frame
    # columns 0..k form a circuit: every k-subset of them is a basis
    circ = tuple(range(4))
    for drop in range(4):
        sub = circ[:drop] + circ[drop + 1 :]
        assert to_mask(sub) in c.matroid.bases
    # a matroid with a coloop has no (k+1)-circuit through a fixed basis
    m = Matroid.from_bases(4, 2, [(0, j) for j in (1, 2, 3)])
    assert find_frame_relabeling(m) is None


def test_u36_dimensions_and_verdict():
    u36 = Matroid.uniform(3, 6)
    r = realization_space(u36)
    s = sp_realization_space(u36, base=r)
    assert (r.dimension, s.dimension) == (4, 3)
    assert r.dimension - s.dimension == 1
    assert compare_spaces(r, s) == VERDICT_SMALLER


def test_rank2_spaces_agree():
    mats = [
        Matroid.uniform(2, 4),
        Matroid.uniform(2, 5),
        rank2_matroid(4, [(0, 1), (2, 3)]),
        rank2_matroid(6, [(0, 1), (2, 3), (4, 5)]),
        rank2_matroid(5, [(0, 1), (2,), (3,), (4,)]),
    ]
    for m in mats:
        if not m.is_self_projecting():
            continue
        r = realization_space(m)
        s = sp_realization_space(m, base=r)
        assert compare_spaces(r, s) == VERDICT_EQUAL
        assert r.dimension == s.dimension


def test_rigid_4x9_spaces():
    m = Matroid.from_matrix(RIGID_4x9)
    r = realization_space(m)
    assert r.dimension == 0 and not r.empty
    s = sp_realization_space(m, base=r)
    assert s.empty and s.dimension == -1
    assert compare_spaces(r, s) == VERDICT_S_EMPTY
    # the unique chart point realizes the matroid
    pt = r.point()
    assert pt is not None
    assert Matroid.from_matrix(pt) == r.coord.matroid


def test_realization_ideal_contained_in_isotropy_ideal():
    line1, line2 = to_mask((0, 1, 2)), to_mask((3, 4, 5))
    m = Matroid.from_bases(
        6, 3, [c for c in combinations(range(6), 3) if to_mask(c) not in (line1, line2)]
    )
    r = realization_space(m)
    s = sp_realization_space(m, base=r)
    assert not s.timeout
    if not s.empty:
        for g in r.gens:
            assert normal_form(g, s.gens).is_zero()
    assert s.dimension <= r.dimension


def test_point_roundtrip_certifies():
    # S of the two-parallel-pairs matroid is a single chart point; it must
    # admit an isotropy witness
    m = rank2_matroid(4, [(0, 1), (2, 3)])
    s = sp_realization_space(m)
    assert s.dimension == 0
    pt = s.point()
    assert pt is not None
    assert certify_self_projecting(pt)


def test_frame_invariance_of_results():
    # frame relabeling changes the chart, never the verdict or dimensions
    mats = [m for m in _rank3_catalog(7) if m.is_self_projecting()][:6]
    for m in mats:
        r1 = realization_space(m)
        s1 = sp_realization_space(m, base=r1)
        coord = find_frame_relabeling(m)
        if coord is None:
            continue
        r2 = realization_space(m, coord=coord)
        s2 = sp_realization_space(m, coord=coord, base=r2)
        assert (r1.dimension, r1.empty) == (r2.dimension, r2.empty)
        assert (s1.dimension, s1.empty) == (s2.dimension, s2.empty)


def _rank3_catalog(n):
    from spg.catalog import enumerate_simple_rank3

    return enumerate_simple_rank3(n)


def test_compare_spaces_requires_same_chart():
    from spg.realization import CoordinatizedMatroid

    u36 = Matroid.uniform(3, 6)
    r = realization_space(u36)
    rot = [(e + 1) % 6 for e in range(6)]
    other = CoordinatizedMatroid(u36.relabel(rot), rot)
    s = sp_realization_space(u36, coord=other)
    with pytest.raises(ValueError):
        compare_spaces(r, s)


def test_timeout_is_undetermined():
    line1, line2 = to_mask((0, 1, 2)), to_mask((3, 4, 5))
    m = Matroid.from_bases(
        6, 3, [c for c in combinations(range(6), 3) if to_mask(c) not in (line1, line2)]
    )
    r = realization_space(m, Budget(steps=1))
    assert r.timeout and r.dimension is None
    r_full = realization_space(m)
    s = sp_realization_space(m, Budget(steps=1), base=r_full)
    assert s.timeout
    assert compare_spaces(r_full, s) == VERDICT_UNDETERMINED


def test_sgr_vanishing_polynomial():
    det, evaluate = sgr_vanishing_test()
    assert det.degree() == 12
    rng = random.Random(3)
    for _ in range(5):
        x, _ = random_cayley_point(rng, 3)
        assert evaluate(x) == 0
    val = evaluate(GENERIC_3x6)
    assert val != 0
    # the evaluator is the polynomial: spot-check against direct substitution
    vals = [GENERIC_3x6[i, j] for i in range(3) for j in range(6)]
    assert det.evaluate(vals) == val


def test_sgr_vanishing_matches_veronese_rank():
    rng = random.Random(5)
    _, evaluate = sgr_vanishing_test()
    for _ in range(6):
        x = QMatrix([[rng.randint(-3, 3) for _ in range(6)] for _ in range(3)])
        if rank(x) < 3:
            continue
        assert (evaluate(x) == 0) == (rank(multi_veronese(x)) < 6)
