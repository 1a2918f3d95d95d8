"""Positroids via Grassmann necklaces, and the orthopositroid test.

A Grassmann necklace of type (k,n) is a cyclic sequence I_1..I_n of
k-subsets with I_{i+1} containing I_i - {i}; its positroid has as bases all
B that dominate I_i in the i-shifted Gale order for every i. Enumeration
walks the necklace positions depth-first; the survey prunes to loopless
necklaces (i in I_i for all i), derives basis sets through precomputed
dominance bitmaps, filters simple matroids and counts isomorphism classes.
"""

from __future__ import annotations

from itertools import combinations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .linalg import sign_insert
from .matroid import Matroid, canonical_form, from_mask, popcount, to_mask
from .selfproj import ogr_nonempty


def _shifted_key(subset: Sequence[int], start: int, n: int) -> tuple:
    return tuple(sorted((e - start) % n for e in subset))


def gale_min_basis(m: Matroid, start: int) -> tuple:
    """Gale-minimal basis in the order start < start+1 < ... < start-1."""
    best = None
    for b in m.bases:
        key = _shifted_key(from_mask(b), start, m.n)
        if best is None or key < best[0]:
            best = (key, b)
    return tuple(sorted(from_mask(best[1])))


def derive_necklace(m: Matroid) -> List[tuple]:
    """The Grassmann necklace of any matroid: I_i = Gale-min basis from i."""
    return [gale_min_basis(m, i) for i in range(m.n)]


def is_grassmann_necklace(necklace: Sequence[Sequence[int]], k: int, n: int) -> bool:
    """Cyclic exchange invariant: I_{i+1} >= I_i - {i}, singleton swaps only."""
    if len(necklace) != n:
        return False
    masks = [to_mask(s) for s in necklace]
    if any(popcount(x) != k for x in masks):
        return False
    for i in range(n):
        cur, nxt = masks[i], masks[(i + 1) % n]
        bit = 1 << i
        if cur & bit:
            if popcount(cur & ~bit & ~nxt):
                return False
        else:
            if nxt != cur:
                return False
    return True


class _GaleTables:
    """Per-(k,n) dominance bitmaps: for each rotation i and k-subset S, the
    set of k-subsets dominating S in the i-shifted Gale order, as a bitmask
    over the C(n,k) subset indices."""

    def __init__(self, k: int, n: int):
        self.k = k
        self.n = n
        self.subsets = list(combinations(range(n), k))
        self.index = {s: p for p, s in enumerate(self.subsets)}
        nsub = len(self.subsets)
        shifted = [
            [tuple(sorted((e - i) % n for e in s)) for s in self.subsets]
            for i in range(n)
        ]
        self.dominators: List[Dict[tuple, int]] = []
        for i in range(n):
            table: Dict[tuple, int] = {}
            keys = shifted[i]
            for p, s in enumerate(self.subsets):
                ks = keys[p]
                mask = 0
                for q in range(nsub):
                    kq = keys[q]
                    if all(a >= b for a, b in zip(kq, ks)):
                        mask |= 1 << q
                table[s] = mask
            self.dominators.append(table)


_gale_cache: Dict[tuple, _GaleTables] = {}


def _tables(k: int, n: int) -> _GaleTables:
    key = (k, n)
    if key not in _gale_cache:
        _gale_cache[key] = _GaleTables(k, n)
    return _gale_cache[key]


def bases_from_necklace(necklace: Sequence[Sequence[int]], k: int, n: int) -> list:
    """Basis list of the positroid of a necklace (Gale dominance at every i)."""
    t = _tables(k, n)
    acc = (1 << len(t.subsets)) - 1
    for i, s in enumerate(necklace):
        acc &= t.dominators[i][tuple(sorted(s))]
        if not acc:
            break
    out = []
    p = 0
    while acc:
        if acc & 1:
            out.append(t.subsets[p])
        acc >>= 1
        p += 1
    return out


def necklaces(k: int, n: int, loopless: bool = False) -> Iterator[tuple]:
    """All Grassmann necklaces of type (k,n) as tuples of masks, depth-first.

    With loopless=True only necklaces with i in I_i for every i are emitted
    (element i is a loop of the positroid exactly when i misses I_i).
    """
    if not 0 < k <= n:
        raise ValueError("need 0 < k <= n")
    full = (1 << n) - 1

    def rec(i: int, cur: int, first: int, chain: tuple) -> Iterator[tuple]:
        # step at position i: I_{i+1} from I_i = cur; chain holds I_0..I_i
        bit = 1 << i
        last = i == n - 1
        remaining = n - 1 - i  # additions available after this step
        if cur & bit:
            base = cur & ~bit
            options = full & ~base
            while options:
                b = options & -options
                options ^= b
                nxt = base | b
                if last:
                    if nxt == first:
                        yield chain
                    continue
                if loopless and not nxt & (1 << (i + 1)):
                    continue
                if popcount(first & ~nxt) > remaining:
                    continue
                yield from rec(i + 1, nxt, first, chain + (nxt,))
        else:
            nxt = cur
            if last:
                if nxt == first:
                    yield chain
                return
            if loopless and not nxt & (1 << (i + 1)):
                return
            if popcount(first & ~nxt) > remaining:
                return
            yield from rec(i + 1, nxt, first, chain + (nxt,))

    for start in combinations(range(n), k):
        if loopless and 0 not in start:
            continue
        first = to_mask(start)
        if n == 1:
            yield (first,)
            continue
        yield from rec(0, first, first, (first,))


def positroid_from_necklace_masks(chain: Sequence[int], k: int, n: int) -> Matroid:
    necklace = [from_mask(c) for c in chain]
    bases = bases_from_necklace(necklace, k, n)
    return Matroid(n, k, frozenset(to_mask(b) for b in bases), _validated=True)


def enumerate_positroids(k: int, n: int, loopless: bool = False) -> Iterator[Matroid]:
    """One matroid per Grassmann necklace of type (k,n)."""
    if n > 10:
        raise ValueError("positroid enumeration capped at n = 10")
    for chain in necklaces(k, n, loopless=loopless):
        yield positroid_from_necklace_masks(chain, k, n)


# -- orthopositroid test ----------------------------------------------------------


class OrthoWitnessSets:
    """The signed common-extension sets A^+ and A^- of a pair (S,T)."""

    __slots__ = ("s", "t", "a_plus", "a_minus")

    def __init__(self, s: tuple, t: tuple, a_plus: tuple, a_minus: tuple):
        if set(a_plus) & set(a_minus):
            raise ValueError("witness sets must be disjoint")
        self.s = s
        self.t = t
        self.a_plus = a_plus
        self.a_minus = a_minus

    def balanced(self) -> bool:
        return bool(self.a_plus) == bool(self.a_minus)

    def __repr__(self):
        return "OrthoWitnessSets(S=%s, T=%s, A+=%s, A-=%s)" % (
            self.s, self.t, self.a_plus, self.a_minus,
        )


def ortho_witness_sets(m: Matroid, sv: Sequence[int], s: Sequence[int],
                       t: Sequence[int]) -> OrthoWitnessSets:
    """A^{+-} for one pair: common basis extensions split by the sign of
    sv_l * sign(S,l) * sign(T,l)."""
    s = tuple(sorted(s))
    t = tuple(sorted(t))
    a_plus, a_minus = [], []
    for ell in range(m.n):
        if ell in s or ell in t:
            continue
        if not (m.is_basis(s + (ell,)) and m.is_basis(t + (ell,))):
            continue
        val = sv[ell] * sign_insert(s, ell) * sign_insert(t, ell)
        (a_plus if val == 1 else a_minus).append(ell)
    return OrthoWitnessSets(s, t, tuple(a_plus), tuple(a_minus))


def _pair_constraints(m: Matroid) -> Tuple[list, bool]:
    """For all unordered pairs (S,T) of (k-1)-subsets with common extensions:
    (common extension mask, sign-difference mask). Returns (constraints,
    killed) where killed means some pair has exactly one common extension,
    failing the test for every sign vector."""
    k, n = m.k, m.n
    ext: Dict[tuple, int] = {}
    for sub in combinations(range(n), k - 1):
        mask = 0
        smask = to_mask(sub)
        for e in range(n):
            if smask >> e & 1:
                continue
            if smask | (1 << e) in m.bases:
                mask |= 1 << e
        if mask:
            ext[sub] = mask
    neg: Dict[tuple, int] = {}
    for sub in ext:
        mask = 0
        for e in range(n):
            if not to_mask(sub) >> e & 1 and sign_insert(sub, e) < 0:
                mask |= 1 << e
        neg[sub] = mask
    subs = sorted(ext)
    constraints = []
    seen = set()
    for a in range(len(subs)):
        for b in range(a, len(subs)):
            s, t = subs[a], subs[b]
            common = ext[s] & ext[t]
            if not common:
                continue
            if common & (common - 1) == 0:
                return [], True
            key = (common, neg[s] ^ neg[t])
            if key not in seen:
                seen.add(key)
                constraints.append(key)
    constraints.sort(key=lambda c: popcount(c[0]))
    return constraints, False


def is_orthopositroid(m: Matroid, sv: Sequence[int]) -> bool:
    """Balanced-sign test: for every pair of (k-1)-sets, the common basis
    extensions split into both sign classes or into neither."""
    if len(sv) != m.n:
        raise ValueError("sign vector length mismatch")
    lmask = 0
    for i, v in enumerate(sv):
        if v == -1:
            lmask |= 1 << i
        elif v != 1:
            raise ValueError("sign vector entries must be +1 or -1")
    constraints, killed = _pair_constraints(m)
    if killed:
        return False
    return _check_constraints(constraints, lmask)


def _check_constraints(constraints: list, lmask: int) -> bool:
    for common, diff in constraints:
        negs = common & (diff ^ lmask)
        if negs == 0 or negs == common:
            return False
    return True


def candidate_sign_vectors(k: int, n: int) -> List[int]:
    """Negative-entry masks of sign vectors with first entry +1 and signature
    at least k, ordered by decreasing number of sign alternations."""
    out = []
    for mask in range(0, 1 << n, 2):
        sv = tuple(-1 if mask >> i & 1 else 1 for i in range(n))
        if ogr_nonempty(sv, k):
            changes = sum(1 for a, b in zip(sv, sv[1:]) if a != b)
            out.append((-changes, mask))
    out.sort()
    return [mask for _, mask in out]


def is_orthopositroid_any(m: Matroid, k: Optional[int] = None) -> bool:
    """Existence over real-feasible sign vectors (first coordinate fixed +1)."""
    k = m.k if k is None else k
    constraints, killed = _pair_constraints(m)
    if killed:
        return False
    if not constraints:
        return True
    for lmask in candidate_sign_vectors(k, m.n):
        if _check_constraints(constraints, lmask):
            return True
    return False


# -- survey -------------------------------------------------------------------------


class PositroidSurvey:
    __slots__ = ("k", "n", "raw_simple", "simple_classes", "sp_classes",
                 "ortho_classes", "representatives", "sp_flags", "ortho_flags")

    def __init__(self, k, n, raw_simple, representatives, sp_flags, ortho_flags):
        self.k = k
        self.n = n
        self.raw_simple = raw_simple
        self.representatives = representatives
        self.sp_flags = sp_flags
        self.ortho_flags = ortho_flags
        self.simple_classes = len(representatives)
        self.sp_classes = sum(sp_flags)
        self.ortho_classes = sum(ortho_flags)

    def row(self) -> tuple:
        return (self.simple_classes, self.sp_classes, self.ortho_classes)

    def __repr__(self):
        return "PositroidSurvey(k=%d, n=%d, row=%s)" % (self.k, self.n, self.row())


def survey_positroids(k: int, n: int) -> PositroidSurvey:
    """Counts of simple, self-projecting and orthopositroid classes."""
    seen: Dict[tuple, int] = {}
    reps: List[Matroid] = []
    raw = 0
    for m in enumerate_positroids(k, n, loopless=True):
        if not m.is_simple():
            continue
        raw += 1
        key = canonical_form(m)
        if key not in seen:
            seen[key] = len(reps)
            reps.append(m)
    sp_flags = [m.is_self_projecting() for m in reps]
    ortho_flags = [
        bool(sp) and is_orthopositroid_any(m)
        for m, sp in zip(reps, sp_flags)
    ]
    # orthopositroids are self-projecting: any pair of corank-1 flats covering
    # all but one element yields a singleton common-extension pair, which
    # kills every sign vector; assert the containment on non-sp classes too
    for m, sp in zip(reps, sp_flags):
        if not sp:
            assert not is_orthopositroid_any(m)
    return PositroidSurvey(k, n, raw, reps, sp_flags, ortho_flags)
