"""Matroids on small ground sets, stored as bitmask basis sets.

Ground set is {0, ..., n-1} with n <= 16; a subset is an int bitmask.
Construction validates the basis-exchange axiom. Query operations are pure;
per-instance caches are derived data only, so instances can be shared freely.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Optional, Sequence

from .linalg import QMatrix


def to_mask(subset: Iterable[int]) -> int:
    m = 0
    for e in subset:
        m |= 1 << e
    return m


def from_mask(mask: int) -> tuple:
    out = []
    e = 0
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return mask.bit_count()


class NotAMatroidError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class HalfColoopWitness:
    """Element e together with two corank-1 flats covering everything but e."""

    __slots__ = ("e", "flat1", "flat2")

    def __init__(self, e: int, flat1: int, flat2: int):
        self.e = e
        self.flat1 = flat1
        self.flat2 = flat2

    def __repr__(self):
        return "HalfColoopWitness(e=%d, F1=%s, F2=%s)" % (
            self.e,
            from_mask(self.flat1),
            from_mask(self.flat2),
        )


class Matroid:
    __slots__ = ("n", "k", "bases", "_ext", "_hyperplane_exts", "_nonbases")

    def __init__(self, n: int, k: int, bases: frozenset, _validated: bool = False):
        if n > 16:
            raise ValueError("ground sets larger than 16 are not supported")
        self.n = n
        self.k = k
        self.bases = bases
        self._ext = None
        self._hyperplane_exts = None
        self._nonbases = None
        if not _validated:
            _check_exchange(n, k, bases)

    # -- construction ------------------------------------------------------

    @classmethod
    def from_bases(cls, n: int, k: int, bases: Iterable) -> "Matroid":
        masks = set()
        for b in bases:
            m = b if isinstance(b, int) else to_mask(b)
            if popcount(m) != k:
                raise NotAMatroidError("basis %s does not have cardinality %d" % (from_mask(m), k))
            if m >= 1 << n:
                raise NotAMatroidError("basis %s not inside ground set of size %d" % (from_mask(m), n))
            masks.add(m)
        if not masks:
            raise NotAMatroidError("empty basis set")
        return cls(n, k, frozenset(masks))

    @classmethod
    def from_matrix(cls, m: QMatrix) -> "Matroid":
        """Column matroid of an exact matrix; rank = row rank of m."""
        from .linalg import rank as _rank

        k = _rank(m)
        rows = range(m.rows)
        bases = [
            cols
            for cols in combinations(range(m.cols), k)
            if m.submatrix(rows, cols).det() != 0
        ]
        return cls.from_bases(m.cols, k, bases)

    @classmethod
    def uniform(cls, k: int, n: int) -> "Matroid":
        return cls(n, k, frozenset(to_mask(c) for c in combinations(range(n), k)), _validated=True)

    # -- basic queries -----------------------------------------------------

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def nonbases(self) -> frozenset:
        if self._nonbases is None:
            all_k = frozenset(to_mask(c) for c in combinations(range(self.n), self.k))
            self._nonbases = all_k - self.bases
        return self._nonbases

    def is_basis(self, subset) -> bool:
        m = subset if isinstance(subset, int) else to_mask(subset)
        return m in self.bases

    def rank(self, subset) -> int:
        m = subset if isinstance(subset, int) else to_mask(subset)
        return max(popcount(b & m) for b in self.bases)

    def closure(self, subset) -> int:
        m = subset if isinstance(subset, int) else to_mask(subset)
        r = self.rank(m)
        cl = m
        for e in range(self.n):
            bit = 1 << e
            if not m & bit and self.rank(m | bit) == r:
                cl |= bit
        return cl

    def loops(self) -> int:
        covered = 0
        for b in self.bases:
            covered |= b
        return self.full_mask & ~covered

    def is_simple(self) -> bool:
        if self.loops():
            return False
        if self.k < 2:
            return self.n <= 1
        for e, f in combinations(range(self.n), 2):
            if self.rank((1 << e) | (1 << f)) < 2:
                return False
        return True

    # -- flats and half-coloops ---------------------------------------------

    def _extension_masks(self) -> dict:
        """For each independent (k-1)-set S (as mask): {e : S + e is a basis}."""
        if self._ext is None:
            ext = {}
            for b in self.bases:
                m = b
                while m:
                    bit = m & -m
                    m ^= bit
                    s = b ^ bit
                    ext[s] = ext.get(s, 0) | bit
            self._ext = ext
        return self._ext

    def hyperplane_extensions(self) -> list:
        """Distinct complements of rank-(k-1) flats, as extension masks."""
        if self._hyperplane_exts is None:
            self._hyperplane_exts = sorted(set(self._extension_masks().values()))
        return self._hyperplane_exts

    def flats_of_rank(self, r: int) -> list:
        """All flats of rank r, as masks (sorted)."""
        if not 0 <= r <= self.k:
            raise ValueError("rank out of range")
        if r == self.k:
            return [self.full_mask]
        if r == self.k - 1:
            full = self.full_mask
            return sorted(full & ~e for e in self.hyperplane_extensions())
        flats = set()
        for sub in combinations(range(self.n), r):
            m = to_mask(sub)
            if self.rank(m) == r:
                flats.add(self.closure(m))
        return sorted(flats)

    def half_coloop(self) -> Optional[HalfColoopWitness]:
        """A witness (e, F1, F2) with F1 u F2 = E - e, or None.

        F1 = F2 is allowed (the coloop case). Complements of corank-1 flats
        are exactly the extension masks, so the cover condition reads
        |E1 & E2| = 1.
        """
        exts = self.hyperplane_extensions()
        full = self.full_mask
        for i, e1 in enumerate(exts):
            for e2 in exts[i:]:
                inter = e1 & e2
                if inter and inter & (inter - 1) == 0:
                    return HalfColoopWitness(inter.bit_length() - 1, full & ~e1, full & ~e2)
        return None

    def has_half_coloop(self) -> bool:
        return self.half_coloop() is not None

    def is_self_projecting(self) -> bool:
        return self.half_coloop() is None

    def has_disjoint_basis_property(self) -> bool:
        if self.n < 2 * self.k:
            return False
        bases = self.bases
        return all(any(b & c == 0 for c in bases) for b in bases)

    # -- standard constructions ---------------------------------------------

    def dual(self) -> "Matroid":
        full = self.full_mask
        return Matroid(self.n, self.n - self.k, frozenset(full ^ b for b in self.bases), _validated=True)

    def circuits(self) -> list:
        """Minimal dependent sets, as masks (sorted)."""
        out = []
        for size in range(1, self.k + 2):
            for sub in combinations(range(self.n), size):
                m = to_mask(sub)
                if self.rank(m) < size and not any(c & m == c for c in out):
                    out.append(m)
        return sorted(out)

    def parallel_classes(self) -> list:
        """Partition of the non-loops into closure classes of single elements."""
        loops = self.loops()
        seen = 0
        classes = []
        for e in range(self.n):
            bit = 1 << e
            if bit & (loops | seen):
                continue
            cl = self.closure(bit) & ~loops
            classes.append(cl)
            seen |= cl
        return classes

    def simplify(self) -> "Matroid":
        """Delete loops, keep one representative per parallel class."""
        classes = sorted(self.parallel_classes(), key=lambda c: c & -c)
        class_of = {}
        for i, cls in enumerate(classes):
            for e in from_mask(cls):
                class_of[e] = i
        new_bases = set()
        for b in self.bases:
            nb = 0
            for e in from_mask(b):
                nb |= 1 << class_of[e]
            new_bases.add(nb)
        return Matroid(len(classes), self.k, frozenset(new_bases), _validated=True)

    def relabel(self, perm: Sequence[int]) -> "Matroid":
        """Apply a ground-set permutation; perm[old] = new."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("not a permutation")
        return Matroid(
            self.n,
            self.k,
            frozenset(to_mask(perm[e] for e in from_mask(b)) for b in self.bases),
            _validated=True,
        )

    def restrict(self, subset) -> "Matroid":
        """Restriction to a subset, relabeled to {0..m-1} in increasing order."""
        elems = from_mask(subset if isinstance(subset, int) else to_mask(subset))
        pos = {e: i for i, e in enumerate(elems)}
        r = self.rank(to_mask(elems))
        bases = set()
        for sub in combinations(elems, r):
            if self.rank(to_mask(sub)) == r:
                bases.add(to_mask(pos[e] for e in sub))
        return Matroid(len(elems), r, frozenset(bases), _validated=True)

    # -- dunder -------------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Matroid)
            and (self.n, self.k) == (other.n, other.k)
            and self.bases == other.bases
        )

    def __hash__(self):
        return hash((self.n, self.k, self.bases))

    def __repr__(self):
        return "Matroid(n=%d, k=%d, %d bases)" % (self.n, self.k, len(self.bases))


def _check_exchange(n: int, k: int, bases: frozenset):
    if not bases:
        raise NotAMatroidError("empty basis set")
    bset = bases
    for b1 in bases:
        for b2 in bases:
            d1 = b1 & ~b2
            m = d1
            while m:
                xbit = m & -m
                m ^= xbit
                base = b1 ^ xbit
                d2 = b2 & ~b1
                mm = d2
                found = False
                while mm:
                    ybit = mm & -mm
                    mm ^= ybit
                    if base | ybit in bset:
                        found = True
                        break
                if not found:
                    raise NotAMatroidError(
                        "not a matroid: exchange fails for bases %s, %s at element %d"
                        % (from_mask(b1), from_mask(b2), xbit.bit_length() - 1),
                        witness=(b1, b2, xbit.bit_length() - 1),
                    )


# -- rank-2 profile -----------------------------------------------------------


class Rank2Profile:
    """Loops plus parallel-class partition, classes ordered by size descending."""

    __slots__ = ("n", "loops", "classes")

    def __init__(self, n: int, loops: int, classes: Sequence[int]):
        self.n = n
        self.loops = loops
        self.classes = tuple(sorted(classes, key=lambda c: (-popcount(c), c)))

    @property
    def shape(self):
        return tuple(popcount(c) for c in self.classes)

    def has_half_coloop(self) -> bool:
        r = len(self.classes)
        return r in (2, 3) and popcount(self.classes[-1]) == 1

    def __repr__(self):
        return "Rank2Profile(loops=%s, classes=%s)" % (
            from_mask(self.loops),
            [from_mask(c) for c in self.classes],
        )


def rank2_profile(m: Matroid) -> Rank2Profile:
    if m.k != 2:
        raise ValueError("rank-2 profile requires a rank-2 matroid")
    return Rank2Profile(m.n, m.loops(), m.parallel_classes())


# -- isomorphism and canonical forms ------------------------------------------


def _swap_bits(mask: int, a: int, b: int) -> int:
    ba, bb = (mask >> a) & 1, (mask >> b) & 1
    if ba != bb:
        mask ^= (1 << a) | (1 << b)
    return mask


def _clone_classes(n: int, nonbases: Sequence[int]) -> list:
    """Partition into classes of pairwise swappable (interchangeable) elements."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    nb = set(nonbases)
    for a in range(n):
        for b in range(a + 1, n):
            if find(a) == find(b):
                continue
            if all(_swap_bits(m, a, b) in nb for m in nb):
                parent[find(a)] = find(b)
    classes = {}
    for e in range(n):
        classes.setdefault(find(e), []).append(e)
    return list(classes.values())


def _element_invariants(n: int, nonbases: Sequence[int], rounds: int = 2) -> list:
    """Iteratively refined iso-invariant value per element (comparable tuples)."""
    inv = [sum(1 for m in nonbases if m >> e & 1) for e in range(n)]
    for _ in range(rounds):
        pairc = [[0] * n for _ in range(n)]
        for m in nonbases:
            elems = from_mask(m)
            for i, a in enumerate(elems):
                for b in elems[i + 1 :]:
                    pairc[a][b] += 1
                    pairc[b][a] += 1
        nxt = []
        for e in range(n):
            profile = sorted((inv[f], pairc[e][f]) for f in range(n) if f != e)
            nxt.append((inv[e], tuple(profile)))
        # compress to small comparable ints, preserving order
        ordered = sorted(set(nxt))
        rankmap = {v: i for i, v in enumerate(ordered)}
        inv = [rankmap[v] for v in nxt]
    return inv


def _min_nonbasis_relabeling(n: int, nonbases: Sequence[int]):
    """Permutation (old -> new) minimizing the sorted relabeled non-basis tuple.

    Search is restricted to permutations compatible with the refined element
    invariants (sound: the restriction is itself isomorphism-invariant), with
    interchangeable-element pruning to collapse large symmetry groups.
    """
    if not nonbases:
        return tuple(range(n)), ()
    inv = _element_invariants(n, nonbases)
    # targets[l] = required invariant of the element assigned new label l
    targets = sorted(inv)
    clones = _clone_classes(n, nonbases)
    clone_id = [0] * n
    for ci, cls in enumerate(clones):
        for e in cls:
            clone_id[e] = ci

    nb_by_elem = [[m for m in nonbases if m >> e & 1] for e in range(n)]
    best: list = []
    best_perm: list = []
    assign = [-1] * n  # old -> new

    def rec(label: int, used_mask: int, partial: list):
        if best and partial and partial > best[: len(partial)]:
            return
        if label == n:
            if not best or partial < best:
                best[:] = partial
                best_perm[:] = assign
            return
        want = targets[label]
        seen_clone = set()
        for e in range(n):
            if used_mask >> e & 1 or inv[e] != want:
                continue
            if clone_id[e] in seen_clone:
                continue
            seen_clone.add(clone_id[e])
            new_used = used_mask | (1 << e)
            assign[e] = label
            completed = []
            for m in nb_by_elem[e]:
                if m & ~new_used == 0:
                    relabeled = 0
                    mm = m
                    while mm:
                        bit = mm & -mm
                        mm ^= bit
                        relabeled |= 1 << assign[bit.bit_length() - 1]
                    completed.append(relabeled)
            completed.sort()
            rec(label + 1, new_used, partial + completed)
            assign[e] = -1

    rec(0, 0, [])
    return tuple(best_perm), tuple(best)


def canonical_form(m: Matroid) -> tuple:
    """Canonical basis-set encoding: (n, k, sorted relabeled basis masks).

    Invariant under ground-set relabeling; distinct for non-isomorphic
    matroids (the relabeled non-basis set determines the basis set).
    """
    nonbases = sorted(m.nonbases())
    perm, _ = _min_nonbasis_relabeling(m.n, nonbases)
    relabeled = m.relabel(perm) if nonbases else m
    return (m.n, m.k, tuple(sorted(relabeled.bases)))


def canonical_relabeling(m: Matroid) -> tuple:
    """The permutation (old -> new) realizing canonical_form."""
    nonbases = sorted(m.nonbases())
    perm, _ = _min_nonbasis_relabeling(m.n, nonbases)
    return perm


def is_isomorphic(m1: Matroid, m2: Matroid) -> bool:
    if (m1.n, m1.k, len(m1.bases)) != (m2.n, m2.k, len(m2.bases)):
        return False
    return canonical_form(m1) == canonical_form(m2)
