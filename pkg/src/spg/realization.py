"""Realization spaces of matroids and their isotropy-constrained subspaces.

The pipeline fixes the gauge on a chart (Id_k | x), cuts the non-basis
minors, normalizes provably-nonzero entries to 1, and saturates away the
basis-minor loci; the isotropy variant adjoins the entries of X diag(l) X^T,
saturates by every l_i and eliminates the l block. Dimensions are Krull
dimensions of the minor-saturated ideals; -1 encodes an empty space.
"""

from __future__ import annotations

import time
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence

from .groebner import (
    Budget,
    BudgetExceeded,
    buchberger,
    eliminate,
    ideal_dimension,
    normal_form,
    reduce_basis,
    saturate_by_all,
)
from .linalg import QMatrix, veronese_pairs
from .matroid import Matroid, from_mask, to_mask
from .poly import GrevLex, PolyRing, Polynomial


class CoordinatizedMatroid:
    """A relabeled matroid with {0..k-1} a basis, plus the chart bookkeeping."""

    __slots__ = ("matroid", "perm", "frame")

    def __init__(self, matroid: Matroid, perm: Sequence[int], frame: bool = False):
        self.matroid = matroid
        self.perm = tuple(perm)
        self.frame = frame

    def __eq__(self, other):
        return (
            isinstance(other, CoordinatizedMatroid)
            and self.matroid == other.matroid
            and self.perm == other.perm
        )

    def __repr__(self):
        return "CoordinatizedMatroid(%r, frame=%s)" % (self.matroid, self.frame)


def _relabel_to_front(m: Matroid, front: Sequence[int]) -> tuple:
    """Permutation old->new sending `front` (in order) to 0..len(front)-1."""
    rest = [e for e in range(m.n) if e not in set(front)]
    order = list(front) + rest
    perm = [0] * m.n
    for new, old in enumerate(order):
        perm[old] = new
    return tuple(perm)


def coordinatize(m: Matroid) -> CoordinatizedMatroid:
    """Relabel so the lexicographically least basis becomes {0..k-1}."""
    best = min(from_mask(b) for b in m.bases)
    perm = _relabel_to_front(m, best)
    return CoordinatizedMatroid(m.relabel(perm), perm)


def find_frame_relabeling(m: Matroid) -> Optional[CoordinatizedMatroid]:
    """Relabel so a (k+1)-circuit occupies columns 0..k, if one exists.

    A (k+1)-subset is such a circuit iff all of its k-subsets are bases; the
    first k elements then form the identity block and the extra element sits
    in the first variable column.
    """
    k = m.k
    for sub in combinations(range(m.n), k + 1):
        if all(to_mask(sub[:i] + sub[i + 1 :]) in m.bases for i in range(k + 1)):
            perm = _relabel_to_front(m, sub)
            return CoordinatizedMatroid(m.relabel(perm), perm, frame=True)
    return None


def _symbolic_columns(coord: CoordinatizedMatroid, ring: PolyRing,
                      entry_map: Dict[tuple, object]) -> List[list]:
    """Columns of (Id_k | x) as lists of ring elements / constants."""
    m = coord.matroid
    k, n = m.k, m.n
    cols = []
    for j in range(n):
        if j < k:
            cols.append([ring.constant(1 if i == j else 0) for i in range(k)])
        else:
            col = []
            for i in range(k):
                v = entry_map[(i, j - k)]
                col.append(ring.constant(v) if isinstance(v, (int, Fraction)) else v)
            cols.append(col)
    return cols


def _sym_det(cols: List[list]) -> Polynomial:
    """Determinant of a list of k symbolic column vectors (cofactor expansion)."""
    k = len(cols)

    def rec(j: int, rows: tuple) -> Polynomial:
        if j == k:
            return cols[0][0].ring.one()
        first = rows[0] if False else None
        acc = None
        for pos, i in enumerate(rows):
            e = cols[j][i]
            if e.is_zero():
                continue
            sub = rec(j + 1, rows[:pos] + rows[pos + 1 :])
            term = e * sub if pos % 2 == 0 else -(e * sub)
            acc = term if acc is None else acc + term
        return acc if acc is not None else cols[0][0].ring.zero()

    return rec(0, tuple(range(k)))


class RealizationSpace:
    """Generators, localization set and invariants of a (self-projecting)
    realization space in a fixed chart."""

    __slots__ = (
        "kind", "coord", "ring", "gens", "inverted", "dimension", "empty",
        "normalized_ones", "forced_zero", "timeout", "seconds",
    )

    def __init__(self, kind, coord, ring, gens, inverted, dimension, empty,
                 normalized_ones, forced_zero, timeout, seconds):
        self.kind = kind
        self.coord = coord
        self.ring = ring
        self.gens = gens
        self.inverted = inverted
        self.dimension = dimension
        self.empty = empty
        self.normalized_ones = normalized_ones
        self.forced_zero = forced_zero
        self.timeout = timeout
        self.seconds = seconds

    def point(self) -> Optional[QMatrix]:
        """Rational chart point when the reduced generators pin every variable
        (x_v - c); None otherwise."""
        if self.timeout or self.empty or self.dimension != 0:
            return None
        values: Dict[int, Fraction] = {}
        for g in self.gens:
            terms = g.sorted_terms()
            if len(terms) > 2:
                return None
            lm, lc = terms[0]
            if sum(lm) != 1:
                return None
            var = next(i for i, e in enumerate(lm) if e)
            const = Fraction(0)
            if len(terms) == 2:
                tm, tc = terms[1]
                if any(tm):
                    return None
                const = -tc / lc
            values[var] = const
        if len(values) < self.ring.nvars:
            return None
        return self.chart_matrix({i: values[i] for i in range(self.ring.nvars)})

    def chart_matrix(self, values: Dict[int, Fraction]) -> QMatrix:
        """The (Id_k | x) matrix at an assignment of the free variables."""
        m = self.coord.matroid
        k, n = m.k, m.n
        name_to_val = {self.ring.names[i]: Fraction(v) for i, v in values.items()}
        rows = []
        for i in range(k):
            row = [Fraction(1 if i == j else 0) for j in range(k)]
            for j in range(n - k):
                nm = _xname(i, j)
                if nm in name_to_val:
                    row.append(name_to_val[nm])
                elif nm in self.forced_zero:
                    row.append(Fraction(0))
                elif nm in self.normalized_ones:
                    row.append(Fraction(1))
                else:
                    raise ValueError("unassigned variable %s" % nm)
            rows.append(row)
        return QMatrix(rows)

    def __repr__(self):
        state = "timeout" if self.timeout else ("empty" if self.empty else "dim %s" % self.dimension)
        return "RealizationSpace(%s, %r, %s)" % (self.kind, self.coord.matroid, state)


def _xname(i: int, j: int) -> str:
    return "x_%d_%d" % (i + 1, j + 1)


def _chart_setup(coord: CoordinatizedMatroid):
    """Forced-zero entries, normalization rule, the free-variable ring and the
    entry map (grid position -> constant or ring variable)."""
    m = coord.matroid
    k, n = m.k, m.n
    base_mask = (1 << k) - 1
    forced = [[False] * (n - k) for _ in range(k)]
    for i in range(k):
        for j in range(k, n):
            sub = (base_mask ^ (1 << i)) | (1 << j)
            if sub not in m.bases:
                forced[i][j - k] = True
    ones = set()
    for jj in range(n - k):
        for i in range(k):
            if not forced[i][jj]:
                ones.add((i, jj))
                break
    rows_with_one = {i for (i, _) in ones}
    for i in range(k):
        if i in rows_with_one:
            continue
        for jj in range(n - k):
            if not forced[i][jj] and (i, jj) not in ones:
                ones.add((i, jj))
                break
    # Completion: the row/column scaling torus acts on the chart with one
    # degree of freedom per edge of a spanning forest of the bipartite graph
    # whose edges are the unforced entries. The passes above pin an acyclic
    # set; keep pinning entries that join distinct components until the
    # forest is maximal, else a residual torus factor inflates the dimension.
    parent = list(range(k + (n - k)))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for (i, jj) in ones:
        parent[find(i)] = find(k + jj)
    for jj in range(n - k):
        for i in range(k):
            if forced[i][jj] or (i, jj) in ones:
                continue
            a, b = find(i), find(k + jj)
            if a != b:
                ones.add((i, jj))
                parent[a] = b
    free = [
        (i, jj)
        for i in range(k)
        for jj in range(n - k)
        if not forced[i][jj] and (i, jj) not in ones
    ]
    ring = PolyRing([_xname(i, jj) for (i, jj) in free], GrevLex())
    entry_map: Dict[tuple, object] = {}
    for i in range(k):
        for jj in range(n - k):
            if forced[i][jj]:
                entry_map[(i, jj)] = Fraction(0)
            elif (i, jj) in ones:
                entry_map[(i, jj)] = Fraction(1)
            else:
                entry_map[(i, jj)] = ring.var(_xname(i, jj))
    forced_names = tuple(_xname(i, jj) for i in range(k) for jj in range(n - k) if forced[i][jj])
    one_names = tuple(_xname(i, jj) for i in range(k) for jj in range(n - k) if (i, jj) in ones)
    return ring, entry_map, one_names, forced_names


def _chart_ideal(coord: CoordinatizedMatroid, ring: PolyRing, entry_map) -> tuple:
    """Non-basis determinant generators and the distinct basis-minor list."""
    m = coord.matroid
    cols = _symbolic_columns(coord, ring, entry_map)
    gens = []
    for nb in sorted(m.nonbases()):
        det = _sym_det([cols[j] for j in from_mask(nb)])
        if det.is_zero():
            continue
        gens.append(det.primitive())
    minors = {}
    for b in sorted(m.bases):
        det = _sym_det([cols[j] for j in from_mask(b)])
        if det.is_constant():
            continue
        p = det.primitive()
        minors[frozenset(p.terms.items())] = p
    inverted = sorted(minors.values(), key=lambda p: (p.degree(), len(p.terms), str(p)))
    return gens, inverted, cols


def realization_space(m: Matroid, budget: Optional[Budget] = None,
                      coord: Optional[CoordinatizedMatroid] = None) -> RealizationSpace:
    """Chart ideal of all realizations, localized away from basis minors."""
    coord = coord or coordinatize(m)
    ring, entry_map, ones, forced = _chart_setup(coord)
    t0 = time.monotonic()
    try:
        gens, inverted, _ = _chart_ideal(coord, ring, entry_map)
        sat = saturate_by_all(gens, inverted, budget)
        gb = reduce_basis(sat, budget)
        dim = ideal_dimension(gb, budget, ring=ring)
        empty = dim == -1
        return RealizationSpace("R", coord, ring, gb, inverted, dim, empty,
                                ones, forced, False, time.monotonic() - t0)
    except BudgetExceeded as exc:
        partial = [p for p in (exc.partial or []) if isinstance(p, Polynomial)]
        return RealizationSpace("R", coord, ring, partial, [], None, None,
                                ones, forced, True, time.monotonic() - t0)


def _lambda_names(n: int) -> list:
    return ["l%d" % (i + 1) for i in range(n)]


def sp_realization_space(m: Matroid, budget: Optional[Budget] = None,
                         coord: Optional[CoordinatizedMatroid] = None,
                         base: Optional[RealizationSpace] = None) -> RealizationSpace:
    """Chart ideal of the isotropy-admitting realizations.

    Builds on the realization ideal: adjoin the k(k+1)/2 entries of
    X diag(l) X^T, saturate by every l_i, eliminate the l block, then
    saturate by the basis minors.
    """
    coord = coord or (base.coord if base is not None else coordinatize(m))
    if base is None or base.timeout:
        base = realization_space(m, budget, coord)
    ring, entry_map, ones, forced = _chart_setup(coord)
    t0 = time.monotonic()
    if base.timeout:
        return RealizationSpace("S", coord, ring, [], [], None, None,
                                ones, forced, True, time.monotonic() - t0)
    k, n = coord.matroid.k, coord.matroid.n
    if base.empty:
        return RealizationSpace("S", coord, ring, [ring.one()], base.inverted, -1, True,
                                ones, forced, False, time.monotonic() - t0)
    try:
        lam_names = _lambda_names(n)
        work = PolyRing(lam_names + list(ring.names), GrevLex())
        up = [n + i for i in range(ring.nvars)]
        gens = [g.project(work, up) for g in base.gens]
        cols = _symbolic_columns(coord, ring, entry_map)
        wcols = [[e.project(work, up) for e in col] for col in cols]
        lam = [work.var(i) for i in range(n)]
        for a, b in veronese_pairs(k):
            entry = work.zero()
            for l in range(n):
                ca, cb = wcols[l][a], wcols[l][b]
                if ca.is_zero() or cb.is_zero():
                    continue
                entry = entry + lam[l] * ca * cb
            if not entry.is_zero():
                gens.append(entry)
        # Multipliers occurring as c*l_v + rest with rest free of l_v (the
        # identity columns guarantee this for the first k) are substituted
        # away: an exact ring isomorphism, with the saturation factor l_v
        # turning into its image. Shrinks every Groebner run downstream.
        sat_factors = {i: lam[i] for i in range(n)}
        gens, sat_factors = _solve_linear_multipliers(gens, sat_factors, n)
        sat = saturate_by_all(gens, list(sat_factors.values()), budget)
        xgens, down = eliminate(sat, list(range(n)), budget, ring=work)
        assert down.names == ring.names
        xgens = [g.project(ring, list(range(ring.nvars))) for g in xgens]
        final = saturate_by_all(xgens, base.inverted, budget)
        gb = reduce_basis(final, budget)
        dim = ideal_dimension(gb, budget, ring=ring)
        empty = dim == -1
        space = RealizationSpace("S", coord, ring, gb, base.inverted, dim, empty,
                                 ones, forced, False, time.monotonic() - t0)
        # structural containment of the realization ideal in the isotropy ideal
        if not empty:
            for g in base.gens:
                assert normal_form(g, gb).is_zero(), "realization ideal not contained"
        return space
    except BudgetExceeded as exc:
        partial = [p for p in (exc.partial or []) if isinstance(p, Polynomial)]
        return RealizationSpace("S", coord, ring, partial, base.inverted, None, None,
                                ones, forced, True, time.monotonic() - t0)


def _find_linear_multiplier(gens, live: set):
    """A generator of the shape c*l_v + rest (rest free of l_v, c constant)."""
    for idx, g in enumerate(gens):
        for v in live:
            lin = None
            ok = True
            for mono, coeff in g.terms.items():
                ev = mono[v]
                if ev == 0:
                    continue
                if ev > 1 or any(e and i != v for i, e in enumerate(mono)):
                    ok = False
                    break
                lin = coeff
            if ok and lin is not None:
                return idx, v, lin
    return None


def _solve_linear_multipliers(gens, sat_factors, n):
    """Substitute out multiplier variables solvable from a generator that is
    linear in them with constant coefficient (an exact ring isomorphism; the
    saturation factor of a solved variable becomes its image). Returns the
    rewritten generators and factors; a zero image means the saturation is
    the unit ideal, signalled by ([1], {})."""
    gens = [g for g in gens if not g.is_zero()]
    while True:
        hit = _find_linear_multiplier(gens, set(sat_factors))
        if hit is None:
            return gens, sat_factors
        idx, v, c = hit
        g = gens[idx]
        ring = g.ring
        unit = tuple(1 if i == v else 0 for i in range(ring.nvars))
        image = (g - ring.monomial(unit, c)) * (-1 / c)
        replaced = {}
        for w, f in sat_factors.items():
            nf = image if w == v else f.substitute({v: image})
            replaced[w] = nf
        if any(f.is_zero() for f in replaced.values()):
            return [ring.one()], {}
        sat_factors = {w: f for w, f in replaced.items() if not f.is_constant()}
        gens = [h.substitute({v: image}) for pos, h in enumerate(gens) if pos != idx]
        gens = [h for h in gens if not h.is_zero()]
        if any(h.is_constant() for h in gens):
            return [ring.one()], {}


VERDICT_EQUAL = "equal"
VERDICT_SMALLER = "S-strictly-smaller"
VERDICT_S_EMPTY = "S-empty-R-nonempty"
VERDICT_BOTH_EMPTY = "both-empty"
VERDICT_UNDETERMINED = "undetermined"


def compare_spaces(r: RealizationSpace, s: RealizationSpace) -> str:
    """Classify S against R for the same matroid and coordinatization."""
    if r.coord != s.coord:
        raise ValueError("spaces use different coordinatizations")
    if r.timeout or s.timeout:
        return VERDICT_UNDETERMINED
    if r.empty and s.empty:
        return VERDICT_BOTH_EMPTY
    if s.empty:
        return VERDICT_S_EMPTY
    if all(normal_form(g, r.gens).is_zero() for g in s.gens):
        return VERDICT_EQUAL
    return VERDICT_SMALLER


def sgr_vanishing_test() -> tuple:
    """Degree-12 determinant of the Veronese matrix of a symbolic 3x6 chart.

    Only (k,n) = (3,6) makes the Veronese matrix square. Returns the
    polynomial in the 18 entry variables together with an exact evaluator.
    """
    k, n = 3, 6
    names = [_xname(i, j) for i in range(k) for j in range(n)]
    ring = PolyRing(names, GrevLex())
    xs = [[ring.var(_xname(i, j)) for j in range(n)] for i in range(k)]
    pairs = veronese_pairs(k)
    cols = [[xs[a][j] * xs[b][j] for (a, b) in pairs] for j in range(n)]
    det = _sym_det(cols)

    def evaluate(matrix: QMatrix) -> Fraction:
        if (matrix.rows, matrix.cols) != (k, n):
            raise ValueError("evaluator expects a 3x6 matrix")
        values = [matrix[i, j] for i in range(k) for j in range(n)]
        return det.evaluate(values)

    return det, evaluate
