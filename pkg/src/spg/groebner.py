"""Buchberger engine: normal forms, reduced bases, elimination, saturation,
Krull dimension.

Pair handling uses the Gebauer-Moeller criteria with sugar-degree selection;
coefficient growth is controlled by keeping generators integer-primitive.
Resource ceilings are first-class: long computations take a Budget and raise
BudgetExceeded carrying the partial basis.
"""

from __future__ import annotations

import time
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence

from .poly import GrevLex, Block, Mono, MonomialOrder, PolyRing, Polynomial


class BudgetExceeded(Exception):
    def __init__(self, message: str, partial=None, steps: int = 0, seconds: float = 0.0):
        super().__init__(message)
        self.partial = partial
        self.steps = steps
        self.seconds = seconds


class Budget:
    """Step-count and wall-clock ceiling shared across a computation."""

    __slots__ = ("seconds", "steps", "_start", "_used")

    def __init__(self, seconds: Optional[float] = None, steps: Optional[int] = None):
        self.seconds = seconds
        self.steps = steps
        self._start = time.monotonic()
        self._used = 0

    def elapsed(self) -> float:
        return time.monotonic() - self._start

    def tick(self, n: int = 1, partial=None):
        self._used += n
        if self.steps is not None and self._used > self.steps:
            raise BudgetExceeded(
                "step budget exhausted", partial=partial, steps=self._used,
                seconds=self.elapsed(),
            )
        if self.seconds is not None and self._used % 64 == 0:
            t = self.elapsed()
            if t > self.seconds:
                raise BudgetExceeded(
                    "time budget exhausted", partial=partial, steps=self._used,
                    seconds=t,
                )


def _mono_lcm(a: Mono, b: Mono) -> Mono:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _mono_mul(a: Mono, b: Mono) -> Mono:
    return tuple(x + y for x, y in zip(a, b))


def _mono_divides(a: Mono, b: Mono) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _mono_sub(a: Mono, b: Mono) -> Mono:
    return tuple(x - y for x, y in zip(a, b))


def spoly(f: Polynomial, g: Polynomial) -> Polynomial:
    lf, lg = f.lm(), g.lm()
    l = _mono_lcm(lf, lg)
    return f.mul_term(1 / f.lc(), _mono_sub(l, lf)) - g.mul_term(1 / g.lc(), _mono_sub(l, lg))


def _strip_content(p: dict) -> None:
    from math import gcd

    num_gcd = 0
    den_lcm = 1
    for c in p.values():
        num_gcd = gcd(num_gcd, abs(c.numerator))
        den_lcm = den_lcm * c.denominator // gcd(den_lcm, c.denominator)
    if num_gcd in (0, den_lcm):
        return
    scale = Fraction(den_lcm, num_gcd)
    for m in p:
        p[m] *= scale


def _nf_terms(terms: dict, reducers: Sequence[Polynomial], ring: PolyRing,
              allow_scale: bool, budget: Optional[Budget], partial=None) -> dict:
    """Remainder of division by `reducers`; no remainder term is divisible by
    any reducer's leading monomial. With allow_scale the result may be scaled
    by a positive rational (used for generator construction only)."""
    p = dict(terms)
    r: dict = {}
    key = ring.key
    lead = [(g.lm(), g.lc(), g.terms) for g in reducers]
    steps = 0
    while p:
        m = max(p, key=key)
        c = p[m]
        for lm, lc, gterms in lead:
            if _mono_divides(lm, m):
                q = _mono_sub(m, lm)
                f = c / lc
                for gm, gc in gterms.items():
                    t = _mono_mul(gm, q)
                    v = p.get(t)
                    if v is None:
                        p[t] = -f * gc
                    else:
                        v -= f * gc
                        if v:
                            p[t] = v
                        else:
                            del p[t]
                steps += 1
                if budget is not None:
                    budget.tick(1, partial=partial)
                if allow_scale and steps % 32 == 0 and p:
                    # scale p and r together: result stays a scalar multiple
                    from math import gcd as _g

                    num_gcd = 0
                    den_lcm = 1
                    for cc in p.values():
                        num_gcd = _g(num_gcd, abs(cc.numerator))
                        den_lcm = den_lcm * cc.denominator // _g(den_lcm, cc.denominator)
                    for cc in r.values():
                        num_gcd = _g(num_gcd, abs(cc.numerator))
                        den_lcm = den_lcm * cc.denominator // _g(den_lcm, cc.denominator)
                    if num_gcd not in (0, den_lcm):
                        scale = Fraction(den_lcm, num_gcd)
                        for k in p:
                            p[k] *= scale
                        for k in r:
                            r[k] *= scale
                break
        else:
            r[m] = c
            del p[m]
    return r


def normal_form(f: Polynomial, reducers: Sequence[Polynomial],
                budget: Optional[Budget] = None) -> Polynomial:
    """Exact remainder of f modulo the reducers (full tail reduction)."""
    reducers = [g for g in reducers if g]
    return Polynomial(f.ring, _nf_terms(f.terms, reducers, f.ring, False, budget))


def _gm_update(pairs: list, lms: list, sugars: list, t: int):
    """Install generator t into the pair set with the Gebauer-Moeller criteria."""
    lt = lms[t]
    lcm_t = [None] * t
    for i in range(t):
        lcm_t[i] = _mono_lcm(lms[i], lt)

    def coprime(i):
        return all(a == 0 or b == 0 for a, b in zip(lms[i], lt))

    # new candidate pairs, pruned among themselves
    candidates = list(range(t))
    kept: list = []
    for i in candidates:
        li = lcm_t[i]
        if coprime(i):
            kept.append(i)  # kept for domination, discarded below
            continue
        dominated = False
        for j in candidates:
            if j == i:
                continue
            lj = lcm_t[j]
            if lj != li and _mono_divides(lj, li):
                dominated = True
                break
            if lj == li and j < i and not coprime(j):
                dominated = True
                break
        if not dominated:
            kept.append(i)
    new_pairs = []
    for i in kept:
        if coprime(i):
            continue  # product criterion
        li = lcm_t[i]
        deg_l = sum(li)
        sug = max(sugars[i] + deg_l - sum(lms[i]), sugars[t] + deg_l - sum(lt))
        new_pairs.append((sug, deg_l, li, i, t))
    # chain criterion against existing pairs
    filtered = []
    for rec in pairs:
        _, _, lij, i, j = rec
        if (
            _mono_divides(lt, lij)
            and lcm_t[i] != lij
            and lcm_t[j] != lij
        ):
            continue
        filtered.append(rec)
    filtered.extend(new_pairs)
    pairs[:] = filtered


def buchberger(gens: Iterable[Polynomial], budget: Optional[Budget] = None,
               reduced: bool = True) -> List[Polynomial]:
    """Groebner basis of <gens> for the generators' ring order.

    Returns the unique reduced basis by default; [] encodes the zero ideal.
    """
    gens = [g for g in gens if g is not None and not g.is_zero()]
    if not gens:
        return []
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise ValueError("generators from different rings")
    work = sorted((g.primitive() for g in gens), key=lambda g: ring.key(g.lm()))

    G: List[Polynomial] = []
    lms: list = []
    sugars: list = []
    pairs: list = []
    for g in work:
        h_terms = _nf_terms(g.terms, G, ring, True, budget, partial=G)
        if not h_terms:
            continue
        h = Polynomial(ring, h_terms).primitive()
        if h.is_constant():
            return [ring.one()]
        G.append(h)
        lms.append(h.lm())
        sugars.append(h.degree())
        _gm_update(pairs, lms, sugars, len(G) - 1)

    if not G:
        return []

    while pairs:
        if budget is not None:
            budget.tick(1, partial=G)
        best = min(range(len(pairs)), key=lambda idx: (
            pairs[idx][0], ring.key(pairs[idx][2]), pairs[idx][4], pairs[idx][3],
        ))
        sug, _, _, i, j = pairs.pop(best)
        s = spoly(G[i], G[j])
        if s.is_zero():
            continue
        h_terms = _nf_terms(s.terms, G, ring, True, budget, partial=G)
        if not h_terms:
            continue
        h = Polynomial(ring, h_terms).primitive()
        if h.is_constant():
            return [ring.one()]
        G.append(h)
        lms.append(h.lm())
        sugars.append(max(sug, h.degree()))
        _gm_update(pairs, lms, sugars, len(G) - 1)

    return reduce_basis(G, budget) if reduced else G


def reduce_basis(G: Sequence[Polynomial], budget: Optional[Budget] = None) -> List[Polynomial]:
    """Auto-reduced monic basis: unique for the ideal and order."""
    G = [g for g in G if g]
    if not G:
        return []
    ring = G[0].ring
    by_key = sorted(G, key=lambda g: ring.key(g.lm()))
    minimal: List[Polynomial] = []
    for g in by_key:
        if not any(_mono_divides(h.lm(), g.lm()) for h in minimal):
            minimal.append(g)
    out: List[Polynomial] = []
    for idx, g in enumerate(minimal):
        others = [h for pos, h in enumerate(minimal) if pos != idx]
        r = Polynomial(ring, _nf_terms(g.terms, others, ring, False, budget))
        out.append(r.monic())
    out.sort(key=lambda g: ring.key(g.lm()))
    return out


def is_groebner(G: Sequence[Polynomial], budget: Optional[Budget] = None) -> bool:
    """Exhaustive S-polynomial check (test oracle; no pair criteria)."""
    G = [g for g in G if g]
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            if normal_form(spoly(G[i], G[j]), G, budget):
                return False
    return True


class GroebnerBasis:
    """Reduced basis bundled with its order."""

    __slots__ = ("generators", "order", "reduced")

    def __init__(self, generators: Sequence[Polynomial], order: MonomialOrder,
                 reduced: bool = True):
        self.generators = list(generators)
        self.order = order
        self.reduced = reduced

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self.generators).is_zero()

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        return "GroebnerBasis(%d gens; %s)" % (len(self.generators), self.order.name)


def is_unit_ideal(gens: Sequence[Polynomial], budget: Optional[Budget] = None) -> bool:
    gb = buchberger(gens, budget)
    return len(gb) == 1 and gb[0].is_constant()


# -- elimination and saturation --------------------------------------------------


def _fresh_name(names: Sequence[str], stem: str = "t") -> str:
    if stem not in names:
        return stem
    i = 0
    while "%s%d" % (stem, i) in names:
        i += 1
    return "%s%d" % (stem, i)


def eliminate(gens: Sequence[Polynomial], elim: Sequence[int],
              budget: Optional[Budget] = None,
              target_order: Optional[MonomialOrder] = None,
              ring: Optional[PolyRing] = None):
    """Generators of <gens> intersected with Q[remaining variables].

    Returns (generators, ring) where the ring keeps the non-eliminated
    variables in their original relative order.
    """
    gens = [g for g in gens if g and not g.is_zero()]
    if not gens:
        if ring is None:
            raise ValueError("eliminating from the zero ideal requires an explicit ring")
        rest = [i for i in range(ring.nvars) if i not in set(elim)]
        return [], PolyRing([ring.names[i] for i in rest], target_order or GrevLex())
    ring = gens[0].ring
    elim = sorted(set(elim))
    rest = [i for i in range(ring.nvars) if i not in elim]
    down = PolyRing([ring.names[i] for i in rest], target_order or GrevLex())
    work_ring = PolyRing(
        [ring.names[i] for i in elim] + [ring.names[i] for i in rest],
        Block(len(elim)),
    )
    up_map = [0] * ring.nvars
    for pos, i in enumerate(elim):
        up_map[i] = pos
    for pos, i in enumerate(rest):
        up_map[i] = len(elim) + pos
    lifted = [g.project(work_ring, up_map) for g in gens]
    gb = buchberger(lifted, budget)
    head = len(elim)
    down_map = [-1] * work_ring.nvars
    for pos in range(len(rest)):
        down_map[head + pos] = pos
    out = []
    for g in gb:
        if all(all(e == 0 for e in m[:head]) for m in g.terms):
            out.append(g.project(down, down_map))
    return out, down


def saturate(gens: Sequence[Polynomial], f: Polynomial,
             budget: Optional[Budget] = None) -> List[Polynomial]:
    """(I : f^infinity) via a fresh inverse variable, returned in f's ring."""
    if f.is_zero():
        raise ValueError("cannot saturate by zero")
    ring = f.ring
    gens = [g for g in gens if g and not g.is_zero()]
    if f.is_constant():
        return reduce_basis(gens, budget) if gens else []
    tname = _fresh_name(ring.names)
    work = PolyRing((tname,) + ring.names, Block(1))
    up = [i + 1 for i in range(ring.nvars)]
    lifted = [g.project(work, up) for g in gens]
    t = work.var(0)
    lifted.append(t * f.project(work, up) - 1)
    gb = buchberger(lifted, budget)
    down_map = [-1] + list(range(ring.nvars))
    out = []
    for g in gb:
        if all(m[0] == 0 for m in g.terms):
            out.append(g.project(ring, down_map))
    return out


def saturate_by_all(gens: Sequence[Polynomial], factors: Sequence[Polynomial],
                    budget: Optional[Budget] = None) -> List[Polynomial]:
    """Saturation by a product, iterated factor by factor to a fixed point.

    Factors are deduped (primitive parts) and taken in increasing degree.
    """
    uniq = {}
    for f in factors:
        if f.is_zero():
            raise ValueError("cannot saturate by zero")
        if f.is_constant():
            continue
        p = f.primitive()
        uniq[frozenset(p.terms.items())] = p
    todo = sorted(uniq.values(), key=lambda p: (p.degree(), len(p.terms)))
    current = buchberger([g for g in gens if g and not g.is_zero()], budget)
    if not todo or (len(current) == 1 and current[0].is_constant()):
        return current
    while True:
        before = [frozenset(g.terms.items()) for g in current]
        for f in todo:
            current = reduce_basis(saturate(current, f, budget), budget)
            if len(current) == 1 and current[0].is_constant():
                return current
        if [frozenset(g.terms.items()) for g in current] == before:
            return current


# -- Krull dimension ---------------------------------------------------------------


def _max_independent(supports: List[frozenset], nvars: int) -> int:
    """Largest |U| such that no support is contained in U."""
    minimal = []
    for s in sorted(supports, key=len):
        if not any(m <= s for m in minimal):
            minimal.append(s)
    best = 0

    def rec(excluded: frozenset):
        nonlocal best
        if nvars - len(excluded) <= best:
            return
        viol = next((s for s in minimal if not (s & excluded)), None)
        if viol is None:
            best = max(best, nvars - len(excluded))
            return
        for v in sorted(viol):
            rec(excluded | {v})

    rec(frozenset())
    return best


def ideal_dimension(gens: Sequence[Polynomial], budget: Optional[Budget] = None,
                    ring: Optional[PolyRing] = None) -> int:
    """Krull dimension of the quotient ring; -1 for the unit ideal."""
    gens = [g for g in gens if g is not None and not g.is_zero()]
    if not gens:
        if ring is None:
            raise ValueError("dimension of the zero ideal requires an explicit ring")
        return ring.nvars
    r = gens[0].ring
    gb = buchberger(gens, budget)
    if not gb:
        return r.nvars
    if gb[0].is_constant():
        return -1
    supports = [frozenset(i for i, e in enumerate(g.lm()) if e) for g in gb]
    return _max_independent(supports, r.nvars)
