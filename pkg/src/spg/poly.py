"""Sparse multivariate polynomials over Q with pluggable monomial orders.

Monomials are exponent tuples; polynomials are immutable term dicts tied to a
ring. Rings own the variable names and the order; all comparisons go through
cached sort keys. The plain-text grammar (`3/5*x_1_1^2*l2 - 7`) round-trips
bit-exactly.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, Optional, Sequence, Tuple

Mono = Tuple[int, ...]


class MonomialOrder:
    name = "order"

    def key(self, exps: Mono):
        raise NotImplementedError

    def __repr__(self):
        return self.name


class GrevLex(MonomialOrder):
    name = "grevlex"

    def key(self, exps: Mono):
        return (sum(exps), tuple(-e for e in reversed(exps)))


class Lex(MonomialOrder):
    name = "lex"

    def key(self, exps: Mono):
        return exps


class Block(MonomialOrder):
    """Elimination order: the first `head` variables dominate the rest."""

    def __init__(self, head: int, head_order: MonomialOrder = None,
                 tail_order: MonomialOrder = None):
        self.head = head
        self.head_order = head_order or GrevLex()
        self.tail_order = tail_order or GrevLex()
        self.name = "block(%d;%s,%s)" % (head, self.head_order.name, self.tail_order.name)

    def key(self, exps: Mono):
        h = self.head
        return (self.head_order.key(exps[:h]), self.tail_order.key(exps[h:]))


class PolyRing:
    """Polynomial ring Q[names] with a fixed monomial order."""

    __slots__ = ("names", "order", "nvars", "_index", "_keycache", "zero_mono")

    def __init__(self, names: Sequence[str], order: MonomialOrder = None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        for nm in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", nm):
                raise ValueError("bad variable name %r" % nm)
        self.names = names
        self.order = order or GrevLex()
        self.nvars = len(names)
        self._index = {nm: i for i, nm in enumerate(names)}
        self._keycache: dict = {}
        self.zero_mono = (0,) * self.nvars

    def key(self, mono: Mono):
        k = self._keycache.get(mono)
        if k is None:
            k = self.order.key(mono)
            self._keycache[mono] = k
        return k

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        return PolyRing(self.names, order)

    # -- element constructors ------------------------------------------------

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {self.zero_mono: Fraction(1)})

    def constant(self, c) -> "Polynomial":
        c = Fraction(c)
        return Polynomial(self, {self.zero_mono: c} if c else {})

    def var(self, which) -> "Polynomial":
        i = which if isinstance(which, int) else self._index[which]
        mono = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {mono: Fraction(1)})

    def gens(self) -> list:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exps: Mono, coeff=1) -> "Polynomial":
        coeff = Fraction(coeff)
        if len(exps) != self.nvars:
            raise ValueError("exponent length mismatch")
        return Polynomial(self, {tuple(exps): coeff} if coeff else {})

    def index(self, name: str) -> int:
        return self._index[name]

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.names == other.names
            and self.order.name == other.order.name
        )

    def __hash__(self):
        return hash((self.names, self.order.name))

    def __repr__(self):
        return "PolyRing(%s; %s)" % (",".join(self.names), self.order.name)

    # -- text grammar ---------------------------------------------------------

    def parse(self, text: str) -> "Polynomial":
        return _parse_poly(self, text)


_TERM_SPLIT = re.compile(r"(?=[+-])")
_NUM = re.compile(r"[0-9]+(?:/[0-9]+)?")


def _parse_poly(ring: PolyRing, text: str) -> "Polynomial":
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial text")
    if s == "0":
        return ring.zero()
    terms: Dict[Mono, Fraction] = {}
    for chunk in _TERM_SPLIT.split(s):
        if not chunk:
            continue
        sign = Fraction(1)
        if chunk[0] == "+":
            chunk = chunk[1:]
        elif chunk[0] == "-":
            sign = Fraction(-1)
            chunk = chunk[1:]
        if not chunk:
            raise ValueError("dangling sign in %r" % text)
        coeff = Fraction(1)
        exps = [0] * ring.nvars
        for factor in chunk.split("*"):
            if not factor:
                raise ValueError("empty factor in %r" % text)
            if _NUM.fullmatch(factor):
                coeff *= Fraction(factor)
                continue
            if "^" in factor:
                nm, _, epart = factor.partition("^")
                e = int(epart)
            else:
                nm, e = factor, 1
            if nm not in ring._index:
                raise ValueError("unknown variable %r" % nm)
            exps[ring._index[nm]] += e
        mono = tuple(exps)
        c = terms.get(mono, Fraction(0)) + sign * coeff
        if c:
            terms[mono] = c
        else:
            terms.pop(mono, None)
    return Polynomial(ring, terms)


class Polynomial:
    __slots__ = ("ring", "terms", "_lm")

    def __init__(self, ring: PolyRing, terms: Dict[Mono, Fraction]):
        self.ring = ring
        self.terms = terms
        self._lm: Optional[Mono] = None

    # -- leading data ----------------------------------------------------------

    def lm(self) -> Optional[Mono]:
        if self._lm is None and self.terms:
            self._lm = max(self.terms, key=self.ring.key)
        return self._lm

    def lc(self) -> Fraction:
        m = self.lm()
        return self.terms[m] if m is not None else Fraction(0)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring.zero_mono in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.terms.get(self.ring.zero_mono, Fraction(0))

    def __bool__(self):
        return bool(self.terms)

    # -- arithmetic -------------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ValueError("mixed rings")
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        res = dict(self.terms)
        for m, c in other.terms.items():
            v = res.get(m)
            if v is None:
                res[m] = c
            else:
                v += c
                if v:
                    res[m] = v
                else:
                    del res[m]
        return Polynomial(self.ring, res)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        res = dict(self.terms)
        for m, c in other.terms.items():
            v = res.get(m)
            if v is None:
                res[m] = -c
            else:
                v -= c
                if v:
                    res[m] = v
                else:
                    del res[m]
        return Polynomial(self.ring, res)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = Fraction(other)
            if not c:
                return self.ring.zero()
            return Polynomial(self.ring, {m: c * v for m, v in self.terms.items()})
        other = self._coerce(other)
        if len(self.terms) > len(other.terms):
            a, b = other, self
        else:
            a, b = self, other
        res: Dict[Mono, Fraction] = {}
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                v = res.get(m)
                if v is None:
                    res[m] = c1 * c2
                else:
                    v += c1 * c2
                    if v:
                        res[m] = v
                    else:
                        del res[m]
        return Polynomial(self.ring, res)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    def mul_term(self, coeff: Fraction, mono: Mono) -> "Polynomial":
        if not coeff:
            return self.ring.zero()
        return Polynomial(
            self.ring,
            {tuple(x + y for x, y in zip(m, mono)): c * coeff for m, c in self.terms.items()},
        )

    # -- normalization ------------------------------------------------------------

    def monic(self) -> "Polynomial":
        c = self.lc()
        if c in (0, 1):
            return self
        inv = 1 / c
        return Polynomial(self.ring, {m: v * inv for m, v in self.terms.items()})

    def primitive(self) -> "Polynomial":
        """Integer-primitive scalar multiple with positive leading coefficient."""
        if not self.terms:
            return self
        num_gcd = 0
        den_lcm = 1
        for c in self.terms.values():
            num_gcd = gcd(num_gcd, abs(c.numerator))
            den_lcm = den_lcm * c.denominator // gcd(den_lcm, c.denominator)
        scale = Fraction(den_lcm, num_gcd)
        if self.lc() < 0:
            scale = -scale
        if scale == 1:
            return self
        return Polynomial(self.ring, {m: c * scale for m, c in self.terms.items()})

    # -- substitution and evaluation ------------------------------------------------

    def substitute(self, values: Dict[int, object]) -> "Polynomial":
        """Replace variables (by index) with constants or ring elements."""
        ring = self.ring
        out = ring.zero()
        for m, c in self.terms.items():
            factor = ring.constant(c)
            rest = list(m)
            for i, val in values.items():
                e = m[i]
                if not e:
                    continue
                rest[i] = 0
                if isinstance(val, Polynomial):
                    factor = factor * val**e
                else:
                    factor = factor * (Fraction(val) ** e)
            out = out + factor.mul_term(Fraction(1), tuple(rest))
        return out

    def evaluate(self, values: Sequence) -> Fraction:
        vals = [Fraction(v) for v in values]
        if len(vals) != self.ring.nvars:
            raise ValueError("value count mismatch")
        total = Fraction(0)
        for m, c in self.terms.items():
            prod = c
            for v, e in zip(vals, m):
                if e:
                    prod *= v**e
            total += prod
        return total

    def project(self, target: PolyRing, mapping: Sequence[int]) -> "Polynomial":
        """Reindex into `target`; mapping[i] = target index of our variable i,
        or -1 for variables required to be absent."""
        out: Dict[Mono, Fraction] = {}
        for m, c in self.terms.items():
            exps = [0] * target.nvars
            for i, e in enumerate(m):
                if not e:
                    continue
                j = mapping[i]
                if j < 0:
                    raise ValueError("polynomial involves a dropped variable")
                exps[j] = e
            out[tuple(exps)] = c
        return Polynomial(target, out)

    def support(self) -> frozenset:
        """Indices of variables occurring in some term."""
        seen = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    seen.add(i)
        return frozenset(seen)

    # -- comparisons / text ------------------------------------------------------------

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: self.ring.key(t[0]), reverse=True)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring.names == other.ring.names and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.names, frozenset(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = []
            if abs(c) != 1 or not any(m):
                factors.append(str(abs(c)))
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(self.ring.names[i])
                elif e > 1:
                    factors.append("%s^%d" % (self.ring.names[i], e))
            body = "*".join(factors)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self):
        return "Polynomial(%s)" % self
