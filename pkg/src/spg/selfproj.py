"""Deciding and certifying isotropy of rational point configurations.

A full-rank k x n matrix X is self-projecting when some lambda with all
coordinates nonzero solves X @ diag(lambda) @ X^T = 0; equivalently lambda
lies in the right kernel of the degree-2 Veronese matrix of X and in the
torus. Certification is exact and returns either a rational witness or a
refusal naming the obstruction.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .linalg import (
    PlueckerVector,
    QMatrix,
    cocircuit_matrix,
    kernel_basis,
    multi_veronese,
    pluecker,
    rank,
    set_complement_sign,
)


class Witness:
    """A torus vector lambda with X diag(lambda) X^T = 0."""

    __slots__ = ("lam",)

    def __init__(self, lam: Sequence[Fraction]):
        lam = tuple(Fraction(x) for x in lam)
        if any(x == 0 for x in lam):
            raise ValueError("witness coordinates must be nonzero")
        self.lam = lam

    def __repr__(self):
        return "Witness(%s)" % (", ".join(str(x) for x in self.lam))


class CertifyResult:
    __slots__ = ("witness", "reason", "vanishing")

    def __init__(self, witness: Optional[Witness] = None, reason: str = "",
                 vanishing: tuple = ()):
        self.witness = witness
        self.reason = reason
        self.vanishing = vanishing

    def __bool__(self):
        return self.witness is not None


def certify_self_projecting(x: QMatrix) -> CertifyResult:
    """Return a witness if the kernel of nu(X) meets the torus, else a refusal.

    A linear subspace misses the torus iff it lies inside a coordinate
    hyperplane, so it suffices that every coordinate is nonzero on some
    kernel basis vector; a witness is then found among the combinations
    with coefficients (1, t, t^2, ...) for integer t.
    """
    if rank(x) < x.rows:
        raise ValueError("matrix is rank deficient")
    ker = kernel_basis(multi_veronese(x))
    if not ker:
        return CertifyResult(reason="kernel trivial")
    n = x.cols
    dead = tuple(i for i in range(n) if all(v[i] == 0 for v in ker))
    if dead:
        return CertifyResult(
            reason="kernel lies in coordinate hyperplanes %s" % (dead,),
            vanishing=dead,
        )
    t = 1
    while True:
        weights = [Fraction(t) ** j for j in range(len(ker))]
        lam = tuple(sum(w * v[i] for w, v in zip(weights, ker)) for i in range(n))
        if all(c != 0 for c in lam):
            w = Witness(lam)
            assert stiefel_residual(x, w.lam).is_zero()
            return CertifyResult(witness=w)
        t += 1


def stiefel_residual(x: QMatrix, lam: Sequence) -> QMatrix:
    """X diag(lambda) X^T, exactly."""
    if len(lam) != x.cols:
        raise ValueError("lambda length mismatch")
    return x * QMatrix.diagonal([Fraction(v) for v in lam]) * x.transpose()


def cocircuit_residual(q: PlueckerVector, lam: Sequence) -> QMatrix:
    """D diag(lambda) D^T for the cocircuit matrix D of q."""
    if len(lam) != q.n:
        raise ValueError("lambda length mismatch")
    d = cocircuit_matrix(q)
    return d * QMatrix.diagonal([Fraction(v) for v in lam]) * d.transpose()


def _rational_sqrt(x: Fraction) -> Optional[Fraction]:
    if x < 0:
        return None
    num, den = x.numerator, x.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


class SelfDualRelation:
    __slots__ = ("holds", "c", "failing", "over_extension")

    def __init__(self, holds, c=None, failing=None, over_extension=False):
        self.holds = holds
        self.c = c
        self.failing = failing
        self.over_extension = over_extension

    def __bool__(self):
        return self.holds


def check_selfdual_relation(x: QMatrix, lam: Sequence) -> SelfDualRelation:
    """For n = 2k: check q_{[2k]\\I} = c sign(I,[2k]\\I) lam_I q_I with one c.

    The constant must satisfy c^2 prod(lam) = 1. When prod(lam) is not a
    rational square, the squared relation and ratio consistency are checked
    instead and the result is flagged over_extension.
    """
    k, n = x.rows, x.cols
    if n != 2 * k:
        raise ValueError("selfdual relation requires n = 2k")
    lam = tuple(Fraction(v) for v in lam)
    if len(lam) != n:
        raise ValueError("lambda length mismatch")
    q = pluecker(x)
    lam_all = Fraction(1)
    for v in lam:
        lam_all *= v
    ratio = None
    for sub in combinations(range(n), k):
        co = tuple(sorted(set(range(n)) - set(sub)))
        lam_i = Fraction(1)
        for i in sub:
            lam_i *= lam[i]
        rhs = set_complement_sign(sub, n) * lam_i * q[sub]
        lhs = q[co]
        if lhs == 0 and rhs == 0:
            continue
        if lhs == 0 or rhs == 0:
            return SelfDualRelation(False, failing=sub)
        r = lhs / rhs
        if ratio is None:
            ratio = r
        elif r != ratio:
            return SelfDualRelation(False, failing=sub)
    if ratio is None:
        return SelfDualRelation(False, failing=None)
    if ratio * ratio * lam_all != 1:
        return SelfDualRelation(False, failing=None)
    root = _rational_sqrt(lam_all)
    if root is None:
        return SelfDualRelation(True, c=None, over_extension=True)
    return SelfDualRelation(True, c=ratio)


# -- sign-vector predicates ----------------------------------------------------


def _validate_signs(sv: Sequence[int]) -> tuple:
    sv = tuple(int(v) for v in sv)
    if any(v not in (1, -1) for v in sv):
        raise ValueError("sign vector entries must be +1 or -1")
    return sv


def signature(sv: Sequence[int]) -> int:
    """min(#positive, #negative entries)."""
    sv = _validate_signs(sv)
    pos = sum(1 for v in sv if v > 0)
    return min(pos, len(sv) - pos)


def ogr_nonempty(sv: Sequence[int], k: int) -> bool:
    """Real diagonal-form isotropy: solvable iff the signature is at least k."""
    return signature(sv) >= k


def positive_lambda_filter(sv: Sequence[int], k: int) -> bool:
    """Some 2k-subset of sv alternates iff sv changes sign >= 2k-1 times."""
    sv = _validate_signs(sv)
    changes = sum(1 for a, b in zip(sv, sv[1:]) if a != b)
    return changes >= 2 * k - 1


# -- rational orthogonal test points -------------------------------------------


def cayley_orthogonal(skew: QMatrix) -> QMatrix:
    """(I - S)(I + S)^{-1} for skew-symmetric S: a rational orthogonal matrix."""
    k = skew.rows
    if skew.cols != k:
        raise ValueError("skew matrix must be square")
    if skew.transpose() != QMatrix([[-v for v in row] for row in skew.data]):
        raise ValueError("matrix is not skew-symmetric")
    eye = QMatrix.identity(k)
    return (eye - skew) * (eye + skew).inverse()


def random_cayley_point(rng, k: int, span: int = 3):
    """Random isotropic (Id_k | R) in Gr(k,2k) with witness (1^k, (-1)^k)."""
    entries = [[Fraction(0)] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            v = Fraction(rng.randint(-span, span), rng.randint(1, span))
            entries[i][j] = v
            entries[j][i] = -v
    r = cayley_orthogonal(QMatrix(entries))
    x = QMatrix.identity(k).hstack(r)
    lam = tuple([Fraction(1)] * k + [Fraction(-1)] * k)
    return x, lam
