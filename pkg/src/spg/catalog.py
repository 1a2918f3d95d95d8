"""Matroid catalogs: small-rank enumeration, revlex-string ingestion,
isomorphism-class bookkeeping, and the survey record store.

Revlex basis strings: position p of the string corresponds to the p-th
k-subset of {0..n-1} in reverse-lexicographic order (subsets compared by
their largest element, then the next, ...; equivalently S < T iff
max(S delta T) lies in T). Worked indices for (n,k) = (4,2):

    p:      0     1     2     3     4     5
    subset {1,2} {1,3} {2,3} {1,4} {2,4} {3,4}   (1-based elements)

'*' marks a basis, '0' a non-basis; the first character is {1,..,k}.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass, field, fields
from itertools import combinations
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .groebner import Budget
from .matroid import (
    Matroid,
    NotAMatroidError,
    canonical_form,
    canonical_relabeling,
    from_mask,
    popcount,
    to_mask,
)
from .realization import (
    CoordinatizedMatroid,
    compare_spaces,
    coordinatize,
    find_frame_relabeling,
    realization_space,
    sp_realization_space,
)


def subsets_revlex(n: int, k: int) -> List[tuple]:
    """All k-subsets of {0..n-1} in reverse-lexicographic order."""
    return sorted(combinations(range(n), k), key=lambda s: tuple(reversed(s)))


def parse_revlex(line: str, k: Optional[int] = None, n: Optional[int] = None,
                 validate: bool = True) -> Matroid:
    """Parse one revlex basis string, optionally prefixed by 'rank n '."""
    parts = line.split()
    if not parts:
        raise ValueError("empty line")
    if len(parts) == 3:
        k, n = int(parts[0]), int(parts[1])
        body = parts[2]
    elif len(parts) == 1:
        body = parts[0]
        if k is None or n is None:
            raise ValueError("bare basis string needs explicit rank and ground-set size")
    else:
        raise ValueError("malformed line: expected 'rank n string' or a bare string")
    subs = subsets_revlex(n, k)
    if len(body) != len(subs):
        raise ValueError(
            "basis string has length %d, expected C(%d,%d) = %d"
            % (len(body), n, k, len(subs))
        )
    bases = []
    for p, ch in enumerate(body):
        if ch == "*":
            bases.append(subs[p])
        elif ch != "0":
            raise ValueError("invalid character %r at position %d" % (ch, p))
    if not bases:
        raise ValueError("no basis marked")
    if validate:
        return Matroid.from_bases(n, k, bases)
    return Matroid(n, k, frozenset(to_mask(b) for b in bases), _validated=True)


def emit_revlex(m: Matroid, header: bool = False) -> str:
    body = "".join(
        "*" if to_mask(s) in m.bases else "0" for s in subsets_revlex(m.n, m.k)
    )
    return "%d %d %s" % (m.k, m.n, body) if header else body


def ingest_catalog(path: str, k: int, n: int, errors: Optional[list] = None,
                   validate: bool = True) -> Iterator[Matroid]:
    """Stream matroids from a revlex file; parse errors are collected, not fatal."""
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                yield parse_revlex(line, k, n, validate=validate)
            except (ValueError, NotAMatroidError) as exc:
                if errors is not None:
                    errors.append((lineno, str(exc)))


# -- enumeration ---------------------------------------------------------------


def _partitions(m: int, most: Optional[int] = None) -> Iterator[tuple]:
    if m == 0:
        yield ()
        return
    most = m if most is None else min(most, m)
    for first in range(most, 0, -1):
        for rest in _partitions(m - first, first):
            yield (first,) + rest


def enumerate_rank2(n: int) -> List[Matroid]:
    """All rank-2 matroids on [n] up to isomorphism: a loop count plus a
    partition of the rest into at least two parallel classes."""
    if n > 12:
        raise ValueError("rank-2 enumeration capped at n = 12")
    out = []
    for nloops in range(0, n - 1):
        rest = n - nloops
        for shape in _partitions(rest):
            if len(shape) < 2:
                continue
            class_of = {}
            e = 0
            for ci, size in enumerate(shape):
                for _ in range(size):
                    class_of[e] = ci
                    e += 1
            bases = [
                (a, b)
                for a, b in combinations(range(rest), 2)
                if class_of[a] != class_of[b]
            ]
            out.append(Matroid.from_bases(n, 2, bases))
    return out


def _lines_nonbases(lines: Sequence[int]) -> list:
    nb = set()
    for line in lines:
        elems = from_mask(line)
        for tri in combinations(elems, 3):
            nb.add(to_mask(tri))
    return sorted(nb)


def enumerate_simple_rank3(n: int) -> List[Matroid]:
    """Simple rank-3 matroids on [n] up to isomorphism.

    A simple rank-3 matroid is exactly a family of lines (subsets of size
    >= 3, pairwise meeting in at most one point, none the full ground set);
    classes are built up a line at a time with canonical-form dedup.
    """
    if not 3 <= n <= 9:
        raise ValueError("simple rank-3 enumeration supports 3 <= n <= 9")
    from .matroid import _min_nonbasis_relabeling

    candidates = [
        to_mask(c)
        for size in range(3, n)
        for c in combinations(range(n), size)
    ]

    def canon_key(lines: frozenset) -> tuple:
        nb = _lines_nonbases(sorted(lines))
        _, encoding = _min_nonbasis_relabeling(n, nb)
        return encoding

    def build(lines: frozenset) -> Matroid:
        nb = set(_lines_nonbases(sorted(lines)))
        bases = [c for c in combinations(range(n), 3) if to_mask(c) not in nb]
        return Matroid.from_bases(n, 3, bases)

    reps = [frozenset()]
    out = [build(frozenset())]
    frontier = [frozenset()]
    while frontier:
        seen: Dict[tuple, frozenset] = {}
        for lines in frontier:
            for cand in candidates:
                if cand in lines:
                    continue
                if any(popcount(cand & line) > 1 for line in lines):
                    continue
                child = lines | {cand}
                key = canon_key(child)
                if key not in seen:
                    seen[key] = child
        frontier = list(seen.values())
        for lines in frontier:
            out.append(build(lines))
        reps.extend(frontier)
    return out


class IsoClassifier:
    """Canonical-form keyed classifier for matroid isomorphism classes."""

    def __init__(self):
        self._classes: Dict[tuple, int] = {}
        self.representatives: List[Matroid] = []

    def add(self, m: Matroid) -> Tuple[int, bool]:
        """Returns (class index, is_new)."""
        key = canonical_form(m)
        idx = self._classes.get(key)
        if idx is not None:
            return idx, False
        idx = len(self.representatives)
        self._classes[key] = idx
        self.representatives.append(m)
        return idx, True

    def __len__(self):
        return len(self.representatives)


def canonical_id(m: Matroid) -> str:
    """Revlex basis string of the canonically relabeled matroid."""
    return emit_revlex(m.relabel(canonical_relabeling(m)))


# -- survey records --------------------------------------------------------------


@dataclass
class SurveyRecord:
    rank: int
    n: int
    id: str
    selfproj: bool
    r_dim: Optional[int]
    s_dim: Optional[int]
    verdict: str
    r_seconds: float
    s_seconds: float
    r_timeout: bool
    s_timeout: bool
    ring: str = ""
    r_gens: str = ""
    s_gens: str = ""
    inverted: str = ""
    normalized_ones: str = ""
    forced_zero: str = ""

    def to_line(self) -> str:
        vals = []
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, bool):
                v = int(v)
            elif v is None:
                v = ""
            vals.append("%s=%s" % (f.name, v))
        return "\t".join(vals)

    @classmethod
    def from_line(cls, line: str) -> "SurveyRecord":
        raw = {}
        for tok in line.rstrip("\n").split("\t"):
            key, _, val = tok.partition("=")
            raw[key] = val
        kw = {}
        for f in fields(cls):
            v = raw.get(f.name, "")
            if f.type in ("int", "Optional[int]"):
                kw[f.name] = int(v) if v != "" else None
            elif f.type == "bool":
                kw[f.name] = v == "1"
            elif f.type == "float":
                kw[f.name] = float(v) if v else 0.0
            else:
                kw[f.name] = v
        return cls(**kw)


def _space_to_fields(space) -> tuple:
    gens = ";".join(str(g) for g in space.gens)
    return (space.dimension, space.timeout, space.seconds, gens)


def survey_one(m: Matroid, budget_seconds: Optional[float] = None,
               frame: Optional[bool] = None) -> SurveyRecord:
    """R and S computation for one matroid, each under its own budget.

    frame=None picks the frame relabeling automatically for the larger cases
    where it speeds up the isotropy elimination."""
    mid = canonical_id(m)
    if frame is None:
        frame = m.n >= 8
    coord = None
    if frame:
        coord = find_frame_relabeling(m)
    if coord is None:
        coord = coordinatize(m)
    sp = m.is_self_projecting()
    r = realization_space(m, Budget(seconds=budget_seconds), coord)
    s = sp_realization_space(m, Budget(seconds=budget_seconds), coord, base=r)
    verdict = compare_spaces(r, s)
    r_dim, r_to, r_sec, r_gens = _space_to_fields(r)
    s_dim, s_to, s_sec, s_gens = _space_to_fields(s)
    return SurveyRecord(
        rank=m.k, n=m.n, id=mid, selfproj=sp,
        r_dim=r_dim, s_dim=s_dim, verdict=verdict,
        r_seconds=round(r_sec, 3), s_seconds=round(s_sec, 3),
        r_timeout=r_to, s_timeout=s_to,
        ring=",".join(r.ring.names),
        r_gens=r_gens, s_gens=s_gens,
        inverted=";".join(str(g) for g in r.inverted),
        normalized_ones=",".join(r.normalized_ones),
        forced_zero=",".join(r.forced_zero),
    )


def _survey_worker(args) -> SurveyRecord:
    m, budget_seconds, frame = args
    return survey_one(m, budget_seconds, frame)


def run_survey(matroids: Iterable[Matroid], budget_seconds: Optional[float] = None,
               jobs: int = 1, frame: Optional[bool] = None) -> List[SurveyRecord]:
    """Per-matroid R/S pipeline over a catalog; deterministic output order."""
    tasks = [(m, budget_seconds, frame) for m in matroids]
    if jobs > 1 and len(tasks) > 1:
        with multiprocessing.Pool(jobs) as pool:
            records = pool.map(_survey_worker, tasks)
    else:
        records = [_survey_worker(t) for t in tasks]
    records.sort(key=lambda r: (r.rank, r.n, r.id))
    return records


def dimension_histogram(records: Sequence[SurveyRecord], which: str) -> Dict[int, int]:
    """Counts of completed dimensions; timeouts are excluded."""
    out: Dict[int, int] = {}
    for rec in records:
        dim = rec.r_dim if which == "R" else rec.s_dim
        to = rec.r_timeout if which == "R" else rec.s_timeout
        if to or dim is None:
            continue
        out[dim] = out.get(dim, 0) + 1
    return out
