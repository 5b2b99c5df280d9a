"""Counting absolutely indecomposable quiver representations over finite fields.

The count uses Burnside weighting: the number of isomorphism classes with a
property invariant under ``GL_d`` is the sum over points of ``|Aut(M)|``
divided by ``|GL_d(F_q)|``.  Kac polynomials are recovered by interpolating
counts at several field sizes, always keeping one sample back as a check.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _kernels
from .ffield import FiniteField, prime_fields, primes
from .quiver import Quiver, QuiverError, double, euler_form

POINT_THRESHOLD = 10**7
END_THRESHOLD = 10**6


class ResourceLimitError(RuntimeError):
    """An enumeration would exceed its configured threshold."""


class CountingError(RuntimeError):
    """An internal consistency check failed (non-integral Burnside sum and the like)."""


class InterpolationError(RuntimeError):
    pass


# -- data ---------------------------------------------------------------------

@dataclass(frozen=True)
class RepPoint:
    """Arrow matrices ``matrices[a]`` of shape ``d_t(a) x d_s(a)`` over ``field``."""

    matrices: tuple[tuple[tuple[int, ...], ...], ...]
    field: FiniteField | None = None

    @classmethod
    def of(cls, Q: Quiver, d: Sequence[int], mats, field: FiniteField | None = None) -> "RepPoint":
        mats = tuple(tuple(tuple(int(x) for x in row) for row in m) for m in mats)
        pt = cls(mats, field)
        pt.check(Q, d)
        return pt

    def check(self, Q: Quiver, d: Sequence[int]) -> None:
        if len(self.matrices) != Q.num_arrows:
            raise QuiverError("one matrix per arrow expected")
        for a, m in enumerate(self.matrices):
            rows, cols = d[Q.target(a)], d[Q.source(a)]
            if len(m) != rows or any(len(r) != cols for r in m):
                raise QuiverError(f"matrix for arrow {a} is not {rows}x{cols}")
            if self.field is not None and any(not 0 <= x < self.field.q for r in m for x in r):
                raise QuiverError(f"matrix for arrow {a} has entries outside F_{self.field.q}")


@dataclass
class KacPolynomial:
    """Integer polynomial in ``q``, coefficients lowest degree first."""

    coefficients: list[int]
    d: tuple[int, ...] = ()
    quiver_hash: str = ""
    counts: dict[int, int] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        c = [int(x) for x in self.coefficients]
        while c and c[-1] == 0:
            c.pop()
        self.coefficients = c

    def __call__(self, q) -> int | Fraction:
        return sum((c * q ** i for i, c in enumerate(self.coefficients)), 0)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def __str__(self) -> str:
        return format_poly({i: c for i, c in enumerate(self.coefficients)}, "q")

    def to_json(self) -> dict:
        return {"d": list(self.d), "quiver_hash": self.quiver_hash, "coefficients": self.coefficients}


def format_poly(terms: dict, var: str = "q") -> str:
    """Descending-degree rendering: ``q^2 + q + 1``, ``q^(-1)``, ``-2*q``."""
    items = [(e, c) for e, c in sorted(terms.items(), key=lambda kv: -kv[0]) if c]
    if not items:
        return "0"
    out = []
    for e, c in items:
        if e == 0:
            mono = ""
        elif e == 1:
            mono = var
        elif isinstance(e, int) and e > 0:
            mono = f"{var}^{e}"
        else:
            mono = f"{var}^({e})"
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


# -- reference linear algebra (pure Python, small sizes) ------------------------

def _rref_py(rows: list[list[int]], F: FiniteField) -> tuple[list[list[int]], list[int]]:
    A = [list(r) for r in rows]
    ncols = len(A[0]) if A else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        s = F.inv(A[r][c])
        A[r] = [F.mul(s, x) for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = F.neg(A[i][c])
                A[i] = [F.add(x, F.mul(f, y)) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def _det_nonzero(m: list[list[int]], F: FiniteField) -> bool:
    if not m:
        return True
    reduced, piv = _rref_py(m, F)
    return len(piv) == len(m)


def _layout(Q: Quiver, d: Sequence[int]):
    voff, E = [], 0
    for i in range(Q.num_vertices):
        voff.append(E)
        E += d[i] * d[i]
    aoff, N = [], 0
    for s, t in Q.arrows:
        aoff.append(N)
        N += d[s] * d[t]
    return voff, E, aoff, N


def end_algebra(Q: Quiver, d: Sequence[int], M: RepPoint, F: FiniteField | None = None) -> list[tuple]:
    """Basis of ``End(M)``; each element is a tuple of ``d_i x d_i`` blocks."""
    F = F or M.field
    if F is None:
        raise QuiverError("end_algebra needs the field of the representation")
    d = tuple(d)
    M.check(Q, d)
    voff, E, _, _ = _layout(Q, d)
    rows = []
    for a, (s, t) in enumerate(Q.arrows):
        m = M.matrices[a]
        for r in range(d[t]):
            for c in range(d[s]):
                row = [0] * E
                for k in range(d[t]):
                    col = voff[t] + r * d[t] + k
                    row[col] = F.add(row[col], m[k][c])
                for k in range(d[s]):
                    col = voff[s] + k * d[s] + c
                    row[col] = F.sub(row[col], m[r][k])
                rows.append(row)
    if rows:
        R, piv = _rref_py(rows, F)
    else:
        R, piv = [], []
    basis = []
    for f in (c for c in range(E) if c not in piv):
        v = [0] * E
        v[f] = 1
        for i, pc in enumerate(piv):
            v[pc] = F.neg(R[i][f])
        basis.append(_unflatten(v, d, voff))
    return basis


def _unflatten(v, d, voff):
    return tuple(tuple(tuple(v[voff[i] + r * d[i] + c] for c in range(d[i])) for r in range(d[i]))
                 for i in range(len(d)))


def is_abs_indec(Q: Quiver, d: Sequence[int], M: RepPoint, F: FiniteField | None = None,
                 end_threshold: int = END_THRESHOLD) -> tuple[bool, int]:
    """Decide absolute indecomposability by enumerating ``End(M)``.

    Returns ``(flag, number of automorphisms)``.  ``M`` is indecomposable iff the
    unit count is ``q^e - q^(e-r)`` and the non-units form a subspace; it is
    absolutely indecomposable iff additionally ``r = 1``.
    """
    F = F or M.field
    basis = end_algebra(Q, d, M, F)
    e, q = len(basis), F.q
    if e == 0:
        return False, 1
    if q ** e > end_threshold:
        raise ResourceLimitError(f"End(M) has {q}^{e} elements, above the threshold {end_threshold}")
    flat = [[x for blk in b for row in blk for x in row] for b in basis]
    units = 0
    nonunit_span: list[list[int]] = []
    for coeffs in itertools.product(range(q), repeat=e):
        elt = [0] * len(flat[0])
        for c, b in zip(coeffs, flat):
            if c:
                elt = [F.add(x, F.mul(c, y)) for x, y in zip(elt, b)]
        if _element_is_unit(elt, d, F):
            units += 1
        elif any(coeffs) and len(nonunit_span) < e:
            # keep an echelon basis of the span of the non-units
            cand, _ = _rref_py(nonunit_span + [list(coeffs)], F)
            nonunit_span = cand
    nonunits = q ** e - units
    r = _residue_degree(q, e, nonunits)
    is_subspace = nonunits == q ** len(nonunit_span)
    indec = r is not None and is_subspace
    return bool(indec and r == 1), units


def _residue_degree(q: int, e: int, nonunits: int) -> int | None:
    for r in range(1, e + 1):
        if nonunits == q ** (e - r):
            return r
    return None


def _element_is_unit(elt: list[int], d, F: FiniteField) -> bool:
    off = 0
    for di in d:
        blk = [elt[off + r * di: off + (r + 1) * di] for r in range(di)]
        off += di * di
        if not _det_nonzero(blk, F):
            return False
    return True


def count_abs_indec_reference(Q: Quiver, d: Sequence[int], F: FiniteField,
                              threshold: int = 10**5) -> int:
    """Plain Burnside sum over every point, using ``is_abs_indec``; for cross-checks only."""
    d = tuple(d)
    if not any(d):
        return 0
    shapes = [(d[t], d[s]) for s, t in Q.arrows]
    N = sum(r * c for r, c in shapes)
    if F.q ** N > threshold:
        raise ResourceLimitError(f"{F.q}^{N} points exceed the reference threshold {threshold}")
    total = 0
    for flat in itertools.product(range(F.q), repeat=N):
        mats, pos = [], 0
        for r, c in shapes:
            mats.append(tuple(tuple(flat[pos + i * c: pos + (i + 1) * c]) for i in range(r)))
            pos += r * c
        ok, aut = is_abs_indec(Q, d, RepPoint(tuple(mats), F), F)
        if ok:
            total += aut
    return _burnside_quotient(total, d, F)


def _burnside_quotient(total: int, d, F: FiniteField) -> int:
    gl = math.prod(F.gl_order(x) for x in d)
    if total % gl:
        raise CountingError(f"Burnside sum {total} is not divisible by |GL_d| = {gl} (d={tuple(d)}, q={F.q})")
    return total // gl


# -- compiled counting ----------------------------------------------------------

def matrices_of_rank(q: int, rows: int, cols: int, r: int) -> int:
    out = 1
    for i in range(r):
        out *= (q ** rows - q ** i) * (q ** cols - q ** i)
    den = 1
    for i in range(r):
        den *= q ** r - q ** i
    return out // den


@dataclass
class _Plan:
    """Strata of the enumeration: ``(multiplier, base point, free positions, size)``."""

    strata: list[tuple[int, np.ndarray, np.ndarray, int]]
    arrays: tuple

    @property
    def points(self) -> int:
        return sum(s[3] for s in self.strata)


def _plan(Q: Quiver, d: Sequence[int], q: int) -> _Plan:
    voff, E, aoff, N = _layout(Q, d)
    arrays = (Q.num_vertices, np.array(d, dtype=np.int64), np.array(voff, dtype=np.int64), E,
              np.array([s for s, _ in Q.arrows], dtype=np.int64),
              np.array([t for _, t in Q.arrows], dtype=np.int64),
              np.array(aoff, dtype=np.int64), N)
    # normal form for one non-loop arrow: sum over its rank strata
    best = None
    for a, (s, t) in enumerate(Q.arrows):
        if s != t and d[s] and d[t] and (best is None or d[s] * d[t] > d[Q.source(best)] * d[Q.target(best)]):
            best = a
    strata = []
    if best is None:
        strata.append((1, np.zeros(max(N, 1), dtype=np.int64), np.arange(N, dtype=np.int64), q ** N))
    else:
        s, t = Q.arrows[best]
        fixed = set(range(aoff[best], aoff[best] + d[s] * d[t]))
        free = np.array([p for p in range(N) if p not in fixed], dtype=np.int64)
        for r in range(min(d[s], d[t]) + 1):
            base = np.zeros(max(N, 1), dtype=np.int64)
            for i in range(r):
                base[aoff[best] + i * d[s] + i] = 1
            strata.append((matrices_of_rank(q, d[t], d[s], r), base, free, q ** len(free)))
    return _Plan(strata, arrays)


def enumeration_size(Q: Quiver, d: Sequence[int], q: int) -> int:
    """Number of points the compiled counter visits for ``(d, q)``."""
    return _plan(Q, tuple(d), q).points


def _chunks(size: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, size))
    step = -(-size // parts)
    return [(lo, min(step, size - lo)) for lo in range(0, size, step)]


def _run_chunks(fn, jobs: list, threads: int) -> list:
    if threads <= 1 or len(jobs) <= 1:
        return [fn(*j) for j in jobs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda j: fn(*j), jobs))


def count_abs_indec(Q: Quiver, d: Sequence[int], F: FiniteField, threads: int = 1,
                    threshold: int = POINT_THRESHOLD) -> int:
    """Number of isomorphism classes of absolutely indecomposable ``d``-dimensional representations."""
    d = tuple(int(x) for x in d)
    if len(d) != Q.num_vertices:
        raise QuiverError(f"dimension vector {d} does not match {Q.num_vertices} vertices")
    if not any(d):
        return 0
    q = F.q
    plan = _plan(Q, d, q)
    if plan.points > threshold:
        raise ResourceLimitError(f"{plan.points} points to enumerate for d={d}, q={q} "
                                 f"exceed the threshold {threshold}")
    add, mul, neg, inv = F.tables
    n, dv, voff, E, src, tgt, aoff, N = plan.arrays

    def work(si, start, count):
        _, base, free, _ = plan.strata[si]
        return _kernels.count_points_by_end_dim(q, add, mul, neg, inv, n, dv, voff, E, src, tgt,
                                                aoff, N, base, free, start, count)

    jobs = [(si, lo, cnt) for si, st in enumerate(plan.strata) for lo, cnt in _chunks(st[3], 4 * threads)]
    hists = _run_chunks(work, jobs, threads)
    total = 0
    for (si, _, _), h in zip(jobs, hists):
        mult = plan.strata[si][0]
        total += mult * sum(int(h[e]) * (q ** e - q ** (e - 1)) for e in range(1, len(h)))
    return _burnside_quotient(total, d, F)


def count_mu_fiber(Q: Quiver, d: Sequence[int], F: FiniteField, threads: int = 1,
                   threshold: int = POINT_THRESHOLD) -> int:
    """Points of the moment-map fiber over zero in the doubled representation space."""
    d = tuple(int(x) for x in d)
    if len(d) != Q.num_vertices:
        raise QuiverError(f"dimension vector {d} does not match {Q.num_vertices} vertices")
    Qb = Q if Q.star_pairing is not None else double(Q)
    voff, E, aoff, N = _layout(Qb, d)
    q = F.q
    if q ** N > threshold:
        raise ResourceLimitError(f"{q}^{N} points for the moment map exceed the threshold {threshold}")
    add, mul, neg, _ = F.tables
    pairs = np.array(Qb.star_pairing or [], dtype=np.int64).reshape(-1, 2)
    arr = (np.array(d, dtype=np.int64), np.array(voff, dtype=np.int64), E,
           np.array([s for s, _ in Qb.arrows], dtype=np.int64),
           np.array([t for _, t in Qb.arrows], dtype=np.int64), np.array(aoff, dtype=np.int64))

    def work(start, count):
        return _kernels.count_mu_zero(q, add, mul, neg, Qb.num_vertices, arr[0], arr[1], arr[2],
                                      arr[3], arr[4], arr[5], pairs, N, start, count)

    return int(sum(_run_chunks(work, _chunks(q ** N, 4 * threads), threads)))


# -- interpolation --------------------------------------------------------------

def degree_bound(Q: Quiver, d: Sequence[int]) -> int:
    return max(0, 1 - euler_form(Q, d, d))


def lagrange(points: Sequence[tuple[int, int]]) -> list[Fraction]:
    """Coefficients (lowest first) of the interpolating polynomial through ``points``."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k in range(n):
            coeffs[k] += yi * basis[k] / denom
    return coeffs


def default_fields(count: int) -> list[FiniteField]:
    return prime_fields(primes(count))


def kac_polynomial(Q: Quiver, d: Sequence[int], sample_fields: Sequence[FiniteField] | None = None,
                   degree: int | None = None, threads: int = 1, threshold: int = POINT_THRESHOLD,
                   cache=None) -> KacPolynomial:
    """Interpolate ``a_{Q,d}(q)`` from brute-force counts, validating on held-out samples.

    The first ``degree + 1`` fields (by size) determine the polynomial; every
    further field must reproduce its count exactly.
    """
    d = tuple(int(x) for x in d)
    bound = degree_bound(Q, d) if degree is None else int(degree)
    if sample_fields is None:
        sample_fields = default_fields(bound + 2)
    fields = sorted(sample_fields, key=lambda f: f.q)
    if len({f.q for f in fields}) != len(fields):
        raise InterpolationError("sample fields must have distinct orders")
    if len(fields) < bound + 2:
        raise InterpolationError(f"need at least {bound + 2} sample fields for degree bound {bound}, "
                                 f"got {len(fields)}")
    qhash = Q.graph_hash()
    # fail before any counting when one of the fields is out of reach
    for F in fields:
        if cache is not None and cache.has_count(qhash, d, F.q):
            continue
        size = enumeration_size(Q, d, F.q)
        if size > threshold:
            raise ResourceLimitError(f"{size} points to enumerate for d={d}, q={F.q} "
                                     f"exceed the threshold {threshold}")
    counts: dict[int, int] = {}
    for F in fields:
        hit = cache.get_count(qhash, d, F.q) if cache is not None else None
        if hit is None:
            hit = count_abs_indec(Q, d, F, threads=threads, threshold=threshold)
            if cache is not None:
                cache.put_count(qhash, d, F.q, hit)
        counts[F.q] = hit
    used = [(F.q, counts[F.q]) for F in fields[:bound + 1]]
    coeffs = lagrange(used)
    if any(c.denominator != 1 for c in coeffs):
        raise InterpolationError(f"non-integral interpolation {coeffs} for d={d}")
    poly = KacPolynomial([int(c) for c in coeffs], d, qhash, counts)
    for F in fields[bound + 1:]:
        if poly(F.q) != counts[F.q]:
            raise InterpolationError(f"held-out sample q={F.q}: polynomial gives {poly(F.q)}, "
                                     f"count is {counts[F.q]} (d={d})")
    if any(c < 0 for c in poly.coefficients):
        raise InterpolationError(f"negative coefficient in {poly.coefficients} for d={d}")
    if cache is not None:
        cache.put_kac(qhash, d, poly.coefficients)
    return poly
