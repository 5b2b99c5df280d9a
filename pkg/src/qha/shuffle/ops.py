"""Shuffle product, localized coproduct, twisted swap and the bialgebra check.

Conventions: for a product in degrees ``(d', d'')`` the first factor owns the
variables ``x[i, 1..d'_i]`` and the second ``x[i, d'_i+1 .. d'_i+d''_i]``.  In
two-slot elements ``x[1,i,m]`` and ``x[2,i,m]`` are the two tensor factors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from ..quiver import Quiver, Weighting, euler_form, hbar as hbar_vector, tau_sign
from .element import LaurentSeries, LocalizedElement, ShuffleElement, ShuffleError, block_vars
from .poly import MultiPoly, Var, tvar, vandermonde, var_name, xvar


def _add(d, e):
    return tuple(x + y for x, y in zip(d, e))


def _sub(d, e):
    return tuple(x - y for x, y in zip(d, e))


class ShuffleAlgebra:
    """The shuffle algebra of a symmetric quiver with an optional weighting."""

    def __init__(self, Q: Quiver, wt: Weighting | None = None, require_symmetric: bool = True):
        if require_symmetric and not Q.is_symmetric():
            raise ShuffleError("the shuffle product needs a symmetric quiver")
        wt = wt if wt is not None else Q.weighting
        if wt is None:
            wt = Weighting.trivial(Q.num_arrows)
        if len(wt) != Q.num_arrows:
            raise ShuffleError("weighting length does not match the arrow count")
        self.Q = Q
        self.wt = wt
        self._tforms = [self._tform(wt[a]) for a in range(Q.num_arrows)]

    @property
    def n(self) -> int:
        return self.Q.num_vertices

    @staticmethod
    def _tform(w: Sequence[int]) -> MultiPoly:
        return MultiPoly.linear({tvar(k + 1): c for k, c in enumerate(w) if c})

    def tform(self, a: int) -> MultiPoly:
        """``t(wt(a)) = sum_k wt(a)_k t[k]``."""
        return self._tforms[a]

    def hbar(self) -> MultiPoly:
        """hbar as a linear form in the ``t[k]``; needs a tripled quiver."""
        return self._tform(hbar_vector(self.Q, self.wt))

    def is_graded_symmetric(self) -> bool:
        return self.Q.with_weighting(self.wt).is_graded_symmetric()

    def chi(self, d, e) -> int:
        return euler_form(self.Q, d, e)

    def swap_sign(self, d, e) -> int:
        """Koszul sign (parities ``chi(d,d)``) composed with the tau twist."""
        koszul = -1 if (self.chi(d, d) * self.chi(e, e)) % 2 else 1
        return koszul * tau_sign(self.Q, d, e)

    # -- Euler-class factor lists -----------------------------------------

    def arrow_factors(self, B1: list[list[Var]], B2: list[list[Var]]) -> list[MultiPoly]:
        out = []
        for a, (s, t) in enumerate(self.Q.arrows):
            w = self._tforms[a]
            for u in B1[s]:
                for v in B2[t]:
                    out.append(MultiPoly.var(v) - MultiPoly.var(u) - w)
        return out

    def op_factors(self, B1: list[list[Var]], B2: list[list[Var]]) -> list[MultiPoly]:
        """Factors of the opposite quiver with negated weights."""
        out = []
        for a, (s, t) in enumerate(self.Q.arrows):
            w = self._tforms[a]
            for u in B1[t]:
                for v in B2[s]:
                    out.append(MultiPoly.var(v) - MultiPoly.var(u) + w)
        return out

    @staticmethod
    def vertex_factors(B1: list[list[Var]], B2: list[list[Var]]) -> list[MultiPoly]:
        return [MultiPoly.var(v) - MultiPoly.var(u)
                for b1, b2 in zip(B1, B2) for u in b1 for v in b2]

    def euler_class(self, d1, d2, which: str = "arrows") -> MultiPoly:
        B1, B2 = block_vars(d1, 1), block_vars(d2, 2)
        if which == "arrows":
            return product(self.arrow_factors(B1, B2))
        if which == "vertices":
            return product(self.vertex_factors(B1, B2))
        if which == "op":
            return product(self.op_factors(B1, B2))
        raise ShuffleError(f"unknown Euler class {which!r}")

    # -- elements ----------------------------------------------------------

    def element(self, d, poly, check: bool = True) -> ShuffleElement:
        d = tuple(d)
        if len(d) != self.n:
            raise ShuffleError(f"degree {d} does not match {self.n} vertices")
        poly = MultiPoly.coerce(poly)
        for v in poly.variables():
            if v[0] == "t" and v[1] > self.wt.rank:
                raise ShuffleError(f"{var_name(v)} exceeds the torus rank {self.wt.rank}")
        return ShuffleElement(d, poly, check=check)

    def one(self, d=None) -> ShuffleElement:
        return ShuffleElement.one(d if d is not None else (0,) * self.n)

    # -- product -------------------------------------------------------------

    def mul(self, a: ShuffleElement, b: ShuffleElement, method: str = "alternant",
            check: bool = False) -> ShuffleElement:
        d1, d2 = a.degree, b.degree
        d = _add(d1, d2)
        X = block_vars(d)
        B1 = [X[i][:d1[i]] for i in range(self.n)]
        B2 = [X[i][d1[i]:] for i in range(self.n)]
        shift = {xvar(i, m): xvar(i, d1[i] + m) for i in range(self.n) for m in range(1, d2[i] + 1)}
        H = a.poly * b.poly.rename(shift)
        if not H.is_zero():
            H = H * product(self.arrow_factors(B1, B2))
        if method == "divide":
            P = H
            for i in range(self.n):
                P = P * vandermonde(B1[i]) * vandermonde(B2[i])
            N = MultiPoly.const(0)
            for mapping, sign in shuffles(d1, d2):
                N = N + P.rename(mapping).scale(sign)
            for i in range(self.n):
                for hi in range(len(X[i])):
                    for lo in range(hi):
                        N = N.divide_linear(MultiPoly.var(X[i][hi]) - MultiPoly.var(X[i][lo]), X[i][hi])
            result = N
        elif method == "alternant":
            result = alternant_quotient(H * staircase([B1, B2]), X)
        else:
            raise ShuffleError(f"unknown product method {method!r}")
        return ShuffleElement(d, result, check=check)

    # -- coproduct -------------------------------------------------------------

    def split_renaming(self, d1, d2) -> dict:
        """``iota``: ``x[i,m] -> x[1,i,m]`` for ``m <= d'_i``, else ``x[2,i,m-d'_i]``."""
        out = {}
        for i in range(self.n):
            for m in range(1, d1[i] + d2[i] + 1):
                out[xvar(i, m)] = xvar(i, m, 1) if m <= d1[i] else xvar(i, m - d1[i], 2)
        return out

    def comul(self, c: ShuffleElement, d1, d2, reduce: bool = True) -> LocalizedElement:
        d1, d2 = tuple(d1), tuple(d2)
        if _add(d1, d2) != c.degree:
            raise ShuffleError(f"split {d1} + {d2} does not add up to {c.degree}")
        B1, B2 = block_vars(d1, 1), block_vars(d2, 2)
        num = c.poly.rename(self.split_renaming(d1, d2))
        if not num.is_zero():
            num = num * product(self.vertex_factors(B1, B2))
        return LocalizedElement.make((d1, d2), num, self.arrow_factors(B1, B2), reduce=reduce)

    def tensor(self, f: ShuffleElement, g: ShuffleElement) -> LocalizedElement:
        """``f (x) g`` as a two-slot element."""
        left = f.poly.rename({xvar(i, m): xvar(i, m, 1) for i in range(self.n) for m in range(1, f.degree[i] + 1)})
        right = g.poly.rename({xvar(i, m): xvar(i, m, 2) for i in range(self.n) for m in range(1, g.degree[i] + 1)})
        return LocalizedElement.make((f.degree, g.degree), left * right, reduce=False)

    # -- twisted swap ----------------------------------------------------------

    def swap_tau(self, e: LocalizedElement) -> LocalizedElement:
        d1, d2 = e.bidegree
        B1, B2 = block_vars(d1, 1), block_vars(d2, 2)
        num = e.numerator * product(self.arrow_factors(B1, B2)) * self.swap_sign(d1, d2)
        dens = list(e.denominator) + self.op_factors(B1, B2)
        flip = {}
        for i in range(self.n):
            for m in range(1, max(d1[i], d2[i]) + 1):
                flip[xvar(i, m, 1)] = xvar(i, m, 2)
                flip[xvar(i, m, 2)] = xvar(i, m, 1)
        num = num.rename(flip)
        dens = [f.rename(flip) for f in dens]
        return LocalizedElement.make((d2, d1), num, dens)

    # -- bialgebra compatibility -------------------------------------------------

    def check_bialgebra(self, a: ShuffleElement, b: ShuffleElement, e1, e2) -> "BialgebraCheck":
        """Compare both sides of the compatibility square, cleared by ``EU(Q_1)_{e',e''}``."""
        e1, e2 = tuple(e1), tuple(e2)
        da, db = a.degree, b.degree
        if _add(e1, e2) != _add(da, db):
            raise ShuffleError(f"split {e1} + {e2} does not match degrees {da} + {db}")
        lhs = self.mul(a, b).poly.rename(self.split_renaming(e1, e2))
        if not lhs.is_zero():
            lhs = lhs * product(self.vertex_factors(block_vars(e1, 1), block_vars(e2, 2)))
        rhs = MultiPoly.const(0)
        terms = 0
        for a1 in _dims_between(da, e1):
            a2 = _sub(da, a1)
            b1, b2 = _sub(e1, a1), _sub(e2, a2)
            if any(x < 0 for x in b2):
                continue
            rhs = rhs + self._bialgebra_term(a, b, a1, a2, b1, b2)
            terms += 1
        return BialgebraCheck(lhs == rhs, lhs, rhs, terms)

    def _bialgebra_term(self, a, b, a1, a2, b1, b2) -> MultiPoly:
        n = self.n
        e1 = _add(a1, b1)
        S1 = block_vars(e1, 1)
        S2 = block_vars(_add(a2, b2), 2)
        A1 = [S1[i][:a1[i]] for i in range(n)]
        B1 = [S1[i][a1[i]:] for i in range(n)]
        A2 = [S2[i][:a2[i]] for i in range(n)]
        B2 = [S2[i][a2[i]:] for i in range(n)]
        ren_a = {}
        ren_b = {}
        for i in range(n):
            for m, v in enumerate(A1[i] + A2[i], start=1):
                ren_a[xvar(i, m)] = v
            for m, v in enumerate(B1[i] + B2[i], start=1):
                ren_b[xvar(i, m)] = v
        pa = a.poly.rename(ren_a)
        pb = b.poly.rename(ren_b)
        if pa.is_zero() or pb.is_zero():
            return MultiPoly.const(0)
        sign = self.swap_sign(a2, b1)
        # opposite-quiver denominators of the swap equal minus the matching E1 factors
        op_count = sum(a2[t] * b1[s] for s, t in self.Q.arrows)
        if op_count % 2:
            sign = -sign
        factors = (self.vertex_factors(A1, A2) + self.vertex_factors(B1, B2)
                   + self.arrow_factors(A2, B1)    # swap numerator
                   + self.arrow_factors(A1, B2)    # the block of EU_{e',e''} left uncancelled
                   + self.arrow_factors(A1, B1) + self.arrow_factors(A2, B2))
        H = pa * pb * product(factors) * sign
        return alternant_quotient(H * staircase([A1, B1]) * staircase([A2, B2]), S1 + S2)

    # -- expansions ---------------------------------------------------------------

    def euler_ratio(self, d1, d2) -> LocalizedElement:
        """``EU(Q_1^op)^{-1} EU(Q_1)`` for bidegree ``(d', d'')``."""
        B1, B2 = block_vars(d1, 1), block_vars(d2, 2)
        return LocalizedElement.make((tuple(d1), tuple(d2)), product(self.arrow_factors(B1, B2)),
                                     self.op_factors(B1, B2))


@dataclass
class BialgebraCheck:
    ok: bool
    lhs: MultiPoly
    rhs: MultiPoly
    terms: int
    note: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def diff(self) -> MultiPoly:
        return self.lhs - self.rhs


# -- combinatorial helpers ----------------------------------------------------------

def product(factors: Iterable[MultiPoly]) -> MultiPoly:
    out = MultiPoly.const(1)
    for f in factors:
        out = out * f
    return out


def _dims_between(d, cap):
    return itertools.product(*(range(min(x, c) + 1) for x, c in zip(d, cap)))


def shuffles(d1, d2):
    """All shuffles as ``(renaming of x[i,m], sign)``; the first block keeps its order."""
    per_vertex = []
    for i, (p, q) in enumerate(zip(d1, d2)):
        n = p + q
        options = []
        for sub in itertools.combinations(range(1, n + 1), p):
            rest = [k for k in range(1, n + 1) if k not in sub]
            inv = sum(1 for x in sub for y in rest if x > y)
            mapping = {xvar(i, m + 1): xvar(i, k) for m, k in enumerate(sub)}
            mapping.update({xvar(i, p + m + 1): xvar(i, k) for m, k in enumerate(rest)})
            options.append((mapping, -1 if inv % 2 else 1))
        per_vertex.append(options)
    for combo in itertools.product(*per_vertex):
        mapping, sign = {}, 1
        for mp, s in combo:
            mapping.update(mp)
            sign *= s
        yield mapping, sign


def staircase(blocks: Sequence[list[list[Var]]]) -> MultiPoly:
    """``prod`` over blocks and vertices of ``v_1^0 v_2^1 ... v_k^(k-1)``."""
    exps = {}
    for block in blocks:
        for vs in block:
            for k, v in enumerate(vs):
                if k:
                    exps[v] = k
    if not exps:
        return MultiPoly.const(1)
    gens = tuple(sorted(exps))
    return MultiPoly(gens, {tuple(exps[g] for g in gens): 1}, _trusted=True)


@lru_cache(maxsize=4096)
def schur_exponents(lam: tuple[int, ...], k: int) -> dict:
    """Monomial expansion of ``s_lambda(v_1..v_k)`` as ``{exponent tuple: coefficient}``."""
    lam = tuple(x for x in lam if x)
    if len(lam) > k:
        return {}
    if k == 0:
        return {(): 1}
    out: dict = {}
    size = sum(lam)
    ranges = [range(lam[i + 1] if i + 1 < len(lam) else 0, lam[i] + 1) for i in range(len(lam))]
    for mu in itertools.product(*ranges):
        if sum(1 for x in mu if x) > k - 1:
            continue
        top = size - sum(mu)
        for e, c in schur_exponents(tuple(mu), k - 1).items():
            key = e + (top,)
            out[key] = out.get(key, 0) + c
    return out


def schur_poly(lam: tuple[int, ...], variables: list[Var]) -> MultiPoly:
    return MultiPoly(variables, schur_exponents(tuple(lam), len(variables)))


def alternant_quotient(P: MultiPoly, groups: Sequence[list[Var]]) -> MultiPoly:
    """``J(P) / prod_g V_g`` with ``J`` the signed symmetrization over every group.

    ``V_g = prod_{m<n} (v_n - v_m)`` in the listed order of the group.  Each
    monomial with distinct exponents in every group contributes a product of
    Schur polynomials (bialternant formula); the others cancel in ``J``.
    """
    groups = [list(g) for g in groups if len(g) > 1]
    if P.is_zero():
        return P
    inside = {v for g in groups for v in g}
    gens = tuple(sorted(set(P.gens) | inside))
    terms = P.embed(gens)
    gidx = [[gens.index(v) for v in g] for g in groups]
    rest_idx = [i for i, v in enumerate(gens) if v not in inside]
    rest_gens = tuple(gens[i] for i in rest_idx)
    buckets: dict[tuple, dict] = {}
    for e, c in terms.items():
        sign = 1
        shape = []
        ok = True
        for idx in gidx:
            beta = [e[i] for i in idx]
            if len(set(beta)) < len(beta):
                ok = False
                break
            inv = sum(1 for p in range(len(beta)) for q in range(p + 1, len(beta)) if beta[p] > beta[q])
            if inv % 2:
                sign = -sign
            gamma = sorted(beta)
            k = len(gamma)
            shape.append(tuple(gamma[k - 1 - j] - (k - 1 - j) for j in range(k)))
        if not ok:
            continue
        rest = tuple(e[i] for i in rest_idx)
        b = buckets.setdefault(tuple(shape), {})
        b[rest] = b.get(rest, 0) + sign * c
    out = MultiPoly.const(0)
    for shape, rest_terms in buckets.items():
        rest_poly = MultiPoly(rest_gens, rest_terms)
        if rest_poly.is_zero():
            continue
        piece = rest_poly
        for lam, g in zip(shape, groups):
            piece = piece * schur_poly(lam, g)
        out = out + piece
    return out


# -- series ------------------------------------------------------------------------

def _series_mul(a: dict, b: dict, limit: int) -> dict:
    out: dict = {}
    for p, c in a.items():
        for r, d in b.items():
            if p + r <= limit:
                out[p + r] = out.get(p + r, MultiPoly.const(0)) + c * d
    return {p: c for p, c in out.items() if not c.is_zero()}


def expand(e, var: Var, order: int) -> LaurentSeries:
    """Expand ``numerator / prod(factors)`` in powers of ``var^{-1}`` up to ``var^{-order}``.

    ``e`` is a :class:`LocalizedElement` or a ``(numerator, factors)`` pair.
    """
    if isinstance(e, LocalizedElement):
        num, dens = e.numerator, list(e.denominator)
    else:
        num, dens = MultiPoly.coerce(e[0]), list(e[1])
    deg = max(num.degree_in(var), 0)
    limit = order + deg
    acc: dict = {0: MultiPoly.const(1)}
    for f in dens:
        parts = f.coefficients_in(var)
        c = parts.get(1)
        if c is None or not c.is_constant() or c.constant_term() not in (1, -1) or set(parts) - {0, 1}:
            raise ShuffleError(f"denominator factor {f} does not contain {var_name(var)} with a unit coefficient")
        c = c.constant_term()
        r = parts.get(0, MultiPoly.const(0))
        # 1/(c v + r) = c v^-1 sum_k (-c r)^k v^-k
        step = r.scale(-c)
        inv: dict = {}
        power = MultiPoly.const(c)
        for k in range(0, limit):
            inv[k + 1] = power
            power = power * step
        acc = _series_mul(acc, inv, limit)
    numer = {-k: p for k, p in num.coefficients_in(var).items()}
    return LaurentSeries(var, _series_mul(acc, numer, order), order)


def residue(s: LaurentSeries) -> MultiPoly:
    if s.order < 1:
        raise ShuffleError(f"residue needs truncation order at least 1, got {s.order}")
    return s.coefficient(1)
