"""Sparse multivariate polynomials with exact rational coefficients.

Variables are tuples: ``("t", k)`` for torus generators (1-based) and
``("x", slot, vertex, m)`` for Chern roots, with ``slot = 0`` meaning a
single tensor factor, ``vertex`` 0-based and ``m`` 1-based.  Plain tuple
ordering puts the ``t`` variables first and then the ``x`` variables by
``(slot, vertex, index)``.
"""

from __future__ import annotations

from fractions import Fraction
from operator import add as _add
from typing import Iterable, Mapping

Var = tuple


class PolyError(ArithmeticError):
    pass


class DivisionNotExact(PolyError):
    """A polynomial was not divisible by the requested factor."""


def tvar(k: int) -> Var:
    return ("t", int(k))


def xvar(vertex: int, m: int, slot: int = 0) -> Var:
    return ("x", int(slot), int(vertex), int(m))


def var_name(v: Var) -> str:
    if v[0] == "t":
        return f"t[{v[1]}]"
    _, slot, vertex, m = v
    if slot == 0:
        return f"x[{vertex + 1},{m}]"
    return f"x[{slot},{vertex + 1},{m}]"


def parse_var_name(s: str) -> Var:
    s = s.strip()
    if not (s.endswith("]") and "[" in s):
        raise PolyError(f"bad variable name {s!r}")
    head, body = s[:-1].split("[", 1)
    idx = [int(p) for p in body.split(",")]
    if head == "t" and len(idx) == 1:
        return tvar(idx[0])
    if head == "x" and len(idx) == 2:
        return xvar(idx[0] - 1, idx[1])
    if head == "x" and len(idx) == 3:
        return xvar(idx[1] - 1, idx[2], idx[0])
    raise PolyError(f"bad variable name {s!r}")


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def format_coeff(c) -> str:
    c = _norm(c)
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


class MultiPoly:
    """Immutable polynomial: ``terms`` maps exponent tuples over ``gens`` to coefficients."""

    __slots__ = ("gens", "terms", "_hash")

    def __init__(self, gens: Iterable[Var] = (), terms: Mapping[tuple, object] | None = None,
                 _trusted: bool = False):
        gens = tuple(gens)
        if _trusted:
            self.gens = gens
            self.terms = terms if terms is not None else {}
        else:
            if list(gens) != sorted(set(gens)):
                order = sorted(set(gens))
                pos = [order.index(g) for g in gens]
                new: dict = {}
                for e, c in (terms or {}).items():
                    ne = [0] * len(order)
                    for p, x in zip(pos, e):
                        ne[p] += x
                    ne = tuple(ne)
                    new[ne] = new.get(ne, 0) + c
                gens, terms = tuple(order), new
            self.gens = gens
            self.terms = {e: _norm(c) for e, c in (terms or {}).items() if c}
        self._hash = None

    # -- constructors ----------------------------------------------------

    @classmethod
    def const(cls, c) -> "MultiPoly":
        return cls((), {(): c} if c else {}, _trusted=True)

    @classmethod
    def var(cls, v: Var) -> "MultiPoly":
        return cls((v,), {(1,): 1}, _trusted=True)

    @classmethod
    def linear(cls, coeffs: Mapping[Var, object], const=0) -> "MultiPoly":
        out = cls.const(const)
        for v, c in coeffs.items():
            if c:
                out = out + cls.var(v) * c
        return out

    @classmethod
    def from_monomials(cls, items: Iterable[tuple[Mapping[Var, int], object]]) -> "MultiPoly":
        acc = MultiPoly.const(0)
        for exps, c in items:
            gens = tuple(sorted(exps))
            acc = acc + MultiPoly(gens, {tuple(exps[g] for g in gens): c})
        return acc

    # -- structure -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * len(self.gens), 0)

    def variables(self) -> tuple[Var, ...]:
        used = [False] * len(self.gens)
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    used[i] = True
        return tuple(g for g, u in zip(self.gens, used) if u)

    def compact(self) -> "MultiPoly":
        keep = self.variables()
        if keep == self.gens:
            return self
        idx = [self.gens.index(g) for g in keep]
        return MultiPoly(keep, {tuple(e[i] for i in idx): c for e, c in self.terms.items()}, _trusted=True)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, v: Var) -> int:
        if v not in self.gens:
            return 0 if self.terms else -1
        i = self.gens.index(v)
        return max((e[i] for e in self.terms), default=-1)

    def embed(self, gens: tuple[Var, ...]) -> dict:
        """Terms re-indexed over a sorted superset ``gens`` of ``self.gens``."""
        if gens == self.gens:
            return self.terms
        idx = [gens.index(g) for g in self.gens]
        n = len(gens)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for i, x in zip(idx, e):
                ne[i] = x
            out[tuple(ne)] = c
        return out

    def _unify(self, other: "MultiPoly"):
        if self.gens == other.gens:
            return self.gens, self.terms, other.terms
        gens = tuple(sorted(set(self.gens) | set(other.gens)))
        return gens, self.embed(gens), other.embed(gens)

    # -- arithmetic ------------------------------------------------------

    @staticmethod
    def coerce(x) -> "MultiPoly":
        if isinstance(x, MultiPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return MultiPoly.const(x)
        raise TypeError(f"cannot use {type(x).__name__} as a polynomial")

    def __add__(self, other) -> "MultiPoly":
        other = MultiPoly.coerce(other)
        gens, a, b = self._unify(other)
        out = dict(a)
        for e, c in b.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = _norm(v)
            else:
                out.pop(e, None)
        return MultiPoly(gens, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.gens, {e: -c for e, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other) -> "MultiPoly":
        return self + (-MultiPoly.coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return MultiPoly.coerce(other) - self

    def scale(self, c) -> "MultiPoly":
        if not c:
            return MultiPoly.const(0)
        return MultiPoly(self.gens, {e: _norm(v * c) for e, v in self.terms.items()}, _trusted=True)

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        gens, a, b = self._unify(other)
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple(map(_add, e1, e2))
                out[e] = get(e, 0) + c1 * c2
        return MultiPoly(gens, {e: _norm(c) for e, c in out.items() if c}, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise PolyError("negative power of a polynomial")
        out, base = MultiPoly.const(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self.compact(), other.compact()
        return a.gens == b.gens and a.terms == b.terms

    def __hash__(self) -> int:
        if self._hash is None:
            a = self.compact()
            self._hash = hash((a.gens, frozenset(a.terms.items())))
        return self._hash

    # -- substitution ----------------------------------------------------

    def rename(self, mapping: Mapping[Var, Var]) -> "MultiPoly":
        """Rename variables; variables absent from ``mapping`` are kept."""
        new = [mapping.get(g, g) for g in self.gens]
        return MultiPoly(new, self.terms)

    def evaluate(self, values: Mapping[Var, object]):
        """Full evaluation; every variable that occurs must have a value."""
        vals = []
        for g in self.gens:
            if g in values:
                vals.append(values[g])
            else:
                vals.append(None)
        total = 0
        for e, c in self.terms.items():
            t = c
            for x, v in zip(e, vals):
                if x:
                    if v is None:
                        raise PolyError("missing value for a variable in evaluate")
                    t = t * v ** x
            total += t
        return _norm(total) if isinstance(total, Fraction) else total

    def substitute(self, values: Mapping[Var, object]) -> "MultiPoly":
        """Partial evaluation: variables in ``values`` replaced by numbers or polynomials."""
        keep = [i for i, g in enumerate(self.gens) if g not in values]
        gone = [i for i, g in enumerate(self.gens) if g in values]
        keep_gens = tuple(self.gens[i] for i in keep)
        grouped: dict = {}
        for e, c in self.terms.items():
            bucket = grouped.setdefault(tuple(e[i] for i in gone), {})
            rest = tuple(e[i] for i in keep)
            bucket[rest] = bucket.get(rest, 0) + c
        out = MultiPoly.const(0)
        for powers, terms in grouped.items():
            factor = MultiPoly.const(1)
            for i, x in zip(gone, powers):
                if x:
                    factor = factor * (MultiPoly.coerce(values[self.gens[i]]) ** x)
            out = out + factor * MultiPoly(keep_gens, terms)
        return out

    def coefficients_in(self, v: Var) -> dict[int, "MultiPoly"]:
        """``{k: P_k}`` with ``self = sum P_k v^k``."""
        if v not in self.gens:
            return {0: self} if self.terms else {}
        i = self.gens.index(v)
        rest_gens = self.gens[:i] + self.gens[i + 1:]
        buckets: dict[int, dict] = {}
        for e, c in self.terms.items():
            buckets.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
        return {k: MultiPoly(rest_gens, t, _trusted=True) for k, t in buckets.items()}

    def coefficient_of(self, exps: Mapping[Var, int]) -> "MultiPoly":
        """Coefficient of the monomial ``exps`` viewed as a polynomial in those variables."""
        out = self
        for v, k in exps.items():
            out = out.coefficients_in(v).get(k, MultiPoly.const(0))
        return out

    # -- division --------------------------------------------------------

    def divide_linear(self, factor: "MultiPoly", v: Var | None = None) -> "MultiPoly":
        """Exact quotient by a degree-one ``factor`` whose coefficient on ``v`` is +-1.

        Raises :class:`DivisionNotExact` when there is a remainder.
        """
        if v is None:
            v = unit_variable(factor)
        parts = factor.coefficients_in(v)
        c = parts.get(1, MultiPoly.const(0))
        if not c.is_constant() or c.constant_term() not in (1, -1) or set(parts) - {0, 1}:
            raise PolyError(f"{factor} does not have a unit coefficient on {var_name(v)}")
        c = c.constant_term()
        r = parts.get(0, MultiPoly.const(0))
        coeffs = self.coefficients_in(v)
        if not coeffs:
            return MultiPoly.const(0)
        n = max(coeffs)
        zero = MultiPoly.const(0)
        quot: dict[int, MultiPoly] = {}
        carry = coeffs.get(n, zero)
        for k in range(n, 0, -1):
            s = carry.scale(c)  # dividing by c = +-1 equals multiplying by it
            quot[k - 1] = s
            carry = coeffs.get(k - 1, zero) - r * s
        if not carry.is_zero():
            raise DivisionNotExact(f"remainder {carry} dividing by {factor}")
        out = zero
        vp = MultiPoly.var(v)
        for k, s in quot.items():
            if not s.is_zero():
                out = out + s * vp ** k
        return out

    def try_divide_linear(self, factor: "MultiPoly") -> "MultiPoly | None":
        try:
            return self.divide_linear(factor)
        except DivisionNotExact:
            return None

    # -- output ----------------------------------------------------------

    def sorted_terms(self) -> list[tuple[dict, object]]:
        """Terms in print order: descending degree, then larger variables first."""
        def key(item):
            e = item[0]
            return (-sum(e), tuple(-x for x in reversed(e)))
        return [({g: x for g, x in zip(self.gens, e) if x}, c) for e, c in sorted(self.terms.items(), key=key)]

    def __str__(self) -> str:
        items = self.sorted_terms()
        if not items:
            return "0"
        parts = []
        for exps, c in items:
            mono = "*".join(var_name(g) + (f"^{x}" if x > 1 else "")
                            for g, x in sorted(exps.items(), reverse=True))
            mag = abs(c)
            if not mono:
                body = format_coeff(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_coeff(mag)}*{mono}"
            sign = c < 0
            if not parts:
                parts.append(("-" if sign else "") + body)
            else:
                parts.append((" - " if sign else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"MultiPoly({self})"

    def to_json(self) -> list[dict]:
        return [{"coeff": format_coeff(c), "exps": {var_name(g): x for g, x in exps.items()}}
                for exps, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, doc: list[dict]) -> "MultiPoly":
        items = []
        for term in doc:
            exps = {parse_var_name(k): int(x) for k, x in term.get("exps", {}).items()}
            items.append((exps, Fraction(term["coeff"])))
        return cls.from_monomials(items)


def unit_variable(factor: MultiPoly) -> Var:
    """Largest variable entering ``factor`` linearly with coefficient +-1."""
    if factor.total_degree() != 1:
        raise PolyError(f"{factor} is not linear")
    for v in reversed(factor.gens):
        parts = factor.coefficients_in(v)
        c = parts.get(1)
        if c is not None and c.is_constant() and c.constant_term() in (1, -1):
            return v
    raise PolyError(f"{factor} has no unit-coefficient variable")


def canonical_linear(factor: MultiPoly) -> tuple[int, MultiPoly]:
    """``(sign, f)`` with ``factor = sign * f`` and the largest variable of ``f`` positive."""
    top = factor.compact()
    lead = top.coefficients_in(top.gens[-1]).get(1) if top.gens else None
    if lead is None or lead.constant_term() > 0:
        return 1, top
    return -1, -top


def vandermonde(variables: list[Var]) -> MultiPoly:
    """``prod_{m<n} (v_n - v_m)`` in the given order."""
    out = MultiPoly.const(1)
    for n in range(len(variables)):
        for m in range(n):
            out = out * (MultiPoly.var(variables[n]) - MultiPoly.var(variables[m]))
    return out
