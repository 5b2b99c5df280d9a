"""Generalized Kac-Moody algebras as quotients of tensor algebras, and their characters.

The positive half is the free associative algebra on the generator spaces
modulo the two-sided ideal of Serre relations; everything is graded by
``(dimension vector, cohomological degree)`` and computed piece by piece with
exact rational linear algebra.  Brackets are color commutators
``[u, v] = uv - eps(u, v) vu`` with ``eps = (-1)^{k k'} * tau_sign`` of the
tripled quiver.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .linalg import Echelon
from .quiver import (Quiver, dims_below, positive_roots, real_simple_roots, sym_form,
                     tau_sign, triple)
from .repcount import KacPolynomial, ResourceLimitError

TENSOR_CAP = 10**5


class GkmError(ValueError):
    pass


class UnsupportedCaseError(GkmError):
    """The requested character has odd self-signs, where plethysm is not defined here."""


def _leq(d, cutoff) -> bool:
    return all(x <= c for x, c in zip(d, cutoff))


def _sub(d, e):
    return tuple(x - y for x, y in zip(d, e))


def _add(d, e):
    return tuple(x + y for x, y in zip(d, e))


# -- data types ------------------------------------------------------------------

@dataclass(frozen=True)
class Generator:
    degree: tuple[int, ...]
    coh_degree: int = 0
    mult: int = 1


@dataclass(frozen=True)
class GkmDatum:
    quiver: Quiver
    generators: tuple[Generator, ...] = ()

    def __post_init__(self) -> None:
        Q = self.quiver
        gens = tuple(Generator(tuple(int(x) for x in g.degree), int(g.coh_degree), int(g.mult))
                     for g in self.generators)
        object.__setattr__(self, "generators", gens)
        for g in gens:
            if len(g.degree) != Q.num_vertices:
                raise GkmError(f"generator degree {g.degree} does not match {Q.num_vertices} vertices")
            if g.mult < 0:
                raise GkmError(f"negative multiplicity at {g.degree}")
            if g.coh_degree % 2:
                raise GkmError(f"cohomological degree {g.coh_degree} at {g.degree} is odd")
            if g.degree not in positive_roots(Q, g.degree):
                raise GkmError(f"{g.degree} is not a positive root of the quiver")
        real = set(real_simple_roots(Q))
        for r in real:
            at = [g for g in gens if g.degree == r and g.mult]
            if at and (len(at) != 1 or at[0].mult != 1 or at[0].coh_degree != 0):
                raise GkmError(f"real simple root {r} needs exactly one generator of multiplicity 1 "
                               f"in degree 0")

    @classmethod
    def kac_moody(cls, Q: Quiver) -> "GkmDatum":
        """One degree-0 generator at every simple root of a loop-free quiver."""
        if any(s == t for s, t in Q.arrows):
            raise GkmError("the Kac-Moody datum needs a quiver without loops")
        return cls(Q, tuple(Generator(r) for r in real_simple_roots(Q)))

    def letters(self) -> list[tuple[tuple[int, ...], int]]:
        """One ``(degree, coh_degree)`` entry per basis vector of the generator spaces."""
        out = []
        for g in self.generators:
            out.extend([(g.degree, g.coh_degree)] * g.mult)
        return out

    def to_json(self) -> dict:
        return {"quiver": self.quiver.to_json(),
                "generators": [{"degree": list(g.degree), "coh_degree": g.coh_degree, "mult": g.mult}
                               for g in self.generators]}

    @classmethod
    def from_json(cls, doc: dict) -> "GkmDatum":
        try:
            Q = Quiver.from_json(doc["quiver"])
            gens = tuple(Generator(tuple(g["degree"]), int(g.get("coh_degree", 0)), int(g.get("mult", 1)))
                         for g in doc.get("generators", []))
        except (KeyError, TypeError) as exc:
            raise GkmError(f"malformed datum: {exc}") from exc
        return cls(Q, gens)

    @classmethod
    def load(cls, path) -> "GkmDatum":
        try:
            doc = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise GkmError(f"{path}: invalid JSON ({exc})") from exc
        return cls.from_json(doc)


class GradedDims(dict):
    """``{(degree, coh_degree): dim}``."""

    def at(self, d, coh: int | None = None) -> int:
        d = tuple(d)
        if coh is not None:
            return self.get((d, coh), 0)
        return sum(v for (e, _), v in self.items() if e == d)

    def degrees(self) -> list[tuple[int, ...]]:
        return sorted({d for d, _ in self})

    def rows(self) -> list[tuple[tuple[int, ...], int, int]]:
        return [(d, k, v) for (d, k), v in sorted(self.items())]

    def to_csv(self) -> str:
        lines = ["degree,coh_degree,dim"]
        lines += [f"\"{','.join(map(str, d))}\",{k},{v}" for d, k, v in self.rows()]
        return "\n".join(lines) + "\n"

    def to_json(self) -> list[dict]:
        return [{"degree": list(d), "coh_degree": k, "dim": v} for d, k, v in self.rows()]


class QHalfPolynomial:
    """Laurent polynomial in ``q^(1/2)``; ``terms[k]`` is the coefficient of ``q^(k/2)``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        self.terms = {int(k): int(c) for k, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, c: int) -> "QHalfPolynomial":
        return cls({0: c})

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = QHalfPolynomial.const(other)
        return isinstance(other, QHalfPolynomial) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms.items())))

    def __add__(self, other: "QHalfPolynomial") -> "QHalfPolynomial":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return QHalfPolynomial(out)

    def __mul__(self, other: "QHalfPolynomial") -> "QHalfPolynomial":
        out: dict[int, int] = {}
        for k, c in self.terms.items():
            for l, e in other.terms.items():
                out[k + l] = out.get(k + l, 0) + c * e
        return QHalfPolynomial(out)

    def is_zero(self) -> bool:
        return not self.terms

    def at_one(self) -> int:
        return sum(self.terms.values())

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, reverse=True):
            c = self.terms[k]
            if k == 0:
                mono = ""
            elif k == 2:
                mono = "q"
            elif k % 2 == 0:
                mono = f"q^{k // 2}" if k > 0 else f"q^({k // 2})"
            else:
                mono = f"q^({k}/2)"
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"QHalfPolynomial({self})"

    def to_json(self) -> dict:
        return {"terms": [{"half_exponent": k, "coeff": c} for k, c in sorted(self.terms.items())],
                "text": str(self)}


# -- Serre rule ---------------------------------------------------------------------

def serre_exponent(Q: Quiver, d1: Sequence[int], d2: Sequence[int]) -> int | None:
    """Exponent ``N`` of the relation ``ad(g)^N (g') = 0`` for generators in degrees ``d1, d2``."""
    d1, d2 = tuple(d1), tuple(d2)
    pair = sym_form(Q, d1, d2)
    real = set(real_simple_roots(Q))
    if d1 == d2 and d1 in real:
        return None
    if pair == 0:
        return 1
    if d1 in real and pair < 0:
        return 1 - pair
    return None


# -- the quotient algebra ---------------------------------------------------------

Word = tuple  # of letter indices


class GkmAlgebra:
    """Graded pieces of ``T(V) / <Serre>`` and of its Lie subalgebra generated by ``V``."""

    def __init__(self, datum: GkmDatum, cutoff: Sequence[int], tensor_cap: int = TENSOR_CAP):
        self.datum = datum
        self.Q = datum.quiver
        self.cutoff = tuple(cutoff)
        if len(self.cutoff) != self.Q.num_vertices:
            raise GkmError(f"cutoff {self.cutoff} does not match {self.Q.num_vertices} vertices")
        self.tensor_cap = tensor_cap
        self.letters = [l for l in datum.letters() if _leq(l[0], self.cutoff)]
        self._Qt = triple(self.Q)
        self._words: dict[tuple, list[Word]] = {}
        self.ideal: dict[tuple, Echelon] = {}
        self.lie: dict[tuple, list[dict]] = {}
        self._lie_rank: dict[tuple, int] = {}
        self._built = False

    # grading helpers
    def word_grade(self, w: Word) -> tuple[tuple[int, ...], int]:
        d = (0,) * self.Q.num_vertices
        k = 0
        for i in w:
            d = _add(d, self.letters[i][0])
            k += self.letters[i][1]
        return d, k

    @lru_cache(maxsize=None)
    def eps(self, d1, k1, d2, k2) -> int:
        s = tau_sign(self._Qt, d1, d2)
        return -s if (k1 * k2) % 2 else s

    def words(self, d: tuple) -> list[Word]:
        """All words of total degree ``d`` (any cohomological degree)."""
        hit = self._words.get(d)
        if hit is not None:
            return hit
        if not any(d):
            out = [()]
        else:
            out = []
            for i, (ld, _) in enumerate(self.letters):
                if _leq(ld, d):
                    out.extend((i,) + w for w in self.words(_sub(d, ld)))
        if len(out) > self.tensor_cap:
            raise ResourceLimitError(f"tensor space in degree {d} has {len(out)} words, above the cap "
                                     f"{self.tensor_cap}")
        self._words[d] = out
        return out

    def bracket_letter(self, i: int, v: dict) -> dict:
        """``[e_i, v]`` for ``v`` homogeneous."""
        if not v:
            return {}
        ld, lk = self.letters[i]
        vd, vk = self.word_grade(next(iter(v)))
        e = self.eps(ld, lk, vd, vk)
        out: dict = defaultdict(Fraction)
        for w, c in v.items():
            out[(i,) + w] += c
            out[w + (i,)] -= e * c
        return {w: c for w, c in out.items() if c}

    def relations(self) -> list[dict]:
        rels = []
        for i, (d1, _) in enumerate(self.letters):
            for j, (d2, _) in enumerate(self.letters):
                n = serre_exponent(self.Q, d1, d2)
                if n is None:
                    continue
                deg = _add(tuple(n * x for x in d1), d2)
                if not _leq(deg, self.cutoff):
                    continue
                v = {(j,): Fraction(1)}
                for _ in range(n):
                    v = self.bracket_letter(i, v)
                if v:
                    rels.append(v)
        return rels

    def _degrees(self) -> list[tuple]:
        return sorted((d for d in dims_below(self.cutoff) if any(d)), key=lambda d: (sum(d), d))

    def build(self, relation_copies: int = 1) -> None:
        if self._built:
            return
        by_grade: dict[tuple, list[dict]] = defaultdict(list)
        for r in self.relations():
            by_grade[self.word_grade(next(iter(r)))].extend([r] * relation_copies)
        for d in self._degrees():
            words = self.words(d)
            grades = sorted({self.word_grade(w) for w in words})
            for g in grades:
                ech = Echelon()
                for r in by_grade.get(g, ()):
                    ech.insert(r)
                gd, gk = g
                for i, (ld, lk) in enumerate(self.letters):
                    if not _leq(ld, gd) or ld == gd:
                        continue
                    lower = self.ideal.get((_sub(gd, ld), gk - lk))
                    if lower is None:
                        continue
                    for row in lower.rows.values():
                        ech.insert({(i,) + w: c for w, c in row.items()})
                        ech.insert({w + (i,): c for w, c in row.items()})
                self.ideal[g] = ech
                # Lie piece: letters plus brackets of letters with lower Lie pieces
                span = ech.copy()
                base = span.rank
                kept = []
                cands = [{(i,): Fraction(1)} for i, l in enumerate(self.letters) if l == (gd, gk)]
                for i, (ld, lk) in enumerate(self.letters):
                    if _leq(ld, gd) and ld != gd:
                        for v in self.lie.get((_sub(gd, ld), gk - lk), ()):
                            cands.append(self.bracket_letter(i, v))
                for c in cands:
                    red = span.reduce(c)
                    if red and span.insert(red):
                        kept.append(red)
                self.lie[g] = kept
                self._lie_rank[g] = span.rank - base
        self._built = True

    def associative_dims(self) -> GradedDims:
        self.build()
        out = GradedDims({((0,) * self.Q.num_vertices, 0): 1})
        for g, ech in self.ideal.items():
            n_words = sum(1 for w in self.words(g[0]) if self.word_grade(w) == g)
            dim = n_words - ech.rank
            if dim:
                out[g] = dim
        return out

    def lie_dims(self) -> GradedDims:
        self.build()
        return GradedDims({g: r for g, r in self._lie_rank.items() if r})


def associative_dims(datum: GkmDatum, cutoff: Sequence[int], tensor_cap: int = TENSOR_CAP) -> GradedDims:
    """Dimensions of ``T(V)/<Serre>`` for degrees up to ``cutoff``; degree 0 contributes 1."""
    return GkmAlgebra(datum, cutoff, tensor_cap).associative_dims()


def lie_dims(datum: GkmDatum, cutoff: Sequence[int], tensor_cap: int = TENSOR_CAP) -> GradedDims:
    return GkmAlgebra(datum, cutoff, tensor_cap).lie_dims()


def km_root_mult(Q: Quiver, d: Sequence[int], cutoff: Sequence[int] | None = None) -> int:
    """Root multiplicity of the Kac-Moody algebra of a loop-free quiver."""
    d = tuple(d)
    cutoff = tuple(cutoff) if cutoff is not None else d
    if not _leq(d, cutoff):
        raise GkmError(f"degree {d} lies above the cutoff {cutoff}")
    return lie_dims(GkmDatum.kac_moody(Q), d).at(d)


# -- characters ------------------------------------------------------------------------

def bps_character(Q: Quiver, d: Sequence[int], kac: KacPolynomial) -> QHalfPolynomial:
    """``a_{Q,d}(q^{-1})``: coefficient ``c_e`` lands on ``q^{-e}`` (cohomological degree ``-2e``)."""
    if kac.d and tuple(kac.d) != tuple(d):
        raise GkmError(f"Kac polynomial was computed for {kac.d}, not {tuple(d)}")
    return QHalfPolynomial({-2 * e: c for e, c in enumerate(kac.coefficients)})


def symmetric_character(generators: Iterable[tuple[tuple[int, ...], int, int]],
                        cutoff: Sequence[int]) -> dict[tuple, QHalfPolynomial]:
    """Character of ``Sym`` of even generators ``(degree, coh_degree, mult)`` up to ``cutoff``."""
    cutoff = tuple(cutoff)
    degs = list(dims_below(cutoff, include_zero=True))
    series: dict[tuple, dict[int, int]] = {d: {} for d in degs}
    series[(0,) * len(cutoff)] = {0: 1}
    for gd, gk, m in generators:
        if m == 0 or not _leq(gd, cutoff):
            continue
        if not any(gd):
            raise GkmError("generators must have nonzero degree")
        if gk % 2:
            raise UnsupportedCaseError(f"generator at {gd} has odd cohomological degree {gk}")
        if m < 0:
            raise UnsupportedCaseError(f"negative multiplicity {m} at {gd}")
        new: dict[tuple, dict[int, int]] = {d: {} for d in degs}
        for d, terms in series.items():
            if not terms:
                continue
            n = 0
            cur = d
            while _leq(cur, cutoff):
                c = comb(n + m - 1, n)
                tgt = new[cur]
                for k, v in terms.items():
                    kk = k + n * gk
                    tgt[kk] = tgt.get(kk, 0) + c * v
                n += 1
                cur = _add(cur, gd)
        series = new
    return {d: QHalfPolynomial(t) for d, t in series.items()}


def pbw_character(Q: Quiver, kac_family: Mapping[tuple, KacPolynomial], cutoff: Sequence[int],
                  u_truncation: int = 1) -> dict[tuple, QHalfPolynomial]:
    """Symmetric-algebra character of ``sum_d bps_character(d) * (1 + q + ... + q^(u-1))``."""
    if u_truncation < 1:
        raise GkmError("u_truncation must be at least 1")
    gens = []
    for d, kac in sorted(kac_family.items()):
        chi = bps_character(Q, d, kac)
        for k, c in chi.terms.items():
            for j in range(u_truncation):
                gens.append((tuple(d), k + 2 * j, c))
    return symmetric_character(gens, cutoff)


def pbw_from_lie(lie: GradedDims, cutoff: Sequence[int]) -> GradedDims:
    """Graded dimensions of ``Sym`` of a graded Lie algebra with even self-signs."""
    chars = symmetric_character([(d, k, v) for (d, k), v in sorted(lie.items())], cutoff)
    out = GradedDims()
    for d, chi in chars.items():
        for k, c in chi.terms.items():
            out[(d, k)] = c
    return out
