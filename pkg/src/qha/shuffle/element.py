"""Shuffle-algebra elements, two-slot localized elements and Laurent series."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .poly import MultiPoly, PolyError, Var, canonical_linear, var_name, xvar


class ShuffleError(ValueError):
    pass


def block_vars(d: Sequence[int], slot: int = 0, offset: Sequence[int] | None = None) -> list[list[Var]]:
    """Per-vertex variable lists ``x[slot, i, offset_i + 1 .. offset_i + d_i]``."""
    off = offset or [0] * len(d)
    return [[xvar(i, off[i] + m, slot) for m in range(1, d[i] + 1)] for i in range(len(d))]


@dataclass(frozen=True, eq=False)
class ShuffleElement:
    """A polynomial in ``x[i,m]`` (``m <= d_i``) and ``t[k]``, symmetric per vertex."""

    degree: tuple[int, ...]
    poly: MultiPoly
    check: bool = field(default=True, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "degree", tuple(int(x) for x in self.degree))
        object.__setattr__(self, "poly", MultiPoly.coerce(self.poly))
        if any(x < 0 for x in self.degree):
            raise ShuffleError(f"negative degree {self.degree}")
        for v in self.poly.variables():
            if v[0] == "x":
                _, slot, i, m = v
                if slot != 0 or i >= len(self.degree) or not 1 <= m <= self.degree[i]:
                    raise ShuffleError(f"variable {var_name(v)} does not belong to degree {self.degree}")
        if self.check and not self.is_symmetric():
            raise ShuffleError(f"{self.poly} is not symmetric for degree {self.degree}")

    @classmethod
    def one(cls, d: Sequence[int]) -> "ShuffleElement":
        return cls(tuple(d), MultiPoly.const(1), check=False)

    def is_symmetric(self) -> bool:
        """Invariance under adjacent transpositions of each vertex's variables."""
        for i, di in enumerate(self.degree):
            for m in range(1, di):
                a, b = xvar(i, m), xvar(i, m + 1)
                if self.poly.rename({a: b, b: a}) != self.poly:
                    return False
        return True

    def __eq__(self, other) -> bool:
        return isinstance(other, ShuffleElement) and self.degree == other.degree and self.poly == other.poly

    def __hash__(self) -> int:
        return hash((self.degree, self.poly))

    def __add__(self, other: "ShuffleElement") -> "ShuffleElement":
        if self.degree != other.degree:
            raise ShuffleError(f"cannot add degrees {self.degree} and {other.degree}")
        return ShuffleElement(self.degree, self.poly + other.poly, check=False)

    def __sub__(self, other: "ShuffleElement") -> "ShuffleElement":
        return self + other.scale(-1)

    def scale(self, c) -> "ShuffleElement":
        return ShuffleElement(self.degree, self.poly * c, check=False)

    def __str__(self) -> str:
        return str(self.poly)

    def to_json(self) -> dict:
        return {"degree": list(self.degree), "poly": self.poly.to_json()}


@dataclass(frozen=True, eq=False)
class LocalizedElement:
    """``numerator / prod(denominator)`` over slots 1 and 2 with bidegree ``(d', d'')``.

    Denominator factors are kept in canonical form (largest variable with
    coefficient +1); signs are absorbed into the numerator.
    """

    bidegree: tuple[tuple[int, ...], tuple[int, ...]]
    numerator: MultiPoly
    denominator: tuple[MultiPoly, ...] = ()

    @classmethod
    def make(cls, bidegree, numerator: MultiPoly, factors: Sequence[MultiPoly] = (),
             reduce: bool = True) -> "LocalizedElement":
        num = MultiPoly.coerce(numerator)
        dens = []
        for f in factors:
            if f.total_degree() != 1:
                raise PolyError(f"denominator factor {f} is not linear")
            sign, g = canonical_linear(f)
            if sign < 0:
                num = -num
            dens.append(g)
        bideg = (tuple(bidegree[0]), tuple(bidegree[1]))
        out = cls(bideg, num, tuple(dens))
        return out.reduced() if reduce else out

    def reduced(self) -> "LocalizedElement":
        """Cancel denominator factors that divide the numerator exactly."""
        num = self.numerator
        keep = []
        for f in self.denominator:
            if num.is_zero():
                break
            q = num.try_divide_linear(f)
            if q is None:
                keep.append(f)
            else:
                num = q
        if num.is_zero():
            keep = []
        return LocalizedElement(self.bidegree, num, tuple(sorted(keep, key=_factor_key)))

    def same_value(self, other: "LocalizedElement") -> bool:
        """Equality as rational functions (cross-multiplied)."""
        if self.bidegree != other.bidegree:
            return False
        lhs = self.numerator
        for f in other.denominator:
            lhs = lhs * f
        rhs = other.numerator
        for f in self.denominator:
            rhs = rhs * f
        return lhs == rhs

    def __eq__(self, other) -> bool:
        return isinstance(other, LocalizedElement) and self.same_value(other)

    __hash__ = None

    def __str__(self) -> str:
        if not self.denominator:
            return str(self.numerator)
        den = "*".join(f"({f})" for f in self.denominator)
        return f"({self.numerator}) / ({den})"

    def to_json(self) -> dict:
        return {"bidegree": [list(self.bidegree[0]), list(self.bidegree[1])],
                "numerator": self.numerator.to_json(),
                "denominator_factors": [f.to_json() for f in self.denominator]}


def _factor_key(f: MultiPoly):
    return str(f)


@dataclass
class LaurentSeries:
    """``sum_p coeffs[p] * var^(-p)`` known exactly for ``p <= order``."""

    var: Var
    coeffs: dict[int, MultiPoly]
    order: int

    def __post_init__(self) -> None:
        self.coeffs = {p: c for p, c in self.coeffs.items() if p <= self.order and not c.is_zero()}

    def coefficient(self, p: int) -> MultiPoly:
        if p > self.order:
            raise ShuffleError(f"coefficient of {var_name(self.var)}^(-{p}) lies beyond the truncation order {self.order}")
        return self.coeffs.get(p, MultiPoly.const(0))

    def lowest_power(self) -> int | None:
        return min(self.coeffs) if self.coeffs else None

    def __str__(self) -> str:
        if not self.coeffs:
            return f"O({var_name(self.var)}^(-{self.order + 1}))"
        parts = []
        name = var_name(self.var)
        for p in sorted(self.coeffs):
            c = self.coeffs[p]
            mono = "" if p == 0 else (f"{name}^{-p}" if p < 0 else f"{name}^(-{p})")
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        parts.append(f"O({name}^(-{self.order + 1}))")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {"var": var_name(self.var), "order": self.order,
                "coefficients": {str(p): c.to_json() for p, c in sorted(self.coeffs.items())}}
