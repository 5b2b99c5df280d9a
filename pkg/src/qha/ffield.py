"""Small finite fields as lookup tables.

Elements of ``F_{p^k}`` are encoded as integers ``0..q-1``: the base-``p``
digits (lowest first) are the coefficients of a polynomial in the generator
reduced modulo the defining polynomial.  For ``k = 1`` this is ordinary
arithmetic mod ``p``.
"""

from __future__ import annotations

import itertools
from functools import cached_property

import numpy as np


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes(count: int, start: int = 2) -> list[int]:
    out, n = [], max(2, start)
    while len(out) < count:
        if is_prime(n):
            out.append(n)
        n += 1
    return out


def _polymod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of ``a`` by monic ``m`` over F_p; coefficient lists lowest first."""
    a = [x % p for x in a]
    k = len(m) - 1
    for i in range(len(a) - 1, k - 1, -1):
        c = a[i]
        if c:
            for j in range(k + 1):
                a[i - k + j] = (a[i - k + j] - c * m[j]) % p
    a = a[:k] if k else []
    return a + [0] * (k - len(a))


def _is_irreducible(m: list[int], p: int) -> bool:
    """Brute-force check: no monic factor of degree ``1..deg/2``."""
    k = len(m) - 1
    for deg in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if not any(_polymod(list(m), list(low) + [1], p)):
                return False
    return True


class FiniteField:
    """``F_q`` with ``q = p^k``; for ``k > 1`` a monic irreducible modulus is required.

    ``modulus`` lists coefficients lowest degree first, including the leading 1.
    """

    def __init__(self, p: int, k: int = 1, modulus: list[int] | tuple[int, ...] | None = None):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if k < 1:
            raise FieldError("field degree must be positive")
        if k > 1:
            if modulus is None:
                raise FieldError(f"F_{p}^{k} needs an explicit irreducible modulus")
            modulus = [int(c) % p for c in modulus]
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise FieldError(f"modulus must be monic of degree {k}")
            if not _is_irreducible(modulus, p):
                raise FieldError(f"modulus {modulus} is reducible over F_{p}")
        elif modulus is not None and len(modulus) not in (0, 2):
            raise FieldError("a prime field takes no modulus of degree other than 1")
        self.p = p
        self.k = k
        self.modulus = tuple(modulus) if k > 1 else None
        self.q = p ** k

    def __repr__(self) -> str:
        return f"FiniteField({self.p}, {self.k})" if self.k > 1 else f"FiniteField({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteField) and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    # encoding helpers for k > 1
    def _digits(self, x: int) -> list[int]:
        return [(x // self.p ** i) % self.p for i in range(self.k)]

    def _undigits(self, ds: list[int]) -> int:
        return sum(c * self.p ** i for i, c in enumerate(ds))

    @cached_property
    def tables(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """``(add, mul, neg, inv)`` as int64 arrays; ``inv[0]`` is 0 by convention."""
        q, p = self.q, self.p
        if self.k == 1:
            r = np.arange(q, dtype=np.int64)
            add = (r[:, None] + r[None, :]) % q
            mul = (r[:, None] * r[None, :]) % q
        else:
            digits = [self._digits(x) for x in range(q)]
            add = np.zeros((q, q), dtype=np.int64)
            mul = np.zeros((q, q), dtype=np.int64)
            for x, y in itertools.product(range(q), repeat=2):
                add[x, y] = self._undigits([(a + b) % p for a, b in zip(digits[x], digits[y])])
                prod = [0] * (2 * self.k - 1)
                for i, a in enumerate(digits[x]):
                    for j, b in enumerate(digits[y]):
                        prod[i + j] += a * b
                mul[x, y] = self._undigits(_polymod(prod, list(self.modulus), p))
        neg = np.array([int(np.nonzero(add[x] == 0)[0][0]) for x in range(q)], dtype=np.int64)
        inv = np.zeros(q, dtype=np.int64)
        for x in range(1, q):
            inv[x] = int(np.nonzero(mul[x] == 1)[0][0])
        for t in (add, mul, neg, inv):
            t.setflags(write=False)
        return add, mul, neg, inv

    def add(self, x: int, y: int) -> int:
        return int(self.tables[0][x, y])

    def mul(self, x: int, y: int) -> int:
        return int(self.tables[1][x, y])

    def neg(self, x: int) -> int:
        return int(self.tables[2][x])

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return int(self.tables[3][x])

    def elements(self) -> range:
        return range(self.q)

    def gl_order(self, n: int) -> int:
        out = 1
        for i in range(n):
            out *= self.q ** n - self.q ** i
        return out


def prime_fields(ps) -> list[FiniteField]:
    return [FiniteField(int(p)) for p in ps]
