"""Evaluation of shuffle expressions at exact rational points.

Symbolic products blow up quickly on tripled quivers (the kernel of a product
in degree ``(d', d'')`` already has ``3 d' d''`` linear factors for one loop
vertex).  Here a product is never expanded: both sides of an identity are
evaluated at a random point with distinct coordinates by summing over shuffles
directly.  Agreement at several independent random points is a probabilistic
identity test; a single disagreement is a certificate of failure.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Sequence

from .element import ShuffleElement, ShuffleError
from .ops import ShuffleAlgebra, _add, _dims_between, _sub
from .poly import tvar, xvar

Point = tuple  # per-vertex tuples of values


class Node:
    """A shuffle expression of fixed degree that can be evaluated at a point."""

    degree: tuple[int, ...]

    def value(self, xs: Point, ts: tuple) -> Fraction:
        raise NotImplementedError


class Leaf(Node):
    def __init__(self, element: ShuffleElement):
        self.degree = element.degree
        self.poly = element.poly

    def value(self, xs, ts):
        env = {tvar(k + 1): v for k, v in enumerate(ts)}
        for i, vals in enumerate(xs):
            for m, v in enumerate(vals, start=1):
                env[xvar(i, m)] = v
        return Fraction(self.poly.evaluate(env))


class Product(Node):
    """``left * right`` evaluated as a sum over shuffles, memoized per point."""

    def __init__(self, alg: ShuffleAlgebra, left: Node, right: Node):
        self.alg = alg
        self.left, self.right = left, right
        self.degree = _add(left.degree, right.degree)
        self._memo: dict = {}

    def value(self, xs, ts):
        key = (xs, ts)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        d1 = self.left.degree
        choices = [itertools.combinations(range(len(vals)), d1[i]) for i, vals in enumerate(xs)]
        total = Fraction(0)
        for pick in itertools.product(*choices):
            a = tuple(tuple(xs[i][k] for k in sub) for i, sub in enumerate(pick))
            b = tuple(tuple(v for k, v in enumerate(xs[i]) if k not in sub) for i, sub in enumerate(pick))
            total += self.left.value(a, ts) * self.right.value(b, ts) * kernel(self.alg, a, b, ts)
        self._memo[key] = total
        return total


def weight_value(w, ts) -> Fraction:
    return sum((Fraction(c) * t for c, t in zip(w, ts)), Fraction(0))


def euler_arrows(alg: ShuffleAlgebra, a: Point, b: Point, ts) -> Fraction:
    out = Fraction(1)
    for k, (s, t) in enumerate(alg.Q.arrows):
        w = weight_value(alg.wt[k], ts)
        for u in a[s]:
            for v in b[t]:
                out *= v - u - w
    return out


def euler_op(alg: ShuffleAlgebra, a: Point, b: Point, ts) -> Fraction:
    out = Fraction(1)
    for k, (s, t) in enumerate(alg.Q.arrows):
        w = weight_value(alg.wt[k], ts)
        for u in a[t]:
            for v in b[s]:
                out *= v - u + w
    return out


def euler_vertices(a: Point, b: Point) -> Fraction:
    out = Fraction(1)
    for ua, vb in zip(a, b):
        for u in ua:
            for v in vb:
                out *= v - u
    return out


def kernel(alg: ShuffleAlgebra, a: Point, b: Point, ts) -> Fraction:
    den = euler_vertices(a, b)
    if den == 0:
        raise ShuffleError("evaluation point has repeated coordinates")
    return euler_arrows(alg, a, b, ts) / den


def concat(a: Point, b: Point) -> Point:
    return tuple(x + y for x, y in zip(a, b))


class PointSampler:
    """Random points with distinct integer coordinates drawn from a seeded generator."""

    def __init__(self, seed: int = 0, spread: int = 10**6):
        self.rng = random.Random(seed)
        self.spread = spread

    def point(self, d: Sequence[int]) -> Point:
        count = sum(d)
        vals = self.rng.sample(range(-self.spread, self.spread), count)
        out, k = [], 0
        for di in d:
            out.append(tuple(Fraction(v) for v in vals[k:k + di]))
            k += di
        return tuple(out)

    def torus(self, rank: int) -> tuple:
        return tuple(Fraction(self.rng.randint(-self.spread, self.spread)) for _ in range(rank))


def associativity_at(alg: ShuffleAlgebra, a, b, c, sampler: PointSampler, points: int = 2) -> bool:
    A, B, C = Leaf(a), Leaf(b), Leaf(c)
    left = Product(alg, Product(alg, A, B), C)
    right = Product(alg, A, Product(alg, B, C))
    for _ in range(points):
        xs = sampler.point(left.degree)
        ts = sampler.torus(alg.wt.rank)
        if left.value(xs, ts) != right.value(xs, ts):
            return False
    return True


def comul_value(alg: ShuffleAlgebra, node: Node, u: Point, v: Point, ts) -> Fraction:
    """``Delta_{d',d''}(f)`` evaluated with slot-1 values ``u`` and slot-2 values ``v``."""
    den = euler_arrows(alg, u, v, ts)
    if den == 0:
        raise ZeroDivisionError("evaluation point meets a coproduct pole")
    return euler_vertices(u, v) * node.value(concat(u, v), ts) / den


def bialgebra_at(alg: ShuffleAlgebra, a: ShuffleElement, b: ShuffleElement, e1, e2,
                 sampler: PointSampler, points: int = 2) -> bool:
    """Both sides of the compatibility square at random points of the two slots."""
    A, B = Leaf(a), Leaf(b)
    AB = Product(alg, A, B)
    da = a.degree
    done = 0
    attempts = 0
    while done < points:
        attempts += 1
        if attempts > 20 * points:
            raise ShuffleError("could not find an evaluation point off the poles")
        full = sampler.point(_add(e1, e2))
        u = tuple(vals[:k] for vals, k in zip(full, e1))
        v = tuple(vals[k:] for vals, k in zip(full, e1))
        ts = sampler.torus(alg.wt.rank)
        try:
            lhs = comul_value(alg, AB, u, v, ts)
            rhs = Fraction(0)
            for a1 in _dims_between(da, e1):
                a2 = _sub(da, a1)
                b1, b2 = _sub(e1, a1), _sub(e2, a2)
                if any(x < 0 for x in b2):
                    continue
                rhs += _split_value(alg, A, B, a1, a2, b1, b2, u, v, ts)
        except ZeroDivisionError:
            continue
        if lhs != rhs:
            return False
        done += 1
    return True


def _split_value(alg, A, B, a1, a2, b1, b2, u, v, ts) -> Fraction:
    sign = alg.swap_sign(a2, b1)
    total = Fraction(0)
    picks1 = [itertools.combinations(range(len(vals)), k) for vals, k in zip(u, a1)]
    picks2 = [itertools.combinations(range(len(vals)), k) for vals, k in zip(v, a2)]
    pairs2 = list(itertools.product(*picks2))
    for p1 in itertools.product(*picks1):
        U1 = tuple(tuple(u[i][k] for k in s) for i, s in enumerate(p1))
        V1 = tuple(tuple(x for k, x in enumerate(u[i]) if k not in s) for i, s in enumerate(p1))
        k1 = kernel(alg, U1, V1, ts)
        for p2 in pairs2:
            U2 = tuple(tuple(v[i][k] for k in s) for i, s in enumerate(p2))
            V2 = tuple(tuple(x for k, x in enumerate(v[i]) if k not in s) for i, s in enumerate(p2))
            op = euler_op(alg, U2, V1, ts)
            if op == 0:
                raise ZeroDivisionError
            swap = sign * euler_arrows(alg, U2, V1, ts) / op
            total += (comul_value(alg, A, U1, U2, ts) * comul_value(alg, B, V1, V2, ts)
                      * swap * k1 * kernel(alg, U2, V2, ts))
    return total
