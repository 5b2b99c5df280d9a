"""Quivers, dimension vectors, bilinear forms and root systems.

Vertices are dense indices ``0..n-1`` and arrows are identified by their
position in ``Quiver.arrows``; both survive a JSON round trip unchanged.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

DimVector = tuple[int, ...]


class QuiverError(ValueError):
    """Malformed quiver data or an operation applied to the wrong kind of quiver."""


@dataclass(frozen=True)
class Weighting:
    """Per-arrow weights in ``Z^rank``; ``weights[a]`` is the vector of arrow ``a``."""

    rank: int
    weights: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        for w in self.weights:
            if len(w) != self.rank:
                raise QuiverError(f"weight {w} does not have rank {self.rank}")

    @classmethod
    def trivial(cls, num_arrows: int, rank: int = 0) -> "Weighting":
        return cls(rank, tuple((0,) * rank for _ in range(num_arrows)))

    def __getitem__(self, a: int) -> tuple[int, ...]:
        return self.weights[a]

    def __len__(self) -> int:
        return len(self.weights)


@dataclass(frozen=True)
class Quiver:
    num_vertices: int
    arrows: tuple[tuple[int, int], ...]
    star_pairing: tuple[tuple[int, int], ...] | None = None
    loop_marks: tuple[int, ...] | None = None
    framing_vertices: tuple[int, ...] = ()
    weighting: Weighting | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        n = self.num_vertices
        if n < 0:
            raise QuiverError("negative vertex count")
        for s, t in self.arrows:
            if not (0 <= s < n and 0 <= t < n):
                raise QuiverError(f"arrow ({s},{t}) out of range for {n} vertices")
        if self.star_pairing is not None:
            seen: dict[int, int] = {}
            for a, b in self.star_pairing:
                if a == b or a in seen or b in seen:
                    raise QuiverError("star pairing is not a fixed-point-free involution")
                seen[a] = b
                seen[b] = a
            for a, b in seen.items():
                if not (0 <= a < len(self.arrows)):
                    raise QuiverError(f"star pairing refers to unknown arrow {a}")
                if self.arrows[b] != (self.arrows[a][1], self.arrows[a][0]):
                    raise QuiverError(f"arrow {b} is not the reverse of arrow {a}")
        if self.loop_marks is not None:
            if len(self.loop_marks) != n:
                raise QuiverError("loop_marks needs one loop per vertex")
            for i, a in enumerate(self.loop_marks):
                if not (0 <= a < len(self.arrows)) or self.arrows[a] != (i, i):
                    raise QuiverError(f"loop mark {a} is not a loop at vertex {i}")
        for v in self.framing_vertices:
            if not 0 <= v < n:
                raise QuiverError(f"framing vertex {v} out of range")
        if self.weighting is not None and len(self.weighting) != len(self.arrows):
            raise QuiverError("weighting length does not match arrow count")

    # -- basic accessors -------------------------------------------------

    @property
    def num_arrows(self) -> int:
        return len(self.arrows)

    def source(self, a: int) -> int:
        return self.arrows[a][0]

    def target(self, a: int) -> int:
        return self.arrows[a][1]

    @property
    def framing_vertex(self) -> int | None:
        return self.framing_vertices[0] if self.framing_vertices else None

    def star(self, a: int) -> int:
        if self.star_pairing is None:
            raise QuiverError("quiver has no star pairing")
        for x, y in self.star_pairing:
            if x == a:
                return y
            if y == a:
                return x
        raise QuiverError(f"arrow {a} is not paired")

    def original_arrows(self) -> list[int]:
        """Arrows ``a`` of the underlying quiver (the first member of each star pair)."""
        if self.star_pairing is None:
            marks = set(self.loop_marks or ())
            return [a for a in range(self.num_arrows) if a not in marks]
        return [a for a, _ in self.star_pairing]

    def has_loop_at(self, i: int) -> bool:
        return any(s == t == i for s, t in self.arrows)

    def is_symmetric(self) -> bool:
        counts: dict[tuple[int, int], int] = {}
        for s, t in self.arrows:
            counts[(s, t)] = counts.get((s, t), 0) + 1
        return all(counts.get((t, s), 0) == c for (s, t), c in counts.items())

    def opposite(self) -> "Quiver":
        wt = None
        if self.weighting is not None:
            wt = Weighting(self.weighting.rank,
                           tuple(tuple(-x for x in w) for w in self.weighting.weights))
        return Quiver(self.num_vertices, tuple((t, s) for s, t in self.arrows), weighting=wt)

    def restrict(self, vertices: Sequence[int]) -> "Quiver":
        """Full subquiver on ``vertices`` (relabelled densely in the given order)."""
        index = {v: k for k, v in enumerate(vertices)}
        arrows = tuple((index[s], index[t]) for s, t in self.arrows if s in index and t in index)
        return Quiver(len(vertices), arrows)

    def with_weighting(self, weighting: Weighting | None) -> "Quiver":
        return Quiver(self.num_vertices, self.arrows, self.star_pairing, self.loop_marks,
                      self.framing_vertices, weighting)

    def weight(self, a: int) -> tuple[int, ...]:
        if self.weighting is None:
            return ()
        return self.weighting[a]

    @property
    def rank(self) -> int:
        return 0 if self.weighting is None else self.weighting.rank

    def is_graded_symmetric(self) -> bool:
        """Whether ``(Q, wt)`` is isomorphic to ``(Q^op, -wt)`` fixing vertices."""
        def key(arrows, weights):
            return sorted((s, t, tuple(w)) for (s, t), w in zip(arrows, weights))

        weights = self.weighting.weights if self.weighting else [()] * self.num_arrows
        op = [tuple(-x for x in w) for w in weights]
        return key(self.arrows, weights) == key([(t, s) for s, t in self.arrows], op)

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        doc: dict = {"vertices": self.num_vertices, "arrows": [list(a) for a in self.arrows]}
        if self.star_pairing is not None:
            doc["star_pairing"] = [list(p) for p in self.star_pairing]
        if self.loop_marks is not None:
            doc["loop_marks"] = list(self.loop_marks)
        if len(self.framing_vertices) == 1:
            doc["framing_vertex"] = self.framing_vertices[0]
        elif self.framing_vertices:
            doc["framing_vertex"] = list(self.framing_vertices)
        if self.weighting is not None:
            doc["weights"] = {"rank": self.weighting.rank,
                              "per_arrow": [list(w) for w in self.weighting.weights]}
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "Quiver":
        if not isinstance(doc, dict) or "vertices" not in doc:
            raise QuiverError("quiver document needs a 'vertices' field")
        try:
            n = int(doc["vertices"])
            arrows = tuple((int(s), int(t)) for s, t in doc.get("arrows", []))
            star = doc.get("star_pairing")
            star = None if star is None else tuple((int(a), int(b)) for a, b in star)
            marks = doc.get("loop_marks")
            marks = None if marks is None else tuple(int(a) for a in marks)
            fv = doc.get("framing_vertex")
            if fv is None:
                framing: tuple[int, ...] = ()
            elif isinstance(fv, list):
                framing = tuple(int(v) for v in fv)
            else:
                framing = (int(fv),)
            wt = None
            if "weights" in doc and doc["weights"] is not None:
                w = doc["weights"]
                wt = Weighting(int(w["rank"]), tuple(tuple(int(x) for x in row) for row in w["per_arrow"]))
        except (TypeError, ValueError, KeyError) as exc:
            raise QuiverError(f"malformed quiver document: {exc}") from exc
        return cls(n, arrows, star, marks, framing, wt)

    @classmethod
    def load(cls, path) -> "Quiver":
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
        if not text.strip():
            raise QuiverError(f"{path}: empty quiver file")
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise QuiverError(f"{path}: {exc}") from exc
        return cls.from_json(doc)

    def graph_hash(self) -> str:
        """Hash of the underlying directed multigraph (vertices and arrows only)."""
        payload = json.dumps({"vertices": self.num_vertices,
                              "arrows": sorted(list(a) for a in self.arrows)})
        return hashlib.sha256(payload.encode()).hexdigest()[:16]


# -- standard quivers ---------------------------------------------------------

def loop_quiver(g: int) -> Quiver:
    """One vertex with ``g`` loops (``g=0`` is A_1, ``g=1`` the Jordan quiver)."""
    return Quiver(1, tuple((0, 0) for _ in range(g)))


def kronecker(m: int = 2) -> Quiver:
    return Quiver(2, tuple((0, 1) for _ in range(m)))


def linear_quiver(n: int) -> Quiver:
    """Equioriented A_n: ``0 -> 1 -> ... -> n-1``."""
    return Quiver(n, tuple((i, i + 1) for i in range(n - 1)))


NAMED_QUIVERS = {
    "A1": lambda: linear_quiver(1),
    "A2": lambda: linear_quiver(2),
    "A3": lambda: linear_quiver(3),
    "jordan": lambda: loop_quiver(1),
    "loop2": lambda: loop_quiver(2),
    "kronecker": lambda: kronecker(2),
    "kronecker3": lambda: kronecker(3),
}


def named_quiver(name: str) -> Quiver:
    try:
        return NAMED_QUIVERS[name]()
    except KeyError:
        raise QuiverError(f"unknown quiver name {name!r}; known: {', '.join(NAMED_QUIVERS)}") from None


# -- dimension vectors --------------------------------------------------------

def dimvec(entries: Iterable[int]) -> DimVector:
    d = tuple(int(x) for x in entries)
    if any(x < 0 for x in d):
        raise QuiverError(f"dimension vector {d} has negative entries")
    return d


def delta(n: int, i: int) -> DimVector:
    return tuple(1 if j == i else 0 for j in range(n))


def support(d: Sequence[int]) -> list[int]:
    return [i for i, x in enumerate(d) if x]


def dims_below(bound: Sequence[int], include_zero: bool = False) -> Iterator[DimVector]:
    """All ``d <= bound`` componentwise, in lexicographic order."""
    for d in itertools.product(*(range(b + 1) for b in bound)):
        if include_zero or any(d):
            yield d


def _check_len(Q: Quiver, *vs: Sequence[int]) -> None:
    for v in vs:
        if len(v) != Q.num_vertices:
            raise QuiverError(f"vector {tuple(v)} has length {len(v)}, quiver has {Q.num_vertices} vertices")


# -- bilinear forms -----------------------------------------------------------

def euler_form(Q: Quiver, d: Sequence[int], e: Sequence[int]) -> int:
    _check_len(Q, d, e)
    return sum(x * y for x, y in zip(d, e)) - sum(d[s] * e[t] for s, t in Q.arrows)


def sym_form(Q: Quiver, d: Sequence[int], e: Sequence[int]) -> int:
    return euler_form(Q, d, e) + euler_form(Q, e, d)


def tau_sign(Q: Quiver, d: Sequence[int], e: Sequence[int]) -> int:
    chi = lambda x, y: euler_form(Q, x, y)  # noqa: E731
    return -1 if (chi(d, d) * chi(e, e) + chi(d, e)) % 2 else 1


# -- derived quivers ----------------------------------------------------------

def double(Q: Quiver) -> Quiver:
    m = Q.num_arrows
    arrows = Q.arrows + tuple((t, s) for s, t in Q.arrows)
    return Quiver(Q.num_vertices, arrows, tuple((a, m + a) for a in range(m)),
                  framing_vertices=Q.framing_vertices)


def triple(Q: Quiver) -> Quiver:
    m, n = Q.num_arrows, Q.num_vertices
    arrows = Q.arrows + tuple((t, s) for s, t in Q.arrows) + tuple((i, i) for i in range(n))
    return Quiver(n, arrows, tuple((a, m + a) for a in range(m)),
                  tuple(2 * m + i for i in range(n)), Q.framing_vertices)


def frame(Q: Quiver, f: Sequence[int]) -> Quiver:
    """Add a vertex ``inf`` (index n) with ``f_i`` arrows ``inf -> i``."""
    _check_len(Q, f)
    n = Q.num_vertices
    extra = tuple((n, i) for i in range(n) for _ in range(f[i]))
    return Quiver(n + 1, Q.arrows + extra, framing_vertices=(n,))


def frame2(Q: Quiver, f1: Sequence[int], f2: Sequence[int]) -> Quiver:
    """Two framing vertices ``inf'`` (index n) and ``inf''`` (index n+1)."""
    _check_len(Q, f1, f2)
    n = Q.num_vertices
    extra = tuple((n, i) for i in range(n) for _ in range(f1[i]))
    extra += tuple((n + 1, i) for i in range(n) for _ in range(f2[i]))
    return Quiver(n + 2, Q.arrows + extra, framing_vertices=(n, n + 1))


# -- roots --------------------------------------------------------------------

def vector_partitions(d: Sequence[int]) -> Iterator[list[DimVector]]:
    """Unordered decompositions of ``d`` into nonzero parts, parts non-increasing."""
    d = tuple(d)

    def rec(rest: DimVector, cap: DimVector | None) -> Iterator[list[DimVector]]:
        if not any(rest):
            yield []
            return
        for part in dims_below(rest):
            if cap is not None and part > cap:
                continue
            remainder = tuple(r - p for r, p in zip(rest, part))
            for tail in rec(remainder, part):
                yield [part] + tail

    yield from rec(d, None)


def is_primitive_root(Q: Quiver, d: Sequence[int]) -> bool:
    d = tuple(d)
    lhs = 2 - sym_form(Q, d, d)
    for parts in vector_partitions(d):
        if len(parts) < 2:
            continue
        if not lhs > sum(2 - sym_form(Q, p, p) for p in parts):
            return False
    return True


def primitive_roots(Q: Quiver, bound: Sequence[int]) -> set[DimVector]:
    _check_len(Q, bound)
    return {d for d in dims_below(bound) if is_primitive_root(Q, d)}


@dataclass(frozen=True)
class RootSet:
    roots: dict[DimVector, str]
    primitive: frozenset[DimVector]

    def __contains__(self, d) -> bool:
        return tuple(d) in self.roots

    def __len__(self) -> int:
        return len(self.roots)

    def of_class(self, cls: str) -> list[DimVector]:
        return sorted(d for d, c in self.roots.items() if c == cls)


def root_class(Q: Quiver, d: Sequence[int]) -> str:
    v = sym_form(Q, d, d)
    if v == 2:
        return "real"
    if v == 0:
        return "isotropic"
    if v < 0:
        return "hyperbolic"
    raise QuiverError(f"(d,d)_Q = {v} for d = {tuple(d)} cannot occur in the positive roots")


def positive_roots(Q: Quiver, bound: Sequence[int]) -> RootSet:
    prim = primitive_roots(Q, bound)
    roots = set(prim)
    for d in prim:
        if sym_form(Q, d, d) == 0:
            l = 2
            while all(l * x <= b for x, b in zip(d, bound)):
                roots.add(tuple(l * x for x in d))
                l += 1
    return RootSet({d: root_class(Q, d) for d in sorted(roots)}, frozenset(prim))


def real_simple_roots(Q: Quiver) -> list[DimVector]:
    n = Q.num_vertices
    return [delta(n, i) for i in range(n) if not Q.has_loop_at(i)]


# -- stability ----------------------------------------------------------------

@dataclass(frozen=True)
class StabilityCondition:
    zeta: tuple[Fraction, ...]
    theta: Fraction

    @classmethod
    def of(cls, zeta: Iterable, theta) -> "StabilityCondition":
        return cls(tuple(Fraction(z) for z in zeta), Fraction(theta))

    def slope(self, d: Sequence[int]) -> Fraction:
        return sum((Fraction(x) * z for x, z in zip(d, self.zeta)), Fraction(0)) / sum(d)


def slope_lattice(Q: Quiver, stab: StabilityCondition, bound: Sequence[int]) -> set[tuple[int, ...]]:
    """Differences of dimension vectors of slope theta (plus zero) within ``bound``."""
    _check_len(Q, bound, stab.zeta)
    plus = [(0,) * Q.num_vertices] + [d for d in dims_below(bound) if stab.slope(d) == stab.theta]
    return {tuple(a - b for a, b in zip(d, e)) for d in plus for e in plus}


def is_generic(Q: Quiver, stab: StabilityCondition, bound: Sequence[int]) -> bool:
    lam = sorted(slope_lattice(Q, stab, bound))
    return all(euler_form(Q, x, y) == euler_form(Q, y, x) for x in lam for y in lam)


# -- weightings ---------------------------------------------------------------

def _require_tripled(Qt: Quiver) -> None:
    if Qt.star_pairing is None or Qt.loop_marks is None:
        raise QuiverError("operation needs a tripled quiver (star pairing and loop marks)")


def weighting_problems(Qt: Quiver, wt: Weighting) -> list[str]:
    """Reasons the weighting fails the tripled-quiver assumptions (empty if valid)."""
    _require_tripled(Qt)
    if len(wt) != Qt.num_arrows:
        return [f"weighting has {len(wt)} entries for {Qt.num_arrows} arrows"]
    add = lambda *vs: tuple(sum(x) for x in zip(*vs))  # noqa: E731
    zero = (0,) * wt.rank
    problems = []
    omega = {i: wt[a] for i, a in enumerate(Qt.loop_marks)}
    hbars = set()
    for a, a_star in Qt.star_pairing:
        h = add(wt[a], wt[a_star])
        hbars.add(h)
        for i in {Qt.source(a), Qt.target(a)}:
            if add(h, omega[i]) != zero:
                problems.append(f"potential term through arrow {a} and loop at {i} has weight "
                                f"{add(h, omega[i])}, not zero")
    if len(hbars) > 1:
        problems.append(f"inconsistent hbar across arrows: {sorted(hbars)}")
    targets = []
    for a, a_star in Qt.star_pairing:
        targets.append((wt[a], (1, 0)))
        targets.append((wt[a_star], (0, 1)))
    for a in Qt.loop_marks:
        targets.append((wt[a], (-1, -1)))
    rows = [w for w, _ in targets]
    for k in range(2):
        if solve_integer_system(rows, [tgt[k] for _, tgt in targets], wt.rank) is None:
            problems.append(f"no integral lattice map realizes coordinate {k} of the standard weighting")
    return problems


def validate_weighting(Qt: Quiver, wt: Weighting) -> bool:
    return not weighting_problems(Qt, wt)


def hbar(Qt: Quiver, wt: Weighting) -> tuple[int, ...]:
    """hbar as a vector of t-coefficients: ``wt(a) + wt(a*) = -wt(omega_i)``."""
    _require_tripled(Qt)
    values = {tuple(x + y for x, y in zip(wt[a], wt[b])) for a, b in Qt.star_pairing}
    values |= {tuple(-x for x in wt[a]) for a in Qt.loop_marks}
    if len(values) != 1:
        raise QuiverError(f"inconsistent hbar across arrows: {sorted(values)}")
    return values.pop()


def standard_weighting(Qt: Quiver) -> Weighting:
    """The rank-2 weighting a -> (1,0), a* -> (0,1), omega -> (-1,-1)."""
    _require_tripled(Qt)
    w: list[tuple[int, ...]] = [(0, 0)] * Qt.num_arrows
    for a, b in Qt.star_pairing:
        w[a], w[b] = (1, 0), (0, 1)
    for a in Qt.loop_marks:
        w[a] = (-1, -1)
    return Weighting(2, tuple(w))


def solve_integer_system(rows: Sequence[Sequence[int]], rhs: Sequence[int], nvars: int) -> list[int] | None:
    """Integer solution ``x`` of ``rows . x = rhs`` or ``None`` if there is none.

    Column-style Hermite reduction: we build a unimodular ``U`` with ``A U`` lower
    echelon, solve by forward substitution and map back.
    """
    A = [list(r) for r in rows]
    m = len(A)
    U = [[int(i == j) for j in range(nvars)] for i in range(nvars)]

    def colop(j: int, k: int, a: int, b: int, c: int, e: int) -> None:
        # (col_j, col_k) <- (a col_j + b col_k, c col_j + e col_k)
        for M in (A, U):
            for row in M:
                x, y = row[j], row[k]
                row[j], row[k] = a * x + b * y, c * x + e * y

    pivots: list[tuple[int, int]] = []
    col = 0
    for r in range(m):
        if col >= nvars:
            break
        for k in range(col + 1, nvars):
            x, y = A[r][col], A[r][k]
            if y == 0:
                continue
            g, s, t = _xgcd(x, y)
            colop(col, k, s, t, -y // g, x // g)
        if A[r][col] != 0:
            pivots.append((r, col))
            col += 1
    y = [0] * nvars
    for r in range(m):
        acc = sum(A[r][j] * y[j] for j in range(nvars))
        piv = next((c for rr, c in pivots if rr == r), None)
        residual = rhs[r] - acc
        if piv is None:
            if residual != 0:
                return None
            continue
        if residual % A[r][piv]:
            return None
        y[piv] = residual // A[r][piv]
    x = [sum(U[i][j] * y[j] for j in range(nvars)) for i in range(nvars)]
    if any(sum(a * b for a, b in zip(row, x)) != v for row, v in zip(rows, rhs)):
        return None
    return x


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """``g, s, t`` with ``s a + t b = g = gcd(a, b) > 0``."""
    old_r, r, old_s, s, old_t, t = a, b, 1, 0, 0, 1
    while r:
        quo = old_r // r
        old_r, r = r, old_r - quo * r
        old_s, s = s, old_s - quo * s
        old_t, t = t, old_t - quo * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t

