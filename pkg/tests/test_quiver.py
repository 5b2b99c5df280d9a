import json
from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qha.quiver import (Quiver, QuiverError, StabilityCondition, Weighting, double, euler_form, frame,
                        frame2, hbar, is_generic, kronecker, linear_quiver, loop_quiver, positive_roots,
                        primitive_roots, root_class, solve_integer_system, standard_weighting, sym_form,
                        tau_sign, triple, validate_weighting, vector_partitions, weighting_problems)

A2 = linear_quiver(2)
JORDAN = loop_quiver(1)


def test_euler_form_examples():
    assert euler_form(A2, (1, 1), (1, 1)) == 1
    for n in range(5):
        assert euler_form(JORDAN, (n,), (n,)) == 0
    assert euler_form(kronecker(3), (2, 1), (1, 1)) == -3


def test_sym_form_examples():
    assert sym_form(A2, (1, 0), (0, 1)) == -1
    assert sym_form(JORDAN, (1,), (1,)) == 0
    assert sym_form(loop_quiver(2), (1,), (1,)) == -2


def test_length_mismatch():
    with pytest.raises(QuiverError):
        euler_form(A2, (1,), (1, 1))


def test_triple_and_frame_shapes():
    t1 = triple(linear_quiver(1))
    assert t1.num_vertices == 1 and t1.arrows == ((0, 0),) and t1.loop_marks == (0,)
    t2 = triple(A2)
    assert t2.num_arrows == 4 and t2.star_pairing == ((0, 1),) and t2.loop_marks == (2, 3)
    assert euler_form(t2, (1, 0), (0, 1)) == -1
    f = frame(linear_quiver(1), (2,))
    assert f.num_vertices == 2 and f.arrows == ((1, 0), (1, 0)) and f.framing_vertex == 1
    f2 = frame2(linear_quiver(1), (1,), (2,))
    assert f2.num_vertices == 3 and f2.framing_vertices == (1, 2) and f2.num_arrows == 3


def test_double_pairs_reverse_arrows():
    Q = double(kronecker(2))
    for a, b in Q.star_pairing:
        assert Q.arrows[b] == (Q.arrows[a][1], Q.arrows[a][0])
    assert Q.is_symmetric()


def test_bad_star_pairing_rejected():
    with pytest.raises(QuiverError):
        Quiver(2, ((0, 1), (0, 1)), star_pairing=((0, 1),))


# independent oracle for the primitive-root inequality: a best-sum DP over splits
def _primitive_oracle(Q, d):
    p = lambda v: 2 - sym_form(Q, v, v)  # noqa: E731

    @lru_cache(maxsize=None)
    def best(v):
        # maximal sum of p over decompositions of v into one or more nonzero parts
        out = p(v)
        for e in _proper(v):
            out = max(out, p(e) + best(tuple(a - b for a, b in zip(v, e))))
        return out

    splits = [p(e) + best(tuple(a - b for a, b in zip(d, e))) for e in _proper(d)]
    return all(p(d) > s for s in splits)


def _proper(v):
    import itertools
    for e in itertools.product(*(range(x + 1) for x in v)):
        if any(e) and tuple(e) != tuple(v):
            yield tuple(e)


def test_primitive_roots_examples():
    assert primitive_roots(JORDAN, (3,)) == {(1,)}
    assert primitive_roots(A2, (2, 2)) == {(1, 0), (0, 1)}
    assert primitive_roots(loop_quiver(2), (3,)) == {(1,), (2,), (3,)}


@pytest.mark.parametrize("Q,bound", [(A2, (2, 2)), (kronecker(2), (3, 3)), (kronecker(3), (2, 2)),
                                     (loop_quiver(2), (4,)), (linear_quiver(3), (2, 2, 2)),
                                     (frame(JORDAN, (1,)), (3, 1))])
def test_primitive_roots_match_oracle(Q, bound):
    import itertools
    expected = {d for d in itertools.product(*(range(b + 1) for b in bound)) if any(d) and _primitive_oracle(Q, d)}
    assert primitive_roots(Q, bound) == expected


def test_positive_roots_examples():
    r = positive_roots(JORDAN, (4,))
    assert r.roots == {(k,): "isotropic" for k in range(1, 5)}
    assert r.primitive == frozenset({(1,)})
    r = positive_roots(A2, (2, 2))
    assert r.roots == {(1, 0): "real", (0, 1): "real"}
    Qf = frame(linear_quiver(1), (1,))
    r = positive_roots(Qf, (2, 1))
    assert sym_form(Qf, (1, 1), (1, 1)) == 2
    # (1,1) has the form value of a real root but splits as (1,0)+(0,1) with equal sums,
    # so the strict inequality keeps it out
    assert r.roots == {(1, 0): "real", (0, 1): "real"}


def test_root_class_rejects_large_form():
    Q = Quiver(1, ())
    assert root_class(Q, (1,)) == "real"
    with pytest.raises(QuiverError):
        root_class(Q, (2,))  # (d,d) = 8


def test_tau_sign_examples():
    t2 = triple(A2)
    assert tau_sign(t2, (1, 0), (0, 1)) == -1
    assert tau_sign(t2, (1, 1), (0, 0)) == 1
    tj = triple(JORDAN)
    assert euler_form(tj, (1,), (1,)) == -2
    assert tau_sign(tj, (1,), (1,)) == 1


def test_is_generic_examples():
    assert is_generic(double(A2), StabilityCondition.of((3, -1), 1), (2, 2))
    assert not is_generic(A2, StabilityCondition.of((0, 0), 0), (2, 2))
    assert is_generic(A2, StabilityCondition.of((1, 0), 1), (2, 2))


def test_weighting_examples():
    t1 = triple(linear_quiver(1))
    wt = Weighting(2, ((-1, -1),))
    assert validate_weighting(t1, wt)
    assert hbar(t1, wt) == (1, 1)
    t2 = triple(A2)
    wt = Weighting(2, ((1, 0), (0, 1), (-1, -1), (-1, -1)))
    assert validate_weighting(t2, wt) and hbar(t2, wt) == (1, 1)
    assert wt == standard_weighting(t2)
    bad = Weighting(2, ((1, 0), (0, 1), (-1, 0), (-1, -1)))
    assert not validate_weighting(t2, bad)
    assert any("potential term" in p for p in weighting_problems(t2, bad))


def test_weighting_needs_tripled_quiver():
    with pytest.raises(QuiverError):
        validate_weighting(A2, Weighting.trivial(1, 2))


def test_weighting_without_lattice_map():
    # hbar = 2*t1 cannot be sent to (1,0)+(0,1) by an integral map that also fixes wt(a) -> (1,0)
    t1 = triple(JORDAN)
    wt = Weighting(1, ((1,), (1,), (-2,)))
    assert not validate_weighting(t1, wt)


def test_solve_integer_system():
    assert solve_integer_system([[2, 0], [0, 3]], [4, 9], 2) == [2, 3]
    assert solve_integer_system([[2]], [1], 1) is None
    x = solve_integer_system([[1, 1], [1, -1]], [4, 0], 2)
    assert x == [2, 2]


def test_json_roundtrip(tmp_path):
    Qt = triple(A2).with_weighting(standard_weighting(triple(A2)))
    path = tmp_path / "q.json"
    path.write_text(json.dumps(Qt.to_json()))
    back = Quiver.load(path)
    assert back == Qt and back.weighting == Qt.weighting
    assert back.graph_hash() == Qt.graph_hash()


def test_vector_partitions_counts():
    # partitions of (2): {2}, {1,1}; of (1,1): {(1,1)}, {(1,0),(0,1)}
    assert len(list(vector_partitions((2,)))) == 2
    assert len(list(vector_partitions((1, 1)))) == 2
    assert len(list(vector_partitions((2, 1)))) == 4


# -- properties -------------------------------------------------------------------------------

quivers = st.integers(1, 3).flatmap(
    lambda n: st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=5).map(
        lambda arrows: Quiver(n, tuple(arrows))))


def _vec(n):
    return st.lists(st.integers(0, 4), min_size=n, max_size=n).map(tuple)


@st.composite
def quiver_and_vectors(draw, k=3):
    Q = draw(quivers)
    return Q, [draw(_vec(Q.num_vertices)) for _ in range(k)]


@given(quiver_and_vectors())
def test_euler_form_bilinear(data):
    Q, (d, d2, e) = data
    s = tuple(a + b for a, b in zip(d, d2))
    assert euler_form(Q, s, e) == euler_form(Q, d, e) + euler_form(Q, d2, e)
    assert euler_form(Q, e, s) == euler_form(Q, e, d) + euler_form(Q, e, d2)


@given(quiver_and_vectors(2))
def test_sym_form_and_tau_symmetric(data):
    Q, (d, e) = data
    assert sym_form(Q, d, e) == sym_form(Q, e, d)
    if Q.is_symmetric():
        assert tau_sign(Q, d, e) == tau_sign(Q, e, d)


@given(quiver_and_vectors(2))
def test_tau_sign_parity_layers(data):
    # Koszul sign of the parities times the tau sign is (-1)^chi(d,e)
    Q, (d, e) = data
    koszul = -1 if (euler_form(Q, d, d) * euler_form(Q, e, e)) % 2 else 1
    assert koszul * tau_sign(Q, d, e) == (-1 if euler_form(Q, d, e) % 2 else 1)


symmetric_quivers = st.integers(1, 3).flatmap(
    lambda n: st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=3).map(
        lambda arrows: Quiver(n, tuple(arrows) + tuple((t, s) for s, t in arrows if s != t)
                              + tuple((s, t) for s, t in arrows if s == t))))


@settings(max_examples=40)
@given(symmetric_quivers, st.lists(st.integers(-3, 3), min_size=3, max_size=3), st.integers(-3, 3))
def test_symmetric_quivers_always_generic(Q, zeta, theta):
    stab = StabilityCondition.of(zeta[: Q.num_vertices], theta)
    assert is_generic(Q, stab, (2,) * Q.num_vertices)


@settings(max_examples=30, deadline=None)
@given(quivers)
def test_positive_root_classes_match_form(Q):
    roots = positive_roots(Q, (2,) * Q.num_vertices)
    for d, cls in roots.roots.items():
        v = sym_form(Q, d, d)
        assert cls == {2: "real", 0: "isotropic"}.get(v, "hyperbolic")
        assert v == 2 or v <= 0
        if cls == "isotropic":
            assert any(all(x == k * y for x, y in zip(d, p)) for p in roots.primitive for k in range(1, 3)
                       if sym_form(Q, p, p) == 0)
    for d in roots.primitive:
        assert _primitive_oracle(Q, d)


@settings(max_examples=30)
@given(st.integers(1, 3), st.data())
def test_validated_weighting_has_one_hbar(n, data):
    Q = linear_quiver(n)
    Qt = triple(Q)
    w = [None] * Qt.num_arrows
    for a, b in Qt.star_pairing:
        j = data.draw(st.integers(-3, 3))
        w[a], w[b] = (1, 0, j), (0, 1, -j)
    for a in Qt.loop_marks:
        w[a] = (-1, -1, 0)
    wt = Weighting(3, tuple(w))
    if validate_weighting(Qt, wt):
        sums = {tuple(x + y for x, y in zip(wt[a], wt[b])) for a, b in Qt.star_pairing}
        assert len(sums) <= 1
