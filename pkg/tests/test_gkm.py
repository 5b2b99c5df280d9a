import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qha import gkm
from qha.gkm import Generator, GkmDatum, GkmError, QHalfPolynomial, UnsupportedCaseError
from qha.quiver import Quiver, dims_below, kronecker, linear_quiver, loop_quiver
from qha.repcount import KacPolynomial, ResourceLimitError
from qha.suites import lyndon_count, pbw_monomials

A2 = linear_quiver(2)
JORDAN = loop_quiver(1)
SL3 = GkmDatum.kac_moody(A2)


def test_serre_exponent_examples():
    assert gkm.serre_exponent(A2, (1, 0), (0, 1)) == 2
    assert gkm.serre_exponent(JORDAN, (1,), (2,)) == 1
    assert gkm.serre_exponent(kronecker(3), (1, 0), (0, 1)) == 4
    assert gkm.serre_exponent(A2, (1, 0), (1, 0)) is None
    # hyperbolic pair with a negative pairing and no real simple root: no relation
    assert gkm.serre_exponent(loop_quiver(2), (1,), (1,)) is None


def test_associative_dims_examples():
    dims = gkm.associative_dims(SL3, (2, 2))
    assert dims.at((1, 1)) == 2
    assert dims.at((2, 1)) == 2
    assert dims.at((0, 0)) == 1
    single = gkm.associative_dims(GkmDatum(JORDAN, (Generator((1,)),)), (5,))
    assert [single.at((n,)) for n in range(6)] == [1] * 6
    empty = gkm.associative_dims(GkmDatum(A2, ()), (2, 2))
    assert dict(empty) == {((0, 0), 0): 1}


def test_lie_dims_sl3():
    lie = gkm.lie_dims(SL3, (2, 2))
    expected = {(1, 0): 1, (0, 1): 1, (1, 1): 1, (2, 1): 0, (1, 2): 0, (2, 2): 0, (2, 0): 0, (0, 2): 0}
    assert {d: lie.at(d) for d in expected} == expected


def test_lie_dims_kronecker3_matches_lyndon():
    lie = gkm.lie_dims(GkmDatum.kac_moody(kronecker(3)), (2, 1))
    assert lie.at((2, 1)) == lyndon_count((2, 1)) == 1


def test_abelian_isotropic_datum():
    gens = (Generator((1,)), Generator((2,), 2, 2), Generator((3,), 0, 1))
    lie = gkm.lie_dims(GkmDatum(JORDAN, gens), (3,))
    assert dict(lie) == {((1,), 0): 1, ((2,), 2): 2, ((3,), 0): 1}


def test_km_root_mult_examples():
    assert gkm.km_root_mult(kronecker(2), (1, 1)) == 1
    assert gkm.km_root_mult(A2, (2, 1)) == 0
    assert gkm.km_root_mult(kronecker(3), (2, 1)) == 1
    with pytest.raises(GkmError):
        gkm.km_root_mult(JORDAN, (1,))
    with pytest.raises(GkmError):
        gkm.km_root_mult(A2, (2, 1), cutoff=(1, 1))


def test_bps_character_examples():
    assert str(gkm.bps_character(JORDAN, (1,), KacPolynomial([0, 1], (1,)))) == "q^(-1)"
    assert gkm.bps_character(A2, (1, 1), KacPolynomial([1], (1, 1))) == 1
    chi = gkm.bps_character(kronecker(2), (1, 1), KacPolynomial([1, 1], (1, 1)))
    assert str(chi) == "1 + q^(-1)"
    with pytest.raises(GkmError):
        gkm.bps_character(A2, (1, 0), KacPolynomial([1], (1, 1)))


def test_qhalf_printing():
    assert str(QHalfPolynomial({1: 1})) == "q^(1/2)"
    assert str(QHalfPolynomial({4: 2, 0: -1})) == "2*q^2 - 1"
    assert str(QHalfPolynomial()) == "0"


def test_pbw_character_examples():
    empty = gkm.pbw_character(JORDAN, {}, (3,))
    assert [empty[(n,)] for n in range(4)] == [1, 0, 0, 0]
    one = KacPolynomial([1])
    single = gkm.pbw_character(JORDAN, {(1,): one}, (3,))
    assert [single[(n,)].at_one() for n in range(4)] == [1, 1, 1, 1]
    # one even generator in each of the degrees d, 2d, 3d gives partition numbers
    family = gkm.pbw_character(JORDAN, {(1,): one, (2,): one, (3,): one}, (3,))
    assert [family[(n,)].at_one() for n in range(4)] == [1, 1, 2, 3]
    a2 = gkm.pbw_character(A2, {(1, 0): one, (0, 1): one, (1, 1): one}, (2, 2))
    assert a2[(1, 1)].at_one() == 2 == gkm.associative_dims(SL3, (2, 2)).at((1, 1))


def test_pbw_character_u_truncation():
    chars = gkm.pbw_character(JORDAN, {(1,): KacPolynomial([1])}, (1,), u_truncation=2)
    assert str(chars[(1,)]) == "q + 1"
    with pytest.raises(GkmError):
        gkm.pbw_character(JORDAN, {}, (1,), u_truncation=0)


def test_symmetric_character_rejects_odd_degree():
    with pytest.raises(UnsupportedCaseError):
        gkm.symmetric_character([((1,), 1, 1)], (2,))


def test_datum_validation():
    with pytest.raises(GkmError):
        GkmDatum(A2, (Generator((1, 0), 0, 2),))
    with pytest.raises(GkmError):
        GkmDatum(A2, (Generator((1, 0), 2, 1),))
    with pytest.raises(GkmError):
        GkmDatum(A2, (Generator((2, 0)),))  # not a root
    with pytest.raises(GkmError):
        GkmDatum(JORDAN, (Generator((1,), 1),))  # odd cohomological degree
    with pytest.raises(GkmError):
        GkmDatum.kac_moody(JORDAN)


def test_datum_json_roundtrip(tmp_path):
    datum = GkmDatum(JORDAN, (Generator((1,)), Generator((2,), 2, 3)))
    path = tmp_path / "datum.json"
    path.write_text(json.dumps(datum.to_json()))
    assert GkmDatum.load(path) == datum
    path.write_text("{")
    with pytest.raises(GkmError):
        GkmDatum.load(path)


def test_graded_dims_serialization():
    dims = gkm.lie_dims(SL3, (1, 1))
    assert dims.to_csv().splitlines()[0] == "degree,coh_degree,dim"
    assert {"degree": [1, 1], "coh_degree": 0, "dim": 1} in dims.to_json()


def test_tensor_cap():
    with pytest.raises(ResourceLimitError):
        gkm.associative_dims(GkmDatum.kac_moody(kronecker(3)), (3, 3), tensor_cap=10)


def test_serre_idempotence():
    for datum, cutoff in [(SL3, (2, 2)), (GkmDatum.kac_moody(kronecker(2)), (2, 2)),
                          (GkmDatum.kac_moody(linear_quiver(3)), (1, 2, 1))]:
        once = gkm.GkmAlgebra(datum, cutoff)
        once.build()
        twice = gkm.GkmAlgebra(datum, cutoff)
        twice.build(relation_copies=2)
        assert once.associative_dims() == twice.associative_dims()
        assert once.lie_dims() == twice.lie_dims()


@pytest.mark.parametrize("Q,cutoff", [(A2, (2, 2)), (linear_quiver(1), (4,)), (kronecker(2), (2, 2)),
                                      (linear_quiver(3), (1, 2, 1))])
def test_pbw_consistency(Q, cutoff):
    datum = GkmDatum.kac_moody(Q)
    lie = gkm.lie_dims(datum, cutoff)
    assoc = gkm.associative_dims(datum, cutoff)
    built = gkm.pbw_from_lie(lie, cutoff)
    for d in dims_below(cutoff, include_zero=True):
        assert built.at(d) == assoc.at(d)
        assert lie.at(d) <= assoc.at(d)


def test_pbw_monomial_oracle():
    roots = {(1, 0): 1, (0, 1): 1, (1, 1): 1}
    assert pbw_monomials(roots, (1, 1)) == 2
    assert pbw_monomials(roots, (2, 1)) == 2
    assert pbw_monomials(roots, (2, 2)) == 3


def test_lyndon_oracle():
    assert lyndon_count((1, 1)) == 1
    assert lyndon_count((2, 1)) == 1
    assert lyndon_count((2, 2)) == 1
    assert lyndon_count((3, 1)) == 1
    assert lyndon_count((2, 2, 1)) == 6


# -- properties ---------------------------------------------------------------------------------

loop_free = st.integers(2, 3).flatmap(
    lambda n: st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda a: a[0] != a[1]),
                       min_size=1, max_size=3).map(lambda arrows: Quiver(n, tuple(arrows))))


@settings(max_examples=15, deadline=None)
@given(loop_free, st.data())
def test_root_mult_invariant_under_reversal_and_relabeling(Q, data):
    d = tuple(data.draw(st.integers(0, 2)) for _ in range(Q.num_vertices))
    if not any(d):
        return
    perm = data.draw(st.permutations(range(Q.num_vertices)))
    relabeled = Quiver(Q.num_vertices, tuple((perm[s], perm[t]) for s, t in Q.arrows))
    moved = [0] * Q.num_vertices
    for i, x in enumerate(d):
        moved[perm[i]] = x
    m = gkm.km_root_mult(Q, d)
    assert gkm.km_root_mult(Q.opposite(), d) == m
    assert gkm.km_root_mult(relabeled, tuple(moved)) == m


@settings(max_examples=15, deadline=None)
@given(loop_free, st.data())
def test_lie_bounded_by_assoc(Q, data):
    cutoff = tuple(data.draw(st.integers(0, 2)) for _ in range(Q.num_vertices))
    datum = GkmDatum.kac_moody(Q)
    lie = gkm.lie_dims(datum, cutoff)
    assoc = gkm.associative_dims(datum, cutoff)
    for d in dims_below(cutoff):
        assert lie.at(d) <= assoc.at(d)
    for g in datum.generators:
        if all(x <= c for x, c in zip(g.degree, cutoff)):
            assert lie.at(g.degree, g.coh_degree) >= g.mult
