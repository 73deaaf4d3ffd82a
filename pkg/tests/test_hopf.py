import itertools
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import GF5, GF7, ZOO_CASES, zoo
from hopftrace.hopf import (AlgebraData, CoalgebraData, HopfAlgebraData, StructureError, check_antipode_antihomomorphism,
                            check_hopf, grouplike_elements, op_cop)
from hopftrace.linalg import QQ, GF, LinearMap, kronecker
from hopftrace.zoo import function_algebra, group_algebra, sweedler_h4, taft


@pytest.mark.parametrize("label", sorted(ZOO_CASES))
def test_zoo_axioms_hold_exactly(label):
    h = zoo(label)
    rep = check_hopf(h)
    assert rep.ok, rep.failures
    assert check_antipode_antihomomorphism(h).ok


@pytest.mark.parametrize("label", sorted(ZOO_CASES))
def test_op_cop_is_hopf(label):
    h = zoo(label)
    assert check_hopf(op_cop(h)).ok
    assert op_cop(op_cop(h)) == h


def test_function_algebra_is_dual_of_group_algebra():
    # independent oracle: k^G has mul = Delta_{kG}^T and Delta = mu_{kG}^T
    for n in (2, 3, 4):
        kg, fun = group_algebra(n), function_algebra(n)
        assert fun.mul == kg.comul.transpose()
        assert fun.comul == kg.mul.transpose()
        assert fun.unit == kg.counit.transpose() and fun.counit == kg.unit.transpose()
        assert fun.S == kg.S.transpose()


def test_dimensions_and_basis_orders():
    assert sweedler_h4().basis == ("1", "g", "x", "gx")
    t = taft(3, 2, GF7)
    assert t.dim == 9 and t.basis[:4] == ("1", "g", "g^2", "x")


def _basis_vec(h, label):
    return [1 if b == label else 0 for b in h.basis]


def test_sweedler_square_of_antipode():
    h = sweedler_h4()
    s2 = h.S @ h.S
    assert s2.apply(_basis_vec(h, "x")) == [0, 0, -1, 0]
    assert s2.apply(_basis_vec(h, "g")) == _basis_vec(h, "g")
    assert s2 != h.id and s2 @ s2 == h.id


def test_taft_square_of_antipode_scales_x_by_q():
    h = taft(3, 2, GF7)
    got = (h.S @ h.S).apply(_basis_vec(h, "x"))
    assert got == [2 * c % 7 for c in _basis_vec(h, "x")]


def test_group_algebra_antipode_is_inversion():
    h = group_algebra(4)
    for i in range(4):
        assert h.S.apply(_basis_vec(h, f"g^{i}")) == _basis_vec(h, f"g^{(-i) % 4}")


@pytest.mark.parametrize("n,field,expected", [
    (2, QQ, 2), (3, QQ, 1), (4, QQ, 2), (4, GF5, 4), (3, GF7, 3), (2, GF5, 2),
])
def test_grouplikes_of_function_algebra_are_characters(n, field, expected):
    # characters Z/n -> k^*: gcd(n, |mu(k)|), with mu(Q) = {+-1}
    oracle = gcd(n, 2) if field is QQ else gcd(n, field.p - 1)
    assert oracle == expected
    assert len(grouplike_elements(function_algebra(n, field))) == expected


def test_grouplikes_by_brute_force_over_gf5():
    h = sweedler_h4(GF5)
    brute = []
    for v in itertools.product(range(5), repeat=4):
        g = h.element(v)
        if h.comul @ g == kronecker(g, g) and h.counit @ g == LinearMap.from_dense(GF5, [[1]]):
            brute.append(v)
    assert sorted(brute) == sorted(grouplike_elements(h))
    assert grouplike_elements(h)[0] == (1, 0, 0, 0)


def test_taft_grouplikes():
    assert len(grouplike_elements(taft(3, 2, GF7))) == 3


def _corrupt(h, entry, value):
    data = {(r, c): v for r, c, v in h.S.nonzero()}
    data[entry] = value
    return HopfAlgebraData(h.algebra, h.coalgebra, LinearMap.from_entries(h.field, h.dim, h.dim, data), h.name)


@pytest.mark.parametrize("label", ["kZ2_QQ", "H4_QQ", "taft3_GF7", "funZ3_QQ"])
def test_corrupted_antipode_is_caught_with_witness(label):
    h = zoo(label)
    bad = _corrupt(h, (0, 0), 2)
    rep = check_hopf(bad)
    failed = {c.id for c in rep.failures}
    assert "hopf.antipode.left" in failed and "hopf.antipode.right" in failed
    assert all(c.id.startswith("hopf.antipode") for c in rep.failures)
    wit = next(c for c in rep.failures if c.id == "hopf.antipode.left").witness
    assert wit["row"] == 0 and wit["col"] == 0


@given(st.integers(0, 3), st.integers(0, 3), st.integers(1, 4))
def test_any_single_entry_corruption_of_h4_antipode_fails(r, c, delta):
    h = sweedler_h4()
    bad = _corrupt(h, (r, c), h.S[r, c] + delta)
    assert not check_hopf(bad).ok


def test_corrupted_coproduct_breaks_bialgebra():
    h = group_algebra(2)
    comul = h.comul + LinearMap.from_entries(QQ, 4, 2, {(1, 0): 1})
    bad = HopfAlgebraData(h.algebra, CoalgebraData(2, comul, h.counit), h.S)
    assert not check_hopf(bad).ok


def test_shape_validation():
    with pytest.raises(StructureError):
        AlgebraData(2, LinearMap(QQ, 2, 3), LinearMap(QQ, 2, 1))
    with pytest.raises(ValueError):
        taft(3, 3, GF7)  # 3 has order 6 mod 7
    with pytest.raises(ValueError):
        sweedler_h4(GF(2))


def test_trivial_group_algebra():
    h = group_algebra(1)
    assert h.dim == 1 and check_hopf(h).ok and grouplike_elements(h) == [(1,)]


@pytest.mark.parametrize("label", sorted(ZOO_CASES))
def test_antipode_inverse_round_trips(label):
    h = zoo(label)
    assert h.S @ h.S_inv == h.id == h.S_inv @ h.S


@pytest.mark.parametrize("field", [QQ, GF5, GF7])
def test_taft_at_minus_one_is_sweedler(field):
    t, h = taft(2, -1, field), sweedler_h4(field)
    assert t.basis == h.basis
    assert (t.mul, t.unit, t.comul, t.counit, t.S) == (h.mul, h.unit, h.comul, h.counit, h.S)
