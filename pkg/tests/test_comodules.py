from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import ZOO_CASES, zoo
from hopftrace.comodules import (CompatibilityError, Comodule, check_comodule, check_left_duality,
                                 check_right_duality, comodule_hom, comodule_hom_basis, cyclic_subcomodule,
                                 dual_morphism, forced_right_dual_coactions, grouplike_comodule,
                                 is_comodule_morphism, regular_comodule, tensor_comodule, trivial_comodule)
from hopftrace.hopf import StructureError
from hopftrace.linalg import QQ, LinearMap, kronecker
from hopftrace.zoo import group_algebra, standard_test_family, sweedler_h4, taft


def graded(h, degrees, name="V"):
    """A Z/n-graded space as a k[Z/n]-comodule: x_i -> g^{deg_i} (x) x_i."""
    d = len(degrees)
    return Comodule(h, d, LinearMap.from_entries(h.field, h.dim * d, d,
                                                 {(deg * d + i, i): 1 for i, deg in enumerate(degrees)}), name)


degree_lists = st.lists(st.integers(0, 2), min_size=1, max_size=4)


@given(degree_lists, degree_lists)
def test_graded_hom_dimension(da, db):
    h = group_algebra(3)
    x, y = graded(h, da), graded(h, db)
    ca, cb = Counter(da), Counter(db)
    assert comodule_hom(x, y).dim == sum(ca[g] * cb[g] for g in range(3))


@given(degree_lists, degree_lists)
def test_graded_tensor_and_duals(da, db):
    h = group_algebra(3)
    x, y = graded(h, da), graded(h, db)
    xy = tensor_comodule(x, y)
    assert xy.coaction == graded(h, [(a + b) % 3 for a in da for b in db]).coaction
    assert x.right_dual.dual.coaction == graded(h, [(-a) % 3 for a in da]).coaction
    assert x.left_dual.dual.coaction == graded(h, [(-a) % 3 for a in da]).coaction


@pytest.mark.parametrize("label", sorted(ZOO_CASES))
def test_family_members_are_comodules_with_rigid_duals(label):
    fam = standard_test_family(zoo(label))
    for x in fam.comodules:
        assert check_comodule(x).ok
        assert check_right_duality(x, x.right_dual).ok
        assert check_left_duality(x, x.left_dual).ok


@pytest.mark.parametrize("label", ["kZ2_QQ", "H4_QQ", "taft3_GF7", "funZ3_QQ"])
def test_known_hom_dimensions(label):
    h = zoo(label)
    k, reg = trivial_comodule(h), regular_comodule(h)
    assert comodule_hom(k, k).dim == 1
    assert comodule_hom(reg, reg).dim == h.dim
    # coinvariants of H and left integrals on H are one-dimensional
    assert comodule_hom(k, reg).dim == 1
    assert comodule_hom(reg, k).dim == 1


def test_grouplike_comodules_of_h4():
    h = sweedler_h4()
    kg = grouplike_comodule(h, (0, 1, 0, 0), "k_g")
    k = trivial_comodule(h)
    assert comodule_hom(kg, k).dim == 0 and comodule_hom(kg, kg).dim == 1
    assert comodule_hom(kg, regular_comodule(h)).dim == 1
    assert tensor_comodule(kg, kg).coaction == k.coaction


def test_double_dual_is_antipode_squared_twist():
    h = sweedler_h4()
    x = regular_comodule(h)
    assert x.double_dual.coaction == kronecker(h.S_inv @ h.S_inv, x.id) @ x.coaction
    assert x.double_dual.coaction != x.coaction  # S^2 != id on H4


def test_right_dual_coaction_is_forced_by_evaluation():
    for h in (sweedler_h4(), taft(3, 2, zoo("taft3_GF7").field)):
        reg = regular_comodule(h)
        sol = forced_right_dual_coactions(reg)
        assert sol.dim == 1 and sol.basis[0][-1] != 0


def test_left_dual_of_right_dual_recovers_the_comodule():
    h = sweedler_h4()
    x = regular_comodule(h)
    assert x.right_dual.dual.left_dual.dual.coaction == x.coaction


def test_hom_basis_consists_of_morphisms_and_dualizes():
    h = sweedler_h4()
    reg = regular_comodule(h)
    basis = comodule_hom_basis(reg, reg)
    assert len(basis) == 4
    for f in basis:
        assert is_comodule_morphism(f, reg, reg)
        assert is_comodule_morphism(dual_morphism(f), reg.right_dual.dual, reg.right_dual.dual)


def test_cyclic_subcomodule_of_taft():
    h = zoo("taft3_GF7")
    reg = regular_comodule(h)
    x = [0] * 9
    x[h.basis.index("x")] = 1
    sub = cyclic_subcomodule(reg, x)
    assert sub.dim == 2 and check_comodule(sub).ok


def test_mismatched_hopf_algebras_are_rejected():
    a, b = trivial_comodule(group_algebra(2)), trivial_comodule(group_algebra(3))
    with pytest.raises(CompatibilityError):
        tensor_comodule(a, b)
    with pytest.raises(CompatibilityError):
        comodule_hom(a, b)


def test_non_coassociative_coaction_fails_checks():
    h = group_algebra(2)
    bad = Comodule(h, 1, LinearMap.from_dense(QQ, [[1], [1]]))
    rep = check_comodule(bad)
    assert not rep.ok


def test_coaction_shape_is_validated():
    with pytest.raises((StructureError, ValueError)):
        Comodule(group_algebra(2), 2, LinearMap(QQ, 3, 2))
