"""Algebras, coalgebras and Hopf algebras given by structure constants.

A structure on a space with basis ``b_0 .. b_{n-1}`` is stored as linear maps:
``mul: H(x)H -> H``, ``unit: k -> H``, ``comul: H -> H(x)H``, ``counit: H -> k``
and ``antipode: H -> H``, all in the tensor basis order of :mod:`.linalg`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import sympy

from .linalg import (LinearMap, column_vector, flip, identity,
                     kernel, kronecker, permute, row_vector)
from .report import Report, compare


class StructureError(ValueError):
    """Structure maps have inconsistent shapes."""


@dataclass(frozen=True, eq=False)
class AlgebraData:
    dim: int
    mul: LinearMap
    unit: LinearMap

    def __post_init__(self):
        n = self.dim
        if self.mul.shape != (n, n * n):
            raise StructureError(f"multiplication has shape {self.mul.shape}, expected {(n, n * n)}")
        if self.unit.shape != (n, 1):
            raise StructureError(f"unit has shape {self.unit.shape}, expected {(n, 1)}")

    @property
    def field(self):
        return self.mul.field


@dataclass(frozen=True, eq=False)
class CoalgebraData:
    dim: int
    comul: LinearMap
    counit: LinearMap

    def __post_init__(self):
        n = self.dim
        if self.comul.shape != (n * n, n):
            raise StructureError(f"comultiplication has shape {self.comul.shape}, expected {(n * n, n)}")
        if self.counit.shape != (1, n):
            raise StructureError(f"counit has shape {self.counit.shape}, expected {(1, n)}")

    @property
    def field(self):
        return self.comul.field


@dataclass(frozen=True, eq=False)
class HopfAlgebraData:
    algebra: AlgebraData
    coalgebra: CoalgebraData
    antipode: LinearMap
    name: str = "H"
    basis: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.algebra.dim != self.coalgebra.dim:
            raise StructureError("algebra and coalgebra dimensions differ")
        if self.antipode.shape != (self.dim, self.dim):
            raise StructureError(f"antipode has shape {self.antipode.shape}")
        if self.algebra.field != self.coalgebra.field or self.antipode.field != self.algebra.field:
            raise StructureError("structure maps live over different fields")
        if not self.basis:
            object.__setattr__(self, "basis", tuple(f"b{i}" for i in range(self.dim)))
        elif len(self.basis) != self.dim:
            raise StructureError("basis label count does not match dimension")

    dim = property(lambda self: self.algebra.dim)
    field = property(lambda self: self.algebra.field)
    mul = property(lambda self: self.algebra.mul)
    unit = property(lambda self: self.algebra.unit)
    comul = property(lambda self: self.coalgebra.comul)
    counit = property(lambda self: self.coalgebra.counit)
    S = property(lambda self: self.antipode)

    @cached_property
    def S_inv(self) -> LinearMap:
        return antipode_inverse(self)

    @cached_property
    def id(self) -> LinearMap:
        return identity(self.field, self.dim)

    def same_structure(self, other: "HopfAlgebraData") -> bool:
        return self is other or (
            self.mul == other.mul and self.unit == other.unit and self.comul == other.comul
            and self.counit == other.counit and self.antipode == other.antipode)

    def __eq__(self, other):
        if not isinstance(other, HopfAlgebraData):
            return NotImplemented
        return self.same_structure(other)

    def __hash__(self):
        return hash((self.dim, self.mul, self.comul, self.antipode))

    def element(self, coords: Sequence) -> LinearMap:
        return column_vector(self.field, [self.field(c) for c in coords])

    def product(self, a: Sequence, b: Sequence) -> list:
        return self.mul.apply(kronecker(self.element(a), self.element(b)).column(0))

    def __repr__(self):
        return f"HopfAlgebraData({self.name!r}, dim={self.dim}, field={self.field!r})"


# --------------------------------------------------------------------------
# checkers


def _assoc_pair(a: AlgebraData):
    n, m = a.dim, a.mul
    I = identity(a.field, n)
    return m @ kronecker(m, I), m @ kronecker(I, m)


def check_algebra(a: AlgebraData, prefix: str = "algebra") -> Report:
    """Associativity and unitality as exact matrix identities."""
    n = a.dim
    I = identity(a.field, n)
    rep = Report(prefix)
    lhs, rhs = _assoc_pair(a)
    rep.add(compare(f"{prefix}.associativity", lhs, rhs, (n,), (n, n, n)))
    rep.add(compare(f"{prefix}.left_unit", a.mul @ kronecker(a.unit, I), I, (n,), (n,)))
    rep.add(compare(f"{prefix}.right_unit", a.mul @ kronecker(I, a.unit), I, (n,), (n,)))
    return rep


def check_coalgebra(c: CoalgebraData, prefix: str = "coalgebra") -> Report:
    n = c.dim
    I = identity(c.field, n)
    rep = Report(prefix)
    rep.add(compare(f"{prefix}.coassociativity", kronecker(c.comul, I) @ c.comul,
                    kronecker(I, c.comul) @ c.comul, (n, n, n), (n,)))
    rep.add(compare(f"{prefix}.left_counit", kronecker(c.counit, I) @ c.comul, I, (n,), (n,)))
    rep.add(compare(f"{prefix}.right_counit", kronecker(I, c.counit) @ c.comul, I, (n,), (n,)))
    return rep


def tensor_square_mul(h: HopfAlgebraData) -> LinearMap:
    """Multiplication of the algebra H(x)H: (mu (x) mu) o (id (x) tau (x) id)."""
    n = h.dim
    return kronecker(h.mul, h.mul) @ permute(h.field, (n, n, n, n), (0, 2, 1, 3))


def check_hopf(h: HopfAlgebraData, prefix: str = "hopf") -> Report:
    n = h.dim
    F = h.field
    I = h.id
    rep = Report(prefix)
    rep.extend(check_algebra(h.algebra, f"{prefix}.algebra"))
    rep.extend(check_coalgebra(h.coalgebra, f"{prefix}.coalgebra"))
    rep.add(compare(f"{prefix}.bialgebra.comul_multiplicative", h.comul @ h.mul,
                    tensor_square_mul(h) @ kronecker(h.comul, h.comul), (n, n), (n, n)))
    rep.add(compare(f"{prefix}.bialgebra.comul_unit", h.comul @ h.unit, kronecker(h.unit, h.unit), (n, n), (1,)))
    rep.add(compare(f"{prefix}.bialgebra.counit_multiplicative", h.counit @ h.mul,
                    kronecker(h.counit, h.counit), (1,), (n, n)))
    rep.add(compare(f"{prefix}.bialgebra.counit_unit", h.counit @ h.unit, identity(F, 1), (1,), (1,)))
    eta_eps = h.unit @ h.counit
    rep.add(compare(f"{prefix}.antipode.left", h.mul @ kronecker(h.S, I) @ h.comul, eta_eps, (n,), (n,)))
    rep.add(compare(f"{prefix}.antipode.right", h.mul @ kronecker(I, h.S) @ h.comul, eta_eps, (n,), (n,)))
    rep.require(f"{prefix}.antipode.invertible", h.S.is_invertible(), "antipode not invertible")
    return rep


def check_antipode_antihomomorphism(h: HopfAlgebraData) -> Report:
    rep = Report("antipode-antihom")
    n = h.dim
    rep.add(compare("antipode.antimultiplicative", h.S @ h.mul,
                    h.mul @ flip(h.field, n, n) @ kronecker(h.S, h.S), (n,), (n, n)))
    rep.add(compare("antipode.anticomultiplicative", h.comul @ h.S,
                    kronecker(h.S, h.S) @ flip(h.field, n, n) @ h.comul, (n, n), (n,)))
    return rep


# --------------------------------------------------------------------------
# derived structure


def antipode_inverse(h: HopfAlgebraData) -> LinearMap:
    try:
        inv = h.S.inverse()
    except ZeroDivisionError:
        raise ValueError("antipode not invertible") from None
    return inv


def op_cop(h: HopfAlgebraData) -> HopfAlgebraData:
    """Flip both multiplication and comultiplication; the antipode is unchanged."""
    n = h.dim
    tau = flip(h.field, n, n)
    name = h.name[:-6] if h.name.endswith("^opcop") else h.name + "^opcop"
    return HopfAlgebraData(AlgebraData(n, h.mul @ tau, h.unit),
                           CoalgebraData(n, tau @ h.comul, h.counit),
                           h.S, name, h.basis)


def _linear_roots(field, matrix: LinearMap) -> list:
    """Roots in ``field`` of the characteristic polynomial of a square matrix."""
    x = sympy.Symbol("x")
    m = sympy.Matrix([[sympy.Rational(Fraction(v).numerator, Fraction(v).denominator) for v in row]
                      for row in matrix.entries])
    expr = m.charpoly(x).as_expr()
    if field.characteristic == 0:
        poly = sympy.Poly(expr, x, domain="QQ")
    else:
        poly = sympy.Poly(expr, x, modulus=field.characteristic)
    roots = set()
    for fac, _ in poly.factor_list()[1]:
        if fac.degree() != 1:
            continue
        a, b = fac.all_coeffs()
        if field.characteristic == 0:
            r = sympy.Rational(-b, a)
            roots.add(field(Fraction(int(r.p), int(r.q))))
        else:
            roots.add(field(-int(b)) * field.inv(field(int(a))) % field.characteristic)
    return sorted(roots)


def grouplike_elements(h: HopfAlgebraData) -> list[tuple]:
    """All grouplikes ``g`` (``Delta g = g(x)g``, ``eps g = 1``) with coordinates in the field.

    A grouplike is a common eigenvector of the operators ``v -> (e_i (x) id) Delta v``
    whose eigenvalue on ``e_i`` is its own ``i``-th coordinate, so the search
    refines common eigenspaces one coordinate functional at a time.
    """
    F, n = h.field, h.dim
    I = h.id
    ops = []
    for i in range(n):
        e = row_vector(F, [F.one if k == i else F.zero for k in range(n)])
        ops.append(kronecker(e, I) @ h.comul)
    spaces: list[tuple[LinearMap, tuple]] = [(I, ())]
    for T in ops:
        refined = []
        for V, lams in spaces:
            TV = T @ V
            for lam in _linear_roots(F, T):
                ker = kernel(TV - V.scale(lam))
                if ker.dim:
                    W = V @ LinearMap.from_columns(F, V.cols, ker.basis)
                    refined.append((W, lams + (lam,)))
        spaces = refined
    out = []
    for V, lams in spaces:
        g = h.element(lams)
        if (h.comul @ g == kronecker(g, g)) and (h.counit @ g == identity(F, 1)):
            out.append(tuple(lams))
    unit = tuple(h.unit.column(0))
    return sorted(set(out), key=lambda v: (v != unit, _grouplike_key(v)))


def _grouplike_key(v: tuple):
    first = next(i for i, c in enumerate(v) if c != 0)
    return (first, tuple(str(c) for c in v))
