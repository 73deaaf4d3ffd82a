"""Bicomodules over ``(H, H^opcop)``, bicomodule algebras and their module categories.

A bicomodule carries a left coaction ``m -> m_(-1) (x) m_(0)`` into ``H (x) M``
and a right coaction ``m -> m_(0) (x) m_(1)`` into ``M (x) H'`` where
``H' = H^opcop``.  Right-hand tensor factors multiply in ``H'``, i.e. with
the product of ``H`` reversed.

Objects of the module category are right ``B``-modules inside bicomodules.
Comodules act on them from both sides:

* ``X |> M`` on ``X (x) M`` with coactions ``x_(-1) m_(-1)`` and ``m_(1)``;
* ``M <| X`` on ``M (x) X`` with coactions ``m_(-1)`` and ``m_(1) x_(-1)``
  (product of ``H``, not ``H'``).

``B`` always acts on the ``M`` factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .comodules import (Comodule, CompatibilityError, add_coaction_constraint,
                        add_right_coaction_constraint, same_hopf)
from .hopf import AlgebraData, HopfAlgebraData, StructureError, check_algebra
from .linalg import (LinearMap, LinearSystem, SolutionSpace, chain, codiagonal, flip, identity,
                     kronecker, permute)
from .report import Report, compare


@dataclass(frozen=True, eq=False)
class Bicomodule:
    hopf: HopfAlgebraData
    dim: int
    left: LinearMap
    right: LinearMap
    name: str = "M"

    def __post_init__(self):
        n, d = self.hopf.dim, self.dim
        if self.left.shape != (n * d, d):
            raise StructureError(f"left coaction of {self.name} has shape {self.left.shape}, expected {(n * d, d)}")
        if self.right.shape != (d * n, d):
            raise StructureError(f"right coaction of {self.name} has shape {self.right.shape}, expected {(d * n, d)}")

    @property
    def field(self):
        return self.hopf.field

    @cached_property
    def id(self) -> LinearMap:
        return identity(self.field, self.dim)

    @property
    def left_comodule(self) -> Comodule:
        return Comodule(self.hopf, self.dim, self.left, self.name)

    def renamed(self, name: str) -> "Bicomodule":
        return Bicomodule(self.hopf, self.dim, self.left, self.right, name)

    def __repr__(self):
        return f"Bicomodule({self.name!r}, dim={self.dim}, over={self.hopf.name})"


@dataclass(frozen=True, eq=False)
class BicomoduleAlgebra:
    carrier: Bicomodule
    mul: LinearMap
    unit: LinearMap

    def __post_init__(self):
        AlgebraData(self.carrier.dim, self.mul, self.unit)  # shape validation

    hopf = property(lambda self: self.carrier.hopf)
    dim = property(lambda self: self.carrier.dim)
    name = property(lambda self: self.carrier.name)
    field = property(lambda self: self.carrier.field)

    @property
    def algebra(self) -> AlgebraData:
        return AlgebraData(self.dim, self.mul, self.unit)

    def __repr__(self):
        return f"BicomoduleAlgebra({self.name!r}, dim={self.dim}, over={self.hopf.name})"


@dataclass(frozen=True, eq=False)
class ModuleCategoryObject:
    carrier: Bicomodule
    algebra: BicomoduleAlgebra
    action: LinearMap

    def __post_init__(self):
        d, b = self.carrier.dim, self.algebra.dim
        if self.action.shape != (d, d * b):
            raise StructureError(f"B-action of {self.name} has shape {self.action.shape}, expected {(d, d * b)}")
        same_hopf(self.carrier.hopf, self.algebra.hopf)

    hopf = property(lambda self: self.carrier.hopf)
    dim = property(lambda self: self.carrier.dim)
    name = property(lambda self: self.carrier.name)
    field = property(lambda self: self.carrier.field)

    def __repr__(self):
        return f"ModuleCategoryObject({self.name!r}, dim={self.dim}, over B={self.algebra.name})"


def check_same_algebra(a: BicomoduleAlgebra, b: BicomoduleAlgebra) -> None:
    if a is b:
        return
    if not (a.carrier.left == b.carrier.left and a.carrier.right == b.carrier.right
            and a.mul == b.mul and a.unit == b.unit):
        raise CompatibilityError(f"module objects over different algebras ({a.name} vs {b.name})")
    same_hopf(a.hopf, b.hopf)


# --------------------------------------------------------------------------
# constructions


def trivial_bicomodule(h: HopfAlgebraData) -> Bicomodule:
    return Bicomodule(h, 1, h.unit, h.unit, "k")


def trivial_bicomodule_algebra(h: HopfAlgebraData) -> BicomoduleAlgebra:
    F = h.field
    return BicomoduleAlgebra(trivial_bicomodule(h), identity(F, 1), identity(F, 1))


def left_bicomodule(x: Comodule) -> Bicomodule:
    """A left comodule with trivial right coaction ``x -> x (x) 1``."""
    return Bicomodule(x.hopf, x.dim, x.coaction, kronecker(x.id, x.hopf.unit), x.name)


def external_product(x: Comodule, y: Comodule) -> Bicomodule:
    """``X [x] Y`` on ``X (x) Y``: left coaction of ``X``, right coaction ``y -> y_(0) (x) y_(-1)``."""
    same_hopf(x.hopf, y.hopf)
    h = x.hopf
    F = h.field
    left = kronecker(x.coaction, y.id)
    right = kronecker(x.id, flip(F, h.dim, y.dim) @ y.coaction)
    return Bicomodule(h, x.dim * y.dim, left, right, f"{x.name}[x]{y.name}")


def tensor_bicomodule(p: Bicomodule, n: Bicomodule) -> Bicomodule:
    """Codiagonal coactions: ``p_(-1) n_(-1)`` on the left, ``n_(1) p_(1)`` (product of H') on the right."""
    same_hopf(p.hopf, n.hopf)
    h = p.hopf
    left = codiagonal(h.mul, p.left, n.left, "left")
    right = codiagonal(h.mul, p.right, n.right, "right", reverse=True)
    return Bicomodule(h, p.dim * n.dim, left, right, f"({p.name}*{n.name})")


def left_act(x: Comodule, m: ModuleCategoryObject) -> ModuleCategoryObject:
    """``X |> M``: carrier ``X (x) M``, left coaction ``x_(-1) m_(-1)``, right coaction ``m_(1)``."""
    same_hopf(x.hopf, m.hopf)
    carrier = tensor_bicomodule(left_bicomodule(x), m.carrier).renamed(f"{x.name}|>{m.name}")
    return ModuleCategoryObject(carrier, m.algebra, kronecker(x.id, m.action))


def right_act(m: ModuleCategoryObject, x: Comodule) -> ModuleCategoryObject:
    """``M <| X``: carrier ``M (x) X``, left coaction ``m_(-1)``, right coaction ``m_(1) x_(-1)``."""
    same_hopf(x.hopf, m.hopf)
    h = m.hopf
    F = h.field
    N, d, e = h.dim, m.dim, x.dim
    left = kronecker(m.carrier.left, x.id)
    # m (x) x -> m0 (x) m1 (x) x_(-1) (x) x0 -> m0 (x) x0 (x) m1 x_(-1)
    right = chain(kronecker(identity(F, d * e), h.mul),
                  permute(F, (d, N, N, e), (0, 3, 1, 2)),
                  kronecker(m.carrier.right, x.coaction))
    carrier = Bicomodule(h, d * e, left, right, f"{m.name}<|{x.name}")
    action = chain(kronecker(m.action, x.id), permute(F, (d, e, m.algebra.dim), (0, 2, 1)))
    return ModuleCategoryObject(carrier, m.algebra, action)


def regular_module_object(b: BicomoduleAlgebra) -> ModuleCategoryObject:
    """``B`` as a right module over itself."""
    return ModuleCategoryObject(b.carrier, b, b.mul)


# --------------------------------------------------------------------------
# checks


def check_bicomodule(m: Bicomodule, prefix: str | None = None) -> Report:
    p = prefix or f"bicomodule[{m.name}]"
    h = m.hopf
    N, d = h.dim, m.dim
    F = h.field
    I = m.id
    rep = Report(p)
    rep.add(compare(f"{p}.left.coassociativity", kronecker(h.comul, I) @ m.left,
                    kronecker(h.id, m.left) @ m.left, (N, N, d), (d,)))
    rep.add(compare(f"{p}.left.counit", kronecker(h.counit, I) @ m.left, I, (d,), (d,)))
    comul_op = flip(F, N, N) @ h.comul
    rep.add(compare(f"{p}.right.coassociativity", kronecker(m.right, h.id) @ m.right,
                    kronecker(I, comul_op) @ m.right, (d, N, N), (d,)))
    rep.add(compare(f"{p}.right.counit", kronecker(I, h.counit) @ m.right, I, (d,), (d,)))
    rep.add(compare(f"{p}.commutation", kronecker(h.id, m.right) @ m.left,
                    kronecker(m.left, h.id) @ m.right, (N, d, N), (d,)))
    return rep


def check_bicomodule_morphism(check_id: str, f: LinearMap, src: Bicomodule, tgt: Bicomodule) -> Report:
    h = src.hopf
    N = h.dim
    rep = Report(check_id)
    rep.add(compare(f"{check_id}.left", kronecker(h.id, f) @ src.left, tgt.left @ f,
                    (N, tgt.dim), (src.dim,)))
    rep.add(compare(f"{check_id}.right", kronecker(f, h.id) @ src.right, tgt.right @ f,
                    (tgt.dim, N), (src.dim,)))
    return rep


def is_bicomodule_morphism(f: LinearMap, src: Bicomodule, tgt: Bicomodule) -> bool:
    h = src.hopf
    return (kronecker(h.id, f) @ src.left == tgt.left @ f
            and kronecker(f, h.id) @ src.right == tgt.right @ f)


def check_bicomodule_algebra(b: BicomoduleAlgebra, prefix: str | None = None) -> Report:
    p = prefix or f"bicomodule_algebra[{b.name}]"
    rep = Report(p)
    rep.extend(check_bicomodule(b.carrier, p))
    rep.extend(check_algebra(b.algebra, f"{p}.algebra"))
    rep.extend(check_bicomodule_morphism(f"{p}.mul_intertwines", b.mul,
                                         tensor_bicomodule(b.carrier, b.carrier), b.carrier))
    rep.extend(check_bicomodule_morphism(f"{p}.unit_intertwines", b.unit,
                                         trivial_bicomodule(b.hopf), b.carrier))
    return rep


def check_module_object(m: ModuleCategoryObject, prefix: str | None = None) -> Report:
    p = prefix or f"module_object[{m.name}]"
    b = m.algebra
    F = m.field
    d, e = m.dim, b.dim
    I, Ib = m.carrier.id, identity(F, e)
    rep = Report(p)
    rep.extend(check_bicomodule(m.carrier, p))
    rep.add(compare(f"{p}.action.associativity", m.action @ kronecker(m.action, Ib),
                    m.action @ kronecker(I, b.mul), (d,), (d, e, e)))
    rep.add(compare(f"{p}.action.unit", m.action @ kronecker(I, b.unit), I, (d,), (d,)))
    rep.extend(check_bicomodule_morphism(f"{p}.action_intertwines", m.action,
                                         tensor_bicomodule(m.carrier, b.carrier), m.carrier))
    return rep


# --------------------------------------------------------------------------
# morphism spaces


def add_bicomodule_constraints(sys: LinearSystem, key, F, src: Bicomodule, tgt: Bicomodule) -> None:
    N = src.hopf.dim
    add_coaction_constraint(sys, (key, "left"), F, src.left, tgt.left, N)
    add_right_coaction_constraint(sys, (key, "right"), F, src.right, tgt.right, N)


def bicomodule_hom(src: Bicomodule, tgt: Bicomodule) -> SolutionSpace:
    same_hopf(src.hopf, tgt.hopf)
    sys = LinearSystem(src.field)
    F = sys.matrix(tgt.dim, src.dim)
    add_bicomodule_constraints(sys, "hom", F, src, tgt)
    return sys.solve()


def add_right_action_constraint(sys: LinearSystem, key, F, src_action: LinearMap,
                                tgt_action: LinearMap, bdim: int) -> None:
    """``F o act_src = act_tgt o (F (x) id_B)``."""
    sys.add_term(key, F, right=src_action)
    sys.add_term(key, F, left=tgt_action, a=1, b=bdim, coef=-1)


def module_object_hom(m1: ModuleCategoryObject, m2: ModuleCategoryObject) -> SolutionSpace:
    """All maps intertwining both coactions and the ``B``-action."""
    check_same_algebra(m1.algebra, m2.algebra)
    sys = LinearSystem(m1.field)
    F = sys.matrix(m2.dim, m1.dim)
    add_bicomodule_constraints(sys, "hom", F, m1.carrier, m2.carrier)
    add_right_action_constraint(sys, "action", F, m1.action, m2.action, m1.algebra.dim)
    return sys.solve()


def check_module_morphism(check_id: str, f: LinearMap, m1: ModuleCategoryObject,
                          m2: ModuleCategoryObject) -> Report:
    rep = check_bicomodule_morphism(check_id, f, m1.carrier, m2.carrier)
    rep.add(compare(f"{check_id}.action", f @ m1.action,
                    m2.action @ kronecker(f, identity(m1.field, m1.algebra.dim)),
                    (m2.dim,), (m1.dim, m1.algebra.dim)))
    return rep


def is_module_morphism(f: LinearMap, m1: ModuleCategoryObject, m2: ModuleCategoryObject) -> bool:
    return check_module_morphism("m", f, m1, m2).ok
