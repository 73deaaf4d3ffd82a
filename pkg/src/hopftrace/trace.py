"""Relative Hopf bimodules over ``(H~, B)``, induction with its balancing, and the twisted center.

A Hopf bimodule ``N`` is a bicomodule with a left ``H~``-action ``rho`` and a
right ``B``-action, both bicomodule morphisms and commuting with each other.
Forgetting ``rho`` leaves an object of the module category; ``induce`` is
the free functor ``M -> H~ (x) M``.

The balancing of ``induce`` is

    beta_{M,X}: H~ (x) M (x) X -> H~ (x) X (x) M,
    h (x) m (x) x -> h S(x_(-1)) (x) x_(0) (x) m,

with inverse ``h (x) x (x) m -> h x_(-1) (x) m (x) x_(0)``.

A module structure ``rho`` corresponds to a half-braiding

    gamma(X): X (x) M -> M (x) X^vv,  x (x) m -> x_(-1).m (x) x_(0),

and back via ``rho(h (x) m) = (id (x) ev)(gamma(H)(h (x) m) (x) eps)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .bicomodules import (Bicomodule, BicomoduleAlgebra, ModuleCategoryObject,
                          add_bicomodule_constraints, add_right_action_constraint,
                          check_bicomodule, check_bicomodule_morphism, check_module_morphism,
                          check_same_algebra, left_act, module_object_hom, regular_module_object,
                          right_act, tensor_bicomodule, trivial_bicomodule_algebra)
from .coend import dinatural_j, hat_algebra, twisted_coend_algebra_cached
from .comodules import (Comodule, comodule_hom_basis, regular_comodule, same_hopf, tensor_comodule,
                        trivial_comodule)
from .hopf import HopfAlgebraData, StructureError
from .linalg import LinearMap, LinearSystem, SolutionSpace, chain, identity, kronecker, permute
from .report import Report, compare


class ModuleLawError(ValueError):
    """A candidate half-braiding does not come from a module structure."""


@dataclass(frozen=True, eq=False)
class HopfBimodule:
    carrier: Bicomodule
    coend: BicomoduleAlgebra
    algebra: BicomoduleAlgebra
    left_action: LinearMap
    right_action: LinearMap

    def __post_init__(self):
        d, n, b = self.carrier.dim, self.coend.dim, self.algebra.dim
        if self.left_action.shape != (d, n * d):
            raise StructureError(f"left action has shape {self.left_action.shape}, expected {(d, n * d)}")
        if self.right_action.shape != (d, d * b):
            raise StructureError(f"right action has shape {self.right_action.shape}, expected {(d, d * b)}")
        same_hopf(self.carrier.hopf, self.coend.hopf)
        same_hopf(self.carrier.hopf, self.algebra.hopf)

    hopf = property(lambda self: self.carrier.hopf)
    dim = property(lambda self: self.carrier.dim)
    name = property(lambda self: self.carrier.name)
    field = property(lambda self: self.carrier.field)

    @property
    def rho(self) -> LinearMap:
        return self.left_action

    def with_rho(self, rho: LinearMap) -> "HopfBimodule":
        return HopfBimodule(self.carrier, self.coend, self.algebra, rho, self.right_action)

    def __repr__(self):
        return f"HopfBimodule({self.name!r}, dim={self.dim}, B={self.algebra.name})"


def forget(n: HopfBimodule) -> ModuleCategoryObject:
    return ModuleCategoryObject(n.carrier, n.algebra, n.right_action)


def induce(m: ModuleCategoryObject) -> HopfBimodule:
    """``H~ (x) M`` with ``mu (x) id`` on the left and ``id (x) act`` on the right."""
    h = m.hopf
    ht = twisted_coend_algebra_cached(h)
    carrier = tensor_bicomodule(ht.carrier, m.carrier).renamed(f"H~*{m.name}")
    return HopfBimodule(carrier, ht, m.algebra, kronecker(h.mul, m.carrier.id),
                        kronecker(h.id, m.action))


def regular_hopf_bimodule(h: HopfAlgebraData, b: BicomoduleAlgebra | None = None) -> HopfBimodule:
    """``H~`` acting on itself; ``B`` is trivial (``None``) or ``H~`` itself."""
    ht = twisted_coend_algebra_cached(h)
    if b is None:
        b = trivial_bicomodule_algebra(h)
        right = h.id
    elif b is ht or (b.carrier.right == ht.carrier.right and b.mul == ht.mul):
        right = h.mul
    else:
        raise ValueError("regular Hopf bimodule needs B trivial or B = H~")
    return HopfBimodule(ht.carrier, ht, b, h.mul, right)


def check_hopf_bimodule(n: HopfBimodule, prefix: str | None = None) -> Report:
    p = prefix or f"hopf_bimodule[{n.name}]"
    F = n.field
    d, k, b = n.dim, n.coend.dim, n.algebra.dim
    I, Ik, Ib = n.carrier.id, identity(F, k), identity(F, b)
    rho, act = n.left_action, n.right_action
    rep = Report(p)
    rep.extend(check_bicomodule(n.carrier, p))
    rep.add(compare(f"{p}.left.associativity", rho @ kronecker(n.coend.mul, I),
                    rho @ kronecker(Ik, rho), (d,), (k, k, d)))
    rep.add(compare(f"{p}.left.unit", rho @ kronecker(n.coend.unit, I), I, (d,), (d,)))
    rep.add(compare(f"{p}.right.associativity", act @ kronecker(act, Ib),
                    act @ kronecker(I, n.algebra.mul), (d,), (d, b, b)))
    rep.add(compare(f"{p}.right.unit", act @ kronecker(I, n.algebra.unit), I, (d,), (d,)))
    rep.add(compare(f"{p}.actions_commute", rho @ kronecker(Ik, act),
                    act @ kronecker(rho, Ib), (d,), (k, d, b)))
    rep.extend(check_bicomodule_morphism(f"{p}.left_intertwines", rho,
                                         tensor_bicomodule(n.coend.carrier, n.carrier), n.carrier))
    rep.extend(check_bicomodule_morphism(f"{p}.right_intertwines", act,
                                         tensor_bicomodule(n.carrier, n.algebra.carrier), n.carrier))
    return rep


def check_hopf_bimodule_morphism(check_id: str, f: LinearMap, n1: HopfBimodule, n2: HopfBimodule) -> Report:
    rep = check_module_morphism(check_id, f, forget(n1), forget(n2))
    rep.add(compare(f"{check_id}.left_action", f @ n1.left_action,
                    n2.left_action @ kronecker(identity(n1.field, n1.coend.dim), f),
                    (n2.dim,), (n1.coend.dim, n1.dim)))
    return rep


def hom_hopf_bimodule(n1: HopfBimodule, n2: HopfBimodule) -> SolutionSpace:
    """All maps intertwining both coactions and both actions."""
    check_same_algebra(n1.algebra, n2.algebra)
    sys = LinearSystem(n1.field)
    F = sys.matrix(n2.dim, n1.dim)
    add_bicomodule_constraints(sys, "hom", F, n1.carrier, n2.carrier)
    add_right_action_constraint(sys, "right", F, n1.right_action, n2.right_action, n1.algebra.dim)
    sys.add_term("left", F, right=n1.left_action)
    sys.add_term("left", F, left=n2.left_action, a=n1.coend.dim, b=1, coef=-1)
    return sys.solve()


# --------------------------------------------------------------------------
# balancing


@dataclass
class BalancingWitness:
    module: ModuleCategoryObject
    comodule: Comodule
    beta: LinearMap
    inverse: LinearMap
    source: HopfBimodule
    target: HopfBimodule


def balancing_matrix(m: ModuleCategoryObject, x: Comodule) -> LinearMap:
    """``h (x) m (x) x -> h S(x_(-1)) (x) x_(0) (x) m``."""
    h = x.hopf
    F = h.field
    N, d, e = h.dim, m.dim, x.dim
    return chain(kronecker(h.mul @ kronecker(h.id, h.S), identity(F, e * d)),
                 kronecker(kronecker(h.id, x.coaction), identity(F, d)),
                 permute(F, (N, d, e), (0, 2, 1)))


def balancing_inverse_matrix(m: ModuleCategoryObject, x: Comodule) -> LinearMap:
    """``h (x) x (x) m -> h x_(-1) (x) m (x) x_(0)``."""
    h = x.hopf
    F = h.field
    N, d, e = h.dim, m.dim, x.dim
    return chain(permute(F, (N, e, d), (0, 2, 1)),
                 kronecker(h.mul, identity(F, e * d)),
                 kronecker(kronecker(h.id, x.coaction), identity(F, d)))


def balancing(m: ModuleCategoryObject, x: Comodule, verify: bool = True) -> BalancingWitness:
    same_hopf(m.hopf, x.hopf)
    w = BalancingWitness(m, x, balancing_matrix(m, x), balancing_inverse_matrix(m, x),
                         induce(right_act(m, x)), induce(left_act(x, m)))
    if verify:
        rep = check_balancing(w)
        if not rep.ok:
            raise ValueError(f"balancing for ({m.name}, {x.name}) fails: {[c.id for c in rep.failures][:5]}")
    return w


def check_balancing(w: BalancingWitness, prefix: str | None = None) -> Report:
    p = prefix or f"beta[{w.module.name},{w.comodule.name}]"
    rep = Report(p)
    n = w.beta.cols
    I = identity(w.beta.field, n)
    rep.add(compare(f"{p}.inverse_left", w.inverse @ w.beta, I))
    rep.add(compare(f"{p}.inverse_right", w.beta @ w.inverse, I))
    rep.extend(check_hopf_bimodule_morphism(f"{p}.morphism", w.beta, w.source, w.target))
    return rep


def check_beta_natural_in_module(m1: ModuleCategoryObject, m2: ModuleCategoryObject, x: Comodule,
                                 prefix: str | None = None) -> Report:
    """``beta_{M2,X} o (id (x) f (x) id) = (id (x) id (x) f) o beta_{M1,X}`` for a basis of ``Hom(M1, M2)``."""
    p = prefix or f"beta_natural.M[{m1.name}->{m2.name}@{x.name}]"
    h = x.hopf
    rep = Report(p)
    b1, b2 = balancing_matrix(m1, x), balancing_matrix(m2, x)
    for k, f in enumerate(module_object_hom(m1, m2).as_maps(m2.dim, m1.dim)):
        rep.add(compare(f"{p}#{k}", b2 @ kronecker(kronecker(h.id, f), x.id),
                        kronecker(kronecker(h.id, x.id), f) @ b1))
    return rep


def check_beta_natural_in_comodule(m: ModuleCategoryObject, x: Comodule, y: Comodule,
                                   prefix: str | None = None) -> Report:
    """``beta_{M,Y} o (id (x) id (x) g) = (id (x) g (x) id) o beta_{M,X}`` for a basis of ``Hom(X, Y)``."""
    p = prefix or f"beta_natural.X[{x.name}->{y.name}@{m.name}]"
    h = x.hopf
    rep = Report(p)
    bx, by = balancing_matrix(m, x), balancing_matrix(m, y)
    for k, g in enumerate(comodule_hom_basis(x, y)):
        rep.add(compare(f"{p}#{k}", by @ kronecker(identity(h.field, h.dim * m.dim), g),
                        kronecker(kronecker(h.id, g), m.carrier.id) @ bx))
    return rep


def check_balanced_axioms(m: ModuleCategoryObject, x: Comodule, y: Comodule,
                          prefix: str | None = None) -> Report:
    """The coherence square ``beta_{m,x(x)y} = beta_{y|>m,x} o beta_{m<|x,y}`` and ``beta_{m,1} = id``."""
    p = prefix or f"balanced[{m.name};{x.name},{y.name}]"
    h = m.hopf
    rep = Report(p)
    lhs = balancing_matrix(m, tensor_comodule(x, y))
    rhs = balancing_matrix(left_act(y, m), x) @ balancing_matrix(right_act(m, x), y)
    rep.add(compare(f"{p}.square", lhs, rhs, (h.dim, x.dim, y.dim, m.dim), (h.dim, m.dim, x.dim, y.dim)))
    unit = balancing_matrix(m, trivial_comodule(h))
    rep.add(compare(f"{p}.unit_triangle", unit, identity(h.field, h.dim * m.dim)))
    return rep


# --------------------------------------------------------------------------
# twisted center


@dataclass
class CenterStructure:
    base: ModuleCategoryObject
    gamma: list[tuple[Comodule, LinearMap]] = field(default_factory=list)

    def at(self, x: Comodule) -> LinearMap:
        for y, g in self.gamma:
            if y is x:
                return g
        for y, g in self.gamma:
            if y.dim == x.dim and y.coaction == x.coaction:
                return g
        raise KeyError(f"no half-braiding stored at {x.name}")


def rho_to_gamma(n: HopfBimodule, x: Comodule, rho: LinearMap | None = None) -> LinearMap:
    """``(rho (x) id) o (j_X (x) id (x) id) o reindex o (id (x) id (x) coev_{X^v})``."""
    h = n.hopf
    F = h.field
    rho = n.left_action if rho is None else rho
    e, d = x.dim, n.dim
    coev = x.right_dual.dual.right_dual.coev  # k -> X^v (x) X^vv
    return chain(kronecker(rho, identity(F, e)),
                 kronecker(dinatural_j(x, False), identity(F, d * e)),
                 permute(F, (e, d, e, e), (0, 2, 1, 3)),
                 kronecker(identity(F, e * d), coev))


def center_structure(n: HopfBimodule, family: Sequence[Comodule], rho: LinearMap | None = None) -> CenterStructure:
    return CenterStructure(forget(n), [(x, rho_to_gamma(n, x, rho)) for x in family])


def gamma_to_rho_matrix(c: CenterStructure) -> LinearMap:
    h = c.base.hopf
    reg = regular_comodule(h)
    g = c.at(reg)
    ev = reg.right_dual.dual.right_dual.ev  # X^vv (x) X^v -> k
    return kronecker(c.base.carrier.id, ev) @ kronecker(g, h.counit.transpose())


def gamma_to_rho(c: CenterStructure, diagnosis: Report | None = None) -> HopfBimodule:
    """Recover the module structure from the half-braiding at the regular comodule.

    Raises :class:`ModuleLawError` naming the failed laws if the recovered
    ``rho`` is not a Hopf-bimodule action; ``diagnosis`` is a precomputed
    :func:`check_center_structure` report used for the message.
    """
    h = c.base.hopf
    rho = gamma_to_rho_matrix(c)
    ht = twisted_coend_algebra_cached(h)
    n = HopfBimodule(c.base.carrier, ht, c.base.algebra, rho, c.base.action)
    rep = check_hopf_bimodule(n, "recovered")
    if not rep.ok:
        hc = diagnosis if diagnosis is not None else check_center_structure(c)
        kinds = sorted({f.id.split(".")[1] for f in hc.failures if "." in f.id})
        raise ModuleLawError(
            f"gamma does not satisfy {'/'.join(kinds) or 'the module laws'}; "
            f"failed: {[f.id for f in rep.failures][:5]}")
    return n


def check_hexagon(c: CenterStructure, x: Comodule, y: Comodule, gxy: LinearMap | None = None,
                  prefix: str | None = None) -> Report:
    """``gamma(X(x)Y) = (gamma(X) (x) id_{Y^vv}) o (id_X (x) gamma(Y))``."""
    p = prefix or f"center.hexagon[{x.name},{y.name}]"
    F = x.field
    gx, gy = c.at(x), c.at(y)
    if gxy is None:
        gxy = c.at(tensor_comodule(x, y))
    rhs = kronecker(gx, identity(F, y.dim)) @ kronecker(x.id, gy)
    rep = Report(p)
    d = c.base.dim
    rep.add(compare(p, gxy, rhs, (d, x.dim, y.dim), (x.dim, y.dim, d)))
    return rep


def check_center_structure(c: CenterStructure, morphisms: bool = True) -> Report:
    """Invertibility, module-category morphism property, naturality and hexagon on the stored family."""
    m = c.base
    rep = Report("center")
    for x, g in c.gamma:
        rep.require(f"center.invertibility[{x.name}]", g.is_invertible(), "gamma not invertible")
        if morphisms:
            rep.extend(check_module_morphism(f"center.morphism[{x.name}]", g, left_act(x, m),
                                             right_act(m, x.double_dual)))
    for x, gx in c.gamma:
        for y, gy in c.gamma:
            for k, f in enumerate(comodule_hom_basis(x, y)):
                rep.add(compare(f"center.naturality[{x.name}->{y.name}#{k}]",
                                gy @ kronecker(f, m.carrier.id), kronecker(m.carrier.id, f) @ gx))
    stored = {(y.dim, y.coaction) for y, _ in c.gamma}
    for x, _ in c.gamma:
        for y, _ in c.gamma:
            xy = tensor_comodule(x, y)
            if (xy.dim, xy.coaction) in stored:
                rep.extend(check_hexagon(c, x, y, prefix=f"center.hexagon[{x.name},{y.name}]"))
    return rep


def check_hexagon_pair(n: HopfBimodule, x: Comodule, y: Comodule, rho: LinearMap | None = None) -> Report:
    """Hexagon for ``gamma`` computed from ``rho`` at ``x``, ``y`` and ``x (x) y``."""
    c = CenterStructure(forget(n), [(x, rho_to_gamma(n, x, rho)), (y, rho_to_gamma(n, y, rho))])
    return check_hexagon(c, x, y, rho_to_gamma(n, tensor_comodule(x, y), rho))


# --------------------------------------------------------------------------
# twisted Yetter-Drinfeld condition


def _check_action(h: HopfAlgebraData, x: Comodule, action: LinearMap) -> Report:
    rep = Report("action")
    I = x.id
    rep.add(compare("action.associativity", action @ kronecker(h.mul, I),
                    action @ kronecker(h.id, action)))
    rep.add(compare("action.unit", action @ kronecker(h.unit, I), I))
    return rep


def _yd_sides(x: Comodule, action: LinearMap, twist: LinearMap) -> tuple[LinearMap, LinearMap]:
    h = x.hopf
    F = h.field
    N, e = h.dim, x.dim
    lhs = chain(kronecker(twist @ h.mul, action),
                permute(F, (N, N, N, e), (0, 2, 1, 3)),
                kronecker(h.comul, x.coaction))
    rhs = chain(kronecker(h.mul @ kronecker(twist, h.id), x.id),
                permute(F, (N, e, N), (0, 2, 1)),
                kronecker(x.coaction, h.id),
                kronecker(action, h.id),
                permute(F, (N, N, e), (0, 2, 1)),
                kronecker(h.comul, x.id))
    return lhs, rhs


def twisted_yd_check(x: Comodule, action: LinearMap, prefix: str = "twisted_yd") -> Report:
    """``S^2(h_(1) x_(-1)) (x) h_(2).x_(0) = S^2((h_(1).x)_(-1)) h_(2) (x) (h_(1).x)_(0)``."""
    h = x.hopf
    pre = _check_action(h, x, action)
    if not pre.ok:
        raise ValueError(f"not an H-action: {[c.id for c in pre.failures]}")
    lhs, rhs = _yd_sides(x, action, h.S @ h.S)
    rep = Report(prefix)
    rep.add(compare(prefix, lhs, rhs, (h.dim, x.dim), (h.dim, x.dim)))
    return rep


def ordinary_yd_check(x: Comodule, action: LinearMap, prefix: str = "yd") -> Report:
    """``h_(1) x_(-1) (x) h_(2).x_(0) = (h_(1).x)_(-1) h_(2) (x) (h_(1).x)_(0)``."""
    h = x.hopf
    pre = _check_action(h, x, action)
    if not pre.ok:
        raise ValueError(f"not an H-action: {[c.id for c in pre.failures]}")
    lhs, rhs = _yd_sides(x, action, h.id)
    rep = Report(prefix)
    rep.add(compare(prefix, lhs, rhs, (h.dim, x.dim), (h.dim, x.dim)))
    return rep


def twisted_adjoint_action(h: HopfAlgebraData) -> LinearMap:
    """``h . k = h_(1) k S^{-1}(h_(2))``."""
    return _adjoint(h, h.S_inv)


def adjoint_action(h: HopfAlgebraData) -> LinearMap:
    """``h . k = h_(1) k S(h_(2))``."""
    return _adjoint(h, h.S)


def _adjoint(h: HopfAlgebraData, anti: LinearMap) -> LinearMap:
    F = h.field
    N = h.dim
    # h (x) k -> h1 (x) T(h2) (x) k -> h1 (x) k (x) T(h2) -> h1 k T(h2)
    return chain(h.mul, kronecker(h.mul, h.id),
                 permute(F, (N, N, N), (0, 2, 1)),
                 kronecker(kronecker(h.id, anti), h.id),
                 kronecker(h.comul, h.id))


def free_twisted_yd(x: Comodule) -> tuple[Comodule, LinearMap]:
    """``H (x) X`` with action ``k(h (x) x) = kh (x) x`` and coaction ``h_(1) x_(-1) S^{-1}(h_(3)) (x) h_(2) (x) x_(0)``."""
    h = x.hopf
    F = h.field
    N, e = h.dim, x.dim
    comul2 = kronecker(h.comul, h.id) @ h.comul
    # h (x) x -> h1 h2 h3 x_(-1) x0 -> (h1 x_(-1) S^{-1}(h3)) (x) h2 (x) x0
    coaction = chain(kronecker(h.mul @ kronecker(h.mul, h.S_inv), identity(F, N * e)),
                     permute(F, (N, N, N, N, e), (0, 3, 2, 1, 4)),
                     kronecker(comul2, x.coaction))
    mod = Comodule(h, N * e, coaction, f"free({x.name})")
    action = kronecker(h.mul, x.id)
    return mod, action


# --------------------------------------------------------------------------
# induction along H^


def yd_induction(x: Comodule) -> ModuleCategoryObject:
    """``X |> H^``: the object ``X (x) H^`` with right ``H^``-action ``id (x) mu``."""
    hh = hat_algebra_cached(x.hopf)
    return left_act(x, regular_module_object(hh))


_HH_CACHE: dict[int, tuple[HopfAlgebraData, BicomoduleAlgebra]] = {}


def hat_algebra_cached(h: HopfAlgebraData) -> BicomoduleAlgebra:
    hit = _HH_CACHE.get(id(h))
    if hit is None or hit[0] is not h:
        hit = _HH_CACHE[id(h)] = (h, hat_algebra(h))
    return hit[1]
