"""The coend algebra H~ of comod H, its dinatural family j, and the algebra H^.

``H~`` is ``H`` as an algebra with left coaction ``Delta`` and right coaction
``h -> h_(1) (x) S^{-1}(h_(2))``.  The family

    j_X = (id_H (x) ev_X o tau) o (delta_X (x) id):  X (x) X^v -> H~,
    x (x) phi -> x_(-1) phi(x_(0)),

is a universal dinatural family.  ``H^`` has the same algebra and left
coaction but right coaction ``h -> h_(1) (x) S(h_(2))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .bicomodules import (Bicomodule, BicomoduleAlgebra, add_bicomodule_constraints,
                          check_bicomodule_algebra, check_bicomodule_morphism, external_product)
from .comodules import Comodule, ConstructionError, comodule_hom_basis, same_hopf, tensor_comodule
from .hopf import HopfAlgebraData
from .linalg import LinearMap, LinearSystem, kronecker, permute
from .report import Report, compare


class CowedgeError(ValueError):
    """The supplied family is not a co-wedge, or fails to factor."""


def _bicomodule_algebra(h: HopfAlgebraData, right: LinearMap, name: str, check: bool = True) -> BicomoduleAlgebra:
    b = BicomoduleAlgebra(Bicomodule(h, h.dim, h.comul, right, name), h.mul, h.unit)
    if not check:
        return b
    rep = check_bicomodule_algebra(b)
    if not rep.ok:
        raise ConstructionError(f"{name} failed: {[c.id for c in rep.failures]}")
    return b


def twisted_coend_algebra(h: HopfAlgebraData, check: bool = True) -> BicomoduleAlgebra:
    """``H~``: right coaction ``(id (x) S^{-1}) o Delta``.

    ``check=False`` skips validation so objects over a corrupt ``h`` can still
    be loaded and reported on.
    """
    return _bicomodule_algebra(h, kronecker(h.id, h.S_inv) @ h.comul, "H~", check)


def hat_algebra(h: HopfAlgebraData) -> BicomoduleAlgebra:
    """``H^``: right coaction ``(id (x) S) o Delta``, so the bicoaction is ``h_(1) (x) h_(2) (x) S(h_(3))``."""
    return _bicomodule_algebra(h, kronecker(h.id, h.S) @ h.comul, "H^")


def pairing_source(x: Comodule) -> Bicomodule:
    """``X [x] X^v``, the source of ``j_X``."""
    return external_product(x, x.right_dual.dual)


def dinatural_j(x: Comodule, check: bool = True) -> LinearMap:
    h = x.hopf
    pair = x.right_dual.ev  # ev o tau: X (x) X^v -> k has the same matrix
    j = kronecker(h.id, pair) @ kronecker(x.coaction, x.id)
    if check:
        rep = check_bicomodule_morphism(f"j[{x.name}]", j, pairing_source(x),
                                        twisted_coend_algebra_cached(h).carrier)
        if not rep.ok:
            raise ConstructionError(f"j_{x.name} is not a bicomodule morphism")
    return j


_HT_CACHE: dict[int, tuple[HopfAlgebraData, BicomoduleAlgebra]] = {}


def twisted_coend_algebra_cached(h: HopfAlgebraData) -> BicomoduleAlgebra:
    hit = _HT_CACHE.get(id(h))
    if hit is None or hit[0] is not h:
        hit = _HT_CACHE[id(h)] = (h, twisted_coend_algebra(h))
    return hit[1]


def epsilon_section(h: HopfAlgebraData) -> LinearMap:
    """``h -> h (x) eps``, a right inverse of ``j_H``."""
    return kronecker(h.id, h.counit.transpose())


def check_j(x: Comodule, prefix: str | None = None) -> Report:
    h = x.hopf
    p = prefix or f"j[{x.name}]"
    j = dinatural_j(x, check=False)
    return check_bicomodule_morphism(f"{p}.intertwines", j, pairing_source(x),
                                     twisted_coend_algebra_cached(h).carrier)


def check_dinaturality(f: LinearMap, x: Comodule, y: Comodule, check_id: str | None = None,
                       jx: LinearMap | None = None, jy: LinearMap | None = None) -> Report:
    """``j_X o (id_X (x) f^T) = j_Y o (f (x) id_{Y^v})`` for ``f: X -> Y``."""
    cid = check_id or f"dinaturality[{x.name}->{y.name}]"
    jx = dinatural_j(x, check=False) if jx is None else jx
    jy = dinatural_j(y, check=False) if jy is None else jy
    rep = Report(cid)
    rep.add(compare(cid, jx @ kronecker(x.id, f.transpose()), jy @ kronecker(f, y.id),
                    (x.hopf.dim,), (x.dim, y.dim)))
    return rep


def check_family_dinaturality(family: Sequence[Comodule], prefix: str = "dinaturality") -> Report:
    """Dinaturality of ``j`` against every basis morphism between family members."""
    rep = Report(prefix)
    js = {id(x): dinatural_j(x, check=False) for x in family}
    for x in family:
        for y in family:
            for k, f in enumerate(comodule_hom_basis(x, y)):
                rep.extend(check_dinaturality(f, x, y, f"{prefix}[{x.name}->{y.name}#{k}]",
                                              js[id(x)], js[id(y)]))
    return rep


def check_coend_multiplication(x: Comodule, y: Comodule, prefix: str | None = None) -> Report:
    """``mu o (j_X (x) j_Y) o (X Y X^v Y^v -> X X^v Y Y^v) = j_{X (x) Y}``."""
    same_hopf(x.hopf, y.hopf)
    h = x.hopf
    p = prefix or f"coend_mul[{x.name},{y.name}]"
    a, b = x.dim, y.dim
    reorder = permute(h.field, (a, b, a, b), (0, 2, 1, 3))
    lhs = h.mul @ kronecker(dinatural_j(x, False), dinatural_j(y, False)) @ reorder
    rhs = dinatural_j(tensor_comodule(x, y), False)
    rep = Report(p)
    rep.add(compare(p, lhs, rhs, (h.dim,), (a, b, a, b)))
    return rep


# --------------------------------------------------------------------------
# universality


@dataclass
class Factorization:
    phi: LinearMap
    report: Report
    uniqueness_dim: int


def _regular_member(h: HopfAlgebraData, family):
    for x, alpha in family:
        if x.dim == h.dim and x.coaction == h.comul:
            return x, alpha
    raise CowedgeError("test family must contain the regular comodule")


def cowedge_factorize(alpha: Sequence[tuple[Comodule, LinearMap]], target: Bicomodule) -> Factorization:
    """Factor a co-wedge ``alpha_X: X (x) X^v -> T`` through ``j`` as ``phi: H~ -> T``.

    ``phi(h) = alpha_H(h (x) eps)``.  The family must be dinatural against the
    Hom bases between its members, and its members' morphism conditions are
    checked first.  Uniqueness is established by solving for all pairs
    ``(psi, c)`` with ``psi`` a bicomodule morphism and ``psi o j_X = c alpha_X``.
    """
    if not alpha:
        raise CowedgeError("empty co-wedge")
    h = target.hopf
    for x, _ in alpha:
        same_hopf(x.hopf, h)
    pre = Report("cowedge")
    for x, ax in alpha:
        if ax.shape != (target.dim, x.dim * x.dim):
            raise CowedgeError(f"alpha at {x.name} has shape {ax.shape}")
        pre.extend(check_bicomodule_morphism(f"cowedge.alpha[{x.name}]", ax, pairing_source(x), target))
    for x, ax in alpha:
        for y, ay in alpha:
            for k, f in enumerate(comodule_hom_basis(x, y)):
                pre.add(compare(f"cowedge.dinatural[{x.name}->{y.name}#{k}]",
                                ax @ kronecker(x.id, f.transpose()), ay @ kronecker(f, y.id)))
    if not pre.ok:
        raise CowedgeError(f"not a co-wedge: {[c.id for c in pre.failures][:5]}")

    reg, a_reg = _regular_member(h, alpha)
    phi = a_reg @ epsilon_section(h)
    ht = twisted_coend_algebra_cached(h)
    rep = Report("factorization")
    rep.extend(check_bicomodule_morphism("factorization.phi_intertwines", phi, ht.carrier, target))
    for x, ax in alpha:
        chk = rep.add(compare(f"factorization.recovers[{x.name}]", phi @ dinatural_j(x, False), ax))
        if not chk.passed:
            raise CowedgeError(f"factorization fails at {x.name}")

    sys = LinearSystem(h.field)
    psi = sys.matrix(target.dim, h.dim)
    c = sys.scalar()
    add_bicomodule_constraints(sys, "psi", psi, ht.carrier, target)
    for k, (x, ax) in enumerate(alpha):
        sys.add_term(("factor", k), psi, right=dinatural_j(x, False))
        sys.add_scalar_term(("factor", k), c, ax, coef=-1)
    sol = sys.solve()
    unique = sol.dim == 1 and sol.basis[0][c] != 0
    rep.require("factorization.unique", unique, f"solution space has dimension {sol.dim}")
    return Factorization(phi, rep, sol.dim)


def j_family(family: Sequence[Comodule]) -> list[tuple[Comodule, LinearMap]]:
    return [(x, dinatural_j(x, False)) for x in family]

