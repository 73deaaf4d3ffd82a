"""Left comodules over a Hopf algebra H: the tensor category comod H.

A coaction ``X -> H (x) X`` (Sweedler ``x -> x_(-1) (x) x_(0)``) is a matrix
with rows indexed by ``(a, i) -> a * dim X + i`` for basis ``h_a (x) x_i``.

Duality conventions (the zig-zag identities hold exactly and every
evaluation/coevaluation is a comodule morphism):

* right dual ``X^v``: ``ev: X^v (x) X -> k``, ``coev: k -> X (x) X^v``;
  coaction ``x^i -> S^{-1}(c_ij) (x) x^j``;
* left dual ``vX``: ``ev: X (x) vX -> k``, ``coev: k -> vX (x) X``;
  coaction ``x^i -> S(c_ij) (x) x^j``;

where ``x_j -> sum_i c_ij (x) x_i`` is the coaction of ``X``.  Dual bases are
indexed like the original basis, so ``(X^v)^v`` has the basis of ``X``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

from .hopf import HopfAlgebraData, StructureError
from .linalg import (LinearMap, LinearSystem, SolutionSpace, chain, codiagonal, flip, identity,
                     kronecker, permute, rank_of_vectors)
from .report import Check, Report, compare


class CompatibilityError(ValueError):
    """Objects over different Hopf algebras were combined."""


class ConstructionError(RuntimeError):
    """A construction that is forced by the theory failed its own check (a bug or corrupt input)."""


@dataclass(frozen=True, eq=False)
class Comodule:
    hopf: HopfAlgebraData
    dim: int
    coaction: LinearMap
    name: str = "X"

    def __post_init__(self):
        if self.coaction.shape != (self.hopf.dim * self.dim, self.dim):
            raise StructureError(
                f"coaction of {self.name} has shape {self.coaction.shape}, "
                f"expected {(self.hopf.dim * self.dim, self.dim)}")

    @property
    def field(self):
        return self.hopf.field

    @cached_property
    def id(self) -> LinearMap:
        return identity(self.field, self.dim)

    @cached_property
    def right_dual(self) -> "Duality":
        return right_dual(self)

    @cached_property
    def left_dual(self) -> "Duality":
        return left_dual(self)

    @cached_property
    def double_dual(self) -> "Comodule":
        return self.right_dual.dual.right_dual.dual

    def renamed(self, name: str) -> "Comodule":
        return Comodule(self.hopf, self.dim, self.coaction, name)

    def __repr__(self):
        return f"Comodule({self.name!r}, dim={self.dim}, over={self.hopf.name})"


class Duality(NamedTuple):
    dual: Comodule
    ev: LinearMap
    coev: LinearMap


def same_hopf(a: HopfAlgebraData, b: HopfAlgebraData) -> None:
    if not a.same_structure(b):
        raise CompatibilityError(f"objects live over different Hopf algebras ({a.name} vs {b.name})")


# --------------------------------------------------------------------------
# constructions


def trivial_comodule(h: HopfAlgebraData) -> Comodule:
    return Comodule(h, 1, h.unit, "k")


def regular_comodule(h: HopfAlgebraData) -> Comodule:
    return Comodule(h, h.dim, h.comul, "H")


def grouplike_comodule(h: HopfAlgebraData, g, name: str | None = None) -> Comodule:
    """One-dimensional comodule ``v -> g (x) v`` for a grouplike ``g``."""
    col = h.element(g)
    return Comodule(h, 1, col, name or "k_" + "".join(h.field.format(c) for c in g))


def subcomodule(x: Comodule, basis_columns: LinearMap, name: str) -> Comodule:
    """Restrict the coaction to the subspace spanned by the given columns (must be invariant)."""
    h = x.hopf
    inc = basis_columns
    # solve (id (x) inc) D = coaction o inc for D
    image = x.coaction @ inc
    lifted = kronecker(h.id, inc)
    sys = LinearSystem(x.field)
    D = sys.matrix(h.dim * inc.cols, inc.cols)
    c = sys.scalar()
    sys.add_term("sub", D, left=lifted)
    sys.add_scalar_term("sub", c, image, coef=-1)
    sol = sys.solve()
    for v, D_map in zip(sol.basis, sol.as_maps(D.rows, D.cols)):
        if v[c] != 0:
            return Comodule(h, inc.cols, D_map.scale(x.field.inv(v[c])), name)
    raise ConstructionError("subspace is not a subcomodule")


def tensor_comodule(x: Comodule, y: Comodule) -> Comodule:
    """``x (x) y -> x_(-1) y_(-1) (x) x_(0) (x) y_(0)``."""
    same_hopf(x.hopf, y.hopf)
    h = x.hopf
    coaction = codiagonal(h.mul, x.coaction, y.coaction)
    return Comodule(h, x.dim * y.dim, coaction, f"({x.name}*{y.name})")


def _pairing(field, n: int) -> tuple[LinearMap, LinearMap]:
    """``sum_i e^i (x) e_i -> 1`` as a row, and ``1 -> sum_i e_i (x) e^i`` as a column."""
    row = LinearMap(field, 1, n * n, {0: {i * n + i: 1 for i in range(n)}})
    return row, row.transpose()


def _twisted_transpose_coaction(x: Comodule, twist: LinearMap) -> LinearMap:
    """Coaction ``x^i -> sum_j twist(c_ij) (x) x^j`` on the dual space."""
    h, n = x.hopf, x.dim
    data: dict[int, dict[int, object]] = {}
    cols: dict[int, list] = {}
    for a, b, s in twist.nonzero():
        cols.setdefault(b, []).append((a, s))
    for row, j, v in x.coaction.nonzero():
        b, i = divmod(row, n)
        for a, s in cols.get(b, ()):
            r = data.setdefault(a * n + j, {})
            r[i] = r.get(i, 0) + s * v
    return LinearMap(h.field, h.dim * n, n, data)


def right_dual(x: Comodule) -> Duality:
    h, n = x.hopf, x.dim
    dual = Comodule(h, n, _twisted_transpose_coaction(x, h.S_inv), f"{x.name}^v")
    ev, coev = _pairing(h.field, n)
    duality = Duality(dual, ev, coev)
    rep = check_right_duality(x, duality)
    if not rep.ok:
        raise ConstructionError(f"right dual of {x.name} failed: {[c.id for c in rep.failures]}")
    return duality


def left_dual_coaction(x: Comodule, antipode: LinearMap | None = None) -> LinearMap:
    """``tau o (id (x) S (x) ev~) o (id (x) delta_X (x) id) o (coev~ (x) id)`` on ``vX``."""
    h, n = x.hopf, x.dim
    F = h.field
    S = h.S if antipode is None else antipode
    ev_l, coev_l = _pairing(F, n)  # ev~: X (x) vX -> k, coev~: k -> vX (x) X
    I = identity(F, n)
    return chain(
        flip(F, n, h.dim),
        kronecker(kronecker(I, S), ev_l),
        kronecker(kronecker(I, x.coaction), I),
        kronecker(coev_l, I))


def left_dual(x: Comodule) -> Duality:
    h, n = x.hopf, x.dim
    dual = Comodule(h, n, left_dual_coaction(x), f"v{x.name}")
    ev, coev = _pairing(h.field, n)
    duality = Duality(dual, ev, coev)
    rep = check_left_duality(x, duality)
    if not rep.ok:
        raise ConstructionError(f"left dual of {x.name} failed: {[c.id for c in rep.failures]}")
    return duality


def dual_morphism(f: LinearMap) -> LinearMap:
    """Transpose: ``f: X -> Y`` gives ``f^v: Y^v -> X^v`` in dual bases."""
    return f.transpose()


# --------------------------------------------------------------------------
# checks


def check_comodule(x: Comodule, prefix: str | None = None) -> Report:
    prefix = prefix or f"comodule[{x.name}]"
    h = x.hopf
    n = h.dim
    rep = Report(prefix)
    d = x.coaction
    rep.add(compare(f"{prefix}.coassociativity", kronecker(h.comul, x.id) @ d,
                    kronecker(h.id, d) @ d, (n, n, x.dim), (x.dim,)))
    rep.add(compare(f"{prefix}.counit", kronecker(h.counit, x.id) @ d, x.id, (x.dim,), (x.dim,)))
    return rep


def is_comodule_morphism(f: LinearMap, x: Comodule, y: Comodule) -> bool:
    return kronecker(x.hopf.id, f) @ x.coaction == y.coaction @ f


def check_morphism(check_id: str, f: LinearMap, x: Comodule, y: Comodule) -> Check:
    return compare(check_id, kronecker(x.hopf.id, f) @ x.coaction, y.coaction @ f,
                   (x.hopf.dim, y.dim), (x.dim,))


def check_right_duality(x: Comodule, d: Duality) -> Report:
    I = x.id
    p = f"right_dual[{x.name}]"
    rep = Report(p)
    rep.add(compare(f"{p}.zigzag_X", kronecker(I, d.ev) @ kronecker(d.coev, I), I))
    rep.add(compare(f"{p}.zigzag_Xv", kronecker(d.ev, I) @ kronecker(I, d.coev), I))
    unit = trivial_comodule(x.hopf)
    rep.add(check_morphism(f"{p}.ev_intertwines", d.ev, tensor_comodule(d.dual, x), unit))
    rep.add(check_morphism(f"{p}.coev_intertwines", d.coev, unit, tensor_comodule(x, d.dual)))
    rep.extend(check_comodule(d.dual, f"{p}.dual"))
    return rep


def check_left_duality(x: Comodule, d: Duality) -> Report:
    I = x.id
    p = f"left_dual[{x.name}]"
    rep = Report(p)
    rep.add(compare(f"{p}.zigzag_X", kronecker(d.ev, I) @ kronecker(I, d.coev), I))
    rep.add(compare(f"{p}.zigzag_vX", kronecker(I, d.ev) @ kronecker(d.coev, I), I))
    unit = trivial_comodule(x.hopf)
    rep.add(check_morphism(f"{p}.ev_intertwines", d.ev, tensor_comodule(x, d.dual), unit))
    rep.add(check_morphism(f"{p}.coev_intertwines", d.coev, unit, tensor_comodule(d.dual, x)))
    rep.extend(check_comodule(d.dual, f"{p}.dual"))
    return rep


def forced_right_dual_coactions(x: Comodule) -> SolutionSpace:
    """All pairs ``(D, c)`` with ev and coev intertwining ``c * unit``-coactions.

    ``D`` ranges over coactions on the dual space (no axioms imposed) and
    ``c`` is a scalar; uniqueness of the right-dual coaction means this space
    is one-dimensional with ``c != 0``.
    """
    h, n = x.hopf, x.dim
    F = h.field
    N = h.dim
    ev, coev = _pairing(F, n)
    sys = LinearSystem(F)
    D = sys.matrix(N * n, n)
    c = sys.scalar()
    # ev: (mu (x) ev) o P o (D (x) delta_X) = c * eta (x) ev
    left = chain(kronecker(h.mul, ev), permute(F, (N, n, N, n), (0, 2, 1, 3)),
                 kronecker(identity(F, N * n), x.coaction))
    sys.add_term("ev", D, left=left, a=1, b=n)
    sys.add_scalar_term("ev", c, kronecker(h.unit, ev), coef=-1)
    # coev: (mu (x) id) o P o (delta_X (x) D) o coev = c * eta (x) coev
    left = chain(kronecker(h.mul, identity(F, n * n)), permute(F, (N, n, N, n), (0, 2, 1, 3)),
                 kronecker(x.coaction, identity(F, N * n)))
    sys.add_term("coev", D, left=left, right=coev, a=n, b=1)
    sys.add_scalar_term("coev", c, kronecker(h.unit, coev), coef=-1)
    return sys.solve()


# --------------------------------------------------------------------------
# morphism spaces


def comodule_hom(x: Comodule, y: Comodule) -> SolutionSpace:
    """Basis (as flattened ``y.dim x x.dim`` matrices) of all comodule maps ``x -> y``."""
    same_hopf(x.hopf, y.hopf)
    sys = LinearSystem(x.field)
    F = sys.matrix(y.dim, x.dim)
    add_coaction_constraint(sys, "coaction", F, x.coaction, y.coaction, x.hopf.dim)
    return sys.solve()


def comodule_hom_basis(x: Comodule, y: Comodule) -> list[LinearMap]:
    return comodule_hom(x, y).as_maps(y.dim, x.dim)


def add_coaction_constraint(sys: LinearSystem, key, F, src_left: LinearMap, tgt_left: LinearMap,
                            hdim: int) -> None:
    """``(id_H (x) F) o src = tgt o F`` for left coactions."""
    sys.add_term(key, F, right=src_left, a=hdim, b=1)
    sys.add_term(key, F, left=tgt_left, coef=-1)


def add_right_coaction_constraint(sys: LinearSystem, key, F, src_right: LinearMap,
                                  tgt_right: LinearMap, hdim: int) -> None:
    """``(F (x) id_H) o src = tgt o F`` for right coactions."""
    sys.add_term(key, F, right=src_right, a=1, b=hdim)
    sys.add_term(key, F, left=tgt_right, coef=-1)


def cyclic_subcomodule(x: Comodule, vector, name: str | None = None) -> Comodule:
    """The subcomodule generated by one vector: the span of its right coaction legs."""
    h = x.hopf
    v = LinearMap.from_columns(x.field, x.dim, [[x.field(c) for c in vector]])
    image = x.coaction @ v
    legs = []
    for a in range(h.dim):
        legs.append([image[a * x.dim + i, 0] for i in range(x.dim)])
    basis = _independent(x.field, legs)
    inc = LinearMap.from_columns(x.field, x.dim, basis)
    return subcomodule(x, inc, name or f"<{x.name}>")


def _independent(field, vectors) -> list[list]:
    chosen: list[list] = []
    for v in vectors:
        if any(c != 0 for c in v) and rank_of_vectors(field, chosen + [v]) > len(chosen):
            chosen.append(list(v))
    return chosen
