"""Built-in Hopf algebras with fixed, documented basis orders.

* ``group_algebra(n)``: basis ``g^0 .. g^{n-1}``.
* ``function_algebra(n)``: basis of indicator functions ``d_0 .. d_{n-1}`` on Z/n.
* ``sweedler_h4()``: basis ``1, g, x, gx``.
* ``taft(n, q)``: basis ``g^i x^j`` at index ``j*n + i`` (so ``taft(2, -1)`` has
  basis ``1, g, x, gx``).
"""

from __future__ import annotations

from dataclasses import dataclass

from .bicomodules import left_act, regular_module_object, trivial_bicomodule_algebra
from .coend import hat_algebra, twisted_coend_algebra
from .comodules import (cyclic_subcomodule, grouplike_comodule, regular_comodule, tensor_comodule,
                        trivial_comodule)
from .hopf import (AlgebraData, CoalgebraData, HopfAlgebraData, grouplike_elements,
                   tensor_square_mul)
from .linalg import QQ, LinearMap, column_vector, kronecker
from .trace import induce, regular_hopf_bimodule


def _hopf(field, n, mul, unit, comul, counit, antipode, name, basis):
    return HopfAlgebraData(
        AlgebraData(n, LinearMap.from_entries(field, n, n * n, mul),
                    LinearMap.from_entries(field, n, 1, unit)),
        CoalgebraData(n, LinearMap.from_entries(field, n * n, n, comul),
                      LinearMap.from_entries(field, 1, n, counit)),
        LinearMap.from_entries(field, n, n, antipode),
        name, tuple(basis))


def group_algebra(n: int, field=QQ) -> HopfAlgebraData:
    """Group algebra of the cyclic group Z/n."""
    if n < 1:
        raise ValueError("group order must be positive")
    mul = {((i + j) % n, i * n + j): 1 for i in range(n) for j in range(n)}
    comul = {(i * n + i, i): 1 for i in range(n)}
    counit = {(0, i): 1 for i in range(n)}
    antipode = {((-i) % n, i): 1 for i in range(n)}
    return _hopf(field, n, mul, {(0, 0): 1}, comul, counit, antipode,
                 f"k[Z/{n}]", [f"g^{i}" for i in range(n)])


def function_algebra(n: int, field=QQ) -> HopfAlgebraData:
    """Functions on Z/n: pointwise product, coproduct dual to the group law."""
    if n < 1:
        raise ValueError("group order must be positive")
    mul = {(i, i * n + i): 1 for i in range(n)}
    unit = {(i, 0): 1 for i in range(n)}
    comul = {(b * n + c, (b + c) % n): 1 for b in range(n) for c in range(n)}
    counit = {(0, 0): 1}
    antipode = {((-i) % n, i): 1 for i in range(n)}
    return _hopf(field, n, mul, unit, comul, counit, antipode,
                 f"k^(Z/{n})", [f"d_{i}" for i in range(n)])


def sweedler_h4(field=QQ) -> HopfAlgebraData:
    """Sweedler's four-dimensional algebra: g^2 = 1, x^2 = 0, xg = -gx."""
    if field.characteristic == 2:
        raise ValueError("Sweedler's algebra needs characteristic != 2")
    ONE, G, X, GX = range(4)
    table = {
        (ONE, ONE): {ONE: 1}, (ONE, G): {G: 1}, (ONE, X): {X: 1}, (ONE, GX): {GX: 1},
        (G, ONE): {G: 1}, (G, G): {ONE: 1}, (G, X): {GX: 1}, (G, GX): {X: 1},
        (X, ONE): {X: 1}, (X, G): {GX: -1},
        (GX, ONE): {GX: 1}, (GX, G): {X: -1},
    }
    mul = {(k, a * 4 + b): v for (a, b), out in table.items() for k, v in out.items()}
    comul = {
        (ONE * 4 + ONE, ONE): 1,
        (G * 4 + G, G): 1,
        (X * 4 + ONE, X): 1, (G * 4 + X, X): 1,
        (GX * 4 + G, GX): 1, (ONE * 4 + GX, GX): 1,
    }
    counit = {(0, ONE): 1, (0, G): 1}
    antipode = {(ONE, ONE): 1, (G, G): 1, (GX, X): -1, (X, GX): 1}
    return _hopf(field, 4, mul, {(ONE, 0): 1}, comul, counit, antipode,
                 "H4", ["1", "g", "x", "gx"])


def _is_primitive_root(field, q, n) -> bool:
    def pw(k):
        r = field.one
        for _ in range(k):
            r = field.normalize(r * q)
        return r
    return pw(n) == field.one and all(pw(k) != field.one for k in range(1, n))


def taft(n: int, q, field) -> HopfAlgebraData:
    """Taft algebra: g^n = 1, x^n = 0, xg = q gx, Delta x = x(x)1 + g(x)x."""
    q = field(q)
    if n < 2 or not _is_primitive_root(field, q, n):
        raise ValueError(f"{q} is not a primitive {n}-th root of unity in {field!r}")
    dim = n * n
    idx = lambda i, j: j * n + i  # noqa: E731  basis element g^i x^j

    def qpow(k):
        r = field.one
        for _ in range(k % n):
            r = field.normalize(r * q)
        return r

    mul = {}
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    if b + d < n:
                        mul[(idx((a + c) % n, b + d), idx(a, b) * dim + idx(c, d))] = qpow(b * c)
    unit = {(idx(0, 0), 0): 1}
    mul_map = LinearMap.from_entries(field, dim, dim * dim, mul)
    alg = AlgebraData(dim, mul_map, LinearMap.from_entries(field, dim, 1, unit))

    def vec(entries):
        col = [field.zero] * dim
        for k, v in entries.items():
            col[k] = v
        return column_vector(field, col)

    def times(m, u, v):
        return m @ kronecker(u, v)

    one, g, x = vec({idx(0, 0): 1}), vec({idx(1, 0): 1}), vec({idx(0, 1): 1})
    # Delta and S on generators, extended (anti)multiplicatively
    pair_mul = tensor_square_mul(HopfAlgebraData(
        alg, CoalgebraData(dim, LinearMap(field, dim * dim, dim), LinearMap(field, 1, dim)),
        LinearMap(field, dim, dim)))
    d_one, d_g = kronecker(one, one), kronecker(g, g)
    d_x = kronecker(x, one) + kronecker(g, x)
    g_inv = vec({idx(n - 1, 0): 1})
    s_g = g_inv
    s_x = times(mul_map, g_inv, x).scale(-1)
    comul_cols, s_cols = [None] * dim, [None] * dim
    for j in range(n):
        for i in range(n):
            d, s = d_one, one
            for _ in range(i):
                d = times(pair_mul, d, d_g)
                s = times(mul_map, s_g, s)
            for _ in range(j):
                d = times(pair_mul, d, d_x)
                s = times(mul_map, s_x, s)
            comul_cols[idx(i, j)] = d.column(0)
            s_cols[idx(i, j)] = s.column(0)
    counit = {(0, idx(i, 0)): 1 for i in range(n)}
    basis = []
    for j in range(n):
        for i in range(n):
            gpart = "" if i == 0 else ("g" if i == 1 else f"g^{i}")
            xpart = "" if j == 0 else ("x" if j == 1 else f"x^{j}")
            basis.append((gpart + xpart) or "1")
    return HopfAlgebraData(
        alg,
        CoalgebraData(dim, LinearMap.from_columns(field, dim * dim, comul_cols),
                      LinearMap.from_entries(field, 1, dim, counit)),
        LinearMap.from_columns(field, dim, s_cols),
        f"T_{n}(q={field.format(q)})", tuple(basis))


# --------------------------------------------------------------------------
# standard test families


@dataclass
class StandardFamily:
    hopf: HopfAlgebraData
    comodules: list
    algebras: list

    def comodule(self, name: str):
        for x in self.comodules:
            if x.name == name:
                return x
        raise KeyError(name)

    def algebra(self, name: str):
        for b in self.algebras:
            if b.name == name:
                return b
        raise KeyError(name)


def _grouplike_name(h: HopfAlgebraData, g) -> str:
    nz = [i for i, c in enumerate(g) if c != 0]
    if len(nz) == 1 and g[nz[0]] == 1:
        return "k_" + h.basis[nz[0]]
    return "k_(" + ",".join(h.field.format(c) for c in g) + ")"


def small_comodule(h: HopfAlgebraData):
    """A cyclic subcomodule of the regular comodule of the smallest dimension above one.

    Used in place of ``H (x) H`` when ``dim H > 4`` to keep pair checks at desk scale.
    """
    reg = regular_comodule(h)
    best = None
    for i in range(h.dim):
        v = [h.field.one if k == i else h.field.zero for k in range(h.dim)]
        sub = cyclic_subcomodule(reg, v, f"<{h.basis[i]}>")
        if sub.dim > 1 and (best is None or sub.dim < best.dim):
            best = sub
    return best


def standard_test_family(h: HopfAlgebraData, tensor_square_limit: int = 4) -> StandardFamily:
    """Comodules ``{k, H, grouplike simples, H (x) H}`` and bicomodule algebras ``{k, H^, H~}``.

    For ``dim H > tensor_square_limit`` the last comodule is ``V (x) V`` for a
    small cyclic subcomodule ``V`` instead of ``H (x) H``.
    """
    reg = regular_comodule(h)
    comods = [trivial_comodule(h), reg]
    for g in grouplike_elements(h)[1:]:
        comods.append(grouplike_comodule(h, g, _grouplike_name(h, g)))
    if h.dim <= tensor_square_limit:
        comods.append(tensor_comodule(reg, reg).renamed("H*H"))
    else:
        v = small_comodule(h)
        if v is not None:
            comods.append(tensor_comodule(v, v).renamed(f"{v.name}*{v.name}"))
    algebras = [trivial_bicomodule_algebra(h), hat_algebra(h), twisted_coend_algebra(h)]
    return StandardFamily(h, comods, algebras)


def sample_module_objects(b, family: StandardFamily, max_dim: int = 16) -> list:
    """``B`` as a right module over itself and ``X |> B`` for non-trivial grouplike simples ``X``."""
    reg = regular_module_object(b)
    out = [reg]
    for x in family.comodules:
        if x.dim == 1 and x.coaction != family.hopf.unit and x.dim * b.dim <= max_dim:
            out.append(left_act(x, reg))
            break
    return out


def sample_hopf_bimodules(b, family: StandardFamily, max_dim: int = 81) -> list:
    """Induced objects over ``B`` plus ``H~`` regular when ``B`` is trivial or ``H~``."""
    out = [induce(m) for m in sample_module_objects(b, family) if m.dim * b.hopf.dim <= max_dim]
    ht = family.algebras[2]
    if b.dim == 1:
        out.append(regular_hopf_bimodule(family.hopf))
    elif b is ht:
        out.append(regular_hopf_bimodule(family.hopf, ht))
    return out


ZOO = {
    "group_algebra": group_algebra,
    "function_algebra": function_algebra,
    "sweedler_h4": sweedler_h4,
    "taft": taft,
}
