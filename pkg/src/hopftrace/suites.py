"""Named verification suites over a Hopf algebra and its standard test family.

Every suite returns a :class:`~hopftrace.report.Report`.  Checks that
quantify over pairs of objects skip pairs whose carriers are too large
(``budget`` bounds the product of the carrier dimensions); the skipped pairs
are listed in a single informational check so the restriction is visible.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable

from .bicomodules import (BicomoduleAlgebra, bicomodule_hom, check_bicomodule_algebra,
                          check_module_object, module_object_hom, tensor_bicomodule)
from .coend import (check_coend_multiplication, check_family_dinaturality, check_j,
                    cowedge_factorize, dinatural_j, epsilon_section, j_family)
from .comodules import (check_comodule, check_left_duality, check_right_duality,
                        comodule_hom, forced_right_dual_coactions, tensor_comodule)
from .hopf import HopfAlgebraData, check_antipode_antihomomorphism, check_hopf
from .linalg import LinearMap, identity, kronecker
from .report import Check, Report, compare, merge
from .trace import (HopfBimodule, ModuleLawError, balancing, center_structure,
                    check_balanced_axioms, check_balancing, check_beta_natural_in_comodule,
                    check_beta_natural_in_module, check_center_structure,
                    check_hopf_bimodule, forget, free_twisted_yd, gamma_to_rho, hom_hopf_bimodule,
                    induce, ordinary_yd_check, twisted_adjoint_action, adjoint_action,
                    twisted_yd_check, yd_induction)
from .zoo import StandardFamily, standard_test_family, sample_hopf_bimodules, sample_module_objects

SUITES = ("hopf", "comodule", "coend", "balancing", "center", "yd")
DEFAULT_BUDGET = 256


@dataclass
class Context:
    """A Hopf algebra, its test family and any extra objects loaded from a file."""
    hopf: HopfAlgebraData
    family: StandardFamily
    budget: int = DEFAULT_BUDGET
    extra_comodules: list = field(default_factory=list)
    extra_algebras: list = field(default_factory=list)
    extra_modules: list = field(default_factory=list)
    extra_bimodules: list = field(default_factory=list)
    extra_balancings: list = field(default_factory=list)
    family_checks: bool = True

    @classmethod
    def of(cls, h: HopfAlgebraData, budget: int = DEFAULT_BUDGET) -> "Context":
        return cls(h, standard_test_family(h), budget)

    @property
    def comodules(self):
        return (self.family.comodules if self.family_checks else []) + self.extra_comodules


def _pairs(items, budget, size=lambda a: a.dim):
    ok, skipped = [], []
    for a in items:
        for b in items:
            (ok if size(a) * size(b) <= budget else skipped).append((a, b))
    return ok, skipped


def _note_skipped(rep: Report, cid: str, skipped) -> None:
    if skipped:
        names = sorted({f"{a.name},{b.name}" for a, b in skipped})
        rep.add(Check(cid, True, "skipped over budget: " + "; ".join(names)))


# --------------------------------------------------------------------------


def suite_hopf(ctx: Context) -> Report:
    rep = Report("hopf")
    rep.extend(check_hopf(ctx.hopf, "hopf"))
    rep.extend(check_antipode_antihomomorphism(ctx.hopf), "hopf.")
    return rep


def suite_comodule(ctx: Context) -> Report:
    h = ctx.hopf
    rep = Report("comodule")
    for x in ctx.comodules:
        p = f"comodule[{x.name}]"
        rep.extend(check_comodule(x, p))
        rep.extend(check_right_duality(x, x.right_dual), "comodule.")
        rep.extend(check_left_duality(x, x.left_dual), "comodule.")
        sol = forced_right_dual_coactions(x)
        forced = sol.dim == 1 and sol.basis[0][-1] != 0
        if forced:
            D = sol.as_maps(h.dim * x.dim, x.dim)[0].scale(h.field.inv(sol.basis[0][-1]))
            forced = D == x.right_dual.dual.coaction
        rep.require(f"{p}.right_dual_forced", forced,
                    f"solution space of intertwining coactions has dimension {sol.dim}")
        back = x.right_dual.dual.left_dual.dual
        rep.add(compare(f"{p}.left_of_right_dual", back.coaction, x.coaction))
        rep.add(compare(f"{p}.double_dual_is_S-2_twist", x.double_dual.coaction,
                        kronecker(h.S_inv @ h.S_inv, x.id) @ x.coaction))
        ends = comodule_hom(x, x)
        rep.require(f"{p}.end_contains_id", ends.dim >= 1, "End(X) is zero")
    pairs, skipped = _pairs(ctx.comodules, ctx.budget)
    for x, y in pairs:
        xy = tensor_comodule(x, y)
        p = f"comodule.tensor[{x.name},{y.name}]"
        rep.extend(check_comodule(xy, p))
        rep.add(compare(f"{p}.double_dual_monoidal", xy.double_dual.coaction,
                        tensor_comodule(x.double_dual, y.double_dual).coaction))
    _note_skipped(rep, "comodule.tensor.skipped", skipped)
    return rep


def _cowedges(ctx: Context):
    """Three co-wedges ``u o j`` with ``u`` a bicomodule morphism out of ``H~``."""
    h = ctx.hopf
    ht = ctx.family.algebras[2]
    T2 = tensor_bicomodule(ht.carrier, ht.carrier)
    us = [("id", ht.carrier, h.id),
          ("unit_right", T2, kronecker(h.id, h.unit))]
    basis = bicomodule_hom(ht.carrier, T2).as_maps(T2.dim, h.dim)
    combo = basis[0]
    for k, b in enumerate(basis[1:], start=2):
        combo = combo + b.scale(k)
    us.append(("hom_combination", T2, combo))
    return us


def suite_coend(ctx: Context) -> Report:
    h = ctx.hopf
    fam = ctx.comodules
    rep = Report("coend")
    ht, hh = ctx.family.algebras[2], ctx.family.algebras[1]
    rep.extend(check_bicomodule_algebra(ht, "coend.H~"))
    rep.extend(check_bicomodule_algebra(hh, "coend.H^"))
    for x in fam:
        rep.extend(check_j(x, f"coend.j[{x.name}]"))
    rep.extend(check_family_dinaturality(fam, "coend.dinaturality"))
    reg = ctx.family.comodules[1]
    jH = dinatural_j(reg, False)
    rep.add(compare("coend.j_H_section", jH @ epsilon_section(h), h.id, (h.dim,), (h.dim,)))
    rep.require("coend.j_H_surjective", jH.rank() == h.dim, "rank of j_H is below dim H")
    rep.add(compare("coend.j_trivial_is_unit", dinatural_j(ctx.family.comodules[0], False), h.unit))
    base = [x for x in fam if x.dim <= max(h.dim, 4)]
    if ctx.family.comodules[1] not in base:
        base.append(ctx.family.comodules[1])
    for name, target, u in _cowedges(ctx):
        alpha = [(x, u @ j) for x, j in j_family(base)]
        fac = cowedge_factorize(alpha, target)
        rep.extend(fac.report, f"coend.cowedge[{name}].")
        rep.add(compare(f"coend.cowedge[{name}].recovers_u", fac.phi, u))
        rep.require(f"coend.cowedge[{name}].uniqueness_dim_1", fac.uniqueness_dim == 1,
                    f"dimension {fac.uniqueness_dim}")
    pairs, skipped = _pairs(fam, ctx.budget)
    for x, y in pairs:
        rep.extend(check_coend_multiplication(x, y, f"coend.multiplication[{x.name},{y.name}]"))
    _note_skipped(rep, "coend.multiplication.skipped", skipped)
    return rep


def _algebras(ctx: Context) -> list[BicomoduleAlgebra]:
    return (ctx.family.algebras if ctx.family_checks else []) + ctx.extra_algebras


def _modules(ctx: Context, b: BicomoduleAlgebra):
    mods = sample_module_objects(b, ctx.family) if ctx.family_checks else []
    return mods + [m for m in ctx.extra_modules if m.algebra is b]


def suite_balancing(ctx: Context) -> Report:
    h = ctx.hopf
    fam = ctx.comodules
    rep = Report("balancing")
    for b in _algebras(ctx):
        mods = _modules(ctx, b)
        for m in mods:
            tag = f"{b.name}:{m.name}"
            rep.extend(check_module_object(m, f"balancing.module[{tag}]"))
            for x in fam:
                if x.dim * m.dim * h.dim > 4 * ctx.budget:
                    continue
                w = balancing(m, x, verify=False)
                rep.extend(check_balancing(w, f"balancing.beta[{tag},{x.name}]"))
            pairs, skipped = _pairs(fam, ctx.budget // max(1, m.dim))
            for x, y in pairs:
                rep.extend(check_balanced_axioms(m, x, y, f"balancing.axioms[{tag};{x.name},{y.name}]"))
            _note_skipped(rep, f"balancing.axioms[{tag}].skipped", skipped)
        small = [x for x in fam if x.dim * h.dim <= ctx.budget]
        for m1 in mods:
            for m2 in mods:
                for x in small:
                    rep.extend(check_beta_natural_in_module(
                        m1, m2, x, f"balancing.natural_M[{b.name}:{m1.name}->{m2.name}@{x.name}]"))
            for x in small:
                for y in small:
                    rep.extend(check_beta_natural_in_comodule(
                        m1, x, y, f"balancing.natural_X[{b.name}:{x.name}->{y.name}@{m1.name}]"))
    for b in ctx.extra_algebras:
        rep.extend(check_bicomodule_algebra(b, f"balancing.algebra[{b.name}]"))
    for m, x, beta in ctx.extra_balancings:
        w = balancing(m, x, verify=False)
        tag = f"balancing.declared[{m.name},{x.name}]"
        rep.add(compare(f"{tag}.matches_formula", beta, w.beta))
        rep.extend(check_balancing(replace(w, beta=beta), tag))
    return rep


def _bimodules(ctx: Context, b: BicomoduleAlgebra) -> list[HopfBimodule]:
    mods = sample_hopf_bimodules(b, ctx.family) if ctx.family_checks else []
    return mods + [n for n in ctx.extra_bimodules if n.algebra is b]


def gamma_family(ctx: Context, n: HopfBimodule):
    base = [x for x in ctx.comodules if x.dim * n.dim <= ctx.budget * 2 or x is ctx.family.comodules[1]]
    out = list(base)
    for x in base:
        for y in base:
            if x.dim * y.dim <= ctx.hopf.dim and x.dim * y.dim * n.dim <= ctx.budget:
                out.append(tensor_comodule(x, y))
    return out


def corruptions(n: HopfBimodule):
    """Three corrupted left actions: scaled, reparametrized by a non-multiplicative map, and ``eps (x) id``."""
    h = n.hopf
    F = h.field
    rho = n.left_action
    last = h.dim - 1
    D = identity(F, h.dim) + LinearMap.from_entries(F, h.dim, h.dim, {(last, last): 1})
    return [("scale", rho.scale(2)),
            ("associativity", rho @ kronecker(D, n.carrier.id)),
            ("intertwining", kronecker(h.counit, n.carrier.id))]


def _detects(ctx: Context, n: HopfBimodule, rho) -> list[str]:
    """Failure kinds raised by a corrupted ``rho``; stops at the first stage that fails, cheapest first."""
    c = center_structure(n, gamma_family(ctx, n), rho)
    for morphisms in (False, True):
        rep = check_center_structure(c, morphisms)
        if not rep.ok:
            return sorted({f.id.split("[")[0].split(".")[1] for f in rep.failures})
    try:
        gamma_to_rho(c, rep)
    except ModuleLawError:
        return ["module_laws"]
    return []


def suite_center(ctx: Context) -> Report:
    h = ctx.hopf
    rep = Report("center")
    for b in _algebras(ctx):
        bims = _bimodules(ctx, b)
        for n in bims:
            tag = f"{b.name}:{n.name}"
            rep.extend(check_hopf_bimodule(n, f"center.bimodule[{tag}]"))
            fam = gamma_family(ctx, n)
            c = center_structure(n, fam)
            rep.extend(check_center_structure(c), f"center[{tag}]:")
            try:
                back = gamma_to_rho(c)
                rep.add(compare(f"center.round_trip[{tag}]", back.left_action, n.left_action))
            except ModuleLawError as exc:
                rep.add(Check(f"center.round_trip[{tag}]", False, str(exc)))
            if h.dim > 1 and n is bims[0]:
                for name, bad in corruptions(n):
                    hits = _detects(ctx, n, bad)
                    rep.require(f"center.corruption[{tag}:{name}].detected", bool(hits), "undetected")
        if ctx.family_checks:
            for m in sample_module_objects(b, ctx.family):
                for n in bims:
                    if induce(m).dim * n.dim > 81 * 81:
                        continue
                    lhs = hom_hopf_bimodule(induce(m), n).dim
                    rhs = module_object_hom(m, forget(n)).dim
                    rep.require(f"center.adjunction[{b.name}:{m.name},{n.name}]", lhs == rhs,
                                f"{lhs} != {rhs}")
    return rep


def _yd_structures(ctx: Context):
    """(label, comodule, action, expected twisted result or None)."""
    h = ctx.hopf
    reg = ctx.family.comodules[1]
    triv = ctx.family.comodules[0]
    s2_id = (h.S @ h.S) == h.id
    out = [("twisted_adjoint", reg, twisted_adjoint_action(h), True),
           ("trivial_counit", triv, h.counit, s2_id),
           ("adjoint", reg, adjoint_action(h), s2_id),
           ("regular", reg, h.mul, h.dim == 1)]
    for x in ctx.comodules:
        if x.dim * h.dim <= 16:
            fm, fa = free_twisted_yd(x)
            out.append((f"free[{x.name}]", fm, fa, True))
    return out


def suite_yd(ctx: Context) -> Report:
    h = ctx.hopf
    rep = Report("yd")
    hh = ctx.family.algebras[1]
    rep.extend(check_bicomodule_algebra(hh, "yd.H^"))
    s2_id = (h.S @ h.S) == h.id
    for label, x, act, expected in _yd_structures(ctx):
        tw = twisted_yd_check(x, act).ok
        rep.require(f"yd.twisted[{label}]", tw == expected,
                    f"twisted condition {'holds' if tw else 'fails'}, expected the opposite")
        if s2_id:
            rep.require(f"yd.coincides_with_ordinary[{label}]", tw == ordinary_yd_check(x, act).ok,
                        "twisted and ordinary conditions disagree although S^2 = id")
    ind = {}
    for x in ctx.comodules:
        if x.dim * h.dim <= ctx.budget:
            ind[id(x)] = yd_induction(x)
            rep.extend(check_module_object(ind[id(x)], f"yd.induction[{x.name}]"))
    pairs, skipped = _pairs([x for x in ctx.comodules if id(x) in ind], ctx.budget // h.dim,)
    for x, y in pairs:
        lhs = module_object_hom(ind[id(x)], ind[id(y)]).dim
        rhs = comodule_hom(x, y).dim
        rep.require(f"yd.fully_faithful[{x.name},{y.name}]", lhs == rhs, f"{lhs} != {rhs}")
    _note_skipped(rep, "yd.fully_faithful.skipped", skipped)
    return rep


RUNNERS: dict[str, Callable[[Context], Report]] = {
    "hopf": suite_hopf,
    "comodule": suite_comodule,
    "coend": suite_coend,
    "balancing": suite_balancing,
    "center": suite_center,
    "yd": suite_yd,
}


def run_suite(ctx: Context, suite: str, jobs: int = 1) -> Report:
    """Run one suite or ``all``; with ``jobs > 1`` the suites run concurrently.

    The merged report is sorted by check id, so the execution order is unobservable.
    """
    names = list(SUITES) if suite == "all" else [suite]
    for s in names:
        if s not in RUNNERS:
            raise KeyError(f"unknown suite {s!r}")
    start = time.perf_counter()
    if jobs > 1 and len(names) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(lambda s: RUNNERS[s](ctx), names))
    else:
        reports = [RUNNERS[s](ctx) for s in names]
    out = merge(suite, reports).sorted()
    out.wall_time = time.perf_counter() - start
    return out
