"""Command-line entry point: ``hopftrace verify | hom | trace | report``.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage or
parse errors.  Inputs are definition files (see :mod:`hopftrace.fileformat`)
or built-in algebras named ``zoo:NAME`` or ``zoo:NAME(args)``, e.g.
``zoo:sweedler_h4``, ``zoo:group_algebra(3)``, ``zoo:taft(3,2,7)``.  The
field for built-in algebras comes from ``--field`` or ``HOPFTRACE_FIELD``
(``rational`` or ``prime:p``).
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time

from .bicomodules import bicomodule_hom, check_bicomodule_algebra, check_module_object, module_object_hom
from .comodules import comodule_hom
from .fileformat import (Balancing, DefinitionError, DefinitionFile, dumps, export_family, kind_of, load,
                         to_triples)
from .hopf import HopfAlgebraData
from .linalg import QQ, GF
from .report import Check, Report, report_from_dict
from .suites import DEFAULT_BUDGET, SUITES, Context, gamma_family, run_suite, suite_hopf
from .trace import (ModuleLawError, balancing, center_structure, check_balancing, check_center_structure,
                    check_hopf_bimodule, gamma_to_rho, hom_hopf_bimodule, induce, yd_induction)
from .zoo import ZOO, standard_test_family

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
FIELD_ENV = "HOPFTRACE_FIELD"


class UsageError(Exception):
    pass


def parse_field(text: str):
    t = text.strip().lower()
    if t in ("rational", "qq", "q"):
        return QQ
    m = re.fullmatch(r"(?:prime:|gf\()?(\d+)\)?", t)
    if not m:
        raise UsageError(f"unknown field {text!r}; use 'rational' or 'prime:p'")
    try:
        return GF(int(m.group(1)))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def zoo_algebra(spec: str, field) -> HopfAlgebraData:
    m = re.fullmatch(r"zoo:(\w+)(?:\(([\d,\s]*)\))?", spec.strip())
    if not m or m.group(1) not in ZOO:
        raise UsageError(f"unknown zoo entry {spec!r}; known: {', '.join(sorted(ZOO))}")
    name = m.group(1)
    args = [int(a) for a in (m.group(2) or "").split(",") if a.strip()]
    try:
        if name == "taft":
            if len(args) == 3:
                field = GF(args.pop())
            if len(args) != 2:
                raise UsageError("taft takes (n, q) or (n, q, p)")
            return ZOO[name](args[0], args[1], field)
        return ZOO[name](*args, field=field)
    except TypeError as exc:
        raise UsageError(f"{spec}: {exc}") from None
    except ValueError as exc:
        raise UsageError(f"{spec}: {exc}") from None


def _field_arg(args):
    raw = args.field or os.environ.get(FIELD_ENV) or "rational"
    return parse_field(raw)


def load_input(args) -> tuple[DefinitionFile, bool]:
    """The definition file for ``args.input`` and whether it is a built-in algebra."""
    if args.input.startswith("zoo:"):
        return export_family(zoo_algebra(args.input, _field_arg(args))), True
    try:
        return load(args.input), False
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
    except DefinitionError as exc:
        raise UsageError(f"{args.input}: {exc}") from None


def lookup(doc: DefinitionFile, name: str, kinds: tuple[str, ...] | None = None):
    """Resolve ``name``; ``yd:X`` and ``induce:M`` build objects from file entries.

    Built-in exports prefix keys with a kind tag (``comod H``), so an unprefixed
    name is accepted when exactly one key ends with it.
    """
    if name.startswith("yd:"):
        return name, yd_induction(lookup(doc, name[3:], ("comodule",))[1])
    if name.startswith("induce:"):
        return name, induce(lookup(doc, name[7:], ("module_object",))[1])

    def fits(k):
        return not kinds or kind_of(doc.objects[k]) in kinds

    hits = [name] if name in doc.objects and fits(name) else []
    if not hits:
        hits = [k for k in doc.objects if k.split(" ", 1)[-1] == name and fits(k)]
    if len(hits) != 1:
        want = f" of kind {'/'.join(kinds)}" if kinds else ""
        if hits:
            raise UsageError(f"{name!r} is ambiguous{want}: {', '.join(sorted(hits))}")
        raise UsageError(f"no object named {name!r}{want}")
    return hits[0], doc.objects[hits[0]]


def pick_hopf(doc: DefinitionFile, name: str | None) -> HopfAlgebraData:
    hopfs = doc.of_kind("hopf_algebra")
    if name is not None:
        return lookup(doc, name, ("hopf_algebra",))[1]
    if len(hopfs) != 1:
        raise UsageError(f"file declares {len(hopfs)} Hopf algebras; choose one with --hopf")
    return next(iter(hopfs.values()))


def build_context(doc: DefinitionFile, h: HopfAlgebraData, builtin: bool, budget: int) -> Context:
    ctx = Context.of(h, budget)
    if builtin:
        return ctx
    for obj in doc.objects.values():
        kind = kind_of(obj)
        if kind == "hopf_algebra" or obj.hopf is not h:
            continue
        if kind == "comodule":
            # family duplicates add cost without coverage
            if not any(x.dim == obj.dim and x.coaction == obj.coaction for x in ctx.comodules):
                ctx.extra_comodules.append(obj)
        elif kind == "bicomodule_algebra":
            ctx.extra_algebras.append(obj)
        elif kind == "module_object":
            ctx.extra_modules.append(obj)
        elif kind == "hopf_bimodule":
            ctx.extra_bimodules.append(obj)
        else:
            ctx.extra_balancings.append((obj.module, obj.comodule, obj.matrix))
    return ctx


def emit(rep: Report, fmt: str, timing: bool = True, stream=None) -> None:
    stream = stream or sys.stdout
    if fmt == "json":
        stream.write(rep.to_json(timing) + "\n")
    else:
        stream.write(rep.to_text() + "\n")


# --------------------------------------------------------------------------
# subcommands


def cmd_verify(args) -> int:
    doc, builtin = load_input(args)
    h = pick_hopf(doc, args.hopf)
    start = time.perf_counter()
    base = Report(args.suite)
    base.extend(suite_hopf(Context(h, None, family_checks=False)))
    if args.suite == "hopf" or not base.ok:
        if args.suite != "hopf":
            base.add(Check("prerequisite.hopf", False, f"suite {args.suite} needs a valid Hopf algebra"))
        rep = base.sorted()
    else:
        try:
            ctx = build_context(doc, h, builtin, args.budget)
            rep = run_suite(ctx, args.suite, args.jobs)
        except ValueError as exc:  # construction failures inside the test family
            rep = Report(args.suite, [Check("setup", False, str(exc))])
    rep.wall_time = time.perf_counter() - start
    emit(rep, args.format, not args.no_timing)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(rep.to_json(not args.no_timing) + "\n")
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_hom(args) -> int:
    doc, _ = load_input(args)
    kinds = ("comodule", "bicomodule_algebra", "module_object", "hopf_bimodule")
    na, a = lookup(doc, args.source, kinds)
    nb, b = lookup(doc, args.target, kinds)
    ka, kb = kind_of(a), kind_of(b)
    if ka != kb:
        raise UsageError(f"{na} is a {ka} but {nb} is a {kb}")
    try:
        if ka == "comodule":
            sol = comodule_hom(a, b)
        elif ka == "bicomodule_algebra":
            sol = bicomodule_hom(a.carrier, b.carrier)
        elif ka == "module_object":
            sol = module_object_hom(a, b)
        else:
            sol = hom_hopf_bimodule(a, b)
    except ValueError as exc:
        raise UsageError(f"incompatible objects: {exc}") from None
    out = {"kind": ka, "source": na, "target": nb, "dim": sol.dim}
    if args.basis:
        out["basis"] = [to_triples(f, (a.dim,), (b.dim,)) for f in sol.as_maps(b.dim, a.dim)]
    if args.format == "json":
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        print(f"dim Hom({na}, {nb}) = {sol.dim}")
        for k, entries in enumerate(out.get("basis", [])):
            print(f"basis[{k}]: " + json.dumps(entries))
    return EXIT_OK


def trace_report(b, m, budget: int = DEFAULT_BUDGET):
    """Checks run before ``trace`` emits anything, plus the induced object and the β witnesses."""
    h = b.hopf
    rep = Report("trace")
    rep.extend(check_bicomodule_algebra(b, "trace.algebra"))
    rep.extend(check_module_object(m, "trace.module"))
    if not rep.ok:
        return rep, None, []
    n = induce(m)
    rep.extend(check_hopf_bimodule(n, "trace.induced"))
    ctx = Context(h, standard_test_family(h), budget)
    fam = gamma_family(ctx, n)
    c = center_structure(n, fam)
    rep.extend(check_center_structure(c), "trace.center:")
    try:
        rep.add(Check("trace.center.round_trip", gamma_to_rho(c).left_action == n.left_action))
    except ModuleLawError as exc:
        rep.add(Check("trace.center.round_trip", False, str(exc)))
    witnesses = []
    for x in ctx.family.comodules:
        if x.dim * m.dim * h.dim > 4 * budget:
            continue
        w = balancing(m, x, verify=False)
        rep.extend(check_balancing(w, f"trace.beta[{x.name}]"))
        witnesses.append(w)
    return rep, n, witnesses


def cmd_trace(args) -> int:
    doc, _ = load_input(args)
    nb, b = lookup(doc, args.algebra, ("bicomodule_algebra",))
    nm, m = lookup(doc, args.module, ("module_object",))
    if m.algebra is not b:
        raise UsageError(f"{nm} is not a module object over {nb}")
    rep, n, witnesses = trace_report(b, m, args.budget)
    if not rep.ok:
        sys.stderr.write("trace: invariant failure, nothing emitted\n")
        emit(rep, "text", stream=sys.stderr)
        return EXIT_FAIL
    h = b.hopf
    nh = next(k for k, v in doc.objects.items() if v is h)
    out = DefinitionFile(h.field, {nh: h, nb: b, nm: m, f"induce({nm})": n})
    for w in witnesses:
        out.objects[f"comod {w.comodule.name}"] = w.comodule
        out.objects[f"beta {w.comodule.name}"] = Balancing(w.module, w.comodule, w.beta)
    text = dumps(out)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.output}: induce({nm}) of dimension {n.dim}, {len(witnesses)} balancings, "
              f"{rep.n_passed} checks passed")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_report(args) -> int:
    try:
        with open(args.report, encoding="utf-8") as fh:
            rep = report_from_dict(json.load(fh))
    except OSError as exc:
        raise UsageError(f"cannot read {args.report}: {exc.strerror}") from None
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise UsageError(f"{args.report} is not a saved report: {exc}") from None
    emit(rep, args.format, not args.no_timing)
    return EXIT_OK if rep.ok else EXIT_FAIL


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help=f"field for zoo inputs: rational or prime:p (default ${FIELD_ENV} or rational)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="bound on carrier-dimension products in pairwise checks")

    p = argparse.ArgumentParser(prog="hopftrace", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("input", help="definition file or zoo:NAME")
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    v.add_argument("--jobs", type=int, default=1, help="run suites concurrently")
    v.add_argument("--hopf", help="Hopf algebra to use when the file declares several")
    v.add_argument("-o", "--output", help="also save the report as JSON")
    v.add_argument("--no-timing", action="store_true", help="omit wall time from output")
    v.set_defaults(func=cmd_verify)

    hm = sub.add_parser("hom", parents=[common], help="dimension of a Hom space")
    hm.add_argument("input")
    hm.add_argument("source")
    hm.add_argument("target")
    hm.add_argument("--basis", action="store_true", help="print a basis as sparse triples")
    hm.set_defaults(func=cmd_hom)

    t = sub.add_parser("trace", parents=[common], help="induce a module object and emit it with its balancings")
    t.add_argument("input")
    t.add_argument("algebra", help="bicomodule algebra B")
    t.add_argument("module", help="module object M over B")
    t.add_argument("-o", "--output", help="write the definition file here instead of stdout")
    t.set_defaults(func=cmd_trace)

    r = sub.add_parser("report", parents=[common], help="reformat a report saved by verify -o")
    r.add_argument("report")
    r.add_argument("--no-timing", action="store_true")
    r.set_defaults(func=cmd_report)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1 or args.budget < 1:
        parser.error("--jobs and --budget must be positive")
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"hopftrace {args.command}: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
