"""``ntc`` command line.

Every command prints one JSON report (sorted keys, 2-space indent) unless
``--human`` is given.  Exit codes: 0 success, 2 input error, 3 verification
failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import brieskorn as bk
from . import graphio, homogeneous, lattice, reduction, verify
from .lattice import Cycle, GraphError

SCHEMA = "ntc-report/1"
CM_WARNING = "assuming the normal tangent cone is Cohen-Macaulay (not checkable from a graph)"
EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 2, 3


class InputError(Exception):
    pass


def _num(x):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else str(x)


def _cycle(graph, z: Cycle) -> dict:
    return {v.id: _num(c) for v, c in zip(graph.vertices, z)}


def _report(argv, inputs, results, verdicts=None, warnings=None, ok=True) -> dict:
    return {
        "schema": SCHEMA,
        "command": list(argv),
        "inputs": inputs,
        "results": results,
        "verdicts": verdicts or {},
        "warnings": warnings or [],
        "ok": ok,
    }


def _load(path) -> lattice.WeightedDualGraph:
    return graphio.load(path)


def _load_bound(graph, path) -> Cycle:
    """A bound file is a JSON object mapping vertex ids to nonnegative integers."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise GraphError("E_SYNTAX", exc.msg, f"{path}:{exc.lineno}:{exc.colno}") from None
    if not isinstance(data, dict):
        raise GraphError("E_SCHEMA", "bound must be an object {vertex id: coefficient}", str(path))
    coeffs = [0] * len(graph)
    for vid, c in data.items():
        if isinstance(c, bool) or not isinstance(c, int):
            raise GraphError("E_SCHEMA", f"coefficient {c!r} is not an integer", f"{path}:/{vid}")
        coeffs[graph.index(vid)] = c
    return Cycle(coeffs)


def solving_r(zsq, kz) -> int | None:
    """The r >= 1 with (r-1) Z^2 + K Z = 0, if any."""
    r = 1 + Fraction(kz) / -Fraction(zsq)
    return int(r) if r.denominator == 1 and r >= 1 else None


# ---------------------------------------------------------------------------
# graph commands

def cmd_graph_check(args):
    g = _load(args.file)
    minors = lattice.leading_minors([[-x for x in row] for row in g.form])
    return _report(
        args.argv,
        {"file": str(args.file)},
        {
            "name": g.name,
            "vertices": len(g),
            "edges": len(g.edges),
            "arrows": len(g.arrows),
            "form": [list(row) for row in g.form],
            "minors_of_minus_form": [_num(m) for m in minors],
            "negative_definite": lattice.is_negative_definite(g.form),
            "canonical_values": dict(zip((v.id for v in g.vertices), g.kvals)),
        },
    )


def graph_analysis(g, r=None) -> tuple[dict, dict, list[str]]:
    z = lattice.cycle_from_arrows(g)
    zsq = lattice.pairing(g.form, z, z)
    kz = lattice.canonical_pairing(g, z)
    chi = lattice.chi(g, z)
    zk = lattice.canonical_cycle(g)
    results = {
        "Z": _cycle(g, z),
        "antinef": lattice.is_antinef(g, z),
        "Z^2": _num(zsq),
        "KZ": _num(kz),
        "chi": _num(chi),
        "e0": _num(-zsq),
        "Z_K": _cycle(g, zk),
        "Z_K_integral": zk.integral,
    }
    verdicts = {
        "r=1 (K Z = 0)": kz == 0,
        "r=2 (chi(Z) = 0)": chi == 0,
        "criterion_r": solving_r(zsq, kz),
    }
    if r is not None:
        verdicts[f"r={r}"] = reduction.gorenstein_cycle_criterion(int(zsq), int(kz), r)
    sr = verdicts["criterion_r"]
    if sr is None:
        summary = "criterion holds for no r"
    else:
        kind = {1: "good p_g-type", 2: "elliptic"}.get(sr, f"br = {sr}")
        summary = f"{kind} (r={sr}) criterion holds"
    verdicts["summary"] = summary
    return results, verdicts, [CM_WARNING]


def cmd_graph_analyze(args):
    g = _load(args.file)
    if args.r is not None and args.r < 1:
        raise InputError("--r must be >= 1")
    results, verdicts, warnings = graph_analysis(g, args.r)
    return _report(args.argv, {"file": str(args.file), "r": args.r}, results, verdicts, warnings)


def cmd_graph_dual(args):
    g = _load(args.file)
    z = lattice.dual_cycle(g, args.vertex)
    return _report(
        args.argv,
        {"file": str(args.file), "vertex": args.vertex},
        {"dual": _cycle(g, z), "self_pairing": _num(lattice.pairing(g.form, z, z)), "chi": _num(lattice.chi(g, z))},
    )


def cmd_graph_fundamental(args):
    g = _load(args.file)
    z = lattice.fundamental_cycle(g)
    return _report(
        args.argv,
        {"file": str(args.file)},
        {"fundamental_cycle": _cycle(g, z), "Z^2": _num(lattice.pairing(g.form, z, z)), "chi": _num(lattice.chi(g, z))},
    )


def _entry(g, z):
    zsq = lattice.pairing(g.form, z, z)
    kz = lattice.canonical_pairing(g, z)
    return {"Z": _cycle(g, z), "chi": _num(lattice.chi(g, z)), "criterion_r": solving_r(zsq, kz)}


def cmd_graph_enum(args):
    g = _load(args.file)
    warnings = []
    if args.mode == "below":
        if args.bound is None:
            raise InputError("--mode below needs --bound FILE")
        w = _load_bound(g, args.bound)
        cycles = lattice.enumerate_antinef_below(g, w)
        extra = {"bound": _cycle(g, w)}
    else:
        res = lattice.enumerate_antinef_not_exceeding_canonical(g)
        cycles = [z for z, _ in res.entries]
        warnings = res.warnings
        extra = {"Z_K": _cycle(g, res.zk)}
    return _report(
        args.argv,
        {"file": str(args.file), "mode": args.mode, "bound": str(args.bound) if args.bound else None},
        {**extra, "count": len(cycles), "cycles": [_entry(g, z) for z in cycles]},
        warnings=warnings,
    )


def cmd_graph_chimin(args):
    g = _load(args.file)
    bound = _load_bound(g, args.bound) if args.bound else lattice.default_chi_bound(g)
    res = lattice.chi_min(g, bound)
    return _report(
        args.argv,
        {"file": str(args.file), "bound": str(args.bound) if args.bound else "default"},
        {"value": _num(res.value), "witness": _cycle(g, res.witness), "bound": _cycle(g, res.bound)},
        warnings=["bounded search: minimum over 0 < C <= bound only"],
    )


# ---------------------------------------------------------------------------
# Brieskorn

def brieskorn_report(t: bk.BrieskornType) -> tuple[dict, dict]:
    inv = bk.invariants(t)
    b = bk.b_sequence(t)
    v = bk.is_gorenstein(t)
    results = {
        "d": inv.d,
        "n": list(inv.n),
        "r": bk.br_direct(t),
        "Z^2": inv.zsq,
        "KZ": inv.kz,
        "chi": inv.chi,
        "pg_minus_q(m)": 1 - inv.chi,
        "steps": list(bk.step_sequence(t).steps),
        "b": list(b.b),
        "L_colengths": reduction.L_colengths(b),
    }
    verdicts = {"arith": v.arith, "cycle": v.cycle, "symmetric": v.symmetric, "gorenstein": v.value}
    return results, verdicts


def cmd_brieskorn(args):
    if args.values and args.values[0] == "scan":
        if len(args.values) != 1:
            raise InputError("usage: ntc brieskorn scan --max N")
        return _brieskorn_scan(args)
    if len(args.values) != 3:
        raise InputError("usage: ntc brieskorn A B C")
    try:
        a, b, c = (int(x) for x in args.values)
        t = bk.BrieskornType(a, b, c)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    results, verdicts = brieskorn_report(t)
    return _report(
        args.argv,
        {"a": a, "b": b, "c": c},
        results,
        verdicts,
        ["characteristic assumed 0 or coprime to abc"],
    )


def _brieskorn_scan(args):
    n = args.max
    if n < 2:
        raise InputError("--max must be >= 2")
    ctx = verify.Context(max_c=n)
    wanted = {"brieskorn-equivalence", "brieskorn-reduction-number", "brieskorn-step-lengths",
              "brieskorn-corollaries", "brieskorn-eqbb"}
    results = verify.run(ctx, only=wanted)
    types = sum(1 for _ in bk.sweep(n))
    gor = sum(1 for t in bk.sweep(n) if bk.is_gorenstein(t).value)
    ok = all(r.ok for r in results)
    return _report(
        args.argv,
        {"max": n},
        {"types": types, "gorenstein": gor, "violations": {r.id: (0 if r.ok else r.detail) for r in results}},
        {"all_consistent": ok},
        ok=ok,
    )


# ---------------------------------------------------------------------------
# homogeneous

def cmd_homog(args):
    try:
        if args.sub == "classify":
            cls = homogeneous.classify(args.d)
            return _report(
                args.argv,
                {"d": args.d},
                {
                    "ideals": [
                        {"label": c.label, "br": c.br, "u": c.u, "mults": list(c.mults),
                         "elliptic_power": c.power, "elliptic_candidate": c.root_of}
                        for c in cls.ideals
                    ],
                    "labels": sorted(cls.labels),
                },
                {"verified": cls.verified},
                [] if cls.verified else ["unverified: completeness is only established for d <= 5"],
            )
        if args.sub == "power":
            rep = homogeneous.power_report(args.d, args.n)
            return _report(args.argv, {"d": args.d, "n": args.n},
                           {"colength": rep.colength, "q": rep.q, "br": rep.br},
                           {"gorenstein": rep.gorenstein})
        rep = homogeneous.il_report(args.d)
        return _report(args.argv, {"d": args.d},
                       {"chi": rep.chi, "q": rep.q, "colength": rep.colength, "Z^2": rep.zsq,
                        "colength2": rep.colength2},
                       {"elliptic_gorenstein": rep.chi == 0})
    except ValueError as exc:
        raise InputError(str(exc)) from None


# ---------------------------------------------------------------------------

def cmd_verify_paper(args):
    ctx = verify.Context(max_c=args.max, fixtures=args.fixtures)
    results = verify.run(ctx)
    ok = all(r.ok for r in results)
    return _report(
        args.argv,
        {"max": args.max, "fixtures": str(args.fixtures) if args.fixtures else "bundled"},
        {"checks": [{"id": r.id, "anchor": r.anchor, "ok": r.ok, "detail": r.detail} for r in results]},
        {"passed": sum(r.ok for r in results), "failed": sum(not r.ok for r in results)},
        ok=ok,
    )


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--human", action="store_true", help="tabular text instead of JSON")
    common.add_argument("--out", type=Path, help="write the report here instead of stdout")

    p = argparse.ArgumentParser(prog="ntc", description="Exact reduction-number and Gorenstein computations for surface singularities.")
    sub = p.add_subparsers(dest="cmd", required=True)

    graph = sub.add_parser("graph", help="weighted dual graph tools")
    gsub = graph.add_subparsers(dest="gcmd", required=True)
    x = gsub.add_parser("check", parents=[common])
    x.add_argument("file", type=Path)
    x.set_defaults(func=cmd_graph_check)
    x = gsub.add_parser("analyze", parents=[common])
    x.add_argument("file", type=Path)
    x.add_argument("--r", type=int)
    x.set_defaults(func=cmd_graph_analyze)
    x = gsub.add_parser("dual", parents=[common])
    x.add_argument("file", type=Path)
    x.add_argument("vertex")
    x.set_defaults(func=cmd_graph_dual)
    x = gsub.add_parser("fundamental", parents=[common])
    x.add_argument("file", type=Path)
    x.set_defaults(func=cmd_graph_fundamental)
    x = gsub.add_parser("enum", parents=[common])
    x.add_argument("file", type=Path)
    x.add_argument("--mode", choices=["below", "zk"], required=True)
    x.add_argument("--bound", type=Path)
    x.set_defaults(func=cmd_graph_enum)
    x = gsub.add_parser("chimin", parents=[common])
    x.add_argument("file", type=Path)
    x.add_argument("--bound", type=Path)
    x.set_defaults(func=cmd_graph_chimin)

    x = sub.add_parser("brieskorn", help="A B C, or: scan --max N", parents=[common])
    x.add_argument("values", nargs="+")
    x.add_argument("--max", type=int, default=30)
    x.set_defaults(func=cmd_brieskorn)

    homog = sub.add_parser("homog", help="homogeneous hypersurfaces of degree d")
    hsub = homog.add_subparsers(dest="sub", required=True)
    x = hsub.add_parser("classify", parents=[common])
    x.add_argument("d", type=int)
    x = hsub.add_parser("power", parents=[common])
    x.add_argument("d", type=int)
    x.add_argument("n", type=int)
    x = hsub.add_parser("il", parents=[common])
    x.add_argument("d", type=int)
    homog.set_defaults(func=cmd_homog)

    x = sub.add_parser("verify-paper", help="run every reference check", parents=[common])
    x.add_argument("--max", type=int, default=30, help="Brieskorn sweep bound on c")
    x.add_argument("--fixtures", type=Path, help="directory overriding the bundled graph fixtures")
    x.set_defaults(func=cmd_verify_paper)
    return p


def render_human(report: dict) -> str:
    lines = [f"# {' '.join(report['command'])}"]

    def walk(prefix, value):
        if isinstance(value, dict):
            for k in sorted(value):
                walk(f"{prefix}{k}.", value[k])
        elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            for i, v in enumerate(value):
                walk(f"{prefix}{i}.", v)
        else:
            lines.append(f"{prefix.rstrip('.'):<40} {json.dumps(value, sort_keys=True)}")

    for section in ("inputs", "results", "verdicts"):
        walk(f"{section}.", report[section])
    for w in report["warnings"]:
        lines.append(f"warning: {w}")
    if report["command"][:1] == ["verify-paper"]:
        lines.append("")
        for c in report["results"]["checks"]:
            lines.append(f"{'PASS' if c['ok'] else 'FAIL'}  {c['id']:<28} {c['anchor']}" +
                         ("" if c["ok"] else f"\n      {c['detail']}"))
    return "\n".join(lines) + "\n"


def _echo(argv: list[str]) -> list[str]:
    # output flags do not change the report, so they are not echoed
    out, skip = [], False
    for tok in argv:
        if skip:
            skip = False
        elif tok == "--out":
            skip = True
        elif tok != "--human" and not tok.startswith("--out="):
            out.append(tok)
    return out


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args.argv = _echo(argv)
    try:
        report = args.func(args)
    except (GraphError, InputError, reduction.InadmissibleError) as exc:
        print(f"ntc: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"ntc: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = render_human(report) if args.human else graphio.dumps(report)
    if args.out:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK if report["ok"] else EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
