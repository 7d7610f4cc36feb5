"""Command-line front end: ``splicekit <command> FILE [--json]``.

Exit status is 0 whenever a result was computed, including results whose
verdict is a failed condition; 1 for unreadable input or domain errors; 2
when an internal cross-check fails.
"""

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import congruence, equations, graph, lattice, splice
from .errors import ConditionError, ConsistencyError, DomainError, ParseError
from .report import frac_str, jsonable

ENUM_LIMIT_ENV = "SPLICEKIT_ENUM_LIMIT"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def detect_format(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        kind, *args = line.split()
        if kind == "v":
            return "graph"
        if kind in ("n", "l"):
            return "splice"
        if kind == "e":
            return "graph" if len(args) == 2 else "splice"
        if kind != "a":
            raise ParseError(f"unknown directive {kind!r}", lineno)
    raise ParseError("file contains no directives")


def parse_text(text):
    if detect_format(text) == "graph":
        return graph.parse_graph(text)
    return splice.parse_splice(text)


def parse_inputs(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DomainError(f"{path}: {exc.strerror}") from None
    try:
        return parse_text(text)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


def _need_graph(obj, command):
    if not isinstance(obj, graph.PlumbingGraph):
        raise DomainError(f"{command} needs a plumbing graph file")
    return obj


def _as_diagram(obj):
    return splice.resolution_to_splice(obj) if isinstance(obj, graph.PlumbingGraph) else obj


def _enum_limit(args):
    if args.enum_limit is not None:
        return args.enum_limit
    raw = os.environ.get(ENUM_LIMIT_ENV)
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise DomainError(f"{ENUM_LIMIT_ENV} must be an integer, got {raw!r}") from None
    return equations.DEFAULT_MONOMIAL_LIMIT


def _report_text(title, report):
    lines = [f"{title}: {'PASS' if report.passed else 'FAIL'}"]
    for c in report.checks:
        extra = f"  {json.dumps(jsonable(c.detail))}" if c.detail else ""
        lines.append(f"  [{'x' if c.passed else ' '}] {c.name}{extra}")
    for k, v in report.facts.items():
        lines.append(f"  {k}: {json.dumps(jsonable(v))}")
    return "\n".join(lines)


def cmd_validate(obj, args):
    if isinstance(obj, graph.PlumbingGraph):
        r = graph.validate_resolution_graph(obj)
        return r.to_json(), _report_text("resolution graph", r)
    r = splice.validate_splice_diagram(obj)
    return r.to_json(), _report_text("splice diagram", r)


def cmd_matrix(obj, args):
    A = graph.intersection_matrix(_need_graph(obj, "matrix"))
    out = {"vertices": list(A.names), "matrix": [list(r) for r in A.entries], "determinant": A.det()}
    width = max(len(str(x)) for r in A.entries for x in r)
    rows = [" ".join(str(x).rjust(width) for x in r) for r in A.entries]
    return out, "\n".join([" ".join(A.names)] + rows + [f"det = {out['determinant']}"])


def cmd_discriminant(obj, args):
    g = _need_graph(obj, "discriminant")
    table = lattice.leaf_representation(g)
    out = table.to_json()
    factors = " x ".join(f"Z/{d}" for d in table.group.invariant_factors) or "trivial"
    lines = [f"order {table.group.order}: {factors}"]
    for k, row in enumerate(table.rows):
        cells = ", ".join(f"{w}: {frac_str(x)}" for w, x in zip(table.leaves, row))
        lines.append(f"  generator {k}: {cells}")
    return out, "\n".join(lines)


def cmd_to_splice(obj, args):
    d = _as_diagram(_need_graph(obj, "to-splice"))
    dets = {f"{a}-{b}": splice.edge_determinant(d, a, b) for a, b in d.node_edges()}
    weights = {v: sorted(d.weight(v, u) for u in d.neighbors(v)) for v in d.nodes}
    out = {"diagram": d.to_json(), "node_weights": weights, "edge_determinants": dets}
    lines = [splice.format_splice(d).rstrip()]
    lines += [f"# node {v}: weights {tuple(w)}" for v, w in weights.items()]
    lines += [f"# edge determinant {e}: {x}" for e, x in dets.items()]
    return out, "\n".join(lines)


def cmd_check(obj, args):
    d = _as_diagram(obj)
    report = splice.validate_splice_diagram(d)
    sg = splice.check_semigroup_conditions(d)
    out = {"splice_conditions": report.to_json(), "semigroup": sg.to_json()}
    lines = [_report_text("splice diagram conditions", report),
             f"semigroup conditions: {'PASS' if sg.passed else 'FAIL'}"]
    for e in sg.entries:
        if e.member:
            terms = " + ".join(f"{a}*{g}" for a, g in zip(e.witness.values(), e.generators) if a) or "0"
            lines.append(f"  {e.node} -> {e.toward}: {e.target} = {terms}")
        else:
            lines.append(f"  {e.node} -> {e.toward}: {e.target} not in N({', '.join(map(str, sorted(e.generators)))})")
    if isinstance(obj, graph.PlumbingGraph):
        if sg.passed:
            cc = congruence.check_congruence_conditions(obj, _enum_limit(args))
            out["congruence"] = cc.to_json()
            lines.append(f"congruence conditions: {cc.verdict.upper()}")
            for nc in cc.nodes:
                if nc.verdict == "pass":
                    lines.append(f"  {nc.node}: character {congruence.char_str(nc.character)}")
                else:
                    lines.append(f"  {nc.node}: {nc.verdict}")
        else:
            out["congruence"] = {"verdict": "skipped", "reason": "semigroup conditions fail"}
            lines.append("congruence conditions: SKIPPED (semigroup conditions fail)")
    return out, "\n".join(lines)


def _system_text(system):
    return "\n".join([f"# {system.status}"] + equations.format_equations(system))


def cmd_equations(obj, args):
    try:
        if args.quotient:
            sq = congruence.assemble_splice_quotient(_need_graph(obj, "equations --quotient"),
                                                     _enum_limit(args))
            text = _system_text(sq.equations)
            text += f"\n# group order {sq.group.order}; invariants z_w^{sq.invariant_exponent}"
            return sq.to_json(), text
        system = equations.generate_splice_equations(_as_diagram(obj))
    except ConditionError as exc:
        cert = exc.certificate
        return ({"verdict": "fail", "reason": str(exc), "certificate": jsonable(cert)},
                f"no equations: {exc}")
    return system.to_json(), _system_text(system)


def cmd_uac(obj, args):
    b = equations.brieskorn_uac(_need_graph(obj, "uac"))
    lines = equations.format_equations(b)
    lines.append(f"# group order {b.action.group.order}, diagonal action:")
    for k, row in enumerate(b.action.rows):
        lines.append("#   g%d: %s" % (k, ", ".join(f"z_{w} -> exp(2 pi i {frac_str(x)})"
                                                    for w, x in zip(b.variables, row))))
    return b.to_json(), "\n".join(lines)


def cmd_classify(obj, args):
    r = congruence.classify(obj, _enum_limit(args))
    lines = [f"{s['name']}: {s['verdict']}" for s in r.stages]
    lines.append(f"splice-quotient eligible: {'yes' if r.eligible else 'no'}")
    return r.to_json(), "\n".join(lines)


def cmd_splice(args):
    d1 = _as_diagram(parse_inputs(args.inputs[0]))
    d2 = _as_diagram(parse_inputs(args.inputs[2]))
    joined, report = splice.splice_join(d1, args.inputs[1], d2, args.inputs[3])
    out = {"diagram": joined.to_json(), "validation": report.to_json()}
    return out, splice.format_splice(joined).rstrip() + "\n" + _report_text("validation", report)


COMMANDS = {
    "validate": (cmd_validate, "validate a plumbing graph or splice diagram"),
    "matrix": (cmd_matrix, "print the intersection matrix and determinant"),
    "discriminant": (cmd_discriminant, "discriminant group and leaf characters"),
    "to-splice": (cmd_to_splice, "convert a resolution graph to its splice diagram"),
    "check": (cmd_check, "splice diagram, semigroup and congruence conditions"),
    "equations": (cmd_equations, "splice-type (or splice-quotient) equations"),
    "uac": (cmd_uac, "Brieskorn cover of a star-shaped graph"),
    "classify": (cmd_classify, "run the full condition pipeline"),
}


def build_parser():
    p = _Parser(prog="splicekit", description="Splice diagrams and splice-quotient singularities.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("inputs", nargs="*", help="input file(s)")
        sp.add_argument("--all", metavar="DIR", help="process every .graph/.splice file in DIR")
        sp.add_argument("--json", action="store_true", help="emit canonical JSON")
        sp.add_argument("--enum-limit", type=int, default=None,
                        help=f"admissible-monomial enumeration bound (env {ENUM_LIMIT_ENV})")
        if name == "equations":
            sp.add_argument("--quotient", action="store_true",
                            help="equivariant equations plus group action (needs a graph)")
    sj = sub.add_parser("splice", help="splice two diagrams along leaves")
    sj.add_argument("inputs", nargs=4, metavar=("FILE1", "LEAF1", "FILE2", "LEAF2"))
    sj.add_argument("--json", action="store_true")
    return p


def _run_one(handler, path, args):
    """Returns (exit_code, json_obj, text)."""
    try:
        out, text = handler(parse_inputs(path), args)
        return 0, out, text
    except ConsistencyError as exc:
        return 2, {"error": str(exc), "kind": "internal"}, f"internal error: {exc}"
    except DomainError as exc:
        return 1, {"error": str(exc)}, f"error: {exc}"


def _emit(code, out, text, args, stdout, stderr):
    if args.json:
        print(json.dumps(out, indent=2), file=stdout)
    elif code:
        print(text, file=stderr)
    else:
        print(text, file=stdout)


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=stderr)
        return 1

    if args.command == "splice":
        try:
            out, text = cmd_splice(args)
            code = 0
        except ConsistencyError as exc:
            code, out, text = 2, {"error": str(exc), "kind": "internal"}, f"internal error: {exc}"
        except DomainError as exc:
            code, out, text = 1, {"error": str(exc)}, f"error: {exc}"
        _emit(code, out, text, args, stdout, stderr)
        return code

    handler = COMMANDS[args.command][0]
    paths = list(args.inputs)
    if args.all:
        root = Path(args.all)
        if not root.is_dir():
            print(f"error: {root} is not a directory", file=stderr)
            return 1
        paths += sorted(str(p) for p in root.iterdir() if p.suffix in (".graph", ".splice"))
    if not paths:
        print(f"error: {args.command} needs an input file or --all DIR", file=stderr)
        return 1

    if len(paths) == 1:
        code, out, text = _run_one(handler, paths[0], args)
        _emit(code, out, text, args, stdout, stderr)
        return code

    with ThreadPoolExecutor() as pool:
        results = list(pool.map(lambda p: _run_one(handler, p, args), paths))
    if args.json:
        print(json.dumps({p: r[1] for p, r in zip(paths, results)}, indent=2), file=stdout)
    else:
        for p, (code, _, text) in zip(paths, results):
            print(f"== {p}", file=stdout)
            print(text, file=stdout if code == 0 else stderr)
    return max(r[0] for r in results)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
