"""Command line front end.

Exit codes: 0 when everything checked is valid, 1 when a check reports a
violation, 2 on unreadable or unresolvable input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .dsl import (
    DSLError,
    InstanceDocument,
    global_block,
    group_block,
    parse_instance,
    partial_block,
    quiver_block,
    serialize_instance,
)
from .group import validate_group
from .pathalg import (
    DEFAULT_WINDOW,
    check_algebra_globalization,
    check_not_ideal,
    check_subalgebra_partial_action,
    generated_subalgebra,
    induced_partial_action,
    sum_of_translates,
)
from .quiver import export_dot, validate_quiver
from .quiver_paction import (
    check_enveloping,
    check_global_quiver_action,
    check_quiver_partial_action,
    envelope_quiver_action,
)

OK, VIOLATION, INPUT_ERROR = 0, 1, 2


def _cycles(perm: dict, order) -> str:
    seen, parts = set(), []
    for x in order:
        if x in seen:
            continue
        cyc, y = [], x
        while y not in seen:
            seen.add(y)
            cyc.append(y)
            y = perm[y]
        parts.append("[" + " ".join(cyc) + "]")
    return "".join(parts) if parts else "[]"


def cmd_validate(doc: InstanceDocument, args=None):
    reports = []
    if doc.built_group is not None:
        reports.append(validate_group(doc.built_group))
    for qb in doc.quivers:
        r = validate_quiver(doc.quiver(qb.name))
        r.subject = f"quiver {qb.name}"
        reports.append(r)
    for blk in doc.globals:
        r = check_global_quiver_action(doc.global_action(blk.name))
        r.subject = f"global action {blk.name}"
        reports.append(r)
    for blk in doc.partials:
        r = check_quiver_partial_action(doc.partial_action(blk.name))
        r.subject = f"partial action {blk.name}"
        reports.append(r)
    for rb, a in zip(doc.restrictions, doc.built_restrictions):
        r = check_quiver_partial_action(a)
        r.subject = f"restriction of {rb.global_name}"
        reports.append(r)
    code = OK if all(r.ok for r in reports) else VIOLATION
    text = "\n".join(str(r) for r in reports) + "\n"
    return code, text, {"reports": [r.to_dict() for r in reports], "valid": code == OK}


def cmd_globalize(doc: InstanceDocument, args=None):
    a = doc.subject_partial_action()
    rep = check_quiver_partial_action(a)
    if not rep.ok:
        return VIOLATION, str(rep) + "\n", {"valid": False, "report": rep.to_dict()}
    env = envelope_quiver_action(a)
    chk = check_enveloping(env)
    Q, beta, G = env.quiver, env.global_action, env.global_action.group
    lines = [f"enveloping quiver: {len(Q.vertices)} vertices, {len(Q.arrows)} arrows"]
    lines.append("vertices:")
    lines += [f"  {v}" for v in Q.vertices]
    lines.append("arrows:")
    lines += [f"  {x.name} : {x.source} -> {x.target}" for x in Q.arrows]
    lines.append("embedding:")
    lines += [f"  {v} -> {env.embedding.vertex_map[v]}" for v in a.quiver.vertices]
    lines += [f"  {x} -> {env.embedding.arrow_map[x]}" for x in a.quiver.arrow_names]
    lines.append("action (cycle structure on vertices | arrows):")
    for g in G:
        lines.append(
            f"  {g}: {_cycles(beta[g].vertex_map, Q.vertices)} | "
            f"{_cycles(beta[g].arrow_map, Q.arrow_names)}"
        )
    lines.append("action tables:")
    for g in G:
        vm, am = beta[g].vertex_map, beta[g].arrow_map
        lines.append(f"  {g}: " + ", ".join(f"{v}->{vm[v]}" for v in Q.vertices))
        lines.append(" " * (len(g) + 4) + ", ".join(f"{x}->{am[x]}" for x in Q.arrow_names))
    lines.append(str(chk))
    serial = InstanceDocument(
        group=group_block(G),
        quivers=[quiver_block("Q", Q)],
        globals=[global_block("beta", "Q", beta)],
    )
    lines.append("serialized:")
    lines.append(serialize_instance(serial).rstrip("\n"))
    data = {
        "valid": chk.ok,
        "group": list(G.elements),
        "quiver": _quiver_dict(Q),
        "embedding": {
            "vertices": dict(env.embedding.vertex_map),
            "arrows": dict(env.embedding.arrow_map),
        },
        "action": {
            g: {"vertices": dict(beta[g].vertex_map), "arrows": dict(beta[g].arrow_map)} for g in G
        },
        "report": chk.to_dict(),
    }
    return (OK if chk.ok else VIOLATION), "\n".join(lines) + "\n", data


def cmd_restrict(doc: InstanceDocument, args=None):
    kind, block = doc.subject()
    if kind != "restrict":
        raise DSLError(f"'restrict' needs a restrict statement, but the subject is a {kind}")
    a = doc.built_restrictions[doc.restrictions.index(block)]
    rep = check_quiver_partial_action(a)
    gname = block.global_name
    out = InstanceDocument(
        group=doc.group,
        quivers=[quiver_block(f"{gname}_sub", a.quiver)],
        partials=[partial_block(f"{gname}_restricted", f"{gname}_sub", a)],
    )
    text = serialize_instance(out)
    if not rep.ok:
        text += "\n" + str(rep) + "\n"
    data = {
        "valid": rep.ok,
        "quiver": _quiver_dict(a.quiver),
        "domains": {
            g: {
                "vertices": a.domain(g).ordered_vertices(),
                "arrows": a.domain(g).ordered_arrows(),
            }
            for g in a.group
        },
        "maps": {g: {"vertices": a.vertex_maps[g], "arrows": a.arrow_maps[g]} for g in a.group},
        "report": rep.to_dict(),
    }
    return (OK if rep.ok else VIOLATION), text, data


def cmd_algebra_check(doc: InstanceDocument, args=None):
    L = _window(doc, args)
    a = doc.subject_partial_action()
    rep = check_quiver_partial_action(a)
    if not rep.ok:
        return VIOLATION, str(rep) + "\n", {"valid": False, "report": rep.to_dict()}
    induced = induced_partial_action(a)
    r1 = check_subalgebra_partial_action(induced, L)
    env = envelope_quiver_action(a)
    r2 = check_algebra_globalization(env, L)
    sum_dim = sum_of_translates(env, L).dimension()
    gen_dim = generated_subalgebra(env, L).dimension()
    lines = [str(r1), str(r2)]
    lines.append(f"sum dim = {sum_dim}, generated dim = {gen_dim}, strict: {'yes' if sum_dim < gen_dim else 'no'}")
    unital = r2.notes.get("unital", {})
    lines.append("D_g unital: " + ", ".join(f"{g}={'yes' if ok else 'no'}" for g, ok in unital.items()))
    witnesses = {}
    for g in a.group:
        if g == a.group.identity:
            continue
        dom = induced.domain(g)
        w = check_not_ideal(dom, L)
        if w is None:
            lines.append(f"R_{g}: ideal up to length {L}")
        else:
            lines.append(f"R_{g}: not an ideal, witness {w}")
        witnesses[g] = None if w is None else str(w)
    code = OK if r1.ok and r2.ok else VIOLATION
    data = {
        "valid": code == OK,
        "window": L,
        "subalgebra_partial_action": r1.to_dict(),
        "globalization": r2.to_dict(),
        "sum_dimension": sum_dim,
        "generated_dimension": gen_dim,
        "strict": sum_dim < gen_dim,
        "unital": unital,
        "not_ideal_witnesses": witnesses,
    }
    return code, "\n".join(lines) + "\n", data


def cmd_export_dot(doc: InstanceDocument, args=None):
    kind, block = doc.subject()
    envelope = bool(args is not None and getattr(args, "envelope", False))
    if envelope:
        a = doc.subject_partial_action()
        rep = check_quiver_partial_action(a)
        if not rep.ok:
            return VIOLATION, str(rep) + "\n", {"valid": False, "report": rep.to_dict()}
        env = envelope_quiver_action(a)
        return OK, export_dot(env.quiver, env.embedded()), {"dot": export_dot(env.quiver, env.embedded())}
    if kind == "restrict":
        q = doc.global_action(block.global_name).quiver
        text = export_dot(q, q.subquiver(block.vertices, block.arrows))
    elif kind == "partial":
        text = export_dot(doc.partial_action(block.name).quiver)
    elif kind == "global":
        text = export_dot(doc.global_action(block.name).quiver)
    else:
        text = export_dot(doc.quiver(block.name))
    return OK, text, {"dot": text}


def _quiver_dict(q):
    return {
        "vertices": list(q.vertices),
        "arrows": [{"name": a.name, "source": a.source, "target": a.target} for a in q.arrows],
    }


def _window(doc, args) -> int:
    if args is not None and getattr(args, "truncate", None) is not None:
        return args.truncate
    if doc.truncate is not None:
        return doc.truncate
    return DEFAULT_WINDOW


COMMANDS = {
    "validate": cmd_validate,
    "globalize": cmd_globalize,
    "restrict": cmd_restrict,
    "algebra-check": cmd_algebra_check,
    "export-dot": cmd_export_dot,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quiveract",
        description="Partial group actions on quivers and path algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--input", "-i", default="-", help="instance file (default: stdin)")
        p.add_argument("--truncate", type=int, default=None, help=f"path length window (default {DEFAULT_WINDOW})")
        p.add_argument("--output", "-o", default=None, help="write the report here instead of stdout")
        p.add_argument("--format", choices=("text", "structured"), default="text")
        if name == "export-dot":
            p.add_argument("--envelope", action="store_true",
                           help="export the enveloping quiver with the original highlighted")
    return parser


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    if args.truncate is not None and args.truncate < 0:
        print("error: --truncate must be >= 0", file=sys.stderr)
        return INPUT_ERROR
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    try:
        doc = parse_instance(text)
        doc.subject()
        code, report, data = COMMANDS[args.command](doc, args)
    except DSLError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    if args.format == "structured" and args.command != "export-dot":
        data = {"command": args.command, "exit_code": code, **data}
        report = json.dumps(data, indent=2, sort_keys=True, default=str) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(report)
    else:
        stdout.write(report)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
