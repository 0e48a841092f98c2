"""Command-line client.

The CLI never calls the core directly: every subcommand builds a request
and sends it over HTTP to the service — by default to an in-process
instance of the app, or to a running server when --server is given.
Exit codes: 0 success, 1 a must-hold property was violated or the worked
example diverged from its recorded output, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import os
import sys

import httpx


def _call(server, method, path, payload=None, params=None):
    async def go():
        if server:
            async with httpx.AsyncClient(base_url=server, timeout=600.0) as client:
                r = await client.request(method, path, json=payload, params=params)
                return r.status_code, r.json()
        from .service.app import create_app

        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(
            transport=transport, base_url="http://convlab.local", timeout=None
        ) as client:
            r = await client.request(method, path, json=payload, params=params)
            return r.status_code, r.json()

    return asyncio.run(go())


def _read_arg(text_or_path: str) -> str:
    if os.path.exists(text_or_path):
        with open(text_or_path, encoding="utf-8") as fh:
            return fh.read()
    return text_or_path


def _fmt_sets(sets) -> str:
    return "{%s}" % ",".join("{%s}" % ",".join(s) for s in sets)


def _detail(body) -> str:
    if isinstance(body, dict) and "detail" in body:
        return json.dumps(body["detail"]) if isinstance(body["detail"], list) else str(body["detail"])
    return json.dumps(body)


def _emit(args, body, human_lines) -> None:
    if args.json:
        print(json.dumps(body, indent=2, sort_keys=True))
    else:
        for line in human_lines:
            print(line)


def cmd_analyze(args) -> int:
    text = _read_arg(args.poset)
    if args.dot:
        status, body = _call(args.server, "POST", "/poset/parse", {"poset": text})
        if status != 200:
            print(f"error: {_detail(body)}", file=sys.stderr)
            return 2
        print(body["dot"])
        return 0
    payload = {"poset": text, "selection": args.selection, "mn": args.mn}
    status, body = _call(args.server, "POST", "/analyze", payload)
    if status != 200:
        print(f"error: {_detail(body)}", file=sys.stderr)
        return 2
    lines = [
        f"poset: {body['poset']}",
        f"selection: {args.selection}" + (f" / {args.mn}" if args.mn else ""),
        f"members: {_fmt_sets(body['family']['members'])}",
        f"way-below pairs: {len(body['relations']['way_below']['pairs'])}",
    ]
    for notion, verdict in body["verdicts"].items():
        lines.append(f"{notion}: {'yes' if verdict['holds'] else 'no'}")
    for name, rep in body["reports"].items():
        if name.startswith("aux"):
            lines.append(f"check {name}: {'ok' if rep['holds'] else 'VIOLATED'}")
        else:
            lines.append(f"{name}: {'yes' if rep['holds'] else 'no'}")
    for name, val in body["poset_properties"].items():
        lines.append(f"poset {name}: {'yes' if val else 'no'}")
    _emit(args, body, lines)
    return 1 if body["violations"] else 0


def cmd_topology(args) -> int:
    payload = {
        "poset": _read_arg(args.poset),
        "selection": args.selection,
        "mn": args.mn,
    }
    status, body = _call(args.server, "POST", "/topology", payload)
    if status != 200:
        print(f"error: {_detail(body)}", file=sys.stderr)
        return 2
    lines = [
        f"poset: {body['poset']}",
        f"kind: {body['kind']}",
        f"opens ({len(body['topology']['opens'])}): {_fmt_sets(body['topology']['opens'])}",
        f"discrete: {'yes' if body['discrete'] else 'no'}",
    ]
    if body.get("equals_alexandrov") is not None:
        lines.append(f"equals alexandrov: {'yes' if body['equals_alexandrov'] else 'no'}")
    if body.get("equals_scott") is not None:
        lines.append(f"equals scott: {'yes' if body['equals_scott'] else 'no'}")
    _emit(args, body, lines)
    return 0


def cmd_converge(args) -> int:
    net_text = _read_arg(args.net)
    try:
        net_doc = json.loads(net_text)
    except json.JSONDecodeError as exc:
        print(f"error: net is not valid JSON: {exc}", file=sys.stderr)
        return 2
    payload = {
        "poset": _read_arg(args.poset),
        "net": net_doc,
        "selection": args.selection,
        "mn": args.mn,
        "limit": args.limit,
    }
    status, body = _call(args.server, "POST", "/converge", payload)
    if status != 200:
        print(f"error: {_detail(body)}", file=sys.stderr)
        return 2
    lines = [
        f"kind: {body['kind']}",
        f"converges to {args.limit}: {'yes' if body['converges'] else 'no'}",
        f"topologically converges to {args.limit}: {'yes' if body['tau_converges'] else 'no'}",
        f"limit set: {{{','.join(body['limits'])}}}",
    ]
    _emit(args, body, lines)
    return 0


def cmd_mine(args) -> int:
    payload = {
        "n_max": args.n,
        "selections": args.selections.split(","),
        "properties": args.properties.split(","),
        "unlabeled": not args.labeled,
        "seed": args.seed,
    }
    status, body = _call(args.server, "POST", "/mine", payload)
    if status != 200:
        print(f"error: {_detail(body)}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(body, fh, indent=2, sort_keys=True)
    lines = [f"instances: {body['instances']}"]
    for key, cell in sorted(body["matrix"].items()):
        if cell["status"] == "always":
            lines.append(f"{key}: always")
        else:
            w = cell["witness"]
            lines.append(f"{key}: counterexample ({w['poset']} with {w['selection']})")
    violations = body["audit"]["violations"]
    lines.append(f"audit violations: {len(violations)}")
    _emit(args, body, lines)
    return 1 if violations else 0


def cmd_paper_example(args) -> int:
    status, body = _call(args.server, "GET", "/paper-example")
    if status != 200:
        print(f"error: {_detail(body)}", file=sys.stderr)
        return 2
    c = body["computed"]
    lines = [
        f"poset: {body['poset']}",
        f"selection: {body['selection']}",
        f"M(P) = {_fmt_sets(c['members'])}",
        f"way-below coincides with the order: {'yes' if c['way_below_equals_order'] else 'no'}",
        f"M-continuous: {'yes' if c['m_continuous'] else 'no'}",
        f"alpha(M)-continuous: {'yes' if c['alpha_m_continuous'] else 'no'}",
    ]
    if c.get("alpha_witness"):
        w = c["alpha_witness"]
        lines.append(
            f"  witness: down-arrow of {w['x']} = {{{','.join(w['down_arrow'])}}} is not a member"
        )
    lines.append(f"matches recorded output: {'yes' if body['match'] else 'NO'}")
    _emit(args, body, lines)
    return 0 if body["match"] else 1


def cmd_enumerate(args) -> int:
    params = {"n": args.n, "unlabeled": args.unlabeled}
    status, body = _call(args.server, "GET", "/enumerate", params=params)
    if status != 200:
        print(f"error: {_detail(body)}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(body, indent=2, sort_keys=True))
    else:
        for dsl in body["posets"]:
            print(dsl)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="convlab",
        description="finite-poset convergence-structure laboratory (HTTP client)",
    )
    ap.add_argument("--server", help="base URL of a running service; default runs in-process")
    ap.add_argument("--json", action="store_true", help="print raw JSON responses")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="relations and continuity verdicts for a poset")
    p.add_argument("poset", help="poset DSL/JSON text or a file containing it")
    p.add_argument("--selection", default="Dir")
    p.add_argument("--mn", help="second selection for the two-sided notions")
    p.add_argument("--dot", action="store_true", help="print the Hasse diagram as DOT and exit")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("topology", help="induced topology of a selection (pair)")
    p.add_argument("poset")
    p.add_argument("--selection", default="Dir")
    p.add_argument("--mn")
    p.set_defaults(fn=cmd_topology)

    p = sub.add_parser("converge", help="does a net converge to a limit")
    p.add_argument("poset")
    p.add_argument("net", help="net JSON text or a file containing it")
    p.add_argument("--selection", default="Dir")
    p.add_argument("--mn")
    p.add_argument("--limit", required=True)
    p.set_defaults(fn=cmd_converge)

    p = sub.add_parser("mine", help="implication matrix over enumerated posets")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--selections", default="Dir,ACh")
    p.add_argument("--properties", default="m_cts,alpha_m_cts,m1")
    p.add_argument("--labeled", action="store_true", help="skip isomorphism dedup")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the full JSON report to a file")
    p.set_defaults(fn=cmd_mine)

    p = sub.add_parser("paper-example", help="replay the bundled worked example")
    p.set_defaults(fn=cmd_paper_example)

    p = sub.add_parser("enumerate", help="list posets of a given size")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--unlabeled", action="store_true")
    p.set_defaults(fn=cmd_enumerate)
    return ap


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except httpx.HTTPError as exc:
        print(f"error: cannot reach service: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
