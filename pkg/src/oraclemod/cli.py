"""Verb-based command line front end.

Every run emits one report, as stable sorted-key JSON (no timings, so equal
inputs and seed give byte-identical output) or as human-readable text.
Exit codes: 0 all checks passed, 1 check failure, 2 usage or input error,
3 resource exhaustion / unknown verdicts, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__, io
from .containers import (
    oracle_modality,
    oracle_modality_bruteforce,
    validate_container,
)
from .errors import InternalInvariantViolation, OracleModError
from .nuclei import (
    Nucleus,
    dense_elements,
    enumerate_nuclei,
    sup_nuclei,
    validate_nucleus,
)
from .pca import eval_term, parse_term, pp
from .theorems import THEOREM_IDS, Budget, verify_theorems
from .trees import run_tree_suites
from .weihrauch import check_oracle_membership_w, check_weihrauch

_VERIFY_SUITES = {
    "retraction": ("retraction",),
    "forcing": ("forcing-iff",),
    "oracle-leq": ("oracle-leq",),
    "sup": ("sup",),
    "least-above": ("least-above-instance",),
    "surjection": ("surjection",),
    "all": THEOREM_IDS,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="oraclemod",
        description="modalities, nuclei and oracle computations on finite frames",
    )
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output", help="write the report here instead of stdout")
    sub = p.add_subparsers(dest="verb", required=True)

    fr = sub.add_parser("frame").add_subparsers(dest="sub", required=True)
    fb = fr.add_parser("build", help="build the downset frame of a poset")
    fb.add_argument("--poset", required=True)

    nu = sub.add_parser("nuclei").add_subparsers(dest="sub", required=True)
    ne = nu.add_parser("enumerate")
    ne.add_argument("--poset", required=True)
    nv = nu.add_parser("validate")
    nv.add_argument("--poset", required=True)
    nv.add_argument("--nucleus", required=True)
    ns = nu.add_parser("sup")
    ns.add_argument("--poset", required=True)
    ns.add_argument("--nucleus", action="append", required=True)

    orc = sub.add_parser("oracle").add_subparsers(dest="sub", required=True)
    for name in ("compute", "compare"):
        op = orc.add_parser(name)
        op.add_argument("--poset", required=True)
        op.add_argument("--container", required=True)

    ver = sub.add_parser("verify")
    ver.add_argument("suite", choices=sorted(_VERIFY_SUITES))
    ver.add_argument("--poset", required=True)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--cases", type=int, default=200)
    ver.add_argument("--nucleus", action="append", default=[],
                     help="inject extra nucleus tables into the retraction check")

    tr = sub.add_parser("trees").add_subparsers(dest="sub", required=True)
    ts = tr.add_parser("suite")
    ts.add_argument("--seed", type=int, default=0)
    ts.add_argument("--cases", type=int, default=200)
    ts.add_argument("--depth", type=int, default=4)

    pc = sub.add_parser("pca").add_subparsers(dest="sub", required=True)
    pe = pc.add_parser("eval")
    pe.add_argument("--term", required=True)
    pe.add_argument("--fuel", type=int, default=100_000)

    wc = sub.add_parser("weihrauch").add_subparsers(dest="sub", required=True)
    w = wc.add_parser("check")
    w.add_argument("--f", required=True)
    w.add_argument("--g", required=True)
    w.add_argument("--l1", required=True)
    w.add_argument("--l2", required=True)
    w.add_argument("--fuel", type=int, default=100_000)

    ot = sub.add_parser("oracle-tree").add_subparsers(dest="sub", required=True)
    oc = ot.add_parser("check")
    oc.add_argument("--pred", required=True)
    oc.add_argument("--s", required=True)
    oc.add_argument("--term", required=True)
    oc.add_argument("--depth", type=int, default=8)
    oc.add_argument("--fuel", type=int, default=100_000)

    return p


def _nucleus_table_dict(frame, table) -> dict:
    return {
        frame.el(i).key: list(frame.el(int(v)).labels) for i, v in enumerate(table)
    }


def _dispatch(args) -> tuple[dict, int]:
    text = args.format == "text"

    if args.verb == "frame":
        frame = io.load_frame(args.poset)
        body = {
            "carrier": len(frame),
            "bot": io.element_to_json(frame.bot),
            "top": io.element_to_json(frame.top),
            "elements": [io.element_to_json(e) for e in frame.all_elements()],
        }
        return body, 0

    if args.verb == "nuclei":
        frame = io.load_frame(args.poset)
        if args.sub == "enumerate":
            ns = enumerate_nuclei(frame)
            body = {
                "count": len(ns),
                "nuclei": [_nucleus_table_dict(frame, j.table) for j in ns],
            }
            return body, 0
        if args.sub == "validate":
            table = io.nucleus_table_from_dict(frame, io.load_json(args.nucleus))
            report = validate_nucleus(frame, table)
            body = {
                "valid": report.valid,
                "violations": [
                    {"law": law, "witnesses": [io.element_to_json(w) for w in ws]}
                    for law, ws in report.violations
                ],
            }
            return body, 0 if report.valid else 1
        # sup
        js = []
        for path in args.nucleus:
            table = io.nucleus_table_from_dict(frame, io.load_json(path))
            report = validate_nucleus(frame, table)
            if not report.valid:
                raise OracleModError(
                    f"{path} is not a nucleus: violates {report.law_names()}"
                )
            js.append(Nucleus(frame, table))
        s = sup_nuclei(frame, js)
        return {"sup": _nucleus_table_dict(frame, s.table)}, 0

    if args.verb == "oracle":
        frame = io.load_frame(args.poset)
        c = io.container_from_dict(frame, io.load_json(args.container))
        if not validate_container(c):
            raise OracleModError("container is invalid: some P(a) is not below E(a)")
        if args.sub == "compute":
            j = oracle_modality(c)
            body = {
                "modality": _nucleus_table_dict(frame, j.table),
                "dense": [io.element_to_json(e) for e in dense_elements(j)],
            }
            return body, 0
        j = oracle_modality(c)
        k = oracle_modality_bruteforce(c)
        agree = j == k
        body = {
            "kleene": _nucleus_table_dict(frame, j.table),
            "bruteforce": _nucleus_table_dict(frame, k.table),
            "agree": agree,
        }
        return body, 0 if agree else 1

    if args.verb == "verify":
        frame = io.load_frame(args.poset)
        extra = tuple(
            Nucleus(frame, io.nucleus_table_from_dict(frame, io.load_json(path)))
            for path in args.nucleus
        )
        budget = Budget(seed=args.seed, cases=args.cases, extra_nuclei=extra)
        reports = verify_theorems(frame, _VERIFY_SUITES[args.suite], budget)
        body = {"reports": [r.to_dict(include_timing=text) for r in reports]}
        return body, 0 if all(r.passed for r in reports) else 1

    if args.verb == "trees":
        suites = run_tree_suites(args.seed, args.cases, depth=args.depth)
        ok = all(not s["failures"] for s in suites)
        return {"suites": suites}, 0 if ok else 1

    if args.verb == "pca":
        t = parse_term(args.term, auto_declare=True)
        r = eval_term(t, args.fuel)
        body = {
            "term": args.term,
            "normal_form": None if r.diverged else pp(r.term),
            "steps": r.steps,
            "diverged": r.diverged,
        }
        return body, 3 if r.diverged else 0

    if args.verb == "weihrauch":
        f = io.weihrauch_predicate_from_dict(io.load_json(args.f), args.fuel)
        g = io.weihrauch_predicate_from_dict(io.load_json(args.g), args.fuel)
        l1 = parse_term(args.l1)
        l2 = parse_term(args.l2)
        v = check_weihrauch(f, g, l1, l2, args.fuel)
        body = {"verdict": v.verdict, "witness": v.witness, "obligations": v.obligations}
        status = {"accepted": 0, "rejected": 1, "unknown": 3}[v.verdict]
        return body, status

    if args.verb == "oracle-tree":
        f = io.weihrauch_predicate_from_dict(io.load_json(args.pred), args.fuel)
        members = io.terms_from_json(io.load_json(args.s))
        t = parse_term(args.term, auto_declare=True)
        v = check_oracle_membership_w(f, members, t, depth=args.depth, fuel=args.fuel)
        body = {
            "verdict": v.verdict,
            "path": list(v.path),
            "certificate": v.certificate,
        }
        status = {"member": 0, "not_member": 1, "unknown": 3}[v.verdict]
        return body, status

    raise OracleModError(f"unhandled verb {args.verb!r}")


def _text_lines(obj, indent: int = 0):
    pad = "  " * indent
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                yield f"{pad}{k}:"
                yield from _text_lines(v, indent + 1)
            else:
                yield f"{pad}{k}: {json.dumps(v)}"
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                yield f"{pad}-"
                yield from _text_lines(v, indent + 1)
            else:
                yield f"{pad}- {json.dumps(v)}"
    else:
        yield f"{pad}{json.dumps(obj)}"


def emit_report(report: dict, fmt: str, elapsed_ms: float | None = None) -> str:
    """Render a report; json output is stable and timing-free."""
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    lines = list(_text_lines(report))
    if elapsed_ms is not None:
        lines.append(f"elapsed_ms: {elapsed_ms:.1f}")
    return "\n".join(lines) + "\n"


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    command = " ".join(
        [args.verb] + ([args.sub] if getattr(args, "sub", None) else [])
        + ([args.suite] if getattr(args, "suite", None) else [])
    )
    t0 = time.perf_counter()
    try:
        body, status = _dispatch(args)
    except InternalInvariantViolation as e:
        payload = {
            "header": {"command": command, "version": __version__},
            "bug_report": {"error": "internal invariant violation", "detail": str(e)},
            "status": 4,
        }
        sys.stderr.write(emit_report(payload, args.format))
        return 4
    except (OracleModError, OSError, json.JSONDecodeError, ValueError, KeyError) as e:
        sys.stderr.write(f"oraclemod: error: {e}\n")
        return 2
    report = {
        "header": {
            "command": command,
            "seed": getattr(args, "seed", 0),
            "version": __version__,
        },
        "body": body,
        "status": status,
    }
    elapsed = (time.perf_counter() - t0) * 1000.0
    rendered = emit_report(report, args.format, elapsed if args.format == "text" else None)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(rendered)
    else:
        sys.stdout.write(rendered)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
