"""Command-line frontend: deterministic JSON in, deterministic JSON out.

Exit status 0 on success, 1 on a domain error (machine-readable error JSON
on stdout), 2 on usage errors.  No timestamps, no randomness without an
explicit seed: identical invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import brauer, dp6, hexagon, intlattice, proofkit, selftest
from .errors import Dp6kitError
from .fields import GF

SCHEMA = "dp6kit/1"


def _emit(payload):
    out = {"schema": SCHEMA}
    out.update(payload)
    sys.stdout.write(json.dumps(out, sort_keys=True, separators=(",", ":")) + "\n")


def _fail(exc):
    _emit({"error": type(exc).__name__, "message": str(exc)})
    return 1


# ---------------------------------------------------------------------------
# subcommand handlers


def _quadfield(data):
    return brauer.QuadField(data["d"]) if data.get("d") is not None \
        else brauer.QuadField.split()


def _cmd_brauer(args):
    op = args.op
    if op == "index":
        u = brauer.from_json(json.loads(args.payload))
        _emit({"index": brauer.index(u)})
    elif op == "tensor":
        data = json.loads(args.payload)
        u = brauer.tensor(brauer.from_json(data["left"]), brauer.from_json(data["right"]))
        _emit({"class": brauer.to_json(u)})
    elif op == "inverse":
        u = brauer.inverse(brauer.from_json(json.loads(args.payload)))
        _emit({"class": brauer.to_json(u)})
    elif op == "is-split":
        u = brauer.from_json(json.loads(args.payload))
        _emit({"split": brauer.is_split(u)})
    elif op == "quaternion":
        data = json.loads(args.payload)
        u = brauer.quaternion_class(Fraction(data["a"]), Fraction(data["b"]))
        _emit({"class": brauer.to_json(u)})
    elif op == "order3":
        data = json.loads(args.payload)
        u = brauer.order3_class({int(p): Fraction(f)
                                 for p, f in data["primes"].items()})
        _emit({"class": brauer.to_json(u)})
    elif op == "hilbert":
        data = json.loads(args.payload)
        v = data["place"]
        v = v if v == "inf" else int(v)
        _emit({"symbol": brauer.hilbert_symbol(Fraction(data["a"]),
                                               Fraction(data["b"]), v)})
    elif op == "splitting":
        data = json.loads(args.payload)
        v = data["place"]
        v = v if v == "inf" else int(v)
        _emit({"splitting": brauer.splitting_in_quadratic(_quadfield(data), v)})
    elif op == "restriction":
        data = json.loads(args.payload)
        u = brauer.restriction(brauer.from_json(data["class"]), _quadfield(data))
        _emit({"classK": brauer.to_json_K(u)})
    elif op == "corestriction":
        data = json.loads(args.payload)
        u = brauer.corestriction(brauer.from_json_K(data["classK"]))
        _emit({"class": brauer.to_json(u)})
    elif op == "involution":
        data = json.loads(args.payload)
        u = brauer.from_json_K(data["classK"])
        _emit({"admits": brauer.admits_unitary_involution(u)})
    elif op == "decompose":
        u = brauer.from_json(json.loads(args.payload))
        C, D = brauer.decompose_degree6(u)
        _emit({"C": brauer.to_json(C), "D": brauer.to_json(D)})
    elif op == "chatelet":
        u = brauer.from_json(json.loads(args.payload))
        _emit({"kernel": [brauer.to_json(v) for v in brauer.chatelet_kernel(u)]})
    else:
        raise Dp6kitError(f"unknown brauer op {op}")
    return 0


def _cmd_lattice(args):
    M = intlattice.IntMat(json.loads(args.matrix))
    if args.op == "snf":
        S, U, V = intlattice.smith_normal_form(M)
        _emit({"S": _mat_json(S), "U": _mat_json(U), "V": _mat_json(V)})
    elif args.op == "kernel":
        _emit({"kernel_columns": _mat_json(intlattice.kernel_basis(M))})
    elif args.op == "hnf":
        _emit({"hnf": _mat_json(intlattice.row_hnf(M))})
    else:
        raise Dp6kitError(f"unknown lattice op {args.op}")
    return 0


def _mat_json(M):
    return [[str(x) for x in row] for row in M.data]


def _cmd_hexagon(args):
    if args.all_subgroups:
        _emit({"reports": hexagon.all_subgroup_reports()})
    else:
        _emit({"report": hexagon.subgroup_report(args.subgroup)})
    return 0


def _surface_for(args):
    field = GF(*dp6._parse_prime_power(args.q))
    twists = dp6.standard_twists(field)
    if args.model not in twists:
        raise Dp6kitError(f"unknown model {args.model}; choose from {dp6.TWIST_NAMES}")
    return twists[args.model]


def _cmd_surface(args):
    if args.action == "build":
        surf = _surface_for(args)
        _emit(surf.descriptor_json())
    elif args.action == "count":
        surf = _surface_for(args)
        rec = dp6.count_points(surf, args.k)
        _emit({"count": rec.raw, "predicted": rec.predicted, "q": rec.q, "k": rec.k})
    elif args.action == "lines":
        surf = _surface_for(args)
        lr = dp6.find_lines(surf)
        _emit({
            "field_degree": lr.field.k,
            "lines": {lbl: [[repr(x) for x in row] for row in ln.matrix]
                      for lbl, ln in sorted(lr.lines.items())},
            "adjacency": {lbl: sorted(adj) for lbl, adj in sorted(lr.adjacency.items())},
        })
    elif args.action == "frobenius":
        surf = _surface_for(args)
        phi = dp6.frobenius_on_lines(surf)
        _emit({"frobenius": phi.label, "swap": phi.swap,
               "cycle_type": list(phi.cycle_type())})
    elif args.action == "check-zeta":
        surf = _surface_for(args)
        recs = dp6.zeta_check(surf)
        _emit({"records": [r.as_dict() | {"ok": r.ok} for r in recs],
               "all_ok": all(r.ok for r in recs)})
    else:
        raise Dp6kitError(f"unknown surface action {args.action}")
    return 0


def _cmd_replay(args):
    A = brauer.from_json(json.loads(args.algebra))
    if args.proof == "first":
        cert = proofkit.replay_first_proof(A)
    elif args.proof == "second":
        cert = proofkit.replay_second_proof(A)
    else:
        raise Dp6kitError(f"unknown proof {args.proof}")
    if args.corollary:
        cert = proofkit.corollary_cdpgl(cert)
    if args.transcript:
        sys.stdout.write(proofkit.transcript(cert) + "\n")
    else:
        _emit({"certificate": cert.as_dict(),
               "verified": proofkit.verify_certificate(cert)})
    return 0


def _cmd_selftest(args):
    report = selftest.run_all(filter_text=args.filter)
    for r in report["results"]:
        status = "PASS" if r["passed"] else "FAIL"
        sys.stderr.write(f"[{status}] criterion {r['id']}: {r['name']}\n")
    sys.stdout.write(selftest.report_json(report).decode() + "\n")
    return 0 if report["all_passed"] else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dp6kit",
        description="exact del Pezzo-6 / Brauer toolkit (JSON output)")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser(
        "brauer", help="invariant-vector operations",
        description='classes as {"inf": "0|1/2", "primes": {"7": "1/6", ...}}; '
                    'classes over a quadratic field carry slot lists and a "d"')
    b.add_argument("op", choices=["index", "tensor", "inverse", "is-split",
                                  "quaternion", "order3", "hilbert", "splitting",
                                  "restriction", "corestriction", "involution",
                                  "decompose", "chatelet"])
    b.add_argument("payload", help="JSON payload")
    b.set_defaults(fn=_cmd_brauer)

    lat = sub.add_parser("lattice", help="integer matrix normal forms")
    lat.add_argument("op", choices=["snf", "kernel", "hnf"])
    lat.add_argument("matrix", help="JSON array of rows")
    lat.set_defaults(fn=_cmd_lattice)

    h = sub.add_parser("hexagon", help="subgroup reports for the line lattice")
    h.add_argument("action", nargs="?", choices=["report"], default="report")
    h.add_argument("--all-subgroups", action="store_true")
    h.add_argument("--subgroup", type=int, default=0)
    h.set_defaults(fn=_cmd_hexagon)

    s = sub.add_parser("surface", help="surface models over finite fields")
    s.add_argument("action", choices=["build", "count", "lines", "frobenius",
                                      "check-zeta"])
    s.add_argument("--model", default="split")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--k", type=int, default=1)
    s.set_defaults(fn=_cmd_surface)

    r = sub.add_parser("replay", help="machine-checked proof replays")
    r.add_argument("--proof", choices=["first", "second"], required=True)
    r.add_argument("--algebra", required=True, help="invariant-vector JSON")
    r.add_argument("--corollary", action="store_true",
                   help="wrap with the projective-linear-group conclusion")
    r.add_argument("--transcript", action="store_true",
                   help="human-readable transcript instead of JSON")
    r.set_defaults(fn=_cmd_replay)

    st = sub.add_parser("selftest", help="run the acceptance suite")
    st.add_argument("--filter", default=None)
    st.set_defaults(fn=_cmd_selftest)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except Dp6kitError as exc:
        return _fail(exc)
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        return _fail(exc)


if __name__ == "__main__":
    sys.exit(main())
