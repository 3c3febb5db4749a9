"""Command-line front end: ``doubledecomp <command> ...`` emitting JSON."""
from __future__ import annotations

import argparse
import json
import sys

from . import elliptic, lattice, rational
from .elliptic import DEFAULT_SEED, DEFAULT_SETTINGS, AmbientLattice, Modulus
from .errors import DegenerateSampling, DegreeCollapse, DoubleDecompError, NonConvergent

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 2, 3


class InputError(ValueError):
    pass


class VerificationFailed(Exception):
    def __init__(self, payload, message):
        super().__init__(message)
        self.payload = payload


def _load_json(text: str):
    if text.startswith("@"):
        with open(text[1:]) as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from None


def parse_basis(text: str) -> lattice.SublatticeBasis:
    obj = _load_json(text)
    try:
        return lattice.SublatticeBasis.from_json_obj(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"invalid basis {text!r}: {exc}") from None


def parse_tau(text: str) -> complex:
    """``i``, ``1.5i`` or ``[re, im]``."""
    s = text.strip()
    if s.endswith("i") and not s.startswith("["):
        head = s[:-1]
        try:
            tau = 1j * (float(head) if head else 1.0)
        except ValueError:
            raise InputError(f"cannot parse tau {text!r}") from None
    else:
        obj = _load_json(s)
        if not (isinstance(obj, list) and len(obj) == 2):
            raise InputError(f"tau must be 'Xi' or [re, im], got {text!r}")
        tau = complex(float(obj[0]), float(obj[1]))
    if tau.imag <= 0:
        raise InputError("tau must have positive imaginary part")
    return tau


def parse_lattice(text: str) -> AmbientLattice:
    """Lattice JSON ``{"omega1": [re, im], "omega2": [re, im]}`` or a tau."""
    s = text.strip()
    if s.startswith("{") or s.startswith("@"):
        obj = _load_json(s)
        try:
            return AmbientLattice.from_json_obj(obj)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"invalid lattice {text!r}: {exc}") from None
    return AmbientLattice.from_tau(parse_tau(s))


def parse_complex(text: str) -> complex:
    try:
        return complex(text.replace("i", "j"))
    except ValueError:
        raise InputError(f"cannot parse complex number {text!r}") from None


def _pair(z: complex) -> list[float]:
    return [z.real, z.imag]


def _settings(args, default) -> elliptic.EvalSettings:
    kw = {"seed": args.seed}
    if args.series_tol is not None:
        kw["series_tolerance"] = args.series_tol
    if args.identity_tol is not None:
        kw["identity_tolerance"] = args.identity_tol
    try:
        return default.replace(**kw)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_primes(args):
    subs = lattice.enumerate_prime_sublattices(args.p)
    pl = lattice.SublatticeBasis.identity().scaled(args.p)
    pairs = []
    for i, a in enumerate(subs):
        for j in range(i + 1, len(subs)):
            m = lattice.intersect(a, subs[j])
            pairs.append({"a": i, "b": j, "intersection": m.to_json_obj(), "equals_pL": m == pl})
    return {
        "p": args.p,
        "count": len(subs),
        "sublattices": [s.to_json_obj() for s in subs],
        "intersections": pairs,
        "certificate": all(x["equals_pL"] for x in pairs) and len(subs) == args.p + 1,
    }


def _step_report(filt: lattice.PrimeFiltration) -> list[dict]:
    steps = []
    for prev, nxt, p in zip(filt.chain, filt.chain[1:], filt.primes):
        idx = lattice.index(nxt, prev)
        steps.append({"from": prev.to_json_obj(), "to": nxt.to_json_obj(),
                      "index": idx, "prime": p, "ok": idx == p})
    return steps


def cmd_filtrate(args):
    filt = lattice.prime_filtration(parse_basis(args.basis))
    steps = _step_report(filt)
    return {"filtration": filt.to_json_obj(), "steps": steps,
            "certificate": all(s["ok"] for s in steps)}


def cmd_table(args):
    star = lattice.prime_filtration(parse_basis(args.basis_a))
    costar = lattice.prime_filtration(parse_basis(args.basis_b))
    table = lattice.build_table(star, costar)
    edges = table.edge_report()
    summary = {"corner": table.corner.to_json_obj(), "edges": edges,
               "certificate": table.check(), "r": table.r, "s": table.s}
    if args.jsonl:
        rows = [{"row": k, "prime": table.row_primes[k - 1] if k else None,
                 "cells": [c.to_json_obj() for c in table.cells[k]]}
                for k in range(table.s + 1)]
        return {"_lines": rows + [summary]}
    return {"table": table.to_json_obj(), **summary}


def cmd_verify_dd(args):
    settings = _settings(args, rational.MAP_SETTINGS)
    lat = parse_lattice(args.lattice)
    a, b = parse_basis(args.basis_a), parse_basis(args.basis_b)
    dd = rational.double_decomposition(lat, a, b, settings)
    payload = {"lattice": lat.to_json_obj(), "decomposition": dd.to_json_obj(), "ok": dd.ok}
    if not dd.ok:
        raise VerificationFailed(payload, f"residual {dd.residual:.3e} exceeds {dd.tolerance:g}")
    return payload


def cmd_zolotarev(args):
    if args.n < 1:
        raise InputError("n must be a positive integer")
    tau = parse_tau(args.tau)
    m = Modulus(tau)
    settings = _settings(args, DEFAULT_SETTINGS)
    xs = [parse_complex(x) for x in args.x]
    values = []
    for x in xs:
        z = rational.zolotarev_eval(x, args.n, m, settings)
        values.append({"x": _pair(x), "z": _pair(complex(z))})
    payload = {"n": args.n, "tau": _pair(tau), "values": values}
    failures = []
    if args.coefficients:
        real = rational.zolotarev_as_rational(args.n, m, _settings(args, rational.MAP_SETTINGS))
        payload["realization"] = real.to_json_obj()
        if real.residual > real.tolerance:
            failures.append(f"realization residual {real.residual:.3e}")
    if args.check_nesting is not None:
        mm = args.check_nesting
        if mm < 1 or args.n % mm:
            raise InputError(f"--check-nesting {mm} must divide n = {args.n}")
        resid = rational.nesting_check(mm, args.n // mm, m, settings)
        ok = resid <= settings.identity_tolerance
        payload["nesting"] = {"m": mm, "n": args.n // mm, "residual": resid, "samples": 30,
                              "tolerance": settings.identity_tolerance, "ok": ok}
        if not ok:
            failures.append(f"nesting residual {resid:.3e}")
    if failures:
        raise VerificationFailed(payload, "; ".join(failures))
    return payload


def _render_text(obj, indent=0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.append(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{obj}")
    return "\n".join(lines)


def _emit(payload, args):
    if isinstance(payload, dict) and "_lines" in payload:
        if args.format == "text":
            text = "\n\n".join(_render_text(x) for x in payload["_lines"])
        else:
            text = "\n".join(json.dumps(x, sort_keys=True) for x in payload["_lines"])
    elif args.format == "text":
        text = _render_text(payload)
    else:
        text = json.dumps(payload, sort_keys=True, indent=2)
    if args.output and args.output != "-":
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--series-tol", type=float, default=None,
                        help=f"theta-series truncation tolerance (default {DEFAULT_SETTINGS.series_tolerance:g})")
    common.add_argument("--identity-tol", type=float, default=None,
                        help="identity-check tolerance (default 1e-8 for rational maps, "
                             f"{DEFAULT_SETTINGS.identity_tolerance:g} for kernel identities)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help=f"sampling seed (default {DEFAULT_SEED})")
    common.add_argument("--output", "-o", default=None, help="write to this file instead of stdout")
    common.add_argument("--format", choices=("json", "text"), default="json")

    parser = argparse.ArgumentParser(
        prog="doubledecomp",
        description="Sublattice filtrations and the rational maps they induce.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("primes", parents=[common], help="list the p+1 sublattices of index p")
    p.add_argument("p", type=int)
    p.set_defaults(func=cmd_primes)

    p = sub.add_parser("filtrate", parents=[common], help="prime filtration of a sublattice")
    p.add_argument("basis", help='basis JSON such as "[[1,0],[0,4]]" (or @file)')
    p.set_defaults(func=cmd_filtrate)

    p = sub.add_parser("table", parents=[common], help="decomposition table of two filtrations")
    p.add_argument("basis_a")
    p.add_argument("basis_b")
    p.add_argument("--jsonl", action="store_true", help="stream one JSON line per table row")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify-dd", parents=[common], help="check both factorisations of a map")
    p.add_argument("lattice", help='tau ("i", "1.5i", "[re,im]") or lattice JSON')
    p.add_argument("basis_a")
    p.add_argument("basis_b")
    p.set_defaults(func=cmd_verify_dd)

    p = sub.add_parser("zolotarev", parents=[common], help="evaluate Z_n(x | tau)")
    p.add_argument("n", type=int)
    p.add_argument("tau", help='"i", "1.5i" or "[re,im]"')
    p.add_argument("x", nargs="*", help="evaluation points (real or complex, e.g. 0.3+0.2i)")
    p.add_argument("--coefficients", action="store_true", help="include the rational realization")
    p.add_argument("--check-nesting", type=int, metavar="M", default=None,
                   help="check Z_n = Z_M o Z_(n/M)")
    p.set_defaults(func=cmd_zolotarev)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload = args.func(args)
    except VerificationFailed as exc:
        _emit(exc.payload, args)
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (NonConvergent, DegenerateSampling, DegreeCollapse) as exc:
        print(f"verification failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (InputError, DoubleDecompError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(payload, args)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
