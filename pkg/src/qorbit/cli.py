"""Batch driver: every check and sweep as a subcommand with JSON output.

Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 invalid
parameters.  Output is deterministic: fixed field order, floats with 17
significant digits, sweeps merged in input order regardless of the worker
pool (capped by QORBIT_THREADS).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

SCHEMA = 1


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format(value, ".17g")
    if isinstance(value, complex):
        return _fmt({"re": value.real, "im": value.imag})
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, dict):
        inner = ",".join(f"{json.dumps(str(k))}:{_fmt(v)}" for k, v in value.items())
        return "{" + inner + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(_fmt(v) for v in value) + "]"
    return json.dumps(str(value))


def emit(report: dict) -> None:
    body = {"schema": SCHEMA}
    body.update(report)
    sys.stdout.write(_fmt(body) + "\n")


def parse_complex(text: str) -> complex:
    if "," in text:
        re_s, im_s = text.split(",", 1)
        return complex(float(re_s), float(im_s))
    return complex(float(text), 0.0)


class ParameterFailure(Exception):
    pass


def _check_q(q: float) -> float:
    if not 0 < q < 1:
        raise ParameterFailure("q must satisfy 0 < q < 1")
    return q


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_heis(args) -> int:
    from . import uq
    from .heis import HeisAlgebra, WModule, check_I0_invariance, all_words, nf_multiplicative

    n, N = args.n, args.degree
    if n < 1 or N < 1:
        raise ParameterFailure("need n >= 1 and degree >= 1")
    if args.check == "relations":
        W = WModule(n, N)
        failures = [name for name, rel in uq.defining_relations(n)
                    if not W.annihilated_by(rel)]
        emit({"command": "heis", "check": "relations", "n": n, "degree": N,
              "status": "pass" if not failures else "fail",
              "counterexample": failures[:1] or None})
        return 0 if not failures else 1
    if args.check == "pbw":
        alg = HeisAlgebra(n)
        bad = nf_multiplicative(alg, max_len=min(N, 4))
        emit({"command": "heis", "check": "pbw", "n": n, "degree": N,
              "status": "pass" if bad is None else "fail",
              "counterexample": bad})
        return 0 if bad is None else 1
    if args.check == "i0":
        rep = check_I0_invariance(n)
        emit({"command": "heis", "check": "i0", "n": n, "degree": N,
              "status": rep["status"], "counterexample": rep["failures"] or None})
        return 0 if rep["status"] == "pass" else 1
    raise ParameterFailure(f"unknown check {args.check!r}")


def cmd_funcx(args) -> int:
    from .funcx import xcd_checks

    if args.check in ("phi", "relations", "star"):
        res = xcd_checks()
        keymap = {"phi": ["phi_identity_ok"],
                  "relations": ["zeta_zetastar_ok", "zetastar_zeta_ok"],
                  "star": ["zeta_zetastar_ok", "zetastar_zeta_ok", "phi_identity_ok"]}
        oks = {k: res[k] for k in keymap[args.check]}
        status = "pass" if all(oks.values()) else "fail"
        emit({"command": "funcx", "check": args.check, "n": args.n,
              "status": status, "details": oks})
        return 0 if status == "pass" else 1
    raise ParameterFailure(f"unknown check {args.check!r}")


def _rep_params(args):
    from .series import RepParams, ParameterError

    try:
        return RepParams(_check_q(args.q), parse_complex(args.c0),
                         parse_complex(args.d0), args.nu0)
    except ParameterError as exc:
        raise ParameterFailure(str(exc))


def cmd_moment(args) -> int:
    p = _rep_params(args)
    if args.check == "relations":
        from .moment import verify_relations_pi, WMomentOps

        rep = verify_relations_pi(p, args.degree // 2)
        details = {"pi_worst_residual": rep["worst_residual"],
                   "pi_worst_relation": rep["worst_relation"]}
        if args.n >= 2:
            wm = WMomentOps(args.n, min(args.degree // 2, 5), args.q)
            wrep = wm.verify_relations()
            details["w_worst_residual"] = wrep["worst_residual"]
        ok = rep["worst_residual"] < args.tol and details.get("w_worst_residual", 0) < args.tol
        emit({"command": "moment", "check": "relations", "params": _echo(args),
              "status": "pass" if ok else "fail", "details": details})
        return 0 if ok else 1
    if args.check == "casimir":
        from .moment import casimir_check_pi

        rep = casimir_check_pi(p, args.degree // 2)
        ok = rep["residual"] < args.tol and rep["value_rel_err"] < args.tol
        emit({"command": "moment", "check": "casimir", "params": _echo(args),
              "status": "pass" if ok else "fail",
              "details": {"scalar": rep["scalar"], "residual": rep["residual"],
                          "value_rel_err": rep["value_rel_err"]}})
        return 0 if ok else 1
    raise ParameterFailure(f"unknown check {args.check!r}")


def _echo(args) -> dict:
    keys = ("q", "c0", "d0", "nu0", "n", "degree", "tol", "l", "lambda1", "lambda2")
    out = {}
    for k in keys:
        if hasattr(args, k):
            out[k] = getattr(args, k)
    return out


def _classify_report(p) -> dict:
    from .series import classify, x_spectrum, gram_matrix

    label = classify(p)
    spec = x_spectrum(p)
    gr = gram_matrix(p, 25)
    return {
        "series": label.series,
        "l": complex(label.l),
        "epsilon": label.epsilon,
        "casimir": complex(label.casimir),
        "spectrum_kind": spec.kind,
        "gram_positive": gr.positive,
    }


def cmd_classify(args) -> int:
    p = _rep_params(args)
    rep = _classify_report(p)
    emit({"command": "classify", "params": _echo(args), **rep})
    return 0


def cmd_sweep(args) -> int:
    from .series import RepParams, ParameterError

    with open(args.grid) as fh:
        grid = json.load(fh)
    q = _check_q(grid["q"])
    points = grid["points"]

    def one(pt):
        try:
            p = RepParams(q, parse_complex(str(pt["c0"])), parse_complex(str(pt["d0"])),
                          float(pt["nu0"]))
        except ParameterError as exc:
            return {"point": pt, "error": str(exc)}
        return {"point": pt, **_classify_report(p)}

    workers = max(1, int(os.environ.get("QORBIT_THREADS", "1")))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(one, points))
    else:
        rows = [one(pt) for pt in points]
    emit({"command": "sweep", "q": q, "rows": rows})
    return 0


def cmd_degen(args) -> int:
    from .degen import classify_su21, su21_char, lattice_scan

    q = _check_q(args.q)
    c0, d0 = args.c0f, args.d0f
    if c0 <= 0 or d0 <= 0:
        raise ParameterFailure("c0, d0 must be positive")
    res = classify_su21(q, c0, d0, args.lambda1, args.lambda2)
    char = su21_char(q, c0, d0, args.lambda1, args.lambda2)
    rep = lattice_scan(char, bound=args.bound, max_points=4000)
    regions = {}
    from .degen import region_of
    for k in rep.reachable:
        r = region_of(char, k)
        regions[r] = regions.get(r, 0) + 1
    emit({"command": "degen", "params": _echo(args),
          "case": res["case"],
          "region_counts": dict(sorted(regions.items())),
          "truncation_walls": len(rep.walls),
          "unitarizable": rep.unitarizable})
    return 0


def cmd_kernel(args) -> int:
    import numpy as np
    from .qfun import (kernel_plus, kernel_plus_coeff, measure_check,
                       reproduce_monomial)

    q = _check_q(args.q)
    l = args.l
    if l >= -0.5:
        raise ParameterFailure("kernel checks require l < -1/2")
    details = {}
    failed = False
    if args.check in ("expand", "all"):
        z = 0.4
        taylor = sum(kernel_plus_coeff(k, l, q) * z ** k for k in range(300))
        direct = kernel_plus(z ** 0.5, z ** 0.5, l, q)
        err = abs(taylor - direct) / abs(direct)
        details["expand_rel_err"] = err
        failed |= err > 1e-12
    if args.check in ("psd", "all"):
        rng = np.random.default_rng(12345)
        pts = rng.uniform(0.05, 0.9, 10) * np.exp(1j * rng.uniform(0, 2 * np.pi, 10))
        G = np.array([[kernel_plus(a_, b_, l, q) for b_ in pts] for a_ in pts])
        mineig = float(np.min(np.linalg.eigvalsh((G + G.conj().T) / 2)))
        details["psd_min_eig"] = mineig
        failed |= mineig < -1e-10
    if args.check in ("reproduce", "all"):
        mu = 0.35 + 0.2j
        worst = 0.0
        for j in range(0, 11):
            worst = max(worst, abs(reproduce_monomial(l, q, j, mu) - mu ** j))
        details["reproduce_worst_err"] = worst
        details["measure"] = measure_check(l, 0.0, q, 15)
        failed |= worst > 1e-6
    if args.emit_csv:
        sys.stdout.write("k,coefficient\n")
        for k in range(21):
            sys.stdout.write(f"{k},{format(kernel_plus_coeff(k, l, q), '.17g')}\n")
        return 0
    emit({"command": "kernel", "params": {"q": q, "l": l}, "check": args.check,
          "status": "fail" if failed else "pass", "details": details})
    return 1 if failed else 0


def cmd_integral(args) -> int:
    import random

    from .series import check_integral_invariance

    p = _rep_params(args)
    rng = random.Random(args.seed)
    worst = 0.0
    for _ in range(args.samples):
        f = {rng.randint(-10, 10): rng.uniform(-1, 1) for _ in range(5)}
        rep = check_integral_invariance(p, f)
        worst = max(worst, rep["E"], rep["F"], rep["K"])
    ok = worst < args.tol
    emit({"command": "integral", "params": _echo(args),
          "status": "pass" if ok else "fail",
          "details": {"worst_invariance_residual": worst, "samples": args.samples}})
    return 0 if ok else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qorbit",
                                 description="quantum orbit method workbench")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("heis", help="Heisenberg algebra checks")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--degree", type=int, default=6)
    p.add_argument("--check", default="relations", choices=["relations", "pbw", "i0"])
    p.set_defaults(func=cmd_heis)

    p = sub.add_parser("funcx", help="function-algebra checks")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--c0", default="1")
    p.add_argument("--d0", default="1")
    p.add_argument("--check", default="phi", choices=["phi", "relations", "star"])
    p.set_defaults(func=cmd_funcx)

    p = sub.add_parser("moment", help="moment map operator checks")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--c0", default="1")
    p.add_argument("--d0", default="1")
    p.add_argument("--nu0", type=float, default=1.0)
    p.add_argument("--degree", type=int, default=12)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--check", default="relations", choices=["relations", "casimir"])
    p.set_defaults(func=cmd_moment)

    p = sub.add_parser("classify", help="series classification")
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--c0", required=True)
    p.add_argument("--d0", required=True)
    p.add_argument("--nu0", type=float, required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("sweep", help="classification sweep from a JSON grid")
    p.add_argument("--grid", required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("degen", help="degenerate su(2,1) scan")
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--c0", dest="c0f", type=float, required=True)
    p.add_argument("--d0", dest="d0f", type=float, required=True)
    p.add_argument("--lambda1", type=float, required=True)
    p.add_argument("--lambda2", type=float, required=True)
    p.add_argument("--bound", type=int, default=20)
    p.set_defaults(func=cmd_degen)

    p = sub.add_parser("kernel", help="reproducing kernel checks")
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--l", type=float, required=True)
    p.add_argument("--check", default="all", choices=["expand", "psd", "reproduce", "all"])
    p.add_argument("--emit-csv", action="store_true")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("integral", help="invariant integral invariance")
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--c0", required=True)
    p.add_argument("--d0", required=True)
    p.add_argument("--nu0", type=float, required=True)
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_integral)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0,) else 0
    try:
        return args.func(args)
    except ParameterFailure as exc:
        sys.stderr.write(f"parameter error: {exc}\n")
        return 2
    except (ValueError, ArithmeticError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
