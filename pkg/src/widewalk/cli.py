"""Command-line front end.

Subcommands
-----------
graph aghp|complete|spectrum   construct graphs, report expansion
verify <check>                 run one of the exact verification suites
code gen-base|encode|report    base-code search, encoding, bias report

Exit codes are exactly five: 0 all assertions pass, 1 a verified
violation (or a failed randomized search), 2 invalid input, 3 budget
exceeded, 4 hypotheses unmet so no assertion was made.

Every run echoes its resolved configuration: as a "run" object in JSON
output, as a leading "# {...}" comment line in CSV output.  Outputs are
deterministic given (config, seed); the worker count never changes them.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional

import numpy as np

from .amplify import (
    SignedFn,
    TOL_BOUND,
    check_base_case,
    check_bias_reduction_lemma,
    check_induction_step,
    verify_induction_arithmetic,
)
from .code import (
    AmplifiedCode,
    BaseCodeSearchFailed,
    LinearCode,
    code_report,
    encode as encode_message,
    gen_base_code,
)
from .graphs import (
    SPECTRUM_SCAN_LIMIT,
    CayleyGraph,
    build_aghp,
    build_complete_selfloop,
    spectrum,
)
from .hitting import check_hitting
from .walks import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    ReplacementSystem,
    WalkParams,
    check_first_coord_uniform,
    check_local_invertibility,
    check_pseudorandomness,
)

SCHEMA_VERSION = 1
EXIT_PASS = 0
EXIT_VIOLATION = 1
EXIT_INVALID = 2
EXIT_BUDGET = 3
EXIT_HYPOTHESES = 4

_TV_TOL = 1e-12


def _json_default(obj):
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    raise TypeError(f"not JSON-serializable: {obj!r}")


def _emit(args, header: dict, payload: dict, csv_body: str, flat: bool = False) -> None:
    if args.format == "csv":
        text = "# " + json.dumps(header, sort_keys=True, default=_json_default) + "\n"
        text += csv_body
    else:
        doc = {"schema_version": SCHEMA_VERSION, "run": header}
        if flat:
            doc.update(payload)
        else:
            doc["report"] = payload
        text = json.dumps(doc, indent=2, sort_keys=True, default=_json_default) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _header(args, system: Optional[dict] = None, **extra) -> dict:
    h = {
        "command": f"{args.command} {args.subcommand}",
        "format": args.format,
        "seed": args.seed,
        "budget": args.budget,
        "workers": args.workers,
    }
    if system is not None:
        h["system"] = system
    h.update(extra)
    return h


def _load_graph(path: str) -> CayleyGraph:
    return CayleyGraph.from_json(Path(path).read_text())


def _load_system(path: str) -> tuple[ReplacementSystem, dict]:
    """Build a ReplacementSystem from a config file.

    Schema: {"m", "s", "ell", "t"?, "outer": "complete"|path,
    "inner": "aghp"|path, "support"?: f-spec}.
    """
    cfg = json.loads(Path(path).read_text())
    params = WalkParams(int(cfg["m"]), int(cfg["s"]), int(cfg["ell"]))
    outer_spec = cfg.get("outer", "complete")
    inner_spec = cfg.get("inner", "aghp")
    outer = (
        build_complete_selfloop(params.m)
        if outer_spec == "complete"
        else _load_graph(outer_spec)
    )
    inner = (
        build_aghp(params.r, params.ell)
        if inner_spec == "aghp"
        else _load_graph(inner_spec)
    )
    system = ReplacementSystem(outer, inner, params)
    resolved = {
        "m": params.m,
        "s": params.s,
        "ell": params.ell,
        "outer": outer_spec,
        "inner": inner_spec,
    }
    if "t" in cfg:
        resolved["t"] = int(cfg["t"])
    if "support" in cfg:
        resolved["support"] = cfg["support"]
    return system, resolved


def _resolve_f(spec: str, n: int) -> SignedFn:
    """f from a spec string: "balanced", "empty" (bias 1), or a
    comma-separated hex list of support vertices."""
    if spec == "balanced":
        return SignedFn.balanced(n)
    if spec == "empty":
        return SignedFn.zero(n)
    support = [int(tok, 16) for tok in spec.split(",") if tok.strip()]
    return SignedFn.from_support(n, support)


def _parse_set(spec: str, n: int) -> list[int]:
    """Vertex subset: "first-K" shorthand or a comma-separated hex list."""
    if spec.startswith("first-"):
        count = int(spec[len("first-"):])
        if not 1 <= count <= n:
            raise ValueError(f"first-{count} out of range for {n} vertices")
        return list(range(count))
    return [int(tok, 16) for tok in spec.split(",") if tok.strip()]


def _graph_payload(g: CayleyGraph) -> dict:
    payload = json.loads(g.to_json())
    if g.dim <= SPECTRUM_SCAN_LIMIT:
        rep = spectrum(g)
        payload["lambda"] = rep.lam
        payload["lambda_exact"] = rep.lambda_exact
    return payload


def _graph_csv(payload: dict) -> str:
    lam = payload.get("lambda")
    return (
        "name,dim,degree,lambda\n"
        f"{payload['name']},{payload['dim']},{len(payload['generators'])},"
        f"{'' if lam is None else repr(lam)}\n"
    )


def _cmd_graph_aghp(args) -> int:
    g = build_aghp(args.r, args.ell)
    payload = _graph_payload(g)
    _emit(args, _header(args, r=args.r, ell=args.ell), payload, _graph_csv(payload), flat=True)
    return EXIT_PASS


def _cmd_graph_complete(args) -> int:
    g = build_complete_selfloop(args.m, selfloop=not args.no_selfloop)
    payload = _graph_payload(g)
    _emit(
        args,
        _header(args, m=args.m, selfloop=not args.no_selfloop),
        payload,
        _graph_csv(payload),
        flat=True,
    )
    return EXIT_PASS


def _cmd_graph_spectrum(args) -> int:
    g = _load_graph(args.path)
    rep = spectrum(g, method=args.method)
    payload = {
        "name": g.name,
        "dim": g.dim,
        "degree": g.degree,
        "lambda": rep.lam,
        "lambda_exact": rep.lambda_exact,
        "argmax_character": rep.argmax_character,
        "method": rep.method,
    }
    csv = "name,lambda,method\n" + f"{g.name},{rep.lam!r},{rep.method}\n"
    _emit(args, _header(args, path=args.path), payload, csv)
    return EXIT_PASS


def _cmd_verify_pseudorandomness(args) -> int:
    system, resolved = _load_system(args.config)
    kmax = args.kmax if args.kmax is not None else system.params.s + 1
    rows = []
    for k in range(1, kmax + 1):
        chk = check_pseudorandomness(system, k, budget=args.budget)
        rows.append((k, chk.tv_distance, chk.tv_distance <= _TV_TOL))
    payload = {
        "check": "pseudorandomness",
        "rows": [{"k": k, "tv": tv, "pass": ok} for k, tv, ok in rows],
    }
    csv = "k,tv,pass\n" + "".join(f"{k},{tv!r},{ok}\n" for k, tv, ok in rows)
    _emit(args, _header(args, system=resolved, kmax=kmax), payload, csv)
    return EXIT_PASS if all(ok for _, _, ok in rows) else EXIT_VIOLATION


def _cmd_verify_uniformity(args) -> int:
    system, resolved = _load_system(args.config)
    kmax = args.kmax if args.kmax is not None else system.params.s
    rows = []
    for k in range(1, kmax + 1):
        chk = check_first_coord_uniform(system, k, budget=args.budget)
        rows.append((k, chk.tv_distance, chk.max_deviation, chk.max_deviation <= _TV_TOL))
    payload = {
        "check": "uniformity",
        "rows": [
            {"k": k, "tv": tv, "max_deviation": dev, "pass": ok}
            for k, tv, dev, ok in rows
        ],
    }
    csv = "k,tv,max_deviation,pass\n" + "".join(
        f"{k},{tv!r},{dev!r},{ok}\n" for k, tv, dev, ok in rows
    )
    _emit(args, _header(args, system=resolved, kmax=kmax), payload, csv)
    return EXIT_PASS if all(ok for *_, ok in rows) else EXIT_VIOLATION


def _emit_moment(args, resolved: dict, report, **extra) -> int:
    _emit(
        args,
        _header(args, system=resolved, **extra),
        report.to_json_dict(),
        report.to_csv(),
    )
    if not report.hypotheses_met:
        return EXIT_HYPOTHESES
    return EXIT_PASS if report.all_passed else EXIT_VIOLATION


def _system_for(args) -> tuple[ReplacementSystem, dict]:
    system, resolved = _load_system(args.config)
    if not check_local_invertibility(system):
        raise ValueError("outer graph is not locally invertible")
    return system, resolved


def _f_for(args, system: ReplacementSystem, resolved: dict) -> SignedFn:
    spec = args.support if args.support is not None else resolved.get("support", "balanced")
    resolved["support"] = spec
    return _resolve_f(spec, system.num_outer)


def _cmd_verify_base_case(args) -> int:
    system, resolved = _system_for(args)
    f = _f_for(args, system, resolved)
    report = check_base_case(system, f)
    return _emit_moment(args, resolved, report)


def _cmd_verify_induction(args) -> int:
    system, resolved = _system_for(args)
    f = _f_for(args, system, resolved)
    kmax = args.kmax if args.kmax is not None else 2 * system.params.s
    report = check_induction_step(system, f, kmax)
    return _emit_moment(args, resolved, report, kmax=kmax)


def _cmd_verify_bias_lemma(args) -> int:
    system, resolved = _system_for(args)
    f = _f_for(args, system, resolved)
    t = args.t if args.t is not None else resolved.get("t")
    if t is None:
        raise ValueError("walk length required: pass --t or put \"t\" in the config")
    report = check_bias_reduction_lemma(system, f, int(t))
    return _emit_moment(args, resolved, report, t=int(t))


def _cmd_verify_arithmetic(args) -> int:
    lambdas = [float(tok) for tok in args.lambdas.split(",") if tok.strip()]
    s_values = [int(tok) for tok in args.s_values.split(",") if tok.strip()]
    report = verify_induction_arithmetic(lambdas, s_values, args.kmax)
    payload = {
        "check": "induction-arithmetic",
        "spot_checks_passed": report.spot_checks_passed,
        "all_passed": report.all_passed,
        "rows": [
            {
                "lambda": r.lam,
                "s": r.s,
                "valid_region": r.valid,
                "pass": r.passed,
                "max_log_violation": r.max_log_violation,
            }
            for r in report.rows
        ],
    }
    csv = "lambda,s,valid_region,pass,max_log_violation\n" + "".join(
        f"{r.lam!r},{r.s},{r.valid},{r.passed},{r.max_log_violation!r}\n"
        for r in report.rows
    )
    _emit(
        args,
        _header(args, lambdas=lambdas, s_values=s_values, kmax=args.kmax),
        payload,
        csv,
    )
    return EXIT_PASS if report.all_passed else EXIT_VIOLATION


def _cmd_verify_hitting(args) -> int:
    g = _load_graph(args.graph)
    subset = _parse_set(args.set, g.num_vertices)
    report = check_hitting(g, subset, args.tmax)
    payload = {
        "check": "hitting",
        "rho": report.rho,
        "lambda": report.lam,
        "rows": [
            {
                "t": r.t,
                "exact": float(r.exact),
                "exact_fraction": r.exact,
                "bound": float(r.bound),
                "pass": r.passed,
            }
            for r in report.rows
        ],
    }
    _emit(
        args,
        _header(args, graph=args.graph, set=args.set, tmax=args.tmax),
        payload,
        report.to_csv(),
    )
    return EXIT_PASS if report.all_passed else EXIT_VIOLATION


def _cmd_code_gen_base(args) -> int:
    rng = np.random.default_rng(args.seed)
    base = gen_base_code(args.k, args.n0, args.target_bias, rng, max_tries=args.max_tries)
    payload = base.to_json_dict()
    csv = "k,n0,bias\n" + f"{base.k},{base.n0},{base.measured_bias!r}\n"
    _emit(
        args,
        _header(args, k=args.k, n0=args.n0, target_bias=args.target_bias),
        payload,
        csv,
        flat=True,
    )
    return EXIT_PASS


def _amplified_for(args) -> tuple[AmplifiedCode, dict]:
    system, resolved = _load_system(args.config)
    base = LinearCode.from_json(json.loads(Path(args.base).read_text()))
    t = args.t if args.t is not None else resolved.get("t")
    if t is None:
        raise ValueError("walk length required: pass --t or put \"t\" in the config")
    resolved["t"] = int(t)
    return AmplifiedCode(base, system, int(t)), resolved


def _cmd_code_encode(args) -> int:
    amp, resolved = _amplified_for(args)
    x = int(args.message, 16)
    if not 0 <= x < (1 << amp.base.k):
        raise ValueError(f"message {args.message} out of range for k={amp.base.k}")
    bits = encode_message(amp, x, budget=args.budget)
    packed = np.packbits(bits, bitorder="little")
    payload = {
        "message": args.message,
        "k": amp.base.k,
        "length": int(bits.size),
        "bits_hex": packed.tobytes().hex(),
        "ones": int(bits.sum()),
    }
    csv = "message,length,ones\n" + f"{args.message},{bits.size},{int(bits.sum())}\n"
    _emit(args, _header(args, system=resolved, base=args.base, message=args.message), payload, csv)
    return EXIT_PASS


def _cmd_code_report(args) -> int:
    amp, resolved = _amplified_for(args)
    lam_b = Fraction(spectrum(amp.sys.inner).lambda_exact)
    lam_a = Fraction(spectrum(amp.sys.outer).lambda_exact)
    hypotheses_met = (
        amp.base.measured_bias_exact <= lam_b and lam_a <= lam_b * lam_b
    )
    report = code_report(amp, workers=args.workers)
    report["hypotheses_met"] = hypotheses_met
    fields = [
        "k", "n0", "base_bias", "t", "block_length", "rate",
        "bias", "bias_bound", "bias_bound_vacuous", "distance_lower_bound",
    ]
    csv = "key,value\n" + "".join(f"{k},{report[k]}\n" for k in fields)
    _emit(args, _header(args, system=resolved, base=args.base), report, csv)
    if not hypotheses_met:
        return EXIT_HYPOTHESES
    if report["bias_bound_vacuous"]:
        return EXIT_PASS
    return EXIT_PASS if report["bias"] <= report["bias_bound"] + TOL_BOUND else EXIT_VIOLATION


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0, help="RNG seed (64-bit)")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.add_argument("--workers", type=int, default=None, help="worker pool size")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help="enumeration budget (items)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="widewalk",
        description="wide replacement-walk construction and verification toolkit",
    )
    top = parser.add_subparsers(dest="command", required=True)

    graph = top.add_parser("graph", help="construct graphs and report expansion")
    gsub = graph.add_subparsers(dest="subcommand", required=True)
    p = gsub.add_parser("aghp", help="small-bias Cayley graph over F_2^r")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_graph_aghp)
    p = gsub.add_parser("complete", help="complete graph over F_2^m")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--no-selfloop", action="store_true")
    _add_common(p)
    p.set_defaults(func=_cmd_graph_complete)
    p = gsub.add_parser("spectrum", help="expansion of a stored graph")
    p.add_argument("path")
    p.add_argument("--method", default="character-sum",
                   choices=("character-sum", "character-sum-sampled", "dense-eigen"))
    _add_common(p)
    p.set_defaults(func=_cmd_graph_spectrum)

    verify = top.add_parser("verify", help="run an exact verification suite")
    vsub = verify.add_subparsers(dest="subcommand", required=True)

    def vparser(name, func, **kwargs):
        q = vsub.add_parser(name, **kwargs)
        q.set_defaults(func=func)
        _add_common(q)
        return q

    p = vparser("pseudorandomness", _cmd_verify_pseudorandomness,
                help="wide walk vs pure walk, exact TV per k")
    p.add_argument("--config", required=True)
    p.add_argument("--kmax", type=int, default=None, help="max vertex count (default s+1)")
    p = vparser("uniformity", _cmd_verify_uniformity,
                help="first-block tuple uniformity for k <= s")
    p.add_argument("--config", required=True)
    p.add_argument("--kmax", type=int, default=None)
    p = vparser("base-case", _cmd_verify_base_case,
                help="moment bounds for k = 0..s")
    p.add_argument("--config", required=True)
    p.add_argument("--support", default=None,
                   help='f spec: "balanced", "empty", or hex vertex list')
    p = vparser("induction", _cmd_verify_induction,
                help="moment recurrences for k > s")
    p.add_argument("--config", required=True)
    p.add_argument("--support", default=None)
    p.add_argument("--kmax", type=int, default=None, help="default 2s")
    p = vparser("bias-lemma", _cmd_verify_bias_lemma,
                help="end-to-end bias bound at walk length t")
    p.add_argument("--config", required=True)
    p.add_argument("--support", default=None)
    p.add_argument("--t", type=int, default=None)
    p = vparser("arithmetic", _cmd_verify_arithmetic,
                help="closed-form-into-recurrence substitutions on a grid")
    p.add_argument("--lambdas", default="0.01,0.05,0.1,0.2,0.25")
    p.add_argument("--s-values", dest="s_values", default="5,8,16,32")
    p.add_argument("--kmax", type=int, default=200)
    p = vparser("hitting", _cmd_verify_hitting,
                help="confined-walk survival vs closed-form bound")
    p.add_argument("--graph", required=True, help="graph JSON path")
    p.add_argument("--set", required=True,
                   help='subset: "first-K" or comma-separated hex vertices')
    p.add_argument("--tmax", type=int, default=12)

    code = top.add_parser("code", help="base-code search, encoding, bias report")
    csub = code.add_subparsers(dest="subcommand", required=True)
    p = csub.add_parser("gen-base", help="randomized search for a low-bias base code")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n0", type=int, required=True)
    p.add_argument("--target-bias", dest="target_bias", type=float, required=True)
    p.add_argument("--max-tries", dest="max_tries", type=int, default=1000)
    _add_common(p)
    p.set_defaults(func=_cmd_code_gen_base)
    p = csub.add_parser("encode", help="encode one message as walk-XOR bits")
    p.add_argument("--config", required=True)
    p.add_argument("--base", required=True, help="base code JSON path")
    p.add_argument("--message", required=True, help="message as hex")
    p.add_argument("--t", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_code_encode)
    p = csub.add_parser("report", help="bias, rate, and distance bound")
    p.add_argument("--config", required=True)
    p.add_argument("--base", required=True)
    p.add_argument("--t", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_code_report)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code else EXIT_PASS
    try:
        return args.func(args)
    except BudgetExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except BaseCodeSearchFailed as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VIOLATION
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
