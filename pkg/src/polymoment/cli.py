"""Command line interface.

Exit codes: 0 definitive result, 2 inconclusive, 3 invalid input, 4 numeric failure.
"""
from __future__ import annotations

import argparse
import sys

from . import __version__
from .decompose import common_right_divisor, composition_condition, is_indecomposable, multiplicities, right_factors
from .errors import NumericFailure, PolyMomentError, PreconditionUnverified
from .field import fe_embed
from .moments import moment_kernel, moment_report
from .poly import Poly
from .problem import parse_problem, problem_to_data, render

EXIT_OK, EXIT_INCONCLUSIVE, EXIT_INVALID, EXIT_NUMERIC = 0, 2, 3, 4


def _options(args):
    from .monodromy import TrackOptions
    return TrackOptions(precision=args.precision)


def _mono(inst, args):
    from .monodromy import monodromy_group
    return monodromy_group(inst.P, complex(fe_embed(inst.t0)), _options(args))


def cmd_moments(inst, args):
    rep = moment_report(inst, args.max_i if args.max_i is not None else 10, args.max_j)
    return rep.to_json(), EXIT_OK


def cmd_kernel(inst, args):
    D = args.degree_bound if args.degree_bound is not None else 2 * inst.n + 1
    ker = moment_kernel(inst.P, inst.a, inst.b, D)
    return ker.to_json(), EXIT_OK if ker.stabilized else EXIT_INCONCLUSIVE


def _factors(p: Poly):
    if p.degree < 2:
        return {"degree": p.degree, "indecomposable": None, "right_factors": []}
    return {"degree": p.degree, "indecomposable": is_indecomposable(p),
            "right_factors": [{"degree": m, "W": W.to_strings()} for m, W in right_factors(p)]}


def cmd_decompose(inst, args):
    return {"P": _factors(inst.P), "Q": _factors(inst.Q)}, EXIT_OK


def cmd_crd(inst, args):
    found = common_right_divisor(inst.P, inst.Q)
    if found is None:
        return {"common_right_divisor": None}, EXIT_OK
    W, Pt, Qt = found
    return {"common_right_divisor": {"W": W.to_strings(), "P_outer": Pt.to_strings(),
                                     "Q_outer": Qt.to_strings()}}, EXIT_OK


def cmd_condition(inst, args):
    cert = composition_condition(inst)
    m = multiplicities(inst.P, inst.a, inst.b)
    return {"certificate": None if cert is None else cert.to_json(),
            "holds": cert is not None, "multiplicities": {"d_a": m.d_a, "d_b": m.d_b}}, EXIT_OK


def cmd_monodromy(inst, args):
    from .monodromy import branch_equalities
    mono = _mono(inst, args)
    out = mono.summary()
    out["branch_classes"] = branch_equalities(inst.P, inst.Q, mono, args.tol).to_json()
    return out, EXIT_OK if mono.consistent else EXIT_NUMERIC


def cmd_omega(inst, args):
    from .monodromy import omega_labeling
    mono = _mono(inst, args)
    lab = omega_labeling(inst, mono)
    return {"omega": lab.to_json(), "monodromy": mono.summary()}, EXIT_OK


def cmd_puiseux(inst, args):
    from .monodromy import puiseux_at_infinity
    P = inst.P
    normalized = not P.is_monic()
    if normalized:
        P = P.monic()
    series = puiseux_at_infinity(P, inst.Q, args.terms)
    out = series.to_json()
    out["normalized_P"] = P.to_strings() if normalized else None
    return out, EXIT_OK


def cmd_trace(inst, args):
    from .monodromy import omega_labeling, proof_trace
    mono = _mono(inst, args)
    lab = omega_labeling(inst, mono)
    m = multiplicities(inst.P, inst.a, inst.b)
    max_j = args.max_j if args.max_j is not None else m.d_a + m.d_b - 1
    tr = proof_trace(inst, lab, max(1, max_j), args.max_i, args.trace_tol)
    return {"trace": tr.to_json(), "omega": lab.to_json()}, EXIT_OK if tr.consistent else EXIT_NUMERIC


def _verdict_payload(inst, args, theorem):
    from .verdict import auto_verdict, cross_validate, theorem1_verdict, theorem2_verdict
    fn = {1: theorem1_verdict, 2: theorem2_verdict, None: auto_verdict}[theorem]
    v = fn(inst, args.max_i)
    out = v.to_json()
    if not args.no_monodromy:
        out["diagnostics"] = cross_validate(inst, args.max_i, _options(args), args.tol)
    return out, EXIT_OK if v.definitive else EXIT_INCONCLUSIVE


def cmd_verdict(inst, args):
    return _verdict_payload(inst, args, args.theorem)


def cmd_corpus_run(args):
    from .corpus import bundled, random_entries
    entries = bundled() + random_entries(args.seed, args.random_count)
    results = []
    code = EXIT_OK
    for e in entries:
        payload, c = _verdict_payload(e.instance, args, None)
        item = {"name": e.name, "problem": problem_to_data(e.instance), "verdict": payload}
        if e.expected is not None:
            item["expected"] = e.expected
            item["matches_expected"] = payload["kind"] == e.expected
            if payload["kind"] != e.expected:
                code = max(code, EXIT_INCONCLUSIVE)
        if payload.get("diagnostics", {}).get("red_flags"):
            code = max(code, EXIT_INCONCLUSIVE)
        code = max(code, c)
        results.append(item)
    summary = {"instances": len(results),
               "definitive": sum(r["verdict"]["kind"] != "Inconclusive" for r in results),
               "kinds": {}}
    for r in results:
        k = r["verdict"]["kind"]
        summary["kinds"][k] = summary["kinds"].get(k, 0) + 1
    return {"summary": summary, "results": results}, code


COMMANDS = {
    "moments": (cmd_moments, "exact single (and with --max-j double) moments"),
    "kernel": (cmd_kernel, "kernel of the moment map on polynomials q of bounded degree"),
    "decompose": (cmd_decompose, "right factors of P and Q"),
    "crd": (cmd_crd, "largest common right divisor of P and Q"),
    "condition": (cmd_condition, "composition condition with endpoint check"),
    "monodromy": (cmd_monodromy, "loop permutations and group properties of P^-1"),
    "omega": (cmd_omega, "canonical branch labelling with rho1, rho2 and k"),
    "puiseux": (cmd_puiseux, "expansion of Q(P^-1(t)) at infinity"),
    "trace": (cmd_trace, "orbit-sum identities forced by vanishing moments"),
    "verdict": (cmd_verdict, "theorem-backed decision with certificate or witness"),
}


def _common(p: argparse.ArgumentParser):
    p.add_argument("--max-i", type=int, default=None, help="largest power of P to scan")
    p.add_argument("--max-j", type=int, default=None, help="largest power of Q in double moments")
    p.add_argument("--degree-bound", type=int, default=None, help="degree bound for q in the kernel")
    p.add_argument("--tol", type=float, default=1e-8, help="relative tolerance for branch equality")
    p.add_argument("--precision", type=int, default=24, help="Newton tolerance of path tracking, in bits")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polymoment", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"polymoment {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        p = sub.add_parser(name, help=help_)
        p.add_argument("problem", help="problem JSON file, or - for stdin")
        _common(p)
        if name == "verdict":
            p.add_argument("--theorem", type=int, choices=(1, 2), required=True,
                           help="1: indecomposable P, single moments; 2: any P, double moments")
            p.add_argument("--no-monodromy", action="store_true", help="skip the numerical cross-check")
        if name == "puiseux":
            p.add_argument("--terms", type=int, default=10)
        if name == "trace":
            p.add_argument("--trace-tol", type=float, default=1e-7)
    corpus = sub.add_parser("corpus", help="bundled instance corpus")
    csub = corpus.add_subparsers(dest="corpus_command", required=True)
    run = csub.add_parser("run", help="verdicts for every bundled and generated instance")
    _common(run)
    run.add_argument("--seed", type=int, default=20240601, help="seed for the generated instances")
    run.add_argument("--random-count", type=int, default=6, help="how many certified instances to generate")
    run.add_argument("--no-monodromy", action="store_true", help="skip the numerical cross-check")
    return parser


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("out", "problem")}


def _emit(payload, args):
    text = render(payload)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    envelope = {"tool": {"name": "polymoment", "version": __version__}, "config": _config(args)}
    try:
        if args.command == "corpus":
            result, code = cmd_corpus_run(args)
        else:
            if args.problem == "-":
                text = sys.stdin.read()
            else:
                with open(args.problem, encoding="utf-8") as fh:
                    text = fh.read()
            inst = parse_problem(text)
            envelope["problem"] = problem_to_data(inst)
            result, code = COMMANDS[args.command][0](inst, args)
    except NumericFailure as e:
        print(f"numeric failure: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    except PreconditionUnverified as e:
        print(f"inconclusive: {e}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (PolyMomentError, ValueError, OSError) as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return EXIT_INVALID
    envelope["result"] = result
    envelope["exit_code"] = code
    _emit(envelope, args)
    return code


if __name__ == "__main__":
    sys.exit(main())
