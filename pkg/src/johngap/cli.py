"""Command-line entry points.

Exit codes: 0 pass, 1 usage error, 2 invariant failure, 3 construction
failure, 4 out-of-regime inputs. All randomness is driven by --seed
(fallback: the JGAP_SEED environment variable), and outputs are
byte-identical for identical (command, args, seed).
"""

import argparse
import json
import os
import sys

import numpy as np

from . import body as hardbody
from . import certificates, frames, nets, subsets
from .errors import FamilyNotFound, JohngapError, OutOfRegime

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVARIANT = 2
EXIT_CONSTRUCTION = 3
EXIT_REGIME = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _emit(report, path):
    text = json.dumps(report, indent=None, separators=(",", ":"), sort_keys=False)
    if path:
        with open(path, "w") as f:
            f.write(text + "\n")
    else:
        print(text)


def _default_seed(value):
    if value is not None:
        return value
    env = os.environ.get("JGAP_SEED")
    return int(env) if env else 0


def cmd_simplex(args):
    if args.n < 2:
        print("error: --n must be >= 2", file=sys.stderr)
        return EXIT_USAGE
    frame = frames.build_simplex(args.n)
    G = frame.contacts @ frame.contacts.T
    n = args.n
    target = -(1.0 / n) * (np.ones((n + 1, n + 1)) - np.eye(n + 1)) + np.eye(n + 1)
    gram_err = float(np.abs(G - target).max())
    rep = frames.john_check(frame.contacts, frame.weights)
    report = {
        "n": n,
        "gram_error": gram_err,
        "identity_error": rep.identity_error,
        "barycenter_error": rep.barycenter_error,
        "pass": bool(gram_err <= 1e-10 and rep.identity_error <= 1e-8 and rep.barycenter_error <= 1e-9),
    }
    if n >= 3:
        ef = frames.equator_frame(frame)
        report["c_n"] = ef.c_n
    _emit(report, args.json)
    return EXIT_OK if report["pass"] else EXIT_INVARIANT


def cmd_construct(args):
    seed = _default_seed(args.seed)
    try:
        params = hardbody.params_for_k(args.n, args.k, m=args.m, seed=seed, m_max=args.m_max)
        inst = hardbody.build_instance(params)
    except FamilyNotFound as exc:
        print(f"error: {exc}; retry with a larger n/k ratio or more attempts", file=sys.stderr)
        return EXIT_CONSTRUCTION
    with open(args.out, "w") as f:
        f.write(hardbody.instance_dumps(inst) + "\n")
    cert = hardbody.extract_certificate(inst)
    rep = certificates.verify_hypotheses(cert, inst.body)
    summary = {
        "out": args.out,
        "rows": inst.body.num_rows,
        "R": params.R,
        "threshold": params.threshold,
        "verified": rep.passed,
        "flags": params.flags,
    }
    print(json.dumps(summary, separators=(",", ":")))
    return EXIT_OK if rep.passed else EXIT_INVARIANT


def cmd_certify(args):
    with open(args.body) as f:
        d = json.load(f)
    cert, K = certificates.certificate_from_json_dict(d)
    rep = certificates.verify_hypotheses(cert, K)
    trials = violations = 0
    if args.counting_trials > 0 and rep.passed:
        rng = np.random.default_rng(_default_seed(args.seed) + 1)
        trials, violations = certificates.counting_trials(
            cert, args.counting_trials, rng, lp_points=args.lp_points
        )
    passed = rep.passed and violations == 0
    report = {
        "pass": passed,
        "families": {
            "diagonal": rep.diagonal_worst,
            "cross": rep.cross_worst,
            "polar": rep.polar_worst,
            "membership": rep.membership_worst,
        },
        "threshold": rep.threshold,
        "failing_family": rep.failing_family,
        "failing_index": rep.failing_index,
        "facet_lower_bound": (
            certificates.facet_lower_bound(cert, rep) if rep.passed else None
        ),
        "counting_trials": trials,
        "counting_violations": violations,
    }
    _emit(report, args.json)
    return EXIT_OK if passed else EXIT_INVARIANT


def cmd_tail(args):
    rows = []
    code = EXIT_OK
    for n in args.n:
        for k in args.k:
            try:
                rep = subsets.tail_bound_check(n, k)
            except OutOfRegime as exc:
                print(f"error: {exc}", file=sys.stderr)
                code = EXIT_REGIME
                continue
            rows.append(rep)
            if not rep.satisfied:
                code = EXIT_INVARIANT
    if args.csv:
        with open(args.csv, "w") as f:
            f.write("n,k,t,exact_tail_log,bound_log,satisfied\n")
            for r in rows:
                f.write(
                    f"{r.n},{r.k},{r.threshold},{r.exact_tail_log!r},"
                    f"{r.bound_log!r},{str(r.satisfied).lower()}\n"
                )
    else:
        _emit(
            [
                {
                    "n": r.n,
                    "k": r.k,
                    "t": r.threshold,
                    "exact_tail_log": r.exact_tail_log,
                    "bound_log": r.bound_log,
                    "satisfied": r.satisfied,
                }
                for r in rows
            ],
            args.json,
        )
    return code


def cmd_approx(args):
    if args.n > 3 and args.strategy == "grid":
        print("error: certified grid nets require --n <= 3", file=sys.stderr)
        return EXIT_USAGE
    rng = np.random.default_rng(_default_seed(args.seed))
    K = nets.random_sandwich_body(args.n, args.R, rng)
    oracle = nets.polytope_support_oracle(K, args.R)
    eps = args.delta / (2.0 * args.R)
    net = nets.build_net(args.n, eps, strategy=args.strategy, rng=rng)
    P = nets.approx_polytope(oracle, net)
    rep = nets.sandwich_check(K, P, args.delta)
    report = {
        "n": args.n,
        "R": args.R,
        "delta": args.delta,
        "net_size": net.size,
        "net_certified": net.certified,
        "outer_ok": rep.outer_ok,
        "inner_ok": rep.inner_ok,
        "outer_margin": rep.outer_margin,
        "inner_margin": rep.inner_margin,
        "bound_exponent_c": nets.net_size_exponent(net, args.R, args.delta),
    }
    _emit(report, args.json)
    return EXIT_OK if rep.outer_ok and rep.inner_ok else EXIT_INVARIANT


def cmd_audit(args):
    with open(args.body) as f:
        d = json.load(f)
    cert, K = certificates.certificate_from_json_dict(d)
    from .polytope import HPolytope

    if args.candidate:
        with open(args.candidate) as f:
            P = HPolytope.from_json_dict(json.load(f))
    elif args.drop_facet is not None:
        keep = [i for i in range(K.num_rows) if i != args.drop_facet]
        P = HPolytope(K.normals[keep].copy(), K.offsets[keep].copy())
    else:
        P = K
    rep = certificates.adversarial_facet_audit(cert, K, P)
    report = {
        "sandwich_ok": rep.sandwich_ok,
        "outer_ok": rep.outer_ok,
        "inner_ok": rep.inner_ok,
        "facets_P": rep.facets_P,
        "bound": rep.bound,
        "consistent": rep.consistent,
    }
    _emit(report, args.json)
    return EXIT_OK if rep.consistent else EXIT_INVARIANT


def build_parser():
    p = _Parser(prog="johngap")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("simplex", help="build the contact frame and verify its identities")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--json", default=None)
    s.set_defaults(fn=cmd_simplex)

    s = sub.add_parser("construct", help="build a hard-body instance and write body.json")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--m", type=int, default=None)
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--m-max", type=int, default=hardbody.DEFAULT_M_MAX)
    s.add_argument("--out", default="body.json")
    s.set_defaults(fn=cmd_construct)

    s = sub.add_parser("certify", help="verify the certificate in a body.json")
    s.add_argument("body")
    s.add_argument("--counting-trials", type=int, default=0)
    s.add_argument("--lp-points", type=int, default=0)
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--json", default=None)
    s.set_defaults(fn=cmd_certify)

    s = sub.add_parser("tail", help="exact hypergeometric tail vs the closed-form bound")
    s.add_argument("--n", type=int, nargs="+", required=True)
    s.add_argument("--k", type=int, nargs="+", required=True)
    s.add_argument("--csv", default=None)
    s.add_argument("--json", default=None)
    s.set_defaults(fn=cmd_tail)

    s = sub.add_parser("approx", help="net-based outer polytope and sandwich check")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--R", type=float, required=True)
    s.add_argument("--delta", type=float, required=True)
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--strategy", choices=["grid", "random"], default="grid")
    s.add_argument("--json", default=None)
    s.set_defaults(fn=cmd_approx)

    s = sub.add_parser("audit", help="audit a candidate approximant against the bound")
    s.add_argument("body")
    s.add_argument("--candidate", default=None)
    s.add_argument("--drop-facet", type=int, default=None)
    s.add_argument("--json", default=None)
    s.set_defaults(fn=cmd_audit)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except OutOfRegime as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REGIME
    except FamilyNotFound as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION
    except (JohngapError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
