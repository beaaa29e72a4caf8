"""Command-line entry point: `uppertail <subcommand> --graph cycle:5 ...`."""

import argparse
import json
import sys
import warnings

import numpy as np

from . import family, graph, indpoly, mc, rate, varprob
from ._config import UpperTailError, fmt12


def _positive(kind):
    def conv(text):
        try:
            x = kind(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{text!r} is not a valid number") from None
        if not x > 0:
            raise argparse.ArgumentTypeError(f"{text!r} must be positive")
        return x

    return conv


def _probability(text):
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a valid number") from None
    if not 0 < x < 1:
        raise argparse.ArgumentTypeError(f"p = {text} must lie in (0, 1)")
    return x


def _nonneg_int(text):
    try:
        x = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if x < 0:
        raise argparse.ArgumentTypeError("seed must be nonnegative")
    return x


def _graph_args(p):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", help='preset like "cycle:5", or a "+"-joined union like "clique:3+star:2"')
    src.add_argument("--edges", metavar="FILE", help="edge-list file: 'u v' per line, optional 'n <count>' header")
    p.add_argument("--json", action="store_true", help="emit JSON")


def _load_graph(args):
    if args.graph is not None:
        return graph.parse_graph(args.graph)
    try:
        return graph.read_edge_list(args.edges)
    except OSError as e:
        raise UpperTailError(f"cannot read edge list: {e}") from None


def _emit(text, out=None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _table(d):
    lines = []
    for k, v in d.items():
        if isinstance(v, float):
            v = fmt12(v)
        elif v is None:
            v = "-"
        elif isinstance(v, bool):
            v = str(v).lower()
        elif isinstance(v, (list, dict)):
            v = json.dumps(v)
        lines.append(f"{k}: {v}")
    return "\n".join(lines) + "\n"


def _rate(args, H):
    r = rate.rate_constant(H, args.delta, rtol=args.tol)
    return r.to_json() + "\n" if args.json else _table(r.to_dict())


def _curve(args, H):
    if args.delta_max <= args.delta_min:
        raise UpperTailError("--delta-max must exceed --delta-min")
    grid = np.geomspace(args.delta_min, args.delta_max, args.delta_steps)
    rows = rate.rate_curve(H, grid)
    text = rate.curve_to_json(rows) + "\n" if args.json else rate.curve_to_csv(rows)
    _emit(text, args.out)
    return ""


def _delta0(args, H):
    d0 = rate.transition_delta0(H)
    return json.dumps({"delta0": float(fmt12(d0))}) + "\n" if args.json else f"delta0: {fmt12(d0)}\n"


def _indpoly(args, H):
    P = indpoly.independence_polynomial(H)
    if args.json:
        return P.to_json() + "\n"
    return f"coefficients: {' '.join(str(a) for a in P.coeffs)}\npolynomial: {P}\n"


def _family(args, H):
    fam = family.enumerate_family(H)
    if args.json:
        return fam.to_json() + "\n"
    lines = [f"max_degree: {fam.max_degree}", f"contains_h: {str(fam.contains_h).lower()}",
             "edges  core_size  multiplicity  edge_list"]
    for e in fam.entries:
        el = " ".join(f"{u}-{v}" for u, v in e.subgraph.sorted_edges())
        lines.append(f"{e.edges:5d}  {len(e.core_set):9d}  {e.multiplicity:12d}  {el}")
    return "\n".join(lines) + "\n"


def _verify(args, H):
    chk = family.verify_identity(H)
    if args.json:
        return chk.to_json() + "\n"
    return f"lhs: {chk.lhs}\nrhs: {chk.rhs}\nholds: {str(chk.holds).lower()}\n"


def _candidates(args, H):
    out = {}
    for kind, fn in (("clique", varprob.clique_candidate), ("anticlique", varprob.anticlique_candidate)):
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                out[kind] = fn(H, args.n, args.p, args.delta).to_dict()
        except UpperTailError as e:
            out[kind] = {"error": str(e)}
    if args.json:
        return json.dumps(out, sort_keys=True) + "\n"
    return "".join(f"[{k}]\n" + _table(v) for k, v in out.items())


def _varsolve(args, H):
    cfg = varprob.SolveConfig(seed=args.seed)
    r = varprob.solve_variational(H, args.n, args.p, args.delta, cfg)
    if args.out:
        _emit(r.G.to_text(p=args.p, H=H), args.out)
    if args.trace:
        _emit(varprob.trace_to_csv(r.trace), args.trace)
    return r.to_json() + "\n" if args.json else _table(r.to_dict())


def _montecarlo(args, H):
    s = mc.estimate_upper_tail(H, args.n, args.p, args.delta, args.samples, args.seed,
                               keep_counts=bool(args.out), h_spec=args.graph or args.edges)
    if args.out:
        _emit(s.counts_csv(), args.out)
    return s.to_json() + "\n" if args.json else _table(s.to_dict())


def _info(args, H):
    d = graph.graph_summary(H)
    return json.dumps(d, sort_keys=True) + "\n" if args.json else _table(d)


def build_parser():
    parser = argparse.ArgumentParser(prog="uppertail", description="Upper-tail rate constants for subgraph counts.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, delta=False, npd=False):
        p = sub.add_parser(name, help=help_)
        _graph_args(p)
        if delta:
            p.add_argument("--delta", type=_positive(float), required=True)
        if npd:
            p.add_argument("--n", type=_positive(int), required=True)
            p.add_argument("--p", type=_probability, required=True)
        p.set_defaults(func=fn)
        return p

    p = add("rate", _rate, "leading-order rate constant", delta=True)
    p.add_argument("--tol", type=_positive(float), default=1e-9, help="relative tolerance for declaring a tie")
    p = add("curve", _curve, "rate constant over a log-spaced delta grid (CSV)")
    p.add_argument("--delta-min", type=_positive(float), required=True)
    p.add_argument("--delta-max", type=_positive(float), required=True)
    p.add_argument("--delta-steps", type=_positive(int), default=50)
    p.add_argument("--out", metavar="FILE")
    add("delta0", _delta0, "transition point between the two regimes (regular H)")
    add("indpoly", _indpoly, "independence polynomial coefficients")
    add("family", _family, "contributing subgraph family")
    add("verify-identity", _verify, "check the family / independence polynomial identity")
    add("candidates", _candidates, "explicit clique and hub constructions", delta=True, npd=True)
    p = add("varsolve", _varsolve, "numerical minimizer of the discrete variational problem", delta=True, npd=True)
    p.add_argument("--seed", type=_nonneg_int, default=0)
    p.add_argument("--out", metavar="FILE", help="write the optimal weighted graph")
    p.add_argument("--trace", metavar="FILE", help="write the iteration trace as CSV")
    p = add("montecarlo", _montecarlo, "Monte Carlo copy counts and tail frequency", delta=True, npd=True)
    p.add_argument("--samples", type=_positive(int), default=10000)
    p.add_argument("--seed", type=_nonneg_int, default=0)
    p.add_argument("--out", metavar="FILE", help="write per-sample counts as CSV")
    add("info", _info, "structural summary of the graph")
    return parser


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        H = _load_graph(args)
        sys.stdout.write(args.func(args, H))
    except UpperTailError as e:
        print(f"uppertail {args.command}: error: {e}", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
