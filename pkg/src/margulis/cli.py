"""Command-line interface.

    margulis construct --n N [--config F] [--out DIR]
    margulis check {schottky|transversal|propc|orderings} --depth D
    margulis alpha-table --max-len L
    margulis plot --n N

Every command writes a JSON report into ``--out``; construct and alpha-table
also write an alpha CSV (word, length, alpha), plot writes an SVG and an angle
CSV (label, theta, offset).  Exit codes: 0 pass, 1 mathematical failure (the
report carries the witness), 2 usage or configuration error.
"""
import argparse
import datetime
import logging
import sys
from pathlib import Path

import numpy as np

from .cones import seed_vector
from .config import PRESETS, load_config
from .construct import (Deformation, check_property_c, construct_counterexample, prepare,
                        verify_counterexample)
from .errors import (ConfigError, LambdaOutOfRange, MargulisError, NotUnitSpacelike,
                     VerificationFailed)
from .plotting import angle_rows, plot_configuration
from .report import ALPHA_COLUMNS, ANGLE_COLUMNS, make_report, write_csv, write_json
from .schottky import (brouwer_check, build_schottky_system, candidate_system,
                       check_ordering_lemmas, is_transversal, verify_schottky)
from .words import G_, H_, GeneratorPair

log = logging.getLogger("margulis")

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
CONFIG_ERRORS = (ConfigError, LambdaOutOfRange, NotUnitSpacelike)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p):
    p.add_argument("--config", help="JSON config file (GroupConfig field names)")
    p.add_argument("--preset", default="example", choices=sorted(PRESETS))
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--lambda-g", type=float)
    p.add_argument("--lambda-h", type=float)
    p.add_argument("--axis-g", type=float, nargs=3, metavar=("X", "Y", "Z"))
    p.add_argument("--axis-h", type=float, nargs=3, metavar=("X", "Y", "Z"))
    p.add_argument("--t", type=float, dest="seed_t", help="seed interpolation in (0, 1)")
    p.add_argument("--tol", type=float, dest="tolerance")
    p.add_argument("--samples", type=int, dest="property_c_samples", help="Property C arc samples")
    p.add_argument("--allow-non-schottky", action="store_true",
                   help="proceed with an unverified arc system instead of failing")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser():
    parser = _Parser(prog="margulis", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("construct", help="build and verify a deformation for word length n")
    _common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--full-words", action="store_true", help="verify every word, not one per class")
    p.add_argument("--no-plot", action="store_true")

    p = sub.add_parser("check", help="run one precondition verifier")
    _common(p)
    p.add_argument("which", choices=["schottky", "transversal", "propc", "orderings"])
    p.add_argument("--depth", type=int, default=None)

    p = sub.add_parser("alpha-table", help="alpha on every cyclically reduced word up to a length")
    _common(p)
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--vg", type=float, nargs=3, help="translational part of g (default x0(g))")
    p.add_argument("--vh", type=float, nargs=3, help="translational part of h (default x0(h))")
    p.add_argument("--full-words", action="store_true")

    p = sub.add_parser("plot", help="figure of arcs, eigenvector rays and the feasible wedge")
    _common(p)
    p.add_argument("--n", type=int, required=True)
    return parser


def _config(args):
    overrides = {k: getattr(args, k, None) for k in
                 ("lambda_g", "lambda_h", "axis_g", "axis_h", "seed_t", "tolerance", "property_c_samples")}
    if args.allow_non_schottky:
        overrides["require_schottky"] = False
    return load_config(args.config, args.preset, overrides)


def _witness(exc):
    out = {"error": type(exc).__name__, "message": str(exc)}
    for attr in ("witness", "margins", "term"):
        if getattr(exc, attr, None) is not None:
            out[attr] = getattr(exc, attr)
    cert = getattr(exc, "certificate", None)
    if cert is not None:
        out["certificate"] = cert.as_dict()
    return out


def cmd_construct(args, cfg, out):
    g, h = cfg.generators()
    try:
        d, cert = construct_counterexample(
            g, h, args.n, t=cfg.seed_t, require_schottky=cfg.require_schottky,
            property_c_depth=cfg.property_c_depth, property_c_samples=cfg.property_c_samples,
            tol=cfg.tolerance, dedup=not args.full_words)
        passed, result = True, {"deformation": d.as_dict(), "certificate": cert.as_dict()}
    except VerificationFailed as exc:
        d, cert = exc.deformation, exc.certificate
        passed, result = False, {"deformation": d.as_dict(), "witness": _witness(exc)}
    files = {"alpha_csv": str(write_csv(out / f"alpha_n{args.n}.csv", ALPHA_COLUMNS, cert.table))}
    if not args.no_plot:
        pair = GeneratorPair(d.g, d.h)
        theta = d.provenance.get("seed_theta")
        try:
            files["svg"] = str(plot_configuration(_plot_system(d.g, d.h), pair, args.n,
                                                  out / f"configuration_n{args.n}.svg", theta))
        except MargulisError as exc:
            files["svg_error"] = str(exc)
    result["files"] = files
    return passed, result


def _plot_system(g, h):
    try:
        return build_schottky_system(g, h)
    except MargulisError:
        return candidate_system(g, h)


def cmd_check(args, cfg, out):
    g, h = cfg.generators()
    which = args.which
    if which == "transversal":
        tr = is_transversal(g, h, cfg.tolerance)
        return tr.transversal, {"transversal": tr.transversal, "intersection": tr.causal,
                                "cross": tr.cross, "h_inverted": tr.inverted}
    if which == "schottky":
        sys_ = build_schottky_system(g, h)
        rep = verify_schottky(sys_, g, h, cfg.schottky_samples, margin=1e-3)
        return rep.ok, {"system": sys_.as_dict(), **rep.as_dict()}
    g, h, sys_, pre = prepare(g, h, cfg.require_schottky, cfg.tolerance)
    pair = GeneratorPair(g, h)
    if which == "propc":
        depth = args.depth or cfg.property_c_depth or 6
        rep = check_property_c(pair, depth, cfg.property_c_samples, sys_, cfg.tolerance)
        return rep.ok, {"preconditions": pre.as_dict(), **rep.as_dict()}
    depth = args.depth or cfg.ordering_depth
    rep = check_ordering_lemmas(g, h, sys_, depth, cfg.tolerance)
    ok, depth_b, fail = brouwer_check(g, h, sys_, depth)
    return rep.ok and ok, {"preconditions": pre.as_dict(), "orderings": rep.as_dict(),
                           "brouwer": {"ok": ok, "min_depth": depth_b, "violation": fail}}


def cmd_alpha_table(args, cfg, out):
    g, h = cfg.generators()
    pair = GeneratorPair(g, h)
    vg = np.array(args.vg) if args.vg else pair.xzero((G_,))
    vh = np.array(args.vh) if args.vh else pair.xzero((H_,))
    d = Deformation(pair.g, pair.h, vg, vh, {"recipe": "alpha-table"})
    cert = verify_counterexample(d, args.max_len, dedup=not args.full_words, tol=cfg.tolerance)
    path = write_csv(out / f"alpha_table_L{args.max_len}.csv", ALPHA_COLUMNS, cert.table)
    # the table itself is the product; only undefined alpha counts as failure
    result = {"deformation": d.as_dict(), "words": cert.words_checked,
              "min_alpha_by_length": cert.as_dict()["min_alpha_by_length"],
              "nonhyperbolic": cert.nonhyperbolic, "files": {"alpha_csv": str(path)}}
    return not cert.nonhyperbolic, result


def cmd_plot(args, cfg, out):
    g, h = cfg.generators()
    g, h, sys_, pre = prepare(g, h, cfg.require_schottky, cfg.tolerance)
    pair = GeneratorPair(g, h)
    seed = seed_vector(sys_, pair, args.n, cfg.seed_t, cfg.tolerance)
    svg = plot_configuration(sys_, pair, args.n, out / f"configuration_n{args.n}.svg", seed.theta)
    rows = angle_rows(sys_, pair, args.n, seed.theta)
    csv = write_csv(out / f"angles_n{args.n}.csv", ANGLE_COLUMNS, rows)
    return True, {"preconditions": pre.as_dict(), "seed_margins": seed.margins,
                  "files": {"svg": str(svg), "angles_csv": str(csv)}}


COMMANDS = {"construct": cmd_construct, "check": cmd_check, "alpha-table": cmd_alpha_table, "plot": cmd_plot}


def _report_name(args):
    if args.command == "check":
        return f"check_{args.which}.json"
    if args.command == "alpha-table":
        return f"alpha_table_L{args.max_len}.json"
    return f"{args.command}_n{args.n}.json"


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    started = datetime.datetime.now(datetime.timezone.utc)
    for name in ("n", "max_len", "depth"):
        if getattr(args, name, None) is not None and getattr(args, name) < 1:
            print(f"margulis: error: --{name.replace('_', '-')} must be >= 1", file=sys.stderr)
            return EXIT_USAGE
    try:
        cfg = _config(args)
    except CONFIG_ERRORS as exc:
        print(f"margulis: config error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = Path(args.out)
    try:
        passed, result = COMMANDS[args.command](args, cfg, out)
    except MargulisError as exc:
        passed, result = False, {"witness": _witness(exc)}
    report = make_report(args.command, argv, cfg, result, passed, started)
    try:
        path = write_json(out / _report_name(args), report)
    except OSError as exc:
        print(f"margulis: cannot write report: {exc}", file=sys.stderr)
        return EXIT_USAGE
    status = "PASS" if passed else "FAIL"
    print(f"{status} {args.command} -> {path}")
    if not passed:
        log.warning("%s", result.get("witness", {}).get("message", f"witness recorded in {path}"))
    return EXIT_PASS if passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
