"""Command-line entry point: ``apollonian <command> ...``.

Exit codes: 0 success, 1 validation or numeric failure, 2 bad input
(unreadable file, malformed JSON, word or number).
"""
import argparse
import json
import logging
import sys

import numpy as np

from .config import (NotDescartesError, config_from_json, config_to_json,
                     format_rational, validate_acc)
from .gaussian import parse_gauss
from .group import (DepthCapError, enumerate_normal_forms, format_word,
                    normal_form, normal_form_count, parse_word, word_to_matrix)
from .moebius import MoebiusElement, NumericInstabilityError, apply_moebius
from .packing import (PackingKind, check_disjoint_interiors, check_no_crossing,
                      curvature_spectrum, estimate_residual_dimension,
                      first_column_integral, generate, is_strongly_integral,
                      packing_from_json, packing_to_json, spectrum_to_csv)
from .render import RenderSpec, render_svg
from .schottky import (check_relations, limit_sample_to_csv, sample_limit_set,
                       verify_inversion_geometry)

log = logging.getLogger("apollonian")


class InputError(Exception):
    """Bad user input; maps to exit code 2."""


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise InputError("cannot read {}: {}".format(path, e))
    except json.JSONDecodeError as e:
        raise InputError("{} is not valid JSON: {}".format(path, e))


def _load_config(path):
    try:
        return config_from_json(_read_json(path))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise InputError("{} is not a configuration file: {}".format(path, e))


def _load_packing(path):
    try:
        return packing_from_json(_read_json(path))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise InputError("{} is not a packing file: {}".format(path, e))


def _write(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _matrix_text(M):
    cells = [[str(format_rational(v)) for v in row] for row in M]
    width = max(len(c) for row in cells for c in row)
    return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)


def cmd_validate(args):
    W = _load_config(args.config)
    try:
        cls = validate_acc(W)
    except NotDescartesError as e:
        print("invalid: {}".format(e))
        return 1
    print("valid Descartes configuration")
    print("component: {}".format(cls.component))
    print("det sign: {:+d}".format(cls.det_sign))
    print("total orientation: {:+d}".format(cls.orientation))
    print("strongly integral: {}".format(str(is_strongly_integral(W)).lower()))
    print("first column integral: {}".format(str(first_column_integral(W)).lower()))
    return 0


def cmd_generate(args):
    W = _load_config(args.seed)
    try:
        validate_acc(W)
    except NotDescartesError as e:
        print("invalid seed: {}".format(e))
        return 1
    p = generate(W, args.kind, args.depth)
    counts = p.level_counts()
    print("circles: {}".format(len(p)))
    print("new circles per level: {}".format(" ".join(map(str, counts))))
    if p.kind is PackingKind.APOLLONIAN:
        print("expected 2(3^m+1): {}".format(2 * (3 ** args.depth + 1)))
    status = 0
    if args.check:
        rep = check_disjoint_interiors(p) if p.kind is PackingKind.APOLLONIAN else check_no_crossing(p)
        name = "disjoint interiors" if p.kind is PackingKind.APOLLONIAN else "no crossing"
        print("{} check: {} ({} pairs)".format(name, "pass" if rep.ok else "FAIL", rep.checked))
        status = 0 if rep.ok else 1
    if args.out:
        _write(json.dumps(packing_to_json(p)) + "\n", args.out)
    return status


def _viewport(text):
    try:
        v = tuple(float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("viewport is xmin,ymin,xmax,ymax")
    if len(v) != 4:
        raise argparse.ArgumentTypeError("viewport is xmin,ymin,xmax,ymax")
    return v


def cmd_render(args):
    p = _load_packing(args.packing)
    try:
        spec = RenderSpec(args.viewport, args.stroke, args.labels, args.max_circles, args.size)
    except ValueError as e:
        raise InputError(str(e))
    _write(render_svg(p, spec), args.out)
    return 0


def cmd_words(args):
    words = enumerate_normal_forms(args.length)
    print(len(words))
    if len(words) != normal_form_count(args.length):
        return 1
    if args.list:
        for w in words:
            print(format_word(w))
    return 0


def cmd_reduce(args):
    try:
        w = parse_word(args.word)
    except ValueError as e:
        raise InputError(str(e))
    nf = normal_form(w)
    print(format_word(nf))
    print(_matrix_text(word_to_matrix(nf)))
    return 0


def cmd_spectrum(args):
    p = _load_packing(args.packing)
    _write(spectrum_to_csv(curvature_spectrum(p)), args.out)
    return 0


def cmd_dim(args):
    p = _load_packing(args.packing)
    # configurations are not exported; regenerate them from the stored seed
    p = generate(p.seed, p.kind, p.depth)
    try:
        est = estimate_residual_dimension(p, t_max=args.t_max, decades=args.decades,
                                          min_circles=args.min_circles)
    except ValueError as e:
        print("insufficient data: {}".format(e))
        return 1
    print("circles stored: {}".format(len(p)))
    print("fit window: [{:g}, {:g}]".format(args.t_max / 10 ** args.decades, args.t_max))
    print("dimension estimate: {:.4f}".format(est))
    return 0


def _coefficient(text):
    try:
        return parse_gauss(text)
    except (ValueError, ZeroDivisionError):
        try:
            return complex(text.replace("i", "j"))
        except ValueError:
            raise InputError("cannot parse coefficient {!r}".format(text))


def cmd_moebius(args):
    W = _load_config(args.config)
    try:
        validate_acc(W)
    except NotDescartesError as e:
        print("invalid configuration: {}".format(e))
        return 1
    a, b, c, d = (_coefficient(t) for t in args.coeffs)
    try:
        g = MoebiusElement(a, b, c, d, conjugate=args.conjugate, sign=-1 if args.flip else 1)
    except ValueError as e:
        raise InputError(str(e))
    try:
        out = apply_moebius(g, W)
    except NumericInstabilityError as e:
        print("numeric failure: {}".format(e))
        return 1
    if out.dtype == object:
        _write(json.dumps(config_to_json(out)) + "\n", args.out)
    else:
        _write(json.dumps({"rows": np.asarray(out, dtype=float).tolist()}) + "\n", args.out)
    return 0


def cmd_schottky(args):
    rel = check_relations()
    for name, ok in rel.items():
        print("{}: {}".format(name, "holds" if ok else "fails"))
    rep = verify_inversion_geometry()
    print("s_i -> dual row: {}".format(", ".join("s{}->{}".format(i, k) for i, k in sorted(rep.mapping.items()))))
    for f in rep.failures:
        print(f)
    if args.out:
        _write(limit_sample_to_csv(sample_limit_set(args.depth)), args.out)
    return 0 if rep.ok else 1


def build_parser():
    ap = argparse.ArgumentParser(prog="apollonian", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a configuration file")
    s.add_argument("config")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("generate", help="generate a packing from a seed")
    s.add_argument("seed")
    s.add_argument("--kind", choices=[k.value for k in PackingKind], default="apollonian")
    s.add_argument("--depth", type=int, default=3)
    s.add_argument("--out")
    s.add_argument("--check", action="store_true", help="run the pairwise geometry check")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("render", help="draw a packing as SVG")
    s.add_argument("packing")
    s.add_argument("--out")
    s.add_argument("--viewport", type=_viewport)
    s.add_argument("--stroke", type=float, default=1.0)
    s.add_argument("--labels", action="store_true")
    s.add_argument("--max-circles", type=int, default=5000)
    s.add_argument("--size", type=int, default=800)
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("words", help="count normal-form words")
    s.add_argument("--length", type=int, required=True)
    s.add_argument("--list", action="store_true")
    s.set_defaults(func=cmd_words)

    s = sub.add_parser("reduce", help="normal form of a word such as 12'3")
    s.add_argument("word")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("spectrum", help="curvature multiplicities as CSV")
    s.add_argument("packing")
    s.add_argument("--out")
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("dim", help="estimate the residual-set dimension")
    s.add_argument("packing")
    s.add_argument("--t-max", type=float, default=1e5)
    s.add_argument("--decades", type=float, default=2.0)
    s.add_argument("--min-circles", type=int, default=10_000)
    s.set_defaults(func=cmd_dim)

    s = sub.add_parser("moebius", help="apply z -> (az+b)/(cz+d) to a configuration")
    s.add_argument("config")
    s.add_argument("coeffs", nargs=4, metavar="COEFF", help="a b c d, e.g. 1 1/2+i 0 1")
    s.add_argument("--conjugate", action="store_true", help="precompose with z -> conj(z)")
    s.add_argument("--flip", action="store_true", help="also apply -I (reverse orientation)")
    s.add_argument("--out")
    s.set_defaults(func=cmd_moebius)

    s = sub.add_parser("schottky", help="check the Schottky relations, sample the limit set")
    s.add_argument("--depth", type=int, default=6)
    s.add_argument("--out", help="CSV file for limit-set points")
    s.set_defaults(func=cmd_schottky)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except InputError as e:
        print("error: {}".format(e), file=sys.stderr)
        return 2
    except DepthCapError as e:
        print("error: {}".format(e), file=sys.stderr)
        return 1
    except OSError as e:
        print("error: {}".format(e), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
