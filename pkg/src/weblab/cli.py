"""Command line interface: ``weblab <command> ...``.

Exit status is 0 when every check passes, 1 when a check fails and 2 on
malformed input.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from .catalog import catalog, catalog_names, catalog_verify
from .errors import ParseError, SamplingError, TrackingError
from .exactalg import Poly2, RatFunc2
from .expr import format_any, parse
from .monodromy import web_monodromy
from .planemaps import PlaneMap, is_invariant_web, pullback
from .symforms import SymForm, discriminant, discriminant_divisor
from .ueda import symmetrize, ueda_endomorphism
from .webgeom import WebOnP2, discriminant_degree_check, tangency_divisor, web_degree

DEFAULT_SEED = 1


class InputError(Exception):
    """Input that parses but has the wrong kind."""


def _seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("WEBLAB_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"WEBLAB_SEED must be an integer, got {env!r}") from None
    return DEFAULT_SEED


def _form(text: str) -> SymForm:
    obj = parse(text)
    if not isinstance(obj, SymForm):
        raise InputError(f"expected a symmetric form, got {type(obj).__name__}: {text}")
    return obj


def _map(text: str) -> PlaneMap:
    obj = parse(text)
    if not isinstance(obj, PlaneMap):
        raise InputError(f"expected map(EXPR, EXPR), got {type(obj).__name__}: {text}")
    return obj


def _function(text: str) -> RatFunc2:
    obj = parse(text)
    if not isinstance(obj, (Poly2, RatFunc2)):
        raise InputError(f"expected a polynomial or rational function: {text}")
    return RatFunc2.of(obj)


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def cmd_disc(args) -> int:
    w = _form(args.form)
    delta = discriminant(w)
    div = discriminant_divisor(w).as_dict()
    _emit(args, {"discriminant": str(delta), "divisor": div},
          f"discriminant: {delta}\ndivisor: {div}")
    return 0


def cmd_pullback(args) -> int:
    phi, w = _map(args.map), _form(args.form)
    res = pullback(phi, w)
    _emit(args, {"primitive": str(res.primitive), "content": str(res.content),
                 "denominator": str(res.denominator), "content_divisor": res.content_divisor().as_dict()},
          f"primitive: {res.primitive}\ncontent: {res.content}\ndenominator: {res.denominator}")
    return 0


def cmd_invariant(args) -> int:
    phi, w = _map(args.map), _form(args.form)
    _, prim = w.primitive()
    c = is_invariant_web(phi, prim)
    verdict = "invariant" if c is not None else "not invariant"
    text = verdict if c is None else f"{verdict} (constant {c})"
    _emit(args, {"invariant": c is not None, "constant": None if c is None else str(c)}, text)
    return 0 if c is not None else 1


def cmd_degree(args) -> int:
    w = _form(args.form)
    W = WebOnP2.from_form(w)
    seed = _seed(args)
    deg = web_degree(W, seed)
    payload = {"k": W.k, "degree": deg, "exact_degree": W.exact_degree(), "seed": seed}
    lines = [f"k = {W.k}", f"degree = {deg}"]
    ok = deg == W.exact_degree()
    if W.k >= 2:
        chk = discriminant_degree_check(W, seed)
        payload["discriminant_degree"] = {"computed": chk.computed, "predicted": chk.predicted,
                                          "at_infinity": chk.at_infinity}
        lines.append(f"deg disc = {chk.computed} (predicted {chk.predicted}, at infinity {chk.at_infinity})")
        ok = ok and chk.passed
    _emit(args, payload, "\n".join(lines))
    return 0 if ok else 1


def cmd_tangency(args) -> int:
    div = tangency_divisor(_form(args.form1), _form(args.form2)).as_dict()
    _emit(args, {"tangency": div}, f"tangency divisor: {div}")
    return 0


def cmd_monodromy(args) -> int:
    w = _form(args.form)
    seed = _seed(args)
    res = web_monodromy(w, seed=seed)
    summary = res.summary()
    text = "\n".join([
        f"generators: {' '.join(summary['generators']) or '(none)'}",
        f"orbits: {summary['orbits']}",
        f"transitive: {res.transitive}",
        f"group order: {res.group_order}",
        f"seed: {seed} ({res.label})",
    ])
    _emit(args, summary, text)
    return 0 if not res.flags else 1


def cmd_symmetrize(args) -> int:
    g = symmetrize(_function(args.expr))
    _emit(args, {"result": format_any(g)}, format_any(g))
    return 0


def cmd_ueda(args) -> int:
    phi = ueda_endomorphism(_function(args.psi))
    _emit(args, {"map": format_any(phi)}, format_any(phi))
    return 0


def cmd_catalog(args) -> int:
    names = args.names or None
    if args.action == "list":
        entries = catalog(names)
        if args.json:
            print(json.dumps({e.name: {"title": e.title,
                                       "checks": [[c.name, c.provenance] for c in e.checks]}
                              for e in entries}, indent=2, sort_keys=True))
        else:
            for e in entries:
                print(f"{e.name}  {e.title}")
        return 0
    report = catalog_verify(names, seed=_seed(args), timings=args.timings)
    print(report.to_json() if args.json else report.to_text())
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="weblab", description="Exact computations with webs on the plane.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, *positional, seed=False):
        p = sub.add_parser(name, help=help_text)
        for arg in positional:
            p.add_argument(arg)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if seed:
            p.add_argument("--seed", type=int, default=None)
        p.set_defaults(func=func)
        return p

    add("disc", cmd_disc, "discriminant and its divisor", "form")
    add("pullback", cmd_pullback, "pull a form back by a map", "map", "form")
    add("invariant", cmd_invariant, "is the web invariant by the map", "map", "form")
    add("degree", cmd_degree, "degree of the web on P^2", "form", seed=True)
    add("tangency", cmd_tangency, "tangency divisor of two foliations", "form1", "form2")
    add("monodromy", cmd_monodromy, "numerical monodromy on a random line", "form", seed=True)
    add("symmetrize", cmd_symmetrize, "rewrite a symmetric function in s = x + y, p = x y", "expr")
    add("ueda", cmd_ueda, "Ueda endomorphism of a one-variable map", "psi")

    cat = sub.add_parser("catalog", help="list or verify the built-in examples")
    cat.add_argument("action", choices=["list", "verify"])
    cat.add_argument("names", nargs="*", metavar="NAME", help=f"entries among {', '.join(catalog_names())}")
    cat.add_argument("--seed", type=int, default=None)
    cat.add_argument("--json", action="store_true")
    cat.add_argument("--timings", action="store_true", help="include timings (output is then not reproducible)")
    cat.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (InputError, KeyError) as exc:
        print(f"input error: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return 2
    except (TrackingError, SamplingError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
