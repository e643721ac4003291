"""Command-line interface.

    grilab verify <lemma21|lemma31|lemma11|prop22|theorem> [flags]
    grilab fuzz --file EXPRS [--let name=VALUE]... [flags]
    grilab eval --expr STRING [--let name=VALUE]... [flags]

Flags: --seed N --trials T --prec P --depth D --height H --dmax d
       --algebra a,b --quad d --ring NAME --jobs J

The environment variable GRILAB_SEED overrides the default seed (an
explicit --seed still wins).  Reports are line-oriented key=value records;
exit status is 0 when every check passes, 1 when any check fails, and 2 on
configuration or usage errors.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any

from .errors import ConfigError, GrilabError
from .expr import Environment
from .harness import (
    SCENARIOS,
    ScenarioConfig,
    cmd_eval,
    cmd_fuzz,
    environment_for,
    load_expression_file,
    ring_from_name,
)
from .quaternions import QuatAlgebra, Quaternion
from .rings import Ring
from .series import SeriesRing, TowerRing

RING_CHOICES = ("rationals", "quad", "quat", "series", "quad-series", "tower", "outer")


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"not a rational number: {text!r}") from exc


def _parse_algebra(text: str) -> tuple[Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ConfigError("--algebra expects two comma-separated rationals, e.g. -1,-1")
    return _parse_fraction(parts[0]), _parse_fraction(parts[1])


_QUAT_LITERAL_RE = re.compile(r"^\(([^()]*)\)$")


def _parse_quaternion_literal(text: str, algebra: QuatAlgebra) -> Quaternion:
    match = _QUAT_LITERAL_RE.match(text.strip())
    if not match:
        raise ConfigError(f"not a quaternion literal (w,x,y,z): {text!r}")
    parts = match.group(1).split(",")
    if len(parts) != 4:
        raise ConfigError(f"quaternion literal needs 4 coordinates: {text!r}")
    return algebra.element(*(_parse_fraction(p) for p in parts))


_SERIES_TERM_RE = re.compile(
    r"^(?P<coeff>\([^()]*\)|[0-9/]+)(?:\*t\^(?P<deg>-?\d+))?$"
)
_SERIES_ORDER_RE = re.compile(r"^O\(t\^(?P<prec>-?\d+)\)$")


def _parse_series_literal(text: str, ring: SeriesRing) -> Any:
    """Parse ``c0 + c1*t^1 - c2*t^2 + O(t^P)`` with rational or quaternion
    coefficients; the O() suffix is optional and defaults to the ring's
    precision."""
    pieces: list[tuple[int, str]] = []
    sign = 1
    token = ""
    for chunk in re.split(r"\s+", text.strip()):
        if chunk == "+":
            sign = 1
            continue
        if chunk == "-":
            sign = -1
            continue
        pieces.append((sign, chunk))
        sign = 1
    prec = None
    coeffs: dict[int, Any] = {}
    base = ring.base
    for sign, piece in pieces:
        order = _SERIES_ORDER_RE.match(piece)
        if order:
            prec = int(order.group("prec"))
            continue
        match = _SERIES_TERM_RE.match(piece)
        if not match:
            raise ConfigError(f"bad series term {piece!r} in {text!r}")
        coeff_text = match.group("coeff")
        if coeff_text.startswith("("):
            if not isinstance(base, QuatAlgebra):
                raise ConfigError("quaternion coefficients need a quaternion base ring")
            coeff = _parse_quaternion_literal(coeff_text, base)
            if sign < 0:
                coeff = base.neg(coeff)
        else:
            coeff = base.from_rational(sign * _parse_fraction(coeff_text))
        deg = int(match.group("deg") or 0)
        coeffs[deg] = base.add(coeffs[deg], coeff) if deg in coeffs else coeff
    if prec is None:
        prec = ring.default_prec
    return ring.make(coeffs, prec)


def _parse_let_value(text: str, ring: Ring) -> Any:
    text = text.strip()
    if isinstance(ring, QuatAlgebra):
        if text.startswith("("):
            return _parse_quaternion_literal(text, ring)
        return ring.from_rational(_parse_fraction(text))
    if isinstance(ring, SeriesRing):
        base = ring.base
        if ("t^" in text or "O(" in text) and not isinstance(base, TowerRing):
            return _parse_series_literal(text, ring)
        if text.startswith("(") and isinstance(base, QuatAlgebra):
            return ring.constant(_parse_quaternion_literal(text, base))
        if text.startswith("(") and isinstance(base, TowerRing):
            return ring.constant(
                base.constant(_parse_quaternion_literal(text, base.algebra))
            )
        return ring.from_rational(_parse_fraction(text))
    if isinstance(ring, TowerRing):
        if text.startswith("("):
            return ring.constant(_parse_quaternion_literal(text, ring.algebra))
        return ring.from_rational(_parse_fraction(text))
    return ring.from_rational(_parse_fraction(text))


def _parse_lets(args: list[str], ring: Ring) -> dict[str, Any]:
    out: dict[str, Any] = {}
    for item in args or []:
        if "=" not in item:
            raise ConfigError(f"--let expects name=value, got {item!r}")
        name, value = item.split("=", 1)
        name = name.strip()
        if not name.isidentifier():
            raise ConfigError(f"--let name must be an identifier, got {name!r}")
        out[name] = _parse_let_value(value, ring)
    return out


def _add_common_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--seed", type=int, default=None, help="RNG seed (default 42 or GRILAB_SEED)")
    sub.add_argument("--trials", type=int, default=200)
    sub.add_argument("--prec", type=int, default=12, help="series precision")
    sub.add_argument("--depth", type=int, default=2, help="tower depth")
    sub.add_argument("--height", type=int, default=10, help="sampling height bound")
    sub.add_argument("--dmax", type=int, default=10, help="central-power search bound")
    sub.add_argument("--algebra", type=str, default="-1,-1", help="quaternion parameters a,b")
    sub.add_argument("--quad", type=str, default="-1", help="quadratic discriminant d")
    sub.add_argument("--ring", choices=RING_CHOICES, default="quat",
                     help="base ring for fuzz/eval")
    sub.add_argument("--jobs", type=int, default=1,
                     help="concurrent trial evaluation (deterministic per-trial seeds)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grilab",
        description="Exact verification scenarios for noncommutative rational identities.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", help="run a named verification scenario")
    verify.add_argument("scenario", choices=sorted(SCENARIOS))
    _add_common_flags(verify)

    fuzz = commands.add_parser("fuzz", help="randomized identity testing of expressions")
    fuzz.add_argument("--file", required=True, help="expression file, one per line, '#' comments")
    fuzz.add_argument("--let", action="append", default=[], metavar="NAME=VALUE",
                      help="bind a named constant, e.g. --let b=(0,0,1,0)")
    _add_common_flags(fuzz)

    ev = commands.add_parser("eval", help="evaluate a constant expression")
    ev.add_argument("--expr", required=True)
    ev.add_argument("--let", action="append", default=[], metavar="NAME=VALUE")
    _add_common_flags(ev)
    return parser


def _config_from_args(args: argparse.Namespace) -> ScenarioConfig:
    seed = args.seed
    if seed is None:
        env_seed = os.environ.get("GRILAB_SEED")
        try:
            seed = int(env_seed) if env_seed is not None else 42
        except ValueError as exc:
            raise ConfigError(f"GRILAB_SEED must be an integer, got {env_seed!r}") from exc
    cfg = ScenarioConfig(
        seed=seed,
        trials=args.trials,
        prec=args.prec,
        tower_depth=args.depth,
        height=args.height,
        d_bound=args.dmax,
        algebra=_parse_algebra(args.algebra),
        quad_d=_parse_fraction(args.quad),
        jobs=args.jobs,
    )
    cfg.validate()
    return cfg


def _environment(args: argparse.Namespace, cfg: ScenarioConfig) -> Environment:
    ring = ring_from_name(args.ring, cfg)
    env = environment_for(ring)
    constants = dict(env.constants)
    constants.update(_parse_lets(args.let, ring))
    return Environment(ring=ring, constants=constants)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        if args.command == "verify":
            report = SCENARIOS[args.scenario](cfg)
        elif args.command == "fuzz":
            path = Path(args.file)
            if not path.is_file():
                raise ConfigError(f"no such expression file: {path}")
            expressions = load_expression_file(path.read_text())
            report = cmd_fuzz(expressions, _environment(args, cfg), cfg)
        else:
            report = cmd_eval(args.expr, _environment(args, cfg), cfg)
    except ConfigError as exc:
        print(f"grilab: error: {exc}", file=sys.stderr)
        return 2
    except GrilabError as exc:
        print(f"grilab: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(report.render())
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
