"""Command line: ``eqehr ehrhart|hstar|reproduce``.

Exit codes
    0  success
    1  reproduce: pipeline and closed form differ
    2  malformed input
    3  internal cross-check failure
    4  polynomial but not effective (only with --expect-effective)
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .ehrhart import InterpolationMismatch, NonTerminating, count_range, ehrhart
from .equivariant import (NotInvariant, RouteMismatch, equivariant_series, fixed_ehrhart,
                          hstar_series, validate_setup)
from .families import build_family
from .groups import GroupTooLarge, NonIntegral
from .io import (MalformedInput, ehrhart_to_json, group_from_json, hstar_to_json, load_json,
                 polytope_from_json)
from .lattice import DegeneratePolytope, RationalPolytope, default_workers
from . import reproduce as rep

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_CHECK, EXIT_NOT_EFFECTIVE = 0, 1, 2, 3, 4

FAMILIES = ("sep-cycle", "cross", "simplex-ex22", "simplex-affine", "q")


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    family: dict | None = None
    format: str = "table"
    order: int | None = None
    threads: int = 1
    expect_effective: bool = False
    verify: bool = True
    target: str | None = None
    params: dict | None = None


def _family_selector(args) -> dict:
    sel = {"family": args.family}
    if args.d is not None:
        sel["d"] = args.d
    if args.k is not None:
        sel["k"] = args.k
    if args.dilate is not None:
        sel["dilate"] = args.dilate
    if args.group is not None:
        g = args.group
        sel["group"] = {"axis": int(g.split("=", 1)[1])} if g.startswith("axis=") else g
    return sel


def config_from_args(args) -> RunConfig:
    if args.command == "reproduce":
        params = {k: getattr(args, k) for k in ("p", "d", "k") if getattr(args, k) is not None}
        return RunConfig("reproduce", format=args.format, threads=args.threads or 1,
                         target=args.target, params=params)
    if (args.input is None) == (args.family is None):
        raise MalformedInput("give exactly one of --input and --family")
    order = getattr(args, "order", None)
    if order is not None and order < 1:
        raise MalformedInput("--order must be at least 1")
    return RunConfig(
        args.command,
        input=args.input,
        family=_family_selector(args) if args.family else None,
        format=args.format,
        order=order,
        threads=args.threads if args.threads is not None else default_workers(),
        expect_effective=getattr(args, "expect_effective", False),
        verify=not args.no_verify,
    )


def _load_polytope(cfg: RunConfig) -> RationalPolytope:
    if cfg.family:
        return build_family(cfg.family)[0]
    obj = load_json(cfg.input)
    if isinstance(obj, dict) and "family" in obj:
        return build_family(obj)[0]
    if isinstance(obj, dict) and "polytope" in obj:
        return polytope_from_json(obj["polytope"])
    return polytope_from_json(obj)


def _load_setup(cfg: RunConfig):
    if cfg.family:
        P, G, T = build_family(cfg.family)
    else:
        obj = load_json(cfg.input)
        if isinstance(obj, dict) and "family" in obj:
            P, G, T = build_family(obj)
        else:
            if not isinstance(obj, dict) or set(obj) != {"polytope", "group"}:
                raise MalformedInput('expected {"polytope": ..., "group": ...}')
            P = polytope_from_json(obj["polytope"])
            G, T = group_from_json(obj["group"])
    return validate_setup(P, G, T, workers=cfg.threads)


# -- rendering --------------------------------------------------------------------

def _fmt(x) -> str:
    if isinstance(x, list):
        return "(" + ", ".join(_fmt(y) for y in x) + ")"
    if isinstance(x, dict):
        return "; ".join(f"{k}={_fmt(v)}" for k, v in x.items())
    return str(x)


def render_table(data: dict) -> str:
    """Flat text layout of a JSON report; same fields, same values."""
    width = max(len(k) for k in data)
    lines = []
    for key, val in data.items():
        if isinstance(val, list) and val and isinstance(val[0], (list, dict)):
            lines.append(f"{key}:")
            lines += [f"  [{i}] {_fmt(v)}" for i, v in enumerate(val)]
        else:
            lines.append(f"{key.ljust(width)} : {_fmt(val)}")
    return "\n".join(lines)


def _emit(data: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(data, indent=2) + "\n")
    else:
        out.write(render_table(data) + "\n")


# -- commands ---------------------------------------------------------------------

def cmd_ehrhart(cfg: RunConfig, out=sys.stdout) -> int:
    P = _load_polytope(cfg)
    E = ehrhart(P, cfg.threads)
    if cfg.verify and E.quasi is not None:
        for m, c in enumerate(E.counts):
            if E.quasi(m) != c:
                raise InterpolationMismatch(f"quasipolynomial disagrees with count at m={m}")
    _emit(ehrhart_to_json(E), cfg.format, out)
    return EXIT_OK


def cmd_hstar(cfg: RunConfig, out=sys.stdout) -> int:
    S = _load_setup(cfg)
    R = hstar_series(S, cfg.order)
    if cfg.verify:
        # fixed-point counts from the facet route against every class series
        top = max(count_range(fixed_ehrhart(S, g).dim, fixed_ehrhart(S, g).N)
                  for g in S.class_reps)
        equivariant_series(S, max(top - 1, 1), check=True)
    data = hstar_to_json(R)
    if S.index is not None:
        data["index"] = S.index
    _emit(data, cfg.format, out)
    if cfg.expect_effective and R.is_polynomial and not R.is_effective:
        return EXIT_NOT_EFFECTIVE
    return EXIT_OK


def cmd_reproduce(cfg: RunConfig, out=sys.stdout) -> int:
    values = {"p": None, "d": None, "k": None, "threads": cfg.threads}
    values.update(cfg.params or {})
    ns = argparse.Namespace(**values)
    result = rep.TARGETS[cfg.target](ns)
    if cfg.format == "json":
        out.write(json.dumps(result.to_json(), indent=2) + "\n")
    else:
        out.write(str(result) + "\n")
    return EXIT_OK if result.ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eqehr",
                                     description="Exact (equivariant) Ehrhart computations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_source=True):
        p.add_argument("--format", choices=("table", "json"), default="table")
        p.add_argument("--threads", type=int, default=None,
                       help="worker processes (default: cores, capped; EQEHR_THREADS overrides)")
        p.add_argument("--seed-free", action="store_true",
                       help="assert a deterministic run; no randomness is ever used")
        if with_source:
            p.add_argument("--input", help="JSON file with a polytope, setup or family selector")
            p.add_argument("--family", choices=FAMILIES)
            p.add_argument("--group", help="dihedral, s-only, sr-only, sigma-d, "
                                           "all-reflections, trivial or axis=I")
            p.add_argument("--dilate", type=int)
            p.add_argument("--no-verify", action="store_true",
                           help="skip the internal cross-checks")
        p.add_argument("--d", type=int)
        p.add_argument("--k", type=int)

    e = sub.add_parser("ehrhart", help="counts, h*, quasipolynomial, period")
    common(e)
    h = sub.add_parser("hstar", help="equivariant H*-series and effectiveness")
    common(h)
    h.add_argument("--order", type=int, help="truncation order for non-polynomial H*")
    h.add_argument("--expect-effective", action="store_true",
                   help="exit 4 when H* is polynomial but not effective")
    r = sub.add_parser("reproduce", help="compare pipeline and closed form")
    r.add_argument("target", choices=sorted(rep.TARGETS))
    common(r, with_source=False)
    r.add_argument("--p", type=int)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        cfg = config_from_args(args)
        handler = {"ehrhart": cmd_ehrhart, "hstar": cmd_hstar,
                   "reproduce": cmd_reproduce}[cfg.command]
        return handler(cfg, out)
    except (RouteMismatch, InterpolationMismatch, NonTerminating, NonIntegral) as exc:
        print(f"cross-check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except (MalformedInput, NotInvariant, DegeneratePolytope, GroupTooLarge,
            ValueError, KeyError, TypeError) as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
