"""Command-line front-end: profile, check, envelope, sets, zoo export.

Every emitted number comes from a library call; the CLI only parses inputs,
resolves configuration (config file values overridden by flags) and writes
files.  Exit codes: 0 success, 1 check failure, 2 input/config error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import io as lio
from .envelopes import ScalarField, baire_lower, baire_upper
from .errors import InputError
from .harness import SuiteConfig, overall_ok, run_suite
from .metric import FiniteMetricSpace
from .scales import RadiusGrid, scale_profile
from .zoo import get_entry, make_zoo

CONFIG_ENV = "LIPDERIV_CONFIG"

_DEFAULTS = {
    "metric": "euclidean",
    "rmax": 0.5,
    "q": 0.5,
    "steps": 8,
    "tail": 3,
    "seed": 7,
    "zoo_resolution": 0.02,
    "suite": "all",
    "random_spaces": 50,
}


def _load_config(path):
    if path is None:
        path = os.environ.get(CONFIG_ENV)
    if path is None:
        return {}
    try:
        with open(path) as handle:
            cfg = json.load(handle)
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed config {path}: {exc}") from None
    if not isinstance(cfg, dict):
        raise InputError(f"config {path} must be a JSON object")
    return cfg


def _resolve(args, key, cast=None):
    """Flag value if given, else config file value, else built-in default."""
    val = getattr(args, key, None)
    if val is None:
        val = args._config.get(key, _DEFAULTS.get(key))
    if val is not None and cast is not None:
        try:
            val = cast(val)
        except (TypeError, ValueError):
            raise InputError(f"bad value for {key}: {val!r}") from None
    return val


def _require(args, key, cast=None):
    val = _resolve(args, key, cast)
    if val is None:
        raise InputError(f"missing required option --{key}")
    return val


def _grid(args) -> RadiusGrid:
    return RadiusGrid(_require(args, "rmax", float),
                      _resolve(args, "q", float),
                      _resolve(args, "steps", int),
                      _resolve(args, "tail", int))


def _sibling(path: str, suffix: str) -> str:
    root, ext = os.path.splitext(path)
    return root + suffix + (ext or ".csv")


def cmd_profile(args) -> int:
    f = lio.load_sampled_map(_require(args, "input"),
                             _resolve(args, "metric"))
    profile = scale_profile(f, _grid(args))
    out = _require(args, "out")
    lio.save_profile(out, profile)
    lio.save_summary(_sibling(out, ".summary"), profile)
    return 0


def cmd_check(args) -> int:
    suite = _resolve(args, "suite")
    cfg = SuiteConfig(
        seed=_resolve(args, "seed", int),
        suite=tuple(s.strip() for s in suite.split(",") if s.strip()),
        inject_fault=_resolve(args, "inject_fault"),
        zoo_resolution=_resolve(args, "zoo_resolution", float),
        random_spaces=_resolve(args, "random_spaces", int))
    results = run_suite(cfg)
    print(lio.summary_table(results))
    report = _resolve(args, "report")
    if report:
        lio.save_report(report, results)
    return 0 if overall_ok(results) else 1


def cmd_envelope(args) -> int:
    ids, coords, values = lio.load_point_cloud(_require(args, "input"))
    if values is None:
        raise InputError("envelope input needs a val column")
    if values.ndim != 1:
        raise InputError("envelope input must be a scalar field")
    space = FiniteMetricSpace(ids, coords=coords,
                              p=lio.metric_order(_resolve(args, "metric")))
    h = _require(args, "h", float)
    if h <= space.resolution():
        raise InputError("envelope scale h must exceed the input resolution")
    g = ScalarField(space, values)
    out = _require(args, "out")
    lio.save_scalar_field(out, baire_upper(g, h))
    lio.save_scalar_field(_sibling(out, ".lower"), baire_lower(g, h))
    return 0


def cmd_sets(args) -> int:
    gamma = _require(args, "gamma", float)
    f = lio.load_sampled_map(_require(args, "input"),
                             _resolve(args, "metric"))
    profile = scale_profile(f, _grid(args))
    lio.save_set_flags(_require(args, "out"), profile, gamma)
    return 0


def cmd_zoo_export(args) -> int:
    res = _require(args, "resolution", float)
    entry = get_entry(make_zoo(res), _require(args, "entry"))
    f = entry.map
    if f.domain.coords is None:
        raise InputError(f"entry {entry.name!r} has no coordinate embedding")
    lio.save_point_cloud(_require(args, "out"), f.domain.ids,
                         f.domain.coords, f.values)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lipderiv",
        description="Scale-indexed Lipschitz derivative estimation and "
                    "verification on finite metric data.")
    parser.add_argument("--config", help="JSON config file; flags override")
    sub = parser.add_subparsers(dest="command", required=True)

    def shared(p, *names):
        opts = {
            "input": dict(help="input CSV path"),
            "metric": dict(help="euclidean | manhattan | chebyshev"),
            "rmax": dict(type=float, help="largest radius of the scale grid"),
            "q": dict(type=float, help="geometric radius ratio in (0,1)"),
            "steps": dict(type=int, help="number of radii"),
            "tail": dict(type=int, help="tail window for limit estimates"),
            "h": dict(type=float, help="envelope/defect scale"),
            "gamma": dict(type=float, help="level-set threshold"),
            "seed": dict(type=int, help="random seed"),
            "out": dict(help="output file path"),
            "report": dict(help="JSON report path"),
        }
        for name in names:
            p.add_argument(f"--{name}", **opts[name])

    p = sub.add_parser("profile", help="scale profile of a sampled map")
    shared(p, "input", "metric", "rmax", "q", "steps", "tail", "out")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("check", help="run verification suites")
    shared(p, "seed", "report")
    p.add_argument("--suite", help="comma-separated suite names or 'all'")
    p.add_argument("--inject-fault", dest="inject_fault",
                   choices=("chain", "openness"),
                   help="self-test: force a failure in the named suite")
    p.add_argument("--zoo-resolution", dest="zoo_resolution", type=float)
    p.add_argument("--random-spaces", dest="random_spaces", type=int)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("envelope", help="Baire envelopes of a scalar field")
    shared(p, "input", "metric", "h", "out")
    p.set_defaults(func=cmd_envelope)

    p = sub.add_parser("sets", help="threshold membership flags per point")
    shared(p, "input", "metric", "rmax", "q", "steps", "tail", "gamma", "out")
    p.set_defaults(func=cmd_sets)

    p = sub.add_parser("zoo", help="built-in test functions")
    zsub = p.add_subparsers(dest="zoo_command", required=True)
    pz = zsub.add_parser("export", help="sample an entry to point-cloud CSV")
    pz.add_argument("--entry", help="entry name")
    pz.add_argument("--resolution", type=float)
    shared(pz, "out")
    pz.set_defaults(func=cmd_zoo_export)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args._config = _load_config(args.config)
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
