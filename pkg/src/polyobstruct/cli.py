"""Command-line front end: decisions, regimes, orbit tables, indices, and the
full obstruction run, all reported as canonical JSON.

Exit codes: 0 on success, 2 on domain errors (with a machine-readable error
object on stdout), 64 on usage errors.  All numbers are serialized in exact
textual form; the envelope attests that no floating point entered the
computation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .decide import (
    decide_4d,
    decide_stabilized,
    embedding_function,
)
from .domains import Ellipsoid, Regime, select_regime, skinny_ellipsoid
from .errors import PolyobstructError, PreconditionFailed
from .exactnum import PerturbedRational
from .indexcalc import (
    BuildingSpec,
    CurveSpec,
    building_index,
    cz_ellipsoid_cover,
    cz_rotation,
    cz_torus_class,
    fredholm_index,
)
from .moduli import (
    SearchBounds,
    classify_component,
    contradiction_check,
    enumerate_configurations,
    enumerate_configurations_bruteforce,
)
from .reeb import TorusClass, ellipsoid_orbits


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _contains_float(payload) -> bool:
    if isinstance(payload, float):
        return True
    if isinstance(payload, dict):
        return any(_contains_float(v) for v in payload.values())
    if isinstance(payload, (list, tuple)):
        return any(_contains_float(v) for v in payload)
    return False


def _emit(command: str, result, regime: Optional[Regime] = None) -> None:
    envelope = {
        "command": command,
        "regime": regime.to_jsonable() if regime is not None else None,
        "result": result,
        "version": __version__,
        "exact_arithmetic": not _contains_float(result),
    }
    print(json.dumps(envelope, sort_keys=True, indent=2))


def _emit_error(exc: Exception) -> None:
    print(
        json.dumps(
            {"error": {"type": type(exc).__name__, "message": str(exc)}},
            sort_keys=True,
            indent=2,
        )
    )


def _parse_caps(text: str) -> tuple[PerturbedRational, ...]:
    return tuple(PerturbedRational.parse(part) for part in text.split(","))


def _parse_class(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.split(","))


def _load_spec(text: str) -> dict:
    if text.startswith("@"):
        return json.loads(Path(text[1:]).read_text())
    return json.loads(text)


def _regime_from_args(args) -> Regime:
    overrides = {}
    if getattr(args, "config", None):
        overrides.update(json.loads(Path(args.config).read_text()))
    for name, key in (("d", "d"), ("eps", "eps"), ("S", "S")):
        value = getattr(args, name, None)
        if value is not None:
            overrides[key] = value
    kwargs = {}
    if "d" in overrides:
        kwargs["d"] = int(overrides["d"])
    if "eps" in overrides:
        kwargs["eps"] = PerturbedRational.parse(str(overrides["eps"]))
    if "S" in overrides:
        kwargs["S"] = PerturbedRational.parse(str(overrides["S"]))
    if "deltas" in overrides:
        kwargs["deltas"] = tuple(
            PerturbedRational.parse(str(v)) for v in overrides["deltas"]
        )
    for knob in ("slack_d", "slack_S", "slack_delta"):
        cli_value = getattr(args, knob.lower(), None)
        if cli_value is not None:
            kwargs[knob] = int(cli_value)
        elif knob in overrides:
            kwargs[knob] = int(overrides[knob])
    return select_regime(
        args.n,
        PerturbedRational.parse(args.x),
        PerturbedRational.parse(args.a),
        PerturbedRational.parse(args.b),
        **kwargs,
    )


def _bounds_from_args(args, reg: Regime) -> Optional[SearchBounds]:
    if args.k_max is None and args.l_max is None and args.max_components is None:
        return None
    default = SearchBounds.for_regime(reg)
    return SearchBounds(
        k_max=args.k_max if args.k_max is not None else default.k_max,
        l_max=args.l_max if args.l_max is not None else default.l_max,
        max_components=args.max_components
        if args.max_components is not None
        else default.max_components,
    )


def _parse_grid(spec: str) -> dict[str, list[Fraction]]:
    grids: dict[str, list[Fraction]] = {}
    for part in spec.split(","):
        name, _, rng = part.partition("=")
        pieces = rng.split(":")
        if len(pieces) != 3:
            raise _UsageError(f"grid range {part!r} must be name=start:stop:step")
        start, stop, step = (Fraction(p) for p in pieces)
        if step <= 0 or stop < start:
            raise _UsageError(f"bad grid range {part!r}")
        values = []
        v = start
        while v <= stop:
            values.append(v)
            v += step
        grids[name.strip()] = values
    return grids


def _build_parser() -> _Parser:
    parser = _Parser(prog="polyobstruct", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_decide = sub.add_parser("decide", help="embedding verdict")
    p_decide.add_argument("--x", required=True)
    p_decide.add_argument("--a", required=True)
    p_decide.add_argument("--b", required=True)
    p_decide.add_argument("--dim", type=int, default=3, help="half-dimension n")
    p_decide.add_argument("--mode", choices=("stabilized", "4d"), default="stabilized")
    p_decide.add_argument("--engine-check", action="store_true")

    p_sweep = sub.add_parser("sweep", help="embedding-function table over a grid")
    p_sweep.add_argument("--grid", required=True, help="e.g. x=1:4:1/2,a=1:3:1/2")
    p_sweep.add_argument("--out", choices=("csv", "json"), default="csv")

    p_regime = sub.add_parser("regime", help="regime construction and display")
    regime_sub = p_regime.add_subparsers(dest="subcommand", required=True)
    for name in ("select", "show"):
        p = regime_sub.add_parser(name)
        p.add_argument("--x", required=True)
        p.add_argument("--a", required=True)
        p.add_argument("--b", required=True)
        p.add_argument("--n", type=int, default=3)
        p.add_argument("--d", type=int)
        p.add_argument("--eps")
        p.add_argument("--S")
        p.add_argument("--slack-d", dest="slack_d", type=int)
        p.add_argument("--slack-s", dest="slack_s", type=int)
        p.add_argument("--slack-delta", dest="slack_delta", type=int)
        p.add_argument("--config", help="JSON file with regime overrides")

    p_reeb = sub.add_parser("reeb", help="closed-orbit tables")
    reeb_sub = p_reeb.add_subparsers(dest="subcommand", required=True)
    p_orbits = reeb_sub.add_parser("orbits")
    p_orbits.add_argument(
        "--domain",
        required=True,
        help="'ellipsoid:<caps>' or 'skinny:<x>,<a>,<b>,<n>'",
    )

    p_index = sub.add_parser("index", help="Conley-Zehnder and Fredholm indices")
    index_sub = p_index.add_subparsers(dest="subcommand", required=True)
    p_cz = index_sub.add_parser("cz")
    p_cz.add_argument("--ellipsoid", help="comma-separated capacities")
    p_cz.add_argument("--axis", type=int)
    p_cz.add_argument("--cover", type=int, default=1)
    p_cz.add_argument("--torus-class", dest="torus_class")
    p_cz.add_argument("--dim", type=int)
    p_cz.add_argument("--rotation", help="total rotation angle")
    p_fred = index_sub.add_parser("fredholm")
    p_fred.add_argument("--spec", required=True, help="CurveSpec JSON or @file")
    p_fred.add_argument("--ellipsoid", help="capacities for ellipsoid ends")
    p_build = index_sub.add_parser("building")
    p_build.add_argument("--spec", required=True, help="BuildingSpec JSON or @file")
    p_build.add_argument("--ellipsoid", help="capacities for ellipsoid ends")

    p_obstruct = sub.add_parser("obstruct", help="the full obstruction engine")
    obstruct_sub = p_obstruct.add_subparsers(dest="subcommand", required=True)
    p_run = obstruct_sub.add_parser("run")
    p_run.add_argument("--x", required=True)
    p_run.add_argument("--a", required=True)
    p_run.add_argument("--b", required=True)
    p_run.add_argument("--n", type=int, default=3)
    p_run.add_argument("--d", type=int)
    p_run.add_argument("--eps")
    p_run.add_argument("--S")
    p_run.add_argument("--slack-d", dest="slack_d", type=int)
    p_run.add_argument("--slack-s", dest="slack_s", type=int)
    p_run.add_argument("--slack-delta", dest="slack_delta", type=int)
    p_run.add_argument("--config", help="JSON file with regime overrides")
    p_run.add_argument("--k-max", dest="k_max", type=int)
    p_run.add_argument("--l-max", dest="l_max", type=int)
    p_run.add_argument("--max-components", dest="max_components", type=int)
    p_run.add_argument("--trace", action="store_true", help="per-component ledger")
    p_run.add_argument("--workers", type=int)

    sub.add_parser("selftest", help="brute-force oracle cross-checks")
    return parser


def _cmd_decide(args) -> int:
    if args.mode == "4d":
        verdict = decide_4d(
            PerturbedRational.parse(args.x),
            PerturbedRational.parse(args.a),
            PerturbedRational.parse(args.b),
        )
    else:
        verdict = decide_stabilized(
            PerturbedRational.parse(args.x),
            PerturbedRational.parse(args.a),
            PerturbedRational.parse(args.b),
            args.dim,
            engine_check=args.engine_check,
        )
    _emit("decide", verdict.to_jsonable())
    return 0


def _cmd_sweep(args) -> int:
    grids = _parse_grid(args.grid)
    if "x" not in grids or "a" not in grids:
        raise _UsageError("sweep grid must define x and a ranges")
    rows = []
    for x in grids["x"]:
        for a in grids["a"]:
            value = embedding_function(x, a)
            rows.append((x, a, value))
    if args.out == "json":
        _emit(
            "sweep",
            [
                {"x": str(x), "a": str(a), "f": value.to_jsonable()}
                for x, a, value in rows
            ],
        )
    else:
        print("x,a,f,reason")
        for x, a, value in rows:
            if value.known:
                print(f"{x},{a},{value.value},")
            else:
                print(f"{x},{a},>={value.lower},{value.reason.value}")
    return 0


def _cmd_regime(args) -> int:
    reg = _regime_from_args(args)
    _emit(f"regime {args.subcommand}", reg.to_jsonable(), regime=reg)
    return 0


def _cmd_reeb(args) -> int:
    kind, _, payload = args.domain.partition(":")
    if kind == "ellipsoid":
        ellipsoid = Ellipsoid(_parse_caps(payload))
    elif kind == "skinny":
        x, a, b, n = payload.split(",")
        ellipsoid = skinny_ellipsoid(
            select_regime(
                int(n),
                PerturbedRational.parse(x),
                PerturbedRational.parse(a),
                PerturbedRational.parse(b),
            )
        )
    else:
        raise _UsageError(f"unknown domain kind {kind!r}")
    table = [
        {"axis": orbit.axis, "multiplicity": orbit.multiplicity, "period": period.to_string()}
        for orbit, period in ellipsoid_orbits(ellipsoid)
    ]
    _emit("reeb orbits", {"orbits": table})
    return 0


def _half_integer_jsonable(value):
    if isinstance(value, int):
        return value
    return str(value)


def _cmd_index(args) -> int:
    if args.subcommand == "cz":
        if args.rotation is not None:
            result = cz_rotation(PerturbedRational.parse(args.rotation))
        elif args.torus_class is not None:
            if args.dim is None:
                raise _UsageError("--torus-class needs --dim")
            result = cz_torus_class(TorusClass(_parse_class(args.torus_class)), args.dim)
        elif args.ellipsoid is not None:
            if args.axis is None:
                raise _UsageError("--ellipsoid needs --axis")
            result = cz_ellipsoid_cover(
                Ellipsoid(_parse_caps(args.ellipsoid)), args.axis, args.cover
            )
        else:
            raise _UsageError("index cz needs --rotation, --torus-class or --ellipsoid")
        _emit("index cz", {"cz": _half_integer_jsonable(result)})
        return 0
    ellipsoid = Ellipsoid(_parse_caps(args.ellipsoid)) if args.ellipsoid else None
    if args.subcommand == "fredholm":
        spec = CurveSpec.from_jsonable(_load_spec(args.spec))
        result = fredholm_index(spec, ellipsoid)
        _emit("index fredholm", {"index": _half_integer_jsonable(result)})
        return 0
    spec = BuildingSpec.from_jsonable(_load_spec(args.spec))
    result = building_index(spec, ellipsoid)
    _emit("index building", {"index": _half_integer_jsonable(result)})
    return 0


def _cmd_obstruct(args) -> int:
    reg = _regime_from_args(args)
    bounds = _bounds_from_args(args, reg)
    report = contradiction_check(reg, bounds, workers=args.workers)
    payload = report.to_jsonable()
    payload["configurations"] = [report.configuration.to_jsonable()]
    if args.trace:
        ledger = []
        for component in report.configuration.components:
            result = classify_component(component, reg)
            ledger.append(
                {
                    "bidegree": list(component.bidegree),
                    "class": list(component.torus_class.winding),
                    "admissible": result.admissible,
                    "reasons": list(result.reasons),
                }
            )
        payload["component_ledger"] = ledger
    _emit("obstruct run", payload, regime=reg)
    return 0


def _cmd_selftest(args) -> int:
    checks = []
    instances = [
        ("3", "3/2", "3/2", None),  # obstructed: unique family
        ("9/4", "1", "9/4", None),  # b = x: non-uniqueness expected
    ]
    for x, a, b, d in instances:
        reg = select_regime(
            3,
            PerturbedRational.parse(x),
            PerturbedRational.parse(a),
            PerturbedRational.parse(b),
            d=d,
        )
        bounds = SearchBounds(
            k_max=2 * reg.d + 1, l_max=1, max_components=2 * reg.d + 3
        )
        fast = enumerate_configurations(reg, bounds)
        slow = enumerate_configurations_bruteforce(reg, bounds)
        agree = [c.canonical_key() for c in fast] == [c.canonical_key() for c in slow]
        conserve = all(c.conservation_defect() == 0 for c in fast)
        checks.append(
            {
                "instance": {"x": x, "a": a, "b": b, "d": reg.d},
                "configurations": len(fast),
                "oracle_agreement": agree,
                "area_conservation": conserve,
            }
        )
    ok = all(c["oracle_agreement"] and c["area_conservation"] for c in checks)
    _emit("selftest", {"ok": ok, "checks": checks})
    return 0 if ok else 1


def run(argv: Sequence[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "decide":
            return _cmd_decide(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "regime":
            return _cmd_regime(args)
        if args.command == "reeb":
            return _cmd_reeb(args)
        if args.command == "index":
            return _cmd_index(args)
        if args.command == "obstruct":
            return _cmd_obstruct(args)
        if args.command == "selftest":
            return _cmd_selftest(args)
        raise _UsageError(f"unknown command {args.command!r}")
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 64
    except PolyobstructError as exc:
        _emit_error(exc)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
