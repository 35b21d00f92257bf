"""Command-line surface: instance generation, products, norms and the verify suite.

Exit codes: 0 success, 1 failed verification property, 2 malformed
input, 3 precondition violation.  All randomness flows from --seed
(default: the ULTRAMEASURE_SEED environment variable, then 0), and every
emitted JSON document is deterministic for fixed inputs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path
from random import Random
from typing import Sequence

from .convolve import (
    convolve_functions,
    convolve_measures,
    level_norm,
    translated_sup_norm,
    weighted_sup_norm,
)
from .errors import PreconditionError, ValidationError
from .groups import FiniteGroup, cyclic, group_from_descriptor, heisenberg, make_chain
from .measures import (
    Measure,
    ScalarFunction,
    haar,
    random_function,
    random_measure,
    random_probability_measure,
)
from .scalar import format_rational, is_prime
from .tower import Tower, TowerElement, star
from .verify import SUITES, run_suite


def _dump_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _emit(payload: dict, out: str | None, fmt: str, table: str) -> None:
    text = _dump_json(payload)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    if fmt == "json":
        if not out:
            sys.stdout.write(text)
    else:
        sys.stdout.write(table)


def _load_json(path: str) -> dict:
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc
    try:
        payload = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise ValidationError(f"{path} does not contain a JSON object")
    return payload


def _parse_group(spec: str) -> FiniteGroup:
    parts = spec.split(":")
    if parts[0] == "cyclic" and len(parts) == 3:
        return cyclic(int(parts[1]), int(parts[2]))
    if parts[0] == "heisenberg" and len(parts) == 3:
        return heisenberg(int(parts[1]), int(parts[2]))
    raise ValidationError(f"unknown group spec {spec!r}; use cyclic:p:n or heisenberg:p:n")


def _measure_from_file(path: str, q: int) -> Measure:
    payload = _load_json(path)
    return Measure.from_json(payload, q=payload.get("q", q))


def _function_from_file(path: str) -> ScalarFunction:
    return ScalarFunction.from_json(_load_json(path))


def _rule(widths: Sequence[int]) -> str:
    return "  ".join("-" * w for w in widths) + "\n"


def _table(rows: list[list[str]], header: list[str]) -> str:
    widths = [max(len(str(r[i])) for r in rows + [header]) for i in range(len(header))]
    lines = ["  ".join(str(v).ljust(w) for v, w in zip(header, widths)) + "\n", _rule(widths)]
    for row in rows:
        lines.append("  ".join(str(v).ljust(w) for v, w in zip(row, widths)) + "\n")
    return "".join(lines)


def _measure_table(mu: Measure, title: str) -> str:
    rows = [
        [mu.domain.group.label(g), format_rational(a), mu.pointwise_norm(g).to_string()]
        for g, a in zip(mu.domain.members, mu.atoms)
    ]
    head = _table(rows, ["element", "atom", "|atom|"])
    return (
        f"{title}\n{head}"
        f"total mass: {format_rational(mu.total_mass())}   "
        f"whole-space norm: {mu.whole_norm().to_string()}\n"
    )


def _function_table(f: ScalarFunction, title: str) -> str:
    rows = [[f.domain.group.label(g), format_rational(v)] for g, v in zip(f.domain.members, f.values)]
    return f"{title}\n" + _table(rows, ["element", "value"])


def _tower_table(element: TowerElement, title: str) -> str:
    rows = []
    for i, comp in enumerate(element.components):
        for g, v in zip(comp.domain.members, comp.values):
            rows.append([str(i), comp.domain.group.label(g), format_rational(v)])
    return f"{title}\n" + _table(rows, ["level", "element", "value"])


# --- gen ----------------------------------------------------------------------


def _cmd_gen(args: argparse.Namespace) -> int:
    group = _parse_group(args.group)
    rng = Random(f"{args.seed}:gen")
    chosen = [name for name in ("measure", "function", "tower") if getattr(args, name)]
    if len(chosen) > 1:
        raise ValidationError(f"choose at most one artifact kind, got {', '.join(chosen)}")

    if args.tower:
        chain = make_chain(group, args.chain or "full")
        if args.measure == "random":
            measures = tuple(random_probability_measure(lvl, args.q, rng) for lvl in chain.levels)
        else:
            measures = tuple(haar(lvl, args.q) for lvl in chain.levels)
        tower = Tower(chain, measures)
        if args.tower == "indicators":
            element = tower.indicators()
        elif args.tower == "random":
            element = tower.element(
                [random_function(lvl, args.q, rng) for lvl in chain.levels]
            )
        else:
            raise ValidationError(f"unknown tower kind {args.tower!r}")
        payload = element.to_json()
        table = _tower_table(element, "generated tower element")
    elif args.function:
        if args.function != "random":
            raise ValidationError(f"unknown function kind {args.function!r}")
        f = random_function(group.full, args.q, rng)
        payload = f.to_json()
        table = _function_table(f, "generated function")
    elif args.measure:
        if args.measure == "haar":
            mu = haar(group.full, args.q)
        elif args.measure == "random":
            mu = random_probability_measure(group.full, args.q, rng)
        elif args.measure == "random-signed":
            mu = random_measure(group.full, args.q, rng, zero_weight=1)
        else:
            raise ValidationError(f"unknown measure kind {args.measure!r}")
        payload = mu.to_json()
        table = _measure_table(mu, "generated measure")
    elif args.chain:
        chain = make_chain(group, args.chain)
        payload = {"group": group.descriptor, **chain.descriptor()}
        table = f"chain levels: {[len(l) for l in chain.levels]}\n"
    else:
        payload = dict(group.descriptor)
        table = f"group of order {group.order}: {payload}\n"

    _emit(payload, args.out, args.format, table)
    return 0


# --- convolve -----------------------------------------------------------------


def _cmd_convolve(args: argparse.Namespace) -> int:
    if args.left or args.right:
        if not (args.left and args.right and args.nu):
            raise ValidationError("function convolution needs --left, --right and --nu")
        nu = _measure_from_file(args.nu, args.q)
        left = _function_from_file(args.left)
        right = _function_from_file(args.right)
        result = convolve_functions(left, right, nu)
        _emit(result.to_json(), args.out, args.format, _function_table(result, "left *~ right"))
        return 0
    if not (args.nu and args.mu):
        raise ValidationError("measure convolution needs --nu and --mu")
    nu = _measure_from_file(args.nu, args.q)
    mu = _measure_from_file(args.mu, args.q)
    result = convolve_measures(nu, mu)
    _emit(result.to_json(), args.out, args.format, _measure_table(result, "nu * mu"))
    return 0


# --- star ---------------------------------------------------------------------


def _cmd_star(args: argparse.Namespace) -> int:
    f = TowerElement.from_json(_load_json(args.f))
    g = TowerElement.from_json(_load_json(args.g))
    result = star(f, g)
    _emit(result.to_json(), args.out, args.format, _tower_table(result, "f * g"))
    return 0


# --- norms ----------------------------------------------------------------------


def _cmd_norms(args: argparse.Namespace) -> int:
    mu = _measure_from_file(args.mu, args.q)
    f = _function_from_file(args.f)
    rows: list[list[str]] = []
    payload: dict = {}

    def record(name: str, value: str) -> None:
        payload[name] = value
        rows.append([name, value])

    record("set_norm_domain", mu.whole_norm().to_string())
    record("weighted_sup_norm", weighted_sup_norm(f, mu).to_string())
    subgroup = mu.domain
    if args.subgroup:
        members = tuple(int(v) for v in args.subgroup.split(","))
        subgroup = mu.domain.group.subgroup(members)
    record("translated_sup_norm", translated_sup_norm(f, mu, subgroup).to_string())
    if args.next:
        mu_next = _measure_from_file(args.next, args.q)
        square, shift, total = level_norm(f, mu, mu_next)
        record("level_norm_square_part", square.to_string())
        record("level_norm_shift_part", shift.to_string())
        record("level_norm", total.to_string())
    _emit(payload, args.out, args.format, _table(rows, ["norm", "value"]))
    return 0


# --- rho ------------------------------------------------------------------------


def _cmd_rho(args: argparse.Namespace) -> int:
    mu = _measure_from_file(args.mu, args.q)
    density = mu.radon_nikodym(args.phi)
    _emit(
        density.to_json(),
        args.out,
        args.format,
        _function_table(density, f"translation density for shift {args.phi}"),
    )
    return 0


# --- verify ---------------------------------------------------------------------


def _cmd_verify(args: argparse.Namespace) -> int:
    started = time.monotonic()
    command = ["verify", args.suite, "--seed", str(args.seed), "--trials", str(args.trials)]
    report = run_suite(args.suite, args.seed, args.trials, args.q, command)
    payload = report.to_json()
    rows = [
        [p["name"], p["status"], str(p["trials"])]
        for p in payload["properties"]
    ]
    summary = (
        f"suite {args.suite}: {payload['counts']['pass']} passed, "
        f"{payload['counts']['fail']} failed, {payload['counts']['skipped']} skipped\n"
    )
    table = _table(rows, ["property", "status", "trials"]) + summary if rows else summary
    _emit(payload, args.out, args.format, table)
    print(f"elapsed: {time.monotonic() - started:.2f}s", file=sys.stderr)
    return 0 if report.passed else 1


# --- parser ---------------------------------------------------------------------


def _default_seed() -> int:
    return int(os.environ.get("ULTRAMEASURE_SEED", "0"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ultrameasure",
        description="Exact measures, convolutions and operator towers on finite group levels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--seed", type=int, default=_default_seed(), help="master RNG seed")
        p.add_argument("--q", type=int, default=5, help="prime of the valued field")
        p.add_argument("--out", type=str, default=None, help="write result JSON to this path")
        p.add_argument("--format", choices=("json", "table"), default="table")

    p_gen = sub.add_parser("gen", help="generate instance files")
    common(p_gen)
    p_gen.add_argument("--group", default="cyclic:3:2", help="cyclic:p:n or heisenberg:p:n")
    p_gen.add_argument("--chain", nargs="?", const="full", default=None, help="emit the full chain")
    p_gen.add_argument("--measure", choices=("haar", "random", "random-signed"), default=None)
    p_gen.add_argument("--function", choices=("random",), default=None)
    p_gen.add_argument("--tower", choices=("random", "indicators"), default=None)
    p_gen.set_defaults(func=_cmd_gen)

    p_conv = sub.add_parser("convolve", help="convolve two measures, or two functions against a measure")
    common(p_conv)
    p_conv.add_argument("--nu", type=str, default=None, help="measure file (left factor / weight)")
    p_conv.add_argument("--mu", type=str, default=None, help="measure file (right factor)")
    p_conv.add_argument("--left", type=str, default=None, help="function file on the weighting domain")
    p_conv.add_argument("--right", type=str, default=None, help="function file on the ambient group")
    p_conv.set_defaults(func=_cmd_convolve)

    p_star = sub.add_parser("star", help="graded product of two tower elements")
    common(p_star)
    p_star.add_argument("--f", type=str, required=True, help="tower element file")
    p_star.add_argument("--g", type=str, required=True, help="tower element file")
    p_star.set_defaults(func=_cmd_star)

    p_norms = sub.add_parser("norms", help="norms of a function against a measure")
    common(p_norms)
    p_norms.add_argument("--f", type=str, required=True, help="function file")
    p_norms.add_argument("--mu", type=str, required=True, help="measure file")
    p_norms.add_argument("--subgroup", type=str, default=None, help="comma-separated member indices")
    p_norms.add_argument("--next", type=str, default=None, help="measure file on the next chain level")
    p_norms.set_defaults(func=_cmd_norms)

    p_rho = sub.add_parser("rho", help="translation density of a quasi-invariant measure")
    common(p_rho)
    p_rho.add_argument("--mu", type=str, required=True, help="measure file")
    p_rho.add_argument("--phi", type=int, required=True, help="shift element index")
    p_rho.set_defaults(func=_cmd_rho)

    p_verify = sub.add_parser("verify", help="run a property suite and report results")
    common(p_verify)
    p_verify.add_argument("suite", choices=SUITES)
    p_verify.add_argument("--trials", type=int, default=100)
    p_verify.set_defaults(func=_cmd_verify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return 3


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
