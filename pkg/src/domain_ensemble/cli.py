"""Command-line front end.

Exit codes: 0 success, 2 invalid parameter or infeasible request, 3 I/O
failure, 4 malformed domain file.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

from . import domain_network, ensemble_core, maxent_solver
from .errors import ConfigError, EnsembleError
from .svgplot import sweep_svg

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_IO = 3
EXIT_CONFIG = 4

CSV_COLUMNS = ("gamma", "w_minus", "w_center", "w_plus", "nu_over_q", "entropy")
DOMAIN_FIELDS = {"label": str, "N": int, "q": int}


@dataclass(frozen=True)
class SweepRow:
    gamma: float
    w_minus: float
    w_center: float
    w_plus: float
    nu_over_q: float
    entropy: float

    def as_tuple(self) -> tuple[float, ...]:
        return tuple(getattr(self, c) for c in CSV_COLUMNS)


def fmt(x: float) -> str:
    """Shortest text that parses back to exactly ``x``; locale independent."""
    x = float(x)
    if x == 0.0:
        x = 0.0
    return repr(x)


def sweep_gammas(gamma_min: float, gamma_max: float, steps: int) -> list[float]:
    # weighted endpoints keep the grid exactly symmetric for symmetric ranges
    n = steps - 1
    return [(gamma_min * (n - i) + gamma_max * i) / n for i in range(steps)]


def sweep_rows(q: int, gamma_min: float, gamma_max: float, steps: int) -> list[SweepRow]:
    rows = []
    for g in sweep_gammas(gamma_min, gamma_max, steps):
        w = ensemble_core.weights_from_gamma(q, g)
        rows.append(
            SweepRow(
                gamma=g,
                w_minus=w.w_minus,
                w_center=w.w_center,
                w_plus=w.w_plus,
                nu_over_q=ensemble_core.nu_from_gamma(q, g) / q,
                entropy=ensemble_core.entropy(w),
            )
        )
    return rows


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([fmt(v) for v in row.as_tuple()])
    return buf.getvalue()


def read_sweep_csv(path) -> list[SweepRow]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != CSV_COLUMNS:
            raise ValueError(f"unexpected CSV header {header}")
        return [SweepRow(*map(float, rec)) for rec in reader]


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def cmd_sweep(q, gamma_min, gamma_max, steps, out_csv, out_svg=None) -> int:
    if not (math.isfinite(gamma_min) and math.isfinite(gamma_max)) or gamma_min >= gamma_max:
        _err(f"need finite gamma_min < gamma_max, got {gamma_min}, {gamma_max}")
        return EXIT_INVALID
    if steps < 2:
        _err(f"steps must be >= 2, got {steps}")
        return EXIT_INVALID
    try:
        rows = sweep_rows(q, gamma_min, gamma_max, steps)
    except EnsembleError as exc:
        _err(str(exc))
        return EXIT_INVALID
    try:
        with open(out_csv, "w", newline="", encoding="utf-8") as fh:
            fh.write(rows_to_csv(rows))
        if out_svg is not None:
            svg = sweep_svg(
                [r.gamma for r in rows],
                [r.w_minus for r in rows],
                [r.w_center for r in rows],
                [r.w_plus for r in rows],
                [r.nu_over_q for r in rows],
            )
            with open(out_svg, "w", encoding="utf-8") as fh:
                fh.write(svg)
    except OSError as exc:
        _err(f"cannot write output: {exc}")
        return EXIT_IO
    return EXIT_OK


def cmd_eval(q, gamma, N=None) -> int:
    try:
        spec = ensemble_core.DomainSpec("domain", q if N is None else N, q)
        rep = ensemble_core.report(spec, gamma)
    except EnsembleError as exc:
        _err(str(exc))
        return EXIT_INVALID
    w = rep.weights
    fields = [
        ("gamma", rep.gamma),
        ("w_minus", w.w_minus),
        ("w_center", w.w_center),
        ("w_plus", w.w_plus),
        ("nu", rep.nu),
        ("nu_over_q", rep.nu / q),
    ]
    if N is not None:
        fields.append(("population", rep.population))
    fields += [("entropy", rep.entropy), ("chi", rep.chi)]
    for name, value in fields:
        print(f"{name} = {value:.12g}")
    return EXIT_OK


def cmd_invert(q, nu) -> int:
    try:
        gamma = ensemble_core.gamma_from_nu(q, nu)
    except EnsembleError as exc:
        _err(str(exc))
        return EXIT_INVALID
    print(f"gamma = {gamma:.12g}")
    return EXIT_OK


def parse_states(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise ValueError(f"states must be comma-separated integers, got {text!r}") from None


def cmd_solve(states, target) -> int:
    try:
        ens = maxent_solver.solve_maxent(parse_states(states), target)
    except (EnsembleError, ValueError) as exc:
        _err(str(exc))
        return EXIT_INVALID
    print(f"gamma = {ens.gamma:.12g}")
    print(f"entropy = {ens.entropy:.12g}")
    for m, w in zip(ens.states, ens.weights):
        print(f"w[{m}] = {w:.12g}")
    return EXIT_OK


def load_domains(text: str) -> list[ensemble_core.DomainSpec]:
    """Parse a ``{"domains": [{"label", "N", "q"}, ...]}`` document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}")
    if not isinstance(doc, dict):
        raise ConfigError("top level must be an object with a 'domains' field")
    extra = sorted(set(doc) - {"domains"})
    if extra:
        raise ConfigError(f"unknown top-level field(s): {', '.join(extra)}")
    if "domains" not in doc:
        raise ConfigError("missing field 'domains'")
    items = doc["domains"]
    if not isinstance(items, list) or not items:
        raise ConfigError("'domains' must be a non-empty list")
    out = []
    for i, item in enumerate(items):
        where = f"domains[{i}]"
        if not isinstance(item, dict):
            raise ConfigError(f"{where}: expected an object")
        extra = sorted(set(item) - set(DOMAIN_FIELDS))
        if extra:
            raise ConfigError(f"{where}: unknown field(s): {', '.join(extra)}")
        for name, kind in DOMAIN_FIELDS.items():
            if name not in item:
                raise ConfigError(f"{where}: missing field '{name}'")
            value = item[name]
            if isinstance(value, bool) or not isinstance(value, kind):
                raise ConfigError(f"{where}.{name}: expected {kind.__name__}, got {value!r}")
        try:
            out.append(ensemble_core.DomainSpec(item["label"], item["N"], item["q"]))
        except EnsembleError as exc:
            raise ConfigError(f"{where}: {exc}") from None
    return out


def cmd_network(domains_path, total_charge) -> int:
    try:
        with open(domains_path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        _err(f"cannot read domain file: {exc}")
        return EXIT_IO
    try:
        domains = load_domains(text)
    except ConfigError as exc:
        _err(f"{domains_path}: {exc}")
        return EXIT_CONFIG
    try:
        sol = domain_network.equilibrate(domains, total_charge)
    except EnsembleError as exc:
        _err(str(exc))
        return EXIT_INVALID
    print(f"gamma_star = {sol.gamma_star:.12g}")
    print("label,nu,population")
    for c in sol.per_domain:
        print(f"{c.label},{c.nu:.12g},{c.population:.12g}")
    print(f"total_charge = {sol.total_charge:.12g}")
    print(f"residual = {sol.residual:.3g}")
    return EXIT_OK


def _finite(text: str) -> float:
    value = float(text)
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"expected a finite number, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="domain-ensemble",
        description="Three-state maximum-entropy ensemble for domain electron populations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "sweep",
        help="tabulate weights, nu/q and entropy over a gamma grid",
        description=(
            "Write weights w_center = 1/(1 + 2 cosh(q gamma)), "
            "w_plus/minus = exp(-/+ q gamma) w_center, "
            "nu/q = -2 sinh(q gamma)/(1 + 2 cosh(q gamma)) and the entropy "
            "-sum w ln w on a uniform gamma grid. The default range [-5, 5] "
            "with 201 points is a choice, not taken from any reference figure."
        ),
    )
    p.add_argument("--q", type=int, default=1, help="maximum transferable charge (default 1)")
    p.add_argument("--gamma-min", type=_finite, default=-5.0, help="default -5")
    p.add_argument("--gamma-max", type=_finite, default=5.0, help="default 5")
    p.add_argument("--steps", type=int, default=201, help="grid points incl. endpoints (default 201)")
    p.add_argument("--out-csv", required=True, help="CSV output path")
    p.add_argument("--out-svg", help="optional SVG plot path")

    p = sub.add_parser(
        "eval",
        help="weights, charge, entropy and electronegativity at one gamma",
        description=(
            "Evaluate the closed-form weights, nu = -2 q sinh(q gamma)/(1 + 2 cosh(q gamma)), "
            "entropy -sum w ln w and chi = -gamma."
        ),
    )
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--gamma", type=_finite, required=True)
    p.add_argument("--N", type=int, help="baseline electron count; adds the population N + nu")

    p = sub.add_parser(
        "invert",
        help="gamma producing a given net charge",
        description=(
            "Solve nu = -2 q sinh(q gamma)/(1 + 2 cosh(q gamma)) for gamma; "
            "nu must lie strictly inside (-q, q)."
        ),
    )
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--nu", type=_finite, required=True)

    p = sub.add_parser(
        "solve",
        help="maximum-entropy weights over arbitrary states with a fixed mean",
        description=(
            "Maximise -sum w ln w subject to sum w = 1 and sum w M = target; "
            "the solution is w_M proportional to exp(-gamma M)."
        ),
    )
    p.add_argument("--states", required=True, help="comma-separated particle numbers, e.g. 0,1,2")
    p.add_argument("--target", type=_finite, required=True, help="prescribed mean particle number")

    p = sub.add_parser(
        "network",
        help="equalise gamma across domains at fixed total charge",
        description=(
            "Find the shared gamma at which sum_k nu_k(gamma) equals the total charge. "
            'Domain file: {"domains": [{"label": str, "N": int, "q": int}, ...]}.'
        ),
    )
    p.add_argument("--domains", required=True, help="JSON domain file")
    p.add_argument("--total-charge", type=_finite, required=True)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "sweep":
        return cmd_sweep(args.q, args.gamma_min, args.gamma_max, args.steps, args.out_csv, args.out_svg)
    if args.command == "eval":
        return cmd_eval(args.q, args.gamma, args.N)
    if args.command == "invert":
        return cmd_invert(args.q, args.nu)
    if args.command == "solve":
        return cmd_solve(args.states, args.target)
    return cmd_network(args.domains, args.total_charge)


if __name__ == "__main__":
    sys.exit(main())
