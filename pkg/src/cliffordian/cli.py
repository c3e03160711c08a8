"""Command-line surface.

Subcommands: ``repro-examples`` (the two worked x^5 tables), ``apply``
(dbar Delta^k on a user polynomial), ``verify`` (kernel census), ``coeffs``
(coefficient table rows), ``identities`` (combinatorial identity grids).
Exit codes: 0 success, 1 verification found counterexamples, 2 bad flags.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .algebra import Algebra
from .kernel import KernelReport, ode_residual, verify_kernel_characterization
from .mpoly import DiracConvention
from .operators import (
    dirac_laplacian,
    falling_factorial,
    falling_factorial_sum,
    laplacian_coeff_tables,
)
from .stems import SlicePoly

SEED_ENV_VAR = "SCE_SEED"


class CliError(Exception):
    """Flag-level validation failure; the message names the offending flag."""


@dataclass
class CliConfig:
    command: str
    m: int | None
    k: int | None
    poly: str | None
    convention: DiracConvention
    fmt: str
    seed: int
    trials: int | None
    deg_max: int | None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cliffordian",
        description="Exact slice regular polynomial calculus over R_m",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, poly=False):
        p.add_argument("--m", type=int, help="number of imaginary generators (odd, >= 3)")
        p.add_argument("--k", type=int, help="Laplacian power")
        if poly:
            p.add_argument("--poly", help="slice polynomial, e.g. 'x^5 + (1/2 + 2 e1) x^2 - 3'")
        p.add_argument(
            "--convention",
            choices=["half", "unital"],
            default="half",
            help="overall factor of the Dirac operator (default: half)",
        )
        p.add_argument("--format", choices=["text", "json"], default="text")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--trials", type=int, default=None)
        p.add_argument("--deg-max", type=int, default=None, dest="deg_max")

    common(sub.add_parser("repro-examples", help="print the two worked x^5 operator tables"))
    common(sub.add_parser("apply", help="apply dbar Delta^k to a polynomial"), poly=True)
    common(sub.add_parser("verify", help="run the kernel census"))
    common(sub.add_parser("coeffs", help="print the coefficient table row for k"))
    common(sub.add_parser("identities", help="check the combinatorial identity grids"))
    return parser


def _resolve_seed(flag_value: int | None, env=os.environ) -> int:
    if flag_value is not None:
        return flag_value
    raw = env.get(SEED_ENV_VAR)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise CliError(f"{SEED_ENV_VAR} must be an integer, got {raw!r}")


def _config_from_args(ns: argparse.Namespace) -> CliConfig:
    if ns.m is not None and (ns.m < 3 or ns.m % 2 == 0):
        raise CliError(f"--m must be an odd integer >= 3, got {ns.m}")
    if ns.k is not None and ns.k < 0:
        raise CliError(f"--k must be >= 0, got {ns.k}")
    if ns.trials is not None and ns.trials < 1:
        raise CliError(f"--trials must be >= 1, got {ns.trials}")
    return CliConfig(
        command=ns.command,
        m=ns.m,
        k=ns.k,
        poly=getattr(ns, "poly", None),
        convention=DiracConvention(ns.convention),
        fmt=ns.format,
        seed=_resolve_seed(ns.seed),
        trials=ns.trials,
        deg_max=ns.deg_max,
    )


def _require(config: CliConfig, field: str):
    value = getattr(config, field)
    if value is None:
        flag = {"deg_max": "--deg-max"}.get(field, f"--{field}")
        raise CliError(f"{flag} is required for '{config.command}'")
    return value


def _cmd_repro_examples(config: CliConfig) -> int:
    print("note: tables use the unital convention (factor 1-m); the default half convention scales every value by 1/2")
    for m in (5, 9):
        algebra = Algebra(m)
        poly = SlicePoly.monomial(algebra, 5)
        print(f"m={m}, f = x^5, sce exponent {algebra.sce_exponent}:")
        for k in range(algebra.sce_exponent + 1):
            value = dirac_laplacian(poly, k, DiracConvention.UNITAL)
            print(f"  k={k}: {value}")
    return 0


def _cmd_apply(config: CliConfig) -> int:
    m = _require(config, "m")
    k = config.k if config.k is not None else 0
    text = _require(config, "poly")
    algebra = Algebra(m)
    try:
        poly = SlicePoly.parse(algebra, text)
    except ValueError as exc:
        raise CliError(f"--poly: {exc}")
    value = dirac_laplacian(poly, k, config.convention)
    note = None
    if k >= algebra.sce_exponent:
        note = f"note: k={k} >= (m-1)/2, result is trivially zero via the prefactor"
    if config.fmt == "json":
        print(json.dumps(value.to_json_dict()))
        if note:
            print(note, file=sys.stderr)
    else:
        print(value)
        if note:
            print(note)
    return 0


def _report_exit_code(report: KernelReport) -> int:
    return 0 if report.ok else 1


def _cmd_verify(config: CliConfig) -> int:
    m = _require(config, "m")
    k = _require(config, "k")
    deg_max = config.deg_max if config.deg_max is not None else 2 * k + 4
    trials = config.trials if config.trials is not None else 50
    try:
        report = verify_kernel_characterization(m, k, deg_max, trials, config.seed)
    except ValueError as exc:
        raise CliError(f"--k/--deg-max: {exc}")
    if config.fmt == "json":
        print(json.dumps(report.to_json_dict()))
    else:
        print(
            f"m={report.m} k={report.k} deg_max={report.deg_max} "
            f"trials={report.trials} seed={config.seed}: "
            f"in-kernel {report.in_kernel_low_degree}, "
            f"out-of-kernel {report.out_of_kernel_high_degree}, "
            f"counterexamples {len(report.counterexamples)} "
            f"[{report.elapsed_ms} ms]"
        )
        for poly in report.counterexamples:
            print(f"  counterexample (degree {poly.degree}): {poly}")
    return _report_exit_code(report)


def _cmd_coeffs(config: CliConfig) -> int:
    k = _require(config, "k")
    if k < 1:
        raise CliError(f"--k must be >= 1 for 'coeffs', got {k}")
    table = laplacian_coeff_tables(k)[-1]
    if config.fmt == "json":
        print(json.dumps({"k": k, "entries": [str(e) for e in table.entries]}))
    else:
        print(" ".join(f"a({k},{l})={table.entry(l)}" for l in range(1, k + 1)))
    return 0


def _cmd_identities(config: CliConfig) -> int:
    k_max = config.k if config.k is not None else 10
    h_max = config.deg_max if config.deg_max is not None else 12
    if k_max < 1:
        raise CliError(f"--k must be >= 1 for 'identities', got {k_max}")
    sum_mismatches = []
    residual_mismatches = []
    for k in range(1, k_max + 1):
        for h in range(h_max + 1):
            product = 1
            for l in range(k):
                product *= h - l
            if falling_factorial_sum(k, h) != (-4) ** k * product:
                sum_mismatches.append((k, h))
            coeff, expo = ode_residual(k, h)
            expected = 2**k * falling_factorial(h, k)
            if coeff != expected or expo != 2 * h - 1 or (coeff == 0) != (h < k):
                residual_mismatches.append((k, h))
    ok = not sum_mismatches and not residual_mismatches
    if config.fmt == "json":
        print(
            json.dumps(
                {
                    "k_max": k_max,
                    "h_max": h_max,
                    "sum_identity_mismatches": sum_mismatches,
                    "ode_residual_mismatches": residual_mismatches,
                    "ok": ok,
                }
            )
        )
    else:
        cells = (k_max) * (h_max + 1)
        print(f"falling-factorial sum identity: {cells - len(sum_mismatches)}/{cells} cells match")
        print(f"ode residual zero pattern:      {cells - len(residual_mismatches)}/{cells} cells match")
    return 0 if ok else 1


_COMMANDS = {
    "repro-examples": _cmd_repro_examples,
    "apply": _cmd_apply,
    "verify": _cmd_verify,
    "coeffs": _cmd_coeffs,
    "identities": _cmd_identities,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config = _config_from_args(ns)
        return _COMMANDS[config.command](config)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
