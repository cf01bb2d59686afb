"""Command-line front end: ``countstable <command> [flags]``.

Commands: pmf, sample, verify, moments, apgf.  Exactly one parametrization
group per invocation: (--alpha --delta --gamma), (--lambda --theta
--alpha), or (--mu --sigma2).  CSV is the default output format; pass
``--format json`` for JSON.  Exit codes: 0 success, 1 invalid parameters,
2 usage error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from .family import (
    CompoundParams,
    DegenerateError,
    HermiteParams,
    InvalidParametersError,
    StableParams,
    apgf_eval,
    compound_to_stable,
    hermite_to_stable,
    stable_dispersion,
    stable_mean,
    stable_to_compound,
    validate_stable,
)
from .pmf import hermite_sample, panjer_pmf, panjer_pmf_auto, point_mass, stable_sample
from .stability import verify_pmf_level

__all__ = ["CliConfig", "UsageError", "parse_args", "run", "main"]

DEFAULT_SEED = 12345
DEFAULT_COUNT = 10
DEFAULT_N_LIST = (2, 3, 4)
DEFAULT_TOL = 1e-8

# t grid for the apgf command: 0, 0.05, ..., 2.0
_APGF_STEPS = 40


class UsageError(Exception):
    """Command line could not be interpreted (exit code 2)."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # raise instead of sys.exit so callers decide
        raise UsageError(message)


@dataclass(frozen=True)
class CliConfig:
    """Validated invocation: command, one parametrization group, and options."""

    command: str
    parametrization: str  # stable | compound | hermite
    alpha: float | None = None
    delta: float | None = None
    gamma: float | None = None
    lam: float | None = None
    theta: float | None = None
    mu: float | None = None
    sigma2: float | None = None
    max_k: int | None = None
    n_list: tuple[int, ...] = DEFAULT_N_LIST
    seed: int = DEFAULT_SEED
    count: int = DEFAULT_COUNT
    format: str = "csv"
    tol: float = DEFAULT_TOL


def _build_parser() -> _Parser:
    params = argparse.ArgumentParser(add_help=False)
    group = params.add_argument_group("parametrization (choose one group)")
    group.add_argument("--alpha", type=float, help="stability index in (0, 2]")
    group.add_argument("--delta", type=float, help="linear APGF coefficient")
    group.add_argument("--gamma", type=float, help="power/log APGF coefficient")
    group.add_argument("--lambda", dest="lam", type=float, help="compound Poisson rate")
    group.add_argument("--theta", type=float, help="first-trial success probability")
    group.add_argument("--mu", type=float, help="Hermite mean")
    group.add_argument("--sigma2", type=float, help="Hermite dispersion")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("csv", "json"), default="csv", help="output format"
    )

    parser = _Parser(prog="countstable", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_pmf = sub.add_parser("pmf", parents=[params, common], help="PMF table")
    p_pmf.add_argument("--max-k", type=int, default=None, help="truncation index")

    p_sample = sub.add_parser("sample", parents=[params, common], help="draw variates")
    p_sample.add_argument("--count", type=int, default=DEFAULT_COUNT)
    p_sample.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p_verify = sub.add_parser(
        "verify", parents=[params, common], help="check the stability identity"
    )
    p_verify.add_argument(
        "--n", default="2,3,4", help="comma-separated copy counts, e.g. 2,4"
    )
    p_verify.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p_verify.add_argument("--max-k", type=int, default=None)

    sub.add_parser("moments", parents=[params, common], help="mean and dispersion")
    sub.add_parser("apgf", parents=[params, common], help="APGF table on [0, 2]")
    return parser


def _detect_group(ns: argparse.Namespace) -> str:
    hermite = [f for f in ("mu", "sigma2") if getattr(ns, f) is not None]
    compound = [f for f in ("lam", "theta") if getattr(ns, f) is not None]
    stable = [f for f in ("delta", "gamma") if getattr(ns, f) is not None]
    has_alpha = ns.alpha is not None
    if hermite:
        others = compound + stable + (["alpha"] if has_alpha else [])
        if others:
            raise UsageError(
                "conflicting parametrizations: --mu/--sigma2 cannot be combined "
                "with --" + "/--".join(f.replace("lam", "lambda") for f in others)
            )
        if len(hermite) != 2:
            raise UsageError("the Hermite parametrization needs both --mu and --sigma2")
        return "hermite"
    if compound and stable:
        raise UsageError(
            "conflicting parametrizations: --lambda/--theta cannot be combined "
            "with --delta/--gamma"
        )
    if compound:
        if len(compound) != 2 or not has_alpha:
            raise UsageError(
                "the compound parametrization needs --lambda, --theta and --alpha"
            )
        return "compound"
    if stable:
        if len(stable) != 2 or not has_alpha:
            raise UsageError(
                "the stable parametrization needs --alpha, --delta and --gamma"
            )
        return "stable"
    raise UsageError(
        "no parametrization given: use --alpha/--delta/--gamma, "
        "--lambda/--theta/--alpha, or --mu/--sigma2"
    )


def _parse_n_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise UsageError(f"--n expects a comma-separated list of integers: {exc}")
    if not values or any(v < 1 for v in values):
        raise UsageError("--n entries must be positive integers")
    return values


def parse_args(argv: list[str]) -> CliConfig:
    """Parse ``argv`` into a :class:`CliConfig`; raises :class:`UsageError`."""
    ns = _build_parser().parse_args(argv)
    parametrization = _detect_group(ns)
    max_k = getattr(ns, "max_k", None)
    if max_k is not None and max_k < 0:
        raise UsageError("--max-k must be >= 0")
    count = getattr(ns, "count", DEFAULT_COUNT)
    if count < 0:
        raise UsageError("--count must be >= 0")
    tol = getattr(ns, "tol", DEFAULT_TOL)
    if tol <= 0.0:
        raise UsageError("--tol must be > 0")
    n_list = (
        _parse_n_list(ns.n) if getattr(ns, "n", None) is not None else DEFAULT_N_LIST
    )
    return CliConfig(
        command=ns.command,
        parametrization=parametrization,
        alpha=ns.alpha,
        delta=ns.delta,
        gamma=ns.gamma,
        lam=ns.lam,
        theta=ns.theta,
        mu=ns.mu,
        sigma2=ns.sigma2,
        max_k=max_k,
        n_list=n_list,
        seed=getattr(ns, "seed", DEFAULT_SEED),
        count=count,
        format=ns.format,
        tol=tol,
    )


def _canonical_stable(config: CliConfig) -> StableParams:
    if config.parametrization == "hermite":
        return hermite_to_stable(HermiteParams(config.mu, config.sigma2))
    if config.parametrization == "compound":
        return compound_to_stable(
            CompoundParams(config.lam, config.theta, config.alpha)
        )
    p = StableParams(config.alpha, config.delta, config.gamma)
    violations = validate_stable(p)
    if violations:
        raise InvalidParametersError("; ".join(violations))
    return p


def _fmt(value: float) -> str:
    return repr(float(value))


def _json_number(value: float):
    return value if math.isfinite(value) else "inf"


def _cmd_pmf(config: CliConfig, p: StableParams, out) -> int:
    try:
        c = stable_to_compound(p)
        dist = (
            panjer_pmf(c, config.max_k)
            if config.max_k is not None
            else panjer_pmf_auto(c)
        )
    except DegenerateError:
        dist = point_mass(0)
    if config.format == "json":
        out.write(json.dumps(dist.to_json_dict()) + "\n")
    else:
        out.write(dist.to_csv_text())
    return 0


def _cmd_sample(config: CliConfig, p: StableParams, out) -> int:
    rng = np.random.default_rng(config.seed)
    if config.parametrization == "hermite":
        draws = [int(v) for v in hermite_sample(HermiteParams(config.mu, config.sigma2), rng, config.count)]
    elif p.delta == 0.0 and p.gamma == 0.0:
        draws = [0] * config.count
    else:
        draws = stable_sample(stable_to_compound(p), rng, config.count)
    if config.format == "json":
        out.write(json.dumps({"samples": draws}) + "\n")
    else:
        out.write("".join(f"{v}\n" for v in draws))
    return 0


def _cmd_moments(config: CliConfig, p: StableParams, out) -> int:
    mean = stable_mean(p)
    disp = stable_dispersion(p)
    if config.format == "json":
        out.write(
            json.dumps({"mean": _json_number(mean), "dispersion": _json_number(disp)})
            + "\n"
        )
    else:
        out.write(f"mean,{_fmt(mean)}\n")
        out.write(f"dispersion,{_fmt(disp)}\n")
    return 0


def _cmd_apgf(config: CliConfig, p: StableParams, out) -> int:
    ts = [2.0 * i / _APGF_STEPS for i in range(_APGF_STEPS + 1)]
    values = [apgf_eval(p, t) for t in ts]
    if config.format == "json":
        out.write(json.dumps({"t": ts, "psi": values}) + "\n")
    else:
        out.write("t,psi\n")
        for t, v in zip(ts, values):
            out.write(f"{_fmt(t)},{_fmt(v)}\n")
    return 0


def _cmd_verify(config: CliConfig, p: StableParams, out) -> int:
    reports = [
        verify_pmf_level(p, n, max_k=config.max_k, tol=config.tol)
        for n in config.n_list
    ]
    if config.format == "json":
        out.write(json.dumps([r.to_json_dict() for r in reports]) + "\n")
    else:
        fields = (
            "n,a_n,b_n,param_residual,diff_half,tail_lhs,tail_rhs,tv,verdict,form_used"
        )
        out.write(fields + "\n")
        for r in reports:
            out.write(
                f"{r.n},{_fmt(r.a_n)},{_fmt(r.b_n)},{_fmt(r.param_residual)},"
                f"{_fmt(r.diff_half)},{_fmt(r.tail_lhs)},{_fmt(r.tail_rhs)},"
                f"{_fmt(r.tv)},{r.verdict},{r.form_used}\n"
            )
    return 0 if all(r.verdict == "pass" for r in reports) else 3


_COMMANDS = {
    "pmf": _cmd_pmf,
    "sample": _cmd_sample,
    "moments": _cmd_moments,
    "apgf": _cmd_apgf,
    "verify": _cmd_verify,
}


def run(config: CliConfig, out=None, err=None) -> int:
    """Execute a parsed invocation; returns the process exit code."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        p = _canonical_stable(config)
        return _COMMANDS[config.command](config, p, out)
    except (InvalidParametersError, ValueError) as exc:
        err.write(f"countstable: invalid parameters: {exc}\n")
        return 1


def main(argv: list[str] | None = None) -> int:
    try:
        config = parse_args(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        sys.stderr.write(f"countstable: usage error: {exc}\n")
        return 2
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
