"""Command-line pipeline: decomposition, structure reports, verification.

Subcommands map onto the library modules: ``decompose`` runs the
continued-fraction front end, ``structure`` prints the quotient
descriptor, ``verify-cover`` and ``verify-lift`` run the brute-force
verifiers, ``report`` bundles all of them for one configuration, and
``sweep`` tabulates descriptors over all coprime pairs up to a bound.

All output is JSON, deterministic for a fixed seed: rerunning the same
command gives byte-identical bytes.  Wall-clock timing is therefore
excluded unless requested with --timing.  Exit codes: 0 on success, 1
when a verification fails (the JSON carries the witnesses), 2 on an
invalid configuration.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field

from .covers import verify_cover
from .hj import hj_expand, sigma_from_expansion
from .lift import datum_from_points, verify_lift
from .sigma import OrbitData, SigmaSubgroup, orbit_decomposition
from .structure import describe
from .torus import parse_point

VERIFY_MODES = ("verify-cover", "verify-lift", "report")


@dataclass
class RunConfig:
    """One CLI invocation, validated before dispatch."""

    mode: str
    n: int | None = None
    k: int | None = None
    g_plus_1: int | None = None
    generators: frozenset[int] = field(default_factory=frozenset)
    torsion_level: int = 6
    samples: int = 20
    seed: int = 0
    t_arg: str = "random"
    n_max: int | None = None
    output_path: str | None = None
    include_timing: bool = False
    workers: int = 1

    def validate(self) -> None:
        if self.mode == "sweep":
            if self.n_max is None or self.n_max < 2:
                raise ValueError("sweep needs --n-max >= 2")
            return
        pair_given = self.n is not None or self.k is not None
        explicit_given = self.g_plus_1 is not None
        if pair_given and explicit_given:
            raise ValueError("give either --n/--k or --g-plus-1, not both")
        if not pair_given and not explicit_given:
            raise ValueError("give either --n/--k or --g-plus-1/--generators")
        if pair_given and (self.n is None or self.k is None):
            raise ValueError("--n and --k must be given together")
        if self.samples < 1:
            raise ValueError("--samples must be at least 1")
        if self.torsion_level < 1:
            raise ValueError("--torsion-level must be at least 1")
        if self.workers < 1:
            raise ValueError("--workers must be at least 1")

    def subgroup(self) -> SigmaSubgroup:
        if self.n is not None:
            assert self.k is not None
            return sigma_from_expansion(hj_expand(self.n, self.k))
        assert self.g_plus_1 is not None
        return SigmaSubgroup(g_plus_1=self.g_plus_1, generators=self.generators)

    def echo(self) -> dict:
        out: dict = {"mode": self.mode}
        if self.n is not None:
            out["n"] = self.n
            out["k"] = self.k
        if self.g_plus_1 is not None:
            out["g_plus_1"] = self.g_plus_1
            out["generators"] = sorted(self.generators)
        if self.mode in VERIFY_MODES:
            out["torsion_level"] = self.torsion_level
            out["samples"] = self.samples
            out["seed"] = self.seed
        if self.mode in ("verify-lift", "report"):
            out["t"] = self.t_arg
        if self.mode == "sweep":
            out["n_max"] = self.n_max
        return out


@dataclass
class Report:
    """A verification run: config echo, descriptor, per-verifier check
    blocks, and the conjunction of their pass flags."""

    config: dict
    descriptor: dict
    checks: dict
    passed: bool
    wall_time: float

    def to_dict(self, include_timing: bool = False) -> dict:
        out = {
            "config": self.config,
            "descriptor": self.descriptor,
            "checks": self.checks,
            "pass": self.passed,
        }
        if include_timing:
            out["wall_time"] = self.wall_time
        return out


def decompose_payload(n: int, k: int) -> dict:
    exp = hj_expand(n, k)
    sigma = sigma_from_expansion(exp)
    return {
        "n": n,
        "k": k,
        "g": exp.g,
        "entries": list(exp.entries),
        "sigma_generators": sorted(sigma.generators),
    }


def structure_payload(config: RunConfig, od: OrbitData) -> dict:
    return {
        "config": config.echo(),
        "orbit_data": od.to_dict(),
        "descriptor": describe(od).to_dict(),
    }


def _datum_for(config: RunConfig, od: OrbitData):
    """None means: let the verifier draw a random admissible datum."""
    if config.t_arg == "random":
        return None
    points = [parse_point(chunk) for chunk in config.t_arg.split(";")]
    return datum_from_points(points, od)


def run(config: RunConfig) -> tuple[dict, bool]:
    """Dispatch one validated configuration; returns (payload, passed)."""
    config.validate()
    if config.mode == "sweep":
        return batch_sweep(config.n_max), True
    if config.mode == "decompose":
        return decompose_payload(config.n, config.k), True

    od = orbit_decomposition(config.subgroup())
    if config.mode == "structure":
        return structure_payload(config, od), True

    started = time.monotonic()
    checks: dict = {}
    if config.mode in ("verify-cover", "report"):
        checks["cover"] = verify_cover(
            od,
            torsion_level=config.torsion_level,
            samples=config.samples,
            seed=config.seed,
            workers=config.workers,
        )
    if config.mode in ("verify-lift", "report"):
        checks["lift"] = verify_lift(
            od,
            t=_datum_for(config, od),
            torsion_level=config.torsion_level,
            samples=config.samples,
            seed=config.seed,
            workers=config.workers,
        )
    passed = all(block["pass"] for block in checks.values())
    if config.mode != "report":
        # single-verifier modes emit the verifier's own report shape
        (block,) = checks.values()
        return block, passed
    report = Report(
        config=config.echo(),
        descriptor=describe(od).to_dict(),
        checks=checks,
        passed=passed,
        wall_time=time.monotonic() - started,
    )
    if config.n is not None:
        report.config["decomposition"] = decompose_payload(config.n, config.k)
    return report.to_dict(include_timing=config.include_timing), passed


def coprime_pairs(n_max: int):
    for n in range(2, n_max + 1):
        for k in range(1, n):
            if math.gcd(n, k) == 1:
                yield n, k


def batch_sweep(n_max: int) -> dict:
    """Structure descriptors for every coprime pair up to the bound."""
    rows = []
    for n, k in coprime_pairs(n_max):
        exp = hj_expand(n, k)
        od = orbit_decomposition(sigma_from_expansion(exp))
        row = {"n": n, "k": k, "g": exp.g, "entries": list(exp.entries)}
        row.update(describe(od).to_dict())
        rows.append(row)
    return {"n_max": n_max, "rows": rows}


def _worker_count(requested: int) -> int:
    cap = os.environ.get("ELLIQUOT_THREADS")
    if cap is None:
        return requested
    try:
        limit = int(cap)
    except ValueError as exc:
        raise ValueError(f"ELLIQUOT_THREADS must be an integer, got {cap!r}") from exc
    if limit < 1:
        raise ValueError("ELLIQUOT_THREADS must be at least 1")
    return min(requested, limit)


def _parse_generators(text: str) -> frozenset[int]:
    text = text.strip()
    if not text:
        return frozenset()
    return frozenset(int(chunk) for chunk in text.split(","))


def _add_subgroup_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, help="numerator of the coprime pair")
    p.add_argument("--k", type=int, help="denominator of the coprime pair")
    p.add_argument(
        "--g-plus-1",
        type=int,
        dest="g_plus_1",
        help="number of coordinates when giving the subgroup explicitly",
    )
    p.add_argument(
        "--generators",
        type=_parse_generators,
        default=frozenset(),
        help="comma-separated adjacent-swap indices, e.g. 2,3 (default: none)",
    )


def _add_sampling_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--torsion-level", type=int, default=6, dest="torsion_level")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--workers",
        type=int,
        default=1,
        help="verification threads; capped by ELLIQUOT_THREADS",
    )


def _add_output_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--output", dest="output_path", help="write JSON here instead of stdout")
    p.add_argument(
        "--timing",
        action="store_true",
        dest="include_timing",
        help="include wall_time in the JSON (breaks byte-identical reruns)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="elliquot",
        description="Exact structure and verification reports for quotients "
        "of powers of an elliptic curve by adjacent-swap subgroups.",
    )
    sub = parser.add_subparsers(dest="mode", required=True)

    p = sub.add_parser("decompose", help="continued-fraction expansion of n/k")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    _add_output_options(p)

    p = sub.add_parser("structure", help="quotient descriptor for one configuration")
    _add_subgroup_options(p)
    _add_output_options(p)

    p = sub.add_parser("verify-cover", help="brute-force fiber and deck-orbit checks")
    _add_subgroup_options(p)
    _add_sampling_options(p)
    _add_output_options(p)

    p = sub.add_parser("verify-lift", help="commuting-square checks for translations")
    _add_subgroup_options(p)
    _add_sampling_options(p)
    p.add_argument(
        "--t",
        dest="t_arg",
        default="random",
        help="semicolon-separated points 'u,v;u,v;...' (fixed values first, "
        "then one diagonal value per block), or 'random'",
    )
    _add_output_options(p)

    p = sub.add_parser("report", help="descriptor plus both verifiers, one JSON")
    _add_subgroup_options(p)
    _add_sampling_options(p)
    p.add_argument("--t", dest="t_arg", default="random")
    _add_output_options(p)

    p = sub.add_parser("sweep", help="descriptor table over all coprime pairs")
    p.add_argument("--n-max", type=int, required=True, dest="n_max")
    _add_output_options(p)

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    fields = {
        key: value
        for key, value in vars(args).items()
        if key in RunConfig.__dataclass_fields__ and value is not None
    }
    config = RunConfig(**fields)
    config.workers = _worker_count(config.workers)
    return config


def emit(payload: dict, output_path: str | None) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if output_path is None:
        sys.stdout.write(text)
    else:
        with open(output_path, "w", encoding="utf-8") as handle:
            handle.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
        payload, passed = run(config)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    emit(payload, config.output_path)
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())
