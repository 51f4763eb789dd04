"""Command-line front end: colligation I/O, fuzz campaigns, exploration.

Subcommands:

* ``validate``  check a colligation file; residual table on stdout
* ``eval``      evaluate the transfer function at a point
* ``deriv``     exact mixed partial plus quadrature-oracle deviation
* ``bounds``    all applicable bound reports at one point
* ``catalog``   write a named exact colligation to JSON
* ``fuzz``      seeded campaign over random colligations; JSONL reports
* ``explore``   observational campaigns for the named special functions

Exit codes: 0 clean, 1 assertion/domain violation, 2 usage or parse error.
Campaign output is JSON Lines: a header record, one record per checked
inequality, and a trailing summary record.  Identical configuration and
seed produce byte-identical output.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import itertools
import json
import math
import sys
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bounds import (
    BALL_VARIANTS,
    POLYDISK_VARIANTS,
    PointGeometry,
    ball_kernel_subchecks,
    ball_rhs,
    bound_ball,
    bound_general,
    bound_polydisk,
    knese_report,
    multiplier_gram_psd,
    polydisk_rhs,
    wiener_check,
)
from .colligation import (
    Ball,
    DomainStructure,
    Polydisk,
    catalog,
    colligation_hash,
    load_colligation,
    random_colligation,
    save_colligation,
    to_json_dict,
    validate,
)
from .derivative import (
    MultiIndex,
    Polynomial,
    alpay_kaptanoglu,
    cauchy_partial,
    kaijser_varopoulos,
    koperator,
    partial,
    poly_partial,
)
from .errors import DomainViolationError
from .matrixcore import spectral_norm
from .reports import BoundReport
from .tolerances import BOUNDARY_FLAG_DISTANCE, IDENTITY_TOL, SLACK_TOL
from .transfer import evaluate, identity_residuals, lnorm_bound_check, resolvent_norm_estimates

__all__ = [
    "CampaignConfig",
    "parse_structure",
    "parse_point",
    "parse_alpha",
    "sample_point",
    "multi_indices",
    "run_fuzz",
    "run_explore",
    "main",
]

SCHEMA_VERSION = 1
MAX_CAMPAIGN_ORDER = 8
EXPLORE_NAMES = ("kaijser-varopoulos", "alpay-kaptanoglu")


# --- parsing helpers ----------------------------------------------------------


def parse_structure(spec: str) -> DomainStructure:
    """Parse a structure spec string: ``polydisk:2,1`` or ``ball:m=2,d=3``."""
    kind, _, rest = spec.partition(":")
    kind = kind.strip().lower()
    if kind == "polydisk":
        try:
            dims = tuple(int(p) for p in rest.split(",") if p.strip() != "")
        except ValueError:
            raise ValueError(f"bad polydisk block dims in {spec!r}") from None
        return Polydisk(dims)
    if kind == "ball":
        fields = {}
        for part in rest.split(","):
            key, _, val = part.partition("=")
            fields[key.strip()] = val.strip()
        try:
            return Ball(fiber_dim=int(fields["m"]), copies=int(fields["d"]))
        except (KeyError, ValueError):
            raise ValueError(f"ball spec needs m=<int>,d=<int>, got {spec!r}") from None
    raise ValueError(f"unknown structure kind in {spec!r}; use polydisk:... or ball:...")


def parse_point(text: str) -> tuple[complex, ...]:
    """Comma-separated complex coordinates, e.g. ``0.3,0.4+0.1j``."""
    try:
        return tuple(complex(part.strip()) for part in text.split(","))
    except ValueError:
        raise ValueError(f"cannot parse point {text!r}") from None


def parse_alpha(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part.strip()) for part in text.split(","))
    except ValueError:
        raise ValueError(f"cannot parse multi-index {text!r}") from None


def structure_spec(structure: DomainStructure) -> str:
    if isinstance(structure, Polydisk):
        return "polydisk:" + ",".join(str(b) for b in structure.block_dims)
    return f"ball:m={structure.fiber_dim},d={structure.copies}"


# --- campaign configuration ---------------------------------------------------


@dataclass
class CampaignConfig:
    """Everything a fuzz or explore campaign needs to be reproducible."""

    seed: int = 1
    n_colligations: int = 10
    structure: str = "polydisk:1,1"
    dim_g: int = 1
    max_order: int = 3
    points_per_colligation: int = 5
    sampler: str = "uniform"
    slack_tol: float = SLACK_TOL
    identity_tol: float = IDENTITY_TOL
    out: str | None = None

    def __post_init__(self):
        if self.n_colligations < 1 or self.points_per_colligation < 1:
            raise ValueError("counts must be >= 1")
        if not 1 <= self.max_order <= MAX_CAMPAIGN_ORDER:
            raise ValueError(f"max_order must be in 1..{MAX_CAMPAIGN_ORDER}")
        parse_structure(self.structure)
        if self.sampler not in ("uniform", "uniform-polydisk", "uniform-ball", "boundary-biased"):
            raise ValueError(f"unknown sampler {self.sampler!r}")

    def to_json_dict(self) -> dict:
        # the output path is not campaign semantics; leaving it out keeps
        # equal configurations byte-identical on disk
        out = dataclasses.asdict(self)
        del out["out"]
        return out


def sample_point(structure: DomainStructure, rng: np.random.Generator, sampler: str = "uniform") -> tuple[complex, ...]:
    """Draw one admissible point for ``structure``.

    ``uniform-polydisk`` samples each coordinate uniformly in the disk of
    radius 0.99; ``uniform-ball`` uses a uniform direction with the
    radius correction u^(1/(2d)), capped at 0.99; ``boundary-biased``
    rescales a uniform draw to domain norm 1 - 10^(-u), u uniform in
    [1, 6].
    """
    d = structure.d
    if sampler == "uniform":
        sampler = "uniform-polydisk" if isinstance(structure, Polydisk) else "uniform-ball"
    if sampler == "uniform-polydisk":
        radii = 0.99 * np.sqrt(rng.random(d))
        angles = 2.0 * np.pi * rng.random(d)
        return tuple(radii * np.exp(1j * angles))
    if sampler == "uniform-ball":
        v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        v /= np.linalg.norm(v)
        radius = 0.99 * rng.random() ** (1.0 / (2 * d))
        return tuple(radius * v)
    if sampler == "boundary-biased":
        base = sample_point(structure, rng, "uniform")
        target = 1.0 - 10.0 ** (-rng.uniform(1.0, 6.0))
        geom = PointGeometry.from_point(base)
        norm = geom.sup_norm if isinstance(structure, Polydisk) else geom.eucl_norm
        scale = target / norm if norm > 0 else 0.0
        return tuple(v * scale for v in base)
    raise ValueError(f"unknown sampler {sampler!r}")


def multi_indices(d: int, max_order: int) -> list[tuple[int, ...]]:
    """All multi-indices over d axes with 1 <= order <= max_order, sorted."""
    out = [
        alpha
        for alpha in itertools.product(range(max_order + 1), repeat=d)
        if 1 <= sum(alpha) <= max_order
    ]
    return sorted(out, key=lambda a: (sum(a), a))


# --- JSONL records ------------------------------------------------------------


def _record(report: BoundReport, seed: int, subject_hash: str, extra_flags: Sequence[str] = ()) -> dict:
    flags = sorted(set(report.flags) | set(extra_flags))
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "report",
        "seed": seed,
        "theorem_tag": report.theorem_tag,
        "colligation_hash": subject_hash,
        "z": [[v.real, v.imag] for v in report.z],
        "alpha": list(report.alpha) if report.alpha is not None else None,
        "lhs": report.lhs,
        "rhs": report.rhs,
        "slack": report.slack,
        "ratio": report.ratio,
        "flags": flags,
    }


def _dump_lines(records, stream) -> None:
    for rec in records:
        stream.write(json.dumps(rec, sort_keys=True))
        stream.write("\n")


def polynomial_hash(p: Polynomial) -> str:
    blob = json.dumps(
        {str(k): [v.real, v.imag] for k, v in sorted(p.coeffs.items())},
        sort_keys=True,
    )
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:16]


def summarize(records: list[dict], slack_tol: float) -> dict:
    """Per-theorem slack and ratio statistics over a record stream.

    Flagged records (near-boundary, observational, ill-conditioned) are
    counted but never contribute violations.
    """
    theorems: dict[str, dict] = {}
    violations = 0
    flagged = 0
    for rec in records:
        if rec.get("kind") != "report":
            continue
        stats = theorems.setdefault(rec["theorem_tag"], {
            "count": 0, "min_slack": math.inf,
            "min_ratio": math.inf, "max_ratio": -math.inf, "mean_ratio": 0.0,
        })
        stats["count"] += 1
        stats["min_slack"] = min(stats["min_slack"], rec["slack"])
        stats["min_ratio"] = min(stats["min_ratio"], rec["ratio"])
        stats["max_ratio"] = max(stats["max_ratio"], rec["ratio"])
        stats["mean_ratio"] += rec["ratio"]
        if rec["flags"]:
            flagged += 1
        elif rec["slack"] < -slack_tol:
            violations += 1
    for stats in theorems.values():
        stats["mean_ratio"] /= stats["count"]
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "summary",
        "reports": sum(s["count"] for s in theorems.values()),
        "violations": violations,
        "flagged": flagged,
        "slack_tol": slack_tol,
        "theorems": {tag: theorems[tag] for tag in sorted(theorems)},
    }


# --- fuzz campaign ------------------------------------------------------------


def _point_flags(structure: DomainStructure, z: Sequence[complex], sampler: str = "uniform") -> tuple[str, ...]:
    # Boundary-biased draws are exploratory by construction; asserting on
    # them would turn resolvent conditioning into false violations.
    flags = ("boundary-biased",) if sampler == "boundary-biased" else ()
    geom = PointGeometry.from_point(z)
    norm = geom.sup_norm if isinstance(structure, Polydisk) else geom.eucl_norm
    if 1.0 - norm < BOUNDARY_FLAG_DISTANCE:
        flags += ("near-boundary",)
    return flags


def fuzz_records(config: CampaignConfig):
    """Yield the header and every report record of a fuzz campaign."""
    structure = parse_structure(config.structure)
    rng = np.random.default_rng(config.seed)
    header = {
        "schema_version": SCHEMA_VERSION,
        "kind": "header",
        "campaign": "fuzz",
        "seed": config.seed,
        "config": config.to_json_dict(),
    }
    yield header
    alphas = multi_indices(structure.d, config.max_order)
    wiener_alphas = [a for a in alphas if sum(a) <= min(config.max_order, 4)]
    is_polydisk = isinstance(structure, Polydisk)
    scalar = is_polydisk and config.dim_g == 1
    for _ in range(config.n_colligations):
        col_seed = int(rng.integers(0, 2**62))
        col = random_colligation(structure, config.dim_g, col_seed)
        chash = colligation_hash(col)
        for rep in wiener_check(col, wiener_alphas):
            yield _record(rep, config.seed, chash)
        for _ in range(config.points_per_colligation):
            z = sample_point(structure, rng, config.sampler)
            w = sample_point(structure, rng, config.sampler)
            flags = _point_flags(structure, z, config.sampler) + _point_flags(
                structure, w, config.sampler
            )
            r1, r2 = identity_residuals(col, w, z)
            for tag, resid in (("identity.kernel_input", r1), ("identity.kernel_output", r2)):
                yield _record(
                    BoundReport(theorem_tag=tag, z=z, alpha=None, lhs=resid, rhs=config.identity_tol),
                    config.seed, chash, flags,
                )
            flags = _point_flags(structure, z, config.sampler)
            for rep in resolvent_norm_estimates(col, z):
                yield _record(rep, config.seed, chash, flags)
            ctx = evaluate(col, z)
            yield _record(lnorm_bound_check(ctx), config.seed, chash, flags)
            if scalar:
                yield _record(knese_report(col, z), config.seed, chash, flags)
            if not is_polydisk:
                for rep in ball_kernel_subchecks(col, z):
                    yield _record(rep, config.seed, chash, flags)
            lnorm = spectral_norm(ctx.lmat)
            for alpha in alphas:
                mi = MultiIndex(alpha)
                yield _record(bound_general(col, z, alpha=mi), config.seed, chash, flags)
                if mi.order >= 2:
                    kn = spectral_norm(koperator(ctx, structure, mi))
                    if is_polydisk:
                        krhs = lnorm ** (mi.order - 1)
                        ktag = "koperator.polydisk"
                    else:
                        krhs = structure.d ** ((mi.order - 1) / 2.0) * lnorm ** (mi.order - 1)
                        ktag = "koperator.ball"
                    yield _record(
                        BoundReport(theorem_tag=ktag, z=ctx.z, alpha=mi.counts, lhs=kn, rhs=krhs),
                        config.seed, chash, flags,
                    )
                if is_polydisk:
                    variants = ["factorial", "weak"]
                    if mi.order == 1:
                        variants.append("first")
                    else:
                        variants.append("mixed")
                        if structure.d == 2:
                            variants.append("two_var")
                    for variant in variants:
                        yield _record(bound_polydisk(col, z, mi, variant), config.seed, chash, flags)
                else:
                    for variant in BALL_VARIANTS:
                        yield _record(bound_ball(col, z, mi, variant), config.seed, chash, flags)


def run_fuzz(config: CampaignConfig) -> tuple[list[dict], dict]:
    """Run a fuzz campaign; returns (records incl. header and summary, summary)."""
    records = list(fuzz_records(config))
    summary = summarize(records, config.slack_tol)
    summary["seed"] = config.seed
    records.append(summary)
    return records, summary


# --- exploration campaigns ----------------------------------------------------


def run_explore(name: str, config: CampaignConfig, m: int = 1) -> tuple[list[dict], dict]:
    """Observational campaign for a named special function; asserts nothing.

    Every record carries the ``observational`` flag, so the summary counts
    no violations regardless of sign.
    """
    if name == "kaijser-varopoulos":
        poly = kaijser_varopoulos()
        structure: DomainStructure = Polydisk((1, 1, 1))
        variants = [("polydisk", v) for v in ("factorial", "weak", "first", "mixed")]
    elif name == "alpay-kaptanoglu":
        poly = alpay_kaptanoglu(m)
        structure = Ball(1, 2)
        variants = [("ball", v) for v in BALL_VARIANTS]
    else:
        raise ValueError(f"unknown exploration target {name!r}; known: {EXPLORE_NAMES}")
    phash = polynomial_hash(poly)
    rng = np.random.default_rng(config.seed)
    records = [{
        "schema_version": SCHEMA_VERSION,
        "kind": "header",
        "campaign": "explore",
        "target": name,
        "seed": config.seed,
        "config": {**config.to_json_dict(), "m": m},
    }]
    alphas = multi_indices(structure.d, config.max_order)
    marks = ("observational",)
    for _ in range(config.points_per_colligation * config.n_colligations):
        z = sample_point(structure, rng, config.sampler)
        flags = marks + _point_flags(structure, z, config.sampler)
        geom = PointGeometry.from_point(z)
        defect = 1.0 - abs(poly(z)) ** 2
        for alpha in alphas:
            mi = MultiIndex(alpha)
            lhs = abs(poly_partial(poly, z, mi))
            for kind, variant in variants:
                if kind == "polydisk":
                    if variant == "first" and mi.order != 1:
                        continue
                    if variant == "mixed" and mi.order < 2:
                        continue
                    rhs = polydisk_rhs(defect, geom, mi, variant)
                    tag = f"polydisk.{variant}"
                else:
                    rhs = ball_rhs(defect, geom, mi, variant, structure.d)
                    tag = f"ball.{variant}"
                rep = BoundReport(theorem_tag=tag, z=geom.z, alpha=mi.counts, lhs=lhs, rhs=rhs)
                records.append(_record(rep, config.seed, phash, flags))
    if name == "alpay-kaptanoglu":
        for _ in range(config.n_colligations):
            pts = [sample_point(structure, rng, config.sampler) for _ in range(8)]
            min_eig = multiplier_gram_psd(poly, pts)
            rep = BoundReport(
                theorem_tag="gram.arveson_min_eig",
                z=pts[0], alpha=None, lhs=min_eig, rhs=0.0,
            )
            records.append(_record(rep, config.seed, phash, marks))
    summary = summarize(records, config.slack_tol)
    summary["seed"] = config.seed
    summary["target"] = name
    records.append(summary)
    return records, summary


# --- CLI ----------------------------------------------------------------------


def _print_table(reports: Sequence[BoundReport], stream=None) -> None:
    stream = stream or sys.stdout
    for rep in reports:
        stream.write(str(rep) + "\n")


def _load_or_fail(path: str):
    """Load and decode a colligation file; (colligation, None) or (None, exit code)."""
    try:
        col = load_colligation(path)
    except FileNotFoundError:
        print(f"error: no such file: {path}", file=sys.stderr)
        return None, 2
    except json.JSONDecodeError as exc:
        print(f"error: {path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}",
              file=sys.stderr)
        return None, 2
    except (ValueError, TypeError) as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        return None, 2
    return col, None


def cmd_validate(args) -> int:
    col, code = _load_or_fail(args.file)
    if col is None:
        return code
    report = validate(col, tol=args.tol)
    for line in report.lines():
        print(line)
    return 0 if report.passed else 1


def cmd_eval(args) -> int:
    col, code = _load_or_fail(args.file)
    if col is None:
        return code
    z = parse_point(args.z)
    try:
        ctx = evaluate(col, z)
    except DomainViolationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"z         = {list(ctx.z)}")
    print(f"phi(z)    = {np.array2string(ctx.phi, precision=12)}")
    print(f"||phi||   = {spectral_norm(ctx.phi):.12f}")
    print(f"||Z(z)||  = {ctx.znorm:.12f}")
    print(f"cond(I-AZ)= {ctx.cond:.3e}")
    if ctx.flags:
        print(f"flags     = {list(ctx.flags)}")
    return 0


def cmd_deriv(args) -> int:
    col, code = _load_or_fail(args.file)
    if col is None:
        return code
    z = parse_point(args.z)
    alpha = parse_alpha(args.alpha)
    try:
        exact = partial(col, z, alpha)
    except DomainViolationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"partial d^{sum(alpha)} phi / dz^{list(alpha)} at {list(z)}:")
    print(np.array2string(exact, precision=12))
    if sum(alpha) > 0:
        oracle = cauchy_partial(col, z, alpha, samples=args.samples)
        deviation = spectral_norm(exact - np.atleast_2d(oracle))
        print(f"oracle deviation = {deviation:.3e}")
    return 0


def cmd_bounds(args) -> int:
    col, code = _load_or_fail(args.file)
    if col is None:
        return code
    z = parse_point(args.z)
    try:
        reports = list(resolvent_norm_estimates(col, z))
        ctx = evaluate(col, z)
        reports.append(lnorm_bound_check(ctx))
        if args.alpha is not None:
            alpha = MultiIndex(parse_alpha(args.alpha))
            reports.append(bound_general(col, z, alpha=alpha))
            if isinstance(col.structure, Polydisk):
                for variant in POLYDISK_VARIANTS:
                    try:
                        reports.append(bound_polydisk(col, z, alpha, variant))
                    except ValueError:
                        pass  # variant/order mismatch
            else:
                for variant in BALL_VARIANTS:
                    reports.append(bound_ball(col, z, alpha, variant))
        if isinstance(col.structure, Polydisk) and col.dim_f == col.dim_g == 1:
            reports.append(knese_report(col, z))
    except DomainViolationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _print_table(reports)
    worst = min((r.slack for r in reports if not r.flags), default=0.0)
    print(f"min slack = {worst:+.3e}")
    return 0 if worst >= -args.tol else 1


def cmd_catalog(args) -> int:
    params: dict = {}
    if args.name == "blaschke":
        if args.a is None:
            print("error: blaschke needs --a", file=sys.stderr)
            return 2
        params["a"] = complex(args.a)
    elif args.name == "monomial":
        if args.alpha is None:
            print("error: monomial needs --alpha", file=sys.stderr)
            return 2
        params["alpha"] = parse_alpha(args.alpha)
    elif args.name == "symmetric-extremal":
        if args.d is None:
            print("error: symmetric-extremal needs --d", file=sys.stderr)
            return 2
        params["d"] = args.d
        params["seed"] = args.seed
    else:
        print(f"error: unknown catalog entry {args.name!r}", file=sys.stderr)
        return 2
    try:
        col = catalog(args.name, **params)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        save_colligation(col, args.out)
        print(f"wrote {args.out}")
    else:
        print(json.dumps(to_json_dict(col), indent=2, sort_keys=True))
    return 0


def _config_from_args(args) -> CampaignConfig:
    base: dict = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            base = json.load(fh)
    overrides = {
        "seed": args.seed,
        "n_colligations": args.n,
        "structure": args.structure,
        "dim_g": args.dim_g,
        "max_order": args.max_order,
        "points_per_colligation": args.points,
        "sampler": args.sampler,
        "slack_tol": args.tol,
        "out": args.out,
    }
    for key, value in overrides.items():
        if value is not None:
            base[key] = value
    return CampaignConfig(**base)


def _write_stream(records, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            _dump_lines(records, fh)
    else:
        _dump_lines(records, sys.stdout)


def cmd_fuzz(args) -> int:
    try:
        config = _config_from_args(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    records, summary = run_fuzz(config)
    _write_stream(records, config.out)
    print(
        f"fuzz: {summary['reports']} reports, {summary['violations']} violations, "
        f"{summary['flagged']} flagged (seed {config.seed})",
        file=sys.stderr,
    )
    return 0 if summary["violations"] == 0 else 1


def cmd_explore(args) -> int:
    if args.name not in EXPLORE_NAMES:
        print(f"error: unknown exploration target {args.name!r}; known: {EXPLORE_NAMES}",
              file=sys.stderr)
        return 2
    try:
        config = _config_from_args(args)
        records, summary = run_explore(args.name, config, m=args.m)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _write_stream(records, config.out)
    print(
        f"explore {args.name}: {summary['reports']} observational reports (seed {config.seed})",
        file=sys.stderr,
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aglerlab",
        description="Numerical laboratory for unitary colligations and their transfer functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a colligation JSON file")
    p.add_argument("file")
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("eval", help="evaluate the transfer function at a point")
    p.add_argument("file")
    p.add_argument("--z", required=True, help="comma-separated complex coordinates")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("deriv", help="exact mixed partial plus oracle deviation")
    p.add_argument("file")
    p.add_argument("--z", required=True)
    p.add_argument("--alpha", required=True, help="comma-separated multi-index")
    p.add_argument("--samples", type=int, default=64)
    p.set_defaults(func=cmd_deriv)

    p = sub.add_parser("bounds", help="bound reports at one point")
    p.add_argument("file")
    p.add_argument("--z", required=True)
    p.add_argument("--alpha", default=None)
    p.add_argument("--tol", type=float, default=SLACK_TOL)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("catalog", help="write a named exact colligation")
    p.add_argument("name", choices=["blaschke", "monomial", "symmetric-extremal"])
    p.add_argument("--a", default=None, help="Blaschke parameter (complex, |a| < 1)")
    p.add_argument("--alpha", default=None, help="monomial multi-index")
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_catalog)

    for name, helptext in (
        ("fuzz", "seeded campaign over random colligations"),
        ("explore", "observational campaign for a named special function"),
    ):
        p = sub.add_parser(name, help=helptext)
        if name == "explore":
            p.add_argument("name", help=f"one of {EXPLORE_NAMES}")
            p.add_argument("--m", type=int, default=1, help="series truncation order")
        p.add_argument("--config", default=None, help="JSON file with campaign fields")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--n", type=int, default=None, help="number of colligations")
        p.add_argument("--points", type=int, default=None, help="points per colligation")
        p.add_argument("--structure", default=None, help='e.g. "polydisk:2,1" or "ball:m=2,d=3"')
        p.add_argument("--dim-g", dest="dim_g", type=int, default=None)
        p.add_argument("--max-order", dest="max_order", type=int, default=None)
        p.add_argument("--sampler", default=None)
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--out", default=None)
        p.set_defaults(func=cmd_fuzz if name == "fuzz" else cmd_explore)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
