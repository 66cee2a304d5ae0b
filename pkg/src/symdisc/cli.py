"""Command-line front-end.

Subcommands print JSON (scan summaries may also be CSV).  Exit codes:
``member`` returns 0 for Interior, 1 otherwise; ``scan`` returns 0 when
every asserted property holds, 1 otherwise; every subcommand returns 2
for malformed input or a numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from . import scans
from ._parallel import default_threads
from .bergman import kernel, kernel_sym
from .errors import SymdiscError
from .geometry import Region, SampleRegion, classify, sample, sample_records
from .maps import BlaschkeProduct, DiscPolynomial, lift_apply
from .serialize import dumps, parse_matrix, parse_vector
from .spectral import constant_spectrum_path, in_spectral_ball, path_eval
from .sympoly import DEFAULT_MARGIN, symmetrize

SCANS = ("luqikeng", "properness", "oracle-equivalence", "transformation",
         "descent", "spectrum-action", "max-modulus", "roundtrip", "formula",
         "jacobian", "hyperconvexity", "path")


class ConfigError(ValueError):
    pass


@dataclass
class ScanConfig:
    command: str
    n: int = 2
    count: int = 1000
    seed: int = 0
    margin: float = DEFAULT_MARGIN
    epsilon_grid: list = field(default_factory=lambda: [1e-1, 1e-2, 1e-3, 1e-4])
    output: str | None = None
    format: str = "json"
    threads: int = 0
    blaschke: str | None = None

    def validate(self) -> "ScanConfig":
        if self.command not in SCANS:
            raise ConfigError(f"unknown scan {self.command!r}")
        if not isinstance(self.count, int) or self.count < 1:
            raise ConfigError("count must be an integer >= 1")
        if not isinstance(self.n, int) or not 1 <= self.n <= 8:
            raise ConfigError("n must be an integer in [1, 8]")
        if not 0.0 <= float(self.margin) <= 0.1:
            raise ConfigError("margin must lie in [0, 0.1]")
        if self.format not in ("json", "csv"):
            raise ConfigError("format must be json or csv")
        if not self.epsilon_grid or any(not 0 < float(e) < 1 for e in self.epsilon_grid):
            raise ConfigError("epsilon_grid entries must lie in (0, 1)")
        if self.command == "luqikeng" and self.n != 2:
            raise ConfigError("the Lu Qi-Keng scan is defined for n = 2")
        if self.command == "properness" and not self.blaschke:
            raise ConfigError("properness needs --blaschke")
        return self

    def echo(self) -> dict:
        d = asdict(self)
        d.pop("output")
        d.pop("threads")
        return d


def _load_json(path):
    with open(path) as fh:
        return json.load(fh)


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _csv_summary(report: dict) -> str:
    flat = {}
    for k, v in report.items():
        if isinstance(v, (str, int, float, bool)) or v is None:
            flat[k] = v
        elif isinstance(v, (np.floating, np.integer, np.bool_)):
            flat[k] = v.item()
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(flat))
    writer.writerow([repr(v) if isinstance(v, float) else v for v in flat.values()])
    return buf.getvalue().rstrip("\n")


def _read_point(arg, n):
    z = parse_vector(arg)
    if n is not None and z.size != n:
        raise ValueError(f"expected {n} coordinates, got {z.size}")
    return z


def cmd_member(args) -> int:
    if args.matrix:
        verdict = in_spectral_ball(parse_matrix(_load_json(args.matrix)), args.margin)
    elif args.z is not None:
        verdict = classify(_read_point(args.z, args.n), args.margin)
    else:
        raise ValueError("need --z or --matrix")
    _emit(dumps(verdict.as_dict()), args.output)
    if verdict.region is Region.INDETERMINATE:
        return 2
    return 0 if verdict.region is Region.INTERIOR else 1


def cmd_kernel(args) -> int:
    if args.z is not None and args.w is not None:
        z, w = _read_point(args.z, args.n), _read_point(args.w, args.n)
    elif args.lam is not None and args.mu is not None:
        lam, mu = _read_point(args.lam, args.n), _read_point(args.mu, args.n)
        z, w = None, None
    else:
        raise ValueError("need --z/--w or --lambda/--mu")
    points = (z, w) if z is not None else (symmetrize(lam), symmetrize(mu))
    for p in points:
        region = classify(p).region
        if region is not Region.INTERIOR:
            raise ValueError(f"kernel arguments must be interior points, got {region.value}")
    value = kernel_sym(z, w) if z is not None else kernel(lam, mu)
    _emit(dumps(value.as_dict()), args.output)
    return 0


def _parse_map(args):
    if args.map_file:
        desc = _load_json(args.map_file)
        if desc.get("type") == "polynomial":
            return DiscPolynomial(tuple(parse_vector(desc["coeffs"])))
        return BlaschkeProduct.from_dict(desc)
    name = args.psi
    if name == "identity":
        return BlaschkeProduct((0j,), 1.0)
    if name == "square":
        return BlaschkeProduct((0j, 0j), 1.0)
    raise ValueError(f"unknown map {name!r}")


def cmd_map(args) -> int:
    psi = _parse_map(args)
    z = _read_point(args.z, args.n)
    _emit(dumps(lift_apply(psi, z)), args.output)
    return 0


def cmd_path(args) -> int:
    W = parse_matrix(_load_json(args.matrix))
    P = constant_spectrum_path(W)
    _emit(dumps(path_eval(P, complex(args.t))), args.output)
    return 0


def cmd_sample(args) -> int:
    seed = _seed(args.seed)
    pts = sample(args.region, args.n, args.count, seed, args.epsilon)
    lines = [dumps(r) for r in sample_records(args.region, args.n, pts)]
    _emit("\n".join(lines), args.output)
    return 0


def _seed(seed):
    env = os.environ.get("SYMDISC_SEED")
    if env is not None and env != "":
        try:
            return int(env)
        except ValueError as exc:
            raise ConfigError(f"SYMDISC_SEED must be an integer, got {env!r}") from exc
    return seed


def build_config(args) -> ScanConfig:
    values = {}
    if args.config:
        try:
            values.update(_load_json(args.config))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config: {exc}") from exc
    for key in ("n", "count", "seed", "margin", "epsilon_grid", "output",
                "format", "threads", "blaschke"):
        v = getattr(args, key)
        if v is not None:
            values[key] = v
    values["command"] = args.scan
    unknown = set(values) - set(ScanConfig.__dataclass_fields__)
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    if args.scan == "luqikeng":
        values.setdefault("n", 2)
    cfg = ScanConfig(**values)
    cfg.seed = _seed(cfg.seed)
    return cfg.validate()


def run_scan(cfg: ScanConfig) -> dict:
    threads = cfg.threads or default_threads()
    n, count, seed = cfg.n, cfg.count, cfg.seed
    c = cfg.command
    if c == "luqikeng":
        rep = scans.luqikeng(count, seed, threads)
    elif c == "properness":
        B = BlaschkeProduct.from_dict(_load_json(cfg.blaschke))
        if B.degree < 1:
            raise ConfigError("properness needs a Blaschke product of degree >= 1")
        rep = scans.properness(B, n, cfg.epsilon_grid, count, seed)
    elif c == "oracle-equivalence":
        rep = scans.oracle_equivalence_scan(n, count, seed, threads, cfg.margin)
    elif c == "transformation":
        rep = scans.transformation_scan(n, count, seed, threads)
    elif c == "descent":
        rep = scans.descent(n, count, seed)
    elif c == "spectrum-action":
        rep = scans.spectrum_action(n, count, seed)
    elif c == "max-modulus":
        rep = scans.max_modulus_scan(n, count=count, seed=seed)
    elif c == "roundtrip":
        rep = scans.roundtrip_scan(n, count, seed, threads)
    elif c == "formula":
        rep = scans.formula_scan(count, seed, threads)
    elif c == "jacobian":
        rep = scans.jacobian_scan(n, count, seed, threads)
    elif c == "hyperconvexity":
        rep = scans.hyperconvexity_scan(n, count, seed=seed)
    else:
        rep = scans.path_scan(n, count, seed, threads)
    return {"config": cfg.echo(), **rep}


def cmd_scan(args) -> int:
    cfg = build_config(args)
    report = run_scan(cfg)
    text = dumps(report, indent=1) if cfg.format == "json" else _csv_summary(report)
    _emit(text, cfg.output)
    return 0 if report["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="symdisc", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--n", type=int, help="dimension (checked against the input)")
        sp.add_argument("--output", help="write to this file instead of stdout")

    m = sub.add_parser("member", help="classify a point or a matrix")
    common(m)
    m.add_argument("--z", help='JSON array of [re, im] pairs')
    m.add_argument("--matrix", help="JSON file holding a square matrix")
    m.add_argument("--margin", type=float, default=DEFAULT_MARGIN)
    m.set_defaults(func=cmd_member)

    k = sub.add_parser("kernel", help="evaluate the Bergman kernel")
    common(k)
    k.add_argument("--z")
    k.add_argument("--w")
    k.add_argument("--lambda", dest="lam", help="root tuple of the first point")
    k.add_argument("--mu", help="root tuple of the second point")
    k.set_defaults(func=cmd_kernel)

    s = sub.add_parser("scan", help="run a verification campaign")
    s.add_argument("scan", choices=SCANS)
    s.add_argument("--config", help="JSON file with scan settings")
    s.add_argument("--n", type=int)
    s.add_argument("--count", type=int)
    s.add_argument("--seed", type=int)
    s.add_argument("--margin", type=float)
    s.add_argument("--epsilon-grid", dest="epsilon_grid", type=float, nargs="+")
    s.add_argument("--blaschke", help="JSON file describing a Blaschke product")
    s.add_argument("--threads", type=int, help="worker threads (default: all cores)")
    s.add_argument("--format", choices=("json", "csv"))
    s.add_argument("--output")
    s.set_defaults(func=cmd_scan)

    mp = sub.add_parser("map", help="apply a lifted self-map")
    common(mp)
    mp.add_argument("--psi", default="identity", help="identity or square")
    mp.add_argument("--map-file", help="JSON map description")
    mp.add_argument("--z", required=True)
    mp.set_defaults(func=cmd_map)

    pa = sub.add_parser("path", help="evaluate the constant-spectrum path")
    pa.add_argument("--matrix", required=True)
    pa.add_argument("--t", default="0", help="real or complex parameter")
    pa.add_argument("--output")
    pa.set_defaults(func=cmd_path)

    sa = sub.add_parser("sample", help="draw random points as JSON lines")
    sa.add_argument("region", choices=[r.value for r in SampleRegion])
    sa.add_argument("--n", type=int, required=True)
    sa.add_argument("--count", type=int, default=1)
    sa.add_argument("--seed", type=int)
    sa.add_argument("--epsilon", type=float, default=1e-3)
    sa.add_argument("--output")
    sa.set_defaults(func=cmd_sample)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, SymdiscError, ValueError, OSError, KeyError, TypeError) as exc:
        print(f"symdisc: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
