"""Command-line front end.

Experiment subcommands write ``<out>/<name>.csv`` plus ``<out>/manifest.json``;
``gain`` prints the expected gain of every intervention for a counts file.
"""

from __future__ import annotations

import argparse
import csv
import datetime as _dt
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .experiments import (
    ActiveComparison,
    ExperimentConfig,
    default_config,
    example1_joint,
    example2_joint,
    example3_joint,
    example4_random_joint,
    mean_field_curves,
    run_active_comparison,
    run_alpha_sweep,
    run_gain_curves,
)
from .gain import gain_reports
from .joint_model import load_counts_csv
from .strategy import Policy, greedy_index
from .world import derive_rng, load_world, save_world

def _fmt(v: float) -> str:
    return f"{v:.6f}"


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of numbers, got {text!r}")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}")


def _write_csv(path: Path, header: Sequence[str], rows: Sequence[Sequence]) -> None:
    with open(path, "w", newline="", encoding="ascii") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _write_manifest(out: Path, name: str, cfg: ExperimentConfig, argv, outputs, extra=None) -> None:
    manifest = {
        "command": ["causalgain", *argv],
        "experiment": name,
        "config": cfg.to_json(),
        "seed": cfg.seed,
        "version": __version__,
        "started": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        "outputs": [p.name for p in outputs],
    }
    if extra:
        manifest.update(extra)
    with open(out / "manifest.json", "w", encoding="ascii") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")


CURVE_HEADER = ("n_obs", "intervention", "mean_expected", "std_expected", "mean_realized", "std_realized")


def _curve_outputs(out: Path, name: str, world, cfg: ExperimentConfig) -> list[Path]:
    rows = run_gain_curves(world, cfg)
    curves = out / f"{name}.csv"
    _write_csv(
        curves,
        CURVE_HEADER,
        [
            (r.n_obs, r.intervention.label, _fmt(r.mean_expected), _fmt(r.std_expected),
             _fmt(r.mean_realized), _fmt(r.std_realized))
            for r in rows
        ],
    )
    mf = out / f"{name}_meanfield.csv"
    _write_csv(
        mf,
        ("n_obs", "intervention", "expected", "realized"),
        [
            (r.n_obs, r.intervention.label, _fmt(r.expected), _fmt(r.realized))
            for r in mean_field_curves(world, cfg.alpha, cfg.n_grid)
        ],
    )
    return [curves, mf]


def _config_from_args(name: str, args) -> ExperimentConfig:
    k = getattr(args, "k", None)
    return default_config(
        name,
        rho=getattr(args, "rho", None),
        alpha=getattr(args, "alpha", None),
        n_grid=args.n_grid,
        reps=args.reps,
        seed=args.seed,
        alpha_grid=getattr(args, "alpha_grid", None),
        threads=args.threads,
        k_x=k,
        k_y=k,
    )


def cmd_example(args, argv) -> int:
    name = args.command
    cfg = _config_from_args(name, args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    extra = None
    if name in ("example1", "example2", "example3"):
        world = {"example1": example1_joint, "example2": example2_joint, "example3": example3_joint}[name](cfg.rho)
        outputs = _curve_outputs(out, name, world, cfg)
        extra = {"world": world.to_json()}
    elif name == "alpha-sweep":
        rows = run_alpha_sweep(cfg)
        path = out / f"{name}.csv"
        _write_csv(
            path,
            ("alpha", "n_obs", "probability_best_selected"),
            [(_fmt(r.alpha), r.n_obs, _fmt(r.probability_best_selected)) for r in rows],
        )
        outputs = [path]
        extra = {"world": example3_joint(cfg.rho).to_json(), "best": "do(X=1)"}
    elif name == "example4":
        result: ActiveComparison = run_active_comparison(cfg)
        path = out / f"{name}.csv"
        _write_csv(
            path,
            ("policy", "n_obs", "mean_gain", "std_gain", "reps"),
            [
                (r.policy.value, "all" if r.n_obs is None else r.n_obs, _fmt(r.mean_gain), _fmt(r.std_gain), r.reps)
                for r in result.rows
            ],
        )
        outputs = [path]
        extra = {"greedy_over_random": result.ratio}
    elif name == "curves":
        if args.world:
            world = load_world(args.world)
        else:
            world = example4_random_joint(derive_rng(cfg.seed, 2**32), args.k or 4)
        cfg = default_config("curves", alpha=cfg.alpha, n_grid=cfg.n_grid, reps=cfg.reps, seed=cfg.seed,
                             threads=cfg.threads, k_x=world.k_x, k_y=world.k_y)
        save_world(world, out / "world.json")
        outputs = _curve_outputs(out, name, world, cfg) + [out / "world.json"]
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(name)
    _write_manifest(out, name, cfg, argv, outputs, extra)
    for p in outputs:
        print(p)
    return 0


def _read_meta(path) -> dict:
    with open(path) as fh:
        meta = json.load(fh)
    if not isinstance(meta, dict) or set(meta) - {"alpha", "k_x", "k_y"}:
        raise ValueError(f"{path}: sidecar must be an object with keys among alpha, k_x, k_y")
    return meta


def cmd_gain(args) -> int:
    world = load_world(args.world) if args.world else None
    meta = _read_meta(args.meta) if args.meta else {}
    alpha = args.alpha if args.alpha is not None else float(meta.get("alpha", 2.0))
    k_x = args.kx if args.kx is not None else meta.get("k_x", world.k_x if world else None)
    k_y = args.ky if args.ky is not None else meta.get("k_y", world.k_y if world else None)
    counts = load_counts_csv(args.counts_file, k_x, k_y, alpha)
    if world is not None and (world.k_x, world.k_y) != (counts.k_x, counts.k_y):
        raise ValueError(
            f"dimension mismatch: counts are {counts.k_x}x{counts.k_y}, world is {world.k_x}x{world.k_y}"
        )
    reports = gain_reports(counts, world)
    expected = np.array([r.expected_bits for r in reports])
    policy = Policy(args.policy)
    if policy is Policy.GREEDY:
        chosen = greedy_index(expected)
    else:
        chosen = int(derive_rng(args.seed).integers(len(reports)))
    order = sorted(range(len(reports)), key=lambda i: -expected[i])  # stable: ties keep enumeration order

    header = f"{'rank':>4}  {'intervention':<12}  {'expected_bits':>13}"
    if world is not None:
        header += f"  {'realized_bits':>13}"
    print(f"# N={counts.total:g} alpha={counts.alpha:g} k_x={counts.k_x} k_y={counts.k_y} policy={policy.value}")
    print(header)
    for rank, i in enumerate(order, start=1):
        r = reports[i]
        line = f"{rank:>4}  {r.intervention.label:<12}  {_fmt(r.expected_bits):>13}"
        if world is not None:
            line += f"  {_fmt(r.realized_bits):>13}"
        if i == chosen:
            line += "  *"
        print(line)
    return 0


def _add_common(p: argparse.ArgumentParser, rho: bool = True, alpha: bool = True) -> None:
    if rho:
        p.add_argument("--rho", type=float, help="correlation/peak parameter of the scenario joint")
    if alpha:
        p.add_argument("--alpha", type=float, help="Dirichlet concentration (default 2)")
    p.add_argument("--n-grid", type=_int_list, help="comma-separated observation counts N")
    p.add_argument("--reps", type=int, help="replications per grid point")
    p.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    p.add_argument("--out", default="runs", help="output directory (default ./runs)")
    p.add_argument("--threads", type=int, default=1, help="worker threads, 0 = one per CPU")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="causalgain",
        description="Information gain of interventions for two-variable Bayesian causal induction.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_ in (
        ("example1", "two correlated binary variables"),
        ("example2", "exploration: one dominant cell in a 4x4 joint"),
        ("example3", "a single good intervention in a 4x4 joint"),
    ):
        _add_common(sub.add_parser(name, help=help_))

    p = sub.add_parser("alpha-sweep", help="chance that greedy picks do(X=1) in example 3, per alpha and N")
    _add_common(p, alpha=False)
    p.add_argument("--alpha-grid", type=_float_list, help="comma-separated alpha values")

    p = sub.add_parser("example4", help="greedy vs random selection on random 8x8 worlds")
    _add_common(p, rho=False)
    p.add_argument("--k", type=int, help="categories per variable (default 8)")

    p = sub.add_parser("curves", help="gain curves for a world file or a random k x k world")
    _add_common(p, rho=False)
    p.add_argument("--world", help="world JSON file")
    p.add_argument("--k", type=int, help="size of the random world when --world is absent (default 4)")

    p = sub.add_parser("gain", help="expected gain of every intervention for a counts CSV")
    p.add_argument("counts_file", help="CSV with header x,y,count (1-based, missing cells are 0)")
    p.add_argument("--alpha", type=float, help="Dirichlet concentration (default 2)")
    p.add_argument("--meta", help="JSON sidecar with alpha, k_x, k_y; flags take precedence")
    p.add_argument("--kx", type=int, help="categories of X (default: from --world or the file)")
    p.add_argument("--ky", type=int, help="categories of Y (default: from --world or the file)")
    p.add_argument("--world", help="world JSON; adds realized gain")
    p.add_argument("--policy", choices=[p.value for p in Policy], default="greedy")
    p.add_argument("--seed", type=int, default=0, help="seed for --policy random")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    try:
        if args.command == "gain":
            return cmd_gain(args)
        return cmd_example(args, argv)
    except (ValueError, IndexError, OSError) as exc:
        print(f"causalgain: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
