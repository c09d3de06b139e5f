"""Condition number and smallest eigenvalue against N on alpha = 2/s meshes.

    python scripts/run_conditioning.py --s 0.5 0.75 1.0 --out results/conditioning
"""

import argparse
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from fraclap1d.experiments import conditioning_study


@dataclass
class ConditioningConfig:
    s_values: list = field(default_factory=lambda: [0.5, 0.75, 1.0])
    N_list: list = field(default_factory=lambda: [64, 128, 256, 512])
    alpha: float = None  # None means 2/s
    mesh_kind: str = "beta"
    workers: int = 1


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--s", type=float, nargs="+", default=[0.5, 0.75, 1.0])
    parser.add_argument("--alpha", type=float, default=None)
    parser.add_argument("--n-list", type=int, nargs="+", default=[64, 128, 256, 512])
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--out", default="results/conditioning")
    args = parser.parse_args()
    cfg = ConditioningConfig(args.s, args.n_list, args.alpha, workers=args.workers)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    summary = {"config": asdict(cfg), "cases": []}
    for s in cfg.s_values:
        alpha = cfg.alpha or 2.0 / s
        rep = conditioning_study(s, alpha, cfg.N_list, mesh_kind=cfg.mesh_kind, workers=cfg.workers)
        (out / f"cond_s{s:g}_a{alpha:.4g}.csv").write_text(rep.to_csv())
        summary["cases"].append(rep.summary())
        cond = rep.fits.get("cond", {})
        lam = rep.fits.get("lambda_min", {})
        print(f"s={s:<5g} alpha={alpha:<7.4g} cond slope={cond.get('slope', float('nan')):+.3f} "
              f"(expected {cond.get('expected')}) lambda_min slope={lam.get('slope', float('nan')):+.3f} "
              f"truncated={rep.truncated}")
    (out / "summary.json").write_text(json.dumps(summary, indent=2) + "\n")


if __name__ == "__main__":
    main()
