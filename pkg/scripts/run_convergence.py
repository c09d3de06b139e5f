"""Max-error convergence for f = 1 on (-1, 1) over the graded-mesh cases.

    python scripts/run_convergence.py --out results/convergence
"""

import argparse
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from fraclap1d.experiments import convergence_study


@dataclass
class ConvergenceConfig:
    cases: list = field(default_factory=lambda: [
        (0.3, 1.0), (0.3, 2.0), (0.3, 2 / 0.3), (0.4, 2 / 0.4), (0.75, 2 / 0.75), (1.0, 2.0),
    ])
    N_list: list = field(default_factory=lambda: [64, 128, 256, 512])
    mesh_kind: str = "beta"
    workers: int = 1


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results/convergence")
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--mesh", default="beta", choices=["beta", "power-sym"])
    args = parser.parse_args()
    cfg = ConvergenceConfig(mesh_kind=args.mesh, workers=args.workers)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    summary = {"config": asdict(cfg), "cases": []}
    for s, alpha in cfg.cases:
        rep = convergence_study(s, alpha, cfg.N_list, mesh_kind=cfg.mesh_kind, workers=cfg.workers)
        (out / f"conv_s{s:g}_a{alpha:.4g}.csv").write_text(rep.to_csv())
        fit = rep.fits["max_error"]
        summary["cases"].append({"s": s, "alpha": alpha, **fit})
        print(f"s={s:<5g} alpha={alpha:<7.4g} slope={fit['slope']:+.3f} expected={fit['expected']:+.3f}")
    (out / "summary.json").write_text(json.dumps(summary, indent=2) + "\n")


if __name__ == "__main__":
    main()
