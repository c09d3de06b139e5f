"""Implied mu(s) for s < 1/2 at alpha = 2/s, next to the literature reference values.

    python scripts/run_mu_scan.py --out results/mu_scan.json
"""

import argparse
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from fraclap1d.experiments import REFERENCE_MU, mu_scan


@dataclass
class MuScanConfig:
    s_values: list = field(default_factory=lambda: sorted(REFERENCE_MU))
    N_list: list = field(default_factory=lambda: [32, 64, 128, 256])
    mesh_kind: str = "beta"
    workers: int = 1


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--s", type=float, nargs="+", default=None)
    parser.add_argument("--n-list", type=int, nargs="+", default=[32, 64, 128, 256])
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--out", default="results/mu_scan.json")
    args = parser.parse_args()
    cfg = MuScanConfig(N_list=args.n_list, workers=args.workers)
    if args.s:
        cfg.s_values = args.s

    rows = []
    print(f"{'s':>5} {'mu':>8} {'reference':>9} {'exponent':>9}  truncated N")
    for s in cfg.s_values:
        est = json.loads(mu_scan(s, 2.0 / s, cfg.N_list, cfg.mesh_kind, cfg.workers).to_json())
        rows.append(est)
        mu = "-" if est["mu"] is None else f"{est['mu']:.4f}"
        exp = "-" if est["exponent"] is None else f"{est['exponent']:.3f}"
        print(f"{s:>5g} {mu:>8} {REFERENCE_MU.get(s, float('nan')):>9.4f} {exp:>9}  {est['truncated_N']}")
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps({"config": asdict(cfg), "estimates": rows}, indent=2) + "\n")


if __name__ == "__main__":
    main()
