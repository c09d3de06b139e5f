"""Command line front end: ``fraclap1d <subcommand> ...``."""

import argparse
import json
import sys
from pathlib import Path

from . import experiments
from .assembly import assemble
from .errors import FracLapError
from .mesh import Mesh, build_mesh
from .oracle import random_mesh, stiffness_entry_quadrature
from .solver import max_error, solution_table, solve_model_problem
from .spectral import condition_number


def _n_list(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad N list {text!r}") from exc


def _add_mesh_options(p, required=True):
    p.add_argument("--kind", choices=["uniform", "power-left", "power-sym", "beta"], required=required)
    p.add_argument("--a", type=float, default=-1.0)
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--n", type=int, required=required)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=None)


def _mesh_from_args(args):
    return build_mesh(args.kind, args.a, args.b, args.n, args.alpha, args.beta)


def _write_outputs(args, csv_text, json_text):
    if args.output_prefix:
        prefix = Path(args.output_prefix)
        prefix.with_suffix(".csv").write_text(csv_text)
        prefix.with_suffix(".json").write_text(json_text + "\n")
    else:
        sys.stdout.write(csv_text)
        sys.stdout.write("\n" + json_text + "\n")


def cmd_mesh(args):
    sys.stdout.write(_mesh_from_args(args).to_text())


def cmd_assemble(args):
    if args.mesh_file:
        mesh = Mesh.from_text(Path(args.mesh_file).read_text())
    elif args.kind:
        mesh = _mesh_from_args(args)
    else:
        raise SystemExit("assemble needs --mesh-file or --kind/--n")
    sys.stdout.write(assemble(mesh, args.s).to_csv())


def cmd_verify(args):
    mesh = random_mesh(args.n, args.seed)
    S = assemble(mesh, args.s, toeplitz=False)
    out = ["j,k,closed_form,oracle,rel_diff"]
    for j in range(1, mesh.N):
        for k in range(j, mesh.N):
            closed = S.entries[j - 1, k - 1]
            quad = stiffness_entry_quadrature(mesh, args.s, j, k)
            rel = abs(closed - quad) / max(abs(quad), 1e-300)
            out.append(f"{j},{k},{closed:.17g},{quad:.17g},{rel:.3e}")
    sys.stdout.write("\n".join(out) + "\n")


def cmd_solve(args):
    mesh = experiments.study_mesh(args.n, args.alpha, args.mesh)
    _, _, sol = solve_model_problem(mesh, args.s)
    table = solution_table(sol, args.s, args.samples)
    lines = ["x,u_h,u,abs_diff"]
    lines += [",".join(f"{v:.17g}" for v in row) for row in table]
    lines.append(f"# max_error={max_error(sol, args.s, args.samples):.17g}")
    sys.stdout.write("\n".join(lines) + "\n")


def cmd_convergence(args):
    report = experiments.convergence_study(args.s, args.alpha, args.n_list, mesh_kind=args.mesh,
                                           workers=args.workers)
    _write_outputs(args, report.to_csv(), report.to_json())


def cmd_conditioning(args):
    report = experiments.conditioning_study(args.s, args.alpha, args.n_list, mesh_kind=args.mesh,
                                            workers=args.workers)
    _write_outputs(args, report.to_csv(), report.to_json())


def cmd_mu_scan(args):
    est = experiments.mu_scan(args.s, args.alpha, args.n_list, mesh_kind=args.mesh, workers=args.workers)
    sys.stdout.write(est.to_json() + "\n")


def cmd_spectrum(args):
    out = ["s,alpha,N,h_max,h_min,ratio,lambda_min,lambda_max,cond"]
    for N in args.n_list:
        S = assemble(experiments.study_mesh(N, args.alpha, args.mesh), args.s)
        sp = condition_number(S)
        vals = (sp.h_max, sp.h_min, sp.ratio, sp.lambda_min, sp.lambda_max, sp.cond)
        out.append(f"{args.s:.17g},{args.alpha:.17g},{N}," + ",".join(f"{v:.17g}" for v in vals))
    sys.stdout.write("\n".join(out) + "\n")


def build_parser():
    parser = argparse.ArgumentParser(prog="fraclap1d", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mesh", help="print mesh nodes, one per line")
    _add_mesh_options(p)
    p.set_defaults(func=cmd_mesh)

    p = sub.add_parser("assemble", help="print the stiffness matrix as CSV")
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--mesh-file")
    _add_mesh_options(p, required=False)
    p.set_defaults(func=cmd_assemble)

    p = sub.add_parser("verify", help="closed form against the Fourier-quadrature oracle")
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    def study(name, helptext):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--s", type=float, required=True)
        p.add_argument("--alpha", type=float, required=True)
        p.add_argument("--mesh", choices=["beta", "power-sym"], default="beta")
        return p

    p = study("solve", "solve the f = 1 model problem on (-1, 1)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=8)
    p.set_defaults(func=cmd_solve)

    for name, func, helptext in (
        ("convergence", cmd_convergence, "max-error convergence study"),
        ("conditioning", cmd_conditioning, "condition-number scaling study"),
    ):
        p = study(name, helptext)
        p.add_argument("--n-list", type=_n_list, default=[64, 128, 256, 512])
        p.add_argument("--workers", type=int, default=None)
        p.add_argument("--output-prefix", default=None)
        p.set_defaults(func=func)

    p = study("mu-scan", "fit the condition exponent for s < 1/2")
    p.add_argument("--n-list", type=_n_list, default=[32, 64, 128, 256])
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_mu_scan)

    p = study("spectrum", "extreme eigenvalues per N")
    p.add_argument("--n-list", type=_n_list, default=[64, 128, 256])
    p.set_defaults(func=cmd_spectrum)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except FracLapError as exc:
        sys.stderr.write(json.dumps({"error": exc.tag, "message": str(exc)}) + "\n")
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
