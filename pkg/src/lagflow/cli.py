"""Command-line surface: catalog listing, verification, exports.

Subcommands::

    list            families, constraints, cross-references
    verify          run the full identity suite for one family
    fields          CSV of Eulerian fields on an (x, y) grid
    trajectories    CSV of particle paths
    boundary        CSV of one eta = const curve
    symmetry        structure residuals of a transformed solution
    counterexample  exact recurrence identities, JSON report

Configuration precedence is flags > TOML file (--config) > built-in
defaults.  CSV output uses '.' decimals, LF line endings and 17 significant
digits, so identical invocations are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from . import cas, eulerian, geometry, symmetry
from .families import FamilyError, catalog_defaults, make_instance
from .verify import DEFAULT_TOLERANCES, run_verification

_FMT = "{:.17g}"

_FAMILY_LINES = [
    ("A", "z = xi + S(eta) t + i(eta - t^2/2); any smooth shear S(eta).",
     "equivalent to published solution (5.4)"),
    ("B", "z = S(eta) exp(i(N t - N^2 xi)) with S S' N^2 = 1; N(eta) != 0,"
         " seed S0 != 0.", "equivalent to published solution (6.2)"),
    ("C1", "cubic jet flow; k = 0, m = 0; eta = -2 sigma.",
     "equivalent to published solution (5.5)"),
    ("C2", "Gerstner-like trochoidal wave, minus gravity (extra t^2/2 term);"
          " k = 1/2, m = -1/4; sigma in (0, 2].",
     "equivalent to published solution (6.4)"),
    ("C3", "Ptolemaic twin-rotation flow; m = -1, constraint k >= 0, k != 1.",
     "equivalent to published solution (8.2)"),
    ("C4", "resonant single-mode flow; k = 1, m = 0; sigma in (-1, 2].",
     "equivalent to published solutions (7.4), (7.5)"),
    ("C5", "oblique two-mode flow; k = cos(theta), m = sin^2(theta),"
          " constraint sin(theta) cos(2 theta) != 0; sigma interval required.",
     "no published counterpart"),
    ("C6", "growing/decaying mode pair; k = m = 1, constraint sin(2 theta) != 0.",
     "equivalent to published solution (9.4)"),
]


def cmd_list(_args) -> int:
    print("Solution catalog (8 families):")
    for name, desc, xref in _FAMILY_LINES:
        print(f"  {name:3s} {desc}")
        print(f"      {xref}")
    return 0


def _instance_from_args(args):
    kwargs = {}
    if args.family == "A":
        kwargs["S"] = args.S if args.S is not None else "eta"
    elif args.family == "B":
        kwargs["N"] = args.N if args.N is not None else "1"
        kwargs["eta0"] = args.eta0
        kwargs["S0"] = args.S0
        kwargs["eta_range"] = _pair(args.eta_range, (0.0, 2.0))
    elif args.family == "C3" and args.k is not None:
        kwargs["k"] = args.k
    elif args.family in ("C5", "C6") and args.theta is not None:
        kwargs["theta"] = args.theta
    if getattr(args, "sigma_domain", None) and args.family.startswith("C"):
        kwargs["sigma_domain"] = _pair(args.sigma_domain, None)
    return make_instance(args.family, **kwargs)


def _pair(text, default):
    if text is None:
        return default
    parts = [float(x) for x in str(text).split(",")]
    if len(parts) != 2:
        raise ValueError(f"expected 'lo,hi', got {text!r}")
    return (parts[0], parts[1])


def _triplet(text, default):
    if text is None:
        return default
    parts = [int(x) for x in str(text).split(",")]
    if len(parts) != 3:
        raise ValueError(f"expected 'nt,nxi,nc2', got {text!r}")
    return tuple(parts)


def cmd_verify(args) -> int:
    try:
        inst = _instance_from_args(args)
    except (FamilyError, ValueError) as e:
        print(f"invalid parameters: {e}", file=sys.stderr)
        return 2
    tols = {}
    for spec_text in args.tol or []:
        name, _, value = spec_text.partition("=")
        if name not in DEFAULT_TOLERANCES:
            print(f"unknown tolerance {name!r}", file=sys.stderr)
            return 2
        tols[name] = float(value)
    report = run_verification(inst, grid=_triplet(args.grid, (5, 5, 5)),
                              tolerances=tols, seed=args.seed)
    for line in report.summary_lines():
        print(line)
    print(("PASS" if report.passed else "FAIL") + f"  family {report.family}")
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(report.to_json() + "\n")
    return 0 if report.passed else 1


def _write_csv(path, header: list[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join("" if v is None else _FMT.format(v) for v in row) + "\n")


def cmd_fields(args) -> int:
    try:
        inst = _instance_from_args(args)
        bbox = tuple(float(x) for x in args.bbox.split(","))
        if len(bbox) != 4:
            raise ValueError("bbox must be x0,x1,y0,y1")
        nx, ny = (int(x) for x in args.n.split(","))
    except (FamilyError, ValueError) as e:
        print(f"invalid parameters: {e}", file=sys.stderr)
        return 2
    cells = eulerian.field_grid(inst, args.time, bbox, nx, ny)
    rows = []
    resolved = 0
    for (x, y, s) in cells:
        if s is None:
            rows.append((args.time, x, y, None, None, None, None, None))
        else:
            resolved += 1
            rows.append((args.time, s.x, s.y, s.u, s.v, s.p, s.omega, s.jac))
    _write_csv(args.out, ["t", "x", "y", "u", "v", "p", "omega", "jac"], rows)
    if args.manifest:
        worst_jac = max((abs(s.jac - 1.0) for (_, _, s) in cells if s is not None),
                        default=math.nan)
        manifest = {
            "schema": "1",
            "family": inst.family.value,
            "params": inst.params,
            "grid": {"bbox": list(bbox), "nx": nx, "ny": ny, "time": args.time},
            "tolerances": {"jacobian": 1e-9},
            "residual_maxima": {"jacobian_minus_one": worst_jac},
            "resolved": resolved,
            "missing": len(cells) - resolved,
        }
        with open(args.manifest, "w") as fh:
            json.dump(manifest, fh, indent=2)
            fh.write("\n")
    if resolved == 0:
        print("no grid node was resolvable", file=sys.stderr)
        return 1
    return 0


def cmd_trajectories(args) -> int:
    try:
        inst = _instance_from_args(args)
        particles = []
        for chunk in args.particles.split(";"):
            xi, c2 = (float(v) for v in chunk.split(","))
            particles.append((xi, c2))
    except (FamilyError, ValueError) as e:
        print(f"invalid parameters: {e}", file=sys.stderr)
        return 2
    paths = eulerian.trajectories(inst, particles, args.t0, args.t1, args.dt)
    rows = []
    for pid, path in enumerate(paths):
        for row in path:
            rows.append((pid, *row))
    _write_csv(args.out, ["particle", "t", "x", "y", "u", "v", "p"], rows)
    return 0


def cmd_boundary(args) -> int:
    try:
        inst = _instance_from_args(args)
        xi_range = _pair(args.xi, (0.0, 1.0))
    except (FamilyError, ValueError) as e:
        print(f"invalid parameters: {e}", file=sys.stderr)
        return 2
    rows = geometry.boundary_curve(inst, args.eta, args.time, xi_range, args.n)
    _write_csv(args.out, ["x", "y", "kappa", "s"], rows)
    return 0


def cmd_symmetry(args) -> int:
    try:
        inst = _instance_from_args(args)
        g = symmetry.element(args.element, args.param,
                             args.phi if args.element == "X1" else None)
    except (FamilyError, ValueError) as e:
        print(f"invalid parameters: {e}", file=sys.stderr)
        return 2
    report = symmetry.verify_symmetry(inst, g, grid=_triplet(args.grid, (3, 3, 3)))
    for line in report.summary_lines():
        print(line)
    print(("PASS" if report.passed else "FAIL") + f"  {args.element} on {inst.family.value}")
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(report.to_json() + "\n")
    return 0 if report.passed else 1


def cmd_counterexample(args) -> int:
    if not 1 <= args.kmax <= 5:
        print("kmax must be between 1 and 5", file=sys.stderr)
        return 2
    ok, items, _seq = cas.counterexample_report(args.kmax)
    payload = {
        "schema": "1",
        "kmax": args.kmax,
        "identities": [
            {"name": it.name, "k": it.k, "pass": it.passed,
             "num_terms": it.term_counts[0], "den_terms": it.term_counts[1],
             "seconds": it.seconds}
            for it in items
        ],
        "pass": ok,
    }
    for it in items:
        print(f"{'pass' if it.passed else 'FAIL'}  {it.name:18s} k={it.k}"
              f"  terms={it.term_counts}  {it.seconds:.3f}s")
    print("PASS" if ok else "FAIL")
    if args.report:
        with open(args.report, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    return 0 if ok else 1


def _add_family_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                   help="seed for randomized sampling (overrides the global flag)")
    p.add_argument("--family", required=True,
                   choices=["A", "B", "C1", "C2", "C3", "C4", "C5", "C6"])
    p.add_argument("--S", help="shear profile S(eta) for family A (default: eta)")
    p.add_argument("--N", help="rotation profile N(eta) for family B (default: 1)")
    p.add_argument("--eta0", type=float, default=0.0, help="family B seed location")
    p.add_argument("--S0", type=float, default=1.0, help="family B seed value")
    p.add_argument("--eta-range", dest="eta_range", help="family B range 'lo,hi'")
    p.add_argument("--k", type=float, help="family C3 parameter (k >= 0, k != 1)")
    p.add_argument("--theta", type=float, help="family C5/C6 angle")
    p.add_argument("--sigma-domain", dest="sigma_domain", help="C-family domain 'lo,hi'")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lagflow", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--config", help="TOML file of defaults (flags win)")
    ap.add_argument("--seed", type=int, default=0, help="seed for randomized sampling")
    sub = ap.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="print the catalog")

    p = sub.add_parser("verify", help="run the identity suite")
    _add_family_options(p)
    p.add_argument("--grid", help="lattice 'nt,nxi,nc2' (default 5,5,5)")
    p.add_argument("--tol", action="append", help="override 'name=value' (repeatable)")
    p.add_argument("--report", help="write the JSON report here")

    p = sub.add_parser("fields", help="Eulerian fields on an (x, y) grid")
    _add_family_options(p)
    p.add_argument("--time", type=float, required=True)
    p.add_argument("--bbox", required=True, help="'x0,x1,y0,y1'")
    p.add_argument("--n", required=True, help="'nx,ny'")
    p.add_argument("--out", required=True)
    p.add_argument("--manifest", help="write a JSON manifest here")

    p = sub.add_parser("trajectories", help="particle paths")
    _add_family_options(p)
    p.add_argument("--particles", required=True, help="'xi,c2;xi,c2;...'")
    p.add_argument("--t0", type=float, required=True)
    p.add_argument("--t1", type=float, required=True)
    p.add_argument("--dt", type=float, required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("boundary", help="sample one eta = const curve")
    _add_family_options(p)
    p.add_argument("--eta", type=float, required=True)
    p.add_argument("--time", type=float, required=True)
    p.add_argument("--xi", required=True, help="'lo,hi'")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("symmetry", help="check one transformed solution")
    _add_family_options(p)
    p.add_argument("--element", required=True, choices=list(symmetry.KINDS))
    p.add_argument("--param", type=float, default=0.7)
    p.add_argument("--phi", default="eta^2", help="gauge function for X1")
    p.add_argument("--grid", help="lattice 'nt,nxi,nc2' (default 3,3,3)")
    p.add_argument("--report", help="write the JSON report here")

    p = sub.add_parser("counterexample", help="exact recurrence identities")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--report", help="write the JSON report here")
    return ap


def _apply_config(args: argparse.Namespace, parser: argparse.ArgumentParser) -> None:
    """TOML values fill in whatever the command line left at its default."""
    if not args.config:
        return
    with open(args.config, "rb") as fh:
        data = tomllib.load(fh)
    table = {**data, **data.get(args.command, {})}
    defaults = {a.dest: a.default for a in parser._actions}
    for key, value in table.items():
        dest = key.replace("-", "_")
        if isinstance(value, dict) or not hasattr(args, dest):
            continue
        if getattr(args, dest) == defaults.get(dest):
            setattr(args, dest, value)


_COMMANDS = {
    "list": cmd_list,
    "verify": cmd_verify,
    "fields": cmd_fields,
    "trajectories": cmd_trajectories,
    "boundary": cmd_boundary,
    "symmetry": cmd_symmetry,
    "counterexample": cmd_counterexample,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _apply_config(args, parser)
    return _COMMANDS[args.command](args)


if __name__ == "__main__":
    raise SystemExit(main())
