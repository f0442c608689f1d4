"""Command-line front end.

Subcommands: ``empirical`` (gap sample + empirical CDF), ``theory``
(sampled limit curve + atom table), ``compare`` (distance report with
threshold gating), ``simulate`` (superposition model: Monte Carlo vs
formula, gap enumeration vs closed form, family statistics vs Poisson).

Output is plot-ready CSV or JSON with a deterministic metadata header:
identical config and seed give byte-identical files.  Exit codes: 0 ok,
1 usage error, 2 threshold breach, 3 I/O error.
"""

import argparse
import json
import math
import sys
import time

import numpy as np

from . import __version__, limitdist, stats, superposition
from .sequence import LogBase, order_and_gaps, sequence_values

__all__ = ["main", "parse_base"]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def parse_base(text: str) -> LogBase:
    """Base syntax: ``e``, ``pi``, a decimal literal (declared
    transcendental), ``int:<b>``, or ``root:<m>:<r>``."""
    text = text.strip()
    if text == "e":
        return LogBase.transcendental(math.e)
    if text == "pi":
        return LogBase.transcendental(math.pi)
    if text.startswith("int:"):
        return LogBase.integer(int(text[4:]))
    if text.startswith("root:"):
        parts = text[5:].split(":")
        if len(parts) != 2:
            raise ValueError(f"expected root:<m>:<r>, got {text!r}")
        return LogBase.integer_root(int(parts[0]), int(parts[1]))
    try:
        return LogBase.transcendental(float(text))
    except ValueError:
        raise ValueError(f"cannot parse base {text!r}") from None


def _parse_float_list(text: str) -> list[float]:
    return [float(t) for t in text.split(",") if t.strip()]


def _parse_k_range(text: str) -> list[int]:
    """Either a single integer or an inclusive range ``a..b``."""
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def _meta_lines(meta: dict) -> list[str]:
    lines = [f"# loggap {__version__}"]
    lines += [f"# {key}={_fmt(val)}" for key, val in meta.items()]
    return lines


def _emit(out, meta, columns, rows, fmt, atoms=None):
    """Write a table (plus optional atom table) as CSV or JSON."""
    if fmt == "json":
        doc = {
            "schema": 1,
            "version": __version__,
            "meta": {k: (v if isinstance(v, (int, float, bool)) else str(v)) for k, v in meta.items()},
            "columns": columns,
            "rows": [[float(v) for v in row] for row in rows],
        }
        if atoms is not None:
            doc["atoms"] = [
                {"location": float(loc), "mass": float(mass)} for loc, mass in atoms
            ]
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
        _write_text(out, text)
        return

    lines = _meta_lines(meta)
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    text = "\n".join(lines) + "\n"
    _write_text(out, text)

    if atoms is not None:
        atom_lines = _meta_lines({"table": "atoms", **meta})
        atom_lines.append("location,mass")
        for loc, mass in atoms:
            atom_lines.append(f"{_fmt(loc)},{_fmt(mass)}")
        atom_text = "\n".join(atom_lines) + "\n"
        if out in (None, "-"):
            _write_text(out, atom_text)
        else:
            _write_text(_atoms_path(out), atom_text)


def _atoms_path(path: str) -> str:
    stem, dot, ext = path.rpartition(".")
    return f"{stem}.atoms.{ext}" if dot else f"{path}.atoms"


def _write_text(out, text: str):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _write_json(out, doc: dict):
    _write_text(out, json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _theory_grid(dist, s_max: float, points: int) -> np.ndarray:
    """Uniform grid plus dyadic refinement on both sides of each interior
    boundary (the density has known jumps there)."""
    grid = [np.linspace(0.0, s_max, points)]
    step = s_max / points
    offsets = step * 0.5 ** np.arange(1, 8)
    for d in dist.boundaries:
        if 0.0 < d < s_max:
            grid.append(d - offsets)
            grid.append(d + offsets)
            grid.append(np.array([d]))
    merged = np.unique(np.concatenate(grid))
    return merged[(merged >= 0.0) & (merged <= s_max)]


def _cmd_empirical(args) -> int:
    base = parse_base(args.base)
    values = sequence_values(base, args.n, args.sequence)
    _, gaps = order_and_gaps(values, args.n, provenance=args.sequence)
    theory = limitdist.theory_for(base, _theory_kind(args.sequence))
    s_max = args.s_max if args.s_max is not None else theory.support_max + 1.0
    emp = stats.empirical_cdf(gaps)

    edges = np.linspace(0.0, s_max, args.bins + 1)
    counts, _ = np.histogram(gaps.scaled_gaps, bins=edges)
    width = edges[1] - edges[0]
    overflow = int(np.count_nonzero(gaps.scaled_gaps >= s_max))

    meta = {
        "command": "empirical",
        "base": args.base,
        "n": args.n,
        "sequence": args.sequence,
        "seed": args.seed,
        "bins": args.bins,
        "s_max": s_max,
        "zero_gap_fraction": gaps.zero_fraction,
        "overflow_count": overflow,
    }
    rows = [
        (edges[i + 1], emp.evaluate(edges[i + 1]), counts[i] / (gaps.n * width))
        for i in range(args.bins)
    ]
    _emit(args.out, meta, ["s", "ecdf", "hist_density"], rows, args.format)
    return 0


def _theory_kind(sequence: str) -> str:
    return "rescaled" if sequence == "unfolded" else "raw"


def _cmd_theory(args) -> int:
    base = parse_base(args.base)
    dist = limitdist.theory_for(base, args.what, eps=args.eps)
    s_max = args.s_max if args.s_max is not None else dist.support_max + 0.5
    grid = _theory_grid(dist, s_max, args.points)
    meta = {
        "command": "theory",
        "base": args.base,
        "what": args.what,
        "eps": args.eps,
        "points": args.points,
        "s_max": s_max,
    }
    rows = [
        (s, dist.pdf(s), dist.cdf(s), math.exp(-s)) for s in grid
    ]
    _emit(
        args.out,
        meta,
        ["s", "density", "cdf", "exp_ref"],
        rows,
        args.format,
        atoms=dist.atoms,
    )
    return 0


def _cmd_compare(args) -> int:
    t0 = time.perf_counter()
    base = parse_base(args.base)
    values = sequence_values(base, args.n, args.sequence)
    _, gaps = order_and_gaps(values, args.n, provenance=args.sequence)
    dist = limitdist.theory_for(base, _theory_kind(args.sequence))
    report = stats.compare(
        gaps, dist, bins=args.bins, atom_exclusion=args.atom_exclusion
    )

    ks_ok = report.sup_cdf_distance <= args.max_ks
    atom_ok = all(err <= args.max_atom_error for _, err in report.atom_mass_errors)
    passed = ks_ok and atom_ok
    doc = {
        "schema": 1,
        "version": __version__,
        "meta": {
            "command": "compare",
            "base": args.base,
            "n": args.n,
            "sequence": args.sequence,
            "bins": args.bins,
            "atom_exclusion": args.atom_exclusion,
        },
        "sup_cdf_distance": report.sup_cdf_distance,
        "l1_density_distance": report.l1_density_distance,
        "atom_mass_errors": [
            {"location": loc, "error": err} for loc, err in report.atom_mass_errors
        ],
        "sample_size": report.sample_size,
        "thresholds": {"max_ks": args.max_ks, "max_atom_error": args.max_atom_error},
        "passed": passed,
    }
    _write_json(args.out, doc)
    # wall time goes to stderr so output files stay byte-deterministic
    print(f"compare: {time.perf_counter() - t0:.3f}s", file=sys.stderr)
    return 0 if passed else 2


def _cmd_simulate(args) -> int:
    modes = sum(
        1 for flag in (args.omegas, args.family_b) if flag is not None
    )
    if args.family_b is not None and args.omegas is not None:
        raise ValueError("--family-b and --omegas are mutually exclusive")
    if modes == 0:
        raise ValueError("simulate needs --omegas or --family-b")

    if args.family_b is not None:
        return _simulate_family(args)
    if args.enumerate is not None:
        return _simulate_enumerate(args)
    return _simulate_mc(args)


def _simulate_family(args) -> int:
    b = args.family_b
    ks = _parse_k_range(args.k)
    rows = []
    for L in _parse_float_list(args.L):
        vec = limitdist.family_E_vector(b, max(ks), L)
        for k in ks:
            poisson = L**k / math.factorial(k) * math.exp(-L)
            rows.append((k, L, float(vec[k]), poisson, abs(float(vec[k]) - poisson)))
    meta = {"command": "simulate", "mode": "family", "family_b": b, "k": args.k, "L": args.L}
    _emit(
        args.out,
        meta,
        ["k", "L", "e_family", "poisson", "abs_diff"],
        rows,
        args.format,
    )
    return 0


def _simulate_enumerate(args) -> int:
    omegas = _parse_float_list(args.omegas)
    betas = _parse_float_list(args.betas) if args.betas else None
    model = superposition.CountingModel.of(omegas, betas)
    lo_txt, hi_txt = args.enumerate.split(":")
    lo, hi = float(lo_txt), float(hi_txt)
    gaps = superposition.enumerate_gaps(model, (lo, hi))
    dist = superposition.gap_density_omega(sorted(omegas, reverse=True))
    intensity = dist.total_mass
    span = hi - lo

    s_grid = (
        _parse_float_list(args.s_grid)
        if args.s_grid
        else list(np.linspace(0.0, 1.25 / max(omegas), 26)[1:])
    )
    rows = []
    for s in s_grid:
        emp_ccdf = float(np.count_nonzero(gaps > s)) / span / intensity
        rows.append((s, emp_ccdf, dist.ccdf(s) / intensity))
    meta = {
        "command": "simulate",
        "mode": "enumerate",
        "omegas": args.omegas,
        "betas": args.betas or "0",
        "interval": args.enumerate,
        "gap_count": len(gaps),
        "zero_gap_count": int(np.count_nonzero(gaps == 0.0)),
        "intensity": intensity,
    }
    _emit(
        args.out,
        meta,
        ["s", "empirical_ccdf", "theory_ccdf"],
        rows,
        args.format,
    )
    return 0


def _simulate_mc(args) -> int:
    omegas = _parse_float_list(args.omegas)
    betas = _parse_float_list(args.betas) if args.betas else None
    model = superposition.CountingModel.of(omegas, betas)
    a, b = _parse_float_list(args.t_range)
    ks = _parse_k_range(args.k)
    rows = []
    for L in _parse_float_list(args.L):
        for k in ks:
            est, se = superposition.mc_estimate_E(
                model, k, L, (a, b), args.T, args.samples, args.seed
            )
            formula = superposition.E_conv(k, L, omegas)
            rows.append((k, L, est, se, formula, abs(est - formula)))
    meta = {
        "command": "simulate",
        "mode": "mc",
        "omegas": args.omegas,
        "betas": args.betas or "0",
        "L": args.L,
        "k": args.k,
        "samples": args.samples,
        "seed": args.seed,
        "T": args.T,
        "t_range": args.t_range,
    }
    _emit(
        args.out,
        meta,
        ["k", "L", "mc_estimate", "std_error", "e_conv", "abs_diff"],
        rows,
        args.format,
    )
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="loggap", description=__doc__)
    sub = parser.add_subparsers(dest="cmd", required=True)

    def add_common(p, with_format=True):
        p.add_argument("--out", default=None, help="output path ('-' = stdout)")
        if with_format:
            p.add_argument("--format", choices=("csv", "json"), default="csv")

    p_emp = sub.add_parser("empirical", help="gap sample and empirical CDF")
    p_emp.add_argument("--base", required=True)
    p_emp.add_argument("--n", type=int, required=True)
    p_emp.add_argument("--sequence", choices=("raw", "shifted", "unfolded"), default="raw")
    p_emp.add_argument("--bins", type=int, default=60)
    p_emp.add_argument("--s-max", type=float, default=None)
    p_emp.add_argument("--seed", type=int, default=0)
    add_common(p_emp)
    p_emp.set_defaults(func=_cmd_empirical)

    p_th = sub.add_parser("theory", help="limit density/CDF curve and atoms")
    p_th.add_argument("--base", required=True)
    p_th.add_argument("--what", choices=("raw", "rescaled"), default="raw")
    p_th.add_argument("--points", type=int, default=512)
    p_th.add_argument("--s-max", type=float, default=None)
    p_th.add_argument("--eps", type=float, default=1e-12)
    add_common(p_th)
    p_th.set_defaults(func=_cmd_theory)

    p_cmp = sub.add_parser("compare", help="empirical vs theory report")
    p_cmp.add_argument("--base", required=True)
    p_cmp.add_argument("--n", type=int, required=True)
    p_cmp.add_argument("--sequence", choices=("raw", "shifted", "unfolded"), default="raw")
    p_cmp.add_argument("--bins", type=int, default=50)
    p_cmp.add_argument("--max-ks", type=float, default=0.03)
    p_cmp.add_argument("--max-atom-error", type=float, default=0.02)
    p_cmp.add_argument("--atom-exclusion", type=float, default=0.0)
    add_common(p_cmp, with_format=False)
    p_cmp.set_defaults(func=_cmd_compare)

    p_sim = sub.add_parser("simulate", help="superposition model experiments")
    p_sim.add_argument("--omegas", default=None, help="comma-separated frequencies")
    p_sim.add_argument("--betas", default=None, help="comma-separated phases")
    p_sim.add_argument("--L", default="0.5", help="comma-separated window lengths")
    p_sim.add_argument("--k", default="0..3", help="count or inclusive range a..b")
    p_sim.add_argument("--samples", type=int, default=100_000)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--T", type=float, default=10_000.0)
    p_sim.add_argument("--t-range", default="0,1", help="window-center range in units of T")
    p_sim.add_argument("--enumerate", default=None, help="lo:hi interval of points to merge")
    p_sim.add_argument("--s-grid", default=None, help="gap thresholds for the CCDF table")
    p_sim.add_argument("--family-b", type=float, default=None)
    add_common(p_sim)
    p_sim.set_defaults(func=_cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
