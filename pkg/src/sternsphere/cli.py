"""Command-line interface: ``sternsphere <command> [options]``.

Commands
--------
roots     Legendre zeros, derivative zeros and local maxima for one degree.
critical  Critical values of mu and critical zeros for one family.
trace     Extract the nodal set; JSON, CSV polylines or SVG.
domains   Count nodal domains (and components away from critical mu).
verify    Run the topology checks over a range of degrees.
sweep     Domain counts of the odd family over a list of mu values.
render    SVG of the nodal set over its checkerboard.

Exit status of ``verify``: 0 when every check passes, 1 when a count or
structural check disagrees with the expected value, 3 when sampling or
extraction itself failed.
"""

import argparse
from dataclasses import dataclass
import sys
import warnings

from . import io
from . import legendre as lg
from .critical import critical_mus_even, critical_mus_odd, nearest_critical
from .harmonics import EvenStern, OddStern, build_checkerboard
from .nodal import (
    DEFAULT_GRID,
    CriticalParameterWarning,
    analyze,
    count_nodal_domains,
    extract_nodal_set,
    sample_sign_grid,
)
from .nodal.checks import family_params
from .render import render_svg

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_FAILURE = 3

#: even family with r = 1 has no critical value; this mu keeps its nodal
#: corridor (about 1.5 mu wide at the poles) several cells wide at 1024 rows
R1_MU = 0.1
#: cap on mu for the even family in ``verify``, as in the reference figures
EVEN_MU_CAP = 1e-3


@dataclass(frozen=True)
class RunConfig:
    command: str
    ell: int | None = None
    r: int | None = None
    mu: float | None = None
    epsilon: float | None = None
    grid: tuple = DEFAULT_GRID
    out: str | None = None
    format: str = "json"


def parse_grid(text):
    try:
        n, m = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like 1024x2048, got {text!r}")
    return n, m


def parse_range(text):
    """'3-9' -> [3..9], '3,5,7' -> [3, 5, 7]."""
    out = []
    for part in text.split(","):
        if "-" in part:
            a, b = (int(v) for v in part.split("-"))
            out.extend(range(a, b + 1))
        elif part:
            out.append(int(part))
    return out


def default_mu(fam_cls, ell=None, r=None, epsilon=None):
    """mu_c / 2, or ``R1_MU`` for the even family with r = 1."""
    if fam_cls is OddStern:
        return 0.5 * critical_mus_odd(ell).mu_c
    rep = critical_mus_even(r, EvenStern(r, epsilon).alpha)
    return R1_MU if rep.unbounded else 0.5 * rep.mu_c


def family_from(cfg):
    if (cfg.ell is None) == (cfg.r is None):
        raise SystemExit("give exactly one of --ell (odd family) or --r (even family)")
    if cfg.r is not None:
        eps = 0.4 if cfg.epsilon is None else cfg.epsilon
        mu = default_mu(EvenStern, r=cfg.r, epsilon=eps) if cfg.mu is None else cfg.mu
        return EvenStern(cfg.r, eps, mu)
    if cfg.epsilon is not None:
        raise SystemExit("--epsilon applies to the even family (--r) only")
    mu = default_mu(OddStern, ell=cfg.ell) if cfg.mu is None and cfg.ell >= 2 else (cfg.mu or 0.0)
    return OddStern(cfg.ell, mu)


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _config(args):
    return RunConfig(command=args.command, ell=getattr(args, "ell", None),
                     r=getattr(args, "r", None), mu=getattr(args, "mu", None),
                     epsilon=getattr(args, "epsilon", None),
                     grid=getattr(args, "grid", DEFAULT_GRID), out=getattr(args, "out", None),
                     format=getattr(args, "format", None) or "json")


# ---------------------------------------------------------------- commands

def cmd_roots(args):
    ell = args.ell
    z = lg.legendre_zeros(ell)
    data = {"ell": ell, "zeros": {"theta": z.thetas, "t": z.ts}}
    if ell >= 2:
        dz = lg.legendre_deriv_zeros(ell)
        mx = lg.legendre_local_maxima(ell)
        data["derivative_zeros"] = {"theta": dz.thetas, "t": dz.ts}
        data["local_maxima"] = {"values": mx.values, "locations": mx.locations}
    _emit(io.dumps(data), args.out)
    return EXIT_OK


def cmd_critical(args):
    cfg = _config(args)
    if cfg.r is not None:
        eps = 0.4 if cfg.epsilon is None else cfg.epsilon
        rep = critical_mus_even(cfg.r, EvenStern(cfg.r, eps).alpha)
        data = rep.to_dict()
        data["epsilon"] = eps
    elif cfg.ell is not None:
        rep = critical_mus_odd(cfg.ell)
        data = rep.to_dict()
        data["lower_bound_2"] = rep.lower_bound_2
    else:
        raise SystemExit("give --ell or --r")
    _emit(io.dumps(data), cfg.out)
    return EXIT_OK


def _extract(cfg):
    fam = family_from(cfg)
    grid = sample_sign_grid(fam, *cfg.grid)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", CriticalParameterWarning)
        ns = extract_nodal_set(fam, grid)
    return fam, grid, ns


def _title(fam):
    if isinstance(fam, EvenStern):
        return f"even family r={fam.r} epsilon={fam.epsilon:g} mu={fam.mu:.6g}"
    return f"odd family l={fam.ell} mu={fam.mu:.6g}"


def cmd_trace(args):
    cfg = _config(args)
    fam, grid, ns = _extract(cfg)
    if cfg.format == "csv":
        if cfg.out is None:
            io.write_csv(ns, sys.stdout)
        else:
            with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
                io.write_csv(ns, fh)
    elif cfg.format == "svg":
        _emit(render_svg(ns, title=_title(fam)), cfg.out)
    else:
        data = {"family": family_params(fam)}
        data.update(io.nodal_set_to_dict(ns))
        _emit(io.dumps(data), cfg.out)
    return EXIT_OK


def cmd_render(args):
    cfg = _config(args)
    fam, grid, ns = _extract(cfg)
    cb = build_checkerboard(fam)
    _emit(render_svg(ns, cb, title=_title(fam)), cfg.out)
    return EXIT_OK


def cmd_domains(args):
    cfg = _config(args)
    fam, grid, ns = _extract(cfg)
    crit = bool(ns.diagnostics.get("at_critical"))
    data = {"family": family_params(fam), "grid": list(cfg.grid),
            "n_domains": count_nodal_domains(grid), "at_critical": crit,
            "n_components": None if crit else ns.n_components}
    if crit:
        print("warning: mu is a critical value; the nodal set self-intersects and only "
              "the domain count is reported", file=sys.stderr)
    _emit(io.dumps(data), cfg.out)
    return EXIT_OK


def expected_counts(fam):
    """(components, domains) predicted for 0 < mu < mu_c."""
    if isinstance(fam, EvenStern):
        return 2, 3
    return (1, 2) if fam.ell % 2 else (fam.ell, fam.ell + 1)


def verify_one(fam, grid):
    rep, ns, _ = analyze(fam, *grid)
    comps, doms = expected_counts(fam)
    checks = {
        "components": rep.n_components == comps,
        "domains": rep.n_domains == doms,
        "domains_equal_components_plus_one": rep.n_domains == rep.n_components + 1,
        "all_closed": rep.all_closed,
        "inclusion": rep.inclusion_violations == 0,
        "separation": rep.separation_ok,
        "checkerboard_vertices": rep.vertices_on_nodal_set,
        "vertex_certification": rep.certified_max_residual < 1e-10
        and rep.certified_max_distance <= rep.diagnostics["cell_size"],
    }
    if isinstance(fam, EvenStern):
        checks["hemispheres"] = sorted(rep.hemisphere_sides) == [-1, 1]
        p = rep.antipodal_partners
        checks["antipodal_pairing"] = len(p) == 2 and p[0] == 1 and p[1] == 0
    return {
        "family": rep.family,
        "params": rep.params,
        "expected": {"components": comps, "domains": doms},
        "n_components": rep.n_components,
        "n_domains": rep.n_domains,
        "inclusion_violations": rep.inclusion_violations,
        "separation": rep.separation_profiles,
        "vertex_max_distance": rep.vertex_max_distance,
        "certified_max_residual": rep.certified_max_residual,
        "checks": checks,
        "ok": all(checks.values()),
    }


def verify_mu(fam_cls, ell, fraction, epsilon=0.4):
    """The mu used by ``verify``: fraction * mu_c, capped for the even family."""
    if fam_cls is OddStern:
        return fraction * critical_mus_odd(ell).mu_c
    r = ell // 2
    rep = critical_mus_even(r, EvenStern(r, epsilon).alpha)
    if rep.unbounded:
        return R1_MU
    return min(EVEN_MU_CAP, fraction * rep.mu_c)


def cmd_verify(args):
    ells = parse_range(args.ells)
    if any(not 2 <= ell <= 12 for ell in ells):
        raise SystemExit("verify covers 2 <= l <= 12")
    if not 0 < args.fraction < 1:
        raise SystemExit("--fraction must lie in (0, 1)")
    families = [f.strip() for f in args.families.split(",") if f.strip()]
    rows, status = [], EXIT_OK
    for ell in ells:
        runs = []
        if "odd" in families:
            runs.append(OddStern(ell, verify_mu(OddStern, ell, args.fraction)))
        if "even" in families and ell % 2 == 0:
            runs.append(EvenStern(ell // 2, args.epsilon,
                                  verify_mu(EvenStern, ell, args.fraction, args.epsilon)))
        for fam in runs:
            try:
                row = verify_one(fam, args.grid)
            except Exception as exc:  # extraction failure is a distinct outcome
                row = {"family": fam.kind, "params": family_params(fam),
                       "error": f"{type(exc).__name__}: {exc}", "ok": False}
                status = EXIT_FAILURE
            else:
                if not row["ok"] and status == EXIT_OK:
                    status = EXIT_MISMATCH
            rows.append(row)
    report = {"fraction": args.fraction, "epsilon": args.epsilon, "grid": list(args.grid),
              "results": rows, "ok": status == EXIT_OK}
    _emit(io.dumps(report), args.out)
    return status


def run_sweep(ell, mus, grid=DEFAULT_GRID):
    """Domain counts of W_l + mu Z_l with the distance to the nearest critical value."""
    rep = critical_mus_odd(ell)
    out = []
    for mu in mus:
        fam = OddStern(ell, mu)
        g = sample_sign_grid(fam, *grid)
        nearest, dist, crit = nearest_critical(rep, mu)
        out.append({"mu": mu, "n_domains": count_nodal_domains(g), "nearest_critical": nearest,
                    "distance": dist, "critical": crit})
    return {"ell": ell, "grid": list(grid), "critical_values": [c.value for c in rep.mus],
            "entries": out}


def cmd_sweep(args):
    mus = [float(v) for v in args.mus.split(",") if v.strip()] if args.mus else []
    _emit(io.dumps(run_sweep(args.ell, mus, args.grid)), args.out)
    return EXIT_OK


# ---------------------------------------------------------------- parser

def _family_args(p, with_format=None):
    p.add_argument("--ell", type=int, help="degree of the odd family W_l + mu Z_l")
    p.add_argument("--r", type=int, help="half-degree of the even family W - mu V_alpha")
    p.add_argument("--mu", type=float, help="perturbation strength (default mu_c / 2)")
    p.add_argument("--epsilon", type=float, help="alpha = epsilon pi / (2r), 0 < epsilon < 1/2")
    p.add_argument("--grid", type=parse_grid, default=DEFAULT_GRID, metavar="NxM",
                   help="theta x phi resolution (default 1024x2048)")
    p.add_argument("--out", help="output path (default stdout)")
    if with_format:
        p.add_argument("--format", choices=with_format, default=with_format[0])


def build_parser():
    parser = argparse.ArgumentParser(prog="sternsphere",
                                     description="Nodal sets of the Stern spherical harmonics")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("roots", help="Legendre zeros and extrema")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("critical", help="critical values of mu")
    _family_args(p, ["json"])
    p.set_defaults(func=cmd_critical)

    p = sub.add_parser("trace", help="extract the nodal set")
    _family_args(p, ["json", "csv", "svg"])
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("domains", help="count nodal domains")
    _family_args(p, ["json"])
    p.set_defaults(func=cmd_domains)

    p = sub.add_parser("render", help="SVG of nodal set and checkerboard")
    _family_args(p, ["svg"])
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("verify", help="topology checks over a degree range")
    p.add_argument("--ells", default="2-12", help="degrees, e.g. 3-9 or 3,5,7 (default 2-12)")
    p.add_argument("--fraction", type=float, default=0.5, help="mu = fraction * mu_c")
    p.add_argument("--epsilon", type=float, default=0.4)
    p.add_argument("--families", default="odd,even")
    p.add_argument("--grid", type=parse_grid, default=DEFAULT_GRID, metavar="NxM")
    p.add_argument("--out")
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="domain counts over a list of mu values")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--mus", default="", help="comma-separated mu values")
    p.add_argument("--grid", type=parse_grid, default=DEFAULT_GRID, metavar="NxM")
    p.add_argument("--out")
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
