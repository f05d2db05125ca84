"""Command-line front end.

Subcommands emit deterministic CSV or JSON tables: spectra, sampled
eigenfunctions and probability densities, the two canonical figure datasets,
and a one-shot verification run. Floats are rendered in fixed 17-significant-
digit scientific notation so identical configurations produce identical
bytes on every platform.

Exit codes: 0 success, 2 invalid configuration or parameters, 3 when verify
finds a failed check.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from . import dirac as dc
from . import nonrel as nr
from . import verify as vf
from .errors import LadderError
from .params import DiracParams, NRParams, PhysicalParams

MODES = ("nr-spectrum", "nr-eigenfunctions", "dirac-spectrum",
         "dirac-eigenfunctions", "fig2", "fig3", "verify")
FIG_SAMPLES = 512

# Canonical parameter sets reproduced by the figure subcommands.
FIG2_NR = {"a": 1.5, "b": 0.5}
FIG3_DIRAC = {"a": 1.0, "b": 2.0, "d0": 1.0, "mbar": 0.1}

_DIMENSIONLESS = ("a", "b", "d0", "mbar")
_PHYSICAL = ("hbar", "m", "c", "e", "k", "pz", "ell")


@dataclass
class RunConfig:
    mode: str
    a: float | None = None
    b: float | None = None
    d0: float | None = None
    mbar: float | None = None
    hbar: float | None = None
    m: float | None = None
    c: float | None = None
    e: float | None = None
    k: float | None = None
    pz: float | None = None
    ell: float | None = None
    levels: int = 3
    families: tuple[str, ...] = ("a", "b", "c", "d")
    grid_points: int = 4096
    rho_max: float | None = None
    fmt: str = "csv"
    out: str | None = None
    tolerance: float = 1e-11

    def style(self) -> str:
        dim = any(getattr(self, name) is not None for name in _DIMENSIONLESS)
        phys = any(getattr(self, name) is not None for name in _PHYSICAL)
        if dim and phys:
            raise ValueError("supply dimensionless or physical parameters, not both")
        if phys:
            return "physical"
        if dim:
            return "dimensionless"
        return "default"


def _fmt_float(x: float) -> str:
    return f"{x:.16e}"


def _physical(cfg: RunConfig) -> PhysicalParams:
    missing = [name for name in _PHYSICAL if getattr(cfg, name) is None]
    if missing:
        raise ValueError(f"physical style needs all of {_PHYSICAL}; missing {missing}")
    return PhysicalParams(hbar=cfg.hbar, m=cfg.m, c=cfg.c, e=cfg.e,
                          k=cfg.k, pz=cfg.pz, ell=cfg.ell)


def _nr_params(cfg: RunConfig, default: dict | None = None) -> NRParams:
    style = cfg.style()
    if style == "physical":
        return _physical(cfg).to_nr()
    if style == "dimensionless":
        if cfg.a is None or cfg.b is None:
            raise ValueError("dimensionless style needs --a and --b")
        return NRParams(cfg.a, cfg.b)
    if default is None:
        raise ValueError("this mode requires parameters (--a --b or physical set)")
    return NRParams(default["a"], default["b"])


def _dirac_params(cfg: RunConfig, default: dict | None = None) -> DiracParams:
    style = cfg.style()
    if style == "physical":
        return _physical(cfg).to_dirac()
    if style == "dimensionless":
        if cfg.a is None or cfg.b is None:
            raise ValueError("dimensionless style needs --a and --b")
        return DiracParams(cfg.a, cfg.b, cfg.d0 or 0.0, cfg.mbar or 0.0)
    if default is None:
        raise ValueError("this mode requires parameters (--a --b [--d0 --mbar] "
                         "or the physical set)")
    return DiracParams(default["a"], default["b"], default["d0"], default["mbar"])


def _samples(rho_max: float) -> np.ndarray:
    return np.linspace(rho_max / FIG_SAMPLES, rho_max, FIG_SAMPLES)


def _density(params: DiracParams, n: int, fam: str, xs: np.ndarray) -> np.ndarray:
    chain = dc.normalize_spinor(dc.eigenfunction_chain(params, n, fam))
    return np.sum(np.abs(chain.eval_array(xs)) ** 2, axis=0)


# -- table builders ----------------------------------------------------------


def _table_nr_spectrum(cfg: RunConfig):
    params = _nr_params(cfg)
    cols = ["n", "energy"]
    rows = [[n, nr.spectrum_radial(params, n)] for n in range(cfg.levels)]
    return cols, rows


def _table_nr_eigenfunctions(cfg: RunConfig):
    params = _nr_params(cfg)
    rho_max = cfg.rho_max or nr.default_rho_max(params, cfg.levels - 1)
    xs = _samples(rho_max)
    funcs = [nr.normalize(nr.eigenfunction(params, n)).eval_array(xs).real
             for n in range(cfg.levels)]
    cols = ["rho"] + [f"G{n}" for n in range(cfg.levels)]
    rows = [[xs[i]] + [funcs[n][i] for n in range(cfg.levels)]
            for i in range(len(xs))]
    return cols, rows


def _table_dirac_spectrum(cfg: RunConfig):
    params = _dirac_params(cfg)
    cols = ["family", "n", "energy"]
    rows = [[fam, n, dc.family_eigenvalue(params, n, fam)]
            for fam in cfg.families for n in range(cfg.levels)]
    return cols, rows


def _table_dirac_eigenfunctions(cfg: RunConfig):
    params = _dirac_params(cfg)
    rho_max = cfg.rho_max or 40.0 * (params.a + cfg.levels) / params.b
    xs = _samples(rho_max)
    dens = {(fam, n): _density(params, n, fam, xs)
            for fam in cfg.families for n in range(cfg.levels)}
    cols = ["rho"] + [f"density_{fam}{n}"
                      for fam in cfg.families for n in range(cfg.levels)]
    rows = [[xs[i]] + [dens[fam, n][i]
                       for fam in cfg.families for n in range(cfg.levels)]
            for i in range(len(xs))]
    return cols, rows


def _table_fig2(cfg: RunConfig):
    params = _nr_params(cfg, default=FIG2_NR)
    rho_max = cfg.rho_max or nr.default_rho_max(params, 2)
    xs = _samples(rho_max)
    v0 = nr.potential(params, 0).eval_array(xs).real
    funcs = [nr.normalize(nr.eigenfunction(params, n)).eval_array(xs).real
             for n in range(3)]
    energies = [nr.spectrum_radial(params, n) for n in range(3)]
    cols = ["rho", "V0", "G0", "G1", "G2", "E0", "E1", "E2"]
    rows = [[xs[i], v0[i], funcs[0][i], funcs[1][i], funcs[2][i]] + energies
            for i in range(len(xs))]
    return cols, rows


def _table_fig3(cfg: RunConfig):
    params = _dirac_params(cfg, default=FIG3_DIRAC)
    rho_max = cfg.rho_max or 40.0 * (params.a + 3) / params.b
    xs = _samples(rho_max)
    fams = ("a", "c")
    dens = {(fam, n): _density(params, n, fam, xs) for fam in fams for n in range(3)}
    energies = [dc.family_eigenvalue(params, n, fam) for fam in fams for n in range(3)]
    cols = (["rho"] + [f"density_{fam}{n}" for fam in fams for n in range(3)]
            + [f"E_{fam}{n}" for fam in fams for n in range(3)])
    rows = [[xs[i]] + [dens[fam, n][i] for fam in fams for n in range(3)] + energies
            for i in range(len(xs))]
    return cols, rows


def _table_verify(cfg: RunConfig):
    style = cfg.style()
    if style == "default":
        nr_params = NRParams(FIG2_NR["a"], FIG2_NR["b"])
        dirac_params = DiracParams(**FIG3_DIRAC)
    elif style == "physical":
        phys = _physical(cfg)
        nr_params, dirac_params = phys.to_nr(), phys.to_dirac()
    else:
        nr_params = _nr_params(cfg)
        dirac_params = _dirac_params(cfg)
    results = vf.run_all(nr_params, dirac_params, tol=cfg.tolerance,
                         n_points=cfg.grid_points)
    cols = ["check", "passed", "detail"]
    rows = [[r.name, "pass" if r.passed else "FAIL", r.detail] for r in results]
    ok = all(r.passed for r in results)
    return cols, rows, ok


# -- rendering ---------------------------------------------------------------


def _cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return _fmt_float(float(value))
    return str(value)


def _render_csv(cols, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


def _json_scalar(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return _fmt_float(float(value))
    escaped = (str(value).replace("\\", "\\\\").replace('"', '\\"')
               .replace("\n", "\\n"))
    return f'"{escaped}"'


def _json_value(value) -> str:
    if isinstance(value, dict):
        inner = ",".join(f'{_json_scalar(k)}:{_json_value(v)}'
                         for k, v in value.items())
        return "{" + inner + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(_json_value(v) for v in value) + "]"
    return _json_scalar(value)


def _render_json(cols, rows, meta: dict) -> str:
    doc = {"meta": meta, "data": {"columns": list(cols),
                                  "rows": [list(r) for r in rows]}}
    return _json_value(doc) + "\n"


def _meta(cfg: RunConfig) -> dict:
    meta = {}
    for f in fields(cfg):
        value = getattr(cfg, f.name)
        key = "format" if f.name == "fmt" else f.name
        meta[key] = list(value) if isinstance(value, tuple) else value
    return meta


def run(cfg: RunConfig) -> int:
    """Build the table for the configured mode, write it, return the exit code."""
    try:
        if cfg.mode not in MODES:
            raise ValueError(f"unknown mode {cfg.mode!r}")
        if cfg.levels < 1:
            raise ValueError("levels must be at least 1")
        for fam in cfg.families:
            if fam not in dc.FAMILIES:
                raise ValueError(f"unknown family {fam!r}")
        verify_ok = True
        if cfg.mode == "verify":
            cols, rows, verify_ok = _table_verify(cfg)
        else:
            builder = {
                "nr-spectrum": _table_nr_spectrum,
                "nr-eigenfunctions": _table_nr_eigenfunctions,
                "dirac-spectrum": _table_dirac_spectrum,
                "dirac-eigenfunctions": _table_dirac_eigenfunctions,
                "fig2": _table_fig2,
                "fig3": _table_fig3,
            }[cfg.mode]
            cols, rows = builder(cfg)
    except (LadderError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    text = (_render_csv(cols, rows) if cfg.fmt == "csv"
            else _render_json(cols, rows, _meta(cfg)))
    if cfg.out:
        try:
            Path(cfg.out).write_text(text)
        except OSError as exc:
            print(f"error: cannot write {cfg.out}: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    return 0 if verify_ok else 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="susy-ladder",
        description="Exact ladder-operator spectra for a charged particle in a "
                    "1/rho magnetic field, with finite-difference verification.")
    sub = parser.add_subparsers(dest="mode", required=True, metavar="mode")
    for mode in MODES:
        p = sub.add_parser(mode)
        p.add_argument("--a", type=float)
        p.add_argument("--b", type=float)
        p.add_argument("--d0", type=float)
        p.add_argument("--mbar", type=float)
        p.add_argument("--hbar", type=float)
        p.add_argument("--m", type=float)
        p.add_argument("--c", type=float)
        p.add_argument("--e", type=float)
        p.add_argument("--k", type=float)
        p.add_argument("--pz", type=float)
        p.add_argument("--ell", type=float)
        p.add_argument("--levels", type=int, default=3)
        p.add_argument("--families", type=str, default="a,b,c,d")
        p.add_argument("--grid-points", type=int, default=4096)
        p.add_argument("--rho-max", type=float)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", type=str)
        p.add_argument("--tolerance", type=float, default=1e-11)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    families = tuple(s for s in args.families.split(",") if s)
    return RunConfig(
        mode=args.mode, a=args.a, b=args.b, d0=args.d0, mbar=args.mbar,
        hbar=args.hbar, m=args.m, c=args.c, e=args.e, k=args.k, pz=args.pz,
        ell=args.ell, levels=args.levels, families=families,
        grid_points=args.grid_points, rho_max=args.rho_max, fmt=args.format,
        out=args.out, tolerance=args.tolerance)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        return run(cfg)
    except (LadderError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
