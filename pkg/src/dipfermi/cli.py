"""Command-line front end: parameter sweeps to CSV for every curve family.

Config files are flat ``key = value [unit]`` text; command-line flags
override config entries.  All CSV output carries a ``#``-prefixed metadata
header echoing the fully resolved configuration, uses 17 significant digits
and comma separators, and emits one row per grid point with an explicit
status column.  Exit codes: 0 success (including physics-overdamped rows),
1 numeric failure, 2 usage error.

The only environment variable honored is DIPFERMI_WORKERS (sweep-point
worker-pool size; results are emitted in grid order regardless).
"""

import argparse
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import DomainError, NumericsError
from .units import Dimension, PhysicalParams, fermi_scales, reduce_params
from . import constants as cn
from . import lda_trap, multilayer, observables, zerosound

# accepted units per config key -> conversion to canonical
_UNITS = {
    "mass": {"amu": 1.0},
    "dipole": {"d": 1.0, "debye": 1.0},
    "density": {"/cm3": 1.0, "/cm2": 1.0, "/cm": 1.0, "": 1.0},
    "temp": {"nk": 1.0, "uk": 1e3, "": 1.0},
    "width": {"nm": 1.0, "um": 1e3, "": 1.0},
    "theta_e": {"rad": 1.0, "deg": math.pi / 180.0, "": 1.0},
    "theta_q": {"rad": 1.0, "deg": math.pi / 180.0, "": 1.0},
    "theta_k": {"rad": 1.0, "deg": math.pi / 180.0, "": 1.0},
    "v0": {"er": 1.0, "": 1.0},
    "wavelength": {"nm": 1.0, "um": 1e3, "": 1.0},
    "omega": {"rad/s": 1.0, "hz": 2.0 * math.pi, "": 1.0},
    "rs": {"": 1.0},
    "ntarget": {"": 1.0},
    "dim": {"": 1.0},
    "tol": {"": 1.0},
}

_DEFAULTS = {
    "mass": 127.0, "dipole": 0.57, "density": 1e9, "temp": 10.0,
    "width": 10.0, "theta_e": 0.0, "theta_q": 0.0, "theta_k": 0.0,
    "dim": 2, "v0": 100.0, "wavelength": 1000.0, "omega": 2.0 * math.pi * 500.0,
    "rs": 1.0, "ntarget": 100.0, "tol": 1e-8,
}


def parse_config_file(path: str) -> dict:
    """Flat ``key = value [unit]`` file; '#' starts a comment."""
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError(f"{path}:{lineno}: expected key = value")
            key, rhs = (s.strip() for s in line.split("=", 1))
            out[key.replace("-", "_").lower()] = _parse_value(key, rhs)
    return out


def _parse_value(key: str, rhs: str):
    key = key.replace("-", "_").lower()
    parts = rhs.split()
    if key in ("sweep", "out", "quantity"):
        return rhs.strip()
    val = float(parts[0])
    unit = parts[1].lower() if len(parts) > 1 else ""
    table = _UNITS.get(key)
    if table is None:
        return val
    if unit not in table:
        raise DomainError(f"unit {unit!r} not valid for {key!r} "
                          f"(accepted: {sorted(table)})")
    return val * table[unit]


def _parse_sweep(text: str):
    """axis:min:max:count:scale, scale in {linear, log}."""
    try:
        axis, lo, hi, count, scale = text.split(":")
        lo, hi, count = float(lo), float(hi), int(count)
    except ValueError as exc:
        raise DomainError(f"bad sweep spec {text!r}; "
                          "expected axis:min:max:count:scale") from exc
    axis = axis.replace("-", "_").lower()
    if axis not in ("temperature", "temp", "density", "angle"):
        raise DomainError(f"unknown sweep axis {axis!r}")
    if count < 2 or not lo < hi:
        raise DomainError("sweep needs count >= 2 and min < max")
    if scale == "log":
        grid = np.geomspace(lo, hi, count)
    elif scale == "linear":
        grid = np.linspace(lo, hi, count)
    else:
        raise DomainError(f"unknown sweep scale {scale!r}")
    return ("temp" if axis.startswith("temp") else axis), grid


def _params_from(cfg: dict) -> PhysicalParams:
    return PhysicalParams(
        mass_amu=cfg["mass"], dipole_debye=cfg["dipole"],
        density=cfg["density"], temperature_nk=cfg["temp"],
        dimension=Dimension(int(cfg["dim"])), width_nm=cfg["width"],
        theta_e=cfg["theta_e"], theta_q=cfg["theta_q"])


def _fmt(x) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return "nan"
    return "%.17g" % float(x)


def write_csv(path, cfg, columns, rows):
    lines = ["# dipfermi sweep output"]
    for key in sorted(cfg):
        lines.append(f"# {key} = {cfg[key]}")
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    text = "\n".join(lines) + "\n"
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


# --------------------------------------------------------------------------
# per-point evaluators (module-level for the worker pool)
# --------------------------------------------------------------------------

def _point_cfg(cfg, axis, value):
    new = dict(cfg)
    if axis == "temp":
        new["temp"] = value
    elif axis == "density":
        new["density"] = value
    elif axis == "angle":
        new["theta_q"] = value
    return new


def eval_kappa(cfg):
    p = _params_from(cfg)
    st = reduce_params(p)
    res = observables.kappa_ratio(st, "numeric")
    res = observables.kappa_abs(p, res)
    return {"t": st.t, "kappa_over_kappa0": res.kappa_ratio,
            "kappa0_over_kappa": res.inv_ratio,
            "kappa_si": res.kappa_abs, "status": "ok"}


def eval_effmass(cfg):
    p = _params_from(cfg)
    st = reduce_params(p)
    em = observables.effective_mass(st.dimension, 1.0, cfg["theta_k"], st)
    return {"t": st.t, "m_over_mstar_radial": em.m_over_mstar_radial,
            "m_over_mstar_angular": em.m_over_mstar_angular, "status": "ok"}


def eval_zerosound(cfg):
    p = _params_from(cfg)
    st = reduce_params(p)
    if st.dimension is Dimension.TWO:
        sol = zerosound.solve_zerosound_2d(st)
    elif st.dimension is Dimension.ONE:
        sol = zerosound.solve_zerosound_1d(st)
    else:
        sol = zerosound.solve_zerosound_3d(cfg["theta_q"], st)
    vf = fermi_scales(p).v_f0
    status = "ok" if sol.converged and not sol.overdamped_flag else \
        ("overdamped" if sol.overdamped_flag else "no-mode")
    return {"t": st.t, "v0_over_vf": sol.v0_over_vf,
            "v0_m_per_s": sol.v0_over_vf * vf if sol.converged else float("nan"),
            "damping_over_qvf": sol.damping_over_qvf,
            "status": status}


def eval_coulomb(cfg):
    val = observables.coulomb_kappa_ratio_2d(cfg["rs"], cfg["temp"])
    return {"t": cfg["temp"], "kappa0_over_kappa": val,
            "kappa_over_kappa0": 1.0 / val, "status": "ok"}


def eval_multilayer_kappa(cfg):
    sysm = multilayer.MultilayerSystem(
        cfg["mass"], cfg["dipole"], cfg["density"], cfg["temp"],
        multilayer.LatticeSpec(v0=cfg["v0"], wavelength_nm=cfg["wavelength"]))
    bloch = multilayer.bloch_solve(sysm.spec)
    out = multilayer.multilayer_kappa(bloch, sysm.nred, sysm.t_r, sysm.vred)
    return {"t_2d": sysm.t_2d, "kappa_over_kappa0": out["kappa_ratio"],
            "kappa0_over_kappa": out["inv_ratio"],
            "band_jump": out["band_jump"],
            "status": "band-jump" if out["band_jump"] else "ok"}


def eval_multilayer_modes(cfg):
    sysm = multilayer.MultilayerSystem(
        cfg["mass"], cfg["dipole"], cfg["density"], cfg["temp"],
        multilayer.LatticeSpec(v0=cfg["v0"], wavelength_nm=cfg["wavelength"],
                               n_trunc=30, n_kz=64))
    bloch = multilayer.bloch_solve(sysm.spec)
    modes = multilayer.solve_modes_inplane(bloch, sysm.nred, sysm.t_r,
                                           sysm.vred)
    under = [m for m in modes if m["damping_over_omega"] < 0.1]
    best = min(under, key=lambda m: m["v0_over_vf"]) if under else None
    return {"t_2d": sysm.t_2d, "n_modes": len(under),
            "v0_over_vf": best["v0_over_vf"] if best else float("nan"),
            "damping_over_omega":
                best["damping_over_omega"] if best else float("nan"),
            "spe_flagged": best["spe_flagged"] if best else False,
            "status": "ok" if best else "no-mode"}


def eval_kohn(cfg):
    sysm = multilayer.MultilayerSystem(
        cfg["mass"], cfg["dipole"], cfg["density"], cfg["temp"],
        multilayer.LatticeSpec(v0=cfg["v0"], wavelength_nm=cfg["wavelength"],
                               n_trunc=30, n_kz=64))
    bloch = multilayer.bloch_solve(sysm.spec)
    out = multilayer.kohn_mode(bloch, sysm.nred, sysm.t_r, sysm.vred)
    return {"omega_over_omega_ho": out["omega_over_omega_ho"],
            "found": out["found"],
            "status": "ok" if out["found"] else "absent"}


_EVALUATORS = {
    "kappa": (eval_kappa,
              ["axis_value", "t", "kappa_over_kappa0", "kappa0_over_kappa",
               "kappa_si", "status"]),
    "effmass": (eval_effmass,
                ["axis_value", "t", "m_over_mstar_radial",
                 "m_over_mstar_angular", "status"]),
    "zerosound": (eval_zerosound,
                  ["axis_value", "t", "v0_over_vf", "v0_m_per_s",
                   "damping_over_qvf", "status"]),
    "coulomb": (eval_coulomb,
                ["axis_value", "t", "kappa0_over_kappa", "kappa_over_kappa0",
                 "status"]),
    "multilayer-kappa": (eval_multilayer_kappa,
                         ["axis_value", "t_2d", "kappa_over_kappa0",
                          "kappa0_over_kappa", "band_jump", "status"]),
    "multilayer-modes": (eval_multilayer_modes,
                         ["axis_value", "t_2d", "n_modes", "v0_over_vf",
                          "damping_over_omega", "spe_flagged", "status"]),
    "kohn": (eval_kohn,
             ["axis_value", "omega_over_omega_ho", "found", "status"]),
}


def _eval_one(args):
    name, cfg, axis, value = args
    fn, _ = _EVALUATORS[name]
    try:
        row = fn(_point_cfg(cfg, axis, value))
    except (DomainError, NumericsError) as exc:
        return {"status": f"error: {exc}"}
    return row


def run_sweep(name: str, cfg: dict, out_path) -> int:
    """Evaluate a sweep and emit CSV; returns the process exit code."""
    axis, grid = _parse_sweep(cfg["sweep"])
    fn, columns = _EVALUATORS[name]
    jobs = [(name, cfg, axis, v) for v in grid]
    workers = int(os.environ.get("DIPFERMI_WORKERS", "1"))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_eval_one, jobs))
    else:
        results = [_eval_one(j) for j in jobs]
    rows, failed = [], False
    for v, res in zip(grid, results):
        status = res.get("status", "error: empty")
        if status.startswith("error"):
            failed = True
        rows.append([v] + [res.get(c, float("nan"))
                           for c in columns[1:-1]] + [status])
    write_csv(out_path, {**cfg, "quantity": name, "axis": axis}, columns, rows)
    return 1 if failed else 0


def run_trap(cfg: dict, out_path) -> int:
    p = _params_from(cfg)
    prof = lda_trap.trap_profile(p, cfg["omega"], cfg["ntarget"])
    gauss = lda_trap.gaussian_reference(prof)
    columns = ["radius_um", "density", "kappa_over_kappa0", "t_local",
               "gaussian_reference", "status"]
    rows = [[r, n, k, t, g, "ok"] for r, n, k, t, g in
            zip(prof.radius_um, prof.density, prof.kappa_ratio,
                prof.t_local, gauss)]
    hdr = {**cfg, "quantity": "trap-profile",
           "particle_number": prof.particle_number}
    loc = lda_trap.hartree_locality_check(p, cfg["omega"])
    hdr["hartree_locality_ratio"] = loc["ratio"]
    write_csv(out_path, hdr, columns, rows)
    return 0


def run_selfcheck(tighten: float = 1.0) -> int:
    from . import selfcheck
    report = selfcheck.run(tighten=tighten)
    ok = True
    for item in report:
        ok &= item.passed
        margin = f"margin {item.margin:.2e}" if item.margin is not None else ""
        print(f"[{'PASS' if item.passed else 'FAIL'}] {item.name} {margin}")
    print(f"selfcheck: {'all passed' if ok else 'FAILURES PRESENT'}")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="dipfermi",
        description="finite-temperature dipolar Fermi gas numerics")
    sub = ap.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key=value config file")
    common.add_argument("--out", default="-", help="output CSV path")
    common.add_argument("--dim", type=int, choices=(1, 2, 3))
    common.add_argument("--density", type=float, help="cm^-dim")
    common.add_argument("--temp", type=float, help="nK")
    common.add_argument("--width", type=float, help="transverse width, nm")
    common.add_argument("--theta-e", type=float, help="field angle, rad")
    common.add_argument("--theta-q", type=float, help="propagation angle, rad")
    common.add_argument("--theta-k", type=float)
    common.add_argument("--mass", type=float, help="amu")
    common.add_argument("--dipole", type=float, help="Debye")
    common.add_argument("--tol", type=float, help="relative tolerance")
    common.add_argument("--sweep", help="axis:min:max:count:scale")
    for name in ("kappa", "effmass", "zerosound", "coulomb"):
        sp = sub.add_parser(name, parents=[common])
        if name == "coulomb":
            sp.add_argument("--rs", type=float)
    ml = sub.add_parser("multilayer", parents=[common])
    ml.add_argument("--quantity", choices=("kappa", "modes"), default="kappa")
    ml.add_argument("--v0", type=float, help="lattice depth, E_R")
    ml.add_argument("--wavelength", type=float, help="lattice period, nm")
    ko = sub.add_parser("kohn", parents=[common])
    ko.add_argument("--v0", type=float)
    ko.add_argument("--wavelength", type=float)
    tr = sub.add_parser("trap", parents=[common])
    tr.add_argument("--omega", type=float, help="trap frequency, rad/s")
    tr.add_argument("--ntarget", type=float, help="particle number")
    sc = sub.add_parser("selfcheck")
    sc.add_argument("--tighten", type=float, default=1.0,
                    help="tighten all tolerances by this factor")
    return ap


def resolve_config(args) -> dict:
    cfg = dict(_DEFAULTS)
    if getattr(args, "config", None):
        cfg.update(parse_config_file(args.config))
    for key in ("dim", "density", "temp", "width", "theta_e", "theta_q",
                "theta_k", "mass", "dipole", "tol", "sweep", "rs", "v0",
                "wavelength", "omega", "ntarget"):
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    return cfg


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "selfcheck":
        return run_selfcheck(args.tighten)
    try:
        cfg = resolve_config(args)
        if args.command == "trap":
            return run_trap(cfg, args.out)
        name = args.command
        if name == "multilayer":
            name = f"multilayer-{args.quantity}"
        if cfg.get("sweep"):
            return run_sweep(name, cfg, args.out)
        # single point: degenerate two-point sweep on temperature
        cfg["sweep"] = f"temp:{cfg['temp']}:{cfg['temp'] * (1 + 1e-9)}:2:linear"
        return run_sweep(name, cfg, args.out)
    except (DomainError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except NumericsError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
