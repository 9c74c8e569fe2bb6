"""Command-line front-end.

Subcommands
-----------
classify        reduce a structure matrix to canonical form
solve           classify, then solve both subsystems and check them
verify          assemble the metric and run every curvature check
catalog         list the ten metric families (or one, with --family)
sweep           verify a family over a parameter grid, emit a CSV table
discrepancies   print the display-formula discrepancy ledger

Reports are JSON (stable key order, plain types, round-trippable); sweep
tables are CSV.  Exit codes: 0 all checks pass, 1 numerical failure or
math-layer error, 2 malformed configuration.  The environment variable
STACKEL_SEED seeds any randomised sampling in the test suite; the CLI
itself is deterministic.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import assembly, discrepancies
from .canonical import admissible_eta0, classify
from .curvature import (
    einstein_residual,
    fd_jet_provider,
    ricci_kappa,
    ricci_mixed_from_jet,
)
from .errors import ConfigError, StackelError
from .numerics import Stencil, TauGrid, central_diff
from .solutions import (
    BRANCH_TABLE,
    first_integral_check,
    make_phi,
    phi_residuals,
    solve_eta,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2

# All default tolerances in one place. "analytic" guards the Einstein
# residual with analytic jets, "fd" the finite-difference fallback.
TOLERANCES = {
    "analytic": 1e-7,
    "fd": 1e-4,
    "dual_path": 1e-7,
    "kappa": 1e-8,
    "det_identity": 1e-9,
    "gamma": 1e-8,
    "phi": 1e-9,
    "first_integral": 1e-9,
    "eta_subsystem_fd": 1e-4,
    "pattern": 1e-9,
}

SWEEP_MAX_SAMPLES = 10_000


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _parse_matrix(text):
    try:
        data = json.loads(text)
        m = np.array(data, dtype=float)
    except (json.JSONDecodeError, TypeError, ValueError) as exc:
        raise ConfigError(f"--c must be a JSON 3x3 array of numbers: {exc}", field="c")
    if m.shape != (3, 3) or not np.all(np.isfinite(m)):
        raise ConfigError(f"--c must be a finite 3x3 matrix, got shape {m.shape}", field="c")
    return m


def _parse_params(text, lists=False):
    out = {}
    if not text:
        return out
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" not in chunk:
            raise ConfigError(f"--params entries must look like name=value, got {chunk!r}",
                              field="params")
        key, _, val = chunk.partition("=")
        key = key.strip()
        try:
            if lists:
                out[key] = [float(v) for v in val.split("|") if v.strip() != ""]
            else:
                out[key] = float(val)
        except ValueError as exc:
            raise ConfigError(f"bad value for parameter {key!r}: {exc}", field="params")
    return out


def _parse_signs(text):
    try:
        signs = tuple(int(s) for s in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"--signs must be three comma-separated +-1: {exc}", field="signs")
    if len(signs) != 3 or any(s not in (-1, 1) for s in signs):
        raise ConfigError(f"--signs must be three values from {{-1,+1}}, got {signs}",
                          field="signs")
    return signs


def _parse_tau(text):
    try:
        a, _, b = text.partition(":")
        lo, hi = float(a), float(b)
    except ValueError as exc:
        raise ConfigError(f"--tau must look like a:b, got {text!r}: {exc}", field="tau")
    if not lo < hi:
        raise ConfigError(f"--tau needs a < b, got {text!r}", field="tau")
    return (lo, hi)


@dataclass
class JobConfig:
    """Validated job description; exactly the fields the command needs."""

    command: str
    c: np.ndarray | None = None
    family_id: int | None = None
    params: dict = field(default_factory=dict)
    lam: float = 0.0
    xi: int | None = None
    signs: tuple = (1, 1, 1)
    tau_range: tuple | None = None
    points: int = 50
    tol: float | None = None
    fd: bool = False
    out: str | None = None
    fmt: str = "report"

    @classmethod
    def build(cls, args):
        command = args.command
        cfg = cls(command=command)
        cfg.fmt = getattr(args, "format", "report")
        cfg.out = getattr(args, "out", None)
        if getattr(args, "c", None) is not None:
            cfg.c = _parse_matrix(args.c)
        if getattr(args, "family", None) is not None:
            cfg.family_id = int(args.family)
            if not 1 <= cfg.family_id <= 10:
                raise ConfigError(f"--family must be 1..10, got {cfg.family_id}",
                                  field="family")
        if getattr(args, "params", None):
            cfg.params = _parse_params(args.params, lists=(command == "sweep"))
        if getattr(args, "lam", None) is not None:
            cfg.lam = float(args.lam)
        if getattr(args, "xi", None) is not None:
            cfg.xi = int(args.xi)
            if cfg.xi not in (-1, 1):
                raise ConfigError(f"--xi must be +-1, got {cfg.xi}", field="xi")
        if getattr(args, "signs", None):
            cfg.signs = _parse_signs(args.signs)
        if getattr(args, "tau", None):
            cfg.tau_range = _parse_tau(args.tau)
        if getattr(args, "points", None) is not None:
            cfg.points = int(args.points)
            if cfg.points < 10:
                raise ConfigError(f"--points must be at least 10, got {cfg.points}",
                                  field="points")
        if getattr(args, "tol", None) is not None:
            cfg.tol = float(args.tol)
            if not cfg.tol > 0:
                raise ConfigError(f"--tol must be positive, got {cfg.tol}", field="tol")
        cfg.fd = bool(getattr(args, "fd", False))

        if command == "classify" and cfg.c is None:
            raise ConfigError("classify needs --c", field="c")
        if command in ("solve", "verify"):
            if (cfg.c is None) == (cfg.family_id is None):
                raise ConfigError(f"{command} needs exactly one of --c or --family",
                                  field="c/family")
        if command == "sweep" and cfg.family_id is None:
            raise ConfigError("sweep needs --family", field="family")
        if cfg.fmt == "csv" and command != "sweep":
            raise ConfigError("--format csv is only available for sweep", field="format")
        return cfg

    def echo(self):
        d = {"command": self.command}
        if self.c is not None:
            d["c"] = self.c.tolist()
        if self.family_id is not None:
            d["family"] = self.family_id
        if self.params:
            d["params"] = self.params
        d["lambda"] = self.lam
        if self.xi is not None:
            d["xi"] = self.xi
        d["signs"] = list(self.signs)
        if self.tau_range is not None:
            d["tau"] = list(self.tau_range)
        d["points"] = self.points
        if self.tol is not None:
            d["tol"] = self.tol
        d["fd"] = self.fd
        return d


def build_parser():
    ap = argparse.ArgumentParser(
        prog="stackel",
        description="Canonical classification and curvature verification of "
                    "single-variable (Bianchi-I type) Einstein-space metrics.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, c=False, family=False, solveish=False, grid=False, out=True):
        if c:
            p.add_argument("--c", help="structure matrix as a JSON 3x3 array")
        if family:
            p.add_argument("--family", type=int, help="catalog family id (1..10)")
        if solveish:
            p.add_argument("--params", help="family parameters, name=value[,name=value...]")
            p.add_argument("--lambda", dest="lam", type=float, default=0.0,
                           help="constant lam fixing the cosmological term (default 0)")
            p.add_argument("--xi", type=int, help="branch sign xi (+1 or -1)")
            p.add_argument("--signs", help="sign factors e1,e2,e3 (default 1,1,1)")
        if grid:
            p.add_argument("--tau", help="verification window a:b (default: branch domain)")
            p.add_argument("--points", type=int, default=50, help="grid points (default 50)")
            p.add_argument("--tol", type=float, help="override the residual tolerance")
            p.add_argument("--fd", action="store_true",
                           help="build metric jets by finite differences instead of "
                                "analytic derivatives (looser tolerance tier)")
        if out:
            p.add_argument("--out", help="also write the report to this path")
            p.add_argument("--format", choices=("report", "csv"), default=None,
                           help="output format (csv only for sweep)")

    common(sub.add_parser("classify", help="canonical form of a structure matrix"), c=True)
    common(sub.add_parser("solve", help="classify and solve both subsystems"),
           c=True, family=True, solveish=True, grid=True)
    common(sub.add_parser("verify", help="assemble the metric and verify curvature"),
           c=True, family=True, solveish=True, grid=True)
    common(sub.add_parser("catalog", help="list the metric families"), family=True)
    common(sub.add_parser("sweep", help="verify a family over a parameter grid"),
           family=True, solveish=True, grid=True)
    common(sub.add_parser("discrepancies", help="print the display discrepancy ledger"))
    return ap


# ---------------------------------------------------------------------------
# shared pipeline pieces
# ---------------------------------------------------------------------------

def _classification_dict(cls_obj, pattern_dev):
    return {
        "variant": cls_obj.variant,
        "params": dict(cls_obj.params),
        "epsilon": cls_obj.epsilon,
        "p": cls_obj.p,
        "trace": cls_obj.trace,
        "transform": cls_obj.transform.tolist(),
        "canonical": cls_obj.canonical.tolist(),
        "pattern_dev": pattern_dev,
    }


def _classify_c(cfg):
    cls_obj = classify(cfg.c)
    sinv = np.linalg.inv(cls_obj.transform)
    dev = float(np.abs(cls_obj.transform @ cfg.c @ sinv - cls_obj.canonical).max())
    return cls_obj, dev


def _pick_xi(cfg, epsilon):
    admissible = sorted(xi for (eps, xi) in BRANCH_TABLE if eps == epsilon)
    if cfg.xi is None:
        return admissible[-1]  # prefer +1 where both signs are admissible
    if cfg.xi not in admissible:
        raise ConfigError(
            f"xi = {cfg.xi} is not admissible for epsilon = {epsilon} "
            f"(admissible: {admissible})", field="xi")
    return cfg.xi


def _build_metric(cfg):
    """Assembled metric from either a family id or a raw structure matrix."""
    if cfg.family_id is not None:
        spec = assembly.family_spec(cfg.family_id)
        if cfg.xi is not None and cfg.xi != spec.xi:
            raise ConfigError(
                f"family {spec.id} has xi = {spec.xi}; drop --xi or match it",
                field="xi")
        params = cfg.params or dict(spec.samples[0][0])
        m = assembly.catalog(cfg.family_id, params, lam=cfg.lam, signs=cfg.signs)
        return m, m.cls, 0.0
    cls_obj, pattern_dev = _classify_c(cfg)
    xi = _pick_xi(cfg, cls_obj.epsilon)
    eta = solve_eta(cls_obj, cfg.signs)
    phi = make_phi(cls_obj.epsilon, xi, cls_obj.p if cls_obj.epsilon != 0 else None)
    m = assembly.assemble(cls_obj, eta, phi, lam=cfg.lam)
    return m, cls_obj, pattern_dev


def _grid_for(cfg, m):
    lo, hi = cfg.tau_range if cfg.tau_range is not None else m.domain
    excluded = tuple(m.phi.singularities(lo - 1.0, hi + 1.0))
    return TauGrid.from_range(lo, hi, cfg.points, excluded=excluded)


def _dual_path_dev(m, grid, stride=5):
    dev = 0.0
    for tau in grid.points[::stride]:
        tau = float(tau)
        jet = m.jet(tau)
        g, dg, ddg = m.spatial_jet(tau)
        r00, rab = ricci_kappa(g, dg, ddg, math.sqrt(m.ell2(tau)), m.epsilon_time)
        rg = ricci_mixed_from_jet(jet)
        dev = max(dev,
                  abs(rg[0, 0] - r00),
                  float(np.abs(rg[1:, 1:] - rab).max()),
                  float(np.abs(rg[0, 1:]).max()),
                  float(np.abs(rg[1:, 0]).max()))
    return dev


def _check(name, value, tolerance):
    return {"name": name, "value": value, "tolerance": tolerance,
            "pass": bool(value < tolerance)}


def _verdict(checks):
    return "pass" if all(c["pass"] for c in checks) else "fail"


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def run_classify(cfg):
    t0 = time.perf_counter()
    cls_obj, pattern_dev = _classify_c(cfg)
    eta0 = admissible_eta0(cfg.c)
    checks = [
        _check("canonical_pattern_dev", pattern_dev, TOLERANCES["pattern"]),
        {"name": "admissible_eta0_exists", "value": eta0 is not None,
         "tolerance": True, "pass": eta0 is not None},
    ]
    report = {
        "command": "classify",
        "variant": cls_obj.variant,
        "epsilon": cls_obj.epsilon,
        "p": cls_obj.p,
        "lambda_cosmo": None,
        "residual_max": None,
        "ricci_scalar_dev": None,
        "verdict": _verdict(checks),
        "classification": _classification_dict(cls_obj, pattern_dev),
        "checks": checks,
        "config": cfg.echo(),
        "wall_time_s": time.perf_counter() - t0,
    }
    return report


def run_solve(cfg):
    t0 = time.perf_counter()
    m, cls_obj, pattern_dev = _build_metric(cfg)
    grid = _grid_for(cfg, m)

    st = Stencil()
    eta_dev = 0.0
    for tau in grid.points[:: max(1, len(grid) // 8)]:
        fd = central_diff(m.eta.eta, float(tau), st, order=1)
        eta_dev = max(eta_dev, float(np.abs(fd - m.eta.deta(float(tau))).max()))
    det_dev = 0.0
    for tau in grid.points[:: max(1, len(grid) // 8)]:
        det_dev = max(det_dev, abs(float(np.linalg.det(m.eta.eta(float(tau))))
                                   - m.eta.det_eta(float(tau))))
    r1, r2 = phi_residuals(m.phi, m.eta.C, grid)
    fic = first_integral_check(m.phi, grid)

    checks = [
        _check("eta_subsystem_fd_dev", eta_dev, TOLERANCES["eta_subsystem_fd"]),
        _check("eta_det_formula_dev", det_dev, TOLERANCES["det_identity"]),
        _check("phi_residual_system", r1, TOLERANCES["phi"]),
        _check("phi_residual_branch", r2, TOLERANCES["phi"]),
        _check("phi_first_integral", fic, TOLERANCES["first_integral"]),
    ]
    report = {
        "command": "solve",
        "variant": cls_obj.variant,
        "epsilon": cls_obj.epsilon,
        "p": cls_obj.p,
        "lambda_cosmo": m.lambda_cosmo,
        "residual_max": None,
        "ricci_scalar_dev": None,
        "verdict": _verdict(checks),
        "classification": _classification_dict(cls_obj, pattern_dev),
        "solution": {
            "branch": m.phi.branch,
            "xi": m.cosmo.xi,
            "epsilon_time": m.epsilon_time,
            "signs": list(m.eta.signs),
            "domain": list(m.domain),
            "singularities": m.phi.singularities(m.domain[0] - 1.0, m.domain[1] + 1.0),
        },
        "checks": checks,
        "config": cfg.echo(),
        "wall_time_s": time.perf_counter() - t0,
    }
    return report


def run_verify(cfg):
    t0 = time.perf_counter()
    m, cls_obj, pattern_dev = _build_metric(cfg)
    grid = _grid_for(cfg, m)

    if cfg.fd:
        provider = fd_jet_provider(lambda tau: m.jet(tau).g, m.epsilon_time)
        res_tol = cfg.tol if cfg.tol is not None else TOLERANCES["fd"]
    else:
        provider = m.jet
        res_tol = cfg.tol if cfg.tol is not None else TOLERANCES["analytic"]
    rep = einstein_residual(provider, m.lambda_cosmo, grid)
    dual = _dual_path_dev(m, grid)
    kdev = assembly.kappa_consistency(m, grid)
    ddev = assembly.det_identity_dev(m, grid)
    gdd, gsys = assembly.gamma_residuals(m, grid)
    r1, r2 = phi_residuals(m.phi, m.eta.C, grid)
    fic = first_integral_check(m.phi, grid)

    checks = [
        _check("residual_max", rep.global_max, res_tol),
        _check("ricci_scalar_dev", rep.ricci_scalar_dev, res_tol),
        _check("dual_path_dev", dual, TOLERANCES["dual_path"]),
        _check("kappa_consistency", kdev, TOLERANCES["kappa"]),
        _check("det_identity_dev", ddev, TOLERANCES["det_identity"]),
        _check("gamma_dd_residual", gdd, TOLERANCES["gamma"]),
        _check("gamma_system_residual", gsys, TOLERANCES["gamma"]),
        _check("phi_residual_system", r1, TOLERANCES["phi"]),
        _check("phi_residual_branch", r2, TOLERANCES["phi"]),
        _check("phi_first_integral", fic, TOLERANCES["first_integral"]),
    ]
    report = {
        "command": "verify",
        "variant": cls_obj.variant,
        "epsilon": cls_obj.epsilon,
        "p": cls_obj.p,
        "lambda_cosmo": m.lambda_cosmo,
        "residual_max": rep.global_max,
        "ricci_scalar_dev": rep.ricci_scalar_dev,
        "verdict": _verdict(checks),
        "classification": _classification_dict(cls_obj, pattern_dev),
        "cosmology": {
            "epsilon_time": m.epsilon_time,
            "xi": m.cosmo.xi,
            "lambda": m.cosmo.lam,
            "lambda_cosmo": m.lambda_cosmo,
        },
        "residual": {
            "jets": "finite-difference" if cfg.fd else "analytic",
            "grid": grid.points.tolist(),
            "per_point_max": rep.per_point_max.tolist(),
            "failures": list(rep.failures),
        },
        "checks": checks,
        "discrepancy_notes": list(m.display_notes),
        "config": cfg.echo(),
        "wall_time_s": time.perf_counter() - t0,
    }
    return report


def run_catalog(cfg):
    if cfg.family_id is not None:
        spec = assembly.family_spec(cfg.family_id)
        d = spec.describe()
        d["samples"] = [
            {"params": params, "lambda": lam, "signs": list(signs)}
            for (params, lam, signs) in spec.samples
        ]
        return {"command": "catalog", "family": d, "verdict": "pass"}
    return {
        "command": "catalog",
        "families": [spec.describe() for spec in assembly.list_families()],
        "verdict": "pass",
    }


def run_discrepancies(cfg):
    return {
        "command": "discrepancies",
        "entries": discrepancies.as_dicts(),
        "verdict": "pass",
    }


def run_sweep(cfg):
    """Cartesian product over list-valued params; one CSV row per sample."""
    spec = assembly.family_spec(cfg.family_id)
    names = list(spec.param_names)
    missing = [n for n in names if n not in cfg.params]
    if missing:
        raise ConfigError(f"sweep over family {spec.id} needs values for {missing}",
                          field="params")
    value_lists = [cfg.params[n] for n in names]
    combos = list(itertools.product(*value_lists))
    if len(combos) > SWEEP_MAX_SAMPLES:
        raise ConfigError(
            f"sweep would run {len(combos)} samples (cap {SWEEP_MAX_SAMPLES})",
            field="params")

    header = (["family"] + names
              + ["lambda", "signs", "epsilon", "p", "lambda_cosmo",
                 "residual_max", "verdict", "error"])
    rows = []
    worst = None
    for combo in combos:
        params = dict(zip(names, combo))
        row = {"family": spec.id, **params, "lambda": cfg.lam,
               "signs": " ".join(str(s) for s in cfg.signs),
               "epsilon": "", "p": "", "lambda_cosmo": "",
               "residual_max": "", "verdict": "", "error": ""}
        try:
            m = assembly.catalog(spec.id, params, lam=cfg.lam, signs=cfg.signs)
            grid = _grid_for(cfg, m)
            rep = einstein_residual(m.jet, m.lambda_cosmo, grid)
            tol = cfg.tol if cfg.tol is not None else TOLERANCES["analytic"]
            row.update(epsilon=m.cls.epsilon, p=m.cls.p, lambda_cosmo=m.lambda_cosmo,
                       residual_max=rep.global_max,
                       verdict="pass" if rep.global_max < tol else "fail")
            if worst is None or (rep.global_max > worst["residual_max"]):
                worst = dict(row)
        except StackelError as exc:
            row.update(verdict="error", error=f"{type(exc).__name__}: {exc}")
        rows.append(row)

    if worst is not None:
        summary = dict(worst)
        summary["family"] = "worst"
        rows.append(summary)
    ok = all(r["verdict"] == "pass" for r in rows) if rows else True
    return {"header": header, "rows": rows, "ok": ok}


# ---------------------------------------------------------------------------
# output and entry point
# ---------------------------------------------------------------------------

def _sweep_csv(table):
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=table["header"])
    w.writeheader()
    for row in table["rows"]:
        w.writerow(row)
    return buf.getvalue()


def _emit(text, out_path):
    sys.stdout.write(text)
    if not text.endswith("\n"):
        sys.stdout.write("\n")
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = JobConfig.build(args)
    except ConfigError as exc:
        print(f"config error ({exc.field}): {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        if cfg.command == "classify":
            report = run_classify(cfg)
        elif cfg.command == "solve":
            report = run_solve(cfg)
        elif cfg.command == "verify":
            report = run_verify(cfg)
        elif cfg.command == "catalog":
            report = run_catalog(cfg)
        elif cfg.command == "discrepancies":
            report = run_discrepancies(cfg)
        else:  # sweep
            table = run_sweep(cfg)
            if cfg.fmt == "report":
                text = json.dumps({"command": "sweep", "rows": table["rows"],
                                   "verdict": "pass" if table["ok"] else "fail"},
                                  indent=2)
            else:
                text = _sweep_csv(table)
            _emit(text, cfg.out)
            return EXIT_PASS if table["ok"] else EXIT_FAIL
    except ConfigError as exc:
        print(f"config error ({exc.field}): {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except StackelError as exc:
        err = {
            "command": cfg.command,
            "verdict": "error",
            "error": f"{type(exc).__module__}.{type(exc).__name__}: {exc}",
        }
        _emit(json.dumps(err, indent=2), cfg.out)
        return EXIT_FAIL

    _emit(json.dumps(report, indent=2), cfg.out)
    return EXIT_PASS if report.get("verdict") == "pass" else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
