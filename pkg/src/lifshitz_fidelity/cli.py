"""Command-line front end.

    lifshitz-fidelity <subcommand> [--config PATH] [--key value]...
                      [--out DIR] [--format csv|json] [--workers N]

Subcommands: boundary, bulk, match, sweep, verify. Configuration is a flat
key = value text file; command-line flags win over the file. Every artifact
echoes the effective configuration in its header, so re-running from the
echoed block reproduces the artifact byte for byte.

Exit codes: 0 success, 1 configuration/validation failure, 2 numerical
failure (a diagnostic names the failing operation).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import boundary, duality, geometry, verification, volume
from .errors import LifshitzFidelityError
from .params import BosonGasParams, BulkParams, QuadratureSpec

SUBCOMMANDS = ("boundary", "bulk", "match", "sweep", "verify")

BOUNDARY_KEYS = ("N", "q", "m", "H", "beta", "k")
BULK_KEYS = ("L", "xi", "Qt", "V0", "z", "rp", "r0", "G", "R", "gamma", "lam")
QUAD_KEYS = ("panels", "levels", "tolerance", "halfwidth", "endpoint_exponent", "scheme")
SWEEP_KEYS = ("axis", "from", "to", "points", "spacing")
RUN_KEYS = ("r_inf",)

INT_KEYS = {"N", "points", "panels", "levels", "endpoint_exponent", "workers"}
STR_KEYS = {"axis", "spacing", "scheme", "format"}

#: CLI spellings mapped onto canonical field names.
KEY_ALIASES = {
    "Q": "Qt", "Q~": "Qt", "Q̃": "Qt", "Qtilde": "Qt",
    "β": "beta", "ξ": "xi", "Λ": "Lambda",
    "V₀0": "V0", "V₀": "V0", "V0~": "V0", "Vt0": "V0",
    "r+": "rp", "r₊": "rp", "λ": "lam", "γ": "gamma",
}

BOUNDARY_DEFAULTS = {"N": 1, "q": 1.0, "m": 1.0, "H": 1.0, "beta": 0.0, "k": 0.0}
BULK_DEFAULTS = {
    "L": 1.0, "xi": -1.0, "Qt": 1.0, "V0": 0.0, "z": 4.0,
    "rp": 1.0, "r0": 1.0, "G": 1.0, "R": 1.0, "gamma": 0.0, "lam": 0.0,
}
QUAD_DEFAULTS = {
    "panels": 2048, "levels": 2, "tolerance": 1e-10,
    "halfwidth": 10.0, "endpoint_exponent": 2, "scheme": "simpson",
}

SWEEPABLE = set(BOUNDARY_KEYS + BULK_KEYS) - {"N"}


class _UsageError(Exception):
    pass


class _NumericalFailure(Exception):
    def __init__(self, op, cause):
        super().__init__(f"{op}: {cause}")
        self.op = op
        self.cause = cause


def _call(op, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except LifshitzFidelityError as exc:
        raise _NumericalFailure(op, exc) from exc


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


# ---------- configuration ----------

def _canonical_key(raw: str) -> str:
    key = raw.lstrip("-").strip()
    return KEY_ALIASES.get(key, key)


def _coerce(key: str, raw: str):
    if key in STR_KEYS:
        return raw
    try:
        if key in INT_KEYS:
            return int(raw)
        return float(raw)
    except ValueError:
        raise _UsageError(f"cannot parse value {raw!r} for key {key!r}")


def parse_config_file(path) -> dict:
    """Flat key = value lines; '#' starts a comment."""
    out = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise _UsageError(f"{path}:{lineno}: expected 'key = value'")
        key, value = stripped.split("=", 1)
        out[_canonical_key(key)] = value.strip()
    return out


def _parse_extras(tokens) -> dict:
    out = {}
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if not tok.startswith("--"):
            raise _UsageError(f"unexpected argument {tok!r}")
        if "=" in tok:
            key, value = tok.split("=", 1)
            i += 1
        else:
            if i + 1 >= len(tokens):
                raise _UsageError(f"flag {tok!r} is missing a value")
            key, value = tok, tokens[i + 1]
            i += 2
        out[_canonical_key(key)] = value
    return out


def _allowed_keys(subcommand: str) -> set:
    if subcommand == "boundary":
        return set(BOUNDARY_KEYS) | set(QUAD_KEYS)
    if subcommand == "bulk":
        return set(BULK_KEYS) | set(QUAD_KEYS) | set(RUN_KEYS)
    if subcommand == "match":
        return set(BULK_KEYS)
    if subcommand == "sweep":
        return set(BOUNDARY_KEYS) | set(BULK_KEYS) | set(QUAD_KEYS) | set(RUN_KEYS) | set(SWEEP_KEYS)
    return set()


def _effective_config(subcommand: str, file_cfg: dict, flag_cfg: dict, ns) -> dict:
    allowed = _allowed_keys(subcommand)
    cfg = {}
    if subcommand in ("boundary", "sweep"):
        cfg.update(BOUNDARY_DEFAULTS)
    if subcommand in ("bulk", "match", "sweep"):
        cfg.update(BULK_DEFAULTS)
    if subcommand in ("boundary", "bulk", "sweep"):
        cfg.update(QUAD_DEFAULTS)

    for source in (file_cfg, flag_cfg):
        for key, raw in source.items():
            if key == "format":
                cfg["format"] = raw
                continue
            if key not in allowed:
                raise _UsageError(f"key {key!r} is not used by subcommand {subcommand!r}")
            cfg[key] = _coerce(key, raw)

    # sweep flags win over config-file sweep keys
    if subcommand == "sweep":
        if ns.axis is not None:
            cfg["axis"] = ns.axis
        if ns.sweep_from is not None:
            cfg["from"] = ns.sweep_from
        if ns.sweep_to is not None:
            cfg["to"] = ns.sweep_to
        if ns.points is not None:
            cfg["points"] = ns.points
        if ns.log:
            cfg["spacing"] = "log"
        elif ns.linear:
            cfg["spacing"] = "linear"
        cfg.setdefault("spacing", "linear")

    cfg.setdefault("format", ns.format or "json")
    if cfg["format"] not in ("csv", "json"):
        raise _UsageError(f"format must be csv or json, got {cfg['format']!r}")
    return cfg


def _boson_params(cfg) -> BosonGasParams:
    return BosonGasParams(**{k: cfg[k] for k in BOUNDARY_KEYS})


def _bulk_params(cfg) -> BulkParams:
    return BulkParams(**{k: cfg[k] for k in BULK_KEYS})


def _quad_spec(cfg) -> QuadratureSpec:
    return QuadratureSpec(
        scheme=cfg["scheme"], panels=cfg["panels"], levels=cfg["levels"],
        tolerance=cfg["tolerance"], halfwidth=cfg["halfwidth"],
        endpoint_exponent=cfg["endpoint_exponent"],
    )


# ---------- output ----------

def _fmt_csv(v) -> str:
    if isinstance(v, float):
        return format(v, ".12g")
    return str(v)


def _fmt_cfg(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _config_lines(cfg: dict) -> list:
    return [f"{k} = {_fmt_cfg(v)}" for k, v in sorted(cfg.items())]


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def _write_json(path: Path, doc: dict):
    with open(path, "w", newline="\n") as fh:
        json.dump(_jsonable(doc), fh, indent=2, sort_keys=True)
        fh.write("\n")


def _write_csv(path: Path, cfg: dict, header, rows):
    with open(path, "w", newline="\n") as fh:
        for line in _config_lines(cfg):
            fh.write(f"# {line}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt_csv(v) for v in row) + "\n")


def _emit(outdir: Path, name: str, cfg: dict, results: dict, flags=(), invariants=()):
    doc = {
        "config": cfg,
        "results": results,
        "flags": list(flags),
        "invariants": [
            {"name": c.name, "passed": c.passed, "detail": c.detail} for c in invariants
        ],
    }
    _write_json(outdir / f"{name}.json", doc)
    if cfg.get("format") == "csv":
        keys = sorted(results)
        _write_csv(outdir / f"{name}.csv", cfg, keys, [[results[k] for k in keys]])
    for key in sorted(results):
        print(f"{key} = {_fmt_csv(results[key])}")
    for flag in flags:
        print(f"flag: {flag}")


# ---------- subcommands ----------

def _run_boundary_point(cfg, spec):
    p = _boson_params(cfg)
    fit = _call("xi_f_from_fit", boundary.xi_f_from_fit, p, None, spec)
    exact = _call("xi_f_analytic", boundary.xi_f_analytic, p)
    return {
        "xi_f_analytic": exact,
        "xi_f_fitted": fit.c_sq,
        "c_amp": fit.c_amp,
        "fit_residual": fit.residual,
        "residual": abs(fit.c_sq - exact) / exact,
    }


def _series_finite(p):
    coeffs = geometry.series_coeffs_z4(p)
    return volume.series_finite_part(coeffs.b1, coeffs.b_minus2, p.rp)


def _run_bulk_point(cfg, spec):
    p = _bulk_params(cfg)
    r_inf = cfg.get("r_inf", 100.0 * p.rp)
    eps = p.rp / r_inf
    v_exact = _call("volume_exact", volume.volume_exact, p, r_inf, spec)
    v_series = _call("volume_series_z4", volume.volume_series_z4, p, eps)
    xi_holo = _call("xi_f_holo_z4", volume.xi_f_holo_z4, p)
    finite = _call("series_finite_part", _series_finite, p)
    return {
        "v_exact": v_exact.value,
        "v_exact_error": v_exact.error_estimate,
        "v_series": v_series.value,
        "v_series_finite": finite,
        "xi_f_holo": xi_holo,
    }


def _run_match_point(cfg):
    p = _bulk_params(cfg)
    report = _call("verify_duality", duality.verify_duality, p)
    results = {
        "matched_N": report.matched_N,
        "matched_beta2_over_q": report.matched_beta2_over_q,
        "xi_f_bulk": report.xi_f_bulk,
        "xi_f_boundary": report.xi_f_boundary,
        "residual": report.residual,
    }
    return results, report.flags


def _cmd_boundary(cfg, outdir):
    results = _run_boundary_point(cfg, _quad_spec(cfg))
    _emit(outdir, "boundary", cfg, results)
    return 0


def _cmd_bulk(cfg, outdir):
    results = _run_bulk_point(cfg, _quad_spec(cfg))
    _emit(outdir, "bulk", cfg, results)
    return 0


def _cmd_match(cfg, outdir):
    results, flags = _run_match_point(cfg)
    _emit(outdir, "match", cfg, results, flags=flags)
    return 0


def _sweep_values(cfg):
    lo, hi, n = cfg["from"], cfg["to"], cfg["points"]
    if n < 2:
        raise _UsageError("sweep needs points >= 2")
    if lo == hi:
        raise _UsageError("sweep range is degenerate")
    if cfg["spacing"] == "log":
        if lo <= 0 or hi <= 0:
            raise _UsageError("log spacing needs positive endpoints")
        return np.geomspace(lo, hi, n)
    return np.linspace(lo, hi, n)


def _cmd_sweep(cfg, outdir, workers):
    for key in ("axis", "from", "to", "points"):
        if key not in cfg:
            raise _UsageError(f"sweep requires {key!r}")
    axis = _canonical_key(cfg["axis"])
    if axis not in SWEEPABLE:
        raise _UsageError(f"cannot sweep {cfg['axis']!r}; valid axes: {sorted(SWEEPABLE)}")
    cfg["axis"] = axis
    values = _sweep_values(cfg)
    spec = _quad_spec(cfg)
    is_boundary = axis in BOUNDARY_KEYS

    def eval_point(value):
        point_cfg = dict(cfg)
        point_cfg[axis] = float(value)
        if is_boundary:
            results = _run_boundary_point(point_cfg, spec)
        else:
            results = _run_bulk_point(point_cfg, spec)
            match_results, _ = _run_match_point(point_cfg)
            results["matched_N"] = match_results["matched_N"]
            results["matched_beta2_over_q"] = match_results["matched_beta2_over_q"]
            results["duality_residual"] = match_results["residual"]
        return results

    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows_dicts = list(pool.map(eval_point, values))

    columns = [axis] + sorted(rows_dicts[0])
    rows = [[float(v)] + [d[k] for k in columns[1:]] for v, d in zip(values, rows_dicts)]
    _write_csv(outdir / "sweep.csv", cfg, columns, rows)
    for col_idx, col in enumerate(columns[1:], start=1):
        with open(outdir / f"plot_{col}.dat", "w", newline="\n") as fh:
            for row in rows:
                fh.write(f"{_fmt_csv(row[0])} {_fmt_csv(row[col_idx])}\n")
    doc_results = {"rows": len(rows), "columns": columns}
    _write_json(outdir / "sweep.json", {"config": cfg, "results": doc_results,
                                        "flags": [], "invariants": []})
    print(f"sweep: {len(rows)} points over {axis} -> {outdir / 'sweep.csv'}")
    return 0


def _cmd_verify(cfg, outdir):
    checks = verification.run_all()
    width = max(len(c.name) for c in checks)
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        print(f"{status}  {c.name:<{width}}  {c.detail}")
    n_fail = sum(not c.passed for c in checks)
    print(f"{len(checks) - n_fail}/{len(checks)} invariant checks passed")
    _emit(outdir, "verify", cfg, {"checks": len(checks), "failures": n_fail},
          invariants=checks)
    return 0 if n_fail == 0 else 1


# ---------- entry point ----------

def main(argv=None) -> int:
    parser = _Parser(prog="lifshitz-fidelity", allow_abbrev=False)
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("--config", default=None)
    parser.add_argument("--out", default=".")
    parser.add_argument("--format", choices=("csv", "json"), default=None)
    parser.add_argument("--workers", type=int, default=None)
    parser.add_argument("--axis", default=None)
    parser.add_argument("--from", dest="sweep_from", type=float, default=None)
    parser.add_argument("--to", dest="sweep_to", type=float, default=None)
    parser.add_argument("--points", type=int, default=None)
    parser.add_argument("--log", action="store_true")
    parser.add_argument("--linear", action="store_true")

    try:
        ns, extra = parser.parse_known_args(argv)
        overrides = _parse_extras(extra)
        file_cfg = parse_config_file(ns.config) if ns.config else {}
        cfg = _effective_config(ns.subcommand, file_cfg, overrides, ns)
        outdir = Path(ns.out)
        outdir.mkdir(parents=True, exist_ok=True)
        workers = ns.workers or int(os.environ.get("LF_WORKERS", "4"))
        if workers < 1:
            raise _UsageError("workers must be >= 1")
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    try:
        if ns.subcommand == "boundary":
            return _cmd_boundary(cfg, outdir)
        if ns.subcommand == "bulk":
            return _cmd_bulk(cfg, outdir)
        if ns.subcommand == "match":
            return _cmd_match(cfg, outdir)
        if ns.subcommand == "sweep":
            return _cmd_sweep(cfg, outdir, workers)
        return _cmd_verify(cfg, outdir)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except _NumericalFailure as exc:
        print(f"numerical failure in {exc.op}: {exc.cause}", file=sys.stderr)
        return 2
    except LifshitzFidelityError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


def entrypoint():
    sys.exit(main())
