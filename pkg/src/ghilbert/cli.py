"""Command-line front end.

Exit codes: 0 success, 1 bound violated (``bounds``/``sweep --mode bounds``),
2 invalid parameters (including a in {0, -1, -2, ...}), 3 unreadable or
malformed vector input.

CSV sweep header (``--mode bounds``)::

    m,n,a,h_observed,h_bound,h_holds,z_observed,z_bound,z_holds,holds
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
import warnings
from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np

from . import core, infinite, ops, spectral

SEED_ENV = "GHILBERT_SEED"
SWEEP_BOUNDS_HEADER = [
    "m", "n", "a", "h_observed", "h_bound", "h_holds", "z_observed", "z_bound", "z_holds", "holds",
]
SWEEP_PD_HEADER = ["m", "n", "a", "trials", "min_rayleigh", "verdict", "regime"]


class VectorFileError(ValueError):
    pass


# -- serialization ---------------------------------------------------------


def _fmt_float(v: float) -> str:
    if math.isnan(v):
        return "NaN"
    if math.isinf(v):
        return "Infinity" if v > 0 else "-Infinity"
    s = format(v, ".17g")
    if not any(c in s for c in ".en"):
        s += ".0"
    return s


def dumps(obj: Any) -> str:
    """JSON with every float written to 17 significant digits."""
    if obj is None or isinstance(obj, (bool, np.bool_)):
        return json.dumps(None if obj is None else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        return dumps(obj.tolist())
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items()) + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


@dataclass
class ResultRecord:
    command: str
    config: dict
    result: Any
    warnings: list = field(default_factory=list)
    wall_time: float = 0.0

    def to_json(self) -> str:
        return dumps(asdict(self))

    @classmethod
    def from_json(cls, text: str) -> "ResultRecord":
        return cls(**json.loads(text))


# -- input parsing ---------------------------------------------------------


def parse_vector_text(text: str) -> np.ndarray:
    values = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        for tok in line.split(","):
            tok = tok.strip()
            if not tok:
                continue
            try:
                values.append(float(tok))
            except ValueError:
                raise VectorFileError(f"line {lineno}: cannot parse {tok!r} as a number") from None
    if not values:
        raise VectorFileError("no numbers found")
    return ops.as_vector(values)


def parse_vector_file(path: str) -> np.ndarray:
    """One real per line or one comma-separated line; blanks and ``#`` comments skipped."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise VectorFileError(f"cannot read {path}: {exc.strerror}") from None
    return parse_vector_text(text)


def parse_int_range(text: str) -> list[int]:
    """``"2,4"`` or ``"2..8"`` or a mix like ``"2,5..7"``."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = (int(v) for v in part.split(".."))
            if hi < lo:
                raise ValueError(f"empty range {part!r}")
            out.extend(range(lo, hi + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise ValueError(f"empty list {text!r}")
    return out


def parse_float_list(text: str) -> list[float]:
    vals = [float(v) for v in text.split(",") if v.strip()]
    if not vals or not all(math.isfinite(v) for v in vals):
        raise ValueError(f"need a non-empty list of finite numbers, got {text!r}")
    return vals


def read_config(path: str) -> list[str]:
    """``key=value`` lines turned into ``--key value`` tokens."""
    tokens = []
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise VectorFileError(f"cannot read config {path}: {exc.strerror}") from None
    for raw in lines:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {raw.strip()!r} is not key=value")
        key, val = (s.strip() for s in line.split("=", 1))
        tokens += ["--" + key.replace("_", "-"), val]
    return tokens


# -- commands --------------------------------------------------------------


def _spec(args) -> core.TensorSpec:
    return core.TensorSpec(args.m, args.n, args.a)


def _vector(args, n):
    if args.x_file:
        x = parse_vector_file(args.x_file)
    elif args.x is not None:
        try:
            x = parse_vector_text(args.x)
        except VectorFileError as exc:
            raise VectorFileError(f"--x: {exc}") from None
    else:
        raise ValueError("apply needs --x or --x-file")
    if x.size != n:
        raise VectorFileError(f"vector has length {x.size}, expected n={n}")
    return x


def _estimate(est: spectral.EigenEstimate) -> dict:
    return {
        "value": est.value,
        "vector": est.vector,
        "residual": est.residual,
        "iterations": est.iterations,
        "converged": est.converged,
    }


def _report(r: spectral.BoundReport) -> dict:
    nan = lambda v: None if isinstance(v, float) and math.isnan(v) else v  # noqa: E731
    return {
        "bound_name": r.bound_name,
        "bound_value": nan(r.bound_value),
        "observed": nan(r.observed),
        "margin": nan(r.margin),
        "holds": r.holds,
        "note": r.note,
    }


def cmd_entry(args):
    spec = _spec(args)
    idx = [int(v) for v in args.idx.split(",")]
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", core.ConditioningWarning)
        value = core.entry(spec, idx, args.floor)
    return {"value": value}, [str(w.message) for w in caught]


def cmd_apply(args):
    spec = _spec(args)
    x = _vector(args, spec.dim)
    if args.method == "quadrature":
        return {"method": "quadrature", "scalar": ops.quadrature_scalar(spec, x)}, []
    fn = ops.apply_naive if args.method == "naive" else ops.apply_fast
    res = fn(spec, x, args.floor)
    return {"method": res.method, "vector": res.vector, "scalar": res.scalar}, res.warnings


def cmd_hspec(args):
    return _estimate(spectral.h_spectral_radius(_spec(args), args.tol, args.max_iter))


def cmd_zspec(args):
    spec = _spec(args)
    return _estimate(spectral.z_spectral_radius(spec, args.tol, args.max_iter, args.restarts, args.seed))


def bounds_payload(spec: core.TensorSpec, tol: float, max_iter: int, restarts: int, seed: int) -> dict:
    """Observed extreme eigenvalues against the M(a) and a > 0 bounds.

    m = 2 uses the dense eigensolver for both modes. Otherwise a > 0 uses the
    power methods; a < 0 uses the Z power method and, for H, the largest
    sampled Rayleigh quotient.
    """
    m, a = spec.order, spec.shift
    if m == 2:
        eig = spectral.dense_matrix_eigen(spec)
        h_obs = z_obs = abs(eig[0].value)
        h_src = z_src = "dense_eigen"
    else:
        z = spectral.z_spectral_radius(spec, tol, max_iter, restarts, seed)
        z_obs, z_src = abs(z.value), "sshopm" if z.converged else "sshopm_unconverged"
        if a > 0:
            h = spectral.h_spectral_radius(spec, tol, max_iter)
            h_obs, h_src = h.value, "power" if h.converged else "power_unconverged"
        else:
            h_obs, _ = spectral.sampled_rayleigh_max(spec, seed=seed)
            h_src = "rayleigh_sampling"
    h_reports = spectral.check_h_bound(spec, h_obs)
    z_reports = spectral.check_z_bound(spec, z_obs)
    reports = h_reports + z_reports
    h_main, z_main = h_reports[0], z_reports[0]
    return {
        "m": m,
        "n": spec.dim,
        "a": a,
        "h_bound": None if h_main.holds is None else h_main.bound_value,
        "z_bound": z_main.bound_value,
        "observed": h_obs,
        "h_observed": h_obs,
        "z_observed": z_obs,
        "h_source": h_src,
        "z_source": z_src,
        "reports": [_report(r) for r in reports],
        "holds": all(r.holds is not False for r in reports),
    }


def cmd_bounds(args):
    return bounds_payload(_spec(args), args.tol, args.max_iter, args.restarts, args.seed)


def _pd_payload(spec, trials, seed):
    rep = infinite.pd_check(spec, trials, seed)
    return {
        "m": rep.order,
        "n": rep.dim,
        "a": rep.shift,
        "trials": rep.trials,
        "min_rayleigh": rep.min_rayleigh,
        "verdict": rep.verdict,
        "regime": rep.regime,
        "counterexample": rep.counterexample,
    }


def cmd_pdcheck(args):
    return _pd_payload(_spec(args), args.trials, args.seed)


def cmd_opnorm(args):
    op = infinite.TruncatedOperatorSpec(args.m, args.a, args.N, None, args.mode)
    samples = infinite.sample_norms(op, args.samples, args.seed)
    best = max(samples, key=lambda s: s.lower)
    return {
        "mode": op.mode,
        "p": op.p,
        "output_len": op.output_len,
        "estimate": best.lower,
        "estimate_upper": max(s.upper for s in samples),
        "bound": infinite.norm_bound(op),
        "holds": bool(best.lower <= infinite.norm_bound(op) + 1e-9),
    }


def cmd_sweep(args):
    ms, ns, shifts = parse_int_range(args.m_list), parse_int_range(args.n_list), parse_float_list(args.a_list)
    for a in shifts:
        if not core.validate_shift(a):
            raise core.InvalidParameterError(f"shift a={a!r} violates a in R \\ Z^- (sweep range)")
    rows = []
    for m in ms:
        for n in ns:
            for a in shifts:
                spec = core.TensorSpec(m, n, a)
                if args.sweep_mode == "bounds":
                    p = bounds_payload(spec, args.tol, args.max_iter, args.restarts, args.seed)
                    h_rep = p["reports"][0]
                    rows.append({
                        "m": m, "n": n, "a": a,
                        "h_observed": p["h_observed"], "h_bound": p["h_bound"], "h_holds": h_rep["holds"],
                        "z_observed": p["z_observed"], "z_bound": p["z_bound"],
                        "z_holds": all(r["holds"] is not False for r in p["reports"] if r["bound_name"][0] == "Z"),
                        "holds": p["holds"],
                    })
                else:
                    if m % 2:
                        continue
                    p = _pd_payload(spec, args.trials, args.seed)
                    p.pop("counterexample")
                    rows.append(p)
    return {"mode": args.sweep_mode, "rows": rows}


COMMANDS = {
    "entry": cmd_entry,
    "apply": cmd_apply,
    "hspec": cmd_hspec,
    "zspec": cmd_zspec,
    "bounds": cmd_bounds,
    "pdcheck": cmd_pdcheck,
    "opnorm": cmd_opnorm,
    "sweep": cmd_sweep,
}


# -- output ----------------------------------------------------------------


def _csv_cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    if isinstance(v, float):
        return _fmt_float(v)
    return str(v)


def to_csv(record: ResultRecord) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    res = record.result
    if record.command == "sweep":
        header = SWEEP_BOUNDS_HEADER if res["mode"] == "bounds" else SWEEP_PD_HEADER
        w.writerow(header)
        for row in res["rows"]:
            w.writerow([_csv_cell(row[k]) for k in header])
    else:
        flat = {k: v for k, v in res.items() if not isinstance(v, (list, dict, np.ndarray))}
        w.writerow(flat)
        w.writerow([_csv_cell(v) for v in flat.values()])
    return buf.getvalue()


def _g6(v) -> str:
    return "n/a" if v is None else f"{v:.6g}"


def to_human(record: ResultRecord) -> str:
    res = record.result
    cfg = record.config
    params = " ".join(f"{k}={cfg[k]}" for k in ("m", "n", "a") if cfg.get(k) is not None)
    lines = [f"{record.command}: {params}".rstrip()]
    if record.command == "bounds":
        for r in res["reports"]:
            if r["holds"] is None:
                lines.append(f"  {r['bound_name']}: skipped ({r['note']})")
            else:
                rel = "<=" if r["holds"] else ">"
                lines.append(
                    f"  {r['bound_name']}: observed {_g6(r['observed'])} {rel} bound {_g6(r['bound_value'])}"
                    f"  margin {_g6(r['margin'])}  [{'holds' if r['holds'] else 'VIOLATED'}]"
                )
    elif record.command == "sweep":
        lines.append(to_csv(record).rstrip("\n"))
    else:
        for k, v in res.items():
            if isinstance(v, np.ndarray):
                v = v.tolist()
            if isinstance(v, float):
                v = _g6(v)
            elif isinstance(v, list):
                v = "[" + ", ".join(_g6(t) for t in v) + "]"
            lines.append(f"  {k}: {v}")
    for w in record.warnings:
        lines.append(f"  warning: {w}")
    return "\n".join(lines) + "\n"


# -- entry point -----------------------------------------------------------


def _default_seed() -> int:
    env = os.environ.get(SEED_ENV)
    return int(env) if env else spectral.DEFAULT_SEED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ghilbert", description="Generalized Hilbert tensor toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, spec=True):
        if spec:
            p.add_argument("--m", type=int, required=True, help="tensor order (>= 2)")
            p.add_argument("--n", type=int, required=True, help="dimension (>= 1)")
            p.add_argument("--a", type=float, required=True, help="shift, not in {0,-1,-2,...}")
        p.add_argument("--format", choices=["json", "csv", "human"], default="json")
        p.add_argument("--seed", type=int, default=_default_seed())
        p.add_argument("--tol", type=float, default=spectral.DEFAULT_TOL)
        p.add_argument("--max-iter", type=int, default=spectral.DEFAULT_MAX_ITER)
        p.add_argument("--restarts", type=int, default=spectral.DEFAULT_RESTARTS)
        p.add_argument("--floor", type=float, default=core.CONDITIONING_FLOOR)
        p.add_argument("--config", help="key=value file mirroring the flags")

    p = sub.add_parser("entry", help="one tensor entry")
    common(p)
    p.add_argument("--idx", required=True, help="comma-separated 1-based multi-index")

    p = sub.add_parser("apply", help="H x^(m-1) and H x^m")
    common(p)
    p.add_argument("--x", help="inline comma-separated vector")
    p.add_argument("--x-file", help="vector file: one number per line or one CSV line")
    p.add_argument("--method", choices=["fast", "naive", "quadrature"], default="fast")

    for name, helptext in [("hspec", "H-spectral radius (a > 0)"), ("zspec", "largest |Z-eigenvalue|"),
                           ("bounds", "check spectral bounds")]:
        common(sub.add_parser(name, help=helptext))

    p = sub.add_parser("pdcheck", help="sample H x^m for positivity (even m)")
    common(p)
    p.add_argument("--trials", type=int, default=1000)

    p = sub.add_parser("opnorm", help="sampled norm of F or T on the l1 sphere")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--mode", choices=["F", "T"], default="T")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--N", type=int, default=infinite.DEFAULT_OUTPUT_LEN, help="output components kept")
    common(p, spec=False)

    p = sub.add_parser("sweep", help="grid of (m, n, a) in CSV-friendly rows")
    p.add_argument("--m", dest="m_list", required=True, help="e.g. 2,4 or 2..4")
    p.add_argument("--n", dest="n_list", required=True, help="e.g. 2..8")
    p.add_argument("--a", dest="a_list", required=True, help="e.g. 0.5,1,2")
    p.add_argument("--mode", dest="sweep_mode", choices=["bounds", "pdcheck"], default="bounds")
    p.add_argument("--trials", type=int, default=1000)
    common(p, spec=False)
    return parser


def _expand_config(argv: list[str]) -> list[str]:
    for i, tok in enumerate(argv):
        if tok == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
        elif tok.startswith("--config="):
            path = tok.split("=", 1)[1]
        else:
            continue
        # config values go right after the subcommand so explicit flags win
        return argv[:1] + read_config(path) + argv[1:]
    return argv


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv = _expand_config(argv)
    except VectorFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    args = build_parser().parse_args(argv)
    config = {k: v for k, v in vars(args).items() if k != "config"}
    t0 = time.perf_counter()
    try:
        out = COMMANDS[args.command](args)
    except core.InvalidParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except VectorFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, IndexError, core.UndefinedConstantError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    result, warns = out if isinstance(out, tuple) else (out, [])
    record = ResultRecord(args.command, config, result, list(warns), time.perf_counter() - t0)
    if args.format == "json":
        stdout.write(record.to_json() + "\n")
    elif args.format == "csv":
        stdout.write(to_csv(record))
    else:
        stdout.write(to_human(record))
    if args.command == "bounds" or (args.command == "sweep" and result["mode"] == "bounds"):
        rows = [result] if args.command == "bounds" else result["rows"]
        return 0 if all(r["holds"] for r in rows) else 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
