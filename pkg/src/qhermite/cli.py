"""Command-line surface.

Commands
  eval           evaluate one polynomial at one point
  table          evaluate a family for n = 0..n_max over a list of points
  check          run identity suites over a parameter grid
  orthogonality  quadrature vs closed-form orthogonality constants

Global flags (before the command): --precision, --rel-tol, --tail-tol,
--format {human,json,csv}, --config <path>, --no-timestamp.

Precedence: command-line flags > config file > defaults.  Config files are
flat `key = value` text; '#' starts a comment.

Exit codes: 0 success; 1 at least one identity/orthogonality check failed
its tolerance; 2 invalid arguments or evaluation errors (the message names
the violated precondition).

All numbers are printed in scientific notation with precision-many
significant digits, so identical invocations produce byte-identical output
(the JSON/human timestamp is dropped under --no-timestamp).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Optional

from mpmath import mp, mpf

from .errors import QHermiteError
from .identities import (
    DEFAULT_GRID,
    IDENTITY_IDS,
    IdentityGrid,
    run_identity_suite,
    summarize_reports,
)
from .polyfam import PolyEval, eval_poly
from .qcore import QParams, Truncation
from .quadrature import LatticeSpec, default_lattice, orthogonality_check
from .scalars import fmt_scalar, to_mpf

__all__ = ["main", "RunConfig"]

_FAMILY_ALIASES = {
    "gdqh2": "gdqh2",
    "discrete-qh2": "discrete_q_hermite2",
    "qlaguerre": "q_laguerre",
    "stieltjes-wigert": "stieltjes_wigert",
    "mu-hermite": "mu_hermite",
    "rosenblum-hermite": "rosenblum_hermite",
}


_DEFAULT_REP = {
    "gdqh2": "definition_sum",
    "discrete_q_hermite2": "definition_sum",
    "q_laguerre": "phi11",
    "stieltjes_wigert": "phi11",
    "mu_hermite": "phi11",
    "rosenblum_hermite": "closed_sum",
}


@dataclass
class RunConfig:
    precision_digits: int = 50
    rel_tol: Optional[str] = None   # None -> derived default at run time
    tail_tol: Optional[str] = None
    fmt: str = "human"
    timestamp: bool = True

    def __post_init__(self):
        if self.precision_digits < 15:
            raise ValueError(
                "precision_digits must be >= 15: got %d" % self.precision_digits)
        if self.fmt not in ("human", "json", "csv"):
            raise ValueError("format must be human, json or csv: got %r" % self.fmt)
        for name in ("rel_tol", "tail_tol"):
            v = getattr(self, name)
            if v is not None and not (mpf(v) > 0):
                raise ValueError("%s must be > 0: got %s" % (name, v))


def _read_config_file(path: str) -> dict:
    out = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError("config line is not key = value: %r" % raw.strip())
            key, val = (s.strip() for s in line.split("=", 1))
            out[key.replace("-", "_")] = val
    return out


def resolve_config(args) -> RunConfig:
    """flags > config file > defaults."""
    merged = {"precision": "50", "rel_tol": None, "tail_tol": None,
              "format": "human", "timestamp": "true"}
    if getattr(args, "config", None):
        for k, v in _read_config_file(args.config).items():
            if k not in merged:
                raise ValueError("unknown config key %r" % k)
            merged[k] = v
    if getattr(args, "precision", None) is not None:
        merged["precision"] = str(args.precision)
    if getattr(args, "rel_tol", None) is not None:
        merged["rel_tol"] = args.rel_tol
    if getattr(args, "tail_tol", None) is not None:
        merged["tail_tol"] = args.tail_tol
    if getattr(args, "format", None) is not None:
        merged["format"] = args.format
    if getattr(args, "no_timestamp", False):
        merged["timestamp"] = "false"
    return RunConfig(
        precision_digits=int(merged["precision"]),
        rel_tol=merged["rel_tol"],
        tail_tol=merged["tail_tol"],
        fmt=merged["format"],
        timestamp=str(merged["timestamp"]).lower() not in ("false", "0", "no"),
    )


def _truncation(cfg: RunConfig) -> Optional[Truncation]:
    if cfg.rel_tol is None and cfg.tail_tol is None:
        return None
    base = Truncation()
    return Truncation(
        max_terms=base.max_terms,
        tail_tol=mpf(cfg.tail_tol) if cfg.tail_tol is not None else base.tail_tol,
        rel_tol=mpf(cfg.rel_tol) if cfg.rel_tol is not None else base.rel_tol,
    )


def _now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _emit_rows(rows: list, cfg: RunConfig, out) -> None:
    """rows: list of dicts with string values, identical key order."""
    if cfg.fmt == "json":
        doc = {"rows": rows}
        if cfg.timestamp:
            doc["timestamp"] = _now()
        json.dump(doc, out, indent=2, sort_keys=True)
        out.write("\n")
        return
    if cfg.fmt == "csv":
        if not rows:
            return
        writer = csv.DictWriter(out, fieldnames=list(rows[0].keys()),
                                lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return
    # human
    if cfg.timestamp:
        out.write("# %s\n" % _now())
    for row in rows:
        out.write("  ".join("%s=%s" % kv for kv in row.items()) + "\n")


def _params_from(args, digits: int) -> QParams:
    return QParams(mpf(args.q), mpf(args.alpha))


# --- commands -----------------------------------------------------------------


def cmd_eval(args, cfg: RunConfig) -> int:
    family = _FAMILY_ALIASES[args.family]
    params = _params_from(args, cfg.precision_digits)
    pe = PolyEval(
        family=family,
        degree=args.n,
        point=mpf(args.x),
        params=params,
        y=mpf(args.y),
        mu=mpf(args.mu),
        rep=args.rep or "",
    )
    value = eval_poly(pe)
    rep = pe.rep or _DEFAULT_REP.get(family, "series")
    row = {
        "family": args.family,
        "n": str(args.n),
        "q": fmt_scalar(mpf(args.q), cfg.precision_digits),
        "alpha": fmt_scalar(mpf(args.alpha), cfg.precision_digits),
        "x": fmt_scalar(mpf(args.x), cfg.precision_digits),
        "y": fmt_scalar(mpf(args.y), cfg.precision_digits),
        "value": fmt_scalar(value, cfg.precision_digits),
        "representation": rep,
    }
    _emit_rows([row], cfg, sys.stdout)
    return 0


def cmd_table(args, cfg: RunConfig) -> int:
    family = _FAMILY_ALIASES[args.family]
    params = _params_from(args, cfg.precision_digits)
    rep = args.rep or _DEFAULT_REP.get(family, "series")
    rows = []
    for n in range(args.n_max + 1):
        for xs in args.x:
            pe = PolyEval(family=family, degree=n, point=mpf(xs),
                          params=params, y=mpf(args.y), mu=mpf(args.mu),
                          rep=args.rep or "")
            rows.append({
                "n": str(n),
                "x": fmt_scalar(mpf(xs), cfg.precision_digits),
                "value": fmt_scalar(eval_poly(pe), cfg.precision_digits),
                "representation": rep,
            })
    _emit_rows(rows, cfg, sys.stdout)
    return 0


def _report_row(r, digits: int) -> dict:
    return {
        "identity": r.identity_id,
        "params": ";".join("%s=%s" % (k, fmt_scalar(to_mpf(v), 8))
                           for k, v in sorted(r.params.items())),
        "lhs": fmt_scalar(r.lhs, digits),
        "rhs": fmt_scalar(r.rhs, digits),
        "abs_residual": fmt_scalar(r.abs_residual, 8),
        "rel_residual": fmt_scalar(r.rel_residual, 8),
        "tolerance": fmt_scalar(r.tolerance, 8),
        "terms": str(r.terms_used),
        "passed": str(bool(r.passed)).lower(),
        "error": r.error or "",
    }


def _finish_reports(reports, cfg: RunConfig) -> int:
    rows = [_report_row(r, cfg.precision_digits) for r in reports]
    summary = summarize_reports(reports)
    if cfg.fmt == "human":
        _emit_rows(rows, cfg, sys.stdout)
        sys.stdout.write(
            "summary: total=%d passed=%d failed=%d errors=%d\n"
            % (summary["total"], summary["passed"], summary["failed"],
               summary["errors"]))
    else:
        _emit_rows(rows, cfg, sys.stdout)
    if summary["errors"]:
        return 2
    return 0 if summary["all_passed"] else 1


def cmd_check(args, cfg: RunConfig) -> int:
    grid = IdentityGrid(
        q_values=tuple(args.q) if args.q else DEFAULT_GRID.q_values,
        alpha_values=tuple(args.alpha) if args.alpha else DEFAULT_GRID.alpha_values,
        n_values=tuple(range(args.n_max + 1)) if args.n_max is not None
                 else DEFAULT_GRID.n_values,
        x_values=tuple(args.x) if args.x else DEFAULT_GRID.x_values,
        y_values=tuple(args.y) if args.y else DEFAULT_GRID.y_values,
        omega_values=tuple(args.omega) if args.omega else DEFAULT_GRID.omega_values,
        t_values=tuple(args.t) if args.t else DEFAULT_GRID.t_values,
    )
    # validate grid parameters up front so bad values exit 2, not 1
    for qs in grid.q_values:
        for al in grid.alpha_values:
            QParams(mpf(qs), mpf(al))
    tol = mpf(cfg.rel_tol) if cfg.rel_tol is not None else None
    reports = run_identity_suite(grid, tol=tol, trunc=_truncation(cfg),
                                 identity_id=args.identity)
    return _finish_reports(reports, cfg)


def cmd_orthogonality(args, cfg: RunConfig) -> int:
    params = _params_from(args, cfg.precision_digits)
    lat = None
    if args.k_min is not None or args.k_max is not None:
        base = default_lattice(mpf(args.q))
        lat = LatticeSpec(mpf(args.q),
                          args.k_min if args.k_min is not None else base.k_min,
                          args.k_max if args.k_max is not None else base.k_max)
    tol = mpf(cfg.rel_tol) if cfg.rel_tol is not None else None
    reports = []
    if args.m is not None:
        reports.append(orthogonality_check(args.n, args.m, params, lat=lat,
                                           tol=tol, trunc=_truncation(cfg)))
    else:
        for n in range(args.n + 1):
            for m in range(n + 1):
                reports.append(orthogonality_check(n, m, params, lat=lat,
                                                   tol=tol, trunc=_truncation(cfg)))
    return _finish_reports(reports, cfg)


# --- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qhermite",
        description="Generalized discrete q-Hermite II polynomials: "
                    "evaluation, identity checks, orthogonality quadrature.")
    ap.add_argument("--precision", type=int, default=None,
                    help="working significant digits (default 50, min 15)")
    ap.add_argument("--rel-tol", default=None,
                    help="relative tolerance for pass/fail decisions")
    ap.add_argument("--tail-tol", default=None,
                    help="series tail truncation tolerance")
    ap.add_argument("--format", choices=("human", "json", "csv"), default=None)
    ap.add_argument("--config", default=None, help="flat key = value config file")
    ap.add_argument("--no-timestamp", action="store_true",
                    help="omit the timestamp (byte-identical reruns)")
    sub = ap.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("eval", help="evaluate one polynomial")
    pe.add_argument("family", choices=sorted(_FAMILY_ALIASES))
    pe.add_argument("--n", type=int, required=True)
    pe.add_argument("--q", default="0.5")
    pe.add_argument("--alpha", default="0")
    pe.add_argument("--x", required=True)
    pe.add_argument("--y", default="1")
    pe.add_argument("--mu", default="0")
    pe.add_argument("--rep", default=None,
                    help="representation (family-specific, e.g. phi_form)")
    pe.set_defaults(fn=cmd_eval)

    pt = sub.add_parser("table", help="table of values for n = 0..n_max")
    pt.add_argument("family", choices=sorted(_FAMILY_ALIASES))
    pt.add_argument("--n-max", type=int, required=True)
    pt.add_argument("--q", default="0.5")
    pt.add_argument("--alpha", default="0")
    pt.add_argument("--x", nargs="+", required=True)
    pt.add_argument("--y", default="1")
    pt.add_argument("--mu", default="0")
    pt.add_argument("--rep", default=None)
    pt.set_defaults(fn=cmd_table)

    pc = sub.add_parser("check", help="run identity suites over a grid")
    pc.add_argument("identity", choices=("all",) + IDENTITY_IDS)
    pc.add_argument("--q", nargs="+", default=None)
    pc.add_argument("--alpha", nargs="+", default=None)
    pc.add_argument("--n-max", type=int, default=None)
    pc.add_argument("--x", nargs="+", default=None)
    pc.add_argument("--y", nargs="+", default=None)
    pc.add_argument("--omega", nargs="+", default=None)
    pc.add_argument("--t", nargs="+", default=None)
    pc.set_defaults(fn=cmd_check)

    po = sub.add_parser("orthogonality", help="orthogonality quadrature checks")
    po.add_argument("--n", type=int, required=True,
                    help="degree (or max degree when --m is omitted)")
    po.add_argument("--m", type=int, default=None)
    po.add_argument("--q", default="0.5")
    po.add_argument("--alpha", default="0")
    po.add_argument("--k-min", type=int, default=None)
    po.add_argument("--k-max", type=int, default=None)
    po.set_defaults(fn=cmd_orthogonality)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        mp.dps = cfg.precision_digits
        return args.fn(args, cfg)
    except (QHermiteError, ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
