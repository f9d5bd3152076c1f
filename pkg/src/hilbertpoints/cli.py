"""Command-line front end.

Subcommands: norms, classify, alpha0, hankel, factorize, check-h1.
Exit codes: 0 success, 2 usage error, 3 numeric failure (undecided W
bracket, ambiguous H^1 residual, or closed-form/numeric disagreement).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, replace
from pathlib import Path

from .classify import Settings, alpha0_gap, classify, classification_sweep, default_alpha_grid, solve_alpha0
from .hankel import build_hankel, spectral_norm, to_csv_rows
from .poly import Polynomial, h2_norm, phi_alpha
from .torus import DEFAULT_N_FULL, DEFAULT_N_REDUCED, TorusGrid, default_samples, h1_hilbert_residual, lp_norm, modulus_rsd
from .weak import cost, optimal_factorization_family, w_norm_family, w_norm_lower

SCHEMA_VERSION = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3

NORMS_COLUMNS = ["alpha", "h2", "w_closed", "h1_closed", "h1_quad", "w_lower", "w_dual"]
CLASSIFY_COLUMNS = [
    "alpha", "h2", "h1", "w_lower", "w_upper", "w_dual", "h1_residual",
    "na_h1", "hp_h1", "na_w", "hp_w", "w_path",
]

# agreement required between closed-form and numeric columns of `norms`
H1_AGREEMENT = 1e-4
W_AGREEMENT = 1e-3


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    n_grid: int = DEFAULT_N_REDUCED
    n_full: int = DEFAULT_N_FULL
    alpha_min: float = 0.0
    alpha_max: float = 2.5
    alpha_step: float = 0.05
    tol: float | None = None
    out: str | None = None
    json: bool = False

    def validate(self) -> "RunConfig":
        if self.n_grid < 8 or self.n_full < 8:
            raise UsageError("grid sizes must be at least 8")
        if not self.alpha_step > 0:
            raise UsageError("--alpha-step must be positive")
        if not (0 <= self.alpha_min <= self.alpha_max <= 16):
            raise UsageError("alpha range must satisfy 0 <= min <= max <= 16")
        if self.tol is not None and not self.tol > 0:
            raise UsageError("--tol must be positive")
        return self

    def alphas(self) -> list[float]:
        count = int(math.floor((self.alpha_max - self.alpha_min) / self.alpha_step + 1e-9)) + 1
        return [round(self.alpha_min + i * self.alpha_step, 12) for i in range(count)]


def closed_h1(alpha: float) -> float:
    """||phi_alpha||_{H^1} in closed form."""
    if alpha > 2:
        return float(alpha)
    return (2 / math.pi) * (alpha * math.asin(alpha / 2) + math.sqrt(4 - alpha * alpha))


def norms_rows(cfg: RunConfig) -> list[dict]:
    rows = []
    for a in cfg.alphas():
        phi = phi_alpha(a)
        w_lower, _ = w_norm_lower(phi)
        rows.append(
            {
                "alpha": a,
                "h2": h2_norm(phi),
                "w_closed": w_norm_family(a),
                "h1_closed": closed_h1(a),
                "h1_quad": lp_norm(default_samples(phi, cfg.n_grid, cfg.n_full), 1),
                "w_lower": w_lower,
                "w_dual": spectral_norm(build_hankel(phi)),
            }
        )
    return rows


def _cell(v) -> str:
    if v is None:
        return "inconclusive"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _csv_text(command: str, columns: list[str], rows: list[dict]) -> str:
    buf = io.StringIO()
    buf.write(f"# schema_version={SCHEMA_VERSION} command={command}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_cell(r[c]) for c in columns])
    return buf.getvalue()


def _json_text(command: str, payload: dict) -> str:
    body = {"schema_version": SCHEMA_VERSION, "command": command, **payload}
    return json.dumps(body, indent=2, sort_keys=False) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc}") from exc


def _read_poly(args) -> Polynomial:
    if getattr(args, "phi_alpha", None) is not None:
        return phi_alpha(args.phi_alpha)
    if args.poly is None:
        raise UsageError("give a polynomial file or --phi-alpha")
    try:
        text = sys.stdin.read() if args.poly == "-" else Path(args.poly).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.poly}: {exc}") from exc
    try:
        p = Polynomial.from_text(text, args.dimension)
    except ValueError as exc:
        raise UsageError(f"bad polynomial file: {exc}") from exc
    if p.is_zero():
        raise UsageError("polynomial is zero")
    return p


# -- commands ----------------------------------------------------------------


def cmd_norms(cfg: RunConfig) -> int:
    rows = norms_rows(cfg)
    if cfg.json:
        text = _json_text("norms", {"columns": NORMS_COLUMNS, "rows": rows})
    else:
        text = _csv_text("norms", NORMS_COLUMNS, rows)
    _emit(text, cfg.out)
    bad = [
        r["alpha"]
        for r in rows
        if abs(r["h1_quad"] - r["h1_closed"]) > H1_AGREEMENT or abs(r["w_lower"] - r["w_closed"]) > W_AGREEMENT
    ]
    if bad:
        print(f"closed-form and numeric columns disagree at alpha = {bad}", file=sys.stderr)
        return EXIT_NUMERIC
    return 0


def cmd_classify(cfg: RunConfig, alphas: list[float] | None, poly: Polynomial | None) -> int:
    settings = Settings(n_reduced=cfg.n_grid, n_full=cfg.n_full)
    if cfg.tol is not None:
        settings = replace(settings, tol_numeric=cfg.tol)
    if poly is not None:
        reports = [classify(poly, settings)]
    else:
        reports = classification_sweep(alphas, settings)
    rows = []
    for r in reports:
        rows.append(
            {
                "alpha": r.alpha,
                "h2": r.h2,
                "h1": r.h1,
                "w_lower": r.w_lower,
                "w_upper": r.w_upper,
                "w_dual": r.w_dual,
                "h1_residual": r.h1_residual,
                "na_h1": r.na_h1,
                "hp_h1": r.hp_h1,
                "na_w": r.na_w,
                "hp_w": r.hp_w,
                "w_path": r.paths["w"],
            }
        )
    if cfg.json:
        text = _json_text("classify", {"columns": CLASSIFY_COLUMNS, "reports": [r.as_dict() for r in reports]})
    else:
        text = _csv_text("classify", CLASSIFY_COLUMNS, rows)
    _emit(text, cfg.out)
    if any(r.inconclusive for r in reports):
        print("W-norm bracket too wide to decide the Hilbert point flag", file=sys.stderr)
        return EXIT_NUMERIC
    return 0


def cmd_alpha0(tol: float, as_json: bool) -> int:
    a = solve_alpha0(tol)
    if as_json:
        sys.stdout.write(_json_text("alpha0", {"alpha0": a, "tol": tol, "gap": alpha0_gap(a)}))
    else:
        print(repr(a))
    return 0


def cmd_hankel(poly: Polynomial, out: str | None, as_json: bool) -> int:
    m = build_hankel(poly)
    norm = spectral_norm(m)
    if as_json:
        text = _json_text(
            "hankel",
            {
                "row_basis": [list(k) for k in m.row_basis],
                "col_basis": [list(k) for k in m.col_basis],
                "real": m.entries.real.tolist(),
                "imag": m.entries.imag.tolist(),
                "spectral_norm": norm,
            },
        )
    else:
        buf = io.StringIO()
        buf.write(f"# schema_version={SCHEMA_VERSION} command=hankel\n")
        csv.writer(buf, lineterminator="\n").writerows(to_csv_rows(m))
        buf.write(f"# spectral_norm={norm!r}\n")
        text = buf.getvalue()
    _emit(text, out)
    if out is not None:
        print(f"spectral_norm {norm!r}")
    return 0


def cmd_factorize(alpha: float, out: str | None, as_json: bool) -> int:
    fact = optimal_factorization_family(alpha)
    c = cost(fact)
    ok = abs(c - w_norm_family(alpha)) <= 1e-10 * max(1.0, c)
    verdict = "PASS" if ok else "FAIL"
    if as_json:
        text = _json_text(
            "factorize",
            {
                "alpha": alpha,
                "pairs": [
                    {"g": [[list(k), [v.real, v.imag]] for k, v in g], "h": [[list(k), [v.real, v.imag]] for k, v in h]}
                    for g, h in fact.pairs
                ],
                "cost": c,
                "w_norm": w_norm_family(alpha),
                "verification": verdict,
            },
        )
    else:
        text = f"# schema_version={SCHEMA_VERSION} command=factorize alpha={alpha!r}\n" + fact.to_text()
    _emit(text, out)
    if not as_json:
        print(f"cost {c!r}")
        print(f"verification {verdict}")
    return 0 if ok else EXIT_NUMERIC


def cmd_check_h1(poly: Polynomial, cfg: RunConfig, as_json: bool) -> int:
    tol = cfg.tol if cfg.tol is not None else Settings().tol_numeric
    samples = default_samples(poly, cfg.n_grid, cfg.n_full)
    reduced = samples.grid.dimension < poly.dimension
    residual = h1_hilbert_residual(poly, TorusGrid(poly.dimension, cfg.n_grid if reduced else cfg.n_full))
    rsd = modulus_rsd(samples)
    result = {
        "h1": lp_norm(samples, 1),
        "h2": h2_norm(poly),
        "residual": residual,
        "modulus_rsd": rsd,
        "na_h1": rsd < tol,
        "hp_h1": rsd < tol or residual < tol,
        "tol": tol,
    }
    if as_json:
        sys.stdout.write(_json_text("check-h1", result))
    else:
        for k, v in result.items():
            print(f"{k} {_cell(v)}")
    if tol / 2 <= residual <= 2 * tol:
        print("residual too close to the tolerance to decide", file=sys.stderr)
        return EXIT_NUMERIC
    return 0


# -- parser --------------------------------------------------------------------


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hilbertpoints", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, alpha_range=False):
        p.add_argument("--n-grid", type=int, default=DEFAULT_N_REDUCED, help="points per axis for reduced (1-D) grids")
        p.add_argument("--n-full", type=int, default=DEFAULT_N_FULL, help="points per axis for full d-dimensional grids")
        p.add_argument("--tol", type=float, default=None, help="numeric tolerance override")
        p.add_argument("--out", default=None, help="output file (default: stdout)")
        p.add_argument("--json", action="store_true", help="emit JSON instead of CSV/text")
        if alpha_range:
            p.add_argument("--alpha-min", type=float, default=None)
            p.add_argument("--alpha-max", type=float, default=None)
            p.add_argument("--alpha-step", type=float, default=None)

    def poly_source(p):
        p.add_argument("poly", nargs="?", default=None, help="polynomial file ('-' for stdin)")
        p.add_argument("--phi-alpha", type=float, default=None, help="use z1^2 + a z1 z2 + z2^2 instead of a file")
        p.add_argument("--dimension", type=int, default=None, help="number of variables (needed if the file omits imaginary parts)")

    p = sub.add_parser("norms", help="H^2, W and H^1 norms of phi_alpha over an alpha range")
    common(p, alpha_range=True)

    p = sub.add_parser("classify", help="four-flag classification of phi_alpha (or of a polynomial file)")
    common(p, alpha_range=True)
    p.add_argument("--alpha", type=float, action="append", help="classify this alpha (repeatable)")
    p.add_argument("--poly", default=None, help="classify the polynomial in this file instead")
    p.add_argument("--dimension", type=int, default=None)

    p = sub.add_parser("alpha0", help="solve sqrt(4-a^2) = (2/a) arcsin(a/2) on (0, 2)")
    p.add_argument("--tol", type=_positive_float, default=1e-10)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("hankel", help="Hankel matrix of a polynomial symbol and its norm")
    poly_source(p)
    p.add_argument("--out", default=None)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("factorize", help="optimal weak factorization of phi_alpha")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("check-h1", help="H^1 Hilbert point test for a polynomial")
    poly_source(p)
    common(p)
    return parser


def _config(args) -> RunConfig:
    cfg = RunConfig(
        n_grid=args.n_grid,
        n_full=args.n_full,
        tol=args.tol,
        out=args.out,
        json=args.json,
    )
    for name in ("alpha_min", "alpha_max", "alpha_step"):
        v = getattr(args, name, None)
        if v is not None:
            cfg = replace(cfg, **{name: v})
    return cfg.validate()


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "norms":
            return cmd_norms(_config(args))
        if args.command == "classify":
            cfg = _config(args)
            poly = None
            if args.poly is not None:
                args.phi_alpha = None
                poly = _read_poly(args)
            alphas = args.alpha
            if alphas is None and poly is None:
                ranged = any(getattr(args, n) is not None for n in ("alpha_min", "alpha_max", "alpha_step"))
                alphas = cfg.alphas() if ranged else default_alpha_grid()
            if alphas is not None and any(not 0 <= a <= 16 for a in alphas):
                raise UsageError("alpha must lie in [0, 16]")
            return cmd_classify(cfg, alphas, poly)
        if args.command == "alpha0":
            return cmd_alpha0(args.tol, args.json)
        if args.command == "hankel":
            return cmd_hankel(_read_poly(args), args.out, args.json)
        if args.command == "factorize":
            if not 0 <= args.alpha <= 16:
                raise UsageError("alpha must lie in [0, 16]")
            return cmd_factorize(args.alpha, args.out, args.json)
        if args.command == "check-h1":
            return cmd_check_h1(_read_poly(args), _config(args), args.json)
    except UsageError as exc:
        parser.exit(EXIT_USAGE, f"{parser.prog}: error: {exc}\n")
    parser.error(f"unknown command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
