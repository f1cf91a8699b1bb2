"""Command-line interface: ``stdq <subcommand> [options]``.

Every subcommand prints one table, as JSON (default, with a top-level
``"schema": "stdq/1"``) or CSV.  Exit codes: 0 success, 1 a verification
check failed, 2 bad usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from .laurent import Laurent, RatFunc
from .params import Phase, QParam, Real, symbolic
from .scalar import close, magnitude, to_json

SCHEMA = "stdq/1"


class UsageError(Exception):
    pass


# -- argument types ----------------------------------------------------------

_PI = re.compile(r"^([+-]?)(\d+(?:/\d+)?)?\*?pi(?:/(\d+))?$")


def parse_qspec(text: str) -> QParam:
    """``real:<decimal or p/q>`` | ``phase:<theta or rational multiple of pi>`` | ``symbolic``.

    Integer and fraction forms of a real q (``real:2``, ``real:9/10``) select
    the exact backend; decimals select floating point.
    """
    s = text.strip()
    if s == "symbolic":
        return symbolic()
    kind, sep, body = s.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError(f"bad q spec {text!r} at position 0: expected real:, phase: or symbolic")
    pos = len(kind) + 1
    body = body.strip()
    if kind == "real":
        try:
            if re.fullmatch(r"[+-]?\d+(/\d+)?", body):
                v = Fraction(body)
            else:
                v = float(body)
        except (ValueError, ZeroDivisionError):
            raise argparse.ArgumentTypeError(f"bad number {body!r} at position {pos}") from None
        if isinstance(v, float) and not math.isfinite(v):
            raise argparse.ArgumentTypeError(f"q must be finite (position {pos})")
        if v <= 0:
            raise argparse.ArgumentTypeError(f"real q must be positive, got {body} at position {pos}")
        return Real(v)
    if kind == "phase":
        m = _PI.match(body.replace(" ", ""))
        if m:
            sign = -1 if m.group(1) == "-" else 1
            frac = sign * Fraction(m.group(2) or 1) / int(m.group(3) or 1)
            if abs(frac) > 1:
                raise argparse.ArgumentTypeError(f"|theta| must be <= pi, got {body} at position {pos}")
            return Phase.of_pi(frac)
        try:
            theta = float(body)
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad angle {body!r} at position {pos}") from None
        if not math.isfinite(theta) or abs(theta) > math.pi:
            raise argparse.ArgumentTypeError(f"|theta| must be <= pi, got {body} at position {pos}")
        return Phase(theta)
    raise argparse.ArgumentTypeError(f"unknown q kind {kind!r} at position 0")


def parse_range(text: str) -> List[int]:
    """``a..b`` (inclusive) or a single integer."""
    m = re.fullmatch(r"\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?", text)
    if not m:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; expected a..b")
    a = int(m.group(1))
    b = int(m.group(2)) if m.group(2) is not None else a
    if b < a:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return list(range(a, b + 1))


def parse_grid(text: str) -> List[float]:
    """``a:b:step``, inclusive of b when it lies on the grid."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}; expected a:b:step")
    try:
        a, b, h = (Fraction(p.strip()) for p in parts)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad grid {text!r}") from None
    if h <= 0 or b < a:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}: need step > 0 and b >= a")
    count = int((b - a) / h) + 1
    return [float(a + i * h) for i in range(count)]


def parse_z(text: str) -> complex:
    try:
        parts = [float(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad z {text!r}; expected re,im") from None
    if len(parts) == 1:
        parts.append(0.0)
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"bad z {text!r}; expected re,im")
    return complex(*parts)


def parse_rational(text: str):
    try:
        return Fraction(text) if re.fullmatch(r"[+-]?\d+(/\d+)?", text.strip()) else float(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad number {text!r}") from None


def _positive(kind):
    def conv(text):
        try:
            v = kind(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad value {text!r}") from None
        if v <= 0:
            raise argparse.ArgumentTypeError(f"value must be positive, got {text}")
        return v
    conv.__name__ = kind.__name__
    return conv


def _nonneg_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"value must be >= 0, got {text}")
    return v


positive_int = _positive(int)
positive_float = _positive(float)


# -- output ------------------------------------------------------------------

@dataclass
class Table:
    command: str
    params: Dict
    columns: List[str]
    rows: List[Dict]
    extra: Dict = field(default_factory=dict)
    ok: bool = True
    plot: Optional[Callable[[str], None]] = None


def jsonable(v):
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else float(v)
    if isinstance(v, float):
        return float(v) if math.isfinite(v) else str(v)
    if isinstance(v, complex):
        v = complex(v)
        if v.imag == 0:
            return jsonable(v.real)
        return {"re": jsonable(v.real), "im": jsonable(v.imag)}
    if isinstance(v, (Laurent, RatFunc)):
        return to_json(v)
    if isinstance(v, dict):
        return {str(k): jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    if isinstance(v, QParam):
        return str(v)
    try:
        return float(v)
    except (TypeError, ValueError):
        return str(v)


def csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, Fraction):
        return str(int(v)) if v.denominator == 1 else repr(float(v))
    if isinstance(v, float):
        return repr(float(v))
    if isinstance(v, complex):
        v = complex(v)
        return repr(v.real) if v.imag == 0 else f"{v.real!r}{v.imag:+}j"
    return str(v)


def render(table: Table, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(table.columns)
        for r in table.rows:
            w.writerow([csv_cell(r.get(c)) for c in table.columns])
        return buf.getvalue()
    doc = {"schema": SCHEMA, "command": table.command, "params": jsonable(table.params),
           "ok": table.ok, "columns": table.columns,
           "rows": [{c: jsonable(r.get(c)) for c in table.columns} for r in table.rows]}
    doc.update({k: jsonable(v) for k, v in table.extra.items()})
    return json.dumps(doc, indent=2) + "\n"


def _rel(got, want) -> float:
    return magnitude(got - want) / max(1.0, magnitude(want))


# -- subcommands -------------------------------------------------------------

def cmd_bracket(args) -> Table:
    from .qcore import std_bracket
    rows = [{"k": k, "bracket": std_bracket(k, args.q)} for k in range(1, args.n + 1)]
    return Table("bracket", {"q": args.q, "n": args.n}, ["k", "bracket"], rows,
                 plot=_line_plot(rows, "k", ["bracket"], f"{{k}} at {args.q}"))


def cmd_fock_check(args) -> Table:
    from .fock import (algebra_residual, build_fock, coordinate_realization_check,
                       number_commutators_residual, number_operator_residual)
    tol = _tol(args, 1e-12)
    ops = build_fock(args.dim, args.q)
    real = coordinate_realization_check(args.dim - 1, args.q, tol)
    checks = [("algebra", algebra_residual(ops)),
              ("number_commutators", number_commutators_residual(ops)),
              ("number_operator", number_operator_residual(ops)),
              ("coordinate_realization", real.max_residual)]
    rows = []
    for name, res in checks:
        ok = res == 0 if ops.exact else res <= tol
        if name == "coordinate_realization":
            ok = real.ok
        rows.append({"check": name, "residual": res, "ok": ok})
    return Table("fock-check", {"q": args.q, "dim": args.dim, "tol": tol}, ["check", "residual", "ok"], rows,
                 {"exact": ops.exact, "nonpositive_levels": ops.nonpositive_levels,
                  "first_mismatch": list(real.first_mismatch) if real.first_mismatch else None},
                 ok=all(r["ok"] for r in rows))


def cmd_qexp(args) -> Table:
    from .qcalc.calculus import qexp_coeffs, qexp_coeffs_product, qexp_eval
    tol = _tol(args, 1e-12)
    E = qexp_coeffs(args.N, args.q, allow_phase=args.allow_phase)
    P = qexp_coeffs_product(args.N, args.q, allow_phase=args.allow_phase)
    agree = all(close(a, b, tol) for a, b in zip(E.coeffs, P.coeffs))
    rows = [{"n": n, "coeff": c} for n, c in enumerate(E.coeffs)]
    extra = {"series": E.to_json(), "product_form_agrees": agree}
    if args.x is not None:
        v = qexp_eval(args.x, args.q, args.N)
        extra["value"] = {"x": args.x, "value": v.value, "tail": v.tail, "converged": v.converged}
    return Table("qexp", {"q": args.q, "N": args.N}, ["n", "coeff"], rows, extra, ok=agree,
                 plot=_line_plot(rows, "n", ["coeff"], f"1/{{n}}! at {args.q}", logy=True))


def cmd_qexp_inverse(args) -> Table:
    from .qcalc.calculus import qexp_coeffs, qexp_inverse_coeffs
    from .qcalc.series import PowerSeries
    tol = _tol(args, 1e-12)
    E = qexp_coeffs(args.N, args.q, allow_phase=args.allow_phase)
    B = qexp_inverse_coeffs(args.N, args.q, allow_phase=args.allow_phase)
    prod = E * B
    one = PowerSeries.one(args.N)
    worst = max(magnitude(a - b) for a, b in zip(prod.coeffs, one.coeffs))
    ok = all(close(a, b, tol) for a, b in zip(prod.coeffs, one.coeffs))
    rows = [{"n": n, "b": c} for n, c in enumerate(B.coeffs)]
    return Table("qexp-inverse", {"q": args.q, "N": args.N}, ["n", "b"], rows,
                 {"series": B.to_json(), "product_residual": worst}, ok=ok)


def cmd_integrate(args) -> Table:
    from .qcalc.calculus import moment_closed_form
    from .qcalc.improper import std_moment_integral
    tol = _tol(args, 1e-6)
    _need_real(args.q)
    rows = []
    for n in range(args.n + 1):
        r = std_moment_integral(n, args.q, args.a)
        want = float(moment_closed_form(n, args.a, args.q))
        rows.append({"n": n, "numeric": r.value, "closed_form": want, "rel_error": abs(r.value - want) / abs(want),
                     "error_estimate": r.error_estimate, "lumps": r.lumps_used,
                     "dilation_sum": r.dilation_sum})
    ok = all(r["rel_error"] <= tol for r in rows)
    cols = ["n", "numeric", "closed_form", "rel_error", "error_estimate", "lumps", "dilation_sum"]
    return Table("integrate", {"q": args.q, "n": args.n, "a": args.a, "tol": tol}, cols, rows, ok=ok,
                 plot=_line_plot(rows, "n", ["rel_error"], "quadrature against closed form", logy=True))


def cmd_moments(args) -> Table:
    from .qcalc.calculus import moment_closed_form, moment_factorial_form
    tol = _tol(args, 1e-12)
    rows = []
    for n in range(args.n + 1):
        c = moment_closed_form(n, args.a, args.q)
        row = {"n": n, "closed_form": c, "factorial_form": None, "agree": None}
        if args.a == 1:
            f = moment_factorial_form(n, args.q)
            row["factorial_form"] = f
            row["agree"] = close(c, f, tol)
        rows.append(row)
    ok = all(r["agree"] is not False for r in rows)
    return Table("moments", {"q": args.q, "n": args.n, "a": args.a}, ["n", "closed_form", "factorial_form", "agree"],
                 rows, ok=ok)


def _fib_rows(q: QParam, ns: Sequence[int], tol: float) -> List[Dict]:
    from .fib import DegenerateLevelsError, quasi_fib_simple
    from .qcore import STD
    rows = []
    for n in ns:
        try:
            c = quasi_fib_simple(n, STD(q), tol)
            rows.append({"n": n, "lambda_n": c.lambda_n, "rho_n": c.rho_n, "residual": c.residual})
        except DegenerateLevelsError:
            rows.append({"n": n, "lambda_n": None, "rho_n": None, "residual": None})
    return rows


def _fib_ok(rows, tol) -> bool:
    return all(r["residual"] is None or r["residual"] <= tol for r in rows)


def cmd_fib(args) -> Table:
    from .fib import fibonacci_test
    from .qcore import STD
    tol = _tol(args, 1e-11)
    rows = _fib_rows(args.q, range(1, args.n + 1), tol)
    v = fibonacci_test(STD(args.q), max(3, args.n), 1e-12)
    extra = {"fibonacci_test": {"is_fibonacci": v.is_fibonacci, "lambda": v.lam, "rho": v.rho,
                                "witness": v.witness, "exact": v.exact}}
    return Table("fib", {"q": args.q, "n": args.n, "tol": tol}, ["n", "lambda_n", "rho_n", "residual"], rows,
                 extra, ok=_fib_ok(rows, tol),
                 plot=_line_plot(rows, "n", ["lambda_n", "rho_n"], f"quasi-Fibonacci coefficients at {args.q}"))


def cmd_fib_general(args) -> Table:
    from .expr import compile_k
    from .fib import BUILTIN_K, DegenerateLevelsError, quasi_fib_general
    tol = _tol(args, 1e-11)
    K = BUILTIN_K.get(args.k_expr) or compile_k(args.k_expr)
    rows = []
    for n in range(1, args.n + 1):
        try:
            c = quasi_fib_general(n, args.q, K, args.k_expr, check=not args.no_check)
            rows.append({"n": n, "K": K(args.q, n), "lambda_n": c.lambda_n, "rho_n": c.rho_n,
                         "residual": c.residual})
        except DegenerateLevelsError:
            rows.append({"n": n, "K": None, "lambda_n": None, "rho_n": None, "residual": None})
    return Table("fib-general", {"q": args.q, "n": args.n, "K": args.k_expr, "tol": tol},
                 ["n", "K", "lambda_n", "rho_n", "residual"], rows, ok=_fib_ok(rows, tol))


def cmd_fivepar(args) -> Table:
    from .fib import fivepar_fibonacci_check, fivepar_sample
    if args.sample:
        cases = fivepar_sample(args.sample, args.seed)
    else:
        missing = [k for k in ("p", "q", "P", "Q") if getattr(args, k) is None]
        if missing:
            raise UsageError(f"fivepar needs --p --q --P --Q (missing {', '.join(missing)}) or --sample")
        cases = [(args.t, args.p, args.q, args.P, args.Q)]
    rows = []
    for t, p, q, P, Q in cases:
        r = fivepar_fibonacci_check(t, p, q, P, Q, args.n_max, _tol(args, 1e-12))
        v = r.verdict
        rows.append({"t": Fraction(t), "p": p, "q": q, "P": P, "Q": Q, "exception": r.exceptional or "",
                     "claimed_fibonacci": r.claimed_fibonacci, "is_fibonacci": v.is_fibonacci,
                     "lambda": v.lam, "rho": v.rho, "witness": v.witness, "consistent": r.consistent})
    cols = ["t", "p", "q", "P", "Q", "exception", "claimed_fibonacci", "is_fibonacci", "lambda", "rho",
            "witness", "consistent"]
    for r in rows:
        r["t"] = str(r["t"])
    return Table("fivepar", {"sample": args.sample, "seed": args.seed, "n_max": args.n_max}, cols, rows,
                 ok=all(r["consistent"] for r in rows))


def cmd_spectrum(args) -> Table:
    from .spectrum import energy
    rows = [{"n": n, "E_n": energy(n, args.q)} for n in range(args.levels)]
    return Table("spectrum", {"q": args.q, "levels": args.levels}, ["n", "E_n"], rows,
                 plot=_line_plot(rows, "n", ["E_n"], f"levels at {args.q}"))


def _degeneracy_rows(n: int, r: int, tol: float) -> List[Dict]:
    from .spectrum import DegeneracyQuery, find_degeneracies
    sol = find_degeneracies(DegeneracyQuery(n, r), tol)
    out = [{"n": n, "r": r, "theta": x.theta, "x": x.x, "residual": x.residual, "kind": "crossing"}
           for x in sol.roots]
    out += [{"n": n, "r": r, "theta": x.theta, "x": x.x, "residual": x.residual, "kind": "grazing"}
            for x in sol.grazing]
    return out


def cmd_degeneracy(args) -> Table:
    from .plotting import plot_degeneracy
    from .spectrum import DegeneracyQuery, degeneracy_poly
    tol = _tol(args, 1e-12)
    rows = _degeneracy_rows(args.n, args.r, tol)
    query = DegeneracyQuery(args.n, args.r)
    cols = ["theta", "x", "residual", "kind"]
    roots = [{c: r[c] for c in cols} for r in rows]
    plot = lambda path: plot_degeneracy(lambda x: degeneracy_poly(query, x), [r["x"] for r in rows], path,
                                        f"E_{args.n + args.r} = E_{args.n}")
    return Table("degeneracy", {"n": args.n, "r": args.r, "tol": tol}, cols, roots, {"roots": roots}, plot=plot)


def cmd_coherent(args) -> Table:
    from .coherent import build_coherent, eigenstate_residual
    tol = _tol(args, 1e-12)
    st = build_coherent(args.z, args.q, args.N, allow_phase=args.allow_phase)
    res = eigenstate_residual(st)
    overlap = st.overlap()
    rows = [{"n": n, "re": float(c.real), "im": float(c.imag), "abs2": float(abs(c) ** 2)}
            for n, c in enumerate(st.coeffs)]
    ok = abs(overlap - 1) <= tol and res <= 1e-10
    return Table("coherent", {"q": args.q, "z": args.z, "N": args.N}, ["n", "re", "im", "abs2"], rows,
                 {"norm_const": st.norm_const, "overlap": overlap, "eigenstate_residual": res}, ok=ok,
                 plot=_line_plot(rows, "n", ["abs2"], f"|c_n|^2 for z={args.z}", logy=True))


def cmd_completeness(args) -> Table:
    from .coherent import completeness_residual, weight_function_eval
    tol = _tol(args, 1e-5)
    _need_real(args.q)
    rows = []
    for n in range(args.n_max + 1):
        r = completeness_residual(n, args.q, args.K)
        rows.append({"n": n, "K": r.K, "residual": r.residual, "moment_residual": r.moment_residual,
                     "quadrature_error": r.quadrature_error})
    samples = [weight_function_eval(0.5 * i, args.q, args.N, args.K) for i in range(41)]
    negative = [{"x": s.x, "mu": s.value} for s in samples if s.value < 0]
    cols = ["n", "K", "residual", "moment_residual", "quadrature_error"]
    return Table("completeness", {"q": args.q, "n_max": args.n_max, "K": args.K, "N": args.N, "tol": tol},
                 cols, rows, {"weight_negative_samples": negative}, ok=all(r["residual"] <= tol for r in rows),
                 plot=_line_plot(rows, "n", ["residual", "moment_residual"], f"completeness at K={args.K}",
                                 logy=True))


# sweeps: module-level workers so they pickle for --jobs > 1

def _sweep_spectrum_point(job):
    from .spectrum import energy
    qv, levels = job
    q = Real(qv)
    return [{"q": qv, "n": n, "E_n": float(energy(n, q))} for n in range(levels)]


def _sweep_degeneracy_point(job):
    n, r, tol = job
    return _degeneracy_rows(n, r, tol)


def _sweep_fib_point(job):
    q, n, tol = job
    return _fib_rows(q, [n], tol)


def _pmap(fn, jobs: List, workers: int) -> List[Dict]:
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(fn, jobs))
    else:
        parts = [fn(j) for j in jobs]
    return [row for part in parts for row in part]


def cmd_sweep(args) -> Table:
    tol = _tol(args, 1e-12)
    if args.task == "spectrum":
        if not args.q_grid:
            raise UsageError("sweep spectrum needs --q-grid a:b:step")
        rows = _pmap(_sweep_spectrum_point, [(qv, args.levels) for qv in args.q_grid], args.jobs)
        return Table("sweep", {"task": "spectrum", "q_grid": args.q_grid, "levels": args.levels},
                     ["q", "n", "E_n"], rows, plot=_line_plot(rows, "q", ["E_n"], "levels over q", group="n"))
    if args.task == "degeneracy":
        ns, rs = args.n or [0], args.r or [1]
        if rs[0] < 1 or ns[0] < 0:
            raise UsageError("sweep degeneracy needs n >= 0 and r >= 1")
        rows = _pmap(_sweep_degeneracy_point, [(n, r, tol) for n in ns for r in rs], args.jobs)
        return Table("sweep", {"task": "degeneracy", "n": ns, "r": rs}, ["n", "r", "theta", "x", "residual", "kind"],
                     rows)
    ns = args.n or [1]
    if ns[0] < 1:
        raise UsageError("sweep fib needs n >= 1")
    tol = _tol(args, 1e-11)
    rows = _pmap(_sweep_fib_point, [(args.q, n, tol) for n in ns], args.jobs)
    return Table("sweep", {"task": "fib", "q": args.q, "n": ns}, ["n", "lambda_n", "rho_n", "residual"], rows,
                 ok=_fib_ok(rows, tol),
                 plot=_line_plot(rows, "n", ["lambda_n", "rho_n"], f"quasi-Fibonacci coefficients at {args.q}"))


def cmd_reproduce(args) -> Table:
    from .reproduce import TOPICS, run_reproduce
    rows = [r.as_dict() for r in run_reproduce()]
    counts = {s: sum(r["status"] == s for r in rows) for s in ("PASS", "FAIL", "DISPUTED")}
    covered = sorted({r["topic"] for r in rows}, key=TOPICS.index)
    cols = ["topic", "name", "expected", "got", "residual", "tol", "status", "note"]
    return Table("reproduce", {}, cols, rows, {"summary": counts, "topics": covered},
                 ok=all(r["status"] != "FAIL" for r in rows))


# -- helpers -----------------------------------------------------------------

def _tol(args, default: float) -> float:
    return args.tol if args.tol is not None else default


def _need_real(q: QParam):
    if not isinstance(q, Real) or q.q == 1:
        raise UsageError("this command needs a real q != 1 (e.g. real:0.9)")


def _line_plot(rows, x, ys, title, logy=False, group=None):
    def draw(path):
        from .plotting import plot_table
        data = rows
        if logy:
            data = [dict(r, **{y: abs(complex(r[y])) if r.get(y) is not None else None for y in ys}) for r in rows]
        plot_table([{k: _plain(v) for k, v in r.items()} for r in data], x, ys, path, title, group, logy)
    return draw


def _plain(v):
    if v is None:
        return math.nan
    if isinstance(v, (Laurent, RatFunc)):
        return math.nan
    if isinstance(v, complex):
        return v.real
    try:
        return float(v)
    except (TypeError, ValueError):
        return math.nan


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=positive_float, default=None,
                        help="verification tolerance (default 1e-12, or the command's own default)")
    common.add_argument("--N", type=positive_int, default=64, help="series truncation order (default 64)")
    common.add_argument("--K", type=_nonneg_int, default=12, help="weight expansion order (default 12)")
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--out", default=None, help="write the table here instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized samples")
    common.add_argument("--plot", action="store_true", help="also write a PNG next to --out")
    common.add_argument("--jobs", type=positive_int, default=1, help="worker processes for sweeps")

    qopt = argparse.ArgumentParser(add_help=False)
    qopt.add_argument("--q", type=parse_qspec, default=Real(0.9),
                      help="real:<x> | phase:<theta or k*pi/m> | symbolic (default real:0.9)")

    p = argparse.ArgumentParser(prog="stdq", description="tools for a symmetric q-deformed oscillator")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, parents=(common, qopt)):
        sp = sub.add_parser(name, parents=list(parents), help=help_)
        sp.set_defaults(func=fn)
        return sp

    sp = add("bracket", cmd_bracket, "the brackets {k} for k = 1..n")
    sp.add_argument("--n", type=positive_int, required=True)

    sp = add("fock-check", cmd_fock_check, "ladder-operator algebra on a truncated Fock space")
    sp.add_argument("--dim", type=positive_int, default=8)

    sp = add("qexp", cmd_qexp, "coefficients 1/{n}! of the deformed exponential")
    sp.add_argument("--x", type=float, default=None, help="also evaluate E(x)")
    sp.add_argument("--allow-phase", action="store_true")

    sp = add("qexp-inverse", cmd_qexp_inverse, "coefficients of 1/E(x)")
    sp.add_argument("--allow-phase", action="store_true")

    sp = add("integrate", cmd_integrate, "half-line moments of E(-a x) by quadrature")
    sp.add_argument("--n", type=_nonneg_int, default=3, help="highest moment")
    sp.add_argument("--a", type=parse_rational, default=Fraction(1))

    sp = add("moments", cmd_moments, "closed-form moments of E(-a x)")
    sp.add_argument("--n", type=_nonneg_int, default=5)
    sp.add_argument("--a", type=parse_rational, default=Fraction(1))

    sp = add("fib", cmd_fib, "quasi-Fibonacci coefficients by the simplest splitting")
    sp.add_argument("--n", type=positive_int, default=10, help="highest level index")

    sp = add("fib-general", cmd_fib_general, "quasi-Fibonacci coefficients with lambda_n = 2 + K(q, n)")
    sp.add_argument("--n", type=positive_int, default=10)
    sp.add_argument("--k-expr", default="zero",
                    help="'zero', 'unit-rho' or an expression in q and n, e.g. '(q-1)^2*n'")
    sp.add_argument("--no-check", action="store_true", help="skip the K -> 0 as q -> 1 check")

    sp = add("fivepar", cmd_fivepar, "Fibonacci test for the glued five-parameter family", parents=(common,))
    sp.add_argument("--t", type=parse_rational, default=Fraction(1, 2))
    for name in ("p", "q", "P", "Q"):
        sp.add_argument(f"--{name}", type=parse_qspec, default=None)
    sp.add_argument("--sample", type=positive_int, default=0, help="run a seeded random sample of this size")
    sp.add_argument("--n-max", type=positive_int, default=12)

    sp = add("spectrum", cmd_spectrum, "energy levels E_n")
    sp.add_argument("--levels", type=positive_int, default=10)

    sp = add("degeneracy", cmd_degeneracy, "angles with E_{n+r} = E_n at q = exp(i theta)", parents=(common,))
    sp.add_argument("--n", type=_nonneg_int, required=True)
    sp.add_argument("--r", type=positive_int, required=True)

    sp = add("coherent", cmd_coherent, "truncated coherent state |z>")
    sp.add_argument("--z", type=parse_z, default=complex(0.5, 0))
    sp.add_argument("--allow-phase", action="store_true")

    sp = add("completeness", cmd_completeness, "moment check of the coherent-state weight")
    sp.add_argument("--n-max", type=_nonneg_int, default=3)

    sp = add("sweep", cmd_sweep, "parameter sweeps for plotting")
    sp.add_argument("task", choices=["spectrum", "degeneracy", "fib"])
    sp.add_argument("--q-grid", type=parse_grid, default=None)
    sp.add_argument("--levels", type=positive_int, default=10)
    sp.add_argument("--n", type=parse_range, default=None, help="a..b")
    sp.add_argument("--r", type=parse_range, default=None, help="a..b")

    add("reproduce", cmd_reproduce, "recompute the quoted golden values", parents=(common,))
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    from .expr import ExprError
    from .fib import InadmissibleKError

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.plot and not args.out:
        print("stdq: error: --plot needs --out", file=sys.stderr)
        return 2
    if args.out and Path(args.out).suffix == ".png":
        print("stdq: error: --out names the table file; the figure goes next to it", file=sys.stderr)
        return 2
    try:
        table = args.func(args)
    except (UsageError, ExprError, InadmissibleKError) as e:
        print(f"stdq: error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"stdq: error: {e}", file=sys.stderr)
        return 2
    except ArithmeticError as e:
        print(f"stdq: numerical failure: {e}", file=sys.stderr)
        return 1
    text = render(table, args.format)
    if args.out:
        Path(args.out).write_text(text)
        if args.plot and table.plot is not None:
            table.plot(str(Path(args.out).with_suffix(".png")))
    else:
        sys.stdout.write(text)
    if not table.ok:
        print(f"stdq: {table.command}: verification failed", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
