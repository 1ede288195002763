"""Command-line front end: factorizations, certificates and polynomials as JSON.

Input documents are UTF-8 JSON objects {"matrix": [[...], ...], "label": ...}
with a 4x4 row-major matrix of finite numbers; a JSON array of documents is a
batch, and the output mirrors the input cardinality and order. Numbers are
serialized with the shortest round-trip representation, so fixed inputs give
byte-identical output files.

Exit codes: 0 success, 1 usage or parse error, 2 structural precondition
failed, 3 numeric guard tripped or a residual above tolerance.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import batch as batch_mod
from .errors import NUMERIC_GUARD_ERRORS, STRUCTURAL_ERRORS, Sp4QuatError
from .hh_rep import TensorRep, matrix_of_rep, rep_of_matrix
from .polar import (
    enumerate_sym_symplectic_sqrts,
    euler_cartan,
    full_quaternion_form,
    polar_decompose,
)
from .symplectic import (
    charpoly_symplectic,
    check_sym_symplectic,
    hamiltonian_residual,
    is_hamiltonian,
    is_pd_symplectic,
    is_symplectic,
    pd_certificate,
    sym_rep_of_matrix,
    symplectic_residual,
)
from .testkit import GeneratorConfig, matrices

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_STRUCTURAL = 2
EXIT_NUMERIC = 3


class _UsageError(Exception):
    pass


class _GuardFailure(Exception):
    """A report was computed but a requested residual is above tolerance."""

    def __init__(self, report, message):
        super().__init__(message)
        self.report = report


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; the contract here is 1.
    def error(self, message):
        raise _UsageError(message)


def _vec(v) -> list:
    return [float(x) for x in v]


def _mat(m) -> list:
    return [[float(x) for x in row] for row in m]


def _load_input(path: str):
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _UsageError(f"invalid JSON input: {exc}") from exc
    if isinstance(payload, list):
        return payload, True
    return [payload], False


def _parse_document(doc) -> tuple:
    if not isinstance(doc, dict) or "matrix" not in doc:
        raise _UsageError("each document must be an object with a 'matrix' field")
    raw = doc["matrix"]
    if (not isinstance(raw, list) or len(raw) != 4
            or any(not isinstance(row, list) or len(row) != 4 for row in raw)):
        raise _UsageError("'matrix' must be a 4x4 array")
    try:
        m = np.array(raw, dtype=float)
    except (TypeError, ValueError) as exc:
        raise _UsageError(f"matrix entries must be numbers: {exc}") from exc
    if not np.all(np.isfinite(m)):
        raise _UsageError("matrix entries must be finite")
    label = doc.get("label")
    if label is not None and not isinstance(label, str):
        raise _UsageError("'label' must be a string when present")
    return label, m


def _emit(payload, is_batch: bool, out_path: str, fmt: str) -> None:
    if not is_batch:
        payload = payload[0]
    if fmt == "json":
        text = json.dumps(payload, indent=2, sort_keys=True, allow_nan=False) + "\n"
    else:
        text = _render_text(payload if isinstance(payload, list) else [payload])
    if out_path == "-":
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _render_text(reports: list) -> str:
    lines = []
    for rep in reports:
        for key in sorted(rep):
            value = rep[key]
            if isinstance(value, list) and value and isinstance(value[0], list):
                lines.append(f"{key}:")
                for row in value:
                    lines.append("  " + "  ".join(f"{x: .12e}" for x in row))
            else:
                lines.append(f"{key}: {value}")
        lines.append("")
    return "\n".join(lines)


def _report_repr(label, m, tol):
    rep = rep_of_matrix(m)
    sym_part = 0.5 * (m + m.T)
    skew_part = 0.5 * (m - m.T)
    sym_rebuilt = matrix_of_rep(TensorRep(a=rep.a, p=rep.p, q=rep.q, r=rep.r))
    skew_rebuilt = matrix_of_rep(TensorRep(s=rep.s, t=rep.t))
    return {
        "label": label,
        "a": float(rep.a),
        "p": _vec(rep.p),
        "q": _vec(rep.q),
        "r": _vec(rep.r),
        "s": _vec(rep.s),
        "t": _vec(rep.t),
        "residual_symmetric": float(np.max(np.abs(sym_rebuilt - sym_part))),
        "residual_skew": float(np.max(np.abs(skew_rebuilt - skew_part))),
    }


def _report_polar(label, m, tol):
    factors = polar_decompose(m, tol)
    y = m.T @ m
    residual_polar = float(np.max(np.abs(factors.U @ factors.H - m)))
    residual_sqrt = float(np.max(np.abs(factors.H @ factors.H - y)))
    report = {
        "label": label,
        "u": _vec(factors.ortho.u.as_array()),
        "v0": factors.ortho.v0,
        "v2": factors.ortho.v2,
        "a": factors.sym.a,
        "p": _vec(factors.sym.p),
        "q": _vec(factors.sym.q),
        "r": _vec(factors.sym.r),
        "U": _mat(factors.U),
        "H": _mat(factors.H),
        "residual_polar": residual_polar,
        "residual_sqrt": residual_sqrt,
        "diagnostics": {
            "b": factors.info.b,
            "d_norm": factors.info.d_norm,
            "branch": factors.info.branch,
            "root_hi": factors.info.root_hi,
            "root_lo": factors.info.root_lo,
        },
    }
    scale_x = 1.0 + float(np.max(np.abs(m)))
    scale_y = 1.0 + float(np.max(np.abs(y)))
    if residual_polar > tol * scale_x or residual_sqrt > tol * scale_y:
        raise _GuardFailure(report, "polar residual above tolerance")
    return report


def _report_charpoly(label, m, tol):
    ortho, sym = full_quaternion_form(m, tol)
    poly = charpoly_symplectic(ortho, sym, tol)
    return {"label": label, "coefficients": [float(c) for c in poly.coefficients()]}


def _report_check(label, m, tol):
    sym_rep = sym_rep_of_matrix(m)
    symmetric = float(np.max(np.abs(m - m.T))) <= tol * (1.0 + float(np.max(np.abs(m))))
    sym_sympl = symmetric and check_sym_symplectic(sym_rep, tol)
    cert = pd_certificate(sym_rep)
    return {
        "label": label,
        "symplectic": bool(is_symplectic(m, tol)),
        "hamiltonian": bool(is_hamiltonian(m, tol)),
        "symmetric_symplectic": bool(sym_sympl),
        "pd_symplectic": bool(sym_sympl and cert.positive_definite),
        "residuals": {
            "symplectic": symplectic_residual(m),
            "hamiltonian": hamiltonian_residual(m),
            "symmetry": float(np.max(np.abs(m - m.T))),
        },
        "pd_margins": {
            "trace_quarter": cert.trace_margin,
            "quadratic": cert.quadratic_margin,
            "boundary": cert.boundary,
        },
    }


def _report_sqrts(label, m, tol):
    # A symmetric input is taken to be the Gram matrix itself; otherwise the
    # square roots of X^T X are enumerated.
    symmetric = float(np.max(np.abs(m - m.T))) <= tol * (1.0 + float(np.max(np.abs(m))))
    y = m if symmetric else m.T @ m
    roots = enumerate_sym_symplectic_sqrts(y, tol)
    entries = []
    for rep in roots:
        h = rep.to_matrix()
        entries.append({
            "a": rep.a,
            "p": _vec(rep.p),
            "q": _vec(rep.q),
            "r": _vec(rep.r),
            "matrix": _mat(h),
            "trace": float(np.trace(h)),
            "positive_definite": bool(is_pd_symplectic(rep)),
            "residual_square": float(np.max(np.abs(h @ h - y))),
        })
    return {
        "label": label,
        "count": len(entries),
        "positive_trace_count": sum(1 for ent in entries if ent["trace"] > 0),
        "gram": _mat(y),
        "roots": entries,
    }


def _report_cartan(label, m, tol):
    fact = euler_cartan(m, tol)
    residual = float(np.max(np.abs(fact.U1 @ fact.D @ fact.U2 - m)))
    report = {
        "label": label,
        "U1": _mat(fact.U1),
        "D": _vec(np.diag(fact.D)),
        "U2": _mat(fact.U2),
        "degenerate": bool(fact.degenerate),
        "residual": residual,
    }
    if residual > tol * (1.0 + float(np.max(np.abs(m)))):
        raise _GuardFailure(report, "factorization residual above tolerance")
    return report


_REPORTERS = {
    "repr": _report_repr,
    "polar": _report_polar,
    "charpoly": _report_charpoly,
    "check": _report_check,
    "sqrts": _report_sqrts,
    "cartan": _report_cartan,
}


def _run_matrix_command(args) -> int:
    docs, is_batch = _load_input(args.input)
    parsed = [_parse_document(doc) for doc in docs]
    reporter = _REPORTERS[args.command]
    reports = []
    for label, m in parsed:
        reports.append(reporter(label, m, args.tol))
    if args.command == "check" and args.require:
        wanted = [name.strip() for name in args.require.split(",") if name.strip()]
        for rep in reports:
            for name in wanted:
                if name not in ("symplectic", "hamiltonian", "symmetric_symplectic", "pd_symplectic"):
                    raise _UsageError(f"unknown predicate in --require: {name}")
                if not rep[name]:
                    _emit(reports, is_batch, args.out, args.format)
                    return EXIT_STRUCTURAL
    _emit(reports, is_batch, args.out, args.format)
    return EXIT_OK


def _run_generate(args) -> int:
    config = GeneratorConfig(seed=args.seed, spread=args.spread, count=args.count)
    docs = [
        {"label": f"sp4-{args.seed}-{i:04d}", "matrix": _mat(m)}
        for i, m in enumerate(matrices(config))
    ]
    _emit(docs, True, args.out, args.format)
    return EXIT_OK


def _run_bench_info(args) -> int:
    _emit([{"backend": batch_mod.BACKEND, "available": sorted(batch_mod.backends())}],
          False, args.out, args.format)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sp4quat",
                     description="Quaternion-pair factorizations of 4x4 symplectic matrices")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_input=True):
        if with_input:
            p.add_argument("input", nargs="?", default="-",
                           help="input JSON file (document or array), '-' for stdin")
        p.add_argument("--tol", type=float, default=1e-9,
                       help="residual tolerance (default 1e-9)")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--out", default="-", help="output path, '-' for stdout")

    for name, help_text in (
        ("repr", "tensor coefficients (a, p, q, r, s, t) of a matrix"),
        ("polar", "polar decomposition U H with quaternion parameters"),
        ("charpoly", "palindromic characteristic polynomial coefficients"),
        ("check", "membership certificates with residuals"),
        ("sqrts", "all nonzero-trace symmetric symplectic square roots of X^T X"),
        ("cartan", "Euler-Cartan factorization U1 D U2"),
    ):
        p = sub.add_parser(name, help=help_text)
        common(p)
        if name == "check":
            p.add_argument("--require", default="",
                           help="comma list of predicates that must hold (exit 2 otherwise)")

    gen = sub.add_parser("generate", help="write a deterministic batch of symplectic matrices")
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--count", type=int, default=10)
    gen.add_argument("--spread", type=float, default=1.0)
    common(gen, with_input=False)

    backend = sub.add_parser("backend", help="show which batch kernel is active")
    common(backend, with_input=False)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "generate":
            return _run_generate(args)
        if args.command == "backend":
            return _run_bench_info(args)
        return _run_matrix_command(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _GuardFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except STRUCTURAL_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_STRUCTURAL
    except NUMERIC_GUARD_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except Sp4QuatError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
