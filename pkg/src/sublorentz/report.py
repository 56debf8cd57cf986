"""Analysis pipelines assembling deterministic, schema-stable reports.

Every symbolic field is a canonically rendered string, every check verdict is
tri-state (pass / fail / indeterminate), and dictionary order is fixed so that
JSON output is byte-deterministic for identical inputs.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional

from . import expr as ex
from .calculus import VectorField
from .contact import Frame, apparatus_checks, build_apparatus
from .errors import EngineError, HTildeNonzero
from .expr import Chart, Expr, Tri
from .invariants import (
    ConstantContext,
    CoordinateContext,
    Invariants,
    StructureFunctions,
    classify,
    compute_invariants,
    dilate,
    eta_check,
    hyperbolic_rotate,
    lift_frame,
    rotation_matrix,
)
from .lie_algebra import (
    catalog_algebra,
    catalog_marking,
    constant_mode_invariants,
    jacobi_check,
    killing_form,
)
from .ode_bridge import build_from_ode, verify_null_bundles
from .parsing import StructureDefinition, render_expr, render_field
from .symmetry import binomial_identity_check, conformal_factor, preserves_distribution

REPORT_VERSION = 1


def tri_word(t: Tri) -> str:
    return {Tri.TRUE: "pass", Tri.FALSE: "fail", Tri.UNKNOWN: "indeterminate"}[t]


def _status(checks: dict[str, str]) -> str:
    words = set(checks.values())
    if "fail" in words:
        return "fail"
    if "indeterminate" in words:
        return "indeterminate"
    return "pass"


def _render_matrix2(m) -> list[list[str]]:
    return [[render_expr(e) for e in row] for row in m]


def _invariants_block(inv: Invariants) -> dict:
    return {
        "h_tilde": _render_matrix2(inv.h_tilde),
        "chi": render_expr(inv.chi),
        "kappa": render_expr(inv.kappa),
    }


def _classification_block(c) -> dict:
    witness = {}
    for k, v in c.witness.items():
        witness[k] = render_expr(v) if isinstance(v, Expr) else v
    return {"label": c.label, "scope": c.scope, "witness": witness}


def _sf_block(sf: StructureFunctions) -> dict:
    return {k: render_expr(v) for k, v in sf.as_dict().items()}


def _identity_checks(ctx, checks: dict[str, str]):
    """Trace identity always; eta-closure and codifferential identities when
    h_tilde vanishes (skipped otherwise: they are defined only in that case)."""
    sf = ctx.sf
    checks["trace_identity"] = tri_word((sf.c011 + sf.c022).is_zero())
    inv = compute_invariants(sf, ctx)
    ht = inv.h_tilde_is_zero()
    if ht is Tri.TRUE:
        report = eta_check(ctx)
        checks["eta_closure"] = tri_word(ex.all_zero(report.closure_residuals))
        checks["codifferential_identities"] = tri_word(
            ex.all_zero(report.codifferential_residuals)
        )


def _symmetry_entries(app, fields) -> list[dict]:
    out = []
    for name, Z in fields:
        entry = {"name": name, "field": render_field(Z)}
        pres = preserves_distribution(Z, app)
        entry["preserves_distribution"] = tri_word(pres)
        if pres is Tri.TRUE:
            verdict = conformal_factor(Z, app)
            entry["verdict"] = verdict.kind
            if verdict.kind == "conformal":
                entry["mu"] = render_expr(verdict.mu)
            if verdict.kind in ("isometry", "conformal"):
                residuals = []
                for n in (2, 3):
                    residuals.extend(binomial_identity_check(Z, app, n))
                entry["bracket_series_residuals_zero"] = tri_word(ex.all_zero(residuals))
        else:
            entry["verdict"] = "neither" if pres is Tri.FALSE else "unknown"
        out.append(entry)
    return out


def analyze_definition(defn: StructureDefinition, command: str = "analyze") -> dict:
    if defn.mode == "frame":
        return _analyze_frame(defn, command)
    return _analyze_algebra(defn, command)


def _frame_blocks(frame: Frame, *, symmetry_fields=()) -> tuple[dict, dict, CoordinateContext]:
    app = build_apparatus(frame)
    ctx = CoordinateContext(app)
    sf = ctx.sf
    inv = compute_invariants(sf, ctx)
    checks = {name: tri_word(v) for name, v in apparatus_checks(app).items()}
    _identity_checks(ctx, checks)
    blocks = {
        "frame": {"X1": render_field(frame.x1), "X2": render_field(frame.x2)},
        "apparatus": {
            "omega": [render_expr(c) for c in app.omega.components],
            "reeb_field": render_field(app.x0),
            "coframe": [[render_expr(c) for c in f.components] for f in app.coframe],
            "contact_locus": render_expr(app.contact_det),
            "excluded_loci": [render_expr(e) for e in app.excluded],
        },
        "structure_functions": _sf_block(sf),
        "invariants": _invariants_block(inv),
        "classification": _classification_block(classify(inv, "frame", sf, ctx)),
    }
    if symmetry_fields:
        blocks["symmetry"] = _symmetry_entries(app, symmetry_fields)
    return blocks, checks, ctx


def _analyze_frame(defn: StructureDefinition, command: str) -> dict:
    frame = Frame(defn.chart, defn.x1, defn.x2)
    blocks, checks, _ = _frame_blocks(frame, symmetry_fields=defn.symmetry_fields)
    report = {
        "report_version": REPORT_VERSION,
        "command": command,
        "input": {"source": defn.source_name, "mode": "frame"},
        "chart": {"coords": list(defn.chart.coords), "params": list(defn.chart.params)},
    }
    report.update(blocks)
    report["checks"] = checks
    report["status"] = _status(checks)
    return report


def _analyze_algebra(defn: StructureDefinition, command: str) -> dict:
    sf = StructureFunctions(**defn.structure_constants)
    ctx = ConstantContext(sf, defn.chart)
    inv = compute_invariants(sf, ctx)
    checks: dict[str, str] = {}
    _identity_checks(ctx, checks)
    report = {
        "report_version": REPORT_VERSION,
        "command": command,
        "input": {"source": defn.source_name, "mode": "algebra"},
        "chart": {"coords": list(defn.chart.coords), "params": list(defn.chart.params)},
        "structure_functions": _sf_block(sf),
        "invariants": _invariants_block(inv),
        "classification": _classification_block(classify(inv, "algebra", sf, ctx)),
        "checks": checks,
    }
    report["status"] = _status(checks)
    return report


def classify_report(defn: StructureDefinition) -> dict:
    full = analyze_definition(defn, command="classify")
    keep = ("report_version", "command", "input", "invariants", "classification",
            "checks", "status")
    out = {k: full[k] for k in keep if k in full}
    label = out["classification"]["label"]
    if label == "Undecided":
        out["checks"] = dict(out["checks"], classification_decided="indeterminate")
        out["status"] = _status(out["checks"])
    return out


def symmetry_report(defn: StructureDefinition) -> dict:
    if defn.mode != "frame":
        raise EngineError("the symmetry command requires a coordinate frame")
    if not defn.symmetry_fields:
        raise EngineError("the structure file has no [symmetry] section")
    full = analyze_definition(defn, command="symmetry")
    checks = dict(full["checks"])
    for entry in full["symmetry"]:
        checks[f"symmetry_{entry['name']}_decided"] = (
            "indeterminate" if entry["verdict"] == "unknown" else "pass"
        )
    full["checks"] = checks
    full["status"] = _status(checks)
    return full


def rotate_report(defn: StructureDefinition, theta: Expr) -> dict:
    if defn.mode != "frame":
        raise EngineError("rotation requires a coordinate frame")
    frame = Frame(defn.chart, defn.x1, defn.x2)
    blocks, checks, ctx = _frame_blocks(frame)
    inv = compute_invariants(ctx.sf, ctx)

    rotated = hyperbolic_rotate(frame, theta)
    rblocks, rchecks, rctx = _frame_blocks(rotated)
    rinv = compute_invariants(rctx.sf, rctx)

    checks = {f"rotated:{k}": v for k, v in rchecks.items()}
    checks["kappa_invariant"] = tri_word((rinv.kappa - inv.kappa).is_zero())
    checks["chi_invariant"] = tri_word((rinv.chi - inv.chi).is_zero())
    checks["h_tilde_conjugation"] = tri_word(
        ex.all_zero(_conjugation_residuals(inv, rinv, theta))
    )

    report = {
        "report_version": REPORT_VERSION,
        "command": "rotate",
        "input": {"source": defn.source_name, "mode": "frame"},
        "theta": render_expr(theta),
        "frame": blocks["frame"],
        "rotated_frame": rblocks["frame"],
        "invariants": blocks["invariants"],
        "rotated_invariants": rblocks["invariants"],
        "checks": checks,
    }
    report["status"] = _status(checks)
    return report


def _conjugation_residuals(inv: Invariants, rinv: Invariants, theta: Expr) -> list[Expr]:
    """Entries of h_tilde(rotated) - M(theta)^-1 h_tilde M(theta)."""
    (ch_, sh_) = (ex.cosh(theta), ex.sinh(theta))
    m = ((ch_, sh_), (sh_, ch_))
    minv = ((ch_, -sh_), (-sh_, ch_))  # det = cosh^2 - sinh^2 = 1
    h = inv.h_tilde
    prod = [[sum((minv[i][k] * h[k][l] * m[l][j] for k in range(2) for l in range(2)),
                 theta.chart.zero())
             for j in range(2)] for i in range(2)]
    return [rinv.h_tilde[i][j] - prod[i][j] for i in range(2) for j in range(2)]


def dilate_report(defn: StructureDefinition, scale: str) -> dict:
    if defn.mode != "frame":
        raise EngineError("dilation requires a coordinate frame")
    frame = Frame(defn.chart, defn.x1, defn.x2)
    blocks, _, ctx = _frame_blocks(frame)
    inv = compute_invariants(ctx.sf, ctx)

    dilated = dilate(frame, scale)
    chart2 = dilated.chart
    s = chart2.var(scale)
    dblocks, dchecks, dctx = _frame_blocks(dilated)
    dinv = compute_invariants(dctx.sf, dctx)

    lift = lambda e: Expr(chart2, e.sym)  # noqa: E731  (same symbols, wider chart)
    checks = {f"dilated:{k}": v for k, v in dchecks.items()}
    # c12' = s c12 but c0j' = s^2 c0j (the Reeb field rescales by s^2), hence
    # kappa' = s^2 kappa while chi' = s^4 chi and h_tilde' = s^2 h_tilde.
    s2 = s * s
    checks["kappa_scaling_s2"] = tri_word((dinv.kappa - s2 * lift(inv.kappa)).is_zero())
    checks["chi_scaling_s4"] = tri_word((dinv.chi - s2 * s2 * lift(inv.chi)).is_zero())
    h_resid = [
        dinv.h_tilde[i][j] - s2 * lift(inv.h_tilde[i][j])
        for i in range(2) for j in range(2)
    ]
    checks["h_tilde_scaling_s2"] = tri_word(ex.all_zero(h_resid))

    report = {
        "report_version": REPORT_VERSION,
        "command": "dilate",
        "input": {"source": defn.source_name, "mode": "frame"},
        "scale": scale,
        "invariants": blocks["invariants"],
        "dilated_invariants": dblocks["invariants"],
        "checks": checks,
    }
    report["status"] = _status(checks)
    return report


def algebra_report(name: str, kappa: Optional[Fraction] = None) -> dict:
    if kappa is None:
        algebra = catalog_algebra(name)
    else:
        chart = Chart((), ())
        algebra = catalog_algebra(name, kappa=chart.number(kappa))
    checks: dict[str, str] = {}
    checks["jacobi"] = tri_word(jacobi_check(algebra))
    killing = killing_form(algebra)
    brackets = {}
    for i, j, vec in algebra.nonzero_brackets():
        terms = []
        for k, c in enumerate(vec):
            if c.sym == 0:
                continue
            text = render_expr(c)
            if text == "1":
                terms.append(algebra.labels[k])
            elif text == "-1":
                terms.append("-" + algebra.labels[k])
            else:
                terms.append(f"({text})*{algebra.labels[k]}")
        brackets[f"[{algebra.labels[i]},{algebra.labels[j]}]"] = " + ".join(terms).replace("+ -", "- ")
    report = {
        "report_version": REPORT_VERSION,
        "command": "algebra",
        "input": {"source": f"catalog:{name}", "mode": "algebra"},
        "algebra": {
            "name": name,
            "dimension": algebra.dim,
            "basis": list(algebra.labels),
            "brackets": brackets,
        },
        "killing": {
            "matrix": [[render_expr(e) for e in row] for row in killing.matrix],
            "det": render_expr(killing.det),
            "signature": list(killing.signature) if killing.signature else None,
        },
    }
    marking = catalog_marking(name)
    if marking is not None:
        sf, inv = constant_mode_invariants(algebra, marking)
        ctx = ConstantContext(sf, algebra.chart)
        report["structure_functions"] = _sf_block(sf)
        report["invariants"] = _invariants_block(inv)
        report["classification"] = _classification_block(classify(inv, "algebra", sf, ctx))
        _identity_checks(ctx, checks)
    report["checks"] = checks
    report["status"] = _status(checks)
    return report


def ode_report(q: Expr) -> dict:
    structure = build_from_ode(q)
    null_checks = {k: tri_word(v) for k, v in verify_null_bundles(structure).items()}
    blocks, checks, _ = _frame_blocks(structure.frame)
    checks = dict(null_checks, **checks)
    report = {
        "report_version": REPORT_VERSION,
        "command": "ode",
        "input": {"source": "ode", "mode": "frame"},
        "Q": render_expr(q),
        "one_forms": {
            "w1": [render_expr(c) for c in structure.omega1.components],
            "w2": [render_expr(c) for c in structure.omega2.components],
            "w3": [render_expr(c) for c in structure.omega3.components],
        },
        "null_fields": {
            "N1": render_field(structure.n1),
            "N2": render_field(structure.n2),
        },
    }
    report.update(blocks)
    report["checks"] = checks
    report["status"] = _status(checks)
    return report


# -- output ------------------------------------------------------------------


EXIT_CODES = {"pass": 0, "fail": 1, "indeterminate": 2}


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2)


def to_text(report: dict) -> str:
    lines: list[str] = []

    def emit(key: str, value, depth: int):
        pad = "  " * depth
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            for k, v in value.items():
                emit(k, v, depth + 1)
        elif isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value):
            lines.append(f"{pad}{key}:")
            for i, v in enumerate(value):
                emit(f"[{i}]", v, depth + 1)
        elif isinstance(value, list):
            lines.append(f"{pad}{key}: [{', '.join(str(v) for v in value)}]")
        else:
            lines.append(f"{pad}{key}: {value}")

    for key, value in report.items():
        emit(key, value, 0)
    return "\n".join(lines) + "\n"
