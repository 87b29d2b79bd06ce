"""JSON-ready reports for the command line front end.

Every report carries the input echo, the coordinate changes, kappa, the
verdict, the diagnostics and the derived data.  Serialization uses sorted
keys and canonical rational strings so that identical input gives
byte-identical output once timings are switched off.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from .algebra import Poly, dominance_test, rational_str, vector_str
from .analysis import build_deformation, deformation_weights_ok, gamma_to_lambda, semigroup_generators
from .errors import ParseError, QuasiordError
from .kappa import INFINITY, KappaResult, run_construction, unfold_to_base
from .parser import parse_polynomial
from .resultant import discriminant_main

COMMANDS = ("kappa", "certify", "roots", "deformation")


@dataclass
class InputSpec:
    base: Sequence[str]
    main: str
    text: str
    command: str = "kappa"
    base_budget: int = 16
    root_bound: Optional[int] = None
    eta: Optional[Sequence[int]] = None
    timings: bool = True
    extras: dict = field(default_factory=dict)

    def validate(self):
        names = list(self.base) + [self.main]
        if len(set(names)) != len(names):
            raise ValueError("declared variable names must be distinct and the main variable must not be a base variable")
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    return str(value)


def _error(exc: Exception) -> dict:
    out = {"type": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, ParseError):
        out["line"], out["column"] = exc.line, exc.column
    return out


def _series_terms(series, base, max_terms=None) -> List[list]:
    ring = series.ring
    out = []
    for k, (ex, c) in enumerate(series.items()):
        if max_terms is not None and k >= max_terms:
            break
        out.append([vector_str(ex), ring.to_str(c)])
    return out


def _series_text(series, base, max_terms=8) -> str:
    parts = []
    for k, (ex, c) in enumerate(series.items()):
        if k >= max_terms:
            parts.append("...")
            break
        mono = "*".join(f"{name}^({rational_str(a)})" for name, a in zip(base, ex) if a)
        coeff = series.ring.to_str(c)
        parts.append(f"({coeff})*{mono}" if mono else f"({coeff})")
    return " + ".join(parts) if parts else "0"


def kappa_data(result: KappaResult) -> dict:
    st = result.state
    gammas = list(result.vertices)
    lam = gamma_to_lambda(gammas, st.indices)
    coords = result.coordinates_poly
    delta = dominance_test(discriminant_main(coords, result.main))
    try:
        roots = [str(q) for q in unfold_to_base(result)]
    except QuasiordError:
        roots = []
    deformation = build_deformation(result).render() if result.terminal == INFINITY else []
    return {
        "n": st.degrees[0],
        "n_i": list(st.indices),
        "e_i": list(st.degrees),
        "gamma": [vector_str(g) for g in gammas],
        "lambda": [vector_str(v) for v in lam],
        "semigroup_generators": [vector_str(g) for g in semigroup_generators(result)],
        "approximate_roots": roots,
        "discriminant_delta": None if delta is None else [str(a) for a in delta],
        "deformation": deformation,
    }


def run_report(spec: InputSpec) -> dict:
    """Dispatch one subcommand; failures land in the "error" field."""
    t0 = time.perf_counter()
    report: dict = {
        "input": {"vars": list(spec.base), "main": spec.main, "poly": spec.text, "command": spec.command},
        "changes": None,
        "kappa": None,
        "quasi_ordinary": None,
        "diagnostics": [],
        "data": None,
        "error": None,
    }
    try:
        spec.validate()
        gens = tuple(spec.base) + (spec.main,)
        f = parse_polynomial(spec.text, gens)
        report["input"]["parsed"] = str(f)
        result = run_construction(f, spec.main, spec.base_budget, base=spec.base)
        st = result.state
        report["changes"] = {
            "main_shift": str(st.shifts[0]) if st.shifts else "0",
            "base_shifts": [ch.describe() for ch in result.base_changes],
        }
        report["kappa"] = {"vertices": [vector_str(v) for v in result.vertices], "terminal": result.terminal}
        report["quasi_ordinary"] = result.quasi_ordinary
        report["diagnostics"] = _jsonable(result.diagnostics)
        report["data"] = kappa_data(result)
        if spec.command == "certify":
            from .analysis import qo_certificate
            cert = qo_certificate(f, spec.main, result=result)
            report["certificate"] = {
                "oracle": cert.verdict,
                "kappa_terminal": cert.kappa_terminal,
                "agreement": cert.agreement,
                "delta": None if cert.delta is None else "(" + ",".join(str(a) for a in cert.delta) + ")",
                "raw_delta": None if cert.raw_delta is None else "(" + ",".join(str(a) for a in cert.raw_delta) + ")",
                "discriminant": str(cert.discriminant),
            }
        elif spec.command == "roots":
            report["roots"] = _roots_section(result, spec)
        elif spec.command == "deformation":
            if result.terminal != INFINITY:
                raise QuasiordError("deformation needs a quasi-ordinary input (terminal infinity)")
            fam = build_deformation(result)
            report["deformation"] = {
                "variables": list(fam.gens),
                "equations": fam.render(),
                "weights": [vector_str(w) for w in fam.weights],
                "weights_ok": deformation_weights_ok(fam, result),
                "special_fibre": [str(F) for F in fam.specialize(0)],
            }
    except (QuasiordError, ValueError) as exc:
        report["error"] = _error(exc)
    if spec.timings:
        report["timings"] = {"total_seconds": round(time.perf_counter() - t0, 6)}
    return report


def _roots_section(result: KappaResult, spec: InputSpec) -> dict:
    from .roots import RootExpander, verify_root
    if result.terminal != INFINITY:
        raise QuasiordError("root expansion needs a quasi-ordinary input (terminal infinity)")
    ex = RootExpander(result, spec.root_bound)
    eta = tuple(spec.eta) if spec.eta is not None else (0,) * ex.g
    series = ex.branch(eta)
    check = verify_root(result.coordinates_poly, result.main, series, ex.bound)
    ring, _ = ex.branch_ring()
    return {
        "bound": rational_str(ex.bound),
        "eta": list(eta),
        "branches": [list(e) for e, _ in ex.branch_table()],
        "extension": [[name, [ring.to_str(c, k) for c in mod]] for k, (name, mod) in enumerate(ring.levels)],
        "series": _series_text(series, result.state.tower.base),
        "terms": _series_terms(series, result.state.tower.base),
        "verified": check.passed,
        "residual_lowest": None if check.lowest is None else vector_str(check.lowest),
    }


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2)


def render_text(report: dict) -> str:
    """Short human-readable summary."""
    lines = [f"input: {report['input'].get('parsed', report['input']['poly'])}"]
    if report.get("error"):
        err = report["error"]
        lines.append(f"error: {err['type']}: {err['message']}")
        if report.get("kappa") is None:
            return "\n".join(lines)
    ch = report["changes"]
    if ch["main_shift"] != "0":
        lines.append(f"main shift: {report['input']['main']} + ({ch['main_shift']})")
    for b in ch["base_shifts"]:
        lines.append(f"base change: {b}")
    verts = "; ".join("(" + ",".join(v) + ")" for v in report["kappa"]["vertices"])
    tail = "inf" if report["kappa"]["terminal"] == INFINITY else "-1"
    lines.append(f"kappa: ({verts + '; ' if verts else ''}{tail})")
    lines.append(f"quasi-ordinary: {report['quasi_ordinary']}")
    data = report["data"]
    if data["n_i"]:
        lines.append(f"n_i: {data['n_i']}")
        lines.append("lambda: " + "; ".join("(" + ",".join(v) + ")" for v in data["lambda"]))
    for d in report["diagnostics"]:
        lines.append(f"diagnostic: {d}")
    if "certificate" in report:
        c = report["certificate"]
        lines.append(f"discriminant oracle: {c['oracle']} delta={c['delta']} agreement={c['agreement']}")
    if "roots" in report:
        r = report["roots"]
        lines.append(f"branch eta={r['eta']} (bound {r['bound']}, verified={r['verified']}):")
        lines.append("  z = " + r["series"])
    if "deformation" in report:
        for eq in report["deformation"]["equations"]:
            lines.append("  " + eq)
        lines.append(f"  weights ok: {report['deformation']['weights_ok']}")
    return "\n".join(lines)
