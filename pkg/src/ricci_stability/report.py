"""Report assembly and serialisation (JSON, CSV, plain-text table).

Exact rationals are written as ``"p/q"`` strings (``str(Fraction)``); floats
appear only in iteration payloads.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Any

from .branching import Bundle, SpaceDescriptor
from .iteration import FixedPoint, IterationTrace, Linearization, TwoSummandStructure
from .spectrum import SpectrumLine, einstein_constant
from .stability import GaugeClass, StabilityReport, classify_line

SCHEMA_VERSION = "1.0"
SPECTRUM_COLUMNS = ["lambda", "casimir", "mu", "dim_gamma", "h1", "h2", "class"]


def q(x: Fraction | int) -> str:
    return str(Fraction(x))


def line_record(line: SpectrumLine, cls: GaugeClass) -> dict[str, Any]:
    return {
        "lambda": list(line.weight.coords),
        "casimir": q(line.casimir),
        "mu": q(line.mu),
        "dim_gamma": line.dim_gamma,
        "h1": line.h1,
        "h2": line.h2,
        "mult_one_form": line.multiplicity(Bundle.ONE_FORM),
        "mult_sym2": line.multiplicity(Bundle.SYM2),
        "class": str(cls),
    }


def space_provenance(space: SpaceDescriptor, window_factor: Fraction) -> dict[str, Any]:
    e = einstein_constant(space)
    return {
        "space": space.name,
        "einstein_constant": q(e),
        "adjoint_weight": list(space.adjoint.coords),
        "dim_iso": space.dim_iso,
        "window_factor": q(window_factor),
        "casimir_max": q(window_factor * 2 * e),
        "mu_min": q(-2 * window_factor),
        "mu_max": "0",
    }


def structure_provenance(s: TwoSummandStructure) -> dict[str, Any]:
    return {
        "structure": s.name,
        "d1": s.d1,
        "d2": s.d2,
        "t111": q(s.t111),
        "t122": q(s.t122),
    }


def spectrum_payload(space: SpaceDescriptor, bundle: Bundle, lines: list[SpectrumLine]) -> dict[str, Any]:
    return {
        "kind": "spectrum",
        "space": space.name,
        "bundle": Bundle(bundle).value,
        "lines": [line_record(line, classify_line(space, line)) for line in lines],
    }


def stability_payload(report: StabilityReport) -> dict[str, Any]:
    return {
        "kind": "stability",
        "space": report.space,
        "condition_a": {"kernel_dim": report.kernel_dim, "pass": report.condition_a},
        "condition_b": {
            "offenders": [
                {"lambda": list(o.weight.coords), "mu": q(o.mu), "excess": o.excess} for o in report.offenders
            ],
            "pass": report.condition_b,
        },
        "verdict": report.verdict.value,
        "rate": None if report.rate is None else q(report.rate),
        "window_lines": [line_record(line, cls) for line, cls in report.lines],
    }


def rate_payload(space: SpaceDescriptor, rate: Fraction) -> dict[str, Any]:
    return {"kind": "rate", "space": space.name, "rate": q(rate)}


def fixed_points_payload(s: TwoSummandStructure, lins: list[Linearization]) -> dict[str, Any]:
    rays = []
    for lin in lins:
        fp: FixedPoint = lin.fixed_point
        rays.append(
            {
                "id": fp.id,
                "ratio": fp.ratio,
                "x1": float(fp.metric.x1),
                "x2": float(fp.metric.x2),
                "rho_prime": lin.rho_prime,
                "forward_derivative": lin.derivative,
                "stability": lin.stability.value,
            }
        )
    return {"kind": "fixed_points", "structure": s.name, "rays": rays}


def trace_payload(trace: IterationTrace) -> dict[str, Any]:
    return {
        "kind": "trace",
        "structure": trace.structure,
        "direction": trace.direction.value,
        "status": {"kind": trace.status.value, "to": trace.converged_to},
        "steps": [
            {
                "index": st.index,
                "x1": float(st.metric.x1),
                "x2": float(st.metric.x2),
                "ratio": float(st.metric.ratio),
                "residual": st.residual,
            }
            for st in trace.steps
        ],
    }


def make_report(command: dict[str, Any], payload: dict[str, Any], provenance: dict[str, Any]) -> dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "payload": payload,
        "provenance": provenance,
    }


def to_json(report: dict[str, Any]) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def _lambda_str(coords: list[int]) -> str:
    return "(" + ",".join(str(c) for c in coords) + ")"


def _rows(payload: dict[str, Any]) -> tuple[list[str], list[list[Any]]]:
    kind = payload["kind"]
    if kind == "spectrum":
        rows = [
            [_lambda_str(r["lambda"]), r["casimir"], r["mu"], r["dim_gamma"], r["h1"], r["h2"], r["class"]]
            for r in payload["lines"]
        ]
        return SPECTRUM_COLUMNS, rows
    if kind == "stability":
        offenders = ";".join(
            f"{_lambda_str(o['lambda'])}@{o['mu']}x{o['excess']}" for o in payload["condition_b"]["offenders"]
        )
        header = ["space", "verdict", "kernel_dim", "condition_a", "condition_b", "offenders", "rate"]
        row = [
            payload["space"],
            payload["verdict"],
            payload["condition_a"]["kernel_dim"],
            payload["condition_a"]["pass"],
            payload["condition_b"]["pass"],
            offenders,
            payload["rate"] or "",
        ]
        return header, [row]
    if kind == "rate":
        return ["space", "rate"], [[payload["space"], payload["rate"]]]
    if kind == "fixed_points":
        header = ["id", "ratio", "x1", "x2", "rho_prime", "forward_derivative", "stability"]
        return header, [[r[h] for h in header] for r in payload["rays"]]
    if kind == "trace":
        header = ["index", "x1", "x2", "ratio", "residual"]
        return header, [[r[h] for h in header] for r in payload["steps"]]
    raise ValueError(f"unknown payload kind {kind!r}")


def to_csv(report: dict[str, Any]) -> str:
    header, rows = _rows(report["payload"])
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def to_table(report: dict[str, Any]) -> str:
    header, rows = _rows(report["payload"])
    cells = [header] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    payload = report["payload"]
    if payload["kind"] == "trace":
        status = payload["status"]
        suffix = f" -> {status['to']}" if status["to"] else ""
        lines.append(f"status: {status['kind']}{suffix}")
    return "\n".join(lines) + "\n"


RENDERERS = {"json": to_json, "csv": to_csv, "table": to_table}
