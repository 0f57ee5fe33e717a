"""Orchestration shared by the CLI and the HTTP service.

Every function here takes plain data, runs the corresponding library
operation, and returns a JSON-able dict with a top-level schema tag.
Outcomes that map onto process exit codes are returned alongside.

Budgets are node counts, so identical inputs give identical outputs.
The RGL_BUDGET_MS environment variable caps them through a fixed
nodes-per-millisecond conversion; it never introduces wall-clock
nondeterminism.
"""

from __future__ import annotations

import os
from typing import Optional, Sequence

from . import reduction, screens, search
from .certs import verify_cc, verify_gcc
from .colorings import ColoringSpec, edge_color, hyper_color, parse_coloring, psi
from .grid import pipeline_witness
from .ratmath import IntMatrix
from .serialize import (certificate_to_json, color_to_json, grid_to_json,
                        witness_to_json)

SCHEMA = 1

_NODES_PER_MS = 100
_DEFAULT_BUDGET = 300_000


def stage_budget(default: int = _DEFAULT_BUDGET) -> int:
    ms = os.environ.get("RGL_BUDGET_MS")
    if not ms:
        return default
    try:
        return max(1, min(default, int(ms) * _NODES_PER_MS))
    except ValueError:
        return default


def op_analyze(a: IntMatrix, t_max: Optional[int] = None) -> dict:
    report = screens.classify(a, t_max=t_max)
    out = {
        "schema": SCHEMA,
        "classification": report.classification,
        "sum_to_zero": report.sum_to_zero,
        "zero_sum_partition":
            sorted(i + 1 for i in report.zero_sum_partition)
            if report.zero_sum_partition is not None else None,
        "evidence": report.evidence,
        "certificate":
            certificate_to_json(report.certificate)
            if report.certificate else None,
        "wgcc_certificate":
            certificate_to_json(report.wgcc_certificate)
            if report.wgcc_certificate else None,
    }
    return out


def op_verify(a: IntMatrix, cert, flavor: Optional[str] = None) -> dict:
    if flavor == "cc" or (flavor is None and not hasattr(cert, "flavor")):
        report = verify_cc(a, cert)
    else:
        report = verify_gcc(a, cert, flavor)
    return {
        "schema": SCHEMA,
        "accepted": report.accepted,
        "flavor": report.flavor,
        "violations": [str(v) for v in report.violations],
    }


def op_search(a: IntMatrix, coloring: str, n: int, hyper: bool = False) -> dict:
    spec = parse_coloring(coloring)
    if hyper:
        witness = search.find_mono_hyper(a, spec, n)
    else:
        witness = search.find_mono_solution(a, spec, n)
    out = {"schema": SCHEMA, "N": n, "coloring": spec.canonical()}
    if witness is None:
        out["witness"] = None
        out["avoided"] = True
    else:
        out["witness"] = witness_to_json(witness)
        out["avoided"] = False
    return out


def op_grid(a: IntMatrix, coloring: str, q: int,
            budget: Optional[int] = None) -> dict:
    spec = parse_coloring(coloring)
    result = pipeline_witness(a, spec, q,
                              budget=budget or stage_budget())
    out = {
        "schema": SCHEMA,
        "Q": q,
        "coloring": spec.canonical(),
        "stage": result.stage_failed,
        "reason": result.reason,
        "witness": witness_to_json(result.witness) if result.witness else None,
        "grid": grid_to_json(result.grid) if result.grid else None,
        "certificate": certificate_to_json(result.certificate)
            if result.certificate else None,
    }
    return out


def op_reduce(a: IntMatrix, emit_c: bool = False,
              sigma: Optional[Sequence[int]] = None) -> dict:
    if emit_c:
        pm = reduction.build_c_sigma(
            a, sigma if sigma is not None else range(a.cols))
        return {
            "schema": SCHEMA,
            "n": pm.n,
            "pairs": [[i + 1, j + 1] for i, j in pm.col_pairs],
            "matrix": pm.matrix.to_text(),
        }
    cert = reduction.wgcc_via_reduction(a, node_budget=stage_budget(200_000))
    return {
        "schema": SCHEMA,
        "certificate": certificate_to_json(cert) if cert else None,
    }


def op_color(coloring: str, points: Sequence[int]) -> dict:
    spec = parse_coloring(coloring)
    pts = [int(p) for p in points]
    arity = spec.arity
    if len(pts) != arity:
        raise ValueError(
            f"{spec.canonical()} colors {arity}-point sets, got {len(pts)}")
    if arity == 1:
        color = str(psi(spec.p, pts[0]))
    elif arity == 2:
        color = color_to_json(edge_color(spec, pts[0], pts[1]))
    else:
        color = color_to_json(hyper_color(spec, tuple(sorted(pts))))
    return {
        "schema": SCHEMA,
        "coloring": spec.canonical(),
        "points": pts,
        "color": color,
    }


def op_threshold(a: IntMatrix, colors: int, n_max: int) -> dict:
    entries = search.exhaustive_threshold(a, colors, n_max)
    rows = []
    for e in entries:
        row = {"N": e.N, "forced": e.forced}
        if e.counterexample is not None:
            row["counterexample"] = sorted(
                [min(p), max(p), c] for p, c in e.counterexample.items())
        else:
            row["counterexample"] = None
        rows.append(row)
    return {"schema": SCHEMA, "colors": colors, "entries": rows}
