"""File formats: certificate JSON, witness JSON, grid-spec JSON.

Indices are 1-based on disk (the matrix text format lives in ratmath).
Rationals are serialized as "num" or "num/den" strings.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .certs import CCCertificate, GCCCertificate, complete_graph
from .colorings import Color, ColoringSpec
from .grid import GridSpec, make_grid_spec
from .search import Witness


def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else \
        f"{f.numerator}/{f.denominator}"


def _frac_parse(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    return Fraction(str(s))


Certificate = Union[CCCertificate, GCCCertificate]


def certificate_to_json(cert: Certificate) -> dict:
    if isinstance(cert, CCCertificate):
        return {
            "n": len(cert.z[0]),
            "T": cert.T,
            "flavor": "cc",
            "z": [[_frac_str(v) for v in zt] for zt in cert.z],
            "R": [sorted(i + 1 for i in rt) for rt in cert.R],
        }
    return {
        "n": cert.n,
        "T": cert.T,
        "flavor": cert.flavor,
        "z": [[_frac_str(v) for v in zt] for zt in cert.z],
        "R": ["complete"] + [
            sorted([i + 1, j + 1] for i, j in rt) for rt in cert.R[1:]],
    }


def certificate_from_json(data: dict) -> Certificate:
    flavor = data["flavor"]
    n = int(data["n"])
    big_t = int(data["T"])
    zs = tuple(tuple(_frac_parse(v) for v in zt) for zt in data["z"])
    if flavor == "cc":
        rs = tuple(frozenset(int(i) - 1 for i in rt) for rt in data["R"])
        return CCCertificate(big_t, zs, rs)
    if flavor not in ("weak", "strong"):
        raise ValueError(f"unknown certificate flavor {flavor!r}")
    graphs = []
    for k, rt in enumerate(data["R"]):
        if rt == "complete":
            graphs.append(complete_graph(n))
        else:
            graphs.append(frozenset(
                (min(i, j) - 1, max(i, j) - 1) for i, j in rt))
    return GCCCertificate(big_t, zs, tuple(graphs), flavor)


def color_to_json(color: Color) -> str:
    return str(color)


def witness_to_json(w: Witness) -> dict:
    coloring = w.coloring.canonical() if isinstance(w.coloring, ColoringSpec) \
        else str(w.coloring)
    return {
        "x": list(w.x),
        "color": color_to_json(w.color),
        "coloring": coloring,
        "N": w.N,
        "verified": True,
    }


def grid_to_json(spec: GridSpec) -> dict:
    return {
        "n": spec.n,
        "x": list(spec.x),
        "y": list(spec.y),
        "b": list(spec.b),
        "c": list(spec.c),
        "d": list(spec.d),
    }


def grid_from_json(data: dict) -> GridSpec:
    return make_grid_spec(
        [int(v) for v in data["x"]],
        [int(v) for v in data["y"]],
        [int(v) for v in data["b"]],
        [int(v) for v in data["d"]],
        c=[int(v) for v in data["c"]] if data.get("c") is not None else None,
    )
