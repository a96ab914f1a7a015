"""JSON and CSV encodings.  Rationals are always written as "num/den"."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from .fiber import ComponentKind, FiberComponent, FiberModel
from .divisors import VerticalDivisor
from .linalg import RationalMatrix


def frac_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_frac(s: str) -> Fraction:
    return Fraction(s)


def fiber_to_dict(fiber: FiberModel) -> dict:
    return {
        "N": fiber.N,
        "p": fiber.p,
        "n": fiber.n,
        "M": fiber.M,
        "model": fiber.model_tag,
        "components": [
            {"label": lab, "multiplicity": c.multiplicity, "genus": c.genus}
            for lab, c in zip(fiber.labels, fiber.components)
        ],
        "matrix": [[frac_str(x) for x in row] for row in fiber.matrix.rows],
    }


def fiber_from_dict(data: dict) -> FiberModel:
    comps = tuple(
        FiberComponent(ComponentKind.from_label(c["label"]), c["multiplicity"], c["genus"])
        for c in data["components"]
    )
    matrix = RationalMatrix([[parse_frac(x) for x in row] for row in data["matrix"]])
    return FiberModel(data["p"], data["n"], data["M"], data["model"], comps, matrix)


def divisor_to_dict(V: VerticalDivisor, n: int) -> dict:
    return {
        "p": V.p,
        "n": n,
        "components": [k.label(n) for k in V.kinds],
        "coefficients": [frac_str(x) for x in V.coefficients],
    }


def divisor_from_dict(data: dict) -> VerticalDivisor:
    kinds = tuple(ComponentKind.from_label(s) for s in data["components"])
    return VerticalDivisor(data["p"], kinds, tuple(parse_frac(x) for x in data["coefficients"]))


def fiber_to_csv(fiber: FiberModel) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fiber.labels)
    for row in fiber.matrix.rows:
        writer.writerow([str(x) for x in row])
    return buf.getvalue()


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)
