from typing import Dict, List, Optional
import csv
import io
import json

from mahonia.core.qpoly import MultiPoly, QPoly
from mahonia.errors import MahoniaError

FORMATS = ("json", "csv", "latex", "text")


def _refined_terms(poly: MultiPoly) -> List[Dict]:
    return [{"exponents": dict(mono), "coefficient": c} for mono, c in sorted(poly.terms.items())]


def render_distribution(
    poly: QPoly,
    fmt: str,
    meta: Dict,
    refined: Optional[MultiPoly] = None,
) -> str:
    """
    Render one distribution polynomial.

    - json: meta plus the coefficient list, rendered text and refined terms
    - csv: one "value,count" row per nonzero coefficient
    - latex: the polynomial in LaTeX notation
    - text: "1 + 2q + q^2"; refined polynomials print on a second line
    """
    if fmt not in FORMATS:
        raise MahoniaError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")

    if fmt == "json":
        payload = dict(meta)
        payload["coefficients"] = poly.to_list()
        payload["polynomial"] = poly.render()
        if refined is not None:
            payload["refined"] = _refined_terms(refined)
        return json.dumps(payload, indent=2, ensure_ascii=False)

    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["value", "count"])
        for value, count in enumerate(poly.to_list()):
            if count:
                writer.writerow([value, count])
        return buffer.getvalue().rstrip("\n")

    if fmt == "latex":
        return poly.render("latex")

    text = poly.render()
    if refined is not None:
        text += "\n" + refined.render()
    return text
