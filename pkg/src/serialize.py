"""
Text and JSON renderings of catalecticants and complexes.

Every number is an exact integer or "p/q" string, so output is byte-stable.
"""

import json
import os
from typing import Dict, List

import pandas as pd

from src.catalecticant import Catalecticant
from src.console import log
from src.polyring import format_polynomial
from src.resolution import ResolutionComplex


def _labels(labels) -> List[str]:
    return [str(label) for label in labels]


def catalecticant_to_dict(C: Catalecticant) -> Dict:
    return {
        "n": C.n,
        "basis": C.basis.labels(),
        "T": C.T.to_strings(),
        "delta": format_polynomial(C.delta),
        "Q": C.Q.to_strings(),
        "lambdas": {m.label(): format_polynomial(p) for m, p in C.lambdas.items()},
    }


def resolution_to_dict(R: ResolutionComplex) -> Dict:
    C = R.catalecticant
    return {
        "n": R.n,
        "mode": "generic" if R.generic else "specialized",
        "delta": format_polynomial(R.delta),
        "twists": {name: [{"label": label, "shift": [s.d1, s.d2]} for label, s in twist.shifts()]
                   for name, twist in R.twists.items()},
        "catalecticant": catalecticant_to_dict(C),
        "labels": {"B1": _labels(R.b1.col_labels), "B2": _labels(R.b2.col_labels)},
        "b1": R.b1.to_strings()[0],
        "b2": R.b2.to_strings(),
        "b3": [row[0] for row in R.b3.to_strings()],
    }


def resolution_to_json(R: ResolutionComplex) -> str:
    return json.dumps(resolution_to_dict(R), ensure_ascii=False, indent=2)


def _section(title: str, body: str) -> str:
    return f"{'='*60}\n[{title}]\n{'='*60}\n{body}\n"


def _vector_frame(labels, values) -> pd.DataFrame:
    return pd.DataFrame({"basis": _labels(labels), "value": values})


def resolution_to_text(R: ResolutionComplex) -> str:
    C = R.catalecticant
    mode = "generic" if R.generic else "specialized"
    twist_lines = []
    for name in ("B0", "B1", "B2", "B3"):
        shifts = R.twists[name].shifts()
        grouped: Dict[str, int] = {}
        for _, s in shifts:
            key = f"R({s.d1},{s.d2})"
            grouped[key] = grouped.get(key, 0) + 1
        twist_lines.append(f"{name} = " + " + ".join(f"{k}^{v}" if v > 1 else k for k, v in grouped.items()))

    lambdas = _vector_frame(C.basis.elements, [format_polynomial(C.lambdas[m]) for m in C.basis])
    parts = [
        _section("Complex", f"n = {R.n} ({mode})\ndelta = {format_polynomial(R.delta)}\n" + "\n".join(twist_lines)),
        _section("T", C.T.to_frame().to_string()),
        _section("Q", C.Q.to_frame().to_string()),
        _section("lambda", lambdas.to_string(index=False)),
        _section("b1", _vector_frame(R.b1.col_labels, R.b1.to_strings()[0]).to_string(index=False)),
        _section("b2", R.b2.to_frame().to_string()),
        _section("b3", _vector_frame(R.b3.row_labels, [row[0] for row in R.b3.to_strings()]).to_string(index=False)),
    ]
    return "\n".join(parts)


def render_resolution(R: ResolutionComplex, fmt: str) -> str:
    return resolution_to_json(R) if fmt == "json" else resolution_to_text(R)


def emit(text: str, out: str = None):
    """Write to `out` if given, otherwise to stdout."""
    if not out:
        print(text)
        return
    directory = os.path.dirname(os.path.abspath(out))
    os.makedirs(directory, exist_ok=True)
    with open(out, 'w', encoding='utf-8') as f:
        f.write(text if text.endswith("\n") else text + "\n")
    log("Done", f"wrote {out}")
