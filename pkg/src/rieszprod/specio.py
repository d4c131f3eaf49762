"""Structured-text spec files and deterministic CSV/JSON reports.

Spec files are JSON documents:

    {
      "frequencies":  {"rule": "geometric", "base": 4, "count": 9}
                    | {"rule": "explicit", "values": [1, 4, 16]},
      "coefficients": {"constant": {"r": 1.0, "theta": 0.0}}
                    | {"explicit": [{"r": 0.5, "theta": 0.1}, ...]}
                    | {"random_phase": {"r": 0.8, "seed": 7}},
      "regime": "lacunary3" | "dyadic"        (default "lacunary3")
    }

``schema_validate`` lists every violation with a path into the document;
``load_spec`` raises on the first bad file.  Reports are CSV (headers
mandatory, '.' decimal separator, config echoed on a leading '#' line) or
JSON mirrors of the same table.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

from .classify import TAILS, TailDeclarations
from .core import (
    CoefficientSequence,
    FrequencySequence,
    RieszSpec,
    ValidationError,
    randomize_phases,
    validate_spec,
)


@dataclass(frozen=True)
class Diagnostic:
    path: str
    message: str

    def __str__(self) -> str:
        return f"{self.path}: {self.message}"


class SpecFileError(ValidationError):
    def __init__(self, diagnostics):
        self.diagnostics = tuple(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics) or "invalid spec")


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _is_num(x) -> bool:
    return (_is_int(x) or isinstance(x, float)) and math.isfinite(x)


def _check_frequencies(doc, out: list[Diagnostic]) -> FrequencySequence | None:
    freqs = doc.get("frequencies")
    if not isinstance(freqs, dict):
        out.append(Diagnostic("frequencies", "required object is missing or not an object"))
        return None
    rule = freqs.get("rule")
    if rule == "geometric":
        base, count = freqs.get("base"), freqs.get("count")
        if not _is_int(base) or base < 2:
            out.append(Diagnostic("frequencies.base", "must be an integer >= 2"))
            return None
        if not _is_int(count) or count < 1:
            out.append(Diagnostic("frequencies.count", "must be an integer >= 1"))
            return None
        return FrequencySequence.geometric(base, count)
    if rule == "explicit":
        values = freqs.get("values")
        if not isinstance(values, list) or not values:
            out.append(Diagnostic("frequencies.values", "must be a nonempty list"))
            return None
        for i, v in enumerate(values):
            if not _is_int(v):
                out.append(Diagnostic(f"frequencies.values[{i}]", "must be an integer"))
                return None
        try:
            return FrequencySequence(tuple(values))
        except ValidationError as err:
            where = f"frequencies.values[{err.index}]" if err.index is not None \
                else "frequencies.values"
            out.append(Diagnostic(where, str(err)))
            return None
    out.append(Diagnostic("frequencies.rule", "must be 'geometric' or 'explicit'"))
    return None


def _check_rt(obj, where: str, out: list[Diagnostic]) -> bool:
    ok = True
    if not _is_num(obj.get("r")):
        out.append(Diagnostic(f"{where}.r", "must be a finite number"))
        ok = False
    elif obj["r"] < 0:
        out.append(Diagnostic(f"{where}.r", "modulus must be >= 0"))
        ok = False
    if "theta" in obj and not _is_num(obj["theta"]):
        out.append(Diagnostic(f"{where}.theta", "must be a finite number"))
        ok = False
    return ok


def _check_coefficients(doc, count: int | None, out: list[Diagnostic]):
    """Returns (CoefficientSequence | None, random_seed | None)."""
    coeffs = doc.get("coefficients")
    if not isinstance(coeffs, dict):
        out.append(Diagnostic("coefficients", "required object is missing or not an object"))
        return None, None
    kinds = [k for k in ("constant", "explicit", "random_phase") if k in coeffs]
    if len(kinds) != 1:
        out.append(Diagnostic(
            "coefficients",
            "exactly one of 'constant', 'explicit', 'random_phase' is required"))
        return None, None
    kind = kinds[0]
    if kind == "constant":
        obj = coeffs["constant"]
        if not isinstance(obj, dict) or not _check_rt(obj, "coefficients.constant", out):
            return None, None
        if count is None:
            return None, None
        return CoefficientSequence.constant(obj["r"], obj.get("theta", 0.0), count), None
    if kind == "explicit":
        entries = coeffs["explicit"]
        if not isinstance(entries, list):
            out.append(Diagnostic("coefficients.explicit", "must be a list"))
            return None, None
        ok = True
        for i, obj in enumerate(entries):
            if not isinstance(obj, dict) or not _check_rt(
                    obj, f"coefficients.explicit[{i}]", out):
                ok = False
        if not ok:
            return None, None
        if count is not None and len(entries) != count:
            out.append(Diagnostic(
                "coefficients.explicit",
                f"{len(entries)} entries but {count} frequencies"))
            return None, None
        return CoefficientSequence(
            tuple(e["r"] for e in entries),
            tuple(e.get("theta", 0.0) for e in entries)), None
    obj = coeffs["random_phase"]
    if not isinstance(obj, dict) or not _check_rt(obj, "coefficients.random_phase", out):
        return None, None
    if not _is_int(obj.get("seed")):
        out.append(Diagnostic("coefficients.random_phase.seed", "must be an integer"))
        return None, None
    if count is None:
        return None, None
    return CoefficientSequence.constant(obj["r"], 0.0, count), obj["seed"]


def _semantic_path(doc, err: ValidationError) -> str:
    if err.condition in ("modulus_bound", "dyadic_modulus", "modulus"):
        coeffs = doc.get("coefficients", {})
        if "explicit" in coeffs:
            return f"coefficients.explicit[{err.index}].r"
        if "constant" in coeffs:
            return "coefficients.constant.r"
        return "coefficients.random_phase.r"
    if err.condition in ("lacunarity_ratio", "dyadic_frequencies"):
        freqs = doc.get("frequencies", {})
        if freqs.get("rule") == "explicit":
            return f"frequencies.values[{err.index}]"
        return "frequencies.base"
    return "spec"


def validate_document(doc) -> list[Diagnostic]:
    """Every schema and regime violation, each with a path into the document."""
    out: list[Diagnostic] = []
    if not isinstance(doc, dict):
        return [Diagnostic("", "document must be a JSON object")]
    regime = doc.get("regime", "lacunary3")
    if regime not in ("lacunary3", "dyadic"):
        out.append(Diagnostic("regime", "must be 'lacunary3' or 'dyadic'"))
        regime = "lacunary3"
    freqs = _check_frequencies(doc, out)
    coeffs, seed = _check_coefficients(
        doc, len(freqs) if freqs is not None else None, out)
    if freqs is None or coeffs is None:
        return out
    try:
        spec = RieszSpec(freqs, coeffs, regime)
        validate_spec(spec)
    except ValidationError as err:
        out.append(Diagnostic(_semantic_path(doc, err), str(err)))
    return out


def spec_from_document(doc) -> RieszSpec:
    diagnostics = validate_document(doc)
    if diagnostics:
        raise SpecFileError(diagnostics)
    freqs = _check_frequencies(doc, [])
    coeffs, seed = _check_coefficients(doc, len(freqs), [])
    spec = validate_spec(RieszSpec(freqs, coeffs, doc.get("regime", "lacunary3")))
    if seed is not None:
        spec = randomize_phases(spec, seed)
    return spec


def read_document(path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise SpecFileError([Diagnostic(str(path), f"unreadable file: {err}")])
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise SpecFileError([Diagnostic(str(path), f"not valid JSON: {err}")])


def schema_validate(path) -> list[Diagnostic]:
    return validate_document(read_document(path))


def load_spec(path) -> RieszSpec:
    return spec_from_document(read_document(path))


def load_tails(path) -> TailDeclarations:
    doc = read_document(path)
    if not isinstance(doc, dict):
        raise SpecFileError([Diagnostic(str(path), "tails file must be a JSON object")])
    known = ("l2_gap", "weighted_gap_ab", "weighted_gap_ba",
             "disc_metric_gap", "lacunarity")
    diagnostics = []
    for key, value in doc.items():
        if key not in known:
            diagnostics.append(Diagnostic(key, f"unknown series name; expected one of {known}"))
        elif value not in TAILS:
            diagnostics.append(Diagnostic(key, f"tail must be one of {TAILS}"))
    if diagnostics:
        raise SpecFileError(diagnostics)
    return TailDeclarations(**doc)


# ---------------------------------------------------------------------------
# report emission
# ---------------------------------------------------------------------------


def _cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    text = str(value)
    if any(ch in text for ch in (",", '"', "\n")):
        text = '"' + text.replace('"', '""') + '"'
    return text


def render_csv(header, rows, config) -> str:
    lines = ["# config: " + json.dumps(config, sort_keys=True)]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def render_json(header, rows, config) -> str:
    payload = {
        "config": config,
        "header": list(header),
        "rows": [list(row) for row in rows],
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def write_report(out_path, fmt: str, header, rows, config) -> str:
    """Render the table and write it (or return it for stdout)."""
    text = render_csv(header, rows, config) if fmt == "csv" \
        else render_json(header, rows, config)
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
    return text
