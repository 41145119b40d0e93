"""JSON-lines rendering of certification results.

Each line is one JSON object with sorted keys, so identical inputs give
byte-identical files.  Exact rationals are written as "p/q" strings and each
squared bound is accompanied by a certified enclosure of its square root as a
pair of 20-digit decimals, rounded outward:

    {"index": 0, "outcome": "InV", "iterations": 0,
     "beta_sq": "p/q", "beta": ["1.4665...e-8", "1.4665...e-8"], ...}

Classification reports start with a ``{"summary": {...}}`` line holding the
six counts, followed by one line per input candidate.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import IO, Iterable

from . import exact
from .alphacert import CertBounds, CertReport

DIGITS = 20
_BRACKET_BITS = 80  # 2^-80 < 10^-20 relative width

_BOUND_FIELDS = (
    ("beta_sq", "beta"),
    ("gamma_sq_upper", "gamma_upper"),
    ("alpha_sq_upper", "alpha_upper"),
    ("delta_sq", "delta"),
)


def sqrt_decimals(r: Fraction, digits: int = DIGITS) -> list[str]:
    """[lo, hi] decimal strings with lo <= sqrt(r) <= hi."""
    lo, hi = exact.sqrt_bracket(r, _BRACKET_BITS)
    return [exact.to_decimal(lo, digits, "down"), exact.to_decimal(hi, digits, "up")]


def bounds_record(b: CertBounds | None) -> dict:
    out = {}
    for name, root in _BOUND_FIELDS:
        value = getattr(b, name) if b is not None else None
        out[name] = exact.format_rational(value) if value is not None else None
        out[root] = sqrt_decimals(value) if value is not None else None
    return out


def cert_record(index: int, rep: CertReport) -> dict:
    rec = {"index": index, "outcome": str(rep.outcome), "iterations": rep.iterations}
    rec.update(bounds_record(rep.bounds))
    if rep.note:
        rec["note"] = rep.note
    return rec


def classification_records(report) -> list[dict]:
    """Summary line plus one record per candidate of a ClassificationReport."""
    records = [{"summary": dict(report.counts), "complete": report.complete}]
    for r in report.candidates:
        rec = cert_record(r.index, r.approx)
        rec["classification"] = r.classification
        rec["representative"] = r.representative
        if r.reports:
            rec["certify"] = {label: cert_record(r.index, rep) for label, rep in r.reports.items()}
        records.append(rec)
    return records


def dumps(records: Iterable[dict]) -> str:
    return "".join(json.dumps(r, sort_keys=True, ensure_ascii=False) + "\n" for r in records)


def write(records: Iterable[dict], stream: IO[str]) -> None:
    stream.write(dumps(records))


def loads(text: str) -> list[dict]:
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def parse_rational(s: str | None) -> Fraction | None:
    return None if s is None else exact.parse_rational(s)
