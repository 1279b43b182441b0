"""Report serialization: scientific-notation formatting, CSV rows, JSON
envelopes.

Schemas are frozen: column order is part of the contract and golden
tests pin it.  JSON reports carry the tool version, the echoed run
configuration, and the precision actually used, so a result can be
reproduced from its own header.
"""

from __future__ import annotations

import csv
import json
from decimal import Decimal, localcontext

import mpmath as mp

from . import __version__
from .precision import PrecisionReal

TOOL_NAME = "markovsum"

#: Scientific-notation output defaults to this many significant digits
#: unless the working precision is lower or the caller overrides.
MAX_DEFAULT_DIGITS = 17

#: CSV cells keep integers readable; past this many digits they are
#: truncated with a digit-count annotation.  JSON always carries full values.
CSV_INT_DIGITS = 60


def sci_string(x: PrecisionReal, digits: int | None = None) -> str:
    """Round-to-nearest scientific notation with an explicit digit count.

    The mpmath value is converted exactly (mantissa times a power of two)
    into a Decimal and formatted from there, so the printed digits are the
    correctly rounded leading digits of the stored value.
    """
    if digits is None:
        digits = min(x.prec, MAX_DEFAULT_DIGITS)
    if digits < 1:
        raise ValueError(f"digit count must be >= 1, got {digits}")
    v = x.value
    if v == 0:
        return "0"
    if not mp.isfinite(v):
        raise ValueError(f"cannot format non-finite value {v}")
    sign, man, exp, _ = v._mpf_
    with localcontext() as ctx:
        ctx.prec = digits + 10
        # the mantissa may be a gmpy2 integer depending on the mpmath backend
        d = Decimal(int(man)) * (Decimal(2) ** int(exp))
        if sign:
            d = -d
        return f"{d:.{digits - 1}E}".replace("E", "e")


def parse_sci(text: str, prec: int) -> PrecisionReal:
    """Inverse of sci_string at a given working precision."""
    return PrecisionReal.from_str(text, prec)


def int_cell(v: int) -> str:
    """CSV rendering of a possibly enormous integer."""
    s = str(v)
    if len(s) <= CSV_INT_DIGITS:
        return s
    return f"{s[:CSV_INT_DIGITS]}...[{len(s)} digits]"


def json_envelope(command: str, config: dict, precision: int | None, payload: dict) -> dict:
    """Wrap a payload with the reproducibility header."""
    doc = {
        "tool": TOOL_NAME,
        "version": __version__,
        "command": command,
        "config": config,
        "precision_digits": precision,
    }
    doc.update(payload)
    return doc


def dump_json(doc: dict) -> str:
    """Stable-key, UTF-8-safe JSON text."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# -- per-command rows ---------------------------------------------------------

ENUMERATE_HEADER = ["n", "value", "x", "y", "z", "duplicate"]
SUM_HEADER = ["n", "partial_sum", "remainder", "zagier_tail", "remainder_over_tail"]
MCSHANE_HEADER = ["box", "partial_sum", "gap_to_half"]
ORBITS_HEADER = ["slope", "markov", "trace", "orbit_size"]


def enumerate_csv_row(emission) -> list[str]:
    t = emission.triple
    return [
        str(emission.n),
        int_cell(emission.value),
        int_cell(t.x),
        int_cell(t.y),
        int_cell(t.z),
        "true" if emission.duplicate else "false",
    ]


def enumerate_json_row(emission) -> dict:
    return {
        "n": emission.n,
        "value": emission.value,
        "triple": list(emission.triple.as_tuple()),
        "duplicate": emission.duplicate,
    }


def sum_csv_row(report, digits: int | None) -> list[str]:
    return [
        str(report.n),
        sci_string(report.partial_sum, digits),
        sci_string(report.remainder, digits),
        sci_string(report.zagier_tail, digits),
        sci_string(report.remainder_over_tail, digits),
    ]


def sum_json_row(report, digits: int | None) -> dict:
    return {
        "n": report.n,
        "partial_sum": sci_string(report.partial_sum, digits),
        "remainder": sci_string(report.remainder, digits),
        "zagier_tail": sci_string(report.zagier_tail, digits),
        "remainder_over_tail": sci_string(report.remainder_over_tail, digits),
        "error_budget": sci_string(report.error_budget, digits),
    }


def write_csv(fh, header: list[str], rows) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
