"""CSV serialisation of simulation traces and number formatting."""

from __future__ import annotations

import csv
import io
import math
from decimal import ROUND_HALF_EVEN, Decimal

CSV_COLUMNS = (
    "t",
    "n",
    "D_P",
    "D_I",
    "pirate_profit",
    "industry_profit",
    "disc_cum_pirate",
    "disc_cum_industry",
)


def format_number(x, digits: int = 9) -> str:
    """Plain decimal with at most ``digits`` significant digits, ties to even.

    Rounding starts from the shortest repr of the float, so 0.125 -> "0.12"
    at two digits and 4.0 -> "4".
    """
    if isinstance(x, int):
        return str(x)
    x = float(x)
    if not math.isfinite(x):
        return repr(x)
    d = Decimal(repr(x))
    if d.is_zero():
        return "0"
    quantum = Decimal(1).scaleb(d.adjusted() - digits + 1)
    d = d.quantize(quantum, rounding=ROUND_HALF_EVEN).normalize()
    text = format(d, "f")
    return "0" if text in ("-0", "0") else text


def trace_to_csv(trace) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for record in trace.records:
        writer.writerow(format_number(getattr(record, c)) for c in CSV_COLUMNS)
    return buf.getvalue()


def read_trace_csv(text: str) -> list[dict]:
    rows = list(csv.DictReader(io.StringIO(text)))
    return [{k: (int(v) if k == "t" else float(v)) for k, v in row.items()} for row in rows]
