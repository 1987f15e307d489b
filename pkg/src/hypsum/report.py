"""Render verification reports as CSV, JSON, Markdown or LaTeX.

Machine formats (CSV, JSON) are lossless: rationals are written ``p/q``
(always with a slash, so ``2`` is ``2/1``) and floats with 17 significant
digits, which never contain a slash.  :func:`parse_value` inverts both.
"""

from __future__ import annotations

import csv
import enum
import io
import json
from fractions import Fraction
from itertools import groupby
from typing import Iterable, Sequence

from hypsum.identities import VerificationReport

HEADER = ("identity", "nu", "i", "alpha", "mode", "lhs", "rhs", "matched")


class OutputFormat(enum.Enum):
    CSV = "csv"
    JSON = "json"
    MARKDOWN = "markdown"
    LATEX = "latex"


def format_value(x) -> str:
    if x is None:
        return ""
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return f"{x}/1"
    return format(float(x), ".17g")


def parse_value(s: str) -> Fraction | float | None:
    if s == "":
        return None
    if "/" in s:
        return Fraction(s)
    return float(s)


def _row(r: VerificationReport) -> list[str]:
    return [
        r.identity.value,
        str(r.nu),
        "" if r.i is None else str(r.i),
        format_value(r.alpha),
        r.mode.kind,
        format_value(r.lhs),
        format_value(r.rhs),
        "true" if r.matched else "false",
    ]


def _latex_value(x) -> str:
    if x is None:
        return ""
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        sign = "-" if x < 0 else ""
        return f"{sign}\\frac{{{abs(x.numerator)}}}{{{x.denominator}}}"
    mantissa, _, exp = format(float(x), ".12e").partition("e")
    return f"{mantissa}\\times 10^{{{int(exp)}}}"


def _human_value(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    return format_value(x)


def to_csv(reports: Iterable[VerificationReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(HEADER)
    for r in reports:
        w.writerow(_row(r))
    return buf.getvalue()


def to_json(reports: Iterable[VerificationReport]) -> str:
    rows = [dict(zip(HEADER, _row(r))) for r in reports]
    for row in rows:
        row["nu"] = int(row["nu"])
        row["i"] = int(row["i"]) if row["i"] else None
        row["alpha"] = row["alpha"] or None
        row["matched"] = row["matched"] == "true"
    return json.dumps(rows, indent=2) + "\n"


def to_markdown(reports: Sequence[VerificationReport]) -> str:
    out = []
    for ident, group in groupby(reports, key=lambda r: r.identity):
        out.append(f"### {ident.value}\n")
        out.append("| nu | i | alpha | mode | lhs | rhs | matched |")
        out.append("|---:|---:|---:|:---|---:|---:|:---:|")
        for r in group:
            out.append(
                "| {} | {} | {} | {} | {} | {} | {} |".format(
                    r.nu,
                    "" if r.i is None else r.i,
                    "" if r.alpha is None else r.alpha,
                    r.mode.kind,
                    _human_value(r.lhs),
                    _human_value(r.rhs),
                    "yes" if r.matched else "**no**",
                )
            )
        out.append("")
    return "\n".join(out)


def to_latex(reports: Sequence[VerificationReport]) -> str:
    out = []
    for ident, group in groupby(reports, key=lambda r: r.identity):
        out.append(f"% {ident.value}")
        out.append("\\begin{tabular}{rrrlrrc}")
        out.append("$\\nu$ & $i$ & $\\alpha$ & mode & LHS & RHS & match \\\\")
        out.append("\\hline")
        for r in group:
            cells = [
                str(r.nu),
                "" if r.i is None else str(r.i),
                f"${_latex_value(r.alpha)}$" if r.alpha is not None else "",
                r.mode.kind,
                f"${_latex_value(r.lhs)}$",
                f"${_latex_value(r.rhs)}$",
                "\\checkmark" if r.matched else "$\\times$",
            ]
            out.append(" & ".join(cells) + " \\\\")
        out.append("\\end{tabular}")
        out.append("")
    return "\n".join(out)


def emit_table(reports: Sequence[VerificationReport], fmt: OutputFormat) -> str:
    """Render reports in grid order.  Output is byte-stable for equal input."""
    reports = list(reports)
    if fmt is OutputFormat.CSV:
        return to_csv(reports)
    if fmt is OutputFormat.JSON:
        return to_json(reports)
    if fmt is OutputFormat.MARKDOWN:
        return to_markdown(reports)
    return to_latex(reports)


def emit_pivot(reports: Sequence[VerificationReport], fmt: OutputFormat) -> str:
    """Closed-form values laid out with one row per (alpha, nu), one column per i.

    Identities with a fixed shift or without one get a single value column.
    """
    reports = list(reports)
    shifts = sorted({r.i for r in reports if r.i is not None})
    has_alpha = any(r.alpha is not None for r in reports)
    columns = [f"i={i}" for i in shifts] or ["value"]
    rows: dict[tuple, dict] = {}
    ident = reports[0].identity.value if reports else ""
    for r in reports:
        cells = rows.setdefault((r.alpha, r.nu), {})
        cells["value" if r.i is None or not shifts else f"i={r.i}"] = r.rhs

    keys = (["alpha"] if has_alpha else []) + ["nu"]
    if fmt is OutputFormat.CSV:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(keys + columns)
        for (alpha, nu), cells in rows.items():
            lead = ([format_value(alpha)] if has_alpha else []) + [str(nu)]
            w.writerow(lead + [format_value(cells.get(c)) for c in columns])
        return buf.getvalue()
    if fmt is OutputFormat.JSON:
        body = []
        for (alpha, nu), cells in rows.items():
            entry = {"nu": nu}
            if has_alpha:
                entry["alpha"] = format_value(alpha)
            entry.update({c: format_value(cells.get(c)) or None for c in columns})
            body.append(entry)
        return json.dumps({"identity": ident, "columns": columns, "rows": body}, indent=2) + "\n"
    if fmt is OutputFormat.MARKDOWN:
        out = [f"### {ident}\n", "| " + " | ".join(keys + columns) + " |"]
        out.append("|" + "---:|" * (len(keys) + len(columns)))
        for (alpha, nu), cells in rows.items():
            lead = ([str(alpha)] if has_alpha else []) + [str(nu)]
            vals = [_human_value(cells[c]) if c in cells else "" for c in columns]
            out.append("| " + " | ".join(lead + vals) + " |")
        return "\n".join(out) + "\n"
    head = [{"alpha": "$\\alpha$", "nu": "$\\nu$"}[k] for k in keys]
    head += [f"$i={c[2:]}$" if c.startswith("i=") else c for c in columns]
    out = [f"% {ident}", "\\begin{tabular}{" + "r" * len(head) + "}"]
    out.append(" & ".join(head) + " \\\\")
    out.append("\\hline")
    for (alpha, nu), cells in rows.items():
        lead = ([f"${_latex_value(alpha)}$"] if has_alpha else []) + [str(nu)]
        vals = [f"${_latex_value(cells[c])}$" if c in cells else "" for c in columns]
        out.append(" & ".join(lead + vals) + " \\\\")
    out.append("\\end{tabular}")
    return "\n".join(out) + "\n"
