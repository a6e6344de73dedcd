"""Stable serialization: fractions as strings, matrices as labelled rows."""

from __future__ import annotations

import csv
import io
from fractions import Fraction

from .exact import RationalMatrix
from .gamma import PrecComplexMatrix
from .precision import mpc_to_json, mpfr_decimal


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def frac_from_str(text: str) -> Fraction:
    return Fraction(text)


def position_labels(size: int) -> list[str]:
    return [str(i) for i in range(1, size + 1)]


def rational_matrix_json(mat: RationalMatrix) -> dict:
    labels = (
        [str(s) for s in mat.labels] if mat.labels is not None else position_labels(mat.size)
    )
    return {
        "labels": labels,
        "rows": [[frac_str(x) for x in row] for row in mat.entries],
    }


def complex_matrix_json(mat: PrecComplexMatrix) -> dict:
    labels = (
        [str(s) for s in mat.labels] if mat.labels is not None else position_labels(mat.size)
    )
    return {
        "labels": labels,
        "digits": mat.digits,
        "rows": [[mpc_to_json(z, mat.digits) for z in row] for row in mat.entries],
    }


def rational_matrix_csv(mat: RationalMatrix) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    labels = (
        [str(s) for s in mat.labels] if mat.labels is not None else position_labels(mat.size)
    )
    writer.writerow(["row"] + labels)
    for label, row in zip(labels, mat.entries):
        writer.writerow([label] + [frac_str(x) for x in row])
    return buf.getvalue()


def complex_matrix_csv(mat: PrecComplexMatrix) -> str:
    """Complex entries flatten into re/im column pairs."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    labels = (
        [str(s) for s in mat.labels] if mat.labels is not None else position_labels(mat.size)
    )
    header = ["row"]
    for label in labels:
        header.extend([f"{label}_re", f"{label}_im"])
    writer.writerow(header)
    for label, row in zip(labels, mat.entries):
        cells = [label]
        for z in row:
            cells.append(mpfr_decimal(z.real, mat.digits))
            cells.append(mpfr_decimal(z.imag, mat.digits))
        writer.writerow(cells)
    return buf.getvalue()


def rational_matrix_table(mat: RationalMatrix) -> str:
    labels = (
        [str(s) for s in mat.labels] if mat.labels is not None else position_labels(mat.size)
    )
    cells = [[frac_str(x) for x in row] for row in mat.entries]
    widths = [
        max(len(labels[j]), max(len(cells[i][j]) for i in range(len(cells))))
        for j in range(len(labels))
    ]
    lw = max(len(lb) for lb in labels)
    lines = [" " * lw + "  " + "  ".join(lb.rjust(w) for lb, w in zip(labels, widths))]
    for label, row in zip(labels, cells):
        lines.append(label.rjust(lw) + "  " + "  ".join(c.rjust(w) for c, w in zip(row, widths)))
    return "\n".join(lines)


def complex_matrix_table(mat: PrecComplexMatrix, display_digits: int = 12) -> str:
    labels = (
        [str(s) for s in mat.labels] if mat.labels is not None else position_labels(mat.size)
    )
    cells = [
        [
            f"{mpfr_decimal(z.real, display_digits)}{'+' if z.imag >= 0 else ''}"
            f"{mpfr_decimal(z.imag, display_digits)}j"
            for z in row
        ]
        for row in mat.entries
    ]
    widths = [
        max(len(labels[j]), max(len(cells[i][j]) for i in range(len(cells))))
        for j in range(len(labels))
    ]
    lw = max(len(lb) for lb in labels)
    lines = [" " * lw + "  " + "  ".join(lb.rjust(w) for lb, w in zip(labels, widths))]
    for label, row in zip(labels, cells):
        lines.append(label.rjust(lw) + "  " + "  ".join(c.rjust(w) for c, w in zip(row, widths)))
    return "\n".join(lines)
