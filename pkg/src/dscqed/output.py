"""Deterministic CSV / JSON emission and atomic file writes.

Every emitter renders floats with 12 significant digits ('.' separator, no
locale), so the CSV and JSON forms of the same table carry byte-identical
numeric tokens.  Files are written whole (temp file + rename); the
``DSCQED_TMPDIR`` environment variable overrides where temp files go.
"""

from __future__ import annotations

import json
import os
import shutil
import tempfile

TMPDIR_ENV = "DSCQED_TMPDIR"

LINES_CSV_HEADER = "epsilon_ghz,i,j,label,frequency_ghz,amplitude"
MODES_CSV_HEADER = "n,omega_n_ghz,k_x,i_zpf_a,g_n_ghz"
COUPLINGS_CSV_HEADER = "l_c_ph,n,omega_n_ghz,g_over_g1,g_n_ghz"


def fmt(value) -> str:
    """Canonical token for one cell: floats at 12 significant digits."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int,)):
        return str(value)
    if isinstance(value, float):
        if value == 0.0:
            value = 0.0  # normalize -0.0
        return format(value, ".12g")
    return str(value)


def json_text(value, _indent: int = 0) -> str:
    """Render JSON with the same float tokens as the CSV emitters."""
    pad = "  " * _indent
    inner = "  " * (_indent + 1)
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, float)):
        return fmt(value)
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = ",\n".join(
            f"{inner}{json.dumps(str(k))}: {json_text(v, _indent + 1)}"
            for k, v in value.items()
        )
        return "{\n" + items + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not len(value):
            return "[]"
        items = ",\n".join(f"{inner}{json_text(v, _indent + 1)}" for v in value)
        return "[\n" + items + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def csv_text(header: str, rows) -> str:
    """CSV with a fixed header line and '\\n' terminators."""
    out = [header]
    for row in rows:
        out.append(",".join(fmt(cell) for cell in row))
    return "\n".join(out) + "\n"


def write_atomic(path, text: str) -> None:
    """Whole-file write: temp file then rename over the target."""
    path = os.fspath(path)
    directory = os.environ.get(TMPDIR_ENV) or os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".dscqed-", dir=directory)
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        try:
            os.replace(tmp, path)
        except OSError:
            shutil.move(tmp, path)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)


# ---------------------------------------------------------------------------
# Table emitters (each comes in CSV and JSON flavors with identical numbers)
# ---------------------------------------------------------------------------


def lines_csv(lines) -> str:
    rows = (
        (l.epsilon, l.i, l.j, l.label, l.frequency, l.amplitude) for l in lines
    )
    return csv_text(LINES_CSV_HEADER, rows)


def lines_json(lines) -> str:
    return json_text(
        [
            {
                "epsilon_ghz": l.epsilon,
                "i": l.i,
                "j": l.j,
                "label": l.label,
                "frequency_ghz": l.frequency,
                "amplitude": l.amplitude,
            }
            for l in lines
        ]
    ) + "\n"


def mode_table_csv(table) -> str:
    return csv_text(MODES_CSV_HEADER, table.rows())


def mode_table_json(table) -> str:
    return json_text(
        [
            {
                "n": n,
                "omega_n_ghz": omega,
                "k_x": kx,
                "i_zpf_a": izpf,
                "g_n_ghz": g,
            }
            for n, omega, kx, izpf, g in table.rows()
        ]
    ) + "\n"


def couplings_csv(rows) -> str:
    return csv_text(COUPLINGS_CSV_HEADER, rows)


def couplings_json(rows) -> str:
    return json_text(
        [
            {
                "l_c_ph": lc,
                "n": n,
                "omega_n_ghz": omega,
                "g_over_g1": ratio,
                "g_n_ghz": g,
            }
            for lc, n, omega, ratio, g in rows
        ]
    ) + "\n"


def report_json(report) -> str:
    return json_text(report.as_dict()) + "\n"


def report_csv(report) -> str:
    d = report.as_dict()
    rows = [(k, v) for k, v in d.items() if k != "per_mode_shift"]
    rows += [
        (f"per_mode_shift_{n + 1}", s) for n, s in enumerate(d["per_mode_shift"])
    ]
    return csv_text("field,value", rows)


def report_text(report) -> str:
    """Human-readable rendering of a renormalization report."""
    lines = [
        "Lamb-shift report",
        "-----------------",
        f"bare gap delta0            : {fmt(report.delta0)} GHz",
        f"partially renormalized     : {fmt(report.delta0_prime)} GHz",
        f"fully renormalized delta   : {fmt(report.delta)} GHz",
        f"mode sum S(n_cutoff)       : {fmt(report.sum_value)}",
        f"n_cutoff                   : {fmt(report.n_cutoff)}",
        f"total shift 1-delta/delta0 : {100.0 * report.total_shift:.2f} %",
        f"fundamental 1-delta/delta0': {100.0 * report.fundamental_shift:.2f} %",
        "",
        "per-mode shifts (each mode alone, relative to the bare gap):",
    ]
    for n, s in enumerate(report.per_mode_shift):
        lines.append(f"  mode {n + 1:3d}: {100.0 * s:9.4f} %")
    return "\n".join(lines) + "\n"


def fit_result_json(result) -> str:
    return json_text(_fit_result_dict(result)) + "\n"


def fit_result_csv(result) -> str:
    d = _fit_result_dict(result)
    rows = [(k, v) for k, v in d.items() if k != "per_point_residuals_ghz"]
    rows += [
        (f"residual_{n + 1}", r) for n, r in enumerate(d["per_point_residuals_ghz"])
    ]
    return csv_text("field,value", rows)


def _fit_result_dict(result) -> dict:
    return {
        "delta_prime_ghz": result.delta_prime,
        "omega1_ghz": result.omega1,
        "g1_ghz": result.g1,
        "residual_rms_ghz": result.residual_rms,
        "iterations": result.iterations,
        "converged": result.converged,
        "per_point_residuals_ghz": [float(r) for r in result.per_point_residuals],
    }
