#!/usr/bin/env python3
"""Sweep the flux bias with the bundled device parameters and write the
theory transition lines (frequency and drive amplitude per bias point)."""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from dscqed import cli  # noqa: E402

OUT = "spectrum_lines.csv"

if __name__ == "__main__":
    rc = cli.main(["spectrum", "--out", OUT])
    print(f"wrote {OUT}" if rc == 0 else "failed")
    sys.exit(rc)
