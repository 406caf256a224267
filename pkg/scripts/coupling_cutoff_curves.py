#!/usr/bin/env python3
"""Emit normalized coupling curves g_n/g_1 versus mode frequency for a few
coupling inductances, showing the peak at the cutoff frequency moving down
as the coupling inductance grows."""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from dscqed import cli  # noqa: E402

OUT = "coupling_curves.csv"

if __name__ == "__main__":
    rc = cli.main(
        ["couplings", "--l-c-ph", "100,231,400", "--n-modes", "60", "--out", OUT]
    )
    print(f"wrote {OUT}" if rc == 0 else "failed")
    sys.exit(rc)
