"""Bias sweeps of the Rabi spectrum: transition frequencies and drive
amplitudes versus flux bias, as plot-ready line lists.

State labels are energy-ordered independently at each bias point; a label
"03" always means the transition between the instantaneous ground state and
the third excited state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .rabi import (
    FockTruncation,
    QrmParams,
    converged_truncation,
    drive_matrix_element,
    solve,
)


@dataclass(frozen=True)
class SweepConfig:
    """Bias grid, probe band, number of levels, and the amplitude floor
    below which a line counts as forbidden."""

    epsilon_grid: tuple
    freq_window: tuple
    k_levels: int = 6
    amplitude_floor: float = 1e-6
    truncation_tol: float = 1e-6  # GHz, Fock-cutoff convergence tolerance

    def __post_init__(self):
        if len(self.epsilon_grid) == 0:
            raise ValueError("epsilon_grid must be non-empty")
        lo, hi = self.freq_window
        if not lo < hi:
            raise ValueError(f"freq_window must satisfy min < max, got {lo}, {hi}")
        if self.k_levels < 2:
            raise ValueError(f"k_levels must be >= 2, got {self.k_levels}")
        if not self.truncation_tol > 0.0:
            raise ValueError("truncation_tol must be > 0")


@dataclass(frozen=True)
class SpectralLine:
    """One transition at one bias point."""

    epsilon: float
    i: int
    j: int
    frequency: float
    amplitude: float
    label: str

    def __post_init__(self):
        if self.frequency < 0.0:
            raise ValueError(f"frequency must be >= 0, got {self.frequency}")
        if self.label != f"{self.i}{self.j}":
            raise ValueError(f"label {self.label!r} does not match ({self.i},{self.j})")


def sweep(delta_prime: float, omega1: float, g1: float, cfg: SweepConfig) -> list:
    """Diagonalize at every grid bias and emit all transitions from states
    {0, 1} to higher states whose frequency falls in the probe band.

    One converged truncation (probed at zero and at the largest |bias|) is
    used across the whole grid, keeping the output deterministic.  Lines are
    ordered by (bias, i, j); amplitudes below ``cfg.amplitude_floor`` are
    still emitted (classification is the consumer's business).
    """
    grid = np.sort(np.asarray(cfg.epsilon_grid, dtype=float))
    trunc = _grid_truncation(delta_prime, omega1, g1, grid, cfg)
    lo, hi = cfg.freq_window

    lines = []
    for eps in grid:
        es = solve(QrmParams(delta_prime, float(eps), omega1, g1), trunc)
        for i in (0, 1):
            for j in range(i + 1, cfg.k_levels):
                f = float(es.values[j] - es.values[i])
                if lo <= f <= hi:
                    amp = drive_matrix_element(es, i, j, trunc)
                    lines.append(
                        SpectralLine(
                            epsilon=float(eps),
                            i=i,
                            j=j,
                            frequency=f,
                            amplitude=amp,
                            label=f"{i}{j}",
                        )
                    )
    return lines


def _grid_truncation(delta_prime, omega1, g1, grid, cfg):
    n_max = 1
    for eps in {0.0, float(np.max(np.abs(grid)))}:
        t = converged_truncation(
            QrmParams(delta_prime, eps, omega1, g1),
            k_levels=cfg.k_levels,
            tol=cfg.truncation_tol,
        )
        n_max = max(n_max, t.n_max)
    return FockTruncation(n_max)


def indirect_delta(lines, agreement_tol: float = 1e-9) -> float:
    """Recover the 0-1 splitting from the higher lines at one bias point:
    (f03 - f13) and (f02 - f12) must agree within ``agreement_tol`` GHz and
    their mean is returned.

    Pass a larger tolerance for noisy line lists; exact theory lines satisfy
    the default.
    """
    lines = list(lines)
    if not lines:
        raise ValueError("no lines given")
    eps = {line.epsilon for line in lines}
    if len(eps) != 1:
        raise ValueError(f"lines span several bias values: {sorted(eps)}")
    by_pair = {(line.i, line.j): line.frequency for line in lines}
    for pair in ((0, 3), (1, 3), (0, 2), (1, 2)):
        if pair not in by_pair:
            raise ValueError(f"missing transition {pair[0]}{pair[1]}")
    d1 = by_pair[(0, 3)] - by_pair[(1, 3)]
    d2 = by_pair[(0, 2)] - by_pair[(1, 2)]
    if abs(d1 - d2) > agreement_tol:
        raise ValueError(
            f"inconsistent differences: f03-f13 = {d1}, f02-f12 = {d2} "
            f"(tolerance {agreement_tol})"
        )
    return 0.5 * (d1 + d2)
