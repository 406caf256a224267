"""Distributed quarter-wave resonator with an inductive termination.

Solves the transcendental mode equation  kX * tan(kX) = (total inductance) /
(termination inductance), yielding mode frequencies, zero-point current
fluctuations, and per-mode coupling strengths with their natural
high-frequency cutoff  omega_cutoff = Z0 / L_c2  (an angular frequency;
the API reports ordinary GHz).

Only the combinations Z0, X*l (total inductance) and the bare fundamental
frequency enter any result, so the model stores exactly those; the
per-unit-length capacitance/inductance and the physical length never
appear individually.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI_GHZ = 2.0 * math.pi * 1e9  # ordinary GHz -> rad/s
HBAR = 1.054571817e-34  # J s
PLANCK_H = 6.62607015e-34  # J s
PHI0 = 2.067833848e-15  # Wb

# Above this inductance ratio the root sits too close to the tangent pole to
# certify the relative residual in double precision; the root value itself is
# still correct to machine precision.
_RESIDUAL_CHECK_MAX_RATIO = 1e12


@dataclass(frozen=True)
class ResonatorModel:
    """Distributed-element description of the loaded quarter-wave line.

    z0          -- characteristic impedance sqrt(l/c), Ohm
    l_total     -- total line inductance X*l, H
    omega1_bare -- unloaded fundamental pi/(2 X sqrt(c l)) as ordinary GHz
    l_c         -- coupling junction inductance, H
    l_2         -- large-junction pair inductance, H
    i_q         -- qubit persistent current, A (optional; only the absolute
                   coupling path needs it)
    """

    z0: float
    l_total: float
    omega1_bare: float
    l_c: float
    l_2: float
    i_q: float | None = None

    def __post_init__(self):
        for name in ("z0", "l_total", "omega1_bare", "l_c", "l_2"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)}")
        if self.i_q is not None and not self.i_q > 0.0:
            raise ValueError(f"i_q must be > 0 when given, got {self.i_q}")

    @property
    def l_c2(self) -> float:
        """Parallel combination l_c * l_2 / (l_c + l_2); below min(l_c, l_2)."""
        return self.l_c * self.l_2 / (self.l_c + self.l_2)

    @property
    def inductance_ratio(self) -> float:
        """L_c2 / (X*l), the small parameter of the first-order mode formula."""
        return self.l_c2 / self.l_total


@dataclass(frozen=True)
class DeviceMeta:
    """Junction design values carried as provenance only (nothing consumes them)."""

    alpha: float
    e_j: float
    phi0: float = PHI0

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must be in (0, 1), got {self.alpha}")


@dataclass(frozen=True)
class ModeTable:
    """Per-mode arrays: index n = 1, 2, ..., frequency, kX, I_zpf, coupling."""

    n: np.ndarray
    omega_ghz: np.ndarray
    k_x: np.ndarray
    i_zpf: np.ndarray
    g_ghz: np.ndarray

    def __len__(self):
        return len(self.n)

    def rows(self):
        for k in range(len(self.n)):
            yield (
                int(self.n[k]),
                float(self.omega_ghz[k]),
                float(self.k_x[k]),
                float(self.i_zpf[k]),
                float(self.g_ghz[k]),
            )


def cutoff_frequency(m: ResonatorModel, lc_only: bool = False) -> float:
    """Coupling cutoff Z0 / L_c2 converted to ordinary GHz.

    ``lc_only`` selects the L_c-only approximation (valid for l_c << l_2).
    """
    inductance = m.l_c if lc_only else m.l_c2
    return m.z0 / inductance / TWO_PI_GHZ


def _root_in_branch(r: float, n: int) -> float:
    """Unique root of y*tan(y) = r in ((n-1)*pi, (n-1)*pi + pi/2).

    Bisection on the pole-free form (-1)^(n-1) * (y sin y - r cos y), which is
    negative at the left endpoint and positive at the right one; converges
    unconditionally to interval collapse or width < 1e-13.
    """
    lo = (n - 1) * math.pi
    hi = lo + 0.5 * math.pi
    sign = -1.0 if n % 2 == 0 else 1.0

    def h(y):
        return sign * (y * math.sin(y) - r * math.cos(y))

    a, b = lo, hi
    if h(b) <= 0.0:
        # r so large the root is within one ulp of the pole.
        return b
    for _ in range(200):
        mid = 0.5 * (a + b)
        if mid <= a or mid >= b:
            break
        if h(mid) > 0.0:
            b = mid
        else:
            a = mid
        if b - a < 1e-13:
            break
    return 0.5 * (a + b)


def mode_wavenumbers(m: ResonatorModel, n_modes: int) -> np.ndarray:
    """Dimensionless kX roots of the mode equation for branches 1..n_modes."""
    if n_modes < 1:
        raise ValueError(f"n_modes must be >= 1, got {n_modes}")
    r = m.l_total / m.l_c2
    roots = np.array([_root_in_branch(r, n) for n in range(1, n_modes + 1)])
    if r < _RESIDUAL_CHECK_MAX_RATIO:
        resid = np.abs(roots * np.tan(roots) - r) / r
        if np.max(resid) > 1e-9:
            raise RuntimeError(f"mode-equation residual {np.max(resid)} exceeds 1e-9")
    return roots


def mode_frequencies(m: ResonatorModel, n_modes: int) -> np.ndarray:
    """Mode frequencies in GHz; odd multiples of the fundamental in the ideal limit."""
    return m.omega1_bare * mode_wavenumbers(m, n_modes) / (0.5 * math.pi)


def zero_point_current(m: ResonatorModel, omega_n) -> np.ndarray | float:
    """RMS ground-state current at the coupled end for mode frequency omega_n (GHz).

    sqrt(hbar * w / (X*l)) suppressed by 1 / sqrt(1 + (w / w_cutoff)^2), with
    both frequencies angular; maximal at w = w_cutoff.
    """
    w = np.asarray(omega_n, dtype=float) * TWO_PI_GHZ
    if np.any(w <= 0.0):
        raise ValueError("omega_n must be > 0")
    w_cut = m.z0 / m.l_c2
    out = np.sqrt(HBAR * w / (m.l_total * (1.0 + (w / w_cut) ** 2)))
    return float(out) if out.ndim == 0 else out


def coupling_strength_at(omega_ghz, g1: float, omega1: float, omega_cutoff_ghz: float):
    """Coupling to a mode at ``omega_ghz``, scaled from the fundamental coupling:

        g(w) = g1 * sqrt((w / omega1) / (1 + (w / w_cutoff)^2))

    Accepts scalars or arrays; ``omega_cutoff_ghz`` may be ``inf``.
    """
    w = np.asarray(omega_ghz, dtype=float)
    out = g1 * np.sqrt((w / omega1) / (1.0 + (w / omega_cutoff_ghz) ** 2))
    return float(out) if out.ndim == 0 else out


def coupling_strengths(
    m: ResonatorModel,
    g1: float,
    omega1: float,
    modes,
    absolute: bool = False,
) -> np.ndarray:
    """Per-mode couplings in GHz for the given mode frequencies (GHz).

    Default path scales ``g1`` by the cutoff-suppressed sqrt(omega) law.  The
    absolute path computes l_c * i_q * I_zpf / h instead (requires ``i_q``);
    the two agree in the ratio g_n/g_1 to O((omega1/omega_cutoff)^2).
    """
    if not g1 > 0.0:
        raise ValueError(f"g1 must be > 0, got {g1}")
    if not omega1 > 0.0:
        raise ValueError(f"omega1 must be > 0, got {omega1}")
    modes = np.asarray(modes, dtype=float)
    if absolute:
        if m.i_q is None:
            raise ValueError("absolute coupling path requires the model's i_q")
        return m.l_c * m.i_q * zero_point_current(m, modes) / (PLANCK_H * 1e9)
    return coupling_strength_at(modes, g1, omega1, cutoff_frequency(m))


def mode_table(m: ResonatorModel, n_modes: int, g1: float, omega1: float) -> ModeTable:
    """Assemble the per-mode table: index, frequency, kX, I_zpf, coupling."""
    k_x = mode_wavenumbers(m, n_modes)
    omega = m.omega1_bare * k_x / (0.5 * math.pi)
    return ModeTable(
        n=np.arange(1, n_modes + 1),
        omega_ghz=omega,
        k_x=k_x,
        i_zpf=zero_point_current(m, omega),
        g_ghz=coupling_strengths(m, g1, omega1, omega),
    )
