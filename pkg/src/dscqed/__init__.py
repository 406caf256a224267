"""Deep-strong-coupling circuit QED toolkit.

Models a flux qubit coupled through a shared inductance to a multimode
quarter-wave resonator: quantum Rabi spectra and selection rules, the
resonator's transcendental mode structure with its high-frequency coupling
cutoff, and the resulting cascade of renormalized qubit gaps.
"""

from .config import RunConfig, load_config, paper_device_path, synthetic_peaks_path
from .errors import ConfigError, ConvergenceError, TruncationLimitError
from .fitting import FitResult, PeakData, fit, model_frequency, read_peaks_csv, report_chain
from .lamb import (
    LambShiftReport,
    asymptotic_sum,
    cutoff_sum,
    full_report,
    full_report_from_bare,
    multimode_renorm,
    partial_renorm,
    per_mode_shifts,
    single_mode_renorm,
)
from .rabi import (
    EigenSystem,
    FockTruncation,
    QrmParams,
    build_hamiltonian,
    converged_truncation,
    drive_matrix_element,
    eigensystem,
    parity_labels,
    solve,
    transition_frequency,
)
from .resonator import (
    DeviceMeta,
    ModeTable,
    ResonatorModel,
    coupling_strength_at,
    coupling_strengths,
    cutoff_frequency,
    mode_frequencies,
    mode_table,
    mode_wavenumbers,
    zero_point_current,
)
from .spectrum import SpectralLine, SweepConfig, indirect_delta, sweep

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "ConvergenceError",
    "DeviceMeta",
    "EigenSystem",
    "FitResult",
    "FockTruncation",
    "LambShiftReport",
    "ModeTable",
    "PeakData",
    "QrmParams",
    "ResonatorModel",
    "RunConfig",
    "SpectralLine",
    "SweepConfig",
    "TruncationLimitError",
    "asymptotic_sum",
    "build_hamiltonian",
    "converged_truncation",
    "coupling_strength_at",
    "coupling_strengths",
    "cutoff_frequency",
    "cutoff_sum",
    "drive_matrix_element",
    "eigensystem",
    "fit",
    "full_report",
    "full_report_from_bare",
    "indirect_delta",
    "load_config",
    "mode_frequencies",
    "mode_table",
    "mode_wavenumbers",
    "model_frequency",
    "multimode_renorm",
    "paper_device_path",
    "parity_labels",
    "partial_renorm",
    "per_mode_shifts",
    "read_peaks_csv",
    "report_chain",
    "single_mode_renorm",
    "solve",
    "sweep",
    "synthetic_peaks_path",
    "transition_frequency",
    "zero_point_current",
]
