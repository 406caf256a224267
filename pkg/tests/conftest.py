import numpy as np
import pytest

from dscqed import PeakData, QrmParams, ResonatorModel
from dscqed.fitting import _predicted

PAPER_TRIPLE = (0.147, 2.57, 2.39)


@pytest.fixture
def paper_params():
    return QrmParams(delta_prime=0.147, epsilon=0.0, omega1=2.57, g1=2.39)


@pytest.fixture
def paper_resonator():
    return ResonatorModel(
        z0=50.0, l_total=1.93e-9, omega1_bare=2.8525, l_c=231e-12, l_2=823e-12
    )


def synthetic_peaks(triple, noise_sigma=0.0, seed=0, n_branch=9, quad_repeats=0):
    """Labeled synthetic peak data from the model itself (round-trip oracle).

    Branch points cover the 03/12 lines on a bias grid (02/13 away from the
    symmetry point); optional repeated 03/13/02/12 quadruples at +-0.01 GHz
    pin the small 0-1 splitting when noise is added.
    """
    rows = []
    for eps in np.linspace(-0.9, 0.9, n_branch):
        labels = ["03", "12"] if eps == 0.0 else ["03", "12", "02", "13"]
        rows.extend((float(eps), lab) for lab in labels)
    for _ in range(quad_repeats):
        for eps in (-0.01, 0.01):
            rows.extend((eps, lab) for lab in ("03", "13", "02", "12"))
    eps = np.array([r[0] for r in rows])
    labels = tuple(r[1] for r in rows)
    shell = PeakData(
        epsilon=eps,
        frequency=np.zeros(len(rows)),
        label=labels,
        weight=np.ones(len(rows)),
    )
    clean = _predicted(triple, shell, n_max=40, k_levels=6, floor=1e-6)
    if noise_sigma:
        rng = np.random.default_rng(seed)
        clean = clean + noise_sigma * rng.standard_normal(len(rows))
    return PeakData(
        epsilon=eps, frequency=clean, label=labels, weight=np.ones(len(rows))
    )
