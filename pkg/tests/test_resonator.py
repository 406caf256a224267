import math

import numpy as np
import pytest

from dscqed import (
    DeviceMeta,
    ResonatorModel,
    coupling_strength_at,
    coupling_strengths,
    cutoff_frequency,
    mode_frequencies,
    mode_table,
    mode_wavenumbers,
    zero_point_current,
)
from dscqed.resonator import TWO_PI_GHZ


def _model(z0=50.0, l_total=1.93e-9, bare=2.8525, l_c=231e-12, l_2=823e-12, i_q=None):
    return ResonatorModel(
        z0=z0, l_total=l_total, omega1_bare=bare, l_c=l_c, l_2=l_2, i_q=i_q
    )


# ---------------------------------------------------------------------------
# Cutoff frequency
# ---------------------------------------------------------------------------


def test_cutoff_lc_only_published_value(paper_resonator):
    assert abs(cutoff_frequency(paper_resonator, lc_only=True) - 34.4) <= 0.1


def test_cutoff_exact_arithmetic(paper_resonator):
    # plain arithmetic: parallel inductance then Z0 / L / 2pi
    l_c2 = 231e-12 * 823e-12 / (231e-12 + 823e-12)
    expected = 50.0 / l_c2 / TWO_PI_GHZ
    assert cutoff_frequency(paper_resonator) == pytest.approx(expected, rel=1e-14)
    assert abs(expected - 44.1) < 0.05


def test_cutoff_approximation_exact_for_large_l2():
    m = _model(l_2=1e3)
    assert cutoff_frequency(m) == pytest.approx(
        cutoff_frequency(m, lc_only=True), rel=1e-9
    )


def test_cutoff_scaling_identity():
    # omega_cutoff * L_c2 / Z0 is identically one in angular units
    for factor in (0.5, 2.0, 7.3):
        m = _model(z0=50.0 / factor, l_c=231e-12 * factor)
        assert cutoff_frequency(m) * TWO_PI_GHZ * m.l_c2 / m.z0 == pytest.approx(
            1.0, rel=1e-12
        )


# ---------------------------------------------------------------------------
# Mode equation
# ---------------------------------------------------------------------------


def test_ideal_quarter_wave_limit():
    # vanishing termination inductance: roots at n*pi - pi/2, frequencies at
    # odd multiples of the fundamental
    m = _model(l_c=1e-25, l_2=1e-25)
    kx = mode_wavenumbers(m, 5)
    expected = np.array([n * math.pi - math.pi / 2 for n in range(1, 6)])
    assert np.max(np.abs(kx - expected)) < 1e-12
    freqs = mode_frequencies(m, 5)
    assert np.allclose(freqs / m.omega1_bare, [1, 3, 5, 7, 9], atol=1e-12)


def test_roots_bracketed_with_small_residual(paper_resonator):
    n_modes = 50
    kx = mode_wavenumbers(paper_resonator, n_modes)
    r = paper_resonator.l_total / paper_resonator.l_c2
    for n, y in enumerate(kx, start=1):
        assert (n - 1) * math.pi < y < (n - 1) * math.pi + math.pi / 2
        assert abs(y * math.tan(y) - r) / r < 1e-9


def test_fundamental_matches_first_order_formula(paper_resonator):
    kx1 = mode_wavenumbers(paper_resonator, 1)[0]
    first_order = (math.pi / 2) * (1.0 - paper_resonator.inductance_ratio)
    assert abs(kx1 - first_order) / kx1 < 0.01


def test_first_order_formula_in_its_regime():
    # small termination: exact roots track (n*pi - pi/2)(1 - ratio) to 0.5%
    for ratio in (0.01, 0.02, 0.03, 0.04):
        m = _model(l_c=ratio * 1.93e-9, l_2=1e3)
        kx = mode_wavenumbers(m, 5)
        for n, y in enumerate(kx, start=1):
            formula = (n * math.pi - math.pi / 2) * (1.0 - m.inductance_ratio)
            assert abs(formula - y) / y < 0.005


def test_mode_frequencies_strictly_increasing(paper_resonator):
    freqs = mode_frequencies(paper_resonator, 30)
    assert np.all(np.diff(freqs) > 0.0)


def test_loaded_fundamental_and_cutoff_ratio(paper_resonator):
    # the bundled bare value puts the loaded fundamental at 2.61 GHz, giving
    # the published cutoff ratio 13.2 with the L_c-only cutoff
    w1 = mode_frequencies(paper_resonator, 1)[0]
    assert abs(w1 - 2.61) < 0.005
    n_cutoff = cutoff_frequency(paper_resonator, lc_only=True) / w1
    assert abs(n_cutoff - 13.2) < 0.05


# ---------------------------------------------------------------------------
# Zero-point current
# ---------------------------------------------------------------------------


def test_zpf_sqrt_scaling_below_cutoff(paper_resonator):
    low = 0.001
    ratio = zero_point_current(paper_resonator, 2 * low) / zero_point_current(
        paper_resonator, low
    )
    assert abs(ratio - math.sqrt(2.0)) / math.sqrt(2.0) < 0.01


def test_zpf_maximal_at_cutoff(paper_resonator):
    w_cut = cutoff_frequency(paper_resonator)
    grid = np.linspace(0.1, 5 * w_cut, 2001)
    currents = zero_point_current(paper_resonator, grid)
    peak = zero_point_current(paper_resonator, w_cut)
    assert np.all(currents <= peak + 1e-30)
    # closed form at the peak: sqrt(hbar * w_cut_angular / (2 X l))
    expected = math.sqrt(
        1.054571817e-34 * w_cut * TWO_PI_GHZ / (2.0 * paper_resonator.l_total)
    )
    assert peak == pytest.approx(expected, rel=1e-12)


def test_zpf_inverse_sqrt_scaling_above_cutoff(paper_resonator):
    w_cut = cutoff_frequency(paper_resonator)
    hi = 400.0 * w_cut
    ratio = zero_point_current(paper_resonator, 2 * hi) / zero_point_current(
        paper_resonator, hi
    )
    assert abs(ratio - 1.0 / math.sqrt(2.0)) < 0.01


def test_zpf_rejects_nonpositive_frequency(paper_resonator):
    with pytest.raises(ValueError):
        zero_point_current(paper_resonator, 0.0)


# ---------------------------------------------------------------------------
# Coupling strengths
# ---------------------------------------------------------------------------


def test_coupling_at_fundamental_close_to_g1(paper_resonator):
    g1, w1 = 2.39, 2.57
    w_cut = cutoff_frequency(paper_resonator)
    g = coupling_strength_at(w1, g1, w1, w_cut)
    assert g == pytest.approx(g1 / math.sqrt(1.0 + (w1 / w_cut) ** 2), rel=1e-14)
    assert abs(g - g1) / g1 < 0.01


def test_coupling_peak_value(paper_resonator):
    g1, w1 = 2.39, 2.57
    w_cut = cutoff_frequency(paper_resonator)
    g_peak = coupling_strength_at(w_cut, g1, w1, w_cut)
    assert g_peak == pytest.approx(g1 * math.sqrt(w_cut / (2.0 * w1)), rel=1e-14)


def test_coupling_sqrt_growth_without_cutoff():
    assert coupling_strength_at(9.0, 1.0, 1.0, math.inf) == pytest.approx(3.0)


def test_coupling_unimodal_peak_at_cutoff(paper_resonator):
    w_cut = cutoff_frequency(paper_resonator)
    grid = np.linspace(0.01, 4 * w_cut, 10001)
    g = coupling_strength_at(grid, 2.39, 2.57, w_cut)
    peak = int(np.argmax(g))
    assert abs(grid[peak] - w_cut) <= grid[1] - grid[0]
    assert np.all(np.diff(g[: peak + 1]) > 0.0)
    assert np.all(np.diff(g[peak:]) < 0.0)


def test_larger_coupling_inductance_lowers_cutoff():
    cutoffs = [
        cutoff_frequency(_model(l_c=lc * 1e-12)) for lc in (100.0, 231.0, 400.0)
    ]
    assert cutoffs[0] > cutoffs[1] > cutoffs[2]


def test_absolute_and_scaled_paths_agree_in_ratio(paper_resonator):
    m = _model(i_q=300e-9)
    modes = mode_frequencies(m, 10)
    scaled = coupling_strengths(m, 2.39, modes[0], modes)
    absolute = coupling_strengths(m, 2.39, modes[0], modes, absolute=True)
    ratio_scaled = scaled / scaled[0]
    ratio_absolute = absolute / absolute[0]
    assert np.max(np.abs(ratio_scaled / ratio_absolute - 1.0)) < 0.01


def test_absolute_path_requires_persistent_current(paper_resonator):
    with pytest.raises(ValueError):
        coupling_strengths(paper_resonator, 2.39, 2.57, [2.57], absolute=True)


# ---------------------------------------------------------------------------
# Mode table and model validation
# ---------------------------------------------------------------------------


def test_mode_table_invariants(paper_resonator):
    table = mode_table(paper_resonator, 20, g1=2.39, omega1=2.57)
    assert len(table) == 20
    assert np.all(np.diff(table.omega_ghz) > 0.0)
    assert np.all(table.g_ghz > 0.0)
    assert np.all(table.i_zpf > 0.0)
    for n, _omega, kx, _izpf, _g in table.rows():
        assert (n - 1) * math.pi < kx < (n - 1) * math.pi + math.pi / 2


def test_parallel_inductance_below_both(paper_resonator):
    assert paper_resonator.l_c2 < min(paper_resonator.l_c, paper_resonator.l_2)


def test_model_rejects_nonpositive_values():
    with pytest.raises(ValueError):
        _model(z0=0.0)
    with pytest.raises(ValueError):
        _model(l_c=-1e-12)


def test_device_meta_alpha_range():
    DeviceMeta(alpha=0.46, e_j=397.0)
    with pytest.raises(ValueError):
        DeviceMeta(alpha=1.2, e_j=397.0)
