import numpy as np
import pytest

from zonecross.core.errors import DegenerateDenominatorError, InvalidArgumentError
from zonecross.dsp.ratio import align_common_phase, csi_ratio, ratio_from_samples


def _samples(n=100, seed=0):
    rng = np.random.default_rng(seed)
    return 1.0 + 0.1 * (rng.normal(size=(n, 3)) + 1j * rng.normal(size=(n, 3)))


def test_common_phase_cancels():
    x = _samples()
    phase = np.exp(1j * np.random.default_rng(1).uniform(-np.pi, np.pi, size=100))
    clean = ratio_from_samples(x, (0, 1), 1000.0).values
    rotated = ratio_from_samples(x * phase[:, None], (0, 1), 1000.0).values
    np.testing.assert_allclose(rotated, clean, rtol=1e-12)


def test_trace_ratio(small_trace):
    series = csi_ratio(small_trace, (2, 0))
    assert series.antenna_pair == (2, 0)
    assert len(series) == len(small_trace)
    np.testing.assert_allclose(series.values, small_trace.samples[:, 2] / small_trace.samples[:, 0])


def test_degenerate_denominator_names_frame():
    x = _samples()
    x[42, 1] = 0.0
    with pytest.raises(DegenerateDenominatorError) as info:
        ratio_from_samples(x, (0, 1), 1000.0)
    assert info.value.frame_index == 42


@pytest.mark.parametrize("pair", [(1, 1), (0, 3), (-1, 0)])
def test_invalid_pairs(pair):
    with pytest.raises(InvalidArgumentError):
        ratio_from_samples(_samples(), pair, 1000.0)


def test_alignment_zeroes_reference_phase_and_keeps_ratio():
    x = _samples()
    aligned = align_common_phase(x, 1)
    np.testing.assert_allclose(np.angle(aligned[:, 1]), 0.0, atol=1e-12)
    np.testing.assert_allclose(aligned[:, 0] / aligned[:, 1], x[:, 0] / x[:, 1], rtol=1e-12)
    np.testing.assert_allclose(np.abs(aligned), np.abs(x), rtol=1e-12)
