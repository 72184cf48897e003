import numpy as np
import pytest

from zonecross.core.errors import InvalidArgumentError
from zonecross.dsp.filters import moving_average


def _brute_force(x, window):
    return np.array([np.mean(x[max(0, i - window + 1) : i + 1], axis=0) for i in range(len(x))])


@pytest.mark.parametrize("window", [1, 2, 7, 50])
def test_matches_brute_force(window):
    x = np.random.default_rng(0).normal(size=300)
    np.testing.assert_allclose(moving_average(x, window), _brute_force(x, window), atol=1e-12)


def test_complex_two_dimensional():
    rng = np.random.default_rng(1)
    x = rng.normal(size=(200, 3)) + 1j * rng.normal(size=(200, 3))
    out = moving_average(x, 10)
    assert out.shape == x.shape
    np.testing.assert_allclose(out, _brute_force(x, 10), atol=1e-12)


def test_linear_in_complex_coefficients():
    rng = np.random.default_rng(2)
    x = rng.normal(size=(400, 3)) + 1j * rng.normal(size=(400, 3))
    y = rng.normal(size=(400, 3)) + 1j * rng.normal(size=(400, 3))
    a, b = 0.7 - 1.3j, -2.0 + 0.4j
    np.testing.assert_allclose(
        moving_average(a * x + b * y, 50), a * moving_average(x, 50) + b * moving_average(y, 50), atol=1e-12
    )


def test_constant_is_preserved():
    np.testing.assert_allclose(moving_average(np.full(100, 2.5 - 1j), 50), 2.5 - 1j)


def test_window_longer_than_series():
    x = np.arange(5.0)
    np.testing.assert_allclose(moving_average(x, 50), [0.0, 0.5, 1.0, 1.5, 2.0])


def test_empty_series():
    assert moving_average(np.zeros(0), 5).shape == (0,)


@pytest.mark.parametrize("window", [0, -3, 2.5])
def test_invalid_window(window):
    with pytest.raises(InvalidArgumentError):
        moving_average(np.ones(10), window)
