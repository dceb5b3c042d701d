import numpy as np
import pytest
from scipy.integrate import simpson as scipy_simpson

from lifshitz_fidelity import QuadratureSpec, kernels

NUMBA_AVAILABLE = kernels.IMPLEMENTATIONS["numba"] is not None

WORKLOADS = {
    "blackening": (np.linspace(0.5, 5.0, 513), 0.3, -1.0, -1.3, 1.0, 3.0),
    "volume_integrand_r": (np.linspace(0.0, 1.0, 513), 1.0, 9.0, 2, 0.3, -1.0, -1.3, 1.0, 3.0, 0.25),
    "wform_top": (np.linspace(0.0, 1.0, 513), 0.5, 2, 0.0, -0.3, -1.0, 3.0, 0.44),
    "wform_log": (np.linspace(np.log(1e-3), np.log(0.5), 513), 0.0, -0.3, -1.0, 3.0),
    "gaussian_product": (np.linspace(-12.0, 12.0, 513), 1.0, 0.0, 2.0, 0.3),
    "simpson": (1.0 / (1.0 + np.linspace(0.0, 1.0, 513) ** 2), 1e-3),
}


@pytest.mark.skipif(not NUMBA_AVAILABLE, reason="numba disabled or unavailable")
@pytest.mark.parametrize("name", sorted(WORKLOADS))
def test_numba_and_numpy_paths_agree(name):
    args = WORKLOADS[name]
    out_np = kernels.IMPLEMENTATIONS["numpy"][name](*args)
    out_nb = kernels.IMPLEMENTATIONS["numba"][name](*args)
    np.testing.assert_allclose(out_np, out_nb, rtol=1e-12, atol=1e-15)


def test_simpson_integrates_sine():
    x = np.linspace(0.0, np.pi, 2049)
    val = kernels.simpson(np.sin(x), x[1] - x[0])
    assert val == pytest.approx(2.0, rel=1e-10)


def test_simpson_matches_scipy():
    x = np.linspace(0.0, 3.0, 513)
    y = np.exp(-(x**2))
    assert kernels.simpson(y, x[1] - x[0]) == pytest.approx(
        scipy_simpson(y, x=x), rel=1e-12
    )


def test_refined_simpson_richardson_improves_estimate():
    def make(n):
        x = np.linspace(0.0, 1.0, n)
        return x**6, x[1] - x[0]

    value, err = kernels.refined_simpson(make, QuadratureSpec(panels=64, levels=2))
    assert value == pytest.approx(1.0 / 7.0, rel=1e-12)
    assert err >= 0.0
