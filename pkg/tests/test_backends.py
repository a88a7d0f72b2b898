"""The compiled extension and the NumPy fallback must be interchangeable."""

import numpy as np
import pytest

from specmoll import _kernels_py
from specmoll._backend import available_backends, backend_name

BACKENDS = available_backends()
HAS_COMPILED = any(b.BACKEND == "c" for b in BACKENDS)


def test_backend_name_valid():
    assert backend_name() in ("c", "python")


@pytest.mark.skipif(not HAS_COMPILED, reason="compiled backend unavailable")
class TestAgreement:
    def setup_method(self):
        from specmoll import _kernels

        self.c = _kernels
        self.py = _kernels_py
        self.rng = np.random.default_rng(7)

    def test_rho_agrees(self):
        u = self.rng.uniform(-4, 4, 4000)
        assert np.max(np.abs(self.c.rho_many(u, 10.0)
                             - self.py.rho_many(u, 10.0))) <= 1e-12

    def test_dirichlet_agrees(self):
        y = self.rng.uniform(-7, 7, 4000)
        for p in (1.0, 11.0, 64.0):
            assert np.max(np.abs(self.c.dirichlet_many(y, p)
                                 - self.py.dirichlet_many(y, p))) <= 1e-12

    def test_dirichlet_series_branch_agrees(self):
        y = np.array([0.0, 1e-9, -1e-9, 2 * np.pi, 2 * np.pi + 1e-9])
        assert np.array_equal(self.c.dirichlet_many(y, 9.0),
                              self.py.dirichlet_many(y, 9.0))

    def test_psi_agrees(self):
        y = self.rng.uniform(-2, 2, 4000)
        for theta, p in ((0.5, 39.0), (0.03125, 2.0), (1.0, 64.0)):
            assert np.max(np.abs(self.c.psi_many(y, theta, p, 10.0)
                                 - self.py.psi_many(y, theta, p, 10.0))) <= 1e-12

    def test_projection_agrees(self):
        y = self.rng.uniform(-10, 10, 2000)
        coeffs = self.rng.normal(size=257) + 1j * self.rng.normal(size=257)
        a = self.c.projection_eval(coeffs, y)
        b = self.py.projection_eval(coeffs, y)
        assert np.max(np.abs(a - b)) <= 1e-12

    def test_psi_support_zero_exact(self):
        y = np.array([np.pi * 0.5, -np.pi * 0.5, 3.0])
        assert np.all(self.c.psi_many(y, 0.5, 7.0, 10.0) == 0.0)
        assert np.all(self.py.psi_many(y, 0.5, 7.0, 10.0) == 0.0)
