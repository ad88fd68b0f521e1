import pytest

from awspec import backend
from awspec import _kernels_py
from awspec.exceptions import NonConvergenceError, PoleError

try:
    from awspec import _kernels
    HAVE_C = True
except ImportError:
    HAVE_C = False


@pytest.mark.skipif(not HAVE_C, reason="compiled kernels not built")
class TestBackendEquivalence:
    def test_qpoch(self, rng):
        for _ in range(50):
            a = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            n = int(rng.integers(0, 30))
            assert _kernels.qpoch(a, 0.5, n) == _kernels_py.qpoch(a, 0.5, n)

    def test_qpoch_inf(self, rng):
        for _ in range(50):
            a = complex(rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9))
            c = _kernels.qpoch_inf(a, 0.6, 1e-14, 10000)
            p = _kernels_py.qpoch_inf(a, 0.6, 1e-14, 10000)
            assert c == p

    def test_phi_sum_terminating(self, rng):
        for _ in range(30):
            num = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
                   for _ in range(3)]
            den = [complex(rng.uniform(0.2, 0.8), 0) for _ in range(2)]
            z = complex(rng.uniform(-0.8, 0.8), rng.uniform(-0.5, 0.5))
            c = _kernels.phi_sum(num, den, 0.5, z, 0, 8, 1e-14, 10000)
            p = _kernels_py.phi_sum(num, den, 0.5, z, 0, 8, 1e-14, 10000)
            assert c == p

    def test_phi_sum_adaptive(self, rng):
        for _ in range(30):
            num = [complex(rng.uniform(-0.8, 0.8), rng.uniform(-0.3, 0.3))
                   for _ in range(2)]
            den = [complex(rng.uniform(0.2, 0.8), 0)]
            z = complex(rng.uniform(-0.7, 0.7), 0)
            c = _kernels.phi_sum(num, den, 0.5, z, 0, -1, 1e-14, 10000)
            p = _kernels_py.phi_sum(num, den, 0.5, z, 0, -1, 1e-14, 10000)
            assert c == p

    def test_sign_power_path(self):
        num = [0.3 + 0.1j]
        den = [0.4, 0.5]
        c = _kernels.phi_sum(num, den, 0.5, 0.6, 2, -1, 1e-14, 10000)
        p = _kernels_py.phi_sum(num, den, 0.5, 0.6, 2, -1, 1e-14, 10000)
        assert abs(c - p) <= 1e-16 * abs(p)

    def test_exceptions_match(self):
        with pytest.raises(PoleError):
            _kernels.phi_sum([0.5 ** -4], [0.5 ** -2], 0.5, 0.5, 0, 4,
                             1e-14, 10000)
        with pytest.raises(NonConvergenceError):
            _kernels.phi_sum([0.3, 0.2, 0.4], [0.1], 0.5, 1.5, 0, -1,
                             1e-14, 200)


class TestSelection:
    def test_backend_reports_a_choice(self):
        assert backend.BACKEND in ("c", "python")

    def test_pure_python_backend_is_complete(self):
        for name in ("qpoch", "qpoch_inf", "phi_sum"):
            assert callable(getattr(_kernels_py, name))
