import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)


def random_complex(rng, n):
    return rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))


def random_hermitian_pd(rng, n, lo=0.5, hi=3.0):
    q = np.linalg.qr(random_complex(rng, n))[0]
    lam = rng.uniform(lo, hi, size=n)
    m = (q * lam) @ q.conj().T
    return 0.5 * (m + m.conj().T)
