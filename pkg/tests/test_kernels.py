import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from overres import _pykernels as py
from overres import kernels


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")
    assert "python" in kernels.backends()


@given(st.sampled_from([2, 3, 5, 7, 101]), st.integers(1, 6), st.integers(0, 2**31))
def test_compiled_and_python_kernels_agree(p, n, seed):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, p, size=(n, n + 1), dtype=np.int64)
    b = rng.integers(0, p, size=(n + 1, n), dtype=np.int64)
    stack = rng.integers(0, p, size=(3, n, n + 1), dtype=np.int64)
    for impl in kernels.backends().values():
        assert np.array_equal(impl.matmul_mod(a, b, p), a @ b % p)
        assert np.array_equal(impl.batch_matmul_mod(stack, b, p), stack @ b % p)
        r, piv = impl.rref_mod(a, p)
        r0, piv0 = py.rref_mod(a, p)
        assert np.array_equal(r, r0) and list(piv) == list(piv0)
