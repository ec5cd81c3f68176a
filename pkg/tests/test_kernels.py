import numpy as np
import pytest

from nearfields import kernels


def _both(fn, *args):
    """Run a kernel on both backends and insist they answer identically."""
    out_np = fn(*args, backend_name="numpy")
    if kernels.HAS_NUMBA:
        out_nb = fn(*args, backend_name="numba")
        assert out_nb == out_np
    return out_np


def test_assoc_passes_on_modular_addition():
    m = 7
    t = (np.arange(m)[:, None] + np.arange(m)[None, :]) % m
    assert _both(kernels.assoc_witness, t) is None


def test_assoc_witness_is_first_failure():
    m = 5
    t = (np.arange(m)[:, None] + np.arange(m)[None, :]) % m
    t = t.copy()
    t[1, 2] = 0  # break one entry
    w = _both(kernels.assoc_witness, t)
    assert w is not None
    i, j, k = w
    assert t[t[i, j], k] != t[i, t[j, k]]


def test_distrib_kernels():
    m = 7
    add = (np.arange(m)[:, None] + np.arange(m)[None, :]) % m
    mul = (np.arange(m)[:, None] * np.arange(m)[None, :]) % m
    assert _both(kernels.left_distrib_witness, mul, add) is None
    assert _both(kernels.right_distrib_witness, mul, add) is None
    bad = add.copy()
    bad[3, 4] = 1
    wl = _both(kernels.left_distrib_witness, mul, bad)
    assert wl is not None
    i, j, k = wl
    assert mul[i, bad[j, k]] != bad[mul[i, j], mul[i, k]]


def test_sampled_kernels_match_exhaustive_verdict():
    rng = np.random.default_rng(7)
    m = 9
    add = (np.arange(m)[:, None] + np.arange(m)[None, :]) % m
    ii, jj, kk = (rng.integers(0, m, 500) for _ in range(3))
    assert _both(kernels.assoc_witness_sampled, add, ii, jj, kk) is None
    bad = add.copy()
    bad[:] = rng.integers(0, m, (m, m))  # scrambled table fails fast
    w = _both(kernels.assoc_witness_sampled, bad, ii, jj, kk)
    if kernels.assoc_witness(bad, backend_name="numpy") is not None:
        assert w is None or len(w) == 3


def test_hom_left_distrib_witness():
    # Maps x -> c*x mod 5 are additive; a non-linear map is not.
    m = 5
    add = (np.arange(m)[:, None] + np.arange(m)[None, :]) % m
    maps = np.array([(c * np.arange(m)) % m for c in range(m)])
    assert _both(kernels.hom_left_distrib_witness, maps, add, add) is None
    broken = maps.copy()
    broken[2] = np.array([0, 2, 4, 1, 2])  # last entry wrong: 4*2=3 mod 5
    w = _both(kernels.hom_left_distrib_witness, broken, add, add)
    assert w is not None


def test_backend_resolution(monkeypatch):
    monkeypatch.delenv("NEARFIELDS_KERNELS", raising=False)
    assert kernels.backend() in ("numba", "numpy")
    monkeypatch.setenv("NEARFIELDS_KERNELS", "numpy")
    assert kernels.backend() == "numpy"
    assert kernels.backend("numpy") == "numpy"
    monkeypatch.setenv("NEARFIELDS_KERNELS", "bogus")
    with pytest.raises(RuntimeError):
        kernels.backend()
