import numpy as np
import pytest

from rectmac import kernels
from rectmac.kernels import Constraint, Factor, expand_product
from rectmac.laurent import dyson_factors, expand_F

needs_numba = pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba not installed")


def _factors(betas, t=0, wcaps=None):
    s = len(betas)
    variables = [("z", i) for i in range(1, s + 1)] + [("w", j) for j in range(1, t + 1)]
    idx = {v: i for i, v in enumerate(variables)}
    facs = [
        Factor.from_terms(len(variables), [({idx[v]: e for v, e in d.items()}, c, k) for d, c, k in f])
        for f in dyson_factors(betas, t, wcaps)
    ]
    return facs, len(variables)


def test_backend_flag(monkeypatch):
    monkeypatch.setenv("RECTMAC_KERNEL", "numpy")
    assert kernels.backend() == "numpy"
    monkeypatch.delenv("RECTMAC_KERNEL")
    assert kernels.backend() == ("numba" if kernels.HAVE_NUMBA else "numpy")


@needs_numba
@pytest.mark.parametrize("case", [((2, 2, 2), 0, None), ((1, 1, 1, 1), 0, None), ((2, 1), 2, (3, 3))])
def test_backends_agree(case):
    facs, nv = _factors(*case)
    a = expand_product(facs, nv, backend_name="numpy")
    b = expand_product(facs, nv, backend_name="numba")
    assert a[2] == b[2]
    assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])


@needs_numba
def test_backends_agree_with_constraints():
    facs, nv = _factors((2, 1, 1), 1, (3,))
    cons = [Constraint(np.array([0, 0, 0, 1], dtype=np.int64), -3, -3)]
    a = expand_product(facs, nv, cons, backend_name="numpy")
    b = expand_product(facs, nv, cons, backend_name="numba")
    assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])
    assert set(a[0][:, 3].tolist()) == {-3}


def test_numpy_path_end_to_end(monkeypatch):
    want = expand_F((2, 1, 1), 1, (2,))
    monkeypatch.setenv("RECTMAC_KERNEL", "numpy")
    assert expand_F((2, 1, 1), 1, (2,)) == want


def test_overflow_switches_to_python_ints():
    # (1 + 2^40 x)^3 overflows int64 in its top coefficient
    big = 1 << 40
    f = Factor.from_terms(1, [({}, 1, 0), ({0: 1}, big, 0)])
    exps, coef, qoff = expand_product([f, f, f], 1, backend_name="numpy")
    got = {int(exps[i, 0]): int(coef[i, 0]) for i in range(exps.shape[0])}
    assert got == {0: 1, 1: 3 * big, 2: 3 * big**2, 3: big**3}


def test_negative_q_shift():
    f = Factor.from_terms(1, [({}, 1, 0), ({0: 1}, -1, -2)])  # 1 - q^-2 x
    exps, coef, qoff = expand_product([f], 1, backend_name="numpy")
    assert qoff == -2
    rows = {int(exps[i, 0]): coef[i].tolist() for i in range(exps.shape[0])}
    assert rows[1][0] == -1 and rows[0][2] == 1
