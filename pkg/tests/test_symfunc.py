from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rectmac.exactq import ONE, ZERO, RatFuncQ, qpoch_rf
from rectmac.laurent import LaurentPoly, var
from rectmac.partitions import Dominance, complement, dominance_cmp, partitions
from rectmac.symfunc import (
    SymFunc,
    adjoint_apply,
    g,
    jack_gs,
    limit_sym,
    lowering_apply,
    macdonald_gs,
    norm_closed,
    qn,
    scalar,
    schur_jt,
    to_g_basis,
)

Q1 = RatFuncQ.q_power(1)


def qb(k):
    return RatFuncQ.q_power(k)


def p(*lam):
    return SymFunc.p(lam)


def frac(a, b):
    return RatFuncQ(Fraction(a, b))


def test_one_row_examples():
    for beta in (1, 2, 3):
        r = (ONE - qb(beta)) / (ONE - Q1)
        assert qn(0, beta) == SymFunc.one()
        assert qn(1, beta) == p(1).scale(r)
        r2 = (ONE - qb(2 * beta)) / (ONE - qb(2))
        assert qn(2, beta) == p(1, 1).scale(r * r * frac(1, 2)) + p(2).scale(r2 * frac(1, 2))
        assert qn(-1, beta).is_zero()


def test_scalar_examples():
    assert scalar(p(1), p(1), 2) == (ONE + Q1).inverse()
    assert scalar(p(1), p(2), 2) == ZERO
    for beta in (1, 2, 3):
        assert scalar(p(2), p(2), beta) == RatFuncQ(2) * (ONE - qb(2)) / (ONE - qb(2 * beta))


def test_adjoint_examples():
    for beta in (1, 2):
        e = (ONE - Q1) / (ONE - qb(beta))
        assert adjoint_apply(p(1), p(1), beta) == SymFunc.one().scale(e)
        assert adjoint_apply(p(2), p(1, 1), beta).is_zero()
        assert adjoint_apply(p(1), p(1, 1), beta) == p(1).scale(e * RatFuncQ(2))


def test_lowering_examples():
    D1, D2 = var("D", 1), var("D", 2)
    assert lowering_apply(D1 * var("D", 2, -1), (2, 2), 1) == qn(1, 1) * qn(3, 1)
    L = LaurentPoly.constant(ONE) - D1 * var("D", 2, -1)
    assert lowering_apply(L, (1, 1), 1) == g((1, 1), 1) - g((2,), 1)
    assert lowering_apply(D1, (0, 1), 2).is_zero()


def test_gs_examples():
    assert macdonald_gs((1,), 2) == qn(1, 2)
    assert macdonald_gs((1, 1), 1) == g((1, 1), 1) - g((2,), 1)
    # hand-done 1x1 solve: Q_21 = g_21 + d g_3 with <Q_21, g_3> = 0
    beta = 2
    d = -scalar(g((2, 1), beta), g((3,), beta), beta) / scalar(g((3,), beta), g((3,), beta), beta)
    assert macdonald_gs((2, 1), beta) == g((2, 1), beta) + g((3,), beta).scale(d)


def test_norm_examples():
    for beta in (1, 2, 3):
        assert norm_closed((1,), beta) == (ONE - qb(beta)) / (ONE - Q1)


def test_schur_examples():
    h = lambda n: qn(n, 1)  # noqa: E731
    assert schur_jt((3,)) == h(3)
    assert schur_jt((1, 1)) == h(1) * h(1) - h(2)
    assert schur_jt((2, 1)) == h(2) * h(1) - h(3)


def test_limit_examples():
    for beta in (1, 2, 3):
        assert limit_sym(qn(1, beta)) == p(1).scale(RatFuncQ(beta))
        assert limit_sym(qn(2, beta)) == p(1, 1).scale(frac(beta * beta, 2)) + p(2).scale(frac(beta, 2))
        assert limit_sym(macdonald_gs((1, 1), beta)) == jack_gs((1, 1), beta)


@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("beta", [1, 2])
def test_orthogonality_and_norms(n, beta):
    lams = list(partitions(n))
    Qs = {lam: macdonald_gs(lam, beta) for lam in lams}
    for i, a in enumerate(lams):
        assert scalar(Qs[a], Qs[a], beta) == norm_closed(a, beta)
        for b in lams[i + 1:]:
            assert scalar(Qs[a], Qs[b], beta) == ZERO


@pytest.mark.parametrize("n", range(1, 6))
def test_triangularity(n):
    for lam in partitions(n):
        coeffs = to_g_basis(macdonald_gs(lam, 2), 2)
        assert coeffs[lam] == ONE
        for mu in coeffs:
            assert dominance_cmp(mu, lam) in (Dominance.GREATER, Dominance.EQUAL)


@pytest.mark.parametrize("n", range(1, 6))
def test_schur_degeneration(n):
    for lam in partitions(n):
        assert macdonald_gs(lam, 1) == schur_jt(lam)


coef = st.integers(-3, 3).map(RatFuncQ)
small_parts = st.sampled_from([lam for n in range(0, 4) for lam in partitions(n)])
sym = st.dictionaries(small_parts, coef, max_size=3).map(SymFunc)


@given(sym, sym, sym, st.integers(1, 2))
def test_adjointness(f, u, v, beta):
    assert scalar(adjoint_apply(f, u, beta), v, beta) == scalar(u, f * v, beta)


def _qm(mu, beta):
    return macdonald_gs(mu, beta) if mu else SymFunc.one()


@pytest.mark.parametrize("R", [(k,) * s for k in range(1, 7) for s in range(1, 7) if k * s <= 6])
@pytest.mark.parametrize("beta", [1, 2])
def test_complement_pairing(R, beta):
    k, s = R[0], len(R)
    QR = macdonald_gs(R, beta)
    N = sum(R)
    for m in range(N + 1):
        for mu in partitions(m):
            for nu in partitions(N - m):
                val = scalar(_qm(mu, beta) * _qm(nu, beta), QR, beta)
                fits = not mu or (mu[0] <= k and len(mu) <= s)
                expected = fits and tuple(nu) == complement(k, s, mu)
                assert bool(val) == expected, (R, mu, nu)


def test_json_round_trip():
    f = macdonald_gs((2, 1), 2)
    assert SymFunc.from_json(f.to_json(2)) == f
    assert f.grade == 3
    assert qpoch_rf(1, 0) == ONE
