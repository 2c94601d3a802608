from fractions import Fraction

import pytest

from rectmac.exactq import ONE, RatFuncQ, qpoch_rf
from rectmac.macroutes import (
    C_rho,
    NormalizationError,
    Route,
    RouteResult,
    comb_prefactor,
    jack_hyperdet,
    mac_filtration,
    mac_gram_schmidt,
    mac_rect_comb,
    mac_rect_lowering,
    mac_rect_vertex,
    rectnorm_closed,
    route_for,
)
from rectmac.symfunc import (
    SymFunc,
    g,
    jack_gs,
    jack_qn,
    limit_sym,
    macdonald_gs,
    norm_closed,
    qn,
    scalar,
    schur_jt,
)
from rectmac.vertexop import eps_q

RECTS = [(k, s) for k in range(1, 7) for s in range(1, 7) if k * s <= 6]


def test_lowering_examples():
    for k in (1, 2, 3):
        r = mac_rect_lowering(k, 1, 0, 2)
        assert r.value == qn(k, 2) and r.scalars["C_rho"] == ONE
    r = mac_rect_lowering(1, 2, 0, 1)
    assert r.value == g((1, 1), 1) - g((2,), 1)
    assert r.scalars["C_rho"] == ONE + RatFuncQ.q_power(1)


@pytest.mark.parametrize("s", [1, 2, 3])
@pytest.mark.parametrize("beta", [1, 2, 3])
def test_rectangle_constant(s, beta):
    assert C_rho(2, s, 0, beta) == qpoch_rf(1, s * beta) / qpoch_rf(1, beta) ** s


@pytest.mark.parametrize("s", [1, 2, 3, 4])
@pytest.mark.parametrize("beta", [1, 2, 3])
def test_comb_prefactor_is_inverse_eps_times_C(s, beta):
    assert comb_prefactor(s, beta) == (eps_q(beta, s) * C_rho(1, s, 0, beta)).inverse()


def test_comb_examples():
    assert mac_rect_comb(3, 1, 2).value == qn(3, 2)
    assert mac_rect_comb(1, 2, 1).value == macdonald_gs((1, 1), 1)
    assert mac_rect_comb(2, 2, 2).value == macdonald_gs((2, 2), 2)


@pytest.mark.parametrize("k,s", RECTS)
@pytest.mark.parametrize("beta", [1, 2])
def test_rectangle_routes_agree(k, s, beta):
    want = macdonald_gs((k,) * s, beta)
    assert mac_rect_lowering(k, s, 0, beta).value == want
    assert mac_rect_comb(k, s, beta).value == want
    assert mac_rect_vertex(k, s, 0, beta).value == want


@pytest.mark.parametrize("k,s,t", [(1, 1, 1), (1, 1, 2), (2, 1, 2)])
@pytest.mark.parametrize("beta", [1, 2])
def test_almost_rectangles(k, s, t, beta):
    rho = (k + 1,) * t + (k,) * s
    want = macdonald_gs(rho, beta)
    assert mac_rect_lowering(k, s, t, beta).value == want
    assert mac_rect_vertex(k, s, t, beta).value == want
    n = rectnorm_closed(k, s, t, beta)
    assert n == norm_closed(rho, beta) == scalar(want, want, beta)


@pytest.mark.parametrize("k,s,t", [(k, s, t) for k in range(1, 4) for s in range(1, 4) for t in range(0, 3) if (k + 1) * t + k * s <= 6])
def test_rectangle_norm_formula(k, s, t):
    rho = (k + 1,) * t + (k,) * s
    for beta in (1, 2):
        assert rectnorm_closed(k, s, t, beta) == norm_closed(rho, beta)


def test_filtration_examples():
    r = mac_filtration((2, 2), 2)
    assert r.scalars["c_lambda"] == ONE and r.value == macdonald_gs((2, 2), 2)
    assert mac_filtration((2, 1), 1).value == schur_jt((2, 1))
    r = mac_filtration((3, 3, 1), 2)
    assert r.value == macdonald_gs((3, 3, 1), 2)


@pytest.mark.parametrize("lam", [(2, 1), (3, 1), (2, 2, 1), (3, 2), (3, 3, 1)])
@pytest.mark.parametrize("beta", [1, 2])
def test_filtration_matches_gs(lam, beta):
    r = mac_filtration(lam, beta)
    assert r.scalars["c_lambda"]
    assert r.value == macdonald_gs(lam, beta)
    assert mac_filtration(lam, beta, rect_route="gram_schmidt").value == r.value


def test_filtration_scalar_values():
    # c_lambda is 1 at beta = 1 and a genuine q-ratio otherwise
    assert mac_filtration((2, 1), 1).scalars["c_lambda"] == ONE
    c = mac_filtration((2, 1), 2).scalars["c_lambda"]
    assert not c.is_constant()


def test_normalization_error_exists():
    assert issubclass(NormalizationError, ArithmeticError)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_hyperdet_two_rows(k):
    want = jack_qn(k, 1) * jack_qn(k, 1) - jack_qn(k + 1, 1) * jack_qn(k - 1, 1)
    assert jack_hyperdet(k, 2, 0, 1).value == want


@pytest.mark.parametrize(
    "rho,beta", [((1, 1), 1), ((2, 2), 1), ((2, 1), 1), ((2, 2, 2), 1), ((2, 1, 1), 1), ((1, 1), 2), ((2, 2), 2)]
)
def test_hyperdet_matches_limits(rho, beta):
    from rectmac.partitions import almost_rectangle_params

    k, s, t = almost_rectangle_params(rho)
    hd = jack_hyperdet(k, s, t, beta).value
    assert hd == limit_sym(mac_rect_lowering(k, s, t, beta).value)
    assert hd == jack_gs(rho, beta)
    if beta == 1:
        assert hd == limit_sym(schur_jt(rho))


def test_route_result_json():
    r = mac_rect_vertex(1, 1, 1, 2)
    back = RouteResult.from_json(r.to_json())
    assert back.value == r.value and back.scalars == r.scalars and back.route is Route.vertex


def test_route_dispatch():
    assert route_for("gs", (2, 1), 1).route is Route.gram_schmidt
    assert route_for("comb", (2, 2), 1).value == macdonald_gs((2, 2), 1)
    with pytest.raises(ValueError):
        route_for("comb", (2, 1), 1)
    with pytest.raises(ValueError):
        route_for("lowering", (3, 1), 1)
    with pytest.raises(ValueError):
        route_for("nope", (1,), 1)


def test_wrong_grade_rejected():
    with pytest.raises(ValueError):
        RouteResult((2,), 1, Route.gram_schmidt, SymFunc.p((1,)))
