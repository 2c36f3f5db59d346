"""Order-4 bivariate jet arithmetic."""
import math

import numpy as np
import pytest

import focalnet.jet as jt
from focalnet.errors import JetDomainError, JetOrderError


def _vars(u, v):
    return jt.jet_variables(u, v)


def test_polynomial_jets_are_exact():
    u, v = _vars(0.7, -0.4)
    f = 3.0 * u * u * v - 2.0 * u + v * v * v * v + 5.0
    assert f.value == pytest.approx(3 * 0.7**2 * -0.4 - 2 * 0.7 + 0.4**4 + 5,
                                    abs=1e-14)
    assert f.extract(2, 1) == pytest.approx(6.0, abs=1e-13)
    assert f.extract(1, 0) == pytest.approx(6 * 0.7 * -0.4 - 2, abs=1e-13)
    assert f.extract(0, 4) == pytest.approx(24.0, abs=1e-12)
    assert f.extract(3, 0) == 0.0
    assert f.extract(2, 2) == 0.0


def test_quotient_and_power_match_closed_forms():
    u, v = _vars(0.3, 0.9)
    f = (1.0 + u * u) ** 1.5 / (2.0 + v)
    # d/du: 3u sqrt(1+u^2) / (2+v)
    expect_du = 3 * 0.3 * math.sqrt(1 + 0.09) / 2.9
    assert f.extract(1, 0) == pytest.approx(expect_du, rel=1e-14)
    # d/dv: -(1+u^2)^1.5 / (2+v)^2
    expect_dv = -(1.09 ** 1.5) / 2.9**2
    assert f.extract(0, 1) == pytest.approx(expect_dv, rel=1e-14)


def test_transcendental_chain():
    u, v = _vars(0.5, 0.2)
    f = jt.exp(jt.sin(u) * jt.cos(v)) + jt.ln(2.0 + jt.sqrt(1.0 + u * v))
    g = math.exp(math.sin(0.5) * math.cos(0.2)) \
        + math.log(2.0 + math.sqrt(1.1))
    assert f.value == pytest.approx(g, rel=1e-15)
    # d/du of exp(sin u cos v) = cos u cos v exp(...)
    term1 = math.cos(0.5) * math.cos(0.2) * math.exp(
        math.sin(0.5) * math.cos(0.2))
    term2 = 0.2 / (2 * math.sqrt(1.1) * (2.0 + math.sqrt(1.1)))
    assert f.extract(1, 0) == pytest.approx(term1 + term2, rel=1e-13)


def test_mixed_partials_of_product_rule():
    u, v = _vars(1.1, -0.6)
    f = jt.sinh(u / 2.0) * jt.cosh(v / 3.0)
    got = f.extract(2, 2)
    expect = (math.sinh(0.55) / 4.0) * (math.cosh(-0.2) / 9.0)
    assert got == pytest.approx(expect, rel=1e-13)


def test_tan_vs_sin_over_cos():
    u, v = _vars(0.4, 0.0)
    a, b = jt.tan(u + v), jt.sin(u + v) / jt.cos(u + v)
    assert np.allclose(a.c, b.c, rtol=1e-14, atol=1e-16)


def test_derivative_shift_consistent_with_extract():
    u, v = _vars(0.25, 0.75)
    f = jt.sin(u * v) + u ** 3
    fu = f.du()
    assert fu.valid_order == f.valid_order - 1
    for i, j in ((0, 0), (1, 0), (0, 2), (2, 1)):
        assert fu.extract(i, j) == pytest.approx(f.extract(i + 1, j),
                                                 rel=1e-13, abs=1e-13)
    fv = f.dv()
    for i, j in ((0, 0), (1, 1), (3, 0)):
        assert fv.extract(i, j) == pytest.approx(f.extract(i, j + 1),
                                                 rel=1e-13, abs=1e-13)


def test_truncation_order_tracking():
    u, v = _vars(0.1, 0.2)
    f = jt.sin(u) + v
    g = f.du().dv()          # two derivatives: order 2 remains
    assert g.valid_order == 2
    g.extract(1, 1)          # still valid
    with pytest.raises(JetOrderError):
        g.extract(2, 1)
    with pytest.raises(JetOrderError):
        f.extract(5, 0)


def test_domain_errors():
    u, _ = _vars(0.0, 0.0)
    with pytest.raises(JetDomainError):
        jt.ln(u)                      # ln(0)
    with pytest.raises(JetDomainError):
        jt.sqrt(u - 1.0)              # sqrt(-1)
    with pytest.raises(JetDomainError):
        1.0 / u                       # 1/0
    with pytest.raises(JetDomainError):
        (u - 2.0) ** 0.5


def test_scalar_interop():
    u, v = _vars(2.0, 3.0)
    f = 2.0 + u
    g = u + 2.0
    assert np.allclose(f.c, g.c)
    h = 3.0 - v
    assert h.value == 0.0
    assert h.extract(0, 1) == -1.0
    r = 5.0 / (1.0 + u)
    assert r.value == pytest.approx(5.0 / 3.0, rel=1e-15)
    p = 2.0 ** u
    assert p.extract(1, 0) == pytest.approx(4.0 * math.log(2.0), rel=1e-14)


def test_integer_power_negative_base_allowed():
    u, _ = _vars(-1.5, 0.0)
    f = u ** 3
    assert f.value == pytest.approx(-3.375, rel=1e-15)
    assert f.extract(1, 0) == pytest.approx(3 * 1.5**2, rel=1e-15)
