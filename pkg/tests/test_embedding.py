import math

import numpy as np
import pytest

from magsteklov import embedding as emb
from magsteklov.errors import FluxOutOfRange, OutOfRange
from magsteklov.maximizer import m_star, sigma2_star

NUS = (0.1, 0.25, 0.4)


@pytest.mark.parametrize("nu", NUS)
def test_boundary_on_sphere(nu):
    M = m_star(nu)
    for t in (-M, M):
        assert abs(emb.boundary_norm_squared(nu, t) - 1.0) <= 1e-10


def test_normalization_constant_reevaluated():
    nu = 0.25
    M = m_star(nu)
    a = (math.cosh(0.75 * M) ** 2 / 0.75**2 + math.sinh(0.25 * M) ** 2 / 0.25**2) ** -0.5
    assert emb.normalization_constant(nu) == pytest.approx(a, rel=1e-15)
    assert a > 0


@pytest.mark.parametrize("nu", NUS)
def test_conformal_factor(nu):
    M = m_star(nu)
    a2 = emb.normalization_constant(nu) ** 2
    assert emb.conformal_factor(nu, 0.0) == pytest.approx(a2, rel=1e-15)
    for t in np.linspace(-M, M, 20):
        t = float(t)
        assert abs(emb.conformal_factor(nu, t) - emb.conformal_factor_alt(nu, t)) <= 1e-12
        assert emb.conformal_factor(nu, t) == emb.conformal_factor(nu, -t)
        g11, g22, g12 = emb.metric_components(nu, t)
        assert g12 == 0.0 and g11 > 0 and abs(g11 - g22) <= 1e-12


@pytest.mark.parametrize("nu", NUS)
def test_free_boundary(nu):
    M = m_star(nu)
    a2 = emb.normalization_constant(nu) ** 2
    for t in (-M, M):
        assert abs(emb.free_boundary_inner_product(nu, t)) <= 1e-10
    v0 = emb.free_boundary_inner_product(nu, 0.0)
    assert v0 == pytest.approx(-a2 / (1 - nu), rel=1e-14)
    assert abs(v0) > 0.01 * a2
    assert emb.free_boundary_inner_product(nu, 0.4) == emb.free_boundary_inner_product(nu, -0.4)


@pytest.mark.parametrize("nu", NUS)
def test_robin_equality(nu):
    r1, r2 = emb.robin_ratios(nu)
    assert abs(r1 - r2) <= 1e-10
    assert 4 * math.pi * r1 == pytest.approx(sigma2_star(nu).sigma2_star_normalized, rel=1e-12)


def test_errors():
    with pytest.raises(OutOfRange):
        emb.conformal_factor(0.25, 10.0)
    with pytest.raises(FluxOutOfRange):
        emb.normalization_constant(0.5)


def test_sampler():
    d = emb.embedding_data(1.25, 11)
    assert d.flux.raw == 1.25 and d.flux.reduced == 0.25
    assert d.samples.shape == (11, 5)
    assert d.samples[0, 0] == pytest.approx(-d.M_star)
    u1, u2 = d.samples[-1, 1], d.samples[-1, 2]
    assert u1**2 + u2**2 == pytest.approx(1.0, abs=1e-12)
