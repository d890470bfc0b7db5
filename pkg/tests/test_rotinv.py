import math

import numpy as np
import pytest

from magsteklov import catenoid_slab as slab
from magsteklov.cylinder import Family, branch_value
from magsteklov.errors import DegenerateMode, FluxOutOfRange, GridTooCoarse, InvalidAnnulus
from magsteklov.maximizer import m_star
from magsteklov.numerics import Bracket, solve_bracketed
from magsteklov.rotinv import (
    RotInvAnnulus,
    branch_pair,
    crossing_length,
    discriminant,
    dtn_mode_eigenvalues,
    dtn_mode_matrix,
    fd_mode_eigenvalues,
    max_second_normalized,
    normalized_branch_pair,
    sorted_branches,
)


@pytest.mark.parametrize("nu", [0.0, 0.2, 0.5])
@pytest.mark.parametrize("M", [0.4, 1.3])
def test_reduces_to_cylinder(nu, M):
    ann = RotInvAnnulus.make(1.0, 2 * M, nu)
    for k in range(-3, 4):
        s1, s2 = branch_pair(ann, k)
        assert s1 == pytest.approx(branch_value(M, nu, k, Family.TANH).value, rel=1e-12, abs=1e-300)
        assert s2 == pytest.approx(branch_value(M, nu, k, Family.COTH).value, rel=1e-12)
        n1, n2 = normalized_branch_pair(ann, k)
        assert n2 == pytest.approx(4 * math.pi * s2, rel=1e-14)


def test_unit_example():
    s1, s2 = branch_pair(RotInvAnnulus.make(1, 2, 0), 1)
    assert s1 == pytest.approx(math.tanh(1.0), rel=1e-14)
    assert s2 == pytest.approx(1 / math.tanh(1.0), rel=1e-14)


def test_discriminant_nonnegative():
    assert discriminant(RotInvAnnulus.make(4, 0.7, 0.3), 0) >= 0


def test_stable_discriminant_matches_printed_form():
    ann = RotInvAnnulus.make(3.0, 0.8, 0.3)
    for k in range(-2, 3):
        beta = ann.beta(k)
        s1, s2 = branch_pair(ann, k)
        # roots of s^2 - beta q coth s + beta^2/A = 0 with the printed discriminant
        q = 1 / 3.0 + 1.0
        D = discriminant(ann, k)
        assert s1 + s2 == pytest.approx(beta * q / math.tanh(beta * 0.8), rel=1e-13)
        assert s2 - s1 == pytest.approx(beta * math.sqrt(D), rel=1e-12)


@pytest.mark.parametrize("A", [0.5, 1.0, 3.0])
def test_large_length_limits(A):
    nu = 0.3
    lo = normalized_branch_pair(RotInvAnnulus.make(A, 150.0, nu), 0)[0]
    expect = 2 * math.pi * (A + 1) / A * nu if A >= 1 else 2 * math.pi * (A + 1) * nu
    assert lo == pytest.approx(expect, rel=1e-9)


@pytest.mark.parametrize("nu", [0.1, 0.25, 0.4])
def test_crossing_unit_ratio(nu):
    assert crossing_length(1.0, nu) == pytest.approx(2 * m_star(nu), abs=1e-10)


def test_crossing_monotone_branches():
    Zs = np.linspace(0.1, 5, 40)
    s11 = [normalized_branch_pair(RotInvAnnulus.make(2.0, Z, 0.3), 1)[0] for Z in Zs]
    s20 = [normalized_branch_pair(RotInvAnnulus.make(2.0, Z, 0.3), 0)[1] for Z in Zs]
    assert np.all(np.diff(s11) > 0) and np.all(np.diff(s20) < 0)


def test_crossing_matches_slab():
    # find a with slab ratio 2; the slab then realises the crossing annulus
    nu = 0.3
    f = lambda a: slab.slab_data(a, nu).ratio - 2.0
    a = solve_bracketed(f, Bracket.of(f, -5.0, 0.0))
    d = slab.slab_data(a, nu)
    Z, sig = max_second_normalized(2.0, nu)
    assert d.height == pytest.approx(Z, abs=1e-8)
    assert d.g == pytest.approx(sig, rel=1e-8)


def test_crossing_rejects_half_flux():
    with pytest.raises(FluxOutOfRange):
        crossing_length(2.0, 0.5)


def test_crossing_integer_flux_classical():
    Z = crossing_length(1.0, 0.0)
    M0 = m_star(1e-9)
    assert Z == pytest.approx(2 * M0, rel=1e-6)


def test_dtn_structure():
    K, B = dtn_mode_matrix(RotInvAnnulus.make(1.0, 1.7, 0.2), 2)
    assert np.allclose(K, K.T) and np.all(np.diag(K) > 0)
    assert dtn_mode_eigenvalues(RotInvAnnulus.make(1, 2, 0), 1) == pytest.approx((math.tanh(1), 1 / math.tanh(1)))
    ann = RotInvAnnulus.make(3.0, 1.0, 0.25)
    assert dtn_mode_eigenvalues(ann, 0) == pytest.approx(branch_pair(ann, 0), rel=1e-12)
    with pytest.raises(DegenerateMode):
        dtn_mode_matrix(RotInvAnnulus.make(1.0, 1.0, 0.0), 0)


def test_fd_oracle():
    ann = RotInvAnnulus.make(1, 2, 0)
    assert fd_mode_eigenvalues(ann, 1, 2000, richardson=True)[0] == pytest.approx(math.tanh(1), abs=1e-6)
    exact = branch_pair(ann, 1)[0]
    e1 = abs(fd_mode_eigenvalues(ann, 1, 100)[0] - exact)
    e2 = abs(fd_mode_eigenvalues(ann, 1, 200)[0] - exact)
    assert 3.5 < e1 / e2 < 4.5
    with pytest.raises(GridTooCoarse):
        fd_mode_eigenvalues(ann, 1, 8)


@pytest.mark.parametrize("A", [1.0, 2.0, 4.0])
@pytest.mark.parametrize("Z", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("nu", [0.1, 0.25, 0.4])
def test_fd_vs_dtn(A, Z, nu):
    ann = RotInvAnnulus.make(A, Z, nu)
    for k in (-1, 0, 1, 2):
        fd = fd_mode_eigenvalues(ann, k, 4000)
        dtn = dtn_mode_eigenvalues(ann, k)
        assert fd == pytest.approx(dtn, rel=1e-5)


def test_ordering_and_mode_growth():
    for A in (0.3, 1.0, 5.0):
        ann = RotInvAnnulus.make(A, 1.2, 0.3)
        ks = sorted(range(-6, 7), key=lambda k: abs(k - 0.3))
        pairs = [branch_pair(ann, k) for k in ks]
        assert all(p[0] < p[1] for p in pairs)
        assert all(a[0] < b[0] and a[1] < b[1] for a, b in zip(pairs, pairs[1:]))


def test_sorted_branches():
    ann = RotInvAnnulus.make(2.0, 1.0, 0.3)
    rows = sorted_branches(ann, 10)
    brute = sorted(s for k in range(-40, 41) for s in branch_pair(ann, k))
    assert [r[2] for r in rows] == pytest.approx(brute[:10], rel=1e-14)


def test_invalid():
    with pytest.raises(InvalidAnnulus):
        RotInvAnnulus.make(-1.0, 1.0, 0.2)
    with pytest.raises(InvalidAnnulus):
        RotInvAnnulus.make(1.0, 0.0, 0.2)
