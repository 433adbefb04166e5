"""Smoke tests for the python surface; the heavy verification lives in the
C++ unit and acceptance suites."""

import math

import pytest

import freechaos as fc


def test_counting():
    assert fc.catalan(4) == 14
    assert fc.catalan(0) == 1
    assert fc.riordan(4) == 3
    assert fc.riordan(1) == 0
    assert fc.riordan_refined(4, 2) == 2
    # arbitrary precision survives the crossing
    assert fc.catalan(40) == 2622127042276492108820
    with pytest.raises(ValueError):
        fc.riordan_refined(20, 1)


def test_enumeration():
    parts = fc.enumerate_nc(3)
    assert len(parts) == 5
    assert parts[0] == [[1], [2], [3]]
    assert parts == sorted(parts)
    assert fc.is_noncrossing(4, [[1, 4], [2, 3]])
    assert not fc.is_noncrossing(4, [[1, 3], [2, 4]])


def test_cumulant_transform():
    mu = fc.moments_from_cumulants([0.0, 1.0, 0.0, 0.0, 0.0, 0.0], 6)
    assert mu[1] == pytest.approx(1.0)
    assert mu[3] == pytest.approx(2.0)
    assert mu[5] == pytest.approx(5.0)

    back = fc.cumulants_from_moments(mu, 6)
    assert back[1] == pytest.approx(1.0)
    assert max(abs(v) for v in back[2:]) < 1e-12

    assert fc.centered_poisson_moment(2.0, 4) == pytest.approx(10.0)
    assert fc.free_poisson_cumulants(2.0, True, 4) == [0.0, 2.0, 2.0, 2.0]


def test_laws():
    assert fc.density("semicircle", 1.0, 0.0) == pytest.approx(1.0 / math.pi)
    assert fc.density("semicircle", 1.0, 2.5) == 0.0
    assert fc.quadrature_moment("semicircle", 1.0, 4) == pytest.approx(2.0, abs=1e-9)
    assert fc.quadrature_moment("centered_free_poisson", 3.0, 4) == pytest.approx(
        21.0, abs=1e-7
    )


def test_kernels_and_chaos():
    p = fc.poisson_kernel(2, 2)
    assert p.order == 2 and p.dim == 2
    assert p.norm_sq() == pytest.approx(2.0)
    assert fc.is_mirror_symmetric(p)

    report = fc.wigner_moment(p, 4)
    assert report["total"] == pytest.approx(10.0)
    assert report["e_sum"] == 0.0
    assert fc.fourth_moment_statistic(p) == pytest.approx(6.0)

    defect = fc.poisson_defect(p)
    assert defect["total"] == 0.0

    # contraction idempotence of the projection kernel
    assert fc.contract(p, p, 1).entries() == p.entries()
    assert fc.inner_product(p, p) == pytest.approx(2.0)


def test_sequences():
    d4 = fc.enumerate_sequences(4, 4, "D")
    assert [s["r"] for s in d4] == [[0, 4, 4], [2, 2, 4], [4, 0, 4]]
    assert fc.enumerate_sequences(2, 6, "E") == []
    assert len(fc.enumerate_sequences(2, 6, "D")) == fc.riordan(6)


def test_oracle_cross_check():
    f = fc.Kernel.from_entries(
        2, 2, [((0, 0), 0.5), ((1, 1), 0.5), ((0, 1), 0.25), ((1, 0), 0.25)]
    )
    assert fc.is_mirror_symmetric(f)
    for m in (2, 3, 4):
        engine = fc.wigner_moment(f, m)["total"]
        oracle = fc.oracle_moment(f, m)
        assert oracle.real == pytest.approx(engine.real, abs=1e-10)

    # first chaos is reachable only through the oracle
    e1 = fc.Kernel.from_entries(1, 1, [((0,), 1.0)])
    assert fc.oracle_moment(e1, 6).real == pytest.approx(5.0)


def test_scan():
    rows = fc.convergence_scan("semicircle4", 1.0, 0, 4, [4, 16])
    assert rows[0]["norm_sq"] == pytest.approx(1.0)
    assert rows[1]["defect_offband_sq"] == pytest.approx(rows[0]["defect_offband_sq"] / 4)

    rows = fc.convergence_scan("poisson", 2, 2, 4, [1, 2])
    assert all(gap < 1e-10 for gap in rows[0]["moment_gaps"])


def test_error_mapping():
    with pytest.raises(ValueError):
        fc.poisson_kernel(3, 2)
    with pytest.raises(ValueError):
        fc.wigner_moment(fc.Kernel.from_entries(2, 2, [((0, 1), 1.0)]), 3)
