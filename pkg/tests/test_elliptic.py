import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from doubledecomp.elliptic import (
    DEFAULT_SETTINGS,
    AmbientLattice,
    EvalSettings,
    Modulus,
    complete_elliptic_K,
    jacobi_sn,
    jacobi_sncndn,
    null_thetas,
    rectangle_map,
    rectangle_map_inverse,
    thetas,
    weierstrass_p,
    weierstrass_p_oracle,
)
from doubledecomp.errors import NonConvergent, OutOfDomain, PoleProximity

rng = np.random.default_rng(1234)


def quad_K(k):
    val, _ = integrate.quad(lambda t: 1 / math.sqrt(1 - (k * math.sin(t)) ** 2), 0, math.pi / 2,
                            epsabs=1e-13, epsrel=1e-12)
    return val


class TestSettings:
    @pytest.mark.parametrize("kw", [{"series_tolerance": 0}, {"series_tolerance": 1e-3},
                                    {"max_terms": 4}, {"identity_tolerance": -1}])
    def test_rejects_bad_values(self, kw):
        with pytest.raises(ValueError):
            EvalSettings(**kw)

    def test_replace(self):
        s = DEFAULT_SETTINGS.replace(seed=5)
        assert s.seed == 5 and s.series_tolerance == DEFAULT_SETTINGS.series_tolerance


class TestModulus:
    def test_requires_upper_half_plane(self):
        with pytest.raises(ValueError):
            Modulus(-1j)

    @pytest.mark.parametrize("k", [0.1, 0.5, 1 / math.sqrt(2), 0.9])
    def test_from_k_roundtrip(self, k):
        m = Modulus.from_k(k)
        assert abs(m.k - k) < 1e-13
        assert abs(m.k**2 + m.kprime**2 - 1) < 1e-13

    def test_square_modulus(self):
        assert abs(Modulus(1j).k - 1 / math.sqrt(2)) < 1e-14

    def test_nome_guard(self):
        with pytest.raises(NonConvergent):
            thetas(0.1, 0.005j)


class TestThetas:
    @pytest.mark.parametrize("tau", [1j, 0.4 + 0.9j, 2.5j])
    def test_against_mpmath(self, tau):
        q = mpmath.exp(1j * mpmath.pi * tau)
        for v in (0.3, 0.2 + 0.4j, -1.1 + 0.1j):
            got = thetas(v, tau)
            for n, g in zip((1, 2, 3, 4), got):
                assert abs(complex(g) - complex(mpmath.jtheta(n, v, q))) < 1e-13

    def test_jacobi_identity(self):
        _, t2, t3, t4 = null_thetas(0.3 + 1.1j)
        assert abs(t3**4 - t2**4 - t4**4) < 1e-13


class TestK:
    @pytest.mark.parametrize("k", [0.1, 0.5, 1 / math.sqrt(2), 0.9])
    def test_against_quadrature(self, k):
        assert abs(complete_elliptic_K(Modulus.from_k(k)) - quad_K(k)) < 1e-10

    def test_lemniscatic(self):
        K = complete_elliptic_K(Modulus(1j))
        assert abs(K - math.gamma(0.25) ** 2 / (4 * math.sqrt(math.pi))) < 1e-14

    def test_degenerate_limit(self):
        assert abs(complete_elliptic_K(Modulus(8j)) - math.pi / 2) < 1e-9


class TestJacobi:
    @pytest.mark.parametrize("k", [0.3, 1 / math.sqrt(2), 0.95])
    def test_against_mpmath(self, k):
        m = Modulus.from_k(k)
        for z in (0.4, 1.3 + 0.2j, -2.1 + 0.9j, 0.05j):
            got = jacobi_sncndn(z, m)
            for name, g in zip(("sn", "cn", "dn"), got):
                want = complex(mpmath.ellipfun(name, z, m=k * k))
                assert abs(complex(g) - want) < 1e-11 * max(1, abs(want))

    def test_pythagorean_identities(self):
        m = Modulus(0.2 + 1.3j)
        z = rng.uniform(-2, 2, 40) + 1j * rng.uniform(-1, 1, 40)
        s, c, d = jacobi_sncndn(z, m)
        k2 = m.k**2
        assert np.max(np.abs(s * s + c * c - 1)) < 1e-10
        assert np.max(np.abs(d * d + k2 * s * s - 1)) < 1e-10

    def test_periodicity_and_oddness(self):
        m = Modulus(1j)
        K = complete_elliptic_K(m)
        z = rng.uniform(-1, 1, 50) * K + 1j * rng.uniform(-0.9, 0.9, 50) * K
        s = jacobi_sn(z, m)
        assert np.max(np.abs(jacobi_sn(z + 4 * K, m) - s)) < 1e-10
        assert np.max(np.abs(jacobi_sn(z + 2 * m.tau * K, m) - s)) < 1e-10
        assert np.max(np.abs(jacobi_sn(-z, m) + s)) < 1e-10

    def test_pole_guard(self):
        m = Modulus(1j)
        K = complete_elliptic_K(m)
        with pytest.raises(PoleProximity):
            jacobi_sn(m.tau * K, m)


class TestRectangleMap:
    @pytest.mark.parametrize("tau", [1j, 1.5j, 0.7j])
    def test_corners(self, tau):
        m = Modulus(tau)
        got = rectangle_map(np.array([0, 1, -1]), m)
        assert np.max(np.abs(got - np.array([0, 1, -1]))) < 1e-14

    def test_period_four(self):
        m = Modulus(1j)
        u = rng.uniform(-1, 1, 20) + 1j * rng.uniform(0.05, 0.95, 20)
        assert np.max(np.abs(rectangle_map(u + 4, m) - rectangle_map(u, m))) < 1e-10

    def test_maps_rectangle_into_upper_half_plane(self):
        m = Modulus(1.5j)
        u = rng.uniform(-0.99, 0.99, 100) + 1j * rng.uniform(0.01, 1.49, 100)
        assert np.all(rectangle_map(u, m).imag > 0)

    @pytest.mark.parametrize("tau", [1j, 1.5j, 0.7j, 3j])
    def test_inverse_roundtrip(self, tau):
        m = Modulus(tau)
        x = np.concatenate([
            rng.uniform(-3, 3, 30) + 1j * rng.uniform(0, 3, 30),
            np.linspace(-5, 5, 21),
            [1e-9j, 40j, -1, 1],
        ])
        u = rectangle_map_inverse(x, m)
        assert np.max(np.abs(rectangle_map(u, m) - x) / np.maximum(1, np.abs(x))) < 1e-9
        assert np.all(np.abs(u.real) <= 1 + 1e-12)
        assert np.all((u.imag >= -1e-12) & (u.imag <= abs(tau) + 1e-12))

    @given(st.floats(-0.98, 0.98), st.floats(0.02, 0.98))
    @settings(max_examples=40, deadline=None)
    def test_inverse_recovers_rectangle_point(self, a, b):
        m = Modulus(1j)
        u = complex(a, b)
        assert abs(rectangle_map_inverse(rectangle_map(u, m), m) - u) < 1e-9

    def test_lower_half_plane_rejected(self):
        with pytest.raises(OutOfDomain):
            rectangle_map_inverse(0.3 - 0.2j, Modulus(1j))


LATTICES = [AmbientLattice.from_tau(1j), AmbientLattice.from_tau(1.5j),
            AmbientLattice(1.0, 0.3 + 1.2j), AmbientLattice(4.0, 2j)]


class TestWeierstrass:
    @pytest.mark.parametrize("lat", LATTICES)
    def test_against_direct_sum(self, lat):
        w1, w2 = lat.generators()
        u = rng.uniform(0.1, 0.9, 10)[:, None] * np.array([w1, w2]) @ np.ones(2) / 2
        u = u + 0.13 * w2
        got = weierstrass_p(u, lat)
        want = weierstrass_p_oracle(u, lat)
        assert np.max(np.abs(got - want) / np.maximum(1, np.abs(want))) < 1e-4

    def test_even_and_periodic(self):
        lat = LATTICES[2]
        w1, w2 = lat.generators()
        u = rng.uniform(-1, 1, 30) + 1j * rng.uniform(-1, 1, 30)
        p = weierstrass_p(u, lat)
        for shift in (w1, w2, 3 * w1 - 2 * w2):
            assert np.max(np.abs(weierstrass_p(u + shift, lat) - p) / np.abs(p)) < 1e-10
        assert np.max(np.abs(weierstrass_p(-u, lat) - p) / np.abs(p)) < 1e-12

    @pytest.mark.parametrize("lat", LATTICES)
    def test_half_period_values_sum_to_zero(self, lat):
        w1, w2 = lat.generators()
        e = weierstrass_p(np.array([w1 / 2, w2 / 2, (w1 + w2) / 2]), lat)
        assert abs(e.sum()) < 1e-11 * np.max(np.abs(e))

    def test_laurent_leading_term(self):
        lat = LATTICES[0]
        z = 1e-3 * (1 + 1j)
        assert abs(weierstrass_p(z, lat) * z * z - 1) < 1e-9

    def test_sublattice_coordinates(self):
        lat = LATTICES[1]
        u = 0.3 + 0.4j
        assert abs(weierstrass_p(u, lat, [[2, 0], [1, 3]])
                   - weierstrass_p(u, lat.rebased([[2, 0], [1, 3]]))) < 1e-12

    def test_lattice_point_guard(self):
        lat = LATTICES[0]
        with pytest.raises(PoleProximity):
            weierstrass_p(1 + 1j, lat)

    def test_oracle_requires_radius(self):
        with pytest.raises(ValueError):
            weierstrass_p_oracle(0.3, LATTICES[0], radius=3)
