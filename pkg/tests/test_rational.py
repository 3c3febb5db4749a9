import json
import math

import mpmath
import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from doubledecomp.elliptic import AmbientLattice, Modulus, weierstrass_p
from doubledecomp.errors import DegreeCollapse, EqualSublattices, InvalidPath, PoleProximity
from doubledecomp.lattice import (
    LatticePath,
    SublatticeBasis,
    build_table,
    hermite_canonical,
    iter_paths,
    path_deform,
    prime_filtration,
)
from doubledecomp.rational import (
    MAP_SETTINGS,
    MobiusMap,
    RationalFunction,
    compose,
    double_decomposition,
    nesting_check,
    recover_map,
    recover_map_report,
    sample_points,
    validation_residual,
    verify_path_decomposition,
    zolotarev_as_rational,
    zolotarev_eval,
)

SQUARE = AmbientLattice.from_tau(1j)
RECT = AmbientLattice.from_tau(1.5j)
GENERIC = AmbientLattice(1.0, 0.3 + 1.2j)


def coset_sum(u, lat, sub):
    """``sum_c p(u + c | L_sub) - sum_{c != 0} p(c | L_sub)`` over ``L / L_sub``."""
    sub = hermite_canonical(sub)
    (a, b), (_, d) = sub.m
    w1, w2 = lat.generators()
    reps = [i * w1 + j * w2 for i in range(a) for j in range(d)]
    total = sum(weierstrass_p(u + c, lat, sub) for c in reps)
    const = sum(weierstrass_p(c, lat, sub) for c in reps[1:])
    return total - const


def mp_zolotarev(x, n, tau):
    """``sn(K_tau F(asin x | m_{n tau}) / K_{n tau} | m_tau)`` in mpmath."""
    def param(t):
        q = mpmath.exp(1j * mpmath.pi * t)
        return (mpmath.jtheta(2, 0, q) / mpmath.jtheta(3, 0, q)) ** 4
    m1, mn = param(tau), param(n * tau)
    u = mpmath.ellipf(mpmath.asin(x), mn) / mpmath.ellipk(mn)
    return complex(mpmath.ellipfun("sn", u * mpmath.ellipk(m1), m=m1))


coeff = st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False)


class TestRationalFunction:
    def test_eval_and_degree(self):
        f = RationalFunction([1, 0, 2], [3, 1])
        assert f.degree == 2
        assert abs(f(2.0) - 9 / 5) < 1e-15

    def test_zero_denominator_rejected(self):
        with pytest.raises(ValueError):
            RationalFunction([1], [0, 0])

    def test_pole_detected(self):
        with pytest.raises(PoleProximity):
            RationalFunction([1], [-2, 1])(2.0)

    def test_normalized_scale(self):
        f = RationalFunction([2, 4], [8]).normalized()
        assert max(abs(c) for c in f.num + f.den) == 1
        assert abs(f(3.0) - 14 / 8) < 1e-15

    def test_json_roundtrip(self):
        f = RationalFunction([1 + 2j, -0.5], [3, 1j])
        assert RationalFunction.from_json_obj(json.loads(json.dumps(f.to_json_obj()))) == f


class TestMobius:
    def test_three_points(self):
        src, dst = (1 + 1j, -2, 3j), (0, 1, -1)
        m = MobiusMap.from_points(src, dst)
        for s, d in zip(src, dst):
            assert abs(m(s) - d) < 1e-14

    def test_infinity_handling(self):
        m = MobiusMap.from_points((2, 5, math.inf), (-1, 0, 1))
        assert abs(m(2) + 1) < 1e-15 and abs(m(5)) < 1e-15
        assert abs(m(1e12) - 1) < 1e-9

    @given(coeff, coeff)
    def test_compose_and_inverse(self, x, shift):
        f = MobiusMap(1, shift, 2, 3)
        g = MobiusMap(1j, 1, 1, 0.5)
        assume(abs(g.c * x + g.d) > 1e-3 and abs(f.c * g(x) + f.d) > 1e-3)
        assert abs((f @ g)(x) - f(g(x))) < 1e-9 * max(1, abs(f(g(x))))
        assert abs(g.inverse()(g(x)) - x) < 1e-9 * max(1, abs(x))
        assert abs(g.as_rational()(x) - g(x)) < 1e-12 * max(1, abs(g(x)))


class TestCompose:
    @given(st.lists(coeff, min_size=2, max_size=4), st.lists(coeff, min_size=1, max_size=3),
           st.lists(coeff, min_size=2, max_size=3), coeff)
    @settings(max_examples=60, deadline=None)
    def test_matches_pointwise(self, pn, pd, inum, x):
        outer = RationalFunction(pn, [1, *pd])
        inner = RationalFunction(inum, [1, 0.5])
        assume(outer.degree >= 1 and inner.degree >= 1)
        assume(abs(outer.num[-1]) > 0.1 and abs(inner.num[-1]) > 0.1)
        assume(abs(1 + 0.5 * x) > 0.1)
        try:
            y = inner(x)
            want = outer(y)
            got = compose(outer, inner)(x)
        except (PoleProximity, DegreeCollapse):
            assume(False)
        assume(abs(want) < 1e6)
        assert abs(got - want) < 1e-7 * max(1, abs(want))

    def test_identity_is_neutral(self):
        f = RationalFunction([1, 2, 3], [4, 5]).normalized()
        g = compose(f, RationalFunction.identity())
        assert np.allclose(g.num, f.num) and np.allclose(g.den, f.den)

    def test_common_factor_rejected(self):
        bad = RationalFunction(np.convolve([-1, 1], [-2, 1]), np.convolve([-1, 1], [3, 1]))
        with pytest.raises(DegreeCollapse):
            compose(bad, RationalFunction([0, 1, 1], [1]))


class TestRecovery:
    def test_coset_oracle_matches_kernel(self):
        u = np.array([0.31 + 0.12j, 0.77 + 0.53j, 0.2 + 0.9j])
        for sub in ([[1, 0], [0, 2]], [[2, 1], [0, 1]], [[3, 0], [0, 2]]):
            assert np.max(np.abs(coset_sum(u, SQUARE, sub) - weierstrass_p(u, SQUARE))) < 1e-9

    def test_index_two_square(self):
        f = recover_map(SQUARE, [[1, 0], [0, 2]])
        assert f.degree == 2
        assert validation_residual(f, SQUARE, [[1, 0], [0, 2]], count=20) < 1e-8

    def test_identity_sub(self):
        assert recover_map(SQUARE, SublatticeBasis.identity()) == RationalFunction.identity()

    @pytest.mark.parametrize("lat", [SQUARE, RECT, GENERIC])
    @pytest.mark.parametrize("sub", [[[2, 0], [0, 1]], [[2, 1], [0, 1]], [[3, 1], [0, 1]],
                                     [[2, 0], [0, 2]], [[2, 0], [0, 3]]])
    def test_agrees_with_coset_sum(self, lat, sub):
        f = recover_map(lat, sub)
        assert f.degree == abs(SublatticeBasis(sub).det)
        u = sample_points(lat, None, 15, np.random.default_rng(3), MAP_SETTINGS, avoid=[(lat, sub)])
        want = coset_sum(u, lat, sub)
        got = f(weierstrass_p(u, lat, sub))
        assert np.max(np.abs(got - want) / np.maximum(1, np.abs(want))) < 1e-8

    def test_index_multiplies(self):
        f = recover_map(SQUARE, [[2, 0], [0, 3]])
        assert f.degree == 6

    def test_reproduces_fitted_sample(self):
        rep = recover_map_report(SQUARE, [[1, 0], [0, 2]])
        u = 0.37 + 0.21j
        x = weierstrass_p(u, SQUARE, [[1, 0], [0, 2]])
        assert abs(rep.function(x) - weierstrass_p(u, SQUARE)) < 1e-9 * max(1, abs(x))

    def test_deterministic(self):
        a = recover_map(GENERIC, [[3, 2], [0, 1]])
        b = recover_map(GENERIC, [[3, 2], [0, 1]])
        assert a == b

    def test_report_is_json_ready(self):
        rep = recover_map_report(RECT, [[2, 1], [0, 1]])
        obj = json.loads(json.dumps(rep.to_json_obj()))
        assert obj["degree"] == 2 and obj["samples"] == 16


class TestDoubleDecomposition:
    def test_prime_pair(self):
        dd = double_decomposition(SQUARE, [[1, 0], [0, 2]], [[3, 0], [0, 1]])
        assert dd.ok and dd.residual < 1e-8
        assert dd.intersection == SublatticeBasis([[3, 0], [0, 2]])
        assert (dd.outer_bullet.degree, dd.inner_bullet.degree) == (2, 3)
        assert (dd.outer_circ.degree, dd.inner_circ.degree) == (3, 2)

    def test_composite_pair(self):
        dd = double_decomposition(SQUARE, [[1, 0], [0, 4]], [[2, 0], [0, 1]])
        assert dd.residual < 1e-8
        assert dd.outer_bullet.degree * dd.inner_bullet.degree == 8
        assert dd.outer_circ.degree * dd.inner_circ.degree == 8
        assert dd.full.function.degree == 8

    def test_symbolic_branches_agree(self):
        dd = double_decomposition(GENERIC, [[2, 0], [0, 1]], [[2, 1], [0, 1]])
        b = compose(dd.outer_bullet, dd.inner_bullet)
        c = compose(dd.outer_circ, dd.inner_circ)
        u = sample_points(GENERIC, None, 10, np.random.default_rng(5), MAP_SETTINGS,
                          avoid=[(GENERIC, dd.intersection)])
        x = weierstrass_p(u, GENERIC, dd.intersection)
        assert np.max(np.abs(b(x) - c(x)) / np.maximum(1, np.abs(c(x)))) < 1e-8

    def test_equal_bases_rejected(self):
        with pytest.raises(EqualSublattices):
            double_decomposition(SQUARE, [[1, 0], [0, 2]], [[1, 0], [0, 2]])

    def test_json_payload(self):
        dd = double_decomposition(SQUARE, [[2, 0], [0, 1]], [[2, 1], [0, 1]])
        obj = json.loads(json.dumps(dd.to_json_obj()))
        assert obj["samples"] == 30 and obj["tolerance"] == MAP_SETTINGS.identity_tolerance
        assert obj["degrees"]["full"] == 4


class TestZolotarev:
    @pytest.mark.parametrize("tau", [1j, 1.5j, 0.7j])
    def test_first_is_identity(self, tau):
        x = np.linspace(-1, 1, 30)
        assert np.max(np.abs(zolotarev_eval(x, 1, Modulus(tau)) - x)) < 1e-11

    def test_fixed_points(self):
        got = zolotarev_eval(np.array([0, 1, -1]), 2, Modulus(1j))
        assert np.max(np.abs(got - np.array([0, 1, -1]))) < 1e-14

    @pytest.mark.parametrize("n,tau,x", [(2, 1j, 0.5), (3, 1.5j, 0.3), (4, 0.7j, -0.8),
                                         (2, 1j, 0.2 + 0.4j)])
    def test_against_mpmath(self, n, tau, x):
        assert abs(zolotarev_eval(x, n, Modulus(tau)) - mp_zolotarev(x, n, tau)) < 1e-10

    def test_pinned_value(self):
        z = zolotarev_as_rational(2, Modulus(1j))
        assert abs(z(0.5) - 0.5616935915005572) < 1e-12
        assert abs(zolotarev_eval(0.5, 2, Modulus(1j)) - 0.5616935915005572) < 1e-12

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    @pytest.mark.parametrize("tau", [1j, 1.5j])
    def test_lattice_route(self, n, tau):
        z = zolotarev_as_rational(n, Modulus(tau))
        assert z.core.degree == n
        assert z.residual < z.tolerance
        assert z.as_rational().degree == n

    def test_rational_form_fixes_boundary(self):
        f = zolotarev_as_rational(3, Modulus(1.5j)).as_rational()
        for x in (0, 1, -1):
            assert abs(f(x) - x) < 1e-9

    @pytest.mark.parametrize("tau", [1j, 1.5j, 0.7j])
    def test_nesting(self, tau):
        for m in (1, 2, 3):
            for n in (1, 2, 3):
                assert nesting_check(m, n, Modulus(tau)) < 1e-9

    def test_orders_validated(self):
        with pytest.raises(ValueError):
            zolotarev_eval(0.1, 0, Modulus(1j))
        with pytest.raises(ValueError):
            nesting_check(0, 2, Modulus(1j))


class TestPathDecomposition:
    def table(self):
        return build_table(prime_filtration([[1, 0], [0, 4]]), prime_filtration([[3, 0], [0, 1]]))

    def test_every_path(self):
        t = self.table()
        for p in iter_paths(t.s, t.r):
            assert verify_path_decomposition(t, p, SQUARE) < 1e-8

    def test_deformation_sequence(self):
        t = self.table()
        src, dst = LatticePath.top_left(t.s, t.r), LatticePath.bottom_right(t.s, t.r)
        cur = src
        for mv in path_deform(t, src, dst):
            cur = mv.apply(cur)
            assert verify_path_decomposition(t, cur, GENERIC) < 1e-8
        assert cur == dst

    def test_trivial_table(self):
        one = prime_filtration(SublatticeBasis.identity())
        t = build_table(one, one)
        assert verify_path_decomposition(t, LatticePath(((0, 0),)), SQUARE) < 1e-10

    def test_path_must_fit(self):
        with pytest.raises(InvalidPath):
            verify_path_decomposition(self.table(), LatticePath.top_left(1, 1), SQUARE)
