"""Exact concordance values, pair/triple statistics, and the rank oracle.

The closed-form inv/invs values for shuffles with reflected pieces were
frozen only after the independent midpoint-grid oracle reproduced them;
the reference-shuffle assertions below keep both routes in the suite.
"""

import numpy as np
import pytest

from taurho import (
    Permutation,
    ab_values,
    flip,
    flip_shuffle,
    identity_shuffle,
    inv_invs,
    inverse,
    inversion_data,
    make_shuffle,
    oracle_tau_rho,
    perturbation_coeffs,
    prototype_shuffle,
    Prototype,
    tau_rho,
)
from taurho.verify import random_shuffle


def test_reference_inv_invs(four_segment):
    inv, invs = inv_invs(four_segment)
    assert inv == pytest.approx(35 / 128, abs=1e-15)
    assert invs == pytest.approx(95 / 1024, abs=1e-15)


def test_reference_tau_rho(four_segment):
    pt = tau_rho(four_segment)
    assert pt.tau == pytest.approx(-3 / 32, abs=1e-15)
    assert pt.rho == pytest.approx(-29 / 256, abs=1e-15)


def test_reference_against_oracle(four_segment):
    exact = tau_rho(four_segment)
    est = oracle_tau_rho(four_segment, grid_m=4000)
    assert abs(est.tau - exact.tau) <= 5e-3
    assert abs(est.rho - exact.rho) <= 5e-3


def test_endpoints():
    ident = tau_rho(identity_shuffle())
    assert (ident.tau, ident.rho) == (1.0, 1.0)
    flipped = tau_rho(flip_shuffle())
    assert (flipped.tau, flipped.rho) == (-1.0, -1.0)
    inv, invs = inv_invs(flip_shuffle())
    assert inv == pytest.approx(0.5, abs=0)
    assert invs == pytest.approx(1 / 6, abs=1e-16)


class TestInversionData:
    def test_small_cases(self):
        d = inversion_data(Permutation((2, 1, 3)))
        assert sorted(d.pairs) == [(1, 2)]
        assert sorted(d.triples) == [(1, 2, 3)]  # images (2,1,3): last-is-largest cycle

        d = inversion_data(Permutation((1, 3, 2)))
        assert sorted(d.pairs) == [(2, 3)]
        assert sorted(d.triples) == [(1, 2, 3)]

        d = inversion_data(Permutation((3, 2, 1)))
        assert sorted(d.pairs) == [(1, 2), (1, 3), (2, 3)]
        assert sorted(d.triples) == [(1, 2, 3)]

    def test_monotone_have_none(self):
        d = inversion_data(Permutation((1, 2, 3, 4)))
        assert not d.pairs and not d.triples

    def test_decreasing_has_all(self):
        n = 6
        d = inversion_data(Permutation.decreasing(n))
        assert len(d.pairs) == n * (n - 1) // 2
        assert len(d.triples) == n * (n - 1) * (n - 2) // 6


class TestAbValues:
    def test_single_inversion(self):
        a, b = ab_values(Permutation((2, 1, 3)), np.full(3, 1 / 3))
        assert a == pytest.approx(1 / 9, abs=1e-16)
        assert b == pytest.approx(1 / 27, abs=1e-16)

    def test_decreasing(self):
        a, b = ab_values(Permutation((3, 2, 1)), np.full(3, 1 / 3))
        assert a == pytest.approx(1 / 3, abs=1e-15)
        assert b == pytest.approx(1 / 27, abs=1e-16)

    def test_accepts_off_simplex_vectors(self):
        # formal polynomial: no simplex validation on purpose
        a, b = ab_values(Permutation((2, 1)), np.array([2.0, -1.0]))
        assert a == pytest.approx(-2.0)
        assert b == 0.0

    def test_ties_to_inv_invs_for_straight_shuffles(self, rng):
        for _ in range(100):
            sh = random_shuffle(rng, n_max=9, mixed_signs=False)
            a, b = ab_values(sh.perm, sh.weights.as_array())
            inv, invs = inv_invs(sh)
            assert inv == pytest.approx(a, abs=1e-14)
            assert b == pytest.approx(a - 2 * invs, abs=1e-14)


def test_perturbation_worked_example():
    coeffs = perturbation_coeffs(
        Permutation((3, 2, 1)), np.full(3, 1 / 3), np.array([1.0, -1.0, 0.0])
    )
    assert coeffs.alpha1 == pytest.approx(0.0, abs=1e-16)
    assert coeffs.alpha2 == pytest.approx(-1.0, abs=1e-15)
    assert coeffs.beta1 == pytest.approx(0.0, abs=1e-16)
    assert coeffs.beta2 == pytest.approx(-1 / 3, abs=1e-15)
    assert coeffs.beta3 == pytest.approx(0.0, abs=1e-16)


def test_perturbation_requires_zero_sum():
    with pytest.raises(ValueError):
        perturbation_coeffs(Permutation((2, 1)), np.array([0.5, 0.5]), np.array([1.0, 0.0]))


def test_perturbation_expansion_is_exact(rng):
    for _ in range(50):
        n = int(rng.integers(2, 9))
        sh = random_shuffle(rng, n_min=n, n_max=n, mixed_signs=False)
        u = sh.weights.as_array()
        d = rng.standard_normal(n)
        d -= d.mean()
        coeffs = perturbation_coeffs(sh.perm, u, d)
        a0, b0 = ab_values(sh.perm, u)
        for t in (0.3, -0.8):
            a1, b1 = ab_values(sh.perm, u + t * d)
            assert a1 - a0 == pytest.approx(
                coeffs.alpha1 * t + coeffs.alpha2 * t**2, abs=1e-12
            )
            assert b1 - b0 == pytest.approx(
                coeffs.beta1 * t + coeffs.beta2 * t**2 + coeffs.beta3 * t**3,
                abs=1e-12,
            )


class TestOracle:
    def test_identity_is_exact(self):
        pt = oracle_tau_rho(identity_shuffle(), grid_m=100)
        assert pt.tau == 1.0 and pt.rho == 1.0

    def test_flip_tau_has_known_bias(self):
        # all m(m-1)/2 grid pairs are discordant
        pt = oracle_tau_rho(flip_shuffle(), grid_m=100)
        assert pt.tau == pytest.approx(-1 + 2 / 100, abs=1e-15)

    def test_grid_validation(self, four_segment):
        with pytest.raises(ValueError):
            oracle_tau_rho(four_segment, grid_m=1)

    def test_agreement_on_mixed_sign_shuffles(self, rng):
        for _ in range(25):
            sh = random_shuffle(rng, n_max=8)
            exact = tau_rho(sh)
            est = oracle_tau_rho(sh, grid_m=4000)
            assert abs(est.tau - exact.tau) <= 5e-3
            assert abs(est.rho - exact.rho) <= 5e-3


def test_symmetries(rng):
    for _ in range(100):
        sh = random_shuffle(rng, n_max=8)
        pt = tau_rho(sh)
        ptf = tau_rho(flip(sh))
        pti = tau_rho(inverse(sh))
        assert ptf.tau == pytest.approx(-pt.tau, abs=1e-12)
        assert ptf.rho == pytest.approx(-pt.rho, abs=1e-12)
        assert pti.tau == pytest.approx(pt.tau, abs=1e-12)
        assert pti.rho == pytest.approx(pt.rho, abs=1e-12)


def test_chunked_path_matches_closed_form():
    """A prototype big enough to span several row blocks of the O(n^2) sum."""
    proto = Prototype(3000, 1 / 3000 + 1e-7)
    sh = prototype_shuffle(proto)
    pt = tau_rho(sh)
    n, r = proto.n, proto.r
    tau_c = 1 - 4 * (n - 1) * r + 2 * r * r * n * (n - 1)
    rho_c = 1 - 2 * r * (n - 1) * (3 - 3 * r * (n - 1) + r * r * (n - 2) * n)
    assert pt.tau == pytest.approx(tau_c, abs=1e-11)
    assert pt.rho == pytest.approx(rho_c, abs=1e-11)
