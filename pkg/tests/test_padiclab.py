"""Truncated quadratic-extension and quaternion arithmetic, and the
disk-volume enumeration against the closed forms."""

import random
from fractions import Fraction

import pytest

from semilie.padiclab import (
    DiskCounter,
    InsufficientPrecisionError,
    QuadExtRing,
    count_one_disk,
    count_two_disk,
    formula_one_disk,
    formula_two_disk,
    herm,
    quat_conj,
    quat_mul,
    quat_norm,
    quaternion_invariants,
    sample_admissible,
)


@pytest.fixture(scope="module")
def ring():
    return QuadExtRing(p=3, precision=3)


@pytest.fixture(scope="module")
def counter(ring):
    return DiskCounter(ring)


class TestRing:
    def test_eps_is_nonresidue(self, ring):
        assert ring.eps == 2

    def test_norm_and_conj(self, ring):
        x = ring.element(4, 7)
        assert ring.norm(x) == (16 - 2 * 49) % ring.modulus
        assert ring.mul(x, ring.conj(x)) == ring.element(ring.norm(x), 0)

    def test_val(self, ring):
        assert ring.val(ring.element(3, 9)) == 1
        assert ring.val(ring.element(0, 0)) == ring.precision  # means >= precision
        assert ring.val(ring.element(1, 3)) == 0

    def test_inverse(self, ring):
        rng = random.Random(1)
        for _ in range(20):
            x = ring.random_unit(rng)
            assert ring.mul(x, ring.inverse(x)) == ring.one()

    def test_inverse_of_nonunit(self, ring):
        with pytest.raises(ZeroDivisionError):
            ring.inverse(ring.element(3, 3))

    def test_norm_preimage(self, ring):
        for m in (1, 2, 4, 5, 7, 8, 10):
            x = ring.norm_preimage(m)
            assert ring.norm(x) == m % ring.modulus
        with pytest.raises(ValueError):
            ring.norm_preimage(3)


class TestQuaternions:
    def test_j_squared_is_p(self, ring):
        j = (ring.zero(), ring.one())
        jj = quat_mul(ring, j, j)
        assert jj == (ring.element(ring.p, 0), ring.zero())

    def test_conj_anti_involution(self, ring):
        rng = random.Random(2)
        for _ in range(30):
            u = (ring.random_element(rng), ring.random_element(rng))
            w = (ring.random_element(rng), ring.random_element(rng))
            assert quat_conj(ring, quat_conj(ring, u)) == u
            assert quat_conj(ring, quat_mul(ring, u, w)) == quat_mul(
                ring, quat_conj(ring, w), quat_conj(ring, u)
            )

    def test_reduced_norm_multiplicative(self, ring):
        rng = random.Random(3)
        for _ in range(30):
            u = (ring.random_element(rng), ring.random_element(rng))
            w = (ring.random_element(rng), ring.random_element(rng))
            assert quat_norm(ring, quat_mul(ring, u, w)) == (
                quat_norm(ring, u) * quat_norm(ring, w)
            ) % ring.modulus

    def test_norm_is_self_pairing(self, ring):
        rng = random.Random(4)
        for _ in range(10):
            u = (ring.random_element(rng), ring.random_element(rng))
            assert herm(ring, u, u) == ring.element(quat_norm(ring, u), 0)


class TestOneDisk:
    def test_rho_zero_example(self):
        ring = QuadExtRing(p=3, precision=2)
        xi = ring.one()
        assert count_one_disk(ring, xi, 0, 1) == Fraction(8, 27)
        assert formula_one_disk(ring, xi, 0, 1) == Fraction(8, 27)

    def test_rho_one_example(self):
        ring = QuadExtRing(p=3, precision=2)
        xi = ring.one()
        assert count_one_disk(ring, xi, 1, 1) == Fraction(2, 27)
        assert formula_one_disk(ring, xi, 1, 1) == Fraction(2, 27)

    def test_far_center_gives_zero(self):
        ring = QuadExtRing(p=3, precision=2)
        xi = ring.element(2, 1)  # v(1 - norm(xi)) = 0 < rho = 1
        assert ring.val_int(1 - ring.norm(xi)) == 0
        assert formula_one_disk(ring, xi, 1, 1) == Fraction(0)
        assert count_one_disk(ring, xi, 1, 1) == Fraction(0)

    def test_full_sweep(self, ring, counter):
        for xi in ring.units():
            for rho in range(ring.precision):
                for n in range(max(rho, 1), ring.precision):
                    got = count_one_disk(ring, xi, rho, n, counter)
                    want = formula_one_disk(ring, xi, rho, n)
                    assert got == want, (xi, rho, n)

    def test_negative_rho_matches_rho_zero(self, ring, counter):
        # The disk condition is vacuous for any rho <= 0.
        xi = ring.element(1, 1)
        for n in (1, 2):
            assert count_one_disk(ring, xi, -2, n, counter) == count_one_disk(
                ring, xi, 0, n, counter
            )
            assert formula_one_disk(ring, xi, -2, n) == formula_one_disk(ring, xi, 0, n)

    def test_precision_guard(self, ring):
        with pytest.raises(InsufficientPrecisionError):
            count_one_disk(ring, ring.one(), 0, ring.precision)

    def test_preconditions(self, ring):
        with pytest.raises(ValueError):
            count_one_disk(ring, ring.element(3, 3), 0, 1)  # center not a unit
        with pytest.raises(ValueError):
            count_one_disk(ring, ring.one(), 2, 1)  # n < rho


class TestTwoDisk:
    def test_coincident_reduces_to_one_disk(self, ring, counter):
        xi = ring.one()
        got = count_two_disk(ring, xi, xi, 0, 0, 1, counter)
        assert got == count_one_disk(ring, xi, 0, 1, counter)

    def test_disjoint_disks(self, ring, counter):
        xi1 = ring.one()
        xi2 = ring.element(2, 0)  # v(xi1 - xi2) = 0 < rho2 = 1
        assert formula_two_disk(ring, xi1, xi2, 1, 1, 1) == Fraction(0)
        assert count_two_disk(ring, xi1, xi2, 1, 1, 1, counter) == Fraction(0)

    def test_generic_admissible(self):
        ring = QuadExtRing(p=3, precision=4)
        xi = ring.one()
        got = count_two_disk(ring, xi, ring.element(1, 3), 1, 1, 2)
        assert got == Fraction(2, 81)

    def test_sweep_with_offsets(self, ring, counter):
        offsets = [(0, 0), (1, 0), (0, 1), (3, 0), (0, 3)]
        units = [u for u in ring.units() if u[0] % 3 == 1][:40]
        for xi1 in units:
            for da, db in offsets:
                xi2 = ring.sub(xi1, (da, db))
                if not ring.is_unit(xi2):
                    continue
                for rho1 in range(ring.precision):
                    for rho2 in range(rho1 + 1):
                        for n in range(max(rho1, 1), ring.precision):
                            got = count_two_disk(ring, xi1, xi2, rho1, rho2, n, counter)
                            want = formula_two_disk(ring, xi1, xi2, rho1, rho2, n)
                            assert got == want, (xi1, xi2, rho1, rho2, n)

    def test_rho_order_enforced(self, ring):
        with pytest.raises(ValueError):
            count_two_disk(ring, ring.one(), ring.one(), 0, 1, 1)


class TestQuaternionInvariants:
    def test_u_equals_one(self, ring):
        rng = random.Random(5)
        lam, alpha, beta = sample_admissible(ring, rng)
        report = quaternion_invariants(ring, lam, alpha, beta, ring.one(), ring.zero())
        assert report["pass"]
        lam_inv = ring.inverse(lam)
        assert report["computed"]["herm_u_u"] == ring.one()
        assert report["computed"]["herm_gu_u"] == ring.mul(lam_inv, alpha)

    def test_u_equals_j(self, ring):
        rng = random.Random(6)
        lam, alpha, beta = sample_admissible(ring, rng)
        report = quaternion_invariants(ring, lam, alpha, beta, ring.zero(), ring.one())
        assert report["pass"]
        assert report["computed"]["herm_u_u"] == ring.element(-ring.p, 0)

    def test_randomized(self, ring):
        rng = random.Random(7)
        for i in range(60):
            lam, alpha, beta = sample_admissible(ring, rng)
            if i % 2:
                s, t = ring.zero(), ring.random_unit(rng)
            else:
                s, t = ring.random_unit(rng), ring.zero()
            assert quaternion_invariants(ring, lam, alpha, beta, s, t)["pass"]

    def test_constraint_enforced(self, ring):
        with pytest.raises(ValueError, match="constraint"):
            quaternion_invariants(
                ring, ring.one(), ring.element(2, 0), ring.zero(), ring.one(), ring.zero()
            )

    def test_st_both_nonzero_rejected(self, ring):
        rng = random.Random(8)
        lam, alpha, beta = sample_admissible(ring, rng)
        with pytest.raises(ValueError, match="s = 0 or t = 0"):
            quaternion_invariants(ring, lam, alpha, beta, ring.one(), ring.one())

    def test_valuation_translation_on_samples(self, ring):
        # v(lam**-2 * beta * conj(beta) * p) = 2 v(beta) + 1 whenever that is
        # within working precision.
        rng = random.Random(9)
        for _ in range(40):
            lam, _, beta = sample_admissible(ring, rng)
            v_beta = ring.val(beta)
            if 2 * v_beta + 1 >= ring.precision:
                continue
            lam_inv = ring.inverse(lam)
            bc = ring.scalar_mul(
                ring.p,
                ring.mul(ring.mul(lam_inv, lam_inv), ring.mul(beta, ring.conj(beta))),
            )
            assert ring.val(bc) == 2 * v_beta + 1
