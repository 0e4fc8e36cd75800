"""Quaternion algebra, conjugation rotations, axis-angle, SU(2), and the
two-sided action on R^4.

The basis-table oracle expands products over the 16 basis pairs by hand so
closed-form examples are checked against an independent multiplication.
"""
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hopfgeo.quaternions import (
    I,
    J,
    K,
    ONE,
    Quaternion,
    UnitQuaternion,
    axis_angle,
    from_axis_angle,
    from_su2,
    rotate_left,
    rotate_right,
    so4_action,
    to_su2,
)

# basis multiplication table: table[x][y] = (sign, basis index) for e_x e_y
# with basis order (1, i, j, k)
_TABLE = {
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
}


def table_mul(q1: Quaternion, q2: Quaternion) -> Quaternion:
    out = np.zeros(4)
    for x in range(4):
        for y in range(4):
            sign, idx = _TABLE[(x, y)]
            out[idx] += sign * q1.components()[x] * q2.components()[y]
    return Quaternion(*out)


def random_quaternion(rng, scale=1.0) -> Quaternion:
    return Quaternion(*(rng.standard_normal(4) * scale))


def random_unit(rng) -> UnitQuaternion:
    v = rng.standard_normal(4)
    return UnitQuaternion(*(v / np.linalg.norm(v)))


finite_reals = st.floats(min_value=-10, max_value=10,
                         allow_nan=False, allow_infinity=False)


class TestAlgebra:
    def test_basis_products(self):
        assert (I * J).isclose(K)
        assert (J * I).isclose(-K)
        assert (J * K).isclose(I)
        assert (K * J).isclose(-I)
        assert (K * I).isclose(J)
        assert (I * K).isclose(-J)
        for u in (I, J, K):
            assert (u * u).isclose(-ONE)

    @given(*(finite_reals for _ in range(8)))
    @settings(max_examples=60)
    def test_product_matches_basis_table(self, a, b, c, d, e, f, g, h):
        q1, q2 = Quaternion(a, b, c, d), Quaternion(e, f, g, h)
        assert (q1 * q2).isclose(table_mul(q1, q2), tol=1e-9)

    def test_noncommutative_example(self):
        q1 = Quaternion(2, 3, 0, 0)       # 2 + 3i
        q2 = Quaternion(1, 0, 1, -3)      # 1 + j - 3k
        fwd, bwd = q1 * q2, q2 * q1
        assert fwd.isclose(table_mul(q1, q2))
        assert bwd.isclose(table_mul(q2, q1))
        assert not fwd.isclose(bwd)

    def test_inverse_example(self):
        q = Quaternion(3, 2, -1, -1)
        qinv = q.inverse()
        # oracle: the product must be 1
        assert (q * qinv).isclose(ONE, tol=1e-12)
        # frozen closed form: conj / 15
        assert qinv.isclose(Quaternion(3, -2, 1, 1) / 15.0, tol=1e-12)

    def test_zero_inverse_rejected(self):
        with pytest.raises(ZeroDivisionError):
            Quaternion(0, 0, 0, 0).inverse()

    def test_norm_multiplicative(self):
        rng = np.random.default_rng(0)
        for _ in range(100):
            q1, q2 = random_quaternion(rng), random_quaternion(rng)
            assert (q1 * q2).norm() == pytest.approx(q1.norm() * q2.norm(),
                                                   rel=1e-12)

    def test_conjugate_gives_norm_square(self):
        q = Quaternion(1.0, -2.0, 0.5, 3.0)
        prod = q * q.conj()
        assert prod.real == pytest.approx(q.norm_sq())
        assert np.linalg.norm(prod.pure()) < 1e-12

    def test_scalar_operations(self):
        q = Quaternion(1, 2, 3, 4)
        assert (2.0 * q).isclose(Quaternion(2, 4, 6, 8))
        assert (q / 2.0).isclose(Quaternion(0.5, 1, 1.5, 2))

    def test_pure_unit_squares_to_minus_one(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            v = rng.standard_normal(3)
            v /= np.linalg.norm(v)
            u = Quaternion.from_pure(v)
            assert (u * u).isclose(-ONE, tol=1e-12)


class TestUnitQuaternion:
    def test_renormalizes(self):
        q = UnitQuaternion(1.0 + 1e-13, 0.0, 0.0, 0.0)
        assert q.norm() == pytest.approx(1.0, abs=1e-15)

    def test_renormalizes_any_nonzero_input(self):
        q = UnitQuaternion(2.0, 2.0, 0.0, 0.0)
        assert q.norm() == pytest.approx(1.0, abs=1e-15)
        assert q.isclose(UnitQuaternion(1, 1, 0, 0))

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            UnitQuaternion(0.0, 0.0, 0.0, 0.0)


class TestRotations:
    def test_real_q_is_identity(self):
        rng = np.random.default_rng(2)
        p = rng.standard_normal(3)
        assert np.allclose(rotate_right(Quaternion(2.5), p), p)
        assert np.allclose(rotate_left(Quaternion(-1.0), p), p)

    def test_quarter_turn_example_right(self):
        # under the q^-1 p q convention the triple {r, p, R_q(p)} comes out
        # LEFT handed; the right-handed triple belongs to the left action
        q = Quaternion(1, 1, 0, 0) / math.sqrt(2.0)
        got = rotate_right(q, [0.0, 1.0, 0.0])
        # oracle: expand q^-1 j q with the basis table
        expect = table_mul(table_mul(q.inverse(), J), q)
        assert np.allclose(got, expect.pure(), atol=1e-12)
        assert np.allclose(got, [0.0, 0.0, -1.0], atol=1e-12)
        triple = np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], got])
        assert np.linalg.det(triple) < 0

    def test_quarter_turn_example_left(self):
        q = Quaternion(1, 1, 0, 0) / math.sqrt(2.0)
        got = rotate_left(q, [0.0, 1.0, 0.0])
        expect = table_mul(table_mul(q, J), q.inverse())
        assert np.allclose(got, expect.pure(), atol=1e-12)
        assert np.allclose(got, [0.0, 0.0, 1.0], atol=1e-12)
        triple = np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], got])
        assert np.linalg.det(triple) > 0

    def test_axis_permutation_example(self):
        # q = (1+i+j+k)/2 rotates by 120 degrees about (1,1,1)/sqrt(3);
        # the two conventions cycle the axes in opposite directions
        q = Quaternion(1, 1, 1, 1) / 2.0
        got = rotate_right(q, [1.0, 0.0, 0.0])
        expect = table_mul(table_mul(q.inverse(), I), q)
        assert np.allclose(got, expect.pure(), atol=1e-12)
        assert np.allclose(got, [0.0, 0.0, 1.0], atol=1e-12)
        assert np.allclose(rotate_left(q, [1.0, 0.0, 0.0]),
                           [0.0, 1.0, 0.0], atol=1e-12)

    def test_left_is_right_of_conjugate(self):
        rng = np.random.default_rng(3)
        for _ in range(30):
            q = random_quaternion(rng)
            if q.norm() < 0.1:
                continue
            p = rng.standard_normal(3)
            assert np.allclose(rotate_left(q, p),
                               rotate_right(q.conj(), p), atol=1e-12)

    def test_composition_order(self):
        rng = np.random.default_rng(4)
        for _ in range(50):
            q1, q2 = random_unit(rng), random_unit(rng)
            p = rng.standard_normal(3)
            twice = rotate_right(q2, rotate_right(q1, p))
            once = rotate_right(q1 * q2, p)
            assert np.allclose(twice, once, atol=1e-10)

    def test_double_cover_and_scale_invariance(self):
        rng = np.random.default_rng(5)
        for _ in range(30):
            q = random_unit(rng)
            p = rng.standard_normal(3)
            base = rotate_right(q, p)
            assert np.allclose(rotate_right(-q, p), base, atol=1e-12)
            assert np.allclose(rotate_right(3.7 * q, p), base, atol=1e-10)

    def test_axis_fixed_norm_kept_linear(self):
        rng = np.random.default_rng(6)
        for _ in range(30):
            q = random_unit(rng)
            p, p2 = rng.standard_normal(3), rng.standard_normal(3)
            assert np.allclose(rotate_right(q, q.pure()), q.pure(), atol=1e-10)
            assert np.linalg.norm(rotate_right(q, p)) == pytest.approx(
                np.linalg.norm(p), abs=1e-12)
            lhs = rotate_right(q, 2.0 * p - 0.5 * p2)
            rhs = 2.0 * rotate_right(q, p) - 0.5 * rotate_right(q, p2)
            assert np.allclose(lhs, rhs, atol=1e-12)

    def test_zero_q_rejected(self):
        with pytest.raises(ValueError):
            rotate_right(Quaternion(0, 0, 0, 0), [1.0, 0.0, 0.0])


class TestAxisAngle:
    def test_identity_convention(self):
        axis, angle = axis_angle(ONE)
        assert angle == 0.0
        assert np.allclose(axis, [1.0, 0.0, 0.0])

    def test_quarter_turn(self):
        q = UnitQuaternion(1 / math.sqrt(2), 1 / math.sqrt(2), 0, 0)
        axis, angle = axis_angle(q)
        assert np.allclose(axis, [1.0, 0.0, 0.0])
        assert angle == pytest.approx(math.pi / 2)
        # cos(rotation angle) = 2a^2 - 1 = 0
        assert math.cos(angle) == pytest.approx(2 * q.real ** 2 - 1, abs=1e-12)

    def test_round_trip(self):
        rng = np.random.default_rng(7)
        for _ in range(40):
            axis = rng.standard_normal(3)
            axis /= np.linalg.norm(axis)
            angle = float(rng.uniform(0.1, 2 * math.pi - 0.1))
            q = from_axis_angle(axis, angle)
            got_axis, got_angle = axis_angle(q)
            # canonical axis has positive first nonzero component
            sign = 1.0 if np.sign(axis[np.nonzero(np.abs(axis) > 1e-12)[0][0]]) > 0 else -1.0
            if sign < 0:
                axis, angle = -axis, 2 * math.pi - angle
            assert np.allclose(got_axis, axis, atol=1e-10)
            assert got_angle == pytest.approx(angle % (2 * math.pi), abs=1e-10)

    def test_measured_rotation_angle(self):
        rng = np.random.default_rng(8)
        for _ in range(30):
            q = random_unit(rng)
            axis, angle = axis_angle(q)
            # p perpendicular to the axis
            p = np.cross(axis, rng.standard_normal(3))
            if np.linalg.norm(p) < 1e-6:
                continue
            p /= np.linalg.norm(p)
            measured = math.acos(np.clip(p @ rotate_right(q, p), -1.0, 1.0))
            expected = min(angle, 2 * math.pi - angle)
            assert abs(measured - expected) < 1e-9

    def test_plus_minus_q_canonicalize_identically(self):
        rng = np.random.default_rng(9)
        for _ in range(20):
            q = random_unit(rng)
            a1 = axis_angle(q)
            a2 = axis_angle(UnitQuaternion(*(-q).components()))
            assert np.allclose(a1[0], a2[0], atol=1e-12)
            assert a1[1] == pytest.approx(a2[1], abs=1e-12)

    def test_non_unit_rejected(self):
        with pytest.raises(ValueError):
            axis_angle(Quaternion(2.0, 0, 0, 0))


class TestSU2:
    def test_identity_matrix(self):
        assert np.allclose(to_su2(ONE), np.eye(2))

    def test_q_equals_i(self):
        m = to_su2(I)
        assert np.allclose(m, np.array([[1j, 0], [0, -1j]]))

    def test_structure_and_determinant(self):
        rng = np.random.default_rng(10)
        for _ in range(30):
            q = random_quaternion(rng)
            m = to_su2(q)
            assert m[0, 0] == np.conj(m[1, 1])
            assert m[0, 1] == -np.conj(m[1, 0])
            assert np.linalg.det(m) == pytest.approx(q.norm_sq(), abs=1e-10)

    def test_homomorphism(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            q1, q2 = random_quaternion(rng), random_quaternion(rng)
            lhs = to_su2(q1) @ to_su2(q2)
            rhs = to_su2(q1 * q2)
            assert np.allclose(lhs, rhs, atol=1e-10)

    def test_determinant_reproves_norm_multiplicativity(self):
        rng = np.random.default_rng(12)
        q1, q2 = random_quaternion(rng), random_quaternion(rng)
        det_prod = np.linalg.det(to_su2(q1)) * np.linalg.det(to_su2(q2))
        assert det_prod == pytest.approx((q1 * q2).norm_sq(), rel=1e-10)

    def test_round_trip(self):
        rng = np.random.default_rng(13)
        for _ in range(30):
            q = random_quaternion(rng)
            assert from_su2(to_su2(q)).isclose(q, tol=1e-12)

    def test_malformed_matrix_rejected(self):
        with pytest.raises(ValueError):
            from_su2(np.array([[1.0, 2.0], [3.0, 4.0]]))


class TestSO4Action:
    def test_identity_pair(self):
        rng = np.random.default_rng(14)
        q = random_quaternion(rng)
        assert so4_action(ONE, ONE, q).isclose(q)

    def test_isometry(self):
        rng = np.random.default_rng(15)
        for _ in range(30):
            g, h = random_unit(rng), random_unit(rng)
            q = random_quaternion(rng)
            assert so4_action(g, h, q).norm() == pytest.approx(
                q.norm(), rel=1e-12)

    def test_angle_preserved_paper_pair(self):
        q = Quaternion(1, -3, 0, 1) / math.sqrt(11.0)
        q2 = Quaternion(0, 1, -1, 0) / math.sqrt(2.0)
        def angle(u, v):
            return math.acos(np.clip(u.components() @ v.components(), -1, 1))
        before = angle(q, q2)
        after = angle(so4_action(K, ONE, q), so4_action(K, ONE, q2))
        assert after == pytest.approx(before, abs=1e-12)

    def test_negated_pair_same_action(self):
        rng = np.random.default_rng(16)
        g, h = random_unit(rng), random_unit(rng)
        ng = UnitQuaternion(*(-g).components())
        nh = UnitQuaternion(*(-h).components())
        for _ in range(100):
            q = random_quaternion(rng)
            assert so4_action(g, h, q).isclose(so4_action(ng, nh, q),
                                               tol=1e-12)

    def test_non_unit_rejected(self):
        with pytest.raises(ValueError):
            so4_action(Quaternion(2, 0, 0, 0), ONE, ONE)
