import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from secondkind.curvature import (
    ComplexStructure,
    CurvatureTensor,
    constant_holomorphic,
    constant_sectional,
    einstein_constant,
    flat_tensor,
    kahler_space_form,
    product,
    random_curvature,
    random_kahler_curvature,
    ricci,
    scalar,
    space_form,
    standard_complex_structure,
)
from secondkind.errors import InvalidInputError


def symmetry_errors(r):
    c = r.components
    return max(
        np.abs(c + np.einsum("jikl->ijkl", c)).max(),
        np.abs(c + np.einsum("ijlk->ijkl", c)).max(),
        np.abs(c - np.einsum("klij->ijkl", c)).max(),
        np.abs(c + np.einsum("jkil->ijkl", c) + np.einsum("kijl->ijkl", c)).max() / 3.0,
    )


class TestSpaceForm:
    def test_flat_case_is_zero(self):
        assert np.abs(space_form(3, 0.0).components).max() == 0.0

    def test_single_plane(self):
        r = space_form(2, -1.0)
        assert r.components[0, 1, 0, 1] == -1.0

    def test_sectional_curvature_of_coordinate_planes(self):
        r = space_form(4, 2.5)
        for i in range(4):
            for j in range(4):
                if i != j:
                    assert r.components[i, j, i, j] == 2.5

    def test_rejects_dim1(self):
        with pytest.raises(InvalidInputError):
            space_form(1, 1.0)


class TestKahlerSpaceForm:
    def test_m1_equals_round_sphere(self):
        r, _ = kahler_space_form(1, 1.0)
        assert np.abs(r.components - space_form(2, 4.0).components).max() <= 1e-12

    def test_m1_flat(self):
        r, _ = kahler_space_form(1, 0.0)
        assert np.abs(r.components).max() == 0.0

    def test_holomorphic_planes(self):
        r, j = kahler_space_form(2, 1.0)
        # R(X, JX, X, JX) = 4 kappa on unit holomorphic planes
        rng = np.random.default_rng(0)
        for _ in range(5):
            x = rng.standard_normal(4)
            x /= np.linalg.norm(x)
            jx = j.matrix @ x
            val = np.einsum("ijkl,i,j,k,l->", r.components, x, jx, x, jx)
            assert abs(val - 4.0) < 1e-12

    def test_einstein_with_expected_constant(self):
        for m, kappa in [(1, 1.0), (2, 0.5), (3, 2.0)]:
            r, _ = kahler_space_form(m, kappa)
            rho = einstein_constant(r)
            assert rho is not None
            assert abs(rho - 2 * (m + 1) * kappa) <= 1e-12

    def test_rejects_m0(self):
        with pytest.raises(InvalidInputError):
            kahler_space_form(0, 1.0)


class TestComplexStructure:
    def test_standard_structure_valid(self):
        j = standard_complex_structure(3)
        assert j.dim == 6 and j.m == 3

    def test_rejects_odd_dimension(self):
        with pytest.raises(InvalidInputError):
            ComplexStructure(np.zeros((3, 3)))

    def test_rejects_non_orthogonal(self):
        with pytest.raises(InvalidInputError):
            ComplexStructure(np.eye(2) * 2.0)


class TestProduct:
    def test_blocks_equal_inputs_bitwise(self):
        r1 = space_form(2, 1.0)
        r2 = space_form(3, -2.0)
        r = product(r1, r2)
        assert np.array_equal(r.components[:2, :2, :2, :2], r1.components)
        assert np.array_equal(r.components[2:, 2:, 2:, 2:], r2.components)

    def test_mixed_components_zero(self):
        r = product(random_curvature(3, 1), random_curvature(2, 2))
        comp = r.components.copy()
        comp[:3, :3, :3, :3] = 0.0
        comp[3:, 3:, 3:, 3:] = 0.0
        assert np.abs(comp).max() == 0.0

    def test_scalar_additivity(self):
        r1 = random_curvature(3, 10)
        r2 = random_curvature(4, 11)
        assert abs(scalar(product(r1, r2)) - scalar(r1) - scalar(r2)) <= 1e-12

    def test_dim1_factor(self):
        r = product(space_form(3, 1.0), flat_tensor(1))
        assert r.dim == 4 and abs(scalar(r) - 6.0) <= 1e-12


class TestContractions:
    def test_space_form_ricci(self):
        r = space_form(3, 1.0)
        np.testing.assert_allclose(ricci(r), 2.0 * np.eye(3), atol=1e-14)
        assert abs(scalar(r) - 6.0) <= 1e-14

    def test_kahler_ricci(self):
        r, _ = kahler_space_form(2, 1.0)
        np.testing.assert_allclose(ricci(r), 6.0 * np.eye(4), atol=1e-14)

    def test_product_ricci_blocks(self):
        r = product(space_form(2, 1.0), space_form(3, 1.0))
        np.testing.assert_allclose(ricci(r), np.diag([1.0, 1.0, 2.0, 2.0, 2.0]), atol=1e-14)

    def test_ricci_symmetric_on_random(self):
        ric = ricci(random_curvature(5, 3))
        assert np.abs(ric - ric.T).max() <= 1e-12


class TestDetectors:
    def test_einstein_space_form(self):
        assert einstein_constant(space_form(4, 1.0)) == pytest.approx(3.0, abs=1e-12)

    def test_einstein_absent_for_mixed_product(self):
        assert einstein_constant(product(space_form(2, 1.0), space_form(3, 1.0))) is None

    def test_einstein_equal_factors(self):
        r = product(space_form(2, 1.0), space_form(2, 1.0))
        assert einstein_constant(r) == pytest.approx(1.0, abs=1e-12)

    def test_constant_sectional_detects(self):
        assert constant_sectional(space_form(5, -2.0)) == pytest.approx(-2.0, abs=1e-12)

    def test_constant_sectional_rejects_kahler(self):
        r, _ = kahler_space_form(2, 1.0)
        assert constant_sectional(r) is None

    def test_constant_sectional_flat(self):
        assert constant_sectional(flat_tensor(3)) == pytest.approx(0.0, abs=1e-15)

    def test_constant_holomorphic_detects(self):
        r, j = kahler_space_form(2, 1.0)
        assert constant_holomorphic(r, j) == pytest.approx(4.0, abs=1e-12)

    def test_constant_holomorphic_rejects_round_sphere(self):
        j = standard_complex_structure(2)
        assert constant_holomorphic(space_form(4, 1.0), j) is None

    def test_constant_holomorphic_flat(self):
        j = standard_complex_structure(2)
        assert constant_holomorphic(flat_tensor(4), j) == pytest.approx(0.0, abs=1e-15)

    def test_constant_holomorphic_dim_mismatch(self):
        j = standard_complex_structure(3)
        with pytest.raises(InvalidInputError):
            constant_holomorphic(space_form(4, 1.0), j)


class TestRandomCurvature:
    def test_deterministic(self):
        a = random_curvature(4, seed=1, scale=1.0)
        b = random_curvature(4, seed=1, scale=1.0)
        assert np.array_equal(a.components, b.components)

    def test_scale_zero_is_flat(self):
        assert np.abs(random_curvature(4, seed=9, scale=0.0).components).max() == 0.0

    def test_rejects_dim1(self):
        with pytest.raises(InvalidInputError):
            random_curvature(1, seed=0)

    @given(st.integers(min_value=0, max_value=5_000), st.integers(min_value=2, max_value=5))
    @settings(max_examples=40, deadline=None)
    def test_symmetries_and_bianchi(self, seed, n):
        r = random_curvature(n, seed)
        assert symmetry_errors(r) <= 1e-12 * max(1.0, np.abs(r.components).max())


class TestRandomKahlerCurvature:
    def test_deterministic(self):
        a, _ = random_kahler_curvature(2, seed=4)
        b, _ = random_kahler_curvature(2, seed=4)
        assert np.array_equal(a.components, b.components)

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_j_invariance_and_symmetries(self, m):
        r, j = random_kahler_curvature(m, seed=m + 20)
        assert symmetry_errors(r) <= 1e-12
        pulled = np.einsum("ck,dl,ijcd->ijkl", j.matrix, j.matrix, r.components)
        assert np.abs(r.components - pulled).max() <= 1e-12
        assert np.abs(r.components).max() > 1e-3  # generically nonzero


class TestValidation:
    def test_rejects_pair_asymmetry(self):
        comp = np.zeros((2, 2, 2, 2))
        comp[0, 1, 0, 1] = 1.0  # missing the antisymmetric partners
        with pytest.raises(InvalidInputError):
            CurvatureTensor(comp)

    def test_rejects_bianchi_violation(self):
        # a generic pair-symmetric tensor without the cyclic part removed
        rng = np.random.default_rng(2)
        t = rng.standard_normal((4, 4, 4, 4))
        t = (t - np.einsum("jikl->ijkl", t)) / 2.0
        t = (t - np.einsum("ijlk->ijkl", t)) / 2.0
        t = (t + np.einsum("klij->ijkl", t)) / 2.0
        with pytest.raises(InvalidInputError):
            CurvatureTensor(t)
