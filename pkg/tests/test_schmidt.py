"""Schmidt decomposition of discretized filter kernels."""

import numpy as np
import pytest

from tffilter.core import (
    ConvergenceError,
    build_operator,
    recommended_axes,
)
from tffilter.gaussian import gaussian_sif, gaussian_singular_values
from tffilter.schmidt import (
    decompose_filter,
    inner_product,
    project_onto_input_mode,
    reconstruct_kernel,
    schmidt_decompose,
)
from tffilter.slepian import rectangular_sif


@pytest.fixture(scope="module")
def gaussian_result():
    return decompose_filter(gaussian_sif(0.5, 1.0), keep=12)


class TestSchmidtDecompose:
    def test_singulars_descending_nonnegative(self, gaussian_result):
        sv = gaussian_result.singular_values
        assert np.all(sv >= 0)
        assert np.all(np.diff(sv) <= 1e-15)

    def test_input_modes_orthonormal(self, gaussian_result):
        modes = gaussian_result.input_modes
        for i in range(len(modes)):
            for j in range(i, len(modes)):
                g = inner_product(modes[i], modes[j])
                assert abs(g - (1.0 if i == j else 0.0)) < 1e-9

    def test_output_modes_orthonormal(self, gaussian_result):
        modes = gaussian_result.output_modes
        for i in range(len(modes)):
            for j in range(i, len(modes)):
                g = inner_product(modes[i], modes[j])
                assert abs(g - (1.0 if i == j else 0.0)) < 1e-9

    def test_total_power_is_frobenius_mass(self, gaussian_result):
        # sum of ALL lambda_n^2, not just the kept ones
        assert gaussian_result.total_power == pytest.approx(0.5, rel=1e-6)
        kept = np.sum(gaussian_result.singular_values**2)
        assert kept <= gaussian_result.total_power + 1e-12

    def test_matches_analytic_singulars(self, gaussian_result):
        sv = gaussian_singular_values(0.5, 12)
        assert np.max(np.abs(gaussian_result.singular_values - sv)) < 1e-10

    def test_grid_report_converged(self, gaussian_result):
        rep = gaussian_result.grid_report
        assert rep.converged
        assert rep.leading_rel_change <= rep.tolerance

    def test_keep_threshold_is_relative(self):
        # float keep retains modes with s_n >= keep * s_0; the BT=0.5 ladder
        # decays by u = sqrt(2) - 1 per index, so 0.25 keeps exactly two
        res = decompose_filter(gaussian_sif(0.5, 1.0), keep=0.25)
        assert len(res.singular_values) == 2
        ratio = res.singular_values[1] / res.singular_values[0]
        assert ratio == pytest.approx(np.sqrt(2.0) - 1.0, rel=1e-10)


class TestFixedGrid:
    def test_rectangular_fixed_grid_total_power(self):
        ff = rectangular_sif(0.8, 1.0)
        rows, cols = recommended_axes(ff, resolution=512)
        res = schmidt_decompose(build_operator(ff, rows, cols), keep=16)
        assert res.total_power == pytest.approx(0.8, rel=1e-12)

    def test_rectangular_self_convergence_unreachable(self):
        # brick-wall kernels converge at trapezoid rate, far from the 1e-8
        # stabilization demanded of the adaptive path; it must say so
        with pytest.raises(ConvergenceError):
            decompose_filter(rectangular_sif(0.8, 1.0), keep=8, max_resolution=1024)

    def test_mode_axes_follow_operator(self):
        ff = rectangular_sif(0.8, 1.0)
        rows, cols = recommended_axes(ff, resolution=256)
        res = schmidt_decompose(build_operator(ff, rows, cols), keep=4)
        for m in res.input_modes:
            assert m.axis.close_to(cols)
        for m in res.output_modes:
            assert m.axis.close_to(rows)


class TestKernelAlgebra:
    def test_reconstruct_kernel_matches_operator(self):
        spec = gaussian_sif(0.5, 1.0)
        rows, cols = recommended_axes(spec, resolution=256)
        op = build_operator(spec, rows, cols)
        res = schmidt_decompose(op, keep=24)
        approx = reconstruct_kernel(res)
        err = np.linalg.norm(op.entries - approx.entries) / np.linalg.norm(op.entries)
        assert err < 1e-8

    def test_projection_coefficients(self, gaussian_result):
        # feeding mode n back in: the only surviving coefficient is n's
        sig = gaussian_result.input_modes[2]
        for n in range(5):
            coeff = project_onto_input_mode(gaussian_result, n, sig)
            assert abs(coeff - (1.0 if n == 2 else 0.0)) < 1e-8

    def test_filter_action_through_modes(self):
        # energy of filtered mode n equals lambda_n^2; decompose on an
        # FFT-centered time grid so apply_filter accepts the modes directly
        from tffilter.core import apply_filter, centered_axis
        from tffilter.core import Domain

        spec = gaussian_sif(0.5, 1.0)
        ax = centered_axis(24.0 / 1024, 1024, Domain.TIME)
        res = schmidt_decompose(build_operator(spec, ax, ax), keep=6)
        for n in (0, 1, 3):
            out = apply_filter(spec, res.input_modes[n])
            lam = res.singular_values[n]
            assert out.energy() == pytest.approx(lam**2, rel=1e-6)
