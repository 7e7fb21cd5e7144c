"""Schmidt (singular-value) decomposition of discretized filter operators.

The weighted matrix sqrt(w_r) K sqrt(w_c) from :func:`tffilter.core.build_operator`
is sent through LAPACK SVD; un-weighting the singular vectors by 1/sqrt(w)
recovers continuum mode functions normalized under the axis measure.  A
doubling refinement loop (:func:`decompose_filter`) raises the grid resolution
until the leading singular value stabilizes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .core import (
    ConvergenceError,
    OperatorMatrix,
    SampledAxis,
    SampledSignal,
    Sif,
    inner_product,
    recommended_axes,
)

__all__ = [
    "GridReport",
    "SchmidtResult",
    "schmidt_decompose",
    "decompose_filter",
    "project_onto_input_mode",
    "reconstruct_kernel",
]


@dataclass(frozen=True)
class GridReport:
    """Provenance of a converged decomposition: grids tried and the final drift."""

    resolutions: tuple[int, ...]
    leading_rel_change: float
    converged: bool
    tolerance: float
    final_rows: SampledAxis | None = None
    final_cols: SampledAxis | None = None

    @property
    def refinements(self) -> int:
        return len(self.resolutions) - 1


@dataclass(frozen=True)
class SchmidtResult:
    """Schmidt data of a filter kernel.

    ``singular_values[n]`` pairs ``output_modes[n]`` (left) with
    ``input_modes[n]`` (right): K(x, y) = sum_n s_n psi_n(x) conj(phi_n(y)).
    Modes are unit-norm under their axis measure.  The phase convention fixes
    each input mode's largest-magnitude sample to be real positive.
    """

    singular_values: np.ndarray
    output_modes: tuple[SampledSignal, ...]
    input_modes: tuple[SampledSignal, ...]
    total_power: float           # sum of ALL squared singular values, kept or not
    grid_report: GridReport | None = None

    def __post_init__(self) -> None:
        sv = np.asarray(self.singular_values, dtype=float)
        sv.setflags(write=False)
        object.__setattr__(self, "singular_values", sv)

    @property
    def kept(self) -> int:
        return len(self.singular_values)

    def truncation_residual(self) -> float:
        """sqrt of the squared singular mass outside the kept modes."""
        tail = self.total_power - float(np.sum(self.singular_values**2))
        return float(np.sqrt(max(tail, 0.0)))

    def degenerate_blocks(self, gap_tol: float = 1e-10) -> tuple[tuple[int, int], ...]:
        """Index ranges [start, end) of singular values within gap_tol * s_0.

        Within a block the individual vectors are defined only up to mixing;
        comparisons should use subspace projectors.
        """
        sv = self.singular_values
        if len(sv) == 0:
            return ()
        scale = sv[0] if sv[0] > 0 else 1.0
        blocks: list[tuple[int, int]] = []
        start = 0
        for i in range(1, len(sv) + 1):
            if i == len(sv) or sv[i - 1] - sv[i] > gap_tol * scale:
                if i - start > 1:
                    blocks.append((start, i))
                start = i
        return tuple(blocks)


def _resolve_keep(sv: np.ndarray, keep: int | float | None) -> int:
    if keep is None:
        keep = 1e-6
    if isinstance(keep, bool):
        raise TypeError("keep must be an int count, float threshold, or None")
    if isinstance(keep, (int, np.integer)):
        if keep < 1:
            raise ValueError("keep count must be >= 1")
        return min(int(keep), len(sv))
    if isinstance(keep, float):
        if not (0.0 < keep < 1.0):
            raise ValueError("keep threshold must lie in (0, 1)")
        if sv[0] == 0.0:
            return 1
        return max(1, int(np.sum(sv >= keep * sv[0])))
    raise TypeError("keep must be an int count, float threshold, or None")


def _fix_phases(u: np.ndarray, vh: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Rotate each pair so the input mode's largest-|.| sample is real positive.

    The left member of the pair absorbs the conjugate rotation, keeping
    K = U diag(s) Vh unchanged.  Degenerate singular values leave the basis
    within their block arbitrary up to mixing; the convention is still applied
    per vector so results are deterministic for a fixed LAPACK build.
    """
    u = u.copy()
    vh = vh.copy()
    for n in range(vh.shape[0]):
        row = vh[n]
        idx = int(np.argmax(np.abs(row)))
        mag = abs(row[idx])
        if mag == 0.0:
            continue
        rot = row[idx].conj() / mag
        vh[n] *= rot
        u[:, n] *= rot.conj()
    return u, vh


def schmidt_decompose(
    op: OperatorMatrix,
    keep: int | float | None = None,
    grid_report: GridReport | None = None,
) -> SchmidtResult:
    """SVD of a weighted operator matrix, un-weighted back to mode functions.

    ``keep`` selects how many pairs are retained: an int is an exact count, a
    float in (0, 1) keeps modes with s_n >= keep * s_0, and None applies the
    default relative threshold 1e-6.
    """
    u, sv, vh = scipy.linalg.svd(op.entries, full_matrices=False, lapack_driver="gesdd")
    total = float(np.sum(sv**2))
    n_keep = _resolve_keep(sv, keep)
    u, vh = _fix_phases(u[:, :n_keep], vh[:n_keep])
    sr = np.sqrt(op.rows_axis.trapezoid_weights())
    sc = np.sqrt(op.cols_axis.trapezoid_weights())
    outs = tuple(
        SampledSignal(op.rows_axis, u[:, n] / sr) for n in range(n_keep)
    )
    ins = tuple(
        SampledSignal(op.cols_axis, np.conj(vh[n]) / sc) for n in range(n_keep)
    )
    return SchmidtResult(sv[:n_keep], outs, ins, total, grid_report)


def decompose_filter(
    spec: Sif,
    keep: int | float | None = None,
    resolution: int = 256,
    max_resolution: int = 4096,
    tol: float = 1e-8,
) -> SchmidtResult:
    """Decompose a sequential filter with automatic grid refinement.

    Grids from :func:`tffilter.core.recommended_axes` are doubled until the
    leading singular value moves by less than ``tol`` (relative), then the
    final decomposition is returned with a :class:`GridReport`.
    """
    from .core import build_operator  # local import keeps module load order simple

    resolutions: list[int] = []
    prev_s0: float | None = None
    res = resolution
    while res <= max_resolution:
        rows, cols = recommended_axes(spec, res)
        op = build_operator(spec, rows, cols)
        s0 = float(scipy.linalg.svdvals(op.entries)[0])
        resolutions.append(res)
        if prev_s0 is not None:
            rel = abs(s0 - prev_s0) / max(s0, np.finfo(float).tiny)
            if rel < tol:
                report = GridReport(tuple(resolutions), rel, True, tol, rows, cols)
                return schmidt_decompose(op, keep, report)
        prev_s0 = s0
        res *= 2
    raise ConvergenceError(
        f"leading singular value did not stabilize to {tol:g} below resolution {max_resolution}"
    )


def project_onto_input_mode(result: SchmidtResult, n: int, signal: SampledSignal) -> complex:
    """Coefficient <phi_n, signal>; transmitted amplitude in pair n is s_n times this."""
    return inner_product(result.input_modes[n], signal)


def reconstruct_kernel(result: SchmidtResult) -> OperatorMatrix:
    """Weighted matrix sum_n s_n (sqrt(w) psi_n)(sqrt(w) phi_n)^dagger from kept pairs.

    Comparable entry-by-entry with the decomposed OperatorMatrix; the Frobenius
    distance to the original is bounded by ``truncation_residual()``.
    """
    rows_axis = result.output_modes[0].axis
    cols_axis = result.input_modes[0].axis
    sr = np.sqrt(rows_axis.trapezoid_weights())
    sc = np.sqrt(cols_axis.trapezoid_weights())
    k = np.zeros((rows_axis.count, cols_axis.count), dtype=complex)
    for s, psi, phi in zip(
        result.singular_values, result.output_modes, result.input_modes
    ):
        k += s * np.outer(sr * psi.values, np.conj(sc * phi.values))
    return OperatorMatrix(rows_axis, cols_axis, k)
