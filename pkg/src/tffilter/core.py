"""Grids, Fourier conventions, filter specifications, and integral-operator assembly.

Conventions
-----------
Forward transform:  f~(w) = integral dt exp(+i w t) f(t)
Inverse transform:  f(t)  = integral dw/(2 pi) exp(-i w t) f~(w)

Every frequency-axis integral carries the measure dw/(2 pi), so signal energy,
inner products, and bandwidths agree between domains without stray 2 pi
factors (Parseval holds to machine precision on matched grids).

A filter is one of four specifications:

* ``SpectralWindow``    -- pointwise multiplication by R~(w) in frequency,
* ``TemporalGate``      -- pointwise multiplication by Q(t) in time,
* ``Sif``               -- the two above composed in a declared order
                           (a sequential incoherent filter),
* ``SeparableCoherent`` -- a rank-one projector onto a single mode pair.

``build_operator`` renders any of them as a dense Nystrom matrix with
trapezoid quadrature weights folded in symmetrically (sqrt(w) K sqrt(w)), so
that matrix singular values approximate the operator's Schmidt coefficients.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, replace
from typing import Union

import numpy as np

TWO_PI = 2.0 * np.pi

__all__ = [
    "Domain",
    "SampledAxis",
    "SampledSignal",
    "SpectralWindowProfile",
    "TemporalGateProfile",
    "StageOrder",
    "SpectralWindow",
    "TemporalGate",
    "SeparableCoherent",
    "Sif",
    "FilterSpec",
    "OperatorMatrix",
    "DomainMismatchError",
    "ResolutionError",
    "TruncationError",
    "TruncationWarning",
    "ConvergenceError",
    "centered_axis",
    "frequency_axis_for",
    "indicator_axis",
    "inner_product",
    "fourier_forward",
    "fourier_inverse",
    "apply_filter",
    "build_operator",
    "gram_kernel",
    "compose_order_swap",
    "recommended_axes",
]


class Domain(enum.Enum):
    """Axis domain: samples live either in time or in angular frequency."""

    TIME = "time"
    ANGULAR_FREQUENCY = "angular_frequency"


class DomainMismatchError(ValueError):
    """Operation received a signal or axis in an incompatible domain."""


class ResolutionError(ValueError):
    """Grid too coarse or too narrow for the requested filter operation."""


class TruncationError(ValueError):
    """Kernel carries non-negligible weight just outside the grid."""


class TruncationWarning(UserWarning):
    """Kernel tail just outside the grid is small but not negligible."""


class ConvergenceError(RuntimeError):
    """Grid refinement failed to stabilize the requested quantity."""


# ---------------------------------------------------------------------------
# axes and signals


@dataclass(frozen=True)
class SampledAxis:
    """Uniform sample grid ``start + step * arange(count)`` in one domain.

    The quadrature measure per sample is ``step`` on time axes and
    ``step / (2 pi)`` on angular-frequency axes.
    """

    start: float
    step: float
    count: int
    domain: Domain

    def __post_init__(self) -> None:
        if not np.isfinite(self.start):
            raise ValueError("axis start must be finite")
        if not (self.step > 0 and np.isfinite(self.step)):
            raise ValueError("axis step must be positive and finite")
        if self.count < 2:
            raise ValueError("axis needs at least two samples")

    @property
    def points(self) -> np.ndarray:
        return self.start + self.step * np.arange(self.count)

    @property
    def stop(self) -> float:
        return self.start + self.step * (self.count - 1)

    @property
    def span(self) -> float:
        return self.step * (self.count - 1)

    @property
    def measure(self) -> float:
        """Quadrature measure per sample (dt, or dw/2pi)."""
        if self.domain is Domain.TIME:
            return self.step
        return self.step / TWO_PI

    def trapezoid_weights(self) -> np.ndarray:
        w = np.full(self.count, self.measure)
        w[0] *= 0.5
        w[-1] *= 0.5
        return w

    def close_to(self, other: "SampledAxis", rtol: float = 1e-9) -> bool:
        scale = max(abs(self.start), abs(self.stop), self.step)
        return (
            self.domain is other.domain
            and self.count == other.count
            and abs(self.start - other.start) <= rtol * scale
            and abs(self.step - other.step) <= rtol * self.step
        )


def centered_axis(step: float, count: int, domain: Domain) -> SampledAxis:
    """Symmetric axis containing 0, laid out FFT-style: start = -step*(count//2)."""
    return SampledAxis(-step * (count // 2), step, count, domain)


def frequency_axis_for(time_axis: SampledAxis) -> SampledAxis:
    """Reciprocal angular-frequency axis with dw = 2 pi / (count * dt)."""
    if time_axis.domain is not Domain.TIME:
        raise DomainMismatchError("expected a time axis")
    n = time_axis.count
    dw = TWO_PI / (n * time_axis.step)
    return SampledAxis(-dw * (n // 2), dw, n, Domain.ANGULAR_FREQUENCY)


def indicator_axis(half_width: float, count: int, domain: Domain, pad: int = 1) -> SampledAxis:
    """Axis for an indicator of half-width ``a``: samples land exactly on +-a.

    ``count`` interior samples cover [-a, a]; ``pad`` extra samples are added
    outside each edge so the jump sits strictly inside the grid and trapezoid
    quadrature of the indicator is exact.
    """
    if half_width <= 0:
        raise ValueError("half_width must be positive")
    if count < 3:
        raise ValueError("need at least three samples across the support")
    step = 2.0 * half_width / (count - 1)
    return SampledAxis(-half_width - pad * step, step, count + 2 * pad, domain)


@dataclass(frozen=True)
class SampledSignal:
    """Complex samples on a :class:`SampledAxis`."""

    axis: SampledAxis
    values: np.ndarray

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != (self.axis.count,):
            raise ValueError("values length must match axis count")
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def energy(self) -> float:
        """Riemann-sum energy: sum |v|^2 dt, or sum |v|^2 dw/2pi."""
        return float(np.sum(np.abs(self.values) ** 2) * self.axis.measure)

    def norm(self) -> float:
        return float(np.sqrt(self.energy()))

    def normalized(self) -> "SampledSignal":
        nrm = self.norm()
        if nrm == 0:
            raise ValueError("cannot normalize the zero signal")
        return SampledSignal(self.axis, self.values / nrm)


def inner_product(f: SampledSignal, g: SampledSignal) -> complex:
    """<f, g> = sum conj(f) g under the axis measure (f conjugated)."""
    if not f.axis.close_to(g.axis):
        raise DomainMismatchError("inner product requires matching axes")
    return complex(np.vdot(f.values, g.values) * f.axis.measure)


# ---------------------------------------------------------------------------
# Fourier transforms


def fourier_forward(signal: SampledSignal) -> SampledSignal:
    """f~(w_m) = dt * sum_k exp(+i w_m t_k) f(t_k) on the reciprocal frequency axis."""
    ax = signal.axis
    if ax.domain is not Domain.TIME:
        raise DomainMismatchError("fourier_forward expects a time-domain signal")
    n = ax.count
    freq = frequency_axis_for(ax)
    k = np.arange(n)
    pre = signal.values * np.exp(1j * freq.start * ax.step * k)
    spec = n * np.fft.ifft(pre)
    spec *= ax.step * np.exp(1j * freq.points * ax.start)
    return SampledSignal(freq, spec)


def fourier_inverse(signal: SampledSignal, time_axis: SampledAxis | None = None) -> SampledSignal:
    """f(t_k) = sum_m dw/(2 pi) exp(-i w_m t_k) f~(w_m).

    With ``time_axis=None`` the canonical centered time grid with
    dt = 2 pi / (count * dw) is used; a caller-supplied axis must satisfy the
    same reciprocity relation (it fixes the sample positions, e.g. to undo a
    forward transform taken from a non-centered grid).
    """
    ax = signal.axis
    if ax.domain is not Domain.ANGULAR_FREQUENCY:
        raise DomainMismatchError("fourier_inverse expects a frequency-domain signal")
    n = ax.count
    dt = TWO_PI / (n * ax.step)
    if time_axis is None:
        time_axis = SampledAxis(-dt * (n // 2), dt, n, Domain.TIME)
    else:
        if time_axis.domain is not Domain.TIME or time_axis.count != n:
            raise DomainMismatchError("target time axis incompatible with spectrum")
        if abs(time_axis.step - dt) > 1e-9 * dt:
            raise ResolutionError("target time axis violates dw*dt = 2 pi / count")
    m = np.arange(n)
    pre = signal.values * np.exp(-1j * m * ax.step * time_axis.start)
    vals = np.fft.fft(pre)
    vals *= np.exp(-1j * ax.start * time_axis.points) / (n * time_axis.step)
    return SampledSignal(time_axis, vals)


# ---------------------------------------------------------------------------
# filter profiles (concrete families live in gaussian.py / slepian.py)


class SpectralWindowProfile:
    """Stationary spectral window R~(w), peak-normalized to max |R~| = 1.

    Subclasses provide the window, its time-domain impulse response
    R(t) = inverse transform of R~, the intensity-integral bandwidth
    B = integral |R~(w)|^2 dw/2pi (in Hz), and support radii.  ``compact_spectral``
    marks windows that vanish identically outside a finite band.
    """

    bandwidth_hz: float
    compact_spectral: bool = False

    def window(self, omega: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def response(self, t: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def spectral_support(self, tol: float = 1e-12) -> float:
        """Radius r with |R~(w)| <= tol for |w| > r."""
        raise NotImplementedError

    def temporal_support(self, tol: float = 1e-12) -> float:
        """Radius r with |R(t)| <= tol * |R(0)| for |t| > r (may be inf)."""
        raise NotImplementedError


class TemporalGateProfile:
    """Time gate Q(t), peak-normalized to max |Q| = 1.

    Subclasses provide the gate, its transfer function Q~(w) = forward
    transform of Q, the integral duration T = integral |Q(t)|^2 dt (in s), and
    support radii.  ``compact_temporal`` marks gates that vanish identically
    outside a finite interval.
    """

    duration_s: float
    compact_temporal: bool = False

    def gate(self, t: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def transfer(self, omega: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def temporal_support(self, tol: float = 1e-12) -> float:
        raise NotImplementedError

    def spectral_support(self, tol: float = 1e-12) -> float:
        raise NotImplementedError


# ---------------------------------------------------------------------------
# filter specifications


class StageOrder(enum.Enum):
    """Composition order of a sequential incoherent filter."""

    FREQUENCY_FIRST = "frequency_first"  # spectral window acts on the input, gate on the result
    TIME_FIRST = "time_first"            # gate acts on the input, spectral window on the result


def _check_loss(loss: float) -> None:
    if not (0.0 < loss <= 1.0):
        raise ValueError("insertion_loss must lie in (0, 1]")


@dataclass(frozen=True)
class SpectralWindow:
    profile: SpectralWindowProfile
    insertion_loss: float = 1.0

    def __post_init__(self) -> None:
        _check_loss(self.insertion_loss)


@dataclass(frozen=True)
class TemporalGate:
    profile: TemporalGateProfile
    insertion_loss: float = 1.0

    def __post_init__(self) -> None:
        _check_loss(self.insertion_loss)


@dataclass(frozen=True)
class SeparableCoherent:
    """Rank-one filter: output = weight * psi0 * <phi0, input>."""

    output_mode: SampledSignal
    input_mode: SampledSignal
    weight: float
    insertion_loss: float = 1.0

    def __post_init__(self) -> None:
        _check_loss(self.insertion_loss)
        if not (0.0 <= self.weight <= 1.0):
            raise ValueError("weight must lie in [0, 1]")
        for mode in (self.output_mode, self.input_mode):
            if abs(mode.energy() - 1.0) > 1e-8:
                raise ValueError("coherent filter modes must be unit-norm")


@dataclass(frozen=True)
class Sif:
    """Sequential incoherent filter: spectral window and time gate in a declared order."""

    spectral: SpectralWindowProfile
    temporal: TemporalGateProfile
    order: StageOrder = StageOrder.FREQUENCY_FIRST
    insertion_loss: float = 1.0

    def __post_init__(self) -> None:
        _check_loss(self.insertion_loss)


FilterSpec = Union[SpectralWindow, TemporalGate, SeparableCoherent, Sif]


def compose_order_swap(spec: Sif) -> Sif:
    """Same stages, opposite composition order."""
    if not isinstance(spec, Sif):
        raise TypeError("compose_order_swap applies to Sif specifications")
    flipped = (
        StageOrder.TIME_FIRST
        if spec.order is StageOrder.FREQUENCY_FIRST
        else StageOrder.FREQUENCY_FIRST
    )
    return replace(spec, order=flipped)


# ---------------------------------------------------------------------------
# applying filters to signals


def _sif_bandwidth(spec: FilterSpec) -> float | None:
    if isinstance(spec, Sif):
        return spec.spectral.bandwidth_hz
    if isinstance(spec, SpectralWindow):
        return spec.profile.bandwidth_hz
    return None


def _check_grid(spec: FilterSpec, signal: SampledSignal) -> None:
    """Resolution guard: dt <= 1/(10 B) and span covering the filter support."""
    ax = signal.axis
    b_est = _sif_bandwidth(spec)
    if ax.domain is Domain.TIME:
        if b_est is not None and ax.step > 1.0 / (10.0 * b_est):
            raise ResolutionError(
                f"time step {ax.step:g} too coarse for filter bandwidth {b_est:g} Hz "
                f"(need dt <= {1.0 / (10.0 * b_est):g})"
            )
        gate = None
        if isinstance(spec, Sif):
            gate = spec.temporal
        elif isinstance(spec, TemporalGate):
            gate = spec.profile
        if gate is not None:
            if isinstance(spec, TemporalGate) and ax.step > gate.duration_s / 20.0:
                raise ResolutionError("time step too coarse to resolve the gate shape")
            r = gate.temporal_support(1e-12)
            if ax.start > -r or ax.stop < r:
                raise ResolutionError(
                    f"time span [{ax.start:g}, {ax.stop:g}] does not cover the gate support +-{r:g}"
                )
    else:
        window = None
        if isinstance(spec, Sif):
            window = spec.spectral
        elif isinstance(spec, SpectralWindow):
            window = spec.profile
        if window is not None:
            r = window.spectral_support(1e-12)
            if ax.start > -r or ax.stop < r:
                raise ResolutionError(
                    f"frequency span [{ax.start:g}, {ax.stop:g}] does not cover the window support +-{r:g}"
                )
        if b_est is not None and ax.span < 20.0 * np.pi * b_est:
            raise ResolutionError("frequency span too narrow for the filter bandwidth")


def _apply_spectral(profile: SpectralWindowProfile, signal: SampledSignal) -> SampledSignal:
    if signal.axis.domain is Domain.ANGULAR_FREQUENCY:
        return SampledSignal(signal.axis, signal.values * profile.window(signal.axis.points))
    spec = fourier_forward(signal)
    filtered = SampledSignal(spec.axis, spec.values * profile.window(spec.axis.points))
    return fourier_inverse(filtered, time_axis=signal.axis)


def _apply_temporal(profile: TemporalGateProfile, signal: SampledSignal) -> SampledSignal:
    if signal.axis.domain is Domain.TIME:
        return SampledSignal(signal.axis, signal.values * profile.gate(signal.axis.points))
    trace = fourier_inverse(signal)
    gated = SampledSignal(trace.axis, trace.values * profile.gate(trace.axis.points))
    out = fourier_forward(gated)
    if not out.axis.close_to(signal.axis):
        raise DomainMismatchError(
            "time gating of a spectrum requires a centered frequency axis "
            "(start = -step * (count // 2))"
        )
    return out


def _match_axis(signal: SampledSignal, target: SampledAxis) -> SampledSignal:
    if signal.axis.close_to(target):
        return signal
    if signal.axis.domain is target.domain:
        raise DomainMismatchError("signal grid does not match the mode grid")
    if signal.axis.domain is Domain.TIME:
        out = fourier_forward(signal)
    else:
        out = fourier_inverse(signal, time_axis=target)
    if not out.axis.close_to(target):
        raise DomainMismatchError("signal grid is not reciprocal to the mode grid")
    return out


def apply_filter(spec: FilterSpec, signal: SampledSignal) -> SampledSignal:
    """Pass ``signal`` through ``spec``; the result stays on the input's axis.

    Stages act pointwise in their own domain; domain changes use the package
    Fourier convention.  Output energy never exceeds input energy times
    insertion_loss^2 (all profiles are peak-normalized).
    """
    _check_grid(spec, signal)
    if isinstance(spec, SpectralWindow):
        out = _apply_spectral(spec.profile, signal)
    elif isinstance(spec, TemporalGate):
        out = _apply_temporal(spec.profile, signal)
    elif isinstance(spec, Sif):
        if spec.order is StageOrder.FREQUENCY_FIRST:
            out = _apply_temporal(spec.temporal, _apply_spectral(spec.spectral, signal))
        else:
            out = _apply_spectral(spec.spectral, _apply_temporal(spec.temporal, signal))
    elif isinstance(spec, SeparableCoherent):
        matched = _match_axis(signal, spec.input_mode.axis)
        coeff = spec.weight * inner_product(spec.input_mode, matched)
        out = SampledSignal(spec.output_mode.axis, coeff * spec.output_mode.values)
        out = _match_axis(out, signal.axis)
    else:
        raise TypeError(f"unknown filter specification {type(spec).__name__}")
    return SampledSignal(out.axis, out.values * spec.insertion_loss)


# ---------------------------------------------------------------------------
# dense operator assembly


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense discretization of a filter kernel with quadrature weights folded in.

    ``entries[i, j] = sqrt(w_i) K(x_i, y_j) sqrt(w_j)`` where w are trapezoid
    weights under the axis measures, so ``svd(entries)`` approximates the
    continuum Schmidt data and ``frobenius_sq`` approximates sum lambda_n^2.
    """

    rows_axis: SampledAxis
    cols_axis: SampledAxis
    entries: np.ndarray
    weights_applied: bool = True

    def __post_init__(self) -> None:
        arr = np.asarray(self.entries, dtype=complex)
        if arr.shape != (self.rows_axis.count, self.cols_axis.count):
            raise ValueError("entries shape must match (rows, cols) axis counts")
        if not np.all(np.isfinite(arr.view(float))):
            raise ValueError("operator entries must be finite")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    def frobenius_sq(self) -> float:
        return float(np.sum(np.abs(self.entries) ** 2))


def _mode_on_axis(mode: SampledSignal, axis: SampledAxis) -> np.ndarray:
    return _match_axis(mode, axis).values


def _kernel_sif(spec: Sif, rows: SampledAxis, cols: SampledAxis) -> np.ndarray:
    rp, cp = rows.points, cols.points
    freq_first = spec.order is StageOrder.FREQUENCY_FIRST
    t_dom, f_dom = Domain.TIME, Domain.ANGULAR_FREQUENCY
    if rows.domain is t_dom and cols.domain is t_dom:
        resp = spec.spectral.response(rp[:, None] - cp[None, :])
        if freq_first:
            return spec.temporal.gate(rp)[:, None] * resp
        return resp * spec.temporal.gate(cp)[None, :]
    if rows.domain is f_dom and cols.domain is f_dom:
        xfer = spec.temporal.transfer(rp[:, None] - cp[None, :])
        if freq_first:
            return xfer * spec.spectral.window(cp)[None, :]
        return spec.spectral.window(rp)[:, None] * xfer
    if rows.domain is t_dom and cols.domain is f_dom:
        if not freq_first:
            raise DomainMismatchError(
                "time-rows x frequency-cols kernel is separable only for FREQUENCY_FIRST"
            )
        phase = np.exp(-1j * np.outer(rp, cp))
        return spec.temporal.gate(rp)[:, None] * phase * spec.spectral.window(cp)[None, :]
    if freq_first:
        raise DomainMismatchError(
            "frequency-rows x time-cols kernel is separable only for TIME_FIRST"
        )
    phase = np.exp(1j * np.outer(rp, cp))
    return spec.spectral.window(rp)[:, None] * phase * spec.temporal.gate(cp)[None, :]


def _kernel_spectral(spec: SpectralWindow, rows: SampledAxis, cols: SampledAxis) -> np.ndarray:
    rp, cp = rows.points, cols.points
    if rows.domain is Domain.TIME and cols.domain is Domain.TIME:
        return spec.profile.response(rp[:, None] - cp[None, :])
    if rows.domain is Domain.TIME:
        return np.exp(-1j * np.outer(rp, cp)) * spec.profile.window(cp)[None, :]
    if cols.domain is Domain.TIME:
        return spec.profile.window(rp)[:, None] * np.exp(1j * np.outer(rp, cp))
    return None  # diagonal case handled by caller


def _kernel_temporal(spec: TemporalGate, rows: SampledAxis, cols: SampledAxis) -> np.ndarray:
    rp, cp = rows.points, cols.points
    if rows.domain is Domain.ANGULAR_FREQUENCY and cols.domain is Domain.ANGULAR_FREQUENCY:
        return spec.profile.transfer(rp[:, None] - cp[None, :])
    if rows.domain is Domain.ANGULAR_FREQUENCY:
        return np.exp(1j * np.outer(rp, cp)) * spec.profile.gate(cp)[None, :]
    if cols.domain is Domain.ANGULAR_FREQUENCY:
        return spec.profile.gate(rp)[:, None] * np.exp(-1j * np.outer(rp, cp))
    return None  # diagonal case handled by caller


def _edge_ring_check(kernel_eval, rows: SampledAxis, cols: SampledAxis, kmax: float) -> None:
    """Sample the kernel one step outside each grid edge; complain about tails.

    The ratio of the largest ring sample to the kernel maximum is a proxy for
    the truncated tail mass: above 1e-6 the discretization is refused, above
    1e-12 a warning is emitted.
    """
    if kmax == 0:
        return
    ring_rows = np.array([rows.start - rows.step, rows.stop + rows.step])
    ring_cols = np.array([cols.start - cols.step, cols.stop + cols.step])
    probe = max(
        np.max(np.abs(kernel_eval(ring_rows, cols.points))),
        np.max(np.abs(kernel_eval(rows.points, ring_cols))),
    )
    ratio = probe / kmax
    if ratio > 1e-6:
        raise TruncationError(
            f"kernel magnitude {ratio:.2e} of peak at the grid edge; widen the axes"
        )
    if ratio > 1e-12:
        warnings.warn(
            f"kernel tail {ratio:.2e} of peak at the grid edge", TruncationWarning, stacklevel=3
        )


def build_operator(spec: FilterSpec, rows: SampledAxis, cols: SampledAxis) -> OperatorMatrix:
    """Dense Nystrom discretization of the filter kernel on (rows x cols).

    Supported domain pairings: both square representations for single stages
    and Sifs, plus the mixed pairing natural to a Sif's order (time rows x
    frequency columns for FREQUENCY_FIRST, the transpose for TIME_FIRST),
    where both supports can be rendered exactly.  Pointwise stages on their
    own domain become diagonal matrices.
    """
    sw = np.sqrt(rows.trapezoid_weights())
    sc = np.sqrt(cols.trapezoid_weights())
    if isinstance(spec, SeparableCoherent):
        psi = _mode_on_axis(spec.output_mode, rows)
        phi = _mode_on_axis(spec.input_mode, cols)
        kernel = spec.weight * np.outer(psi, np.conj(phi))
        entries = sw[:, None] * kernel * sc[None, :]
    elif isinstance(spec, (SpectralWindow, TemporalGate)):
        if isinstance(spec, SpectralWindow):
            kernel = _kernel_spectral(spec, rows, cols)
            diag_vals = None
            if kernel is None:
                diag_vals = spec.profile.window(rows.points)
        else:
            kernel = _kernel_temporal(spec, rows, cols)
            diag_vals = None
            if kernel is None:
                diag_vals = spec.profile.gate(rows.points)
        if kernel is None:
            # pointwise multiplication: the delta kernel collapses to a diagonal
            if not rows.close_to(cols):
                raise DomainMismatchError("diagonal representation requires rows == cols axis")
            entries = np.diag(diag_vals.astype(complex))
        else:
            entries = sw[:, None] * kernel * sc[None, :]
    elif isinstance(spec, Sif):
        kernel = _kernel_sif(spec, rows, cols)

        def _eval(rp: np.ndarray, cp: np.ndarray) -> np.ndarray:
            return _sif_points(spec, rp, rows.domain, cp, cols.domain)

        _edge_ring_check(_eval, rows, cols, float(np.max(np.abs(kernel))))
        entries = sw[:, None] * kernel * sc[None, :]
    else:
        raise TypeError(f"unknown filter specification {type(spec).__name__}")
    return OperatorMatrix(rows, cols, entries * spec.insertion_loss)


class _PointSet:
    """Duck-typed stand-in for SampledAxis: bare points plus a domain tag."""

    def __init__(self, points: np.ndarray, domain: Domain) -> None:
        self.points = np.asarray(points, dtype=float)
        self.domain = domain


def _sif_points(
    spec: Sif, rp: np.ndarray, rdom: Domain, cp: np.ndarray, cdom: Domain
) -> np.ndarray:
    return _kernel_sif(spec, _PointSet(rp, rdom), _PointSet(cp, cdom))  # type: ignore[arg-type]


def gram_kernel(op: OperatorMatrix) -> OperatorMatrix:
    """Gram operator F^dagger F on the input side (columns) of ``op``."""
    return OperatorMatrix(
        op.cols_axis, op.cols_axis, op.entries.conj().T @ op.entries
    )


# ---------------------------------------------------------------------------
# default discretization axes


def support_axis(half_width: float, count: int, domain: Domain) -> SampledAxis:
    """Grid for a function vanishing outside (-a, a): support edges mid-cell.

    ``count`` sample cells tile (-a, a) with nodes at the cell centers, plus
    one zero-valued pad node outside each edge so trapezoid end-weights never
    touch the support.  Sums of on-support samples then integrate indicator
    profiles exactly and smooth ones at second order, and no node ever sits
    on the jump itself.
    """
    if half_width <= 0:
        raise ValueError("half_width must be positive")
    if count < 3:
        raise ValueError("need at least three cells across the support")
    step = 2.0 * half_width / count
    return SampledAxis(-half_width - 0.5 * step, step, count + 2, domain)


def recommended_axes(spec: Sif, resolution: int = 1024) -> tuple[SampledAxis, SampledAxis]:
    """(rows, cols) axes suited to the Sif's profile tails.

    Profiles compact in their own domain get exact-support mid-cell grids in
    the mixed representation; smooth profiles get a square frequency
    representation spanning the combined support radii at tolerance 1e-13.
    """
    window, gate = spec.spectral, spec.temporal
    if window.compact_spectral and gate.compact_temporal:
        t_ax = support_axis(gate.temporal_support(), resolution, Domain.TIME)
        f_ax = support_axis(window.spectral_support(), resolution, Domain.ANGULAR_FREQUENCY)
        if spec.order is StageOrder.FREQUENCY_FIRST:
            return t_ax, f_ax
        return f_ax, t_ax
    tol = 1e-13
    half = window.spectral_support(tol) + gate.spectral_support(tol)
    step = 2.0 * half / (resolution - 1)
    ax = SampledAxis(-half, step, resolution, Domain.ANGULAR_FREQUENCY)
    return ax, ax
