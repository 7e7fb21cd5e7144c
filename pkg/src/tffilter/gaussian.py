"""Gaussian spectral window + Gaussian time gate: closed-form Schmidt data.

For a Gaussian window R~(w) = exp(-w^2 / (8 pi B^2)) and Gaussian gate
Q(t) = exp(-pi t^2 / (2 T^2)) the sequential filter kernel is a Mehler kernel,
so every Schmidt quantity is analytic in the single product B*T:

    m   = 1 / (2 B T)
    u   = 1 / (sqrt(1 + m^2) + m)        (in (0, 1))
    s_n = u^(n + 1/2)                     singular values
    sum s_n^2 = u / (1 - u^2) = B T       effective mode count

and the Schmidt modes are Hermite-Gauss functions whose frequency-domain
widths alpha (input side) and beta (output side) satisfy
T^2 * alpha * beta = 2 pi B T exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    Domain,
    SampledAxis,
    SampledSignal,
    Sif,
    SpectralWindowProfile,
    StageOrder,
    TemporalGateProfile,
)

__all__ = [
    "GaussianSpectralWindow",
    "GaussianTemporalGate",
    "GaussianSif",
    "gaussian_profiles",
    "gaussian_sif",
    "mehler_u",
    "gaussian_singular_values",
    "hermite_gaussian_modes",
    "hermite_gaussian_mode_set",
    "gaussian_tradeoff",
]

_SUPPORT_TOL_DEFAULT = 1e-12


def _gauss_radius(sigma: float, tol: float) -> float:
    """Radius where exp(-x^2 / (2 sigma^2)) falls to tol."""
    return sigma * np.sqrt(2.0 * np.log(1.0 / tol))


class GaussianSpectralWindow(SpectralWindowProfile):
    """R~(w) = exp(-w^2 / (8 pi B^2)); intensity-integral bandwidth exactly B."""

    compact_spectral = False

    def __init__(self, bandwidth_hz: float) -> None:
        if bandwidth_hz <= 0:
            raise ValueError("bandwidth must be positive")
        self.bandwidth_hz = float(bandwidth_hz)
        # |R~|^2 = exp(-w^2/(4 pi B^2)): std sigma = B sqrt(2 pi), integral dw/2pi = B
        self._sigma_w = 2.0 * bandwidth_hz * np.sqrt(np.pi)  # amplitude 1/e^(1/2) width

    def window(self, omega: np.ndarray) -> np.ndarray:
        x = np.asarray(omega, dtype=float)
        return np.exp(-(x**2) / (8.0 * np.pi * self.bandwidth_hz**2))

    def response(self, t: np.ndarray) -> np.ndarray:
        # inverse transform: R(t) = sqrt(2) B exp(-2 pi B^2 t^2)
        x = np.asarray(t, dtype=float)
        b = self.bandwidth_hz
        return np.sqrt(2.0) * b * np.exp(-2.0 * np.pi * b**2 * x**2)

    def spectral_support(self, tol: float = _SUPPORT_TOL_DEFAULT) -> float:
        return _gauss_radius(self._sigma_w, tol)

    def temporal_support(self, tol: float = _SUPPORT_TOL_DEFAULT) -> float:
        return _gauss_radius(1.0 / (2.0 * self.bandwidth_hz * np.sqrt(np.pi)), tol)


class GaussianTemporalGate(TemporalGateProfile):
    """Q(t) = exp(-pi t^2 / (2 T^2)); integral duration exactly T."""

    compact_temporal = False

    def __init__(self, duration_s: float) -> None:
        if duration_s <= 0:
            raise ValueError("duration must be positive")
        self.duration_s = float(duration_s)
        self._sigma_t = duration_s / np.sqrt(np.pi)

    def gate(self, t: np.ndarray) -> np.ndarray:
        x = np.asarray(t, dtype=float)
        return np.exp(-np.pi * x**2 / (2.0 * self.duration_s**2))

    def transfer(self, omega: np.ndarray) -> np.ndarray:
        # forward transform: Q~(w) = T sqrt(2) exp(-w^2 T^2 / (2 pi))
        x = np.asarray(omega, dtype=float)
        tt = self.duration_s
        return tt * np.sqrt(2.0) * np.exp(-(x**2) * tt**2 / (2.0 * np.pi))

    def temporal_support(self, tol: float = _SUPPORT_TOL_DEFAULT) -> float:
        return _gauss_radius(self._sigma_t, tol)

    def spectral_support(self, tol: float = _SUPPORT_TOL_DEFAULT) -> float:
        return _gauss_radius(np.sqrt(np.pi) / self.duration_s, tol)


def gaussian_profiles(
    bandwidth_hz: float, duration_s: float
) -> tuple[GaussianSpectralWindow, GaussianTemporalGate]:
    return GaussianSpectralWindow(bandwidth_hz), GaussianTemporalGate(duration_s)


def mehler_u(bt: float) -> float:
    """u = 1/(sqrt(1 + m^2) + m), m = 1/(2 BT); stable for both tiny and huge BT."""
    if bt <= 0:
        raise ValueError("BT product must be positive")
    m = 1.0 / (2.0 * bt)
    return 1.0 / (np.hypot(1.0, m) + m)


@dataclass(frozen=True)
class GaussianSif(Sif):
    """Gaussian + Gaussian sequential filter with its closed-form Schmidt scalars."""

    @property
    def bt(self) -> float:
        return self.spectral.bandwidth_hz * self.temporal.duration_s

    @property
    def u(self) -> float:
        return mehler_u(self.bt)

    @property
    def alpha(self) -> float:
        """Frequency-domain width scale of the input Schmidt modes."""
        b, bt = self.spectral.bandwidth_hz, self.bt
        a = 2.0 * np.sqrt(np.pi) * b * (1.0 + (2.0 * bt) ** 2) ** (-0.25)
        return a if self.order is StageOrder.FREQUENCY_FIRST else self._beta_raw

    @property
    def beta(self) -> float:
        """Frequency-domain width scale of the output Schmidt modes."""
        return self._beta_raw if self.order is StageOrder.FREQUENCY_FIRST else (
            2.0 * np.sqrt(np.pi) * self.spectral.bandwidth_hz
            * (1.0 + (2.0 * self.bt) ** 2) ** (-0.25)
        )

    @property
    def _beta_raw(self) -> float:
        t, bt = self.temporal.duration_s, self.bt
        return (np.sqrt(np.pi) / t) * (1.0 + (2.0 * bt) ** 2) ** 0.25

    def efficiency(self) -> float:
        return self.u

    def mode_discrimination(self) -> float:
        # s_0^2 / sum s_n^2 = u / (u / (1 - u^2)) = 1 - u^2
        return 1.0 - self.u**2


def gaussian_sif(
    bandwidth_hz: float,
    duration_s: float,
    order: StageOrder = StageOrder.FREQUENCY_FIRST,
    insertion_loss: float = 1.0,
) -> GaussianSif:
    window, gate = gaussian_profiles(bandwidth_hz, duration_s)
    return GaussianSif(window, gate, order, insertion_loss)


def gaussian_singular_values(sif_or_bt: GaussianSif | float, count: int) -> np.ndarray:
    """s_n = u^(n + 1/2) for n = 0 .. count-1; partial square sums converge to BT."""
    if count < 1:
        raise ValueError("count must be >= 1")
    bt = sif_or_bt.bt if isinstance(sif_or_bt, GaussianSif) else float(sif_or_bt)
    u = mehler_u(bt)
    n = np.arange(count)
    return u ** (n + 0.5)


def _hermite_rows(x: np.ndarray, n_max: int) -> np.ndarray:
    """Orthonormal Hermite functions h_0..h_n_max on x (weight e^{-x^2/2} built in)."""
    rows = np.empty((n_max + 1, len(x)))
    rows[0] = np.pi**-0.25 * np.exp(-(x**2) / 2.0)
    if n_max >= 1:
        rows[1] = np.sqrt(2.0) * x * rows[0]
    for k in range(2, n_max + 1):
        rows[k] = np.sqrt(2.0 / k) * x * rows[k - 1] - np.sqrt((k - 1) / k) * rows[k - 2]
    return rows


def hermite_gaussian_mode_set(
    spec: GaussianSif, axis: SampledAxis, count: int, side: str
) -> tuple[SampledSignal, ...]:
    """Closed-form Schmidt modes 0..count-1 of one side, sampled on ``axis``.

    ``side`` is "input" or "output".  On a frequency axis mode n is
    sqrt(2 pi / a) * h_n(w / a) with a the side's width scale; on a time axis
    the same functions acquire the inverse-transform factor (-i)^n.  Modes are
    unit-norm under the axis measure; the recurrence is stable to n = 60.
    """
    if side not in ("input", "output"):
        raise ValueError("side must be 'input' or 'output'")
    if count < 1:
        raise ValueError("count must be >= 1")
    if count - 1 > 60:
        raise ValueError("Hermite recurrence overflow guard: mode index above 60")
    scale_w = spec.alpha if side == "input" else spec.beta
    pts = axis.points
    if axis.domain is Domain.ANGULAR_FREQUENCY:
        half_span_needed = 6.0 * scale_w
        rows = _hermite_rows(pts / scale_w, count - 1)
        rows = rows * np.sqrt(2.0 * np.pi / scale_w)
        phases = np.ones(count, dtype=complex)
    else:
        # inverse transform of sqrt(2 pi / a) h_n(w / a) is sqrt(a) (-i)^n h_n(a t)
        half_span_needed = 6.0 / scale_w
        rows = _hermite_rows(pts * scale_w, count - 1)
        rows = rows * np.sqrt(scale_w)
        phases = (-1j) ** np.arange(count)
    if axis.start > -half_span_needed or axis.stop < half_span_needed:
        raise ValueError(
            f"axis must span at least +-{half_span_needed:g} to hold these modes"
        )
    out = []
    for n in range(count):
        vals = phases[n] * rows[n].astype(complex)
        sig = SampledSignal(axis, vals)
        nrm = sig.norm()
        if abs(nrm - 1.0) > 1e-6:
            raise ValueError(
                f"axis does not resolve mode {n} (norm {nrm:.6f}); widen or refine the grid"
            )
        out.append(SampledSignal(axis, vals / nrm))
    return tuple(out)


def hermite_gaussian_modes(
    spec: GaussianSif, n: int, axis: SampledAxis
) -> tuple[SampledSignal, SampledSignal]:
    """(input mode n, output mode n) of a Gaussian sequential filter on ``axis``."""
    if n < 0:
        raise ValueError("mode index must be >= 0")
    ins = hermite_gaussian_mode_set(spec, axis, n + 1, "input")
    outs = hermite_gaussian_mode_set(spec, axis, n + 1, "output")
    return ins[n], outs[n]


def gaussian_tradeoff(bt: float | np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(efficiency, discriminativity) for the Gaussian pair: (u, 1 - u^2).

    Scalar in, scalars out; array in, arrays out.  The identities
    discriminativity = 1 - efficiency^2 and discriminativity * BT = efficiency
    hold exactly.
    """
    bts = np.asarray(bt, dtype=float)
    if np.any(bts <= 0):
        raise ValueError("all BT values must be positive")
    m = 1.0 / (2.0 * bts)
    u = 1.0 / (np.hypot(1.0, m) + m)
    eta = u
    xi = 1.0 - u**2
    if np.ndim(bt) == 0:
        return float(eta), float(xi)
    return eta, xi
