"""Monte Carlo noise transport through a filter.

Complex white noise with two-sided power spectral density N_y enters the
filter together with a deterministic signal prepared in a single mode.  The
ensemble statistics after filtering are known in closed form,

    E[W_noise] = N_y * sum_n s_n^2,
    <y(t1) conj(y(t2))> = N_y Q(t1) conj(Q(t2)) rho(t1 - t2)   (window first),
    rho(tau) = integral |R~(w)|^2 exp(-i w tau) dw / 2pi,

and this module estimates both empirically so the closed forms can be
certified at Monte Carlo precision.

Reproducibility: trial t draws from Philox keyed by
SeedSequence(entropy=seed, spawn_key=(t,)), so any trial can be replayed in
isolation and results are independent of batching.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    Domain,
    DomainMismatchError,
    FilterSpec,
    SampledAxis,
    SampledSignal,
    Sif,
    StageOrder,
    apply_filter,
    centered_axis,
    indicator_axis,
)

__all__ = [
    "RNG_ALGORITHM",
    "NoiseEnsembleConfig",
    "EnergyReport",
    "trial_generator",
    "sample_white_noise",
    "run_ensemble",
    "CorrelationSurface",
    "filtered_noise_correlation",
]

RNG_ALGORITHM = "philox4x64"

_BATCH = 256  # trials per vectorized FFT block


def trial_generator(seed: int, trial: int) -> np.random.Generator:
    """Independent, replayable stream for one trial."""
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(trial,))
    return np.random.Generator(np.random.Philox(ss))


def sample_white_noise(
    axis: SampledAxis, noise_psd: float, rng: np.random.Generator
) -> SampledSignal:
    """Band-unlimited complex white noise on a time grid.

    Per-sample variance N_y / dt (split evenly between quadratures), so the
    discrete autocorrelation approaches N_y * delta(t - t') as dt -> 0 and
    the expected energy on the grid is N_y * span / dt * dt = N_y * count * dt
    ... i.e. N_y per unit bandwidth across the grid's full Nyquist band.
    """
    if axis.domain is not Domain.TIME:
        raise DomainMismatchError("white noise is sampled on a time axis")
    if noise_psd < 0:
        raise ValueError("noise power spectral density must be nonnegative")
    scale = np.sqrt(noise_psd / (2.0 * axis.step))
    draws = rng.standard_normal((2, axis.count))
    return SampledSignal(axis, scale * (draws[0] + 1j * draws[1]))


@dataclass(frozen=True)
class NoiseEnsembleConfig:
    """Inputs of one signal-plus-noise ensemble run."""

    noise_psd: float
    signal_energy: float
    signal_mode: SampledSignal
    trials: int
    seed: int

    def __post_init__(self) -> None:
        if self.noise_psd < 0:
            raise ValueError("noise_psd must be nonnegative")
        if self.signal_energy < 0:
            raise ValueError("signal_energy must be nonnegative")
        if self.trials < 1:
            raise ValueError("need at least one trial")
        if self.signal_mode.axis.domain is not Domain.TIME:
            raise DomainMismatchError("signal mode must live on a time axis")
        if abs(self.signal_mode.norm() - 1.0) > 1e-10:
            raise ValueError("signal mode must have unit norm (within 1e-10)")


@dataclass(frozen=True)
class EnergyReport:
    """Ensemble energy statistics behind the filter.

    ``w_total_mean`` tracks ``w_signal + w_noise_mean`` (exact in expectation;
    the signal-noise cross term averages to zero).  ``snr_empirical`` is
    w_signal / w_noise_mean, +inf for a noiseless run.
    """

    w_total_mean: float
    w_signal: float
    w_noise_mean: float
    w_noise_stderr: float
    snr_empirical: float
    trials: int
    seed: int
    rng_algorithm: str = RNG_ALGORITHM

    def as_dict(self) -> dict:
        return {
            "w_total_mean": self.w_total_mean,
            "w_signal": self.w_signal,
            "w_noise_mean": self.w_noise_mean,
            "w_noise_stderr": self.w_noise_stderr,
            "snr_empirical": self.snr_empirical,
            "trials": self.trials,
            "seed": self.seed,
            "rng_algorithm": self.rng_algorithm,
        }


def _sif_time_transport(spec: Sif, axis: SampledAxis) -> tuple[np.ndarray, ...]:
    """Precomputed factors to push batches of time-domain rows through a Sif.

    Mirrors fourier_forward / fourier_inverse from core exactly, so a row of
    the batch equals apply_filter on the same samples to machine precision.
    """
    n = axis.count
    dw = 2.0 * np.pi / (n * axis.step)
    w0 = -dw * (n // 2)
    w = w0 + dw * np.arange(n)
    k = np.arange(n)
    pre_fwd = np.exp(1j * w0 * axis.step * k)
    post_fwd = axis.step * np.exp(1j * w * axis.start)
    pre_inv = np.exp(-1j * np.arange(n) * dw * axis.start)
    post_inv = np.exp(-1j * w0 * axis.points) / (n * axis.step)
    window = spec.spectral.window(w)
    gate = spec.temporal.gate(axis.points)
    return pre_fwd, post_fwd, pre_inv, post_inv, window, gate


def _push_block(spec: Sif, factors: tuple[np.ndarray, ...], block: np.ndarray) -> np.ndarray:
    pre_fwd, post_fwd, pre_inv, post_inv, window, gate = factors
    if spec.order is StageOrder.TIME_FIRST:
        block = block * gate
    spec_vals = block.shape[-1] * np.fft.ifft(block * pre_fwd, axis=-1) * post_fwd
    spec_vals *= window
    out = np.fft.fft(spec_vals * pre_inv, axis=-1) * post_inv
    if spec.order is StageOrder.FREQUENCY_FIRST:
        out = out * gate
    return out * spec.insertion_loss


def run_ensemble(cfg: NoiseEnsembleConfig, spec: FilterSpec) -> EnergyReport:
    """Push signal + noise through the filter for cfg.trials independent trials.

    The deterministic signal is filtered once; each trial filters a fresh
    white-noise draw and records the noise energy and the total (signal plus
    noise) energy at the filter output.
    """
    axis = cfg.signal_mode.axis
    amp = np.sqrt(cfg.signal_energy)
    sig_in = SampledSignal(axis, amp * cfg.signal_mode.values)
    y_sig = apply_filter(spec, sig_in)
    w_signal = y_sig.energy()

    factors = _sif_time_transport(spec, axis) if isinstance(spec, Sif) else None
    measure = axis.measure
    w_noise = np.empty(cfg.trials)
    w_total = np.empty(cfg.trials)
    done = 0
    while done < cfg.trials:
        b = min(_BATCH, cfg.trials - done)
        rows = np.empty((b, axis.count), dtype=complex)
        scale = np.sqrt(cfg.noise_psd / (2.0 * axis.step))
        for j in range(b):
            rng = trial_generator(cfg.seed, done + j)
            draws = rng.standard_normal((2, axis.count))
            rows[j] = scale * (draws[0] + 1j * draws[1])
        if factors is not None:
            y_noise = _push_block(spec, factors, rows)
        else:
            y_noise = np.empty_like(rows)
            for j in range(b):
                y_noise[j] = apply_filter(spec, SampledSignal(axis, rows[j])).values
        w_n = np.sum(np.abs(y_noise) ** 2, axis=-1) * measure
        tot = y_noise + y_sig.values[None, :]
        w_t = np.sum(np.abs(tot) ** 2, axis=-1) * measure
        w_noise[done : done + b] = w_n
        w_total[done : done + b] = w_t
        done += b

    w_noise_mean = float(np.mean(w_noise))
    stderr = float(np.std(w_noise, ddof=1) / np.sqrt(cfg.trials)) if cfg.trials > 1 else 0.0
    snr = w_signal / w_noise_mean if w_noise_mean > 0 else float("inf")
    return EnergyReport(
        w_total_mean=float(np.mean(w_total)),
        w_signal=float(w_signal),
        w_noise_mean=w_noise_mean,
        w_noise_stderr=stderr,
        snr_empirical=snr,
        trials=cfg.trials,
        seed=cfg.seed,
    )


# ---------------------------------------------------------------------------
# two-time correlation of filtered noise


@dataclass(frozen=True)
class CorrelationSurface:
    """Empirical vs analytic <y(t + tau) conj(y(t))> on a (times, lags) grid.

    ``stderr[i, j]`` is the Monte Carlo standard error of the complex sample
    mean at that point (sqrt of total complex variance / trials), the natural
    yardstick for |empirical - analytic|.
    """

    times: np.ndarray
    lags: np.ndarray
    empirical: np.ndarray
    analytic: np.ndarray
    stderr: np.ndarray
    trials: int


def _window_power_moments(spec: Sif, resolution: int = 8193) -> tuple[np.ndarray, np.ndarray]:
    """Quadrature nodes and weights for integrals against |R~(w)|^2."""
    win = spec.spectral
    if win.compact_spectral:
        axis = indicator_axis(win.spectral_support(1e-13), resolution, Domain.ANGULAR_FREQUENCY)
        pts = axis.points
        wts = axis.trapezoid_weights() * 2.0 * np.pi  # undo the 1/2pi folded into measure
    else:
        half = win.spectral_support(1e-13)
        pts = np.linspace(-half, half, resolution)
        wts = np.full(resolution, pts[1] - pts[0])
        wts[0] *= 0.5
        wts[-1] *= 0.5
    return pts, wts * np.abs(win.window(pts)) ** 2


def _auto_correlation_axis(spec: Sif, max_reach: float) -> SampledAxis:
    """Time grid dense and wide enough for faithful correlation statistics.

    dt resolves both the window (dt <= 1/(10 B)) and the gate; the span keeps
    the FFT frequency spacing below a quarter of the spectral width of
    |R~(w)|^2, so the grid-induced correlation bias stays far below the Monte
    Carlo noise floor.
    """
    bw = spec.spectral.bandwidth_hz
    duration = spec.temporal.duration_s
    dt = min(1.0 / (10.0 * bw), duration / 8.0)
    pts, wts = _window_power_moments(spec)
    total = np.sum(wts)
    sigma_w = np.sqrt(np.sum(wts * pts**2) / total)
    span_needed = max(
        2.0 * np.pi / (sigma_w / 4.0),
        2.0 * (spec.temporal.temporal_support(1e-10) + max_reach),
    )
    count = 1 << int(np.ceil(np.log2(span_needed / dt)))
    count = max(count, 512)
    return centered_axis(dt, count, Domain.TIME)


def filtered_noise_correlation(
    spec: Sif,
    noise_psd: float,
    trials: int,
    lags: np.ndarray,
    *,
    seed: int,
    times: np.ndarray | None = None,
    axis: SampledAxis | None = None,
) -> CorrelationSurface:
    """Estimate <y(t + tau) conj(y(t))> for window-then-gate white-noise input.

    Closed form: N_y Q(t + tau) conj(Q(t)) rho(tau) with rho the inverse
    transform of |R~|^2.  Probe times default to five points across the gate
    duration; times and lags are snapped to the simulation grid so empirical
    samples need no interpolation.  At least 1000 trials are required for the
    stderr estimate to be meaningful.
    """
    if not isinstance(spec, Sif) or spec.order is not StageOrder.FREQUENCY_FIRST:
        raise ValueError("correlation analysis covers the window-then-gate composition")
    if trials < 1000:
        raise ValueError("need at least 1000 trials for stable error bars")
    if noise_psd <= 0:
        raise ValueError("noise_psd must be positive")
    lags = np.asarray(lags, dtype=float)
    if times is None:
        half = 0.5 * spec.temporal.duration_s
        times = np.linspace(-half, half, 5)
    times = np.asarray(times, dtype=float)
    reach = np.max(np.abs(times)) + np.max(np.abs(lags))
    if axis is None:
        axis = _auto_correlation_axis(spec, reach)
    if axis.domain is not Domain.TIME:
        raise DomainMismatchError("correlation runs on a time grid")

    # snap probes and lags onto the grid
    t_idx = np.rint((times - axis.start) / axis.step).astype(int)
    l_idx = np.rint(lags / axis.step).astype(int)
    if np.any(t_idx < 0) or np.any(t_idx >= axis.count):
        raise ValueError("probe times fall outside the grid")
    pair = t_idx[:, None] + l_idx[None, :]
    if np.any(pair < 0) or np.any(pair >= axis.count):
        raise ValueError("time + lag combinations fall outside the grid")
    times_g = axis.start + axis.step * t_idx
    lags_g = axis.step * l_idx

    factors = _sif_time_transport(spec, axis)
    scale = np.sqrt(noise_psd / (2.0 * axis.step))
    s1 = np.zeros((len(times_g), len(lags_g)), dtype=complex)
    s2 = np.zeros((len(times_g), len(lags_g)))
    done = 0
    while done < trials:
        b = min(_BATCH, trials - done)
        rows = np.empty((b, axis.count), dtype=complex)
        for j in range(b):
            rng = trial_generator(seed, done + j)
            draws = rng.standard_normal((2, axis.count))
            rows[j] = scale * (draws[0] + 1j * draws[1])
        y = _push_block(spec, factors, rows)
        z = y[:, pair] * np.conj(y[:, t_idx])[:, :, None]
        s1 += np.sum(z, axis=0)
        s2 += np.sum(np.abs(z) ** 2, axis=0)
        done += b

    emp = s1 / trials
    var_c = s2 / trials - np.abs(emp) ** 2
    stderr = np.sqrt(np.maximum(var_c, 0.0) / trials)

    pts, wts = _window_power_moments(spec)
    rho = (np.exp(-1j * np.outer(lags_g, pts)) @ wts) / (2.0 * np.pi)
    gate_t = spec.temporal.gate(times_g)
    gate_shift = spec.temporal.gate(times_g[:, None] + lags_g[None, :])
    analytic = (
        noise_psd
        * spec.insertion_loss**2
        * gate_shift
        * np.conj(gate_t)[:, None]
        * rho[None, :]
    )
    return CorrelationSurface(times_g, lags_g, emp, np.asarray(analytic, complex), stderr, trials)