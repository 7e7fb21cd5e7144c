"""Filtered white noise: what survives a time-frequency filter.

Push seeded white-noise realizations through a filter and compare the
ensemble statistics with the closed forms: mean transmitted power, matched-
filter SNR, and the full two-time correlation surface.
"""

import numpy as np

from tffilter import (
    Domain,
    NoiseEnsembleConfig,
    analytic_snr,
    centered_axis,
    filtered_noise_correlation,
    gaussian_sif,
    gaussian_tradeoff,
    hermite_gaussian_mode_set,
    run_ensemble,
)

bt = 0.5
spec = gaussian_sif(bt, 1.0)
axis = centered_axis(24.0 / 2048, 2048, Domain.TIME)
target = hermite_gaussian_mode_set(spec, axis, 1, "input")[0].normalized()

cfg = NoiseEnsembleConfig(
    noise_psd=0.1,          # N_y, flat spectral density
    signal_energy=1.0,      # |A_0|^2, so energy ratio = 10
    signal_mode=target,     # best-coupled input mode of the filter
    trials=10_000,
    seed=424242,
)
rep = run_ensemble(cfg, spec)

eta, xi = gaussian_tradeoff(bt)
print(f"gaussian filter, BT = {bt}: eta = {eta:.6f}, xi = {xi:.6f}")
print(f"trials = {rep.trials}, seed = {rep.seed}, rng = {rep.rng_algorithm}")

print(f"\nmean filtered noise power  = {rep.w_noise_mean:.6f}")
print(f"prediction N_y * BT        = {0.1 * bt:.6f}")
assert abs(rep.w_noise_mean - 0.1 * bt) < 4.0 * rep.w_noise_stderr

snr_pred = analytic_snr(1.0, 0.1, xi)
print(f"\nempirical SNR              = {rep.snr_empirical:.4f}")
print(f"analytic (E/N_y) * xi      = {snr_pred:.4f}")
sigma = rep.snr_empirical * rep.w_noise_stderr / rep.w_noise_mean
assert abs(rep.snr_empirical - snr_pred) < 4.0 * sigma
print(f"agreement within {abs(rep.snr_empirical - snr_pred) / sigma:.2f} standard errors")

print("\nOnly xi of the signal-to-background ratio survives: every extra")
print("mode the filter transmits is an open window for noise.")

# two-time coherence of the filtered noise
lags = np.array([0.0, 0.5, 1.5, 4.0])
surf = filtered_noise_correlation(spec, 0.1, 4000, lags, seed=99)
sig = np.abs(surf.empirical - surf.analytic) / surf.stderr
print("\ntwo-time correlation <y(t + tau) y*(t)>, worst deviation per lag:")
for j, lag in enumerate(lags):
    print(f"  tau = {lag:4.1f}:  {np.max(sig[:, j]):.2f} sigma")
assert np.max(sig) < 5.0
print("The filter imprints its own coherence on white noise: the gate fixes")
print("the envelope in t, the window fixes the decay in tau.")
