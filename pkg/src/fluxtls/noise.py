"""Flux-noise models: 1/f spectra, stochastic realizations and sequence filters.

Spectral conventions
--------------------
``spectral_density`` returns the symmetric two-sided density S(omega) =
a_phi/|omega| in angular frequency, normalized so that the variance in a
band is the integral of S over d omega / 2 pi (both signs), which gives
``quasistatic_sigma``.

The closed-form dephasing model used by ``predicted_dephasing_time``
weighs the same 1/f amplitude differently: the Gaussian decay exponent is

    (t / T_phi)^2 = (2 pi |d f_osc/d Phi|)^2 * a_phi * c_N * t^2,

which corresponds to a two-sided angular density of 2*pi*a_phi/|omega|
(equivalently, a_phi is the density per unit ordinary frequency, the usual
way flux-noise amplitudes are quoted at 1 Hz).  Monte Carlo runs that are
meant to reproduce that decay law must therefore draw static offsets with
``dephasing_sigma`` (a factor sqrt(2 pi) above ``quasistatic_sigma``) and
scale synthesized trajectories accordingly; the dynamics module does this
internally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from fluxtls.model import DeviceParams, flux_sensitivity

TWO_PI = 2.0 * math.pi


@dataclass
class OneOverFSpectrum:
    """1/f flux-noise spectrum: amplitude (uPhi0^2) and angular cutoffs (rad/s)."""

    a_phi: float = 1.4**2
    omega_low: float = TWO_PI * 1.0
    omega_high: float = TWO_PI * 1e9

    def __post_init__(self):
        if self.a_phi < 0:
            raise ValueError("a_phi must be non-negative")
        if not 0 < self.omega_low < self.omega_high:
            raise ValueError("cutoffs must satisfy 0 < omega_low < omega_high")


@dataclass
class WhiteTransverseChannel:
    """Frequency-flat transverse noise power at the exchange frequency (rad/s)."""

    s_perp: float = 2.8e6

    def __post_init__(self):
        if self.s_perp < 0:
            raise ValueError("s_perp must be non-negative")


@dataclass
class NoiseTrajectory:
    """Time-resolved flux-offset realization: spacing in ns, samples in uPhi0."""

    dt: float
    samples: np.ndarray

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=float)
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.samples.ndim != 1 or self.samples.size < 1:
            raise ValueError("samples must be a non-empty 1-d array")
        if not np.all(np.isfinite(self.samples)):
            raise ValueError("samples must be finite")

    @property
    def duration(self) -> float:
        return self.dt * self.samples.size

    def value_at(self, t_ns) -> np.ndarray:
        """Zero-order-hold sample at time ``t_ns`` from the trajectory start."""
        idx = np.clip((np.asarray(t_ns) / self.dt).astype(int), 0,
                      self.samples.size - 1)
        return self.samples[idx]

    def to_csv(self) -> str:
        lines = ["t_ns,dphi_uphi0"]
        t = np.arange(self.samples.size) * self.dt
        lines += [f"{ti:.10g},{xi:.10g}" for ti, xi in zip(t, self.samples)]
        return "\n".join(lines) + "\n"


def spectral_density(spec: OneOverFSpectrum, omega):
    """Two-sided 1/f density a_phi/|omega| inside the band, zero outside.

    ``omega`` in rad/s; result in uPhi0^2 s/rad.  Raises on omega = 0.
    """
    w = np.abs(np.asarray(omega, dtype=float))
    if np.any(w == 0.0):
        raise ValueError("spectral density is undefined at omega = 0")
    in_band = (w >= spec.omega_low) & (w <= spec.omega_high)
    out = np.where(in_band, spec.a_phi / w, 0.0)
    return out if out.ndim else float(out)


def quasistatic_sigma(spec: OneOverFSpectrum, omega_cut: float) -> float:
    """Static flux spread (uPhi0) of the two-sided band [omega_low, omega_cut].

    sigma^2 = (a_phi/pi) ln(omega_cut/omega_low).
    """
    if not spec.omega_low < omega_cut <= spec.omega_high:
        raise ValueError(
            f"omega_cut must lie in (omega_low, omega_high], got {omega_cut}")
    return math.sqrt(spec.a_phi / math.pi * math.log(omega_cut / spec.omega_low))


def dephasing_sigma(spec: OneOverFSpectrum, omega_cut: float) -> float:
    """Static flux spread (uPhi0) consistent with the closed-form decay law.

    sigma^2 = 2 a_phi ln(omega_cut/omega_low); see the module docstring for
    why this differs from ``quasistatic_sigma`` by sqrt(2 pi).
    """
    if not spec.omega_low < omega_cut <= spec.omega_high:
        raise ValueError(
            f"omega_cut must lie in (omega_low, omega_high], got {omega_cut}")
    return math.sqrt(2.0 * spec.a_phi * math.log(omega_cut / spec.omega_low))


def sample_quasistatic(spec: OneOverFSpectrum, omega_cut: float,
                       rng_seed) -> float:
    """One Gaussian static flux offset (uPhi0) with ``quasistatic_sigma`` spread."""
    sigma = quasistatic_sigma(spec, omega_cut)
    return float(np.random.default_rng(rng_seed).normal(0.0, sigma))


def synthesize_trajectory(spec: OneOverFSpectrum, duration: float, dt: float,
                          rng_seed) -> NoiseTrajectory:
    """Spectral synthesis of a real 1/f time series.

    Independent complex Gaussian amplitudes with variance set by the in-band
    density at each discrete frequency, inverse-transformed to ``duration/dt``
    real samples (uPhi0).  Deterministic for a fixed seed.
    """
    if dt <= 0 or duration < dt:
        raise ValueError("require duration >= dt > 0")
    n = int(round(duration / dt))
    if n < 2:
        raise ValueError("trajectory needs at least two samples")
    rng = np.random.default_rng(rng_seed)
    nbins = n // 2 + 1
    df_hz = 1.0 / (n * dt * 1e-9)
    f_hz = np.arange(nbins) * df_hz
    omega = TWO_PI * f_hz
    sigma2 = np.zeros(nbins)
    in_band = (omega >= spec.omega_low) & (omega <= spec.omega_high)
    in_band[0] = False
    # variance contribution of one positive-frequency bin of the two-sided
    # density: 2 * S(omega) * df
    sigma2[in_band] = 2.0 * spec.a_phi / omega[in_band] * df_hz
    amp = np.sqrt(sigma2)
    g1 = rng.standard_normal(nbins)
    g2 = rng.standard_normal(nbins)
    coeff = 0.5 * n * amp * (g1 - 1j * g2)
    coeff[0] = 0.0
    if n % 2 == 0:
        # real Nyquist bin enters irfft with weight 1/n, not 2/n
        coeff[-1] = n * amp[-1] * g1[-1]
    samples = np.fft.irfft(coeff, n)
    return NoiseTrajectory(dt=dt, samples=samples)


def carr_purcell_fractions(n_pulses: int) -> np.ndarray:
    """Fractional pulse positions (2k-1)/(2N) of the equally spaced sequence."""
    if n_pulses < 0:
        raise ValueError("n_pulses must be non-negative")
    if n_pulses == 0:
        return np.array([])
    k = np.arange(1, n_pulses + 1)
    return (2 * k - 1) / (2 * n_pulses)


def sequence_filter_weight(z, n_pulses: int):
    """|W(z)|^2 with z = omega*t for the equally spaced sequence.

    W(z) = sum_j (-1)^j (exp(i z u_{j+1}) - exp(i z u_j)) / (i z) over the
    free-evolution intervals delimited by the fractional pulse positions.
    For N = 0 this reduces to 4 sin^2(z/2) / z^2.
    """
    scalar = np.isscalar(z) or np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=float))
    bounds = np.concatenate(([0.0], carr_purcell_fractions(n_pulses), [1.0]))
    w = np.zeros(z.shape, dtype=complex)
    for j in range(len(bounds) - 1):
        w += (-1.0) ** j * (np.exp(1j * z * bounds[j + 1])
                            - np.exp(1j * z * bounds[j]))
    out = np.abs(w / (1j * z)) ** 2
    return float(out[0]) if scalar else out


def _filter_integral(n_pulses: int, z_low: float, z_max: float | None = None,
                     panel: float = math.pi / 4, order: int = 10) -> float:
    """Integral of |W(z)|^2 / z from z_low upward, Gauss-Legendre panels.

    A tail estimate (N+1)/z_max^2 from the mean high-frequency weight
    2(N+1)/z^2 is added; the oscillatory remainder is negligible.
    """
    if z_max is None:
        z_max = max(5000.0, 3000.0 * math.sqrt(n_pulses + 1.0))
    nodes, weights = np.polynomial.legendre.leggauss(order)
    # log-spaced panels resolve the slowly varying small-z region (the
    # integrand is log-divergent there for N = 0), linear panels resolve
    # the oscillations above z ~ 1
    z_knee = min(1.0, z_max)
    log_edges = np.geomspace(z_low, z_knee, 1 + max(1, int(
        math.ceil(20 * math.log10(z_knee / z_low))))) if z_low < z_knee else [z_low]
    n_lin = max(1, int(math.ceil((z_max - z_knee) / panel)))
    lin_edges = np.linspace(z_knee, z_max, n_lin + 1)
    edges = np.concatenate([np.asarray(log_edges)[:-1], lin_edges])
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    z = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    g = sequence_filter_weight(z, n_pulses) / z
    val = float(np.sum(g.reshape(-1, order) * weights[None, :]
                       * half[:, None]))
    return val + (n_pulses + 1) / z_max**2


def filter_coefficient(n_pulses: int, total_time: float,
                       spec: OneOverFSpectrum) -> float:
    """Dimensionless 1/f filter coefficient c_N of the pulse sequence.

    c_0 = ln(1/(omega_low t)) and c_1 = ln 2 in closed form; for N >= 2 the
    equally spaced sequence filter is integrated numerically,
    c_N = integral of |W(omega t)|^2 / (omega t) d(omega t) from omega_low*t.
    Monotonically decreasing in N at fixed t.
    """
    if total_time <= 0:
        raise ValueError("total_time must be positive")
    if n_pulses < 0:
        raise ValueError("n_pulses must be non-negative")
    t_s = total_time * 1e-9
    if n_pulses == 0:
        x = spec.omega_low * t_s
        if x >= 1.0:
            raise ValueError("free evolution longer than the noise correlation "
                             "window; c_0 undefined")
        return math.log(1.0 / x)
    if n_pulses == 1:
        return math.log(2.0)
    return _filter_integral(n_pulses, spec.omega_low * t_s)


def predicted_dephasing_time(n_pulses: int, dphi: float, total_time: float,
                             spec: OneOverFSpectrum,
                             params: DeviceParams) -> float:
    """Gaussian dephasing time T_phi,N (ns) of the closed-form 1/f model.

    1/T_phi,N = 2 pi sqrt(c_N a_phi) |d f_osc/d Phi|.  At zero flux offset
    the sensitivity vanishes and +inf is returned.  For N = 0 the time
    inside c_0 is solved self-consistently (t = T_phi,0) to 1e-3 relative.
    """
    if dphi == 0:
        return math.inf
    d_hz = abs(float(flux_sensitivity(dphi, params))) * 1e6  # Hz per uPhi0
    if d_hz == 0.0 or spec.a_phi == 0.0:
        return math.inf
    rate_per_sqrt_c = TWO_PI * math.sqrt(spec.a_phi) * d_hz  # 1/s
    if n_pulses == 0:
        t = 1e-7
        for _ in range(100):
            x = spec.omega_low * t
            if x >= 1.0:
                return math.inf
            t_new = 1.0 / (rate_per_sqrt_c * math.sqrt(math.log(1.0 / x)))
            if abs(t_new - t) <= 1e-3 * t:
                t = t_new
                break
            t = t_new
        return t * 1e9
    c = filter_coefficient(n_pulses, total_time, spec)
    return 1e9 / (rate_per_sqrt_c * math.sqrt(c))


def scaled_for_dephasing(spec: OneOverFSpectrum) -> OneOverFSpectrum:
    """Spectrum with amplitude 2*pi*a_phi, for synthesis in the decay-law convention."""
    return replace(spec, a_phi=TWO_PI * spec.a_phi)
