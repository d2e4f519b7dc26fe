"""Fundamental solutions of the wave and heat equations.

Real-space evaluation exists for the wave kernel only in d = 1, 2 (half of
the light-cone indicator, and the inverse square-root bump); from d = 3 on
the kernel is measure- or distribution-valued, but its spatial Fourier
transform sin(t|xi|)/|xi| is a plain function in every dimension, and that
is the only representation the moment computations need.

Besides the pointwise transforms, this module provides the closed-form lag
correlations of the time profiles s -> FG(T - s, .)(xi) on [0, T].  These
reduce every gamma-weighted double time integral in the moment pipeline to a
single integral in the lag variable, which is what makes the deterministic
quadrature oracles cheap.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import integrate

WAVE = "wave"
HEAT = "heat"

# below this value of t*r the sine product is evaluated by Gauss nodes on a
# near-polynomial integrand instead of the cancellation-prone closed form
_SMALL_PHASE = 0.5


@dataclass(frozen=True)
class KernelSpec:
    equation: str
    dimension: int

    def __post_init__(self):
        if self.equation not in (WAVE, HEAT):
            raise ValueError(f"unknown equation {self.equation!r}")
        if not (isinstance(self.dimension, int) and self.dimension >= 1):
            raise ValueError(f"dimension must be a positive integer, got {self.dimension}")


def g_fourier(spec: KernelSpec, t, r):
    """Spatial Fourier transform of the kernel at time t and radius r = |xi|.

    Wave: sin(t r)/r, continued by its even Taylor series through r = 0.
    Heat: exp(-t r^2 / 2).
    """
    t = np.asarray(t, dtype=float)
    r = np.asarray(r, dtype=float)
    if spec.equation == HEAT:
        out = np.exp(-t * r * r / 2.0)
        return out if out.ndim else float(out)
    x = t * r
    small = np.abs(x) < 1e-4
    with np.errstate(divide="ignore", invalid="ignore"):
        main = np.sin(x) / np.where(small, 1.0, r)
    x2 = x * x
    series = t * (1.0 - x2 / 6.0 * (1.0 - x2 / 20.0))
    out = np.where(small, series, main)
    return out if out.ndim else float(out)


def g_real(spec: KernelSpec, t: float, x):
    """Pointwise real-space kernel value.

    Wave kernels are functions only for d in {1, 2}; d >= 3 is rejected
    (use ``g_fourier``).  The heat kernel is a Gaussian in every dimension.
    """
    if t <= 0:
        raise ValueError("g_real requires t > 0")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    d = spec.dimension
    if x.shape[-1] != d:
        raise ValueError(f"point has dimension {x.shape[-1]}, kernel expects {d}")
    rho = float(np.linalg.norm(x))
    if spec.equation == HEAT:
        return float((2.0 * np.pi * t) ** (-d / 2.0) * np.exp(-(rho**2) / (2.0 * t)))
    if d == 1:
        return 0.5 if rho < t else 0.0
    if d == 2:
        if rho >= t:
            return 0.0
        return float(1.0 / (2.0 * np.pi * np.sqrt(t * t - rho * rho)))
    raise ValueError(
        "real-space wave kernel is distribution-valued for d >= 3; "
        "only the Fourier side is available"
    )


def fourier_identity_check(spec: KernelSpec, t: float, r: float) -> tuple[float, float]:
    """Numerically Fourier-transform the real-space wave kernel at radius r
    and compare with the closed form.  Only wave d in {1, 2} has a
    real-space kernel to transform."""
    if spec.equation != WAVE or spec.dimension not in (1, 2):
        raise ValueError("identity check requires the wave kernel with d in {1, 2}")
    if spec.dimension == 1:
        direct, _ = integrate.quad(
            lambda x: np.cos(r * x), -t, t, epsabs=1e-12, epsrel=1e-12
        )
        direct *= 0.5
    else:
        # radial transform; s = t sin(theta) removes the edge singularity
        from scipy.special import j0

        direct, _ = integrate.quad(
            lambda th: t * np.sin(th) * j0(r * t * np.sin(th)),
            0.0,
            np.pi / 2.0,
            epsabs=1e-12,
            epsrel=1e-12,
        )
    transform = g_fourier(spec, t, r)
    return direct, transform


def _gauss_sine_corr(a_len, b_shift, lo, hi, m):
    """Gauss-Legendre fallback for the sine-profile correlation when m is so
    small that the closed form cancels catastrophically.  The integrand
    (A - a)(B + u - a) sinc((A-a)m) sinc((B+u-a)m) is near-polynomial there,
    so a modest fixed rule is essentially exact."""
    nodes, weights = np.polynomial.legendre.leggauss(12)
    mid = 0.5 * (np.add.outer(hi, lo))
    half = 0.5 * (np.subtract.outer(hi, lo)) if np.ndim(hi) else 0.5 * (hi - lo)
    a = mid + half * nodes if np.ndim(hi) else 0.5 * (hi + lo) + 0.5 * (hi - lo) * nodes
    p = a_len - a
    q = b_shift - a
    xp = m * p
    xq = m * q
    prod = p * q * np.sinc(xp / np.pi) * np.sinc(xq / np.pi)
    return (hi - lo) * 0.5 * np.sum(weights * prod, axis=-1)


def sine_corr(A, B, u, m):
    """Lag correlation of wave time profiles:

        int  sin((A - a) m) sin((B - (a - u)) m) da
    over a in [max(0, u), min(A, B + u)] (zero when empty), i.e. the
    correlation at lag u of phi_A(a) = sin((A - a)m) 1_[0,A](a) with the
    shifted phi_B.  Divides cleanly by m^2 downstream; callers pass m > 0
    (a small-phase Gauss branch keeps m -> 0 stable).

    Vectorized over any broadcastable combination of arguments.
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    u = np.asarray(u, dtype=float)
    m = np.asarray(m, dtype=float)
    lo = np.maximum(0.0, u)
    hi = np.minimum(A, B + u)
    width = hi - lo
    empty = width <= 0.0

    span = m * np.maximum(A, B)
    small = span < _SMALL_PHASE

    # closed form: product-to-sum with C = A + B + u
    C = A + B + u
    delta = B + u - A
    with np.errstate(invalid="ignore"):
        closed = 0.5 * width * np.cos(delta * m) + (
            np.sin((C - 2.0 * hi) * m) - np.sin((C - 2.0 * lo) * m)
        ) / (4.0 * np.where(m == 0.0, 1.0, m))

    if np.any(small & ~empty):
        nodes, weights = np.polynomial.legendre.leggauss(12)
        mid = 0.5 * (hi + lo)
        half = 0.5 * width
        a = mid[..., None] + half[..., None] * nodes
        p = A[..., None] - a
        q = (B + u)[..., None] - a
        mm = np.broadcast_to(m, p.shape[:-1])[..., None]
        prod = p * q * np.sinc(mm * p / np.pi) * np.sinc(mm * q / np.pi)
        gauss = half * np.sum(weights * prod, axis=-1)
        m2 = np.where(m == 0.0, 1.0, m) ** 2
        closed = np.where(small, gauss * np.broadcast_to(m, gauss.shape) ** 2, closed)

    out = np.where(empty, 0.0, closed)
    return out if out.ndim else float(out)


def sine_corr_scaled(A, B, u, m):
    """``sine_corr / m^2``, the correlation of FG profiles sin((T-a)m)/m,
    stable uniformly in m including m -> 0."""
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    u = np.asarray(u, dtype=float)
    m = np.asarray(m, dtype=float)
    lo = np.maximum(0.0, u)
    hi = np.minimum(A, B + u)
    width = hi - lo
    empty = width <= 0.0

    span = m * np.maximum(A, B)
    small = span < _SMALL_PHASE

    C = A + B + u
    delta = B + u - A
    msafe = np.where(m == 0.0, 1.0, m)
    with np.errstate(invalid="ignore"):
        closed = (
            0.5 * width * np.cos(delta * m)
            + (np.sin((C - 2.0 * hi) * m) - np.sin((C - 2.0 * lo) * m)) / (4.0 * msafe)
        ) / msafe**2

    if np.any(small & ~empty):
        nodes, weights = np.polynomial.legendre.leggauss(12)
        mid = 0.5 * (hi + lo)
        half = 0.5 * width
        a = mid[..., None] + half[..., None] * nodes
        p = A[..., None] - a
        q = (B + u)[..., None] - a
        mm = np.broadcast_to(m, np.broadcast_shapes(p.shape[:-1], m.shape) if m.ndim else p.shape[:-1])[..., None] if m.ndim else m
        if np.ndim(mm) == 0:
            arg_p = mm * p
            arg_q = mm * q
        else:
            arg_p = mm * p
            arg_q = mm * q
        prod = p * q * np.sinc(arg_p / np.pi) * np.sinc(arg_q / np.pi)
        gauss = half * np.sum(weights * prod, axis=-1)
        closed = np.where(small, gauss, closed)

    out = np.where(empty, 0.0, closed)
    return out if out.ndim else float(out)


def heat_corr(A, B, u, r):
    """Lag correlation of heat time profiles exp(-(T - a) r^2 / 2):

        int exp(-(A - a) r^2/2) exp(-(B - a + u) r^2/2) da
    over a in [max(0, u), min(A, B + u)]."""
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    u = np.asarray(u, dtype=float)
    r = np.asarray(r, dtype=float)
    lo = np.maximum(0.0, u)
    hi = np.minimum(A, B + u)
    width = hi - lo
    empty = width <= 0.0
    s = r * r
    C = A + B + u
    small = s * np.maximum(A, B) < 1e-7
    ssafe = np.where(s == 0.0, 1.0, s)
    # int exp(-(C - 2a) s / 2) da = [exp(-(C-2a)s/2)] / s
    val = (np.exp(-(C - 2.0 * hi) * ssafe / 2.0) - np.exp(-(C - 2.0 * lo) * ssafe / 2.0)) / ssafe
    val = np.where(small, width, val)
    out = np.where(empty, 0.0, val)
    return out if out.ndim else float(out)
