"""Time-frequency transforms: STFT and adjoint, projection, twisted
convolution, parameterized Wigner distributions, quantization change.

Conventions: V_phi f(x, xi) = (2pi)^(-d/2) integral f(y) conj(phi(y - x))
exp(-i<y, xi>) dy, realized on the grid with periodic window translates.
The Wigner family W^A with A = tI evaluates f1(x + t y) conj(f2(x + (t-1) y))
and transforms in y; off-grid arguments use trigonometric interpolation
(exact half-shift upsampling at t = 1/2, spectral evaluation otherwise).
All phases are computed from coordinate values, not indices, which keeps
them consistent under periodic wraparound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .field import (
    Field,
    Grid,
    _centered_fft,
    fourier_transform,
    inverse_fourier_transform,
    l2_norm,
    phase_grid,
)


@dataclass(frozen=True)
class QuantizationMatrix:
    """Scalar multiple of the identity, A = t I with t in [0, 1]."""

    t: float

    def __post_init__(self):
        if not (0.0 <= self.t <= 1.0):
            raise ValueError("quantization parameter must lie in [0, 1]")

    @staticmethod
    def zero() -> "QuantizationMatrix":
        return QuantizationMatrix(0.0)

    @staticmethod
    def half_identity() -> "QuantizationMatrix":
        return QuantizationMatrix(0.5)

    @staticmethod
    def identity() -> "QuantizationMatrix":
        return QuantizationMatrix(1.0)

    @staticmethod
    def t_identity(t: float) -> "QuantizationMatrix":
        return QuantizationMatrix(float(t))

    @property
    def form(self) -> str:
        if self.t == 0.0:
            return "zero"
        if self.t == 0.5:
            return "half_identity"
        if self.t == 1.0:
            return "identity"
        return "t_identity"

    def matrix(self, d: int) -> np.ndarray:
        return self.t * np.eye(d)


def as_quantization(a) -> QuantizationMatrix:
    if isinstance(a, QuantizationMatrix):
        return a
    return QuantizationMatrix(float(a))


def _window_gather(window_values: np.ndarray, conjugate: bool) -> np.ndarray:
    """w[j..., k...] = window[(k - j + n/2) mod n, per axis]; the translate
    of the window to grid position x_j, sampled at x_k."""
    shape = window_values.shape
    d = len(shape)
    idx = []
    for i, n in enumerate(shape):
        jshape = [1] * (2 * d)
        jshape[i] = n
        kshape = [1] * (2 * d)
        kshape[d + i] = n
        j = np.arange(n).reshape(jshape)
        k = np.arange(n).reshape(kshape)
        idx.append((k - j + n // 2) % n)
    w = window_values[tuple(idx)]
    return np.conj(w) if conjugate else w


def stft(f: Field, window: Field) -> Field:
    """Short-time Fourier transform onto the phase grid of f's grid."""
    if not f.grid.matches(window.grid):
        raise ValueError("signal and window must share a grid")
    d = f.grid.dimension
    gathered = _window_gather(window.values, conjugate=True)
    prod = f.values.reshape((1,) * d + f.grid.shape) * gathered
    axes = tuple(range(d, 2 * d))
    scale = f.grid.weight / (2.0 * math.pi) ** (d / 2.0)
    vals = _centered_fft(prod, axes, inverse=False) * scale
    return Field(phase_grid(f.grid), vals)


def _split_phase(F: Field):
    nd = F.grid.dimension
    if nd % 2 != 0:
        raise ValueError("phase fields have an even number of axes")
    d = nd // 2
    if F.grid.roles != ("x",) * d + ("xi",) * d:
        raise ValueError("expected axis roles x...x xi...xi")
    base = Grid(F.grid.axes[:d])
    return d, base


def stft_adjoint(F: Field, window: Field) -> Field:
    """Adjoint of the STFT: g(y) = (2pi)^(-d/2) integral integral F(x, xi)
    window(y - x) exp(i<y, xi>) dx dxi, by quadrature."""
    d, base = _split_phase(F)
    if not base.matches(window.grid):
        raise ValueError("phase field does not match the window grid")
    B = inverse_fourier_transform(F, axes=tuple(range(d, 2 * d)))
    gathered = _window_gather(window.values, conjugate=False)
    vals = np.sum(gathered * B.values, axis=tuple(range(d))) * base.weight
    return Field(window.grid, vals)


def stft_projection(F: Field, window: Field) -> Field:
    """P F = |window|_2^{-2} V(V* F); reproduces STFTs taken with the window."""
    nw = l2_norm(window)
    if nw == 0.0:
        raise ValueError("projection window must be nonzero")
    out = stft(stft_adjoint(F, window), window)
    return out.with_values(out.values / nw ** 2)


def twisted_convolution(F: Field, G: Field) -> Field:
    """(F #V G)(x, xi) = (2pi)^(-d/2) integral integral F(x-y, xi-eta) G(y, eta)
    exp(-i<y, xi-eta>) dy deta, direct quadrature (one-dimensional base)."""
    d, base = _split_phase(F)
    if d != 1:
        raise ValueError("twisted convolution is implemented for a 1-d base grid")
    if not F.grid.matches(G.grid):
        raise ValueError("grid mismatch in twisted convolution")
    n = base.axes[0].n
    x = base.axes[0].points
    dxi = F.grid.axes[1].spacing
    Fv = F.values
    Gv = G.values
    j = np.arange(n)
    idx = (j[:, None] - j[None, :] + n // 2) % n
    out = np.zeros((n, n), dtype=complex)
    m = np.arange(n)
    for s in range(n):
        A = Fv[idx, s]
        ph = np.exp(-1j * x * dxi * (s - n // 2))
        B = Gv[:, (m - s + n // 2) % n] * ph[:, None]
        out += A @ B
    c = base.axes[0].spacing * dxi / math.sqrt(2.0 * math.pi)
    return Field(F.grid, out * c)


def _upsample2(vals: np.ndarray) -> np.ndarray:
    """Trigonometric interpolation onto the doubled grid (spacing halved),
    splitting the Nyquist bin so real inputs stay real."""
    n = vals.shape[0]
    F = np.fft.fft(np.fft.ifftshift(vals))
    G = np.zeros(2 * n, dtype=complex)
    G[: n // 2] = F[: n // 2]
    G[-(n // 2) + 1 :] = F[n // 2 + 1 :]
    G[n // 2] = 0.5 * F[n // 2]
    G[2 * n - n // 2] = 0.5 * F[n // 2]
    return np.fft.fftshift(np.fft.ifft(G) * 2.0)


def _eval_shifted(f: Field, c: float) -> np.ndarray:
    """E[j, l] = f(x_j + c * x_l) by spectral evaluation (periodic)."""
    n = f.grid.axes[0].n
    x = f.grid.axes[0].points
    fhat = fourier_transform(f)
    xi = fhat.grid.axes[0].points
    scale = fhat.grid.axes[0].spacing / math.sqrt(2.0 * math.pi)
    if c == 0.0:
        col = (np.exp(1j * np.outer(x, xi)) @ fhat.values) * scale
        return np.repeat(col[:, None], n, axis=1)
    out = np.empty((n, n), dtype=complex)
    for l in range(n):
        s = x + c * x[l]
        out[:, l] = (np.exp(1j * np.outer(s, xi)) @ fhat.values) * scale
    return out


def wigner(f1: Field, f2: Field, A=0.5) -> Field:
    """W^A_{f1,f2}(x, xi) = F_y[ f1(x + t y) conj(f2(x + (t-1) y)) ](xi),
    A = t I."""
    A = as_quantization(A)
    if not f1.grid.matches(f2.grid):
        raise ValueError("grid mismatch in wigner transform")
    if f1.grid.dimension != 1:
        raise ValueError("wigner transform is implemented for a 1-d base grid")
    t = A.t
    n = f1.grid.axes[0].n
    j = np.arange(n)[:, None]
    l = np.arange(n)[None, :]
    v1 = f1.values
    v2 = f2.values
    if t == 0.0:
        prod = v1[:, None] * np.conj(v2[(j - (l - n // 2)) % n])
    elif t == 1.0:
        prod = v1[(j + l - n // 2) % n] * np.conj(v2[:, None])
    elif t == 0.5:
        u1 = _upsample2(v1)
        u2 = _upsample2(v2)
        p1 = (2 * j + l - n // 2) % (2 * n)
        p2 = (2 * j - l + n // 2) % (2 * n)
        prod = u1[p1] * np.conj(u2[p2])
    else:
        prod = _eval_shifted(f1, t) * np.conj(_eval_shifted(f2, t - 1.0))
    scale = f1.grid.axes[0].spacing / math.sqrt(2.0 * math.pi)
    vals = _centered_fft(prod, (1,), inverse=False) * scale
    return Field(phase_grid(f1.grid), vals)


def quantization_change(a: Field, A1, A2) -> Field:
    """Fourier multiplier carrying the symbol for parameter A1 to the symbol
    for A2 of the same operator: hat a picks up exp(i (t1 - t2) <u, v>)."""
    A1 = as_quantization(A1)
    A2 = as_quantization(A2)
    d, _ = _split_phase(a)
    if A1.t == A2.t:
        return Field(a.grid, a.values.copy())
    ahat = fourier_transform(a)
    us = [ahat.grid.axes[i].points for i in range(d)]
    vs = [ahat.grid.axes[d + i].points for i in range(d)]
    phase = np.zeros(ahat.grid.shape)
    for i in range(d):
        sh_u = [1] * 2 * d
        sh_u[i] = len(us[i])
        sh_v = [1] * 2 * d
        sh_v[d + i] = len(vs[i])
        phase = phase + us[i].reshape(sh_u) * vs[i].reshape(sh_v)
    mult = np.exp(1j * (A1.t - A2.t) * phase)
    back = inverse_fourier_transform(ahat.with_values(ahat.values * mult))
    return Field(a.grid, back.values)
