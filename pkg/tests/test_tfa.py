import math
import warnings

import numpy as np
import pytest

import orlicztf as o
from conftest import gaussian_window, noise_field


def test_moyal_isometry(grid64):
    phi = gaussian_window(grid64)
    for seed in range(5):
        f = noise_field(grid64, seed)
        V = o.stft(f, phi)
        ref = o.l2_norm(f) * o.l2_norm(phi)
        assert abs(o.l2_norm(V) - ref) < 1e-12 * ref


def test_adjoint_inverts(grid64):
    phi = gaussian_window(grid64)
    f = noise_field(grid64, 7)
    back = o.stft_adjoint(o.stft(f, phi), phi)
    rec = o.Field(grid64, back.values / o.l2_norm(phi) ** 2)
    assert np.max(np.abs(rec.values - f.values)) < 1e-12


def test_projection_idempotent_and_reproducing(grid64):
    phi = gaussian_window(grid64)
    f = noise_field(grid64, 8)
    V = o.stft(f, phi)
    P = o.stft_projection(V, phi)
    assert np.max(np.abs(P.values - V.values)) < 1e-12
    PP = o.stft_projection(P, phi)
    assert np.max(np.abs(PP.values - P.values)) < 1e-12


def test_twisted_reproducing_and_asymmetry(grid64):
    phi = gaussian_window(grid64)
    f = o.make_gaussian_mix(grid64, 5)
    V = o.stft(f, phi)
    Vpp = o.stft(phi, phi)
    nrm = o.l2_norm(phi) ** 2
    good = o.twisted_convolution(Vpp, V)
    err = np.linalg.norm(good.values / nrm - V.values) / np.linalg.norm(V.values)
    assert err < 1e-12
    bad = o.twisted_convolution(V, Vpp)
    err_bad = np.linalg.norm(bad.values / nrm - V.values) / np.linalg.norm(V.values)
    assert err_bad > 0.1  # the product is genuinely noncommutative


def test_stft_covariance_magnitude_shift(grid64):
    phi = gaussian_window(grid64)
    f = o.make_gaussian_mix(grid64, 5)
    V = o.stft(f, phi)
    k = 9
    Vr = o.stft(o.Field(grid64, np.roll(f.values, k)), phi)
    assert np.max(np.abs(np.abs(Vr.values)
                         - np.roll(np.abs(V.values), k, axis=0))) < 1e-12


def test_wigner_real_for_weyl_pairing(grid256):
    f = o.make_gaussian_mix(grid256, 3)
    W = o.wigner(f, f, 0.5)
    assert np.max(np.abs(W.values.imag)) < 1e-10 * np.max(np.abs(W.values.real))


def test_wigner_norm_product(grid64):
    f, g = o.make_gaussian_mix(grid64, 1), o.make_gaussian_mix(grid64, 2)
    W = o.wigner(f, g, 0.5)
    got = o.l2_norm(W)
    ref = o.l2_norm(f) * o.l2_norm(g)
    assert abs(got - ref) < 1e-8 * ref


def test_quantization_change_round_trip(grid128):
    a = o.make_gaussian_mix(o.phase_grid(grid128), 9)
    for t1, t2 in ((0.0, 0.5), (0.5, 1.0), (0.0, 1.0), (0.3, 0.7)):
        b = o.quantization_change(a, t1, t2)
        back = o.quantization_change(b, t2, t1)
        assert np.max(np.abs(back.values - a.values)) < 1e-12
        assert abs(o.l2_norm(b) - o.l2_norm(a)) < 1e-10 * o.l2_norm(a)


def test_quantization_change_identity(grid128):
    a = o.make_gaussian_mix(o.phase_grid(grid128), 10)
    b = o.quantization_change(a, 0.5, 0.5)
    assert np.max(np.abs(b.values - a.values)) < 1e-14


def test_quantization_matrix_forms():
    assert o.as_quantization(0.0).form == "zero"
    assert o.as_quantization(0.5).form == "half_identity"
    assert o.as_quantization(1.0).form == "identity"
    assert o.as_quantization(0.3).form == "t_identity"
    with pytest.raises(ValueError):
        o.as_quantization(1.5)


def test_stft_of_kernel_matches_shifted_stft_of_symbol():
    """The 4-d spectrogram of an operator kernel coincides, up to index
    shear and one factor of sqrt(2 pi), with the spectrogram of its symbol
    taken against a chirped window."""
    n = 32
    g = o.make_grid(n, 8.0)
    pg = o.phase_grid(g)
    a = o.make_gaussian_mix(pg, 17)
    K = o.kernel(a, 0.0)
    kf = o.Field(o.Grid((g.axes[0], g.axes[0])), K.matrix)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        w2 = o.make_gaussian(kf.grid, 1.0)
        base = o.make_gaussian(pg, 1.0)
    X, XI = [np.ascontiguousarray(np.broadcast_to(v, pg.shape))
             for v in pg.mesh()]
    psi = o.Field(pg, np.exp(-1j * X * XI) * base.values)

    A = np.abs(o.stft(kf, w2).values)
    B = np.abs(o.stft(a, psi).values) / math.sqrt(2 * math.pi)
    J, Kk, M, N2 = np.meshgrid(*[np.arange(n)] * 4, indexing="ij")
    Bm = B[J, (n - N2) % n, (M + N2 - n // 2) % n, (Kk - J + n // 2) % n]
    assert np.linalg.norm(A - Bm) / np.linalg.norm(Bm) < 1e-6
