import math

import numpy as np
import pytest

import orlicztf as o
from conftest import gaussian_window, noise_field


def test_axis_lattice_contract():
    g = o.make_grid(256, 12.0)
    ax = g.axes[0]
    dx = 2 * 12.0 / 256
    xs = ax.points if isinstance(ax.points, np.ndarray) else ax.points()
    assert abs(xs[0] - (-12.0)) < 1e-14
    assert abs(xs[1] - xs[0] - dx) < 1e-14
    assert abs(g.weight - dx) < 1e-15

    dual = ax.dual()
    xis = dual.points if isinstance(dual.points, np.ndarray) else dual.points()
    assert abs(xis[128]) < 1e-14  # zero frequency sits at n/2
    assert abs(xis[1] - xis[0] - math.pi / 12.0) < 1e-14


def test_phase_grid_weight_and_shape():
    g = o.make_grid(64, 8.0)
    pg = o.phase_grid(g)
    assert pg.shape == (64, 64)
    assert abs(pg.weight - (2 * 8.0 / 64) * (math.pi / 8.0)) < 1e-15
    assert pg.roles == ("x", "xi")


def test_fourier_transform_unitary_and_invertible(grid256):
    f = noise_field(grid256, 5)
    ft = o.fourier_transform(f)
    assert abs(o.l2_norm(ft) - o.l2_norm(f)) < 1e-12 * o.l2_norm(f)
    back = o.inverse_fourier_transform(ft)
    assert np.max(np.abs(back.values - f.values)) < 1e-12


def test_parseval_pairing(grid256):
    f, g = noise_field(grid256, 1), noise_field(grid256, 2)
    lhs = o.inner_product(f, g)
    rhs = o.inner_product(o.fourier_transform(f), o.fourier_transform(g))
    assert abs(lhs - rhs) < 1e-12 * abs(lhs)


def test_gaussian_is_fourier_eigenvector(grid256):
    f = o.fourier_transform(gaussian_window(grid256, 1.0))
    ref = gaussian_window(f.grid, 1.0)
    assert np.max(np.abs(f.values - ref.values)) < 1e-12


def test_gaussian_width_inverts_under_fourier(grid256):
    ft = o.fourier_transform(gaussian_window(grid256, 2.0))
    ref = gaussian_window(ft.grid, 0.5)
    scale = np.max(np.abs(ref.values))
    assert np.max(np.abs(ft.values - ref.values)) / scale < 1e-12


def test_gaussians_are_normalized(grid256):
    for lam in (0.5, 1.0, 3.0):
        assert abs(o.l2_norm(gaussian_window(grid256, lam)) - 1.0) < 1e-8


def test_hermite_orthonormal(grid256):
    hs = [o.make_hermite(grid256, n) for n in range(6)]
    gram = np.array([[o.inner_product(a, b) for b in hs] for a in hs])
    assert np.max(np.abs(gram - np.eye(6))) < 1e-10


def test_bandlimited_band_respected(grid256):
    f = o.make_random_bandlimited(grid256, 3, band=5.0)
    ft = o.fourier_transform(f)
    xis = ft.grid.axes[0].points if isinstance(ft.grid.axes[0].points, np.ndarray) \
        else ft.grid.axes[0].points()
    outside = np.abs(xis) > 5.0 + 1e-9
    assert np.max(np.abs(ft.values[outside])) < 1e-12 * np.max(np.abs(ft.values))


def test_mix_deterministic(grid128):
    a = o.make_gaussian_mix(grid128, 11)
    b = o.make_gaussian_mix(grid128, 11)
    c = o.make_gaussian_mix(grid128, 12)
    assert np.array_equal(a.values, b.values)
    assert not np.array_equal(a.values, c.values)


def test_mix_samples_one_function_across_resolutions():
    a = o.make_gaussian_mix(o.make_grid(128, 12.0), 7)
    b = o.make_gaussian_mix(o.make_grid(256, 12.0), 7)
    assert np.max(np.abs(b.values[::2] - a.values)) < 1e-12


@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_save_load_round_trip(tmp_path, grid64, fmt):
    f = noise_field(grid64, 9)
    path = str(tmp_path / f"field.{fmt}")
    (o.save_csv if fmt == "csv" else o.save_json)(f, path)
    back = (o.load_csv if fmt == "csv" else o.load_json)(path)
    assert back.grid.matches(f.grid)
    assert np.max(np.abs(back.values - f.values)) == 0.0


@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_save_load_phase_field(tmp_path, grid64, fmt):
    F = o.stft(o.make_gaussian_mix(grid64, 4), gaussian_window(grid64))
    path = str(tmp_path / f"phase.{fmt}")
    (o.save_csv if fmt == "csv" else o.save_json)(F, path)
    back = (o.load_csv if fmt == "csv" else o.load_json)(path)
    assert back.grid.matches(F.grid)
    assert back.grid.roles == F.grid.roles
    assert np.max(np.abs(back.values - F.values)) == 0.0


def test_grid_mismatch_raises(grid64, grid128):
    with pytest.raises(ValueError):
        o.inner_product(noise_field(grid64, 0), noise_field(grid128, 0))


def test_worker_count_env(monkeypatch):
    monkeypatch.delenv("ORLICZ_TF_THREADS", raising=False)
    assert o.worker_count() == 1
    monkeypatch.setenv("ORLICZ_TF_THREADS", "4")
    assert o.worker_count() == 4
