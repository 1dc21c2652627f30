import math

import numpy as np
import pytest

import orlicztf as o
from conftest import noise_field
from orlicztf import ModulationSpaceSpec, YoungFunction


def phase_mesh(pg):
    return [np.ascontiguousarray(np.broadcast_to(v, pg.shape)) for v in pg.mesh()]


@pytest.mark.parametrize("t", [0.0, 0.3, 0.5, 1.0])
def test_flat_symbol_gives_identity(grid64, t):
    pg = o.phase_grid(grid64)
    one = o.Field(pg, np.ones(pg.shape, complex))
    K = o.kernel(one, t)
    dx = grid64.weight
    assert np.max(np.abs(K.matrix - np.eye(64) / dx)) < 1e-10 / dx
    f = o.make_gaussian_mix(grid64, 3)
    out = o.apply(one, t, f)
    assert np.max(np.abs(out.values - f.values)) < 1e-10


@pytest.mark.parametrize("t", [0.0, 0.5])
def test_pure_frequency_symbol_translates(grid64, t):
    """A symbol e^{i c xi} acts as the shift f(x) -> f(x + c)."""
    pg = o.phase_grid(grid64)
    _, XI = phase_mesh(pg)
    c = 16 * grid64.weight
    sym = o.Field(pg, np.exp(1j * c * XI).astype(complex))
    f = o.make_gaussian_mix(grid64, 5)
    out = o.apply(sym, t, f)
    ref = np.roll(f.values, -16)
    assert np.linalg.norm(out.values - ref) < 1e-10 * np.linalg.norm(ref)


@pytest.mark.parametrize("t", [0.0, 1.0])
def test_kernel_matches_oscillatory_sum(grid64, t):
    """Independent reference: the kernel row is a plain quadrature of the
    symbol against e^{i (x - y) xi}, with the row slot at x (t = 0) or at
    y (t = 1)."""
    n, L = 64, 8.0
    pg = o.phase_grid(grid64)
    a = o.make_gaussian_mix(pg, 21)
    K = o.kernel(a, t).matrix
    x = -L + (2 * L / n) * np.arange(n)
    xi = (math.pi / L) * (np.arange(n) - n // 2)
    coef = (math.pi / L) / (2 * math.pi)
    ref = np.zeros((n, n), complex)
    for j in range(n):
        for m in range(n):
            slot = j if t == 0.0 else m
            ref[j, m] = coef * np.sum(a.values[slot, :]
                                      * np.exp(1j * (x[j] - x[m]) * xi))
    assert np.max(np.abs(K - ref)) < 1e-12


def test_symmetric_kernel_uses_midpoint_slot(grid64):
    """Away from the wrap-around corners, the t = 1/2 kernel at even j + m
    samples the symbol exactly at the midpoint lattice site."""
    n, L = 64, 8.0
    pg = o.phase_grid(grid64)
    a = o.make_gaussian_mix(pg, 21)
    K = o.kernel(a, 0.5).matrix
    x = -L + (2 * L / n) * np.arange(n)
    xi = (math.pi / L) * (np.arange(n) - n // 2)
    coef = (math.pi / L) / (2 * math.pi)
    worst = 0.0
    for j in range(20, 44):
        for m in range(20, 44):
            if (j + m) % 2 == 0:
                ref = coef * np.sum(a.values[(j + m) // 2, :]
                                    * np.exp(1j * (x[j] - x[m]) * xi))
                worst = max(worst, abs(K[j, m] - ref))
    assert worst < 1e-12


def test_kernel_linear_in_symbol(grid64):
    pg = o.phase_grid(grid64)
    a, b = o.make_gaussian_mix(pg, 1), o.make_gaussian_mix(pg, 2)
    al, be = 1.3 - 0.2j, -0.7 + 0.9j
    combo = o.Field(pg, al * a.values + be * b.values)
    for t in (0.0, 0.3, 0.5):
        lhs = o.kernel(combo, t).matrix
        rhs = al * o.kernel(a, t).matrix + be * o.kernel(b, t).matrix
        assert np.max(np.abs(lhs - rhs)) < 1e-10


def test_apply_matches_kernel_matrix(grid64):
    pg = o.phase_grid(grid64)
    a = o.make_gaussian_mix(pg, 7)
    f = noise_field(grid64, 8)
    K = o.kernel(a, 0.5)
    direct = K.apply_to(f)
    via_apply = o.apply(a, 0.5, f)
    assert np.max(np.abs(direct.values - via_apply.values)) < 1e-12


def test_quantization_consistency(grid128):
    pg = o.phase_grid(grid128)
    a = o.make_gaussian_mix(pg, 9)
    f = o.make_gaussian_mix(grid128, 10)
    for t1, t2 in ((0.0, 0.5), (0.5, 1.0), (0.3, 0.7)):
        r = o.calculi_consistency(a, t1, t2, f)
        assert r["max_error"] < 1e-10


def test_reduce_symbol_resolution_invariant():
    a1 = o.make_gaussian_mix(o.phase_grid(o.make_grid(128, 12.0)), 7)
    a2 = o.make_gaussian_mix(o.phase_grid(o.make_grid(256, 12.0)), 7)
    r1, r2 = o.reduce_symbol(a1), o.reduce_symbol(a2)
    assert r1.grid.matches(r2.grid)
    assert np.max(np.abs(r1.values - r2.values)) < 1e-12


def test_reduce_symbol_requires_divisible_resolution():
    a = o.make_gaussian_mix(o.phase_grid(o.make_grid(48, 12.0)), 7)
    with pytest.raises(ValueError):
        o.reduce_symbol(a)


def test_symbol_norm_uses_reduced_field():
    spec = ModulationSpaceSpec(YoungFunction.power(2), YoungFunction.power(2))
    a1 = o.make_gaussian_mix(o.phase_grid(o.make_grid(128, 12.0)), 7)
    a2 = o.make_gaussian_mix(o.phase_grid(o.make_grid(256, 12.0)), 7)
    n1, n2 = o.symbol_norm(a1, spec), o.symbol_norm(a2, spec)
    assert abs(n1 - n2) < 1e-10 * n1


def test_operator_norm_flat_l2_uses_exact_singular_value(grid64):
    pg = o.phase_grid(grid64)
    a = o.make_gaussian_mix(pg, 21)
    p2 = YoungFunction.power(2)
    m2 = ModulationSpaceSpec(p2, p2)
    r = o.estimate_operator_norm(a, 0.5, m2, m2, trials=3, seed=1)
    assert r["method"] == "singular_value"
    K = o.kernel(a, 0.5)
    top = float(np.linalg.svd(K.matrix, compute_uv=False)[0]) * grid64.weight
    assert abs(r["lower_bound"] - top) < 1e-12 * top
    # the singular value dominates any single quotient
    f = o.make_gaussian_mix(grid64, 31)
    q = o.l2_norm(o.apply(a, 0.5, f)) / o.l2_norm(f)
    assert q <= r["lower_bound"] * (1 + 1e-10)


def test_operator_norm_random_search_path(grid64):
    pg = o.phase_grid(grid64)
    a = o.make_gaussian_mix(pg, 21)
    ent = YoungFunction.entropy()
    spec = ModulationSpaceSpec(ent, ent)
    r = o.estimate_operator_norm(a, 0.0, spec, spec, trials=3, seed=1)
    assert r["method"] == "random_search"
    assert r["lower_bound"] > 0
    assert r["trials"] == 3


def test_operator_norm_reports_symbol_ratio(grid64):
    pg = o.phase_grid(grid64)
    a = o.make_gaussian_mix(pg, 21)
    p2 = YoungFunction.power(2)
    m2 = ModulationSpaceSpec(p2, p2)
    r = o.estimate_operator_norm(a, 0.0, m2, m2, trials=2, seed=1,
                                 symbol_space=m2)
    assert r["symbol_norm"] > 0
    assert abs(r["ratio_to_symbol_norm"] - r["lower_bound"] / r["symbol_norm"]) \
        < 1e-12
