"""Centered uniform grids, sampled complex fields, quadrature, Fourier transform.

Grids are products of centered axes x_k = -L + k*Delta with Delta = 2L/N and
N even.  The dual axis carries xi_m = (pi/L)(m - N/2); dualizing twice
returns the original axis up to rounding, and all grid compatibility checks
are tolerant to that rounding.  The Fourier transform uses the normalization
(2*pi)^(-d/2) * integral f(x) exp(-i<x, xi>) dx, realized as an FFT with
centering shifts so that it is exactly unitary on the grid.
"""

from __future__ import annotations

import json
import math
import os
import warnings
from dataclasses import dataclass

import numpy as np


def worker_count() -> int:
    """Worker cap for parallel sweeps, from ORLICZ_TF_THREADS (default 1)."""
    try:
        return max(1, int(os.environ.get("ORLICZ_TF_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class Axis:
    """Centered uniform axis with n points on [-half_extent, half_extent)."""

    n: int
    half_extent: float

    def __post_init__(self):
        if self.n <= 0 or self.n % 2 != 0:
            raise ValueError("axis point count must be positive and even")
        if not (self.half_extent > 0):
            raise ValueError("axis half-extent must be positive")

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_extent / self.n

    @property
    def points(self) -> np.ndarray:
        return -self.half_extent + self.spacing * np.arange(self.n)

    def dual(self) -> "Axis":
        return Axis(self.n, math.pi * self.n / (2.0 * self.half_extent))

    def close_to(self, other: "Axis", tol: float = 1e-12) -> bool:
        return self.n == other.n and math.isclose(
            self.half_extent, other.half_extent, rel_tol=tol
        )


@dataclass(frozen=True)
class Grid:
    """Product of centered axes; roles label each axis "x" or "xi"."""

    axes: tuple
    roles: tuple = ()

    def __post_init__(self):
        if not self.axes:
            raise ValueError("grid needs at least one axis")
        if not self.roles:
            object.__setattr__(self, "roles", ("x",) * len(self.axes))
        if len(self.roles) != len(self.axes):
            raise ValueError("one role per axis")
        if any(r not in ("x", "xi") for r in self.roles):
            raise ValueError("axis roles are 'x' or 'xi'")

    @property
    def dimension(self) -> int:
        return len(self.axes)

    @property
    def shape(self) -> tuple:
        return tuple(ax.n for ax in self.axes)

    @property
    def spacings(self) -> tuple:
        return tuple(ax.spacing for ax in self.axes)

    @property
    def weight(self) -> float:
        """Quadrature weight per sample: the product of the axis spacings."""
        w = 1.0
        for ax in self.axes:
            w *= ax.spacing
        return w

    def mesh(self) -> list:
        """Per-axis coordinate arrays shaped for broadcasting over the grid."""
        d = self.dimension
        out = []
        for i, ax in enumerate(self.axes):
            shape = [1] * d
            shape[i] = ax.n
            out.append(ax.points.reshape(shape))
        return out

    def points_stack(self) -> np.ndarray:
        """All sample coordinates, shape grid.shape + (d,)."""
        mesh = np.meshgrid(*[ax.points for ax in self.axes], indexing="ij")
        return np.stack(mesh, axis=-1)

    def matches(self, other: "Grid", tol: float = 1e-12) -> bool:
        return self.dimension == other.dimension and all(
            a.close_to(b, tol) for a, b in zip(self.axes, other.axes)
        )

    def with_dual_axes(self, which) -> "Grid":
        axes = list(self.axes)
        roles = list(self.roles)
        for i in which:
            axes[i] = axes[i].dual()
            roles[i] = "xi" if roles[i] == "x" else "x"
        return Grid(tuple(axes), tuple(roles))


def make_grid(n: int = 256, half_extent: float = 12.0, d: int = 1) -> Grid:
    return Grid((Axis(n, half_extent),) * d)


def phase_grid(base: Grid) -> Grid:
    """x-axes of the base grid followed by their dual xi-axes."""
    axes = base.axes + tuple(ax.dual() for ax in base.axes)
    roles = ("x",) * base.dimension + ("xi",) * base.dimension
    return Grid(axes, roles)


@dataclass(frozen=True)
class Field:
    """Complex samples on a grid.  Treated as immutable."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.shape != self.grid.shape:
            raise ValueError(f"values shape {v.shape} does not match grid {self.grid.shape}")
        object.__setattr__(self, "values", v)

    def with_values(self, values) -> "Field":
        return Field(self.grid, values)


def inner_product(f: Field, g: Field) -> complex:
    """<f, g> = sum f conj(g) * quadrature weight."""
    if not f.grid.matches(g.grid):
        raise ValueError("grid mismatch in inner product")
    return complex(np.vdot(g.values, f.values) * f.grid.weight)


def lp_norm(f: Field, p: float = 2.0) -> float:
    a = np.abs(f.values)
    if math.isinf(p):
        return float(a.max()) if a.size else 0.0
    return float((np.sum(a ** p) * f.grid.weight) ** (1.0 / p))


def l2_norm(f: Field) -> float:
    return float(math.sqrt(np.sum(np.abs(f.values) ** 2) * f.grid.weight))


def _centered_fft(values: np.ndarray, axes, inverse: bool) -> np.ndarray:
    sh = np.fft.ifftshift(values, axes=axes)
    if inverse:
        sh = np.fft.ifftn(sh, axes=axes)
    else:
        sh = np.fft.fftn(sh, axes=axes)
    return np.fft.fftshift(sh, axes=axes)


def fourier_transform(f: Field, axes=None) -> Field:
    """Unitary Fourier transform along the selected axes (default all)."""
    d = f.grid.dimension
    axes = tuple(range(d)) if axes is None else tuple(axes)
    scale = 1.0
    for i in axes:
        scale *= f.grid.axes[i].spacing / math.sqrt(2.0 * math.pi)
    vals = _centered_fft(f.values, axes, inverse=False) * scale
    return Field(f.grid.with_dual_axes(axes), vals)


def inverse_fourier_transform(f: Field, axes=None) -> Field:
    d = f.grid.dimension
    axes = tuple(range(d)) if axes is None else tuple(axes)
    out_grid = f.grid.with_dual_axes(axes)
    scale = 1.0
    for i in axes:
        scale *= math.sqrt(2.0 * math.pi) / out_grid.axes[i].spacing
    vals = _centered_fft(f.values, axes, inverse=True) * scale
    return Field(out_grid, vals)


# -- constructors -------------------------------------------------------------


def make_gaussian(grid: Grid, lam: float = 1.0, x0=None, xi0=None) -> Field:
    """pi^(-d/4) lam^(d/4) exp(-lam|x - x0|^2 / 2) exp(i <x, xi0>)."""
    if lam <= 0:
        raise ValueError("gaussian width parameter must be positive")
    d = grid.dimension
    x0 = np.zeros(d) if x0 is None else np.broadcast_to(np.atleast_1d(x0), (d,))
    xi0 = np.zeros(d) if xi0 is None else np.broadcast_to(np.atleast_1d(xi0), (d,))
    eff = min(ax.half_extent - abs(c) for ax, c in zip(grid.axes, x0))
    if eff <= 0 or math.exp(-lam * eff * eff / 2.0) > 1e-12:
        warnings.warn("gaussian tail is not resolved by this grid", stacklevel=2)
    mesh = grid.mesh()
    expo = np.zeros(grid.shape, dtype=complex)
    for i in range(d):
        expo = expo - 0.5 * lam * (mesh[i] - x0[i]) ** 2 + 1j * xi0[i] * mesh[i]
    amp = math.pi ** (-d / 4.0) * lam ** (d / 4.0)
    return Field(grid, amp * np.exp(expo))


def make_hermite(grid: Grid, n: int) -> Field:
    """n-th orthonormal Hermite function on a 1-d grid, by stable recurrence."""
    if grid.dimension != 1:
        raise ValueError("hermite fields are one-dimensional")
    if n < 0:
        raise ValueError("hermite order must be nonnegative")
    x = grid.axes[0].points
    h_prev = np.zeros_like(x)
    h = math.pi ** -0.25 * np.exp(-0.5 * x * x)
    for k in range(1, n + 1):
        h, h_prev = math.sqrt(2.0 / k) * x * h - math.sqrt((k - 1) / k) * h_prev, h
    return Field(grid, h.astype(complex))


def make_random_bandlimited(grid: Grid, seed: int, band: float) -> Field:
    """Inverse transform of a seeded random spectrum supported in |xi| <= band.

    Spectral modes are visited in a fixed centered order (0, +1, -1, +2, ...)
    so the same seed yields the same underlying function on any grid whose
    dual extent covers the band.  The result is periodic; consumers that need
    decay should window it.
    """
    rng = np.random.default_rng(seed)
    spec = np.zeros(grid.shape, dtype=complex)
    d = grid.dimension
    duals = [ax.dual() for ax in grid.axes]
    if d == 1:
        dx = duals[0]
        half = dx.n // 2
        rel = 0
        order = []
        while abs(rel) * dx.spacing <= band:
            order.append(rel)
            rel = -rel + 1 if rel <= 0 else -rel
            if abs(rel) > half:
                break
        for r in order:
            xi = r * dx.spacing
            c = (rng.standard_normal() + 1j * rng.standard_normal()) / math.sqrt(2.0)
            spec[half + r] = c * math.exp(-((xi / band) ** 2))
    else:
        # same centered ordering per axis, nested
        orders = []
        for dx in duals:
            half = dx.n // 2
            rel = 0
            axis_order = []
            while abs(rel) * dx.spacing <= band:
                axis_order.append(rel)
                rel = -rel + 1 if rel <= 0 else -rel
                if abs(rel) > half:
                    break
            orders.append(axis_order)
        idx = [()]
        for axis_order in orders:
            idx = [i + (r,) for i in idx for r in axis_order]
        for multi in idx:
            xi2 = sum((r * dx.spacing) ** 2 for r, dx in zip(multi, duals))
            if math.sqrt(xi2) > band:
                continue
            c = (rng.standard_normal() + 1j * rng.standard_normal()) / math.sqrt(2.0)
            pos = tuple(dx.n // 2 + r for r, dx in zip(multi, duals))
            spec[pos] = c * math.exp(-(xi2 / band ** 2))
    spec_field = Field(Grid(tuple(duals)), spec)
    out = inverse_fourier_transform(spec_field)
    return Field(grid, out.values)


def make_gaussian_mix(grid: Grid, seed: int, terms: int = 3) -> Field:
    """Seeded superposition of translated, modulated gaussians.

    Analytic in the coordinates, so the same seed describes the same function
    at every resolution; used wherever results at different N must refer to
    one underlying object.
    """
    rng = np.random.default_rng(seed)
    d = grid.dimension
    vals = np.zeros(grid.shape, dtype=complex)
    for _ in range(terms):
        lam = rng.uniform(0.6, 1.4)
        x0 = rng.uniform(-3.0, 3.0, size=d)
        xi0 = rng.uniform(-2.0, 2.0, size=d)
        coef = (rng.standard_normal() + 1j * rng.standard_normal()) / math.sqrt(2.0)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            atom = make_gaussian(grid, lam, x0, xi0)
        vals = vals + coef * atom.values
    return Field(grid, vals)


# -- file formats -------------------------------------------------------------


def _grid_header(grid: Grid) -> str:
    ls = ",".join(format(ax.half_extent, ".17g") for ax in grid.axes)
    ns = ",".join(str(ax.n) for ax in grid.axes)
    head = f"# grid d={grid.dimension} L={ls} N={ns}"
    if any(r == "xi" for r in grid.roles):
        head += " roles=" + ",".join(grid.roles)
    return head


def _parse_grid_header(line: str) -> Grid:
    if not line.startswith("# grid "):
        raise ValueError("missing grid header")
    tokens = dict(tok.split("=", 1) for tok in line[len("# grid "):].split())
    d = int(tokens["d"])
    ls = [float(s) for s in tokens["L"].split(",")]
    ns = [int(s) for s in tokens["N"].split(",")]
    if len(ls) == 1:
        ls = ls * d
    if len(ns) == 1:
        ns = ns * d
    roles = tuple(tokens["roles"].split(",")) if "roles" in tokens else ("x",) * d
    return Grid(tuple(Axis(n, l) for n, l in zip(ns, ls)), roles)


def save_csv(f: Field, path: str) -> None:
    """Rows of coordinates, real part, imaginary part; 17 significant digits."""
    coords = f.grid.points_stack().reshape(-1, f.grid.dimension)
    flat = f.values.reshape(-1)
    with open(path, "w") as fh:
        fh.write(_grid_header(f.grid) + "\n")
        for row, z in zip(coords, flat):
            cells = [format(c, ".17g") for c in row]
            cells.append(format(z.real, ".17g"))
            cells.append(format(z.imag, ".17g"))
            fh.write(",".join(cells) + "\n")


def load_csv(path: str) -> Field:
    with open(path) as fh:
        header = fh.readline().rstrip("\n")
        grid = _parse_grid_header(header)
        re = []
        im = []
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            cells = line.split(",")
            re.append(float(cells[-2]))
            im.append(float(cells[-1]))
    vals = (np.array(re) + 1j * np.array(im)).reshape(grid.shape)
    return Field(grid, vals)


def save_json(f: Field, path: str) -> None:
    doc = {
        "grid": {
            "d": f.grid.dimension,
            "L": [ax.half_extent for ax in f.grid.axes],
            "N": [ax.n for ax in f.grid.axes],
            "roles": list(f.grid.roles),
        },
        "re": f.values.real.reshape(-1).tolist(),
        "im": f.values.imag.reshape(-1).tolist(),
    }
    with open(path, "w") as fh:
        json.dump(doc, fh)


def load_json(path: str) -> Field:
    with open(path) as fh:
        doc = json.load(fh)
    g = doc["grid"]
    grid = Grid(
        tuple(Axis(n, l) for n, l in zip(g["N"], g["L"])),
        tuple(g.get("roles", ["x"] * g["d"])),
    )
    vals = (np.array(doc["re"]) + 1j * np.array(doc["im"])).reshape(grid.shape)
    return Field(grid, vals)
