"""Entropy of the short-time Fourier transform.

E_phi(f) = -integral |V_phi f|^2 log |V_phi f|^2 over phase space, plus the
Moyal compensator c log c with c = |phi|^2 |f|^2, which makes the functional
quadratically homogeneous: E_phi(s f) = |s|^2 E_phi(f).  The module also
carries the Gaussian lambda-family experiment, the lower-bound check for
normalized pairs, continuity probes in several space norms, and a
diagnostic decomposition of the integrand by magnitude regions.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .field import (
    Field,
    Grid,
    l2_norm,
    make_gaussian,
    make_grid,
    worker_count,
)
from .modspace import ModulationSpaceSpec, modulation_norm
from .tfa import stft
from .young import YoungFunction

_FLOOR = 1e-300


@dataclass(frozen=True)
class EntropyResult:
    value: float
    l2_norm_f: float
    l2_norm_window: float
    integrand_min_location: tuple


def _default_window(grid: Grid) -> Field:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return make_gaussian(grid, 1.0)


def _integral_term(S: np.ndarray, weight: float) -> np.ndarray:
    """Pointwise contributions -S log S, with values below the floor
    contributing exactly zero."""
    out = np.zeros_like(S)
    mask = S > _FLOOR
    out[mask] = -S[mask] * np.log(S[mask])
    return out * weight


def entropy(f: Field, window: Field | None = None) -> EntropyResult:
    """Entropy of |V_phi f|^2 with the Moyal compensator term."""
    phi = window if window is not None else _default_window(f.grid)
    nphi = l2_norm(phi)
    if nphi == 0.0:
        raise ValueError("window must be nonzero")
    nf = l2_norm(f)
    V = stft(f, phi)
    S = np.abs(V.values) ** 2
    contrib = _integral_term(S, V.grid.weight)
    total = float(contrib.sum())
    c = nphi**2 * nf**2
    if c > 0.0:
        total += c * math.log(c)
    idx = np.unravel_index(np.argmin(contrib), contrib.shape)
    loc = tuple(float(ax.points[i]) for ax, i in zip(V.grid.axes, idx))
    return EntropyResult(total, nf, nphi, loc)


def family_grid(lambdas) -> Grid:
    """Grid that resolves every member of the Gaussian family: the extent
    grows like 1/sqrt(min lambda) and the sample count keeps the default
    spacing."""
    lam_min = min(lambdas)
    L = max(12.0, 12.0 / math.sqrt(lam_min))
    n = int(math.ceil(256.0 * L / 12.0 / 2.0)) * 2
    return make_grid(n, L)


def gaussian_family_scan(lambdas, window: Field | None = None,
                         grid: Grid | None = None) -> dict:
    """Entropy of the normalized Gaussians f_lambda across a lambda list.

    Alongside each E(lambda) the scan fits the model
    E(lambda) = d * (constant + log(pi (sqrt(lambda) + 1/sqrt(lambda))))
    and reports the fitted constant and its spread across the list.
    """
    lambdas = [float(l) for l in lambdas]
    if any(l <= 0 for l in lambdas):
        raise ValueError("lambda must be positive")
    g = grid if grid is not None else family_grid(lambdas)
    d = g.dimension
    phi = window if window is not None else _default_window(g)

    def one(lam: float) -> dict:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            f = make_gaussian(g, lam)
        e = entropy(f, phi).value
        log_term = d * math.log(math.pi * (math.sqrt(lam) + 1.0 / math.sqrt(lam)))
        return {"lam": lam, "entropy": e, "log_term": log_term,
                "constant": (e - log_term) / d}

    workers = worker_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            rows = list(ex.map(one, lambdas))
    else:
        rows = [one(lam) for lam in lambdas]
    consts = [r["constant"] for r in rows]
    return {
        "rows": rows,
        "constant_fit": float(np.mean(consts)),
        "constant_spread": float(max(consts) - min(consts)),
        "dimension": d,
    }


def lieb_bound_check(f: Field, window: Field | None = None) -> dict:
    """Check E_phi(f) >= d (1 + log(pi/2)) after rescaling so that
    |f|_2 |phi|_2 = 1."""
    phi = window if window is not None else _default_window(f.grid)
    nf, nphi = l2_norm(f), l2_norm(phi)
    if nf == 0.0 or nphi == 0.0:
        raise ValueError("both the signal and the window must be nonzero")
    f1 = Field(f.grid, f.values / nf)
    phi1 = Field(phi.grid, phi.values / nphi)
    d = f.grid.dimension
    e = entropy(f1, phi1).value
    bound = d * (1.0 + math.log(math.pi / 2.0))
    return {"entropy": e, "bound": bound, "satisfied": bool(e >= bound)}


_SPACES = ("M2", "Mp", "MPhi")


def _space_spec(space: str, p: float) -> ModulationSpaceSpec:
    if space == "M2":
        phi = YoungFunction.power(2)
    elif space == "Mp":
        phi = YoungFunction.power(p)
    elif space == "MPhi":
        phi = YoungFunction.entropy()
    else:
        raise ValueError(f"space must be one of {_SPACES}")
    return ModulationSpaceSpec(phi, phi)


def continuity_probe(f: Field, direction: Field, amplitudes,
                     space: str = "MPhi", p: float = 2.0,
                     window: Field | None = None) -> dict:
    """Perturb f along a direction and tabulate the entropy response.

    For each amplitude eps the row carries |eps g| in the chosen space norm
    and |E(f + eps g) - E(f)|; the fitted constant bounds the response by
    n^2 (1 + |log n|) in that norm.
    """
    phi = window if window is not None else _default_window(f.grid)
    spec = _space_spec(space, p)
    base = entropy(f, phi).value
    rows = []
    fitted = 0.0
    for eps in amplitudes:
        g = Field(f.grid, eps * direction.values)
        norm = modulation_norm(g, spec, window=phi)
        perturbed = Field(f.grid, f.values + g.values)
        delta = abs(entropy(perturbed, phi).value - base)
        rows.append({"amplitude": float(eps), "space_norm": norm,
                     "delta_entropy": delta})
        if norm > 0.0:
            fitted = max(fitted, delta / (norm**2 * (1.0 + abs(math.log(norm)))))
    return {"space": space, "base_entropy": base, "rows": rows,
            "fitted_constant": fitted}


def lambda_family_table(lambdas, window: Field | None = None,
                        grid: Grid | None = None) -> list:
    """Rows (lambda, entropy, M2 norm, MPhi norm) for the Gaussian family."""
    lambdas = [float(l) for l in lambdas]
    g = grid if grid is not None else family_grid(lambdas)
    phi = window if window is not None else _default_window(g)
    m2 = _space_spec("M2", 2.0)
    mphi = _space_spec("MPhi", 2.0)
    rows = []
    for lam in lambdas:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            f = make_gaussian(g, lam)
        rows.append({
            "lam": lam,
            "entropy": entropy(f, phi).value,
            "M2_norm": modulation_norm(f, m2, window=phi),
            "MPhi_norm": modulation_norm(f, mphi, window=phi),
        })
    return rows


def omega_decomposition(f: Field, window: Field | None = None) -> dict:
    """Split the entropy integral by the magnitude of |V_phi f|.

    The threshold level is 1.01 times the MPhi modulation norm of f; the
    three regions are |V| below threshold * e^{-2/3}, between that and the
    threshold, and above the threshold.  The three parts sum to the total
    integral term (the compensator c log c is reported separately).
    """
    phi = window if window is not None else _default_window(f.grid)
    lam_f = 1.01 * modulation_norm(f, _space_spec("MPhi", 2.0), window=phi)
    V = stft(f, phi)
    mag = np.abs(V.values)
    contrib = _integral_term(mag**2, V.grid.weight)
    lo = lam_f * math.exp(-2.0 / 3.0)
    regions = [mag < lo, (mag >= lo) & (mag < lam_f), mag >= lam_f]
    parts = [float(contrib[r].sum()) for r in regions]
    total = float(contrib.sum())
    return {
        "threshold": lam_f,
        "parts": parts,
        "total_integral_term": total,
        "residual": abs(sum(parts) - total) / max(abs(total), _FLOOR),
    }
