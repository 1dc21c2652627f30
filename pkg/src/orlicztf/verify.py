"""Named verification battery.

Each criterion function runs one quantitative check end to end and returns
a uniform record {name, value, tolerance, passed, timing_ms, details}.
The registry at the bottom drives both the test suite and the command-line
`verify` subcommand, so the two always agree on what was checked.
"""

from __future__ import annotations

import math
import time
import warnings

import numpy as np

from . import psido
from .entropy import gaussian_family_scan, lambda_family_table, lieb_bound_check
from .field import (
    Field,
    Grid,
    inner_product,
    l2_norm,
    make_gaussian,
    make_gaussian_mix,
    make_grid,
    make_hermite,
    make_random_bandlimited,
    phase_grid,
)
from .modspace import (
    ModulationSpaceSpec,
    check_embedding,
    check_pseudo_hypotheses,
    modulation_norm,
)
from .orlicz import verify_holder, verify_young_convolution
from .tfa import quantization_change, stft, stft_adjoint, stft_projection, twisted_convolution, wigner
from .young import YoungFunction


def _noise(grid: Grid, rng) -> Field:
    re = rng.standard_normal(grid.shape)
    im = rng.standard_normal(grid.shape)
    return Field(grid, re + 1j * im)


def _gaussian_window(grid: Grid) -> Field:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return make_gaussian(grid, 1.0)


def _record(name, value, tolerance, passed, t0, **details) -> dict:
    return {
        "name": name,
        "value": value,
        "tolerance": tolerance,
        "passed": bool(passed),
        "timing_ms": round((time.time() - t0) * 1000.0, 3),
        "details": details,
    }


# -- 1 ---------------------------------------------------------------------


def moyal_isometry(n: int = 256, half_extent: float = 12.0, trials: int = 100,
                   seed: int = 42, tol: float = 1e-8) -> dict:
    """|V_phi f|_2 equals |f|_2 |phi|_2 for random fields, Gaussian window."""
    t0 = time.time()
    g = make_grid(n, half_extent)
    phi = _gaussian_window(g)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        f = _noise(g, rng)
        target = l2_norm(f) * l2_norm(phi)
        worst = max(worst, abs(l2_norm(stft(f, phi)) - target) / target)
    return _record("moyal_isometry", worst, tol, worst <= tol, t0,
                   trials=trials, n=n, half_extent=half_extent, seed=seed)


# -- 2 ---------------------------------------------------------------------


def gaussian_stft_closed_form(n: int = 256, half_extent: float = 12.0,
                              tol: float = 1e-8) -> dict:
    """STFT of the unit Gaussian against its closed form."""
    t0 = time.time()
    g = make_grid(n, half_extent)
    phi = _gaussian_window(g)
    V = stft(phi, phi)
    x, xi = V.grid.mesh()
    target = (2.0 * math.pi) ** -0.5 * np.exp(-1j * x * xi / 2.0) * np.exp(
        -(x**2 + xi**2) / 4.0
    )
    worst = float(np.abs(V.values - target).max())
    return _record("gaussian_stft_closed_form", worst, tol, worst <= tol, t0,
                   n=n, half_extent=half_extent)


# -- 3 ---------------------------------------------------------------------


def stft_inversion_projection(n: int = 256, half_extent: float = 12.0,
                              trials: int = 10, seed: int = 42,
                              tol: float = 1e-8) -> dict:
    """Adjoint inversion of the STFT and idempotence of the range projection
    (the projection is applied, never formed as a matrix)."""
    t0 = time.time()
    g = make_grid(n, half_extent)
    phi = _gaussian_window(g)
    scale = l2_norm(phi) ** -2
    rng = np.random.default_rng(seed)
    worst_inv = 0.0
    for _ in range(trials):
        f = _noise(g, rng)
        rec = stft_adjoint(stft(f, phi), phi)
        err = l2_norm(Field(g, scale * rec.values - f.values)) / l2_norm(f)
        worst_inv = max(worst_inv, err)
    pg = phase_grid(g)
    worst_proj = 0.0
    for _ in range(trials):
        F = _noise(pg, rng)
        PF = stft_projection(F, phi)
        PPF = stft_projection(PF, phi)
        err = l2_norm(Field(pg, PPF.values - PF.values)) / l2_norm(F)
        worst_proj = max(worst_proj, err)
    worst = max(worst_inv, worst_proj)
    return _record("stft_inversion_projection", worst, tol, worst <= tol, t0,
                   inversion=worst_inv, projection=worst_proj, trials=trials,
                   seed=seed)


# -- 4 ---------------------------------------------------------------------


def twisted_reproducing(n: int = 64, half_extent: float = 8.0,
                        trials: int = 3, seed: int = 42,
                        tol: float = 1e-6) -> dict:
    """V_phi f twisted-convolved with V_phi phi reproduces |phi|^2 V_phi f."""
    t0 = time.time()
    g = make_grid(n, half_extent)
    phi = _gaussian_window(g)
    Vphi = stft(phi, phi)
    scale = l2_norm(phi) ** -2
    rng = np.random.default_rng(seed)
    worst = 0.0
    for i in range(trials):
        f = make_gaussian_mix(g, seed + i) if i else _noise(g, rng)
        V = stft(f, phi)
        R = twisted_convolution(Vphi, V)
        err = float(np.abs(scale * R.values - V.values).max() / np.abs(V.values).max())
        worst = max(worst, err)
    return _record("twisted_reproducing", worst, tol, worst <= tol, t0,
                   n=n, half_extent=half_extent, trials=trials, seed=seed)


# -- 5 ---------------------------------------------------------------------

HOLDER_TRIPLES = (
    ("power1_power2_power2",
     (YoungFunction.power(1), YoungFunction.power(2), YoungFunction.power(2))),
    ("power1_power3_power15",
     (YoungFunction.power(1), YoungFunction.power(3), YoungFunction.power(1.5))),
    ("power1_entropy_conjugate",
     (YoungFunction.power(1), YoungFunction.entropy(),
      YoungFunction.entropy().conjugate())),
    ("power2_power4_power4",
     (YoungFunction.power(2), YoungFunction.power(4), YoungFunction.power(4))),
)

YOUNG_TRIPLES = (
    ("power1_power1_power1",
     (YoungFunction.power(1), YoungFunction.power(1), YoungFunction.power(1))),
    ("cap1_power2_power2",
     (YoungFunction.cap(1.0), YoungFunction.power(2), YoungFunction.power(2))),
    ("power2_power1_power2",
     (YoungFunction.power(2), YoungFunction.power(1), YoungFunction.power(2))),
    ("power3_power12_power2",
     (YoungFunction.power(3), YoungFunction.power(1.2), YoungFunction.power(2))),
)


def holder_inequality(trials: int = 1000, seed: int = 42,
                      bound: float = 2.0) -> dict:
    """Product-norm inequality across the standard function triples."""
    t0 = time.time()
    per = {}
    worst = 0.0
    ok = True
    for label, (phi0, phi1, phi2) in HOLDER_TRIPLES:
        r = verify_holder(phi0, phi1, phi2, trials=trials, seed=seed)
        per[label] = r["max_ratio"]
        worst = max(worst, r["max_ratio"])
        ok = ok and r["holds"] and r["precondition_ok"]
    return _record("holder_inequality", worst, bound, ok and worst <= bound,
                   t0, per_triple=per, trials=trials, seed=seed)


def young_convolution_inequality(trials: int = 1000, seed: int = 42,
                                 bound: float = 2.0) -> dict:
    """Convolution-norm inequality across the standard function triples."""
    t0 = time.time()
    per = {}
    worst = 0.0
    ok = True
    for label, (phi0, phi1, phi2) in YOUNG_TRIPLES:
        r = verify_young_convolution(phi0, phi1, phi2, trials=trials, seed=seed)
        per[label] = r["max_ratio"]
        worst = max(worst, r["max_ratio"])
        ok = ok and r["holds"] and r["precondition_ok"]
    return _record("young_convolution_inequality", worst, bound,
                   ok and worst <= bound, t0, per_triple=per, trials=trials,
                   seed=seed)


def holder_young_inequalities(trials: int = 1000, seed: int = 42,
                              bound: float = 2.0) -> dict:
    """Both norm inequalities, reported as one criterion."""
    t0 = time.time()
    h = holder_inequality(trials=trials, seed=seed, bound=bound)
    y = young_convolution_inequality(trials=trials, seed=seed, bound=bound)
    worst = max(h["value"], y["value"])
    return _record("holder_young_inequalities", worst, bound,
                   h["passed"] and y["passed"], t0,
                   holder=h["details"]["per_triple"],
                   young=y["details"]["per_triple"], trials=trials, seed=seed)


# -- 6 ---------------------------------------------------------------------

_BUILTINS = (
    ("power1", YoungFunction.power(1)),
    ("power2", YoungFunction.power(2)),
    ("power3", YoungFunction.power(3)),
    ("power_scaled2", YoungFunction.power_scaled(2)),
    ("cap1", YoungFunction.cap(1.0)),
    ("entropy", YoungFunction.entropy()),
    ("tan_example", YoungFunction.tan_example()),
    ("log_example", YoungFunction.log_example()),
    ("table", YoungFunction.table(
        [(0.0, 0.0), (1.0, 0.5), (2.0, 2.0), (3.0, 5.0)], tail_slope=4.0)),
)


def conjugate_closed_forms(tol: float = 1e-6) -> dict:
    """Numeric Legendre transform of the logarithmic example against its
    closed form on [1e-3, 1e-1], and double conjugation on every built-in."""
    t0 = time.time()
    conj = YoungFunction.log_example().conjugate()
    ts = np.geomspace(1e-3, 1e-1, 40)
    root = np.sqrt(0.25 + ts)
    formula = (ts + 0.5 - root) * np.exp(-(0.5 + root) / ts)
    num = conj._eval_array(ts)
    keep = (formula >= 1e-300) | (num >= 1e-300)
    worst_formula = float(
        (np.abs(num[keep] - formula[keep]) / formula[keep]).max()
    )

    worst_biconj = 0.0
    per = {}
    ts = np.geomspace(1e-3, 10.0, 60)
    for label, f in _BUILTINS:
        bc = f.conjugate().conjugate()
        a = f._eval_array(ts)
        b = bc._eval_array(ts)
        both_inf = np.isinf(a) & np.isinf(b)
        inf_mismatch = np.isinf(a) != np.isinf(b)
        zero = (a == 0.0) & (b == 0.0)
        compare = ~(both_inf | zero | inf_mismatch)
        w = 1.0 if inf_mismatch.any() else 0.0
        if compare.any():
            denom = np.maximum(np.maximum(a[compare], b[compare]), 1e-300)
            w = max(w, float((np.abs(a[compare] - b[compare]) / denom).max()))
        per[label] = w
        worst_biconj = max(worst_biconj, w)
    worst = max(worst_formula, worst_biconj)
    return _record("conjugate_closed_forms", worst, tol, worst <= tol, t0,
                   closed_form=worst_formula, biconjugation=per)


# -- 7 ---------------------------------------------------------------------


def rank_one_duality(n: int = 128, half_extent: float = 10.0, seed: int = 42,
                     tol_rank_one: float = 1e-6, tol_duality: float = 1e-7) -> dict:
    """Quadratic-representation symbols act as rank-one operators, and the
    operator pairing matches the symbol pairing, for A in {0, I/2, I}."""
    t0 = time.time()
    g = make_grid(n, half_extent)
    f1 = make_gaussian_mix(g, seed + 10)
    f2 = make_gaussian_mix(g, seed + 11)
    h = make_gaussian_mix(g, seed + 12)
    u = make_gaussian_mix(g, seed + 13)
    worst_rank = 0.0
    worst_dual = 0.0
    for t in (0.0, 0.5, 1.0):
        W = wigner(f1, f2, t)
        out = psido.apply(W, t, h)
        target = (2.0 * math.pi) ** -0.5 * inner_product(h, f2) * f1.values
        worst_rank = max(
            worst_rank,
            float(np.abs(out.values - target).max() / np.abs(target).max()),
        )
        lhs = inner_product(u, psido.apply(W, t, h))
        rhs = (2.0 * math.pi) ** -0.5 * inner_product(wigner(u, h, t), W)
        worst_dual = max(worst_dual, abs(lhs - rhs) / abs(lhs))
    passed = worst_rank <= tol_rank_one and worst_dual <= tol_duality
    return _record("rank_one_duality",
                   {"rank_one": worst_rank, "duality": worst_dual},
                   {"rank_one": tol_rank_one, "duality": tol_duality},
                   passed, t0, n=n, half_extent=half_extent, seed=seed)


# -- 8 ---------------------------------------------------------------------


def calculi_transfer(n: int = 256, half_extent: float = 12.0, seed: int = 42,
                     transfer_n: int = 342, transfer_half_extent: float = 16.0,
                     tol_calculi: float = 1e-6, tol_wigner: float = 1e-7) -> dict:
    """Changing the quantization parameter: operator round trips between
    the endpoint calculi and the matching transfer of quadratic
    representations.  The transfer check runs on a wider grid so that the
    random signals' correlation lags stay far from the periodic boundary."""
    t0 = time.time()
    g = make_grid(n, half_extent)
    pg = phase_grid(g)
    a = make_gaussian_mix(pg, seed + 20)
    f = make_gaussian_mix(g, seed + 21)
    worst_cal = 0.0
    for t1, t2 in ((0.0, 0.5), (0.5, 0.0), (0.0, 1.0), (1.0, 0.0)):
        worst_cal = max(worst_cal,
                        psido.calculi_consistency(a, t1, t2, f)["max_error"])
    gw = make_grid(transfer_n, transfer_half_extent)
    f1 = make_gaussian_mix(gw, seed + 22)
    f2 = make_gaussian_mix(gw, seed + 23)
    worst_wig = 0.0
    for t1, t2 in ((0.5, 0.0), (0.0, 0.5), (0.5, 1.0)):
        W1 = wigner(f1, f2, t1)
        W2 = wigner(f1, f2, t2)
        T = quantization_change(W1, t1, t2)
        worst_wig = max(
            worst_wig,
            float(np.abs(T.values - W2.values).max() / np.abs(W2.values).max()),
        )
    passed = worst_cal <= tol_calculi and worst_wig <= tol_wigner
    return _record("calculi_transfer",
                   {"calculi": worst_cal, "wigner_transfer": worst_wig},
                   {"calculi": tol_calculi, "wigner_transfer": tol_wigner},
                   passed, t0, n=n, half_extent=half_extent, seed=seed)


# -- 9 ---------------------------------------------------------------------


def entropy_lambda_scan(tol_diff: float = 1e-5, tol_spread: float = 1e-4) -> dict:
    """Entropy of the Gaussian family: E(4)-E(1) = log(5/4), and the fitted
    additive constant is flat across two octaves each way."""
    t0 = time.time()
    lambdas = [0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0]
    scan = gaussian_family_scan(lambdas)
    by_lam = {r["lam"]: r["entropy"] for r in scan["rows"]}
    diff_err = abs(by_lam[4.0] - by_lam[1.0] - math.log(1.25))
    spread = scan["constant_spread"]
    fit = scan["constant_fit"]
    supported = 1.0 if abs(fit - 1.0) < abs(fit - 0.25) else 0.25
    passed = diff_err <= tol_diff and spread <= tol_spread
    return _record("entropy_lambda_scan",
                   {"difference_error": diff_err, "constant_spread": spread},
                   {"difference_error": tol_diff, "constant_spread": tol_spread},
                   passed, t0, constant_fit=fit, supported_constant=supported,
                   lambdas=lambdas)


# -- 10 --------------------------------------------------------------------


def entropy_lower_bound(n: int = 256, half_extent: float = 12.0,
                        trials: int = 50, seed: int = 42,
                        slack: float = 1e-6) -> dict:
    """Normalized random and Hermite signals all satisfy the entropy lower
    bound d(1 + log(pi/2))."""
    t0 = time.time()
    g = make_grid(n, half_extent)
    threshold = 1.45158 - slack
    lowest = math.inf
    violations = []
    for i in range(trials):
        f = make_random_bandlimited(g, seed + i, band=5.0)
        r = lieb_bound_check(f)
        lowest = min(lowest, r["entropy"])
        if r["entropy"] < threshold:
            violations.append({"kind": "random", "seed": seed + i, **r})
    hermite_values = []
    for k in range(6):
        f = make_hermite(g, k)
        r = lieb_bound_check(f)
        hermite_values.append(r["entropy"])
        lowest = min(lowest, r["entropy"])
        if r["entropy"] < threshold:
            violations.append({"kind": "hermite", "order": k, **r})
    return _record("entropy_lower_bound", lowest, threshold,
                   not violations, t0, hermite=hermite_values,
                   violations=violations, trials=trials, seed=seed)


# -- 11 --------------------------------------------------------------------


def entropy_discontinuity(n: int = 256, half_extent: float = 12.0,
                          gap: float = 1.3, margin: float = 1e-2) -> dict:
    """The Gaussian family keeps unit flat-quadratic norm while its entropy
    grows by more than the threshold, and its entropy-space norm strictly
    increases — the witness separating the two topologies."""
    t0 = time.time()
    g = make_grid(n, half_extent)
    rows = lambda_family_table([1.0, 4.0, 16.0, 64.0], grid=g)
    e_gap = rows[-1]["entropy"] - rows[0]["entropy"]
    m2 = [r["M2_norm"] for r in rows]
    mphi = [r["MPhi_norm"] for r in rows]
    unit = max(abs(v - 1.0) for v in m2)
    increasing = all(b > a for a, b in zip(mphi, mphi[1:]))
    passed = e_gap >= gap + margin and unit <= 1e-6 and increasing
    return _record("entropy_discontinuity",
                   {"entropy_gap": e_gap, "m2_unit_error": unit},
                   {"entropy_gap": gap + margin, "m2_unit_error": 1e-6},
                   passed, t0, mphi_norms=mphi, m2_norms=m2,
                   strictly_increasing=increasing)


# -- 12 --------------------------------------------------------------------


def _power_tuple_oracle(p: float, q: float, exponents) -> bool:
    """Direct exponent arithmetic for the operator-continuity hypotheses
    when all four functions are pure powers."""
    if q > p:
        return False
    if p == 1.0:
        return True
    pp = p / (p - 1.0)
    qp = math.inf if q == 1.0 else q / (q - 1.0)
    beta = (0.0 if math.isinf(pp) else 1.0 / pp) + (
        0.0 if math.isinf(qp) else 1.0 / qp
    )
    e1, e2, e3, e4 = exponents
    growth_ok = math.isinf(qp) or all(e <= qp for e in exponents)
    prod_phi = 1.0 / e1 + 1.0 / e3 >= beta
    prod_psi = 1.0 / e2 + 1.0 / e4 >= beta
    return growth_ok and prod_phi and prod_psi


def hypothesis_checkers(count: int = 20, seed: int = 42) -> dict:
    """The worked continuity example passes every hypothesis, and for random
    power quadruples the checker verdict coincides exactly with direct
    exponent arithmetic."""
    t0 = time.time()
    ent = YoungFunction.entropy()
    example = check_pseudo_hypotheses(3.0, 1.5, ent, ent, ent, ent)
    failed_conditions = [
        c["name"] for c in example["conditions"]
        if c["applicable"] and not c["passed"]
    ]

    rng = np.random.default_rng(seed)
    agreements = 0
    mismatches = []
    for _ in range(count):
        p = round(float(rng.uniform(1.0, 4.0)), 2)
        q = round(float(rng.uniform(1.0, 4.0)), 2)
        exps = [round(float(rng.uniform(1.05, 5.0)), 2) for _ in range(4)]
        funcs = [YoungFunction.power(e) for e in exps]
        got = check_pseudo_hypotheses(p, q, *funcs)["passes"]
        want = _power_tuple_oracle(p, q, exps)
        if got == want:
            agreements += 1
        else:
            mismatches.append({"p": p, "q": q, "exponents": exps,
                               "checker": got, "oracle": want})
    passed = example["passes"] and agreements == count
    return _record("hypothesis_checkers",
                   {"example_passes": example["passes"],
                    "oracle_agreement": agreements},
                   {"example_passes": True, "oracle_agreement": count},
                   passed, t0, example_failed_conditions=failed_conditions,
                   mismatches=mismatches, count=count, seed=seed)


# -- 13 --------------------------------------------------------------------


def _opnorm_configs():
    ent = YoungFunction.entropy()
    p2 = YoungFunction.power(2)
    m_entropy = ModulationSpaceSpec(ent, ent)
    cont = {
        "label": "smooth_symbol_entropy_spaces",
        "domain": m_entropy,
        "codomain": m_entropy,
        "symbol_space": ModulationSpaceSpec(YoungFunction.power(3),
                                            YoungFunction.power(1.5)),
    }
    wiener = {
        "label": "wiener_amalgam_symbol",
        "domain": ModulationSpaceSpec(p2.conjugate(), p2.conjugate()),
        "codomain": ModulationSpaceSpec(p2, p2, flavor="W"),
        "symbol_space": ModulationSpaceSpec(p2, p2, flavor="W"),
    }
    return cont, wiener


def opnorm_ratio_stability(count: int = 10, trials: int = 4, seed: int = 42,
                           factor: float = 2.0,
                           half_extent: float = 12.0) -> dict:
    """Empirical operator-norm to symbol-norm ratios change by at most a
    bounded factor when the grid is refined from N=128 to N=256."""
    t0 = time.time()
    cont, wiener = _opnorm_configs()
    worst = 0.0
    rows = []
    for cfg_index, cfg in enumerate((cont, wiener)):
        for i in range(count):
            sym_seed = seed + 100 * cfg_index + i
            ratios = {}
            for n in (128, 256):
                pg = phase_grid(make_grid(n, half_extent))
                a = make_gaussian_mix(pg, sym_seed)
                r = psido.estimate_operator_norm(
                    a, 0.0, cfg["domain"], cfg["codomain"], trials=trials,
                    seed=seed, symbol_space=cfg["symbol_space"])
                ratios[n] = r["ratio_to_symbol_norm"]
            change = max(ratios[256] / ratios[128], ratios[128] / ratios[256])
            worst = max(worst, change)
            rows.append({"config": cfg["label"], "seed": sym_seed,
                         "ratio_128": ratios[128], "ratio_256": ratios[256],
                         "change": change})
    return _record("opnorm_ratio_stability", worst, factor, worst <= factor,
                   t0, rows=rows, count=count, trials=trials, seed=seed)


# -- 14 --------------------------------------------------------------------


def embedding_lattice(p: float = 1.5) -> dict:
    """The entropy-function space sits between the p-power space (p < 2)
    and the quadratic space, and neither inclusion reverses."""
    t0 = time.time()
    ent = YoungFunction.entropy()
    p2 = YoungFunction.power(2)
    pp = YoungFunction.power(p)
    r = 0.5
    forward = {
        "power_p_into_entropy": check_embedding(pp, pp, ent, ent, r)["embeds"],
        "entropy_into_power2": check_embedding(ent, ent, p2, p2, r)["embeds"],
    }
    reverse = {
        "entropy_into_power_p": check_embedding(ent, ent, pp, pp, r)["embeds"],
        "power2_into_entropy": check_embedding(p2, p2, ent, ent, r)["embeds"],
    }
    passed = all(forward.values()) and not any(reverse.values())
    return _record("embedding_lattice",
                   {"forward": forward, "reverse": reverse},
                   {"forward": "all true", "reverse": "all false"},
                   passed, t0, p=p)


# -- registry ----------------------------------------------------------------

CRITERIA = (
    ("moyal_isometry", moyal_isometry),
    ("gaussian_stft_closed_form", gaussian_stft_closed_form),
    ("stft_inversion_projection", stft_inversion_projection),
    ("twisted_reproducing", twisted_reproducing),
    ("holder_young_inequalities", holder_young_inequalities),
    ("conjugate_closed_forms", conjugate_closed_forms),
    ("rank_one_duality", rank_one_duality),
    ("calculi_transfer", calculi_transfer),
    ("entropy_lambda_scan", entropy_lambda_scan),
    ("entropy_lower_bound", entropy_lower_bound),
    ("entropy_discontinuity", entropy_discontinuity),
    ("hypothesis_checkers", hypothesis_checkers),
    ("opnorm_ratio_stability", opnorm_ratio_stability),
    ("embedding_lattice", embedding_lattice),
)


def run_all(names=None) -> dict:
    """Run the full battery (or a named subset) and collect the records."""
    selected = dict(CRITERIA)
    if names is not None:
        unknown = [n for n in names if n not in selected]
        if unknown:
            raise KeyError(f"unknown criteria: {unknown}")
        items = [(n, selected[n]) for n in names]
    else:
        items = list(CRITERIA)
    results = [fn() for _, fn in items]
    return {"results": results, "all_passed": all(r["passed"] for r in results)}
