"""Modulation-space norms over Orlicz stages, embedding predicates, and
hypothesis checkers for the boundedness results.

The M flavor integrates the x-axes of the STFT first, then the xi-axes; the
W flavor swaps the stage order.  When both stages carry the same Young
function and the weight is flat, the two-stage norm is replaced by the joint
one-stage norm, making the symmetric identities (same-function stage
collapse, flavor irrelevance) exact rather than approximate.

Growth comparisons "near the origin" are decided on a 60-point geometric
grid in (1e-8, r], with a refinement pass toward 1e-16: a ratio counts as
bounded only when the refined sup does not exceed the coarse sup by more
than 25 percent.  Power-family inputs bypass the grids with exact exponent
arithmetic.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field as dc_field

import numpy as np

from .field import Field, l2_norm, make_gaussian
from .orlicz import MixedNormSpec, mixed_norm
from .tfa import stft
from .weights import Weight
from .young import YoungFunction, check_delta2, check_p_steered, closed_power_form


@dataclass(frozen=True)
class ModulationSpaceSpec:
    phi: YoungFunction
    psi: YoungFunction
    weight: Weight = dc_field(default_factory=Weight.constant_one)
    flavor: str = "M"
    window: Field | None = None

    def __post_init__(self):
        if self.flavor not in ("M", "W"):
            raise ValueError("flavor must be 'M' or 'W'")

    def to_dict(self) -> dict:
        return {
            "phi": self.phi.to_dict(),
            "psi": self.psi.to_dict(),
            "weight": self.weight.to_dict(),
            "flavor": self.flavor,
            "window": "gaussian" if self.window is None else "custom",
        }

    @staticmethod
    def from_dict(d: dict) -> "ModulationSpaceSpec":
        return ModulationSpaceSpec(
            YoungFunction.from_dict(d["phi"]),
            YoungFunction.from_dict(d["psi"]),
            Weight.from_dict(d.get("weight", {"kind": "constant_one"})),
            d.get("flavor", "M"),
        )

    def stages_for(self, d: int) -> MixedNormSpec:
        x_axes = tuple(range(d))
        xi_axes = tuple(range(d, 2 * d))
        symmetric = (
            self.phi.to_dict() == self.psi.to_dict() and self.weight.is_constant_one
        )
        if symmetric:
            stages = ((x_axes + xi_axes, self.phi),)
        elif self.flavor == "M":
            stages = ((x_axes, self.phi), (xi_axes, self.psi))
        else:
            stages = ((xi_axes, self.psi), (x_axes, self.phi))
        return MixedNormSpec(stages, self.weight)


def phase_field_norm(F: Field, spec: ModulationSpaceSpec) -> float:
    """Mixed Orlicz norm of an existing phase field under the given stages."""
    d = F.grid.dimension // 2
    return mixed_norm(F, spec.stages_for(d))


def modulation_norm(f: Field, spec: ModulationSpaceSpec, window: Field | None = None) -> float:
    """Norm of the STFT of f in the requested mixed Orlicz space."""
    if window is None:
        window = spec.window
    if window is None:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            window = make_gaussian(f.grid, 1.0)
    V = stft(f, window)
    return phase_field_norm(V, spec)


# -- growth comparison machinery ----------------------------------------------


def _grid_sup(num, den, lo: float, hi: float, n: int) -> float:
    t = np.geomspace(lo, hi, n)
    a = np.asarray(num(t), dtype=float)
    b = np.asarray(den(t), dtype=float)
    both_zero = (a == 0) & (b == 0)
    a, b = a[~both_zero], b[~both_zero]
    if a.size == 0:
        return 0.0
    if np.any((b == 0) & (a > 0)):
        return math.inf
    with np.errstate(over="ignore", divide="ignore"):
        r = a / b
    r = r[np.isfinite(a)]
    return float(np.max(r)) if r.size else 0.0


def _bounded_near_zero(num, den, r: float) -> dict:
    """Trend verdict for sup num(t)/den(t) on (0, r]."""
    coarse = _grid_sup(num, den, 1e-8, r, 60)
    fine = _grid_sup(num, den, 1e-16, r, 120)
    bounded = math.isfinite(fine) and fine <= 1.25 * coarse + 1e-300
    return {
        "bounded": bool(bounded),
        "constant": fine,
        "coarse_constant": coarse,
        "grid": {"lo": 1e-8, "hi": r, "points": 60, "refined_lo": 1e-16},
    }


def lower_growth_check(phi: YoungFunction, alpha: float, r: float) -> dict:
    """Does phi(t) >= c t^alpha hold near the origin (phi grows no slower
    than t^alpha)?  Equivalent to boundedness of t^alpha / phi(t) on (0, r]."""
    if math.isinf(alpha):
        return {"bounded": True, "constant": 0.0, "method": "vacuous"}
    cp = closed_power_form(phi)
    if cp is not None:
        ok = cp[1] <= alpha
        return {
            "bounded": bool(ok),
            "constant": (r ** (alpha - cp[1])) / cp[0] if ok else math.inf,
            "method": "analytic",
        }
    out = _bounded_near_zero(lambda t: t ** alpha, phi._eval_array, r)
    out["method"] = "grid"
    return out


def inverse_product_check(phi_a: YoungFunction, phi_b: YoungFunction,
                          beta: float, r: float) -> dict:
    """Does phiA^{-&}(s) phiB^{-&}(s) <= C s^beta hold near the origin?"""
    if beta == 0.0:
        return {"bounded": True, "constant": 1.0, "method": "vacuous"}
    ca, cb = closed_power_form(phi_a), closed_power_form(phi_b)
    if ca is not None and cb is not None:
        expo = 1.0 / ca[1] + 1.0 / cb[1]
        ok = expo >= beta
        const = ((1.0 / ca[0]) ** (1.0 / ca[1])) * ((1.0 / cb[0]) ** (1.0 / cb[1]))
        return {
            "bounded": bool(ok),
            "constant": const * r ** (expo - beta) if ok else math.inf,
            "method": "analytic",
        }
    out = _bounded_near_zero(
        lambda s: phi_a._inverse_array(s) * phi_b._inverse_array(s),
        lambda s: s ** beta,
        r,
    )
    out["method"] = "grid"
    return out


def check_embedding(phi1: YoungFunction, psi1: YoungFunction,
                    phi2: YoungFunction, psi2: YoungFunction,
                    t0: float) -> dict:
    """Inclusion of the (phi1, psi1) space into the (phi2, psi2) space:
    holds iff phi2 <~ phi1 and psi2 <~ psi1 near the origin."""
    if t0 <= 0:
        raise ValueError("comparison radius must be positive")

    def compare(num_phi, den_phi):
        cn, cd = closed_power_form(num_phi), closed_power_form(den_phi)
        if cn is not None and cd is not None:
            ok = cn[1] >= cd[1]
            return {
                "bounded": bool(ok),
                "constant": (cn[0] / cd[0]) * t0 ** (cn[1] - cd[1]) if ok else math.inf,
                "method": "analytic",
            }
        out = _bounded_near_zero(num_phi._eval_array, den_phi._eval_array, t0)
        out["method"] = "grid"
        return out

    first = compare(phi2, phi1)
    second = compare(psi2, psi1)
    return {
        "embeds": first["bounded"] and second["bounded"],
        "phi_comparison": first,
        "psi_comparison": second,
        "t0": t0,
    }


# -- theorem hypothesis checkers ----------------------------------------------


def _dual_exponent(p: float) -> float:
    if p == 1.0:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


def _condition(name, passed, applicable=True, **extra):
    d = {"name": name, "passed": bool(passed), "applicable": bool(applicable)}
    d.update(extra)
    return d


def _shared_function_conditions(funcs, steer_exp, growth_exp, prod_exp, r):
    """Steering, local doubling, lower growth, and inverse-product
    conditions on the function quadruple; used by both checkers."""
    names = ("Phi1", "Psi1", "Phi2", "Psi2")
    conds = []
    for nm, f in zip(names, funcs):
        st = check_p_steered(f, steer_exp, r)
        conds.append(_condition(f"steering_{nm}", st["steered"], branch=st["branch"]))
    for nm, f in zip(names, funcs):
        d2 = check_delta2(f, "local", r)
        conds.append(_condition(f"delta2_{nm}", d2["holds"], constant=d2["constant"]))
    for nm, f in zip(names, funcs):
        lg = lower_growth_check(f, growth_exp, r)
        conds.append(
            _condition(f"lower_growth_{nm}", lg["bounded"], constant=lg.get("constant"))
        )
    phi1, psi1, phi2, psi2 = funcs
    for nm, (fa, fb) in (("Phi", (phi1, phi2)), ("Psi", (psi1, psi2))):
        ip = inverse_product_check(fa, fb, prod_exp, r)
        conds.append(
            _condition(f"inverse_product_{nm}", ip["bounded"], constant=ip.get("constant"))
        )
    return conds


def check_pseudo_hypotheses(p: float, q: float,
                            phi1: YoungFunction, psi1: YoungFunction,
                            phi2: YoungFunction, psi2: YoungFunction,
                            r: float = 0.5) -> dict:
    """Hypothesis battery for operator continuity between the two mixed
    spaces: q <= p, and for p > 1 the p'-steering, local doubling, lower
    growth against t^{q'}, and inverse-product bounds against s^{1/p'+1/q'}."""
    if not (1.0 <= p) or not (1.0 <= q):
        raise ValueError("exponents must lie in [1, inf]")
    conds = [_condition("q_le_p", q <= p)]
    if p > 1.0:
        pp = _dual_exponent(p)
        qp = _dual_exponent(q)
        beta = (0.0 if math.isinf(pp) else 1.0 / pp) + (
            0.0 if math.isinf(qp) else 1.0 / qp
        )
        conds += _shared_function_conditions(
            (phi1, psi1, phi2, psi2), steer_exp=pp, growth_exp=qp, prod_exp=beta, r=r
        )
    else:
        conds.append(
            _condition("dual_exponent_conditions", True, applicable=False,
                       note="p = 1 leaves no dual-exponent requirements")
        )
    passes = all(c["passed"] for c in conds if c["applicable"])
    return {"p": p, "q": q, "r": r, "conditions": conds, "passes": passes}


def check_wigner_hypotheses(p: float, q: float,
                            phi1: YoungFunction, psi1: YoungFunction,
                            phi2: YoungFunction, psi2: YoungFunction,
                            r: float = 0.5) -> dict:
    """Hypothesis battery for the cross-term transform: q >= p, p-steering,
    local doubling, lower growth against t^q, inverse products against
    s^{1/p+1/q}."""
    if not (1.0 <= p) or not (1.0 <= q):
        raise ValueError("exponents must lie in [1, inf]")
    conds = [_condition("q_ge_p", q >= p)]
    if math.isfinite(p):
        beta = (1.0 / p) + (0.0 if math.isinf(q) else 1.0 / q)
        conds += _shared_function_conditions(
            (phi1, psi1, phi2, psi2), steer_exp=p, growth_exp=q, prod_exp=beta, r=r
        )
    else:
        conds.append(
            _condition("exponent_conditions", True, applicable=False,
                       note="p = inf leaves no steering requirements")
        )
    passes = all(c["passed"] for c in conds if c["applicable"])
    return {"p": p, "q": q, "r": r, "conditions": conds, "passes": passes}


# -- STFT norm factorization ----------------------------------------------------


def stft_norm_factorization_check(f1: Field, f2: Field,
                                  phi: YoungFunction, psi: YoungFunction) -> dict:
    """Compares |V_{f1} f2|_{M^{Phi,Psi}} with |f1|_{M^{Phi,Psi}} |f2|_{W^{Psi,Phi}}.

    The left side is a modulation norm of a two-variable field, which costs a
    four-dimensional STFT; the resolution guard keeps that object at desk
    scale.
    """
    n = max(ax.n for ax in f1.grid.axes)
    if n > 48:
        raise ValueError("factorization check needs N <= 48 (the inner object is 4-d)")
    if not f1.grid.matches(f2.grid):
        raise ValueError("grid mismatch")

    m_spec = ModulationSpaceSpec(phi, psi, flavor="M")
    w_spec = ModulationSpaceSpec(psi, phi, flavor="W")

    if l2_norm(f2) == 0.0 or l2_norm(f1) == 0.0:
        return {"lhs": 0.0, "rhs": 0.0, "ratio": math.nan}

    V12 = stft(f2, f1)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        win2 = make_gaussian(V12.grid, 1.0)
    V4 = stft(V12, win2)
    lhs = mixed_norm(V4, m_spec.stages_for(2))
    rhs = modulation_norm(f1, m_spec) * modulation_norm(f2, w_spec)
    ratio = lhs / rhs if rhs > 0 else (0.0 if lhs == 0.0 else math.inf)
    return {"lhs": lhs, "rhs": rhs, "ratio": ratio}
