"""Two-point boundary-value solving: pick the constant n through two points.

The swept angle between two radii on an extremal depends only on n, so a
bracketing bisection on the angular span recovers the constant; the pose
phi0 then follows from the endpoint angles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ForbiddenRegion, NoBracket, QuadratureFailure
from .extremal_core import PolarPoint
from .reduced_ode import ExtremalSpec, integrate_phi
from .weights import RadialWeight

__all__ = ["BvpProblem", "BvpSolution", "angular_span", "solve_n"]


@dataclass
class BvpProblem:
    """Endpoints in tan(phi) = x/y polar form, a weight, and the branch layout.

    same_branch=False means the turning point lies between the endpoints;
    True means both endpoints sit on one monotone-radius branch.
    """

    a: PolarPoint
    b: PolarPoint
    weight: RadialWeight
    same_branch: bool = False

    def __post_init__(self):
        if (self.a.phi, self.a.z) == (self.b.phi, self.b.z):
            raise NoBracket("endpoints must differ")


@dataclass
class BvpSolution:
    n: float
    phi0: float
    z_turn: float
    span: float


def _branch_angles(prob: BvpProblem, n: float, tol: float):
    spec = ExtremalSpec(prob.weight, n)
    zt = spec.z_turn
    if min(prob.a.z, prob.b.z) < zt * (1.0 - 1e-12):
        raise ForbiddenRegion(
            f"turning radius {zt} exceeds an endpoint radius at n = {n}")
    da = integrate_phi(spec, zt, prob.a.z, tol)
    db = integrate_phi(spec, zt, prob.b.z, tol)
    return spec, da, db


def angular_span(n: float, prob: BvpProblem, tol: float = 1e-12) -> float:
    """Total |delta phi| between the endpoints on the extremal with constant n."""
    _, da, db = _branch_angles(prob, n, tol)
    return abs(da - db) if prob.same_branch else da + db


def solve_n(prob: BvpProblem, target_span: float, n_bracket,
            tol: float) -> BvpSolution:
    """Bisect on n until the angular span matches target_span within tol.

    The bracket must produce spans straddling the target; no monotonicity
    beyond that sign change is assumed.  Returns the constant and the pose
    phi0 implied by the endpoint angles.
    """
    n_lo, n_hi = float(n_bracket[0]), float(n_bracket[1])
    if not 0.0 < n_lo < n_hi:
        raise NoBracket(f"invalid n bracket [{n_lo}, {n_hi}]")
    qtol = min(1e-13, max(tol / 10.0, 1e-14))
    f_lo = angular_span(n_lo, prob, qtol) - target_span
    f_hi = angular_span(n_hi, prob, qtol) - target_span
    if f_lo == 0.0:
        n_star, f_star = n_lo, f_lo
    elif f_hi == 0.0:
        n_star, f_star = n_hi, f_hi
    elif f_lo * f_hi > 0.0:
        raise NoBracket(
            f"angular span does not straddle {target_span} on "
            f"[{n_lo}, {n_hi}] (residuals {f_lo:.3e}, {f_hi:.3e})")
    else:
        n_star, f_star = (n_lo, f_lo) if abs(f_lo) < abs(f_hi) else (n_hi, f_hi)
        for _ in range(200):
            if abs(f_star) <= tol:
                break
            if n_hi - n_lo <= 1e-15 * n_hi:
                raise QuadratureFailure(
                    f"bracket collapsed with span residual {f_star:.3e} "
                    f"still above tol {tol:.3e}")
            mid = 0.5 * (n_lo + n_hi)
            f_mid = angular_span(mid, prob, qtol) - target_span
            if abs(f_mid) < abs(f_star):
                n_star, f_star = mid, f_mid
            if f_lo * f_mid <= 0.0:
                n_hi, f_hi = mid, f_mid
            else:
                n_lo, f_lo = mid, f_mid

    spec, da, db = _branch_angles(prob, n_star, qtol)
    phi_a, phi_b = prob.a.phi, prob.b.phi
    if prob.same_branch:
        sgn = math.copysign(1.0, (phi_b - phi_a) * (prob.b.z - prob.a.z)) \
            if prob.b.z != prob.a.z else 1.0
        phi0 = phi_a - sgn * da
    else:
        sgn = math.copysign(1.0, phi_b - phi_a)
        phi0 = phi_a + sgn * da
    return BvpSolution(n=n_star, phi0=phi0, z_turn=spec.z_turn,
                       span=abs(da - db) if prob.same_branch else da + db)
