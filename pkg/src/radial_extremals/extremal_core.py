"""Coordinate conventions, the weighted-arc-length Lagrangian, and residual
checks for the stationarity conditions.

Angle convention: phi is measured from the positive y-axis toward the
positive x-axis, tan(phi) = x/y, so x = z*sin(phi) and y = z*cos(phi).
(The conventional polar angle is theta_std = pi/2 - phi.)

For curves written as graphs y(x) with slope p = dy/dx, the integrand of
``integral of v ds`` is V(x, y, p) = v(z) * sqrt(1 + p^2), z = sqrt(x^2+y^2),
and with dV = M dx + N dy + P dp the stationarity condition is N dx = dP.
The equivalent form M dx = d(V - P*p) is often better conditioned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NonMonotoneAbscissa
from .weights import RadialWeight, eval_q, eval_v

__all__ = ["CartesianPoint", "PolarPoint", "ELPartials",
           "to_cartesian", "to_polar", "lagrangian_partials_cartesian",
           "clairaut_constant", "clairaut_constant_from_angle",
           "el_residual", "beltrami_residual"]


@dataclass(frozen=True)
class CartesianPoint:
    x: float
    y: float


@dataclass(frozen=True)
class PolarPoint:
    phi: float  # radians from the +y axis, tan(phi) = x/y
    z: float    # distance from the pole, > 0


@dataclass(frozen=True)
class ELPartials:
    """Partials of V(x, y, p) = v*sqrt(1+p^2): dV = M dx + N dy + P dp."""
    V: float
    M: float
    N: float
    P: float


def to_cartesian(pt: PolarPoint) -> CartesianPoint:
    """x = z*sin(phi), y = z*cos(phi)."""
    return CartesianPoint(pt.z * math.sin(pt.phi), pt.z * math.cos(pt.phi))


def to_polar(pt: CartesianPoint) -> PolarPoint:
    """Inverse of to_cartesian on the principal branch phi in (-pi, pi]."""
    z = math.hypot(pt.x, pt.y)
    if z == 0.0:
        raise DomainError("the pole x = y = 0 has no polar angle")
    return PolarPoint(math.atan2(pt.x, pt.y), z)


def lagrangian_partials_cartesian(pt: CartesianPoint, p: float,
                                  w: RadialWeight) -> ELPartials:
    """Partials of V = v(z)*sqrt(1+p^2) at a point with slope p = dy/dx."""
    z = math.hypot(pt.x, pt.y)
    v = eval_v(w, z)
    q = eval_q(w, z)
    root = math.sqrt(1.0 + p * p)
    return ELPartials(V=v * root,
                      M=q * pt.x * root / z,
                      N=q * pt.y * root / z,
                      P=v * p / root)


def clairaut_constant(r: float, dtheta_dr: float, w: RadialWeight) -> float:
    """Conserved tangential momentum v*p*r^2/sqrt(1+p^2*r^2), p = dtheta/dr.

    Along any extremal this equals a constant 1/n.  The point-at-infinity
    marker (math.inf) for dtheta_dr encodes a tangent perpendicular to the
    radius, where the limit is v*r.
    """
    v = eval_v(w, r)
    if math.isinf(dtheta_dr):
        return math.copysign(v * r, dtheta_dr)
    rp = dtheta_dr * r
    return v * r * rp / math.hypot(1.0, rp)


def clairaut_constant_from_angle(r: float, alpha: float,
                                 w: RadialWeight) -> float:
    """Same conserved quantity from the tangent-radius angle: v*r*sin(alpha)."""
    return eval_v(w, r) * r * math.sin(alpha)


def _xy_arrays(samples):
    pts = np.asarray([(s.x, s.y) if isinstance(s, CartesianPoint) else tuple(s)
                      for s in samples], dtype=float)
    return pts[:, 0], pts[:, 1]


def _local_dx(x: np.ndarray) -> np.ndarray:
    dx = np.empty_like(x)
    dx[1:-1] = 0.5 * (x[2:] - x[:-2])
    dx[0] = x[1] - x[0]
    dx[-1] = x[-1] - x[-2]
    return dx


def _check_graph(samples):
    x, y = _xy_arrays(samples)
    if len(x) < 5:
        raise DomainError("need at least 5 samples")
    if not np.all(np.diff(x) > 0.0):
        raise NonMonotoneAbscissa("abscissae must be strictly increasing")
    return x, y


def el_residual(samples, w: RadialWeight) -> np.ndarray:
    """Discrete residual of the stationarity condition N dx = dP.

    Slopes and dP/dx come from second-order finite differences (central in
    the interior, one-sided at the two ends).  The returned per-sample values
    (N - dP/dx) * dx_local vanish at second order iff the sampled graph is an
    extremal; end entries use one-sided stencils and should be excluded from
    max-residual gates.
    """
    x, y = _check_graph(samples)
    z = np.hypot(x, y)
    p = np.gradient(y, x, edge_order=2)
    root = np.sqrt(1.0 + p * p)
    q = eval_q(w, z)
    N = q * y * root / z
    P = eval_v(w, z) * p / root
    dPdx = np.gradient(P, x, edge_order=2)
    return (N - dPdx) * _local_dx(x)


def beltrami_residual(samples, w: RadialWeight) -> np.ndarray:
    """Discrete residual of the equivalent condition M dx = d(V - P*p)."""
    x, y = _check_graph(samples)
    z = np.hypot(x, y)
    p = np.gradient(y, x, edge_order=2)
    root = np.sqrt(1.0 + p * p)
    v = eval_v(w, z)
    q = eval_q(w, z)
    M = q * x * root / z
    W = v * root - (v * p / root) * p   # V - P*p, equals v/sqrt(1+p^2)
    dWdx = np.gradient(W, x, edge_order=2)
    return (M - dWdx) * _local_dx(x)
