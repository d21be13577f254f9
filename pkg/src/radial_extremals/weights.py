"""Radial weight functions v(z) and their exact derivatives q(z) = dv/dz.

The weight multiplies arc length in the functional ``integral of v(z) ds``,
where z is the distance from the fixed pole.  Two variants exist: an exact
power law z**lam, and a parsed expression differentiated by forward-mode dual
numbers.  Both evaluate on scalars or numpy arrays.
"""

from __future__ import annotations

import numpy as np

from . import expressions
from .dual import Dual
from .errors import DomainError, EvalError, NonPositiveWeight

__all__ = ["RadialWeight", "PowerLaw", "ExpressionWeight",
           "eval_v", "eval_q", "parse_weight", "render"]


class RadialWeight:
    """Base class; subclasses implement raw value/derivative evaluation."""

    domain_min: float = 0.0

    def _raw_v(self, z):
        raise NotImplementedError

    def _raw_q(self, z):
        raise NotImplementedError

    def text(self) -> str:
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}({self.text()!r})"


class PowerLaw(RadialWeight):
    """v(z) = z**lam with exact derivative lam * z**(lam-1)."""

    def __init__(self, lam: float, domain_min: float = 0.0):
        self.lam = float(lam)
        self.domain_min = float(domain_min)

    def _raw_v(self, z):
        if self.lam == 0.0:
            return np.ones_like(z)
        return z ** self.lam

    def _raw_q(self, z):
        if self.lam == 0.0:
            return np.zeros_like(z)
        return self.lam * z ** (self.lam - 1.0)

    def text(self) -> str:
        return f"z^{self.lam!r}"


class ExpressionWeight(RadialWeight):
    """Weight given by a parsed expression tree over z."""

    def __init__(self, ast, source: str | None = None, domain_min: float = 0.0):
        self.ast = ast
        self.source = source if source is not None else expressions.render(ast)
        self.domain_min = float(domain_min)

    def _raw_v(self, z):
        return np.broadcast_to(np.asarray(expressions.evaluate(self.ast, z),
                                          dtype=float), np.shape(z))

    def _raw_q(self, z):
        out = expressions.evaluate(self.ast, Dual(z, np.ones_like(z)))
        if not isinstance(out, Dual):  # constant expression
            return np.zeros_like(z)
        return np.broadcast_to(np.asarray(out.der, dtype=float), np.shape(z))

    def text(self) -> str:
        return self.source


def _check_domain(w: RadialWeight, z):
    z = np.asarray(z, dtype=float)
    if not np.all(z > w.domain_min):
        raise DomainError(
            f"z must exceed the weight's domain minimum {w.domain_min}")
    return z


def _finish(w, z_in, value, what):
    if not np.all(np.isfinite(value)):
        raise EvalError(f"weight {what} is not finite for {w!r}")
    if np.ndim(z_in) == 0:
        return float(value)
    return value


def eval_v(w: RadialWeight, z):
    """Weight value v(z); z may be a scalar or an array.

    Raises DomainError for z <= domain_min, EvalError on non-finite results,
    and NonPositiveWeight where v(z) <= 0.
    """
    za = _check_domain(w, z)
    with np.errstate(all="ignore"):
        val = w._raw_v(za)
    out = _finish(w, z, val, "value")
    if np.any(np.asarray(out) <= 0.0):
        raise NonPositiveWeight(f"weight {w!r} is non-positive at some z")
    return out


def eval_q(w: RadialWeight, z):
    """Exact derivative q(z) = dv/dz; same domain checks as eval_v."""
    za = _check_domain(w, z)
    with np.errstate(all="ignore"):
        val = w._raw_v(za)
        der = w._raw_q(za)
    if not np.all(np.isfinite(val)):
        raise EvalError(f"weight value is not finite for {w!r}")
    if np.any(val <= 0.0):
        raise NonPositiveWeight(f"weight {w!r} is non-positive at some z")
    return _finish(w, z, der, "derivative")


def parse_weight(text: str) -> RadialWeight:
    """Parse an expression for v(z).

    A bare power ``z^<number>`` reduces to the exact PowerLaw variant;
    anything else becomes an ExpressionWeight differentiated by dual numbers.
    """
    if not text or not text.strip():
        raise DomainError("weight expression must be nonempty")
    ast = expressions.parse_expression(text)
    if isinstance(ast, expressions.Bin) and ast.op == "^" \
            and isinstance(ast.lhs, expressions.Var) \
            and isinstance(ast.rhs, expressions.Num):
        return PowerLaw(ast.rhs.value)
    return ExpressionWeight(ast, source=text)


def render(w: RadialWeight) -> str:
    """Parseable text form of a weight (round-trips through parse_weight)."""
    return w.text()
