"""Expansion of Q(P^{-1}(t)) at infinity in powers of t^{1/n}, computed exactly.

With u = t^{-1/n} and w = v / u, the equation P(w) = t for monic P becomes
sum_k p_k v^k u^{n-k} = 1, which has a unique power series solution v = 1 + O(u).
Its coefficients lie in the field of P, so everything below is exact until the
final embedding.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from ..errors import NotMonic
from ..field import fe_embed, format_scalar
from ..poly import Poly


def _truncate(p: Poly, order: int) -> Poly:
    return Poly(p.coeffs[:order], p.field) if p.degree >= order else p


def _equation(P: Poly, v: Poly, order: int) -> Poly:
    """sum_k p_k v^k u^(n-k) mod u^order, by Horner in v."""
    n = P.degree
    K = P.field
    h = Poly.constant(P.coeff(n), K)
    for k in range(n - 1, -1, -1):
        h = _truncate(h * v, order) + Poly.monomial(n - k, P.coeff(k), K)
        h = _truncate(h, order)
    return h


def inverse_series(P: Poly, order: int) -> Poly:
    """v(u) mod u^order with P(v/u) = u^-n and v(0) = 1."""
    if not P.is_monic():
        raise NotMonic("Puiseux expansion needs a monic P")
    n = P.degree
    K = P.field
    coeffs = [K.one]
    for m in range(1, order):
        v = Poly(coeffs + [K.zero], K)
        F = _equation(P, v, m + 1)
        coeffs.append(-F.coeff(m) / n)
    return Poly(coeffs, K)


@dataclass(frozen=True)
class PuiseuxSeries:
    """Q(w) = sum a_k t^(k/n) on the branch with w ~ t^(1/n) (principal root)."""

    n: int
    coefficients: tuple  # (k, a_k) with k descending

    @property
    def epsilon(self) -> complex:
        return cmath.exp(2j * cmath.pi / self.n)

    def complex_coefficients(self) -> list:
        return [(k, complex(fe_embed(a))) for k, a in self.coefficients]

    def branch(self, i: int) -> list:
        """Coefficients of branch i: a_k -> a_k eps^(i k)."""
        eps = self.epsilon
        return [(k, a * eps ** ((i * k) % self.n)) for k, a in self.complex_coefficients()]

    def evaluate(self, t: complex, i: int = 0) -> complex:
        tau = complex(t) ** (1.0 / self.n)
        return sum(a * tau ** k for k, a in self.branch(i))

    def to_json(self) -> dict:
        return {
            "ramification": self.n,
            "coefficients": [{"k": k, "value": format_scalar(a),
                              "approx": [round(c.real, 15) + 0.0, round(c.imag, 15) + 0.0]}
                             for (k, a), (_, c) in zip(self.coefficients, self.complex_coefficients())],
        }


def puiseux_at_infinity(P: Poly, Q: Poly, terms: int) -> PuiseuxSeries:
    """The ``terms`` leading coefficients a_k, k = deg Q, deg Q - 1, ..."""
    if terms < 1:
        raise ValueError("terms must be positive")
    if Q.field != P.field:
        if P.field.degree == 1:
            P = Poly(P.coeffs, Q.field)
        else:
            Q = Poly(Q.coeffs, P.field)
    n = P.degree
    v = inverse_series(P, terms)
    K = P.field
    top = max(Q.degree, 0)
    acc = [K.zero] * terms  # acc[m] is the coefficient of t^((top - m)/n)
    power = Poly.constant(K.one, K)
    for j in range(Q.degree + 1):
        qj = Q.coeff(j)
        if not qj.is_zero():
            for m in range(terms):
                e = j - top + m  # u-exponent giving t^((top - m)/n)
                if 0 <= e <= power.degree:
                    acc[m] = acc[m] + qj * power.coeff(e)
        power = _truncate(power * v, terms)
    return PuiseuxSeries(n, tuple((top - m, acc[m]) for m in range(terms)))


def branch_shift_residual(P: Poly, Q: Poly, series: PuiseuxSeries, t: complex) -> float:
    """Worst relative gap between the shifted series and the true values Q(p^{-1}(t))."""
    c = P.to_complex().copy()
    c[0] -= t
    roots = np.roots(c[::-1])
    true = np.polyval(Q.to_complex()[::-1], roots)
    scale = max(1.0, float(np.max(np.abs(true))))
    worst = 0.0
    for i in range(series.n):
        s = series.evaluate(t, i)
        worst = max(worst, float(np.min(np.abs(true - s))) / scale)
    return worst


__all__ = ["PuiseuxSeries", "branch_shift_residual", "inverse_series", "puiseux_at_infinity"]
