"""Functional decomposition: right factors, common right divisors, the composition
condition P = P~(W), Q = Q~(W), W(a) = W(b), and endpoint multiplicities.

Right factors are normalized monic with W(0) = 0. Under that gauge a polynomial has at
most one right factor of each degree, and it is the polynomial part of an r-th root of
the monic normalization of P, so no undetermined-coefficient solving is needed.
"""
from __future__ import annotations

from dataclasses import dataclass

from .moments import ProblemInstance
from .poly import Poly, series_rth_root, wadic_expand


def normalize_monic(P: Poly) -> Poly:
    """(P - P(0)) / lc(P): monic, zero constant term, same right factors as P."""
    return (P - P.coeff(0)).monic()


def _divisors(n):
    return [m for m in range(1, n + 1) if n % m == 0]


def right_factor_of_degree(P: Poly, m: int) -> Poly | None:
    """The normalized right factor of degree ``m``, or None if there is none."""
    n = P.degree
    if m < 1 or n % m:
        return None
    Pm = normalize_monic(P)
    if m == n:
        return Pm
    if m == 1:
        return Poly.z(P.field)
    W = series_rth_root(Pm, n // m)
    return W if wadic_expand(Pm, W).is_composition() else None


def right_factors(P: Poly) -> list:
    """All ``(m, W_m)`` with 1 < m < deg P and P = P~(W_m), ascending in m."""
    if P.degree < 2:
        raise ValueError("right_factors needs deg P >= 2")
    out = []
    for m in _divisors(P.degree)[1:-1]:
        W = right_factor_of_degree(P, m)
        if W is not None:
            out.append((m, W))
    return out


def is_indecomposable(P: Poly) -> bool:
    n = P.degree
    if n < 2:
        raise ValueError("indecomposability is defined for deg P >= 2")
    if all(n % m for m in range(2, int(n ** 0.5) + 1)):
        return True
    return not right_factors(P)


def outer_factor(p: Poly, W: Poly) -> Poly | None:
    """``p~`` with ``p = p~(W)`` if it exists."""
    return wadic_expand(p, W).outer()


def _candidates(P: Poly):
    """Normalized right factors of P of degree >= 2, largest first, P itself included."""
    n = P.degree
    out = [(n, normalize_monic(P))]
    for m, W in reversed(right_factors(P)):
        out.append((m, W))
    return out


def common_right_divisor(P: Poly, Q: Poly):
    """Maximal-degree common right factor ``(W, P~, Q~)`` of P and Q, or None.

    Only nonlinear W count. A constant Q is divisible by every W.
    """
    if P.degree < 2:
        raise ValueError("common_right_divisor needs deg P >= 2")
    for m, W in _candidates(P):
        Qt = outer_factor(Q, W)
        if Qt is not None:
            return W, outer_factor(P, W), Qt
    return None


@dataclass(frozen=True)
class CompositionCertificate:
    W: Poly
    outer_P: Poly
    outer_Q: Poly
    endpoint_equal: bool

    def verify(self, P: Poly, Q: Poly) -> bool:
        return self.outer_P(self.W) == P and self.outer_Q(self.W) == Q

    def to_json(self) -> dict:
        return {
            "W": self.W.to_strings(),
            "P_outer": self.outer_P.to_strings(),
            "Q_outer": self.outer_Q.to_strings(),
            "endpoint_equal": self.endpoint_equal,
        }


def make_certificate(P: Poly, Q: Poly, W: Poly, a, b) -> CompositionCertificate | None:
    Pt, Qt = outer_factor(P, W), outer_factor(Q, W)
    if Pt is None or Qt is None:
        return None
    cert = CompositionCertificate(W, Pt, Qt, W(a) == W(b))
    if not cert.verify(P, Q):
        raise AssertionError("composition certificate failed to recompose")
    return cert


def composition_condition(inst: ProblemInstance) -> CompositionCertificate | None:
    """Largest-degree W right-dividing P and Q with W(a) = W(b), as a certificate."""
    for m, W in _candidates(inst.P):
        Qt = outer_factor(inst.Q, W)
        if Qt is None or W(inst.a) != W(inst.b):
            continue
        return make_certificate(inst.P, inst.Q, W, inst.a, inst.b)
    return None


@dataclass(frozen=True)
class MultiplicityData:
    d_a: int
    d_b: int


def multiplicity(P: Poly, c) -> int:
    """Order of the zero of P - P(c) at c."""
    if P.degree < 1:
        raise ValueError("multiplicity needs a nonconstant polynomial")
    d = P.derivative()
    k = 1
    while d(c).is_zero():
        d = d.derivative()
        k += 1
    return k


def multiplicities(P: Poly, a, b) -> MultiplicityData:
    return MultiplicityData(multiplicity(P, a), multiplicity(P, b))


__all__ = [
    "CompositionCertificate", "MultiplicityData", "common_right_divisor", "composition_condition",
    "is_indecomposable", "make_certificate", "multiplicities", "multiplicity", "normalize_monic",
    "outer_factor", "right_factor_of_degree", "right_factors",
]
