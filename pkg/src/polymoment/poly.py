"""Dense univariate polynomials over an exact :class:`NumberField`.

Coefficients are stored ascending with no trailing zeros. Products are routed
through :mod:`polymoment._intpoly` (one rational polynomial per power-basis
coordinate), everything else is plain schoolbook arithmetic on field elements;
the degrees this package deals with are small.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _intpoly as ip
from .errors import DegreeNotDivisible, FieldMismatch, NotMonic
from .field import QQ, FieldElement, NumberField, fe_embed, format_scalar


def _infer_field(coeffs, field):
    if field is not None:
        return field
    for c in coeffs:
        if isinstance(c, FieldElement) and c.field.degree > 1:
            return c.field
    return QQ


class Poly:
    """Immutable polynomial ``sum(coeffs[k] * z**k)``."""

    __slots__ = ("field", "coeffs", "_parts", "_hash")

    def __init__(self, coeffs: Sequence = (), field: NumberField | None = None):
        if isinstance(coeffs, Poly):
            coeffs = coeffs.coeffs
        coeffs = list(coeffs)
        field = _infer_field(coeffs, field)
        cs = [field.element(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)
        self._parts = None
        self._hash = None

    # -- constructors ---------------------------------------------------------
    @classmethod
    def z(cls, field: NumberField = QQ) -> "Poly":
        return cls([0, 1], field)

    @classmethod
    def constant(cls, c, field: NumberField = QQ) -> "Poly":
        return cls([c], field)

    @classmethod
    def monomial(cls, k: int, c=1, field: NumberField = QQ) -> "Poly":
        return cls([0] * k + [c], field)

    @classmethod
    def _from_parts(cls, field: NumberField, parts) -> "Poly":
        n = max((len(p[0]) for p in parts), default=0)
        if n == 0:
            return cls((), field)
        fr = [ip.to_fractions(p) for p in parts]
        coeffs = []
        for k in range(n):
            coeffs.append(FieldElement(field, tuple(f[k] if k < len(f) else Fraction(0) for f in fr)))
        out = cls.__new__(cls)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        out.field = field
        out.coeffs = tuple(coeffs)
        out._parts = tuple(parts) if len(parts) == field.degree else None
        out._hash = None
        return out

    # -- basic properties -------------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> FieldElement:
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.coeffs)

    def coeff(self, k: int) -> FieldElement:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.field.zero

    def parts(self):
        """Per-coordinate rational polynomials as ``(nums, den)`` pairs."""
        if self._parts is None:
            d = self.field.degree
            self._parts = tuple(
                ip.from_fractions([c.coordinate(r) for c in self.coeffs]) for r in range(d))
        return self._parts

    # -- arithmetic -------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.field == self.field:
                return other
            if other.field.degree == 1 and other.is_rational():
                return Poly(other.coeffs, self.field)
            if self.field.degree == 1:
                return other
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        if isinstance(other, (int, Fraction, FieldElement)):
            return Poly([other], self.field)
        return NotImplemented

    def _lift(self, other):
        """Bring ``self`` and ``other`` into one field (Q embeds in any field)."""
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented, NotImplemented
        if o.field != self.field:
            return Poly(self.coeffs, o.field), o
        return self, o

    def __add__(self, other):
        a, b = self._lift(other)
        if a is NotImplemented:
            return NotImplemented
        n = max(len(a.coeffs), len(b.coeffs))
        return Poly([a.coeff(k) + b.coeff(k) for k in range(n)], a.field)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.field)

    def __sub__(self, other):
        a, b = self._lift(other)
        if a is NotImplemented:
            return NotImplemented
        n = max(len(a.coeffs), len(b.coeffs))
        return Poly([a.coeff(k) - b.coeff(k) for k in range(n)], a.field)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FieldElement)):
            c = self.field.element(other) if not (
                isinstance(other, FieldElement) and other.field.degree > self.field.degree) else other
            return Poly([x * c for x in self.coeffs], c.field if isinstance(c, FieldElement) else self.field)
        a, b = self._lift(other)
        if a is NotImplemented:
            return NotImplemented
        if a.is_zero() or b.is_zero():
            return Poly((), a.field)
        return Poly._from_parts(a.field, _mul_parts(a.field, a.parts(), b.parts()))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result = Poly([1], self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other):
        a, b = self._lift(other)
        if a is NotImplemented:
            return NotImplemented
        if b.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        num = list(a.coeffs)
        db = b.degree
        inv = b.lc.inverse()
        quo = [a.field.zero] * max(len(num) - db, 0)
        while len(num) - 1 >= db and num:
            shift = len(num) - 1 - db
            c = num[-1] * inv
            quo[shift] = c
            for i, x in enumerate(b.coeffs):
                num[i + shift] = num[i + shift] - c * x
            num.pop()
            while num and num[-1].is_zero():
                num.pop()
        return Poly(quo, a.field), Poly(num, a.field)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs and (
                self.field == other.field or self.is_rational() and other.is_rational())
        if isinstance(other, (int, Fraction, FieldElement)):
            return self == Poly([other], self.field)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    # -- evaluation / composition ------------------------------------------------
    def __call__(self, x):
        if isinstance(x, Poly):
            return poly_compose(self, x)
        if isinstance(x, (complex, float, np.ndarray, np.number)):
            return np.polyval(self.to_complex()[::-1], x)
        x = x if isinstance(x, FieldElement) else self.field.element(x)
        if x.field != self.field and x.field.degree > 1:
            if self.field.degree > 1:
                raise FieldMismatch(f"{x.field!r} vs {self.field!r}")
            return Poly(self.coeffs, x.field)(x)
        acc = self.field.zero if x.field == self.field else x.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly([c * k for k, c in enumerate(self.coeffs) if k], self.field)

    def antiderivative(self) -> "Poly":
        return Poly([0] + [c * Fraction(1, k + 1) for k, c in enumerate(self.coeffs)], self.field)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        inv = self.lc.inverse()
        return Poly([c * inv for c in self.coeffs], self.field)

    def to_complex(self, precision: int = 53) -> np.ndarray:
        """Ascending complex128 coefficient array under the field embedding."""
        return np.array([complex(fe_embed(c, precision)) for c in self.coeffs], dtype=complex)

    # -- display ----------------------------------------------------------------
    def to_strings(self) -> list:
        return [format_scalar(c) for c in self.coeffs]

    def __repr__(self):
        return f"Poly({self.to_strings()}{'' if self.field == QQ else ', ' + repr(self.field)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            s = format_scalar(c)
            if not c.is_rational():
                s = f"({s})"
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if mono and s == "1":
                s = ""
            elif mono and s == "-1":
                s = "-"
            terms.append(f"{s}{mono}" if s in ("", "-") else (f"{s}*{mono}" if mono else s))
        return " + ".join(terms).replace("+ -", "- ")


def _mul_parts(field: NumberField, pa, pb):
    d = field.degree
    if d == 1:
        return (ip.mul(pa[0], pb[0]),)
    table = field.reduction_table(2 * d - 1)
    out = [ip.ZERO] * d
    for r, x in enumerate(pa):
        if not x[0]:
            continue
        for s, y in enumerate(pb):
            if not y[0]:
                continue
            prod = ip.mul(x, y)
            row = table[r + s]
            for t in range(d):
                if row[t]:
                    out[t] = ip.add(out[t], prod if row[t] == 1 else ip.scale(prod, row[t]))
    return tuple(out)


def poly_compose(outer: Poly, inner: Poly) -> Poly:
    """``outer(inner(z))`` exactly (Horner in the polynomial ring)."""
    if outer.field != inner.field:
        if inner.field.degree == 1 and inner.is_rational():
            inner = Poly(inner.coeffs, outer.field)
        elif outer.field.degree == 1 and outer.is_rational():
            outer = Poly(outer.coeffs, inner.field)
        else:
            raise FieldMismatch(f"{outer.field!r} vs {inner.field!r}")
    acc = Poly((), outer.field)
    for c in reversed(outer.coeffs):
        acc = acc * inner + c
    return acc


def poly_calculus(p: Poly, op: str) -> Poly:
    if op == "derivative":
        return p.derivative()
    if op == "antiderivative":
        return p.antiderivative()
    raise ValueError(f"unknown calculus op {op!r}")


@dataclass(frozen=True)
class WadicExpansion:
    """``p = sum(digits[i] * base**i)`` with every digit of degree < deg(base)."""

    base: Poly
    digits: tuple

    def reconstruct(self) -> Poly:
        acc = Poly((), self.base.field)
        for c in reversed(self.digits):
            acc = acc * self.base + c
        return acc

    def is_composition(self) -> bool:
        return all(d.is_constant() for d in self.digits)

    def outer(self) -> Poly | None:
        """The outer polynomial when every digit is constant, else ``None``."""
        if not self.is_composition():
            return None
        return Poly([d.coeff(0) for d in self.digits], self.base.field)


def wadic_expand(p: Poly, w: Poly) -> WadicExpansion:
    if w.degree < 1:
        raise ValueError("W-adic expansion needs deg w >= 1")
    a, b = p._lift(w)
    digits = []
    rest = a
    while not rest.is_zero():
        rest, r = divmod(rest, b)
        digits.append(r)
    return WadicExpansion(b, tuple(digits))


def series_rth_root(p: Poly, r: int) -> Poly:
    """Normalized right-factor candidate of degree ``deg(p) / r``.

    Returns the monic ``w`` with ``w(0) = 0`` whose sum with some constant agrees
    with the power-series r-th root of ``p`` at infinity up to ``O(1/z)``.
    """
    if not p.is_monic():
        raise NotMonic("series_rth_root requires a monic polynomial")
    n = p.degree
    if r < 2 or n % r:
        raise DegreeNotDivisible(f"cannot take a {r}-th root of a degree-{n} polynomial")
    m = n // r
    # reversed polynomial R(y) = y^n p(1/y) = 1 + c1 y + ...; S = R^(1/r) mod y^(m+1)
    rev = [p.coeff(n - k) for k in range(m + 1)]
    alpha = Fraction(1, r)
    s = [p.field.one]
    for k in range(1, m + 1):
        acc = p.field.zero
        for j in range(1, k + 1):
            if not rev[j].is_zero():
                acc = acc + rev[j] * s[k - j] * ((alpha + 1) * j - k)
        s.append(acc * Fraction(1, k))
    return Poly([0] + [s[m - e] for e in range(1, m + 1)], p.field)
