"""Exact scalars: the rationals and simple algebraic extensions Q[t]/(f).

Rationals are :class:`fractions.Fraction`. An element of Q[t]/(f) is stored as the
tuple of its rational coordinates on the power basis 1, t, ..., t^(d-1). The field
also carries an embedding index picking one complex root of ``f`` so that exact
values can be handed to the numeric side deterministically.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC

import mpmath

from .errors import FieldMismatch, NonInvertible, ParseError, RootIsolationFailure


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as a rational number")


# -- tiny dense Q[x] helpers (ascending coefficient lists) -------------------

def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _qdivmod(num, den):
    num = _trim(num)
    den = _trim(den)
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    lead = den[-1]
    while len(num) >= len(den):
        shift = len(num) - len(den)
        c = num[-1] / lead
        q[shift] = c
        for i, d in enumerate(den):
            num[i + shift] -= c * d
        num.pop()
        num = _trim(num)
    return q, num


def _qxgcd(a, b):
    """Return (g, s) with g = gcd(a, b) monic and s*a = g (mod b)."""
    r0, r1 = _trim(a), _trim(b)
    s0, s1 = [Fraction(1)], []
    while r1:
        q, r = _qdivmod(r0, r1)
        # s_new = s0 - q*s1
        prod = [Fraction(0)] * (len(q) + len(s1) - 1) if q and s1 else []
        for i, x in enumerate(q):
            for j, y in enumerate(s1):
                prod[i + j] += x * y
        n = max(len(s0), len(prod))
        s2 = [(s0[i] if i < len(s0) else 0) - (prod[i] if i < len(prod) else 0)
              for i in range(n)]
        r0, r1 = r1, r
        s0, s1 = s1, _trim(s2)
    lead = r0[-1]
    return [c / lead for c in r0], [c / lead for c in s0]


class NumberField:
    """Q[t]/(modulus) with a chosen complex embedding.

    ``modulus`` is an ascending list of rationals, monic, of degree >= 1.
    Irreducibility is the caller's promise; a failed inversion raises
    :class:`NonInvertible` and is how a reducible modulus gets noticed.
    """

    __slots__ = ("modulus", "embedding", "degree", "_powers")

    def __init__(self, modulus, embedding: int = 0):
        mod = tuple(as_fraction(c) for c in _trim([as_fraction(c) for c in modulus]))
        if len(mod) < 2:
            raise ValueError("field modulus must have degree >= 1")
        if mod[-1] != 1:
            raise ValueError("field modulus must be monic")
        d = len(mod) - 1
        if not 0 <= embedding < d:
            raise ValueError(f"embedding index {embedding} out of range for degree {d}")
        self.modulus = mod
        self.embedding = int(embedding)
        self.degree = d
        self._powers = None

    def __eq__(self, other):
        return (isinstance(other, NumberField) and self.modulus == other.modulus
                and self.embedding == other.embedding)

    def __hash__(self):
        return hash((self.modulus, self.embedding))

    def __repr__(self):
        if self.degree == 1:
            return "QQ"
        return f"NumberField({[str(c) for c in self.modulus]}, embedding={self.embedding})"

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def __call__(self, x) -> "FieldElement":
        return self.element(x)

    def element(self, x) -> "FieldElement":
        if isinstance(x, FieldElement):
            if x.field == self:
                return x
            if x.field.degree == 1:
                return FieldElement(self, x.coords)
            raise FieldMismatch(f"element of {x.field!r} used in {self!r}")
        if isinstance(x, str):
            return parse_scalar(x, self)
        return FieldElement(self, (as_fraction(x),))

    def from_coords(self, coords) -> "FieldElement":
        return FieldElement(self, tuple(as_fraction(c) for c in coords))

    @property
    def zero(self):
        return FieldElement(self, ())

    @property
    def one(self):
        return FieldElement(self, (Fraction(1),))

    @property
    def gen(self):
        if self.degree == 1:
            return FieldElement(self, (-self.modulus[0],))
        return FieldElement(self, (Fraction(0), Fraction(1)))

    def reduction_table(self, top: int):
        """Rows ``t^e`` for ``e < top`` written on the power basis."""
        if self._powers is None or len(self._powers) < top:
            d = self.degree
            rows = []
            for e in range(max(top, 2 * d)):
                if e < d:
                    row = [Fraction(0)] * d
                    row[e] = Fraction(1)
                else:
                    prev = rows[-1]
                    row = [Fraction(0)] + prev[:-1]
                    hi = prev[-1]
                    if hi:
                        for i in range(d):
                            row[i] -= hi * self.modulus[i]
                rows.append(row)
            self._powers = rows
        return self._powers

    # -- numeric embedding ------------------------------------------------
    def root(self, precision: int = 53):
        """The selected complex root of the modulus, to ``precision`` bits."""
        return _embedding_root(self.modulus, self.embedding, int(precision))

    def roots(self, precision: int = 53):
        return _sorted_roots(self.modulus, int(precision))


QQ = NumberField((0, 1))


def _root_key(z, scale):
    # quantized so that conjugate pairs with numerically-zero real parts sort stably
    q = float(scale) * 1e-12
    re_, im_ = float(z.real), float(z.imag)
    return (round(re_ / q) if q else re_, round(im_ / q) if q else im_)


@lru_cache(maxsize=256)
def _sorted_roots(modulus, precision):
    d = len(modulus) - 1
    if d == 1:
        with mpmath.workprec(precision + 20):
            return (mpmath.mpc(-mpmath.mpf(modulus[0].numerator) / modulus[0].denominator),)
    work = precision + 40
    with mpmath.workprec(work):
        coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(modulus)]
        try:
            approx = mpmath.polyroots(coeffs, maxsteps=200, extraprec=work)
        except mpmath.libmp.libhyper.NoConvergence as exc:
            raise RootIsolationFailure(str(exc)) from exc
        deriv = [c * (d - i) for i, c in enumerate(coeffs[:-1])]
        refined = []
        for z in approx:
            z = mpmath.mpc(z)
            step = None
            for _ in range(50):
                fz = mpmath.polyval(coeffs, z)
                dfz = mpmath.polyval(deriv, z)
                if dfz == 0:
                    raise RootIsolationFailure("modulus has a repeated root")
                step = fz / dfz
                z -= step
                if abs(step) <= mpmath.mpf(2) ** (-(precision + 10)) * max(1, abs(z)):
                    break
            else:
                raise RootIsolationFailure("Newton refinement of the field generator stalled")
            refined.append(z)
        sep = min(abs(x - y) for i, x in enumerate(refined) for y in refined[i + 1:])
        if sep <= mpmath.mpf(2) ** (-(precision // 2)):
            raise RootIsolationFailure("roots of the modulus are not separated")
        scale = max(1.0, max(float(abs(z)) for z in refined))
        refined.sort(key=lambda z: _root_key(z, scale))
        return tuple(refined)


def _embedding_root(modulus, index, precision):
    return _sorted_roots(modulus, precision)[index]


class FieldElement:
    """Immutable element of a :class:`NumberField`."""

    __slots__ = ("field", "coords", "_hash")

    def __init__(self, field: NumberField, coords):
        d = field.degree
        coords = list(coords)
        if len(coords) > d:
            coords = _reduce(coords, field)
        while coords and coords[-1] == 0:
            coords.pop()
        self.field = field
        self.coords = tuple(coords)
        self._hash = None

    # -- predicates / conversions ----------------------------------------
    def is_zero(self) -> bool:
        return not self.coords

    def __bool__(self):
        return bool(self.coords)

    def is_rational(self) -> bool:
        return len(self.coords) <= 1

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coords[0] if self.coords else Fraction(0)

    def coordinate(self, i: int) -> Fraction:
        return self.coords[i] if i < len(self.coords) else Fraction(0)

    def padded(self):
        return self.coords + (Fraction(0),) * (self.field.degree - len(self.coords))

    # -- coercion -----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field == self.field:
                return other
            if other.field.degree == 1:
                return FieldElement(self.field, other.coords)
            if self.field.degree == 1:
                # lift self instead; signalled by returning NotImplemented-ish marker
                return None
            raise FieldMismatch(f"cannot combine elements of {self.field!r} and {other.field!r}")
        if isinstance(other, (int, Fraction, _RationalABC)):
            return FieldElement(self.field, (Fraction(other),))
        return NotImplemented

    def _binary(self, other, fn, reflected=False):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            lifted = FieldElement(other.field, self.coords)
            return fn(other, lifted) if reflected else fn(lifted, other)
        return fn(o, self) if reflected else fn(self, o)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        return self._binary(other, _add)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, _sub)

    def __rsub__(self, other):
        return self._binary(other, _sub, reflected=True)

    def __mul__(self, other):
        return self._binary(other, _mul)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binary(other, _div)

    def __rtruediv__(self, other):
        return self._binary(other, _div, reflected=True)

    def __neg__(self):
        return FieldElement(self.field, tuple(-c for c in self.coords))

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse(self) -> "FieldElement":
        if not self.coords:
            raise NonInvertible("division by zero")
        if len(self.coords) == 1:
            return FieldElement(self.field, (1 / self.coords[0],))
        g, s = _qxgcd(list(self.coords), list(self.field.modulus))
        if len(g) != 1:
            raise NonInvertible(
                f"{self} is a zero divisor: the modulus {list(map(str, self.field.modulus))} is reducible")
        return FieldElement(self.field, s)

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, FieldElement):
            if other.field == self.field:
                return self.coords == other.coords
            if self.is_rational() and other.is_rational() and (
                    self.field.degree == 1 or other.field.degree == 1):
                return self.coords == other.coords
            return False
        if isinstance(other, (int, Fraction, _RationalABC)):
            return self.is_rational() and self.to_fraction() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.to_fraction())
            else:
                self._hash = hash((self.field, self.coords))
        return self._hash

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        if self.field.degree == 1:
            return f"FieldElement({format_scalar(self)!r})"
        return f"FieldElement({format_scalar(self)!r}, {self.field!r})"

    # -- numeric bridge -------------------------------------------------------
    def embed(self, precision: int = 53):
        return fe_embed(self, precision)


def _reduce(coords, field):
    d = field.degree
    table = field.reduction_table(len(coords))
    out = [Fraction(0)] * d
    for e, c in enumerate(coords):
        if not c:
            continue
        if e < d:
            out[e] += c
        else:
            row = table[e]
            for i in range(d):
                if row[i]:
                    out[i] += c * row[i]
    return out


def _add(x, y):
    a, b = x.coords, y.coords
    if len(a) < len(b):
        a, b = b, a
    return FieldElement(x.field, tuple(c + (b[i] if i < len(b) else 0) for i, c in enumerate(a)))


def _sub(x, y):
    a, b = x.coords, y.coords
    n = max(len(a), len(b))
    return FieldElement(x.field, tuple((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)
                                       for i in range(n)))


def _mul(x, y):
    a, b = x.coords, y.coords
    if not a or not b:
        return x.field.zero
    if len(a) == 1 and len(b) == 1:
        return FieldElement(x.field, (a[0] * b[0],))
    prod = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                prod[i + j] += u * v
    return FieldElement(x.field, prod)


def _div(x, y):
    return _mul(x, y.inverse())


def fe_arith(x: FieldElement, y: FieldElement, op: str) -> FieldElement:
    """Dispatch ``op`` in {'add', 'sub', 'mul', 'div'} on two elements of one field."""
    if x.field != y.field:
        raise FieldMismatch(f"{x.field!r} vs {y.field!r}")
    return {"add": _add, "sub": _sub, "mul": _mul, "div": _div}[op](x, y)


def fe_embed(x, precision: int = 53):
    """Complex value of ``x`` under the field's chosen embedding.

    Returns a Python ``complex`` for ``precision <= 53`` and an ``mpmath.mpc``
    otherwise. The error is at most ``2**-precision * max(1, |x|)``.
    """
    if not isinstance(x, FieldElement):
        x = QQ.element(x)
    if x.is_rational():
        v = x.to_fraction()
        if precision <= 53:
            return complex(float(v))
        with mpmath.workprec(precision):
            return mpmath.mpc(mpmath.mpf(v.numerator) / v.denominator)
    theta = x.field.root(precision)
    with mpmath.workprec(precision + 20):
        acc = mpmath.mpc(0)
        for c in reversed(x.coords):
            acc = acc * theta + mpmath.mpf(c.numerator) / c.denominator
        if precision <= 53:
            return complex(acc)
        return +acc


# -- text form -----------------------------------------------------------------

def _fmt_q(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_scalar(x) -> str:
    """Canonical text: ``"3/4"`` for rationals, ``"(1/2)+(3/2)t"`` otherwise."""
    if not isinstance(x, FieldElement):
        return _fmt_q(as_fraction(x))
    if x.is_rational():
        return _fmt_q(x.to_fraction())
    parts = []
    for e, c in enumerate(x.coords):
        if not c:
            continue
        mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
        parts.append(f"({_fmt_q(c)}){mono}")
    return "+".join(parts)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<op>[-+*()^])|(?P<t>t))")


def parse_scalar(text: str, field: NumberField = QQ) -> FieldElement:
    """Parse ``"3/4"``, ``"-2"``, ``"(1/2)+(3/2)t"``, ``"-t^2 + 1/3"`` ...

    The generator is written ``t``; a coefficient is a rational literal,
    optionally parenthesised and signed inside the parentheses.
    """
    if not isinstance(text, str):
        return field.element(text)
    tokens = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        m = _TOKEN.match(stripped, pos)
        if not m:
            raise ParseError("unexpected character", text, pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    if not tokens:
        raise ParseError("empty scalar", text, 0)

    i = 0
    coords = {}

    def peek():
        return tokens[i] if i < len(tokens) else (None, None, len(text))

    def take(kind=None, value=None):
        nonlocal i
        tok = peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ParseError(f"expected {value or kind}", text, tok[2])
        i += 1
        return tok

    def coefficient():
        # rational | '(' [sign] rational ')'
        tok = peek()
        if tok[0] == "num":
            take()
            return Fraction(tok[1])
        if tok[1] == "(":
            take()
            sign = 1
            while peek()[1] in ("+", "-"):
                if take()[1] == "-":
                    sign = -sign
            val = Fraction(take("num")[1])
            take("op", ")")
            return sign * val
        return None

    first = True
    while i < len(tokens):
        sign = 1
        if peek()[1] in ("+", "-"):
            while peek()[1] in ("+", "-"):
                if take()[1] == "-":
                    sign = -sign
        elif not first:
            raise ParseError("expected '+' or '-'", text, peek()[2])
        first = False
        c = coefficient()
        exp = 0
        if peek()[1] == "*":
            take()
            if peek()[0] != "t":
                raise ParseError("expected t after '*'", text, peek()[2])
        if peek()[0] == "t":
            take()
            exp = 1
            if peek()[1] == "^":
                take()
                exp = int(take("num")[1])
        if c is None:
            if exp == 0:
                raise ParseError("expected a term", text, peek()[2])
            c = Fraction(1)
        coords[exp] = coords.get(exp, Fraction(0)) + sign * c
    if not coords:
        return field.zero
    if max(coords) > 0 and field.degree == 1 and field == QQ:
        raise ParseError("generator t used but no field extension was declared", text, 0)
    dense = [coords.get(e, Fraction(0)) for e in range(max(coords) + 1)]
    if len(dense) == 1:
        return FieldElement(field, dense)
    gen_powers = dense
    if field.degree == 1:
        # degree-one modulus: t is the rational root
        t0 = -field.modulus[0]
        return FieldElement(field, (sum(c * t0 ** e for e, c in enumerate(gen_powers)),))
    return FieldElement(field, gen_powers)
