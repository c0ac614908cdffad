"""Exact moments ``int_a^b P^i q dz`` and ``int_a^b P^i Q^j Q' dz``.

Integration over [a, b] is a linear functional on polynomials, fixed by the
values ``E_l = (b^(l+1) - a^(l+1)) / (l+1)``. :class:`Integrator` tabulates those
once per endpoint pair as integers over a common denominator, so each moment is a
single big-integer dot product against the coefficients of ``P^i q``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import lcm

from . import _intpoly as ip
from .errors import FieldMismatch, InvalidInstance
from .field import QQ, FieldElement, NumberField, format_scalar
from .linalg import Echelon
from .poly import Poly, _mul_parts


def _common_field(*items) -> NumberField:
    fields = {x.field for x in items if x.field.degree > 1}
    if len(fields) > 1:
        raise FieldMismatch("instance mixes elements of different number fields")
    return fields.pop() if fields else QQ


@dataclass(frozen=True)
class ProblemInstance:
    """P, q (equivalently Q = antiderivative of q) and endpoints a != b with P(a) = P(b)."""

    P: Poly
    Q: Poly
    q: Poly
    a: FieldElement
    b: FieldElement
    given: str = "q"

    def __post_init__(self):
        K = _common_field(self.P, self.Q, self.q, self.a, self.b)
        for name in ("P", "Q", "q"):
            p = getattr(self, name)
            if p.field != K:
                object.__setattr__(self, name, Poly(p.coeffs, K))
        for name in ("a", "b"):
            object.__setattr__(self, name, K.element(getattr(self, name)))
        if self.P.degree < 2:
            raise InvalidInstance("deg P must be at least 2 (a linear P cannot take equal values at a != b)")
        if self.a == self.b:
            raise InvalidInstance("endpoints a and b must be distinct")
        if self.P(self.a) != self.P(self.b):
            raise InvalidInstance(f"P(a) = {self.P(self.a)} differs from P(b) = {self.P(self.b)}")

    @classmethod
    def from_q(cls, P, q, a, b):
        P, q = Poly(P), Poly(q)
        return cls(P, q.antiderivative(), q, _elt(a, P, q), _elt(b, P, q), "q")

    @classmethod
    def from_Q(cls, P, Q, a, b):
        P, Q = Poly(P), Poly(Q)
        return cls(P, Q, Q.derivative(), _elt(a, P, Q), _elt(b, P, Q), "Q")

    @property
    def field(self) -> NumberField:
        return self.P.field

    @property
    def n(self) -> int:
        return self.P.degree

    @property
    def t0(self) -> FieldElement:
        return self.P(self.a)

    def integrator(self) -> "Integrator":
        return Integrator.for_endpoints(self.a, self.b)


def _elt(x, *polys):
    if isinstance(x, FieldElement):
        return x
    K = _common_field(*polys)
    return K.element(x)


class Integrator:
    """The functional ``f -> int_a^b f(z) dz`` on polynomials over one field."""

    _cache = {}

    def __init__(self, a: FieldElement, b: FieldElement):
        K = _common_field(a, b)
        self.field = K
        self.a = K.element(a)
        self.b = K.element(b)
        self._size = 0
        self._nums = None   # _nums[s][l]: integer numerators of coordinate s of E_l
        self._dens = None   # common denominator per coordinate

    @classmethod
    def for_endpoints(cls, a, b) -> "Integrator":
        key = (a.field, a.coords, b.coords)
        obj = cls._cache.get(key)
        if obj is None:
            if len(cls._cache) > 64:
                cls._cache.clear()
            obj = cls._cache[key] = cls(a, b)
        return obj

    def _ensure(self, size: int):
        if size <= self._size:
            return
        size = max(size, 2 * self._size, 32)
        K = self.field
        d = K.degree
        pa, pb = self.a, self.b
        vals = []
        for l in range(size):
            vals.append((pb - pa).padded())
            pa, pb = pa * self.a, pb * self.b
        # (b^(l+1) - a^(l+1)) / (l+1)
        nums, dens = [], []
        for s in range(d):
            col = [v[s] / (l + 1) for l, v in enumerate(vals)]
            den = 1
            for c in col:
                den = lcm(den, c.denominator)
            nums.append([c.numerator * (den // c.denominator) for c in col])
            dens.append(den)
        self._nums, self._dens, self._size = nums, dens, size

    def integrate_parts(self, parts, shift: int = 0) -> FieldElement:
        """Integral of ``z^shift * f`` where ``f`` is given by its coordinate parts."""
        K = self.field
        top = max((len(p[0]) for p in parts), default=0) + shift
        if top == 0:
            return K.zero
        self._ensure(top)
        d = K.degree
        table = K.reduction_table(2 * d - 1)
        out = [Fraction(0)] * d
        for r, (nums, den) in enumerate(parts):
            if not nums:
                continue
            for s in range(d):
                tot = ip.dot(nums, self._nums[s], shift)
                if not tot:
                    continue
                v = Fraction(tot, den * self._dens[s])
                row = table[r + s]
                for t in range(d):
                    if row[t]:
                        out[t] += v * row[t]
        return FieldElement(K, out)

    def integrate(self, p: Poly) -> FieldElement:
        if p.field != self.field:
            p = Poly(p.coeffs, self.field)
        return self.integrate_parts(p.parts())


def integrate(p: Poly, a, b) -> FieldElement:
    """Exact ``int_a^b p(z) dz``."""
    K = _common_field(p, *(x for x in (a, b) if isinstance(x, FieldElement)))
    return Integrator.for_endpoints(K.element(a), K.element(b)).integrate(Poly(p.coeffs, K))


# -- moment sequences ----------------------------------------------------------

def _parts_mul(K, x, y):
    return _mul_parts(K, x, y)


def _power_stream(K, base_parts, start_parts, count):
    """Yield ``start * base^i`` for i = 0 .. count-1 (as parts)."""
    cur = start_parts
    for i in range(count):
        yield cur
        if i + 1 < count:
            cur = _parts_mul(K, cur, base_parts)


def single_moment(inst: ProblemInstance, i: int) -> FieldElement:
    """m_i = int_a^b P^i q dz, exactly."""
    if i < 0:
        raise ValueError("moment index must be non-negative")
    integ = inst.integrator()
    return integ.integrate(inst.P ** i * inst.q)


def single_moments(inst: ProblemInstance, max_i: int) -> list:
    """[m_0, ..., m_max_i]."""
    return list(iter_single_moments(inst, max_i))


def iter_single_moments(inst: ProblemInstance, max_i: int):
    """Yield m_0, m_1, ... m_max_i lazily, so a scan can stop at the first witness."""
    integ = inst.integrator()
    for f in _power_stream(inst.field, inst.P.parts(), inst.q.parts(), max_i + 1):
        yield integ.integrate_parts(f)


def double_moment(inst: ProblemInstance, i: int, j: int) -> FieldElement:
    """m_ij = int_a^b P^i Q^j Q' dz, exactly."""
    if i < 0 or j < 0:
        raise ValueError("moment indices must be non-negative")
    Q = inst.Q
    return inst.integrator().integrate(inst.P ** i * Q ** j * Q.derivative())


def double_moments(inst: ProblemInstance, max_i: int, max_j: int) -> dict:
    """``{(i, j): m_ij}`` for 0 <= i <= max_i, 0 <= j <= max_j."""
    K = inst.field
    integ = inst.integrator()
    Q = inst.Q
    dQ = Q.derivative()
    out = {}
    g = dQ.parts()
    for j in range(max_j + 1):
        for i, f in enumerate(_power_stream(K, inst.P.parts(), g, max_i + 1)):
            out[(i, j)] = integ.integrate_parts(f)
        g = _parts_mul(K, g, Q.parts())
    return out


def iter_double_moments(inst: ProblemInstance, max_i: int, max_j: int):
    """Yield ``(i, j, m_ij)`` with i outer, j inner; stops early if the caller breaks."""
    K = inst.field
    integ = inst.integrator()
    Q = inst.Q
    Pp = inst.P.parts()
    rows = []
    g = Q.derivative().parts()
    for j in range(max_j + 1):
        rows.append(g)
        g = _parts_mul(K, g, Q.parts())
    for i in range(max_i + 1):
        for j in range(max_j + 1):
            yield i, j, integ.integrate_parts(rows[j])
        rows = [_parts_mul(K, r, Pp) for r in rows]


@dataclass(frozen=True)
class MomentReport:
    single: tuple            # ((i, m_i), ...)
    double: tuple            # ((i, j, m_ij), ...)
    bounds: tuple            # (max_i, max_j); max_j is None without double moments
    all_zero_single: bool
    all_zero_double: bool

    def to_json(self) -> dict:
        return {
            "bounds": {"max_i": self.bounds[0], "max_j": self.bounds[1]},
            "single": [{"i": i, "j": 0, "value": format_scalar(v)} for i, v in self.single],
            "double": [{"i": i, "j": j, "value": format_scalar(v)} for i, j, v in self.double],
            "all_zero_single": self.all_zero_single,
            "all_zero_double": self.all_zero_double,
        }


def moment_report(inst: ProblemInstance, max_i: int, max_j: int | None = None) -> MomentReport:
    single = tuple(enumerate(single_moments(inst, max_i)))
    double = ()
    if max_j is not None:
        dm = double_moments(inst, max_i, max_j)
        double = tuple((i, j, dm[(i, j)]) for i in range(max_i + 1) for j in range(max_j + 1))
    return MomentReport(
        single=single,
        double=double,
        bounds=(max_i, max_j),
        all_zero_single=all(v.is_zero() for _, v in single),
        all_zero_double=all(v.is_zero() for _, _, v in double),
    )


# -- kernel of the moment map ------------------------------------------------------

@dataclass(frozen=True)
class MomentKernel:
    P: Poly
    a: FieldElement
    b: FieldElement
    degree_bound: int
    moment_bound: int
    basis: tuple = dc_field(default=())
    stabilized: bool = False

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def to_json(self) -> dict:
        return {
            "degree_bound": self.degree_bound,
            "moment_bound": self.moment_bound,
            "dimension": self.dimension,
            "stabilized": self.stabilized,
            "basis": [q.to_strings() for q in self.basis],
        }


def moment_kernel(P: Poly, a, b, degree_bound: int) -> MomentKernel:
    """Exact kernel of ``q -> (m_0, ..., m_N)`` on polynomials of degree <= degree_bound.

    N starts at 2 deg P and grows by deg P until the kernel dimension has stayed
    the same for two consecutive steps, or exceeds (D + 2) deg P.
    """
    K = _common_field(P, *(x for x in (a, b) if isinstance(x, FieldElement)))
    P = Poly(P.coeffs, K)
    a, b = K.element(a), K.element(b)
    if a == b or P(a) != P(b):
        raise InvalidInstance("moment_kernel needs a != b with P(a) = P(b)")
    n = P.degree
    D = degree_bound
    integ = Integrator.for_endpoints(a, b)
    ech = Echelon(D + 1, K)
    Pp = P.parts()
    power = Poly([1], K).parts()
    row_i = 0

    def feed(upto):
        nonlocal power, row_i
        while row_i <= upto:
            ech.add_row([integ.integrate_parts(power, shift=k) for k in range(D + 1)])
            power = _parts_mul(K, power, Pp)
            row_i += 1

    N = 2 * n
    feed(N)
    dim = D + 1 - ech.rank
    unchanged = 0
    stabilized = False
    limit = (D + 2) * n
    while True:
        if dim == 0:
            stabilized = True
            break
        N_next = N + n
        if N_next > limit:
            break
        feed(N_next)
        N = N_next
        new_dim = D + 1 - ech.rank
        unchanged = unchanged + 1 if new_dim == dim else 0
        dim = new_dim
        if unchanged >= 2:
            stabilized = True
            break
    basis = tuple(Poly(v, K) for v in ech.nullspace())
    return MomentKernel(P, a, b, D, N, basis, stabilized)


# -- Cauchy-type integral at infinity ----------------------------------------------

def cauchy_coefficients(inst: ProblemInstance, max_i: int) -> list:
    """``c_i = int_a^b Q P' P^i dz``; minus these are the 1/lambda^(i+1) coefficients of
    ``int Q P' / (P - lambda) dz`` at infinity."""
    K = inst.field
    integ = inst.integrator()
    start = (inst.Q * inst.P.derivative()).parts()
    return [integ.integrate_parts(f) for f in _power_stream(K, inst.P.parts(), start, max_i)]


def cauchy_expansion_check(inst: ProblemInstance, max_i: int) -> bool:
    """Check ``int Q P' P^i = ([Q P^(i+1)]_a^b - m_(i+1)) / (i+1)`` for i < max_i, exactly."""
    if max_i < 1:
        raise ValueError("max_i must be at least 1")
    lhs = cauchy_coefficients(inst, max_i)
    m = single_moments(inst, max_i)
    P, Q, a, b = inst.P, inst.Q, inst.a, inst.b
    Pa, Pb, Qa, Qb = P(a), P(b), Q(a), Q(b)
    pa, pb = Pa, Pb
    for i in range(max_i):
        boundary = Qb * pb - Qa * pa
        if lhs[i] != (boundary - m[i + 1]) / (i + 1):
            return False
        pa, pb = pa * Pa, pb * Pb
    return True
