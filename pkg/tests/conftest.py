from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from polymoment.field import QQ, NumberField
from polymoment.poly import Poly

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SQRT3 = NumberField((-3, 0, 1), 1)     # t = +sqrt(3)
GAUSS = NumberField((1, 0, 1), 1)      # t = i
CUBIC_UNITY = NumberField((1, 1, 1), 1)  # t = exp(2 pi i / 3)
CUBIC = NumberField((-2, 0, 0, 1), 2)  # t = real cube root of 2

FIELDS = (QQ, SQRT3, GAUSS, CUBIC_UNITY, CUBIC)

rationals = st.fractions(min_value=-6, max_value=6, max_denominator=6)


@st.composite
def elements(draw, field):
    return field.from_coords([draw(rationals) for _ in range(field.degree)])


@st.composite
def polys(draw, field=QQ, min_degree=0, max_degree=4):
    d = draw(st.integers(min_degree, max_degree))
    coeffs = [draw(elements(field)) for _ in range(d)]
    lead = draw(elements(field).filter(lambda x: not x.is_zero()))
    return Poly(coeffs + [lead], field)


@st.composite
def monic_polys(draw, field=QQ, min_degree=1, max_degree=4, zero_constant=False):
    d = draw(st.integers(min_degree, max_degree))
    coeffs = [draw(elements(field)) for _ in range(d)]
    if zero_constant:
        coeffs[0] = field.zero
    return Poly(coeffs + [field.one], field)


def q(x):
    return Fraction(x)


@pytest.fixture
def z():
    return Poly.z(QQ)


def chebyshev(n, field=QQ):
    z = Poly.z(field)
    a, b = Poly.constant(1, field), z
    for _ in range(n):
        a, b = b, 2 * z * b - a
    return a


# acceptance lines, printed once at the end of the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[key])
