import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

import oracle
from polymoment.corpus import load_entry, random_certified_triple
from polymoment.decompose import (common_right_divisor, composition_condition, is_indecomposable, make_certificate,
                                  multiplicities, multiplicity, normalize_monic, outer_factor, right_factor_of_degree,
                                  right_factors)
from polymoment.field import QQ
from polymoment.poly import Poly

from conftest import SQRT3, chebyshev, elements, monic_polys, polys

z = Poly.z()


def test_chebyshev_right_factors():
    T6 = chebyshev(6)
    factors = dict(right_factors(T6))
    assert factors == {2: z ** 2, 3: z ** 3 - Fraction(3, 4) * z}
    assert not is_indecomposable(T6)
    for W in factors.values():
        assert outer_factor(T6, W)(W) == T6


@pytest.mark.parametrize("P", [z ** 2, z ** 3, z ** 5, z ** 3 - 3 * z, z ** 4 + z, z ** 6 + z, z ** 4 + z ** 3])
def test_indecomposable_examples(P):
    assert is_indecomposable(P)


@pytest.mark.parametrize("P,degrees", [
    (z ** 4, [2]),
    (z ** 6, [2, 3]),
    (chebyshev(4), [2]),
    ((z ** 2 + z) ** 3 + 1, [2]),
    ((z ** 3 + z) ** 2, [2, 3]),  # also u (u + 1)^2 at u = z^2
])
def test_decomposable_examples(P, degrees):
    assert [m for m, _ in right_factors(P)] == degrees


def test_normalization_gauge():
    W = right_factor_of_degree(5 * (z ** 2 + 3 * z) ** 2 + 7, 2)
    assert W == z ** 2 + 3 * z
    assert normalize_monic(2 * z ** 3 + 4).is_monic()
    assert normalize_monic(2 * z ** 3 + 4)(0) == 0


def test_right_factors_needs_degree_two():
    with pytest.raises(ValueError):
        right_factors(z + 1)


def test_common_right_divisor():
    T2, T3, T6 = chebyshev(2), chebyshev(3), chebyshev(6)
    assert common_right_divisor(T6, T2 + T3) is None
    W, Pt, Qt = common_right_divisor(T6, T2)
    assert W == z ** 2 and Pt(W) == T6 and Qt(W) == T2
    W, _, _ = common_right_divisor(T6, T3 + 5)
    assert W == z ** 3 - Fraction(3, 4) * z
    W, _, Qt = common_right_divisor(T6, T6 * T6)
    assert W.degree == 6 and Qt.degree == 2
    # constants factor through everything, so W is P itself
    W, _, Qt = common_right_divisor(T6, Poly([3]))
    assert W.degree == 6 and Qt == Poly([3])


def test_composition_condition_on_chebyshev():
    for name, W in (("chebyshev_t6_t2", z ** 2), ("chebyshev_t6_t3", z ** 3 - Fraction(3, 4) * z)):
        inst = load_entry(name).instance
        cert = composition_condition(inst)
        assert cert is not None and cert.endpoint_equal
        assert cert.W == Poly(W.coeffs, SQRT3)
        assert cert.verify(inst.P, inst.Q)
    assert composition_condition(load_entry("chebyshev_t6_t2_plus_t3").instance) is None


def test_endpoint_condition_can_fail():
    # z^4 with a = 1, b = i: z^2 divides both but takes values 1 and -1
    inst = load_entry("z4_Q_z2_quarter_turn").instance
    W, _, _ = common_right_divisor(inst.P, inst.Q)
    assert W.degree == 2 and W(inst.a) != W(inst.b)
    assert composition_condition(inst) is None


def test_certificate_json():
    inst = load_entry("chebyshev_t6_t2").instance
    js = composition_condition(inst).to_json()
    assert js == {"W": ["0", "0", "1"], "P_outer": ["-1", "18", "-48", "32"], "Q_outer": ["-1", "2"], "endpoint_equal": True}


def test_make_certificate_rejects_non_factor():
    assert make_certificate(z ** 4 + z, z ** 2, z ** 2, -1, 1) is None


def test_multiplicities():
    assert multiplicity(z ** 3 - 3 * z, 1) == 2
    assert multiplicity(z ** 3 - 3 * z, 2) == 1
    assert multiplicity(chebyshev(6), 0) == 2
    assert multiplicity(z ** 5, 0) == 5
    m = multiplicities(chebyshev(6), SQRT3.gen / -2, SQRT3.gen / 2)
    assert (m.d_a, m.d_b) == (2, 2)


@given(polys(QQ, min_degree=2, max_degree=6))
def test_indecomposable_matches_sympy(P):
    P_sp = oracle.poly(P)
    parts = sp.decompose(sp.Poly(P_sp, oracle.Z))
    assert is_indecomposable(P) == (len(parts) == 1)


@given(polys(SQRT3, min_degree=2, max_degree=3), monic_polys(SQRT3, min_degree=2, max_degree=3))
def test_factorizations_recompose(s, w):
    P = s(w)
    for m, W in right_factors(P):
        assert outer_factor(P, W)(W) == P
    W = right_factor_of_degree(P, w.degree)
    assert W is not None and outer_factor(P, W)(W) == P


@given(polys(QQ, min_degree=2, max_degree=3), polys(QQ, min_degree=1, max_degree=3),
       monic_polys(QQ, min_degree=2, max_degree=2))
def test_common_divisor_maximal(pt, qt, w):
    P, Q = pt(w), qt(w)
    found = common_right_divisor(P, Q)
    assert found is not None
    W, Pt, Qt = found
    assert Pt(W) == P and Qt(W) == Q
    # no larger right factor of P (P itself included) divides Q
    larger = [V for m, V in right_factors(P) if m > W.degree] + ([normalize_monic(P)] if W.degree < P.degree else [])
    assert all(outer_factor(Q, V) is None for V in larger)


@given(polys(SQRT3, min_degree=2, max_degree=3), polys(SQRT3, min_degree=2, max_degree=3), elements(SQRT3))
def test_multiplicity_monotone(pt, w, c):
    assert multiplicity(pt(w), c) >= multiplicity(pt, w(c))


@given(st.integers(0, 2 ** 32 - 1))
def test_certified_triples_have_certificates(seed):
    tri = random_certified_triple(random.Random(seed))
    cert = composition_condition(tri.instance)
    assert cert is not None and cert.endpoint_equal
    # every common right factor is a right factor of the maximal one
    assert cert.W.degree % tri.W.degree == 0
