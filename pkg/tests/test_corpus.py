import random

from polymoment.corpus import bundled, bundled_names, random_certified_triple, random_entries, random_field
from polymoment.decompose import is_indecomposable
from polymoment.field import QQ
from polymoment.poly import Poly

from conftest import chebyshev


def test_families_present():
    z = Poly.z()
    polys = {tuple(e.instance.P.to_strings()) for e in bundled()}
    for P in (z ** 2, z ** 3, z ** 4 + z, z ** 5, z ** 3 - 3 * z, chebyshev(6), z ** 4):
        assert tuple(P.to_strings()) in polys


def test_every_entry_records_expected_kind():
    assert len(bundled_names()) == 18
    for e in bundled():
        assert e.expected in {"VanishesWithCertificate", "VanishesByTheorem1", "DoesNotVanish"}


def test_corpus_spans_cases():
    entries = bundled()
    assert any(not is_indecomposable(e.instance.P) for e in entries)
    assert any(e.instance.field.degree > 1 for e in entries)
    assert any(e.instance.P.derivative()(e.instance.a).is_zero() or e.instance.P.derivative()(e.instance.b).is_zero()
               for e in entries)


def test_random_entries_are_deterministic():
    a = random_entries(11, 4)
    b = random_entries(11, 4)
    assert [e.instance for e in a] == [e.instance for e in b]
    assert [e.name for e in a] == [f"random_11_{k:03d}" for k in range(4)]
    assert [e.instance for e in random_entries(12, 4)] != [e.instance for e in a]


def test_random_triples_respect_degrees():
    rng = random.Random(3)
    for _ in range(30):
        tri = random_certified_triple(rng, max_degree=4)
        assert 2 <= tri.W.degree <= 4
        assert tri.outer_P.degree <= 4 and tri.outer_Q.degree <= 4
        assert tri.instance.a != tri.instance.b
        assert tri.W(tri.instance.a) == tri.W(tri.instance.b)


def test_random_fields():
    rng = random.Random(5)
    seen = {random_field(rng) for _ in range(40)}
    assert QQ in seen
    assert all(K.degree <= 2 for K in seen) and len(seen) > 2
    tri = random_certified_triple(rng, field=QQ)
    assert tri.instance.field == QQ
