"""Bundled problem instances and a seeded generator of instances that satisfy the
composition condition by construction."""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from ..field import QQ, NumberField
from ..moments import ProblemInstance
from ..poly import Poly
from ..problem import parse_problem_data

QUADRATIC_RADICANDS = (-1, 2, 3, -3, 5, -7)


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    instance: ProblemInstance
    expected: str | None = None


def bundled_names() -> list:
    files = resources.files(__package__).joinpath("data")
    return sorted(p.name[:-5] for p in files.iterdir() if p.name.endswith(".json"))


def load_entry(name: str) -> CorpusEntry:
    text = resources.files(__package__).joinpath("data", f"{name}.json").read_text(encoding="utf-8")
    data = json.loads(text)
    return CorpusEntry(name, parse_problem_data(data), data.get("expected"))


def bundled() -> list:
    return [load_entry(n) for n in bundled_names()]


def _rand_scalar(rng: random.Random, K: NumberField, allow_zero=True):
    while True:
        coords = [Fraction(rng.randint(-3, 3), rng.choice((1, 1, 2))) for _ in range(K.degree)]
        if K.degree > 1 and rng.random() < 0.5:
            coords[1:] = [Fraction(0)] * (K.degree - 1)
        x = K.from_coords(coords)
        if allow_zero or not x.is_zero():
            return x


def _rand_poly(rng, K, degree, monic=False):
    coeffs = [_rand_scalar(rng, K) for _ in range(degree)]
    coeffs.append(K.one if monic else _rand_scalar(rng, K, allow_zero=False))
    return Poly(coeffs, K)


def random_field(rng: random.Random) -> NumberField:
    if rng.random() < 0.5:
        return QQ
    d = rng.choice(QUADRATIC_RADICANDS)
    return NumberField((-d, 0, 1), rng.randint(0, 1))


@dataclass(frozen=True)
class CertifiedTriple:
    W: Poly
    outer_P: Poly
    outer_Q: Poly
    instance: ProblemInstance


def random_certified_triple(rng: random.Random, field: NumberField | None = None,
                            max_degree: int = 4) -> CertifiedTriple:
    """P = P~(W), Q = Q~(W) with W(a) = W(b), each of degree <= ``max_degree``.

    W = (z - a)(z - b) R(z) + c, so the endpoint condition holds exactly.
    """
    K = field if field is not None else random_field(rng)
    z = Poly.z(K)
    a = _rand_scalar(rng, K)
    b = _rand_scalar(rng, K)
    while b == a:
        b = _rand_scalar(rng, K)
    R = _rand_poly(rng, K, rng.randint(0, max_degree - 2))
    W = (z - a) * (z - b) * R + _rand_scalar(rng, K)
    Pt = _rand_poly(rng, K, rng.randint(1, max_degree))
    Qt = _rand_poly(rng, K, rng.randint(1, max_degree))
    return CertifiedTriple(W, Pt, Qt, ProblemInstance.from_Q(Pt(W), Qt(W), a, b))


def random_entries(seed: int, count: int) -> list:
    rng = random.Random(seed)
    return [CorpusEntry(f"random_{seed}_{k:03d}", random_certified_triple(rng).instance, None)
            for k in range(count)]


__all__ = ["CertifiedTriple", "CorpusEntry", "bundled", "bundled_names", "load_entry", "random_certified_triple",
           "random_entries", "random_field"]
