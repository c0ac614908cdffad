"""Monodromy of the branches of P^{-1}(t) around the critical values of P.

Generators are lassos from a base point t1 close to the anchor value t0: a straight
spoke, a small counterclockwise polygon around one critical value, and the spoke
back. They are listed counterclockwise as seen from t1, starting just after the
anchor spoke, so the anchor loop comes last and the path-order product of the list
is the loop around infinity.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import PathTooClose
from ..poly import Poly
from ..roots import roots_numeric, sort_key
from .perm import (Permutation, group_order, is_doubly_transitive, is_primitive, is_transitive,
                   nontrivial_block_systems, product_in_path_order)
from .tracking import (TrackOptions, TrackStats, loop_permutation, path_clearance, polish, roots_at,
                       track_branches)

CIRCLE_SIDES = 64
BIG_CIRCLE_SIDES = 128
SAMPLE_ANGLES = (0.9, 2.7, 4.6)


def critical_values(P: Poly) -> list:
    """Distinct values P(c) at the roots of P', sorted by (re, im)."""
    if P.degree < 2:
        return []
    c = P.to_complex()
    vals = [complex(np.polyval(c[::-1], z)) for z, _ in roots_numeric(P.derivative())]
    scale = max(1.0, max(abs(v) for v in vals))
    out = []
    for v in vals:
        if all(abs(v - w) > 1e-8 * scale for w in out):
            out.append(v)
    out.sort(key=lambda v: sort_key(v, scale))
    return out


def _circle(center, radius, start_angle, sides):
    return [center + radius * cmath.exp(1j * (start_angle + 2 * math.pi * k / sides))
            for k in range(sides + 1)]


def _min_pairwise(points):
    best = math.inf
    for i, p in enumerate(points):
        for q in points[i + 1:]:
            best = min(best, abs(p - q))
    return best


def _spoke_clearance(t1, points):
    """Worst distance from any spoke t1 -> p to the other points."""
    best = math.inf
    for i, p in enumerate(points):
        others = [q for j, q in enumerate(points) if j != i]
        if others:
            best = min(best, path_clearance([t1, p], others))
    return best


def choose_base_point(anchor: complex, points: list, tries: int = 12):
    """Base point t1 = anchor + r u and the margin paths must keep from ``points``."""
    others = [p for p in points if p != anchor]
    r = 0.1 * min(abs(p - anchor) for p in others) if others else 0.5
    for _ in range(tries):
        best = None
        for k in range(72):
            u = cmath.exp(1j * (2 * math.pi * k / 72 + 0.013))
            t1 = anchor + r * u
            clr = _spoke_clearance(t1, points)
            if best is None or clr > best[0] + 1e-15:
                best = (clr, t1)
        clr, t1 = best
        margin = 0.05 * _min_pairwise(points + [t1])
        if clr >= margin:
            return t1, margin
        r /= 2
    raise PathTooClose("no base point with clear spokes to every critical value")


def _angle_from(ref: float, z: complex) -> float:
    return (cmath.phase(z) - ref) % (2 * math.pi)


@dataclass
class Generator:
    value: complex
    permutation: Permutation
    is_anchor: bool
    critical: bool


@dataclass
class MonodromyData:
    n: int
    critical_values: list
    anchor: complex
    base_point: complex
    margin: float
    cut_angle: float
    base_roots: np.ndarray
    generators: list
    infinity_direct: Permutation
    options: TrackOptions
    stats: TrackStats = field(default_factory=TrackStats)
    samples: list = field(default_factory=list)

    @property
    def permutations(self):
        return [g.permutation for g in self.generators]

    @property
    def infinity_permutation(self) -> Permutation:
        return product_in_path_order(self.permutations, self.n)

    @property
    def anchor_permutation(self) -> Permutation:
        return next(g.permutation for g in self.generators if g.is_anchor)

    @property
    def rest_permutation(self) -> Permutation:
        return product_in_path_order([g.permutation for g in self.generators if not g.is_anchor], self.n)

    @property
    def consistent(self) -> bool:
        return self.infinity_permutation == self.infinity_direct and self.infinity_direct.is_full_cycle()

    def transitive(self) -> bool:
        return is_transitive(self.permutations, self.n)

    def primitive(self) -> bool:
        return is_primitive(self.permutations, self.n)

    def doubly_transitive(self) -> bool:
        return is_doubly_transitive(self.permutations, self.n)

    def block_systems(self):
        return nontrivial_block_systems(self.permutations, self.n)

    def order(self):
        return group_order(self.permutations, self.n)

    def summary(self) -> dict:
        fmt = lambda z: [round(z.real, 10) + 0.0, round(z.imag, 10) + 0.0]
        return {
            "degree": self.n,
            "critical_values": [fmt(c) for c in self.critical_values],
            "anchor": fmt(self.anchor),
            "generators": [{"value": fmt(g.value), "cycles": str(g.permutation),
                            "anchor": g.is_anchor} for g in self.generators],
            "infinity": str(self.infinity_permutation),
            "infinity_direct": str(self.infinity_direct),
            "consistent": self.consistent,
            "transitive": self.transitive(),
            "primitive": self.primitive(),
            "doubly_transitive": self.doubly_transitive(),
            "group_order": self.order(),
            "block_systems": [[list(b) for b in s] for s in self.block_systems()],
            "tracking": {"precision": self.options.precision, "steps": self.stats.steps,
                         "rejected": self.stats.rejected,
                         "max_residual": float(f"{self.stats.max_residual:.3e}")},
        }


def monodromy_group(P: Poly, anchor=None, options: TrackOptions = TrackOptions(),
                    samples: bool = True) -> MonodromyData:
    """Generators of the monodromy group of P, anchored at ``anchor`` (a complex value).

    Without an anchor the first critical value in sorted order is used.
    """
    n = P.degree
    crit = critical_values(P)
    if anchor is None:
        anchor = crit[0]
    anchor = complex(anchor)
    scale = max(1.0, abs(anchor), *(abs(c) for c in crit))
    points = [c for c in crit if abs(c - anchor) > 1e-8 * scale]
    anchor_critical = len(points) < len(crit)
    points.append(anchor)
    t1, margin = choose_base_point(anchor, points)
    coeffs = P.to_complex()
    start = roots_at(coeffs, t1)
    stats = TrackStats()

    ref = cmath.phase(anchor - t1)
    angles = sorted({_angle_from(ref, p - t1) for p in points if p != anchor} | {2 * math.pi})
    cut_angle = ref + angles[0] / 2

    def keyed(p):
        return (_angle_from(cut_angle, p - t1), abs(p - t1))

    gens = []
    for p in sorted(points, key=keyed):
        others = [q for q in points if q != p] + [t1]
        rho = 0.3 * min(abs(q - p) for q in others)
        d = t1 - p
        phi = cmath.phase(d)
        ring = _circle(p, rho, phi, CIRCLE_SIDES)
        loop = [t1] + ring + [t1]
        perm = loop_permutation(coeffs, loop, start, options, [q for q in points if q != p], margin, stats)
        is_anchor = p == anchor
        gens.append(Generator(p, perm, is_anchor, anchor_critical if is_anchor else True))

    far = max(abs(p - t1) for p in points)
    R = 2 * far + 1
    big = [t1] + _circle(t1, R, cut_angle, BIG_CIRCLE_SIDES) + [t1]
    infinity_direct = loop_permutation(coeffs, big, start, options, points, margin, stats)

    data = MonodromyData(n, crit, anchor, t1, margin, cut_angle, start, gens, infinity_direct, options, stats)
    if samples:
        data.samples = branch_samples(coeffs, data, points)
    return data


def branch_samples(coeffs, data: MonodromyData, points) -> list:
    """``(t, roots)`` pairs: the base point and a few points around it, each with the
    branches continued from the base labelling."""
    t1 = data.base_point
    R1 = min(abs(p - t1) for p in points)
    out = [(t1, data.base_roots.copy())]
    for theta in SAMPLE_ANGLES:
        t = t1 + 0.35 * R1 * cmath.exp(1j * theta)
        z = track_branches(coeffs, [t1, t], data.base_roots, data.options, stats=data.stats)
        out.append((t, polish(coeffs, z, t)))
    return out
