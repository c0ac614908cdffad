"""Canonical labelling of the branches of P^{-1} along the preimage graph of a loop
through t0 = P(a) = P(b).

Edge j of the graph is branch j. After relabelling, continuation around the loop
sends branch j to j+1, branch 0 leaves the point a, edge j starts at the rho1-cycle
of j (its vertex) and ends at the rho1-cycle of j+1. Edge k is the first edge
ending at b, so edges 0..k form the path from a to b.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import AmbiguousAssociation, InvalidInstance
from ..field import fe_embed
from ..moments import ProblemInstance
from ..roots import roots_numeric
from .group import MonodromyData, monodromy_group
from .perm import Permutation
from .tracking import TrackOptions, track_branches

APPROACH_FRACTION = 1e-3
ASSOCIATION_FACTOR = 10.0


@dataclass(frozen=True)
class OmegaLabeling:
    n: int
    rho1: Permutation
    rho2: Permutation
    k: int
    branch_order: tuple      # new label -> raw branch index
    vertex_classes: tuple    # rho1-cycles, sorted by smallest member
    vertex_points: tuple     # complex point each class limits to
    edge_starts: tuple
    edge_ends: tuple
    a_class: int
    b_class: int
    anchor_critical: bool
    samples: tuple = field(default=(), compare=False, repr=False)  # (t, branch values in new order)

    @property
    def raw_to_new(self) -> list:
        inv = [0] * self.n
        for new, raw in enumerate(self.branch_order):
            inv[raw] = new
        return inv

    def class_of(self, j: int) -> int:
        return next(i for i, c in enumerate(self.vertex_classes) if j in c)

    def faces(self):
        return self.rho2.cycles()

    def path_edges(self) -> list:
        return list(range(self.k + 1))

    def relabel_values(self, raw_values) -> np.ndarray:
        """Reorder values indexed by raw branch number into canonical order."""
        return np.asarray(raw_values)[list(self.branch_order)]

    def to_json(self) -> dict:
        fmt = lambda z: [round(z.real, 10) + 0.0, round(z.imag, 10) + 0.0]
        return {
            "n": self.n,
            "rho1": str(self.rho1),
            "rho2": str(self.rho2),
            "rho1_images": list(self.rho1.images),
            "rho2_images": list(self.rho2.images),
            "k": self.k,
            "branch_order": list(self.branch_order),
            "vertex_classes": [list(c) for c in self.vertex_classes],
            "vertex_points": [fmt(z) for z in self.vertex_points],
            "edge_starts": list(self.edge_starts),
            "edge_ends": list(self.edge_ends),
            "a_class": self.a_class,
            "b_class": self.b_class,
        }


def _associate(values, targets, factor=ASSOCIATION_FACTOR):
    out = []
    for z in values:
        d = np.abs(targets - z)
        order = np.argsort(d)
        if len(d) > 1 and d[order[1]] < factor * d[order[0]]:
            raise AmbiguousAssociation(
                f"branch near {z} is not clearly closer to one preimage "
                f"({d[order[0]]:.3e} vs {d[order[1]]:.3e})")
        out.append(int(order[0]))
    return out


def branch_limits(inst: ProblemInstance, mono: MonodromyData):
    """For every raw branch, the index into ``preimages`` of the point it reaches at t0."""
    t0 = mono.anchor
    t1 = mono.base_point
    r = abs(t1 - t0)
    stop = t0 + APPROACH_FRACTION * r * (t1 - t0) / r
    coeffs = inst.P.to_complex()
    z = track_branches(coeffs, [t1, stop], mono.base_roots, mono.options, stats=mono.stats)
    pre = roots_numeric(inst.P - inst.t0)
    points = np.array([p for p, _ in pre])
    mults = [m for _, m in pre]
    return _associate(z, points), points, mults


def omega_labeling(inst: ProblemInstance, mono: MonodromyData | None = None,
                   options: TrackOptions = TrackOptions()) -> OmegaLabeling:
    n = inst.n
    t0 = complex(fe_embed(inst.t0))
    if mono is None:
        mono = monodromy_group(inst.P, t0, options)
    elif abs(mono.anchor - t0) > 1e-8 * max(1.0, abs(t0)):
        raise InvalidInstance("monodromy data is anchored away from P(a)")

    limits, points, mults = branch_limits(inst, mono)
    a_pt = _associate([complex(fe_embed(inst.a))], points)[0]
    b_pt = _associate([complex(fe_embed(inst.b))], points)[0]
    if a_pt == b_pt:
        raise AmbiguousAssociation("a and b are associated with the same preimage of t0")
    j0 = min(j for j in range(n) if limits[j] == a_pt)

    sigma = mono.infinity_permutation
    order = [j0]
    for _ in range(n - 1):
        order.append(sigma(order[-1]))
    if len(set(order)) != n:
        raise AmbiguousAssociation("loop at infinity is not a full cycle")
    new_of_raw = [0] * n
    for new, raw in enumerate(order):
        new_of_raw[raw] = new

    rho1 = mono.anchor_permutation.relabel(new_of_raw)
    rho2 = mono.rest_permutation.relabel(new_of_raw)
    if rho1 * rho2 != Permutation.cycle(n):
        raise AmbiguousAssociation("rho1 * rho2 is not the standard n-cycle")

    classes = tuple(sorted(rho1.cycles(), key=min))
    class_of = {j: i for i, c in enumerate(classes) for j in c}
    vertex_pts = []
    for c in classes:
        hits = {limits[order[j]] for j in c}
        if len(hits) != 1:
            raise AmbiguousAssociation("branches of one rho1-cycle reach different preimages")
        p = hits.pop()
        if mults[p] != len(c):
            raise AmbiguousAssociation(
                f"rho1-cycle of length {len(c)} at a preimage of multiplicity {mults[p]}")
        vertex_pts.append(p)

    k = next((m for m in range(n - 1) if limits[order[m + 1]] == b_pt), None)
    if k is None:
        raise AmbiguousAssociation("no branch reaches b")
    starts = tuple(class_of[j] for j in range(n))
    ends = tuple(class_of[(j + 1) % n] for j in range(n))
    return OmegaLabeling(
        n=n, rho1=rho1, rho2=rho2, k=k, branch_order=tuple(order), vertex_classes=classes,
        vertex_points=tuple(complex(points[p]) for p in vertex_pts),
        edge_starts=starts, edge_ends=ends, a_class=class_of[0], b_class=class_of[k + 1],
        anchor_critical=any(len(c) > 1 for c in classes),
        samples=tuple((t, np.asarray(zs)[order]) for t, zs in mono.samples),
    )
