"""Numerical checks on the branches Q(p_j^{-1}(t)): which branches of Q(P^{-1}) agree,
the branch-sum identities that vanishing moments force, and the doubly transitive
case where any linear relation between branches forces Q to factor through P.
"""
from __future__ import annotations

from dataclasses import dataclass

import mpmath
import numpy as np

from ..decompose import common_right_divisor, outer_factor
from ..errors import AmbiguousCluster, InvalidInstance, PreconditionUnverified
from ..field import FieldElement, fe_embed
from ..moments import ProblemInstance, iter_double_moments, single_moments
from ..poly import Poly
from .group import MonodromyData
from .omega import OmegaLabeling

EQUALITY_TOL = 1e-8
IDENTITY_TOL = 1e-7
AMBIGUITY_BAND = 10.0
REFINE_BITS = 128
NEWTON_STEPS = 12


def _values(Q: Poly, z) -> np.ndarray:
    return np.polyval(Q.to_complex()[::-1], np.asarray(z))


def _refined_values(P: Poly, Q: Poly, t: complex, z, prec: int = REFINE_BITS) -> np.ndarray:
    """Q at the roots of P - t after Newton polishing in extended precision.

    Double precision leaves Q(z) on equal branches only ~1e-9 apart for larger
    degrees, which would squeeze the gap to the equality tolerance.
    """
    with mpmath.workprec(prec):
        p = [fe_embed(c, prec) for c in reversed(P.coeffs)]
        p[-1] -= mpmath.mpc(t)
        dp = [c * k for c, k in zip(p[:-1], range(len(p) - 1, 0, -1))]
        q = [fe_embed(c, prec) for c in reversed(Q.coeffs)]
        out = []
        for root in z:
            w = mpmath.mpc(complex(root))
            for _ in range(NEWTON_STEPS):
                step = mpmath.polyval(p, w) / mpmath.polyval(dp, w)
                w -= step
                if abs(step) <= abs(w) * mpmath.mpf(2) ** (8 - prec):
                    break
            out.append(complex(mpmath.polyval(q, w)))
    return np.array(out)


@dataclass(frozen=True)
class BranchPartition:
    classes: tuple
    margin: float
    tol: float

    @property
    def class_count(self) -> int:
        return len(self.classes)

    def to_json(self) -> dict:
        return {"classes": [list(c) for c in self.classes], "class_count": self.class_count,
                "margin": None if np.isinf(self.margin) else float(f"{self.margin:.3e}"), "tol": self.tol}


def branch_equalities(P: Poly, Q: Poly, mono: MonodromyData, tol: float = EQUALITY_TOL) -> BranchPartition:
    """Partition raw branch indices by equality of Q on them at every sample point."""
    n = mono.n
    if len(mono.samples) < 3:
        raise InvalidInstance("branch_equalities needs at least three branch samples")
    off = ~np.eye(n, dtype=bool)
    dist = []
    for t, z in mono.samples:
        s = _refined_values(P, Q, t, z)
        scale = max(1.0, float(np.max(np.abs(s))))
        d = np.abs(s[:, None] - s[None, :]) / scale
        band = off & (d > tol / AMBIGUITY_BAND) & (d < tol * AMBIGUITY_BAND)
        if band.any():
            i, j = map(int, np.argwhere(band)[0])
            raise AmbiguousCluster(f"branches {i}, {j} differ by {d[i, j]:.3e}, too close to the tolerance")
        dist.append(d)
    dmax = np.max(dist, axis=0)
    equal = dmax <= tol
    max_equal = float(np.max(dmax[equal & off], initial=0.0))
    min_unequal = float(np.min(dmax[~equal], initial=np.inf))
    classes = []
    seen = set()
    for i in range(n):
        if i in seen:
            continue
        cls = tuple(j for j in range(n) if equal[i, j])
        if any(not equal[x, y] for x in cls for y in cls):
            raise AmbiguousCluster("branch equality is not transitive at the sample points")
        seen.update(cls)
        classes.append(cls)
    margin = min(min_unequal / tol, tol / max_equal if max_equal > 0 else np.inf)
    return BranchPartition(tuple(classes), float(margin), tol)


@dataclass(frozen=True)
class TraceCheck:
    name: str
    j: int
    expected: bool
    passed: bool
    residual: float

    def to_json(self) -> dict:
        return {"check": self.name, "j": self.j, "expected": self.expected, "passed": self.passed,
                "residual": float(f"{self.residual:.3e}")}


@dataclass(frozen=True)
class ProofTrace:
    checks: tuple
    k: int
    rho1_order: int
    vandermonde_columns: tuple
    scan_bound: int

    @property
    def consistent(self) -> bool:
        """Every identity that vanishing moments promise actually holds."""
        return all(c.passed for c in self.checks if c.expected)

    def check(self, name: str, j: int = 1) -> TraceCheck:
        return next(c for c in self.checks if c.name == name and c.j == j)

    def to_json(self) -> dict:
        return {"k": self.k, "rho1_order": self.rho1_order,
                "vandermonde_columns": list(self.vandermonde_columns), "scan_bound": self.scan_bound,
                "consistent": self.consistent, "checks": [c.to_json() for c in self.checks]}


def _orbit_sum(s, rho1, start, order):
    total = 0j
    j = start
    for _ in range(order):
        total += s[j]
        j = rho1(j)
    return total


def proof_trace(inst: ProblemInstance, labeling: OmegaLabeling, max_j: int,
                scan_bound: int | None = None, tol: float = IDENTITY_TOL) -> ProofTrace:
    """Check the orbit-sum identities for Q^j, j = 1..max_j, and the Vandermonde step.

    A check is ``expected`` when the exact moments it relies on vanish up to
    ``scan_bound``: single moments for j = 1, double moments m_{i, j-1} for j > 1.
    """
    if not labeling.samples:
        raise InvalidInstance("labeling carries no branch samples")
    n, k = labeling.n, labeling.k
    rho1 = labeling.rho1
    o = rho1.order()
    N = scan_bound if scan_bound is not None else 4 * n * (max(inst.Q.degree, 0) + 1)
    vanish = {1: all(m.is_zero() for m in single_moments(inst, N))}
    if max_j > 1:
        nonzero = {jj for _, jj, v in iter_double_moments(inst, N, max_j - 1) if not v.is_zero()}
        for j in range(2, max_j + 1):
            vanish[j] = vanish[j - 1] and (j - 1) not in nonzero

    checks = []
    for j in range(1, max_j + 1):
        worst = 0.0
        for _, z in labeling.samples:
            s = _values(inst.Q, z) ** j
            scale = max(1.0, float(np.sum(np.abs(s))))
            lhs = _orbit_sum(s, rho1, (k + 1) % n, o)
            rhs = _orbit_sum(s, rho1, 0, o)
            worst = max(worst, abs(lhs - rhs) / scale)
        checks.append(TraceCheck("orbit_sum", j, vanish[j], bool(worst <= tol), float(worst)))

    da, db = len(rho1.cycle_of(0)), len(rho1.cycle_of((k + 1) % n))
    cols = tuple(sorted(set(rho1.cycle_of(0)) | set(rho1.cycle_of((k + 1) % n))))
    rows = da + db
    applicable = all(vanish.get(j, False) for j in range(1, rows))
    gap = np.inf
    for _, z in labeling.samples:
        s = _values(inst.Q, z)[list(cols)]
        scale = max(1.0, float(np.max(np.abs(s))))
        for x in range(len(s)):
            for y in range(x + 1, len(s)):
                gap = min(gap, abs(s[x] - s[y]) / scale)
    checks.append(TraceCheck("vandermonde_singular", rows - 1, applicable, bool(gap <= tol), float(gap)))
    return ProofTrace(tuple(checks), k, o, cols, N)


def _as_complex(c) -> complex:
    if isinstance(c, FieldElement):
        return complex(fe_embed(c))
    return complex(c)


def lemma2_check(P: Poly, Q: Poly, coefficients, mono: MonodromyData, tol: float = IDENTITY_TOL) -> bool:
    """Given a relation sum c_i Q(p_i^{-1}) = 0 with not all c_i equal on a doubly
    transitive group, decide exactly whether Q = Q~(P)."""
    c = np.array([_as_complex(x) for x in coefficients])
    if len(c) != mono.n:
        raise InvalidInstance(f"expected {mono.n} coefficients, got {len(c)}")
    if np.all(np.abs(c - c[0]) <= tol * max(1.0, float(np.max(np.abs(c))))):
        raise PreconditionUnverified("coefficients are all equal")
    if not mono.doubly_transitive():
        raise PreconditionUnverified("monodromy group is not doubly transitive")
    for _, z in mono.samples:
        s = _values(Q, z)
        scale = max(1.0, float(np.sum(np.abs(c) * np.abs(s))))
        if abs(np.dot(c, s)) > tol * scale:
            raise PreconditionUnverified(f"relation fails numerically (residual {abs(np.dot(c, s)) / scale:.3e})")
    return outer_factor(Q, P) is not None


@dataclass(frozen=True)
class DegreeCheck:
    class_count: int
    w_degree: int
    n: int

    @property
    def holds(self) -> bool:
        return self.class_count * self.w_degree == self.n


def degree_formula_check(P: Poly, Q: Poly, partition: BranchPartition) -> DegreeCheck:
    """Class count times the degree of the largest common right factor must be deg P."""
    crd = common_right_divisor(P, Q)
    w = crd[0].degree if crd else 1
    return DegreeCheck(partition.class_count, w, P.degree)


__all__ = ["BranchPartition", "DegreeCheck", "ProofTrace", "TraceCheck", "branch_equalities",
           "degree_formula_check", "lemma2_check", "proof_trace"]
