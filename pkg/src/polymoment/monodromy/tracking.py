"""Predictor-corrector continuation of all roots of P(z) = t along a polyline in t."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import AmbiguousCluster, PathTooClose, TrackingBreakdown
from ..roots import abs_scale, simple_roots
from .perm import Permutation

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class TrackOptions:
    """``precision`` is the Newton tolerance in bits; ``step_scale`` shrinks the
    largest allowed step. Doubling one and halving the other must not change any
    permutation."""

    precision: int = 24
    step_scale: float = 1.0
    max_newton: int = 5
    separation_factor: float = 10.0
    min_step_frac: float = 1e-9

    def refined(self) -> "TrackOptions":
        return TrackOptions(min(2 * self.precision, 50), self.step_scale / 2, self.max_newton,
                            self.separation_factor, self.min_step_frac)


@dataclass
class TrackStats:
    steps: int = 0
    rejected: int = 0
    max_residual: float = 0.0

    def merge(self, other: "TrackStats"):
        self.steps += other.steps
        self.rejected += other.rejected
        self.max_residual = max(self.max_residual, other.max_residual)


def _min_separation(z):
    if len(z) < 2:
        return np.full(len(z), np.inf)
    d = np.abs(z[:, None] - z[None, :])
    np.fill_diagonal(d, np.inf)
    return d.min(axis=1)


def _eval(c, dc, z):
    return np.polyval(c[::-1], z), np.polyval(dc[::-1], z)


def point_segment_distance(p, a, b) -> float:
    ab = b - a
    L2 = abs(ab) ** 2
    if L2 == 0:
        return abs(p - a)
    s = ((p - a) * np.conj(ab)).real / L2
    s = min(1.0, max(0.0, s))
    return abs(p - (a + s * ab))


def path_clearance(path, points) -> float:
    best = np.inf
    for a, b in zip(path[:-1], path[1:]):
        for p in points:
            best = min(best, point_segment_distance(p, a, b))
    return best


def roots_at(c: np.ndarray, t: complex) -> np.ndarray:
    """Sorted simple roots of P(z) - t."""
    shifted = c.copy()
    shifted[0] -= t
    return simple_roots(shifted)


def polish(c: np.ndarray, z, t: complex, steps: int = 3) -> np.ndarray:
    """A few plain Newton steps on P(z) = t at full double precision."""
    dc = c[1:] * np.arange(1, len(c))
    z = np.array(z, dtype=complex)
    for _ in range(steps):
        p, dp = _eval(c, dc, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            z = z - np.where(dp != 0, (p - t) / dp, 0)
    return z


def track_branches(P, path, start_values, options: TrackOptions = TrackOptions(),
                   critical_values=None, margin: float = 0.0, stats: TrackStats | None = None):
    """Continue the n roots ``start_values`` of P(z) = path[0] along ``path``.

    ``P`` is a Poly or ascending complex coefficients. Returns the end values in
    the same order as ``start_values``.
    """
    c = P.to_complex() if hasattr(P, "to_complex") else np.asarray(P, dtype=complex)
    dc = c[1:] * np.arange(1, len(c))
    path = [complex(t) for t in path]
    if critical_values is not None and len(critical_values) and margin > 0:
        clr = path_clearance(path, critical_values)
        if clr < margin:
            raise PathTooClose(f"path passes within {clr:.3e} of a critical value (margin {margin:.3e})")
    total = sum(abs(b - a) for a, b in zip(path[:-1], path[1:]))
    floor_step = options.min_step_frac * max(total, 1e-300)
    tol = 2.0 ** (-options.precision)
    z = np.array(start_values, dtype=complex)
    stats = stats if stats is not None else TrackStats()
    h_max_global = options.step_scale * max(total, 1e-300) / 8
    h = h_max_global
    for a, b in zip(path[:-1], path[1:]):
        seg = b - a
        L = abs(seg)
        if L == 0:
            continue
        s = 0.0
        t = a
        while s < L:
            step = min(h, L - s)
            t_new = a + seg * ((s + step) / L)
            accepted, z_new, res = _corrector_step(c, dc, z, t, t_new, tol, options)
            if accepted:
                z = z_new
                s += step
                t = t_new
                stats.steps += 1
                stats.max_residual = max(stats.max_residual, res)
                h = min(step * 1.6, h_max_global)
            else:
                stats.rejected += 1
                h = step / 2
                if h < floor_step:
                    raise TrackingBreakdown(f"step size fell below {floor_step:.3e} near t = {t}")
    return z


def _corrector_step(c, dc, z, t, t_new, tol, options):
    p, dp = _eval(c, dc, z)
    if np.any(dp == 0):
        return False, z, np.inf
    z_pred = z + (t_new - t) / dp
    zc = z_pred
    converged = np.zeros(len(z), dtype=bool)
    for _ in range(options.max_newton):
        p, dp = _eval(c, dc, zc)
        r = p - t_new
        if np.any(dp == 0):
            return False, z, np.inf
        corr = r / dp
        zc = zc - corr
        floor = 8 * len(c) * _EPS * (abs_scale(c, zc) + abs(t_new))
        converged = (np.abs(corr) <= tol * np.maximum(1.0, np.abs(zc))) | (np.abs(r) <= floor)
        if converged.all():
            break
    if not converged.all():
        return False, z, np.inf
    sep_new = _min_separation(zc)
    sep_old = _min_separation(z)
    if np.any(sep_new < options.separation_factor * np.abs(zc - z_pred)):
        return False, z, np.inf
    if np.any(np.abs(zc - z) > 0.5 * sep_old):
        return False, z, np.inf
    res = float(np.max(np.abs(np.polyval(c[::-1], zc) - t_new) / (abs_scale(c, zc) + abs(t_new))))
    return True, zc, res


def match_permutation(start, end, factor: float = 100.0) -> Permutation:
    """Permutation sending start index i to the start index nearest ``end[i]``.

    A match is accepted only when the runner-up is ``factor`` times farther away.
    """
    start = np.asarray(start)
    img = []
    for zi in end:
        d = np.abs(start - zi)
        order = np.argsort(d)
        if len(d) > 1 and d[order[1]] < factor * max(d[order[0]], 1e-300):
            raise AmbiguousCluster(
                f"continued branch {zi} is not clearly closest to one start value "
                f"({d[order[0]]:.3e} vs {d[order[1]]:.3e})")
        img.append(int(order[0]))
    if sorted(img) != list(range(len(start))):
        raise AmbiguousCluster("continuation did not return a bijection of branches")
    return Permutation(img)


def loop_permutation(P, loop, start_values, options: TrackOptions = TrackOptions(),
                     critical_values=None, margin: float = 0.0, stats=None) -> Permutation:
    """Monodromy of a closed polyline ``loop`` (loop[0] == loop[-1])."""
    end = track_branches(P, loop, start_values, options, critical_values, margin, stats)
    return match_permutation(start_values, end)
