"""Simultaneous polynomial root finding (Aberth-Ehrlich) with cluster merging."""
from __future__ import annotations

import math

import numpy as np

from .errors import NoConvergence

DEFAULT_TOL = 1e-12
DEFAULT_CLUSTER_RADIUS = 1e-8
DEFAULT_MAX_ITER = 200
# Taylor-coefficient threshold for accepting a loose cluster as one multiple root
_MULTIPLE_ROOT_TAU = 1e-10
_EPS = np.finfo(float).eps


def _as_coeffs(p) -> np.ndarray:
    if hasattr(p, "to_complex"):
        c = p.to_complex()
    else:
        c = np.asarray(p, dtype=complex)
    c = np.trim_zeros(c, "b")
    return c


def _horner(c, x):
    """Values of p and p' at the points ``x`` (ascending coefficients ``c``)."""
    p = np.full_like(x, c[-1])
    dp = np.zeros_like(x)
    for a in c[-2::-1]:
        dp = dp * x + p
        p = p * x + a
    return p, dp


def abs_scale(c, x) -> np.ndarray:
    """``sum |c_k| |x|^k``, the natural size against which residuals are judged."""
    ax = np.abs(x)
    s = np.full(np.shape(x), abs(c[-1]), dtype=float)
    for a in c[-2::-1]:
        s = s * ax + abs(a)
    return s


def aberth(c: np.ndarray, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER) -> np.ndarray:
    """All roots of the polynomial with ascending coefficients ``c`` (no zero roots assumed)."""
    n = len(c) - 1
    if n < 1:
        return np.zeros(0, dtype=complex)
    c = c / c[-1]
    if n == 1:
        return np.array([-c[0]])
    center = -c[-2] / n
    # radius from the geometric mean of the shifted constant term, guarded by Cauchy bound
    cauchy = 1 + max(abs(a) for a in c[:-1])
    radius = min(cauchy, max(abs(np.polyval(c[::-1], center)) ** (1.0 / n), 1e-3))
    angles = 2 * math.pi * np.arange(n) / n + 0.4
    x = center + radius * np.exp(1j * angles)
    done = np.zeros(n, dtype=bool)
    for _ in range(max_iter):
        p, dp = _horner(c, x)
        floor = 4 * n * _EPS * abs_scale(c, x)
        done |= np.abs(p) <= floor
        diff = x[:, None] - x[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        s = inv.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = p / dp
            w = ratio / (1 - ratio * s)
        w = np.where(np.isfinite(w), w, 0.0)
        w = np.where(done, 0.0, w)
        x = x - w
        done |= np.abs(w) <= tol * np.maximum(1.0, np.abs(x))
        if done.all():
            return x
    raise NoConvergence(f"Aberth iteration did not converge in {max_iter} iterations")


def _taylor_at(c, z, m):
    """First ``m`` Taylor coefficients p^(k)(z)/k! and their absolute scales."""
    vals, scales = [], []
    cur = np.array(c, dtype=complex)
    for k in range(m):
        vals.append(np.polyval(cur[::-1], z) if len(cur) else 0.0)
        scales.append(float(abs_scale(cur, np.array([z]))[0]) if len(cur) else 0.0)
        # next: derivative / (k+1)
        cur = cur[1:] * np.arange(1, len(cur)) / (k + 1)
    return vals, scales


def _polish_multiple(c, z, m, radius, steps=4):
    """Newton on p^(m-1), which has a simple root where p has an m-fold one."""
    d = np.array(c, dtype=complex)
    for k in range(m - 1):
        d = d[1:] * np.arange(1, len(d))
    if len(d) < 2:
        return z
    z0 = z
    for _ in range(steps):
        g, dg = _horner(d, np.array([z]))
        if dg[0] == 0:
            break
        z_new = z - g[0] / dg[0]
        if abs(z_new - z0) > radius:
            return z0
        z = z_new
    return z


def _components(points, radius):
    n = len(points)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(points[i] - points[j]) <= radius:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def cluster_roots(c, roots, cluster_radius=DEFAULT_CLUSTER_RADIUS):
    """Merge near-coincident roots into ``(centroid, multiplicity)`` pairs.

    Roots within ``cluster_radius * scale`` always merge. Looser groups (up to
    1e-3 * scale) merge only when the centroid behaves like a multiple root, i.e.
    the first m Taylor coefficients there are negligible.
    """
    roots = list(roots)
    if not roots:
        return []
    scale = max(1.0, max(abs(r) for r in roots))
    clusters = [(np.mean([roots[i] for i in g]), len(g))
                for g in _components(roots, cluster_radius * scale)]
    changed = True
    while changed and len(clusters) > 1:
        changed = False
        centers = [z for z, _ in clusters]
        for g in _components(centers, 1e-3 * scale):
            if len(g) < 2:
                continue
            m = sum(clusters[i][1] for i in g)
            z = sum(clusters[i][0] * clusters[i][1] for i in g) / m
            z = _polish_multiple(c, z, m, 1e-3 * scale)
            vals, scales = _taylor_at(c, z, m)
            if all(abs(v) <= _MULTIPLE_ROOT_TAU * s for v, s in zip(vals, scales)):
                keep = [cl for i, cl in enumerate(clusters) if i not in g]
                clusters = keep + [(z, m)]
                changed = True
                break
    return clusters


def sort_key(z, scale=1.0):
    q = 1e-9 * scale
    return (round(z.real / q), round(z.imag / q))


def roots_numeric(p, tol: float = DEFAULT_TOL, cluster_radius: float = DEFAULT_CLUSTER_RADIUS,
                  max_iter: int = DEFAULT_MAX_ITER):
    """Roots of ``p`` as a sorted list of ``(root, multiplicity)``.

    ``p`` is a :class:`~polymoment.poly.Poly` (embedded numerically) or an
    ascending array of complex coefficients. Raises :class:`NoConvergence` if the
    iteration stalls or a merged root fails the residual test.
    """
    c = _as_coeffs(p)
    if len(c) < 2:
        raise ValueError("roots_numeric needs a nonconstant polynomial")
    zero_mult = 0
    while c[zero_mult] == 0:
        zero_mult += 1
    c_red = c[zero_mult:]
    found = []
    if len(c_red) > 1:
        raw = aberth(c_red, tol, max_iter)
        found = cluster_roots(c_red, raw, cluster_radius)
    if zero_mult:
        found.append((0j, zero_mult))
    out = []
    for z, m in found:
        z = complex(z)
        res = abs(np.polyval(c[::-1], z))
        scale = float(abs_scale(c, np.array([z]))[0])
        if res > max(tol, 64 * _EPS) * scale:
            raise NoConvergence(f"residual {res:.3e} at root {z} exceeds tolerance")
        out.append((z, m))
    rs = max(1.0, max(abs(z) for z, _ in out))
    out.sort(key=lambda t: sort_key(t[0], rs))
    return out


def simple_roots(p, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Roots of a squarefree polynomial as an array, Newton-polished, sorted."""
    c = _as_coeffs(p)
    n = len(c) - 1
    if c[0] == 0:
        rts = roots_numeric(c, tol)
        x = np.array([z for z, m in rts for _ in range(m)])
    else:
        x = aberth(c, tol)
    dc = c[1:] * np.arange(1, n + 1)
    for _ in range(3):
        pv = np.polyval(c[::-1], x)
        dv = np.polyval(dc[::-1], x)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = np.where(dv != 0, pv / dv, 0)
        x = x - step
    rs = max(1.0, float(np.max(np.abs(x))))
    return np.array(sorted(x, key=lambda z: sort_key(z, rs)))
