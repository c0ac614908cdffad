"""Permutations on {0..n-1} and the handful of group properties the verdicts rely on.

Products follow function composition: ``(p * q)(i) == p(q(i))``, so ``q`` acts
first. Continuation along a path ``g`` followed by a path ``h`` therefore has
permutation ``perm_h * perm_g``.
"""
from __future__ import annotations

from collections import deque
from functools import reduce
from math import lcm


class Permutation:
    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        self.images = images

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def cycle(cls, n: int) -> "Permutation":
        """The standard n-cycle i -> i+1 mod n."""
        return cls([(i + 1) % n for i in range(n)])

    @classmethod
    def from_cycles(cls, n: int, cycles) -> "Permutation":
        img = list(range(n))
        for cyc in cycles:
            for x, y in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[x] = y
        return cls(img)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation(self.images[j] for j in other.images)

    def __pow__(self, e: int) -> "Permutation":
        if e < 0:
            return self.inverse() ** (-e)
        out = Permutation.identity(self.n)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            base = base * base
        return out

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def cycles(self, include_fixed: bool = True):
        seen = set()
        out = []
        for i in range(self.n):
            if i in seen:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            if include_fixed or len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_of(self, i: int) -> tuple:
        cyc = [i]
        j = self.images[i]
        while j != i:
            cyc.append(j)
            j = self.images[j]
        return tuple(cyc)

    def cycle_type(self) -> tuple:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def order(self) -> int:
        return reduce(lcm, (len(c) for c in self.cycles()), 1)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def is_full_cycle(self) -> bool:
        return len(self.cycles()) == 1

    def relabel(self, new_of_old) -> "Permutation":
        """Same permutation written in new labels: ``new_of_old[i]`` is i's new name."""
        img = [0] * self.n
        for old, new in enumerate(new_of_old):
            img[new] = new_of_old[self.images[old]]
        return Permutation(img)

    def __str__(self):
        cyc = self.cycles(include_fixed=False)
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self):
        return f"Permutation({list(self.images)})"


def product_in_path_order(perms, n: int) -> Permutation:
    """Permutation of the concatenated path: first element of ``perms`` acts first."""
    out = Permutation.identity(n)
    for p in perms:
        out = p * out
    return out


def orbit(gens, start, act=None):
    act = act or (lambda g, x: g(x))
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = act(g, x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def is_transitive(gens, n: int) -> bool:
    return n <= 1 or len(orbit(gens, 0)) == n


def is_doubly_transitive(gens, n: int) -> bool:
    """Transitive on ordered pairs of distinct points."""
    if n <= 1:
        return True
    if not is_transitive(gens, n):
        return False
    pairs = orbit(gens, (0, 1), act=lambda g, p: (g(p[0]), g(p[1])))
    return len(pairs) == n * (n - 1)


def minimal_block_system(gens, n: int, x: int, y: int):
    """Finest block system in which ``x`` and ``y`` share a block (union-find closure)."""
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    queue = deque()

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
            queue.append((i, j))

    union(x, y)
    while queue:
        i, j = queue.popleft()
        for g in gens:
            union(g(i), g(j))
    blocks = {}
    for i in range(n):
        blocks.setdefault(find(i), []).append(i)
    return sorted(tuple(b) for b in blocks.values())


def nontrivial_block_systems(gens, n: int):
    """Nontrivial block systems generated by a pair {0, j}.

    This includes every minimal block system, which is all the primitivity test
    needs; a system whose block through 0 is not generated by two points is missed.
    """
    found = []
    for j in range(1, n):
        sys_ = minimal_block_system(gens, n, 0, j)
        size = len(sys_[0])
        if 1 < size < n and sys_ not in found:
            found.append(sys_)
    return sorted(found, key=lambda s: (len(s[0]), s))


def is_primitive(gens, n: int) -> bool:
    return is_transitive(gens, n) and not nontrivial_block_systems(gens, n)


def group_order(gens, n: int, cap: int = 50000):
    """Order of the generated group by closure, or None once it exceeds ``cap``."""
    ident = Permutation.identity(n)
    seen = {ident}
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for h in gens:
            k = h * g
            if k not in seen:
                seen.add(k)
                if len(seen) > cap:
                    return None
                queue.append(k)
    return len(seen)
