"""Integer polynomial kernels.

A rational polynomial is carried as ``(nums, den)``: a tuple of Python ints (ascending
degree) and one positive common denominator. Products go through Kronecker
substitution so the heavy lifting happens inside CPython's big-integer multiply;
this is what keeps moment scans of degree several hundred cheap.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

ZERO = ((), 1)
ONE = ((1,), 1)


def from_fractions(coeffs) -> tuple:
    coeffs = [Fraction(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        return ZERO
    den = 1
    for c in coeffs:
        den = lcm(den, c.denominator)
    return tuple(c.numerator * (den // c.denominator) for c in coeffs), den


def to_fractions(p) -> list:
    nums, den = p
    return [Fraction(n, den) for n in nums]


def normalize(nums, den):
    nums = list(nums)
    while nums and nums[-1] == 0:
        nums.pop()
    if not nums:
        return ZERO
    g = den
    for n in nums:
        g = gcd(g, n)
        if g == 1:
            break
    if g > 1:
        nums = [n // g for n in nums]
        den //= g
    return tuple(nums), den


def _pack(nums, k):
    acc = 0
    for n in reversed(nums):
        acc = (acc << k) + n
    return acc


def _unpack(value, k, count):
    out = []
    mask = (1 << k) - 1
    half = 1 << (k - 1)
    for _ in range(count):
        low = value & mask
        if low >= half:
            low -= 1 << k
        out.append(low)
        value = (value - low) >> k
    return out


def mul_ints(a, b):
    """Exact product of integer coefficient tuples."""
    if not a or not b:
        return ()
    if len(a) == 1:
        c = a[0]
        return tuple(c * x for x in b)
    if len(b) == 1:
        c = b[0]
        return tuple(c * x for x in a)
    ma = max(abs(x) for x in a)
    mb = max(abs(x) for x in b)
    bound = ma * mb * min(len(a), len(b))
    k = bound.bit_length() + 2
    prod = _pack(a, k) * _pack(b, k)
    return tuple(_unpack(prod, k, len(a) + len(b) - 1))


def mul(p, q):
    nums = mul_ints(p[0], q[0])
    if not nums:
        return ZERO
    return normalize(nums, p[1] * q[1])


def add(p, q):
    (a, da), (b, db) = p, q
    if not a:
        return q
    if not b:
        return p
    den = lcm(da, db)
    fa, fb = den // da, den // db
    n = max(len(a), len(b))
    nums = [(a[i] * fa if i < len(a) else 0) + (b[i] * fb if i < len(b) else 0) for i in range(n)]
    return normalize(nums, den)


def scale(p, c: Fraction):
    c = Fraction(c)
    if not c or not p[0]:
        return ZERO
    return normalize([n * c.numerator for n in p[0]], p[1] * c.denominator)


def power(p, e: int):
    result = ONE
    base = p
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def dot(nums, table, start=0):
    """``sum(nums[l] * table[start + l])`` over ints."""
    total = 0
    for n, t in zip(nums, table[start:start + len(nums)]):
        if n:
            total += n * t
    return total
