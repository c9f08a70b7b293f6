"""Vectorised double-double arithmetic (Dekker / Knuth error-free transforms).

A value is a pair ``(hi, lo)`` of float64 arrays with ``|lo| <= ulp(hi)/2``.
Only what the terminating hypergeometric sums need is provided.
"""

from __future__ import annotations

import numpy as np

_SPLITTER = 134217729.0  # 2**27 + 1


def two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def quick_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    err = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, err


def add(ah, al, bh, bl):
    s, e = two_sum(ah, bh)
    t, f = two_sum(al, bl)
    e = e + t
    s, e = quick_two_sum(s, e)
    e = e + f
    return quick_two_sum(s, e)


def mul(ah, al, bh, bl):
    p, e = two_prod(ah, bh)
    e = e + (ah * bl + al * bh)
    return quick_two_sum(p, e)


def div(ah, al, bh, bl):
    q1 = ah / bh
    ph, pl = mul(q1, 0.0 * q1, bh, bl)
    rh, rl = add(ah, al, -ph, -pl)
    q2 = rh / bh
    ph, pl = mul(q2, 0.0 * q2, bh, bl)
    rh, rl = add(rh, rl, -ph, -pl)
    q3 = rh / bh
    q1, q2 = quick_two_sum(q1, q2)
    return add(q1, q2, q3, 0.0 * q3)


def from_float(x):
    x = np.asarray(x, dtype=float)
    return x, np.zeros_like(x)


def to_float(hi, lo):
    return hi + lo
