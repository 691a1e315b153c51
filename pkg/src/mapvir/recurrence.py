"""Minimal linear recurrence detection over exact rationals.

Given windowed sequences s_0, ..., s_D, find the smallest monic polynomial
p = p_0 + p_1 x + ... + x^r with

    sum_i p_i s_{k+i} = 0   for every window position k

jointly for all given sequences.  The order is capped at floor(D/2) so the
linear system is overdetermined; within that cap the search is exact (row
reduction over Fractions), so a returned polynomial annihilates the windows
exactly and a None answer means no recurrence of capped order exists.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from . import linalg, polyutil


def minimal_annihilator(seqs: Sequence[Sequence[Fraction]],
                        max_order: int | None = None) -> polyutil.Poly | None:
    """Smallest common monic annihilating polynomial, or None.

    Order 0 (the constant polynomial 1) is reported exactly when every
    sequence is identically zero on its window.
    """
    seqs = [list(s) for s in seqs if len(s) > 0]
    if not seqs:
        return (Fraction(1),)
    d = min(len(s) for s in seqs) - 1
    cap = d // 2
    if max_order is not None:
        cap = min(cap, max_order)
    for r in range(cap + 1):
        if r == 0:
            if all(all(x == 0 for x in s) for s in seqs):
                return (Fraction(1),)
            continue
        rows = []
        rhs = []
        for s in seqs:
            for k in range(len(s) - r):
                rows.append([s[k + i] for i in range(r)])
                rhs.append(-s[k + r])
        sol = linalg.solve(rows, rhs)
        if sol is not None:
            return polyutil.trim(list(sol) + [Fraction(1)])
    return None


def satisfies(seq: Sequence[Fraction], p: polyutil.Poly) -> bool:
    """Does the windowed sequence satisfy the recurrence with char poly p?"""
    r = polyutil.degree(p)
    if r < 0:
        return all(x == 0 for x in seq)
    for k in range(len(seq) - r):
        if sum(p[i] * seq[k + i] for i in range(r + 1)) != 0:
            return False
    return True


def extend(seq: Sequence[Fraction], p: polyutil.Poly, length: int) -> list[Fraction]:
    """Extend a p-recurrent sequence to the requested length (p monic)."""
    r = polyutil.degree(p)
    if r <= 0:
        raise ValueError("extension needs a recurrence of positive order")
    out = [Fraction(x) for x in seq]
    if len(out) < r:
        raise ValueError("not enough initial values for the recurrence order")
    while len(out) < length:
        k = len(out) - r
        out.append(-sum(p[i] * out[k + i] for i in range(r)))
    return out
