"""Dense univariate polynomial arithmetic over the rationals.

Polynomials are tuples of Fractions indexed by exponent, trailing zeros
stripped; the zero polynomial is the empty tuple.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Poly = tuple[Fraction, ...]


def trim(coeffs: Sequence[Fraction]) -> Poly:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(Fraction(x) for x in c)


def degree(p: Poly) -> int:
    """Degree, with deg 0 = -1."""
    return len(p) - 1


def padd(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0)
                 for i in range(n)])


def pneg(p: Poly) -> Poly:
    return tuple(-x for x in p)


def pscale(p: Poly, c: Fraction) -> Poly:
    if c == 0:
        return ()
    return tuple(c * x for x in p)


def pmul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def ppow(p: Poly, n: int) -> Poly:
    out: Poly = (Fraction(1),)
    for _ in range(n):
        out = pmul(out, p)
    return out


def pdivmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    quo = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    dq = len(q) - 1
    lead = q[-1]
    for i in range(len(rem) - 1, dq - 1, -1):
        if rem[i] == 0:
            continue
        f = rem[i] / lead
        quo[i - dq] = f
        for j, b in enumerate(q):
            rem[i - dq + j] -= f * b
    return trim(quo), trim(rem)


def pmod(p: Poly, q: Poly) -> Poly:
    return pdivmod(p, q)[1]


def pmonic(p: Poly) -> Poly:
    if not p:
        return ()
    return tuple(x / p[-1] for x in p)


def pgcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd."""
    a, b = p, q
    while b:
        a, b = b, pmod(a, b)
    return pmonic(a)


def pxgcd(p: Poly, q: Poly) -> tuple[Poly, Poly, Poly]:
    """Extended Euclid: returns (g, u, v) with u*p + v*q = g, g monic."""
    r0, r1 = p, q
    s0, s1 = (Fraction(1),), ()
    t0, t1 = (), (Fraction(1),)
    while r1:
        quo, rem = pdivmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, padd(s0, pneg(pmul(quo, s1)))
        t0, t1 = t1, padd(t0, pneg(pmul(quo, t1)))
    if not r0:
        return (), s0, t0
    lead = r0[-1]
    inv = 1 / lead
    return pmonic(r0), pscale(s0, inv), pscale(t0, inv)


def peval(p: Poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def rational_roots(p: Poly) -> tuple[list[tuple[Fraction, int]], Poly]:
    """All rational roots with multiplicities, plus the rootless cofactor.

    Uses the rational root bound on the integer-cleared polynomial; this is
    root extraction for univariate polynomials, not general factorization.
    """
    if not p:
        raise ValueError("zero polynomial")
    roots: list[tuple[Fraction, int]] = []
    rem = p
    zero_mult = 0
    while len(rem) > 1 and rem[0] == 0:
        rem = rem[1:]
        zero_mult += 1
    if zero_mult:
        roots.append((Fraction(0), zero_mult))
    while len(rem) > 1:
        root = _find_rational_root(rem)
        if root is None:
            break
        mult = 0
        while True:
            quo, r = pdivmod(rem, (-root, Fraction(1)))
            if r:
                break
            rem = quo
            mult += 1
        roots.append((root, mult))
    roots.sort(key=lambda rm: rm[0])
    return roots, rem


def _find_rational_root(p: Poly) -> Fraction | None:
    from math import gcd

    scale = 1
    for c in p:
        scale = scale * c.denominator // gcd(scale, c.denominator)
    ints = [int(c * scale) for c in p]
    const, lead = ints[0], ints[-1]
    if const == 0:
        return Fraction(0)
    for num in _divisors(abs(const)):
        for den in _divisors(abs(lead)):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if peval(p, cand) == 0:
                    return cand
    return None


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def pstr(p: Poly, var: str = "t") -> str:
    """Human form, highest degree first: "t^2 - 2*t + 1"."""
    if not p:
        return "0"
    parts = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c == 0:
            continue
        if k == 0:
            body = _coeff_str(abs(c))
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if abs(c) == 1 else f"{_coeff_str(abs(c))}*{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


def _coeff_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
