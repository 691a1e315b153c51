"""Independent oracle implementations for the test suite.

Nothing here reuses the library's linear algebra or PBW action paths: ranks
come from a fraction-free elimination, the classical Virasoro action is a
worklist rewriter on bare mode tuples, and partition counts come from the
generating function.
"""

from __future__ import annotations

import math
from fractions import Fraction


def oracle_rank(rows) -> int:
    """Row rank by Bareiss-style fraction-free elimination."""
    m = [[Fraction(x) for x in row] for row in rows if any(row)]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    used = set()
    for col in range(ncols):
        piv = None
        for r in range(len(m)):
            if r not in used and m[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        used.add(piv)
        rank += 1
        for r in range(len(m)):
            if r != piv and m[r][col] != 0:
                factor = m[r][col] / m[piv][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[piv])]
    return rank


def oracle_det(rows) -> Fraction:
    """Determinant by cofactor-free elimination with row swaps."""
    m = [[Fraction(x) for x in row] for row in rows]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col] / inv
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return det


def poly_divmod_oracle(num, den):
    """Schoolbook long division over Fractions, highest degree first lists."""
    num = [Fraction(x) for x in num]
    den = [Fraction(x) for x in den]
    while den and den[0] == 0:
        den = den[1:]
    if not den:
        raise ZeroDivisionError
    quo = [Fraction(0)] * max(0, len(num) - len(den) + 1)
    rem = num[:]
    for i in range(len(quo)):
        if rem[i] == 0:
            continue
        f = rem[i] / den[0]
        quo[i] = f
        for j, d in enumerate(den):
            rem[i + j] -= f * d
    while rem and rem[0] == 0:
        rem = rem[1:]
    return quo, rem


def partitions(n: int):
    """Integer partitions of n as descending tuples."""
    if n == 0:
        yield ()
        return

    def rec(remaining, largest, acc):
        if remaining == 0:
            yield tuple(acc)
            return
        for part in range(min(largest, remaining), 0, -1):
            acc.append(part)
            yield from rec(remaining - part, part, acc)
            acc.pop()

    yield from rec(n, n, [])


def colored_partition_series(colors: int, max_n: int) -> list[int]:
    """Coefficients of prod_{k>=1} (1 - q^k)^(-colors) through q^max_n."""
    series = [Fraction(1)] + [Fraction(0)] * max_n
    for k in range(1, max_n + 1):
        # multiply by (1 - q^k)^(-colors) = sum_j C(j+colors-1, colors-1) q^{kj}
        nxt = [Fraction(0)] * (max_n + 1)
        for total in range(max_n + 1):
            j = 0
            while j * k <= total:
                nxt[total] += series[total - j * k] * math.comb(j + colors - 1,
                                                                colors - 1)
                j += 1
        series = nxt
    return [int(x) for x in series]


def virasoro_apply(modes, h, cprime) -> dict[tuple, Fraction]:
    """Normal form of d_{m_1} ... d_{m_k} v in the classical Verma module.

    Worklist rewriter: canonical words are ascending tuples of negative modes
    (deepest first).  Out-of-order adjacent pairs split into the swap plus the
    bracket terms (n - m) d_{m+n} and delta_{m,-n} (m^3 - m)/12 c', trailing
    positive modes kill v, trailing zeros contribute h.
    """
    h = Fraction(h)
    cprime = Fraction(cprime)
    out: dict[tuple, Fraction] = {}
    work = [(Fraction(1), list(modes))]
    while work:
        coeff, ms = work.pop()
        if coeff == 0:
            continue
        if not ms:
            out[()] = out.get((), Fraction(0)) + coeff
            continue
        last = ms[-1]
        if last > 0:
            continue
        if last == 0:
            work.append((coeff * h, ms[:-1]))
            continue
        pos = next((j for j in range(len(ms) - 1) if ms[j] > ms[j + 1]), None)
        if pos is None:
            key = tuple(ms)
            out[key] = out.get(key, Fraction(0)) + coeff
            continue
        a, b = ms[pos], ms[pos + 1]
        work.append((coeff, ms[:pos] + [b, a] + ms[pos + 2:]))
        work.append((coeff * (b - a), ms[:pos] + [a + b] + ms[pos + 2:]))
        if a == -b:
            central = Fraction(a ** 3 - a, 12) * cprime
            if central != 0:
                work.append((coeff * central, ms[:pos] + ms[pos + 2:]))
    return {k: v for k, v in out.items() if v != 0}


def classical_pairing_matrix(depth: int, h, cprime):
    """Pairing of raising vs lowering partition words in the classical Verma
    module, by the worklist rewriter."""
    parts = list(partitions(depth))
    mat = []
    for x in parts:
        row = []
        raising = [int(p) for p in x]  # positive modes, deepest first
        for y in parts:
            lowering = sorted((-int(p) for p in y))  # ascending negatives
            res = virasoro_apply(raising + lowering, h, cprime)
            row.append(res.get((), Fraction(0)))
        mat.append(row)
    return mat


def classical_singular_dim(depth: int, h, cprime) -> int:
    """Dimension of the depth-n singular subspace via stacked d_1, d_2 maps,
    built with the worklist rewriter and ranked by the oracle elimination."""
    parts = list(partitions(depth))
    col_index = {p: i for i, p in enumerate(parts)}
    rows = []
    for mode in (1, 2):
        if depth - mode < 0:
            continue
        targets = {p: i for i, p in enumerate(partitions(depth - mode))}
        block = [[Fraction(0)] * len(parts) for _ in targets]
        for y in parts:
            lowering = sorted(-int(p) for p in y)
            res = virasoro_apply([mode] + lowering, h, cprime)
            for word, coeff in res.items():
                part = tuple(sorted((-m for m in word), reverse=True))
                block[targets[part]][col_index[y]] += coeff
        rows.extend(block)
    ncols = len(parts)
    return ncols - oracle_rank(rows) if rows else ncols


def convolve(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out
