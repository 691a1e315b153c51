"""PBW basis of U(V_-) for the lowering half of Vir (x) A.

Generators are pairs (m, b) standing for d_{-m} (x) e_b with depth m >= 1 and
e_b a basis element of the coefficient algebra.  A monomial is a tuple of
generators stored in non-increasing order under

    (m1, b1) > (m2, b2)  <=>  (m1, -b1) >_lex (m2, -b2),

i.e. deeper generators first, and among equal depths the earlier basis element
first.  Monomials compare by (length, depth tuple, basis tuple), so longer
products always dominate.  The basis order is the input order for
structure-constants algebras and degree order for the monomial kinds; it is
echoed in report metadata.
"""

from __future__ import annotations

from fractions import Fraction
from types import MappingProxyType
from typing import Sequence

from .algebra import Algebra
from .errors import MissingWindow, NotLowering
from .liealg import LieElement
from .scalars import as_scalar, format_scalar

Generator = tuple[int, int]
Monomial = tuple[Generator, ...]


def genkey(gen: Generator):
    m, b = gen
    return (m, -b)


def monomial_key(mono: Monomial):
    return (len(mono),
            tuple(m for m, _ in mono),
            tuple(-b for _, b in mono))


def monomial_weight(mono: Monomial) -> int:
    return -sum(m for m, _ in mono)


def basis_order_note(algebra: Algebra) -> str:
    if algebra.kind == "structure_constants":
        return "input basis order"
    return "monomial degree order"


class EnvElement:
    """A finite rational combination of PBW monomials in U(V_-)."""

    __slots__ = ("algebra", "_terms")

    def __init__(self, algebra: Algebra, terms=None):
        clean: dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            coeff = as_scalar(coeff)
            if coeff != 0:
                clean[tuple(mono)] = coeff
        self.algebra = algebra
        self._terms = clean

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, mono: Monomial) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def weights(self) -> set[int]:
        return {monomial_weight(m) for m in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.weights()) <= 1

    def __add__(self, other):
        if not isinstance(other, EnvElement):
            return NotImplemented
        self.algebra.require_compatible(other.algebra)
        out = dict(self._terms)
        for mono, c in other._terms.items():
            out[mono] = out.get(mono, Fraction(0)) + c
        return EnvElement(self.algebra, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, s) -> "EnvElement":
        s = as_scalar(s)
        return EnvElement(self.algebra, {m: s * c for m, c in self._terms.items()})

    def __mul__(self, s):
        if isinstance(s, (int, Fraction)):
            return self.scale(s)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, EnvElement):
            return NotImplemented
        return (self.algebra.compatible(other.algebra)
                and self._terms == other._terms)

    def __hash__(self):
        return hash((self.algebra.signature, frozenset(self._terms.items())))

    def __repr__(self):
        return f"<{format_env(self)}>"


def _acc(dst: dict, mono: Monomial, coeff: Fraction):
    v = dst.get(mono, Fraction(0)) + coeff
    if v == 0:
        dst.pop(mono, None)
    else:
        dst[mono] = v


def _left_mult(algebra: Algebra, gen: Generator, mono: Monomial) -> dict:
    """Normal form of gen * mono in U(V_-), as a monomial -> coeff map.

    Straightening rule for an out-of-order adjacent pair (u smaller than h):

        u h = h u + [u, h],
        [d_{-mu} (x) e_bu, d_{-mh} (x) e_bh] = (mu - mh) d_{-(mu+mh)} (x) e_bu e_bh.

    No central terms arise: -mu = -(-mh) is impossible for positive depths.
    """
    if not mono or genkey(gen) >= genkey(mono[0]):
        return {(gen,) + mono: Fraction(1)}
    cache = algebra._caches.setdefault("pbw_left_mult", {})
    key = (gen, mono)
    hit = cache.get(key)
    if hit is not None:
        return hit
    head, rest = mono[0], mono[1:]
    out: dict = {}
    for m2, c2 in _left_mult(algebra, gen, rest).items():
        for m3, c3 in _left_mult(algebra, head, m2).items():
            _acc(out, m3, c2 * c3)
    mu, bu = gen
    mh, bh = head
    coeff = mu - mh
    if coeff != 0:
        prod = algebra.basis_product(bu, bh)
        for bk, ck in prod.coeffs.items():
            for m3, c3 in _left_mult(algebra, (mu + mh, bk), rest).items():
                _acc(out, m3, coeff * ck * c3)
    cache[key] = out
    return out


def _letter_generators(letter: LieElement) -> list[tuple[Generator, Fraction]]:
    if not letter.c_part.is_zero():
        raise NotLowering("word letter has a central component")
    gens = []
    for n, f in letter.d_part.items():
        if n >= 0:
            raise NotLowering(f"word letter has a component in mode {n} >= 0")
        for b, cb in f.coeffs.items():
            gens.append(((-n, b), cb))
    return gens


def straighten(word: Sequence[LieElement]) -> EnvElement:
    """Image of the ordered product of the word letters in the PBW basis.

    Every letter must lie in V_- (negative modes, no central part).  The
    result is path-independent and weight-preserving.
    """
    word = list(word)
    if not word:
        raise ValueError("straighten needs a nonempty word")
    alg = word[0].algebra
    for letter in word[1:]:
        alg.require_compatible(letter.algebra)
    acc: dict = {(): Fraction(1)}
    for letter in reversed(word):
        gens = _letter_generators(letter)
        nxt: dict = {}
        for mono, cm in acc.items():
            for gen, cg in gens:
                for m2, c2 in _left_mult(alg, gen, mono).items():
                    _acc(nxt, m2, cm * cg * c2)
        acc = nxt
    return EnvElement(alg, acc)


def height_hm(x: EnvElement) -> tuple[int, EnvElement]:
    """Height of the largest monomial and the highest term.

    The zero element has height -1 and highest term 0; the empty monomial
    (the unit of U(V_-)) has height 0.
    """
    if x.is_zero():
        return -1, EnvElement(x.algebra, {})
    top = max(x._terms, key=monomial_key)
    return len(top), EnvElement(x.algebra, {top: x._terms[top]})


def pbw_basis(weight: int, algebra: Algebra, window=None) -> list[Monomial]:
    """All PBW monomials of weight -weight, sorted descending.

    These are colored partitions of ``weight``: parts are generator depths,
    colors are algebra basis indices (or window exponents for the infinite
    kinds, where a window is mandatory).
    """
    if weight < 0:
        raise ValueError("weight must be nonnegative")
    if weight == 0:
        return [()]
    if algebra.is_finite:
        idxs = list(algebra.basis_indices())
    else:
        if window is None:
            window = algebra.window
        if window is None:
            raise MissingWindow("pbw_basis over an infinite algebra needs a window")
        idxs = list(range(window[0], window[1] + 1))
    gens = [(m, b) for m in range(weight, 0, -1) for b in sorted(idxs)]
    out: list[Monomial] = []
    stack: list[Generator] = []

    def rec(remaining: int, start: int):
        if remaining == 0:
            out.append(tuple(stack))
            return
        for i in range(start, len(gens)):
            m = gens[i][0]
            if m > remaining:
                continue
            stack.append(gens[i])
            rec(remaining - m, i)
            stack.pop()

    rec(weight, 0)
    out.sort(key=monomial_key, reverse=True)
    return out


def format_monomial(mono: Monomial, algebra: Algebra) -> str:
    """Display form, e.g. "d[-2]*t . d[-1]*1"."""
    if not mono:
        return "1"
    return " . ".join(f"d[-{m}]*{algebra.label(b)}" for m, b in mono)


def format_env(x: EnvElement) -> str:
    if x.is_zero():
        return "0"
    parts = []
    for mono in sorted(x._terms, key=monomial_key, reverse=True):
        coeff = x._terms[mono]
        body = format_monomial(mono, x.algebra)
        if not mono:
            body = format_scalar(abs(coeff))
        elif abs(coeff) != 1:
            body = f"{format_scalar(abs(coeff))}*({body})"
        if not parts:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(parts)
