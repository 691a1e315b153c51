"""Finitely generated commutative coefficient algebras over exact rationals.

Four kinds of algebra are supported:

* ``structure_constants`` -- finite dimension, explicit multiplication tensor;
* ``product_local`` -- Q[t]/((t-a_1)^{n_1} ... (t-a_r)^{n_r}) with distinct
  points, realized on the monomial basis 1, t, ..., t^{dim-1};
* ``polynomial`` -- Q[t] restricted to a degree window [0, D];
* ``laurent`` -- Q[t, 1/t] restricted to an exponent window [lo, hi].

The two infinite kinds never truncate silently: any product whose exponents
leave the window raises WindowOverflow.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Callable, Sequence

from . import linalg, polyutil
from .errors import (
    AlgebraMismatch,
    ImproperIdeal,
    InfiniteDimensionalAlgebra,
    UnsupportedKind,
    WindowOverflow,
)
from .scalars import as_scalar, format_scalar

FINITE_KINDS = ("structure_constants", "product_local")
MONOMIAL_KINDS = ("product_local", "polynomial", "laurent")


class Algebra:
    """A coefficient algebra.  Immutable after construction."""

    __slots__ = ("kind", "dim", "basis_labels", "factors", "window",
                 "_tensor", "_unit", "_modulus", "_signature", "_caches")

    def __init__(self, *, kind, dim=None, basis_labels=None, factors=None,
                 window=None, tensor=None, unit=None, modulus=None):
        self.kind = kind
        self.dim = dim
        self.basis_labels = basis_labels
        self.factors = factors
        self.window = window
        self._tensor = tensor
        self._unit = unit
        self._modulus = modulus
        if kind == "structure_constants":
            sig = (kind, dim, basis_labels, tensor, unit)
        elif kind == "product_local":
            sig = (kind, factors)
        else:
            sig = (kind, window)
        self._signature = sig
        self._caches: dict = {}

    # -- constructors -------------------------------------------------------

    @classmethod
    def rationals(cls) -> "Algebra":
        """The one-dimensional algebra Q (so Vir (x) Q is the plain Virasoro algebra)."""
        one = Fraction(1)
        tensor = (((one,),),)
        return cls(kind="structure_constants", dim=1, basis_labels=("1",),
                   tensor=tensor, unit=(one,))

    @classmethod
    def structure_constants(cls, tensor, unit, labels=None, validate=True) -> "Algebra":
        """Finite-dimensional algebra from e_i e_j = sum_k tensor[i][j][k] e_k."""
        tens = tuple(tuple(tuple(as_scalar(c) for c in vec) for vec in row)
                     for row in tensor)
        dim = len(tens)
        for row in tens:
            if len(row) != dim or any(len(vec) != dim for vec in row):
                raise ValueError("structure tensor must be dim x dim x dim")
        unit_vec = tuple(as_scalar(c) for c in unit)
        if len(unit_vec) != dim:
            raise ValueError("unit vector has wrong length")
        if labels is None:
            labels = tuple(f"e{i}" for i in range(dim))
        else:
            labels = tuple(labels)
            if len(labels) != dim:
                raise ValueError("wrong number of basis labels")
        alg = cls(kind="structure_constants", dim=dim, basis_labels=labels,
                  tensor=tens, unit=unit_vec)
        if validate:
            alg._validate_axioms()
        return alg

    @classmethod
    def product_local(cls, factors) -> "Algebra":
        """Q[t] modulo the product of (t - point)^order over the given factors."""
        facs = tuple((as_scalar(p), int(n)) for p, n in
                     (((f["point"], f["order"]) if isinstance(f, dict) else f)
                      for f in factors))
        if not facs:
            raise ValueError("product_local algebra needs at least one factor")
        pts = [p for p, _ in facs]
        if len(set(pts)) != len(pts):
            raise ValueError("product_local points must be pairwise distinct")
        if any(n < 1 for _, n in facs):
            raise ValueError("factor orders must be positive")
        modulus: polyutil.Poly = (Fraction(1),)
        for p, n in facs:
            modulus = polyutil.pmul(modulus, polyutil.ppow((-p, Fraction(1)), n))
        dim = len(modulus) - 1
        labels = tuple(_exponent_label(k) for k in range(dim))
        return cls(kind="product_local", dim=dim, basis_labels=labels,
                   factors=facs, modulus=modulus)

    @classmethod
    def polynomial(cls, window) -> "Algebra":
        lo, hi = int(window[0]), int(window[1])
        if lo != 0:
            raise ValueError("polynomial window must start at 0")
        if hi < lo:
            raise ValueError("empty window")
        return cls(kind="polynomial", window=(lo, hi))

    @classmethod
    def laurent(cls, window) -> "Algebra":
        lo, hi = int(window[0]), int(window[1])
        if not (lo <= 0 <= hi):
            raise ValueError("laurent window must contain exponent 0")
        return cls(kind="laurent", window=(lo, hi))

    # -- structure ----------------------------------------------------------

    @property
    def signature(self):
        return self._signature

    @property
    def is_finite(self) -> bool:
        return self.kind in FINITE_KINDS

    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return NotImplemented
        return self._signature == other._signature

    def __hash__(self):
        return hash(self._signature)

    def __repr__(self):
        if self.kind == "product_local":
            facs = ", ".join(f"({format_scalar(p)})^{n}" for p, n in self.factors)
            return f"Algebra(product_local: {facs})"
        if self.kind == "structure_constants":
            return f"Algebra(structure_constants, dim={self.dim})"
        return f"Algebra({self.kind}, window={self.window})"

    def compatible(self, other: "Algebra") -> bool:
        return self._signature == other._signature

    def require_compatible(self, other: "Algebra"):
        if not self.compatible(other):
            raise AlgebraMismatch(f"{self!r} vs {other!r}")

    def _validate_axioms(self):
        dim = self.dim
        for i in range(dim):
            for j in range(i):
                if self._tensor[i][j] != self._tensor[j][i]:
                    raise ValueError(f"structure tensor not commutative at ({i},{j})")
        one = self.one()
        for i in range(dim):
            ei = self.basis_element(i)
            if one * ei != ei:
                raise ValueError(f"unit law fails on basis element {i}")
        for i in range(dim):
            for j in range(i + 1):
                eij = self.basis_element(i) * self.basis_element(j)
                for k in range(dim):
                    ek = self.basis_element(k)
                    if eij * ek != self.basis_element(i) * (self.basis_element(j) * ek):
                        raise ValueError(
                            f"structure tensor not associative at ({i},{j},{k})")

    # -- indices, labels, windows -------------------------------------------

    def basis_indices(self) -> range:
        """Valid coordinate indices; finite kinds only."""
        if not self.is_finite:
            raise InfiniteDimensionalAlgebra(
                f"{self.kind} algebra has no finite basis; use the window")
        return range(self.dim)

    def window_indices(self) -> range:
        if self.is_finite:
            return range(self.dim)
        lo, hi = self.window
        return range(lo, hi + 1)

    def check_index(self, i: int):
        if self.is_finite:
            if not 0 <= i < self.dim:
                raise ValueError(f"basis index {i} out of range for {self!r}")
        else:
            lo, hi = self.window
            if not lo <= i <= hi:
                raise WindowOverflow(
                    f"exponent {i} outside window [{lo}, {hi}]")

    def label(self, i: int) -> str:
        if self.kind in ("polynomial", "laurent"):
            return _exponent_label(i)
        return self.basis_labels[i]

    def index_of_label(self, label: str) -> int:
        if self.kind in ("polynomial", "laurent"):
            k = _exponent_from_label(label)
            self.check_index(k)
            return k
        try:
            return self.basis_labels.index(label)
        except ValueError:
            raise ValueError(f"unknown basis label {label!r} for {self!r}") from None

    # -- elements -----------------------------------------------------------

    def element(self, coeffs) -> "AlgebraElement":
        return AlgebraElement(self, coeffs)

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def one(self) -> "AlgebraElement":
        if self.kind == "structure_constants":
            return AlgebraElement(self, {i: c for i, c in enumerate(self._unit)})
        return AlgebraElement(self, {0: Fraction(1)})

    def basis_element(self, i: int) -> "AlgebraElement":
        self.check_index(i)
        return AlgebraElement(self, {i: Fraction(1)})

    def from_poly(self, coeffs: Sequence[Fraction]) -> "AlgebraElement":
        """Element from dense polynomial coefficients (monomial kinds only)."""
        if self.kind == "product_local":
            red = polyutil.pmod(polyutil.trim(list(coeffs)), self._modulus)
            return AlgebraElement(self, {k: c for k, c in enumerate(red)})
        if self.kind in ("polynomial", "laurent"):
            return AlgebraElement(self, {k: c for k, c in enumerate(coeffs)})
        raise UnsupportedKind("from_poly needs a monomial-based algebra")

    def _mul_coeffs(self, a: dict, b: dict) -> dict:
        out: dict = {}
        if self.kind == "structure_constants":
            for i, ca in a.items():
                row = self._tensor[i]
                for j, cb in b.items():
                    f = ca * cb
                    for k, s in enumerate(row[j]):
                        if s:
                            out[k] = out.get(k, Fraction(0)) + f * s
        elif self.kind == "product_local":
            prod: dict = {}
            for i, ca in a.items():
                for j, cb in b.items():
                    prod[i + j] = prod.get(i + j, Fraction(0)) + ca * cb
            dense = [Fraction(0)] * (max(prod) + 1 if prod else 0)
            for k, v in prod.items():
                dense[k] = v
            red = polyutil.pmod(polyutil.trim(dense), self._modulus)
            out = {k: c for k, c in enumerate(red)}
        else:
            lo, hi = self.window
            for i, ca in a.items():
                for j, cb in b.items():
                    k = i + j
                    if not lo <= k <= hi:
                        raise WindowOverflow(
                            f"product exponent {k} outside window [{lo}, {hi}]")
                    out[k] = out.get(k, Fraction(0)) + ca * cb
        return {k: v for k, v in out.items() if v != 0}

    def basis_product(self, i: int, j: int) -> "AlgebraElement":
        cache = self._caches.setdefault("basis_product", {})
        key = (i, j) if i <= j else (j, i)
        if key not in cache:
            cache[key] = self.basis_element(i) * self.basis_element(j)
        return cache[key]


class AlgebraElement:
    """A sparse vector over an algebra's basis (or exponent window)."""

    __slots__ = ("algebra", "_coeffs")

    def __init__(self, algebra: Algebra, coeffs):
        clean = {}
        for i, c in dict(coeffs).items():
            c = as_scalar(c)
            if c != 0:
                algebra.check_index(i)
                clean[int(i)] = c
        self.algebra = algebra
        self._coeffs = clean

    @property
    def coeffs(self):
        return MappingProxyType(self._coeffs)

    def coeff(self, i: int) -> Fraction:
        return self._coeffs.get(i, Fraction(0))

    def support(self) -> list[int]:
        return sorted(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def items(self):
        return sorted(self._coeffs.items())

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self.algebra.require_compatible(other.algebra)
        out = dict(self._coeffs)
        for i, c in other._coeffs.items():
            out[i] = out.get(i, Fraction(0)) + c
        return AlgebraElement(self.algebra, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return AlgebraElement(self.algebra, {i: -c for i, c in self._coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self.algebra.require_compatible(other.algebra)
            return AlgebraElement(self.algebra,
                                  self.algebra._mul_coeffs(self._coeffs, other._coeffs))
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "AlgebraElement":
        c = as_scalar(c)
        return AlgebraElement(self.algebra, {i: c * v for i, v in self._coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (self.algebra.compatible(other.algebra)
                and self._coeffs == other._coeffs)

    def __hash__(self):
        return hash((self.algebra.signature, frozenset(self._coeffs.items())))

    def to_vector(self) -> list[Fraction]:
        """Dense coordinates over the basis (finite) or window (infinite)."""
        idx = list(self.algebra.window_indices())
        pos = {k: n for n, k in enumerate(idx)}
        vec = [Fraction(0)] * len(idx)
        for i, c in self._coeffs.items():
            vec[pos[i]] = c
        return vec

    def as_poly(self) -> polyutil.Poly:
        """Dense polynomial coefficients; nonnegative exponents only."""
        if self.algebra.kind not in MONOMIAL_KINDS:
            raise UnsupportedKind("as_poly needs a monomial-based algebra")
        if self._coeffs and min(self._coeffs) < 0:
            raise ValueError("element has negative exponents")
        dense = [Fraction(0)] * (max(self._coeffs) + 1 if self._coeffs else 0)
        for k, c in self._coeffs.items():
            dense[k] = c
        return polyutil.trim(dense)

    def __repr__(self):
        return f"<{format_element(self)}>"


def _exponent_label(k: int) -> str:
    if k == 0:
        return "1"
    if k == 1:
        return "t"
    return f"t^{k}"


def _exponent_from_label(label: str) -> int:
    label = label.strip()
    if label == "1":
        return 0
    if label == "t":
        return 1
    if label.startswith("t^"):
        return int(label[2:])
    raise ValueError(f"bad monomial label {label!r}")


def format_element(x: AlgebraElement) -> str:
    """Render an element, e.g. "t^2 - 2*t + 1" or "3*e0 + 1/2*e1"."""
    if x.is_zero():
        return "0"
    monomial = x.algebra.kind in MONOMIAL_KINDS
    keys = sorted(x._coeffs, reverse=True) if monomial else sorted(x._coeffs)
    parts = []
    for i in keys:
        c = x._coeffs[i]
        lab = x.algebra.label(i)
        if lab == "1":
            body = format_scalar(abs(c))
        elif abs(c) == 1:
            body = lab
        else:
            body = f"{format_scalar(abs(c))}*{lab}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Exact product in the common algebra of x and y."""
    return x * y


# -- ideals -----------------------------------------------------------------


class Ideal:
    """An ideal of a finite-dimensional algebra, stored as an RREF basis."""

    __slots__ = ("algebra", "rows", "pivots")

    def __init__(self, algebra: Algebra, rows):
        if not algebra.is_finite:
            raise InfiniteDimensionalAlgebra(
                "basis-matrix ideals need a finite-dimensional algebra")
        red, piv = linalg.rref([list(r) for r in rows])
        self.algebra = algebra
        self.rows = tuple(tuple(r) for r in red)
        self.pivots = tuple(piv)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def is_zero(self) -> bool:
        return not self.rows

    def is_whole(self) -> bool:
        return self.dim == self.algebra.dim

    def contains(self, x: AlgebraElement) -> bool:
        self.algebra.require_compatible(x.algebra)
        return linalg.in_row_span(list(map(list, self.rows)), self.pivots,
                                  x.to_vector())

    def reduce(self, x: AlgebraElement) -> AlgebraElement:
        res = linalg.reduce_against(list(map(list, self.rows)), self.pivots,
                                    x.to_vector())
        return AlgebraElement(self.algebra, {i: c for i, c in enumerate(res)})

    def basis_elements(self) -> list[AlgebraElement]:
        return [AlgebraElement(self.algebra, {i: c for i, c in enumerate(r)})
                for r in self.rows]

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.algebra.compatible(other.algebra) and self.rows == other.rows

    def __hash__(self):
        return hash((self.algebra.signature, self.rows))

    def __repr__(self):
        gens = ", ".join(format_element(b) for b in self.basis_elements())
        return f"Ideal({gens or '0'})"


class PrincipalIdeal:
    """An ideal of a polynomial/Laurent algebra given by one generator.

    The generator is normalized: monic, and (for Laurent algebras) shifted so
    its lowest exponent is 0.  Q[t] and Q[t, 1/t] are principal ideal domains,
    so this loses no generality.
    """

    __slots__ = ("algebra", "generator")

    def __init__(self, algebra: Algebra, generator: AlgebraElement):
        if algebra.kind not in ("polynomial", "laurent"):
            raise UnsupportedKind("principal-ideal records are for polynomial/laurent kinds")
        algebra.require_compatible(generator.algebra)
        self.algebra = algebra
        self.generator = _normalize_generator(generator)

    def is_zero(self) -> bool:
        return self.generator.is_zero()

    def is_whole(self) -> bool:
        p = self.generator.as_poly()
        return len(p) == 1

    @property
    def codim(self) -> int:
        if self.is_zero():
            raise ValueError("zero ideal has infinite codimension")
        return polyutil.degree(self.generator.as_poly())

    def generator_poly(self) -> polyutil.Poly:
        return self.generator.as_poly()

    def contains(self, x: AlgebraElement) -> bool:
        self.algebra.require_compatible(x.algebra)
        if x.is_zero():
            return True
        if self.is_zero():
            return False
        # In the Laurent algebra t is a unit, so x may be shifted to
        # nonnegative exponents; in Q[t] it may not.
        shift = min(x.support()) if self.algebra.kind == "laurent" else 0
        dense = [Fraction(0)] * (max(x.support()) - shift + 1)
        for k, c in x.coeffs.items():
            dense[k - shift] = c
        return not polyutil.pmod(polyutil.trim(dense), self.generator_poly())

    def __eq__(self, other):
        if not isinstance(other, PrincipalIdeal):
            return NotImplemented
        return (self.algebra.compatible(other.algebra)
                and self.generator == other.generator)

    def __hash__(self):
        return hash((self.algebra.signature, self.generator))

    def __repr__(self):
        return f"PrincipalIdeal({format_element(self.generator)})"


def _normalize_generator(g: AlgebraElement) -> AlgebraElement:
    if g.is_zero():
        return g
    shift = min(g.support()) if g.algebra.kind == "laurent" else 0
    lead = g.coeff(max(g.support()))
    return AlgebraElement(g.algebra,
                          {k - shift: c / lead for k, c in g.coeffs.items()})


def ideal_closure(gens: Sequence[AlgebraElement]):
    """Smallest ideal containing the generators.

    Finite-dimensional algebras get an RREF basis; polynomial/Laurent algebras
    get a principal-ideal record (the gcd of the generators).
    """
    gens = list(gens)
    if not gens:
        raise ValueError("ideal_closure needs at least one generator")
    alg = gens[0].algebra
    for g in gens[1:]:
        alg.require_compatible(g.algebra)
    if alg.kind in ("polynomial", "laurent"):
        g: polyutil.Poly = ()
        for x in gens:
            g = polyutil.pgcd(g, _normalize_generator(x).as_poly())
        return PrincipalIdeal(alg, alg.from_poly(g))
    rows = [g.to_vector() for g in gens]
    basis = [alg.basis_element(i) for i in alg.basis_indices()]
    while True:
        red, piv = linalg.rref(rows)
        new_rows = []
        for r in red:
            elt = AlgebraElement(alg, {i: c for i, c in enumerate(r)})
            for e in basis:
                vec = (elt * e).to_vector()
                if not linalg.in_row_span(red, piv, vec):
                    new_rows.append(vec)
        if not new_rows:
            return Ideal(alg, red)
        rows = red + new_rows


def ideal_product(i1, i2):
    """Ideal spanned by pairwise products of the two bases."""
    if isinstance(i1, PrincipalIdeal) and isinstance(i2, PrincipalIdeal):
        i1.algebra.require_compatible(i2.algebra)
        return PrincipalIdeal(i1.algebra, i1.generator * i2.generator)
    if not isinstance(i1, Ideal) or not isinstance(i2, Ideal):
        raise TypeError("ideal_product needs two ideals of the same flavor")
    i1.algebra.require_compatible(i2.algebra)
    prods = [(a * b) for a in i1.basis_elements() for b in i2.basis_elements()]
    if not prods:
        return Ideal(i1.algebra, [])
    return ideal_closure(prods)


def ideal_power(ideal, n: int):
    if n < 1:
        raise ValueError("ideal_power needs a positive exponent")
    out = ideal
    for _ in range(n - 1):
        out = ideal_product(out, ideal)
    return out


def ideal_intersection(i1, i2):
    if isinstance(i1, PrincipalIdeal) and isinstance(i2, PrincipalIdeal):
        i1.algebra.require_compatible(i2.algebra)
        p, q = i1.generator_poly(), i2.generator_poly()
        if not p or not q:
            return PrincipalIdeal(i1.algebra, i1.algebra.zero())
        g = polyutil.pgcd(p, q)
        lcm = polyutil.pdivmod(polyutil.pmul(p, q), g)[0]
        return PrincipalIdeal(i1.algebra, i1.algebra.from_poly(lcm))
    i1.algebra.require_compatible(i2.algebra)
    rows = linalg.row_space_intersection(
        list(map(list, i1.rows)), list(map(list, i2.rows)), i1.algebra.dim)
    return Ideal(i1.algebra, rows)


# -- quotients --------------------------------------------------------------


@dataclass(frozen=True)
class QuotientMap:
    """Projection A -> A/I together with a linear section."""

    source: Algebra
    quotient: Algebra
    _project: Callable[[AlgebraElement], AlgebraElement]
    _lift: Callable[[AlgebraElement], AlgebraElement]

    def __call__(self, x: AlgebraElement) -> AlgebraElement:
        self.source.require_compatible(x.algebra)
        return self._project(x)

    def lift(self, y: AlgebraElement) -> AlgebraElement:
        self.quotient.require_compatible(y.algebra)
        return self._lift(y)


def quotient_algebra(algebra: Algebra, ideal) -> tuple[Algebra, QuotientMap]:
    """The quotient A/I as a structure-constants algebra, with its projection."""
    if isinstance(ideal, PrincipalIdeal):
        return _principal_quotient(algebra, ideal)
    algebra.require_compatible(ideal.algebra)
    if ideal.is_whole():
        raise ImproperIdeal("cannot form the quotient by the whole algebra")
    if ideal.is_zero():
        ident = QuotientMap(algebra, algebra, lambda x: x, lambda x: x)
        return algebra, ident
    dim = algebra.dim
    pivot_set = set(ideal.pivots)
    complement = [j for j in range(dim) if j not in pivot_set]
    pos = {j: n for n, j in enumerate(complement)}

    def project_coords(x: AlgebraElement) -> dict:
        res = ideal.reduce(x)
        return {pos[i]: c for i, c in res.coeffs.items()}

    labels = tuple(algebra.label(j) for j in complement)
    qdim = len(complement)
    tensor = []
    for a in complement:
        row = []
        for b in complement:
            prod = algebra.basis_product(a, b)
            coords = project_coords(prod)
            row.append(tuple(coords.get(k, Fraction(0)) for k in range(qdim)))
        tensor.append(tuple(row))
    unit_coords = project_coords(algebra.one())
    quotient = Algebra.structure_constants(
        tuple(tensor), tuple(unit_coords.get(k, Fraction(0)) for k in range(qdim)),
        labels=labels, validate=False)

    def project(x: AlgebraElement) -> AlgebraElement:
        return AlgebraElement(quotient, project_coords(x))

    def lift(y: AlgebraElement) -> AlgebraElement:
        return AlgebraElement(algebra, {complement[i]: c for i, c in y.coeffs.items()})

    return quotient, QuotientMap(algebra, quotient, project, lift)


def _principal_quotient(algebra: Algebra, ideal: PrincipalIdeal):
    algebra.require_compatible(ideal.algebra)
    if ideal.is_zero():
        ident = QuotientMap(algebra, algebra, lambda x: x, lambda x: x)
        return algebra, ident
    p = ideal.generator_poly()
    deg = polyutil.degree(p)
    if deg == 0:
        raise ImproperIdeal("cannot form the quotient by the whole algebra")
    labels = tuple(_exponent_label(k) for k in range(deg))
    tensor = []
    for a in range(deg):
        row = []
        for b in range(deg):
            mono = [Fraction(0)] * (a + b + 1)
            mono[a + b] = Fraction(1)
            red = polyutil.pmod(polyutil.trim(mono), p)
            row.append(tuple(red[k] if k < len(red) else Fraction(0)
                             for k in range(deg)))
        tensor.append(tuple(row))
    unit = tuple(Fraction(1) if k == 0 else Fraction(0) for k in range(deg))
    quotient = Algebra.structure_constants(tuple(tensor), unit, labels=labels,
                                           validate=False)
    tinv = None
    if algebra.kind == "laurent":
        # t is invertible mod p exactly when p(0) != 0; normalization assures it.
        g, u, _ = polyutil.pxgcd((Fraction(0), Fraction(1)), p)
        if polyutil.degree(g) != 0:
            raise ImproperIdeal("t is not invertible modulo the generator")
        tinv = polyutil.pmod(u, p)

    def project(x: AlgebraElement) -> AlgebraElement:
        pos = {k: c for k, c in x.coeffs.items() if k >= 0}
        dense = [Fraction(0)] * (max(pos) + 1 if pos else 0)
        for k, c in pos.items():
            dense[k] = c
        red = polyutil.pmod(polyutil.trim(dense), p)
        for k, c in x.coeffs.items():
            if k < 0:
                term = polyutil.pscale(polyutil.pmod(polyutil.ppow(tinv, -k), p), c)
                red = polyutil.pmod(polyutil.padd(red, term), p)
        return AlgebraElement(quotient, {k: c for k, c in enumerate(red)})

    def lift(y: AlgebraElement) -> AlgebraElement:
        return AlgebraElement(algebra, dict(y.coeffs))

    return quotient, QuotientMap(algebra, quotient, project, lift)


# -- local structure --------------------------------------------------------


@dataclass(frozen=True)
class LocalFactor:
    """One local factor Q[t]/((t-point)^order) of a product_local algebra."""

    point: Fraction
    order: int
    maximal_ideal: Ideal
    idempotent: AlgebraElement


def local_decomposition(algebra: Algebra) -> list[LocalFactor]:
    """CRT data of a product_local algebra.

    For each factor, the maximal ideal (t - point) and the orthogonal
    idempotent computed by extended Euclid on the coprime factor moduli.
    The idempotents satisfy e_i^2 = e_i, e_i e_j = 0 and sum to 1, exactly.
    """
    if algebra.kind != "product_local":
        raise UnsupportedKind("local_decomposition needs a product_local presentation")
    cached = algebra._caches.get("local_decomposition")
    if cached is not None:
        return cached
    modulus = algebra._modulus
    out = []
    for point, order in algebra.factors:
        m_i = polyutil.ppow((-point, Fraction(1)), order)
        r_i = polyutil.pdivmod(modulus, m_i)[0]
        g, _, v = polyutil.pxgcd(m_i, r_i)
        if polyutil.degree(g) != 0:
            raise ValueError("factors are not coprime")  # unreachable: points distinct
        idem = algebra.from_poly(polyutil.pmod(polyutil.pmul(v, r_i), modulus))
        maxi = ideal_closure([algebra.from_poly((-point, Fraction(1)))])
        out.append(LocalFactor(point, order, maxi, idem))
    total = out[0].idempotent.algebra.zero()
    for f in out:
        if f.idempotent * f.idempotent != f.idempotent:
            raise ValueError("idempotent check failed")
        total = total + f.idempotent
    if total != algebra.one():
        raise ValueError("idempotents do not sum to 1")
    for f, g in itertools.combinations(out, 2):
        if not (f.idempotent * g.idempotent).is_zero():
            raise ValueError("idempotents are not orthogonal")
    algebra._caches["local_decomposition"] = out
    return out


def point_ideal(algebra: Algebra, point):
    """The ideal generated by (t - point) in a monomial-based algebra."""
    point = as_scalar(point)
    if algebra.kind not in MONOMIAL_KINDS:
        raise UnsupportedKind("point ideals need a monomial-based algebra")
    return ideal_closure([algebra.from_poly((-point, Fraction(1)))])


# -- serialization ----------------------------------------------------------


def algebra_to_spec(algebra: Algebra) -> dict:
    if algebra.kind == "product_local":
        return {"kind": "product_local",
                "factors": [{"point": format_scalar(p), "order": n}
                            for p, n in algebra.factors]}
    if algebra.kind == "structure_constants":
        return {"kind": "structure_constants",
                "dim": algebra.dim,
                "labels": list(algebra.basis_labels),
                "unit": [format_scalar(c) for c in algebra._unit],
                "tensor": [[[format_scalar(c) for c in vec] for vec in row]
                           for row in algebra._tensor]}
    return {"kind": algebra.kind, "window": list(algebra.window)}


def algebra_from_spec(spec: dict) -> Algebra:
    kind = spec.get("kind")
    if kind == "product_local":
        return Algebra.product_local(spec["factors"])
    if kind == "structure_constants":
        alg = Algebra.structure_constants(spec["tensor"], spec["unit"],
                                          labels=spec.get("labels"))
        if "dim" in spec and alg.dim != spec["dim"]:
            raise ValueError("declared dim does not match the tensor")
        return alg
    if kind == "polynomial":
        return Algebra.polynomial(spec["window"])
    if kind == "laurent":
        return Algebra.laurent(spec["window"])
    if kind == "rationals":
        return Algebra.rationals()
    raise ValueError(f"unknown algebra kind {kind!r}")
