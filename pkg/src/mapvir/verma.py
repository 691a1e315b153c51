"""Verma modules for Vir (x) A and the decision procedures built on them.

A linear functional phi on V_0 = (d_0 (x) A) + (c (x) A) induces the Verma
module with highest weight vector v; the module is free of rank one over
U(V_-), so vectors are stored as PBW combinations applied to v.  Raising
operators act by commuting through the PBW word; mode-0 pieces that reach v
evaluate through phi and positive modes kill v.

Sign convention: [d_m, d_n] = (n - m) d_{m+n} + delta_{m,-n} (m^3-m)/12 c
throughout.  Under this convention d_{-n} lowers the d_0 eigenvalue, and the
classical depth-2 singular locus at central charge 1 sits at highest weight
-1/4 (it mirrors to +m^2/4 under the opposite convention via d_n -> -d_{-n}).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg, polyutil, recurrence
from .algebra import (
    Algebra,
    AlgebraElement,
    Ideal,
    PrincipalIdeal,
    local_decomposition,
)
from .errors import AlgebraMismatch, UnsupportedKind
from .liealg import LieElement, central_scalar
from .pbw import (
    EnvElement,
    Monomial,
    _acc,
    _left_mult,
    format_env,
    monomial_weight,
    pbw_basis,
)
from .scalars import as_scalar, format_scalar


class Functional:
    """A linear functional on V_0, the data defining a Verma module.

    Finite-dimensional algebras store one value per basis element for each of
    d_0 and c.  Polynomial algebras store the value sequences
    lam_k = phi(d_0 (x) t^k) and kap_k = phi(c (x) t^k); when ``exact_poly``
    is set the sequences satisfy that monic recurrence exactly (equivalently
    phi kills Vir_0 (x) (p)) and extend on demand, otherwise they are sampled
    and evaluation past the declared window is an error.
    """

    __slots__ = ("algebra", "_d0", "_c", "exact_poly", "_declared", "_act_cache")

    def __init__(self, algebra: Algebra, d0, c, exact_poly=None):
        self.algebra = algebra
        self._act_cache = {}
        if algebra.is_finite:
            self._d0 = [as_scalar(d0.get(i, 0)) for i in range(algebra.dim)]
            self._c = [as_scalar(c.get(i, 0)) for i in range(algebra.dim)]
            self._declared = algebra.dim
            self.exact_poly = None
        elif algebra.kind == "polynomial":
            self._d0 = [as_scalar(x) for x in d0]
            self._c = [as_scalar(x) for x in c]
            if len(self._d0) != len(self._c):
                raise ValueError("d0 and c sequences must have equal length")
            self._declared = len(self._d0)
            if exact_poly is not None:
                exact_poly = _coerce_poly(exact_poly)
                if polyutil.degree(exact_poly) < 1:
                    raise ValueError("exact recurrence must have positive degree")
                exact_poly = polyutil.pmonic(exact_poly)
                if len(self._d0) < polyutil.degree(exact_poly):
                    raise ValueError("not enough values for the declared recurrence")
                for seq in (self._d0, self._c):
                    if not recurrence.satisfies(seq, exact_poly):
                        raise ValueError(
                            "declared exact recurrence does not annihilate the values")
            self.exact_poly = exact_poly
        elif algebra.kind == "laurent":
            self._d0 = {int(k): as_scalar(v) for k, v in dict(d0).items()}
            self._c = {int(k): as_scalar(v) for k, v in dict(c).items()}
            self._declared = None
            self.exact_poly = None
        else:
            raise UnsupportedKind(f"no functional support for {algebra.kind}")

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_values(cls, algebra: Algebra, d0_values=None, c_values=None) -> "Functional":
        """Build from {label or index: scalar} maps (finite or Laurent kinds)."""
        def keyed(values):
            out = {}
            for key, val in (values or {}).items():
                idx = key if isinstance(key, int) else algebra.index_of_label(str(key))
                out[idx] = as_scalar(val)
            return out

        if algebra.kind == "polynomial":
            raise UnsupportedKind("polynomial functionals use from_sequences")
        return cls(algebra, keyed(d0_values), keyed(c_values))

    @classmethod
    def from_sequences(cls, algebra: Algebra, d0_seq, c_seq,
                       exact_ideal=None) -> "Functional":
        if algebra.kind != "polynomial":
            raise UnsupportedKind("from_sequences needs a polynomial algebra")
        return cls(algebra, list(d0_seq), list(c_seq), exact_poly=exact_ideal)

    @classmethod
    def classical(cls, d0_value, c_value, algebra: Algebra | None = None) -> "Functional":
        """Functional over A = Q, determined by (phi(d_0), phi(c))."""
        algebra = algebra or Algebra.rationals()
        if algebra.dim != 1:
            raise ValueError("classical functionals need a one-dimensional algebra")
        return cls(algebra, {0: as_scalar(d0_value)}, {0: as_scalar(c_value)})

    # -- evaluation ---------------------------------------------------------

    def _value(self, seq, k: int) -> Fraction:
        if self.algebra.kind == "laurent":
            if k not in seq:
                raise ValueError(f"functional undefined at exponent {k}")
            return seq[k]
        if k < len(seq):
            return seq[k]
        if self.algebra.is_finite:
            return Fraction(0)
        if self.exact_poly is None:
            raise ValueError(
                f"sampled functional undefined at exponent {k} "
                f"(declared through {self._declared - 1})")
        ext = recurrence.extend(seq, self.exact_poly, k + 1)
        seq.extend(ext[len(seq):])
        return seq[k]

    def value_d0(self, k: int) -> Fraction:
        return self._value(self._d0, k)

    def value_c(self, k: int) -> Fraction:
        return self._value(self._c, k)

    def eval_d0(self, f: AlgebraElement) -> Fraction:
        """phi(d_0 (x) f)."""
        self.algebra.require_compatible(f.algebra)
        return sum((c * self.value_d0(k) for k, c in f.coeffs.items()), Fraction(0))

    def eval_c(self, f: AlgebraElement) -> Fraction:
        """phi(c (x) f)."""
        self.algebra.require_compatible(f.algebra)
        return sum((c * self.value_c(k) for k, c in f.coeffs.items()), Fraction(0))

    @property
    def highest_weight(self) -> Fraction:
        return self.eval_d0(self.algebra.one())

    @property
    def declared_max(self) -> int | None:
        """Largest exponent with a declared value (polynomial kind)."""
        if self.algebra.kind == "polynomial":
            return self._declared - 1
        return None

    def is_zero(self) -> bool:
        if self.algebra.kind == "laurent":
            return not self._d0 and not self._c
        return (all(x == 0 for x in self._d0[: self._declared])
                and all(x == 0 for x in self._c[: self._declared]))

    # -- linear structure ---------------------------------------------------

    def negate(self) -> "Functional":
        """The functional x -> phi(involution(x)) for d_n -> -d_{-n}, c -> -c."""
        if self.algebra.kind == "laurent":
            return Functional(self.algebra,
                              {k: -v for k, v in self._d0.items()},
                              {k: -v for k, v in self._c.items()})
        d0 = [-x for x in self._d0[: self._declared]]
        c = [-x for x in self._c[: self._declared]]
        if self.algebra.is_finite:
            return Functional(self.algebra, dict(enumerate(d0)), dict(enumerate(c)))
        return Functional(self.algebra, d0, c, exact_poly=self.exact_poly)

    def __add__(self, other):
        if not isinstance(other, Functional):
            return NotImplemented
        self.algebra.require_compatible(other.algebra)
        if self.algebra.is_finite:
            d0 = {i: a + b for i, (a, b) in enumerate(zip(self._d0, other._d0))}
            c = {i: a + b for i, (a, b) in enumerate(zip(self._c, other._c))}
            return Functional(self.algebra, d0, c)
        if self.algebra.kind == "polynomial":
            n = min(self._declared, other._declared)
            d0 = [a + b for a, b in zip(self._d0[:n], other._d0[:n])]
            c = [a + b for a, b in zip(self._c[:n], other._c[:n])]
            return Functional(self.algebra, d0, c)
        raise UnsupportedKind("functional addition unsupported for laurent kind")

    def __eq__(self, other):
        if not isinstance(other, Functional):
            return NotImplemented
        if not self.algebra.compatible(other.algebra):
            return False
        if self.algebra.kind == "laurent":
            return self._d0 == other._d0 and self._c == other._c
        return (self._d0[: self._declared] == other._d0[: other._declared]
                and self._c[: self._declared] == other._c[: other._declared]
                and self.exact_poly == other.exact_poly)

    def __repr__(self):
        return f"Functional(h={format_scalar(self.highest_weight)}, algebra={self.algebra!r})"


def _coerce_poly(obj) -> polyutil.Poly:
    if isinstance(obj, PrincipalIdeal):
        return obj.generator_poly()
    if isinstance(obj, AlgebraElement):
        return obj.as_poly()
    if isinstance(obj, (tuple, list)):
        return polyutil.trim([as_scalar(x) for x in obj])
    raise TypeError("expected a polynomial, element, or principal ideal")


class VermaVector:
    """A homogeneous vector of the Verma module, stored as env * v."""

    __slots__ = ("functional", "env")

    def __init__(self, functional: Functional, env: EnvElement):
        functional.algebra.require_compatible(env.algebra)
        if not env.is_homogeneous():
            raise ValueError("mixed-weight vector; split into homogeneous pieces")
        self.functional = functional
        self.env = env

    @property
    def depth(self) -> int | None:
        ws = self.env.weights()
        return -next(iter(ws)) if ws else None

    @property
    def weight(self) -> Fraction | None:
        d = self.depth
        return None if d is None else self.functional.highest_weight - d

    def is_zero(self) -> bool:
        return self.env.is_zero()

    def __add__(self, other):
        if not isinstance(other, VermaVector):
            return NotImplemented
        if other.functional is not self.functional and other.functional != self.functional:
            raise AlgebraMismatch("vectors belong to different Verma modules")
        return VermaVector(self.functional, self.env + other.env)

    def scale(self, s) -> "VermaVector":
        return VermaVector(self.functional, self.env.scale(s))

    def __eq__(self, other):
        if not isinstance(other, VermaVector):
            return NotImplemented
        return self.functional == other.functional and self.env == other.env

    def __repr__(self):
        return f"<({format_env(self.env)}) v>"


def highest_weight_vector(phi: Functional) -> VermaVector:
    return VermaVector(phi, EnvElement(phi.algebra, {(): Fraction(1)}))


def vector_from_terms(phi: Functional, terms) -> VermaVector:
    return VermaVector(phi, EnvElement(phi.algebra, terms))


# -- the action -------------------------------------------------------------


def _act_basis(phi: Functional, j: int, b: int, mono: Monomial) -> dict:
    """Push d_j (x) e_b through mono * v; the result lives in U(V_-) v.

    Lowering modes straighten into the PBW basis; a mode-0 piece arriving at v
    contributes phi(d_0 (x) e_b); positive modes kill v.  Commuting past a
    factor d_{-m} (x) e_h uses

        [d_j (x) e_b, d_{-m} (x) e_h] = (-m - j) d_{j-m} (x) e_b e_h
                                        + delta_{j,m} (j^3-j)/12 c (x) e_b e_h,

    and central pieces evaluate immediately through phi.  Results are cached
    per functional: distinct raising words share long suffixes.
    """
    alg = phi.algebra
    if j < 0:
        return _left_mult(alg, (-j, b), mono)
    key = (j, b, mono)
    hit = phi._act_cache.get(key)
    if hit is not None:
        return hit
    if not mono:
        if j == 0:
            val = phi.value_d0(b)
            out = {(): val} if val != 0 else {}
        else:
            out = {}
        phi._act_cache[key] = out
        return out
    head, rest = mono[0], mono[1:]
    mh, bh = head
    out: dict = {}
    for m2, c2 in _act_basis(phi, j, b, rest).items():
        for m3, c3 in _left_mult(alg, head, m2).items():
            _acc(out, m3, c2 * c3)
    prod = alg.basis_product(b, bh)
    k = -mh - j
    cs = central_scalar(j) if j == mh else Fraction(0)
    for bk, ck in prod.coeffs.items():
        if k != 0:
            for m2, c2 in _act_basis(phi, j - mh, bk, rest).items():
                _acc(out, m2, k * ck * c2)
        if cs != 0:
            val = cs * ck * phi.value_c(bk)
            if val != 0:
                _acc(out, rest, val)
    phi._act_cache[key] = out
    return out


def _act_d(phi: Functional, j: int, g: AlgebraElement, mono: Monomial) -> dict:
    """Push d_j (x) g through mono * v, expanding g over the basis."""
    out: dict = {}
    for b, cb in g.coeffs.items():
        for m2, c2 in _act_basis(phi, j, b, mono).items():
            _acc(out, m2, cb * c2)
    return out


def verma_act(x: LieElement, v: VermaVector) -> list[VermaVector]:
    """Action of a Lie element, returned as homogeneous pieces by depth."""
    phi = v.functional
    phi.algebra.require_compatible(x.algebra)
    total: dict = {}
    c_val = phi.eval_c(x.c_part) if not x.c_part.is_zero() else Fraction(0)
    for mono, cm in v.env.terms.items():
        for j, g in x.d_part.items():
            for m2, c2 in _act_d(phi, j, g, mono).items():
                _acc(total, m2, cm * c2)
        if c_val != 0:
            _acc(total, mono, cm * c_val)
    buckets: dict[int, dict] = {}
    for mono, coeff in total.items():
        buckets.setdefault(monomial_weight(mono), {})[mono] = coeff
    return [VermaVector(phi, EnvElement(phi.algebra, terms))
            for _, terms in sorted(buckets.items(), reverse=True)]


def apply_raising(phi: Functional, raising: Monomial, terms: dict) -> dict:
    """Apply an ordered raising monomial (depths act as modes +m)."""
    cur = dict(terms)
    for m, b in reversed(raising):
        e_b = phi.algebra.basis_element(b)
        nxt: dict = {}
        for mono, cm in cur.items():
            for m2, c2 in _act_d(phi, m, e_b, mono).items():
                _acc(nxt, m2, cm * c2)
        cur = nxt
        if not cur:
            break
    return cur


# -- singular vectors and graded dimensions ---------------------------------


def _color_indices(algebra: Algebra, window=None) -> list[int]:
    if algebra.is_finite:
        return list(algebra.basis_indices())
    lo, hi = window if window is not None else algebra.window
    return list(range(lo, hi + 1))


def singular_vectors(phi: Functional, depth: int, window=None) -> list[VermaVector]:
    """Basis of the singular subspace at the given depth.

    Exact kernel of the stacked maps w -> (d_1 (x) e_i) w and
    w -> (d_2 (x) e_i) w over all basis directions i; d_1 and d_2 together
    generate the whole raising half, so members are annihilated by every
    positive mode.
    """
    if depth < 1:
        raise ValueError("singular vectors live at positive depth")
    alg = phi.algebra
    basis = pbw_basis(depth, alg, window=window)
    colors = _color_indices(alg, window)
    rows: list[list[Fraction]] = []
    for mode in (1, 2):
        if depth - mode < 0:
            continue
        targets = pbw_basis(depth - mode, alg, window=window)
        tpos = {mono: i for i, mono in enumerate(targets)}
        for b in colors:
            e_b = alg.basis_element(b)
            block = [[Fraction(0)] * len(basis) for _ in targets]
            for col, mono in enumerate(basis):
                for m2, c2 in _act_d(phi, mode, e_b, mono).items():
                    block[tpos[m2]][col] += c2
            rows.extend(block)
    out = []
    for vec in linalg.kernel(rows, len(basis)):
        terms = {mono: c for mono, c in zip(basis, vec) if c != 0}
        out.append(VermaVector(phi, EnvElement(alg, terms)))
    return out


def module_dims(algebra: Algebra, max_depth: int, window=None) -> tuple[int, ...]:
    """Graded dimensions of the Verma module itself (colored partitions)."""
    return tuple(len(pbw_basis(n, algebra, window=window))
                 for n in range(max_depth + 1))


def pairing_matrix(phi: Functional, depth: int, window=None) -> list[list[Fraction]]:
    """Matrix of v-coefficients <X, Y> = coeff_v(X * Y v) over raising/lowering
    monomials of the given weight."""
    basis = pbw_basis(depth, phi.algebra, window=window)
    mat = []
    for x_mono in basis:
        row = []
        for y_mono in basis:
            res = apply_raising(phi, x_mono, {y_mono: Fraction(1)})
            row.append(res.get((), Fraction(0)))
        mat.append(row)
    return mat


def quotient_dims(phi: Functional, max_depth: int, window=None) -> tuple[int, ...]:
    """Graded dimensions of the irreducible quotient, by exact pairing rank.

    The maximal proper submodule at each depth is the radical of the pairing
    between raising monomials and the PBW basis, so the quotient dimension is
    the rank.  Over the infinite kinds the raising monomials are restricted to
    the window, which can only shrink the rank.
    """
    return tuple(linalg.rank(pairing_matrix(phi, n, window=window))
                 for n in range(max_depth + 1))


def in_maximal_submodule(v: VermaVector, window=None) -> bool:
    """Is the vector in the maximal proper submodule (zero image in V(phi))?

    Tests the v-coefficient of X * v for every raising monomial X of matching
    weight (window-restricted for infinite algebras).
    """
    if v.is_zero():
        return True
    phi = v.functional
    for x_mono in pbw_basis(v.depth, phi.algebra, window=window):
        res = apply_raising(phi, x_mono, dict(v.env.terms))
        if res.get((), Fraction(0)) != 0:
            return False
    return True


# -- decision procedures ----------------------------------------------------


@dataclass
class QuasifiniteVerdict:
    """Outcome of the quasifiniteness check."""

    status: str  # "quasifinite_certified" | "no_witness_up_to_bound"
    witness: Ideal | PrincipalIdeal | None
    candidate: PrincipalIdeal | None = None
    note: str = ""

    @property
    def certified(self) -> bool:
        return self.status == "quasifinite_certified"


@dataclass
class ReducibilityVerdict:
    """Outcome of the Verma reducibility check."""

    status: str  # "reducible_certified" | "irreducible_certified" | "no_witness_up_to_bound"
    witness_ideal: Ideal | PrincipalIdeal | None = None
    singular_vector: VermaVector | None = None
    candidate: PrincipalIdeal | None = None
    note: str = ""


def check_quasifinite(phi: Functional, bound: int | None = None,
                      assume_exact: bool = False) -> QuasifiniteVerdict:
    """Find an ideal of finite codimension killed by phi on all of V_0.

    Finite-dimensional algebras are always quasifinite (zero ideal witness).
    Polynomial algebras run joint minimal-recurrence detection on the d_0 and
    c value sequences; a detected recurrence is certified only when the
    functional carries an exact recurrence (re-verified against it) or the
    caller asserts exactness.  Sampled data never certifies silently.
    """
    alg = phi.algebra
    if alg.is_finite:
        return QuasifiniteVerdict("quasifinite_certified", Ideal(alg, []),
                                  note="finite-dimensional coefficient algebra")
    if alg.kind != "polynomial":
        return QuasifiniteVerdict("no_witness_up_to_bound", None,
                                  note=f"no recurrence detection for {alg.kind} kind")
    d = _detection_window(phi, bound)
    lam = [phi.value_d0(k) for k in range(d + 1)]
    kap = [phi.value_c(k) for k in range(d + 1)]
    p = recurrence.minimal_annihilator([lam, kap])
    if p is None:
        if phi.exact_poly is not None:
            witness = PrincipalIdeal(alg, alg.from_poly(phi.exact_poly))
            return QuasifiniteVerdict(
                "quasifinite_certified", witness,
                note="declared recurrence exceeds the detection cap; using it directly")
        return QuasifiniteVerdict("no_witness_up_to_bound", None,
                                  note=f"no common recurrence of order <= {d // 2}")
    candidate = PrincipalIdeal(alg, alg.from_poly(p))
    if phi.exact_poly is not None:
        if _verified_against_exact(phi, p):
            return QuasifiniteVerdict("quasifinite_certified", candidate)
        witness = PrincipalIdeal(alg, alg.from_poly(phi.exact_poly))
        return QuasifiniteVerdict(
            "quasifinite_certified", witness, candidate=candidate,
            note="windowed recurrence not exact; fell back to the declared one")
    if assume_exact:
        return QuasifiniteVerdict("quasifinite_certified", candidate,
                                  note="caller asserted the window is exact")
    return QuasifiniteVerdict("no_witness_up_to_bound", None, candidate=candidate,
                              note="recurrence found but values are sampled")


def _detection_window(phi: Functional, bound: int | None) -> int:
    """Largest exponent fed to recurrence detection.

    Sampled functionals are capped at their declared window; exact ones
    extend on demand, so a larger caller bound is honored.
    """
    d = phi.declared_max
    if bound is not None:
        d = bound if phi.exact_poly is not None else min(d, bound)
    return d


def _verified_against_exact(phi: Functional, p: polyutil.Poly) -> bool:
    """Check that p annihilates the exact sequences, not just the window.

    Both sequences satisfy the declared recurrence r, so the residual
    sequence k -> sum_i p_i s_{k+i} is r-recurrent; if it vanishes at deg(r)
    consecutive positions it vanishes identically.
    """
    r = polyutil.degree(phi.exact_poly)
    need = r + polyutil.degree(p) + 1
    lam = [phi.value_d0(k) for k in range(need)]
    kap = [phi.value_c(k) for k in range(need)]
    return recurrence.satisfies(lam, p) and recurrence.satisfies(kap, p)


def largest_d0_ideal(phi: Functional) -> Ideal:
    """The largest ideal J with phi(d_0 (x) J) = 0 (finite algebras).

    Computed as the kernel of f -> (phi(d_0 (x) f e_j))_j, which is already
    an ideal: f in the kernel forces every multiple into it.
    """
    alg = phi.algebra
    if not alg.is_finite:
        raise UnsupportedKind("largest_d0_ideal needs a finite-dimensional algebra")
    dim = alg.dim
    rows = [[phi.eval_d0(alg.basis_product(i, j)) for i in range(dim)]
            for j in range(dim)]
    ker = linalg.kernel(rows, dim)
    ideal = Ideal(alg, ker)
    for b in ideal.basis_elements():
        for j in range(dim):
            if not ideal.contains(b * alg.basis_element(j)):
                raise AssertionError("kernel failed ideal stability")  # unreachable
    return ideal


def largest_v0_ideal(phi: Functional) -> Ideal:
    """The largest ideal J with phi(Vir_0 (x) J) = 0 (finite algebras)."""
    alg = phi.algebra
    if not alg.is_finite:
        raise UnsupportedKind("largest_v0_ideal needs a finite-dimensional algebra")
    dim = alg.dim
    rows = []
    for j in range(dim):
        rows.append([phi.eval_d0(alg.basis_product(i, j)) for i in range(dim)])
        rows.append([phi.eval_c(alg.basis_product(i, j)) for i in range(dim)])
    ker = linalg.kernel(rows, dim)
    return Ideal(alg, ker)


def depth_one_vector(phi: Functional, f: AlgebraElement) -> VermaVector:
    """The vector (d_{-1} (x) f) v."""
    terms = {((1, b),): c for b, c in f.coeffs.items()}
    return VermaVector(phi, EnvElement(phi.algebra, terms))


def _is_singular(v: VermaVector, window=None) -> bool:
    phi = v.functional
    colors = _color_indices(phi.algebra, window)
    for mode in (1, 2):
        for b in colors:
            e_b = phi.algebra.basis_element(b)
            res: dict = {}
            for mono, cm in v.env.terms.items():
                for m2, c2 in _act_d(phi, mode, e_b, mono).items():
                    _acc(res, m2, cm * c2)
            if res:
                return False
    return True


def check_verma_reducible(phi: Functional, bound: int | None = None,
                          assume_exact: bool = False) -> ReducibilityVerdict:
    """Decide Verma reducibility through ideals killed by phi on d_0 (x) A.

    A nonzero ideal J with phi(d_0 (x) J) = 0 certifies reducibility with
    explicit singular vector (d_{-1} (x) f) v, f in J.  For polynomial
    algebras with exact (or caller-asserted) data the converse holds as well:
    no ideal means irreducible.  For finite-dimensional algebras a zero ideal
    decides nothing (the classical Virasoro Verma modules can be reducible
    with J = 0), so the verdict stays open.

    The c values play no role here, unlike in the quasifiniteness check.
    """
    alg = phi.algebra

    def certify(witness, gen_elt: AlgebraElement, note="") -> ReducibilityVerdict:
        vec = depth_one_vector(phi, gen_elt)
        verify_window = None
        if alg.kind == "polynomial":
            # restrict raising colors so products and phi evaluations stay
            # inside the window / the declared value range
            deg_gen = max(gen_elt.support())
            hi = alg.window[1] - deg_gen
            if phi.exact_poly is None:
                hi = min(hi, phi.declared_max - deg_gen)
            verify_window = (0, max(0, hi))
        if not _is_singular(vec, window=verify_window):
            raise AssertionError("witness failed singular-vector verification")
        return ReducibilityVerdict("reducible_certified", witness, vec, note=note)

    if alg.is_finite:
        j0 = largest_d0_ideal(phi)
        if not j0.is_zero():
            return certify(j0, j0.basis_elements()[0])
        return ReducibilityVerdict(
            "no_witness_up_to_bound",
            note="no ideal witness; reducibility may still hold over a "
                 "finite-dimensional algebra")
    if alg.kind != "polynomial":
        return ReducibilityVerdict("no_witness_up_to_bound",
                                   note=f"no detection for {alg.kind} kind")
    d = _detection_window(phi, bound)
    lam = [phi.value_d0(k) for k in range(d + 1)]
    q = recurrence.minimal_annihilator([lam])
    if q is not None:
        candidate = PrincipalIdeal(alg, alg.from_poly(q))
        if phi.exact_poly is not None:
            need = polyutil.degree(phi.exact_poly) + polyutil.degree(q) + 1
            lam_ext = [phi.value_d0(k) for k in range(need)]
            if recurrence.satisfies(lam_ext, q):
                return certify(candidate, candidate.generator)
            witness = PrincipalIdeal(alg, alg.from_poly(phi.exact_poly))
            return certify(witness, witness.generator,
                           note="windowed recurrence not exact; used the declared one")
        if assume_exact:
            return certify(candidate, candidate.generator,
                           note="caller asserted the window is exact")
        return ReducibilityVerdict("no_witness_up_to_bound", candidate=candidate,
                                   note="recurrence found but values are sampled")
    if phi.exact_poly is not None:
        witness = PrincipalIdeal(alg, alg.from_poly(phi.exact_poly))
        return certify(witness, witness.generator,
                       note="declared recurrence exceeds the detection cap")
    if assume_exact:
        return ReducibilityVerdict(
            "irreducible_certified",
            note="no annihilating ideal and caller asserted exact values "
                 "(infinite-dimensional integral domain)")
    return ReducibilityVerdict("no_witness_up_to_bound",
                               note=f"no recurrence of order <= {d // 2}")


def split_phi(phi: Functional) -> list[Functional]:
    """Split along the CRT idempotents of a product_local algebra.

    phi_i(x) = phi(e_i x); the pieces sum to phi exactly and each one kills
    Vir_0 tensored with the other factors' ideals.
    """
    alg = phi.algebra
    if alg.kind != "product_local":
        raise UnsupportedKind("split_phi needs a product_local algebra")
    out = []
    for factor in local_decomposition(alg):
        d0 = {}
        c = {}
        for j in range(alg.dim):
            prod = factor.idempotent * alg.basis_element(j)
            d0[j] = phi.eval_d0(prod)
            c[j] = phi.eval_c(prod)
        out.append(Functional(alg, d0, c))
    return out


# -- serialization ----------------------------------------------------------


def functional_to_spec(phi: Functional) -> dict:
    alg = phi.algebra
    if alg.is_finite:
        return {"d0": {alg.label(i): format_scalar(v)
                       for i, v in enumerate(phi._d0) if v != 0},
                "c": {alg.label(i): format_scalar(v)
                      for i, v in enumerate(phi._c) if v != 0}}
    if alg.kind == "polynomial":
        n = phi._declared
        spec = {"d0_seq": [format_scalar(v) for v in phi._d0[:n]],
                "c_seq": [format_scalar(v) for v in phi._c[:n]]}
        if phi.exact_poly is not None:
            spec["exact_ideal"] = polyutil.pstr(phi.exact_poly)
        return spec
    return {"d0": {alg.label(k): format_scalar(v) for k, v in sorted(phi._d0.items())},
            "c": {alg.label(k): format_scalar(v) for k, v in sorted(phi._c.items())}}


def functional_from_spec(algebra: Algebra, spec: dict) -> Functional:
    if "d0_seq" in spec or "c_seq" in spec:
        exact = spec.get("exact_ideal")
        if isinstance(exact, str):
            from .exprs import parse_poly_text
            exact = parse_poly_text(exact)
        return Functional.from_sequences(algebra,
                                         [as_scalar(x) for x in spec.get("d0_seq", [])],
                                         [as_scalar(x) for x in spec.get("c_seq", [])],
                                         exact_ideal=exact)
    return Functional.from_values(algebra, spec.get("d0", {}), spec.get("c", {}))
