"""Evaluation-type modules and windowed weight-multiplicity queries.

Covers the intermediate-series action on Laurent monomials, single point
(generalized) evaluation modules obtained by pushing coefficients through
A -> A/m^n, tensor products of module handles, and the annihilator/support
bookkeeping.  Tensor handles never materialize product bases; every tensor
query is a convolution of factor weight tables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import polyutil
from .algebra import (
    Algebra,
    AlgebraElement,
    Ideal,
    PrincipalIdeal,
    QuotientMap,
    format_element,
    ideal_closure,
    ideal_intersection,
    ideal_power,
    point_ideal,
)
from .errors import MissingWindow, UnsupportedKind, WindowOverflow
from .liealg import LieElement
from .pbw import pbw_basis
from .scalars import as_scalar, format_scalar
from .verma import (
    Functional,
    functional_from_spec,
    functional_to_spec,
    largest_v0_ideal,
    check_quasifinite,
    quotient_dims,
    verma_act,
)


@dataclass(frozen=True)
class IntSeriesSpec:
    """Twisted action of Vir on Laurent monomials t^k, k in the window.

    d_n sends t^k to (k + a(n+1) + b) t^{n+k}; c acts by zero (the action
    comes from vector fields, which leave no room for a central character).
    The coefficient is validated against the bracket at construction time.
    """

    a: Fraction
    b: Fraction
    window: tuple[int, int]

    def __post_init__(self):
        object.__setattr__(self, "a", as_scalar(self.a))
        object.__setattr__(self, "b", as_scalar(self.b))
        lo, hi = self.window
        object.__setattr__(self, "window", (int(lo), int(hi)))
        if self.window[0] > self.window[1]:
            raise ValueError("empty intermediate-series window")
        self._self_check()

    def coefficient(self, n: int, k: int) -> Fraction:
        return k + self.a * (n + 1) + self.b

    def weight_of(self, k: int) -> Fraction:
        return k + self.a + self.b

    def _self_check(self):
        # commutator consistency of the chosen coefficient reading:
        # d_m (d_n t^k) - d_n (d_m t^k) must equal (n - m) d_{m+n} t^k.
        for m in range(-2, 3):
            for n in range(-2, 3):
                for k in (-1, 0, 2):
                    lhs = (self.coefficient(n, k) * self.coefficient(m, n + k)
                           - self.coefficient(m, k) * self.coefficient(n, m + k))
                    rhs = (n - m) * self.coefficient(m + n, k)
                    if lhs != rhs:
                        raise AssertionError("intermediate-series action "
                                             "violates the bracket")


def int_series_act(spec: IntSeriesSpec, n: int, k: int) -> tuple[Fraction, int]:
    """Coefficient and target exponent of d_n acting on t^k."""
    lo, hi = spec.window
    if not lo <= k <= hi:
        raise WindowOverflow(f"source exponent {k} outside window [{lo}, {hi}]")
    if not lo <= n + k <= hi:
        raise WindowOverflow(f"target exponent {n + k} outside window [{lo}, {hi}]")
    return spec.coefficient(n, k), n + k


# -- module handles ---------------------------------------------------------


class ModuleHandle:
    variant = "?"

    def __init__(self, algebra: Algebra):
        self.algebra = algebra


class VermaHandle(ModuleHandle):
    variant = "verma"

    def __init__(self, functional: Functional):
        super().__init__(functional.algebra)
        self.functional = functional


class IrreducibleQuotientHandle(ModuleHandle):
    variant = "irreducible_quotient"

    def __init__(self, functional: Functional):
        super().__init__(functional.algebra)
        self.functional = functional


class IntSeriesEvalHandle(ModuleHandle):
    """Evaluation at the maximal ideal of ``point`` of an intermediate-series
    module.  For a one-dimensional algebra the evaluation is the identity and
    no point is needed."""

    variant = "int_series_eval"

    def __init__(self, algebra: Algebra, spec: IntSeriesSpec, point=None):
        super().__init__(algebra)
        self.spec = spec
        if algebra.kind in ("product_local", "polynomial", "laurent"):
            if point is None:
                raise ValueError("evaluation over this algebra needs a point")
            self.point = as_scalar(point)
        elif algebra.dim == 1:
            self.point = None
        else:
            raise UnsupportedKind(
                "int-series evaluation needs a monomial-based or one-dimensional algebra")


class GeneralizedEvalHandle(ModuleHandle):
    """Pullback of an inner module along A -> A/(t - point)^order."""

    variant = "generalized_eval"

    def __init__(self, algebra: Algebra, point, order: int, inner: ModuleHandle):
        super().__init__(algebra)
        self.point = as_scalar(point)
        self.order = int(order)
        quotient, projection = local_quotient(algebra, self.point, self.order)
        if not inner.algebra.compatible(quotient):
            raise UnsupportedKind(
                "inner module must live over the order-n local quotient "
                "(build it with local_quotient)")
        self.inner = inner
        self.projection = projection


class TensorHandle(ModuleHandle):
    variant = "tensor"

    def __init__(self, factors):
        factors = tuple(factors)
        if not factors:
            raise ValueError("tensor handle needs at least one factor")
        alg = factors[0].algebra
        for f in factors[1:]:
            alg.require_compatible(f.algebra)
        super().__init__(alg)
        self.factors = factors


def local_quotient(algebra: Algebra, point, order: int) -> tuple[Algebra, QuotientMap]:
    """The local quotient A/(t - point)^order with its projection map.

    The quotient is presented as the product_local algebra with a single
    factor, so its labels are 1, t, ..., t^{order-1}.
    """
    point = as_scalar(point)
    order = int(order)
    if order < 1:
        raise ValueError("order must be positive")
    key = ("local_quotient", point, order)
    cached = algebra._caches.get(key)
    if cached is not None:
        return cached
    target = Algebra.product_local([(point, order)])
    modulus = polyutil.ppow((-point, Fraction(1)), order)

    if algebra.kind == "product_local":
        match = next((o for p, o in algebra.factors if p == point), None)
        if match is None or match < order:
            raise ValueError(
                "the presentation has no factor dominating this point/order")

        def project(x: AlgebraElement) -> AlgebraElement:
            return target.from_poly(polyutil.pmod(x.as_poly(), modulus))
    elif algebra.kind == "polynomial":
        def project(x: AlgebraElement) -> AlgebraElement:
            return target.from_poly(polyutil.pmod(x.as_poly(), modulus))
    elif algebra.kind == "laurent":
        if point == 0:
            raise ValueError("t is not invertible at the point 0")
        g, u, _ = polyutil.pxgcd((Fraction(0), Fraction(1)), modulus)
        tinv = polyutil.pmod(u, modulus)

        def project(x: AlgebraElement) -> AlgebraElement:
            acc: polyutil.Poly = ()
            for k, c in x.coeffs.items():
                if k >= 0:
                    mono = [Fraction(0)] * (k + 1)
                    mono[k] = c
                    term = polyutil.pmod(polyutil.trim(mono), modulus)
                else:
                    term = polyutil.pscale(
                        polyutil.pmod(polyutil.ppow(tinv, -k), modulus), c)
                acc = polyutil.pmod(polyutil.padd(acc, term), modulus)
            return target.from_poly(acc)
    else:
        raise UnsupportedKind("local quotients need a monomial-based algebra")

    def lift(y: AlgebraElement) -> AlgebraElement:
        return algebra.from_poly(y.as_poly())

    qmap = QuotientMap(algebra, target, project, lift)
    algebra._caches[key] = (target, qmap)
    return target, qmap


def project_lie(projection: QuotientMap, x: LieElement) -> LieElement:
    """Push a Lie element through a coefficient-algebra projection."""
    d = {n: projection(f) for n, f in x.d_part.items()}
    return LieElement(projection.quotient, d, projection(x.c_part))


# -- the actions ------------------------------------------------------------


def _eval_at_point(f: AlgebraElement, point: Fraction | None) -> Fraction:
    """The scalar image of f under A -> A/m ~ Q at the point."""
    if point is None:
        one = f.algebra.one()
        for i, c in one.coeffs.items():
            return f.coeff(i) / c
        raise AssertionError("unit has empty support")
    total = Fraction(0)
    for k, c in f.coeffs.items():
        if k < 0 and point == 0:
            raise ValueError("t is not invertible at the point 0")
        total += c * point ** k
    return total


def eval_act(handle: ModuleHandle, x: LieElement, v):
    """Act on a module vector after reducing coefficients through the point.

    For ``int_series_eval`` vectors are {exponent: coefficient} maps; for
    ``generalized_eval`` the vector type is the inner module's (a VermaVector
    for an inner Verma, whose action returns homogeneous pieces).
    """
    if handle.variant == "int_series_eval":
        handle.algebra.require_compatible(x.algebra)
        spec = handle.spec
        out: dict[int, Fraction] = {}
        for n, f in x.d_part.items():
            scalar = _eval_at_point(f, handle.point)
            if scalar == 0:
                continue
            for k, cv in v.items():
                if cv == 0:
                    continue
                coeff, target = int_series_act(spec, n, k)
                val = scalar * coeff * cv
                if val != 0:
                    out[target] = out.get(target, Fraction(0)) + val
        # c (x) A acts by zero
        return {k: c for k, c in out.items() if c != 0}
    if handle.variant == "generalized_eval":
        handle.algebra.require_compatible(x.algebra)
        projected = project_lie(handle.projection, x)
        return eval_act(handle.inner, projected, v)
    if handle.variant in ("verma", "irreducible_quotient"):
        return verma_act(x, v)
    raise UnsupportedKind(f"eval_act is not defined on {handle.variant} handles")


# -- weight tables ----------------------------------------------------------


@dataclass
class WeightTable:
    """Multiplicities of the weights base + offset over an offset window."""

    base: Fraction
    offsets: tuple[int, int]
    mult: dict[int, int]
    truncated: bool = False
    notes: tuple[str, ...] = ()

    def multiplicity(self, offset: int) -> int:
        return self.mult.get(offset, 0)

    def max_multiplicity(self) -> int:
        return max(self.mult.values(), default=0)

    def to_json_dict(self) -> dict:
        return {"base_weight": format_scalar(self.base),
                "offsets": list(self.offsets),
                "multiplicities": {str(o): self.mult.get(o, 0)
                                   for o in range(self.offsets[0], self.offsets[1] + 1)},
                "window_truncated": self.truncated,
                "notes": list(self.notes)}

    def to_tsv(self) -> str:
        lines = ["offset\tweight\tmultiplicity"]
        for o in range(self.offsets[0], self.offsets[1] + 1):
            lines.append(f"{o}\t{format_scalar(self.base + o)}\t{self.mult.get(o, 0)}")
        return "\n".join(lines)


def _support_bounds(handle: ModuleHandle):
    """(lower, upper) offset bounds of possibly nonzero weights; None = unbounded."""
    if handle.variant in ("verma", "irreducible_quotient"):
        return (None, 0)
    if handle.variant == "int_series_eval":
        return handle.spec.window
    if handle.variant == "generalized_eval":
        return _support_bounds(handle.inner)
    if handle.variant == "tensor":
        los, his = zip(*(_support_bounds(f) for f in handle.factors))
        lo = None if any(l is None for l in los) else sum(los)
        hi = None if any(h is None for h in his) else sum(his)
        return (lo, hi)
    raise UnsupportedKind(handle.variant)


def _window_limited(handle: ModuleHandle) -> bool:
    if handle.variant == "int_series_eval":
        return True
    if handle.variant in ("verma", "irreducible_quotient"):
        return not handle.algebra.is_finite
    if handle.variant == "generalized_eval":
        return _window_limited(handle.inner)
    if handle.variant == "tensor":
        return any(_window_limited(f) for f in handle.factors)
    return False


def base_weight(handle: ModuleHandle) -> Fraction:
    if handle.variant in ("verma", "irreducible_quotient"):
        return handle.functional.highest_weight
    if handle.variant == "int_series_eval":
        return handle.spec.a + handle.spec.b
    if handle.variant == "generalized_eval":
        return base_weight(handle.inner)
    if handle.variant == "tensor":
        return sum((base_weight(f) for f in handle.factors), Fraction(0))
    raise UnsupportedKind(handle.variant)


def weight_multiplicities(handle: ModuleHandle, offsets, window=None) -> WeightTable:
    """Exact multiplicity table over the requested offsets.

    Tensor tables are convolutions of factor tables; whenever a factor is
    window-limited (intermediate series, or Verma over an infinite algebra),
    the counts are lower bounds and the table is flagged window-truncated.
    """
    if offsets is None:
        raise MissingWindow("weight_multiplicities needs an offsets interval")
    lo, hi = int(offsets[0]), int(offsets[1])
    if lo > hi:
        raise ValueError("empty offsets interval")
    variant = handle.variant
    notes: list[str] = []
    truncated = False

    if variant in ("verma", "irreducible_quotient"):
        phi = handle.functional
        max_depth = max(0, -lo)
        if variant == "verma":
            dims = [len(pbw_basis(n, handle.algebra, window=window))
                    for n in range(max_depth + 1)]
        else:
            dims = list(quotient_dims(phi, max_depth, window=window))
        mult = {}
        for o in range(lo, hi + 1):
            mult[o] = dims[-o] if o <= 0 else 0
        if not handle.algebra.is_finite:
            truncated = True
            notes.append("weight spaces counted inside the algebra window only")
        return WeightTable(phi.highest_weight, (lo, hi),
                           {o: m for o, m in mult.items() if m}, truncated,
                           tuple(notes))

    if variant == "int_series_eval":
        spec = handle.spec
        klo, khi = spec.window
        mult = {o: 1 for o in range(max(lo, klo), min(hi, khi) + 1)}
        if lo < klo or hi > khi:
            truncated = True
            notes.append("offsets outside the module window reported as 0")
        s = spec.a + spec.b
        if s.denominator == 1:
            o0 = -int(s)
            if klo <= o0 <= khi:
                if spec.a == 0:
                    notes.append(f"trivial submodule at offset {o0}")
                elif spec.a == 1:
                    notes.append(f"trivial quotient at offset {o0}")
        return WeightTable(spec.a + spec.b, (lo, hi), mult, truncated, tuple(notes))

    if variant == "generalized_eval":
        inner = weight_multiplicities(handle.inner, (lo, hi), window=window)
        note = (f"pulled back through the order-{handle.order} quotient at "
                f"point {format_scalar(handle.point)}")
        return WeightTable(inner.base, (lo, hi), inner.mult, inner.truncated,
                           inner.notes + (note,))

    if variant == "tensor":
        # Every variant is bounded above (Verma by 0, intermediate series by
        # its window), so each factor only needs a finite offset range for an
        # exact convolution over [lo, hi].
        tables = []
        bounds = [_support_bounds(f) for f in handle.factors]
        if any(b[1] is None for b in bounds):
            raise UnsupportedKind("tensor factor with weights unbounded above")
        for i, f in enumerate(handle.factors):
            others_hi = sum(b[1] for j, b in enumerate(bounds) if j != i)
            others_lo = [b[0] for j, b in enumerate(bounds) if j != i]
            f_lo, f_hi = bounds[i]
            range_lo = lo - others_hi
            if f_lo is not None:
                range_lo = max(range_lo, f_lo)
            if any(b is None for b in others_lo):
                range_hi = f_hi
            else:
                range_hi = hi - sum(others_lo)
                if f_hi is not None:
                    range_hi = min(range_hi, f_hi)
            if range_lo > range_hi:
                tables.append(WeightTable(base_weight(f), (0, 0), {}))
                continue
            tables.append(weight_multiplicities(f, (range_lo, range_hi),
                                                window=window))
        mult: dict[int, int] = {}
        for combo in itertools.product(*[t.mult.items() for t in tables]):
            off = sum(o for o, _ in combo)
            if lo <= off <= hi:
                m = 1
                for _, mm in combo:
                    m *= mm
                mult[off] = mult.get(off, 0) + m
        truncated = _window_limited(handle)
        if truncated:
            notes.append("tensor counts are window-limited lower bounds")
        return WeightTable(base_weight(handle), (lo, hi), mult, truncated,
                           tuple(notes))

    raise UnsupportedKind(variant)


# -- annihilators and support -----------------------------------------------


@dataclass
class AnnihilatorReport:
    """The largest computable annihilating ideal and the support points."""

    ideal: Ideal | PrincipalIdeal | None
    generators: list[AlgebraElement] = field(default_factory=list)
    support: list[Fraction] | None = None
    closure_verified: bool = False
    notes: tuple[str, ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "annihilator_generators": [format_element(g) for g in self.generators],
            "support": (None if self.support is None
                        else [format_scalar(p) for p in self.support]),
            "closure_verified": self.closure_verified,
            "notes": list(self.notes),
        }


def _presentation_points(algebra: Algebra) -> list[Fraction] | None:
    if algebra.kind == "product_local":
        return [p for p, _ in algebra.factors]
    return None


def _support_of_ideal(ann, algebra: Algebra) -> list[Fraction] | None:
    """Points of the presentation whose maximal ideal contains ann."""
    if isinstance(ann, PrincipalIdeal):
        if ann.is_zero():
            return None
        roots, rest = polyutil.rational_roots(ann.generator_poly())
        return [r for r, _ in roots]
    points = _presentation_points(algebra)
    if points is None:
        return None
    out = []
    for factor_point in points:
        maxi = point_ideal(algebra, factor_point)
        if all(maxi.contains(b) for b in ann.basis_elements()):
            out.append(factor_point)
    return out


def _verify_closure(ann, algebra: Algebra) -> bool:
    if isinstance(ann, PrincipalIdeal):
        return True  # principal ideals are ideals by construction
    for b in ann.basis_elements():
        for j in algebra.basis_indices():
            if not ann.contains(b * algebra.basis_element(j)):
                return False
    return True


def annihilator_support(handle: ModuleHandle, window=None) -> AnnihilatorReport:
    """Largest representable ideal annihilating the module, and its support.

    Verma modules are free over the lowering half, so their annihilator is
    zero and every presentation point supports them.  Irreducible quotients
    annihilate exactly the largest ideal on which the functional vanishes.
    Evaluation handles annihilate their defining ideal by construction.
    Tensor annihilators are reported as the intersection of the factors'.
    """
    alg = handle.algebra
    variant = handle.variant
    notes: list[str] = []

    if variant == "verma":
        if alg.is_finite:
            ann = Ideal(alg, [])
        else:
            ann = PrincipalIdeal(alg, alg.zero())
        support = _presentation_points(alg)
        if support is None:
            notes.append("no point presentation; support unavailable")
        notes.append("Verma modules are free over the lowering half; "
                     "their annihilator is zero")
        return AnnihilatorReport(ann, [], support, True, tuple(notes))

    if variant == "irreducible_quotient":
        phi = handle.functional
        if alg.is_finite:
            ann = largest_v0_ideal(phi)
            gens = ann.basis_elements()
            support = _support_of_ideal(ann, alg)
            if support is None:
                notes.append("no point presentation; support unavailable")
            if ann.is_whole():
                support = []
                notes.append("trivial module: annihilator is the whole algebra")
            return AnnihilatorReport(ann, gens, support,
                                     _verify_closure(ann, alg), tuple(notes))
        verdict = check_quasifinite(phi)
        if verdict.certified and verdict.witness is not None:
            ann = verdict.witness
            roots, rest = polyutil.rational_roots(ann.generator_poly())
            support = [r for r, _ in roots]
            if polyutil.degree(rest) > 0:
                notes.append("annihilator has irrational factors; support incomplete")
            return AnnihilatorReport(ann, [ann.generator], support, True, tuple(notes))
        notes.append("no certified annihilator within the window")
        return AnnihilatorReport(None, [], None, False, tuple(notes))

    if variant == "int_series_eval":
        if handle.point is None:
            ann = Ideal(alg, [])
            notes.append("one-dimensional algebra: evaluation is the identity")
            return AnnihilatorReport(ann, [], None, True, tuple(notes))
        ann = point_ideal(alg, handle.point)
        gens = (ann.basis_elements() if isinstance(ann, Ideal) else [ann.generator])
        return AnnihilatorReport(ann, gens, [handle.point],
                                 _verify_closure(ann, alg), tuple(notes))

    if variant == "generalized_eval":
        inner_report = annihilator_support(handle.inner, window=window)
        maxi = point_ideal(alg, handle.point)
        mpow = ideal_power(maxi, handle.order)
        gens = (mpow.basis_elements() if isinstance(mpow, Ideal)
                else [mpow.generator])
        if isinstance(inner_report.ideal, Ideal) and isinstance(mpow, Ideal):
            lifted = [handle.projection.lift(b)
                      for b in inner_report.ideal.basis_elements()]
            ann = ideal_closure(gens + lifted) if (gens + lifted) else mpow
        else:
            ann = mpow
        gens_out = (ann.basis_elements() if isinstance(ann, Ideal)
                    else [ann.generator])
        notes.append(f"contains the order-{handle.order} power of the point ideal")
        support = [handle.point]
        if isinstance(ann, Ideal) and ann.is_whole():
            support = []
            notes.append("trivial module: annihilator is the whole algebra")
        return AnnihilatorReport(ann, gens_out, support,
                                 _verify_closure(ann, alg), tuple(notes))

    if variant == "tensor":
        reports = [annihilator_support(f, window=window) for f in handle.factors]
        support: list[Fraction] | None = []
        for r in reports:
            if r.support is None:
                support = None
                break
            support.extend(p for p in r.support if p not in support)
        ideals = [r.ideal for r in reports]
        ann = None
        if all(isinstance(i, Ideal) for i in ideals):
            ann = ideals[0]
            for i in ideals[1:]:
                ann = ideal_intersection(ann, i)
        elif all(isinstance(i, PrincipalIdeal) for i in ideals):
            ann = ideals[0]
            for i in ideals[1:]:
                ann = ideal_intersection(ann, i)
        else:
            notes.append("mixed factor annihilators; no common ideal computed")
        gens = []
        if isinstance(ann, Ideal):
            gens = ann.basis_elements()
        elif isinstance(ann, PrincipalIdeal):
            gens = [ann.generator]
        notes.append("intersection of factor annihilators "
                     "(exact when supports are disjoint)")
        return AnnihilatorReport(ann, gens,
                                 sorted(support) if support is not None else None,
                                 ann is not None and _verify_closure(ann, alg),
                                 tuple(notes))

    raise UnsupportedKind(variant)


# -- serialization ----------------------------------------------------------


def module_to_spec(handle: ModuleHandle) -> dict:
    if handle.variant in ("verma", "irreducible_quotient"):
        return {"variant": handle.variant,
                "functional": functional_to_spec(handle.functional)}
    if handle.variant == "int_series_eval":
        spec = {"variant": "int_series_eval",
                "a": format_scalar(handle.spec.a),
                "b": format_scalar(handle.spec.b),
                "window": list(handle.spec.window)}
        if handle.point is not None:
            spec["point"] = format_scalar(handle.point)
        return spec
    if handle.variant == "generalized_eval":
        return {"variant": "generalized_eval",
                "point": format_scalar(handle.point),
                "order": handle.order,
                "inner": module_to_spec(handle.inner)}
    if handle.variant == "tensor":
        return {"variant": "tensor",
                "factors": [module_to_spec(f) for f in handle.factors]}
    raise UnsupportedKind(handle.variant)


def module_from_spec(algebra: Algebra, spec: dict) -> ModuleHandle:
    variant = spec.get("variant")
    if variant == "verma":
        return VermaHandle(functional_from_spec(algebra, spec["functional"]))
    if variant == "irreducible_quotient":
        return IrreducibleQuotientHandle(
            functional_from_spec(algebra, spec["functional"]))
    if variant == "int_series_eval":
        iss = IntSeriesSpec(as_scalar(spec["a"]), as_scalar(spec["b"]),
                            tuple(spec["window"]))
        return IntSeriesEvalHandle(algebra, iss, spec.get("point"))
    if variant == "generalized_eval":
        point = as_scalar(spec["point"])
        order = int(spec["order"])
        quotient, _ = local_quotient(algebra, point, order)
        inner = module_from_spec(quotient, spec["inner"])
        return GeneralizedEvalHandle(algebra, point, order, inner)
    if variant == "tensor":
        return TensorHandle([module_from_spec(algebra, f)
                             for f in spec["factors"]])
    raise ValueError(f"unknown module variant {variant!r}")
