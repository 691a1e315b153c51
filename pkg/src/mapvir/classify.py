"""Classification drivers: canonical forms and windowed shape profiles.

Highest and lowest weight functionals are decided through the quasifiniteness
check and the CRT splitting: a certified witness ideal localizes the
functional at finitely many points, each contributing one generalized
evaluation component whose order is the smallest power of the point ideal the
piece kills.  Intermediate-series descriptors echo their single point.  Shape
profiles only report what a finite weight-table window can support; a window
can falsify boundedness but never prove it, so profiles carry their window.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import polyutil
from .algebra import (
    Algebra,
    Ideal,
    PrincipalIdeal,
    format_element,
    ideal_power,
    local_decomposition,
)
from .errors import UnsupportedKind
from .evalmod import (
    IntSeriesSpec,
    ModuleHandle,
    WeightTable,
    local_quotient,
    weight_multiplicities,
)
from .scalars import as_scalar, format_scalar
from .verma import (
    Functional,
    check_quasifinite,
    functional_to_spec,
    split_phi,
)

CONVENTION_NOTE = ("bracket [d_m, d_n] = (n-m) d_{m+n} "
                   "+ delta_{m,-n} (m^3-m)/12 c")


def involute_functional(phi: Functional) -> Functional:
    """Pull back along d_n -> -d_{-n}, c -> -c (restricted to V_0: negation).

    This is the translation between highest and lowest weight data.
    """
    return phi.negate()


@dataclass
class Component:
    """One tensor factor: a generalized evaluation module at a single point."""

    point: Fraction | None
    order: int
    functional: Functional | None = None       # over the local quotient
    phi_piece: Functional | None = None        # the CRT summand over A
    int_series: tuple[Fraction, Fraction] | None = None

    def to_json_dict(self) -> dict:
        out: dict = {"point": None if self.point is None
                     else format_scalar(self.point),
                     "order": self.order}
        if self.functional is not None:
            out["functional"] = functional_to_spec(self.functional)
        if self.int_series is not None:
            out["a"] = format_scalar(self.int_series[0])
            out["b"] = format_scalar(self.int_series[1])
        return out


@dataclass
class ClassificationRecord:
    verdict: str
    components: list[Component] = field(default_factory=list)
    notes: dict = field(default_factory=dict)
    witness: Ideal | PrincipalIdeal | None = None
    idempotents: list = field(default_factory=list)

    def to_json_dict(self, explain: bool = False) -> dict:
        out = {"verdict": self.verdict,
               "components": [c.to_json_dict() for c in self.components],
               "notes": dict(self.notes)}
        if explain:
            out["witness"] = None if self.witness is None else repr(self.witness)
            out["idempotents"] = [format_element(e) for e in self.idempotents]
        return out


def classify_module(descriptor, *, point=None, lowest: bool = False,
                    bound: int | None = None,
                    assume_exact: bool = False) -> ClassificationRecord:
    """Canonical form of a highest/lowest weight functional or an
    intermediate-series descriptor.

    Functionals over product_local algebras always split; polynomial
    functionals split when the quasifiniteness witness is certified and its
    generator factors into rational points, and otherwise stay undetermined
    (or are reported not quasifinite under caller-asserted exactness).
    """
    if isinstance(descriptor, IntSeriesSpec):
        comp = Component(point=None if point is None else as_scalar(point),
                         order=1,
                         int_series=(descriptor.a, descriptor.b))
        return ClassificationRecord(
            "int_series_single_point", [comp],
            notes={"convention": CONVENTION_NOTE,
                   "window": list(descriptor.window)})
    if not isinstance(descriptor, Functional):
        raise TypeError("descriptor must be a Functional or an IntSeriesSpec")

    phi = descriptor
    if lowest:
        record = _classify_highest(involute_functional(phi), bound, assume_exact)
        record.verdict = record.verdict.replace("hw_", "lw_")
        for comp in record.components:
            if comp.functional is not None:
                comp.functional = involute_functional(comp.functional)
            if comp.phi_piece is not None:
                comp.phi_piece = involute_functional(comp.phi_piece)
        record.notes["weight_side"] = "lowest (translated through the involution)"
        return record
    record = _classify_highest(phi, bound, assume_exact)
    record.notes["weight_side"] = "highest"
    return record


def _classify_highest(phi: Functional, bound, assume_exact) -> ClassificationRecord:
    alg = phi.algebra
    notes = {"convention": CONVENTION_NOTE}
    if alg.kind == "product_local":
        return _split_product_local(phi, notes)
    if alg.kind == "structure_constants":
        raise UnsupportedKind(
            "structure-constants algebras carry no point presentation; "
            "classification needs product_local or polynomial input")
    if alg.kind != "polynomial":
        raise UnsupportedKind(f"classification unsupported for {alg.kind} kind")

    verdict = check_quasifinite(phi, bound=bound, assume_exact=assume_exact)
    notes["bound"] = bound if bound is not None else phi.declared_max
    if not verdict.certified:
        if assume_exact:
            return ClassificationRecord("not_quasifinite", notes={
                **notes, "reason": verdict.note})
        return ClassificationRecord("undetermined_at_bound", notes={
            **notes, "reason": verdict.note})
    witness = verdict.witness
    gen = witness.generator_poly()
    if polyutil.degree(gen) == 0:
        # phi vanishes identically: the trivial module, an empty tensor product
        return ClassificationRecord("hw_tensor_of_generalized_evals", [],
                                    notes={**notes, "trivial": True},
                                    witness=witness)
    roots, rest = polyutil.rational_roots(gen)
    if polyutil.degree(rest) > 0:
        return ClassificationRecord("undetermined_at_bound", notes={
            **notes,
            "reason": "witness ideal does not split into rational points",
            "witness": polyutil.pstr(gen)}, witness=witness)
    quotient = Algebra.product_local(roots)
    lam = [phi.value_d0(k) for k in range(quotient.dim)]
    kap = [phi.value_c(k) for k in range(quotient.dim)]
    pulled = Functional(quotient, dict(enumerate(lam)), dict(enumerate(kap)))
    record = _split_product_local(pulled, notes)
    record.witness = witness
    record.notes["witness"] = polyutil.pstr(gen)
    return record


def _split_product_local(phi: Functional, notes: dict) -> ClassificationRecord:
    alg = phi.algebra
    factors = local_decomposition(alg)
    pieces = split_phi(phi)
    components = []
    dropped = 0
    for factor, piece in zip(factors, pieces):
        if piece.is_zero():
            dropped += 1
            continue
        order = _minimal_order(piece, factor)
        quotient, _ = local_quotient(alg, factor.point, order)
        # the piece kills m^order, so evaluating it on monomial lifts gives a
        # well-defined functional on the local quotient
        local_phi = Functional(
            quotient,
            {k: piece.eval_d0(alg.basis_element(k)) for k in range(quotient.dim)},
            {k: piece.eval_c(alg.basis_element(k)) for k in range(quotient.dim)})
        components.append(Component(point=factor.point, order=order,
                                    functional=local_phi, phi_piece=piece))
    record = ClassificationRecord("hw_tensor_of_generalized_evals", components,
                                  notes=dict(notes),
                                  idempotents=[f.idempotent for f in factors])
    if dropped:
        record.notes["dropped_zero_components"] = dropped
    if not components:
        record.notes["trivial"] = True
    return record


def _minimal_order(piece: Functional, factor) -> int:
    """Smallest N with the piece vanishing on Vir_0 (x) m^N.

    Bounded by the factor's presentation order, since the piece kills the
    complementary factors by construction.
    """
    alg = piece.algebra
    for n in range(1, factor.order + 1):
        mpow = ideal_power(factor.maximal_ideal, n)
        killed = all(piece.eval_d0(b) == 0 and piece.eval_c(b) == 0
                     for b in mpow.basis_elements())
        if killed:
            return n
    return factor.order


# -- trichotomy profiling ----------------------------------------------------


@dataclass
class TrichotomyProfile:
    """Sampled weight-table shape over an offset window."""

    shape: str  # "bounded" | "truncated_above" | "truncated_below" | "unbounded_both"
    bound: int | None
    table: WeightTable
    window_truncated: bool

    def to_json_dict(self) -> dict:
        return {"shape": self.shape,
                "bound": self.bound,
                "window_truncated": self.window_truncated,
                "table": self.table.to_json_dict()}


def trichotomy_profile(handle: ModuleHandle, offsets=(-8, 8),
                       window=None) -> TrichotomyProfile:
    """Classify the sampled table: truncated above/below, or bounded.

    A table whose support spans the whole window and whose maximum sits at a
    window edge is reported unbounded_both (growth cut off by the window);
    boundedness claims always carry the window-truncated flag of the table.
    """
    table = weight_multiplicities(handle, offsets, window=window)
    lo, hi = table.offsets
    support = sorted(o for o, m in table.mult.items() if m > 0)
    if not support:
        return TrichotomyProfile("bounded", 0, table, table.truncated)
    top, bot = support[-1], support[0]
    peak = table.max_multiplicity()
    if top < hi and bot == lo:
        return TrichotomyProfile("truncated_above", None, table, table.truncated)
    if bot > lo and top == hi:
        return TrichotomyProfile("truncated_below", None, table, table.truncated)
    if bot > lo and top < hi:
        return TrichotomyProfile("bounded", peak, table, table.truncated)
    edge_peak = (table.multiplicity(lo) == peak or table.multiplicity(hi) == peak)
    if edge_peak and peak > 1:
        return TrichotomyProfile("unbounded_both", peak, table, True)
    return TrichotomyProfile("bounded", peak, table, table.truncated)
