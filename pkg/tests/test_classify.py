import math
import random
from fractions import Fraction as F

import pytest

from mapvir import (
    Algebra,
    Functional,
    GeneralizedEvalHandle,
    IntSeriesEvalHandle,
    IntSeriesSpec,
    IrreducibleQuotientHandle,
    TensorHandle,
    UnsupportedKind,
    VermaHandle,
    classify_module,
    involute_functional,
    quotient_dims,
    trichotomy_profile,
)
from oracles import convolve

QQ = Algebra.rationals()
SPLIT = Algebra.product_local([(0, 1), (1, 1)])


def test_classify_two_point_example():
    phi = Functional.from_values(SPLIT, {"1": 5, "t": 2}, {})
    record = classify_module(phi)
    assert record.verdict == "hw_tensor_of_generalized_evals"
    assert [(c.point, c.order) for c in record.components] == [(0, 1), (1, 1)]
    assert record.components[0].functional.highest_weight == 3
    assert record.components[1].functional.highest_weight == 2


def test_classify_roundtrip_characters():
    rng = random.Random(33)
    phi = Functional(SPLIT,
                     {i: F(rng.randint(-4, 4), rng.randint(1, 3)) for i in range(2)},
                     {i: F(rng.randint(-4, 4)) for i in range(2)})
    record = classify_module(phi)
    # the CRT pieces over A sum back to phi
    total = None
    for c in record.components:
        total = c.phi_piece if total is None else total + c.phi_piece
    if total is not None:
        assert total == phi
    # characters convolve back to the original graded dimensions
    dims = [1]
    for c in record.components:
        dims = convolve(dims, list(quotient_dims(c.functional, 4)))
    assert tuple(dims[:5]) == quotient_dims(phi, 4)


def test_classify_orders_detect_nilpotents():
    dual = Algebra.product_local([(0, 2)])
    phi_flat = Functional(dual, {0: F(3), 1: F(0)}, {0: F(1), 1: F(0)})
    rec = classify_module(phi_flat)
    assert [(c.point, c.order) for c in rec.components] == [(0, 1)]
    phi_nilp = Functional(dual, {0: F(3), 1: F(7)}, {0: F(1), 1: F(0)})
    rec2 = classify_module(phi_nilp)
    assert [(c.point, c.order) for c in rec2.components] == [(0, 2)]


def test_classify_trivial():
    phi = Functional.from_values(SPLIT, {}, {})
    record = classify_module(phi)
    assert record.components == []
    assert record.notes.get("trivial") is True


def test_classify_int_series_descriptor():
    spec = IntSeriesSpec(F(1, 2), F(1, 3), (-10, 10))
    record = classify_module(spec, point=2)
    assert record.verdict == "int_series_single_point"
    assert len(record.components) == 1
    comp = record.components[0]
    assert comp.point == 2 and comp.order == 1
    assert comp.int_series == (F(1, 2), F(1, 3))


def test_classify_polynomial_exact_two_points():
    P = Algebra.polynomial((0, 32))
    # lam_k = 2^k + 3^k, kap_k = 3^k: both killed by (t-2)(t-3)
    char = (F(6), F(-5), F(1))
    lam = [F(2) ** k + F(3) ** k for k in range(10)]
    kap = [F(3) ** k for k in range(10)]
    phi = Functional.from_sequences(P, lam, kap, exact_ideal=char)
    record = classify_module(phi)
    assert record.verdict == "hw_tensor_of_generalized_evals"
    assert [(c.point, c.order) for c in record.components] == [(2, 1), (3, 1)]
    weights = [c.functional.highest_weight for c in record.components]
    assert sum(weights) == lam[0]


def test_classify_polynomial_undetermined():
    P = Algebra.polynomial((0, 32))
    lam = [F(math.factorial(k)) for k in range(13)]
    phi = Functional.from_sequences(P, lam, [F(0)] * 13)
    record = classify_module(phi, bound=12)
    assert record.verdict == "undetermined_at_bound"
    record2 = classify_module(phi, bound=12, assume_exact=True)
    assert record2.verdict == "not_quasifinite"


def test_classify_lowest_weight():
    phi = Functional.from_values(SPLIT, {"1": 5, "t": 2}, {})
    record = classify_module(phi, lowest=True)
    assert record.verdict == "lw_tensor_of_generalized_evals"
    total = None
    for c in record.components:
        total = c.phi_piece if total is None else total + c.phi_piece
    assert total == phi
    assert involute_functional(involute_functional(phi)) == phi


def test_classify_rejects_bare_structure_constants():
    tensor = (((F(1),),),)
    alg = Algebra.structure_constants(tensor, (F(1),))
    phi = Functional(alg, {0: F(2)}, {0: F(0)})
    with pytest.raises(UnsupportedKind):
        classify_module(phi)


def test_classified_components_rebuild_as_handles():
    dual = Algebra.product_local([(0, 2)])
    phi = Functional(dual, {0: F(3), 1: F(7)}, {0: F(1), 1: F(0)})
    record = classify_module(phi)
    (comp,) = record.components
    handle = GeneralizedEvalHandle(dual, comp.point, comp.order,
                                   IrreducibleQuotientHandle(comp.functional))
    assert handle.variant == "generalized_eval"


def test_json_record():
    phi = Functional.from_values(SPLIT, {"1": 5, "t": 2}, {})
    record = classify_module(phi)
    d = record.to_json_dict(explain=True)
    assert d["verdict"] == "hw_tensor_of_generalized_evals"
    assert len(d["components"]) == 2
    assert d["idempotents"] == ["-t + 1", "t"]


# -- trichotomy ---------------------------------------------------------------

def test_profile_verma_truncated_above():
    phi = Functional.classical(F(5, 7), 2)
    profile = trichotomy_profile(VermaHandle(phi), (-6, 2))
    assert profile.shape == "truncated_above"


def test_profile_int_series_bounded_one():
    spec = IntSeriesSpec(F(1, 2), F(1, 3), (-30, 30))
    profile = trichotomy_profile(IntSeriesEvalHandle(QQ, spec), (-8, 8))
    assert profile.shape == "bounded"
    assert profile.bound == 1


def test_profile_two_point_tensor_flags_window():
    w = 10
    h1 = IntSeriesEvalHandle(SPLIT, IntSeriesSpec(F(1, 2), F(1, 3), (-w, w)), 0)
    h2 = IntSeriesEvalHandle(SPLIT, IntSeriesSpec(F(1, 5), F(2, 3), (-w, w)), 1)
    profile = trichotomy_profile(TensorHandle([h1, h2]), (-10, 10))
    assert profile.shape == "bounded"
    assert profile.bound >= w
    assert profile.window_truncated


def test_profile_trivial_module():
    phi = Functional.classical(0, 0)
    profile = trichotomy_profile(IrreducibleQuotientHandle(phi), (-5, 5))
    assert profile.shape == "bounded"
    assert profile.bound == 1  # single weight line strictly inside the window
