"""Structure constant algebras: constructors, validation, quotients, lifts."""

from __future__ import annotations

import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nchodge.algebra import (
    AlgebraLift,
    Quiver,
    StructureConstantsAlgebra,
    check_lift,
    commutator_quotient,
    direct_product,
    dual_numbers,
    dump_algebra,
    enveloping,
    from_json_dict,
    frobenius_twist,
    group_algebra_cyclic,
    literal_lift,
    load_algebra,
    matrix_algebra,
    opposite,
    path_algebra,
    truncated_poly,
    upper_triangular,
    validate_algebra,
)
from nchodge.corpus import build, corpus, corpus_names
from nchodge.errors import ConstructionError, ModulusError, ReductionMismatchError
from nchodge.modring import rank_fp


def test_every_corpus_algebra_validates():
    for p in (2, 3, 5, 7):
        for name, a in corpus(p).items():
            assert validate_algebra(a) == [], name
            assert a.name == name


def test_matrix_algebra_relations():
    a = matrix_algebra(2, 3)
    assert a.dim == 4
    e01 = np.array([0, 1, 0, 0])
    e10 = np.array([0, 0, 1, 0])
    # e01 * e10 = e00, e10 * e01 = e11
    assert np.array_equal(a.multiply(e01, e10), [1, 0, 0, 0])
    assert np.array_equal(a.multiply(e10, e01), [0, 0, 0, 1])
    assert np.array_equal(a.multiply(e01, e01), [0, 0, 0, 0])


def test_truncated_poly_nilpotence():
    a = truncated_poly(5, 3)
    x = np.array([0, 1, 0])
    assert np.array_equal(a.power_of(x, 2), [0, 0, 1])
    assert np.array_equal(a.power_of(x, 3), [0, 0, 0])


def test_group_algebra_is_commutative():
    a = group_algebra_cyclic(3, 4)
    assert a.is_commutative()
    g = np.array([0, 1, 0, 0])
    assert np.array_equal(a.power_of(g, 4), a.unit)


def test_path_algebra_a2_matches_upper_triangular_dimension():
    a = build("a2-path", 3)
    assert a.dim == 3
    ut = upper_triangular(2, 3)
    assert ut.dim == 3
    # both have a 2-dimensional commutator quotient
    assert commutator_quotient(a)[0] == commutator_quotient(ut)[0] == 2


def test_kronecker_products_vanish():
    a = build("kronecker", 5)
    assert a.dim == 4
    labels = list(a.basis)
    ia, ib = labels.index("a"), labels.index("b")
    va = np.eye(4, dtype=np.int64)[ia]
    vb = np.eye(4, dtype=np.int64)[ib]
    assert np.array_equal(a.multiply(va, vb), np.zeros(4, dtype=np.int64))
    assert np.array_equal(a.multiply(va, va), np.zeros(4, dtype=np.int64))


def test_cyclic_quiver_requires_cap():
    q = Quiver(vertices=(1,), arrows=(("a", 1, 1),))
    with pytest.raises(ConstructionError):
        path_algebra(q, 3)
    loop = path_algebra(q, 3, cap=2)
    # e, a, a^2: the cap kills a^3, giving k[x]/x^3
    assert loop.dim == 3
    assert validate_algebra(loop) == []


def test_validation_catches_broken_constants():
    a = matrix_algebra(2, 3)
    bad = a.constants.copy()
    bad[0, 0, 3] = 1  # e00 * e00 = e00 + e11 breaks associativity with e01
    with pytest.raises(ConstructionError):
        StructureConstantsAlgebra(3, a.basis, a.unit, bad)
    failures = validate_algebra(
        StructureConstantsAlgebra(3, a.basis, a.unit, bad, check=False))
    assert failures


def test_validation_catches_broken_unit():
    with pytest.raises(ConstructionError):
        StructureConstantsAlgebra(3, ["1"], [2], [[[1]]])


def test_opposite_and_double_opposite():
    a = upper_triangular(2, 5)
    aop = opposite(a)
    assert validate_algebra(aop) == []
    assert opposite(aop).constants.tolist() == a.constants.tolist()
    assert not np.array_equal(aop.constants, a.constants)


def test_direct_product_unit_splits():
    a = direct_product(dual_numbers(3), matrix_algebra(2, 3))
    assert a.dim == 6
    assert validate_algebra(a) == []
    assert commutator_quotient(a)[0] == 2 + 1


def test_enveloping_dimension_and_validity():
    a = upper_triangular(2, 3)
    env = enveloping(a)
    assert env.dim == 9
    assert validate_algebra(env) == []


def test_commutator_quotient_m2_and_upper_triangular():
    dim, proj = commutator_quotient(matrix_algebra(2, 5))
    assert dim == 1
    assert proj.shape == (1, 4)
    # trace-like: kills e01, e10 and identifies e00 with e11
    assert rank_fp(proj) == 1
    dim, proj = commutator_quotient(upper_triangular(2, 7))
    assert dim == 2
    # commutative algebras have trivial commutator span
    dim, _ = commutator_quotient(truncated_poly(3, 4))
    assert dim == 4


def test_commutator_projection_kills_commutators():
    for name in ("m2", "upper-tri-2", "kronecker", "product-dual-upper"):
        a = build(name, 5)
        _, proj = commutator_quotient(a)
        rng = np.random.default_rng(11)
        for _ in range(25):
            x = a.random_element(rng)
            y = a.random_element(rng)
            comm = (a.multiply(x, y) - a.multiply(y, x)) % a.modulus
            image = (proj.to_dense() @ comm) % a.modulus
            assert not image.any()


def test_json_round_trip(tmp_path):
    a = build("product-dual-upper", 3)
    path = tmp_path / "alg.json"
    dump_algebra(a, str(path))
    data = json.loads(path.read_text())
    assert data["p"] == 3 and data["power"] == 1 and data["dim"] == a.dim
    b = load_algebra(str(path))
    assert b.dim == a.dim
    assert np.array_equal(b.constants, a.constants)
    assert np.array_equal(b.unit, a.unit)


def test_json_rejects_malformed():
    with pytest.raises(ConstructionError):
        from_json_dict({"p": 3, "dim": 2, "unit": [1, 0], "constants": [[0, 0, 0]]})
    with pytest.raises(ConstructionError):
        from_json_dict({"p": 3, "dim": 1, "unit": [1], "constants": [[0, 0, 5, 1]]})
    with pytest.raises(ModulusError):
        from_json_dict({"p": 3, "power": 3, "dim": 1, "unit": [1], "constants": []})


def test_literal_lift_checks_out_for_corpus():
    for name in corpus_names():
        a = build(name, 3)
        report = check_lift(literal_lift(a))
        assert report.valid, (name, report.failures)


def test_lift_reduction_mismatch_raises():
    a = dual_numbers(3)
    wrong = StructureConstantsAlgebra(
        9, a.basis, a.unit, (a.constants + 1) % 9, check=False)
    with pytest.raises(ReductionMismatchError):
        check_lift(AlgebraLift(base=a, lifted=wrong))


def test_invalid_lift_is_reported_not_raised():
    a = upper_triangular(2, 3)
    bad = a.constants.copy().astype(np.int64)
    # e11 * e12 = 4*e12 mod 9 still reduces correctly mod 3 but kills
    # associativity: (e11 e11) e12 = 4 e12 while e11 (e11 e12) = 7 e12
    i11 = list(a.basis).index("e00")
    i12 = list(a.basis).index("e01")
    bad[i11, i12, i12] = 4
    lifted = StructureConstantsAlgebra(9, a.basis, a.unit, bad, check=False)
    report = check_lift(AlgebraLift(base=a, lifted=lifted))
    assert not report.valid
    assert report.failures


def test_frobenius_twist_is_identity_over_fp():
    a = build("m2", 3)
    assert frobenius_twist(a) is a
    with pytest.raises(ModulusError):
        frobenius_twist(literal_lift(a).lifted)


@given(st.sampled_from(corpus_names()), st.sampled_from([3, 5]),
       st.integers(min_value=0, max_value=2 ** 32 - 1))
@settings(max_examples=60, deadline=None)
def test_multiplication_is_associative_on_random_elements(name, p, seed):
    a = build(name, p)
    rng = np.random.default_rng(seed)
    x, y, z = (a.random_element(rng) for _ in range(3))
    lhs = a.multiply(a.multiply(x, y), z)
    rhs = a.multiply(x, a.multiply(y, z))
    assert np.array_equal(lhs, rhs)
    assert np.array_equal(a.multiply(a.unit, x), x % p)
    assert np.array_equal(a.multiply(x, a.unit), x % p)


def test_left_mult_matrix_agrees_with_multiply():
    a = build("upper-tri-2", 5)
    rng = np.random.default_rng(3)
    x = a.random_element(rng)
    y = a.random_element(rng)
    lm = a.left_mult_matrix(x).to_dense()
    assert np.array_equal((lm @ y) % 5, a.multiply(x, y))
