"""Cyclic object, mixed bicomplex, and the homology pipelines built on them.

Expected dimensions were computed two independent ways before being frozen
here: once through the package and once by hand or through the dense
per-monomial oracles in oracles.py.
"""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nchodge.algebra import truncated_poly
from nchodge.corpus import build, corpus_names
from nchodge.errors import ResourceError, WindowError
from nchodge.hochcyc import (
    bB_bicomplex,
    b_complex,
    bprime_complex,
    build_cyclic_object,
    conn2_complex,
    connes_B,
    degeneracy_matrix,
    estimate_entries,
    face_matrix,
    hc_dims,
    hh_dims,
    hodge_degenerates,
    hodge_ss,
    normalized_complex,
    normalized_hh_dims,
    rotation_matrix,
    sbi_check,
)
from .oracles import ref_degeneracy_dense, ref_face_dense, ref_rotation_dense


# ---------------- operators against the dense per-monomial oracle ----------------

def test_faces_match_dense_oracle():
    cases = [(build("dual-numbers", 3), 3), (build("m2", 3), 2),
             (build("upper-tri-2", 5), 2), (build("group-z3", 2), 2)]
    for a, top in cases:
        for m in range(1, top + 1):
            for i in range(m + 1):
                got = face_matrix(a, m, i).to_dense()
                assert np.array_equal(got, ref_face_dense(a, m, i)), (a.label, m, i)


def test_degeneracies_match_dense_oracle():
    for name in ("dual-numbers", "m2", "upper-tri-2"):
        a = build(name, 3)
        for m in range(0, 2):
            for i in range(m + 1):
                got = degeneracy_matrix(a, m, i).to_dense()
                assert np.array_equal(got, ref_degeneracy_dense(a, m, i)), (name, m, i)


def test_rotation_matches_dense_oracle():
    for dim in (2, 3, 4):
        for m in range(0, 4):
            got = rotation_matrix(dim, m, 5).to_dense()
            assert np.array_equal(got, ref_rotation_dense(dim, m))


def test_identities_hold_across_small_corpus():
    for name in corpus_names():
        a = build(name, 3)
        if a.dim > 4:
            continue
        cyc = build_cyclic_object(a, 3)
        assert cyc.verify_identities() == [], name


@settings(max_examples=10, deadline=None)
@given(name=st.sampled_from(["ground-field", "dual-numbers", "upper-tri-2", "group-z3"]),
       p=st.sampled_from([2, 3, 5]))
def test_identities_hold_property(name, p):
    cyc = build_cyclic_object(build(name, p), 3)
    assert cyc.verify_identities() == []


def test_level_dimensions_double_for_dual_numbers():
    cyc = build_cyclic_object(build("dual-numbers", 3), 5)
    assert [cyc.dim(n) for n in range(6)] == [2, 4, 8, 16, 32, 64]
    assert estimate_entries(build("dual-numbers", 3), 5) < (1 << 24)


def test_connes_b_at_level_zero():
    # B_0(a) = 1 (x) a + a (x) 1 in coordinates; frozen for dual numbers
    a = build("dual-numbers", 3)
    cyc = build_cyclic_object(a, 2)
    col = connes_B(cyc, 0).to_dense()[:, 1]  # image of the nilpotent x
    want = np.zeros(4, dtype=np.int64)
    want[1] = 1  # x (x) 1  -> digits (1, 0)
    want[2] = 1  # 1 (x) x  -> digits (0, 1)
    assert np.array_equal(col, want)


# ---------------- homology dimensions, frozen ----------------

def test_hh_ground_field():
    assert hh_dims(build("ground-field", 3), 6) == {0: 1, 1: 0, 2: 0, 3: 0, 4: 0, 5: 0}


def test_hh_dual_numbers_f3():
    assert hh_dims(build("dual-numbers", 3), 5) == {0: 2, 1: 1, 2: 1, 3: 1, 4: 1}


def test_hh_trunc_square_f5():
    assert hh_dims(truncated_poly(5, 2), 5) == {0: 2, 1: 1, 2: 1, 3: 1, 4: 1}


def test_hh_matrix_algebra_is_morita_trivial():
    assert hh_dims(build("m2", 3), 4) == hh_dims(build("ground-field", 3), 4)


def test_hh_product_adds():
    hh = hh_dims(build("product-ground-m2", 3), 4)
    k = hh_dims(build("ground-field", 3), 4)
    assert hh == {n: 2 * k[n] for n in k}


def test_bprime_complex_is_acyclic():
    for name in ("dual-numbers", "upper-tri-2"):
        c = bprime_complex(build_cyclic_object(build(name, 3), 4))
        assert c.homology_dims() == {n: 0 for n in range(4)}


def test_hc_ground_field():
    assert hc_dims(build("ground-field", 3), 6) == {0: 1, 1: 0, 2: 1, 3: 0, 4: 1}


def test_hc_dual_numbers_f3():
    assert hc_dims(build("dual-numbers", 3), 6) == {0: 2, 1: 0, 2: 2, 3: 1, 4: 3}


def test_hc_zero_needs_two_levels():
    with pytest.raises(WindowError):
        hc_dims(build("ground-field", 3), 1)


def test_bicomplex_squares_and_window():
    cyc = build_cyclic_object(build("dual-numbers", 3), 4)
    bicx = bB_bicomplex(cyc)
    bicx.check_squares()
    assert bicx.trusted_upper() == 3
    tot, blocks = bicx.total_complex()
    assert tot.dim(2) == cyc.dim(2) + cyc.dim(0)
    assert {(x, y) for x, y, _, d in blocks[2] if d} == {(0, 2), (1, 1)}


def test_periodic_two_column_complex_matches_hc():
    for name in ("ground-field", "dual-numbers"):
        a = build(name, 3)
        hc = hc_dims(a, 6)
        c = conn2_complex(a, 8, 6)
        got = {n: c.homology_dim(n) for n in range(5)}
        assert got == hc, name


# ---------------- normalized chains ----------------

def test_normalized_matches_full_hh():
    for name in ("dual-numbers", "m2", "upper-tri-2", "group-z3", "trunc-poly-3"):
        a = build(name, 3)
        assert normalized_hh_dims(a, 4) == hh_dims(a, 4), name


def test_normalized_dims_shrink():
    a = build("dual-numbers", 3)
    c = normalized_complex(a, 5)
    assert [c.dim(n) for n in range(6)] == [2, 2, 2, 2, 2, 2]


# ---------------- the inclusion / shift / connecting triangle ----------------

def test_sbi_exact_for_dual_numbers():
    rep = sbi_check(build("dual-numbers", 3), 6)
    assert rep.complex_valid and rep.exact
    assert rep.degrees == [2, 3, 4, 5]
    assert all(all(v for v in rep.spots[n].values()) for n in rep.degrees)


def test_sbi_exact_for_matrix_algebra():
    rep = sbi_check(build("m2", 3), 6)
    assert rep.complex_valid and rep.exact


def test_sbi_detects_flipped_connecting_map():
    rep = sbi_check(build("dual-numbers", 3), 6, _flip_B_at=1)
    assert not rep.complex_valid
    assert not rep.exact


def test_sbi_needs_room():
    with pytest.raises(WindowError):
        sbi_check(build("dual-numbers", 3), 4)


# ---------------- Hodge filtration verdicts ----------------

def test_hodge_degenerates_for_separable_and_hereditary():
    assert hodge_degenerates(build("m2", 3), 5)
    assert hodge_degenerates(build("upper-tri-2", 3), 5)
    assert hodge_degenerates(build("ground-field", 3), 5)


def test_hodge_fails_for_dual_numbers():
    rep = hodge_ss(build("dual-numbers", 3), 6, pages_budget=0)
    assert not rep.degenerate
    assert rep.hodge_sums == {0: 2, 1: 1, 2: 3, 3: 2, 4: 4}
    assert rep.abutment == {0: 2, 1: 0, 2: 2, 3: 1, 4: 3}
    # the abutment can only ever be smaller
    assert all(rep.abutment[n] <= rep.hodge_sums[n] for n in rep.hodge_sums)


def test_hodge_e1_table_upper_tri():
    rep = hodge_ss(build("upper-tri-2", 3), 5, pages_budget=0)
    assert rep.degenerate
    assert rep.e1[(0, 0)] == 2 and rep.e1[(1, 2)] == 2
    assert rep.e1[(0, 1)] == 0 and rep.e1[(0, 2)] == 0


# ---------------- guard rails ----------------

def test_resource_cap_reports_estimate():
    a = build("m2", 3)
    with pytest.raises(ResourceError) as exc:
        build_cyclic_object(a, 9, cap=10_000)
    assert exc.value.estimate > exc.value.cap == 10_000


def test_connes_b_needs_headroom():
    cyc = build_cyclic_object(build("dual-numbers", 3), 3)
    with pytest.raises(WindowError):
        connes_B(cyc, 3)


def test_homology_outside_window_rejected():
    c = b_complex(build_cyclic_object(build("dual-numbers", 3), 3))
    with pytest.raises(WindowError):
        c.homology_dim(3)
