"""Top-level acceptance runs, one criterion per test.

Each test prints a single PASS line when its criterion holds; a failed
assertion is the corresponding FAIL. Budgets from the requirements are
asserted where stated.
"""

import time

from nchodge.algebra import check_lift, commutator_quotient, literal_lift
from nchodge.cartier import (
    block_rotation,
    cartier0,
    conjugate_ledger,
    conjugate_ss,
    edgewise_subdivision,
    estimate_sd_entries,
    hc_via_lambda_p,
    iota_iso,
    is_tight,
    zp_homology_dims,
    ZpModuleAction,
)
from nchodge.corpus import build, corpus_names
from nchodge.hochcyc import (
    bB_bicomplex,
    build_cyclic_object,
    estimate_entries,
    hc_dims,
    hh_dims,
    hodge_degenerates,
    sbi_check,
)
from nchodge.modring import ModMatrix
from nchodge.witt import verify_w2_ring

BIG_CAP = 1 << 26
ID_BUDGET = 1 << 20
SD_BUDGET = 1 << 22


def _adaptive_n(a, lo, hi, budget, estimate):
    n = lo
    while n < hi and estimate(a, n + 1) <= budget:
        n += 1
    return n


def test_c01_operator_identities_full_corpus():
    t0 = time.time()
    for p in (3, 5, 7):
        for name in corpus_names():
            a = build(name, p)
            N = _adaptive_n(a, 2, 5, ID_BUDGET, estimate_entries)
            cyc = build_cyclic_object(a, N)
            failures = cyc.verify_identities()
            assert not failures, (name, p, failures)
            bB_bicomplex(cyc).check_squares()
            # order-p block rotation on the degree-zero subdivided chains
            sigma0 = block_rotation(a.dim, p, 1, p)
            ident = ModMatrix.identity(sigma0.shape[0], p)
            assert sigma0.matpow(p) == ident, (name, p)
            if estimate_sd_entries(a, 1) <= ID_BUDGET:
                pcyc = edgewise_subdivision(a, 1, allow_p2=True)
                for n in (0, 1):
                    sig = pcyc.sigma(n)
                    assert sig.matpow(p) == ModMatrix.identity(
                        sig.shape[0], p), (name, p, n)
    elapsed = time.time() - t0
    assert elapsed <= 120, f"identity sweep took {elapsed:.1f}s"
    print(f"PASS: operator identities, corpus x p in (3,5,7), {elapsed:.1f}s")


def test_c02_hc0_equals_commutator_quotient():
    for name in corpus_names():
        a = build(name, 3)
        dim_q, _ = commutator_quotient(a)
        assert hc_dims(a, 2)[0] == dim_q, name
    print("PASS: HC_0 equals dim A/[A,A] on the corpus")


def test_c03_tensor_power_homology_and_repeated_words():
    t0 = time.time()
    for p, max_dim in ((3, 4), (5, 3)):
        for dim in range(1, max_dim + 1):
            act = ZpModuleAction(block_rotation(dim, p, 1, p), p)
            hom = zp_homology_dims(act, l_max=4)
            for l in range(1, 5):
                assert hom[l] == dim, (p, dim, l)
            rep = iota_iso(dim, p, l_max=4, samples=200, seed=1)
            assert rep.bijective and rep.natural and rep.additive, (p, dim)
    elapsed = time.time() - t0
    assert elapsed <= 60, f"tensor power sweep took {elapsed:.1f}s"
    print(f"PASS: H_l(Z/p, V^(x p)) = dim V and repeated words present it, "
          f"{elapsed:.1f}s")


def test_c04_tightness_at_every_subdivided_level():
    checked = 0
    for name in corpus_names():
        a = build(name, 3)
        N = _adaptive_n(a, 0, 3, SD_BUDGET, estimate_sd_entries)
        assert N >= 1, name
        pcyc = edgewise_subdivision(a, N)
        for n in range(N + 1):
            assert is_tight(pcyc.action(n)), (name, n)
            checked += 1
    assert checked >= 2 * len(corpus_names())
    print(f"PASS: norm complex tight at all {checked} subdivided levels")


def test_c05_degree_zero_power_map_certificates():
    noncomm = {"m2", "upper-tri-2", "kronecker"}
    for name in corpus_names():
        rep = cartier0(build(name, 3), samples=1000, seed=2)
        assert rep.samples >= 1000
        assert rep.additive_ok and rep.representative_ok, name
        noncomm.discard(name)
    assert not noncomm
    print("PASS: power map on A/[A,A] certified, 1000 samples per algebra")


def test_c06_two_column_route_matches_cyclic_homology():
    t0 = time.time()
    for name, N, cap in (("ground-field", 4, None), ("dual-numbers", 3, None),
                         ("upper-tri-2", 3, BIG_CAP)):
        a = build(name, 3)
        rep = hc_via_lambda_p(a, N, cap=cap)
        common = sorted(set(rep.dims) & set(rep.hc))
        assert len(common) >= 3, (name, common)
        for n in common:
            assert rep.dims[n] == rep.hc[n], (name, n)
    elapsed = time.time() - t0
    assert elapsed <= 300, f"two-column route took {elapsed:.1f}s"
    print(f"PASS: two-column route equals cyclic homology tables, "
          f"{elapsed:.1f}s")


def test_c07_conjugate_second_page_equals_hh():
    t0 = time.time()
    for name, N, cap in (("dual-numbers", 3, None), ("upper-tri-2", 3, BIG_CAP)):
        a = build(name, 3)
        rep = conjugate_ss(a, N, cap=cap)
        assert rep.matches_hh, name
        hh = hh_dims(a, N)
        lo, hi = rep.window
        for n in range(lo, hi + 1):
            assert rep.e2_positive[n] == hh[n], (name, n)
    elapsed = time.time() - t0
    assert elapsed <= 600, f"conjugate page took {elapsed:.1f}s"
    print(f"PASS: conjugate E_2 rows equal Hochschild dimensions, "
          f"{elapsed:.1f}s")


def test_c08_degeneration_for_lifted_algebras():
    t0 = time.time()
    lifted = ("ground-field", "m2", "upper-tri-2", "a2-path", "kronecker")
    for p in (3, 5):
        for name in lifted:
            a = build(name, p)
            rep = check_lift(literal_lift(a))
            assert rep.valid, (name, p, rep.failures)
            assert hodge_degenerates(a, 5), (name, p)
            assert conjugate_ledger(a, 5).degenerate, (name, p)
    for name in corpus_names():
        led = conjugate_ledger(build(name, 3), 5)
        for row in led.rows:
            assert row.hc <= row.hodge_sum, (name, row.degree)
    elapsed = time.time() - t0
    assert elapsed <= 600, f"degeneration sweep took {elapsed:.1f}s"
    print(f"PASS: lifted algebras degenerate, ledger never reverses, "
          f"{elapsed:.1f}s")


def test_c09_connes_triangle_dim_exact_and_controls():
    for name in corpus_names():
        rep = sbi_check(build(name, 3), 6, cap=BIG_CAP)
        assert rep.complex_valid and rep.exact, name
    for name in ("dual-numbers", "trunc-poly-3"):
        flipped = sbi_check(build(name, 3), 6, cap=BIG_CAP, _flip_B_at=1)
        assert not flipped.exact, name
    print("PASS: inclusion/shift/connecting triangle dim-exact, "
          "flipped-sign control detected")


def test_c10_w2_ring_axioms_exhaustive():
    for p in (2, 3, 5, 7):
        failures = verify_w2_ring(p)
        assert not failures, (p, failures)
    print("PASS: length-two Witt ring axioms and Z/p^2 isomorphism, "
          "p in (2,3,5,7)")
