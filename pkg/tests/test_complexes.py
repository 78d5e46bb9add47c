"""Windowed complexes and bicomplexes on hand-checkable examples."""

from __future__ import annotations

import numpy as np
import pytest

from nchodge.complexes import (
    BicomplexWindow,
    ChainComplexWindow,
    IncreasingFiltration,
    filtration_by_columns,
    truncate_canonical,
    truncate_stupid,
)
from nchodge.errors import NotAComplexError, ShapeError, WindowError
from nchodge.modring import ModMatrix


def three_term(p=5):
    # 0 -> F --(0,1)^T--> F^2 --(1,0)--> F -> 0 : exact in the middle
    d1 = ModMatrix.from_dense([[1, 0]], p)
    d2 = ModMatrix.from_dense([[0], [1]], p)
    return ChainComplexWindow(0, 2, {0: 1, 1: 2, 2: 1}, {1: d1, 2: d2}, p, vhi=2)


def test_chain_window_homology():
    c = three_term()
    assert c.homology_dims() == {0: 0, 1: 0, 2: 0}
    assert c.dim(5) == 0


def test_chain_window_guards():
    p = 3
    with pytest.raises(NotAComplexError):
        ChainComplexWindow(0, 2, {0: 1, 1: 1, 2: 1},
                           {1: ModMatrix.identity(1, p), 2: ModMatrix.identity(1, p)}, p)
    with pytest.raises(ShapeError):
        ChainComplexWindow(0, 1, {0: 2, 1: 1}, {1: ModMatrix.identity(1, p)}, p)
    c = three_term()
    with pytest.raises(WindowError):
        c.homology_dim(3)


def test_default_window_excludes_top():
    p = 3
    c = ChainComplexWindow(0, 2, {0: 1, 1: 1, 2: 1},
                           {1: ModMatrix.zeros(1, 1, p), 2: ModMatrix.zeros(1, 1, p)}, p)
    assert c.vhi == 1
    with pytest.raises(WindowError):
        c.homology_dim(2)


def test_truncate_stupid():
    c = three_term()
    t = truncate_stupid(c, 1)
    assert t.hi == 1 and t.dim(1) == 2
    # degree 0 unchanged, degree 1 no longer trusted
    assert t.homology_dim(0) == 0
    with pytest.raises(WindowError):
        t.homology_dim(1)


def test_truncate_canonical_keeps_homology_through_degree():
    p = 5
    # 0 -> F --id--> F --0--> F^2 --(1,0)--> F: homology dims 0,?,?
    d1 = ModMatrix.from_dense([[1, 0]], p)
    d2 = ModMatrix.zeros(2, 1, p)
    d3 = ModMatrix.identity(1, p)
    c = ChainComplexWindow(0, 3, {0: 1, 1: 2, 2: 1, 3: 1},
                           {1: d1, 2: d2, 3: d3}, p, vhi=3)
    full = c.homology_dims()
    t = truncate_canonical(c, 2)
    assert t.hi == 2
    # degree 2 space shrank from 1 to 0 (everything was a boundary)
    assert t.dim(2) == 0
    got = t.homology_dims(range(0, 3))
    assert got == {n: full[n] for n in range(0, 3)}


def test_truncate_canonical_on_contractible_two_term():
    p = 3
    # F --id--> F, homology zero everywhere; truncating at 0 keeps nothing
    c = ChainComplexWindow(0, 1, {0: 1, 1: 1}, {1: ModMatrix.identity(1, p)}, p, vhi=1)
    t = truncate_canonical(c, 0)
    assert t.dim(0) == 0
    assert t.homology_dims(range(0, 1)) == {0: 0}


def square_bicomplex(p=3):
    # Koszul square for two commuting ids with a sign: anticommutes
    one = ModMatrix.identity(1, p)
    dims = {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1}
    d_v = {(0, 1): one, (1, 1): -one}
    d_h = {(1, 0): one, (1, 1): one}
    return BicomplexWindow(1, 1, dims, d_v, d_h, p, sign_tag="test",
                           complete_x=True, complete_y=True)


def test_bicomplex_total_homology():
    bicx = square_bicomplex()
    tot, blocks = bicx.total_complex()
    assert [tot.dim(n) for n in range(0, 3)] == [1, 2, 1]
    assert tot.homology_dims(range(0, 3)) == {0: 0, 1: 0, 2: 0}
    assert blocks[1] == [(0, 1, 0, 1), (1, 0, 1, 1)]


def test_bicomplex_rejects_commuting_square():
    p = 3
    one = ModMatrix.identity(1, p)
    dims = {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1}
    d_v = {(0, 1): one, (1, 1): one}
    d_h = {(1, 0): one, (1, 1): one}
    with pytest.raises(NotAComplexError):
        BicomplexWindow(1, 1, dims, d_v, d_h, p, sign_tag="test")


def test_bicomplex_trusted_window_shrinks_without_completeness():
    bicx = square_bicomplex()
    assert bicx.trusted_upper() == 2
    open_bicx = BicomplexWindow(1, 1, bicx.dims, bicx.d_v, bicx.d_h, 3,
                                sign_tag="test")
    assert open_bicx.trusted_upper() == 0
    tot, _ = open_bicx.total_complex()
    with pytest.raises(WindowError):
        tot.homology_dim(1)


def test_column_filtration_masks_and_subcomplex():
    bicx = square_bicomplex()
    tot, blocks, filt = filtration_by_columns(bicx)
    filt.check()
    assert filt.levels == [0, 1]
    # level 0 keeps only the x = 0 cells
    m1 = filt.mask(0, 1)
    assert m1.tolist() == [True, False]
    assert filt.mask(-1, 1).tolist() == [False, False]
    assert filt.mask(5, 1).tolist() == [True, True]


def test_filtration_rejects_non_subcomplex():
    p = 3
    d1 = ModMatrix.identity(2, p)
    c = ChainComplexWindow(0, 1, {0: 2, 1: 2}, {1: d1}, p)
    masks = {
        0: {0: np.array([True, False]), 1: np.array([False, True])},
        1: {0: np.array([True, True]), 1: np.array([True, True])},
    }
    with pytest.raises(NotAComplexError):
        IncreasingFiltration(c, masks)


def test_shift():
    c = three_term()
    s = c.shift(2)
    assert s.lo == 2 and s.hi == 4
    assert s.homology_dims(range(2, 5)) == {2: 0, 3: 0, 4: 0}
