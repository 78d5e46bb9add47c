"""Windowed chain complexes, bicomplexes, filtrations and truncations.

A window holds dimensions and differentials for a contiguous range of
degrees, plus the validity range where homology can be trusted (degrees
whose neighbours are fully inside the window). Bicomplex windows live in
the first quadrant, store their differentials with all signs already
applied, and totalize to a chain window with a block index table.
"""

from __future__ import annotations

import numpy as np

from .errors import NotAComplexError, ShapeError, WindowError
from .modring import ModMatrix, _dense_rref, homology_dim as _hdim


class ChainComplexWindow:
    """Degrees lo..hi with d_n: C_n -> C_{n-1} for lo < n <= hi."""

    def __init__(self, lo: int, hi: int, dims: dict[int, int],
                 diffs: dict[int, ModMatrix], modulus: int,
                 vlo: int | None = None, vhi: int | None = None,
                 check: bool = True):
        if lo > hi:
            raise ShapeError(f"empty degree range [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi
        self.modulus = modulus
        self.dims = {n: int(dims.get(n, 0)) for n in range(lo, hi + 1)}
        self.diffs = dict(diffs)
        self.vlo = lo if vlo is None else vlo
        self.vhi = hi - 1 if vhi is None else vhi
        if check:
            self.check_differentials()

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def d(self, n: int) -> ModMatrix:
        """The differential out of degree n; zero maps at the edges."""
        got = self.diffs.get(n)
        if got is not None:
            return got
        return ModMatrix.zeros(self.dim(n - 1), self.dim(n), self.modulus)

    def check_differentials(self) -> None:
        for n in range(self.lo + 1, self.hi + 1):
            dn = self.d(n)
            if dn.shape != (self.dim(n - 1), self.dim(n)):
                raise ShapeError(
                    f"d_{n} has shape {dn.shape}, expected {(self.dim(n - 1), self.dim(n))}")
        for n in range(self.lo + 1, self.hi):
            if not (self.d(n) @ self.d(n + 1)).is_zero():
                raise NotAComplexError(f"d_{n} d_{n + 1} is not zero")

    def homology_dim(self, n: int) -> int:
        if not (self.vlo <= n <= self.vhi):
            raise WindowError(
                f"degree {n} outside the trusted window [{self.vlo}, {self.vhi}]")
        return _hdim(self.d(n + 1), self.d(n))

    def homology_dims(self, degrees=None) -> dict[int, int]:
        if degrees is None:
            degrees = range(self.vlo, self.vhi + 1)
        return {n: self.homology_dim(n) for n in degrees}

    def shift(self, k: int) -> "ChainComplexWindow":
        """Same data with degrees moved up by k."""
        return ChainComplexWindow(
            self.lo + k, self.hi + k,
            {n + k: d for n, d in self.dims.items()},
            {n + k: m for n, m in self.diffs.items()},
            self.modulus, vlo=self.vlo + k, vhi=self.vhi + k, check=False)


def truncate_stupid(c: ChainComplexWindow, n: int) -> ChainComplexWindow:
    """Drop all degrees above n. Homology at n itself is no longer trusted."""
    if n < c.lo or n > c.hi:
        raise WindowError(f"truncation degree {n} outside [{c.lo}, {c.hi}]")
    dims = {m: c.dim(m) for m in range(c.lo, n + 1)}
    diffs = {m: c.diffs[m] for m in c.diffs if m <= n}
    return ChainComplexWindow(c.lo, n, dims, diffs, c.modulus,
                              vlo=c.vlo, vhi=min(c.vhi, n - 1), check=False)


def truncate_canonical(c: ChainComplexWindow, n: int) -> ChainComplexWindow:
    """Truncate while preserving homology in degrees <= n.

    Degree n is replaced by the quotient of C_n by the incoming boundaries,
    so the truncated complex computes the same homology up to and including
    degree n and nothing above.
    """
    if n < c.lo or n > c.hi:
        raise WindowError(f"truncation degree {n} outside [{c.lo}, {c.hi}]")
    if n > c.vhi:
        raise WindowError(
            f"canonical truncation at {n} needs trusted homology there "
            f"(window ends at {c.vhi})")
    p = c.modulus
    d_in = c.d(n + 1)
    image = d_in.to_dense().T % p
    rref, pivots = _dense_rref(image, p)
    pivot_set = set(pivots)
    free = [j for j in range(c.dim(n)) if j not in pivot_set]
    proj = np.zeros((len(free), c.dim(n)), dtype=np.int64)
    for row, j in enumerate(free):
        proj[row, j] = 1
        for r, col in enumerate(pivots):
            proj[row, col] = (-int(rref[r, j])) % p
    section = np.zeros((c.dim(n), len(free)), dtype=np.int64)
    for row, j in enumerate(free):
        section[j, row] = 1
    dims = {m: c.dim(m) for m in range(c.lo, n)}
    dims[n] = len(free)
    diffs = {m: c.diffs[m] for m in c.diffs if m < n}
    if n > c.lo:
        diffs[n] = c.d(n) @ ModMatrix.from_dense(section, p)
    return ChainComplexWindow(c.lo, n, dims, diffs, p,
                              vlo=c.vlo, vhi=n, check=False)


class BicomplexWindow:
    """First-quadrant bicomplex on x in [0, X], y in [0, Y].

    d_v[(x, y)] maps (x, y) -> (x, y - 1) and d_h[(x, y)] maps
    (x, y) -> (x - 1, y); both are stored with every sign already applied,
    so rows, columns and the anticommutation of each square are checked
    literally. sign_tag records which convention produced the signs.
    complete_x / complete_y assert that the true object vanishes beyond the
    window in that direction, which widens the trusted degree range of the
    totalization.
    """

    def __init__(self, X: int, Y: int, dims: dict[tuple[int, int], int],
                 d_v: dict[tuple[int, int], ModMatrix],
                 d_h: dict[tuple[int, int], ModMatrix],
                 modulus: int, sign_tag: str,
                 complete_x: bool = False, complete_y: bool = False,
                 check: bool = True):
        self.X = X
        self.Y = Y
        self.modulus = modulus
        self.sign_tag = sign_tag
        self.complete_x = complete_x
        self.complete_y = complete_y
        self.dims = {(x, y): int(dims.get((x, y), 0))
                     for x in range(X + 1) for y in range(Y + 1)}
        self.d_v = dict(d_v)
        self.d_h = dict(d_h)
        if check:
            self.check_squares()

    def dim(self, x: int, y: int) -> int:
        return self.dims.get((x, y), 0)

    def dv(self, x: int, y: int) -> ModMatrix:
        got = self.d_v.get((x, y))
        if got is not None:
            return got
        return ModMatrix.zeros(self.dim(x, y - 1), self.dim(x, y), self.modulus)

    def dh(self, x: int, y: int) -> ModMatrix:
        got = self.d_h.get((x, y))
        if got is not None:
            return got
        return ModMatrix.zeros(self.dim(x - 1, y), self.dim(x, y), self.modulus)

    def check_squares(self) -> None:
        for (x, y), mat in self.d_v.items():
            want = (self.dim(x, y - 1), self.dim(x, y))
            if mat.shape != want:
                raise ShapeError(f"d_v at {(x, y)} has shape {mat.shape}, expected {want}")
        for (x, y), mat in self.d_h.items():
            want = (self.dim(x - 1, y), self.dim(x, y))
            if mat.shape != want:
                raise ShapeError(f"d_h at {(x, y)} has shape {mat.shape}, expected {want}")
        for x in range(self.X + 1):
            for y in range(self.Y + 1):
                if y >= 2 and not (self.dv(x, y - 1) @ self.dv(x, y)).is_zero():
                    raise NotAComplexError(f"vertical square fails at {(x, y)}")
                if x >= 2 and not (self.dh(x - 1, y) @ self.dh(x, y)).is_zero():
                    raise NotAComplexError(f"horizontal square fails at {(x, y)}")
                if x >= 1 and y >= 1:
                    anti = self.dv(x - 1, y) @ self.dh(x, y) + self.dh(x, y - 1) @ self.dv(x, y)
                    if not anti.is_zero():
                        raise NotAComplexError(f"square at {(x, y)} does not anticommute")

    def total_degree_bound(self) -> int:
        return self.X + self.Y

    def trusted_upper(self) -> int:
        top = self.X + self.Y
        limit_x = top if self.complete_x else self.X - 1
        limit_y = top if self.complete_y else self.Y - 1
        return min(limit_x, limit_y, top)

    def total_complex(self) -> tuple[ChainComplexWindow, dict[int, list[tuple[int, int, int, int]]]]:
        """Totalize; returns the chain window plus per-degree block tables.

        blocks[n] lists (x, y, offset, dim) for the cells on the
        antidiagonal x + y = n, in increasing x.
        """
        top = self.X + self.Y
        blocks: dict[int, list[tuple[int, int, int, int]]] = {}
        tot_dims: dict[int, int] = {}
        for n in range(top + 1):
            table = []
            offset = 0
            for x in range(max(0, n - self.Y), min(self.X, n) + 1):
                y = n - x
                d = self.dim(x, y)
                table.append((x, y, offset, d))
                offset += d
            blocks[n] = table
            tot_dims[n] = offset
        diffs: dict[int, ModMatrix] = {}
        for n in range(1, top + 1):
            target_offsets = {(x, y): off for x, y, off, _ in blocks[n - 1]}
            rows_list, cols_list, vals_list = [], [], []
            for x, y, off, d in blocks[n]:
                if d == 0:
                    continue
                for mat, tgt in ((self.dv(x, y), (x, y - 1)), (self.dh(x, y), (x - 1, y))):
                    if tgt not in target_offsets or mat.nnz == 0:
                        continue
                    coo = mat.csc().tocoo()
                    rows_list.append(coo.row + target_offsets[tgt])
                    cols_list.append(coo.col + off)
                    vals_list.append(coo.data)
            if rows_list:
                rows = np.concatenate(rows_list)
                cols = np.concatenate(cols_list)
                vals = np.concatenate(vals_list)
            else:
                rows = cols = vals = np.zeros(0, dtype=np.int64)
            diffs[n] = ModMatrix.from_arrays(
                (tot_dims[n - 1], tot_dims[n]), self.modulus, rows, cols, vals)
        tot = ChainComplexWindow(0, top, tot_dims, diffs, self.modulus,
                                 vlo=0, vhi=self.trusted_upper(), check=False)
        return tot, blocks


class IncreasingFiltration:
    """Coordinate-mask filtration of a chain window.

    masks[l][n] is a boolean array over the degree-n basis. Levels form a
    contiguous range; below the bottom the filtration is empty, from the
    top on it is everything. Nesting and the subcomplex property are
    verified on construction.
    """

    def __init__(self, carrier: ChainComplexWindow,
                 masks: dict[int, dict[int, np.ndarray]], check: bool = True):
        if not masks:
            raise ShapeError("filtration needs at least one level")
        self.carrier = carrier
        self.levels = sorted(masks)
        self.masks = {
            l: {n: np.asarray(masks[l].get(n, np.zeros(carrier.dim(n), dtype=bool)),
                              dtype=bool)
                for n in range(carrier.lo, carrier.hi + 1)}
            for l in self.levels
        }
        if check:
            self.check()

    def mask(self, l: int, n: int) -> np.ndarray:
        if n < self.carrier.lo or n > self.carrier.hi:
            return np.zeros(0, dtype=bool)
        if l < self.levels[0]:
            return np.zeros(self.carrier.dim(n), dtype=bool)
        if l > self.levels[-1]:
            return np.ones(self.carrier.dim(n), dtype=bool)
        return self.masks[l][n]

    def check(self) -> None:
        c = self.carrier
        for n in range(c.lo, c.hi + 1):
            for l in self.levels:
                if self.masks[l][n].shape != (c.dim(n),):
                    raise ShapeError(f"mask at level {l}, degree {n} has the wrong length")
            for l in self.levels[:-1]:
                if np.any(self.masks[l][n] & ~self.masks[l + 1][n]):
                    raise ShapeError(f"filtration not nested at level {l}, degree {n}")
            if not np.all(self.masks[self.levels[-1]][n]):
                raise ShapeError(f"top level is not everything in degree {n}")
        for n in range(c.lo + 1, c.hi + 1):
            dmat = c.d(n)
            for l in self.levels:
                sub = dmat.restrict(rows=~self.mask(l, n - 1), cols=self.mask(l, n))
                if not sub.is_zero():
                    raise NotAComplexError(
                        f"differential leaves level {l} at degree {n}")


def filtration_by_columns(bicx: BicomplexWindow) -> tuple[ChainComplexWindow,
                                                          dict[int, list[tuple[int, int, int, int]]],
                                                          IncreasingFiltration]:
    """Totalize and filter by horizontal position: level l keeps cells x <= l.

    Both differentials only lower or preserve x, so each level is a
    subcomplex; the associated graded of level l is column l.
    """
    tot, blocks = bicx.total_complex()
    masks: dict[int, dict[int, np.ndarray]] = {}
    for l in range(bicx.X + 1):
        level = {}
        for n in range(tot.lo, tot.hi + 1):
            m = np.zeros(tot.dim(n), dtype=bool)
            for x, y, off, d in blocks[n]:
                if x <= l:
                    m[off:off + d] = True
            level[n] = m
        masks[l] = level
    filt = IncreasingFiltration(tot, masks, check=False)
    return tot, blocks, filt
