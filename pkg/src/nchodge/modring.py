"""Exact linear algebra mod p and mod p**2.

Matrices carry their modulus and store entries as int64 in scipy sparse
column format. Rank, kernel, solving and homology dimensions are computed
by exact Gaussian elimination: a sparse column-reduction pass (columns
processed by increasing support, pivot rows chosen deterministically) with
a dense numpy elimination path for small matrices and as a fallback when
fill-in passes a density threshold. No floating point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np
from scipy import sparse as sp

from .errors import ModulusError, NotAComplexError, ResourceError, ShapeError

# dense elimination is used outright below this entry count
DENSE_SMALL = 1 << 12
# dense elimination is allowed as a path or fallback up to this entry count
DENSE_ENTRY_LIMIT = 1 << 21
# fill fraction beyond which sparse elimination restarts densely
FILL_THRESHOLD = 0.25
# refuse accidental huge densification
TO_DENSE_LIMIT = 1 << 24


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def split_modulus(m: int) -> tuple[int, int]:
    """Return (p, k) with m = p**k, k in {1, 2} and p prime."""
    if is_prime(m):
        return m, 1
    r = int(np.sqrt(float(m)))
    for cand in (r - 1, r, r + 1):
        if cand >= 2 and cand * cand == m and is_prime(cand):
            return cand, 2
    raise ModulusError(f"modulus {m} is not a prime or a prime square")


@dataclass(frozen=True)
class ResidueScalar:
    """An integer residue carrying its modulus (a prime or a prime square)."""

    value: int
    modulus: int

    def __post_init__(self):
        split_modulus(self.modulus)
        object.__setattr__(self, "value", self.value % self.modulus)

    def _join(self, other: "ResidueScalar | int") -> int:
        if isinstance(other, ResidueScalar):
            if other.modulus != self.modulus:
                raise ModulusError(f"moduli differ: {self.modulus} vs {other.modulus}")
            return other.value
        return int(other) % self.modulus

    def __add__(self, other):
        return ResidueScalar((self.value + self._join(other)) % self.modulus, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        return ResidueScalar((self.value - self._join(other)) % self.modulus, self.modulus)

    def __mul__(self, other):
        return ResidueScalar((self.value * self._join(other)) % self.modulus, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return ResidueScalar((-self.value) % self.modulus, self.modulus)

    def inverse(self) -> "ResidueScalar":
        p, _ = split_modulus(self.modulus)
        if self.value % p == 0:
            raise ModulusError(f"{self.value} is not a unit mod {self.modulus}")
        return ResidueScalar(pow(self.value, -1, self.modulus), self.modulus)

    def is_unit(self) -> bool:
        p, _ = split_modulus(self.modulus)
        return self.value % p != 0


def _reduced(mat: sp.csc_matrix, modulus: int) -> sp.csc_matrix:
    mat = mat.tocsc()
    if mat.dtype != np.int64:
        mat = mat.astype(np.int64)
    mat.data %= modulus
    mat.eliminate_zeros()
    mat.sort_indices()
    return mat


class ModMatrix:
    """A matrix of residues mod a prime or prime square."""

    __slots__ = ("shape", "modulus", "_csc")

    def __init__(self, shape: tuple[int, int], modulus: int, csc: sp.csc_matrix):
        split_modulus(modulus)
        rows, cols = shape
        if rows < 0 or cols < 0:
            raise ShapeError(f"bad shape {shape}")
        if csc.shape != (rows, cols):
            raise ShapeError(f"data shape {csc.shape} does not match {shape}")
        self.shape = (int(rows), int(cols))
        self.modulus = int(modulus)
        self._csc = _reduced(csc, modulus)

    # ---------------- constructors ----------------

    @classmethod
    def zeros(cls, rows: int, cols: int, modulus: int) -> "ModMatrix":
        return cls((rows, cols), modulus, sp.csc_matrix((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, n: int, modulus: int) -> "ModMatrix":
        return cls((n, n), modulus, sp.identity(n, dtype=np.int64, format="csc"))

    @classmethod
    def from_entries(cls, shape: tuple[int, int], modulus: int,
                     entries: Iterable[tuple[int, int, int]]) -> "ModMatrix":
        rows, cols, vals = [], [], []
        for i, j, v in entries:
            rows.append(i)
            cols.append(j)
            vals.append(v.value if isinstance(v, ResidueScalar) else int(v))
        coo = sp.coo_matrix((np.asarray(vals, dtype=np.int64),
                             (np.asarray(rows, dtype=np.int64),
                              np.asarray(cols, dtype=np.int64))),
                            shape=shape)
        coo.sum_duplicates()
        return cls(shape, modulus, coo.tocsc())

    @classmethod
    def from_arrays(cls, shape: tuple[int, int], modulus: int,
                    rows: np.ndarray, cols: np.ndarray, vals: np.ndarray) -> "ModMatrix":
        coo = sp.coo_matrix((np.asarray(vals, dtype=np.int64),
                             (np.asarray(rows), np.asarray(cols))), shape=shape)
        coo.sum_duplicates()
        return cls(shape, modulus, coo.tocsc())

    @classmethod
    def from_dense(cls, arr, modulus: int) -> "ModMatrix":
        a = np.asarray(arr, dtype=np.int64)
        if a.ndim != 2:
            raise ShapeError("dense input must be 2-dimensional")
        return cls(a.shape, modulus, sp.csc_matrix(a % modulus))

    @classmethod
    def from_index_map(cls, rows_for_col: np.ndarray, n_rows: int, modulus: int,
                       vals: np.ndarray | None = None) -> "ModMatrix":
        """Column j carries a single entry at row rows_for_col[j]."""
        rows_for_col = np.asarray(rows_for_col, dtype=np.int64)
        n_cols = rows_for_col.shape[0]
        if vals is None:
            vals = np.ones(n_cols, dtype=np.int64)
        cols = np.arange(n_cols, dtype=np.int64)
        return cls.from_arrays((n_rows, n_cols), modulus, rows_for_col, cols, vals)

    # ---------------- basic queries ----------------

    @property
    def nnz(self) -> int:
        return int(self._csc.nnz)

    @property
    def density(self) -> float:
        area = self.shape[0] * self.shape[1]
        return self.nnz / area if area else 0.0

    def csc(self) -> sp.csc_matrix:
        return self._csc

    def to_dense(self) -> np.ndarray:
        if self.shape[0] * self.shape[1] > TO_DENSE_LIMIT:
            raise ResourceError(
                f"refusing to densify a {self.shape} matrix",
                estimate=self.shape[0] * self.shape[1], cap=TO_DENSE_LIMIT)
        return np.asarray(self._csc.todense(), dtype=np.int64)

    def entries(self) -> Iterator[tuple[int, int, int]]:
        coo = self._csc.tocoo()
        for i, j, v in zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist()):
            yield i, j, v

    def column(self, j: int) -> dict[int, int]:
        sl = slice(self._csc.indptr[j], self._csc.indptr[j + 1])
        return dict(zip(self._csc.indices[sl].tolist(), self._csc.data[sl].tolist()))

    def is_zero(self) -> bool:
        return self.nnz == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModMatrix):
            return NotImplemented
        if self.shape != other.shape or self.modulus != other.modulus:
            return False
        return (self._csc - other._csc).nnz == 0

    __hash__ = None

    def __repr__(self) -> str:
        return f"ModMatrix(shape={self.shape}, mod {self.modulus}, nnz={self.nnz})"

    # ---------------- arithmetic ----------------

    def _join(self, other: "ModMatrix") -> None:
        if not isinstance(other, ModMatrix):
            raise TypeError(f"expected ModMatrix, got {type(other).__name__}")
        if other.modulus != self.modulus:
            raise ModulusError(f"moduli differ: {self.modulus} vs {other.modulus}")

    def __matmul__(self, other: "ModMatrix") -> "ModMatrix":
        self._join(other)
        if self.shape[1] != other.shape[0]:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        prod = self._csc @ other._csc
        return ModMatrix((self.shape[0], other.shape[1]), self.modulus, prod.tocsc())

    def __add__(self, other: "ModMatrix") -> "ModMatrix":
        self._join(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return ModMatrix(self.shape, self.modulus, (self._csc + other._csc).tocsc())

    def __sub__(self, other: "ModMatrix") -> "ModMatrix":
        self._join(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract {self.shape} and {other.shape}")
        return ModMatrix(self.shape, self.modulus, (self._csc - other._csc).tocsc())

    def __neg__(self) -> "ModMatrix":
        return self.scale(-1)

    def scale(self, k: int) -> "ModMatrix":
        k = k.value if isinstance(k, ResidueScalar) else int(k)
        out = self._csc.copy()
        out.data = out.data * (k % self.modulus)
        return ModMatrix(self.shape, self.modulus, out)

    def transpose(self) -> "ModMatrix":
        return ModMatrix((self.shape[1], self.shape[0]), self.modulus,
                         self._csc.transpose().tocsc())

    @property
    def T(self) -> "ModMatrix":
        return self.transpose()

    def matpow(self, k: int) -> "ModMatrix":
        if self.shape[0] != self.shape[1]:
            raise ShapeError("matrix power needs a square matrix")
        out = ModMatrix.identity(self.shape[0], self.modulus)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base if k > 1 else base
            k >>= 1
        return out

    def restrict(self, rows: np.ndarray | None = None,
                 cols: np.ndarray | None = None) -> "ModMatrix":
        """Submatrix on the given index arrays (or boolean masks)."""
        mat = self._csc
        if rows is not None:
            rows = np.asarray(rows)
            if rows.dtype == bool:
                rows = np.nonzero(rows)[0]
            mat = mat[rows, :]
        if cols is not None:
            cols = np.asarray(cols)
            if cols.dtype == bool:
                cols = np.nonzero(cols)[0]
            mat = mat[:, cols]
        return ModMatrix(mat.shape, self.modulus, mat.tocsc())


def hstack(mats: Sequence[ModMatrix]) -> ModMatrix:
    if not mats:
        raise ShapeError("hstack of nothing")
    m = mats[0].modulus
    for mm in mats:
        if mm.modulus != m:
            raise ModulusError("hstack with mixed moduli")
    out = sp.hstack([mm.csc() for mm in mats], format="csc")
    return ModMatrix(out.shape, m, out)


def vstack(mats: Sequence[ModMatrix]) -> ModMatrix:
    if not mats:
        raise ShapeError("vstack of nothing")
    m = mats[0].modulus
    for mm in mats:
        if mm.modulus != m:
            raise ModulusError("vstack with mixed moduli")
    out = sp.vstack([mm.csc() for mm in mats], format="csc")
    return ModMatrix(out.shape, m, out)


def block(rows: Sequence[Sequence[ModMatrix | None]], modulus: int) -> ModMatrix:
    """Block matrix; None blocks are zero (shapes inferred from neighbors)."""
    grid = [[b.csc() if b is not None else None for b in row] for row in rows]
    out = sp.bmat(grid, format="csc", dtype=np.int64)
    return ModMatrix(out.shape, modulus, out)


# ---------------- dense elimination ----------------

def _dense_rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p. Returns (rref, pivot column list)."""
    a = np.array(a, dtype=np.int64) % p
    m, n = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        if inv != 1:
            a[r] = a[r] * inv % p
        col = a[:, c].copy()
        col[r] = 0
        nzcol = np.nonzero(col)[0]
        if nzcol.size:
            a[nzcol] = (a[nzcol] - np.outer(col[nzcol], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def _dense_kernel(a: np.ndarray, p: int) -> np.ndarray:
    """Column basis of the right kernel mod p, one column per free variable."""
    rref, pivots = _dense_rref(a, p)
    n = a.shape[1]
    free = [j for j in range(n) if j not in set(pivots)]
    out = np.zeros((n, len(free)), dtype=np.int64)
    for k, j in enumerate(free):
        out[j, k] = 1
        for r, c in enumerate(pivots):
            out[c, k] = (-int(rref[r, j])) % p
    return out


# ---------------- sparse elimination ----------------

class _DenseRestart(Exception):
    pass


def _columns_of(csc: sp.csc_matrix) -> list[dict[int, int]]:
    cols = []
    indptr, indices, data = csc.indptr, csc.indices, csc.data
    for j in range(csc.shape[1]):
        sl = slice(indptr[j], indptr[j + 1])
        cols.append(dict(zip(indices[sl].tolist(), data[sl].tolist())))
    return cols


def _column_reduce(cols: list[dict[int, int]], p: int, shape: tuple[int, int],
                   track: bool = False, fill_guard: bool = True):
    """Persistence-style column reduction mod p.

    Columns are processed by increasing support size (a cheap stand-in for
    Markowitz pivoting); within a column the pivot row is the largest
    remaining row index, which makes the reduction deterministic. Returns
    (rank, pivots, zero_combos) where zero_combos lists, for each column
    that reduced to zero, the combination of original columns producing it
    (only when track=True).
    """
    area = shape[0] * shape[1]
    allow_restart = fill_guard and 0 < area <= DENSE_ENTRY_LIMIT
    order = sorted(range(len(cols)), key=lambda j: (len(cols[j]), j))
    pivots: dict[int, tuple[dict[int, int], dict[int, int] | None]] = {}
    zero_combos: list[dict[int, int]] = []
    rank = 0
    fill = 0
    for j in order:
        c = dict(cols[j])
        combo = {j: 1} if track else None
        while c:
            r = max(c)
            hit = pivots.get(r)
            if hit is None:
                inv = pow(c[r], p - 2, p)
                col = {rr: vv * inv % p for rr, vv in c.items()} if inv != 1 else c
                comb = None
                if track:
                    comb = {jj: vv * inv % p for jj, vv in combo.items()}
                pivots[r] = (col, comb)
                rank += 1
                fill += len(col)
                if allow_restart and fill > FILL_THRESHOLD * area:
                    raise _DenseRestart
                break
            pc, _ = hit
            f = c.pop(r)
            for rr, vv in pc.items():
                if rr == r:
                    continue
                nv = (c.get(rr, 0) - f * vv) % p
                if nv:
                    c[rr] = nv
                else:
                    c.pop(rr, None)
            if track:
                pcomb = hit[1]
                for jj, vv in pcomb.items():
                    nv = (combo.get(jj, 0) - f * vv) % p
                    if nv:
                        combo[jj] = nv
                    else:
                        combo.pop(jj, None)
        else:
            if track:
                zero_combos.append(combo)
    return rank, pivots, zero_combos


def _prime_of(mat: ModMatrix) -> int:
    p, k = split_modulus(mat.modulus)
    if k != 1:
        raise ModulusError("this operation requires a prime modulus")
    return p


def rank_fp(mat: ModMatrix) -> int:
    """Rank over F_p, exact."""
    p = _prime_of(mat)
    rows, cols = mat.shape
    if rows == 0 or cols == 0 or mat.nnz == 0:
        return 0
    area = rows * cols
    csc = mat.csc()
    # orient so that the reduction walks the smaller list of vectors
    if cols > rows:
        csc = csc.transpose().tocsc()
        rows, cols = cols, rows
    if area <= DENSE_SMALL or (area <= DENSE_ENTRY_LIMIT and mat.density >= FILL_THRESHOLD):
        return len(_dense_rref(np.asarray(csc.todense()), p)[1])
    try:
        rank, _, _ = _column_reduce(_columns_of(csc), p, (rows, cols), track=False)
    except _DenseRestart:
        return len(_dense_rref(np.asarray(csc.todense()), p)[1])
    return rank


def kernel_basis_fp(mat: ModMatrix) -> ModMatrix:
    """Matrix whose columns are a basis of the right kernel over F_p."""
    p = _prime_of(mat)
    rows, cols = mat.shape
    if cols == 0:
        return ModMatrix.zeros(0, 0, mat.modulus)
    if rows == 0 or mat.nnz == 0:
        return ModMatrix.identity(cols, mat.modulus)
    area = rows * cols
    if area <= DENSE_ENTRY_LIMIT:
        ker = _dense_kernel(mat.to_dense(), p)
        return ModMatrix.from_dense(ker, p)
    _, _, combos = _column_reduce(_columns_of(mat.csc()), p, (rows, cols),
                                  track=True, fill_guard=False)
    entries = []
    for k, combo in enumerate(combos):
        for j, v in combo.items():
            entries.append((j, k, v))
    return ModMatrix.from_entries((cols, len(combos)), p, entries)


def solve_fp(a: ModMatrix, b: ModMatrix) -> ModMatrix | None:
    """A particular solution X of a @ X = b over F_p, or None if inconsistent."""
    p = _prime_of(a)
    a._join(b)
    if a.shape[0] != b.shape[0]:
        raise ShapeError(f"solve with mismatched row counts {a.shape} vs {b.shape}")
    n, k = a.shape[1], b.shape[1]
    area = a.shape[0] * (n + k)
    if area > DENSE_ENTRY_LIMIT:
        return _solve_fp_sparse(a, b, p)
    aug = np.concatenate([a.to_dense(), b.to_dense()], axis=1)
    rref, pivots = _dense_rref(aug, p)
    if any(c >= n for c in pivots):
        return None
    x = np.zeros((n, k), dtype=np.int64)
    for r, c in enumerate(pivots):
        x[c] = rref[r, n:]
    return ModMatrix.from_dense(x, p)


def _solve_fp_sparse(a: ModMatrix, b: ModMatrix, p: int) -> ModMatrix | None:
    cols = _columns_of(a.csc())
    _, pivots, _ = _column_reduce(cols, p, a.shape, track=True, fill_guard=False)
    n = a.shape[1]
    out_entries = []
    for jb in range(b.shape[1]):
        c = b.column(jb)
        combo: dict[int, int] = {}
        while c:
            r = max(c)
            hit = pivots.get(r)
            if hit is None:
                return None
            pc, pcomb = hit
            f = c.pop(r)
            for rr, vv in pc.items():
                if rr == r:
                    continue
                nv = (c.get(rr, 0) - f * vv) % p
                if nv:
                    c[rr] = nv
                else:
                    c.pop(rr, None)
            for jj, vv in pcomb.items():
                nv = (combo.get(jj, 0) + f * vv) % p
                if nv:
                    combo[jj] = nv
                else:
                    combo.pop(jj, None)
        for jj, vv in combo.items():
            out_entries.append((jj, jb, vv))
    return ModMatrix.from_entries((n, b.shape[1]), p, out_entries)


def homology_dim(d_in: ModMatrix, d_out: ModMatrix) -> int:
    """dim ker(d_out) - rank(d_in) for consecutive differentials.

    d_out maps the middle degree down, d_in maps into the middle degree.
    Raises NotAComplexError unless d_out @ d_in = 0.
    """
    if d_in.modulus != d_out.modulus:
        raise ModulusError("differentials with different moduli")
    _prime_of(d_out)
    if d_out.shape[1] != d_in.shape[0]:
        raise ShapeError(
            f"middle dimension mismatch: d_out has {d_out.shape[1]} columns, "
            f"d_in has {d_in.shape[0]} rows")
    if not (d_out @ d_in).is_zero():
        raise NotAComplexError("d_out @ d_in is not zero")
    dim = d_out.shape[1] - rank_fp(d_out) - rank_fp(d_in)
    if dim < 0:
        raise NotAComplexError("negative homology dimension; ranks inconsistent")
    return dim


def induced_map_rank(f: ModMatrix, d_dom: ModMatrix, d_cod_in: ModMatrix) -> int:
    """Rank of the map induced on homology by f in a fixed degree.

    f sends cycles to cycles and boundaries to boundaries; d_dom is the
    outgoing differential on the domain degree, d_cod_in the incoming
    differential on the codomain degree. Uses the identity
    rank = rank [[f, d_cod_in], [d_dom, 0]] - rank d_dom - rank d_cod_in,
    which needs no explicit kernel bases.
    """
    if f.shape[1] != d_dom.shape[1]:
        raise ShapeError("f and d_dom must share their domain")
    if f.shape[0] != d_cod_in.shape[0]:
        raise ShapeError("f and d_cod_in must share their codomain")
    m = f.modulus
    big = block([[f, d_cod_in], [d_dom, None]], m)
    r = rank_fp(big) - rank_fp(d_dom) - rank_fp(d_cod_in)
    if r < 0:
        raise NotAComplexError("induced rank came out negative")
    return r


def elementary_divisor_counts_zp2(mat: ModMatrix) -> tuple[int, int, int]:
    """Counts (n0, n1, n2) of elementary divisors 1, p, p**2 (zero) mod p**2.

    n0 + n1 + n2 = min(shape); n2 counts the padding divisors, so a zero
    matrix reports (0, 0, min(shape)).
    """
    p, power = split_modulus(mat.modulus)
    if power != 2:
        raise ModulusError("elementary divisors are computed mod p**2")
    q = p * p
    a = mat.to_dense() % q
    rows, cols = a.shape
    act_r = np.ones(rows, dtype=bool)
    act_c = np.ones(cols, dtype=bool)
    n0 = 0
    while True:
        sub = a[np.ix_(act_r, act_c)]
        units = np.argwhere(sub % p != 0)
        if units.size == 0:
            break
        ri = np.nonzero(act_r)[0][units[0][0]]
        cj = np.nonzero(act_c)[0][units[0][1]]
        inv = pow(int(a[ri, cj]), -1, q)
        a[ri] = a[ri] * inv % q
        col = a[:, cj].copy()
        col[ri] = 0
        for r in np.nonzero(col)[0]:
            if act_r[r]:
                a[r] = (a[r] - col[r] * a[ri]) % q
        row = a[ri].copy()
        row[cj] = 0
        for c in np.nonzero(row)[0]:
            if act_c[c]:
                a[:, c] = (a[:, c] - row[c] * a[:, cj]) % q
        act_r[ri] = False
        act_c[cj] = False
        n0 += 1
    sub = a[np.ix_(act_r, act_c)]
    if sub.size:
        e = (sub // p) % p
        n1 = len(_dense_rref(e, p)[1])
    else:
        n1 = 0
    n2 = min(rows, cols) - n0 - n1
    return n0, n1, n2
