"""Hochschild and cyclic homology of a structure constant algebra.

The cyclic object has level n equal to the (n+1)-fold tensor power of A
on the monomial basis, with faces multiplying adjacent factors (the last
face wraps around), degeneracies inserting the unit, and the signed
rotation as cyclic operator. All operators are assembled as sparse
matrices by direct index arithmetic on base-d digit strings, so levels
with millions of monomials stay cheap as long as products have few terms.

From these come the b and b' complexes, the Connes operator B, the mixed
(b, B) bicomplex whose totalization computes cyclic homology, the
two-column periodic bicomplex built from (1 - t) and the cyclic norm, the
SBI rank bookkeeping, and the Hodge filtration report.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import StructureConstantsAlgebra
from .complexes import BicomplexWindow, ChainComplexWindow, filtration_by_columns
from .conventions import SIGN_CONVENTION, cyclic_sign, face_sign
from .errors import ModulusError, NotAComplexError, ResourceError, ShapeError, WindowError
from .modring import ModMatrix, induced_map_rank

DEFAULT_ENTRY_CAP = 1 << 24


# ---------------- raw operator matrices ----------------

def face_matrix(a: StructureConstantsAlgebra, m: int, i: int) -> ModMatrix:
    """Face i at simplicial level m: A tensor (m+1) -> A tensor m."""
    d = a.dim
    if not (1 <= m and 0 <= i <= m):
        raise ShapeError(f"face ({m}, {i}) out of range")
    size_in = d ** (m + 1)
    size_out = d ** m
    rows_l, cols_l, vals_l = [], [], []
    if i < m:
        lo = d ** i
        hi = d ** (m - 1 - i)
        lo_idx = np.arange(lo, dtype=np.int64)
        hi_idx = np.arange(hi, dtype=np.int64) if hi else np.zeros(0, dtype=np.int64)
        base_row = (lo_idx[:, None] + hi_idx[None, :] * (lo * d)).ravel()
        base_col = (lo_idx[:, None] + hi_idx[None, :] * (lo * d * d)).ravel()
        for (x, y), terms in _product_terms(a):
            for k, v in terms:
                rows_l.append(base_row + k * lo)
                cols_l.append(base_col + x * lo + y * (lo * d))
                vals_l.append(np.full(base_row.shape[0], v, dtype=np.int64))
    else:
        mid = np.arange(d ** (m - 1), dtype=np.int64)
        for (x, y), terms in _product_terms(a):
            for k, v in terms:
                rows_l.append(k + mid * d)
                cols_l.append(y + mid * d + x * d ** m)
                vals_l.append(np.full(mid.shape[0], v, dtype=np.int64))
    if rows_l:
        rows = np.concatenate(rows_l)
        cols = np.concatenate(cols_l)
        vals = np.concatenate(vals_l)
    else:
        rows = cols = vals = np.zeros(0, dtype=np.int64)
    return ModMatrix.from_arrays((size_out, size_in), a.modulus, rows, cols, vals)


def _product_terms(a: StructureConstantsAlgebra):
    nz = np.argwhere(a.constants != 0)
    table: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for i, j, k in nz:
        table.setdefault((int(i), int(j)), []).append(
            (int(k), int(a.constants[i, j, k])))
    return table.items()


def degeneracy_matrix(a: StructureConstantsAlgebra, m: int, i: int) -> ModMatrix:
    """Degeneracy i at level m: insert the unit after slot i."""
    d = a.dim
    if not (0 <= i <= m):
        raise ShapeError(f"degeneracy ({m}, {i}) out of range")
    size_in = d ** (m + 1)
    size_out = d ** (m + 2)
    lo = d ** (i + 1)
    hi = d ** (m - i)
    lo_idx = np.arange(lo, dtype=np.int64)
    hi_idx = np.arange(hi, dtype=np.int64)
    base_col = (lo_idx[:, None] + hi_idx[None, :] * lo).ravel()
    base_row = (lo_idx[:, None] + hi_idx[None, :] * (lo * d)).ravel()
    rows_l, cols_l, vals_l = [], [], []
    for k in np.nonzero(a.unit)[0]:
        rows_l.append(base_row + int(k) * lo)
        cols_l.append(base_col)
        vals_l.append(np.full(base_col.shape[0], int(a.unit[k]), dtype=np.int64))
    rows = np.concatenate(rows_l)
    cols = np.concatenate(cols_l)
    vals = np.concatenate(vals_l)
    return ModMatrix.from_arrays((size_out, size_in), a.modulus, rows, cols, vals)


def extra_degeneracy_matrix(a: StructureConstantsAlgebra, m: int) -> ModMatrix:
    """x -> 1 (x) x at level m."""
    d = a.dim
    size_in = d ** (m + 1)
    cols = np.arange(size_in, dtype=np.int64)
    rows_l, cols_l, vals_l = [], [], []
    for k in np.nonzero(a.unit)[0]:
        rows_l.append(int(k) + cols * d)
        cols_l.append(cols)
        vals_l.append(np.full(size_in, int(a.unit[k]), dtype=np.int64))
    return ModMatrix.from_arrays((size_in * d, size_in), a.modulus,
                                 np.concatenate(rows_l), np.concatenate(cols_l),
                                 np.concatenate(vals_l))


def rotation_matrix(dim: int, m: int, modulus: int) -> ModMatrix:
    """Unsigned rotation at level m: last factor moves to the front."""
    size = dim ** (m + 1)
    cols = np.arange(size, dtype=np.int64)
    stride = dim ** m
    rows = cols // stride + (cols % stride) * dim
    return ModMatrix.from_index_map(rows, size, modulus)


def block_rotation_matrix(dim: int, length: int, blocksize: int, modulus: int) -> ModMatrix:
    """Rotation of `length` digits by a whole block of `blocksize` digits."""
    if length % blocksize:
        raise ShapeError("block size must divide the word length")
    size = dim ** length
    cols = np.arange(size, dtype=np.int64)
    stride = dim ** (length - blocksize)
    rows = cols // stride + (cols % stride) * dim ** blocksize
    return ModMatrix.from_index_map(rows, size, modulus)


# ---------------- the cyclic object ----------------

def estimate_entries(a: StructureConstantsAlgebra, N: int) -> int:
    d, tbar, ubar = a.dim, a.max_terms(), int(np.count_nonzero(a.unit))
    total = 0
    for m in range(N + 1):
        total += d ** (m + 1) * ((m + 1) * (tbar + ubar) + 1)
    return total


class CyclicLevelMaps:
    """All face, degeneracy and rotation matrices through level N."""

    def __init__(self, a: StructureConstantsAlgebra, N: int,
                 cap: int | None = None):
        if N < 1:
            raise WindowError("need at least levels 0 and 1")
        if a.power != 1:
            raise ModulusError("homology pipelines run over F_p")
        cap = DEFAULT_ENTRY_CAP if cap is None else cap
        est = estimate_entries(a, N)
        if est > cap:
            raise ResourceError(
                f"cyclic object through level {N} needs about {est} entries, cap is {cap}",
                estimate=est, cap=cap)
        self.algebra = a
        self.N = N
        self.cap = cap
        self.dims = [a.dim ** (n + 1) for n in range(N + 1)]
        self._faces = {(n, i): face_matrix(a, n, i)
                       for n in range(1, N + 1) for i in range(n + 1)}
        self._degens = {(n, i): degeneracy_matrix(a, n, i)
                        for n in range(N) for i in range(n + 1)}
        self._rots = {n: rotation_matrix(a.dim, n, a.modulus) for n in range(N + 1)}
        self._extra = {n: extra_degeneracy_matrix(a, n) for n in range(N)}
        self._b: dict[int, ModMatrix] = {}
        self._bprime: dict[int, ModMatrix] = {}
        self._B: dict[int, ModMatrix] = {}
        self._norm: dict[int, ModMatrix] = {}

    def dim(self, n: int) -> int:
        return self.dims[n]

    def face(self, n: int, i: int) -> ModMatrix:
        return self._faces[(n, i)]

    def degeneracy(self, n: int, i: int) -> ModMatrix:
        return self._degens[(n, i)]

    def rho(self, n: int) -> ModMatrix:
        return self._rots[n]

    def t(self, n: int) -> ModMatrix:
        """The signed cyclic operator (-1)^n times the rotation."""
        return self._rots[n].scale(cyclic_sign(n))

    def extra_degeneracy(self, n: int) -> ModMatrix:
        return self._extra[n]

    def b(self, n: int) -> ModMatrix:
        if n == 0:
            return ModMatrix.zeros(0, self.dims[0], self.algebra.modulus)
        if n not in self._b:
            out = self.face(n, 0)
            for i in range(1, n + 1):
                out = out + self.face(n, i).scale(face_sign(i))
            self._b[n] = out
        return self._b[n]

    def bprime(self, n: int) -> ModMatrix:
        if n == 0:
            return ModMatrix.zeros(0, self.dims[0], self.algebra.modulus)
        if n not in self._bprime:
            out = self.face(n, 0)
            for i in range(1, n):
                out = out + self.face(n, i).scale(face_sign(i))
            self._bprime[n] = out
        return self._bprime[n]

    def norm(self, n: int) -> ModMatrix:
        """1 + t + ... + t**n on level n, with the signed operator."""
        if n not in self._norm:
            t = self.t(n)
            out = ModMatrix.identity(self.dims[n], self.algebra.modulus)
            acc = ModMatrix.identity(self.dims[n], self.algebra.modulus)
            for _ in range(n):
                acc = t @ acc
                out = out + acc
            self._norm[n] = out
        return self._norm[n]

    def B(self, n: int) -> ModMatrix:
        """Connes operator: (1 - t) after the extra degeneracy after the norm."""
        if n >= self.N:
            raise WindowError(f"B at level {n} needs level {n + 1} (window tops at {self.N})")
        if n not in self._B:
            one_minus_t = (ModMatrix.identity(self.dims[n + 1], self.algebra.modulus)
                           - self.t(n + 1))
            self._B[n] = one_minus_t @ self.extra_degeneracy(n) @ self.norm(n)
        return self._B[n]

    # ---------------- self checks ----------------

    def verify_identities(self, through: int | None = None) -> list[str]:
        """Simplicial, cyclic and differential identities, as failure strings."""
        top = self.N if through is None else min(through, self.N)
        bad: list[str] = []
        for n in range(2, top + 1):
            for j in range(1, n + 1):
                for i in range(j):
                    lhs = self.face(n - 1, i) @ self.face(n, j)
                    rhs = self.face(n - 1, j - 1) @ self.face(n, i)
                    if lhs != rhs:
                        bad.append(f"face relation fails at n={n}, i={i}, j={j}")
        for n in range(top - 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    lhs = self.degeneracy(n + 1, i) @ self.degeneracy(n, j)
                    rhs = self.degeneracy(n + 1, j + 1) @ self.degeneracy(n, i)
                    if lhs != rhs:
                        bad.append(f"degeneracy relation fails at n={n}, i={i}, j={j}")
        for n in range(1, top):
            ident = ModMatrix.identity(self.dims[n], self.algebra.modulus)
            for j in range(n + 1):
                for i in range(n + 2):
                    lhs = self.face(n + 1, i) @ self.degeneracy(n, j)
                    if i == j or i == j + 1:
                        rhs = ident
                    elif i < j:
                        rhs = self.degeneracy(n - 1, j - 1) @ self.face(n, i)
                    else:
                        rhs = self.degeneracy(n - 1, j) @ self.face(n, i - 1)
                    if lhs != rhs:
                        bad.append(f"mixed relation fails at n={n}, i={i}, j={j}")
        for n in range(top + 1):
            if self.rho(n).matpow(n + 1) != ModMatrix.identity(self.dims[n], self.algebra.modulus):
                bad.append(f"rotation at level {n} does not have order {n + 1}")
        for n in range(1, top + 1):
            rho, rho_prev = self.rho(n), self.rho(n - 1)
            for i in range(1, n + 1):
                if self.face(n, i) @ rho != rho_prev @ self.face(n, i - 1):
                    bad.append(f"rotation face relation fails at n={n}, i={i}")
            if self.face(n, 0) @ rho != self.face(n, n):
                bad.append(f"wraparound rotation relation fails at n={n}")
        for n in range(2, top + 1):
            if not (self.b(n - 1) @ self.b(n)).is_zero():
                bad.append(f"b squared fails at n={n}")
            if not (self.bprime(n - 1) @ self.bprime(n)).is_zero():
                bad.append(f"b' squared fails at n={n}")
        for n in range(1, top + 1):
            ident = ModMatrix.identity(self.dims[n], self.algebra.modulus)
            lhs = self.b(n) @ (ident - self.t(n))
            prev = ModMatrix.identity(self.dims[n - 1], self.algebra.modulus)
            rhs = (prev - self.t(n - 1)) @ self.bprime(n)
            if lhs != rhs:
                bad.append(f"b (1 - t) exchange fails at n={n}")
            if self.norm(n - 1) @ self.b(n) != self.bprime(n) @ self.norm(n):
                bad.append(f"norm exchange fails at n={n}")
        for n in range(top - 1):
            if not (self.B(n + 1) @ self.B(n)).is_zero():
                bad.append(f"B squared fails at n={n}")
        for n in range(1, top):
            anti = self.b(n + 1) @ self.B(n) + self.B(n - 1) @ self.b(n)
            if not anti.is_zero():
                bad.append(f"b B + B b fails at n={n}")
        return bad


def build_cyclic_object(a: StructureConstantsAlgebra, N: int,
                        cap: int | None = None) -> CyclicLevelMaps:
    return CyclicLevelMaps(a, N, cap=cap)


def hochschild_b(cyc: CyclicLevelMaps, n: int) -> ModMatrix:
    return cyc.b(n)


def hochschild_bprime(cyc: CyclicLevelMaps, n: int) -> ModMatrix:
    return cyc.bprime(n)


def connes_B(cyc: CyclicLevelMaps, n: int) -> ModMatrix:
    return cyc.B(n)


# ---------------- complexes and dimensions ----------------

def b_complex(cyc: CyclicLevelMaps) -> ChainComplexWindow:
    dims = {n: cyc.dim(n) for n in range(cyc.N + 1)}
    diffs = {n: cyc.b(n) for n in range(1, cyc.N + 1)}
    return ChainComplexWindow(0, cyc.N, dims, diffs, cyc.algebra.modulus,
                              vlo=0, vhi=cyc.N - 1, check=False)


def bprime_complex(cyc: CyclicLevelMaps) -> ChainComplexWindow:
    dims = {n: cyc.dim(n) for n in range(cyc.N + 1)}
    diffs = {n: cyc.bprime(n) for n in range(1, cyc.N + 1)}
    return ChainComplexWindow(0, cyc.N, dims, diffs, cyc.algebra.modulus,
                              vlo=0, vhi=cyc.N - 1, check=False)


def hh_dims(a: StructureConstantsAlgebra, N: int, cap: int | None = None,
            cyc: CyclicLevelMaps | None = None) -> dict[int, int]:
    """Hochschild homology dimensions on the window [0, N-1]."""
    cyc = cyc or build_cyclic_object(a, N, cap=cap)
    return b_complex(cyc).homology_dims()


def bB_bicomplex(cyc: CyclicLevelMaps) -> BicomplexWindow:
    """The mixed bicomplex: cell (x, y) holds chains of degree y - x,
    verticals are b, horizontals are B; total degree n sums the chain
    degrees n, n-2, n-4, ...
    """
    N = cyc.N
    dims = {}
    d_v = {}
    d_h = {}
    for x in range(N + 1):
        for y in range(N + 1):
            m = y - x
            if m < 0:
                continue
            dims[(x, y)] = cyc.dim(m)
            if m >= 1:
                d_v[(x, y)] = cyc.b(m)
            if x >= 1 and m + 1 <= N:
                d_h[(x, y)] = cyc.B(m)
    return BicomplexWindow(N, N, dims, d_v, d_h, cyc.algebra.modulus,
                           sign_tag=SIGN_CONVENTION, complete_x=True,
                           complete_y=False, check=False)


def hc_total(cyc: CyclicLevelMaps):
    return bB_bicomplex(cyc).total_complex()


def hc_dims(a: StructureConstantsAlgebra, N: int, cap: int | None = None,
            cyc: CyclicLevelMaps | None = None) -> dict[int, int]:
    """Cyclic homology dimensions, reported on the window [0, N-2]."""
    if N < 2:
        raise WindowError("cyclic homology needs N >= 2")
    cyc = cyc or build_cyclic_object(a, N, cap=cap)
    tot, _ = hc_total(cyc)
    return {n: tot.homology_dim(n) for n in range(0, N - 1)}


def conn2_bicomplex(cyc: CyclicLevelMaps, L: int) -> BicomplexWindow:
    """Periodic two-column style bicomplex: even columns carry b, odd
    columns carry -b'; the horizontals alternate between 1 - t (into even
    columns) and the cyclic norm (into odd columns)."""
    N = cyc.N
    mod = cyc.algebra.modulus
    dims = {}
    d_v = {}
    d_h = {}
    for x in range(L + 1):
        for y in range(N + 1):
            dims[(x, y)] = cyc.dim(y)
            if y >= 1:
                d_v[(x, y)] = cyc.b(y) if x % 2 == 0 else -cyc.bprime(y)
            if x >= 1:
                if x % 2 == 1:
                    d_h[(x, y)] = ModMatrix.identity(cyc.dim(y), mod) - cyc.t(y)
                else:
                    d_h[(x, y)] = cyc.norm(y)
    return BicomplexWindow(L, N, dims, d_v, d_h, mod,
                           sign_tag=SIGN_CONVENTION, check=False)


def conn2_complex(a: StructureConstantsAlgebra, L: int, N: int,
                  cap: int | None = None,
                  cyc: CyclicLevelMaps | None = None) -> ChainComplexWindow:
    """Totalization of the periodic bicomplex, trusted on [0, min(L, N) - 1]."""
    cyc = cyc or build_cyclic_object(a, N, cap=cap)
    tot, _ = conn2_bicomplex(cyc, L).total_complex()
    return tot


# ---------------- SBI ----------------

@dataclass
class SBIReport:
    N: int
    degrees: list[int]
    hh: dict[int, int]
    hc: dict[int, int]
    ranks: dict[int, dict[str, int]] = field(default_factory=dict)
    spots: dict[int, dict[str, bool]] = field(default_factory=dict)
    complex_valid: bool = True
    exact: bool = False
    sign_tag: str = SIGN_CONVENTION


def sbi_check(a: StructureConstantsAlgebra, N: int, cap: int | None = None,
              _flip_B_at: int | None = None) -> SBIReport:
    """Dimension-level exactness of the inclusion/projection/connecting
    triangle relating Hochschild and cyclic homology.

    For each degree n in [2, N-1] the three checks are
      dim HC_n       = rank I_n + rank S_n,
      dim HC_{n-2}   = rank S_n + rank D_n,
      dim HH_{n-1}   = rank D_n + rank I_{n-1},
    where I includes Hochschild chains as the leftmost column, S projects
    away that column (shifting total degree by two), and D is the
    connecting map realized by B on the adjacent column. `_flip_B_at` is a
    test hook that negates one horizontal level to confirm the checker
    notices a corrupted complex.
    """
    if N < 6:
        raise WindowError("the triangle check needs at least 4 usable degrees, so N >= 6")
    cyc = build_cyclic_object(a, N, cap=cap)
    bicx = bB_bicomplex(cyc)
    if _flip_B_at is not None:
        tampered = dict(bicx.d_h)
        for (x, y) in list(tampered):
            if y - x == _flip_B_at:
                tampered[(x, y)] = -tampered[(x, y)]
        try:
            bicx = BicomplexWindow(bicx.X, bicx.Y, bicx.dims, bicx.d_v, tampered,
                                   bicx.modulus, sign_tag=bicx.sign_tag,
                                   complete_x=True, check=True)
        except NotAComplexError:
            hh = hh_dims(a, N, cyc=cyc)
            return SBIReport(N=N, degrees=[], hh=hh, hc={},
                             complex_valid=False, exact=False)
    tot, blocks = bicx.total_complex()
    hh = b_complex(cyc).homology_dims()
    hc = {n: tot.homology_dim(n) for n in range(0, N)}
    mod = cyc.algebra.modulus

    def include(n: int) -> ModMatrix:
        rows = tot.dim(n)
        table = {(x, y): off for x, y, off, _ in blocks[n]}
        off = table[(0, n)]
        cols = np.arange(cyc.dim(n), dtype=np.int64)
        return ModMatrix.from_arrays((rows, cyc.dim(n)), mod,
                                     cols + off, cols,
                                     np.ones(cyc.dim(n), dtype=np.int64))

    def project(n: int) -> ModMatrix:
        # Tot_n -> Tot_{n-2} dropping the x = 0 block
        src = {(x, y): off for x, y, off, _ in blocks[n]}
        tgt = {(x, y): off for x, y, off, _ in blocks[n - 2]}
        rows_l, cols_l = [], []
        for (x, y), off in src.items():
            if x == 0 or y < x:
                continue
            dim = cyc.dim(y - x)
            idx = np.arange(dim, dtype=np.int64)
            rows_l.append(idx + tgt[(x - 1, y - 1)])
            cols_l.append(idx + off)
        rows = np.concatenate(rows_l) if rows_l else np.zeros(0, dtype=np.int64)
        cols = np.concatenate(cols_l) if cols_l else np.zeros(0, dtype=np.int64)
        return ModMatrix.from_arrays((tot.dim(n - 2), tot.dim(n)), mod,
                                     rows, cols, np.ones(rows.shape[0], dtype=np.int64))

    def connecting(n: int) -> ModMatrix:
        # Tot_{n-2} (the quotient coordinates) -> C_{n-1}, via B off the
        # block that lifts to (1, n-1)
        src = {(x, y): off for x, y, off, _ in blocks[n - 2]}
        off = src[(0, n - 2)]
        Bmat = cyc.B(n - 2)
        coo = Bmat.csc().tocoo()
        return ModMatrix.from_arrays((cyc.dim(n - 1), tot.dim(n - 2)), mod,
                                     coo.row, coo.col + off, coo.data)

    degrees = list(range(2, N))
    ranks: dict[int, dict[str, int]] = {}
    spots: dict[int, dict[str, bool]] = {}
    rank_I: dict[int, int] = {}
    for n in range(1, N):
        rank_I[n] = induced_map_rank(include(n), cyc.b(n), tot.d(n + 1))
    all_ok = True
    for n in degrees:
        rS = induced_map_rank(project(n), tot.d(n), tot.d(n - 1))
        rD = induced_map_rank(connecting(n), tot.d(n - 2), cyc.b(n))
        entry = {"I": rank_I[n], "S": rS, "D": rD, "I_prev": rank_I[n - 1]}
        checks = {
            "at_hc": hc[n] == rank_I[n] + rS,
            "at_hc_shift": hc[n - 2] == rS + rD,
            "at_hh": hh[n - 1] == rD + rank_I[n - 1],
        }
        ranks[n] = entry
        spots[n] = checks
        all_ok = all_ok and all(checks.values())
    return SBIReport(N=N, degrees=degrees, hh=hh, hc=hc, ranks=ranks,
                     spots=spots, complex_valid=True, exact=all_ok)


# ---------------- normalized complex ----------------

def _unit_complement_projection(a: StructureConstantsAlgebra):
    p = a.modulus
    u = a.unit % p
    k0 = None
    for idx, val in enumerate(u):
        if val % a.p != 0:
            k0 = idx
            break
    if k0 is None:
        raise ShapeError("unit vector is zero")
    inv = pow(int(u[k0]), -1, p)
    others = [j for j in range(a.dim) if j != k0]
    proj = np.zeros((a.dim - 1, a.dim), dtype=np.int64)
    sec = np.zeros((a.dim, a.dim - 1), dtype=np.int64)
    for row, j in enumerate(others):
        proj[row, j] = 1
        proj[row, k0] = (-int(u[j]) * inv) % p
        sec[j, row] = 1
    return ModMatrix.from_dense(proj, p), ModMatrix.from_dense(sec, p)


def normalized_complex(a: StructureConstantsAlgebra, N: int,
                       cap: int | None = None,
                       cyc: CyclicLevelMaps | None = None) -> ChainComplexWindow:
    """The degeneracy-free quotient: degree n is A tensor (A/k1) tensor n.

    The projection kills exactly the images of the degeneracies, b
    descends, and the quotient has the same homology with far smaller
    spaces, which makes it a useful cross-check.
    """
    cyc = cyc or build_cyclic_object(a, N, cap=cap)
    from scipy import sparse as sp

    pr, se = _unit_complement_projection(a)
    mod = a.modulus
    eye = sp.identity(a.dim, dtype=np.int64, format="csc")

    # digit packing is little-endian with slot 0 fastest, and kron(A, B)
    # lets B act on the fast block, so the slot-0 identity sits innermost
    def proj_n(n: int) -> ModMatrix:
        out = eye
        for _ in range(n):
            out = sp.kron(pr.csc(), out, format="csc")
        return ModMatrix(out.shape, mod, out)

    def sec_n(n: int) -> ModMatrix:
        out = eye
        for _ in range(n):
            out = sp.kron(se.csc(), out, format="csc")
        return ModMatrix(out.shape, mod, out)

    dims = {n: a.dim * (a.dim - 1) ** n for n in range(N + 1)}
    diffs = {}
    for n in range(1, N + 1):
        diffs[n] = proj_n(n - 1) @ cyc.b(n) @ sec_n(n)
    return ChainComplexWindow(0, N, dims, diffs, mod, vlo=0, vhi=N - 1, check=True)


def normalized_hh_dims(a: StructureConstantsAlgebra, N: int,
                       cap: int | None = None) -> dict[int, int]:
    return normalized_complex(a, N, cap=cap).homology_dims()


# ---------------- Hodge filtration ----------------

@dataclass
class HodgeSSReport:
    p: int
    N: int
    window: tuple[int, int]
    e1: dict[tuple[int, int], int]
    abutment: dict[int, int]
    hodge_sums: dict[int, int]
    degenerate: bool
    pages_certified: bool
    page_tables: list | None
    sign_tag: str = SIGN_CONVENTION


def hodge_ss(a: StructureConstantsAlgebra, N: int, cap: int | None = None,
             pages_budget: int = 3000, r_max: int = 3) -> HodgeSSReport:
    """The column filtration of the mixed bicomplex.

    The first page in filtration degree l and total degree n is
    HH_{n - 2l}; the abutment is cyclic homology. The verdict compares
    dim HC_n with the sum of the first page along each antidiagonal. Page
    tables from the generic spectral sequence engine are attached when the
    totalization is small enough to afford explicit kernel bases.
    """
    if N < 2:
        raise WindowError("need N >= 2")
    cyc = build_cyclic_object(a, N, cap=cap)
    hh = hh_dims(a, N, cyc=cyc)
    hc = hc_dims(a, N, cyc=cyc)
    e1 = {}
    sums = {}
    for n in range(0, N - 1):
        total = 0
        for l in range(0, n // 2 + 1):
            e1[(l, n)] = hh[n - 2 * l]
            total += hh[n - 2 * l]
        sums[n] = total
    degenerate = all(hc[n] == sums[n] for n in range(0, N - 1))
    page_tables = None
    certified = False
    tot_size = sum(cyc.dim(m) for m in range(N + 1))
    if tot_size <= pages_budget:
        from .specseq import pages as ss_pages

        tot, blocks, filt = filtration_by_columns(bB_bicomplex(cyc))
        page_tables = ss_pages(filt, r_max=r_max)
        certified = True
    return HodgeSSReport(
        p=a.p, N=N, window=(0, N - 2), e1=e1, abutment=hc, hodge_sums=sums,
        degenerate=degenerate, pages_certified=certified, page_tables=page_tables)


def hodge_degenerates(a: StructureConstantsAlgebra, N: int,
                      cap: int | None = None) -> bool:
    return hodge_ss(a, N, cap=cap, pages_budget=0).degenerate
