"""Edgewise subdivision, Z/p module homology, and the mod-p comparison maps.

The p-fold edgewise subdivision of the cyclic object of an algebra has
level n equal to tensor words of length p(n + 1). Its faces and
degeneracies are composites of p ordinary ones applied once per block,
the one-step rotation generates a cyclic group of order p(n + 1), and its
(n + 1)-st power is the block rotation, an action of Z/p commuting with
the whole simplicial structure.

Fixed monomials of the block rotation are exactly the p-fold repeated
words, so the span of fixed monomials at level n is a copy of the level-n
chain group of the algebra itself. Restricting the subdivided boundary to
those coordinates recovers the ordinary boundary on the nose (Fermat
collapses the p-th powers of coefficients), which is the computational
face of the mod-p comparison isomorphism this module certifies.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import StructureConstantsAlgebra, commutator_quotient
from .complexes import BicomplexWindow, ChainComplexWindow
from .conventions import SIGN_CONVENTION, cyclic_sign
from .errors import (
    CartierError,
    InternalCheckError,
    ModulusError,
    OrderError,
    ParityError,
    ResourceError,
    ShapeError,
    SubdivisionMismatchError,
    WindowError,
)
from .hochcyc import (
    DEFAULT_ENTRY_CAP,
    CyclicLevelMaps,
    build_cyclic_object,
    conn2_bicomplex,
    degeneracy_matrix,
    face_matrix,
    hc_dims,
    hh_dims,
    rotation_matrix,
)
from .modring import (
    ModMatrix,
    hstack,
    is_prime,
    kernel_basis_fp,
    rank_fp,
    solve_fp,
    _dense_rref,
)


# ---------------- Z/p actions ----------------

class ZpModuleAction:
    """A matrix sigma of order p acting on F_p coordinates.

    Permutation actions get an orbit fast path: ranks, invariants and
    coinvariants all read off the orbit partition instead of row
    reduction.
    """

    def __init__(self, sigma: ModMatrix, p: int, check: bool = True):
        if not is_prime(p):
            raise OrderError(f"group order {p} is not prime")
        if sigma.modulus != p:
            raise ModulusError("action must live over F_p for the group Z/p")
        if sigma.shape[0] != sigma.shape[1]:
            raise ShapeError("action matrix must be square")
        self.sigma = sigma
        self.p = p
        self.dim = sigma.shape[0]
        self.perm = self._as_permutation(sigma)
        if check:
            self._check_order()
        self._orbit: tuple[np.ndarray, np.ndarray, np.ndarray] | None = None

    @classmethod
    def from_permutation(cls, perm: np.ndarray, p: int, check: bool = True) -> "ZpModuleAction":
        perm = np.asarray(perm, dtype=np.int64)
        return cls(ModMatrix.from_index_map(perm, perm.shape[0], p), p, check=check)

    @staticmethod
    def _as_permutation(sigma: ModMatrix) -> np.ndarray | None:
        if sigma.nnz != sigma.shape[0]:
            return None
        csc = sigma.csc()
        if np.any(np.diff(csc.indptr) != 1) or np.any(csc.data % sigma.modulus != 1):
            return None
        perm = csc.indices.astype(np.int64)
        if np.unique(perm).shape[0] != sigma.shape[0]:
            return None
        return perm

    def _check_order(self) -> None:
        if self.perm is not None:
            cur = self.perm
            for _ in range(self.p - 1):
                cur = self.perm[cur]
            ok = np.array_equal(cur, np.arange(self.dim, dtype=np.int64))
        else:
            ok = self.sigma.matpow(self.p) == ModMatrix.identity(self.dim, self.p)
        if not ok:
            raise OrderError(f"action does not have order {self.p}")

    # orbit partition: reps[i] is the smallest index in the orbit of i
    def orbit_data(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        if self.perm is None:
            raise ShapeError("orbit data only exists for permutation actions")
        if self._orbit is None:
            idx = np.arange(self.dim, dtype=np.int64)
            reps = idx.copy()
            cur = self.perm
            for _ in range(self.p - 1):
                reps = np.minimum(reps, cur)
                cur = self.perm[cur]
            fixed = self.perm == idx
            uniq, inverse = np.unique(reps, return_inverse=True)
            self._orbit = (uniq, inverse, fixed)
        return self._orbit

    def n_orbits(self) -> int:
        return self.orbit_data()[0].shape[0]

    def n_fixed(self) -> int:
        return int(np.count_nonzero(self.orbit_data()[2]))

    def one_minus(self) -> ModMatrix:
        return ModMatrix.identity(self.dim, self.p) - self.sigma

    def norm(self) -> ModMatrix:
        total = ModMatrix.identity(self.dim, self.p)
        cur = ModMatrix.identity(self.dim, self.p)
        for _ in range(self.p - 1):
            cur = self.sigma @ cur
            total = total + cur
        return total

    def rank_one_minus(self) -> int:
        if self.perm is not None:
            return self.dim - self.n_orbits()
        return rank_fp(self.one_minus())

    def rank_norm(self) -> int:
        if self.perm is not None:
            return self.n_orbits() - self.n_fixed()
        return rank_fp(self.norm())


def zp_invariants(act: ZpModuleAction) -> ModMatrix:
    """Columns: a basis of the sigma-fixed subspace."""
    if act.perm is not None:
        uniq, inverse, fixed = act.orbit_data()
        rows = np.arange(act.dim, dtype=np.int64)
        return ModMatrix.from_arrays(
            (act.dim, uniq.shape[0]), act.p, rows, inverse,
            np.ones(act.dim, dtype=np.int64))
    return kernel_basis_fp(act.one_minus())


def zp_coinvariants(act: ZpModuleAction) -> tuple[ModMatrix, ModMatrix]:
    """(projection, section) for the coinvariant quotient."""
    if act.perm is not None:
        uniq, inverse, fixed = act.orbit_data()
        rows = np.arange(act.dim, dtype=np.int64)
        proj = ModMatrix.from_arrays(
            (uniq.shape[0], act.dim), act.p, inverse, rows,
            np.ones(act.dim, dtype=np.int64))
        return proj, ModMatrix.from_index_map(uniq, act.dim, act.p)
    moved = act.one_minus().to_dense()
    rref, pivots = _dense_rref(moved.T, act.p)
    pivot_set = set(int(c) for c in pivots)
    free = [j for j in range(act.dim) if j not in pivot_set]
    proj = np.zeros((len(free), act.dim), dtype=np.int64)
    for row, j in enumerate(free):
        proj[row, j] = 1
        for r, c in enumerate(pivots):
            proj[row, c] = (-int(rref[r, j])) % act.p
    sec = ModMatrix.from_index_map(np.array(free, dtype=np.int64), act.dim, act.p)
    return ModMatrix.from_dense(proj, act.p), sec


def norm_map(act: ZpModuleAction) -> ModMatrix:
    return act.norm()


def zp_homology_dims(act: ZpModuleAction, l_max: int = 4) -> dict[int, int]:
    """dim H_l(Z/p, V) for 0 <= l <= l_max.

    In degree zero this is the coinvariants; in every positive degree the
    kernel-mod-image count collapses to dim V - rank(1 - sigma) - rank N
    for both parities.
    """
    r1 = act.rank_one_minus()
    rn = act.rank_norm()
    out = {0: act.dim - r1}
    for l in range(1, l_max + 1):
        out[l] = act.dim - r1 - rn
    return out


@dataclass
class VDaggerReport:
    h0: int
    h1: int
    rank_t: int
    phi_rank: int
    tight: bool
    fast_path: bool


def vdagger(act: ZpModuleAction) -> VDaggerReport:
    """Two-term norm complex: coinvariants -> invariants via the norm.

    h0 is its cokernel, h1 its kernel, and phi the comparison map induced
    by including invariants and projecting to coinvariants. Tight means
    phi identifies the two homology groups.
    """
    if act.perm is not None:
        uniq, inverse, fixed = act.orbit_data()
        n_orb = uniq.shape[0]
        n_fix = int(np.count_nonzero(fixed))
        rank_t = n_orb - n_fix
        h0 = n_orb - rank_t
        h1 = n_orb - rank_t
        return VDaggerReport(h0=h0, h1=h1, rank_t=rank_t, phi_rank=n_fix,
                             tight=n_fix == h0, fast_path=True)
    inc = zp_invariants(act)
    proj, sec = zp_coinvariants(act)
    t = solve_fp(inc, act.norm() @ sec)
    if t is None:
        raise InternalCheckError("norm image is not inside the invariants")
    rank_t = rank_fp(t)
    h0 = inc.shape[1] - rank_t
    h1 = sec.shape[1] - rank_t
    phi_rank = rank_fp(proj @ inc)
    return VDaggerReport(h0=h0, h1=h1, rank_t=rank_t, phi_rank=phi_rank,
                         tight=phi_rank == h0 and h0 == h1, fast_path=False)


def is_tight(act: ZpModuleAction) -> bool:
    return vdagger(act).tight


# ---------------- repeated-word comparison map ----------------

def iota_matrix(dim: int, n: int, p: int, modulus: int) -> ModMatrix:
    """Monomial map sending a level-n word to its p-fold repetition."""
    D = dim ** (n + 1)
    cols = np.arange(D, dtype=np.int64)
    spread = (D ** p - 1) // (D - 1) if D > 1 else p
    return ModMatrix.from_index_map(cols * spread, dim ** (p * (n + 1)), modulus)


def _tensor_power_vec(x: np.ndarray, p: int, modulus: int) -> np.ndarray:
    out = np.asarray(x, dtype=np.int64) % modulus
    cur = out
    for _ in range(p - 1):
        cur = np.kron(out, cur) % modulus
    return cur


def _digit_permutation_power(g: np.ndarray, length: int, modulus: int) -> ModMatrix:
    """g acting separately on every digit of a word, for a basis permutation g."""
    d = g.shape[0]
    cols = np.arange(d ** length, dtype=np.int64)
    rows = np.zeros_like(cols)
    rest = cols.copy()
    stride = 1
    for _ in range(length):
        rows += g[rest % d] * stride
        rest //= d
        stride *= d
    return ModMatrix.from_index_map(rows, d ** length, modulus)


@dataclass
class IotaReport:
    dim: int
    p: int
    level: int
    homology: dict[int, int]
    bijective: bool
    natural: bool
    additive: bool
    samples: int
    seed: int


def iota_iso(dim: int, p: int, n: int = 0, l_max: int = 4,
             samples: int = 200, seed: int = 0, check: bool = True) -> IotaReport:
    """Certify that repeated words present every positive Z/p homology
    group of the p-th tensor power of an F_p space of the given dim.

    Checks, all by explicit linear algebra: the image is fixed, the
    classes are a basis of H_l for 1 <= l <= l_max, the map commutes with
    digitwise basis permutations and the one-step rotation, and p-fold
    powering of sampled vectors is additive modulo im(1 - sigma).
    """
    length = p * (n + 1)
    sigma = block_rotation(dim, length, n + 1, p)
    act = ZpModuleAction(sigma, p)
    iota = iota_matrix(dim, n, p, p)
    D = iota.shape[1]
    failures = []

    if not (act.one_minus() @ iota).is_zero():
        failures.append("image is not fixed")
    if not (act.norm() @ iota).is_zero():
        failures.append("image does not lie in the kernel of the norm")

    hom = zp_homology_dims(act, l_max=l_max)
    one_minus = act.one_minus()
    norm = act.norm()
    rk_odd = rank_fp(hstack([iota, norm])) - rank_fp(norm)
    rk_even = rank_fp(hstack([iota, one_minus])) - rank_fp(one_minus)
    bij = True
    for l in range(1, l_max + 1):
        rk = rk_odd if l % 2 == 1 else rk_even
        if not (rk == D == hom[l]):
            bij = False
            failures.append(f"classes do not form a basis in degree {l}")
            break

    rng = np.random.default_rng(seed)
    natural = True
    rho_big = rotation_matrix(dim, length - 1, p)
    rho_small = rotation_matrix(dim, n, p)
    if rho_big @ iota != iota @ rho_small:
        natural = False
        failures.append("does not intertwine the one-step rotations")
    for _ in range(3):
        g = rng.permutation(dim).astype(np.int64)
        g_small = _digit_permutation_power(g, n + 1, p)
        g_big = _digit_permutation_power(g, length, p)
        if g_big @ iota != iota @ g_small:
            natural = False
            failures.append("does not commute with a digitwise permutation")
            break

    deltas = np.zeros((dim ** length, samples), dtype=np.int64)
    for s in range(samples):
        x = rng.integers(0, p, dim ** (n + 1), dtype=np.int64)
        y = rng.integers(0, p, dim ** (n + 1), dtype=np.int64)
        both = _tensor_power_vec((x + y) % p, p, p)
        deltas[:, s] = (both - _tensor_power_vec(x, p, p)
                        - _tensor_power_vec(y, p, p)) % p
    stacked = hstack([one_minus, ModMatrix.from_dense(deltas, p)])
    additive = rank_fp(stacked) == rank_fp(one_minus)
    if not additive:
        failures.append("powering is not additive modulo the moved subspace")

    if check and failures:
        raise CartierError("; ".join(failures))
    return IotaReport(dim=dim, p=p, level=n, homology=hom, bijective=bij,
                      natural=natural, additive=additive, samples=samples,
                      seed=seed)


def block_rotation(dim: int, length: int, blocksize: int, p: int) -> ModMatrix:
    """Rotation by one block, with the order sanity-checked against p."""
    if length != blocksize * p:
        raise ShapeError("word length must be blocksize * p")
    size = dim ** length
    cols = np.arange(size, dtype=np.int64)
    stride = dim ** (length - blocksize)
    rows = cols // stride + (cols % stride) * dim ** blocksize
    return ModMatrix.from_index_map(rows, size, p)


# ---------------- the subdivided cyclic object ----------------

def estimate_sd_entries(a: StructureConstantsAlgebra, N: int) -> int:
    d, p = a.dim, a.p
    tbar, ubar = a.max_terms(), int(np.count_nonzero(a.unit))
    total = 0
    for n in range(N + 1):
        length = p * (n + 1)
        total += d ** length * (length * (tbar ** p + ubar) + 3)
    return total


class PCyclicLevels:
    """Faces, degeneracies and rotations of the p-fold subdivision.

    Matrices are built lazily; level n words have p(n + 1) digits, so the
    constructor only guards the estimated footprint. The interface
    mirrors the unsubdivided level maps so the two-column cyclic
    machinery applies verbatim.
    """

    def __init__(self, a: StructureConstantsAlgebra, N: int,
                 cap: int | None = None, allow_p2: bool = False):
        if N < 1:
            raise WindowError("need at least levels 0 and 1")
        if a.power != 1:
            raise ModulusError("subdivision runs over F_p")
        if a.p == 2 and not allow_p2:
            raise ParityError(
                "at p = 2 the sign conventions for the subdivision degenerate; "
                "pass allow_p2=True to build it anyway")
        cap = DEFAULT_ENTRY_CAP if cap is None else cap
        est = estimate_sd_entries(a, N)
        if est > cap:
            raise ResourceError(
                f"subdivision through level {N} needs about {est} entries, cap is {cap}",
                estimate=est, cap=cap)
        self.algebra = a
        self.p = a.p
        self.N = N
        self.cap = cap
        self._faces: dict[tuple[int, int], ModMatrix] = {}
        self._degens: dict[tuple[int, int], ModMatrix] = {}
        self._b: dict[int, ModMatrix] = {}
        self._bprime: dict[int, ModMatrix] = {}
        self._norm: dict[int, ModMatrix] = {}
        self._actions: dict[int, ZpModuleAction] = {}

    def dim(self, n: int) -> int:
        if n < 0 or n > self.N:
            return 0
        return self.algebra.dim ** (self.p * (n + 1))

    def face(self, n: int, i: int) -> ModMatrix:
        if not (1 <= n <= self.N) or not (0 <= i <= n):
            raise WindowError(f"no face ({n}, {i}) in the window")
        key = (n, i)
        if key not in self._faces:
            a, p = self.algebra, self.p
            mat = None
            for j in range(1, p + 1):
                step = face_matrix(a, p * (n + 1) - j, i + (p - j) * (n + 1))
                mat = step if mat is None else step @ mat
            self._faces[key] = mat
        return self._faces[key]

    def degeneracy(self, n: int, i: int) -> ModMatrix:
        if not (0 <= n < self.N) or not (0 <= i <= n):
            raise WindowError(f"no degeneracy ({n}, {i}) in the window")
        key = (n, i)
        if key not in self._degens:
            a, p = self.algebra, self.p
            mat = None
            for j in range(1, p + 1):
                step = degeneracy_matrix(a, p * (n + 1) - 2 + j, i + (p - j) * (n + 1))
                mat = step @ mat if mat is not None else step
            self._degens[key] = mat
        return self._degens[key]

    def rho(self, n: int) -> ModMatrix:
        return rotation_matrix(self.algebra.dim, self.p * (n + 1) - 1,
                               self.algebra.modulus)

    def t(self, n: int) -> ModMatrix:
        return self.rho(n).scale(cyclic_sign(n))

    def sigma(self, n: int) -> ModMatrix:
        return block_rotation(self.algebra.dim, self.p * (n + 1), n + 1, self.p)

    def action(self, n: int) -> ZpModuleAction:
        if n not in self._actions:
            self._actions[n] = ZpModuleAction(self.sigma(n), self.p, check=False)
        return self._actions[n]

    def b(self, n: int) -> ModMatrix:
        if n not in self._b:
            total = self.face(n, 0)
            for i in range(1, n + 1):
                step = self.face(n, i)
                total = total + step if i % 2 == 0 else total - step
            self._b[n] = total
        return self._b[n]

    def bprime(self, n: int) -> ModMatrix:
        if n not in self._bprime:
            total = self.face(n, 0)
            for i in range(1, n):
                step = self.face(n, i)
                total = total + step if i % 2 == 0 else total - step
            self._bprime[n] = total if n > 0 else self.face(n, 0)
        return self._bprime[n]

    def norm(self, n: int) -> ModMatrix:
        if n not in self._norm:
            t = self.t(n)
            total = ModMatrix.identity(self.dim(n), self.algebra.modulus)
            cur = total
            for _ in range(self.p * (n + 1) - 1):
                cur = t @ cur
                total = total + cur
            self._norm[n] = total
        return self._norm[n]

    def fixed_inclusion(self, n: int) -> ModMatrix:
        return iota_matrix(self.algebra.dim, n, self.p, self.algebra.modulus)

    def verify_identities(self, upto: int | None = None) -> list[str]:
        """Numerical check of the simplicial, rotation and mixed identities
        on levels up to `upto`. Returns failure descriptions."""
        top = self.N if upto is None else min(upto, self.N)
        bad = []
        p = self.p
        for n in range(1, top + 1):
            for i in range(n):
                for j in range(i + 1, n + 1):
                    if n >= 2 and self.face(n - 1, i) @ self.face(n, j) != \
                            self.face(n - 1, j - 1) @ self.face(n, i):
                        bad.append(f"faces ({i},{j}) at level {n}")
            rho = self.rho(n)
            cur = rho
            for _ in range(p * (n + 1) - 1):
                cur = rho @ cur
            if cur != ModMatrix.identity(self.dim(n), self.algebra.modulus):
                bad.append(f"rotation order at level {n}")
            if self.sigma(n) != rho.matpow(n + 1):
                bad.append(f"block rotation is not the (n+1)-st power at level {n}")
            for i in range(1, n + 1):
                if self.face(n, i) @ rho != self.rho(n - 1) @ self.face(n, i - 1):
                    bad.append(f"rotation past face {i} at level {n}")
            if self.face(n, 0) @ rho != self.face(n, n):
                bad.append(f"rotation into the wrap face at level {n}")
            sig = self.sigma(n)
            sig_low = self.sigma(n - 1)
            for i in range(n + 1):
                if self.face(n, i) @ sig != sig_low @ self.face(n, i):
                    bad.append(f"block rotation past face {i} at level {n}")
            if n >= 2 and self.b(n - 1) @ self.b(n) != \
                    ModMatrix.zeros(self.dim(n - 2), self.dim(n), self.algebra.modulus):
                bad.append(f"b squared at level {n}")
            if n >= 2 and self.bprime(n - 1) @ self.bprime(n) != \
                    ModMatrix.zeros(self.dim(n - 2), self.dim(n), self.algebra.modulus):
                bad.append(f"b-prime squared at level {n}")
            one = ModMatrix.identity(self.dim(n), self.algebra.modulus)
            one_low = ModMatrix.identity(self.dim(n - 1), self.algebra.modulus)
            if self.b(n) @ (one - self.t(n)) != (one_low - self.t(n - 1)) @ self.bprime(n):
                bad.append(f"boundary exchange at level {n}")
            if self.norm(n - 1) @ self.b(n) != self.bprime(n) @ self.norm(n):
                bad.append(f"norm exchange at level {n}")
        for n in range(0, top):
            for i in range(n + 1):
                sd = self.degeneracy(n, i)
                if self.face(n + 1, i) @ sd != ModMatrix.identity(self.dim(n), self.algebra.modulus):
                    bad.append(f"degeneracy section ({n},{i})")
                if i + 1 <= n + 1 and self.face(n + 1, i + 1) @ sd != \
                        ModMatrix.identity(self.dim(n), self.algebra.modulus):
                    bad.append(f"degeneracy section above ({n},{i})")
        return bad


def edgewise_subdivision(a: StructureConstantsAlgebra, N: int,
                         cap: int | None = None,
                         allow_p2: bool = False) -> PCyclicLevels:
    return PCyclicLevels(a, N, cap=cap, allow_p2=allow_p2)


def sd_b_complex(pcyc: PCyclicLevels) -> ChainComplexWindow:
    dims = {n: pcyc.dim(n) for n in range(pcyc.N + 1)}
    diffs = {n: pcyc.b(n) for n in range(1, pcyc.N + 1)}
    return ChainComplexWindow(0, pcyc.N, dims, diffs, pcyc.algebra.modulus,
                              vlo=0, vhi=pcyc.N - 1, check=False)


@dataclass
class EdgewiseReport:
    p: int
    N: int
    sd_dims: dict[int, int]
    hh: dict[int, int]
    equal: bool
    sign_tag: str = SIGN_CONVENTION


def edgewise_hh_check(a: StructureConstantsAlgebra, N: int,
                      cap: int | None = None,
                      allow_p2: bool = False) -> EdgewiseReport:
    """Homology of the subdivided complex against the unsubdivided one.

    Subdivision does not change the realization, so the two must agree on
    the whole trusted window; a mismatch raises.
    """
    pcyc = edgewise_subdivision(a, N, cap=cap, allow_p2=allow_p2)
    sd = sd_b_complex(pcyc).homology_dims()
    hh = hh_dims(a, N, cap=cap)
    if sd != hh:
        raise SubdivisionMismatchError(
            f"subdivided homology {sd} differs from {hh} for {a.label()}")
    return EdgewiseReport(p=a.p, N=N, sd_dims=sd, hh=hh, equal=True)


# ---------------- two-column bicomplex of the subdivision ----------------

def lambda_p_bicomplex(pcyc: PCyclicLevels, L: int,
                       check: bool = True) -> BicomplexWindow:
    """Periodic two-column bicomplex of the subdivided object, using the
    one-step rotation of order p(n + 1) and its full norm."""
    bicx = conn2_bicomplex(pcyc, L)
    if check:
        bicx.check_squares()
    return bicx


@dataclass
class LambdaPReport:
    p: int
    N: int
    L: int
    window: tuple[int, int]
    dims: dict[int, int]
    hc: dict[int, int]
    sign_tag: str = SIGN_CONVENTION


def hc_via_lambda_p(a: StructureConstantsAlgebra, N: int, L: int | None = None,
                    N_ref: int | None = None, cap: int | None = None,
                    allow_p2: bool = False) -> LambdaPReport:
    """Cyclic homology recomputed through the subdivision.

    Totalizes the subdivided two-column bicomplex and compares with the
    unsubdivided route on the common trusted window. A mismatch raises,
    since subdivision cannot change cyclic homology.
    """
    L = N if L is None else L
    pcyc = edgewise_subdivision(a, N, cap=cap, allow_p2=allow_p2)
    bicx = lambda_p_bicomplex(pcyc, L)
    tot, _ = bicx.total_complex()
    top = min(L, N) - 1
    if top < 0:
        raise WindowError("no trusted degrees; raise L or N")
    dims = {n: tot.homology_dim(n) for n in range(top + 1)}
    N_ref = top + 2 if N_ref is None else N_ref
    hc = hc_dims(a, N_ref, cap=cap)
    common = [n for n in dims if n in hc]
    if any(dims[n] != hc[n] for n in common):
        raise SubdivisionMismatchError(
            f"subdivided route {dims} disagrees with {hc} for {a.label()}")
    return LambdaPReport(p=a.p, N=N, L=L, window=(0, top), dims=dims,
                         hc={n: hc[n] for n in common})


# ---------------- fiberwise group homology bicomplex ----------------

def conjugate_bicomplex(pcyc: PCyclicLevels, L: int,
                        check: bool = True) -> BicomplexWindow:
    """Columns carry the subdivided boundary with alternating sign, the
    horizontals resolve the Z/p action: 1 - sigma into even columns, the
    sigma-norm into odd ones."""
    mod = pcyc.algebra.modulus
    dims = {}
    d_v = {}
    d_h = {}
    for x in range(L + 1):
        for y in range(pcyc.N + 1):
            dims[(x, y)] = pcyc.dim(y)
            if y >= 1:
                b = pcyc.b(y)
                d_v[(x, y)] = b if x % 2 == 0 else -b
            if x >= 1:
                act = pcyc.action(y)
                d_h[(x, y)] = act.one_minus() if x % 2 == 1 else act.norm()
    bicx = BicomplexWindow(L, pcyc.N, dims, d_v, d_h, mod,
                           sign_tag=SIGN_CONVENTION, check=False)
    if check:
        bicx.check_squares()
    return bicx


def _fixed_reduced_complex(pcyc: PCyclicLevels) -> ChainComplexWindow:
    """The subdivided boundary squeezed onto the repeated-word coordinates.

    This must coincide with the ordinary boundary of the algebra: the
    comparison map is monomial and Fermat collapses the coefficient
    powers. The equality is asserted, not assumed.
    """
    a = pcyc.algebra
    cyc = build_cyclic_object(a, pcyc.N, cap=pcyc.cap)
    dims = {n: a.dim ** (n + 1) for n in range(pcyc.N + 1)}
    diffs = {}
    for n in range(1, pcyc.N + 1):
        p_fix = pcyc.fixed_inclusion(n - 1).T
        e_fix = pcyc.fixed_inclusion(n)
        beta = p_fix @ pcyc.b(n) @ e_fix
        if beta != cyc.b(n):
            raise InternalCheckError(
                f"fixed-coordinate boundary at level {n} does not match the "
                f"ordinary one for {a.label()}")
        diffs[n] = beta
    return ChainComplexWindow(0, pcyc.N, dims, diffs, a.modulus,
                              vlo=0, vhi=pcyc.N - 1, check=False)


def _coinvariant_complex(pcyc: PCyclicLevels) -> ChainComplexWindow:
    """Induced boundary on Z/p coinvariants, one orbit coordinate each."""
    projs = {}
    secs = {}
    dims = {}
    for n in range(pcyc.N + 1):
        proj, sec = zp_coinvariants(pcyc.action(n))
        projs[n], secs[n] = proj, sec
        dims[n] = proj.shape[0]
    diffs = {n: projs[n - 1] @ pcyc.b(n) @ secs[n] for n in range(1, pcyc.N + 1)}
    return ChainComplexWindow(0, pcyc.N, dims, diffs, pcyc.algebra.modulus,
                              vlo=0, vhi=pcyc.N - 1, check=True)


@dataclass
class ConjugateSSReport:
    p: int
    N: int
    L: int
    e1: dict[tuple[int, int], int]
    e2_positive: dict[int, int]
    e2_zero: dict[int, int]
    hh: dict[int, int]
    matches_hh: bool
    abutment: dict[int, int]
    window: tuple[int, int]
    sign_tag: str = SIGN_CONVENTION


def conjugate_ss(a: StructureConstantsAlgebra, N: int, L: int | None = None,
                 cap: int | None = None,
                 allow_p2: bool = False) -> ConjugateSSReport:
    """Row-filtration spectral sequence of the fiberwise bicomplex.

    The first page in row j is the Z/p homology of the level, counted
    through the orbit partition. The second page in positive rows is the
    homology of the fixed-coordinate complex, which the comparison map
    identifies with the Hochschild dimensions of the algebra itself; row
    zero carries the coinvariant complex. The abutment column reports the
    homology of the truncated totalization on its trusted window.
    """
    L = 2 * a.p if L is None else L
    pcyc = edgewise_subdivision(a, N, cap=cap, allow_p2=allow_p2)
    e1 = {}
    for n in range(N + 1):
        act = pcyc.action(n)
        orbits = act.n_orbits()
        fixed = act.n_fixed()
        for j in range(L + 1):
            e1[(j, n)] = orbits if j == 0 else fixed
    reduced = _fixed_reduced_complex(pcyc)
    e2_pos = reduced.homology_dims()
    coinv = _coinvariant_complex(pcyc)
    e2_zero = coinv.homology_dims()
    hh = hh_dims(a, N, cap=cap)
    bicx = conjugate_bicomplex(pcyc, L)
    tot, _ = bicx.total_complex()
    abut = {n: tot.homology_dim(n) for n in range(tot.vlo, tot.vhi + 1)}
    for m in abut:
        upper = e2_zero.get(m, 0) + sum(e2_pos.get(m - j, 0) for j in range(1, m + 1))
        if upper < abut[m]:
            raise InternalCheckError(
                f"second page sums to {upper} in degree {m}, abutment has {abut[m]}")
    return ConjugateSSReport(
        p=a.p, N=N, L=L, e1=e1, e2_positive=e2_pos, e2_zero=e2_zero,
        hh=hh, matches_hh=e2_pos == hh, abutment=abut,
        window=(tot.vlo, tot.vhi))


# ---------------- degree zero power map ----------------

@dataclass
class Cartier0Report:
    p: int
    dim_quotient: int
    matrix: ModMatrix
    additive_ok: bool
    representative_ok: bool
    samples: int
    seed: int


def cartier0(a: StructureConstantsAlgebra, samples: int = 1000,
             seed: int = 0) -> Cartier0Report:
    """The p-th power map on A / [A, A].

    The matrix is assembled from a coordinate section of the quotient;
    additivity and independence of the representative are then certified
    on sampled elements. Both hold identically in characteristic p, so
    any failure means the quotient or the powering is miscomputed.
    """
    if a.power != 1:
        raise ModulusError("power map runs over F_p")
    p = a.p
    q_dim, proj = commutator_quotient(a)
    sec = solve_fp(proj, ModMatrix.identity(q_dim, p))
    if sec is None:
        raise InternalCheckError("quotient projection has no section")
    cols = []
    sec_d = sec.to_dense()
    for j in range(q_dim):
        cols.append(proj @ ModMatrix.from_dense(
            a.power_of(sec_d[:, j], p).reshape(-1, 1), p))
    matrix = hstack(cols) if cols else ModMatrix.zeros(0, 0, p)

    rng = np.random.default_rng(seed)
    additive_ok = True
    representative_ok = True
    proj_d = proj.to_dense()
    for _ in range(samples):
        x = a.random_element(rng)
        y = a.random_element(rng)
        lhs = proj_d @ a.power_of((x + y) % p, p) % p
        rhs = (proj_d @ a.power_of(x, p) + proj_d @ a.power_of(y, p)) % p
        if not np.array_equal(lhs % p, rhs % p):
            additive_ok = False
            break
        u = a.random_element(rng)
        v = a.random_element(rng)
        comm = (a.multiply(u, v) - a.multiply(v, u)) % p
        lhs = proj_d @ a.power_of((x + comm) % p, p) % p
        rhs = proj_d @ a.power_of(x, p) % p
        if not np.array_equal(lhs, rhs):
            representative_ok = False
            break
    if not (additive_ok and representative_ok):
        raise InternalCheckError(
            f"power map certificates failed for {a.label()}: "
            f"additive={additive_ok} representative={representative_ok}")
    return Cartier0Report(p=p, dim_quotient=q_dim, matrix=matrix,
                          additive_ok=additive_ok,
                          representative_ok=representative_ok,
                          samples=samples, seed=seed)


# ---------------- degeneration ledger ----------------

@dataclass
class LedgerRow:
    degree: int
    hc: int
    hodge_sum: int

    @property
    def equal(self) -> bool:
        return self.hc == self.hodge_sum


@dataclass
class DegenerationLedger:
    p: int
    N: int
    rows: list[LedgerRow] = field(default_factory=list)
    sign_tag: str = SIGN_CONVENTION

    @property
    def degenerate(self) -> bool:
        return all(r.equal for r in self.rows)


def conjugate_ledger(a: StructureConstantsAlgebra, N: int,
                     cap: int | None = None) -> DegenerationLedger:
    """Per-degree comparison of cyclic homology with the stacked
    Hochschild dimensions. The abutment can never exceed the stack; if it
    does the pipeline is broken and this raises."""
    cyc = build_cyclic_object(a, N, cap=cap)
    hh = hh_dims(a, N, cyc=cyc)
    hc = hc_dims(a, N, cyc=cyc)
    ledger = DegenerationLedger(p=a.p, N=N)
    for n in range(0, N - 1):
        total = sum(hh[n - 2 * l] for l in range(n // 2 + 1))
        if hc[n] > total:
            raise InternalCheckError(
                f"cyclic homology exceeds the Hodge stack in degree {n}: "
                f"{hc[n]} > {total}")
        ledger.rows.append(LedgerRow(degree=n, hc=hc[n], hodge_sum=total))
    return ledger
