"""Finite-dimensional associative algebras given by structure constants.

An algebra lives over Z/m with m a prime p or p**2, stores its basis
labels, unit vector and the full constants tensor c[i][j][k] (so that
e_i * e_j = sum_k c[i][j][k] e_k), and is validated on construction:
associativity on all triples and the two unit laws. Constructors for the
standard small examples (matrix, truncated polynomial, cyclic group, path
algebras) and the closure operations (opposite, direct product,
enveloping) are provided, along with JSON serialization and mod p**2 lift
checking.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ConstructionError, ModulusError, ReductionMismatchError
from .modring import ModMatrix, _dense_rref, split_modulus

MAX_VALIDATION_REPORTS = 20


class StructureConstantsAlgebra:
    """An associative unital algebra over Z/p or Z/p**2."""

    def __init__(self, modulus: int, basis: Sequence[str], unit, constants,
                 name: str | None = None, check: bool = True):
        p, power = split_modulus(modulus)
        self.modulus = int(modulus)
        self.p = p
        self.power = power
        self.basis = tuple(str(b) for b in basis)
        self.dim = len(self.basis)
        self.unit = np.asarray(unit, dtype=np.int64) % modulus
        self.constants = np.asarray(constants, dtype=np.int64) % modulus
        self.name = name
        if self.unit.shape != (self.dim,):
            raise ConstructionError(
                f"unit has shape {self.unit.shape}, expected ({self.dim},)")
        if self.constants.shape != (self.dim,) * 3:
            raise ConstructionError(
                f"constants have shape {self.constants.shape}, expected {(self.dim,) * 3}")
        self._terms: dict[tuple[int, int], list[tuple[int, int]]] | None = None
        if check:
            failures = validate_algebra(self)
            if failures:
                raise ConstructionError(
                    "algebra axioms fail: " + "; ".join(failures[:MAX_VALIDATION_REPORTS]))

    # ---------------- basic operations ----------------

    def multiply(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        return np.einsum("i,j,ijk->k", x, y, self.constants) % self.modulus

    def power_of(self, x, k: int) -> np.ndarray:
        """x**k by repeated multiplication, k >= 1."""
        out = np.asarray(x, dtype=np.int64) % self.modulus
        for _ in range(k - 1):
            out = self.multiply(out, x)
        return out

    def terms(self, i: int, j: int) -> list[tuple[int, int]]:
        """Nonzero products e_i e_j = sum v * e_k as a list of (k, v)."""
        if self._terms is None:
            self._terms = {}
            nz = np.argwhere(self.constants != 0)
            for i0, j0, k0 in nz:
                self._terms.setdefault((int(i0), int(j0)), []).append(
                    (int(k0), int(self.constants[i0, j0, k0])))
        return self._terms.get((i, j), [])

    def max_terms(self) -> int:
        vals = (self.constants != 0).sum(axis=2)
        return int(vals.max()) if self.dim else 0

    def left_mult_matrix(self, x) -> ModMatrix:
        x = np.asarray(x, dtype=np.int64)
        mat = np.einsum("i,ijk->kj", x, self.constants) % self.modulus
        return ModMatrix.from_dense(mat, self.modulus)

    def is_commutative(self) -> bool:
        return bool(np.all(self.constants == self.constants.transpose(1, 0, 2)))

    def random_element(self, rng: np.random.Generator) -> np.ndarray:
        return rng.integers(0, self.modulus, self.dim, dtype=np.int64)

    def label(self) -> str:
        return self.name or f"algebra(dim={self.dim}, mod {self.modulus})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, StructureConstantsAlgebra):
            return NotImplemented
        return (self.modulus == other.modulus and self.basis == other.basis
                and np.array_equal(self.unit, other.unit)
                and np.array_equal(self.constants, other.constants))

    __hash__ = None

    def __repr__(self) -> str:
        return f"StructureConstantsAlgebra({self.label()!r}, dim={self.dim}, mod {self.modulus})"

    # ---------------- serialization ----------------

    def to_json_dict(self) -> dict:
        entries = [[int(i), int(j), int(k), int(self.constants[i, j, k])]
                   for i, j, k in np.argwhere(self.constants != 0)]
        return {
            "p": self.p,
            "power": self.power,
            "dim": self.dim,
            "basis": list(self.basis),
            "unit": [int(v) for v in self.unit],
            "constants": entries,
        }


def from_json_dict(data: dict, check: bool = True) -> StructureConstantsAlgebra:
    try:
        p = int(data["p"])
        power = int(data.get("power", 1))
        dim = int(data["dim"])
        basis = data.get("basis") or [f"e{i}" for i in range(dim)]
        unit = data["unit"]
        entries = data["constants"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ConstructionError(f"malformed algebra description: {exc}") from exc
    if power not in (1, 2):
        raise ModulusError(f"power must be 1 or 2, got {power}")
    modulus = p ** power
    constants = np.zeros((dim, dim, dim), dtype=np.int64)
    for entry in entries:
        if len(entry) != 4:
            raise ConstructionError(f"constants entry {entry!r} is not [i, j, k, value]")
        i, j, k, v = (int(x) for x in entry)
        if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
            raise ConstructionError(f"constants entry {entry!r} out of range for dim {dim}")
        constants[i, j, k] = v % modulus
    if len(basis) != dim or len(unit) != dim:
        raise ConstructionError("basis or unit length does not match dim")
    return StructureConstantsAlgebra(modulus, basis, unit, constants,
                                     name=data.get("name"), check=check)


def load_algebra(path: str, check: bool = True) -> StructureConstantsAlgebra:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return from_json_dict(data, check=check)


def dump_algebra(a: StructureConstantsAlgebra, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(a.to_json_dict(), fh, indent=1, sort_keys=True)
        fh.write("\n")


# ---------------- validation ----------------

def validate_algebra(a: StructureConstantsAlgebra) -> list[str]:
    """All associativity and unit failures, as readable strings."""
    failures: list[str] = []
    c, m = a.constants, a.modulus
    left = np.einsum("ijm,mkl->ijkl", c, c) % m
    right = np.einsum("jkm,iml->ijkl", c, c) % m
    bad = np.argwhere((left - right) % m != 0)
    seen = set()
    for i, j, k, _ in bad:
        key = (int(i), int(j), int(k))
        if key in seen:
            continue
        seen.add(key)
        failures.append(f"associativity fails at ({a.basis[i]}, {a.basis[j]}, {a.basis[k]})")
        if len(failures) >= MAX_VALIDATION_REPORTS:
            failures.append("... further failures suppressed")
            return failures
    lu = np.einsum("i,ijk->jk", a.unit, c) % m
    ru = np.einsum("j,ijk->ik", a.unit, c) % m
    eye = np.eye(a.dim, dtype=np.int64)
    for j in np.nonzero(np.any((lu - eye) % m != 0, axis=1))[0]:
        failures.append(f"left unit law fails at {a.basis[j]}")
    for i in np.nonzero(np.any((ru - eye) % m != 0, axis=1))[0]:
        failures.append(f"right unit law fails at {a.basis[i]}")
    return failures


# ---------------- constructors ----------------

def matrix_algebra(n: int, modulus: int, name: str | None = None) -> StructureConstantsAlgebra:
    """Full n-by-n matrix algebra; basis e(r,s) with e(r,s)e(t,u) = [s=t] e(r,u)."""
    dim = n * n
    c = np.zeros((dim, dim, dim), dtype=np.int64)
    for r in range(n):
        for s in range(n):
            for u in range(n):
                c[r * n + s, s * n + u, r * n + u] = 1
    unit = np.zeros(dim, dtype=np.int64)
    for r in range(n):
        unit[r * n + r] = 1
    basis = [f"e{r}{s}" for r in range(n) for s in range(n)]
    return StructureConstantsAlgebra(modulus, basis, unit, c,
                                     name=name or f"matrix_algebra({n})")


def truncated_poly(modulus: int, n: int, name: str | None = None) -> StructureConstantsAlgebra:
    """k[x]/x**n with basis 1, x, ..., x**(n-1)."""
    c = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            if i + j < n:
                c[i, j, i + j] = 1
    unit = np.zeros(n, dtype=np.int64)
    unit[0] = 1
    basis = ["1"] + [f"x^{i}" if i > 1 else "x" for i in range(1, n)]
    return StructureConstantsAlgebra(modulus, basis, unit, c,
                                     name=name or f"truncated_poly({n})")


def dual_numbers(modulus: int) -> StructureConstantsAlgebra:
    return truncated_poly(modulus, 2, name="dual_numbers")


def group_algebra_cyclic(modulus: int, m: int, name: str | None = None) -> StructureConstantsAlgebra:
    """Group algebra of Z/m; basis g**0, ..., g**(m-1)."""
    c = np.zeros((m, m, m), dtype=np.int64)
    for i in range(m):
        for j in range(m):
            c[i, j, (i + j) % m] = 1
    unit = np.zeros(m, dtype=np.int64)
    unit[0] = 1
    basis = [f"g^{i}" if i else "1" for i in range(m)]
    return StructureConstantsAlgebra(modulus, basis, unit, c,
                                     name=name or f"group_algebra_cyclic({m})")


def upper_triangular(n: int, modulus: int, name: str | None = None) -> StructureConstantsAlgebra:
    """Upper triangular n-by-n matrices."""
    pairs = [(r, s) for r in range(n) for s in range(r, n)]
    index = {rs: i for i, rs in enumerate(pairs)}
    dim = len(pairs)
    c = np.zeros((dim, dim, dim), dtype=np.int64)
    for (r, s), i in index.items():
        for (t, u), j in index.items():
            if s == t:
                c[i, j, index[(r, u)]] = 1
    unit = np.zeros(dim, dtype=np.int64)
    for r in range(n):
        unit[index[(r, r)]] = 1
    basis = [f"e{r}{s}" for r, s in pairs]
    return StructureConstantsAlgebra(modulus, basis, unit, c,
                                     name=name or f"upper_triangular({n})")


@dataclass(frozen=True)
class Quiver:
    """A finite quiver: vertex names plus arrows (name, source, target)."""

    vertices: tuple
    arrows: tuple

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise ConstructionError("duplicate vertex names")
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise ConstructionError("duplicate arrow names")
        for name, src, tgt in self.arrows:
            if src not in vs or tgt not in vs:
                raise ConstructionError(f"arrow {name} references unknown vertices")

    def has_cycle(self) -> bool:
        out: dict = {v: [] for v in self.vertices}
        for _, src, tgt in self.arrows:
            out[src].append(tgt)
        state: dict = {}

        def visit(v) -> bool:
            state[v] = 1
            for w in out[v]:
                s = state.get(w)
                if s == 1:
                    return True
                if s is None and visit(w):
                    return True
            state[v] = 2
            return False

        return any(state.get(v) is None and visit(v) for v in self.vertices)


def path_algebra(quiver: Quiver, modulus: int, cap: int | None = None,
                 name: str | None = None) -> StructureConstantsAlgebra:
    """Path algebra of a quiver, truncated past `cap` arrows per path.

    Paths compose left to right: the product p*q walks p and then q, and is
    zero unless p ends where q starts or the composite exceeds the cap. A
    cyclic quiver needs an explicit cap, otherwise the algebra is infinite
    dimensional.
    """
    if cap is None:
        if quiver.has_cycle():
            raise ConstructionError("cyclic quiver needs an explicit length cap")
        cap = max(1, len(quiver.vertices))
    # trivial paths are ("v", vertex); longer paths are tuples of arrow indices
    arrows_from: dict = {}
    for idx, (_, src, _) in enumerate(quiver.arrows):
        arrows_from.setdefault(src, []).append(idx)

    def end_of(path):
        return path[1] if path[0] == "v" else quiver.arrows[path[-1]][2]

    def start_of(path):
        return path[1] if path[0] == "v" else quiver.arrows[path[0]][1]

    paths: list[tuple] = [("v", v) for v in quiver.vertices]
    frontier = list(paths)
    for _ in range(cap):
        nxt = []
        for path in frontier:
            for aidx in arrows_from.get(end_of(path), []):
                nxt.append((aidx,) if path[0] == "v" else path + (aidx,))
        frontier = nxt
        paths.extend(frontier)
        if not frontier:
            break
    index = {pth: i for i, pth in enumerate(paths)}
    dim = len(paths)

    c = np.zeros((dim, dim, dim), dtype=np.int64)
    for pth, i in index.items():
        for qth, j in index.items():
            if end_of(pth) != start_of(qth):
                continue
            if pth[0] == "v":
                c[i, j, j] = 1
            elif qth[0] == "v":
                c[i, j, i] = 1
            else:
                joined = pth + qth
                if len(joined) <= cap:
                    c[i, j, index[joined]] = 1
    unit = np.zeros(dim, dtype=np.int64)
    for v in quiver.vertices:
        unit[index[("v", v)]] = 1

    def label_of(path):
        if path[0] == "v":
            return f"e({path[1]})"
        return "*".join(quiver.arrows[a][0] for a in path)

    basis = [label_of(pth) for pth in paths]
    return StructureConstantsAlgebra(modulus, basis, unit, c,
                                     name=name or "path_algebra")


def opposite(a: StructureConstantsAlgebra) -> StructureConstantsAlgebra:
    c = np.ascontiguousarray(a.constants.transpose(1, 0, 2))
    return StructureConstantsAlgebra(a.modulus, a.basis, a.unit, c,
                                     name=f"op({a.label()})", check=False)


def direct_product(a: StructureConstantsAlgebra,
                   b: StructureConstantsAlgebra) -> StructureConstantsAlgebra:
    if a.modulus != b.modulus:
        raise ModulusError("direct product needs matching moduli")
    dim = a.dim + b.dim
    c = np.zeros((dim, dim, dim), dtype=np.int64)
    c[:a.dim, :a.dim, :a.dim] = a.constants
    c[a.dim:, a.dim:, a.dim:] = b.constants
    unit = np.concatenate([a.unit, b.unit])
    basis = [f"L.{lab}" for lab in a.basis] + [f"R.{lab}" for lab in b.basis]
    return StructureConstantsAlgebra(a.modulus, basis, unit, c,
                                     name=f"product({a.label()}, {b.label()})", check=False)


def enveloping(a: StructureConstantsAlgebra) -> StructureConstantsAlgebra:
    """A tensor A-opposite, with basis pairs (i, j) flattened as i*dim + j."""
    d = a.dim
    c = np.einsum("ikm,ljn->ijklmn", a.constants, a.constants) % a.modulus
    c = c.reshape(d * d, d * d, d * d)
    unit = np.outer(a.unit, a.unit).reshape(d * d)
    basis = [f"{x}(x){y}" for x in a.basis for y in a.basis]
    return StructureConstantsAlgebra(a.modulus, basis, unit, c,
                                     name=f"enveloping({a.label()})", check=False)


# ---------------- commutator quotient ----------------

def commutator_quotient(a: StructureConstantsAlgebra) -> tuple[int, ModMatrix]:
    """(dim, projection) for A / [A, A] as a vector space.

    The projection matrix maps coordinates on A onto coordinates in a basis
    of the quotient (the non-pivot coordinates after row reducing the span
    of all basis commutators).
    """
    if a.power != 1:
        raise ModulusError("commutator quotient is computed over F_p")
    p = a.p
    comms = (a.constants - a.constants.transpose(1, 0, 2)).reshape(a.dim * a.dim, a.dim) % p
    rref, pivots = _dense_rref(comms, p)
    pivot_set = set(pivots)
    free = [j for j in range(a.dim) if j not in pivot_set]
    proj = np.zeros((len(free), a.dim), dtype=np.int64)
    for row, j in enumerate(free):
        proj[row, j] = 1
        for r, c in enumerate(pivots):
            proj[row, c] = (-int(rref[r, j])) % p
    # proj @ v reads off the class of v: subtracting the pivot corrections
    # is the unique way to rewrite v modulo the commutator span in the free
    # coordinates.
    return len(free), ModMatrix.from_dense(proj, p)


# ---------------- lifts mod p**2 ----------------

@dataclass
class AlgebraLift:
    """A mod p**2 algebra claimed to reduce to a given mod p algebra."""

    base: StructureConstantsAlgebra
    lifted: StructureConstantsAlgebra

    def __post_init__(self):
        if self.base.power != 1:
            raise ModulusError("lift base must live over a prime")
        if self.lifted.power != 2 or self.lifted.p != self.base.p:
            raise ModulusError("lifted algebra must live over p**2 for the base prime")


@dataclass
class LiftReport:
    valid: bool
    failures: list[str] = field(default_factory=list)


def check_lift(lift: AlgebraLift) -> LiftReport:
    """Verify a mod p**2 lift: reduction agrees, axioms hold upstairs.

    A reduction mismatch raises ReductionMismatchError since the input is
    not even a candidate; axiom failures upstairs are reported as findings.
    """
    base, lifted = lift.base, lift.lifted
    p = base.p
    if lifted.dim != base.dim:
        raise ReductionMismatchError(
            f"dimension mismatch: lift has {lifted.dim}, base has {base.dim}")
    if np.any((lifted.constants - base.constants) % p != 0):
        raise ReductionMismatchError("lifted constants do not reduce to the base constants")
    if np.any((lifted.unit - base.unit) % p != 0):
        raise ReductionMismatchError("lifted unit does not reduce to the base unit")
    failures = validate_algebra(lifted)
    return LiftReport(valid=not failures, failures=failures)


def literal_lift(a: StructureConstantsAlgebra) -> AlgebraLift:
    """Reinterpret the structure constants mod p**2, unchanged.

    For constants built from 0 and 1 entries (all the bundled examples)
    associativity holds integrally, so this is a genuine lift.
    """
    lifted = StructureConstantsAlgebra(
        a.p ** 2, a.basis, a.unit, a.constants,
        name=f"lift({a.label()})", check=False)
    return AlgebraLift(base=a, lifted=lifted)


def frobenius_twist(a: StructureConstantsAlgebra) -> StructureConstantsAlgebra:
    """Base change along x -> x**p.

    Over the prime field the Frobenius is the identity, so the twist does
    not move the structure constants; the function exists to mark the spots
    where the twist enters conceptually.
    """
    if a.power != 1:
        raise ModulusError("the twist is taken over F_p")
    return a
