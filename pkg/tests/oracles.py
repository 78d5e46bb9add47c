"""Independent reference implementations used to pin expected values.

Everything here is deliberately naive: pure-python row reduction over
fractions of residues, brute-force orbit counting, direct polynomial
arithmetic. The point is that none of it shares code with the package, so
agreement is evidence rather than tautology.
"""

from __future__ import annotations

from itertools import product


def ref_rank(rows: list[list[int]], p: int) -> int:
    """Row reduction with explicit python ints, no numpy, no pivoting tricks."""
    mat = [[x % p for x in row] for row in rows]
    if not mat or not mat[0]:
        return 0
    ncols = len(mat[0])
    rank = 0
    row = 0
    for col in range(ncols):
        sel = None
        for r in range(row, len(mat)):
            if mat[r][col] % p != 0:
                sel = r
                break
        if sel is None:
            continue
        mat[row], mat[sel] = mat[sel], mat[row]
        inv = pow(mat[row][col], p - 2, p)
        mat[row] = [(x * inv) % p for x in mat[row]]
        for r in range(len(mat)):
            if r != row and mat[r][col]:
                f = mat[r][col]
                mat[r] = [(a - f * b) % p for a, b in zip(mat[r], mat[row])]
        rank += 1
        row += 1
        if row == len(mat):
            break
    return rank


def ref_kernel_dim(rows: list[list[int]], p: int) -> int:
    ncols = len(rows[0]) if rows else 0
    return ncols - ref_rank(rows, p)


def ref_smith_counts_zp2(rows: list[list[int]], p: int) -> tuple[int, int, int]:
    """Elementary divisor counts over Z/p**2 by explicit clearing."""
    q = p * p
    mat = [[x % q for x in row] for row in rows]
    nr = len(mat)
    nc = len(mat[0]) if mat else 0
    n0 = 0
    live_r = list(range(nr))
    live_c = list(range(nc))
    while True:
        pivot = None
        for r in live_r:
            for c in live_c:
                if mat[r][c] % p != 0:
                    pivot = (r, c)
                    break
            if pivot:
                break
        if not pivot:
            break
        r0, c0 = pivot
        inv = pow(mat[r0][c0], -1, q)
        mat[r0] = [(x * inv) % q for x in mat[r0]]
        for r in live_r:
            if r != r0 and mat[r][c0]:
                f = mat[r][c0]
                mat[r] = [(a - f * b) % q for a, b in zip(mat[r], mat[r0])]
        for c in live_c:
            if c != c0 and mat[r0][c]:
                f = mat[r0][c]
                for r in live_r:
                    mat[r][c] = (mat[r][c] - f * mat[r][c0]) % q
        live_r.remove(r0)
        live_c.remove(c0)
        n0 += 1
    reduced = [[(mat[r][c] // p) % p for c in live_c] for r in live_r]
    n1 = ref_rank(reduced, p) if reduced and reduced[0] else 0
    return n0, n1, min(nr, nc) - n0 - n1


def zp2_add_table(p: int) -> dict[tuple[int, int], int]:
    q = p * p
    return {(a, b): (a + b) % q for a in range(q) for b in range(q)}


def ref_witt_pair_from_zp2(r: int, p: int) -> tuple[int, int]:
    """Digits (a0, a1) of r mod p**2 in Teichmuller coordinates."""
    q = p * p
    a0 = r % p
    return a0, ((r - pow(a0, p, q)) // p) % p


def tensor_index(word: tuple[int, ...], dim: int) -> int:
    """Little-endian digit packing of a monomial word."""
    idx = 0
    for pos, digit in enumerate(word):
        idx += digit * dim ** pos
    return idx


def tensor_word(idx: int, dim: int, length: int) -> tuple[int, ...]:
    word = []
    for _ in range(length):
        word.append(idx % dim)
        idx //= dim
    return tuple(word)


def ref_orbit_data(dim: int, length: int, block: int, p_rot: int):
    """Orbits of the block rotation on monomials of a tensor power.

    The rotation advances words of `length` digits by `block` positions and
    has order p_rot. Returns (n_fixed, n_free_orbits).
    """
    assert block * p_rot == length
    seen = set()
    fixed = 0
    free = 0
    for word in product(range(dim), repeat=length):
        if word in seen:
            continue
        orbit = {word}
        cur = word
        for _ in range(p_rot - 1):
            cur = cur[-block:] + cur[:-block]
            orbit.add(cur)
        seen |= orbit
        if len(orbit) == 1:
            fixed += 1
        else:
            free += 1
    return fixed, free


def ref_zp_homology_dims(dim: int, length: int, block: int, p: int) -> dict:
    """Group homology dims of Z/p acting on a monomial tensor power.

    Uses the orbit decomposition: every free orbit contributes a copy of
    the regular representation (homology vanishes in positive degrees),
    every fixed monomial contributes a trivial summand (one dimension in
    every degree). Degree zero picks up one dimension per orbit.
    """
    fixed, free = ref_orbit_data(dim, length, block, p)
    return {0: fixed + free, "positive": fixed}


def _basis_vec(dim: int, k: int):
    import numpy as np

    v = np.zeros(dim, dtype=np.int64)
    v[k] = 1
    return v


def ref_face_dense(a, m: int, i: int):
    """Face operator on words of length m+1 built one monomial at a time."""
    import numpy as np

    d = a.dim
    out = np.zeros((d ** m, d ** (m + 1)), dtype=np.int64)
    for col in range(d ** (m + 1)):
        w = tensor_word(col, d, m + 1)
        if i < m:
            prod = a.multiply(_basis_vec(d, w[i]), _basis_vec(d, w[i + 1]))
            left, right = w[:i], w[i + 2:]
        else:
            prod = a.multiply(_basis_vec(d, w[m]), _basis_vec(d, w[0]))
            left, right = (), w[1:m]
        for k in range(d):
            if prod[k]:
                out[tensor_index(left + (int(k),) + right, d), col] += int(prod[k])
    return out % a.modulus


def ref_degeneracy_dense(a, m: int, i: int):
    """Insert the unit after slot i, one monomial at a time."""
    import numpy as np

    d = a.dim
    out = np.zeros((d ** (m + 2), d ** (m + 1)), dtype=np.int64)
    for col in range(d ** (m + 1)):
        w = tensor_word(col, d, m + 1)
        for k in range(d):
            if a.unit[k]:
                row = tensor_index(w[: i + 1] + (int(k),) + w[i + 1:], d)
                out[row, col] += int(a.unit[k])
    return out % a.modulus


def ref_rotation_dense(dim: int, m: int):
    """Move the last tensor slot to the front, one monomial at a time."""
    import numpy as np

    out = np.zeros((dim ** (m + 1), dim ** (m + 1)), dtype=np.int64)
    for col in range(dim ** (m + 1)):
        w = tensor_word(col, dim, m + 1)
        out[tensor_index((w[m],) + w[:m], dim), col] = 1
    return out
