"""Z/p acting on tensor powers: homology, the norm complex, repeated words.

The cyclic group of order p rotates the factors of V^(x p). Its homology
in every positive degree has dimension exactly dim V, and the classes are
presented by repeated words v (x) v (x) ... (x) v. That tiny statement is
the engine of the whole Cartier comparison: it is checked here by raw
linear algebra, no simplicial machinery involved.
"""

from nchodge.cartier import (ZpModuleAction, block_rotation, iota_iso,
                             vdagger, zp_homology_dims)

for p, dim in ((3, 2), (3, 4), (5, 3)):
    sigma = block_rotation(dim, p, 1, p)
    act = ZpModuleAction(sigma, p)
    hom = zp_homology_dims(act, l_max=4)
    print(f"dim V = {dim}, p = {p}: V^(x p) has dim {act.dim}, "
          f"H_l = {[hom[l] for l in range(5)]} for l = 0..4")

    vd = vdagger(act)
    print(f"  norm complex: h0 = {vd.h0}, h1 = {vd.h1}, "
          f"tight = {vd.tight} (fast path: {vd.fast_path})")

    rep = iota_iso(dim, p, l_max=4, samples=100, seed=0)
    print(f"  repeated words: bijective = {rep.bijective}, "
          f"natural = {rep.natural}, additive mod boundaries = {rep.additive}")
