"""Hochschild and cyclic homology by exact sparse elimination over F_p.

Two running examples. The dual numbers k[x]/x^2 stay homologically "big"
forever (modular behavior: at p = 3 the usual periodicity interacts with
the characteristic). The 2x2 matrix algebra is Morita trivial, so its
tables collapse to the ground field's.
"""

from nchodge.corpus import build
from nchodge.hochcyc import hc_dims, hh_dims, sbi_check

p, N = 3, 6

for name in ("ground-field", "dual-numbers", "m2", "upper-tri-2"):
    a = build(name, p)
    hh = hh_dims(a, N)
    hc = hc_dims(a, N)
    print(f"{name} (dim {a.dim}):")
    print("  HH:", [hh[n] for n in sorted(hh)], f" degrees 0..{N - 1}")
    print("  HC:", [hc[n] for n in sorted(hc)], f" degrees 0..{N - 2}")

print("\nthe periodicity triangle ties the two tables together;")
print("dimension bookkeeping must split exactly at every spot:")
rep = sbi_check(build("dual-numbers", p), N)
for n in rep.degrees:
    print(f"  degree {n}: ranks {rep.ranks[n]}  checks {rep.spots[n]}")
print("exact:", rep.exact)
