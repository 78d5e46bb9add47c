"""The column filtration of the mixed bicomplex and when it degenerates.

Filtering the (b, B) bicomplex by columns produces a spectral sequence
from Hochschild homology to cyclic homology. Degeneration at the first
page means dim HC_n equals the stacked sum of Hochschild dimensions; the
inequality <= always holds, so a single strict drop certifies a
differential survives.
"""

from nchodge.corpus import build
from nchodge.hochcyc import hodge_ss

p, N = 3, 5

for name in ("upper-tri-2", "dual-numbers"):
    a = build(name, p)
    rep = hodge_ss(a, N, pages_budget=4000)
    print(f"{name}: degenerate = {rep.degenerate}")
    for n in sorted(rep.abutment):
        sums = rep.hodge_sums[n]
        mark = "=" if sums == rep.abutment[n] else "<"
        print(f"  degree {n}: HC {rep.abutment[n]} {mark} stacked HH {sums}")
    if rep.page_tables is not None:
        nonzero = [pg.r for pg in rep.page_tables
                   if pg.r >= 1 and not pg.is_flat()]
        print("  pages (r >= 1) with a nonzero differential:",
              nonzero or "none")
    print()

print("upper-tri-2 lifts to W_2 with its 0/1 constants and degenerates;")
print("dual numbers at p = 3 do not degenerate: the page-one differential")
print("is the obstruction the lifting criterion talks about.")
