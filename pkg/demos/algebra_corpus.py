"""The builtin algebra corpus: structure constants, validation, mod p^2 lifts.

Every algebra is a table of structure constants over F_p. The interesting
split for lifting is 0/1 constants (path algebras, matrix algebras, group
algebras) versus constants that genuinely use the characteristic.
"""

from nchodge.algebra import (check_lift, commutator_quotient, literal_lift,
                             validate_algebra)
from nchodge.corpus import DESCRIPTIONS, build, corpus_names

p = 3
print(f"corpus at p = {p}:")
for name in corpus_names():
    a = build(name, p)
    dim_q, _ = commutator_quotient(a)
    print(f"  {name:20s} dim {a.dim}  dim A/[A,A] {dim_q}  "
          f"{DESCRIPTIONS[name]}")

print("\nvalidation catches broken tables:")
a = build("m2", p)
assert validate_algebra(a) == []
print("  m2: associativity and unit laws hold")

print("\nliteral lifts (reuse the constants mod p^2):")
for name in ("m2", "upper-tri-2", "kronecker", "group-z3"):
    rep = check_lift(literal_lift(build(name, p)))
    verdict = "a valid W_2 lift" if rep.valid else f"fails: {rep.failures[:2]}"
    print(f"  {name:14s} {verdict}")
