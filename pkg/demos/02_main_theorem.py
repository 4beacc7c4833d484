"""The conjugate weight enumerators of codes span the invariant space.

For each length we compare two independent numbers:
  rank     - rank of the matrix of genus-m enumerators of the class representatives
  inv. dim - dimension of the degree-d invariants of the Clifford-Weil group,
             computed from the generators alone (no group closure)

Run: python demos/02_main_theorem.py
"""

from cliffordweil.conjinv import ccwe, verify_main
from cliffordweil.codes import trivial
from cliffordweil.typespec import TwistedSum, builtin

for name in ("3_1E", "2II"):
    t = builtin(name)
    print(f"{name}: {len(TwistedSum.nn(t, 1).degree)} Galois positions")
    for m in (1, 2):
        for N in range(1, 5):
            rep = verify_main(TwistedSum.nn(t, N), m)
            print(f"  genus {m}  N = {N}  degree {rep.degree}  classes {rep.classes}  "
                  f"rank {rep.rank}  inv. dim {rep.invariant_dim}  monomials {rep.monomial_count}  {rep.verdict}")
    print()

# a small enumerator written out; x{i}o{j} is x_i composed with the j-th Galois automorphism
P = ccwe(trivial(builtin("3_1E"), 1), 1)
print("ccwe_1(T_{1,1}) over F_3 =", " + ".join(f"{c.to_fraction()}*{mon}" for mon, c in P.sorted_terms()))
