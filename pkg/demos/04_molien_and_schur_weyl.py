"""Two cross-checks on the binary representation 2II.

1. The Clifford-Weil group has order 192.  Its conjugate Molien series,
   summed over the closure, must agree with the generator-nullspace
   dimensions degree by degree.
2. Each code C of Type (N, N) gives a 0/1 matrix M_C on (C^2)^{(x)N}.  These
   matrices commute with g^{(x)N} and span the whole commutant.

Run: python demos/04_molien_and_schur_weyl.py
"""

from cliffordweil.conjinv import invariant_dim, molien
from cliffordweil.cwgroup import group_for
from cliffordweil.schurweyl import verify_schurweyl
from cliffordweil.typespec import builtin

t = builtin("2II")
G = group_for(t, 1)
G.closure()
print(f"|C(2II)| = {G.order}")
s = molien(G, (5, 0, 0, 5))
print(" N   Molien   nullspace")
for N in range(6):
    d = (N, 0, 0, N)
    print(f" {N}   {str(s[d].to_fraction()):6s}   {invariant_dim(G, d)}")

print("\n m  N   t_N  span  commutant  basis")
for m in (1, 2):
    for N in (1, 2, 3):
        r = verify_schurweyl(t, m, N)
        print(f" {m}  {N}   {r.t_N:3d}  {r.span_dim:4d}  {r.commutant_dim:9d}  {r.basis}")
