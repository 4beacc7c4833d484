"""Classify self-dual isotropic codes of Type (N, N) over F_4 and check the mass formula.

Run: python demos/01_classification.py
"""

from fractions import Fraction
from math import factorial

from cliffordweil import codes as cd
from cliffordweil.typespec import TwistedSum, builtin

t = builtin("4II_E")
print(f"representation {t.name}: alphabet F_{t.q}, conductor {t.conductor}\n")

# Brute force lists every code; the neighbor graph starts from T_{N,N} and
# walks (C cap x^perp) + <x>.  Both should produce the same classes.
for N in range(1, 5):
    ts = TwistedSum.nn(t, N)
    bf = cd.enumerate_bruteforce(ts)
    nb = cd.classify_neighbors(ts, cd.trivial(t, N), bf.t)
    mass = bf.mass()
    print(f"N = {N}: t_N = {bf.t:4d}, classes = {len(bf.classes)}, |Aut| = {bf.aut_orders}")
    print(f"        sum 1/|Aut| = {mass} = t_N/(N!)^2 = {Fraction(bf.t, factorial(N) ** 2)}"
          f"   neighbors agree: {cd.same_classes(bf, nb)}")

print("\nindecomposable codes named in the tables:")
for label, C in cd.listed_codes("4II_E"):
    reps = cd.enumerate_bruteforce(C.ts).classes
    hit = [i for i, R in enumerate(reps, 1) if cd.equivalent(R, C) is not None]
    print(f"  {label:22s} N = {C.N // 2}, is_type = {cd.is_type(C)}, class {hit[0]}")

print("\nC_{4,4}(F_4):")
print(cd.C44_F4(t).matrix_str())
