"""What goes wrong without the sign condition.

Over F_5 with twist a = (1, 2, 2, 2) the product of the signs epsilon(a_i)
is -1.  There is no self-dual isotropic code at all, yet the space of
invariants of degree (1, 3, 0, 0) is one-dimensional.  The invariant comes
from Sigma = 4 b_0 - sum_{v in I} b_v with I the nonzero isotropic vectors of
v_1^2 + 2(v_2^2 + v_3^2 + v_4^2): every generator fixes Sigma except the
Fourier transform, which negates it, and this sign is cancelled by the
Galois twist.

The demo runs on F_5 with the form xy/5 and the quadratic map x^2/5 only:
the linear phase x/5 of the 5_1E descriptor does not fix Sigma.

Run: python demos/03_sign_condition.py
"""

from cliffordweil.conjinv import counterexample_demo
from cliffordweil.typespec import TwistedSum, builtin, sign_condition, sign_epsilon

t = builtin("5_1E")
print("epsilon(1, a) for a = 1..4:", [sign_epsilon(t, 1, a) for a in (1, 2, 3, 4)])
print("sign condition for (1,2,2,2):", sign_condition(TwistedSum(t, (1, 2, 2, 2))))
print("sign condition for (1,1,4,4):", sign_condition(TwistedSum(t, (1, 1, 4, 4))))
print()
for name, (ok, detail) in counterexample_demo().items():
    print(f"{'ok ' if ok else 'BAD'} {name:34s} {detail}")
