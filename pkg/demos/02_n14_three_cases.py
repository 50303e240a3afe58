"""
x^2 + 14y^2 and the polynomial (x^2 + 1)^2 - 8
===============================================

Discriminant -56 has four reduced forms in two genera. Congruences mod 56
separate the genera but cannot tell x^2 + 14y^2 from 2x^2 + 7y^2; a root
of (x^2 + 1)^2 - 8 mod p can.
"""

# %%
from pqforms import class_group, classify_pair_table, decide_pq
from pqforms.represent import in_s14
from pqforms.numtheory import F14, poly_roots_mod_p, primes_up_to

G = class_group(-56)
print("classes:", [str(f) for f in G.classes], "structure:", G.invariants())

# %%
t = classify_pair_table(14, 400)
for row in t.rows:
    print(f"{row.form.pretty():>14}  residues {row.residues}  primes {row.primes}")

# %%
# principal genus primes split by S
principal = {1, 9, 15, 23, 25, 39}
for p in primes_up_to(300):
    if p % 56 in principal:
        print(p, "S" if in_s14(p) else "-", sorted(poly_roots_mod_p(F14, p)))

# %%
# 23 is in S, 71 is not, so 23*71 is out; 71*79 share 2x^2 + 7y^2 and work
for p, q in [(23, 71), (71, 79), (23, 79), (3, 5)]:
    d = decide_pq(p, q, 14)
    print(p, q, d.representable, d.common_form, d.witness)
