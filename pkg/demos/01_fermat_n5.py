"""
Products of primes as x^2 + 5y^2
================================

Fermat observed that two primes ending in 3 or 7 multiply to a value of
x^2 + 5y^2. Here we watch the reduced forms of discriminant -20 explain it.
"""

# %%
import numpy as np

from pqforms import QuadForm, classify_prime, decide_pq, enumerate_reduced, genus_partition
from pqforms.numtheory import primes_up_to

# two reduced forms, one per genus
forms = enumerate_reduced(-20)
print(forms)
for residues, members in genus_partition(-20).blocks:
    print(sorted(residues), [str(f) for f in members])

# %%
# 3 and 7 both sit on 2x^2 + 2xy + 3y^2, so their product lands on the principal form
for p in (3, 7):
    c = classify_prime(p, 5)
    print(p, [str(f) for f in c.forms], [(w.x, w.y) for w in c.witnesses])

d = decide_pq(3, 7, 5)
print("3*7 =", f"{d.witness[0]}^2 + 5*{d.witness[1]}^2")

# %%
# tabulate which odd primes below 200 each form picks up
primes = np.array([p for p in primes_up_to(200) if p not in (2, 5)])
for f in forms:
    hit = [int(p) for p in primes if classify_prime(int(p), 5).forms == (f,)]
    print(f"{f.pretty():>14}", hit)

# %%
# a 3 mod 20 prime times a 1 mod 20 prime never works
print(decide_pq(3, 41, 5).representable, decide_pq(43, 47, 5).witness)
