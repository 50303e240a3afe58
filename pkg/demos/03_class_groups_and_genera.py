"""
Class groups of discriminant -4n
================================

Composition tables, group structure, and where one genus per class makes
the whole question a congruence.
"""

# %%
from collections import Counter

from pqforms import class_group, genus_partition, is_convenient

for n in (5, 14, 21, 30, 41):
    G = class_group(-4 * n)
    print(n, G.order, G.invariants(), len(genus_partition(-4 * n).blocks))

# %%
# the composition table of C(-56), by index
G = class_group(-56)
names = [str(f) for f in G.classes]
print(names)
for row in G.table:
    print(row)

# %%
# convenient numbers below 200; Euler's list ends at 1848
convenient = [n for n in range(1, 200) if is_convenient(n)]
print(convenient)

# %%
# cyclic vs not
shapes = Counter(tuple(class_group(-4 * n).invariants()) for n in range(1, 200))
for shape, count in sorted(shapes.items(), key=lambda kv: (len(kv[0]), kv[0]))[:12]:
    print(shape, count)
