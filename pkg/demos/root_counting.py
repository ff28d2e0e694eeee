"""Counting distinct roots with generalized discriminants.

Delta_1 is the classical discriminant and Delta_p = p!. A monic polynomial of
degree p has exactly d distinct roots when Delta_1..Delta_(p-d) vanish and
Delta_(p-d+1) does not.
"""

from germ_forge import gen_discriminants, parse_poly
from germ_forge.discriminants import distinct_root_count, gen_disc_oracle, univariate

print("Delta_j for a generic cubic T^3 + a1 T^2 + a2 T + a3:")
for j in (1, 2, 3):
    print(f"  Delta_{j} = {gen_disc_oracle(3, j)}")

for roots in ([1, 2, 3], [1, 1, 2], [2, 2, 2], [0, 0, 1, 1, -1]):
    f = [1]
    for r in roots:
        f = [a - r * b for a, b in zip(f + [0], [0] + f)]
    F = univariate(f[1:])
    pattern = [v.value for v in gen_discriminants(F).vanishing_pattern()]
    print(f"roots {roots}: pattern {pattern}, distinct roots {distinct_root_count(F)}")
