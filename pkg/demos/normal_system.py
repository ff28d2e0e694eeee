"""Build the normal system of z^2 - x*y^4, deform it, and check equisingularity.

Each level f_i is the Weierstrass polynomial of the first generalized
discriminant of f_(i+1) that does not vanish identically. Splitting the
coefficients as jet + t*tail gives a family joining the m-jet (t = 0) to the
original (t = 1); the checker decides whether that family is Zariski
equisingular.
"""

from germ_forge import build_cascade, build_deformation, check_system, parse_poly
from germ_forge.cascade import constant_family

ns = build_cascade([parse_poly("z^2 - x*y^4", ("x", "y", "z"))], 12, seed=7)
# levels are stored in the final coordinates, so the change drawn at level 2
# also shows up in f_3
print(f"coordinate change, old = M * new: M = {[[str(c) for c in row] for row in ns.change.matrix]}")
print(f"degrees (p_3..p_0): {ns.degrees}, discriminant indices (j_3..j_1): {ns.indices}")
for lv in ns.levels:
    unit = "" if lv.unit is None else f", unit {lv.unit.body}"
    print(f"  f_{lv.index} = {lv.f.to_series().body}{unit}")
print(f"reconstruction errors: {ns.reconstruction_errors()}")

print(f"constant family: {check_system(constant_family(ns), 12).verdict}")
for m in (3, 4, 5, 6):
    verdict = check_system(list(build_deformation(ns, m).members), 12)
    print(f"split at m = {m}: {verdict.verdict}")
    for w in verdict.witnesses:
        print(f"    witness: {w.description}")
