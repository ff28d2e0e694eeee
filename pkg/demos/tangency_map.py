"""The approximation map phi_m(x) = (x_1, ..., x_n + (tau/delta)^m).

phi_m differs from the identity only in order m*ord(tau), so it leaves every
arc through the origin unchanged up to t-order m - 1.
"""

from germ_forge import TruncatedArc, parse_list, parse_poly
from germ_forge.tangency import apply_to_arc, make_phi, verify_tangency

VARS = ("x1", "x2")
tau = parse_poly("x1*x2 + x1^2", VARS)
arc = TruncatedArc(tuple(parse_list("t + t^2, 2*t", ("t",))), 2)
for m in (1, 2, 3):
    phi = make_phi(tau, 2, m)
    order, holds = verify_tangency(phi)
    moved = apply_to_arc(phi, arc, 8)
    print(f"m = {m}: phi = ({', '.join(map(str, phi.components))})")
    print(f"  ord(phi - id) = {order} (bound holds: {holds}); arc (t + t^2, 2t) -> ({moved})")
