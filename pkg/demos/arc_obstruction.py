"""Two hypersurfaces with the same 2k-jet but different arc spaces.

f = z^2 - x*y^4 contains the line (t, 0, 0). The perturbations
f_k = z^2 - x*(y^4 + x^(2k)) agree with f up to degree 2k, yet no arc on
f_k starts like (t, 0, 0): along any lift, z^2 has even t-order while
x*(y^4 + x^(2k)) has odd t-order, so the two can never cancel.
"""

from germ_forge import TruncatedArc, member_trunc, parse_list, parse_poly, replay_certificate
from germ_forge.series import jet

VARS = ("x", "y", "z")
f = parse_poly("z^2 - x*y^4", VARS)
gamma = TruncatedArc(tuple(parse_list("t, 0, 0", ("t",))), 1)

cert = member_trunc(f, gamma, K=12)
print(f"f = {f}")
print(f"  (t,0,0) in A_1(f): {cert.kind}, witness {cert.payload['witness']}")

for k in (1, 3, 5):
    fk = parse_poly(f"z^2 - x*(y^4 + x^{2 * k})", VARS)
    print(f"f_{k} = {fk}")
    print(f"  jet(f_{k}, {2 * k}) == jet(f, {2 * k}): {jet(fk, 2 * k) == jet(f, 2 * k)}")
    cert = member_trunc(fk, gamma, K=12)
    print(f"  (t,0,0) in A_1(f_{k}): {cert.kind}")
    for g in cert.payload["groups"]:
        print(f"    {str(g['terms']):>20}  has t-order in {g['orders'].describe()}")
    print(f"  certificate replays: {replay_certificate(fk, cert)}")
