"""The circle and its degree-2 self map.

H_1 of the circle is Q and the doubling map acts by 2.  Any functorial
semi-norm must satisfy 2|a| = |f(a)| <= |a|, so it vanishes.  The
truncated generated values show the decay, and the locus module turns the
eigenvalue 2 into a certificate.
"""
from fsnorm.homology import circle_model_bridge
from fsnorm.locus import universal_locus
from fsnorm.seminorm import GeneratingFamily, eval_generated

cat = circle_model_bridge()
fam = GeneratingFamily.from_elements([("X", (1,))], [1])

for k in range(0, 11, 2):
    print(f"depth {k:2d}:", eval_generated(cat, fam, "X", (1,), k))

loc = universal_locus(cat)["X"]
cert = loc.certificates[0]
print("universal locus dim", loc.space.dim, "of", loc.space.ambient_dim, "status", loc.status)
print("certificate: word", cert.witness_word, "eigenvalue", cert.eigenvalue, "verified", cert.verify(cat))
