"""Vanishing loci and the carries relation on a finite model.

X = Q^2 carries the swap s and a projection p: X -> Y = Q.  Because s is
an involution the morphism set is finite and every generated value is
exact.
"""
from fsnorm.exactq import matrix
from fsnorm.fincat import GeneratorArrow, ObjectSpec, PresentedCategory, enumerate_morphisms
from fsnorm.locus import carries, seminorm_locus, universal_locus
from fsnorm.seminorm import GeneratingFamily, Generated

cat = PresentedCategory(
    (ObjectSpec("X", 2), ObjectSpec("Y", 1)),
    (GeneratorArrow("s", "X", "X", matrix([[0, 1], [1, 0]])),
     GeneratorArrow("p", "X", "Y", matrix([[1, 1]]))),
)
print("stabilized:", enumerate_morphisms(cat, 8).stabilized)

# zero weight on the antisymmetric vector: that line becomes free
sigma = Generated(cat, GeneratingFamily.from_elements([("X", (1, 0)), ("X", (1, -1))], [1, 0]))
tau = Generated(cat, GeneratingFamily.from_elements([("X", (1, 0))], [2]))

for name, h in (("sigma", sigma), ("tau", tau)):
    for o in ("X", "Y"):
        b = seminorm_locus(h, o, 8)
        print(f"N_{name}({o}) basis", [[str(x) for x in v] for v in b.inner.vectors()], "exact" if b.exact else "")

print("tau carries sigma:  ", carries(cat, tau, sigma).status)
v = carries(cat, sigma, tau)
print("sigma carries tau:  ", v.status, "witness", [str(x) for x in v.witness[1]], "tau value", v.tau_value)
print("universal locus dims:", {o: l.space.dim for o, l in universal_locus(cat).items()})
