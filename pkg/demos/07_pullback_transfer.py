"""Pulling semi-norms back and moving them along a retraction.

A natural transformation eta: F => F' turns a functorial semi-norm on F'
into one on F.  A retraction of categories moves a semi-norm from F over C
to G over D; here D is a single object and C has two isomorphic objects.
"""
from fractions import Fraction as F

from fsnorm.exactq import matrix
from fsnorm.fincat import CatFunctor, GeneratorArrow, ObjectSpec, PresentedCategory
from fsnorm.seminorm import (
    GeneratingFamily,
    Generated,
    NatTransform,
    Pullback,
    check_functorial,
    evaluate,
    transfer_along_retraction,
)

C = PresentedCategory(
    (ObjectSpec("X", 1), ObjectSpec("Y", 1)),
    (GeneratorArrow("f", "X", "Y", matrix([[2]])),
     GeneratorArrow("g", "Y", "X", matrix([[F(1, 2)]]))),
)
sigma = Generated(C, GeneratingFamily.from_elements([("X", (1,)), ("Y", (1,))], [3, 1]))

# pull back along 3 * id
eta = NatTransform(C, C, {"X": matrix([[3]]), "Y": matrix([[3]])})
pb = Pullback(eta, sigma)
print("|1|_sigma at X =", evaluate(sigma, "X", (1,), 4).upper_bound,
      " pulled back:", evaluate(pb, "X", (1,), 4).upper_bound)

D = PresentedCategory((ObjectSpec("Z", 1),))
A = CatFunctor(C, D, {"X": "Z", "Y": "Z"}, {"f": (), "g": ()})
B = CatFunctor(D, C, {"Z": "X"}, {})
lam = NatTransform(D, D, {"Z": matrix([[1]])}, functor=B.then(A))
psi = NatTransform(C, D, {"X": matrix([[1]]), "Y": matrix([[F(1, 2)]])}, functor=A)
moved = transfer_along_retraction(A, B, lam, psi, sigma)
print("transferred |1| at Z =", evaluate(moved, "Z", (1,), 4).upper_bound)
print("functoriality violations:", len(check_functorial(C, pb, 4, {"X": [(1,)], "Y": [(2,)]}).violations))
