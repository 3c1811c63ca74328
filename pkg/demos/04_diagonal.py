"""Carrying several generated semi-norms with one diagonal weight.

For weight functions v_0, v_1, ... on an enumeration a_0, a_1, ..., the
weight v(a_n) = max(1, v_0(a_n), ..., v_n(a_n)) generates a semi-norm with
|a|_v >= Q_m |a|_{v_m}.  Below the bound is checked exactly on samples.
"""
from fractions import Fraction as F

from fsnorm.diagonal import Enumeration, diagonal_weights, verify_carry_bound
from fsnorm.exactq import matrix
from fsnorm.fincat import GeneratorArrow, ObjectSpec, PresentedCategory

cat = PresentedCategory(
    (ObjectSpec("X", 2), ObjectSpec("Y", 1)),
    (GeneratorArrow("s", "X", "X", matrix([[0, 1], [1, 0]])),
     GeneratorArrow("p", "X", "Y", matrix([[1, 1]]))),
)
en = Enumeration((("X", (1, 0)), ("X", (1, 1)), ("Y", (1,))))
families = [
    [F(1, 2), 4, 1],
    [6, F(1, 3), 2],
    [1, 1, 9],
]
v = diagonal_weights(en, families)
print("diagonal weights", [str(x) for x in v])

samples = [("X", (2, -1)), ("X", (0, 3)), ("Y", (F(5, 2),))]
for m in range(len(families)):
    rep = verify_carry_bound(cat, en, v, families, m, samples, depth=8)
    print(f"m={m}: Q={rep.Q}  q={[str(q) for q in rep.q_values]}")
    for (o, a), lhs, rhs, ok in rep.verified_samples:
        print(f"    {o}{tuple(str(x) for x in a)}: |a|_v = {lhs} >= {rhs}  {ok}")
