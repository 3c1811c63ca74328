"""No finite functorial semi-norm carries all others: the computation.

Objects are the naturals m and sequences w >= 1, with arrows m -> w acting
by ceil(w(m)).  For a candidate weight v, the sequence w(m) = m v(m) + 1
keeps |1_w|_w >= 1/2 while |1_w|_v <= 1/m for every m, so |1_w|_v = 0.
"""
from fractions import Fraction as F

from fsnorm.counterexample import EventualSeq, brute_force_value, closed_form_value, gap_demo

for v in (EventualSeq.constant(1), EventualSeq((2, F(1, 3), 5), F(3, 2))):
    rep = gap_demo(v, m_max=8)
    print(rep.table())
    print()

# the closed form agrees with a brute-force LP on truncations
v = EventualSeq((3, 1, F(1, 2)), 2)
w = rep.w
for M in range(1, 6):
    print(f"M={M}: closed form {closed_form_value(v, w, M)[0]}, oracle {brute_force_value(M, v, w)}")
