"""Central decomposition of the trefoil at p = 3.

Prints the exact scalars a_s on the simple blocks and the off-diagonal
coefficients b_s^+- on the projective blocks, with and without removing
the blackboard framing.
"""

from logknot import decompose, preset
from logknot.scalar import to_complex

knot = preset("trefoil")
for corrected in (False, True):
    d = decompose(knot, 3, framing_correct=corrected)
    print(f"framing corrected: {corrected}")
    for family, s, value in d.items():
        z = complex(to_complex(value))
        print(f"  {family:8s} s={s}  {value!s:40s} ~ {z.real:+.6f}{z.imag:+.6f}i")
