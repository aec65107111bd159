"""The framing-corrected scalar on the 2-dimensional simple module is the
Jones polynomial at t = q^-2. Compare it with an independent Kauffman
bracket computation for a few knots.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from logknot import colored_jones, preset  # noqa: E402
from logknot.scalar import to_complex  # noqa: E402
from tests.oracles import jones_at_root, jones_polynomial, word_crossings  # noqa: E402

for name in ("trefoil", "figure8", "cinquefoil"):
    b = preset(name)
    print(f"{name}: V(t) at t = 2: {jones_polynomial(b.strands, word_crossings(b), 2).real:+.0f}")
    for p in (5, 7, 9):
        ours = complex(to_complex(colored_jones(b, 2, p)))
        ref = jones_at_root(b.strands, word_crossings(b), p)
        print(f"  p={p}: J_2 = {ours:.12f}   bracket = {ref:.12f}   |diff| = {abs(ours - ref):.1e}")
