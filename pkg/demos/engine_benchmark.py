"""Time the three exact evaluation engines on a few knots and modules."""

import time

from logknot import preset, tangle_operator
from logknot.repn import build_irreducible, build_projective

cases = [
    ("trefoil", build_projective(3, 1, 1)),
    ("figure8", build_projective(3, 1, 1)),
    ("figure8", build_irreducible(5, 1, 5)),
    ("cinquefoil", build_projective(4, -1, 2)),
]
for name, M in cases:
    row = [f"{name:10s} {M.name:14s} dim {M.dim:2d}"]
    ref = None
    for method in ("block", "dense", "sparse"):
        t0 = time.perf_counter()
        z = tangle_operator(preset(name), M, method=method)
        row.append(f"{method} {time.perf_counter() - t0:7.3f}s")
        ref = z.matrix if ref is None else ref
        assert z.matrix == ref
    print("  ".join(row))
