"""Compare the projective coefficients b_s^+- with derivatives of the
colored Alexander invariant O_lam, for the trefoil and figure eight knot.
"""

from logknot import preset
from logknot.alexander import verify_theorem4

for name in ("trefoil", "figure8"):
    for p in (2, 3, 4):
        report = verify_theorem4(preset(name), p)
        print(f"{name} p={p}: {'ok' if report.passed else 'FAILED'} (worst residual {report.worst:.2e})")
        for label, residual, tol in report.rows:
            print(f"    {label:32s} {residual:.2e}  (tol {tol:g})")
