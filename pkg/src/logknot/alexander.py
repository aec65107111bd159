"""Colored Alexander invariants on non-integral weight modules and their derivatives.

O_lam(K) is the scalar by which the tangle element acts on the p-dimensional
module X(lam + 1).  The logarithmic coefficients b_s^{+-} are recovered from
lam-derivatives of O at integer points, and a_s from its values there.
All evaluations run in the mpmath backend; derivatives are central
differences refined by one Richardson step.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .center import decompose
from .repn import build_x_lambda, build_y_glued
from .scalar import DEFAULT_PRECISION, complex_backend, to_complex
from .contraction import evaluate_sparse
from .tangle import FramedBraidWord, MultiComponentError, closure_components, tangle_operator

__all__ = [
    "AlexanderEvaluation",
    "colored_alexander",
    "alexander_derivative",
    "glued_offdiagonal",
    "offdiagonal_residual",
    "highest_weight_residual",
    "derivative_coefficient",
    "verify_theorem4",
    "verify_symmetry",
    "SuiteReport",
    "DEFAULT_STEP",
    "DEFAULT_OFFSET",
]

DEFAULT_STEP = 1e-3
DEFAULT_OFFSET = 1e-6


@dataclass(frozen=True)
class AlexanderEvaluation:
    p: int
    lam: object
    value: object
    derivative: object = None
    error: float | None = None


def _require_knot(b: FramedBraidWord):
    if closure_components(b) != 1:
        raise MultiComponentError(f"closure of {str(b)!r} is not a knot")


def _ctx(p, precision):
    return complex_backend(p, precision).ctx


def _near_integer(x, tol=1e-9) -> bool:
    z = complex(x)
    return abs(z.imag) < tol and abs(z.real - round(z.real)) < tol


def _entry00(b: FramedBraidWord, p: int, lam, precision: int):
    """(v_0, v_0) entry of z on X(lam + 1); only the first column is propagated."""
    ctx = _ctx(p, precision)
    M = build_x_lambda(p, ctx.mpc(lam) + 1, precision)
    z = evaluate_sparse(M, b.strands, b.letters, open_cols=[0])
    v = z[0, 0]
    return v if v else ctx.mpc(0)


def colored_alexander(
    b: FramedBraidWord, p: int, lam, precision: int = DEFAULT_PRECISION, check: bool = True, tol: float = 1e-8
):
    """O_lam^p of the closure of ``b``: the scalar of z on X(lam + 1).

    With ``check`` the full operator is computed and asserted to be scalar
    (relative tolerance ``tol``).
    """
    _require_knot(b)
    ctx = _ctx(p, precision)
    lam = ctx.mpc(lam)
    if _near_integer(lam + 1):
        warnings.warn(f"lam + 1 = {complex(lam + 1)} is integral: X(lam + 1) is reducible", RuntimeWarning, stacklevel=2)
    if not check:
        return _entry00(b, p, lam, precision)
    op = tangle_operator(b, build_x_lambda(p, lam + 1, precision), method="sparse", check=False)
    if not op.is_scalar(tol):
        raise ArithmeticError(f"non-scalar action on X({complex(lam + 1)}); precision exhausted?")
    return op.scalar()


def alexander_derivative(
    b: FramedBraidWord, p: int, lam0, h: float = DEFAULT_STEP, precision: int = DEFAULT_PRECISION
) -> AlexanderEvaluation:
    """dO/dlam at lam0 by central differences at steps h and h/2 plus Richardson.

    ``error`` is the size of the Richardson correction, an estimate of the
    error left in the h/2 difference.
    """
    _require_knot(b)
    ctx = _ctx(p, precision)
    lam0 = ctx.mpc(lam0)
    step = ctx.mpf(h)

    def diff(k):
        return (_entry00(b, p, lam0 + k, precision) - _entry00(b, p, lam0 - k, precision)) / (2 * k)

    d1, d2 = diff(step), diff(step / 2)
    rich = (4 * d2 - d1) / 3
    value = None if _near_integer(lam0 + 1) else _entry00(b, p, lam0, precision)
    return AlexanderEvaluation(p, lam0, value, rich, float(abs(rich - d2)))


def glued_offdiagonal(b: FramedBraidWord, p: int, lam, s: int, precision: int = DEFAULT_PRECISION):
    """The (c_s, d_0) entry of z on the glued module Y(lam, s), 1 <= s <= p-1.

    c_p is not a basis vector, so s = p has no such entry.
    """
    _require_knot(b)
    if not 1 <= s <= p - 1:
        raise ValueError(f"s must lie in 1..{p - 1}")
    M = build_y_glued(p, _ctx(p, precision).mpc(lam), s, precision)
    d0 = M.index("d0")
    z = evaluate_sparse(M, b.strands, b.letters, open_cols=[d0])
    v = z[M.index(f"c{s}"), d0]
    return v if v else M.backend.zero


def offdiagonal_residual(b: FramedBraidWord, p: int, lam, s: int, precision: int = DEFAULT_PRECISION) -> float:
    """|O_{lam-2s-1} - (O_{lam-1} - [s][lam-s] x)| with x from :func:`glued_offdiagonal`."""
    be = complex_backend(p, precision)
    lam = be.ctx.mpc(lam)
    x = glued_offdiagonal(b, p, lam, s, precision)
    lhs = _entry00(b, p, lam - 2 * s - 1, precision)
    rhs = _entry00(b, p, lam - 1, precision) - be.qint(s) * be.qint(lam - s) * x
    return float(abs(lhs - rhs))


def highest_weight_residual(b: FramedBraidWord, p: int, lam, s: int, precision: int = DEFAULT_PRECISION) -> float:
    """Check that h = c_s - [s][lam-s] d_0 is an eigenvector of z with eigenvalue O_{lam-1-2s}."""
    be = complex_backend(p, precision)
    lam = be.ctx.mpc(lam)
    M = build_y_glued(p, lam, s, precision)
    cs, d0 = M.index(f"c{s}"), M.index("d0")
    z = evaluate_sparse(M, b.strands, b.letters, open_cols=[cs, d0])
    coef = be.qint(s) * be.qint(lam - s)
    h = {cs: be.one, d0: -coef}
    zh = {}
    for j, v in h.items():
        for i, x in z.col(j).items():
            zh[i] = zh.get(i, 0) + x * v
    o = _entry00(b, p, lam - 1 - 2 * s, precision)
    keys = set(zh) | set(h)
    return float(max(abs(zh.get(i, 0) - o * h.get(i, 0)) for i in keys))


def derivative_coefficient(p: int, s: int, precision: int = DEFAULT_PRECISION):
    """p sin^2(pi/p) / (pi sin(pi s/p)) at working precision."""
    ctx = _ctx(p, precision)
    return p * ctx.sinpi(ctx.mpf(1) / p) ** 2 / (ctx.pi * ctx.sinpi(ctx.mpf(s) / p))


@dataclass
class SuiteReport:
    """Residual rows, each with its own tolerance."""

    name: str
    tolerance: float
    rows: list = field(default_factory=list)  # (label, residual, tolerance)

    @property
    def passed(self) -> bool:
        return all(r < t for _, r, t in self.rows)

    @property
    def worst(self) -> float:
        return max((r for _, r, _ in self.rows), default=0.0)

    def add(self, label: str, residual: float, tol: float | None = None):
        self.rows.append((label, float(residual), self.tolerance if tol is None else tol))

    def __str__(self):
        lines = [f"{self.name}: {'pass' if self.passed else 'FAIL'} (worst {self.worst:.3e})"]
        for label, r, t in self.rows:
            lines.append(f"  {label:<28} {r:.3e}  tol {t:.0e}  {'ok' if r < t else 'FAIL'}")
        return "\n".join(lines)


def verify_theorem4(
    b: FramedBraidWord,
    p: int,
    tol: float = 1e-6,
    value_tol: float = 1e-8,
    h: float = DEFAULT_STEP,
    precision: int = DEFAULT_PRECISION,
    decomposition=None,
) -> SuiteReport:
    """Compare exact b_s^{+-} and a_s with derivatives and values of O.

        b_s^+ = -C_s (O'(2p-s-1) - O'(s-1)),  b_s^- = C_s (O'(s-1) - O'(-s-1)),
        a_s = O_{s-1},

    with C_s from :func:`derivative_coefficient`.  Value rows use ``value_tol``.
    """
    dec = decomposition or decompose(b, p)
    report = SuiteReport(f"theorem4 {b} p={p}", tol)
    deriv = {}

    def dO(mu):
        if mu not in deriv:
            deriv[mu] = alexander_derivative(b, p, mu, h, precision).derivative
        return deriv[mu]

    for s in range(1, p):
        C = derivative_coefficient(p, s, precision)
        bp = to_complex(dec.b_plus[s - 1], precision)
        bm = to_complex(dec.b_minus[s - 1], precision)
        report.add(f"b_{s}^+", abs(bp + C * (dO(2 * p - s - 1) - dO(s - 1))))
        report.add(f"b_{s}^-", abs(bm - C * (dO(s - 1) - dO(-s - 1))))
    for s in range(1, p + 1):
        a = to_complex(dec.a[s], precision)
        report.add(f"a_{s} - O_{s - 1}", abs(a - _entry00(b, p, s - 1, precision)), value_tol)
    return report


def _limit(b, p, mu, offset, precision):
    """Two-sided offset limit of O at mu; the symmetric mean cancels the first-order term."""
    return (_entry00(b, p, mu + offset, precision) + _entry00(b, p, mu - offset, precision)) / 2


def verify_symmetry(
    b: FramedBraidWord,
    p: int,
    tol: float = 1e-6,
    offset: float = DEFAULT_OFFSET,
    precision: int = DEFAULT_PRECISION,
    decomposition=None,
) -> SuiteReport:
    """O_{2p-s-1} = O_{s-1} = a_s for 1 <= s <= p, as limits from lam = integer +- offset."""
    dec = decomposition or decompose(b, p)
    report = SuiteReport(f"symmetry {b} p={p}", tol)
    for s in range(1, p + 1):
        lo = _limit(b, p, s - 1, offset, precision)
        hi = _limit(b, p, 2 * p - s - 1, offset, precision)
        a = to_complex(dec.a[s], precision)
        report.add(f"O_{2 * p - s - 1} - O_{s - 1}", abs(hi - lo))
        report.add(f"O_{s - 1} - a_{s}", abs(lo - a))
    return report
