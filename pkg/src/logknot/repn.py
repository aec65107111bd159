"""Explicit based modules of the restricted quantum group and its semi-restricted cover.

Every module carries a per-vector weight exponent ``w`` with ``K v = q**w v``.
The exponent is a lift of the K-eigenvalue that the R-matrix factor
``q**(H x H / 2)`` needs; minus-type eigenvalues ``-q**m`` are lifted to
``m + p`` or ``m - p`` exactly as the non-integral families specialise (see
:func:`build_projective`), which keeps E raising every lift by exactly 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .scalar import DEFAULT_PRECISION, ComplexBackend, ExactBackend, complex_backend, exact_backend
from .sparse import SparseMatrix

__all__ = [
    "WeightModule",
    "RelationReport",
    "build_irreducible",
    "build_projective",
    "build_x_lambda",
    "build_y_glued",
    "check_module_relations",
    "commutes",
    "nilpotent_map",
]


@dataclass(frozen=True, eq=False)
class WeightModule:
    """A based module with weight lifts and sparse E, F actions.

    ``E`` and ``F`` are :class:`SparseMatrix` objects acting on column vectors;
    ``K`` is diagonal and derived from ``weights``.
    """

    kind: str
    params: tuple
    p: int
    backend: ExactBackend | ComplexBackend
    labels: tuple[str, ...]
    weights: tuple
    E: SparseMatrix
    F: SparseMatrix
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(self.labels)})

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def exact(self) -> bool:
        return self.backend.exact

    @property
    def name(self) -> str:
        args = ",".join(_fmt_param(a) for a in self.params)
        return f"{self.kind}({args})"

    @property
    def key(self) -> tuple:
        return (self.kind, self.params, self.p, self.backend.key)

    def index(self, label: str) -> int:
        return self._index[label]

    def K(self, power: int = 1) -> SparseMatrix:
        """Diagonal action of K**power, i.e. zeta**(2*power*w)."""
        return SparseMatrix.diagonal([self.backend.zeta(2 * power * w) for w in self.weights])

    def identity(self) -> SparseMatrix:
        return SparseMatrix.identity(self.dim, self.backend.one)

    def dump(self) -> str:
        """Debug listing: one line per basis vector with weight and E/F images."""
        lines = [f"# {self.name} p={self.p} dim={self.dim}"]
        for j, lab in enumerate(self.labels):
            e = " ".join(f"{v}*{self.labels[i]}" for i, v in sorted(self.E.col(j).items()))
            f = " ".join(f"{v}*{self.labels[i]}" for i, v in sorted(self.F.col(j).items()))
            lines.append(f"{lab}\tw={_fmt_param(self.weights[j])}\tE: {e or 0}\tF: {f or 0}")
        return "\n".join(lines)

    def __repr__(self):
        return f"WeightModule({self.name}, p={self.p}, dim={self.dim})"


def _fmt_param(a):
    if isinstance(a, complex) and a.imag == 0:
        return repr(a.real)
    return str(a)


class _Builder:
    def __init__(self, backend, labels):
        self.backend = backend
        self.labels = list(labels)
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        self.e_entries = []
        self.f_entries = []

    def E(self, src, dst, value):
        self.e_entries.append((self.index[dst], self.index[src], self.backend.scalar(value)))

    def F(self, src, dst, value=1):
        self.f_entries.append((self.index[dst], self.index[src], self.backend.scalar(value)))

    def build(self, kind, params, p, weights):
        n = len(self.labels)
        return WeightModule(
            kind=kind,
            params=tuple(params),
            p=p,
            backend=self.backend,
            labels=tuple(self.labels),
            weights=tuple(self.backend.weight(w) for w in weights),
            E=SparseMatrix.from_entries((n, n), self.e_entries),
            F=SparseMatrix.from_entries((n, n), self.f_entries),
        )


def _check_p(p):
    if p < 2:
        raise ValueError(f"p must be >= 2, got {p}")


@lru_cache(maxsize=512)
def build_irreducible(p: int, alpha: int, s: int) -> WeightModule:
    """The irreducible X^alpha(s), basis |s,n>^alpha for 0 <= n < s."""
    _check_p(p)
    if alpha not in (1, -1):
        raise ValueError(f"alpha must be +1 or -1, got {alpha}")
    if not 1 <= s <= p:
        raise ValueError(f"irreducible label s={s} outside 1..{p}")
    be = exact_backend(p)
    sign = "+" if alpha == 1 else "-"
    b = _Builder(be, [f"|{s},{n}>{sign}" for n in range(s)])
    lab = b.labels
    for n in range(s):
        if n > 0:
            b.E(lab[n], lab[n - 1], be.qint(n) * be.qint(s - n) * alpha)
        if n + 1 < s:
            b.F(lab[n], lab[n + 1])
    shift = 0 if alpha == 1 else p
    return b.build("Irr", (alpha, s), p, [s - 1 - 2 * n + shift for n in range(s)])


@lru_cache(maxsize=512)
def build_projective(p: int, alpha: int, t: int) -> WeightModule:
    """The projective cover P^alpha(t), 1 <= t <= p-1, dimension 2p.

    For alpha = +1 the table is indexed by s = t; for alpha = -1 it is the
    P^-(p-s) table with s = p - t.  Basis labels are ``x{k}, y{k}`` for
    0 <= k < p-s and ``a{n}, b{n}`` for 0 <= n < s.

    Weight lifts follow the non-integral modules these specialise from:
    in P^+(s), a/b carry s-1-2n, x carries 2p-s-1-2k and y carries -s-1-2k;
    in P^-(p-s), a carries s-1-2n, b carries s-1-2n-2p and x/y carry -s-1-2k.
    """
    _check_p(p)
    if alpha not in (1, -1):
        raise ValueError(f"alpha must be +1 or -1, got {alpha}")
    if not 1 <= t <= p - 1:
        raise ValueError(f"projective label t={t} outside 1..{p - 1}")
    be = exact_backend(p)
    s = t if alpha == 1 else p - t
    m = p - s
    labels = [f"x{k}" for k in range(m)] + [f"y{k}" for k in range(m)]
    labels += [f"a{n}" for n in range(s)] + [f"b{n}" for n in range(s)]
    b = _Builder(be, labels)
    qq = be.qint

    for k in range(m):
        if k > 0:
            c = -(qq(k) * qq(p - s - k))
            b.E(f"x{k}", f"x{k - 1}", c)
            b.E(f"y{k}", f"y{k - 1}", c)
            if alpha == -1:
                b.E(f"y{k}", f"x{k - 1}", 1)
        else:
            b.E("y0", f"a{s - 1}", 1)
        if k + 1 < m:
            b.F(f"x{k}", f"x{k + 1}")
            b.F(f"y{k}", f"y{k + 1}")
        elif alpha == 1:
            b.F(f"x{k}", "a0")
        else:
            b.F(f"y{k}", "b0")
    for n in range(s):
        if n > 0:
            c = qq(n) * qq(s - n)
            b.E(f"a{n}", f"a{n - 1}", c)
            b.E(f"b{n}", f"b{n - 1}", c)
            if alpha == 1:
                b.E(f"b{n}", f"a{n - 1}", 1)
        else:
            b.E("b0", f"x{m - 1}", 1)
        if n + 1 < s:
            b.F(f"a{n}", f"a{n + 1}")
            b.F(f"b{n}", f"b{n + 1}")
        elif alpha == 1:
            b.F(f"b{n}", "y0")
        else:
            b.F(f"a{n}", "x0")

    weights = []
    for k in range(m):
        weights.append(2 * p - s - 1 - 2 * k if alpha == 1 else -s - 1 - 2 * k)
    for k in range(m):
        weights.append(-s - 1 - 2 * k)
    for n in range(s):
        weights.append(s - 1 - 2 * n)
    for n in range(s):
        weights.append(s - 1 - 2 * n if alpha == 1 else s - 1 - 2 * n - 2 * p)
    return b.build("Proj", (alpha, t), p, weights)


@lru_cache(maxsize=512)
def build_x_lambda(p: int, lam, precision: int = DEFAULT_PRECISION) -> WeightModule:
    """The p-dimensional highest-weight module X(lam), basis v0..v_{p-1}."""
    _check_p(p)
    be = complex_backend(p, precision)
    lam = be.ctx.mpc(lam)
    b = _Builder(be, [f"v{n}" for n in range(p)])
    for n in range(p):
        if n > 0:
            b.E(f"v{n}", f"v{n - 1}", be.qint(n) * be.qint(lam - n))
        if n + 1 < p:
            b.F(f"v{n}", f"v{n + 1}")
    return b.build("X", (complex(lam),), p, [lam - 1 - 2 * n for n in range(p)])


@lru_cache(maxsize=512)
def build_y_glued(p: int, lam, s: int, precision: int = DEFAULT_PRECISION) -> WeightModule:
    """The glued 2p-dimensional module Y(lam, s), basis c0..c_{p-1}, d0..d_{p-1}.

    For s = p the gluing makes E**p nonzero, so only 1 <= s <= p-1 gives a
    module of the restricted algebra; s = p is still constructed as written.
    """
    _check_p(p)
    if not 1 <= s <= p:
        raise ValueError(f"glue label s={s} outside 1..{p}")
    be = complex_backend(p, precision)
    lam = be.ctx.mpc(lam)
    labels = [f"c{n}" for n in range(p)] + [f"d{n}" for n in range(p)]
    b = _Builder(be, labels)
    qq = be.qint
    for n in range(p):
        if n > 0:
            b.E(f"c{n}", f"c{n - 1}", qq(n) * qq(lam - n))
        if n == 0:
            b.E("d0", f"c{s - 1}", 1)
        else:
            b.E(f"d{n}", f"d{n - 1}", qq(n) * qq(lam - 2 * s - n))
            if n <= p - s:
                b.E(f"d{n}", f"c{n + s - 1}", 1)
        if n + 1 < p:
            b.F(f"c{n}", f"c{n + 1}")
            b.F(f"d{n}", f"d{n + 1}")
    weights = [lam - 1 - 2 * n for n in range(p)] + [lam - 1 - 2 * s - 2 * n for n in range(p)]
    return b.build("Y", (complex(lam), s), p, weights)


@dataclass
class RelationReport:
    """Outcome per relation: ``results[name] = (passed, residual)``."""

    module: str
    exact: bool
    tolerance: float
    results: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(ok for ok, _ in self.results.values())

    def failures(self) -> list[str]:
        return [k for k, (ok, _) in self.results.items() if not ok]

    def __str__(self):
        mode = "exact" if self.exact else f"tol={self.tolerance:g}"
        rows = [f"{self.module} [{mode}]"]
        for k, (ok, r) in self.results.items():
            rows.append(f"  {'PASS' if ok else 'FAIL'}  {k}  residual={r:.3g}")
        return "\n".join(rows)


def _residual(mat: SparseMatrix, exact: bool) -> float:
    if exact:
        return float(mat.nnz)
    return mat.max_abs()


def _power(mat: SparseMatrix, n: int, one) -> SparseMatrix:
    out = SparseMatrix.identity(mat.shape[0], one)
    for _ in range(n):
        out = mat @ out
    return out


def check_module_relations(M: WeightModule, tol: float = 1e-10) -> RelationReport:
    """Check the defining relations of the (semi-)restricted algebra on M.

    Integral modules are checked exactly (residual = number of nonzero entries
    of the difference); non-integral ones to ``tol`` in max-abs norm.
    """
    be = M.backend
    exact = be.exact
    rep = RelationReport(M.name, exact, 0.0 if exact else tol)
    K, Kinv = M.K(1), M.K(-1)
    q2 = be.zeta(4)
    qdiff = be.zeta(2) - be.zeta(-2)
    E, F = M.E, M.F

    def record(name, mat):
        r = _residual(mat, exact)
        rep.results[name] = (r == 0 if exact else r <= tol, r)

    record("K E K^-1 = q^2 E", K @ E @ Kinv - E.scale(q2))
    record("K F K^-1 = q^-2 F", K @ F @ Kinv - F.scale(be.zeta(-4)))
    record("EF - FE = (K - K^-1)/(q - q^-1)", E @ F - F @ E - (K - Kinv).scale(1 / qdiff))
    record("E^p = 0", _power(E, M.p, be.one))
    record("F^p = 0", _power(F, M.p, be.one))
    if exact:
        record("K^2p = 1", M.K(2 * M.p) - M.identity())
    bad = 0.0
    for op, step in ((E, 2), (F, -2)):
        for i, j, _ in op.entries():
            gap = M.weights[i] - M.weights[j] - step
            bad = max(bad, float(abs(gap)))
    rep.results["weight lifts shift by +-2"] = (bad == 0 if exact else bad <= tol, bad)
    return rep


def nilpotent_map(M: WeightModule) -> SparseMatrix:
    """The head-to-socle map of a projective: b_n -> a_n on P^+, y_k -> x_k on P^-."""
    if M.kind != "Proj":
        raise ValueError(f"{M.name} is not a projective module")
    alpha = M.params[0]
    src, dst = ("b", "a") if alpha == 1 else ("y", "x")
    entries = []
    for j, lab in enumerate(M.labels):
        if lab[0] == src:
            entries.append((M.index(dst + lab[1:]), j, M.backend.one))
    return SparseMatrix.from_entries((M.dim, M.dim), entries)


def commutes(A: SparseMatrix, B: SparseMatrix, tol: float | None = None) -> bool:
    diff = A @ B - B @ A
    return diff.nnz == 0 if tol is None else diff.max_abs() <= tol
