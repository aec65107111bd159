"""R-matrix, crossing operators, pivot and ribbon element on weight modules.

The R-matrix on M (x) N is

    R = q^{H x H / 2} * sum_{n<p} (q - q^-1)^n q^{n(n-1)/2} / [n]!  E^n (x) F^n

where the Cartan factor acts on a pair of basis vectors with weight lifts
(w1, w2) by zeta**(w1*w2).  Pair index of e_i (x) f_j is ``i * dim(N) + j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .repn import WeightModule, commutes
from .sparse import SparseMatrix

__all__ = [
    "BraidingOperator",
    "ConventionError",
    "r_matrix",
    "r_inverse",
    "crossing",
    "pivot",
    "ribbon",
    "ribbon_inverse",
    "check_yang_baxter",
    "check_intertwiner",
    "YBEReport",
    "invert_matrix",
]


class ConventionError(RuntimeError):
    """A structural identity that must hold by construction failed."""


@dataclass(frozen=True, eq=False)
class BraidingOperator:
    """An operator on M (x) N together with its total-weight block partition."""

    source: tuple
    matrix: SparseMatrix
    blocks: dict

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def _same_backend(M: WeightModule, N: WeightModule):
    if M.backend.key != N.backend.key:
        raise ValueError(f"mixed scalar backends: {M.backend.key} vs {N.backend.key}")
    return M.backend


def _r_coefficients(backend, p):
    """c_n = (q - q^-1)^n q^{n(n-1)/2} / [n]! for 0 <= n < p."""
    qdiff = backend.zeta(2) - backend.zeta(-2)
    out = []
    fact = backend.one
    for n in range(p):
        if n:
            fact = fact * backend.qint(n)
        out.append(qdiff**n * backend.zeta(n * (n - 1)) / fact)
    return out


def _ladder(op: SparseMatrix, j: int, p: int) -> list[dict]:
    """[op^0 e_j, op^1 e_j, ..., op^(p-1) e_j] as sparse vectors."""
    vecs = [{j: 1}]
    for _ in range(p - 1):
        vecs.append(op.apply(vecs[-1]) if vecs[-1] else {})
    return vecs


def _blocks(M: WeightModule, N: WeightModule) -> dict:
    blocks: dict = {}
    for i, wi in enumerate(M.weights):
        for j, wj in enumerate(N.weights):
            blocks.setdefault(_wkey(wi + wj), []).append(i * N.dim + j)
    return blocks


def _wkey(w):
    if isinstance(w, int):
        return w
    c = complex(w)
    return (round(c.real, 9), round(c.imag, 9))


def _theta(M: WeightModule, N: WeightModule) -> SparseMatrix:
    """The unipotent part sum_n c_n E^n (x) F^n (without the Cartan factor)."""
    be = _same_backend(M, N)
    p = M.p
    coeff = _r_coefficients(be, p)
    dn = N.dim
    e_ladders = [_ladder(M.E, i, p) for i in range(M.dim)]
    f_ladders = [_ladder(N.F, j, p) for j in range(dn)]
    cols = {}
    for i in range(M.dim):
        for j in range(dn):
            out: dict = {}
            for n in range(p):
                ev, fv = e_ladders[i][n], f_ladders[j][n]
                if not ev or not fv:
                    continue
                for k, a in ev.items():
                    ca = coeff[n] * a
                    for l, b in fv.items():
                        idx = k * dn + l
                        t = ca * b
                        out[idx] = out[idx] + t if idx in out else t
            cols[i * dn + j] = out
    return SparseMatrix((M.dim * dn, M.dim * dn), cols)


def _cartan(M: WeightModule, N: WeightModule, sign: int = 1) -> list:
    be = M.backend
    return [be.zeta(sign * wi * wj) for wi in M.weights for wj in N.weights]


def r_matrix(M: WeightModule, N: WeightModule) -> BraidingOperator:
    """The R-matrix acting on M (x) N."""
    theta = _theta(M, N)
    return BraidingOperator((M, N), theta.map_rows(_cartan(M, N)), _blocks(M, N))


def _unipotent_inverse(theta: SparseMatrix, one) -> SparseMatrix:
    nil = theta - SparseMatrix.identity(theta.shape[0], one)
    out = SparseMatrix.identity(theta.shape[0], one)
    term = out
    while True:
        term = -(nil @ term)
        if term.nnz == 0:
            return out
        out = out + term


def r_inverse(M: WeightModule, N: WeightModule) -> BraidingOperator:
    """Two-sided inverse of :func:`r_matrix`.

    The E^n (x) F^n part is unipotent (it strictly raises the first weight), so
    its inverse is a terminating Neumann series; the Cartan factor is diagonal.
    """
    theta = _theta(M, N)
    inv_theta = _unipotent_inverse(theta, M.backend.one)
    cart_inv = _cartan(M, N, -1)
    # (D Theta)^-1 = Theta^-1 D^-1: scale column c by D^-1[c]
    cols = {j: {i: v * cart_inv[j] for i, v in c.items()} for j, c in inv_theta.cols.items()}
    return BraidingOperator((M, N), SparseMatrix(inv_theta.shape, cols), _blocks(M, N))


def _flip(dm: int, dn: int) -> SparseMatrix:
    """e_i (x) f_j -> f_j (x) e_i as a map M (x) N -> N (x) M (entries are ints)."""
    return SparseMatrix((dm * dn, dm * dn), {i * dn + j: {j * dm + i: 1} for i in range(dm) for j in range(dn)})


@lru_cache(maxsize=256)
def _crossing_cached(key, M, sign):
    if sign == 1:
        R = r_matrix(M, M).matrix
        return _flip(M.dim, M.dim) @ R
    Rinv = r_inverse(M, M).matrix
    return Rinv @ _flip(M.dim, M.dim)


def crossing(M: WeightModule, sign: int = 1) -> SparseMatrix:
    """rho(sigma^{+-1}) on M (x) M: flip o R, or its inverse R^-1 o flip."""
    if sign not in (1, -1):
        raise ValueError(f"sign must be +-1, got {sign}")
    return _crossing_cached(M.key, M, sign)


def pivot(M: WeightModule) -> SparseMatrix:
    """The pivotal element K = K^{N-1} for sl_N with N = 2, as a diagonal matrix."""
    return M.K(1)


def _ribbon_raw(M: WeightModule) -> SparseMatrix:
    be = M.backend
    p = M.p
    coeff = _r_coefficients(be, p)
    w = M.weights
    cols = {}
    for j in range(M.dim):
        out: dict = {}
        for n, ev in enumerate(_ladder(M.E, j, p)):
            # r' = E^n on the weight-w_k component, then K, then r'' = F^n
            for k, a in ev.items():
                fvec = _ladder(M.F, k, n + 1)[n]
                base = coeff[n] * a * be.zeta(2 * w[k])
                for l, b in fvec.items():
                    t = base * b * be.zeta(w[k] * w[l])
                    out[l] = out[l] + t if l in out else t
        cols[j] = out
    return SparseMatrix((M.dim, M.dim), cols)


@lru_cache(maxsize=256)
def _ribbon_cached(key, M):
    v = _ribbon_raw(M)
    if M.exact and not (commutes(v, M.E) and commutes(v, M.F)):
        raise ConventionError(f"ribbon element is not central on {M.name}")
    return v


def ribbon(M: WeightModule) -> SparseMatrix:
    """The ribbon element v = sum_i r''_i K r'_i acting on M.

    Integral modules are checked for centrality; a failure raises
    :class:`ConventionError`.
    """
    return _ribbon_cached(M.key, M)


@lru_cache(maxsize=256)
def _ribbon_inverse_cached(key, M):
    return invert_matrix(ribbon(M), M.backend)


def ribbon_inverse(M: WeightModule) -> SparseMatrix:
    return _ribbon_inverse_cached(M.key, M)


def invert_matrix(A: SparseMatrix, backend) -> SparseMatrix:
    """Gauss-Jordan inverse; exact for cyclotomic entries, partial pivoting otherwise."""
    n = A.shape[0]
    rows = [[A[i, j] if A[i, j] else backend.zero for j in range(n)] for i in range(n)]
    inv = [[backend.one if i == j else backend.zero for j in range(n)] for i in range(n)]
    for c in range(n):
        if backend.exact:
            piv = next((r for r in range(c, n) if rows[r][c]), None)
        else:
            piv = max(range(c, n), key=lambda r: abs(rows[r][c]))
            if not rows[piv][c]:
                piv = None
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        rows[c], rows[piv] = rows[piv], rows[c]
        inv[c], inv[piv] = inv[piv], inv[c]
        f = 1 / rows[c][c]
        rows[c] = [x * f for x in rows[c]]
        inv[c] = [x * f for x in inv[c]]
        for r in range(n):
            if r != c and rows[r][c]:
                g = rows[r][c]
                rows[r] = [x - g * y for x, y in zip(rows[r], rows[c])]
                inv[r] = [x - g * y for x, y in zip(inv[r], inv[c])]
    return SparseMatrix.from_entries((n, n), ((i, j, inv[i][j]) for i in range(n) for j in range(n)))


@dataclass
class YBEReport:
    module: str
    passed: bool
    residual: float


def check_yang_baxter(M: WeightModule, tol: float = 1e-10) -> YBEReport:
    """R12 R13 R23 = R23 R13 R12 on M (x) M (x) M."""
    d = M.dim
    R = r_matrix(M, M).matrix
    I = M.identity()
    R12 = R.kron(I)
    R23 = I.kron(R)
    P23 = SparseMatrix.identity(d, 1).kron(_flip(d, d))
    R13 = P23 @ R12 @ P23
    diff = R12 @ R13 @ R23 - R23 @ R13 @ R12
    if M.exact:
        return YBEReport(M.name, diff.nnz == 0, float(diff.nnz))
    r = diff.max_abs()
    return YBEReport(M.name, r <= tol, r)


def check_intertwiner(M: WeightModule, N: WeightModule, tol: float | None = None) -> bool:
    """flip o R commutes with the coproduct action of E, F, K on M (x) N."""
    c = _flip(M.dim, N.dim) @ r_matrix(M, N).matrix
    KM, KN, KMi, KNi = M.K(1), N.K(1), M.K(-1), N.K(-1)
    IM, IN = M.identity(), N.identity()
    deltas = [
        (M.E.kron(KN) + IM.kron(N.E), N.E.kron(KM) + IN.kron(M.E)),
        (M.F.kron(IN) + KMi.kron(N.F), N.F.kron(IM) + KNi.kron(M.F)),
        (KM.kron(KN), KN.kron(KM)),
    ]
    for src, dst in deltas:
        diff = c @ src - dst @ c
        if (diff.nnz if tol is None else diff.max_abs() > tol):
            return False
    return True
