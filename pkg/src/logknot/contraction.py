"""Partial quantum traces of braid operators on M^{(x) n}.

Three evaluation paths compute the same (1,1)-tangle operator

    z = (id (x) tr)((1 (x) K^{(x) n-1}) rho(b))

with strand 1 left open:

``block``
    Exact, for integral modules.  Basis states of M^{(x) n} are grouped by
    total weight; every crossing and twist preserves the total, so each block
    is propagated on its own.  Cyclotomic entries are replaced by their
    integer regular representation (multiplication matrices on the power
    basis), turning every letter into an int64 sparse matrix.
``dense``
    Exact, the naive route: each letter is the global Kronecker product
    I (x) G (x) I over the full tensor space, with no block structure.
``sparse``
    Generic scalars (mpmath or cyclotomic objects) propagated as sparse
    dictionaries.  This is the path for non-integral weights and the
    slow reference for exact ones.

Integer products are guarded against int64 overflow by a row-sum bound and
fall back to limb-split arithmetic on Python integers.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import gcd

import numpy as np
import scipy.sparse as sp

from .braiding import crossing, pivot, ribbon, ribbon_inverse
from .scalar import CyclotomicNumber
from .sparse import SparseMatrix

__all__ = ["evaluate_block", "evaluate_dense", "evaluate_sparse", "letter_gate", "braid_matrix"]

_LIMIT = 1 << 62


def letter_gate(M, kind: str, exponent: int) -> SparseMatrix:
    """Local operator for one braid letter: 2-site for sigma, 1-site for tau."""
    if kind == "s":
        return crossing(M, exponent)
    return ribbon(M) if exponent == 1 else ribbon_inverse(M)


# ---------------------------------------------------------------------------
# exact integer kernel


def _lcm(a, b):
    return a * b // gcd(a, b)


def _integer_entries(G: SparseMatrix):
    """(common denominator, {(row, col): int coefficient vector}) for a cyclotomic matrix."""
    den = 1
    for _, _, v in G.entries():
        den = _lcm(den, v.den)
    out = {}
    for i, j, v in G.entries():
        out[i, j] = np.array(v.num, dtype=object) * (den // v.den)
    return den, out


def _reg_blocks(field, vecs):
    """Regular-representation matrices sum_a c_a Z^a for a stack of coefficient vectors."""
    stack = np.array(vecs, dtype=object).astype(np.int64) if vecs else np.zeros((0, field.degree), np.int64)
    return np.einsum("ka,auv->kuv", stack, field.reg[: field.degree])


def _row_norm(G) -> int:
    if G.nnz == 0:
        return 0
    return int(abs(G).sum(axis=1).max())


def _max_abs(S) -> int:
    if S.size == 0:
        return 0
    if S.dtype == object:
        return int(max(abs(x) for x in S.flat))
    return int(np.abs(S).max())


def _shrink(S):
    """Return an int64 array when every entry fits, else keep Python integers."""
    if S.dtype == object and _max_abs(S) < _LIMIT:
        return S.astype(np.int64)
    return S


def _exact_matmul(G, gnorm: int, S):
    """Exact G @ S for an int64 sparse G and an int64 or object-dtype dense S."""
    if S.dtype != object and gnorm * _max_abs(S) < _LIMIT:
        return G @ S
    S = S.astype(object)
    bits = max(1, 61 - max(gnorm, 1).bit_length())
    mask = (1 << bits) - 1
    out = np.zeros((G.shape[0], S.shape[1]), dtype=object)
    for sign in (1, -1):
        rest = np.where(S * sign > 0, S * sign, 0).astype(object)
        shift = 0
        while any(rest.flat):
            limb = (rest & mask).astype(np.int64)
            out += (G @ limb).astype(object) * (sign << shift)
            rest = rest >> bits
            shift += bits
    return _shrink(out)


def _reduce_fraction(S, den: int):
    if den == 1:
        return S, den
    if S.dtype == object:
        g = den
        for x in S.flat:
            if x:
                g = gcd(g, int(x))
                if g == 1:
                    return S, den
    else:
        g = int(np.gcd.reduce(S, axis=None)) if S.size else den
        g = gcd(g, den)
    if g > 1:
        S = S // g
        den //= g
    return S, den


def _pivot_exponents(M) -> np.ndarray:
    """zeta exponent of the pivot K on each basis vector, mod 4p."""
    return (2 * np.array(M.weights, dtype=np.int64)) % (4 * M.p)


def _trace_product(field, vecs, exps):
    """sum over columns of Z^{exps[c]} vecs[:, c] (exact)."""
    deg = field.degree
    reg = field.reg[exps % field.order]  # (c, deg, deg)
    if vecs.dtype != object and _max_abs(vecs) * deg * int(np.abs(field.reg).max()) < _LIMIT:
        return np.einsum("cuv,vc->uc", reg, vecs).astype(object)
    return np.einsum("cuv,vc->uc", reg.astype(object), vecs.astype(object))


def _to_cyclotomic(field, vec, den):
    return CyclotomicNumber._make(field, tuple(int(x) for x in vec), den)


class _BlockEngine:
    """Weight-block state space of M^{(x) n} with cached integer letter matrices."""

    def __init__(self, M, n: int):
        self.M, self.n, self.d = M, n, M.dim
        self.field = M.backend.field
        self.deg = self.field.degree
        d = self.d
        states = np.array(list(itertools.product(range(d), repeat=n)), dtype=np.int64).reshape(-1, n)
        w = np.array(M.weights, dtype=np.int64)
        totals = w[states].sum(axis=1) if n else np.zeros(1, np.int64)
        order = np.argsort(totals, kind="stable")
        self.states = states[order]  # sorted so each block is a contiguous range
        self.position = np.empty(len(order), dtype=np.int64)
        self.position[order] = np.arange(len(order))  # lexicographic id -> sorted position
        self.radix = d ** np.arange(n - 1, -1, -1, dtype=np.int64)
        tot = totals[order]
        cuts = np.flatnonzero(np.diff(tot)) + 1
        self.ranges = list(zip(np.r_[0, cuts], np.r_[cuts, len(tot)]))
        self._gates = {}
        self.pivot_exp = _pivot_exponents(M)
        self.weights = w

    def gate(self, kind, site, exponent):
        key = (kind, site, exponent)
        if key not in self._gates:
            self._gates[key] = self._build_gate(kind, site, exponent)
        return self._gates[key]

    def _build_gate(self, kind, site, exponent):
        G = letter_gate(self.M, kind, exponent)
        den, ints = _integer_entries(G)
        d, deg = self.d, self.deg
        sites = [site, site + 1] if kind == "s" else [site]
        local = self.states[:, sites] @ (d ** np.arange(len(sites) - 1, -1, -1))
        base = self.states @ self.radix
        contrib = self.states[:, sites] @ self.radix[sites]
        rows, cols, blocks = [], [], []
        by_col: dict[int, list] = {}
        for (i, j), vec in ints.items():
            by_col.setdefault(j, []).append((i, vec))
        for code, outs in by_col.items():
            src = np.flatnonzero(local == code)
            if src.size == 0:
                continue
            regs = _reg_blocks(self.field, [v for _, v in outs])
            for (out_code, _), reg in zip(outs, regs):
                digits = np.array(np.unravel_index(out_code, (d,) * len(sites)), dtype=np.int64)
                new_lex = base[src] - contrib[src] + digits @ self.radix[sites]
                rows.append(self.position[new_lex])
                cols.append(src)
                blocks.append(np.broadcast_to(reg, (src.size, deg, deg)))
        size = len(self.states) * deg
        if rows:
            r = np.concatenate(rows)
            c = np.concatenate(cols)
            data = np.concatenate(blocks)
            ar = np.arange(deg)
            rr = (r[:, None, None] * deg + ar[None, :, None]).repeat(deg, axis=2)
            cc = (c[:, None, None] * deg + ar[None, None, :]).repeat(deg, axis=1)
            mat = sp.csr_matrix((data.ravel(), (rr.ravel(), cc.ravel())), shape=(size, size), dtype=np.int64)
            mat.eliminate_zeros()
        else:
            mat = sp.csr_matrix((size, size), dtype=np.int64)
        parts = []
        for lo, hi in self.ranges:
            sub = mat[lo * deg : hi * deg, lo * deg : hi * deg]
            parts.append((sub, _row_norm(sub)))
        return parts, den

    def evaluate(self, letters, open_cols):
        M, n, d, deg = self.M, self.n, self.d, self.deg
        dim = d
        z = {}
        total_den = 1
        piv = self.pivot_exp
        partials = []
        for b, (lo, hi) in enumerate(self.ranges):
            block_states = self.states[lo:hi]
            cols = np.flatnonzero(np.isin(block_states[:, 0], open_cols))
            if cols.size == 0:
                continue
            m = hi - lo
            S = np.zeros((m * deg, cols.size), dtype=np.int64)
            S[cols * deg, np.arange(cols.size)] = 1
            den = 1
            for kind, idx, exp in reversed(letters):
                site = idx - 1
                parts, gden = self.gate(kind, site, exp)
                S = _exact_matmul(*parts[b], S)
                den *= gden
                S, den = _reduce_fraction(S, den)
            partials.append((lo, block_states, cols, S, den))
            total_den = _lcm(total_den, den)
        acc = {}
        for lo, block_states, cols, S, den in partials:
            scale = total_den // den
            ins = block_states[cols]
            lex = ins @ self.radix
            exps = piv[ins[:, 1:]].sum(axis=1) if n > 1 else np.zeros(cols.size, np.int64)
            for k in range(dim):
                ok = self.weights[ins[:, 0]] == self.weights[k]
                if not ok.any():
                    continue
                out_lex = lex[ok] + (k - ins[ok, 0]) * self.radix[0]
                rows = self.position[out_lex] - lo
                idx = rows[None, :] * deg + np.arange(deg)[:, None]
                vecs = S[idx, np.flatnonzero(ok)[None, :]]
                contrib = _trace_product(self.field, vecs, exps[ok])
                for i in np.unique(ins[ok, 0]):
                    sel = ins[ok, 0] == i
                    tot = contrib[:, sel].sum(axis=1) * scale
                    key = (k, int(i))
                    acc[key] = acc[key] + tot if key in acc else tot
        for (k, i), vec in acc.items():
            val = _to_cyclotomic(self.field, vec, total_den)
            if val:
                z.setdefault(i, {})[k] = val
        return SparseMatrix((dim, dim), z)


@lru_cache(maxsize=64)
def _block_engine(key, M, n):
    return _BlockEngine(M, n)


def evaluate_block(M, n: int, letters, open_cols=None) -> SparseMatrix:
    """Exact weight-block evaluation of the (1,1)-tangle operator (integral M only)."""
    if not M.exact:
        raise ValueError("block path is exact-only; use evaluate_sparse for non-integral weights")
    open_cols = list(range(M.dim)) if open_cols is None else list(open_cols)
    return _block_engine(M.key, M, n).evaluate(list(letters), open_cols)


# ---------------------------------------------------------------------------
# dense reference


def _dense_letter(M, n, kind, idx, exp):
    return _dense_letter_cached(M.key, M, n, kind, idx, exp)


@lru_cache(maxsize=512)
def _dense_letter_cached(key, M, n, kind, idx, exp):
    field = M.backend.field
    G = letter_gate(M, kind, exp)
    den, ints = _integer_entries(G)
    width = 2 if kind == "s" else 1
    site = idx - 1
    d = M.dim
    loc = d**width
    total = None
    for a in range(field.degree):
        coeff = np.zeros((loc, loc), dtype=np.int64)
        for (i, j), vec in ints.items():
            coeff[i, j] = int(vec[a])
        if not coeff.any():
            continue
        left = sp.identity(d**site, dtype=np.int64, format="csr")
        right = sp.identity(d ** (n - site - width), dtype=np.int64, format="csr")
        glob = sp.kron(sp.kron(left, sp.csr_matrix(coeff)), right)
        term = sp.kron(glob, sp.csr_matrix(field.reg[a]), format="csr")
        total = term if total is None else total + term
    if total is None:
        size = d**n * field.degree
        total = sp.csr_matrix((size, size), dtype=np.int64)
    total = total.tocsr()
    return total, den, _row_norm(total)


def evaluate_dense(M, n: int, letters, open_cols=None) -> SparseMatrix:
    """Exact evaluation over the full tensor space with Kronecker-expanded letters."""
    if not M.exact:
        raise ValueError("dense integer path is exact-only")
    field = M.backend.field
    d, deg = M.dim, field.degree
    open_cols = list(range(M.dim)) if open_cols is None else list(open_cols)
    rest = d ** (n - 1)
    N = d**n
    cols = [i * rest + J for i in open_cols for J in range(rest)]
    S = np.zeros((N * deg, len(cols)), dtype=np.int64)
    S[np.array(cols) * deg, np.arange(len(cols))] = 1
    den = 1
    for kind, idx, exp in reversed(list(letters)):
        mat, gden, norm = _dense_letter(M, n, kind, idx, exp)
        S = _exact_matmul(mat, norm, S)
        den *= gden
        S, den = _reduce_fraction(S, den)
    # pivot K on each traced factor, as a Kronecker product of diagonal exponents
    piv = _pivot_exponents(M)
    tr_exp = np.zeros(rest, dtype=np.int64)
    for t in range(n - 1):
        tr_exp = (tr_exp.reshape(-1, 1) + piv.reshape(1, -1)).reshape(-1) if t else piv.copy()
    if n == 1:
        tr_exp = np.zeros(1, dtype=np.int64)
    T = S.reshape(d, rest, deg, len(open_cols), rest)
    z = {}
    for a, i in enumerate(open_cols):
        for k in range(d):
            diag = np.stack([T[k, J, :, a, J] for J in range(rest)], axis=1)  # (deg, rest)
            vec = _trace_product(field, diag, tr_exp).sum(axis=1)
            val = _to_cyclotomic(field, vec, den)
            if val:
                z.setdefault(i, {})[k] = val
    return SparseMatrix((d, d), z)


# ---------------------------------------------------------------------------
# generic scalars


def evaluate_sparse(M, n: int, letters, open_cols=None) -> SparseMatrix:
    """Dictionary-based propagation for any scalar backend."""
    be = M.backend
    d = M.dim
    open_cols = list(range(d)) if open_cols is None else list(open_cols)
    gates = {}
    for kind, _, exp in letters:
        gates.setdefault((kind, exp), letter_gate(M, kind, exp))
    piv = [pivot(M)[j, j] for j in range(d)]
    seq = list(reversed(list(letters)))
    z: dict[int, dict[int, object]] = {}
    for i in open_cols:
        acc: dict[int, object] = {}
        for J in itertools.product(range(d), repeat=n - 1):
            vec = {(i,) + J: be.one}
            for kind, idx, exp in seq:
                vec = _apply_local(vec, gates[kind, exp], idx - 1, 2 if kind == "s" else 1, d)
                if not vec:
                    break
            weight = be.one
            for j in J:
                weight = weight * piv[j]
            for k in range(d):
                v = vec.get((k,) + J)
                if v:
                    t = weight * v
                    acc[k] = acc[k] + t if k in acc else t
        z[i] = acc
    return SparseMatrix((d, d), z)


def _apply_local(vec, gate: SparseMatrix, site: int, width: int, d: int):
    out: dict = {}
    for state, val in vec.items():
        if width == 2:
            code = state[site] * d + state[site + 1]
        else:
            code = state[site]
        for r, g in gate.col(code).items():
            if width == 2:
                new = state[:site] + (r // d, r % d) + state[site + 2 :]
            else:
                new = state[:site] + (r,) + state[site + 1 :]
            t = g * val
            out[new] = out[new] + t if new in out else t
    return out


def braid_matrix(M, n: int, letters) -> SparseMatrix:
    """The full operator rho(b) on M^{(x) n}, lexicographic basis (generic scalars)."""
    d = M.dim
    gates = {}
    for kind, _, exp in letters:
        gates.setdefault((kind, exp), letter_gate(M, kind, exp))
    seq = list(reversed(list(letters)))
    radix = [d ** (n - 1 - t) for t in range(n)]
    cols = {}
    for col, state in enumerate(itertools.product(range(d), repeat=n)):
        vec = {state: M.backend.one}
        for kind, idx, exp in seq:
            vec = _apply_local(vec, gates[kind, exp], idx - 1, 2 if kind == "s" else 1, d)
        cols[col] = {sum(s * r for s, r in zip(st, radix)): v for st, v in vec.items() if v}
    return SparseMatrix((d**n, d**n), cols)
