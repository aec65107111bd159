"""Framed braid words, Markov moves and (1,1)-tangle operators of braid closures."""

from __future__ import annotations

import os
import re
from dataclasses import dataclass

from .braiding import ribbon, ribbon_inverse
from .contraction import braid_matrix, evaluate_block, evaluate_dense, evaluate_sparse
from .repn import WeightModule, commutes
from .sparse import SparseMatrix

__all__ = [
    "BraidParseError",
    "MultiComponentError",
    "DimensionCapError",
    "FramedBraidWord",
    "TangleOperator",
    "parse_braid_word",
    "closure_components",
    "braid_operator",
    "tangle_operator",
    "markov_conjugate",
    "markov_stabilize",
    "connected_sum",
    "correct_framing",
    "PRESETS",
    "preset",
    "random_word",
    "random_braid",
    "DEFAULT_DIM_CAP",
]

DEFAULT_DIM_CAP = 20_000


class BraidParseError(ValueError):
    pass


class MultiComponentError(ValueError):
    pass


class DimensionCapError(RuntimeError):
    pass


Letter = tuple  # (kind 's' | 't', index >= 1, exponent +-1)


@dataclass(frozen=True)
class FramedBraidWord:
    """A word in sigma_i^{+-1} (1 <= i < n) and tau_i^{+-1} (1 <= i <= n)."""

    strands: int
    letters: tuple = ()

    def __post_init__(self):
        if self.strands < 1:
            raise BraidParseError(f"strand count must be >= 1, got {self.strands}")
        letters = tuple((str(k), int(i), int(e)) for k, i, e in self.letters)
        for kind, idx, exp in letters:
            top = self.strands - 1 if kind == "s" else self.strands
            if kind not in ("s", "t") or exp not in (1, -1):
                raise BraidParseError(f"bad letter {(kind, idx, exp)}")
            if not 1 <= idx <= top:
                raise BraidParseError(f"index {idx} out of range for {kind} on {self.strands} strands")
        object.__setattr__(self, "letters", letters)

    def __str__(self):
        return " ".join((k if e == 1 else k.upper()) + str(i) for k, i, e in self.letters)

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: FramedBraidWord) -> FramedBraidWord:
        if other.strands != self.strands:
            raise ValueError(f"strand mismatch: {self.strands} vs {other.strands}")
        return FramedBraidWord(self.strands, self.letters + other.letters)

    def inverse(self) -> FramedBraidWord:
        return FramedBraidWord(self.strands, tuple((k, i, -e) for k, i, e in reversed(self.letters)))

    def embed(self) -> FramedBraidWord:
        """The inclusion i(b) into n+1 strands."""
        return FramedBraidWord(self.strands + 1, self.letters)

    def permutation(self) -> tuple[int, ...]:
        """pi(b) as a tuple: strand at position j ends at position perm[j] (0-based)."""
        pos = list(range(self.strands))
        for kind, idx, _ in self.letters:
            if kind == "s":
                a, b = idx - 1, idx
                pos = [b if x == a else a if x == b else x for x in pos]
        return tuple(pos)

    @property
    def writhe(self) -> int:
        return sum(e for k, _, e in self.letters if k == "s")

    @property
    def framing(self) -> int:
        """Blackboard framing of the closure: writhe plus the tau exponents."""
        return sum(e for _, _, e in self.letters)


_TOKEN = re.compile(r"^([sStT])(\d+)(?:\^(\+?1|-1))?$")


def parse_braid_word(text: str, n: int) -> FramedBraidWord:
    """Parse ``s1 S2 t1 s3^-1`` style words (capital letter or ``^-1`` means inverse)."""
    letters = []
    for tok in text.replace(",", " ").split():
        m = _TOKEN.match(tok)
        if not m:
            raise BraidParseError(f"unknown token {tok!r}")
        ch, idx, power = m.groups()
        exp = -1 if ch.isupper() else 1
        if power == "-1":
            exp = -exp
        letters.append((ch.lower(), int(idx), exp))
    return FramedBraidWord(n, tuple(letters))


def closure_components(b: FramedBraidWord) -> int:
    perm = b.permutation()
    seen = [False] * b.strands
    cycles = 0
    for start in range(b.strands):
        if not seen[start]:
            cycles += 1
            j = start
            while not seen[j]:
                seen[j] = True
                j = perm[j]
    return cycles


def _cap(cap):
    if cap is not None:
        return int(cap)
    return int(os.environ.get("LOGKNOT_DIM_CAP", DEFAULT_DIM_CAP))


def _guard(b: FramedBraidWord, M: WeightModule, cap):
    limit = _cap(cap)
    size = M.dim**b.strands
    if size > limit:
        raise DimensionCapError(f"dim(M)^n = {M.dim}^{b.strands} = {size} exceeds cap {limit}")


def braid_operator(b: FramedBraidWord, M: WeightModule, cap: int | None = None) -> SparseMatrix:
    """rho(b) on M^{(x) n} in the lexicographic product basis."""
    _guard(b, M, cap)
    return braid_matrix(M, b.strands, b.letters)


@dataclass(frozen=True, eq=False)
class TangleOperator:
    """Action of the (1,1)-tangle element z_T on a module."""

    module: WeightModule
    matrix: SparseMatrix
    framing: int = 0

    def is_central(self, tol: float | None = None) -> bool:
        M = self.module
        if tol is None and not M.exact:
            tol = 1e-9
        return all(commutes(self.matrix, X, tol) for X in (M.E, M.F, M.K(1)))

    def is_scalar(self, tol: float | None = None) -> bool:
        M = self.module
        c = self.matrix[0, 0]
        diff = self.matrix - M.identity().scale(c)
        if tol is None and M.exact:
            return diff.nnz == 0
        scale = max(1.0, abs(complex(c)))
        return diff.max_abs() <= (tol or 1e-8) * scale

    def scalar(self):
        """The (0,0) entry; equals the action when :meth:`is_scalar` holds."""
        c = self.matrix[0, 0]
        return c if c else self.module.backend.zero

    def entry(self, row: str, col: str):
        M = self.module
        v = self.matrix[M.index(row), M.index(col)]
        return v if v else M.backend.zero

    def __matmul__(self, other: TangleOperator) -> TangleOperator:
        return connected_sum(self, other)


_METHODS = {"block": evaluate_block, "dense": evaluate_dense, "sparse": evaluate_sparse}


def tangle_operator(
    b: FramedBraidWord,
    M: WeightModule,
    method: str = "auto",
    framing_correct: bool = False,
    check: bool = True,
    cap: int | None = None,
) -> TangleOperator:
    """z_T on M: partial quantum trace over strands 2..n with strand 1 left open.

    ``method`` selects the contraction path: ``block`` (exact, weight blocks),
    ``dense`` (exact, full tensor space) or ``sparse`` (any scalar backend);
    ``auto`` picks ``block`` for integral modules and ``sparse`` otherwise.
    With ``framing_correct`` the result is multiplied by ribbon^{-framing}.
    """
    if closure_components(b) != 1:
        raise MultiComponentError(f"closure of {str(b)!r} on {b.strands} strands has {closure_components(b)} components")
    _guard(b, M, cap)
    if method == "auto":
        method = "block" if M.exact else "sparse"
    try:
        engine = _METHODS[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}") from None
    op = TangleOperator(M, engine(M, b.strands, b.letters), b.framing)
    if framing_correct:
        op = correct_framing(op)
    if check and not op.is_central():
        from .braiding import ConventionError

        raise ConventionError(f"tangle operator of {str(b)!r} is not central on {M.name}")
    return op


def correct_framing(op: TangleOperator) -> TangleOperator:
    """Multiply by ribbon^{-framing}, giving the framing-zero operator."""
    M, z, f = op.module, op.matrix, op.framing
    twist = ribbon_inverse(M) if f > 0 else ribbon(M)
    for _ in range(abs(f)):
        z = twist @ z
    return TangleOperator(M, z, 0)


def markov_conjugate(b: FramedBraidWord, g: FramedBraidWord) -> FramedBraidWord:
    """Move (i): b -> g b g^{-1}."""
    if b.strands != g.strands:
        raise ValueError(f"strand mismatch: {b.strands} vs {g.strands}")
    return g * b * g.inverse()


def markov_stabilize(b: FramedBraidWord, sign: int = 1, mode: str = "sigma") -> FramedBraidWord:
    """Move (ii) in either direction of ``b tau_n^{+-1} <-> i(b) sigma_n^{+-1}``.

    ``mode='sigma'`` returns i(b) sigma_n^{sign} on n+1 strands, ``mode='tau'``
    returns b tau_n^{sign} on n strands.  Both have isotopic framed closures.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +-1")
    n = b.strands
    if mode == "sigma":
        return FramedBraidWord(n + 1, b.letters + (("s", n, sign),))
    if mode == "tau":
        return FramedBraidWord(n, b.letters + (("t", n, sign),))
    raise ValueError(f"unknown mode {mode!r}")


def connected_sum(z1: TangleOperator, z2: TangleOperator) -> TangleOperator:
    if z1.module.key != z2.module.key:
        raise ValueError(f"module mismatch: {z1.module.name} vs {z2.module.name}")
    return TangleOperator(z1.module, z1.matrix @ z2.matrix, z1.framing + z2.framing)


PRESETS = {
    "unknot": ("", 1),
    "trefoil": ("s1 s1 s1", 2),
    "figure8": ("s1 S2 s1 S2", 3),
    "cinquefoil": ("s1 s1 s1 s1 s1", 2),
}


def preset(name: str) -> FramedBraidWord:
    try:
        text, n = PRESETS[name]
    except KeyError:
        raise BraidParseError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None
    return parse_braid_word(text, n)


def random_word(rng, strands: int, length: int, sigma_ratio: float = 0.75) -> FramedBraidWord:
    """Uniform random letters; ``rng`` is a :class:`random.Random`."""
    letters = []
    for _ in range(length):
        if strands > 1 and rng.random() < sigma_ratio:
            letters.append(("s", rng.randint(1, strands - 1), rng.choice((1, -1))))
        else:
            letters.append(("t", rng.randint(1, strands), rng.choice((1, -1))))
    return FramedBraidWord(strands, tuple(letters))


def random_braid(rng, max_strands: int = 3, max_length: int = 8) -> FramedBraidWord:
    """A random word whose closure is a knot (rejection sampling)."""
    while True:
        b = random_word(rng, rng.randint(1, max_strands), rng.randint(0, max_length))
        if closure_components(b) == 1:
            return b
