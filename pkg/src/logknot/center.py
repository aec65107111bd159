"""Coefficients of a knot's central element on primitive idempotents and radical elements.

The tangle element decomposes as

    z = sum_{s=0}^{p} a_s e_s + sum_{s=1}^{p-1} (b_s^+ w_s^+ + b_s^- w_s^-).

Each coefficient is read off from the action of z on a module of the block
of e_s: a_s from the irreducible X^+(s) (a_0 from X^-(p)), b_s^+ from the
projective P^+(s) and b_s^- from the projective of the e_s block that carries
the y -> x radical map.  On every projective the action must equal
a_s * Id + b * phi exactly; this is asserted.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .braiding import ConventionError
from .repn import build_irreducible, build_projective, nilpotent_map
from .scalar import to_complex
from .tangle import FramedBraidWord, TangleOperator, connected_sum, tangle_operator

__all__ = [
    "CentralDecomposition",
    "decompose",
    "decomposition_from_operators",
    "block_operators",
    "colored_jones",
    "verify_connected_sum",
    "partner_scalars",
    "ConnectedSumReport",
]


@dataclass(frozen=True)
class CentralDecomposition:
    p: int
    a: tuple  # s = 0..p
    b_plus: tuple  # s = 1..p-1, stored at index s-1
    b_minus: tuple
    framing: int = 0

    def b(self, sign: int, s: int):
        return (self.b_plus if sign > 0 else self.b_minus)[s - 1]

    def items(self):
        """(family, s, value) triples in output order."""
        for s, v in enumerate(self.a):
            yield "a", s, v
        for s, v in enumerate(self.b_plus, 1):
            yield "b_plus", s, v
        for s, v in enumerate(self.b_minus, 1):
            yield "b_minus", s, v

    def __eq__(self, other):
        if not isinstance(other, CentralDecomposition):
            return NotImplemented
        return (self.p, self.a, self.b_plus, self.b_minus) == (other.p, other.a, other.b_plus, other.b_minus)

    __hash__ = None

    def approx(self, precision: int = 53) -> dict:
        return {(fam, s): complex(to_complex(v, precision)) for fam, s, v in self.items()}


def _minus_projective(p: int, s: int):
    """The projective in the e_s block carrying the y -> x radical map."""
    return build_projective(p, -1, p - s)


def block_operators(b: FramedBraidWord, p: int, method: str = "auto", framing_correct: bool = False):
    """Tangle operators on every module used by :func:`decompose`, keyed by role."""
    ops = {}
    for s in range(1, p + 1):
        ops["irr", s] = tangle_operator(b, build_irreducible(p, 1, s), method, framing_correct)
    ops["irr", 0] = tangle_operator(b, build_irreducible(p, -1, p), method, framing_correct)
    for s in range(1, p):
        ops["proj+", s] = tangle_operator(b, build_projective(p, 1, s), method, framing_correct)
        ops["proj-", s] = tangle_operator(b, _minus_projective(p, s), method, framing_correct)
    return ops


def _split(op: TangleOperator, a, label: str):
    """Check op = a Id + c phi and return c."""
    M = op.module
    phi = nilpotent_map(M)
    src, dst = ("b0", "a0") if M.params[0] == 1 else ("y0", "x0")
    c = op.entry(dst, src)
    expected = M.identity().scale(a) + phi.scale(c)
    if (op.matrix - expected).nnz:
        raise ConventionError(f"{label}: action on {M.name} is not a*Id + b*phi")
    return c


def decomposition_from_operators(ops: dict, p: int, framing: int = 0) -> CentralDecomposition:
    a = []
    for s in range(p + 1):
        op = ops["irr", s]
        if not op.is_scalar():
            raise ConventionError(f"non-scalar action on {op.module.name}")
        a.append(op.scalar())
    bp = tuple(_split(ops["proj+", s], a[s], f"b_{s}^+") for s in range(1, p))
    bm = tuple(_split(ops["proj-", s], a[s], f"b_{s}^-") for s in range(1, p))
    return CentralDecomposition(p, tuple(a), bp, bm, framing)


def decompose(
    b: FramedBraidWord, p: int, method: str = "auto", framing_correct: bool = False
) -> CentralDecomposition:
    """Exact a_s (0 <= s <= p) and b_s^{+-} (1 <= s <= p-1) of the closure of ``b``."""
    if p < 2:
        raise ValueError("p must be >= 2")
    ops = block_operators(b, p, method, framing_correct)
    return decomposition_from_operators(ops, p, 0 if framing_correct else b.framing)


def colored_jones(b: FramedBraidWord, s: int, p: int, framing_correct: bool = True, method: str = "auto"):
    """J_s(K) at q = exp(pi i / p), read off as the scalar on X^+(s)."""
    if not 1 <= s <= p:
        raise ValueError(f"s must lie in 1..{p}")
    op = tangle_operator(b, build_irreducible(p, 1, s), method, framing_correct)
    if not op.is_scalar():
        raise ConventionError(f"non-scalar action on {op.module.name}")
    return op.scalar()


def partner_scalars(b: FramedBraidWord, p: int, method: str = "auto") -> dict:
    """{s: scalar of z on X^-(p-s)} for 1 <= s <= p-1 (equals a_s)."""
    out = {}
    for s in range(1, p):
        op = tangle_operator(b, build_irreducible(p, -1, p - s), method)
        if not op.is_scalar():
            raise ConventionError(f"non-scalar action on {op.module.name}")
        out[s] = op.scalar()
    return out


@dataclass
class ConnectedSumReport:
    p: int
    passed: bool
    failures: list = field(default_factory=list)
    first: CentralDecomposition | None = None
    second: CentralDecomposition | None = None
    combined: CentralDecomposition | None = None

    def __str__(self):
        head = f"connected sum p={self.p}: {'pass' if self.passed else 'FAIL'}"
        return "\n".join([head] + [f"  {f}" for f in self.failures])


def verify_connected_sum(b1: FramedBraidWord, b2: FramedBraidWord, p: int, method: str = "auto") -> ConnectedSumReport:
    """a_s multiplicativity and the Leibniz rule for b_s^{+-} under K1 # K2."""
    o1 = block_operators(b1, p, method)
    o2 = block_operators(b2, p, method)
    d1 = decomposition_from_operators(o1, p, b1.framing)
    d2 = decomposition_from_operators(o2, p, b2.framing)
    o12 = {k: connected_sum(o1[k], o2[k]) for k in o1}
    d12 = decomposition_from_operators(o12, p, b1.framing + b2.framing)
    fails = []
    for s in range(p + 1):
        if d12.a[s] != d1.a[s] * d2.a[s]:
            fails.append(f"a_{s}: product rule")
    for sign, name in ((1, "+"), (-1, "-")):
        for s in range(1, p):
            lhs = d12.b(sign, s)
            rhs = d1.a[s] * d2.b(sign, s) + d1.b(sign, s) * d2.a[s]
            if lhs != rhs:
                fails.append(f"b_{s}^{name}: Leibniz rule")
    return ConnectedSumReport(p, not fails, fails, d1, d2, d12)
