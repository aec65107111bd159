import cmath
import random

import mpmath
import pytest

from logknot.alexander import (
    alexander_derivative,
    colored_alexander,
    glued_offdiagonal,
    highest_weight_residual,
    offdiagonal_residual,
    derivative_coefficient,
    verify_symmetry,
    verify_theorem4,
)
from logknot.center import decompose
from logknot.repn import build_x_lambda
from logknot.scalar import to_complex
from logknot.tangle import MultiComponentError, markov_conjugate, parse_braid_word, preset, tangle_operator


def test_unknot_is_one_everywhere():
    for lam in (0.37, 1.2 + 0.3j):
        assert abs(complex(colored_alexander(preset("unknot"), 3, lam)) - 1) < 1e-30
    ev = alexander_derivative(preset("unknot"), 3, 0.37)
    assert abs(complex(ev.derivative)) < 1e-30
    assert abs(complex(glued_offdiagonal(preset("unknot"), 3, 0.37, 1))) < 1e-30


def test_sparse_and_full_operator_agree():
    # the scalar check path and the single-column fast path return the same O
    b = preset("trefoil")
    full = colored_alexander(b, 2, 0.37)
    fast = colored_alexander(b, 2, 0.37, check=False)
    assert abs(complex(full - fast)) < 1e-30
    z = tangle_operator(b, build_x_lambda(2, 1.37))
    assert abs(complex(z.scalar() - full)) < 1e-10


def test_non_scalar_detection_and_warning():
    with pytest.warns(RuntimeWarning):
        colored_alexander(preset("trefoil"), 3, 1.0)
    with pytest.raises(MultiComponentError):
        colored_alexander(parse_braid_word("s1 s1", 2), 3, 0.37)


# regression value frozen from the first verified run
GOLDEN_F8_P3 = -0.6378289014177557 + 0.6792187926430943j


def test_figure8_golden_value():
    v = complex(colored_alexander(preset("figure8"), 3, 0.37))
    assert abs(v - GOLDEN_F8_P3) < 1e-12


def test_step_halving_consistency():
    b = preset("trefoil")
    for s in (1, 2):
        lam = s - 1 + 0.01
        d1 = alexander_derivative(b, 3, lam, h=1e-3).derivative
        d2 = alexander_derivative(b, 3, lam, h=1e-4).derivative
        assert abs(complex(d1 - d2)) < 1e-6


def test_derivative_product_rule():
    b1, b2 = preset("trefoil"), preset("figure8")
    both = parse_braid_word("s1 s1 s1 s2 S3 s2 S3", 4)
    lam = 0.37 + 0.05j
    f, g = colored_alexander(b1, 2, lam), colored_alexander(b2, 2, lam)
    df = alexander_derivative(b1, 2, lam).derivative
    dg = alexander_derivative(b2, 2, lam).derivative
    dfg = alexander_derivative(both, 2, lam).derivative
    assert abs(complex(dfg - (df * g + f * dg))) < 1e-6
    assert abs(complex(colored_alexander(both, 2, lam) - f * g)) < 1e-20


@pytest.mark.parametrize("knot", ["trefoil", "figure8", "cinquefoil"])
@pytest.mark.parametrize("p", [2, 3, 4])
def test_offdiagonal_relation(knot, p):
    rng = random.Random(p)
    for s in range(1, p):
        lam = complex(rng.uniform(-2, 4), rng.uniform(-0.5, 0.5))
        assert offdiagonal_residual(preset(knot), p, lam, s) < 1e-8
        assert highest_weight_residual(preset(knot), p, lam, s) < 1e-8


def test_offdiagonal_rejects_s_equal_p():
    with pytest.raises(ValueError):
        glued_offdiagonal(preset("trefoil"), 3, 0.37, 3)


def test_specialized_offdiagonal_is_b_plus():
    # at lam -> 2p - s the glued module becomes P^+(s) and (c_{p-s}, d_0) -> (a_0, b_0)
    p = 3
    d = decompose(preset("trefoil"), p)
    for s in (1, 2):
        x = glued_offdiagonal(preset("trefoil"), p, 2 * p - s + 1e-6, p - s)
        assert abs(complex(x) - complex(to_complex(d.b_plus[s - 1]))) < 1e-4


def test_derivative_coefficient():
    for p in (2, 3, 5):
        for s in range(1, p):
            c = float(derivative_coefficient(p, s))
            assert abs(c - p * cmath.sin(cmath.pi / p).real ** 2 / (cmath.pi * cmath.sin(cmath.pi * s / p).real)) < 1e-14


@pytest.mark.parametrize("p", [2, 3])
def test_derivative_formula_unknot_and_trefoil(p):
    assert verify_theorem4(preset("unknot"), p).passed
    rep = verify_theorem4(preset("trefoil"), p)
    assert rep.passed, str(rep)


@pytest.mark.parametrize("knot", ["trefoil", "cinquefoil", "unknot"])
def test_symmetry(knot):
    for p in (2, 3):
        rep = verify_symmetry(preset(knot), p)
        assert rep.passed, str(rep)


def test_markov_invariance_at_fixed_lambda():
    b = preset("figure8")
    lam = 0.41 + 0.13j
    v = colored_alexander(b, 2, lam)
    conj = markov_conjugate(b, parse_braid_word("s2 t1", 3))
    stab = parse_braid_word("s1 S2 s1 S2 s3", 4)
    tau = parse_braid_word("s1 S2 s1 S2 t3", 3)
    for w in (stab, tau):
        assert abs(complex(colored_alexander(w, 2, lam) - v * _twist(lam, 2))) < 1e-9
    assert abs(complex(colored_alexander(conj, 2, lam) - v)) < 1e-9


def _twist(lam, p):
    """Ribbon scalar on X(lam + 1): exp(pi i ((lam+1)^2 - 1) / 2p)."""
    mu = mpmath.mpc(lam) + 1
    return mpmath.expjpi((mu * mu - 1) / (2 * p))
