import numpy as np
import pytest

from logknot.repn import (
    build_irreducible,
    build_projective,
    build_x_lambda,
    build_y_glued,
    check_module_relations,
    commutes,
    nilpotent_map,
)
from logknot.scalar import cyclotomic_field, quantum_integer, root_power, to_complex

P_RANGE = [2, 3, 4, 5]


def dense(M, A):
    out = np.zeros((M.dim, M.dim), complex)
    for i, j, v in A.entries():
        out[i, j] = complex(to_complex(v, 64)) if M.exact else complex(v)
    return out


def integral_modules(p):
    yield from (build_irreducible(p, a, s) for a in (1, -1) for s in range(1, p + 1))
    yield from (build_projective(p, a, t) for a in (1, -1) for t in range(1, p))


@pytest.mark.parametrize("p", P_RANGE)
def test_integral_modules_satisfy_relations_exactly(p):
    for M in integral_modules(p):
        rep = check_module_relations(M)
        assert rep.passed, str(rep)
        assert rep.exact


@pytest.mark.parametrize("p", P_RANGE)
@pytest.mark.parametrize("lam", [0.37, 1.61 + 0.2j])
def test_lambda_modules_satisfy_relations(p, lam):
    mods = [build_x_lambda(p, lam)] + [build_y_glued(p, lam, s) for s in range(1, p)]
    for M in mods:
        rep = check_module_relations(M, tol=1e-10)
        assert rep.passed, str(rep)


@pytest.mark.parametrize("p", [2, 3, 4])
def test_glued_module_at_s_equal_p_breaks_nilpotency(p):
    # with s = p, E d_0 = c_(p-1) so E^p d_0 lands on c_0; only E^p = 0 fails
    rep = check_module_relations(build_y_glued(p, 0.37, p), tol=1e-10)
    assert rep.failures() == ["E^p = 0"]


def test_irreducible_examples():
    M = build_irreducible(3, 1, 1)
    assert M.dim == 1 and M.E.nnz == 0 and M.F.nnz == 0
    M = build_irreducible(3, 1, 3)
    one = cyclotomic_field(3).one
    assert M.E[M.index("|3,0>+"), M.index("|3,1>+")] == one
    M = build_irreducible(2, -1, 2)
    q = root_power(2, 2)
    K = M.K(1)
    assert K[0, 0] == -q and K[1, 1] == -(q ** -1)


def test_projective_examples():
    M = build_projective(2, 1, 1)
    one = cyclotomic_field(2).one
    assert M.dim == 4
    assert M.F[M.index("a0"), M.index("x0")] == one
    M = build_projective(3, 1, 1)
    assert M.E.col(M.index("b0")) == {M.index("x1"): cyclotomic_field(3).one}
    M = build_projective(3, -1, 2)  # P^-(p-s) table with s = 1
    col = M.E.col(M.index("y1"))
    expected = {M.index("y0"): -quantum_integer(3, 1) ** 2, M.index("x0"): cyclotomic_field(3).one}
    assert col == expected


@pytest.mark.parametrize("p", P_RANGE)
def test_dimensions(p):
    for s in range(1, p + 1):
        assert build_irreducible(p, 1, s).dim == s
    for t in range(1, p):
        assert build_projective(p, 1, t).dim == 2 * p
        assert build_projective(p, -1, t).dim == 2 * p
    assert build_x_lambda(p, 0.5).dim == p
    assert build_y_glued(p, 0.5, 1).dim == 2 * p


@pytest.mark.parametrize("bad", [0, 4])
def test_out_of_range(bad):
    with pytest.raises(ValueError):
        build_irreducible(3, 1, bad)
    with pytest.raises(ValueError):
        build_projective(3, 1, bad if bad else 3)


def test_x_lambda_examples():
    M = build_x_lambda(2, 1)
    assert abs(complex(M.E[0, 1])) < 1e-30  # [1][0] = 0: reducible
    M = build_x_lambda(3, 0.37)
    k0 = complex(M.K(1)[0, 0])
    assert abs(k0 - np.exp(1j * np.pi * (0.37 - 1) / 3)) < 1e-12


def test_y_glued_example():
    M = build_y_glued(2, 0.5, 1)
    assert abs(complex(M.E[M.index("c0"), M.index("d0")]) - 1) < 1e-30
    M = build_y_glued(3, 0.5, 2)
    assert not M.F.col(M.index("c2"))


@pytest.mark.parametrize("p", P_RANGE)
def test_radical_maps_commute(p):
    for a in (1, -1):
        for t in range(1, p):
            M = build_projective(p, a, t)
            phi = nilpotent_map(M)
            assert phi.nnz > 0 and (phi @ phi).nnz == 0
            for X in (M.E, M.F, M.K(1)):
                assert commutes(phi, X)


def _relabel(prefix_map):
    def f(label):
        return prefix_map(label[0], int(label[1:]))

    return f


def _compare(P, Y, mapping):
    perm = [Y.index(mapping(lab)) for lab in P.labels]
    worst = 0.0
    for A, B in ((P.E, Y.E), (P.F, Y.F), (P.K(1), Y.K(1))):
        diff = dense(P, A) - dense(Y, B)[np.ix_(perm, perm)]
        worst = max(worst, float(abs(diff).max()))
    lift = max(abs(P.weights[i] - complex(Y.weights[perm[i]])) for i in range(P.dim))
    return worst, lift


@pytest.mark.parametrize("p", P_RANGE)
def test_glued_module_specializes_to_plus_projective(p):
    for s in range(1, p):
        Y = build_y_glued(p, 2 * p - s + 1e-6, p - s)
        names = {"x": lambda n: f"c{n}", "a": lambda n: f"c{n + p - s}", "b": lambda n: f"d{n}", "y": lambda n: f"d{n + s}"}
        worst, lift = _compare(build_projective(p, 1, s), Y, _relabel(lambda k, n: names[k](n)))
        assert worst < 1e-4 and lift < 1e-4


@pytest.mark.parametrize("p", P_RANGE)
def test_glued_module_specializes_to_minus_projective(p):
    for s in range(1, p):
        Y = build_y_glued(p, s + 1e-6, s)
        names = {"a": lambda n: f"c{n}", "x": lambda n: f"c{n + s}", "y": lambda n: f"d{n}", "b": lambda n: f"d{n + p - s}"}
        worst, lift = _compare(build_projective(p, -1, p - s), Y, _relabel(lambda k, n: names[k](n)))
        assert worst < 1e-4 and lift < 1e-4


def test_dump_lists_every_basis_vector():
    M = build_projective(2, 1, 1)
    lines = M.dump().splitlines()
    assert len(lines) == M.dim + 1
    assert lines[1].startswith("x0\tw=")
