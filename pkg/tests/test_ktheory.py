import random

import pytest

from qcstar.graphs import builtin_graph, parse_graph
from qcstar.ktheory import (
    AbelianGroup,
    IntegerMatrix,
    cokernel,
    k_groups,
    kernel,
    rational_rank,
    smith_normal_form,
    torsion_order_by_cosets,
    torsion_order_by_minors,
)


def test_matrix_basics():
    m = IntegerMatrix.from_rows([[1, 2], [3, 4]])
    assert m.entry(1, 0) == 3
    assert m.row(0) == (1, 2)
    assert m.column(1) == (2, 4)
    assert m.transpose().to_rows() == [[1, 3], [2, 4]]
    assert m.determinant() == -2
    assert not m.is_unimodular()
    assert IntegerMatrix.identity(3).is_unimodular()
    prod = m.multiply(IntegerMatrix.identity(2))
    assert prod == m


def test_matrix_validation():
    with pytest.raises(ValueError):
        IntegerMatrix.from_rows([[1, 2], [3]])
    with pytest.raises(TypeError):
        IntegerMatrix.from_rows([[1.5]])
    a = IntegerMatrix.from_rows([[1, 2]])
    with pytest.raises(ValueError):
        a.multiply(a)


def test_determinant_bareiss_large_entries():
    # triangular with big pivots: det is the diagonal product, exactly
    m = IntegerMatrix.from_rows([
        [10**12, 7, 3],
        [0, 10**9, 1],
        [0, 0, 10**6],
    ])
    assert m.determinant() == 10**27


def test_abelian_group_str():
    assert str(AbelianGroup(0, ())) == "0"
    assert str(AbelianGroup(1, ())) == "Z"
    assert str(AbelianGroup(2, ())) == "Z^2"
    assert str(AbelianGroup(1, (2,))) == "Z + Z_2"
    assert str(AbelianGroup(0, (2, 6))) == "Z_2 + Z_6"
    assert AbelianGroup(0, ()).is_trivial()
    assert AbelianGroup(0, (2, 6)).torsion_order() == 12


def test_abelian_group_rejects_bad_torsion():
    with pytest.raises(ValueError):
        AbelianGroup(0, (1,))
    with pytest.raises(ValueError):
        AbelianGroup(0, (3, 2))  # no divisibility chain


def check_snf(m):
    res = smith_normal_form(m)
    assert res.u.multiply(m).multiply(res.v) == res.s
    assert res.u.is_unimodular()
    assert res.v.is_unimodular()
    d = res.diagonal()
    assert all(x >= 0 for x in d)
    nonzero = [x for x in d if x]
    assert list(d[:len(nonzero)]) == nonzero  # zeros trail
    for a, b in zip(nonzero, nonzero[1:]):
        assert b % a == 0
    return res


def test_snf_known_columns():
    # diagonal() has min(rows, cols) entries
    s = check_snf(IntegerMatrix.from_rows([[0], [1], [1]])).diagonal()
    assert s == (1,)
    s = check_snf(IntegerMatrix.from_rows([[0], [2]])).diagonal()
    assert s == (2,)


def test_snf_zero_and_identity():
    z = IntegerMatrix.zeros(2, 2)
    res = check_snf(z)
    assert res.s == z
    assert res.u == IntegerMatrix.identity(2)
    assert res.v == IntegerMatrix.identity(2)
    res = check_snf(IntegerMatrix.identity(3))
    assert res.invariant_factors() == (1, 1, 1)


def test_snf_divisibility_repair():
    # diag(2, 3) needs the off-chain fix; invariant factors are 1, 6
    m = IntegerMatrix.from_rows([[2, 0], [0, 3]])
    res = check_snf(m)
    assert res.invariant_factors() == (1, 6)


def test_snf_random_property_suite():
    rng = random.Random(20240817)
    for _ in range(250):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        m = IntegerMatrix.from_rows(
            [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)])
        res = check_snf(m)
        assert res.rank() == rational_rank(m)
        claimed = 1
        for f in res.invariant_factors():
            claimed *= f
        assert torsion_order_by_minors(m) == claimed
        by_cosets = torsion_order_by_cosets(m, claimed)
        if by_cosets is not None:
            assert by_cosets == claimed


def test_torsion_oracle_known():
    m = IntegerMatrix.from_rows([[2, 0], [0, 4]])
    assert torsion_order_by_minors(m) == 8
    assert torsion_order_by_cosets(m, 8) == 8
    # a wrong claim is refuted, not confirmed
    assert torsion_order_by_cosets(m, 4) != 4


def test_cokernel_and_kernel():
    m = IntegerMatrix.from_rows([[0], [2]])
    assert cokernel(m) == AbelianGroup(1, (2,))
    assert kernel(m) == AbelianGroup(0, ())
    wide = IntegerMatrix.from_rows([[1, 0, 0], [0, 1, 0]])
    assert cokernel(wide) == AbelianGroup(0, ())
    assert kernel(wide) == AbelianGroup(1, ())
    z = IntegerMatrix.zeros(2, 3)
    assert cokernel(z) == AbelianGroup(2, ())
    assert kernel(z) == AbelianGroup(3, ())


def test_k_groups_builtins():
    k0, k1 = k_groups(builtin_graph("G1"))
    assert (k0, k1) == (AbelianGroup(2, ()), AbelianGroup(0, ()))
    k0, k1 = k_groups(builtin_graph("G2"))
    assert (k0, k1) == (AbelianGroup(1, ()), AbelianGroup(0, ()))
    k0, k1 = k_groups(builtin_graph("G3"))
    assert (k0, k1) == (AbelianGroup(1, (2,)), AbelianGroup(0, ()))


def test_k_groups_no_emitters():
    # two isolated vertices: A_G is 2 x 0, K0 = Z^2, K1 = 0
    g = parse_graph("vertex a\nvertex b\n")
    k0, k1 = k_groups(g)
    assert k0 == AbelianGroup(2, ())
    assert k1 == AbelianGroup(0, ())


def test_k_groups_single_loop():
    # one vertex, one loop: A_G = (0), K0 = K1 = Z
    g = parse_graph("vertex a\nedge e a a\n")
    k0, k1 = k_groups(g)
    assert k0 == AbelianGroup(1, ())
    assert k1 == AbelianGroup(1, ())
