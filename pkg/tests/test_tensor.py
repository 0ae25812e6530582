"""Sparse tensor operators: composition, embedding, traces, solves."""

import itertools

import pytest

from qgdc.scalars import SFIELD
from qgdc.tensor import TensorOp, enc, dec, skew_inverse
from qgdc.rmatrix import dj_rmatrix, permutation_op


F = SFIELD


def test_index_codec():
    assert enc((1, 0, 2), 3) == 11
    assert dec(11, 3, 3) == (1, 0, 2)
    for idx in itertools.product(range(2), repeat=4):
        assert dec(enc(idx, 2), 2, 4) == idx


def test_identity_and_permutation():
    I = TensorOp.identity(F, 2, 2)
    P = permutation_op(F, 2)
    assert P * P == I
    assert (P * I) == P
    swap_13 = TensorOp.from_permutation(F, 2, (2, 1, 0))
    assert swap_13 * swap_13 == TensorOp.identity(F, 2, 3)


def test_embed_places_legs():
    P = permutation_op(F, 2)
    P12 = P.embed(3, (0, 1))
    P23 = P.embed(3, (1, 2))
    P13 = P.embed(3, (0, 2))
    # the two adjacent transpositions generate the 3-cycle relation
    assert P12 * P23 * P12 == P13
    assert P13 == TensorOp.from_permutation(F, 2, (2, 1, 0))


def test_embed_nonadjacent_matches_permutation_conjugate():
    R = dj_rmatrix(F, 2)
    P23 = permutation_op(F, 2).embed(3, (1, 2))
    assert R.embed(3, (0, 2)) == P23 * R.embed(3, (0, 1)) * P23


def test_partial_trace_dimensions_and_values():
    I3 = TensorOp.identity(F, 2, 3)
    t = I3.partial_trace([1])
    assert t == 2 * TensorOp.identity(F, 2, 2)
    full = I3.partial_trace([0, 1, 2])
    assert full.data == {(0, 0): F.integer(8)}
    # weighted trace: weights multiply per traced leg
    s = F.var("s")
    w = [s, s ** 2]
    tw = TensorOp.identity(F, 2, 1).partial_trace([0], weights=w)
    assert tw.data == {(0, 0): s + s ** 2}


def test_trace_of_permutation_contracts():
    # Tr_2 P_12 = I_1
    P = permutation_op(F, 2)
    assert P.partial_trace([1]) == TensorOp.identity(F, 2, 1)
    assert P.partial_trace([0]) == TensorOp.identity(F, 2, 1)


def test_scale_add_subtract():
    R = dj_rmatrix(F, 2)
    z = R - R
    assert z.is_zero()
    assert (2 * R - R) == R
    assert (-R) + R == z


def test_transpose_and_map_entries():
    R = dj_rmatrix(F, 2)
    assert R.transpose().transpose() == R
    Rb = R.map_entries(lambda v: v.bar())
    assert Rb.map_entries(lambda v: v.bar()) == R


def test_skew_inverse_defining_equation():
    for n in (2, 3):
        R = dj_rmatrix(F, n)
        Psi = skew_inverse(R)
        lhs = (R.embed(3, (0, 1)) * Psi.embed(3, (1, 2))).partial_trace([1])
        assert lhs == TensorOp.from_permutation(F, n, (1, 0))


def test_skew_inverse_both_orderings():
    # Tr_2 Psi_12 R_23 = P_13 as well
    for n in (2, 3):
        R = dj_rmatrix(F, n)
        Psi = skew_inverse(R)
        lhs = (Psi.embed(3, (0, 1)) * R.embed(3, (1, 2))).partial_trace([1])
        assert lhs == TensorOp.from_permutation(F, n, (1, 0))


def test_skew_inverse_against_independent_solver():
    sympy = pytest.importorskip("sympy")
    n = 2
    R = dj_rmatrix(F, n)
    Psi = skew_inverse(R)
    s = sympy.symbols("s")

    def to_sympy(op):
        dim = n ** op.legs
        M = sympy.zeros(dim, dim)
        for (r, c), v in op.data.items():
            M[r, c] = sympy.sympify(str(v).replace("^", "**"), locals={"s": s})
        return M

    Rs = to_sympy(R)
    Ps = to_sympy(Psi)
    # contract Tr_2 R_12 Psi_23 inside the independent engine
    for i, k, j, l in itertools.product(range(n), repeat=4):
        acc = sympy.Integer(0)
        for x in range(n):
            for b in range(n):
                acc += Rs[i * n + x, j * n + b] * Ps[b * n + k, x * n + l]
        expected = 1 if (i == l and k == j) else 0
        assert sympy.simplify(acc - expected) == 0


def test_numeric_dense_export():
    numpy = pytest.importorskip("numpy")
    R = dj_rmatrix(F, 2)
    M = R.numeric({"s": 1.3})
    assert M.shape == (4, 4)
    assert abs(M[0, 0] - 1.69) < 1e-12
