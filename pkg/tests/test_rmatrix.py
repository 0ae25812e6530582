"""Checks for the R-matrix layer: Hecke/braid conditions, antisymmetrizers,
trace weights, and the full verification report."""

import json

import pytest

from qgdc.scalars import SFIELD as F, qpow, qint
from qgdc.tensor import TensorOp, skew_inverse
from qgdc.rmatrix import (
    antisymmetrizers,
    braid_residual,
    dj_rmatrix,
    expected_weights,
    hecke_residual,
    jucys_murphy_product,
    op_rank,
    permutation_op,
    rmatrix_from_json,
    rmatrix_inverse,
    rmatrix_to_json,
    rop,
    rtrace,
    sl_trace_condition,
    trace_weights,
    verify_rmatrix_class,
    verify_rmatrix_numeric,
)


def test_dj_entries_n2():
    R = dj_rmatrix(F, 2)
    q = qpow(F, 1, 2)
    lam = q - q.inv()
    # column (k,l) -> q^{d_kl} e_l e_k  [+ lam e_k e_l if k<l]
    assert R.get((0, 0), (0, 0)) == q
    assert R.get((1, 1), (1, 1)) == q
    assert R.get((1, 0), (0, 1)) == F.one
    assert R.get((0, 1), (1, 0)) == F.one
    assert R.get((0, 1), (0, 1)) == lam
    assert R.get((1, 0), (1, 0)) == F.zero


def test_hecke_and_braid_residuals_vanish():
    for n in (2, 3):
        R = dj_rmatrix(F, n)
        assert hecke_residual(R, n).is_zero()
        assert braid_residual(R).is_zero()


def test_inverse_is_r_minus_lambda():
    R = dj_rmatrix(F, 2)
    Rinv = rmatrix_inverse(R, 2)
    assert (R * Rinv - TensorOp.identity(F, 2, 2)).is_zero()


def test_antisymmetrizer_tower_n3():
    R = dj_rmatrix(F, 3)
    A = antisymmetrizers(R, 3, 3)
    # idempotents of known rank
    assert (A[2] * A[2] - A[2]).is_zero()
    assert (A[3] * A[3] - A[3]).is_zero()
    assert op_rank(A[3]) == 1


def test_trace_weights_frozen_n2():
    R = dj_rmatrix(F, 2)
    d, dop = trace_weights(R, 2)
    # d_i = q^{1-2n+2i}, dop_i = q^{-1-2i}
    assert d == [qpow(F, -3, 2), qpow(F, -1, 2)]
    assert dop == [qpow(F, -1, 2), qpow(F, -3, 2)]
    ed, edop = expected_weights(F, 2)
    assert d == ed and dop == edop


def test_trace_weights_frozen_n3():
    R = dj_rmatrix(F, 3)
    d, dop = trace_weights(R, 3)
    assert d == [qpow(F, -5, 3), qpow(F, -3, 3), qpow(F, -1, 3)]
    assert dop == [qpow(F, -1, 3), qpow(F, -3, 3), qpow(F, -5, 3)]


def test_rtrace_of_identity():
    for n in (2, 3):
        R = dj_rmatrix(F, n)
        d, _ = trace_weights(R, n)
        val = rtrace(TensorOp.identity(F, n, 1), [0], d)
        assert val.get((), ()) == qpow(F, -n, n) * qint(F, n, n)


def test_jucys_murphy_eigenvalue():
    # A^(n) . (J_1 ... J_n) = q^{-n(n-1)} A^(n)
    for n in (2, 3):
        R = dj_rmatrix(F, n)
        A = antisymmetrizers(R, n, n)[n]
        J = jucys_murphy_product(R, n)
        assert A * J == qpow(F, -n * (n - 1), n) * A


def test_cyclic_trace_constant_frozen():
    # the scalar c with Tr_{1..n}(P_1 ... P_n A^(n)) = c I
    ok2, c2 = sl_trace_condition(dj_rmatrix(F, 2), 2)
    assert ok2 and c2 == -F.parse("s^2 / (s^4 + 1)")
    ok3, c3 = sl_trace_condition(dj_rmatrix(F, 3), 3)
    assert ok3 and c3 == F.parse("s^6 / (s^12 + s^6 + 1)")


def test_full_report_passes():
    for n in (2, 3):
        rep = verify_rmatrix_class(dj_rmatrix(F, n), n)
        failed = [c["name"] for c in rep["checks"] if not c["passed"]]
        assert rep["passed"], failed
        assert len(rep["checks"]) >= 14


def test_numeric_report_passes():
    for n in (2, 3):
        rep = verify_rmatrix_numeric(dj_rmatrix(F, n), n, tau=0.1)
        assert rep["passed"], rep
        for c in rep["checks"]:
            assert c["residual"] <= 1e-12


def test_json_round_trip():
    R = dj_rmatrix(F, 2)
    doc = rmatrix_to_json(R, 2)
    assert doc["n"] == 2
    blob = json.dumps(doc)
    R2, n2 = rmatrix_from_json(blob)
    assert n2 == 2 and R == R2


def test_json_rejects_bad_dimensions():
    blob = json.dumps({"n": 2, "entries": [[1, 1, 3, 1, "1"]]})
    with pytest.raises(ValueError):
        rmatrix_from_json(blob)


def test_user_supplied_rmatrix_must_satisfy_hecke():
    # P alone is Hecke only at q = 1; the class verifier must flag it
    P = permutation_op(F, 2)
    rep = verify_rmatrix_class(P, 2)
    assert not rep["passed"]


def test_rop_shares_spectrum():
    R = dj_rmatrix(F, 2)
    Ro = rop(R)
    assert hecke_residual(Ro, 2).is_zero()
    assert skew_inverse(Ro) is not None
