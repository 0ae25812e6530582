"""The presented algebras: dimension profiles, determinant values,
inverse-matrix rules, characteristic identities, and controls.

Expected values are frozen from independent computations: polynomial
dimension counts against closed-form binomials, the 2x2 inverse against
the adjugate, and determinant normalizations against the scalar q."""

from math import comb

import pytest

from qgdc.scalars import SFIELD as F, qpow, qint
from qgdc.matrixalg import Mat
from qgdc.presentations import (build_presentation, build_symmetry_algebra,
                                build_tl_pair, cayley_hamilton, char_coeffs,
                                kappa_coeff, rdet_left, rdet_plain, rdet_right)


@pytest.fixture(scope="module")
def gl():
    return build_presentation(2, "gl")


@pytest.fixture(scope="module")
def sl():
    return build_presentation(2, "sl")


@pytest.fixture(scope="module")
def hd():
    return build_presentation(2, "hd")


def _letters(build, prefix):
    skip = "Ti" if prefix == "T" else None
    return [build.alg.index[nm] for nm in build.alg.names
            if nm.startswith(prefix) and (skip is None or not nm.startswith(skip))]


def test_quantum_matrix_dimensions(gl):
    # flat deformation: same dimensions as polynomials in 4 variables
    dims = gl.system.graded_dimension(3, _letters(gl, "T"))
    assert dims == [comb(d + 3, 3) for d in range(4)] == [1, 4, 10, 20]


def test_one_form_dimensions(gl):
    # one-forms deform an exterior algebra on n^2 generators
    dims = gl.system.graded_dimension(4, _letters(gl, "Om"))
    assert dims == [comb(4, d) for d in range(5)] == [1, 4, 6, 4, 1]


def test_traceless_one_form_dimensions(sl):
    dims = sl.system.graded_dimension(3, _letters(sl, "Om"))
    assert dims == [comb(3, d) for d in range(4)] == [1, 3, 3, 1]


def test_builds_locally_confluent_to_degree_three(gl, sl, hd):
    for b in (gl, sl, hd):
        bad, _ = b.system.non_joinable_pairs(3)
        assert bad == []


def test_sl_determinant_is_one(sl):
    assert sl.system.normal_form(rdet_plain(sl, "T")) == sl.alg.one()


def test_sl_affine_rule(sl):
    a = sl.alg
    q = qpow(F, 1, 2)
    nf = sl.system.normal_form(a.word("T12", "T21"))
    assert nf == a.word("T11", "T22").scale(q.inv()) - a.one().scale(q.inv())


def test_inverse_matrix_is_adjugate(sl):
    # with the determinant pinned to 1 the inverse letters collapse onto
    # the adjugate of T
    a = sl.alg
    q = qpow(F, 1, 2)
    nfs = {nm: sl.system.normal_form(a.gen(nm))
           for nm in ("Ti11", "Ti12", "Ti21", "Ti22")}
    assert nfs["Ti11"] == a.gen("T22")
    assert nfs["Ti12"] == a.gen("T12").scale(-q.inv())
    assert nfs["Ti21"] == a.gen("T21").scale(-q)
    assert nfs["Ti22"] == a.gen("T11")


def test_antipode_closed_form(hd):
    # q^{n(n-1)} n_q x weighted trace of T_2 A^(2) reproduces the inverse
    a = hd.alg
    A2 = hd.lift(hd.A[2])
    T2 = hd.at("T", 2, 1)
    core = (T2 * A2).partial_trace([1], weights=hd.d)
    fac = qpow(F, 2, 2) * qint(F, 2, 2)
    anti = Mat(a, 2, [[fac * core.data.get((i, j), a.zero())
                       for j in range(2)] for i in range(2)])
    assert (anti - hd.mats["Ti"]).nf(hd.system).is_zero_mod(hd.system)


def test_symmetry_determinants(hd):
    q = qpow(F, 1, 2)
    assert hd.system.normal_form(rdet_right(hd, "L")) == hd.alg.scalar(q.inv())
    assert hd.system.normal_form(rdet_left(hd, "K")) == hd.alg.scalar(q.inv())


def test_composite_one_form_determinant(hd):
    Fc = hd.f_composite()
    val = hd.system.normal_form(rdet_right(hd, Fc))
    assert val == hd.alg.scalar(qpow(F, -4, 2))


def test_composite_determinant_centrality(hd):
    rl = rdet_right(hd, "L")
    for nm in hd.alg.names:
        g = hd.alg.gen(nm)
        assert hd.system.reduces_to_zero(rl * g - g * rl), nm


def test_scaling_negative_control():
    good = build_tl_pair(2)
    rl = rdet_right(good, "L")
    assert all(good.system.reduces_to_zero(rl * good.alg.gen(nm)
                                           - good.alg.gen(nm) * rl)
               for nm in good.alg.names)
    bad = build_tl_pair(2, gamma=F.one)
    rlb = rdet_right(bad, "L")
    broken = [nm for nm in bad.alg.names
              if not bad.system.reduces_to_zero(rlb * bad.alg.gen(nm)
                                                - bad.alg.gen(nm) * rlb)]
    assert broken, "wrong scaling must break centrality"


def test_characteristic_coefficients_frozen():
    re2 = build_symmetry_algebra(2, "L")
    a = char_coeffs(re2, "L")
    alg = re2.alg
    q = qpow(F, 1, 2)
    assert a[1] == alg.gen("L11").scale(qpow(F, -3, 2)) + alg.gen("L22").scale(q.inv())
    assert a[2] == alg.scalar(q.inv())
    rek = build_symmetry_algebra(2, "K")
    b = char_coeffs(rek, "K")
    assert b[1] == rek.alg.gen("K11").scale(q.inv()) + rek.alg.gen("K22").scale(qpow(F, -3, 2))
    assert b[2] == rek.alg.scalar(q.inv())


def test_cayley_hamilton_n2_entrywise():
    for kind in ("L", "K", "F"):
        b = build_symmetry_algebra(2, kind)
        res = cayley_hamilton(b, kind)
        assert all(e.is_zero() for row in res.rows for e in row), kind


def test_char_coeff_centrality_in_re_algebra():
    re2 = build_symmetry_algebra(2, "L")
    a1 = char_coeffs(re2, "L")[1]
    for nm in re2.alg.names:
        g = re2.alg.gen(nm)
        assert re2.system.reduces_to_zero(a1 * g - g * a1)


def test_cayley_hamilton_n3_trace_level():
    re3 = build_symmetry_algebra(3, "L")
    coeffs = char_coeffs(re3, "L")
    assert coeffs[3] == re3.alg.scalar(qpow(F, -1, 3))
    q = qpow(F, 1, 3)
    L = re3.mats["L"]
    powers = [Mat.identity(re3.alg, 3)]
    for _ in range(3):
        powers.append((powers[-1] * L).nf(re3.system))
    p = [re3.system.normal_form(re3.rtr(powers[k])) for k in range(4)]
    rtr_id = qpow(F, -3, 3) * qint(F, 3, 3)
    lhs = (p[3] - q * (coeffs[1] * p[2]) + (q * q) * (coeffs[2] * p[1])
           - (q ** 3 * rtr_id) * coeffs[3])
    assert re3.system.reduces_to_zero(lhs)
    assert re3.system.reduces_to_zero(p[1] - coeffs[1])


def test_newton_recursion_n2():
    re2 = build_symmetry_algebra(2, "L")
    coeffs = char_coeffs(re2, "L")
    q = qpow(F, 1, 2)
    L = re2.mats["L"]
    powers = [Mat.identity(re2.alg, 2)]
    for _ in range(3):
        powers.append((powers[-1] * L).nf(re2.system))
    p = [re2.system.normal_form(re2.rtr(powers[k])) for k in range(4)]
    rtr_id = qpow(F, -2, 2) * qint(F, 2, 2)
    assert re2.system.reduces_to_zero(p[1] - coeffs[1])
    assert re2.system.reduces_to_zero(
        p[2] - q * (coeffs[1] * p[1]) + (q * q * rtr_id) * coeffs[2])
    assert re2.system.reduces_to_zero(
        p[3] - q * (coeffs[1] * p[2]) + (q * q) * (coeffs[2] * p[1]))


def test_biinvariants(hd):
    Om = hd.mats["Om"]
    Om2 = (Om * Om).nf(hd.system)
    Om3 = (Om2 * Om).nf(hd.system)
    assert hd.system.reduces_to_zero(hd.rtr(Om2))
    w1 = hd.system.normal_form(hd.rtr(Om3))
    assert not w1.is_zero()
    assert hd.system.reduces_to_zero(w1 * w1)


def test_left_invariant_one_form(hd):
    Th = hd.theta()
    Th2 = (Th * Th).nf(hd.system)
    Th3 = (Th2 * Th).nf(hd.system)
    assert hd.system.reduces_to_zero(hd.optr(Th))
    assert hd.system.reduces_to_zero(hd.optr(Th2))
    w1 = hd.system.normal_form(hd.rtr((hd.mats["Om"] * (hd.mats["Om"] * hd.mats["Om"]).nf(hd.system)).nf(hd.system)))
    assert hd.system.reduces_to_zero(hd.optr(Th3) - w1)


def test_mixed_exchange_identities(hd):
    coeffs = char_coeffs(hd, "L")
    a1, a2 = coeffs[1], coeffs[2]
    q = qpow(F, 1, 2)
    g2 = hd.gamma * hd.gamma
    lam2 = q * q - F.one
    T, L, Om = hd.mats["T"], hd.mats["L"], hd.mats["Om"]
    lhs = T.map(lambda p: g2 * (p * a1))
    rhs = T.map(lambda p: a1 * p) + (L * T).map(lambda p: p.scale(lam2 * q.inv()))
    assert (lhs - rhs).is_zero_mod(hd.system)
    L2T = (L * (L * T).nf(hd.system)).nf(hd.system)
    lhs2 = T.map(lambda p: (g2 * g2) * (p * a2))
    rhs2 = (T.map(lambda p: a2 * p)
            + (L * T).map(lambda p: (a1 * p).scale(lam2 * q.inv()))
            + L2T.map(lambda p: p.scale(-lam2 * (q * q).inv())))
    assert (lhs2 - rhs2).is_zero_mod(hd.system)
    lhs3 = Om.map(lambda p: p * a1 - a1 * p)
    br = (Om * L - L * Om).nf(hd.system)
    rhs3 = br.map(lambda p: p.scale(-lam2 * q.inv()))
    assert (lhs3 - rhs3).is_zero_mod(hd.system)


def test_kappa_value_frozen():
    # q^2 (q - 1/q) / (2_q + q^2 (q - 1/q)) at n = 2
    k = kappa_coeff(F, 2)
    assert k == F.parse("(s^8 - s^4) / (s^8 + 1)")


def test_f_letter_presentation_consistent():
    hdf = build_presentation(2, "hd", with_f=True)
    bad, _ = hdf.system.non_joinable_pairs(3)
    assert bad == []
    # the F letters satisfy the same characteristic identity as the composite
    res = cayley_hamilton(hdf, "F")
    assert all(e.is_zero() for row in res.rows for e in row)
