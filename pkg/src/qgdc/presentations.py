"""Presentations of the quantized function algebras with covariant
first-order calculus, and their derived objects.

Variants:

* ``gl`` — quantum matrix entries T with inverse, plus the one-form
  generator matrix Om obeying the quadratic exchange of GL type.
* ``sl`` — determinant normalized to 1, Om made traceless, quadratic
  exchange deformed by the kappa coefficient.
* ``hd`` — the sl pair extended by the two symmetry matrices L and K
  (right- and left-invariant, with R-determinants pinned to 1/q); the
  one-form matrix F = L T K T^{-1} can optionally be adjoined as letters
  with its own quadratic relations.

Letters are ordered T < Ti < Om < L < K < F; every exchange relation is
oriented so normal words carry the letters in that order.
"""

from __future__ import annotations

from .scalars import SFIELD, qpow, qint
from .ncpoly import Algebra
from .rmatrix import antisymmetrizers, dj_rmatrix, rmatrix_inverse, trace_weights
from .rewrite import complete_to_degree, derive_rewrite_rules
from .matrixalg import Mat, LegOp, compose, relation_entries


def _letter_names(n, prefixes):
    names = []
    for p in prefixes:
        names.extend("%s%d%d" % (p, i + 1, j + 1)
                     for i in range(n) for j in range(n))
    return names


class Build:
    """A presented algebra together with its rewriting system and the
    operator data (R-matrix, weights, antisymmetrizers) it was built from."""

    def __init__(self, n, variant, field, R):
        self.n = n
        self.variant = variant
        self.field = field
        self.R = R
        self.Rinv = rmatrix_inverse(R, n)
        self.d, self.dop = trace_weights(R, n)
        self.A = antisymmetrizers(R, n)
        self.alg = None
        self.system = None
        self.mats = {}
        self.gamma = None
        self.confluence = None

    # -- operator helpers -------------------------------------------------------

    def lift(self, top):
        return LegOp.from_tensorop(self.alg, top)

    def at(self, name_or_mat, total, pos):
        mat = self.mats[name_or_mat] if isinstance(name_or_mat, str) else name_or_mat
        return LegOp.from_mat(mat, total, pos)

    def rtr(self, mat):
        """Weighted trace of an n x n polynomial matrix (right-invariant
        flavor)."""
        return mat.wtrace(self.d)

    def optr(self, mat):
        return mat.wtrace(self.dop)

    def nf(self, obj):
        if isinstance(obj, Mat):
            return obj.nf(self.system)
        if isinstance(obj, LegOp):
            return obj.nf(self.system)
        return self.system.normal_form(obj)

    def scalar_value(self, poly):
        """Normal form of a polynomial expected to be a scalar; returns the
        field element or None."""
        nf = self.system.normal_form(poly)
        if list(nf.terms) in ([], [()]):
            return nf.constant()
        return None

    # -- derived matrices ---------------------------------------------------------

    def matrix_nf(self, name):
        return self.mats[name].nf(self.system)

    def matrix_product(self, *names):
        acc = Mat.identity(self.alg, self.n)
        for nm in names:
            acc = acc * self.mats[nm]
            acc = acc.nf(self.system)
        return acc

    def f_composite(self):
        """The one-form conjugation matrix assembled from its factors."""
        return self.matrix_product("L", "T", "K", "Ti")

    def theta(self):
        """The left-invariant one-form matrix Ti * Om * T."""
        return self.matrix_product("Ti", "Om", "T")


def rdet_right(build, mat):
    """R-determinant in the right-invariant convention:
    weighted trace over all n legs of A^(n) M_1 (R M R^-1)-shifted chain."""
    n, alg = build.n, build.alg
    A = build.lift(build.A[n])
    chain = []
    cur = build.at(mat if isinstance(mat, Mat) else build.mats[mat], n, 0)
    chain.append(cur)
    for i in range(1, n):
        Ri = build.lift(build.R.embed(n, (i - 1, i)))
        Rii = build.lift(build.Rinv.embed(n, (i - 1, i)))
        cur = Ri * cur * Rii
        chain.append(cur)
    acc = A
    for c in chain:
        acc = acc * c
    return acc.partial_trace(list(range(n)), weights=build.d).data.get((0, 0), alg.zero())


def rdet_left(build, mat):
    """R-determinant in the left-invariant convention: the shifted chain
    runs downward and the trace uses the opposite weights."""
    n, alg = build.n, build.alg
    A = build.lift(build.A[n])
    chain = {n: build.at(mat if isinstance(mat, Mat) else build.mats[mat], n, n - 1)}
    for i in range(n - 1, 0, -1):
        Ri = build.lift(build.R.embed(n, (i - 1, i)))
        Rii = build.lift(build.Rinv.embed(n, (i - 1, i)))
        chain[i] = Ri * chain[i + 1] * Rii
    acc = A
    for i in range(n, 0, -1):
        acc = acc * chain[i]
    return acc.partial_trace(list(range(n)), weights=build.dop).data.get((0, 0), alg.zero())


def rdet_plain(build, mat):
    """Unweighted trace of A^(n) M_1 ... M_n (the quantum determinant of
    the function algebra)."""
    n, alg = build.n, build.alg
    A = build.lift(build.A[n])
    acc = A
    for i in range(n):
        acc = acc * build.at(mat if isinstance(mat, Mat) else build.mats[mat], n, i)
    return acc.partial_trace(list(range(n))).data.get((0, 0), alg.zero())


def kappa_coeff(field, n):
    """q^n (q - 1/q) / (n_q + q^n (q - 1/q))."""
    q = qpow(field, 1, n)
    lam = q - q.inv()
    qn = qpow(field, n, n)
    return qn * lam / (qint(field, n, n) + qn * lam)


def build_presentation(n, variant="sl", with_f=False, gamma=None,
                       rmatrix=None, field=SFIELD, check_confluence=0,
                       completion_degree=4, pin_dets=True):
    """Construct the rewriting presentation for one variant.

    gamma is the scaling unit in the mixed T-L / T-K exchange relations;
    the default s makes the L and K R-determinants central.  Passing a
    different scalar is useful as a negative control.

    The derived rules are completed until every overlap ambiguity up to
    `completion_degree` resolves.  Deeper ambiguities may remain (the hd
    variant does not admit a finite confluent system in this order), so
    normal forms certify ideal membership — a zero normal form is always
    a proof — while nonzero normal forms above the completion degree are
    not disproofs.
    """
    if variant not in ("gl", "sl", "hd"):
        raise ValueError("unknown variant %r" % variant)
    R = rmatrix if rmatrix is not None else dj_rmatrix(field, n)
    build = Build(n, variant, field, R)

    prefixes = ["T", "Ti", "Om"]
    if variant == "hd":
        prefixes += ["L", "K"]
        if with_f:
            prefixes.append("F")
    elif with_f:
        raise ValueError("the F letters only exist in the hd variant")
    alg = Algebra(field, _letter_names(n, prefixes))
    build.alg = alg

    mats = {p: Mat.generators(alg, n, p) for p in prefixes}
    build.mats = mats
    if gamma is None:
        gamma = field.monomial(0, 1)  # s, the n-th root of q
    build.gamma = gamma
    g2 = gamma * gamma

    Rl = build.lift(R)
    Rli = build.lift(build.Rinv)
    I2 = LegOp.identity(alg, n, 2)

    def m1(p):
        return build.at(p, 2, 0)

    def m2(p):
        return build.at(p, 2, 1)

    relations = []

    # traceless one-forms first: a linear relation, so the eliminations
    # happen before the bulk of the derivation
    if variant in ("sl", "hd"):
        relations.append(build.rtr(mats["Om"]))

    # quantum matrix sector with its inverse
    T1, T2 = m1("T"), m2("T")
    Ti1, Ti2 = m1("Ti"), m2("Ti")
    relations += relation_entries(Rl * T1 * T2, T1 * T2 * Rl)
    unitl = (mats["T"] * mats["Ti"]) - Mat.identity(alg, n)
    unitr = (mats["Ti"] * mats["T"]) - Mat.identity(alg, n)
    relations += [e for row in unitl.rows for e in row if not e.is_zero()]
    relations += [e for row in unitr.rows for e in row if not e.is_zero()]
    relations += relation_entries(Rl * Ti2 * Ti1, Ti2 * Ti1 * Rl)
    relations += relation_entries(T2 * Rli * Ti2, Ti1 * Rli * T1)

    # one-form exchange
    Om1, Om2 = m1("Om"), m2("Om")
    if variant == "gl":
        relations += relation_entries(Rl * Om1 * Rl * Om1,
                                      (Om1 * Rl * Om1 * Rli).map(lambda p: -p))
    else:
        kap = kappa_coeff(field, n)
        lhs = Rl * Om1 * Rl * Om1 + Om1 * Rl * Om1 * Rli
        sq = Om1 * Om1
        rhs = (sq + Rl * sq * Rl).scale(kap)
        relations += relation_entries(lhs, rhs)
    relations += relation_entries(Rl * Om1 * Rli * T1, T1 * Om2)
    relations += relation_entries(Ti1 * Rl * Om1 * Rli, Om2 * Ti1)

    # determinant normalization of the function algebra
    if variant in ("sl", "hd"):
        relations.append(rdet_plain(build, "T") - alg.one())

    if variant == "hd":
        L1 = m1("L")
        L2 = m2("L")
        K1, K2 = m1("K"), m2("K")
        relations += relation_entries(Rl * L1 * Rl * L1, L1 * Rl * L1 * Rl)
        relations += relation_entries(Rl * L1 * Rl * T1, (T1 * L2).scale(g2))
        relations += relation_entries((Ti1 * Rl * L1 * Rl).scale(g2.inv()), L2 * Ti1)
        relations += relation_entries(Rl * L1 * Rl * Om1, Om1 * Rl * L1 * Rl)
        relations += relation_entries(Rl * K2 * Rl * K2, K2 * Rl * K2 * Rl)
        relations += relation_entries(T2 * Rl * K2 * Rl, (K1 * T2).scale(g2))
        relations += relation_entries((Rl * K2 * Rl * Ti2).scale(g2.inv()), Ti2 * K1)
        relations += relation_entries(K1 * Om2, Om2 * K1)
        relations += relation_entries(K1 * L2, L2 * K1)
        if pin_dets:
            qdet = qpow(field, -1, n)
            relations.append(rdet_right(build, "L") - alg.scalar(qdet))
            relations.append(rdet_left(build, "K") - alg.scalar(qdet))
        if with_f:
            F1, F2 = m1("F"), m2("F")
            relations += relation_entries(Rl * F1 * Rl * F1, F1 * Rl * F1 * Rl)
            relations += relation_entries(Rl * F1 * Rli * T1, T1 * F2)
            relations += relation_entries(Ti1 * Rl * F1 * Rli, F2 * Ti1)
            relations += relation_entries(Rl * F1 * Rl * Om1, Om1 * Rl * F1 * Rl)
            relations += relation_entries(Rl * L1 * Rl * F1, F1 * Rl * L1 * Rl)
            relations += relation_entries(F1 * K2, K2 * F1)
            if pin_dets:
                relations.append(rdet_right(build, "F")
                                 - alg.scalar(qpow(field, -n * n, n)))

    build.system = derive_rewrite_rules(alg, relations)
    build.system, build.completion_rounds = complete_to_degree(
        alg, build.system, max_degree=completion_degree)
    build.relations = relations
    if check_confluence:
        build.confluence = build.system.check_local_confluence(check_confluence)
    return build


def build_symmetry_algebra(n, kind="L", field=SFIELD, rmatrix=None,
                           det_value=None):
    """A standalone reflection-equation algebra for one symmetry matrix.

    kind "L" and "F" use the right-invariant determinant convention and
    weights d; kind "K" mirrors everything (second leg, weights dop)."""
    R = rmatrix if rmatrix is not None else dj_rmatrix(field, n)
    build = Build(n, "re-" + kind.lower(), field, R)
    alg = Algebra(field, _letter_names(n, [kind]))
    build.alg = alg
    build.mats = {kind: Mat.generators(alg, n, kind)}
    Rl = build.lift(R)
    relations = []
    if kind in ("L", "F"):
        M1 = build.at(kind, 2, 0)
        relations += relation_entries(Rl * M1 * Rl * M1, M1 * Rl * M1 * Rl)
    else:
        M2 = build.at(kind, 2, 1)
        relations += relation_entries(Rl * M2 * Rl * M2, M2 * Rl * M2 * Rl)
    if det_value is None:
        det_value = qpow(field, -n * n, n) if kind == "F" else qpow(field, -1, n)
    if det_value is not False:
        det = rdet_right(build, kind) if kind in ("L", "F") else rdet_left(build, kind)
        relations.append(det - alg.scalar(det_value))
    build.system = derive_rewrite_rules(alg, relations)
    build.system, build.completion_rounds = complete_to_degree(
        alg, build.system, max_degree=3)
    build.relations = relations
    return build


def build_tl_pair(n, gamma=None, field=SFIELD, rmatrix=None):
    """Quantum matrix T together with the right-invariant symmetry L and
    the mixed exchange scaled by gamma — no determinant normalizations.

    In this unconstrained pair the L-determinant commutes with T exactly
    when gamma is the n-th root of q, which makes it the right stage for
    the scaling negative control (the unimodular variants degenerate
    instead of merely losing centrality)."""
    R = rmatrix if rmatrix is not None else dj_rmatrix(field, n)
    build = Build(n, "tl", field, R)
    alg = Algebra(field, _letter_names(n, ["T", "L"]))
    build.alg = alg
    build.mats = {p: Mat.generators(alg, n, p) for p in ("T", "L")}
    if gamma is None:
        gamma = field.monomial(0, 1)
    build.gamma = gamma
    g2 = gamma * gamma
    Rl = build.lift(R)
    T1, T2 = build.at("T", 2, 0), build.at("T", 2, 1)
    L1, L2 = build.at("L", 2, 0), build.at("L", 2, 1)
    relations = []
    relations += relation_entries(Rl * T1 * T2, T1 * T2 * Rl)
    relations += relation_entries(Rl * L1 * Rl * L1, L1 * Rl * L1 * Rl)
    relations += relation_entries(Rl * L1 * Rl * T1, (T1 * L2).scale(g2))
    build.system = derive_rewrite_rules(alg, relations)
    build.system, build.completion_rounds = complete_to_degree(
        alg, build.system, max_degree=3)
    build.relations = relations
    return build


def char_coeffs(build, kind):
    """The characteristic coefficients of one symmetry matrix: weighted
    traces of the antisymmetrized chain products, degree by degree."""
    n, alg = build.n, build.alg
    mat = build.mats[kind]
    right = kind in ("L", "F")
    coeffs = [alg.one()]
    for i in range(1, n + 1):
        # same chain as the determinant, stopped at length i
        A = build.A[i]
        legs = i
        Ai = build.lift(A) if legs == A.legs else None
        if Ai is None:
            raise ValueError("antisymmetrizer legs mismatch")
        if right:
            chain = []
            cur = build.at(mat, legs, 0)
            chain.append(cur)
            for k in range(1, legs):
                Rk = build.lift(build.R.embed(legs, (k - 1, k)))
                Rki = build.lift(build.Rinv.embed(legs, (k - 1, k)))
                cur = Rk * cur * Rki
                chain.append(cur)
            acc = Ai
            for c in chain:
                acc = acc * c
            val = acc.partial_trace(list(range(legs)), weights=build.d)
        else:
            chain = {legs: build.at(mat, legs, legs - 1)}
            for k in range(legs - 1, 0, -1):
                Rk = build.lift(build.R.embed(legs, (k - 1, k)))
                Rki = build.lift(build.Rinv.embed(legs, (k - 1, k)))
                chain[k] = Rk * chain[k + 1] * Rki
            acc = Ai
            for k in range(legs, 0, -1):
                acc = acc * chain[k]
            val = acc.partial_trace(list(range(legs)), weights=build.dop)
        coeffs.append(build.system.normal_form(
            val.data.get((0, 0), alg.zero())))
    return coeffs


def cayley_hamilton(build, kind):
    """sum_i (-q)^i a_i M^(n-i) as a matrix; zero iff the identity holds."""
    n, alg = build.n, build.alg
    field = build.field
    mat = build.mats[kind]
    coeffs = char_coeffs(build, kind)
    q = qpow(field, 1, n)
    acc = Mat(alg, n)
    power = Mat.identity(alg, n)
    powers = [power]
    for _ in range(n):
        power = (power * mat).nf(build.system)
        powers.append(power)
    sign = field.one
    for i in range(n + 1):
        term = powers[n - i].map(lambda p, c=coeffs[i]: c * p)
        acc = acc + term.map(lambda p, sg=sign: p.scale(sg))
        sign = sign * (-q)
    return acc.nf(build.system)
