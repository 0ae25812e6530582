"""R-matrix constructions and the compatibility-class verifier.

The standard deformation R-matrix is kept in braid form (R = P R-hat in
the usual notation), so the braid relation reads R_1 R_2 R_1 = R_2 R_1 R_2
and the Hecke condition (R - q)(R + 1/q) = 0.  From a braid-form R the
module derives the q-antisymmetrizers, the skew inverse, the weighted
traces and the associated diagonal operators, and checks the identities
that make the downstream algebra constructions work.
"""

from __future__ import annotations

import cmath
import itertools
import json
import math
import random

from .scalars import SFIELD, qint, qpow
from .tensor import TensorOp, skew_inverse


def dj_rmatrix(field, n):
    """The standard (Drinfeld-Jimbo type) braid-form R-matrix for GL_n."""
    q = qpow(field, 1, n)
    lam = q - q.inv()
    R = TensorOp(field, n, 2)
    for k in range(n):
        for l in range(n):
            R.set((l, k), (k, l), q if k == l else field.one)
            if k < l:
                R.set((k, l), (k, l), lam)
    return R


def permutation_op(field, n):
    return TensorOp.from_permutation(field, n, (1, 0))


def braid_embed(R, total_legs, i):
    """R acting on legs (i-1, i) of ``total_legs`` legs (i is 1-based,
    matching the usual generator numbering R_1, R_2, ...)."""
    return R.embed(total_legs, (i - 1, i))


def hecke_residual(R, n):
    """(R - q)(R + 1/q) = R^2 - (q - 1/q) R - 1, which must vanish."""
    field = R.field
    q = qpow(field, 1, n)
    I = TensorOp.identity(field, R.n, 2)
    return R * R - (q - q.inv()) * R - I


def braid_residual(R):
    R1 = braid_embed(R, 3, 1)
    R2 = braid_embed(R, 3, 2)
    return R1 * R2 * R1 - R2 * R1 * R2


def rmatrix_inverse(R, n):
    """R^{-1} from the Hecke condition: R - (q - 1/q)."""
    field = R.field
    q = qpow(field, 1, n)
    I = TensorOp.identity(field, R.n, 2)
    return R - (q - q.inv()) * I


def rop(R):
    """The conjugated matrix P R P."""
    P = permutation_op(R.field, R.n)
    return P * R * P


def antisymmetrizers(R, n, upto=None):
    """The tower of q-antisymmetrizer projectors A^(1), ..., A^(upto).

    A^(i) acts on i legs; A^(1) = 1 and
    A^(i) = ((i-1)_q / i_q) A^(i-1) (q^(i-1)/(i-1)_q - R_(i-1)) A^(i-1).
    """
    field = R.field
    if upto is None:
        upto = n
    A = {1: TensorOp.identity(field, R.n, 1)}
    for i in range(2, upto + 1):
        prev = A[i - 1].embed(i, tuple(range(i - 1)))
        Ri = braid_embed(R, i, i - 1)
        iq = qint(field, i, n)
        jq = qint(field, i - 1, n)
        mid = (qpow(field, i - 1, n) / jq) * TensorOp.identity(field, R.n, i) - Ri
        A[i] = (jq / iq) * (prev * mid * prev)
    return A


def op_rank(op):
    """Rank of the operator over the coefficient field."""
    rows = {}
    for (r, c), v in op.data.items():
        rows.setdefault(r, {})[c] = v
    work = list(rows.values())
    rank = 0
    while work:
        row = work.pop()
        row = {c: v for c, v in row.items() if v}
        if not row:
            continue
        rank += 1
        pc = next(iter(row))
        pv = row[pc]
        nxt = []
        for other in work:
            if pc in other and other[pc]:
                f = other[pc] / pv
                other = dict(other)
                for c, v in row.items():
                    nv = other.get(c, op.field.zero) - f * v
                    if nv:
                        other[c] = nv
                    else:
                        other.pop(c, None)
            nxt.append(other)
        work = nxt
    return rank


# ---------------------------------------------------------------------------
# weighted traces
# ---------------------------------------------------------------------------


def trace_weights(R, n):
    """The pair of diagonal weight vectors (d, d_op) for the two weighted
    traces, derived from the skew inverse: d = Tr_2 Psi_12 and the same
    construction applied to P R P."""
    D1 = skew_inverse(R).partial_trace([1])
    Dop1 = skew_inverse(rop(R)).partial_trace([1])
    d = _diagonal_of(D1)
    dop = _diagonal_of(Dop1)
    return d, dop


def _diagonal_of(op):
    dim = op.n ** op.legs
    for (r, c) in op.data:
        if r != c:
            raise ValueError("operator is not diagonal")
    return [op.data.get((i, i), op.field.zero) for i in range(dim)]


def rtrace(X, legs, d):
    """The weighted trace over ``legs`` with diagonal weight vector d."""
    return X.partial_trace(legs, weights=d)


def full_trace_scalar(X):
    t = X.partial_trace(list(range(X.legs)))
    return t.data.get((0, 0), X.field.zero)


def full_rtrace_scalar(X, d):
    t = X.partial_trace(list(range(X.legs)), weights=d)
    return t.data.get((0, 0), X.field.zero)


def expected_weights(field, n):
    """The known diagonal forms of the two trace weights for the standard
    R-matrix: d_i = q^(1-2n+2i), dop_i = q^(-1-2i) (i = 0..n-1)."""
    d = [qpow(field, 1 - 2 * n + 2 * i, n) for i in range(n)]
    dop = [qpow(field, -1 - 2 * i, n) for i in range(n)]
    return d, dop


# ---------------------------------------------------------------------------
# structural checks
# ---------------------------------------------------------------------------


def jucys_murphy_product(R, n):
    """The product J_1 J_2 ... J_n of the braid Jucys-Murphy elements on
    n legs, with J_1 = 1 and J_{i+1} = R_i J_i R_i."""
    field = R.field
    J = TensorOp.identity(field, R.n, n)
    prod = J
    for i in range(1, n):
        Ri = braid_embed(R, n, i)
        J = Ri * J * Ri
        prod = prod * J
    return prod


def random_tensorop(field, n, legs, rng, density=0.35):
    """A reproducible random operator with small monomial entries."""
    dim = n ** legs
    op = TensorOp(field, n, legs)
    for r in range(dim):
        for c in range(dim):
            if rng.random() < density:
                coeff = rng.randint(-3, 3)
                if coeff == 0:
                    continue
                power = rng.randint(-2, 2)
                op.data[(r, c)] = field.monomial(0, power, coeff)
    return op


def sl_trace_condition(R, n):
    """Trace the cyclic product P_1 ... P_n A^(n) down to one leg and
    report (is_multiple_of_identity, constant).

    The antisymmetrizer sits on the last n legs of n+1 and the inner
    permutations connect leg 1 into that block.
    """
    field = R.field
    A = antisymmetrizers(R, n)[n]
    Aemb = A.embed(n + 1, tuple(range(1, n + 1)))
    P = permutation_op(field, R.n)
    prod = TensorOp.identity(field, R.n, n + 1)
    for i in range(1, n + 1):
        prod = prod * P.embed(n + 1, (i - 1, i))
    expr = (prod * Aemb).partial_trace(list(range(1, n + 1)))
    ident = TensorOp.identity(field, R.n, 1)
    c = expr.data.get((0, 0), field.zero)
    return (not c and expr.is_zero()) or (expr == c * ident), c


class CheckFailure(AssertionError):
    pass


def verify_rmatrix_class(R, n, rng_seed=7, n_random=10):
    """Run the full compatibility-class suite on a braid-form R-matrix.

    Returns a report dict with one entry per check; ``passed`` is the
    conjunction.  All checks are exact.
    """
    field = R.field
    q = qpow(field, 1, n)
    checks = []

    def add(name, ok, detail=""):
        checks.append({"name": name, "passed": bool(ok), "detail": detail})

    add("braid_relation", braid_residual(R).is_zero())
    add("hecke_condition", hecke_residual(R, n).is_zero())

    A = antisymmetrizers(R, n)
    for i in range(2, n + 1):
        add("antisymmetrizer_idempotent_%d" % i, (A[i] * A[i] - A[i]).is_zero())
    add("top_antisymmetrizer_rank_one", op_rank(A[n]) == 1,
        "rank=%d" % op_rank(A[n]))

    # height-n condition: A^(n) (q^n/n_q - R_n) A^(n) = 0 on n+1 legs
    An = A[n].embed(n + 1, tuple(range(n)))
    Rn = braid_embed(R, n + 1, n)
    nq = qint(field, n, n)
    gl_res = An * ((qpow(field, n, n) / nq) * TensorOp.identity(field, R.n, n + 1) - Rn) * An
    add("height_condition", gl_res.is_zero())

    ok, c = sl_trace_condition(R, n)
    add("cyclic_trace_scalar", ok and bool(c), "constant=%s" % c)

    # skew inverse and the weighted traces
    d, dop = trace_weights(R, n)
    ident1 = TensorOp.identity(field, R.n, 1)
    ident2 = TensorOp.identity(field, R.n, 2)

    add("rtrace_of_unit",
        full_rtrace_scalar(ident1, d) == qpow(field, -n, n) * nq,
        "got %s" % full_rtrace_scalar(ident1, d))
    add("rtrace2_r_is_unit", rtrace(R, [1], d) == ident1)
    add("optrace1_r_is_unit", rtrace(R, [0], dop) == ident1)

    Rinv = rmatrix_inverse(R, n)
    add("r_times_inverse", (R * Rinv - ident2).is_zero())

    d_inv_scaled = [qpow(field, -2 * n, n) * x.inv() for x in d]
    add("op_weights_from_weights", dop == d_inv_scaled,
        "dop=%s" % dop)
    d_rinv = skew_inverse(Rinv).partial_trace([1])
    add("inverse_weights_scaled",
        _diagonal_of(d_rinv) == [qpow(field, 2 * n, n) * x for x in d])

    # trace compatibilities on the full antisymmetrizer block
    rng = random.Random(rng_seed)
    qn2 = qpow(field, n * n, n)
    ok_all = True
    for t in range(n_random):
        X = random_tensorop(field, R.n, n, rng)
        AX = A[n] * X
        lhs = full_trace_scalar(AX)
        mid = qn2 * full_rtrace_scalar(AX, [d[i] for i in range(R.n)])
        rgt = qn2 * full_rtrace_scalar(AX, [dop[i] for i in range(R.n)])
        if lhs != mid or lhs != rgt:
            ok_all = False
            break
    add("antisymmetrized_trace_match", ok_all, "%d random operators" % n_random)

    # conjugation behaviour of the weights and the top projector
    q2n = qpow(field, 2 * n, n)
    add("bar_weights", [x.bar() for x in d] == [q2n * y for y in dop])
    Pn = TensorOp.from_permutation(field, R.n, tuple(reversed(range(n))))
    Abar = A[n].map_entries(lambda v: v.bar()).transpose()
    add("bar_antisymmetrizer", Abar == Pn * A[n] * Pn)

    # Jucys-Murphy eigenvalue on the top antisymmetrizer
    JM = jucys_murphy_product(R, n)
    add("jucys_murphy_eigenvalue",
        (A[n] * JM - qpow(field, -n * (n - 1), n) * A[n]).is_zero())

    return {
        "kind": "rmatrix_class",
        "n": n,
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
    }


def verify_rmatrix_numeric(R, n, tau=0.1, tol=1e-12):
    """Numeric certification at s = exp(2*pi*i*tau/n) (so |q| = 1)."""
    s_val = cmath.exp(2j * math.pi * tau / n)
    values = {"s": s_val}
    checks = []

    def residual(name, op):
        mat = op.numeric(values)
        resid = float(abs(mat).max()) if mat.size else 0.0
        checks.append({"name": name, "passed": resid < tol,
                       "residual": resid, "detail": "residual=%.3e" % resid})

    residual("braid_relation", braid_residual(R))
    residual("hecke_condition", hecke_residual(R, n))
    A = antisymmetrizers(R, n)
    residual("top_idempotent", A[n] * A[n] - A[n])
    d, dop = trace_weights(R, n)
    residual("rtrace2_r_is_unit",
             rtrace(R, [1], d) - TensorOp.identity(R.field, R.n, 1))
    JM = jucys_murphy_product(R, n)
    residual("jucys_murphy_eigenvalue",
             A[n] * JM - qpow(R.field, -n * (n - 1), n) * A[n])

    # unitarity identities: on the circle |q| = 1 the conjugate transpose
    # of the braid matrix is the flipped inverse, the top antisymmetrizer
    # is sent to its leg reversal, and conjugating the trace weights turns
    # the weighted trace into q^(2n) times the opposite weighted trace.
    def dagger_residual(name, op, expected_op):
        mat = op.numeric(values)
        exp = expected_op.numeric(values)
        resid = float(abs(mat.conj().T - exp).max()) if mat.size else 0.0
        checks.append({"name": name, "passed": resid < tol,
                       "residual": resid, "detail": "residual=%.3e" % resid})

    P = permutation_op(R.field, R.n)
    dagger_residual("dagger_braid", R, P * rmatrix_inverse(R, n) * P)
    Pn = TensorOp.from_permutation(R.field, R.n, tuple(reversed(range(n))))
    dagger_residual("dagger_antisymmetrizer", A[n], Pn * A[n] * Pn)
    q2n = complex(qpow(R.field, 2 * n, n).evaluate(values))
    wresid = max(abs(complex(di.evaluate(values)).conjugate()
                     - q2n * complex(ei.evaluate(values)))
                 for di, ei in zip(d, dop))
    checks.append({"name": "dagger_trace_weights", "passed": wresid < tol,
                   "residual": wresid, "detail": "residual=%.3e" % wresid})
    return {
        "kind": "rmatrix_numeric",
        "n": n,
        "tau": tau,
        "tolerance": tol,
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
    }


# ---------------------------------------------------------------------------
# file format
# ---------------------------------------------------------------------------


def rmatrix_to_json(R, n):
    entries = []
    for (r, c), v in sorted(R.data.items()):
        i, j = divmod(r, R.n)
        k, l = divmod(c, R.n)
        entries.append([i + 1, j + 1, k + 1, l + 1, str(v)])
    return {"n": n, "entries": entries}


def rmatrix_from_json(obj, field=SFIELD):
    if isinstance(obj, (str, bytes)):
        obj = json.loads(obj)
    n = int(obj["n"])
    if n < 2:
        raise ValueError("n must be at least 2")
    R = TensorOp(field, n, 2)
    for item in obj["entries"]:
        i, j, k, l, lit = item
        for idx in (i, j, k, l):
            if not 1 <= int(idx) <= n:
                raise ValueError("index %r out of range for n=%d" % (idx, n))
        value = field.parse(lit, n=n)
        if value:
            R.set((int(i) - 1, int(j) - 1), (int(k) - 1, int(l) - 1), value)
    return R, n
