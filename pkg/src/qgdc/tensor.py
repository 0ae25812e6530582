"""Sparse exact linear operators on tensor powers of C^n.

A ``TensorOp`` acts on (C^n)^(x k); rows and columns are encoded as
row-major integers, entries are field elements.  The layer provides the
operations the verification suites are built from: composition, leg
embedding, (weighted) partial traces, and an exact skew-inverse solve.
"""

from __future__ import annotations

import itertools

from .linalg import solve_unique
from .scalars import Frac


def enc(index, n):
    """Row-major encoding of a multi-index tuple."""
    out = 0
    for i in index:
        out = out * n + i
    return out


def dec(code, n, legs):
    out = []
    for _ in range(legs):
        out.append(code % n)
        code //= n
    return tuple(reversed(out))


class TensorOp:
    """A sparse matrix on (C^n)^(x legs) with exact field entries."""

    __slots__ = ("field", "n", "legs", "data")

    def __init__(self, field, n, legs, data=None):
        self.field = field
        self.n = n
        self.legs = legs
        self.data = data if data is not None else {}

    # -- constructors --------------------------------------------------

    @classmethod
    def identity(cls, field, n, legs):
        dim = n ** legs
        one = field.one
        return cls(field, n, legs, {(i, i): one for i in range(dim)})

    @classmethod
    def from_permutation(cls, field, n, perm):
        """The operator permuting tensor legs: e_{i_1..i_k} ->
        e_{i_{perm(1)}..}; ``perm[j]`` says which input leg lands in
        output slot j."""
        legs = len(perm)
        one = field.one
        data = {}
        for idx in itertools.product(range(n), repeat=legs):
            src = enc(idx, n)
            dst = enc(tuple(idx[perm[j]] for j in range(legs)), n)
            data[(dst, src)] = one
        return cls(field, n, legs, data)

    def set(self, row_idx, col_idx, value):
        key = (enc(row_idx, self.n), enc(col_idx, self.n))
        if value:
            self.data[key] = value
        else:
            self.data.pop(key, None)

    def get(self, row_idx, col_idx):
        key = (enc(row_idx, self.n), enc(col_idx, self.n))
        return self.data.get(key, self.field.zero)

    def copy(self):
        return TensorOp(self.field, self.n, self.legs, dict(self.data))

    # -- ring structure --------------------------------------------------

    def _check(self, other):
        assert isinstance(other, TensorOp)
        assert (self.field, self.n, self.legs) == (other.field, other.n, other.legs)

    def __add__(self, other):
        self._check(other)
        data = dict(self.data)
        for k, v in other.data.items():
            w = data.get(k)
            nv = v if w is None else w + v
            if nv:
                data[k] = nv
            else:
                data.pop(k, None)
        return TensorOp(self.field, self.n, self.legs, data)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return TensorOp(self.field, self.n, self.legs,
                        {k: -v for k, v in self.data.items()})

    def scale(self, c):
        if isinstance(c, int):
            c = self.field.integer(c)
        if not c:
            return TensorOp(self.field, self.n, self.legs, {})
        return TensorOp(self.field, self.n, self.legs,
                        {k: c * v for k, v in self.data.items()})

    def __rmul__(self, c):
        if isinstance(c, (int, Frac)):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, other):
        """Operator composition (matrix product)."""
        if isinstance(other, (int, Frac)):
            return self.scale(other)
        self._check(other)
        by_row = {}
        for (r, c), v in other.data.items():
            by_row.setdefault(r, []).append((c, v))
        data = {}
        for (r, c), v in self.data.items():
            for c2, v2 in by_row.get(c, ()):
                key = (r, c2)
                w = data.get(key)
                nv = v * v2 if w is None else w + v * v2
                if nv:
                    data[key] = nv
                else:
                    data.pop(key, None)
        return TensorOp(self.field, self.n, self.legs, data)

    def __eq__(self, other):
        if not isinstance(other, TensorOp):
            return NotImplemented
        return (self.n, self.legs) == (other.n, other.legs) and self.data == other.data

    def is_zero(self):
        return not self.data

    def __repr__(self):
        return "TensorOp(n=%d, legs=%d, nnz=%d)" % (self.n, self.legs, len(self.data))

    # -- leg operations ----------------------------------------------------

    def embed(self, total_legs, positions):
        """Embed into a larger tensor product, acting on the listed legs
        (0-based, in this operator's leg order) and as identity elsewhere."""
        assert len(positions) == self.legs
        assert len(set(positions)) == self.legs
        assert all(0 <= p < total_legs for p in positions)
        n = self.n
        passive = [p for p in range(total_legs) if p not in positions]
        data = {}
        weights = [n ** (total_legs - 1 - p) for p in range(total_legs)]
        for (r, c), v in self.data.items():
            ri = dec(r, n, self.legs)
            ci = dec(c, n, self.legs)
            base_r = sum(weights[p] * ri[j] for j, p in enumerate(positions))
            base_c = sum(weights[p] * ci[j] for j, p in enumerate(positions))
            for rest in itertools.product(range(n), repeat=len(passive)):
                extra = sum(weights[p] * x for p, x in zip(passive, rest))
                data[(base_r + extra, base_c + extra)] = v
        return TensorOp(self.field, n, total_legs, data)

    def partial_trace(self, legs, weights=None):
        """Trace out the listed legs (0-based).  ``weights`` may give a
        diagonal weight vector (field elements, length n) inserted on
        every traced leg: X -> Tr_legs(D x ... x D x X)."""
        legs = sorted(set(legs))
        assert all(0 <= p < self.legs for p in legs)
        n = self.n
        keep = [p for p in range(self.legs) if p not in legs]
        data = {}
        for (r, c), v in self.data.items():
            ri = dec(r, n, self.legs)
            ci = dec(c, n, self.legs)
            if any(ri[p] != ci[p] for p in legs):
                continue
            w = v
            if weights is not None:
                for p in legs:
                    w = w * weights[ri[p]]
            key = (enc(tuple(ri[p] for p in keep), n),
                   enc(tuple(ci[p] for p in keep), n))
            old = data.get(key)
            nv = w if old is None else old + w
            if nv:
                data[key] = nv
            else:
                data.pop(key, None)
        return TensorOp(self.field, n, len(keep), data)

    def transpose(self):
        return TensorOp(self.field, self.n, self.legs,
                        {(c, r): v for (r, c), v in self.data.items()})

    def map_entries(self, fn):
        data = {}
        for k, v in self.data.items():
            w = fn(v)
            if w:
                data[k] = w
        return TensorOp(self.field, self.n, self.legs, data)

    # -- numerics ----------------------------------------------------------

    def numeric(self, values):
        """Dense complex numpy matrix at the given variable values."""
        import numpy

        dim = self.n ** self.legs
        out = numpy.zeros((dim, dim), dtype=complex)
        for (r, c), v in self.data.items():
            out[r, c] = v.evaluate(values)
        return out


def skew_inverse(R):
    """The operator Psi with Tr_2 R_12 Psi_23 = P_13, solved exactly.

    R acts on two legs; the solve runs over the defining equation as a
    sparse linear system in the n^4 unknown entries of Psi.
    """
    field, n = R.field, R.n
    P = TensorOp.from_permutation(field, n, (1, 0))
    P13 = P.embed(3, (0, 2))
    # unknown column keys: ((a,b),(c,d)) entry of Psi
    rows = []
    rhs = []
    for i, j, k, l in itertools.product(range(n), repeat=4):
        # Tr_2(R_12 Psi_23)[(i,k),(j,l)]
        #   = sum_{x,b} R[(i,x),(j,b)] Psi[(b,k),(x,l)] = P_13[(i,k),(j,l)]
        row = {}
        for x in range(n):
            for b in range(n):
                rc = R.get((i, x), (j, b))
                if not rc:
                    continue
                key = ((b, k), (x, l))
                row[key] = row.get(key, field.zero) + rc
        row = {kk: v for kk, v in row.items() if v}
        rows.append(row)
        # P_13 traced over the middle leg is x-independent; read it at x=0
        rhs.append(P13.get((i, 0, k), (j, 0, l)))
    values = solve_unique(rows, rhs, field)
    out = TensorOp(field, n, 2)
    for ((a, k), (b, l)), v in values.items():
        if v:
            out.set((a, k), (b, l), v)
    return out
