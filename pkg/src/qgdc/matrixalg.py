"""Matrices with noncommutative-polynomial entries, and the expansion of
operator identities on tensor legs into scalar relations.

Two layers:

* `Mat` — a plain n x n matrix over an algebra, for quantum matrices and
  their polynomials (powers, products, traces against a weight vector).

* `LegOp` — an operator on `legs` copies of an n-dimensional space with
  polynomial entries, mirroring `tensor.TensorOp`.  Numeric R-matrices
  lift into it, quantum matrices embed at a chosen leg, and componentwise
  differences of composed products turn matrix identities like
  `R T1 T2 = T2 T1 R` into lists of scalar relations.
"""

from __future__ import annotations

import itertools

from .tensor import enc, dec


class Mat:
    __slots__ = ("alg", "n", "rows")

    def __init__(self, alg, n, rows=None):
        self.alg = alg
        self.n = n
        if rows is None:
            rows = [[alg.zero() for _ in range(n)] for _ in range(n)]
        self.rows = rows

    @classmethod
    def generators(cls, alg, n, prefix):
        rows = [[alg.gen("%s%d%d" % (prefix, i + 1, j + 1)) for j in range(n)]
                for i in range(n)]
        return cls(alg, n, rows)

    @classmethod
    def identity(cls, alg, n):
        m = cls(alg, n)
        for i in range(n):
            m.rows[i][i] = alg.one()
        return m

    @classmethod
    def scalar_matrix(cls, alg, n, c):
        m = cls(alg, n)
        for i in range(n):
            m.rows[i][i] = alg.scalar(c)
        return m

    def __getitem__(self, ij):
        return self.rows[ij[0]][ij[1]]

    def __setitem__(self, ij, val):
        self.rows[ij[0]][ij[1]] = val

    def __add__(self, other):
        return Mat(self.alg, self.n,
                   [[a + b for a, b in zip(ra, rb)]
                    for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return Mat(self.alg, self.n,
                   [[a - b for a, b in zip(ra, rb)]
                    for ra, rb in zip(self.rows, other.rows)])

    def __neg__(self):
        return Mat(self.alg, self.n, [[-a for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, Mat):
            n = self.n
            rows = []
            for i in range(n):
                row = []
                for k in range(n):
                    acc = self.alg.zero()
                    for a in range(n):
                        acc = acc + self.rows[i][a] * other.rows[a][k]
                    row.append(acc)
                rows.append(row)
            return Mat(self.alg, n, rows)
        # scalar / polynomial from the right
        return self.map(lambda p: p * other)

    def __rmul__(self, other):
        return self.map(lambda p: other * p)

    def map(self, fn):
        return Mat(self.alg, self.n, [[fn(a) for a in r] for r in self.rows])

    def scale(self, c):
        """Right-multiply every coefficient by the scalar c."""
        return self.map(lambda p: p.scale(c))

    def nf(self, system):
        return self.map(system.normal_form)

    def power(self, k):
        acc = Mat.identity(self.alg, self.n)
        for _ in range(k):
            acc = acc * self
        return acc

    def trace(self):
        acc = self.alg.zero()
        for i in range(self.n):
            acc = acc + self.rows[i][i]
        return acc

    def wtrace(self, weights):
        """Trace against a diagonal weight vector: sum_i w_i . X_ii."""
        acc = self.alg.zero()
        for i in range(self.n):
            acc = acc + self.alg.scalar(weights[i]) * self.rows[i][i]
        return acc

    def is_zero_mod(self, system):
        return all(system.reduces_to_zero(a) for r in self.rows for a in r)

    def __eq__(self, other):
        return (isinstance(other, Mat) and self.n == other.n
                and self.rows == other.rows)

    def __str__(self):
        return "\n".join("[ " + " | ".join(str(a) for a in r) + " ]"
                         for r in self.rows)


class LegOp:
    __slots__ = ("alg", "n", "legs", "data")

    def __init__(self, alg, n, legs, data=None):
        self.alg = alg
        self.n = n
        self.legs = legs
        self.data = data if data is not None else {}

    @classmethod
    def identity(cls, alg, n, legs):
        one = alg.one()
        return cls(alg, n, legs,
                   {(r, r): one for r in range(n ** legs)})

    @classmethod
    def from_tensorop(cls, alg, top):
        """Lift a scalar-entried tensor operator."""
        if top.field is not alg.field:
            raise TypeError("operator scalars live in the wrong field")
        data = {}
        for (r, c), v in top.data.items():
            data[(r, c)] = alg.scalar(v)
        return cls(alg, top.n, top.legs, data)

    @classmethod
    def from_mat(cls, mat, total_legs, pos):
        """Embed an n x n polynomial matrix at leg `pos`, identity elsewhere."""
        n = mat.n
        data = {}
        passive = [p for p in range(total_legs) if p != pos]
        for i, j in itertools.product(range(n), repeat=2):
            entry = mat.rows[i][j]
            if entry.is_zero():
                continue
            for rest in itertools.product(range(n), repeat=len(passive)):
                row = [0] * total_legs
                col = [0] * total_legs
                row[pos], col[pos] = i, j
                for p, v in zip(passive, rest):
                    row[p] = col[p] = v
                key = (enc(tuple(row), n), enc(tuple(col), n))
                data[key] = data.get(key, mat.alg.zero()) + entry
        return cls(mat.alg, n, total_legs, data)

    def __mul__(self, other):
        if self.legs != other.legs or self.n != other.n:
            raise ValueError("leg mismatch")
        by_row = {}
        for (r, c), v in other.data.items():
            by_row.setdefault(r, []).append((c, v))
        data = {}
        for (r, mid), v in self.data.items():
            for c, w in by_row.get(mid, ()):
                prod = v * w
                if prod.is_zero():
                    continue
                key = (r, c)
                cur = data.get(key)
                acc = prod if cur is None else cur + prod
                if acc.is_zero():
                    data.pop(key, None)
                else:
                    data[key] = acc
        return LegOp(self.alg, self.n, self.legs, data)

    def __add__(self, other):
        data = dict(self.data)
        for k, v in other.data.items():
            acc = data.get(k)
            acc = v if acc is None else acc + v
            if acc.is_zero():
                data.pop(k, None)
            else:
                data[k] = acc
        return LegOp(self.alg, self.n, self.legs, data)

    def __sub__(self, other):
        return self + other.map(lambda p: -p)

    def map(self, fn):
        data = {}
        for k, v in self.data.items():
            w = fn(v)
            if not w.is_zero():
                data[k] = w
        return LegOp(self.alg, self.n, self.legs, data)

    def scale(self, c):
        return self.map(lambda p: p.scale(c))

    def nf(self, system):
        return self.map(system.normal_form)

    def entries(self):
        return list(self.data.values())

    def is_zero(self):
        return not self.data

    def is_zero_mod(self, system):
        return all(system.reduces_to_zero(v) for v in self.data.values())

    def partial_trace(self, legs_to_trace, weights=None):
        """Contract the listed legs; `weights` (if given) maps a traced
        diagonal index to a scalar factor, the same vector for every leg."""
        keep = [p for p in range(self.legs) if p not in legs_to_trace]
        out = LegOp(self.alg, self.n, len(keep))
        field = self.alg.field
        for (r, c), v in self.data.items():
            ri = dec(r, self.n, self.legs)
            ci = dec(c, self.n, self.legs)
            if any(ri[p] != ci[p] for p in legs_to_trace):
                continue
            w = v
            if weights is not None:
                f = field.one
                for p in legs_to_trace:
                    f = f * weights[ri[p]]
                w = f * v if f != field.one else v
            key = (enc(tuple(ri[p] for p in keep), self.n),
                   enc(tuple(ci[p] for p in keep), self.n))
            cur = out.data.get(key)
            acc = w if cur is None else cur + w
            if acc.is_zero():
                out.data.pop(key, None)
            else:
                out.data[key] = acc
        return out

    def as_scalar_times_identity(self, system=None):
        """If the operator is c . Id (optionally modulo rules), return the
        polynomial c; otherwise None."""
        dim = self.n ** self.legs
        norm = self.nf(system) if system is not None else self
        c = norm.data.get((0, 0))
        if c is None:
            c = self.alg.zero()
        for r in range(dim):
            if not (norm.data.get((r, r), self.alg.zero()) - c).is_zero():
                return None
        for (r, cc), v in norm.data.items():
            if r != cc and not v.is_zero():
                return None
        return c


def compose(*ops):
    acc = ops[0]
    for op in ops[1:]:
        acc = acc * op
    return acc


def relation_entries(lhs, rhs):
    """Scalar relations asserting lhs == rhs, componentwise."""
    return [v for v in (lhs - rhs).data.values() if not v.is_zero()]
