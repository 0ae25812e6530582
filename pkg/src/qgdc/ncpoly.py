"""Noncommutative polynomials over an exact scalar field.

Words are tuples of generator indices; a polynomial maps words to scalar
coefficients.  Coefficients are written to the RIGHT of their word, so a
term is `w . c`.  For plain scalar fields this is cosmetic, but it is load
bearing once the scalars stop commuting with the generators: an algebra
can override `central` / `move_right` to say how a coefficient passes a
generator on its way right, and every product and rule application then
routes through that passage map.

Word order is deglex over the generator listing order: longer words are
larger, ties broken lexicographically by generator index.
"""

from __future__ import annotations


def deglex_key(word):
    return (len(word), word)


class Algebra:
    """A free associative algebra: named generators over a scalar field.

    Subclasses may override `central` and `move_right` when some scalars
    fail to commute with some generators.
    """

    def __init__(self, field, names):
        self.field = field
        self.names = tuple(names)
        self.index = {name: i for i, name in enumerate(self.names)}
        if len(self.index) != len(self.names):
            raise ValueError("duplicate generator names")

    def __repr__(self):
        return "Algebra(%d gens over %r)" % (len(self.names), self.field)

    # -- coefficient passage ------------------------------------------------

    def central(self, coeff):
        """True when `coeff` commutes with every generator."""
        return True

    def move_right(self, coeff, gen):
        """`coeff . x_gen` rewritten as a polynomial with coefficients on
        the right.  Only consulted when `central(coeff)` is False."""
        raise NotImplementedError(
            "noncentral coefficient %s cannot pass %s" % (coeff, self.names[gen]))

    def move_right_word(self, coeff, word):
        """`coeff . w` as an NCPoly, folding move_right over the letters."""
        acc = NCPoly(self, {(): coeff})
        for gen in word:
            nxt = {}
            for w, c in acc.terms.items():
                if self.central(c):
                    _accumulate(nxt, w + (gen,), c)
                else:
                    for w2, c2 in self.move_right(c, gen).terms.items():
                        _accumulate(nxt, w + w2, c2)
            acc = NCPoly(self, nxt)
        return acc

    # -- constructors --------------------------------------------------------

    def zero(self):
        return NCPoly(self, {})

    def one(self):
        return NCPoly(self, {(): self.field.one})

    def scalar(self, c):
        if isinstance(c, int):
            c = self.field.integer(c)
        return NCPoly(self, {(): c} if c else {})

    def gen(self, name):
        return NCPoly(self, {(self.index[name],): self.field.one})

    def word(self, *names):
        return NCPoly(self, {tuple(self.index[n] for n in names): self.field.one})

    def poly(self, terms):
        """terms: iterable of (word-as-name-tuple-or-index-tuple, coeff)."""
        data = {}
        for w, c in terms:
            w = tuple(self.index[x] if isinstance(x, str) else x for x in w)
            if isinstance(c, int):
                c = self.field.integer(c)
            _accumulate(data, w, c)
        return NCPoly(self, data)

    def word_str(self, word):
        return "*".join(self.names[g] for g in word) if word else "1"


def _accumulate(data, word, coeff):
    cur = data.get(word)
    if cur is None:
        if coeff:
            data[word] = coeff
    else:
        cur = cur + coeff
        if cur:
            data[word] = cur
        else:
            del data[word]


class NCPoly:
    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms):
        self.alg = alg
        self.terms = terms  # word tuple -> nonzero coeff

    # -- ring structure -------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, NCPoly):
            return self.alg is other.alg and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        data = dict(self.terms)
        for w, c in other.terms.items():
            _accumulate(data, w, c)
        return NCPoly(self.alg, data)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.alg, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        alg = self.alg
        data = {}
        for w1, c1 in self.terms.items():
            if alg.central(c1):
                for w2, c2 in other.terms.items():
                    _accumulate(data, w1 + w2, c1 * c2)
            else:
                for w2, c2 in other.terms.items():
                    moved = alg.move_right_word(c1, w2)
                    for v, d in moved.terms.items():
                        _accumulate(data, w1 + v, d * c2)
        return NCPoly(alg, data)

    def __rmul__(self, other):
        # scalar . poly from the left
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self

    def _lift(self, other):
        if isinstance(other, NCPoly):
            if other.alg is not self.alg:
                raise TypeError("mixing polynomials from different algebras")
            return other
        if isinstance(other, int):
            return self.alg.scalar(other)
        if other.__class__.__name__ == "Frac":
            if other.field is not self.alg.field:
                raise TypeError("scalar from the wrong field")
            return self.alg.scalar(other)
        return NotImplemented

    def scale(self, c):
        """Right-multiply every coefficient by the scalar c."""
        if isinstance(c, int):
            c = self.alg.field.integer(c)
        if not c:
            return self.alg.zero()
        return NCPoly(self.alg, {w: cf * c for w, cf in self.terms.items()})

    # -- inspection -----------------------------------------------------------

    def degree(self):
        return max((len(w) for w in self.terms), default=-1)

    def lead(self):
        """(word, coeff) of the deglex-largest term; raises on zero."""
        w = max(self.terms, key=deglex_key)
        return w, self.terms[w]

    def constant(self):
        return self.terms.get((), self.alg.field.zero)

    def coefficient(self, word):
        if isinstance(word, tuple) and word and isinstance(word[0], str):
            word = tuple(self.alg.index[x] for x in word)
        return self.terms.get(word, self.alg.field.zero)

    def words(self):
        return sorted(self.terms, key=deglex_key, reverse=True)

    def map_coeffs(self, fn):
        data = {}
        for w, c in self.terms.items():
            v = fn(c)
            if v:
                data[w] = v
        return NCPoly(self.alg, data)

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for w in self.words():
            c = self.terms[w]
            cs = str(c)
            ws = self.alg.word_str(w)
            if ws == "1":
                bits.append("(%s)" % cs if ("+" in cs or " " in cs) else cs)
            elif cs == "1":
                bits.append(ws)
            else:
                bits.append("%s*(%s)" % (ws, cs))
        return " + ".join(bits)

    __repr__ = __str__
