"""Exact rational-function coefficient fields.

Everything symbolic in this package is computed over a fraction field
Q(x_1, ..., x_k) with arbitrary-precision integer coefficients.  The two
fields actually used are Q(s) (deformation parameter; q enters as the
power s^n) and Q(s, m, u, r) (s plus three eigenvalue parameters).
Elements are kept as reduced fractions of integer polynomials, so
equality -- in particular equality to zero -- is decidable, and every
identity the verifier certifies is exact rather than numerical.

Laurent behaviour (negative powers of the variables) is obtained through
the denominator: s**-3 is stored as 1/s^3.
"""

from __future__ import annotations

import math

# ---------------------------------------------------------------------------
# integer polynomial arithmetic on {exponent-tuple: coefficient} dicts
# ---------------------------------------------------------------------------
# A polynomial in k variables is a dict mapping length-k tuples of
# non-negative ints to non-zero ints.  The zero polynomial is {}.


def _padd(a, b):
    out = dict(a)
    for e, c in b.items():
        c2 = out.get(e, 0) + c
        if c2:
            out[e] = c2
        else:
            out.pop(e, None)
    return out


def _pneg(a):
    return {e: -c for e, c in a.items()}


def _pscale(a, k):
    if k == 0:
        return {}
    return {e: c * k for e, c in a.items()}


def _pmul(a, b):
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            c2 = out.get(e, 0) + ca * cb
            if c2:
                out[e] = c2
            else:
                del out[e]
    return out


def _pshift(a, shift):
    """Multiply by the monomial with exponent vector ``shift`` (ints, may
    be negative; the caller is responsible for keeping results valid)."""
    return {tuple(x + y for x, y in zip(e, shift)): c for e, c in a.items()}


def _int_content(a):
    g = 0
    for c in a.values():
        g = math.gcd(g, c)
        if g == 1:
            return 1
    return g


def _pdiv_int(a, k):
    return {e: c // k for e, c in a.items()}


def _lex_lead(a):
    e = max(a)
    return e, a[e]


def _pdiv_exact(a, b):
    """Exact division a / b; raises if the division leaves a remainder."""
    if not a:
        return {}
    eb, cb = _lex_lead(b)
    quot = {}
    rem = a
    while rem:
        er, cr = _lex_lead(rem)
        e = tuple(x - y for x, y in zip(er, eb))
        if any(x < 0 for x in e) or cr % cb:
            raise ArithmeticError("inexact polynomial division")
        c = cr // cb
        quot[e] = c
        rem = _padd(rem, _pneg(_pmul({e: c}, b)))
    return quot


def _deg_in(a, v):
    return max(e[v] for e in a)


def _vars_present(a, b):
    used = set()
    for poly in (a, b):
        for e in poly:
            for i, x in enumerate(e):
                if x:
                    used.add(i)
    return used


def _split_univar(a, v):
    """View ``a`` as a univariate polynomial in variable v: a dict
    power -> coefficient-polynomial (with the v slot zeroed)."""
    out = {}
    for e, c in a.items():
        p = e[v]
        e0 = e[:v] + (0,) + e[v + 1:]
        sub = out.setdefault(p, {})
        sub[e0] = c
    return out


def _join_univar(parts, v):
    out = {}
    for p, sub in parts.items():
        for e, c in sub.items():
            out[e[:v] + (p,) + e[v + 1:]] = c
    return out


def _content_in(a, v):
    parts = _split_univar(a, v)
    g = {}
    for sub in parts.values():
        g = _pgcd(g, sub)
    return g


def _prem(a, b, v):
    """Pseudo-remainder of a by b with respect to variable v."""
    db = _deg_in(b, v)
    lb = {e: c for e, c in b.items() if e[v] == db}
    lb0 = _pshift(lb, tuple(-db if i == v else 0 for i in range(len(next(iter(lb))))))
    r = a
    while r and _deg_in(r, v) >= db:
        dr = _deg_in(r, v)
        lr = {e: c for e, c in r.items() if e[v] == dr}
        # r <- lb0 * r - x_v^(dr-db) * (lr / x_v^dr) * b
        shift = tuple(dr - db if i == v else 0 for i in range(len(next(iter(lr)))))
        lr0 = _pshift(lr, tuple(-dr if i == v else 0 for i in range(len(next(iter(lr))))))
        r = _padd(_pmul(r, lb0), _pneg(_pmul(_pshift(lr0, shift), b)))
    return r


def _primitive_in(a, v):
    if not a:
        return a
    cont = _content_in(a, v)
    if len(cont) == 1 and not any(next(iter(cont))):
        c = cont[next(iter(cont))]
        if c == 1:
            return a
        return _pdiv_int(a, c) if c != 0 else a
    return _pdiv_exact(a, cont)


def _sign_normalized(a):
    if not a:
        return a
    _, c = _lex_lead(a)
    return _pneg(a) if c < 0 else a


def _pgcd(a, b):
    """GCD of two integer polynomials (primitive PRS, recursive in the
    number of variables).  Result is sign-normalized."""
    if not a:
        return _sign_normalized(b)
    if not b:
        return _sign_normalized(a)
    # monomial fast path
    if len(a) == 1 and len(b) == 1:
        (ea, ca), = a.items()
        (eb, cb), = b.items()
        e = tuple(min(x, y) for x, y in zip(ea, eb))
        return {e: math.gcd(ca, cb)}
    used = _vars_present(a, b)
    if not used:
        (ea, ca), = a.items()
        (eb, cb), = b.items()
        return {ea: math.gcd(ca, cb)}
    v = min(used)
    ca, cb = _content_in(a, v), _content_in(b, v)
    gc = _pgcd(ca, cb)
    pa = _pdiv_exact(a, ca) if ca != {tuple(0 for _ in next(iter(a))): 1} else a
    pb = _pdiv_exact(b, cb) if cb != {tuple(0 for _ in next(iter(b))): 1} else b
    if _deg_in(pa, v) < _deg_in(pb, v):
        pa, pb = pb, pa
    while pb:
        r = _prem(pa, pb, v)
        pa, pb = pb, _primitive_in(r, v)
    pa = _primitive_in(pa, v)
    g = _pmul(gc, pa)
    ic = _int_content(g)
    if ic > 1:
        g = _pdiv_int(g, ic)
    return _sign_normalized(g)


# ---------------------------------------------------------------------------
# fraction fields
# ---------------------------------------------------------------------------


class Field:
    """A fraction field Q(x_1, ..., x_k) over the integers.

    Instances are lightweight descriptors; the elements are ``Frac``
    objects.  Variable 0 is always the deformation variable s.
    """

    def __init__(self, names):
        self.names = tuple(names)
        self.arity = len(self.names)
        zt = tuple(0 for _ in self.names)
        self.zero = Frac(self, {}, {zt: 1}, _normal=True)
        self.one = Frac(self, {zt: 1}, {zt: 1}, _normal=True)

    def __repr__(self):
        return "Field(%s)" % ",".join(self.names)

    def __eq__(self, other):
        return isinstance(other, Field) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def integer(self, k):
        zt = tuple(0 for _ in self.names)
        if k == 0:
            return self.zero
        return Frac(self, {zt: k}, {zt: 1}, _normal=True)

    def monomial(self, var, power=1, coeff=1):
        """coeff * x_var**power (power may be negative)."""
        if coeff == 0:
            return self.zero
        zt = tuple(0 for _ in self.names)
        e = tuple(power if i == var else 0 for i in range(self.arity))
        if power >= 0:
            return Frac(self, {e: coeff}, {zt: 1})
        ne = tuple(-x for x in e)
        return Frac(self, {zt: coeff}, {ne: 1})

    def var(self, name):
        return self.monomial(self.names.index(name))

    def lift(self, elem, positions=None):
        """Embed an element of a smaller field into this one.

        ``positions[i]`` is the index that variable i of the source field
        takes here; by default the source variables map to the first
        slots (so Q(s) -> Q(s, m, u, r) is the identity on s).
        """
        if elem.field == self:
            return elem
        src = elem.field
        if positions is None:
            positions = tuple(range(src.arity))

        def conv(poly):
            out = {}
            for e, c in poly.items():
                e2 = [0] * self.arity
                for i, x in enumerate(e):
                    e2[positions[i]] = x
                out[tuple(e2)] = c
            return out

        return Frac(self, conv(elem.num), conv(elem.den), _normal=True)

    # -- parsing ------------------------------------------------------

    def parse(self, text, n=None):
        """Parse a scalar literal.

        Grammar: integers, the variable names of the field, ``q`` (only
        when ``n`` is given; it abbreviates s^n), ``^`` powers with
        integer exponents, ``*``, ``/``, ``+``, ``-`` and parentheses.
        """
        tokens = _tokenize(text)
        pos = [0]

        def peek():
            return tokens[pos[0]] if pos[0] < len(tokens) else None

        def take(expected=None):
            tok = peek()
            if tok is None or (expected is not None and tok != expected):
                raise ValueError("bad scalar literal %r (at token %r)" % (text, tok))
            pos[0] += 1
            return tok

        def parse_atom():
            tok = peek()
            if tok == "(":
                take()
                e = parse_expr()
                take(")")
                return e
            if tok == "-":
                take()
                return -parse_atom()
            if isinstance(tok, int):
                take()
                return self.integer(tok)
            if tok == "q":
                if n is None:
                    raise ValueError("'q' not allowed here (no n in scope)")
                take()
                return self.monomial(0, n)
            if isinstance(tok, str) and tok in self.names:
                take()
                return self.var(tok)
            raise ValueError("bad scalar literal %r (at token %r)" % (text, tok))

        def parse_power():
            base = parse_atom()
            if peek() == "^":
                take()
                neg = False
                if peek() == "-":
                    take()
                    neg = True
                exp = take()
                if not isinstance(exp, int):
                    raise ValueError("bad exponent in %r" % text)
                return base ** (-exp if neg else exp)
            return base

        def parse_term():
            value = parse_power()
            while peek() in ("*", "/"):
                op = take()
                rhs = parse_power()
                value = value * rhs if op == "*" else value / rhs
            return value

        def parse_expr():
            tok = peek()
            if tok == "-":
                take()
                value = -parse_term()
            else:
                value = parse_term()
            while peek() in ("+", "-"):
                op = take()
                rhs = parse_term()
                value = value + rhs if op == "+" else value - rhs
            return value

        result = parse_expr()
        if pos[0] != len(tokens):
            raise ValueError("trailing junk in scalar literal %r" % text)
        return result


def _tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(int(text[i:j]))
            i = j
        elif ch.isalpha():
            j = i
            while j < len(text) and text[j].isalnum():
                j += 1
            tokens.append(text[i:j])
            i = j
        elif ch in "+-*/^()":
            tokens.append(ch)
            i += 1
        else:
            raise ValueError("bad character %r in scalar literal" % ch)
    return tokens


class Frac:
    """A reduced fraction of integer polynomials over a ``Field``."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field, num, den, _normal=False):
        self.field = field
        self._hash = None
        if _normal:
            self.num = num
            self.den = den
            return
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num = {}
            self.den = {tuple(0 for _ in field.names): 1}
            return
        # strip the common monomial factor (also absorbs negative exps)
        mins = [min(x, y) for x, y in zip(
            (min(e[i] for e in num) for i in range(field.arity)),
            (min(e[i] for e in den) for i in range(field.arity)))]
        if any(mins):
            shift = tuple(-x for x in mins)
            num = _pshift(num, shift)
            den = _pshift(den, shift)
        # integer content
        g = math.gcd(_int_content(num), _int_content(den))
        if g > 1:
            num = _pdiv_int(num, g)
            den = _pdiv_int(den, g)
        # polynomial gcd (cheap fast paths for monomials)
        if len(num) > 1 and len(den) > 1:
            g = _pgcd(num, den)
            if len(g) > 1 or any(next(iter(g))) or g[next(iter(g))] != 1:
                num = _pdiv_exact(num, g)
                den = _pdiv_exact(den, g)
        # fix sign on the denominator
        if _lex_lead(den)[1] < 0:
            num = _pneg(num)
            den = _pneg(den)
        self.num = num
        self.den = den

    # -- basic protocol -------------------------------------------------

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.integer(other)
        if not isinstance(other, Frac) or other.field != self.field:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self.num.items()),
                               frozenset(self.den.items())))
        return self._hash

    def _coerce(self, other):
        if isinstance(other, int):
            return self.field.integer(other)
        if isinstance(other, Frac) and other.field == self.field:
            return other
        return None

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return Frac(self.field, _padd(self.num, other.num), self.den)
        num = _padd(_pmul(self.num, other.den), _pmul(other.num, self.den))
        return Frac(self.field, num, _pmul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return Frac(self.field, _pneg(self.num), self.den, _normal=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self.num or not other.num:
            return self.field.zero
        return Frac(self.field, _pmul(self.num, other.num),
                    _pmul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("division by zero scalar")
        return Frac(self.field, _pmul(self.num, other.den),
                    _pmul(self.den, other.num))

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def inv(self):
        if not self.num:
            raise ZeroDivisionError("inverting zero scalar")
        return Frac(self.field, self.den, self.num)

    def __pow__(self, k):
        if k == 0:
            return self.field.one
        base = self if k > 0 else self.inv()
        out = base
        for _ in range(abs(k) - 1):
            out = out * base
        return out

    # -- structure -------------------------------------------------------

    def bar(self):
        """The involution inverting every variable (s -> 1/s, ...)."""
        num = {tuple(-x for x in e): c for e, c in self.num.items()}
        den = {tuple(-x for x in e): c for e, c in self.den.items()}
        return Frac(self.field, num, den)

    def twist(self, shears):
        """Apply the substitution x_v -> s^(a_v) * x_v for each entry
        ``v: a_v`` of ``shears`` (a field automorphism)."""

        def shear(poly):
            out = {}
            for e, c in poly.items():
                e0 = e[0] + sum(a * e[v] for v, a in shears.items())
                e2 = (e0,) + e[1:]
                out[e2] = out.get(e2, 0) + c
            return {e: c for e, c in out.items() if c}

        return Frac(self.field, shear(self.num), shear(self.den))

    def depends_on(self, var):
        return any(e[var] for e in self.num) or any(e[var] for e in self.den)

    def active_vars(self):
        return {v for v in range(self.field.arity) if self.depends_on(v)}

    def as_int(self):
        """The integer value, if the element is a constant; else None."""
        zt = tuple(0 for _ in self.field.names)
        if self.den != {zt: 1}:
            return None
        if not self.num:
            return 0
        if set(self.num) == {zt}:
            return self.num[zt]
        return None

    def evaluate(self, values):
        """Numeric (complex) evaluation; ``values`` maps variable names
        to complex numbers (only names that actually occur are needed)."""
        vals = [complex(values[name]) if self.depends_on(i) else 1.0
                for i, name in enumerate(self.field.names)]

        def ev(poly):
            total = 0j
            for e, c in poly.items():
                term = complex(c)
                for x, v in zip(e, vals):
                    if x:
                        term *= v ** x
                total += term
            return total

        return ev(self.num) / ev(self.den)

    # -- printing ----------------------------------------------------------

    def _poly_str(self, poly):
        if not poly:
            return "0"
        parts = []
        for e in sorted(poly, reverse=True):
            c = poly[e]
            factors = []
            for name, x in zip(self.field.names, e):
                if x == 1:
                    factors.append(name)
                elif x:
                    factors.append("%s^%d" % (name, x))
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append("%d*%s" % (c, "*".join(factors)))
        out = parts[0]
        for p in parts[1:]:
            out += "+" + p if not p.startswith("-") else p
        return out

    def __str__(self):
        zt = tuple(0 for _ in self.field.names)
        ns = self._poly_str(self.num)
        if self.den == {zt: 1}:
            return ns
        ds = self._poly_str(self.den)
        if len(self.num) > 1:
            ns = "(" + ns + ")"
        if len(self.den) > 1:
            ds = "(" + ds + ")"
        return "%s/%s" % (ns, ds)

    __repr__ = __str__


# The two fields used throughout the package.
SFIELD = Field(("s",))
SPECTRAL_FIELD = Field(("s", "m", "u", "r"))


def qpow(field, k, n):
    """q**k as an element of ``field``, where q = s**n."""
    return field.monomial(0, k * n)


def spow(field, k):
    """s**k as an element of ``field``."""
    return field.monomial(0, k)


def qint(field, i, n):
    """The symmetric q-number (q^i - q^-i)/(q - q^-1)."""
    num = qpow(field, i, n) - qpow(field, -i, n)
    den = qpow(field, 1, n) - qpow(field, -1, n)
    return num / den
