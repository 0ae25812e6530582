"""Rewriting presentations of finitely generated algebras.

A presentation is a set of oriented rules `lead word -> lower polynomial`
where every word on the right is strictly deglex-smaller than the lead.
Rules come from defining relations by linear elimination: each relation is
a linear combination of words, so Gaussian elimination with deglex-largest
words as pivots turns a relation set into a reduced rule set.

Single-letter rules are eliminations: the letter is substituted through
every other relation and rule, so no surviving rule ever mentions an
eliminated letter.  Normal forms therefore run in two phases — eliminate
letters first, then apply longer rules leftmost-first.  Replacements are
strictly smaller in the multiset extension of deglex, so rewriting
terminates.

Confluence is not assumed: `check_local_confluence` resolves all overlap
ambiguities up to a degree bound and reports the non-joinable ones.
"""

from __future__ import annotations

from .ncpoly import NCPoly, deglex_key, _accumulate


class RewriteError(Exception):
    pass


def _letter_substitute(alg, poly, table):
    """Replace every occurrence of the letters in `table` (letter -> affine
    NCPoly) inside every word, to exhaustion."""
    if not table:
        return poly
    while True:
        target = None
        for w in poly.terms:
            for pos, g in enumerate(w):
                if g in table:
                    target = (w, pos)
                    break
            if target:
                break
        if target is None:
            return poly
        w, pos = target
        c = poly.terms[w]
        left = NCPoly(alg, {w[:pos]: alg.field.one})
        right = NCPoly(alg, {w[pos + 1:]: c})
        repl = left * table[w[pos]] * right
        data = dict(poly.terms)
        del data[w]
        for v, d in repl.terms.items():
            _accumulate(data, v, d)
        poly = NCPoly(alg, data)


def _word_substitute(alg, poly, table):
    """Replace whole-word occurrences of the pivots in `table`, to exhaustion."""
    while True:
        target = None
        for w in poly.terms:
            if w in table:
                target = w
                break
        if target is None:
            return poly
        c = poly.terms[target]
        data = dict(poly.terms)
        del data[target]
        for v, d in table[target].terms.items():
            _accumulate(data, v, d * c)
        poly = NCPoly(alg, data)


class RewriteSystem:
    def __init__(self, alg):
        self.alg = alg
        self.rules = {}          # lead word -> NCPoly replacement
        self._linear = {}        # single-letter leads (phase 1), letter -> rhs
        self._longer = {}        # leads of length >= 2 (phase 2)
        self._max_len = 0

    def __len__(self):
        return len(self.rules)

    # -- rule management -------------------------------------------------------

    def add_rule(self, lead, rhs):
        if not lead:
            raise RewriteError("empty lead word (inconsistent relation?)")
        lk = deglex_key(lead)
        for w in rhs.terms:
            if deglex_key(w) >= lk:
                raise RewriteError(
                    "rule %s -> ... does not decrease (offending word %s)"
                    % (self.alg.word_str(lead), self.alg.word_str(w)))
        if lead in self.rules:
            raise RewriteError("duplicate rule for %s" % self.alg.word_str(lead))
        self.rules[lead] = rhs
        if len(lead) == 1:
            self._linear[lead[0]] = rhs
        else:
            self._longer[lead] = rhs
            self._max_len = max(self._max_len, len(lead))

    def eliminated_generators(self):
        return sorted(self._linear)

    # -- normal forms ------------------------------------------------------------

    def _find_redex(self, word):
        """Leftmost, then longest, phase-2 match inside `word`."""
        for pos in range(len(word)):
            top = min(self._max_len, len(word) - pos)
            for ln in range(top, 1, -1):
                if word[pos:pos + ln] in self._longer:
                    return pos, word[pos:pos + ln]
        return None

    def normal_form(self, poly, max_steps=500000):
        poly = _letter_substitute(self.alg, poly, self._linear)
        alg = self.alg
        steps = 0
        while True:
            target = None
            for w in poly.terms:
                m = self._find_redex(w)
                if m is not None:
                    target = (w, m[0], m[1])
                    break
            if target is None:
                return poly
            steps += 1
            if steps > max_steps:
                raise RewriteError(
                    "rewriting did not terminate in %d steps" % max_steps)
            w, pos, lead = target
            c = poly.terms[w]
            left = NCPoly(alg, {w[:pos]: alg.field.one})
            right = NCPoly(alg, {w[pos + len(lead):]: c})
            repl = left * self.rules[lead] * right
            repl = _letter_substitute(alg, repl, self._linear)
            data = dict(poly.terms)
            del data[w]
            for v, d in repl.terms.items():
                _accumulate(data, v, d)
            poly = NCPoly(alg, data)

    def reduces_to_zero(self, poly):
        return self.normal_form(poly).is_zero()

    def is_normal_word(self, word):
        if any(g in self._linear for g in word):
            return False
        return self._find_redex(word) is None

    # -- counting ------------------------------------------------------------------

    def normal_words(self, degree, letters=None):
        """All irreducible words of exactly `degree` over `letters`."""
        if letters is None:
            letters = range(len(self.alg.names))
        letters = [g for g in letters if g not in self._linear]
        words = [()]
        for _ in range(degree):
            nxt = []
            for w in words:
                for g in letters:
                    v = w + (g,)
                    # w is already normal, so a redex must use the new tail
                    lo = max(0, len(v) - self._max_len)
                    if all(v[p:p + ln] not in self._longer
                           for p in range(lo, len(v) - 1)
                           for ln in range(2, len(v) - p + 1)):
                        nxt.append(v)
            words = nxt
        return words

    def graded_dimension(self, max_degree, letters=None):
        return [len(self.normal_words(d, letters)) for d in range(max_degree + 1)]

    # -- confluence ------------------------------------------------------------------

    def critical_pairs(self):
        """(word, (rule_u, pos_u), (rule_v, pos_v)) for every overlap or
        containment ambiguity between phase-2 leads."""
        leads = sorted(self._longer, key=deglex_key)
        out = []
        for u in leads:
            for v in leads:
                # proper overlap: a suffix of u equals a prefix of v
                for k in range(1, min(len(u), len(v))):
                    if u[-k:] == v[:k]:
                        out.append((u + v[k:], (u, 0), (v, len(u) - k)))
                # containment: v strictly inside u
                if u != v and len(v) < len(u):
                    for p in range(len(u) - len(v) + 1):
                        if u[p:p + len(v)] == v:
                            out.append((u, (u, 0), (v, p)))
        return out

    def non_joinable_pairs(self, max_degree=3):
        """[(word, u, v, difference NCPoly)] for every unresolved overlap
        ambiguity of word length <= max_degree; also returns the count of
        pairs examined."""
        bad = []
        checked = 0
        for word, (u, pu), (v, pv) in self.critical_pairs():
            if len(word) > max_degree:
                continue
            checked += 1
            a = self._one_step(word, u, pu)
            b = self._one_step(word, v, pv)
            diff = self.normal_form(a) - self.normal_form(b)
            if not diff.is_zero():
                bad.append((word, u, v, diff))
        return bad, checked

    def check_local_confluence(self, max_degree=3):
        """Resolve every overlap ambiguity of word length <= max_degree.

        Returns a report dict; `non_joinable` lists the bad superpositions.
        """
        alg = self.alg
        bad, checked = self.non_joinable_pairs(max_degree)
        return {
            "pairs_checked": checked,
            "non_joinable": [{
                "word": alg.word_str(word),
                "rules": [alg.word_str(u), alg.word_str(v)],
                "difference": str(diff),
            } for word, u, v, diff in bad],
            "confluent_to_degree": max_degree if not bad else None,
        }

    def _one_step(self, word, lead, pos):
        if word[pos:pos + len(lead)] != lead:
            raise RewriteError("rule does not match at position %d" % pos)
        alg = self.alg
        left = NCPoly(alg, {word[:pos]: alg.field.one})
        right = NCPoly(alg, {word[pos + len(lead):]: alg.field.one})
        return left * self.rules[lead] * right


def complete_to_degree(alg, system, max_degree=3, max_rounds=12):
    """Add rules until no overlap ambiguity of length <= max_degree is left.

    Each round folds the differences of non-joinable pairs back into the
    relation set and re-derives.  When every surviving rule has a lead of
    length at most two, resolving the length-3 ambiguities is enough for
    confluence in every degree; longer leads keep the certificate honest
    only up to max_degree, which the caller should report.

    Returns (system, rounds_used).
    """
    for round_no in range(max_rounds):
        bad, _ = system.non_joinable_pairs(max_degree)
        if not bad:
            return system, round_no
        system = derive_rewrite_rules(
            alg, [diff for _, _, _, diff in bad], system=system)
    raise RewriteError(
        "completion still unstable after %d rounds" % max_rounds)


def derive_rewrite_rules(alg, relations, system=None):
    """Turn relations (NCPoly == 0) into an oriented, interreduced rule set.

    Linear elimination over words, stratified: a relation whose lead is a
    single letter eliminates that letter everywhere (including from rules
    found earlier, which are re-derived), so the final phase-2 rules never
    mention an eliminated letter, and no rule's right side contains any
    rule's lead.
    """
    pending = []
    if system is not None:
        for lead, rhs in system.rules.items():
            pending.append(NCPoly(alg, {lead: alg.field.one}) - rhs)
    pending.extend(r for r in relations if not r.is_zero())

    linear = {}   # letter -> affine rhs
    longer = {}   # lead word -> rhs

    while pending:
        rel = pending.pop(0)
        rel = _letter_substitute(alg, rel, linear)
        rel = _word_substitute(alg, rel, longer)
        if rel.is_zero():
            continue
        lead, c = rel.lead()
        if not lead:
            raise RewriteError(
                "relations are inconsistent (1 = 0 after reduction)")
        rest = NCPoly(alg, {w: v for w, v in rel.terms.items() if w != lead})
        rhs = rest.scale(-c.inv())
        if len(lead) == 1:
            g = lead[0]
            linear[g] = rhs
            sub = {g: rhs}
            for h in list(linear):
                if h != g:
                    linear[h] = _letter_substitute(alg, linear[h], sub)
            if longer:
                # letters changed under older rules: re-derive them
                for lw, lr in longer.items():
                    pending.append(NCPoly(alg, {lw: alg.field.one}) - lr)
                longer = {}
        else:
            for lw in list(longer):
                old = longer[lw]
                if lead in old.terms:
                    k = old.terms[lead]
                    data = dict(old.terms)
                    del data[lead]
                    for v, d in rhs.terms.items():
                        _accumulate(data, v, d * k)
                    longer[lw] = NCPoly(alg, data)
            longer[lead] = rhs

    fresh = RewriteSystem(alg)
    for g in sorted(linear):
        fresh.add_rule((g,), linear[g])
    for lead in sorted(longer, key=deglex_key):
        fresh.add_rule(lead, longer[lead])
    return fresh
