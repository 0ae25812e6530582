"""Algebra maps: homomorphisms and anti-homomorphisms between presented
algebras, with an optional twist of the scalars (identity or conjugation).

Images are given per generator; generators without an explicit image map
to the generator of the same name in the target.  For an anti-homomorphism
the image of a word is the reversed product and the (possibly twisted)
coefficient is carried in from the LEFT, so any noncentral scalars pass
through the image words via the target algebra's passage map.
"""

from __future__ import annotations


class AlgebraMorphism:
    def __init__(self, source, target, images=None, anti=False, scalar_map=None):
        self.source = source
        self.target = target
        self.anti = bool(anti)
        self.scalar_map = scalar_map  # None = identity on coefficients
        self.images = {}
        for key, img in (images or {}).items():
            idx = source.index[key] if isinstance(key, str) else key
            self.images[idx] = img

    def image_of(self, gen):
        img = self.images.get(gen)
        if img is None:
            name = self.source.names[gen]
            if name not in self.target.index:
                raise KeyError("no image for generator %s" % name)
            img = self.target.gen(name)
            self.images[gen] = img
        return img

    def __call__(self, poly):
        if poly.alg is not self.source:
            raise TypeError("polynomial not from the source algebra")
        out = self.target.zero()
        for w, c in poly.terms.items():
            cc = self.scalar_map(c) if self.scalar_map else c
            letters = reversed(w) if self.anti else w
            img = self.target.scalar(self.target.field.one)
            for g in letters:
                img = img * self.image_of(g)
            if self.anti:
                out = out + self.target.scalar(cc) * img
            else:
                out = out + img.scale(cc)
        return out

    def compose(self, inner):
        """self after inner (source = inner.source)."""
        if inner.target is not self.source:
            raise TypeError("morphisms do not chain")
        outer = self

        def smap(c):
            c = inner.scalar_map(c) if inner.scalar_map else c
            return outer.scalar_map(c) if outer.scalar_map else c

        images = {g: outer(inner.image_of(g))
                  for g in range(len(inner.source.names))}
        return AlgebraMorphism(inner.source, outer.target, images,
                               anti=outer.anti != inner.anti,
                               scalar_map=smap if (outer.scalar_map or inner.scalar_map) else None)

    def respects(self, relations, target_system):
        """Check the map kills each relation modulo the target's rules."""
        bad = []
        for rel in relations:
            if not target_system.reduces_to_zero(self(rel)):
                bad.append(rel)
        return bad
