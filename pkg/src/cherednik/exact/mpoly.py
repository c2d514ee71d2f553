"""Sparse multivariate polynomials over an exact field, with a bi-grading.

Monomials are exponent tuples keyed in a dict.  Every variable carries a
bi-degree weight (a, b); the bi-degree of a monomial is the weighted sum.
This is the grading in which commuting variables x have weight (1,0),
dual variables y have weight (0,1) and parameter variables weight (1,1).
"""

import re

from .scalars import QQ, rat, split_factors, split_signed_terms

_NAME_POW = re.compile(r"([A-Za-z]\w*)(?:\^(\d+))?$")


def grevlex_key(e):
    return (sum(e), tuple(-e[i] for i in range(len(e) - 1, -1, -1)))


class PolyRing:
    """A named polynomial ring over QQ or a cyclotomic field."""

    def __init__(self, field, names, bidegrees=None, blocks=None):
        self.field = field
        self.names = tuple(names)
        self.n = len(self.names)
        if bidegrees is None:
            bidegrees = tuple((1, 0) for _ in self.names)
        self.bidegrees = tuple(tuple(b) for b in bidegrees)
        self.blocks = dict(blocks) if blocks else {}
        self._index = {nm: i for i, nm in enumerate(self.names)}
        self.zero_exp = tuple(0 for _ in self.names)
        self.zero = MPoly(self, {})
        self.one = MPoly(self, {self.zero_exp: field.one})
        self._var_cache = {}
        self._action_cache = {}

    def index(self, name):
        return self._index[name]

    def var(self, i):
        if isinstance(i, str):
            i = self._index[i]
        if i not in self._var_cache:
            e = [0] * self.n
            e[i] = 1
            self._var_cache[i] = MPoly(self, {tuple(e): self.field.one})
        return self._var_cache[i]

    def block_range(self, name):
        return self.blocks[name]

    def from_terms(self, terms):
        d = {}
        for e, c in terms:
            if c:
                c0 = d.get(e)
                if c0 is None:
                    d[e] = c
                else:
                    c0 = c0 + c
                    if c0:
                        d[e] = c0
                    else:
                        del d[e]
        return MPoly(self, d)

    def const(self, v):
        c = self.field.of(v)
        return MPoly(self, {self.zero_exp: c} if c else {})

    def parse(self, text):
        """Inverse of MPoly.__str__ on this ring."""
        text = text.strip()
        if text == "0":
            return self.zero
        field = self.field
        out = self.zero
        for sign, term in split_signed_terms(text):
            e = [0] * self.n
            coeff = field.one
            for p in split_factors(term):
                m = _NAME_POW.match(p)
                if m and m.group(1) in self._index:
                    e[self._index[m.group(1)]] += int(m.group(2)) if m.group(2) else 1
                else:
                    if p.startswith("(") and p.endswith(")"):
                        p = p[1:-1]
                    coeff = coeff * field.from_str(p)
            if sign < 0:
                coeff = field.zero - coeff
            out = out + self.from_terms([(tuple(e), coeff)])
        return out

    def linear_form(self, coeffs):
        """Sum of coeffs[i] * var_i over the listed (index, scalar) pairs."""
        terms = []
        for i, c in coeffs:
            e = [0] * self.n
            e[i] = 1
            terms.append((tuple(e), self.field.of(c)))
        return self.from_terms(terms)

    def mono_bidegree(self, e):
        a = b = 0
        for i, k in enumerate(e):
            if k:
                wa, wb = self.bidegrees[i]
                a += wa * k
                b += wb * k
        return (a, b)

    def monomials_of_bidegree(self, target, indices=None):
        """All exponent tuples supported on `indices` with the given bi-degree."""
        if indices is None:
            indices = range(self.n)
        indices = list(indices)
        out = []
        e = [0] * self.n

        def rec(pos, da, db):
            if da == 0 and db == 0 and pos == len(indices):
                out.append(tuple(e))
                return
            if pos == len(indices):
                return
            i = indices[pos]
            wa, wb = self.bidegrees[i]
            if wa == 0 and wb == 0:
                raise ValueError("variable with zero bi-degree in enumeration")
            bounds = []
            if wa:
                bounds.append(da // wa)
            if wb:
                bounds.append(db // wb)
            kmax = min(bounds)
            for k in range(kmax + 1):
                e[i] = k
                rec(pos + 1, da - wa * k, db - wb * k)
            e[i] = 0

        rec(0, target[0], target[1])
        out.sort(key=grevlex_key)
        return out


class MPoly:
    __slots__ = ("ring", "d")

    def __init__(self, ring, d):
        self.ring = ring
        self.d = d

    def __bool__(self):
        return bool(self.d)

    def is_zero(self):
        return not self.d

    def __eq__(self, other):
        return isinstance(other, MPoly) and self.ring is other.ring and self.d == other.d

    def __hash__(self):
        key = self.ring.field.key
        return hash(frozenset((e, key(c)) for e, c in self.d.items()))

    def __len__(self):
        return len(self.d)

    def __add__(self, other):
        if not isinstance(other, MPoly):
            other = self.ring.const(other)
        out = dict(self.d)
        for e, c in other.d.items():
            c0 = out.get(e)
            if c0 is None:
                out[e] = c
            else:
                c0 = c0 + c
                if c0:
                    out[e] = c0
                else:
                    del out[e]
        return MPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.ring, {e: -c for e, c in self.d.items()})

    def __sub__(self, other):
        if not isinstance(other, MPoly):
            other = self.ring.const(other)
        out = dict(self.d)
        for e, c in other.d.items():
            c0 = out.get(e)
            if c0 is None:
                out[e] = -c
            else:
                c0 = c0 - c
                if c0:
                    out[e] = c0
                else:
                    del out[e]
        return MPoly(self.ring, out)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            c = self.ring.field.of(other)
            if not c:
                return self.ring.zero
            return MPoly(self.ring, {e: a * c for e, a in self.d.items()})
        a, b = self.d, other.d
        if len(a) > len(b):
            a, b = b, a
        out = {}
        bi = list(b.items())
        for ea, ca in a.items():
            for eb, cb in bi:
                e = tuple(x + y for x, y in zip(ea, eb))
                c0 = out.get(e)
                if c0 is None:
                    out[e] = ca * cb
                else:
                    c0 = c0 + ca * cb
                    if c0:
                        out[e] = c0
                    else:
                        del out[e]
        return MPoly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = self.ring.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c):
        if not c:
            return self.ring.zero
        return MPoly(self.ring, {e: a * c for e, a in self.d.items()})

    def coeff(self, e):
        return self.d.get(e, self.ring.field.zero)

    def constant(self):
        return self.d.get(self.ring.zero_exp, self.ring.field.zero)

    def leading(self):
        """(exponent, coefficient) of the grevlex-largest term."""
        e = max(self.d, key=grevlex_key)
        return e, self.d[e]

    def total_degree(self):
        if not self.d:
            return -1
        return max(sum(e) for e in self.d)

    def bidegree(self):
        """The common bi-degree of all terms, or None if inhomogeneous/zero."""
        it = iter(self.d)
        try:
            first = next(it)
        except StopIteration:
            return None
        bd = self.ring.mono_bidegree(first)
        for e in it:
            if self.ring.mono_bidegree(e) != bd:
                return None
        return bd

    def degree_in(self, i):
        if not self.d:
            return -1
        return max(e[i] for e in self.d)

    def derivative(self, i):
        out = {}
        for e, c in self.d.items():
            k = e[i]
            if k:
                e2 = list(e)
                e2[i] = k - 1
                out[tuple(e2)] = c * k
        return MPoly(self.ring, out)

    def filter_terms(self, pred):
        return MPoly(self.ring, {e: c for e, c in self.d.items() if pred(e)})

    def substitute(self, images):
        """Replace var i by images[i] (MPoly or scalar) for every i in the dict."""
        ring = self.ring
        pow_cache = {}

        def power(i, k):
            key = (i, k)
            if key not in pow_cache:
                img = images[i]
                if not isinstance(img, MPoly):
                    img = ring.const(img)
                pow_cache[key] = img**k
            return pow_cache[key]

        out = ring.zero
        for e, c in self.d.items():
            rest = [0] * ring.n
            term = None
            for i, k in enumerate(e):
                if k and i in images:
                    p = power(i, k)
                    term = p if term is None else term * p
                else:
                    rest[i] = k
            base = MPoly(ring, {tuple(rest): c})
            out = out + (base if term is None else base * term)
        return out

    def evaluate_scalars(self, assign):
        """Fully evaluate variables in `assign` (idx -> scalar); others must be absent."""
        field = self.ring.field
        out = field.zero
        for e, c in self.d.items():
            v = c
            for i, k in enumerate(e):
                if k:
                    if i not in assign:
                        raise ValueError("unassigned variable %s" % self.ring.names[i])
                    v = v * (field.of(assign[i]) ** k)
            out = out + v
        return out

    def apply_monomial_map(self, fn):
        """Sum fn(e) * c over terms; fn maps an exponent tuple to an MPoly."""
        out = self.ring.zero
        for e, c in self.d.items():
            out = out + fn(e).scale(c)
        return out

    def exact_div(self, g):
        """Exact multivariate division by g (single divisor, grevlex);

        raises ValueError if the remainder is nonzero."""
        ring = self.ring
        if not g.d:
            raise ZeroDivisionError("division by the zero polynomial")
        ge, gc = g.leading()
        ginv = ring.field.inv(gc)
        rem = dict(self.d)
        quo = {}
        while rem:
            e = max(rem, key=grevlex_key)
            c = rem[e]
            q = tuple(a - b for a, b in zip(e, ge))
            if any(k < 0 for k in q):
                raise ValueError("inexact division")
            f = c * ginv
            quo[q] = f
            for eb, cb in g.d.items():
                et = tuple(a + b for a, b in zip(q, eb))
                c0 = rem.get(et)
                cc = cb * f
                if c0 is None:
                    rem[et] = -cc
                else:
                    c0 = c0 - cc
                    if c0:
                        rem[et] = c0
                    else:
                        del rem[et]
        return MPoly(ring, quo)

    def content_normalize(self):
        """Scale to integer coprime coefficients with positive leading term (QQ),
        or leading coefficient 1 then integer-normalized rational part (cyclo).

        Returns (normalized, scalar) with self == normalized * scalar."""
        if not self.d:
            return self, self.ring.field.one
        field = self.ring.field
        _, lc = self.leading()
        if field.conductor == 1:
            from math import gcd

            num_gcd = 0
            den_lcm = 1
            for c in self.d.values():
                num_gcd = gcd(num_gcd, int(c.numerator))
                den_lcm = den_lcm * int(c.denominator) // gcd(den_lcm, int(c.denominator))
            s = rat(num_gcd, den_lcm)
            if lc < 0:
                s = -s
            return self.scale(1 / s), s
        # cyclotomic: make leading coefficient 1, then pull out rational content
        sc = lc
        monicd = self.scale(field.inv(sc))
        from math import gcd

        num_gcd = 0
        den_lcm = 1
        for c in monicd.d.values():
            for q in field.coeff_vector(c):
                if q:
                    num_gcd = gcd(num_gcd, int(q.numerator))
                    den_lcm = den_lcm * int(q.denominator) // gcd(den_lcm, int(q.denominator))
        s2 = rat(num_gcd, den_lcm)
        return monicd.scale(1 / s2), sc * field.of(s2)

    def sorted_terms(self):
        return sorted(self.d.items(), key=lambda ec: grevlex_key(ec[0]), reverse=True)

    def __str__(self):
        if not self.d:
            return "0"
        field = self.ring.field
        names = self.ring.names
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for i, k in enumerate(e):
                if k == 1:
                    factors.append(names[i])
                elif k:
                    factors.append("%s^%d" % (names[i], k))
            cs = field.to_str(c)
            plain = field.is_rational(c)
            if not factors:
                parts.append(cs if plain else "(%s)" % cs)
            elif plain and cs == "1":
                parts.append("*".join(factors))
            elif plain and cs == "-1":
                parts.append("-" + "*".join(factors))
            elif plain:
                parts.append(cs + "*" + "*".join(factors))
            else:
                parts.append("(%s)*%s" % (cs, "*".join(factors)))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    __repr__ = __str__
