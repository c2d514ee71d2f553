"""Dense univariate polynomials over an exact field (QQ or a cyclotomic field)."""

import re

from .scalars import QQ, QZERO, rat, split_factors, split_signed_terms


class UPoly:
    """Coefficient list, low degree first, normalized (no trailing zeros)."""

    __slots__ = ("field", "c")

    def __init__(self, field, coeffs):
        c = list(coeffs)
        while c and not c[-1]:
            c.pop()
        self.field = field
        self.c = c

    @classmethod
    def from_ints(cls, coeffs, field=QQ):
        return cls(field, [field.of(v) for v in coeffs])

    def degree(self):
        return len(self.c) - 1  # -1 for the zero polynomial

    def is_zero(self):
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        return isinstance(other, UPoly) and self.c == other.c

    def __hash__(self):
        return hash(tuple(self.field.key(a) for a in self.c))

    def lc(self):
        return self.c[-1]

    def __add__(self, other):
        n = max(len(self.c), len(other.c))
        a = self.c + [self.field.zero] * (n - len(self.c))
        b = other.c + [self.field.zero] * (n - len(other.c))
        return UPoly(self.field, [x + y for x, y in zip(a, b)])

    def __sub__(self, other):
        n = max(len(self.c), len(other.c))
        a = self.c + [self.field.zero] * (n - len(self.c))
        b = other.c + [self.field.zero] * (n - len(other.c))
        return UPoly(self.field, [x - y for x, y in zip(a, b)])

    def __neg__(self):
        return UPoly(self.field, [-x for x in self.c])

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            s = self.field.of(other)
            return UPoly(self.field, [x * s for x in self.c])
        if not self.c or not other.c:
            return UPoly(self.field, [])
        out = [self.field.zero] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    if b:
                        out[i + j] = out[i + j] + a * b
        return UPoly(self.field, out)

    __rmul__ = __mul__

    def scale(self, s):
        return UPoly(self.field, [x * s for x in self.c])

    def divmod(self, other):
        if not other.c:
            raise ZeroDivisionError("division by zero polynomial")
        r = list(self.c)
        q = [self.field.zero] * max(1, len(r) - len(other.c) + 1)
        dlc = self.field.inv(other.lc())
        db = len(other.c)
        while len(r) >= db:
            if not r[-1]:
                r.pop()
                continue
            k = len(r) - db
            f = r[-1] * dlc
            q[k] = f
            for j in range(db - 1):
                r[k + j] = r[k + j] - f * other.c[j]
            r.pop()
        return UPoly(self.field, q), UPoly(self.field, r)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other):
        q, r = self.divmod(other)
        if r.c:
            raise ValueError("inexact univariate division")
        return q

    def monic(self):
        if not self.c:
            return self
        return self.scale(self.field.inv(self.lc()))

    def derivative(self):
        return UPoly(self.field, [self.c[i] * i for i in range(1, len(self.c))])

    def eval(self, v):
        out = self.field.zero
        for a in reversed(self.c):
            out = out * v + a
        return out

    def compose_power(self, k):
        """The polynomial f(t^k)."""
        out = [self.field.zero] * (k * (len(self.c) - 1) + 1) if self.c else []
        for i, a in enumerate(self.c):
            out[k * i] = a
        return UPoly(self.field, out)

    def shift(self, k):
        """Multiply by t^k."""
        return UPoly(self.field, [self.field.zero] * k + self.c)

    def __pow__(self, k):
        out = UPoly(self.field, [self.field.one])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __str__(self, var="t"):
        if not self.c:
            return "0"
        terms = []
        for i in range(len(self.c) - 1, -1, -1):
            a = self.c[i]
            if not a:
                continue
            astr = self.field.to_str(a)
            if i == 0:
                terms.append(astr)
            else:
                mono = var if i == 1 else "%s^%d" % (var, i)
                if astr == "1":
                    terms.append(mono)
                elif astr == "-1":
                    terms.append("-" + mono)
                elif ("+" in astr[1:]) or ("-" in astr[1:]) or (" " in astr):
                    terms.append("(%s)*%s" % (astr, mono))
                else:
                    terms.append("%s*%s" % (astr, mono))
        out = terms[0]
        for t in terms[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out

    __repr__ = __str__


def upoly_gcd(f, g):
    """Monic gcd by the Euclidean algorithm."""
    a, b = f, g
    while b.c:
        a, b = b, a % b
    if not a.c:
        return a
    return a.monic()


def squarefree_part(f):
    """f / gcd(f, f'), monic; the radical of a nonzero univariate polynomial."""
    if not f.c:
        raise ValueError("squarefree part of the zero polynomial")
    g = upoly_gcd(f, f.derivative())
    if g.degree() == 0:
        return f.monic()
    return f.exact_div(g).monic()


def lagrange_interpolate(field, points):
    """Unique polynomial of degree < len(points) through (x_i, y_i), exact."""
    out = UPoly(field, [])
    for i, (xi, yi) in enumerate(points):
        if not yi:
            continue
        num = UPoly(field, [field.one])
        den = field.one
        for j, (xj, _) in enumerate(points):
            if i == j:
                continue
            num = num * UPoly(field, [-xj, field.one])
            den = den * (xi - xj)
        out = out + num.scale(yi * field.inv(den))
    return out


def parse_upoly(field, text, var="t"):
    """Inverse of UPoly.__str__ for the given variable name."""
    text = text.strip()
    if text == "0":
        return UPoly(field, [])
    var_re = re.compile(re.escape(var) + r"(?:\^(\d+))?$")
    coeffs = {}
    for sign, term in split_signed_terms(text):
        k = 0
        cs = None
        for p in split_factors(term):
            m = var_re.match(p)
            if m:
                k += int(m.group(1)) if m.group(1) else 1
            else:
                if p.startswith("(") and p.endswith(")"):
                    p = p[1:-1]
                v = field.from_str(p)
                cs = v if cs is None else cs * v
        val = field.one if cs is None else cs
        if sign < 0:
            val = field.zero - val
        coeffs[k] = coeffs.get(k, field.zero) + val
    top = max(coeffs)
    return UPoly(field, [coeffs.get(i, field.zero) for i in range(top + 1)])
