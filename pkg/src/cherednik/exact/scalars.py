"""Exact scalar domains: rationals (gmpy2.mpq) and cyclotomic fields Q(zeta_n).

A cyclotomic element is stored as a coefficient vector over the power basis
1, zeta, ..., zeta^(d-1) where d = deg Phi_n, reduced modulo the cyclotomic
polynomial Phi_n.  Fields with conductor <= 2 collapse to plain rationals.
"""

import re
from fractions import Fraction

from gmpy2 import mpq

QZERO = mpq(0)
QONE = mpq(1)


def rat(v, den=None):
    """Coerce v (int, str 'p/q', Fraction, mpq) into an mpq."""
    if den is not None:
        return mpq(v, den)
    if isinstance(v, Fraction):
        return mpq(v.numerator, v.denominator)
    return mpq(v)


def rat_str(q):
    return str(q)


def split_signed_terms(text):
    """Split a canonical expression into (sign, term) pairs.

    Splits at top-level ' + ' / ' - ' separators, honoring parentheses; a
    leading '-' negates the first term.  Inverse of the term joining used by
    the polynomial and scalar __str__ methods."""
    text = text.strip()
    if not text:
        raise ValueError("empty expression")
    out = []
    sign = 1
    i = 0
    if text[0] == "-":
        sign = -1
        i = 1
    start = i
    depth = 0
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and ch == " " and text[i : i + 3] in (" + ", " - "):
            out.append((sign, text[start:i]))
            sign = 1 if text[i + 1] == "+" else -1
            i += 3
            start = i
            continue
        i += 1
    if depth != 0:
        raise ValueError("unbalanced parentheses in %r" % text)
    last = text[start:]
    if not last:
        raise ValueError("trailing separator in %r" % text)
    out.append((sign, last))
    return out


def split_factors(term):
    """Split a term at top-level '*' characters, honoring parentheses."""
    out = []
    depth = 0
    start = 0
    for i, ch in enumerate(term):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "*" and depth == 0:
            out.append(term[start:i])
            start = i + 1
    out.append(term[start:])
    if any(not f for f in out):
        raise ValueError("empty factor in %r" % term)
    return out


_SCALAR_TERM = re.compile(
    r"^(?:(?P<q>\d+(?:/\d+)?)(?:\*zeta(?P<n1>\d+)(?:\^(?P<k1>\d+))?)?"
    r"|zeta(?P<n2>\d+)(?:\^(?P<k2>\d+))?)$"
)


def _cyclotomic_coeffs(n):
    """Integer coefficients of Phi_n (low to high), by exact division of x^n - 1."""
    # divide x^n - 1 by Phi_d for every proper divisor d of n
    f = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            g = _cyclotomic_coeffs(d)
            q = [0] * (len(f) - len(g) + 1)
            r = list(f)
            for i in range(len(f) - len(g), -1, -1):
                c = r[i + len(g) - 1]
                if c:
                    q[i] = c  # g is monic
                    for j, gj in enumerate(g):
                        r[i + j] -= c * gj
            assert all(c == 0 for c in r)
            f = q
    return f


_PHI_CACHE = {}


def cyclotomic_polynomial(n):
    if n not in _PHI_CACHE:
        _PHI_CACHE[n] = _cyclotomic_coeffs(n)
    return _PHI_CACHE[n]


class RationalField:
    """The rational field, presented with the same interface as CycloField."""

    conductor = 1
    degree = 1

    def of(self, v):
        if isinstance(v, (list, tuple)):
            if len(v) != 1:
                raise ValueError("rational field takes length-1 coefficient vectors")
            return rat(v[0])
        return rat(v)

    zero = QZERO
    one = QONE

    def zeta(self):
        return QONE

    def inv(self, a):
        return 1 / a

    def is_rational(self, a):
        return True

    def to_rational(self, a):
        return a

    def coeff_vector(self, a):
        return [a]

    def to_str(self, a):
        return str(a)

    def from_str(self, text):
        """Inverse of to_str."""
        return rat(text.strip())

    def key(self, a):
        return (a.numerator, a.denominator)

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class CycloField:
    """Q(zeta_n) for n >= 3, power basis modulo Phi_n."""

    def __init__(self, n):
        if n < 3:
            raise ValueError("use QQ for conductor <= 2")
        self.conductor = n
        phi = cyclotomic_polynomial(n)
        self.phi = [mpq(c) for c in phi]
        self.degree = len(phi) - 1
        d = self.degree
        # power table: zeta^k reduced, for k = 0 .. max(n, 2d-1) - 1
        pows = [tuple(QONE if i == 0 else QZERO for i in range(d))]
        top = max(n, 2 * d - 1)
        for _ in range(1, top):
            prev = pows[-1]
            shifted = [QZERO] + list(prev)
            lead = shifted.pop()
            if lead:
                shifted = [shifted[i] - lead * self.phi[i] for i in range(d)]
            pows.append(tuple(shifted))
        self._pows = pows
        self.zero = CycloElem(self, tuple(QZERO for _ in range(d)))
        self.one = CycloElem(self, pows[0])

    def zeta(self, k=1):
        return CycloElem(self, self._pows[k % self.conductor])

    def of(self, v):
        if isinstance(v, CycloElem):
            if v.field is not self:
                raise ValueError("cyclotomic element from a different field")
            return v
        if isinstance(v, (list, tuple)):
            c = [QZERO] * self.degree
            for k, vk in enumerate(v):
                q = rat(vk)
                if q:
                    p = self._pows[k]
                    for i in range(self.degree):
                        c[i] += q * p[i]
            return CycloElem(self, tuple(c))
        q = rat(v)
        return CycloElem(self, tuple(q if i == 0 else QZERO for i in range(self.degree)))

    def inv(self, a):
        return a.inverse()

    def is_rational(self, a):
        if isinstance(a, CycloElem):
            return all(not c for c in a.c[1:])
        return True

    def to_rational(self, a):
        if not self.is_rational(a):
            raise ValueError("not a rational element: %s" % (a,))
        return a.c[0] if isinstance(a, CycloElem) else rat(a)

    def coeff_vector(self, a):
        return list(a.c)

    def to_str(self, a):
        return str(a)

    def from_str(self, text):
        """Inverse of to_str: parse a sum of rational multiples of zeta powers."""
        out = self.zero
        for sign, term in split_signed_terms(text):
            m = _SCALAR_TERM.match(term)
            if not m:
                raise ValueError("cannot parse scalar term %r" % term)
            q = rat(m.group("q")) if m.group("q") else QONE
            n = m.group("n1") or m.group("n2")
            val = self.of(q)
            if n is not None:
                if int(n) != self.conductor:
                    raise ValueError(
                        "zeta%s does not belong to QQ(zeta%d)" % (n, self.conductor)
                    )
                k = m.group("k1") or m.group("k2")
                val = val * self.zeta(int(k) if k else 1)
            out = out + val if sign > 0 else out - val
        return out

    def key(self, a):
        return tuple((q.numerator, q.denominator) for q in a.c)

    def __repr__(self):
        return "QQ(zeta%d)" % self.conductor


_FIELD_CACHE = {}


def cyclotomic_field(n):
    """Field of conductor n; QQ when n <= 2."""
    if n <= 2:
        return QQ
    if n not in _FIELD_CACHE:
        _FIELD_CACHE[n] = CycloField(n)
    return _FIELD_CACHE[n]


class CycloElem:
    __slots__ = ("field", "c")

    def __init__(self, field, coeffs):
        self.field = field
        self.c = coeffs

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, CycloElem):
            return self.field is other.field and self.c == other.c
        q = rat(other)
        return self.c[0] == q and not any(self.c[1:])

    def __hash__(self):
        return hash(self.c)

    def __add__(self, other):
        if isinstance(other, CycloElem):
            return CycloElem(self.field, tuple(a + b for a, b in zip(self.c, other.c)))
        q = rat(other)
        c = list(self.c)
        c[0] += q
        return CycloElem(self.field, tuple(c))

    __radd__ = __add__

    def __neg__(self):
        return CycloElem(self.field, tuple(-a for a in self.c))

    def __sub__(self, other):
        if isinstance(other, CycloElem):
            return CycloElem(self.field, tuple(a - b for a, b in zip(self.c, other.c)))
        q = rat(other)
        c = list(self.c)
        c[0] -= q
        return CycloElem(self.field, tuple(c))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, CycloElem):
            d = self.field.degree
            a, b = self.c, other.c
            prod = [QZERO] * (2 * d - 1)
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        if bj:
                            prod[i + j] += ai * bj
            pows = self.field._pows
            out = list(prod[:d])
            for k in range(d, 2 * d - 1):
                ck = prod[k]
                if ck:
                    p = pows[k]
                    for i in range(d):
                        out[i] += ck * p[i]
            return CycloElem(self.field, tuple(out))
        q = rat(other)
        return CycloElem(self.field, tuple(a * q for a in self.c))

    __rmul__ = __mul__

    def inverse(self):
        """Inverse via extended gcd of the representative with Phi_n."""
        if not self:
            raise ZeroDivisionError("cyclotomic zero has no inverse")
        # Extended Euclid over Q[x]: u*a + v*phi = gcd (a constant)
        a = list(self.c)
        while a and not a[-1]:
            a.pop()
        b = list(self.field.phi)
        u0, u1 = [QONE], []
        while b:
            # divmod a by b
            q = [QZERO] * max(1, len(a) - len(b) + 1)
            r = list(a)
            while len(r) >= len(b) and any(r):
                if not r[-1]:
                    r.pop()
                    continue
                k = len(r) - len(b)
                f = r[-1] / b[-1]
                q[k] = f
                for j in range(len(b)):
                    r[k + j] -= f * b[j]
                r.pop()
            while r and not r[-1]:
                r.pop()
            # u0 - q*u1
            nu = list(u0) + [QZERO] * max(0, len(q) + len(u1) - 1 - len(u0))
            for i, qi in enumerate(q):
                if qi:
                    for j, uj in enumerate(u1):
                        nu[i + j] -= qi * uj
            a, b = b, r
            u0, u1 = u1, nu
        # now a = gcd (constant), u0 its Bezout coefficient for the original a
        g = a[0]
        inv = [c / g for c in u0]
        return self.field.of(inv)

    def __truediv__(self, other):
        if isinstance(other, CycloElem):
            return self * other.inverse()
        return self * (1 / rat(other))

    def __rtruediv__(self, other):
        return self.inverse() * rat(other)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __str__(self):
        terms = []
        z = "zeta%d" % self.field.conductor
        for i, q in enumerate(self.c):
            if not q:
                continue
            if i == 0:
                terms.append(str(q))
            else:
                mono = z if i == 1 else "%s^%d" % (z, i)
                if q == 1:
                    terms.append(mono)
                elif q == -1:
                    terms.append("-" + mono)
                else:
                    terms.append("%s*%s" % (q, mono))
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out

    __repr__ = __str__
