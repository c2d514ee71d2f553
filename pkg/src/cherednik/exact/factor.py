"""Irreducible factorization of univariate polynomials over Q or Q(zeta_n).

Wraps sympy's factorization (Zassenhaus over Z lifted to number fields by
norm/Trager techniques internally) behind an exact interface; every result is
verified by re-expanding the product in our own arithmetic before returning.
"""

import sympy as _sp
from gmpy2 import mpq

from .scalars import QQ, rat
from .upoly import UPoly

_X = _sp.Symbol("_factor_var")
_ALG_CACHE = {}


def _alg_field(n):
    if n not in _ALG_CACHE:
        zeta = _sp.root(1, n, 1)
        K = _sp.QQ.algebraic_field(zeta)
        _ALG_CACHE[n] = K
    return _ALG_CACHE[n]


def _to_sympy(f):
    field = f.field
    if field.conductor == 1:
        coeffs = [_sp.Rational(int(c.numerator), int(c.denominator)) for c in reversed(f.c)]
        return _sp.Poly(coeffs, _X, domain="QQ"), None
    K = _alg_field(field.conductor)
    coeffs = []
    for c in reversed(f.c):
        vec = field.coeff_vector(c)  # low -> high
        coeffs.append(K.new([_sp.Rational(int(q.numerator), int(q.denominator)) for q in reversed(vec)]))
    return _sp.Poly(coeffs, _X, domain=K), K


def _from_sympy(poly, field, K):
    out = []
    if K is None:
        for c in reversed(poly.all_coeffs()):
            q = _sp.Rational(c)
            out.append(mpq(int(q.p), int(q.q)))
        return UPoly(field, out)
    for c in reversed(poly.all_coeffs()):
        c = K.convert(c)
        rep = c.to_list() if hasattr(c, "to_list") else list(c.rep)
        vec = [rat(int(q.numerator), int(q.denominator)) for q in reversed(rep)]
        out.append(field.of(vec))
    return UPoly(field, out)


def factor_irreducible(f):
    """Factor f into monic irreducibles over its field.

    Returns (lead, [(g1, m1), ...]) with lead a scalar, the gi monic irreducible
    and f == lead * prod gi^mi exactly.  Raises on the zero polynomial.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    field = f.field
    if f.degree() == 0:
        return f.c[0], []
    sf, K = _to_sympy(f)
    _, fl = sf.factor_list()
    factors = []
    for g, m in fl:
        gu = _from_sympy(g, field, K)
        lead_inv = field.inv(gu.lc())
        factors.append((gu.scale(lead_inv), int(m)))
    factors.sort(key=lambda gm: (gm[0].degree(), [field.key(a) for a in gm[0].c]))
    lead = f.lc()
    check = UPoly(field, [lead])
    for g, m in factors:
        check = check * g**m
    if check != f:
        raise ArithmeticError("factorization failed verification")
    return lead, factors
