"""The rational Cherednik algebra at t=0 (and its t-deformation) in PBW normal form.

Elements are stored as dictionaries {group element index -> mixed polynomial}
where the mixed polynomial lives in C[C_1..C_m, x_1..x_n, y_1..y_n] (plus a
central deformation variable t in deformed mode) and multiplies to the left of
the group element.  A monomial C^a x^b y^c w is the normal-ordered product with
all x's left of all y's.

Multiplication rewrites products into this normal form with the bulk
commutation rule: for a polynomial f in the x variables,

    [y, f] = t * d_y(f) + sum over reflections s of
             eps(s) <y, alpha_s> C_s Delta_s(f) s,

where Delta_s(f) = (f - s(f)) / alpha_s and d_y is the directional derivative.
Applied to mixed coefficients the reflection term twists the y-part by s.
"""

from .exact.mpoly import MPoly, PolyRing
from .reflection import ReflectionGroup


class CherednikError(ValueError):
    pass


class PBWElem:
    """An element of the algebra: {group index -> mixed coefficient polynomial}."""

    __slots__ = ("alg", "coeffs")

    def __init__(self, alg, coeffs):
        self.alg = alg
        self.coeffs = {w: p for w, p in coeffs.items() if p}

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, PBWElem):
            return NotImplemented
        return self.alg is other.alg and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset((w, p) for w, p in self.coeffs.items()))

    def __add__(self, other):
        self.alg._check(other)
        out = dict(self.coeffs)
        for w, p in other.coeffs.items():
            q = out.get(w)
            out[w] = p if q is None else q + p
        return PBWElem(self.alg, out)

    def __sub__(self, other):
        self.alg._check(other)
        out = dict(self.coeffs)
        for w, p in other.coeffs.items():
            q = out.get(w)
            out[w] = -p if q is None else q - p
        return PBWElem(self.alg, out)

    def __neg__(self):
        return PBWElem(self.alg, {w: -p for w, p in self.coeffs.items()})

    def scale(self, c):
        """Multiply by a scalar or by a central coefficient polynomial."""
        if isinstance(c, MPoly):
            return PBWElem(self.alg, {w: p * c for w, p in self.coeffs.items()})
        return PBWElem(self.alg, {w: p.scale(c) for w, p in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, PBWElem):
            return self.alg.mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, PBWElem):
            return NotImplemented
        return self.scale(other)

    def bidegree(self):
        """Common (N x N)-bidegree of all coefficients, or None if mixed/zero."""
        degs = {p.bidegree() for p in self.coeffs.values()}
        if len(degs) != 1:
            return None
        return degs.pop()

    def zdegree(self):
        bd = self.bidegree()
        if bd is None:
            return None
        return bd[0] - bd[1]

    def support(self):
        return sorted(self.coeffs)

    def terms_count(self):
        return sum(len(p.d) for p in self.coeffs.values())

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for w in sorted(self.coeffs):
            p = self.coeffs[w]
            if w == 0:
                parts.append("(%s)" % p)
            else:
                parts.append("(%s)*w%d" % (p, w))
        return " + ".join(parts)

    __repr__ = __str__


class CherednikAlgebra:
    """PBW arithmetic for a reflection group; deformed=True adds the central t."""

    def __init__(self, group, deformed=False, t_bound=None):
        if not isinstance(group, ReflectionGroup):
            raise CherednikError("expected a built ReflectionGroup")
        self.group = group
        self.deformed = deformed
        self.t_bound = t_bound if deformed else 0
        n = group.dim
        m = group.n_param
        names = (
            ["C%d" % (i + 1) for i in range(m)]
            + ["x%d" % (j + 1) for j in range(n)]
            + ["y%d" % (j + 1) for j in range(n)]
            + (["t"] if deformed else [])
        )
        bidegrees = [(1, 1)] * m + [(1, 0)] * n + [(0, 1)] * n + ([(1, 1)] if deformed else [])
        self.ring = PolyRing(group.field, names, bidegrees=bidegrees)
        self.nC = m
        self.nV = n
        self.iC = 0
        self.iX = m
        self.iY = m + n
        self.iT = m + 2 * n if deformed else None
        # caches
        self._act_cache = {}  # (w, exponent) -> MPoly image of the monomial
        self._delta_cache = {}  # (refl position, x-exponent) -> MPoly
        self._straighten_cache = {}  # (y-exponent, x-exponent) -> {w: MPoly}
        self._alpha_poly = []
        f = group.field
        for r in group.reflections:
            self._alpha_poly.append(
                self.ring.linear_form([(self.iX + j, a) for j, a in enumerate(r.alpha) if a])
            )

    # ----------------------------------------------------------- constructors

    def _check(self, other):
        if not isinstance(other, PBWElem) or other.alg is not self:
            raise CherednikError("operands belong to different algebras")

    def zero(self):
        return PBWElem(self, {})

    def one(self):
        return PBWElem(self, {0: self.ring.one})

    def from_poly(self, p, w=0):
        """Coefficient polynomial attached to a single group element."""
        return PBWElem(self, {w: p})

    def group_element(self, w):
        return PBWElem(self, {w: self.ring.one})

    def x(self, j):
        return PBWElem(self, {0: self.ring.var(self.iX + j)})

    def y(self, j):
        return PBWElem(self, {0: self.ring.var(self.iY + j)})

    def C(self, i):
        return PBWElem(self, {0: self.ring.var(self.iC + i)})

    def t(self):
        if not self.deformed:
            raise CherednikError("t exists only in the deformed algebra")
        return PBWElem(self, {0: self.ring.var(self.iT)})

    def euler_element(self):
        """eu = sum_j x_j y_j + sum over reflections s of eps(s) C_s s."""
        ring = self.ring
        ident = ring.zero
        for j in range(self.nV):
            e = list(ring.zero_exp)
            e[self.iX + j] = 1
            e[self.iY + j] = 1
            ident = ident + ring.from_terms([(tuple(e), ring.field.one)])
        coeffs = {0: ident}
        for r in self.group.reflections:
            e = list(ring.zero_exp)
            e[self.iC + r.cls] = 1
            term = ring.from_terms([(tuple(e), r.eps)])
            prev = coeffs.get(r.index)
            coeffs[r.index] = term if prev is None else prev + term
        return PBWElem(self, coeffs)

    # ------------------------------------------------------------ group action

    def act(self, w, p):
        """Action of group element w on a mixed polynomial (C and t are fixed)."""
        if w == 0 or p.is_zero():
            return p
        ring = self.ring
        out = ring.zero
        for e, c in p.d.items():
            img = self._act_mono(w, e)
            out = out + img.scale(c)
        return out

    def _act_mono(self, w, e):
        key = (w, e)
        got = self._act_cache.get(key)
        if got is not None:
            return got
        ring = self.ring
        base = list(ring.zero_exp)
        for i in range(self.nC):
            base[self.iC + i] = e[self.iC + i]
        if self.deformed:
            base[self.iT] = e[self.iT]
        img = ring.from_terms([(tuple(base), ring.field.one)])
        xi = self.group.x_images(w)
        yi = self.group.y_images(w)
        for j in range(self.nV):
            k = e[self.iX + j]
            if k:
                lf = ring.linear_form([(self.iX + i, a) for i, a in enumerate(xi[j]) if a])
                img = img * lf ** k
        for j in range(self.nV):
            k = e[self.iY + j]
            if k:
                lf = ring.linear_form([(self.iY + i, a) for i, a in enumerate(yi[j]) if a])
                img = img * lf ** k
        self._act_cache[key] = img
        return img

    # ------------------------------------------------------- straightening core

    def _delta(self, si, xexp):
        """Delta_s of the pure x-monomial with exponent xexp (x-part of a full tuple)."""
        key = (si, xexp)
        got = self._delta_cache.get(key)
        if got is not None:
            return got
        ring = self.ring
        e = list(ring.zero_exp)
        for j in range(self.nV):
            e[self.iX + j] = xexp[j]
        mono = ring.from_terms([(tuple(e), ring.field.one)])
        s_elem = self.group.reflections[si].index
        diff = mono - self.act(s_elem, mono)
        if diff.is_zero():
            res = ring.zero
        else:
            res = diff.exact_div(self._alpha_poly[si])
        self._delta_cache[key] = res
        return res

    def _split_exp(self, e):
        xpart = tuple(e[self.iX + j] for j in range(self.nV))
        ypart = tuple(e[self.iY + j] for j in range(self.nV))
        return xpart, ypart

    def _join_exp(self, cpart, xpart, ypart, tdeg=0):
        e = list(self.ring.zero_exp)
        for i in range(self.nC):
            e[self.iC + i] = cpart[i]
        for j in range(self.nV):
            e[self.iX + j] = xpart[j]
            e[self.iY + j] = ypart[j]
        if self.deformed and tdeg:
            e[self.iT] = tdeg
        return tuple(e)

    def _straighten(self, ypart, xpart):
        """Normal form of y^ypart * x^xpart as {group index -> mixed polynomial}."""
        key = (ypart, xpart)
        got = self._straighten_cache.get(key)
        if got is not None:
            return got
        ring = self.ring
        if not any(ypart):
            e = self._join_exp((0,) * self.nC, xpart, (0,) * self.nV)
            res = {0: ring.from_terms([(e, ring.field.one)])}
        else:
            j = next(i for i in range(self.nV) if ypart[i])
            rest = list(ypart)
            rest[j] -= 1
            base = self._straighten(tuple(rest), xpart)
            res = self._y_times(j, base)
        self._straighten_cache[key] = res
        return res

    def _y_times(self, j, elem):
        """Left-multiply {w -> poly} by y_j, keeping normal form."""
        ring = self.ring
        group = self.group
        yvar = ring.var(self.iY + j)
        out = {}

        def _acc(w, p):
            if p.is_zero():
                return
            q = out.get(w)
            out[w] = p if q is None else q + p

        for u, g in elem.items():
            # commuting part: y_j slides in from the left of the y-block
            _acc(u, g * yvar)
            # the t-term: t * d/dx_j applied to the x-part
            if self.deformed:
                der = g.derivative(self.iX + j)
                if not der.is_zero():
                    if self.t_bound is None or der.degree_in(self.iT) < self.t_bound:
                        _acc(u, der * ring.var(self.iT))
                    elif self.t_bound is not None:
                        kept = der.filter_terms(lambda e: e[self.iT] < self.t_bound)
                        if not kept.is_zero():
                            _acc(u, kept * ring.var(self.iT))
            # reflection terms: eps(s) <y_j, alpha_s> C_s (Delta_s x s)(g) s
            for si, r in enumerate(group.reflections):
                coef = r.eps * r.alpha[j]
                if not coef:
                    continue
                tw = self._twist(si, g)
                if tw.is_zero():
                    continue
                e = list(ring.zero_exp)
                e[self.iC + r.cls] = 1
                cvar = ring.from_terms([(tuple(e), coef)])
                _acc(group.mul[r.index][u], tw * cvar)
        return out

    def _twist(self, si, g):
        """(Id on C,t) x (Delta_s on x) x (s on y) applied to a mixed polynomial."""
        ring = self.ring
        s_elem = self.group.reflections[si].index
        out = ring.zero
        for e, c in g.d.items():
            xpart, ypart = self._split_exp(e)
            dpart = self._delta(si, xpart)
            if dpart.is_zero():
                continue
            ye = self._join_exp((0,) * self.nC, (0,) * self.nV, ypart)
            ymono = ring.from_terms([(ye, ring.field.one)])
            yimg = self.act(s_elem, ymono)
            rest = list(e)
            for j in range(self.nV):
                rest[self.iX + j] = 0
                rest[self.iY + j] = 0
            restmono = ring.from_terms([(tuple(rest), c)])
            out = out + dpart * yimg * restmono
        return out

    # ------------------------------------------------------------ multiplication

    def _mixed_mul(self, f, g):
        """Product of two mixed coefficient polynomials inside the algebra.

        Returns {group index -> polynomial}: straightening the y-part of f past
        the x-part of g can create group elements.
        """
        ring = self.ring
        out = {}
        for ef, cf in f.d.items():
            xf, yf = self._split_exp(ef)
            pre = list(ef)
            for j in range(self.nV):
                pre[self.iY + j] = 0
            for eg, cg in g.d.items():
                xg, yg = self._split_exp(eg)
                mid = self._straighten(yf, xg)
                post = list(eg)
                for j in range(self.nV):
                    post[self.iX + j] = 0
                if self.deformed and self.t_bound is not None:
                    tpre = pre[self.iT] + post[self.iT]
                    if tpre > self.t_bound:
                        continue
                c = cf * cg
                for u, h in mid.items():
                    if u == 0:
                        tail = ring.from_terms([(tuple(post), c)])
                    else:
                        ypost = tuple(post[self.iY + j] for j in range(self.nV))
                        rest = list(post)
                        for j in range(self.nV):
                            rest[self.iY + j] = 0
                        ye = self._join_exp((0,) * self.nC, (0,) * self.nV, ypost)
                        yimg = self.act(u, ring.from_terms([(ye, ring.field.one)]))
                        tail = yimg * ring.from_terms([(tuple(rest), c)])
                    term = ring.from_terms([(tuple(pre), ring.field.one)]) * h * tail
                    if self.deformed and self.t_bound is not None:
                        term = term.filter_terms(lambda e: e[self.iT] <= self.t_bound)
                    if term.is_zero():
                        continue
                    q = out.get(u)
                    out[u] = term if q is None else q + term
        return out

    def mul(self, a, b):
        self._check(a)
        self._check(b)
        out = {}
        for w, fw in a.coeffs.items():
            for v, gv in b.coeffs.items():
                gv_w = self.act(w, gv)
                mixed = self._mixed_mul(fw, gv_w)
                wv = self.group.mul[w][v]
                for u, h in mixed.items():
                    tgt = self.group.mul[u][wv]
                    q = out.get(tgt)
                    out[tgt] = h if q is None else q + h
        return PBWElem(self, out)

    def commutator(self, a, b):
        return self.mul(a, b) - self.mul(b, a)

    # ------------------------------------------------------------ structure maps

    def trunc(self, h):
        """Identity-component coefficient of the PBW decomposition."""
        self._check(h)
        return h.coeffs.get(0, self.ring.zero)

    def is_central(self, z, with_group=True):
        """True iff z commutes with all x_j, y_j (and the group generators)."""
        self._check(z)
        for j in range(self.nV):
            if self.commutator(z, self.x(j)):
                return False
            if self.commutator(z, self.y(j)):
                return False
        if with_group:
            for g in self.group.gen_indices:
                if self.commutator(z, self.group_element(g)):
                    return False
        return True

    def is_invariant_poly(self, f):
        return all(self.act(g, f) == f for g in self.group.gen_indices)

    def trunc_inverse(self, f, regular_seed=0, validate=False):
        """The unique central element with identity coefficient f.

        f must be a bi-homogeneous W-invariant polynomial in the x,y variables
        with coefficients in C[C]; iterates the commutation identity against a
        fixed regular vector, dividing exactly by the moved linear forms.
        """
        if not isinstance(f, MPoly) or f.ring is not self.ring:
            raise CherednikError("expected a coefficient polynomial of this algebra")
        if f.is_zero():
            return self.zero()
        bd = f.bidegree()
        if bd is None:
            raise CherednikError("truncation inverse needs a bi-homogeneous input")
        if not self.is_invariant_poly(f):
            raise CherednikError("truncation inverse needs a W-invariant input")
        group = self.group
        ring = self.ring
        delta = min(bd)
        v = group.regular_vector(seed=regular_seed)
        # linear forms y_reg - w(y_reg) per group element
        yreg = ring.linear_form([(self.iY + j, a) for j, a in enumerate(v) if a])
        moved = {}
        for w in range(1, group.order):
            imgs = group.y_images(w)
            coeffs = [sum((a * imgs[j][i] for j, a in enumerate(v) if a), group.field.zero) for i in range(self.nV)]
            form = yreg - ring.linear_form([(self.iY + i, a) for i, a in enumerate(coeffs) if a])
            if form.is_zero():
                raise CherednikError("vector is not regular")
            moved[w] = form
        cur = {w: ring.zero for w in range(1, group.order)}
        cur[0] = f
        for _ in range(delta):
            nxt = {0: f}
            for w in range(1, group.order):
                rhs = ring.zero
                for si, r in enumerate(group.reflections):
                    pair = group.field.zero
                    for j, a in enumerate(v):
                        if a and r.alpha[j]:
                            pair = pair + r.alpha[j] * a
                    if not pair:
                        continue
                    src = cur[group.mul[group.inv[r.index]][w]]
                    if src.is_zero():
                        continue
                    tw = self._twist(si, src)
                    if tw.is_zero():
                        continue
                    e = list(ring.zero_exp)
                    e[self.iC + r.cls] = 1
                    rhs = rhs + tw * ring.from_terms([(tuple(e), -(r.eps * pair))])
                nxt[w] = rhs.exact_div(moved[w]) if rhs else ring.zero
            cur = nxt
        z = PBWElem(self, cur)
        if validate and not self.is_central(z):
            raise CherednikError("truncation inverse failed the centrality check")
        return z

    # ------------------------------------------------------------- specialization

    def specialize_params(self, h, cvals):
        """Substitute numeric values for the C variables."""
        self._check(h)
        if len(cvals) != self.nC:
            raise CherednikError("expected %d parameter values" % self.nC)
        images = {self.iC + i: self.group.field.of(c) for i, c in enumerate(cvals)}
        return PBWElem(self, {w: p.substitute(images) for w, p in h.coeffs.items()})


def poisson_bracket(alg0, alg_t, z1, z2):
    """{z1, z2} = [z1^t, z2^t] / t at t=0, computed in the deformed algebra.

    z1, z2 live in the undeformed algebra alg0; their PBW coefficients are
    reinterpreted in alg_t, the commutator is formed with t-degree truncated at
    1, the t-free part must cancel, and the t-linear part is returned in alg0.
    """
    if alg_t.group is not alg0.group or not alg_t.deformed or alg0.deformed:
        raise CherednikError("need matching undeformed and deformed algebras")
    lift1 = PBWElem(alg_t, {w: _lift_poly(alg_t, p) for w, p in z1.coeffs.items()})
    lift2 = PBWElem(alg_t, {w: _lift_poly(alg_t, p) for w, p in z2.coeffs.items()})
    comm = alg_t.commutator(lift1, lift2)
    out = {}
    for w, p in comm.coeffs.items():
        t0 = p.filter_terms(lambda e: e[alg_t.iT] == 0)
        if not t0.is_zero():
            raise CherednikError("commutator does not vanish at t=0; inputs not central")
        t1 = p.filter_terms(lambda e: e[alg_t.iT] == 1)
        if t1.is_zero():
            continue
        out[w] = _drop_t(alg0, t1)
    return PBWElem(alg0, out)


def _lift_poly(alg_t, p):
    ring = alg_t.ring
    return ring.from_terms([(e + (0,), c) for e, c in p.d.items()])


def _drop_t(alg0, p):
    ring = alg0.ring
    return ring.from_terms([(e[:-1], c) for e, c in p.d.items()])
