"""The center of the rational Cherednik algebra at t=0.

Pipeline: bigraded Molien series -> minimal fundamental invariants of the
doubled action on V x V* (Reynolds averaging with per-bidegree linear-algebra
minimality) -> center generators via the truncation inverse -> presentation of
the center by lifting kernel generators of the commutative specialization ->
Poisson brackets through the t-deformation.
"""

import itertools

from .exact.mpoly import MPoly, PolyRing, grevlex_key
from .exact.linalg import solve
from .exact.groebner import algebra_map_kernel, make_order, reduce_poly, groebner_basis
from .algebra import CherednikAlgebra, PBWElem, CherednikError
from .algebra import poisson_bracket as _poisson_raw


class CenterError(ValueError):
    pass


# --------------------------------------------------------------------- series


def _det_one_minus_q(field, A):
    """Coefficient list of det(I - q*A) as a polynomial in q."""
    n = len(A)
    coeffs = [field.zero] * (n + 1)
    for perm in itertools.permutations(range(n)):
        sign = _perm_sign(perm)
        # product over i of (delta_{i,perm(i)} - q*A[i][perm(i)])
        prod = [field.one if sign > 0 else -field.one]
        for i in range(n):
            const = field.one if perm[i] == i else field.zero
            lin = -A[i][perm[i]]
            nxt = [field.zero] * (len(prod) + 1)
            for k, c in enumerate(prod):
                if c:
                    if const:
                        nxt[k] = nxt[k] + c * const
                    if lin:
                        nxt[k + 1] = nxt[k + 1] + c * lin
            prod = nxt
        for k, c in enumerate(prod):
            coeffs[k] = coeffs[k] + c
    return coeffs


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _series_inverse(field, coeffs, bound):
    """Power-series inverse of a polynomial with nonzero constant term."""
    a0 = coeffs[0]
    inv0 = field.inv(a0)
    out = [inv0] + [field.zero] * bound
    for k in range(1, bound + 1):
        s = field.zero
        for i in range(1, min(k, len(coeffs) - 1) + 1):
            if coeffs[i] and out[k - i]:
                s = s + coeffs[i] * out[k - i]
        out[k] = -(inv0 * s)
    return out


def molien_bigraded(group, bound):
    """{(d,e): dim of W-invariants of x-degree d, y-degree e} for d+e <= bound."""
    f = group.field
    acc = {}
    for w in range(group.order):
        M = group.elements[w]
        Minv = group.elements[group.inv[w]]
        cq = _series_inverse(f, _det_one_minus_q(f, Minv), bound)
        cp = _series_inverse(f, _det_one_minus_q(f, M), bound)
        for d in range(bound + 1):
            if not cq[d]:
                continue
            for e in range(bound + 1 - d):
                if not cp[e]:
                    continue
                key = (d, e)
                prev = acc.get(key)
                term = cq[d] * cp[e]
                acc[key] = term if prev is None else prev + term
    out = {}
    order = f.of(group.order)
    for key, v in acc.items():
        q = f.to_rational(v * f.inv(order))
        if q.denominator != 1:
            raise CenterError("Molien coefficient is not an integer at %r" % (key,))
        if int(q) :
            out[key] = int(q)
    return out


# ----------------------------------------------------------- invariant systems


class _Span:
    """Incremental row space in echelon form over an exact field."""

    def __init__(self, field, width):
        self.field = field
        self.width = width
        self.rows = {}  # pivot index -> normalized row (list)

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, vec):
        f = self.field
        v = list(vec)
        for p in sorted(self.rows):
            c = v[p]
            if c:
                row = self.rows[p]
                for i in range(p, self.width):
                    if row[i]:
                        v[i] = v[i] - c * row[i]
        return v

    def insert(self, vec):
        """Reduce and add if independent; returns True when rank grew."""
        v = self.reduce(vec)
        pivot = next((i for i, c in enumerate(v) if c), None)
        if pivot is None:
            return False
        inv = self.field.inv(v[pivot])
        self.rows[pivot] = [c * inv for c in v]
        return True


class InvariantSystem:
    """Minimal bi-homogeneous generators of C[V x V*]^W with Molien data."""

    def __init__(self, group, ring, gens, bidegrees, molien, degree_bound, complete):
        self.group = group
        self.ring = ring
        self.gens = gens
        self.bidegrees = bidegrees
        self.molien = molien
        self.degree_bound = degree_bound
        self.complete = complete
        self._prod_cache = {(): ring.one}
        self._act_cache = {}
        self._reynolds_cache = {}

    # -- W-action on the doubled polynomial ring

    def act(self, w, p):
        out = self.ring.zero
        for e, c in p.d.items():
            out = out + self._act_mono(w, e).scale(c)
        return out

    def _act_mono(self, w, e):
        key = (w, e)
        got = self._act_cache.get(key)
        if got is not None:
            return got
        ring = self.ring
        n = self.group.dim
        img = ring.one
        xi = self.group.x_images(w)
        yi = self.group.y_images(w)
        for j in range(n):
            if e[j]:
                lf = ring.linear_form([(i, a) for i, a in enumerate(xi[j]) if a])
                img = img * lf ** e[j]
            if e[n + j]:
                lf = ring.linear_form([(n + i, a) for i, a in enumerate(yi[j]) if a])
                img = img * lf ** e[n + j]
        self._act_cache[key] = img
        return img

    def reynolds(self, e):
        """Group average of the monomial with exponent tuple e."""
        got = self._reynolds_cache.get(e)
        if got is not None:
            return got
        f = self.group.field
        total = self.ring.zero
        for w in range(self.group.order):
            total = total + self._act_mono(w, e)
        res = total.scale(f.inv(f.of(self.group.order)))
        self._reynolds_cache[e] = res
        return res

    def is_invariant(self, p):
        return all(self.act(g, p) == p for g in self.group.gen_indices)

    # -- monomials in the generators

    def gen_monomials(self, bidegree):
        """Sparse exponent keys ((gen index, exp), ...) of weighted bi-degree."""
        out = []

        def rec(i, remaining, acc):
            if remaining == (0, 0):
                out.append(tuple(acc))
                return
            if i >= len(self.gens):
                return
            bd = self.bidegrees[i]
            kmax = min(
                remaining[0] // bd[0] if bd[0] else remaining[1] // bd[1],
                remaining[1] // bd[1] if bd[1] else remaining[0] // bd[0],
            )
            for k in range(kmax, -1, -1):
                rem = (remaining[0] - k * bd[0], remaining[1] - k * bd[1])
                if rem[0] < 0 or rem[1] < 0:
                    continue
                rec(i + 1, rem, acc + ([(i, k)] if k else []))

        rec(0, bidegree, [])
        return out

    def product(self, key):
        """The polynomial for a sparse generator-exponent key."""
        got = self._prod_cache.get(key)
        if got is not None:
            return got
        i, k = key[-1]
        sub = key[:-1] + (((i, k - 1),) if k > 1 else ())
        res = self.product(sub) * self.gens[i]
        self._prod_cache[key] = res
        return res


def invariant_ring(group):
    n = group.dim
    names = ["x%d" % (j + 1) for j in range(n)] + ["y%d" % (j + 1) for j in range(n)]
    return PolyRing(group.field, names, bidegrees=[(1, 0)] * n + [(0, 1)] * n)


def fundamental_invariants(group, degree_bound=None):
    """Minimal bi-homogeneous generating system of C[V x V*]^W.

    Scans bi-degrees by increasing total degree; at each slice compares the
    span of products of earlier generators against the full invariant space
    (dimension given by the Molien series) and completes a basis with Reynolds
    averages when the decomposable span falls short.
    """
    bound = group.order if degree_bound is None else degree_bound
    molien = molien_bigraded(group, bound)
    ring = invariant_ring(group)
    sys = InvariantSystem(group, ring, [], [], molien, bound, complete=False)
    field = group.field
    for total in range(1, bound + 1):
        for d in range(total + 1):
            e = total - d
            m = molien.get((d, e), 0)
            if not m:
                continue
            monos = sorted(ring.monomials_of_bidegree((d, e)), key=grevlex_key, reverse=True)
            index = {mo: i for i, mo in enumerate(monos)}
            span = _Span(field, len(monos))
            for key in sys.gen_monomials((d, e)):
                if not key:
                    continue
                p = sys.product(key)
                span.insert(_vec(p, index, field))
            if span.rank > m:
                raise CenterError("decomposable span exceeds the Molien dimension")
            if span.rank == m:
                continue
            ispan = _Span(field, len(monos))
            for mo in monos:
                r = sys.reynolds(mo)
                if not r.is_zero():
                    ispan.insert(_vec(r, index, field))
            if ispan.rank != m:
                raise CenterError(
                    "invariant slice dimension %d disagrees with Molien %d at %r"
                    % (ispan.rank, m, (d, e))
                )
            added = 0
            for pivot in sorted(ispan.rows):
                row = ispan.rows[pivot]
                if span.insert(row):
                    p = ring.from_terms([(monos[i], c) for i, c in enumerate(row) if c])
                    sys.gens.append(p.content_normalize()[0])
                    sys.bidegrees.append((d, e))
                    added += 1
            if span.rank != m:
                raise CenterError("could not complete the invariant slice at %r" % ((d, e),))
    sys.complete = _krull_witness(group, ring, sys)
    return sys


def _vec(p, index, field):
    v = [field.zero] * len(index)
    for e, c in p.d.items():
        v[index[e]] = c
    return v


def _krull_witness(group, ring, sys):
    """2n algebraically independent members: the x-only and y-only generators."""
    n = group.dim
    x_only = [g for g, bd in zip(sys.gens, sys.bidegrees) if bd[1] == 0]
    y_only = [g for g, bd in zip(sys.gens, sys.bidegrees) if bd[0] == 0]
    if len(x_only) != n or len(y_only) != n:
        return False
    jx = _poly_det([[g.derivative(j) for j in range(n)] for g in x_only])
    jy = _poly_det([[g.derivative(n + j) for j in range(n)] for g in y_only])
    return not jx.is_zero() and not jy.is_zero()


def _poly_det(rows):
    n = len(rows)
    ring = rows[0][0].ring
    out = ring.zero
    for perm in itertools.permutations(range(n)):
        term = ring.one if _perm_sign(perm) > 0 else ring.one.scale(ring.field.of(-1))
        for i in range(n):
            term = term * rows[i][perm[i]]
        out = out + term
    return out


# ----------------------------------------------------------- center generators


def embed_invariant(alg, f):
    """Map a polynomial on V x V* into the algebra's coefficient ring."""
    ring = alg.ring
    n = alg.nV
    terms = []
    for e, c in f.d.items():
        full = [0] * ring.n
        for j in range(2 * n):
            full[alg.iX + j] = e[j]
        terms.append((tuple(full), c))
    return ring.from_terms(terms)


def retract_invariant(alg, ring_xy, f):
    """Inverse of embed_invariant; the C (and t) exponents must vanish."""
    n = alg.nV
    terms = []
    for e, c in f.d.items():
        if any(e[alg.iC + i] for i in range(alg.nC)):
            raise CenterError("polynomial has parameter variables")
        if alg.deformed and e[alg.iT]:
            raise CenterError("polynomial has the deformation variable")
        terms.append((tuple(e[alg.iX : alg.iX + 2 * n]), c))
    return ring_xy.from_terms(terms)


def center_generators(alg, sys):
    """trunc_inverse of every fundamental invariant, in system order."""
    if alg.group is not sys.group:
        raise CenterError("algebra and invariant system use different groups")
    return [alg.trunc_inverse(embed_invariant(alg, g)) for g in sys.gens]


# ------------------------------------------------------------------ the map pi


class CenterMap:
    """pi: C[C-vars][z-vars] -> Z(H), z_i -> center generator i.

    Also carries the commutative specialization pi0: C[z] -> C[V x V*]^W and
    the preimage machinery (induction on min(d,e) with the C-adic splitting).
    """

    def __init__(self, alg, sys, zgens=None):
        self.alg = alg
        self.sys = sys
        self.zgens = center_generators(alg, sys) if zgens is None else zgens
        field = alg.group.field
        cnames = ["C%d" % (i + 1) for i in range(alg.nC)]
        znames = ["z%d" % (i + 1) for i in range(len(self.zgens))]
        bidegrees = [(1, 1)] * alg.nC + list(sys.bidegrees)
        self.ring_z = PolyRing(field, cnames + znames, bidegrees=bidegrees)
        self.nC = alg.nC
        self.nz = len(self.zgens)
        self._pbw_cache = {(): alg.one()}

    # -- evaluation

    def _zprod(self, key):
        got = self._pbw_cache.get(key)
        if got is not None:
            return got
        i, k = key[-1]
        sub = key[:-1] + (((i, k - 1),) if k > 1 else ())
        res = self.alg.mul(self._zprod(sub), self.zgens[i])
        self._pbw_cache[key] = res
        return res

    def pi(self, F):
        """Evaluate a polynomial in (C-vars, z-vars) in the algebra."""
        if F.ring is not self.ring_z:
            raise CenterError("expected a polynomial in the presentation ring")
        alg = self.alg
        out = alg.zero()
        for e, c in F.d.items():
            zkey = tuple((i, e[self.nC + i]) for i in range(self.nz) if e[self.nC + i])
            zpart = self._zprod(zkey)
            ce = [0] * alg.ring.n
            for i in range(self.nC):
                ce[alg.iC + i] = e[i]
            cmono = alg.ring.from_terms([(tuple(ce), c)])
            out = out + zpart.scale(cmono)
        return out

    def pi0(self, F):
        """Commutative evaluation z_i -> fundamental invariant i (C-vars must be absent)."""
        out = self.sys.ring.zero
        for e, c in F.d.items():
            if any(e[i] for i in range(self.nC)):
                raise CenterError("pi0 input must be free of parameter variables")
            zkey = tuple((i, e[self.nC + i]) for i in range(self.nz) if e[self.nC + i])
            out = out + self.sys.product(zkey).scale(c)
        return out

    def z_var(self, i):
        return self.ring_z.var(self.nC + i)

    def c_var(self, i):
        return self.ring_z.var(i)

    # -- splitting a C-multiple

    def split_C0(self, u):
        """Decompose a central u with trunc(u) in C0*(...) as sum_s C_s h_s.

        Groups trunc(u) by the first parameter variable occurring in each
        term, pulls each part back through trunc_inverse; returns
        {C index: central h}, with sum_i C_i h_i == u exactly.
        """
        alg = self.alg
        if u.is_zero():
            return {}
        tr = alg.trunc(u)
        parts = {}
        for e, c in tr.d.items():
            idx = next((i for i in range(self.nC) if e[alg.iC + i]), None)
            if idx is None:
                raise CenterError("truncation has a parameter-free term")
            e2 = list(e)
            e2[alg.iC + idx] -= 1
            parts.setdefault(idx, []).append((tuple(e2), c))
        out = {}
        check = alg.zero()
        for idx in sorted(parts):
            g = alg.ring.from_terms(parts[idx])
            h = self._trunc_inverse_graded(g)
            out[idx] = h
            check = check + h.scale(alg.ring.var(alg.iC + idx))
        if not (check - u).is_zero():
            raise CenterError("C-adic splitting failed to reassemble the input")
        return out

    def _trunc_inverse_graded(self, g):
        by_bd = {}
        for e, c in g.d.items():
            bd = g.ring.mono_bidegree(e)
            by_bd.setdefault(bd, []).append((e, c))
        total = self.alg.zero()
        for bd in sorted(by_bd):
            part = g.ring.from_terms(by_bd[bd])
            total = total + self.alg.trunc_inverse(part)
        return total

    # -- preimages

    def preimage(self, z, validate=False):
        """Bi-homogeneous F in (C-vars, z-vars) with pi(F) = z."""
        if z.is_zero():
            return self.ring_z.zero
        bd = z.bidegree()
        if bd is None:
            raise CenterError("preimage needs a bi-homogeneous input")
        F = self._preimage_rec(z, bd)
        if validate and not (self.pi(F) - z).is_zero():
            raise CenterError("preimage verification failed")
        return F

    def _preimage_rec(self, z, bd):
        alg = self.alg
        field = alg.group.field
        ring_xy = self.sys.ring
        # step 1: solve the commutative problem modulo C0
        tr = alg.trunc(z)
        z0_terms = [(e, c) for e, c in tr.d.items() if not any(e[alg.iC + i] for i in range(self.nC))]
        F0 = self.ring_z.zero
        if z0_terms:
            z0 = retract_invariant(alg, ring_xy, alg.ring.from_terms(z0_terms))
            zkeys = self.sys.gen_monomials(bd)
            monos = sorted(ring_xy.monomials_of_bidegree(bd), key=grevlex_key, reverse=True)
            index = {mo: i for i, mo in enumerate(monos)}
            cols = []
            for key in zkeys:
                cols.append(_vec(self.sys.product(key), index, field))
            rows = [[cols[j][i] for j in range(len(cols))] for i in range(len(monos))]
            rhs = _vec(z0, index, field)
            sol = solve(field, rows, rhs) if cols else None
            if sol is None:
                raise CenterError("commutative preimage failed; invariant system incomplete?")
            terms = []
            for key, c in zip(zkeys, sol):
                if c:
                    e = [0] * self.ring_z.n
                    for i, k in key:
                        e[self.nC + i] = k
                    terms.append((tuple(e), c))
            F0 = self.ring_z.from_terms(terms)
        u = self.pi(F0) - z
        if u.is_zero():
            return F0
        F = F0
        for idx, h in self.split_C0(u).items():
            if h.is_zero():
                continue
            Fh = self._preimage_rec(h, h.bidegree())
            F = F - Fh * self.c_var(idx)
        return F


# ---------------------------------------------------------------- presentation


class CenterPresentation:
    """Generators and relations of the center as a C[C]-algebra."""

    def __init__(self, cmap, rho0, relations):
        self.cmap = cmap
        self.gens = cmap.zgens
        self.ring_z = cmap.ring_z
        self.rho0 = rho0
        self.relations = relations

    def relation_bidegrees(self):
        return [r.bidegree() for r in self.relations]


def kernel_pi0(sys, budget=None):
    """(z-only ring, Groebner basis of Ker(pi0), minimal generators)."""
    znames = ["z%d" % (i + 1) for i in range(len(sys.gens))]
    Zring, gb = algebra_map_kernel(sys.gens, znames, new_bidegrees=sys.bidegrees, budget=budget)
    minimal = _minimal_ideal_generators(Zring, gb)
    return Zring, gb, minimal


def _minimal_ideal_generators(Zring, gb):
    """Graded minimal generators of the bi-homogeneous ideal spanned by gb."""
    field = Zring.field
    by_bd = {}
    for g in gb:
        bd = g.bidegree()
        if bd is None:
            raise CenterError("kernel generator is not bi-homogeneous")
        by_bd.setdefault(bd, []).append(g)
    minimal = []
    for bd in sorted(by_bd, key=lambda b: (b[0] + b[1], b)):
        monos = sorted(Zring.monomials_of_bidegree(bd), key=grevlex_key, reverse=True)
        index = {mo: i for i, mo in enumerate(monos)}
        span = _Span(field, len(monos))
        for g in gb:
            gbd = g.bidegree()
            if gbd == bd:
                continue
            rem = (bd[0] - gbd[0], bd[1] - gbd[1])
            if rem[0] < 0 or rem[1] < 0:
                continue
            for me in Zring.monomials_of_bidegree(rem):
                prod = g * MPoly(Zring, {me: field.one})
                span.insert(_vec(prod, index, field))
        for g in sorted(by_bd[bd], key=lambda p: grevlex_key(p.leading()[0])):
            if span.insert(_vec(g, index, field)):
                minimal.append(g.content_normalize()[0])
    minimal.sort(key=lambda p: (sum(p.bidegree()), p.bidegree(), grevlex_key(p.leading()[0])))
    return minimal


def presentation(alg, sys, budget=None, validate=True):
    """Relations of the center: lift each minimal kernel generator of pi0."""
    cmap = CenterMap(alg, sys)
    Zring, gb, minimal = kernel_pi0(sys, budget=budget)
    relations = []
    for rho0 in minimal:
        F = _lift_z_only(cmap, rho0)
        u = cmap.pi(F)
        rho = F
        if not u.is_zero():
            for idx, h in cmap.split_C0(u).items():
                if h.is_zero():
                    continue
                Fh = cmap.preimage(h)
                rho = rho - Fh * cmap.c_var(idx)
        if validate and not cmap.pi(rho).is_zero():
            raise CenterError("lifted relation does not vanish in the algebra")
        relations.append(rho)
    pres = CenterPresentation(cmap, minimal, relations)
    pres.Zring = Zring
    pres.kernel_gb = gb
    return pres


def _lift_z_only(cmap, p):
    terms = []
    for e, c in p.d.items():
        full = [0] * cmap.ring_z.n
        for i, k in enumerate(e):
            full[cmap.nC + i] = k
        terms.append((tuple(full), c))
    return cmap.ring_z.from_terms(terms)


def hilbert_quotient_dims(Zring, gb, bound):
    """Bigraded dimensions of Zring/<gb> by counting standard monomials."""
    leads = [g.leading()[0] for g in gb]
    out = {}
    for total in range(bound + 1):
        for d in range(total + 1):
            e = total - d
            cnt = 0
            for mo in Zring.monomials_of_bidegree((d, e)):
                if not any(all(a <= b for a, b in zip(le, mo)) for le in leads):
                    cnt += 1
            if cnt:
                out[(d, e)] = cnt
    return out


# ------------------------------------------------------------------- Poisson


_DEFORMED_CACHE = {}


def deformed_twin(alg):
    if alg not in _DEFORMED_CACHE:
        _DEFORMED_CACHE[alg] = CherednikAlgebra(alg.group, deformed=True, t_bound=1)
    return _DEFORMED_CACHE[alg]


def poisson_bracket(alg, a, b):
    """{a,b} as the t-linear part of the deformed commutator; a, b central."""
    out = _poisson_raw(alg, deformed_twin(alg), a, b)
    bda, bdb = a.bidegree(), b.bidegree()
    if bda and bdb and out:
        want = (bda[0] + bdb[0] - 1, bda[1] + bdb[1] - 1)
        if out.bidegree() != want:
            raise CenterError("Poisson bracket broke the bi-grading")
    return out


def poisson_matrix(alg, sys, cmap=None):
    """Matrix of {z_i,z_j} expressed back through the presentation variables."""
    if cmap is None:
        cmap = CenterMap(alg, sys)
    zg = cmap.zgens
    n = len(zg)
    rows = [[cmap.ring_z.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            br = poisson_bracket(alg, zg[i], zg[j])
            F = cmap.preimage(br) if br else cmap.ring_z.zero
            rows[i][j] = F
            rows[j][i] = F.scale(alg.group.field.of(-1))
    return rows
