"""Cellular characters from Gaudin operators on the group algebra.

For a parameter point c (one value per reflection class) and vectors y, v with
v off every reflecting hyperplane, the Gaudin operator

    D = sum over reflections s of  eps(s) * c_s * <y, alpha_s> / alpha_s(v) * s

acts by left translation on the group algebra k[W].  Right translation by W
commutes with D, so every generalized eigenspace of D is a W-module under
right translation; its character, divided by the degree of the irreducible
factor of the characteristic polynomial that cut it out, has nonnegative
integer multiplicities.  The set of these characters is independent of the
sample (y, v) as long as the sample is generic; genericity is certified here
by re-running at independent samples until two runs of maximal square-free
degree produce identical character sets.

The same operator can be run through an exact matrix model of a single
irreducible character instead of the full group algebra; the kernel dimensions
then recover the multiplicity of that character alone, and assembling the runs
over every irreducible reproduces the full decomposition.
"""

import random

from .exact.scalars import rat
from .exact.linalg import Mat, kernel_basis, solve_matrix, charpoly, rref
from .exact.upoly import UPoly, squarefree_part
from .exact.factor import factor_irreducible


class CellsError(Exception):
    pass


RETRY_BUDGET = 32
_SAMPLE_BOUND = 4


# ------------------------------------------------------------------ parameters


def class_values(group, c):
    """Per-reflection-class parameter values as field elements.

    Accepts a list aligned with the reflection classes, a single scalar for
    one-class groups, or a dict of hyperplane coordinates (K-names and their
    aliases, as accepted by the families module)."""
    f = group.field
    if isinstance(c, dict):
        from .families import k_point

        return group.c_of_k(k_point(group, c))
    if not isinstance(c, (list, tuple)):
        c = [c]
    if len(c) != group.n_param:
        raise CellsError("expected %d parameter values, got %d" % (group.n_param, len(c)))
    return [f.of(v) for v in c]


def is_regular(group, v):
    """True when v lies on no reflecting hyperplane."""
    f = group.field
    vv = [f.of(a) for a in v]
    for alpha in group.hyperplanes:
        s = f.zero
        for a, b in zip(alpha, vv):
            if a and b:
                s = s + a * b
        if not s:
            return False
    return True


# -------------------------------------------------------------- Gaudin matrix


def _lifter(group, field):
    """Coercion from the group's scalars into the working field."""
    if field is None or field is group.field:
        return group.field, lambda a: a
    if group.field.conductor != 1:
        raise CellsError("scalar promotion is only supported from the rational field")
    return field, field.of


def gaudin_matrix(group, c, y, v, rep=None, field=None):
    """Exact matrix of D = sum_s eps(s) c_s <y, alpha_s>/alpha_s(v) s.

    With rep=None the operator acts by left translation on the group algebra
    (size |W|); with rep an irreducible character index it acts through an
    exact matrix model of that character (size equal to its degree).  v must
    avoid every reflecting hyperplane."""
    f, lift = _lifter(group, field)
    gf = group.field
    n = group.dim
    if len(y) != n or len(v) != n:
        raise CellsError("y and v must have %d coordinates" % n)
    yy = [gf.of(a) for a in y]
    vv = [gf.of(a) for a in v]
    cvals = class_values(group, c)
    model = None
    if rep is None:
        N = group.order
    else:
        model = irreducible_model(group, rep)
        N = len(model[0])
    D = Mat.zeros(f, N, N)
    for r in group.reflections:
        av = gf.zero
        pair = gf.zero
        for a, b, w in zip(r.alpha, vv, yy):
            if a:
                if b:
                    av = av + a * b
                if w:
                    pair = pair + a * w
        if not av:
            raise CellsError("v lies on a reflecting hyperplane")
        coeff = r.eps * cvals[r.cls] * pair * gf.inv(av)
        if not coeff:
            continue
        coeff = lift(coeff)
        if rep is None:
            mul_s = group.mul[r.index]
            for j in range(N):
                i = mul_s[j]
                D.rows[i][j] = D.rows[i][j] + coeff
        else:
            M = model[r.index]
            for i in range(N):
                row = D.rows[i]
                Mi = M[i]
                for j in range(N):
                    if Mi[j]:
                        row[j] = row[j] + coeff * lift(Mi[j])
    return D


# -------------------------------------------------------- irreducible models

_MODEL_CACHE = {}


def _kron(f, A, B):
    na, nb = len(A), len(B)
    out = [[f.zero] * (na * nb) for _ in range(na * nb)]
    for i in range(na):
        for k in range(na):
            a = A[i][k]
            if not a:
                continue
            for j in range(nb):
                Bj = B[j]
                orow = out[i * nb + j]
                for l in range(nb):
                    if Bj[l]:
                        orow[k * nb + l] = a * Bj[l]
    return out


def _inner_product(group, values, chi):
    """<values, chi> for a class function given per element, as an exact integer."""
    f = group.field
    tot = f.zero
    for cls in group.classes:
        w = cls[0]
        tot = tot + f.of(len(cls)) * values[w] * group.character_value(chi, group.inv[w])
    q = f.to_rational(tot) / group.order
    if q.denominator != 1:
        raise CellsError("character pairing is not integral")
    return int(q)


def irreducible_model(group, chi):
    """Exact matrices of the chi-th irreducible character, one per element.

    Degree-one characters are their own model; higher-degree characters are
    cut out of the smallest tensor power of the defining representation
    (twisted by a degree-one character) that contains them exactly once."""
    key = (group, chi)
    if key in _MODEL_CACHE:
        return _MODEL_CACHE[key]
    f = group.field
    degs = group.character_degrees()
    if not 0 <= chi < len(degs):
        raise CellsError("no irreducible character with index %d" % chi)
    d = degs[chi]
    if d == 1:
        model = [((group.character_value(chi, w),),) for w in range(group.order)]
        _MODEL_CACHE[key] = model
        return model
    linear = [i for i, dd in enumerate(degs) if dd == 1]
    refl_tr = [sum((group.elements[w][i][i] for i in range(group.dim)), f.zero) for w in range(group.order)]
    found = None
    for a in range(1, 5):
        powers = [t**a for t in refl_tr]
        for lam in linear:
            vals = [powers[w] * group.character_value(lam, w) for w in range(group.order)]
            if _inner_product(group, vals, chi) == 1:
                found = (a, lam)
                break
        if found:
            break
    if found is None:
        raise CellsError("no tensor-power realization found for character %d" % chi)
    a, lam = found
    big = []
    for w in range(group.order):
        T = [[x for x in row] for row in group.elements[w]]
        for _ in range(a - 1):
            T = _kron(f, T, [list(row) for row in group.elements[w]])
        lv = group.character_value(lam, w)
        if lv != f.one:
            T = [[lv * x for x in row] for row in T]
        big.append(T)
    nt = len(big[0])
    # isotypic projector onto the single copy of chi inside the tensor space
    proj = [[f.zero] * nt for _ in range(nt)]
    for w in range(group.order):
        cv = group.character_value(chi, group.inv[w])
        if not cv:
            continue
        Tw = big[w]
        for i in range(nt):
            pi = proj[i]
            Ti = Tw[i]
            for j in range(nt):
                if Ti[j]:
                    pi[j] = pi[j] + cv * Ti[j]
    scal = f.of(d) * f.inv(f.of(group.order))
    proj = [[scal * x for x in row] for row in proj]
    # basis of the image: row space of the transpose
    cols = [[proj[i][j] for i in range(nt)] for j in range(nt)]
    basis_rows, _ = rref(f, cols)
    if len(basis_rows) != d:
        raise CellsError("isotypic projector rank %d, expected %d" % (len(basis_rows), d))
    bas = [[basis_rows[k][i] for k in range(d)] for i in range(nt)]  # nt x d
    model = []
    for w in range(group.order):
        Tw = big[w]
        tb_cols = []
        for k in range(d):
            tb_cols.append([sum((Tw[i][j] * bas[j][k] for j in range(nt) if Tw[i][j] and bas[j][k]), f.zero) for i in range(nt)])
        sol = solve_matrix(f, bas, tb_cols)
        if sol is None:
            raise CellsError("tensor subspace is not stable under the group action")
        model.append(tuple(tuple(sol[k][i] for k in range(d)) for i in range(d)))
    for w in range(group.order):
        tr = sum((model[w][i][i] for i in range(d)), f.zero)
        if tr != group.character_value(chi, w):
            raise CellsError("model trace mismatch at element %d" % w)
    for g in group.gen_indices:
        Mg = model[g]
        for w in range(group.order):
            Mw = model[w]
            Mp = model[group.mul[g][w]]
            for i in range(d):
                for j in range(d):
                    s = sum((Mg[i][k] * Mw[k][j] for k in range(d) if Mg[i][k] and Mw[k][j]), f.zero)
                    if s != Mp[i][j]:
                        raise CellsError("model is not multiplicative")
    _MODEL_CACHE[key] = model
    return model


# ------------------------------------------------------------ matrix helpers


def _poly_at_matrix(p, M):
    """p(M) by Horner's rule."""
    f = M.field
    n = M.nrows
    out = Mat.zeros(f, n, n)
    for c in reversed(p.c):
        out = out * M
        if c:
            for i in range(n):
                out.rows[i][i] = out.rows[i][i] + c
    return out


def _mat_power(M, k):
    f = M.field
    out = Mat.identity(f, M.nrows)
    base = M
    while k:
        if k & 1:
            out = out * base
        k >>= 1
        if k:
            base = base * base
    return out


def _valuation(p, q):
    """Largest n with q^n dividing p."""
    n = 0
    while True:
        quo, rem = p.divmod(q)
        if rem.c:
            return n
        p = quo
        n += 1


# ------------------------------------------------------------------- results


class CellularCharacter:
    """One character of the decomposition: multiplicities per irreducible plus
    the degree of the characteristic-polynomial factor it was divided by."""

    __slots__ = ("mults", "defect", "factor", "power", "kernel_dim")

    def __init__(self, mults, defect, factor=None, power=None, kernel_dim=None):
        self.mults = tuple(int(m) for m in mults)
        self.defect = int(defect)
        self.factor = factor
        self.power = power
        self.kernel_dim = kernel_dim

    def __eq__(self, other):
        return isinstance(other, CellularCharacter) and self.mults == other.mults

    def __hash__(self):
        return hash(self.mults)

    def support(self):
        return tuple(i for i, m in enumerate(self.mults) if m)

    def __repr__(self):
        return "CellularCharacter(%r, defect=%d)" % (self.mults, self.defect)


class CellularResult:
    """Outcome of one decomposition run: one entry per irreducible factor."""

    def __init__(self, group, field, point, entries, seed=None, samples=None):
        self.group = group
        self.field = field
        self.point = point
        self.entries = list(entries)
        self.seed = seed
        self.samples = samples

    @property
    def sqfree_degree(self):
        return sum(e.factor.degree() if e.factor is not None else e.defect for e in self.entries)

    def character_set(self):
        return frozenset(e.mults for e in self.entries)

    def characters(self):
        """Distinct cellular characters, canonically ordered."""
        seen = {}
        for e in self.entries:
            if e.mults not in seen:
                seen[e.mults] = e
        return sorted(seen.values(), key=lambda e: e.mults, reverse=True)

    def __repr__(self):
        return "CellularResult(%s, %d factors, %d distinct)" % (
            self.group.name,
            len(self.entries),
            len(self.characters()),
        )


# ---------------------------------------------------------------- main runs


def _right_character(group, f, basis):
    """Character of right translation on the span of the given vectors."""
    m = len(basis)
    out = []
    if m == 0:
        return [f.zero] * len(group.classes)
    rows = [[basis[k][i] for k in range(m)] for i in range(len(basis[0]))]
    for cls in group.classes:
        w = cls[0]
        winv = group.inv[w]
        cols = [[basis[k][group.mul[i][winv]] for i in range(len(basis[0]))] for k in range(m)]
        sol = solve_matrix(f, rows, cols)
        if sol is None:
            raise CellsError("right translation does not preserve a generalized eigenspace")
        out.append(sum((sol[k][k] for k in range(m)), f.zero))
    return out


def _decompose_class_function(group, f, lift, values):
    """Multiplicities of the irreducible characters in an exact class function."""
    n = len(group.characters)
    order_inv = f.inv(f.of(group.order))
    out = []
    for chi in range(n):
        tot = f.zero
        for ci, cls in enumerate(group.classes):
            w = cls[0]
            cv = group.character_value(chi, group.inv[w])
            if cv:
                tot = tot + f.of(len(cls)) * values[ci] * lift(cv)
        tot = tot * order_inv
        if not f.is_rational(tot):
            raise CellsError("non-rational character multiplicity")
        q = f.to_rational(tot)
        if q.denominator != 1 or q < 0:
            raise CellsError("character multiplicity %s is not a nonnegative integer" % (q,))
        out.append(int(q))
    return out


def cellular_run(group, c, y, v, field=None):
    """One exact decomposition run on the group algebra at a fixed sample."""
    f, lift = _lifter(group, field)
    D = gaudin_matrix(group, c, y, v, field=field)
    p = charpoly(D)
    _, factors = factor_irreducible(squarefree_part(p))
    entries = []
    total = 0
    for Pi, _ in factors:
        ni = _valuation(p, Pi)
        A = _mat_power(_poly_at_matrix(Pi, D), ni)
        ker = kernel_basis(f, A.rows)
        dim = len(ker)
        total += dim
        gamma = _right_character(group, f, ker)
        mults = _decompose_class_function(group, f, lift, gamma)
        d = Pi.degree()
        reduced = []
        for m in mults:
            if m % d:
                raise CellsError("multiplicity %d is not divisible by the factor degree %d" % (m, d))
            reduced.append(m // d)
        if dim != d * sum(m * dd for m, dd in zip(reduced, group.character_degrees())):
            raise CellsError("kernel dimension does not match its character")
        entries.append(CellularCharacter(reduced, d, factor=Pi, power=ni, kernel_dim=dim))
    if total != group.order:
        raise CellsError("generalized eigenspaces do not fill the group algebra")
    return CellularResult(group, f, (list(y), list(v)), entries)


def cellular_run_rep(group, c, y, v, chi, field=None):
    """Kernel data of the run through the model of one irreducible character.

    Returns a list of (factor, multiplicity) pairs: for each irreducible
    factor of the model's characteristic polynomial, the multiplicity of chi
    in the cellular character that factor cuts out."""
    f, _ = _lifter(group, field)
    D = gaudin_matrix(group, c, y, v, rep=chi, field=field)
    p = charpoly(D)
    _, factors = factor_irreducible(squarefree_part(p))
    out = []
    for Pi, _ in factors:
        ni = _valuation(p, Pi)
        A = _mat_power(_poly_at_matrix(Pi, D), ni)
        dim = len(kernel_basis(f, A.rows))
        d = Pi.degree()
        if dim % d:
            raise CellsError("kernel dimension %d is not divisible by the factor degree %d" % (dim, d))
        out.append((Pi, dim // d))
    return out


def cellular_run_by_rep(group, c, y, v, field=None):
    """The full decomposition assembled from per-irreducible model runs.

    Independent route to the same answer as cellular_run: no group-algebra
    matrix, no right-translation traces."""
    f, _ = _lifter(group, field)
    degs = group.character_degrees()
    per = [cellular_run_rep(group, c, y, v, chi, field=field) for chi in range(len(degs))]
    factors = []
    index = {}
    for data in per:
        for Pi, _ in data:
            if Pi not in index:
                index[Pi] = len(factors)
                factors.append(Pi)
    order = sorted(range(len(factors)), key=lambda i: (factors[i].degree(), [f.key(a) for a in factors[i].c]))
    entries = []
    for i in order:
        Pi = factors[i]
        mults = [0] * len(degs)
        for chi, data in enumerate(per):
            for Pj, m in data:
                if Pj == Pi:
                    mults[chi] = m
        dim = Pi.degree() * sum(m * dd for m, dd in zip(mults, degs))
        entries.append(CellularCharacter(mults, Pi.degree(), factor=Pi, kernel_dim=dim))
    return CellularResult(group, f, (list(y), list(v)), entries)


# ------------------------------------------------------------------ sampling


def sample_point(group, seed, attempt=0):
    """Deterministic small-integer sample (y, v) with v off every hyperplane."""
    rng = random.Random(repr(("cells", group.name, seed, attempt)))
    n = group.dim
    y = None
    for _ in range(100):
        cand = [rat(rng.randint(-_SAMPLE_BOUND, _SAMPLE_BOUND)) for _ in range(n)]
        if any(cand):
            y = cand
            break
    if y is None:
        raise CellsError("could not sample a nonzero direction")
    for _ in range(400):
        cand = [rat(rng.randint(-_SAMPLE_BOUND, _SAMPLE_BOUND)) for _ in range(n)]
        if is_regular(group, cand):
            return y, cand
    raise CellsError("could not sample a vector off the reflecting hyperplanes")


def cellular_characters(group, c, seed=0, field=None):
    """Cellular characters at the parameter point c, certified generically.

    Draws samples from the seed until two runs of maximal square-free degree
    agree on the character set; raises after the retry budget."""
    best = None
    for attempt in range(RETRY_BUDGET):
        y, v = sample_point(group, seed, attempt)
        run = cellular_run(group, c, y, v, field=field)
        if best is not None:
            if run.sqfree_degree == best.sqfree_degree and run.character_set() == best.character_set():
                run.seed = seed
                run.samples = attempt + 1
                return run
            if run.sqfree_degree > best.sqfree_degree:
                best = run
        else:
            best = run
    raise CellsError("resampling budget %d exhausted without a stable decomposition" % RETRY_BUDGET)


def verify_sum_identity(result):
    """Check that the defect-weighted sum of the entries is the character of
    the group algebra: every irreducible appears with its own degree."""
    degs = result.group.character_degrees()
    for chi, d in enumerate(degs):
        if sum(e.defect * e.mults[chi] for e in result.entries) != d:
            return False
    return True


def character_labels(group):
    degs = group.character_degrees()
    return ["chi%d_d%d" % (i + 1, d) for i, d in enumerate(degs)]
