"""Calogero-Moser families, hyperplanes, and cuspidal families.

Every irreducible character chi of the reflection group carries a central
character: each center generator z acts on the corresponding standard module
by a scalar omega_chi(z) that is an exact polynomial in the deformation
parameters.  Two characters belong to the same family at a parameter value
exactly when all those scalars agree there, so families are fibers of the
row map of a finite table of parameter polynomials.

Generators of nonzero grading degree always act by zero, so the table only
stores the degree-zero columns plus the (linear) Euler column.  The locus
where the generic partition coarsens is a finite union of rational
hyperplanes in the K coordinates; candidates come from differences of Euler
column entries and are kept when they genuinely merge families.  At a
specific point the partition is the common coarsening of the partitions of
the hyperplanes through that point, which is cross-checked against direct
evaluation of the table.

A family is cuspidal at a point when, in addition, every Poisson bracket of
two generators with opposite grading degrees evaluates to zero under the
family's central character; the bracket values are obtained by substituting
the central-character scalars into the bracket's expression in the center
presentation variables.
"""

import itertools
import math
import re

from .exact.mpoly import MPoly, PolyRing
from .exact.scalars import rat
from .reflection import ReflectionGroup, build_group
from .algebra import CherednikAlgebra
from .center import CenterMap, center_generators, fundamental_invariants, poisson_matrix


class FamilyError(ValueError):
    pass


# ------------------------------------------------------------ parameter rings

_PARAM_RINGS = {}


def param_ring(group):
    """Polynomial ring over the group field in the C parameters (one per
    reflection class)."""
    R = _PARAM_RINGS.get((group, "C"))
    if R is None:
        names = ["C%d" % (i + 1) for i in range(group.n_param)]
        R = PolyRing(group.field, names, bidegrees=[(1, 1)] * group.n_param)
        _PARAM_RINGS[(group, "C")] = R
    return R


def k_ring(group):
    """Polynomial ring over the group field in the K parameters (one per
    hyperplane-orbit coordinate K_{orbit,j}, j >= 1)."""
    R = _PARAM_RINGS.get((group, "K"))
    if R is None:
        R = PolyRing(group.field, list(group.k_names), bidegrees=[(1, 1)] * group.n_param)
        _PARAM_RINGS[(group, "K")] = R
    return R


def k_index(group, name):
    """Resolve a user-facing parameter name to a K-coordinate index.

    Accepts the exact coordinate name (``K1_1``, case-insensitive), the
    positional short form ``k1``, ``k2``, ..., or a single letter ``a``,
    ``b``, ... for the first, second, ... coordinate.
    """
    names = group.k_names
    low = [s.lower() for s in names]
    t = str(name).strip().lower()
    if t in low:
        return low.index(t)
    m = re.fullmatch(r"k(\d+)", t)
    if m:
        i = int(m.group(1)) - 1
        if 0 <= i < len(names):
            return i
    if len(t) == 1 and "a" <= t <= "z":
        i = ord(t) - ord("a")
        if i < len(names):
            return i
    raise FamilyError(
        "unknown parameter %r for %s; expected one of %s" % (name, group.name, ", ".join(names))
    )


def k_point(group, values):
    """Canonicalize a parameter point to a list of exact rationals.

    `values` may be a sequence aligned with ``group.k_names`` or a mapping
    from parameter names (any spelling accepted by `k_index`) to values.
    """
    n = group.n_param
    if isinstance(values, dict):
        out = [rat(0)] * n
        seen = set()
        for name, v in values.items():
            i = k_index(group, name)
            if i in seen:
                raise FamilyError("parameter %s assigned twice" % group.k_names[i])
            seen.add(i)
            out[i] = rat(v)
        return out
    vals = [rat(v) for v in values]
    if len(vals) != n:
        raise FamilyError("expected %d parameter values, got %d" % (n, len(vals)))
    return vals


# ----------------------------------------------------------- central character


def omega(alg, z, check=True):
    """Project a central element to its group-algebra part at x = y = 0.

    Returns {element index: polynomial in the C parameters}.  The result
    determines how z acts on every standard module.  Defined only on central
    elements; set check=False to skip the (quadratic-cost) centrality check
    when the input is trusted.
    """
    if alg.deformed:
        raise FamilyError("central characters live in the undeformed algebra")
    if check and not alg.is_central(z):
        raise FamilyError("omega requires a central element")
    R = param_ring(alg.group)
    nc = alg.nC
    out = {}
    for w, p in z.coeffs.items():
        kept = {e[:nc]: c for e, c in p.d.items() if not any(e[nc:])}
        if kept:
            out[w] = MPoly(R, kept)
    return out


def omega_chi(alg, z, chi, check=True):
    """Scalar (a polynomial in the C parameters) by which the central element
    z acts on the standard module of the chi-th irreducible character."""
    g = alg.group
    vals = omega(alg, z, check=check)
    R = param_ring(g)
    inv_deg = g.field.inv(g.field.of(g.character_degrees()[chi]))
    out = R.zero
    for w, p in vals.items():
        out = out + p.scale(g.character_value(chi, w) * inv_deg)
    return out


# ------------------------------------------------------------------ partitions


class FamilyPartition:
    """A partition of the irreducible characters, stored by internal index.

    Parts are canonically ordered by smallest member; equality ignores the
    descriptive label.
    """

    __slots__ = ("parts", "label", "size")

    def __init__(self, parts, label, size):
        seen = set()
        clean = []
        for p in parts:
            fp = frozenset(int(i) for i in p)
            if not fp:
                raise FamilyError("empty family part")
            if seen & fp:
                raise FamilyError("family parts overlap")
            seen |= fp
            clean.append(fp)
        if seen != set(range(size)):
            raise FamilyError("family parts must cover all %d characters" % size)
        self.parts = tuple(sorted(clean, key=min))
        self.label = label
        self.size = size

    def part_of(self, chi):
        for p in self.parts:
            if chi in p:
                return p
        raise FamilyError("character index %d out of range" % chi)

    def sizes(self):
        """Part sizes as a descending tuple."""
        return tuple(sorted((len(p) for p in self.parts), reverse=True))

    def meet(self, other):
        return meet(self, other)

    def __eq__(self, other):
        if not isinstance(other, FamilyPartition):
            return NotImplemented
        return self.size == other.size and set(self.parts) == set(other.parts)

    def __hash__(self):
        return hash((self.size, frozenset(self.parts)))

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return " | ".join("{%s}" % ",".join(str(i + 1) for i in sorted(p)) for p in self.parts)

    def __repr__(self):
        return "FamilyPartition(%s; %s)" % (self, self.label)


def meet(p, q):
    """Common coarsening: merge parts of p and q that overlap, transitively."""
    if p.size != q.size:
        raise FamilyError("partitions are over different character sets")
    parent = list(range(p.size))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    for part in itertools.chain(p.parts, q.parts):
        it = iter(part)
        first = next(it)
        for other in it:
            union(first, other)
    groups = {}
    for i in range(p.size):
        groups.setdefault(find(i), []).append(i)
    return FamilyPartition(groups.values(), "%s ^ %s" % (p.label, q.label), p.size)


def is_union_of(coarse, fine):
    """True when every part of `fine` sits inside a single part of `coarse`."""
    if coarse.size != fine.size:
        raise FamilyError("partitions are over different character sets")
    return all(part <= coarse.part_of(min(part)) for part in fine.parts)


# ------------------------------------------------------------ hyperplane forms


class HyperplaneForm:
    """A primitive integer linear form in the K coordinates.

    Normalized so the coefficients have content 1 and the first nonzero one
    is positive.
    """

    __slots__ = ("coeffs", "names")

    def __init__(self, coeffs, names):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != len(names):
            raise FamilyError("coefficient count does not match coordinate count")
        if not any(coeffs):
            raise FamilyError("zero linear form")
        g = 0
        for c in coeffs:
            g = math.gcd(g, abs(c))
        coeffs = tuple(c // g for c in coeffs)
        for c in coeffs:
            if c:
                if c < 0:
                    coeffs = tuple(-q for q in coeffs)
                break
        self.coeffs = coeffs
        self.names = tuple(names)

    @classmethod
    def from_rationals(cls, vec, names):
        vec = [rat(v) for v in vec]
        den = 1
        for v in vec:
            den = den * v.denominator // math.gcd(den, int(v.denominator))
        return cls([int(v * den) for v in vec], names)

    @classmethod
    def from_field_vector(cls, group, vec):
        """Build from a coefficient vector over the group field; the
        coefficients must all be rational."""
        f = group.field
        rats = []
        for v in vec:
            if not f.is_rational(v):
                raise FamilyError("hyperplane form has an irrational K coefficient")
            rats.append(f.to_rational(v))
        return cls.from_rationals(rats, group.k_names)

    def vanishes_at(self, kvals):
        return sum(c * v for c, v in zip(self.coeffs, kvals)) == 0

    def pivot(self):
        """Index of the largest-magnitude coefficient (first on ties)."""
        best = None
        for i, c in enumerate(self.coeffs):
            if c and (best is None or abs(c) > abs(self.coeffs[best])):
                best = i
        return best

    def __eq__(self, other):
        if not isinstance(other, HyperplaneForm):
            return NotImplemented
        return self.coeffs == other.coeffs and self.names == other.names

    def __hash__(self):
        return hash((self.coeffs, self.names))

    def __str__(self):
        out = []
        for c, nm in zip(self.coeffs, self.names):
            if not c:
                continue
            mag = "" if abs(c) == 1 else "%d*" % abs(c)
            if not out:
                out.append(("-" if c < 0 else "") + mag + nm)
            else:
                out.append((" - " if c < 0 else " + ") + mag + nm)
        return "".join(out)

    def __repr__(self):
        return "HyperplaneForm(%s)" % self


_FORM_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+)\s*\*?\s*)?([A-Za-z]\w*)\s*")


def parse_form(group, text):
    """Parse a linear form such as ``K1_1 - K2_1`` or ``2a+b``."""
    coeffs = [0] * group.n_param
    pos = 0
    first = True
    while pos < len(text):
        m = _FORM_TERM.match(text, pos)
        if not m:
            raise FamilyError("cannot parse linear form %r at position %d" % (text, pos))
        sign, mag, name = m.groups()
        if sign is None and not first:
            raise FamilyError("missing sign between terms in %r" % text)
        c = int(mag) if mag else 1
        if sign == "-":
            c = -c
        coeffs[k_index(group, name)] += c
        pos = m.end()
        first = False
    if first:
        raise FamilyError("empty linear form")
    return HyperplaneForm(coeffs, group.k_names)


# ------------------------------------------------------------------- the table


class CentralCharTable:
    """Central-character scalars of the center generators, per irreducible.

    Rows are irreducible characters.  Stored columns are the generators of
    grading degree zero (the others act by zero); the Euler column is kept
    separately and is always linear in the parameters.  Entries are held
    both in the C coordinates and in the K coordinates.
    """

    def __init__(self, group, alg, sys, zgens):
        if group.characters is None:
            raise FamilyError("group %s ships no character table" % group.name)
        self.group = group
        self.alg = alg
        self.sys = sys
        self.zgens = zgens
        self.nchi = len(group.characters)
        self.zdegrees = [d - e for (d, e) in sys.bidegrees]
        self.i0 = [i for i, d in enumerate(self.zdegrees) if d == 0]
        eu = alg.euler_element()
        self.rows = []
        self.euler = []
        for chi in range(self.nchi):
            self.rows.append([omega_chi(alg, zgens[i], chi, check=False) for i in self.i0])
            ev = omega_chi(alg, eu, chi, check=False)
            if any(sum(e) != 1 for e in ev.d):
                raise FamilyError("Euler column entry is not linear")
            self.euler.append(ev)
        self._k_images = [
            k_ring(group).linear_form([(j, c) for j, c in enumerate(row) if c])
            for row in group.k_to_c_matrix
        ]
        self.rows_k = [[self._c_to_k(p) for p in row] for row in self.rows]
        self.euler_k = [self._c_to_k(p) for p in self.euler]
        self._hyperplanes = None
        self._cmap = None
        self._pmatrix = None

    # -------------------------------------------------------------- utilities

    def _c_to_k(self, p):
        """Rewrite a C-parameter polynomial in the K coordinates."""
        Pk = k_ring(self.group)
        out = Pk.zero
        cache = {}
        for e, c in p.d.items():
            term = Pk.const(c)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in cache:
                        cache[(i, k)] = self._k_images[i] ** k
                    term = term * cache[(i, k)]
            out = out + term
        return out

    def labels(self):
        degs = self.group.character_degrees()
        return ["chi%d_d%d" % (i + 1, int(degs[i])) for i in range(self.nchi)]

    def char_index(self, ref):
        """Resolve a character reference: 1-based integer or a label string."""
        if isinstance(ref, int) or (isinstance(ref, str) and ref.isdigit()):
            i = int(ref) - 1
            if 0 <= i < self.nchi:
                return i
            raise FamilyError("character index %s out of range 1..%d" % (ref, self.nchi))
        labels = self.labels()
        if ref in labels:
            return labels.index(ref)
        short = [lb.split("_")[0] for lb in labels]
        if ref in short:
            return short.index(ref)
        raise FamilyError("unknown character label %r" % (ref,))

    def _fibers(self, key_of_row, label):
        groups = {}
        for chi in range(self.nchi):
            groups.setdefault(key_of_row(chi), []).append(chi)
        return FamilyPartition(groups.values(), label, self.nchi)

    def poisson_data(self):
        """The center presentation map and the matrix of generator brackets
        expressed in the presentation variables (computed once, cached)."""
        if self._pmatrix is None:
            self._cmap = CenterMap(self.alg, self.sys, zgens=self.zgens)
            self._pmatrix = poisson_matrix(self.alg, self.sys, cmap=self._cmap)
        return self._pmatrix, self._cmap

    def row_values_at(self, chi, kvals):
        """Evaluate the chi-th row (degree-zero columns) at a K point."""
        assign = dict(enumerate(kvals))
        return [p.evaluate_scalars(assign) for p in self.rows_k[chi]]


_TABLE_CACHE = {}


def central_char_table(source):
    """Build (and cache) the central-character table for a group.

    `source` may be a built group, a group name, or a path to a group file;
    fundamental invariants and center generators are computed on demand.
    """
    group = source if isinstance(source, ReflectionGroup) else build_group(source)
    tab = _TABLE_CACHE.get(group)
    if tab is None:
        sys = fundamental_invariants(group)
        alg = CherednikAlgebra(group)
        zgens = center_generators(alg, sys)
        tab = CentralCharTable(group, alg, sys, zgens)
        _TABLE_CACHE[group] = tab
    return tab


# ------------------------------------------------------------------- families


def generic_families(table):
    """Fibers of the row map with entries compared as exact polynomials."""
    rows = table.rows
    eul = table.euler
    return table._fibers(lambda chi: (eul[chi],) + tuple(rows[chi]), "generic")


def families_on_hyperplane(table, form):
    """Families after restricting the parameters to the hyperplane form = 0.

    The largest-coefficient variable of the form is eliminated by
    substitution and the restricted rows are compared exactly.
    """
    if isinstance(form, str):
        form = parse_form(table.group, form)
    Pk = k_ring(table.group)
    f = table.group.field
    piv = form.pivot()
    bp = form.coeffs[piv]
    image = Pk.linear_form(
        [(j, f.of(rat(-c, bp))) for j, c in enumerate(form.coeffs) if j != piv and c]
    )
    sub = {piv: image}

    def key(chi):
        ent = tuple(p.substitute(sub) for p in table.rows_k[chi])
        return (table.euler_k[chi].substitute(sub),) + ent

    return table._fibers(key, "on %s" % form)


def cm_hyperplanes(table):
    """The hyperplanes in K space where the generic partition coarsens.

    Candidates are the pairwise differences of Euler column entries; a
    candidate is kept exactly when its restricted partition is strictly
    coarser than the generic one.  Sorted by coefficient tuple.
    """
    if table._hyperplanes is not None:
        return table._hyperplanes
    group = table.group
    Pk = k_ring(group)
    npar = group.n_param
    unit = [tuple(1 if j == i else 0 for j in range(npar)) for i in range(npar)]
    gen = generic_families(table)
    seen = set()
    kept = []
    for a in range(table.nchi):
        for b in range(a):
            d = table.euler_k[a] - table.euler_k[b]
            if not d:
                continue
            form = HyperplaneForm.from_field_vector(group, [d.coeff(e) for e in unit])
            if form in seen:
                continue
            seen.add(form)
            part = families_on_hyperplane(table, form)
            if part == gen:
                continue
            if not is_union_of(part, gen):
                raise FamilyError("restriction to %s failed to coarsen the generic partition" % form)
            kept.append(form)
    kept.sort(key=lambda h: h.coeffs)
    table._hyperplanes = kept
    return kept


def families_at_point(table, kvals):
    """Families at a parameter point: the common coarsening of the partitions
    of all hyperplanes through the point (generic when none contains it)."""
    kvals = k_point(table.group, kvals)
    through = [h for h in cm_hyperplanes(table) if h.vanishes_at(kvals)]
    label = "at (%s)" % ",".join(str(v) for v in kvals)
    if not through:
        g = generic_families(table)
        return FamilyPartition(g.parts, label, g.size)
    part = families_on_hyperplane(table, through[0])
    for h in through[1:]:
        part = meet(part, families_on_hyperplane(table, h))
    return FamilyPartition(part.parts, label, part.size)


def families_at_point_direct(table, kvals):
    """Independent route: evaluate every table entry at the point and take
    fibers of the resulting scalar vectors."""
    kvals = k_point(table.group, kvals)
    assign = dict(enumerate(kvals))

    def key(chi):
        ent = tuple(p.evaluate_scalars(assign) for p in table.rows_k[chi])
        return (table.euler_k[chi].evaluate_scalars(assign),) + ent

    return table._fibers(key, "direct at (%s)" % ",".join(str(v) for v in kvals))


# ------------------------------------------------------------------- cuspidal


def cuspidal_families(table, kvals):
    """Parts of families_at_point whose central character kills every Poisson
    bracket of generators with opposite grading degrees.

    The bracket of two generators is expressed in the presentation variables;
    substituting the family's central-character scalars (zero for nonzero
    grading degree) and the point's C values decides vanishing.  The zero
    parameter point is rejected: there the unique family is degenerate.
    """
    group = table.group
    kvals = k_point(group, kvals)
    if not any(kvals):
        raise FamilyError("cuspidal families are defined for nonzero parameters only")
    fams = families_at_point(table, kvals)
    pm, cmap = table.poisson_data()
    f = group.field
    cvals = group.c_of_k([f.of(v) for v in kvals])
    nz = len(table.zgens)
    zd = table.zdegrees
    pairs = [(i, j) for i in range(nz) for j in range(i + 1, nz) if zd[i] + zd[j] == 0]
    col_of = {gix: c for c, gix in enumerate(table.i0)}
    out = []
    for part in fams.parts:
        values = None
        for chi in sorted(part):
            vals = table.row_values_at(chi, kvals)
            if values is None:
                values = vals
            elif vals != values:
                raise FamilyError("family part has inconsistent central-character values")
        assign = {i: cvals[i] for i in range(cmap.nC)}
        for i in range(nz):
            assign[cmap.nC + i] = values[col_of[i]] if zd[i] == 0 else f.zero
        if all(not pm[i][j].evaluate_scalars(assign) for i, j in pairs):
            out.append(part)
    return out


# ------------------------------------------------------- conjecture comparison


def sharp_permutation(group):
    """The K-coordinate involution sending K_{orbit,j} to K_{orbit,-j mod e}."""
    index = {p: i for i, p in enumerate(group.k_pairs)}
    perm = []
    for (oi, j) in group.k_pairs:
        e = group.orbit_orders[oi]
        perm.append(index[(oi, (e - j) % e)])
    return perm


def sharp_form(group, form):
    """Apply the K-coordinate involution to a hyperplane form."""
    perm = sharp_permutation(group)
    coeffs = [0] * group.n_param
    for i, c in enumerate(form.coeffs):
        coeffs[perm[i]] = c
    return HyperplaneForm(coeffs, group.k_names)


def _partition_from_parts(table, parts):
    idx = [[table.char_index(r) for r in part] for part in parts]
    return FamilyPartition(idx, "supplied", table.nchi)


def martino_check(table, data, require_equality=False):
    """Compare supplied Rouquier-family data against the computed families.

    `data` is a parsed JSON document with keys ``convention`` (``"k"`` or
    ``"ksharp"``, stating which coordinates the supplied forms use),
    ``generic`` (the generic Rouquier families: a list of parts, each a list
    of character references), and ``hyperplanes`` (the essential
    hyperplanes: a list of {``form``: coefficient list or string,
    ``families``: list of parts}).

    Two steps: (1) every generic computed family must be a union of generic
    Rouquier families; (2) for every computed hyperplane H, twisted to
    H-sharp by the index involution when the supplied data uses plain k
    coordinates, every computed family on H must be a union of the Rouquier
    families on H-sharp (of the generic Rouquier families when H-sharp is
    not essential — a vacuous check when those are singletons).  With
    `require_equality` every union test becomes an equality test.  Returns
    a report dictionary with one verdict per step.
    """
    group = table.group
    convention = data.get("convention", "k")
    if convention not in ("k", "ksharp"):
        raise FamilyError("convention must be 'k' or 'ksharp'")
    if "generic" not in data:
        raise FamilyError("supplied data must include the generic families")
    rgen = _partition_from_parts(table, data["generic"])
    essential = {}
    for item in data.get("hyperplanes", []):
        raw = item["form"]
        form = parse_form(group, raw) if isinstance(raw, str) else HyperplaneForm.from_rationals(
            raw, group.k_names
        )
        essential[form] = _partition_from_parts(table, item["families"])

    def verdict(computed, rouquier):
        union_ok = is_union_of(computed, rouquier)
        equal = computed == rouquier
        return union_ok, equal, (equal if require_equality else union_ok)

    def parts_out(p):
        return [sorted(i + 1 for i in part) for part in p.parts]

    cm_gen = generic_families(table)
    union_ok, equal, good = verdict(cm_gen, rgen)
    ok = good
    report = {
        "group": group.name,
        "convention": convention,
        "require_equality": bool(require_equality),
        "generic": {
            "computed": parts_out(cm_gen),
            "rouquier": parts_out(rgen),
            "cm_is_union": union_ok,
            "equal": equal,
            "ok": good,
        },
        "hyperplanes": [],
    }
    used = set()
    for h in cm_hyperplanes(table):
        lookup = sharp_form(group, h) if convention == "k" else h
        if lookup in essential:
            rq = essential[lookup]
            source = "essential"
            used.add(lookup)
        else:
            rq = rgen
            source = "generic"
        cm = families_on_hyperplane(table, h)
        union_ok, equal, good = verdict(cm, rq)
        ok = ok and good
        report["hyperplanes"].append(
            {
                "form": str(h),
                "lookup_form": str(lookup),
                "rouquier_source": source,
                "computed": parts_out(cm),
                "rouquier": parts_out(rq),
                "cm_is_union": union_ok,
                "equal": equal,
                "ok": good,
            }
        )
    report["unused_essential"] = sorted(str(f) for f in essential if f not in used)
    report["ok"] = ok
    return report
