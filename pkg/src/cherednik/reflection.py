"""Finite complex reflection groups from matrix generators.

Groups are loaded from JSON specs (shipped under cherednik/groups/), closed by
breadth-first multiplication, and endowed with the combinatorics the Cherednik
machinery needs: reflections with roots/coroots, reflecting hyperplanes and
their orbits, conjugacy classes, validated character tables, and the linear
parameter spaces (one coordinate per reflection class, and the hyperplane-orbit
coordinates summing to zero orbit-wise).
"""

import json
import os
import random

from .exact.linalg import Mat, rank, rref, solve
from .exact.scalars import QQ, cyclotomic_field, rat


class GroupSpecError(ValueError):
    pass


class GroupSpec:
    """Parsed group data file (before closure)."""

    def __init__(self, data):
        self.name = data["name"]
        self.dim = int(data["dim"])
        self.conductor = int(data["conductor"])
        self.field = cyclotomic_field(self.conductor)
        self.order = int(data["order"])
        self.generators = [self._matrix(g) for g in data["generators"]]
        self.class_words = [list(c["word"]) for c in data.get("classes", [])]
        self.characters = [[self.field.of([rat(q) for q in vec]) for vec in row["values"]] for row in data.get("characters", [])]
        self.raw = data

    def _matrix(self, rows):
        if len(rows) != self.dim or any(len(r) != self.dim for r in rows):
            raise GroupSpecError("generator matrix has wrong shape")
        return tuple(tuple(self.field.of([rat(q) for q in entry]) for entry in row) for row in rows)

    @classmethod
    def load(cls, source):
        if isinstance(source, dict):
            return cls(source)
        with open(source) as fh:
            return cls(json.load(fh))


def builtin_group_path(name):
    return os.path.join(os.path.dirname(__file__), "groups", name + ".json")


def available_groups():
    d = os.path.join(os.path.dirname(__file__), "groups")
    if not os.path.isdir(d):
        return []
    return sorted(f[:-5] for f in os.listdir(d) if f.endswith(".json"))


class Reflection:
    __slots__ = ("index", "eps", "alpha", "coroot", "hyperplane", "cls")

    def __init__(self, index, eps, alpha, coroot):
        self.index = index  # element index in the group
        self.eps = eps  # determinant
        self.alpha = alpha  # root: linear form (tuple) vanishing on the hyperplane
        self.coroot = coroot  # eps-eigenvector of the matrix
        self.hyperplane = None  # hyperplane id, set after orbit computation
        self.cls = None  # reflection-class id (parameter coordinate), set later


class ReflectionGroup:
    def __init__(self, spec, validate=True):
        self.name = spec.name
        self.dim = spec.dim
        self.field = spec.field
        self.spec = spec
        self._close(spec.generators)
        if len(self.elements) != spec.order:
            raise GroupSpecError(
                "group %s closed to %d elements, data file says %d" % (spec.name, len(self.elements), spec.order)
            )
        self._conjugacy()
        self._find_reflections()
        self._check_generated_by_reflections()
        self._hyperplanes()
        self._parameters()
        self._character_table(spec, validate)

    # ------------------------------------------------------------ construction

    def _key(self, M):
        key = self.field.key
        return tuple(tuple(key(a) for a in row) for row in M)

    def _matmul(self, A, B):
        z = self.field.zero
        n = self.dim
        return tuple(
            tuple(sum((A[i][k] * B[k][j] for k in range(n) if A[i][k] and B[k][j]), z) for j in range(n))
            for i in range(n)
        )

    def _close(self, gens):
        f = self.field
        n = self.dim
        ident = tuple(tuple(f.one if i == j else f.zero for j in range(n)) for i in range(n))
        elements = [ident]
        words = [[]]
        index = {self._key(ident): 0}
        frontier = [0]
        while frontier:
            nxt = []
            for ei in frontier:
                for gi, g in enumerate(gens):
                    M = self._matmul(elements[ei], g)
                    k = self._key(M)
                    if k not in index:
                        index[k] = len(elements)
                        elements.append(M)
                        words.append(words[ei] + [gi])
                        nxt.append(index[k])
            frontier = nxt
        self.elements = elements
        self.words = words
        self._index = index
        self.order = len(elements)
        self.gen_indices = [index[self._key(g)] for g in gens]
        # multiplication and inverse tables
        mul = [[0] * self.order for _ in range(self.order)]
        for i, A in enumerate(elements):
            for j, B in enumerate(elements):
                mul[i][j] = index[self._key(self._matmul(A, B))]
        self.mul = mul
        inv = [0] * self.order
        for i in range(self.order):
            for j in range(self.order):
                if mul[i][j] == 0:
                    inv[i] = j
                    break
        self.inv = inv

    def element_of_word(self, word):
        i = 0
        for g in word:
            i = self.mul[i][self.gen_indices[g]]
        return i

    def _conjugacy(self):
        seen = [False] * self.order
        classes = []
        class_of = [0] * self.order
        for i in range(self.order):
            if seen[i]:
                continue
            cls = set()
            for g in range(self.order):
                cls.add(self.mul[self.mul[g][i]][self.inv[g]])
            cls = sorted(cls)
            for e in cls:
                seen[e] = True
                class_of[e] = len(classes)
            classes.append(cls)
        self.classes = classes
        self.class_of = class_of
        self.class_sizes = [len(c) for c in classes]

    # ------------------------------------------------------------- reflections

    def det(self, i):
        from .exact.linalg import det as _det

        return _det(Mat(self.field, [list(r) for r in self.elements[i]]))

    def _find_reflections(self):
        f = self.field
        n = self.dim
        self._dets = []
        refs = []
        for i, M in enumerate(self.elements):
            self._dets.append(self.det(i))
            if i == 0:
                continue
            MI = [[M[r][c] - (f.one if r == c else f.zero) for c in range(n)] for r in range(n)]
            if rank(f, MI) != 1:
                continue
            # root: the common row direction; coroot: the common column direction
            alpha = None
            for row in MI:
                if any(row):
                    alpha = list(row)
                    break
            coroot = None
            for c in range(n):
                col = [MI[r][c] for r in range(n)]
                if any(col):
                    coroot = col
                    break
            alpha = self._normalize_vec(alpha)
            coroot = self._normalize_vec(coroot)
            refs.append(Reflection(i, self._dets[i], tuple(alpha), tuple(coroot)))
        self.reflections = refs
        self.reflection_by_element = {r.index: r for r in refs}

    def _normalize_vec(self, v):
        lead = next(a for a in v if a)
        inv = self.field.inv(lead)
        return [a * inv for a in v]

    def eps(self, i):
        return self._dets[i]

    @property
    def det_char(self):
        return self._dets

    def _check_generated_by_reflections(self):
        reach = {0}
        frontier = [0]
        refl_ids = [r.index for r in self.reflections]
        while frontier:
            nxt = []
            for a in frontier:
                for s in refl_ids:
                    b = self.mul[a][s]
                    if b not in reach:
                        reach.add(b)
                        nxt.append(b)
            frontier = nxt
        if len(reach) != self.order:
            raise GroupSpecError("group is not generated by its reflections")

    # ------------------------------------------------------------- hyperplanes

    def _act_form(self, form, w):
        """Pull back a linear form on V along w: form o w (matrix acting on V)."""
        M = self.elements[w]
        n = self.dim
        return tuple(sum((form[i] * M[i][j] for i in range(n) if form[i] and M[i][j]), self.field.zero) for j in range(n))

    def _hyperplanes(self):
        key = lambda v: tuple(self.field.key(a) for a in v)
        hyps = []  # normalized alpha per hyperplane
        hyp_index = {}
        for r in self.reflections:
            k = key(r.alpha)
            if k not in hyp_index:
                hyp_index[k] = len(hyps)
                hyps.append(r.alpha)
            r.hyperplane = hyp_index[k]
        self.hyperplanes = hyps
        # orbits by the W-action
        orbit_of = [None] * len(hyps)
        orbits = []
        for h in range(len(hyps)):
            if orbit_of[h] is not None:
                continue
            orb = set()
            for w in range(self.order):
                img = self._normalize_vec(list(self._act_form(hyps[h], w)))
                orb.add(hyp_index[key(tuple(img))])
            orb = sorted(orb)
            for o in orb:
                orbit_of[o] = len(orbits)
            orbits.append(orb)
        # pointwise stabilizers: identity plus reflections sharing the hyperplane
        stab = [[0] for _ in hyps]
        for r in self.reflections:
            stab[r.hyperplane].append(r.index)
        self.hyperplane_stabilizers = stab
        e_of_hyp = [len(s) for s in stab]
        # canonical orbit order: by (e, min normalized root key)
        order_key = lambda orb: (e_of_hyp[orb[0]], min(key(hyps[h]) for h in orb))
        orbits.sort(key=order_key)
        self.hyperplane_orbits = orbits
        self.orbit_of_hyperplane = [None] * len(hyps)
        for oi, orb in enumerate(orbits):
            for h in orb:
                self.orbit_of_hyperplane[h] = oi
        self.orbit_orders = [e_of_hyp[orb[0]] for orb in orbits]
        if any(e_of_hyp[h] != self.orbit_orders[self.orbit_of_hyperplane[h]] for h in range(len(hyps))):
            raise GroupSpecError("hyperplane stabilizer orders are not orbit-constant")
        self.aleph = [(oi, j) for oi, e in enumerate(self.orbit_orders) for j in range(e)]

    # -------------------------------------------------------------- parameters

    def _parameters(self):
        """Reflection classes (the C coordinates) and the K coordinate layout."""
        # reflection conjugacy classes, ordered by smallest member element index
        by_class = {}
        for r in self.reflections:
            by_class.setdefault(self.class_of[r.index], []).append(r)
        cls_ids = sorted(by_class, key=lambda c: min(r.index for r in by_class[c]))
        self.reflection_classes = [sorted(by_class[c], key=lambda r: r.index) for c in cls_ids]
        for ci, refs in enumerate(self.reflection_classes):
            for r in refs:
                r.cls = ci
        self.n_param = len(self.reflection_classes)
        # K coordinates: (orbit, j) with 1 <= j <= e-1; j = 0 eliminated by the
        # zero-sum convention K_{orbit,0} = -sum_j K_{orbit,j}
        self.k_names = []
        self.k_pairs = []
        for oi, e in enumerate(self.orbit_orders):
            for j in range(1, e):
                self.k_names.append("K%d_%d" % (oi + 1, j))
                self.k_pairs.append((oi, j))
        if len(self.k_names) != self.n_param:
            raise GroupSpecError(
                "parameter dimension mismatch: %d reflection classes vs %d hyperplane coordinates"
                % (self.n_param, len(self.k_names))
            )
        # matrix of the change K -> C: C_s = sum_j eps(s)^(j-1) k_{Omega(s), j}
        # with k_{Omega,0} eliminated; rows per reflection class, cols per k name
        f = self.field
        rows = []
        for refs in self.reflection_classes:
            s = refs[0]
            orbit = self.orbit_of_hyperplane[s.hyperplane]
            e = self.orbit_orders[orbit]
            eps = s.eps
            row = [f.zero] * len(self.k_pairs)
            eps_pows = {j: eps ** ((j - 1) % e) if j >= 1 else f.inv(eps) for j in range(e)}
            # coefficient of k_{orbit,j}: eps^(j-1); eliminating j=0 adds
            # -eps^(-1) to every j >= 1 of the same orbit
            for col, (oi, j) in enumerate(self.k_pairs):
                if oi != orbit:
                    continue
                row[col] = eps_pows[j] - eps_pows[0]
            rows.append(row)
        self.k_to_c_matrix = rows

    def c_of_k(self, kvals):
        """C-coordinates from K-coordinates (list aligned with k_names)."""
        f = self.field
        out = []
        for row in self.k_to_c_matrix:
            out.append(sum((a * b for a, b in zip(row, kvals) if a and b), f.zero))
        return out

    def k_of_c(self, cvals):
        """K-coordinates from C-coordinates; the change of basis is invertible."""
        sol = solve(self.field, self.k_to_c_matrix, list(cvals))
        if sol is None:
            raise GroupSpecError("singular parameter change")
        return sol

    def form_k_to_c(self, kcoeffs):
        """Rewrite a linear form sum b_j K_j in the C coordinates.

        Uses K = A^{-1} C where A is the K->C coordinate change, so the form's
        coefficient vector maps by the inverse transpose of A.
        """
        f = self.field
        At = [[self.k_to_c_matrix[i][j] for i in range(self.n_param)] for j in range(self.n_param)]
        sol = solve(f, At, list(kcoeffs))
        if sol is None:
            raise GroupSpecError("singular parameter change")
        return sol

    def form_c_to_k(self, ccoeffs):
        """Rewrite a linear form sum a_i C_i in the K coordinates."""
        f = self.field
        out = [f.zero] * self.n_param
        for i, a in enumerate(ccoeffs):
            if not a:
                continue
            for j, b in enumerate(self.k_to_c_matrix[i]):
                if b:
                    out[j] = out[j] + a * b
        return out

    def hyperplane_idempotent(self, h, j):
        """The j-th primitive idempotent of the cyclic stabilizer of hyperplane h.

        Returns a dict element-index -> coefficient representing
        (1/e) * sum over w in the stabilizer of det(w)^j * w.
        """
        f = self.field
        stab = self.hyperplane_stabilizers[h]
        e = len(stab)
        inv_e = f.of(rat(1, e))
        return {w: inv_e * (self._dets[w] ** j) for w in stab}

    # ---------------------------------------------------------- character table

    def _character_table(self, spec, validate):
        if not spec.characters:
            self.characters = None
            return
        f = self.field
        if len(spec.class_words) != len(self.classes):
            raise GroupSpecError("character table has %d classes, group has %d" % (len(spec.class_words), len(self.classes)))
        # map data-file class order to internal class order
        perm = []
        for w in spec.class_words:
            perm.append(self.class_of[self.element_of_word(w)])
        if sorted(perm) != list(range(len(self.classes))):
            raise GroupSpecError("class representative words do not hit every class once")
        chars = []
        for row in spec.characters:
            vals = [None] * len(self.classes)
            for file_col, internal_col in enumerate(perm):
                vals[internal_col] = row[file_col]
            chars.append(tuple(vals))
        # canonical order: by degree, then by coefficient key across classes
        chars.sort(key=lambda ch: (self._char_degree(ch), tuple(f.key(v) for v in ch)))
        self.characters = chars
        if validate:
            self.validate_character_table()

    def _char_degree(self, ch):
        v = ch[self.class_of[0]]
        q = self.field.to_rational(v)
        if q.denominator != 1 or q <= 0:
            raise GroupSpecError("character degree %s is not a positive integer" % (q,))
        return int(q)

    def validate_character_table(self):
        """First and second orthogonality plus degree bookkeeping; raises on failure."""
        f = self.field
        chars = self.characters
        if chars is None:
            raise GroupSpecError("no character table shipped for %s" % self.name)
        n = len(self.classes)
        if len(chars) != n:
            raise GroupSpecError("character count != class count")
        if sum(self._char_degree(ch) ** 2 for ch in chars) != self.order:
            raise GroupSpecError("degree squares do not sum to the group order")
        inv_class = [self.class_of[self.inv[self.classes[c][0]]] for c in range(n)]
        for a, chi in enumerate(chars):
            for b, psi in enumerate(chars):
                s = f.zero
                for c in range(n):
                    s = s + chi[c] * psi[inv_class[c]] * self.class_sizes[c]
                expected = self.order if a == b else 0
                if s != f.of(expected):
                    raise GroupSpecError("orthogonality fails for characters %d,%d" % (a, b))
        return True

    def character_value(self, chi_idx, element_idx):
        return self.characters[chi_idx][self.class_of[element_idx]]

    def character_degrees(self):
        return [self._char_degree(ch) for ch in self.characters]

    # ------------------------------------------------------------ group actions

    def matrix(self, i):
        return self.elements[i]

    def y_images(self, w):
        """Images of the y basis under w: y_j -> sum_i M[i][j] y_i (coefficient lists)."""
        M = self.elements[w]
        n = self.dim
        return [[M[i][j] for i in range(n)] for j in range(n)]

    def x_images(self, w):
        """Images of the x basis under w: x_j -> sum_i Minv[j][i] x_i."""
        Minv = self.elements[self.inv[w]]
        n = self.dim
        return [[Minv[j][i] for i in range(n)] for j in range(n)]

    def alpha_pairing_y(self, refl, j):
        """<y_j, alpha_s>: the j-th coordinate of the root."""
        return refl.alpha[j]

    # ------------------------------------------------------------ regular vectors

    def regular_vector(self, seed=0):
        """Deterministic rational vector off every reflecting hyperplane."""
        rng = random.Random(("regular", self.name, seed).__repr__())
        bound = 3
        for attempt in range(1000):
            v = [rat(rng.randint(-bound, bound)) for _ in range(self.dim)]
            ok = True
            for alpha in self.hyperplanes:
                s = self.field.zero
                for a, b in zip(alpha, v):
                    if a and b:
                        s = s + a * b
                if not s:
                    ok = False
                    break
            if ok:
                return v
            if attempt % 10 == 9:
                bound += 1
        raise GroupSpecError("could not find a regular vector")


_GROUP_CACHE = {}


def build_group(source, validate=True):
    """Load and close a reflection group; `source` is a name, path, or dict."""
    cache_key = None
    if isinstance(source, str):
        path = source if os.path.exists(source) else builtin_group_path(source)
        cache_key = (os.path.abspath(path), validate)
        if cache_key in _GROUP_CACHE:
            return _GROUP_CACHE[cache_key]
        spec = GroupSpec.load(path)
    else:
        spec = GroupSpec.load(source)
    g = ReflectionGroup(spec, validate=validate)
    if cache_key:
        _GROUP_CACHE[cache_key] = g
    return g
