"""Real central hyperplane arrangements in the parameter space.

An arrangement is a finite set of pairwise non-proportional linear forms on a
rational vector space.  The intersection lattice is computed by closing the
set of hyperplanes under pairwise intersection of flats (exact row reduction);
its Mobius function gives the Poincare polynomial, whose value at 1 counts the
chambers of the real complement.  Dividing the chamber count by the product of
the factorials of the orbit orders counts the Q-factorial terminalizations of
the associated symplectic singularity; that quotient must be an integer, and a
fractional value signals wrong arrangement or orbit data.

A sign-vector chamber oracle (exact Fourier-Motzkin feasibility over the
rationals) is provided for low dimension as an independent cross-check of the
lattice route.
"""

import json
import os
from math import factorial, gcd

from gmpy2 import mpq

from .exact.scalars import QQ, rat
from .exact.linalg import rref
from .exact.upoly import UPoly


class ArrangementError(Exception):
    pass


def _primitive(form):
    """Primitive integer vector, first nonzero entry positive."""
    qs = [rat(a) for a in form]
    if not any(qs):
        raise ArrangementError("zero linear form")
    den = 1
    for q in qs:
        den = den * q.denominator // gcd(den, int(q.denominator))
    ints = [int(q * den) for q in qs]
    g = 0
    for a in ints:
        g = gcd(g, abs(a))
    ints = [a // g for a in ints]
    lead = next(a for a in ints if a)
    if lead < 0:
        ints = [-a for a in ints]
    return tuple(ints)


class RealArrangement:
    """Central arrangement given by primitive integer forms."""

    def __init__(self, forms, orbit_orders=None, dim=None):
        forms = [_primitive(f) for f in forms]
        if forms:
            n = len(forms[0])
            if any(len(f) != n for f in forms):
                raise ArrangementError("forms of mixed dimensions")
            if dim is not None and dim != n:
                raise ArrangementError("declared dimension %d, forms have %d coordinates" % (dim, n))
        else:
            if dim is None:
                raise ArrangementError("an empty arrangement needs an explicit dimension")
            n = dim
        if len(set(forms)) != len(forms):
            raise ArrangementError("proportional forms are not allowed")
        self.dim = n
        self.forms = sorted(forms)
        self.orbit_orders = tuple(int(e) for e in orbit_orders) if orbit_orders is not None else None
        if self.orbit_orders is not None:
            if any(e < 2 for e in self.orbit_orders):
                raise ArrangementError("orbit orders must be at least 2")
            if sum(e - 1 for e in self.orbit_orders) != self.dim:
                raise ArrangementError(
                    "orbit orders %r give parameter dimension %d, arrangement has %d"
                    % (list(self.orbit_orders), sum(e - 1 for e in self.orbit_orders), self.dim)
                )
        self._flats = None
        self._poincare = None

    # ------------------------------------------------------------ constructors

    @classmethod
    def from_group(cls, source):
        """Arrangement of the group's parameter hyperplanes, with orbit data."""
        from .families import central_char_table, cm_hyperplanes

        table = central_char_table(source)
        hyps = cm_hyperplanes(table)
        return cls(
            [h.coeffs for h in hyps],
            orbit_orders=table.group.orbit_orders,
            dim=table.group.n_param,
        )

    @classmethod
    def from_file(cls, path):
        with open(path) as fh:
            data = json.load(fh)
        return cls.from_data(data)

    @classmethod
    def from_data(cls, data):
        if not isinstance(data, dict) or "forms" not in data:
            raise ArrangementError("arrangement data must be an object with a 'forms' list")
        return cls(data["forms"], orbit_orders=data.get("orbit_orders"), dim=data.get("dim"))

    # ------------------------------------------------------------------ flats

    def flats(self):
        """All intersection flats as (rank, reduced basis of forms) pairs.

        Closure under pairwise intersection: every flat is reached by adding
        one hyperplane at a time to an existing flat."""
        if self._flats is not None:
            return self._flats
        atoms = [[rat(a) for a in f] for f in self.forms]
        found = {(): ([], [])}
        frontier = [([], [])]
        while frontier:
            fresh = []
            for rows, _ in frontier:
                for a in atoms:
                    R, piv = rref(QQ, rows + [a])
                    key = tuple(tuple((x.numerator, x.denominator) for x in r) for r in R)
                    if key not in found:
                        found[key] = (R, piv)
                        fresh.append((R, piv))
            frontier = fresh
        flats = [(len(R), R, piv) for R, piv in found.values()]
        flats.sort(key=lambda t: (t[0], [[QQ.key(x) for x in r] for r in t[1]]))
        self._flats = flats
        return flats

    @staticmethod
    def _in_span(R, piv, vec):
        v = list(vec)
        for row, pc in zip(R, piv):
            c = v[pc]
            if c:
                for j in range(len(v)):
                    if row[j]:
                        v[j] = v[j] - c * row[j]
        return not any(v)

    def _mobius(self):
        """Mobius values of the intersection lattice, bottom element first."""
        flats = self.flats()
        mu = []
        for i, (rank_i, R_i, piv_i) in enumerate(flats):
            if rank_i == 0:
                mu.append(1)
                continue
            total = 0
            for j, (rank_j, R_j, _) in enumerate(flats):
                if rank_j >= rank_i:
                    continue
                if all(self._in_span(R_i, piv_i, row) for row in R_j):
                    total += mu[j]
            mu.append(-total)
        return mu

    # ----------------------------------------------------------------- counts

    def poincare_polynomial(self):
        """Sum over flats of |mu| t^rank; nonnegative coefficients, constant 1."""
        if self._poincare is not None:
            return self._poincare
        flats = self.flats()
        mu = self._mobius()
        coeffs = [0] * (max(r for r, _, _ in flats) + 1)
        for (rank, _, _), m in zip(flats, mu):
            signed = m if rank % 2 == 0 else -m
            if signed < 0:
                raise ArrangementError("Mobius sign pattern violated")
            coeffs[rank] += signed
        if coeffs[0] != 1:
            raise ArrangementError("constant coefficient is not 1")
        self._poincare = UPoly(QQ, [mpq(c) for c in coeffs])
        return self._poincare

    def chamber_count(self):
        """Number of connected components of the real complement."""
        p = self.poincare_polynomial()
        return int(sum(p.c))

    def chamber_count_by_signs(self):
        """Independent chamber count: enumerate feasible strict sign vectors."""
        if self.dim > 3:
            raise ArrangementError("sign-vector oracle limited to dimension <= 3")
        m = len(self.forms)
        if m == 0:
            return 1
        count = 0
        for mask in range(1 << m):
            rows = []
            for i, f in enumerate(self.forms):
                s = 1 if (mask >> i) & 1 else -1
                rows.append(tuple(s * a for a in f))
            if _strictly_feasible(rows):
                count += 1
        return count

    def qft_count(self):
        """Chambers divided by the product of orbit-order factorials."""
        if self.orbit_orders is None:
            raise ArrangementError("orbit orders are required for the quotient count")
        denom = 1
        for e in self.orbit_orders:
            denom *= factorial(e)
        q = mpq(self.chamber_count(), denom)
        if q.denominator != 1:
            raise ArrangementError("chamber count %s is not divisible by %d" % (self.chamber_count(), denom))
        return int(q)

    def __repr__(self):
        return "RealArrangement(dim=%d, %d forms)" % (self.dim, len(self.forms))


def _strictly_feasible(rows):
    """Feasibility of a system of strict homogeneous inequalities r.x > 0,
    by Fourier-Motzkin elimination (exact)."""
    if not rows:
        return True
    if any(not any(r) for r in rows):
        return False
    k = len(rows[0])
    pos, neg, rest = [], [], []
    for r in rows:
        a = r[-1]
        if a > 0:
            pos.append(r)
        elif a < 0:
            neg.append(r)
        else:
            rest.append(r[:-1])
    for p in pos:
        for q in neg:
            alpha, beta = p[-1], q[-1]
            rest.append(tuple(alpha * q[i] - beta * p[i] for i in range(k - 1)))
    return _strictly_feasible(rest)


# -------------------------------------------------------------- shipped data

_DATA_DIR = os.path.join(os.path.dirname(__file__), "arrangements")


def available_arrangements():
    if not os.path.isdir(_DATA_DIR):
        return []
    return sorted(f[:-5] for f in os.listdir(_DATA_DIR) if f.endswith(".json"))


def arrangement_path(name):
    """Path of a shipped arrangement data file."""
    return os.path.join(_DATA_DIR, name + ".json")


def load_arrangement(source):
    """Arrangement from a shipped name (e.g. 'G28') or a JSON file path."""
    if os.path.sep not in source and not source.endswith(".json"):
        path = os.path.join(_DATA_DIR, source + ".json")
        if os.path.isfile(path):
            return RealArrangement.from_file(path)
        raise ArrangementError(
            "unknown arrangement %r; shipped: %s" % (source, ", ".join(available_arrangements()))
        )
    if not os.path.isfile(source):
        raise ArrangementError("no arrangement file at %s" % source)
    return RealArrangement.from_file(source)
