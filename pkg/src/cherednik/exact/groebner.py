"""Buchberger Groebner bases over exact fields, with block elimination orders.

Pair management uses the Gebauer-Moeller criteria; selection is by ascending
(weighted degree, order key) of the pair lcm.  For homogeneous inputs under a
degree-graded order the computation can be soundly truncated at a total-degree
bound: every basis element of degree <= bound is still produced.

Kernels of graded algebra maps go through a degree-graded block order, which
for homogeneous inputs is simultaneously an elimination order (a homogeneous
polynomial whose leading term avoids the eliminated block lies entirely in the
kept block) and degree-compatible (so truncation stays sound).
"""

import heapq

from .mpoly import MPoly, PolyRing, grevlex_key


def make_order(kind, nsplit=None, ring=None):
    """Monomial order key: 'grevlex', 'lex', ('block', k) eliminating the first
    k variables, or ('gblock', k, ring) comparing weighted total degree first
    and then as the block order."""
    if kind == "grevlex":
        return grevlex_key
    if kind == "lex":
        return lambda e: e
    if kind == "block":
        k = nsplit

        def key(e):
            return (grevlex_key(e[:k]), grevlex_key(e[k:]))

        return key
    if kind == "gblock":
        k = nsplit
        weights = [sum(bd) for bd in ring.bidegrees]

        def gkey(e):
            w = 0
            for i, a in enumerate(e):
                if a:
                    w += weights[i] * a
            return (w, grevlex_key(e[:k]), grevlex_key(e[k:]))

        return gkey
    raise ValueError("unknown monomial order %r" % (kind,))


def _leading(f, key):
    e = max(f.d, key=key)
    return e, f.d[e]


def _divides(ea, eb):
    return all(a <= b for a, b in zip(ea, eb))


def reduce_poly(f, basis, key, budget=None):
    """Full remainder of f modulo the list `basis` under the given order."""
    leads = [_leading(g, key)[0] for g in basis]
    return _reduce(f, basis, leads, key, budget)


def _reduce(f, basis, leads, key, budget=None):
    ring = f.ring
    rem = dict(f.d)
    out = {}
    while rem:
        if budget is not None:
            budget.tick()
        e = max(rem, key=key)
        c = rem[e]
        hit = None
        for t, ge in enumerate(leads):
            if _divides(ge, e):
                hit = t
                break
        if hit is None:
            out[e] = c
            del rem[e]
            continue
        g = basis[hit]
        ge = leads[hit]
        gc = g.d[ge]
        f0 = c * ring.field.inv(gc)
        shift = tuple(a - b for a, b in zip(e, ge))
        for eb, cb in g.d.items():
            et = tuple(a + b for a, b in zip(shift, eb))
            c0 = rem.get(et)
            cc = cb * f0
            if c0 is None:
                rem[et] = -cc
            else:
                c0 = c0 - cc
                if c0:
                    rem[et] = c0
                else:
                    del rem[et]
    return MPoly(ring, out)


def _lcm(ea, eb):
    return tuple(max(a, b) for a, b in zip(ea, eb))


def _coprime(ea, eb):
    return all(a == 0 or b == 0 for a, b in zip(ea, eb))


def groebner_basis(polys, key=grevlex_key, budget=None, degree_bound=None, degree_fn=None):
    """Reduced monic Groebner basis of the ideal generated by `polys`.

    With degree_bound set (and homogeneous inputs under a degree-graded key),
    S-pairs whose lcm degree exceeds the bound are discarded; the result is
    then complete for every degree <= bound.
    """
    seed = [p for p in polys if p.d]
    if not seed:
        return []
    ring = seed[0].ring
    if degree_fn is None:
        degree_fn = lambda e: sum(e)

    G = []
    leads = []
    pairs = []  # heap of (deg, lcm key, i, j)

    def push_pair(i, j):
        l = _lcm(leads[i], leads[j])
        heapq.heappush(pairs, (degree_fn(l), key(l), i, j))

    def update(h):
        """Gebauer-Moeller pair update for the new element h (already monic)."""
        t = len(G)
        G.append(h)
        leads.append(_leading(h, key)[0])
        lt = leads[t]
        # candidate new pairs, pruned by the lcm-divisibility (M/F) criteria
        cand = list(range(t))
        lcms = [_lcm(leads[i], lt) for i in cand]
        keep = []
        for a, i in enumerate(cand):
            la = lcms[a]
            drop = False
            if not _coprime(leads[i], lt):
                for b in range(len(cand)):
                    if b == a:
                        continue
                    lb = lcms[b]
                    if lb == la:
                        if b < a:
                            drop = True
                            break
                    elif _divides(lb, la):
                        drop = True
                        break
            if not drop:
                keep.append(i)
        # chain criterion against surviving old pairs
        survivors = []
        while pairs:
            deg, lk, i, j = heapq.heappop(pairs)
            l = _lcm(leads[i], leads[j])
            if _divides(lt, l) and _lcm(leads[i], lt) != l and _lcm(leads[j], lt) != l:
                continue
            survivors.append((deg, lk, i, j))
        for item in survivors:
            heapq.heappush(pairs, item)
        # finally drop coprime-lead pairs (product criterion) and push the rest
        for i in keep:
            if not _coprime(leads[i], lt):
                push_pair(i, t)

    for p in sorted(seed, key=lambda q: key(_leading(q, key)[0])):
        monic = p.scale(ring.field.inv(_leading(p, key)[1]))
        r = _reduce(monic, G, leads, key, budget) if G else monic
        if r.d:
            update(r.scale(ring.field.inv(_leading(r, key)[1])))

    while pairs:
        if budget is not None:
            budget.tick()
        deg, _, i, j = heapq.heappop(pairs)
        if degree_bound is not None and deg > degree_bound:
            continue
        l = _lcm(leads[i], leads[j])
        si = tuple(a - b for a, b in zip(l, leads[i]))
        sj = tuple(a - b for a, b in zip(l, leads[j]))
        spoly = MPoly(ring, {tuple(a + b for a, b in zip(si, e)): c for e, c in G[i].d.items()}) - MPoly(
            ring, {tuple(a + b for a, b in zip(sj, e)): c for e, c in G[j].d.items()}
        )
        r = _reduce(spoly, G, leads, key, budget)
        if r.d:
            update(r.scale(ring.field.inv(_leading(r, key)[1])))

    # inter-reduce
    changed = True
    while changed:
        changed = False
        for i in range(len(G)):
            others = G[:i] + G[i + 1 :]
            if not others:
                continue
            r = reduce_poly(G[i], others, key)
            if r.d != G[i].d:
                changed = True
                if r.d:
                    G[i] = r.scale(ring.field.inv(_leading(r, key)[1]))
                else:
                    G.pop(i)
                    break
    G.sort(key=lambda g: key(_leading(g, key)[0]))
    return G


def ideal_member(f, gb, key=grevlex_key):
    return not reduce_poly(f, gb, key).d


def algebra_map_kernel(images, new_names, new_bidegrees=None, budget=None, degree_bound=None):
    """Kernel of k[new_names] -> R, z_i |-> images[i], by block elimination.

    Images must be (bi-)homogeneous; the new variables inherit their bidegrees,
    making the defining ideal homogeneous for the degree-graded block order.
    With degree_bound set, returns kernel generators complete through that
    weighted total degree.  Returns (ring over new_names, kernel generators).
    """
    if not images:
        raise ValueError("need at least one image")
    R = images[0].ring
    field = R.field
    k = R.n
    names = R.names + tuple(new_names)
    if new_bidegrees is None:
        new_bidegrees = tuple(img.bidegree() or (0, 0) for img in images)
    S = PolyRing(field, names, R.bidegrees + tuple(new_bidegrees))
    lift = []
    for i, img in enumerate(images):
        up = MPoly(S, {e + (0,) * len(new_names): c for e, c in img.d.items()})
        lift.append(S.var(k + i) - up)
    key = make_order("gblock", k, ring=S)
    weights = [sum(bd) for bd in S.bidegrees]

    def wdeg(e):
        return sum(weights[i] * a for i, a in enumerate(e) if a)

    gb = groebner_basis(lift, key, budget, degree_bound=degree_bound, degree_fn=wdeg)
    Z = PolyRing(field, tuple(new_names), tuple(new_bidegrees))
    kept = []
    for g in gb:
        if all(not any(e[:k]) for e in g.d):
            kept.append(MPoly(Z, {e[k:]: c for e, c in g.d.items()}))
    return Z, kept
