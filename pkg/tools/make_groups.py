"""Generate the shipped group data files under src/cherednik/groups/.

Each file records matrix generators plus a character table. The tables are not
transcribed from anywhere: every character comes from an explicit matrix (or
trace-formula) model built here, verified to be a homomorphism on the full
multiplication table, and the finished table must pass the loader's
orthogonality validation before it is written.

Run from the repository root:  python3 tools/make_groups.py
"""

import json
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from cherednik.exact.scalars import cyclotomic_field, rat
from cherednik.reflection import GroupSpec, ReflectionGroup, build_group

OUT_DIR = os.path.join(os.path.dirname(__file__), "..", "src", "cherednik", "groups")


def ser_scalar(field, v):
    return [str(q) for q in field.coeff_vector(v)]


def ser_matrix(field, M):
    return [[ser_scalar(field, a) for a in row] for row in M]


def element_order(group, i):
    k, p = 1, i
    while p != 0:
        p = group.mul[p][i]
        k += 1
    return k


def linear_characters(group):
    """All degree-1 characters, by brute force over root-of-unity generator values."""
    f = group.field
    n = f.conductor
    candidates = []
    seen = set()
    for k in range(max(n, 1)):
        for sign in (1, -1):
            v = f.zeta(k) * sign if n >= 3 else f.of(sign if k == 0 else sign)
            key = f.key(v)
            if key not in seen:
                seen.add(key)
                candidates.append(v)
    gens = group.gen_indices
    gen_orders = [element_order(group, g) for g in gens]
    out = []
    for combo in _product([[v for v in candidates if v ** o == f.of(1)] for o in gen_orders]):
        vals = [None] * group.order
        vals[0] = f.of(1)
        ok = True
        for i in range(1, group.order):
            w = group.words[i]
            v = f.of(1)
            for g in w:
                v = v * combo[g]
            vals[i] = v
        for a in range(group.order):
            for b in range(group.order):
                if vals[group.mul[a][b]] != vals[a] * vals[b]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(vals)
    # dedupe
    uniq = []
    seen = set()
    for vals in out:
        key = tuple(group.field.key(v) for v in vals)
        if key not in seen:
            seen.add(key)
            uniq.append(vals)
    return uniq


def _product(lists):
    if not lists:
        yield ()
        return
    for head in lists[0]:
        for rest in _product(lists[1:]):
            yield (head,) + rest


def trace_of_element(group, i):
    M = group.elements[i]
    t = group.field.zero
    for j in range(group.dim):
        t = t + M[j][j]
    return t


def model_check_and_trace(group, model):
    """model: element index -> square matrix (tuple rows). Returns per-element traces."""
    f = group.field
    size = len(model[0])

    def matmul(A, B):
        return tuple(
            tuple(sum((A[i][k] * B[k][j] for k in range(size)), f.zero) for j in range(size)) for i in range(size)
        )

    def key(M):
        return tuple(tuple(f.key(a) for a in row) for row in M)

    for a in range(group.order):
        for b in range(group.order):
            if key(matmul(model[a], model[b])) != key(model[group.mul[a][b]]):
                raise AssertionError("model is not a homomorphism")
    return [sum((model[i][j][j] for j in range(size)), f.zero) for i in range(group.order)]


def dihedral_two_dims(group, d):
    """Monomial models rho_m for the two-dimensional characters of G(d,d,2)."""
    f = group.field
    out = []
    for m in range(1, (d + 1) // 2):
        model = []
        for M in group.elements:
            if M[0][0]:
                model.append(((M[0][0] ** m, f.zero), (f.zero, M[1][1] ** m)))
            else:
                model.append(((f.zero, M[0][1] ** m), (M[1][0] ** m, f.zero)))
        out.append(model_check_and_trace(group, model))
    return out


def char_values_per_class(group, vals):
    reps = [cls[0] for cls in group.classes]
    per = [vals[r] for r in reps]
    # consistency: constant on classes
    for ci, cls in enumerate(group.classes):
        for e in cls:
            if vals[e] != per[ci]:
                raise AssertionError("character not constant on a conjugacy class")
    return per


def build_file(name, dim, conductor, order, gens_builder, chars_builder):
    f = cyclotomic_field(conductor)
    gens = gens_builder(f)
    spec = GroupSpec(
        {
            "name": name,
            "dim": dim,
            "conductor": conductor,
            "order": order,
            "generators": [ser_matrix(f, g) for g in gens],
        }
    )
    group = ReflectionGroup(spec, validate=False)
    assert group.order == order, (name, group.order, order)
    element_chars = chars_builder(group)
    data = {
        "name": name,
        "dim": dim,
        "conductor": conductor,
        "order": order,
        "generators": [ser_matrix(f, g) for g in gens],
        "classes": [{"word": group.words[cls[0]]} for cls in group.classes],
        "characters": [
            {"values": [ser_scalar(f, v) for v in char_values_per_class(group, vals)]} for vals in element_chars
        ],
    }
    path = os.path.join(OUT_DIR, name + ".json")
    with open(path, "w") as fh:
        json.dump(data, fh, indent=1)
        fh.write("\n")
    # full validation through the loader (orthogonality, degrees, class words)
    g = build_group(path)
    print("wrote %-8s |W|=%-3d classes=%-2d reflections=%-2d orbits=%s" % (
        name, g.order, len(g.classes), len(g.reflections),
        [(len(o), e) for o, e in zip(g.hyperplane_orbits, g.orbit_orders)]))
    return g


def make_cyclic(n):
    def gens_builder(f):
        z = f.zeta(1) if n >= 3 else f.of(-1 if n == 2 else 1)
        return [((z,),)]

    def chars_builder(group):
        f = group.field
        out = []
        for j in range(n):
            vals = []
            for i in range(group.order):
                a = group.elements[i][0][0]
                vals.append(a ** j)
            out.append(vals)
        return out

    build_file("mu%d" % n, 1, n, n, gens_builder, chars_builder)


def make_dihedral(d):
    def gens_builder(f):
        z = f.zeta(1) if d >= 3 else f.of(-1)
        zero, one = f.zero, f.one
        s0 = ((zero, one), (one, zero))
        s1 = ((zero, f.inv(z)), (z, zero))
        return [s0, s1]

    def chars_builder(group):
        return linear_characters(group) + dihedral_two_dims(group, d)

    build_file("dih%d" % (2 * d), 2, d, 2 * d, gens_builder, chars_builder)


def make_b2():
    def gens_builder(f):
        zero, one = f.of(0), f.of(1)
        s = ((zero, one), (one, zero))
        t = ((one, zero), (zero, f.of(-1)))
        return [s, t]

    def chars_builder(group):
        refl = [trace_of_element(group, i) for i in range(group.order)]
        model = [tuple(tuple(a for a in row) for row in M) for M in group.elements]
        model_check_and_trace(group, model)  # sanity: defining rep is a model
        return linear_characters(group) + [refl]

    build_file("B2", 2, 1, 8, gens_builder, chars_builder)


def make_g4():
    def gens_builder(f):
        z = f.zeta(1)
        third = rat(1, 3)
        s = ((f.one, f.zero), (f.zero, z))
        t = (
            ((z * 2 + 1) * third, (z - 1) * 2 * third),
            ((z - 1) * third, (z + 2) * third),
        )
        return [s, t]

    def chars_builder(group):
        f = group.field
        lins = linear_characters(group)
        refl = [trace_of_element(group, i) for i in range(group.order)]
        model = [tuple(tuple(a for a in row) for row in M) for M in group.elements]
        model_check_and_trace(group, model)
        twos = []
        for lin in lins:
            twos.append([refl[i] * lin[i] for i in range(group.order)])
        # symmetric square of the reflection representation:
        # chi(w) = (chi_refl(w)^2 + chi_refl(w^2)) / 2
        sym2 = []
        for i in range(group.order):
            sq = group.mul[i][i]
            sym2.append((refl[i] * refl[i] + refl[sq]) / 2)
        # drop duplicates: refl itself equals refl * trivial
        out = lins + twos + [sym2]
        uniq = []
        seen = set()
        for vals in out:
            key = tuple(f.key(v) for v in vals)
            if key not in seen:
                seen.add(key)
                uniq.append(vals)
        return uniq

    build_file("G4", 2, 3, 24, gens_builder, chars_builder)


def main():
    os.makedirs(OUT_DIR, exist_ok=True)
    for n in range(1, 13):
        make_cyclic(n)
    for d in range(3, 9):
        make_dihedral(d)
    make_b2()
    make_g4()


if __name__ == "__main__":
    main()
