"""Tests for the center pipeline: Molien series, invariants, presentation, Poisson."""

import pytest

from cherednik.reflection import build_group
from cherednik.algebra import CherednikAlgebra
from cherednik.exact.mpoly import grevlex_key
from cherednik.exact.linalg import kernel_basis
from cherednik.exact.groebner import groebner_basis, reduce_poly
from cherednik import center as C


@pytest.fixture(scope="module")
def ctx():
    cache = {}

    def get(name):
        if name not in cache:
            g = build_group(name)
            A = CherednikAlgebra(g)
            s = C.fundamental_invariants(g)
            cache[name] = (g, A, s)
        return cache[name]

    return get


# ------------------------------------------------------------------- Molien


def invariant_dim_direct(group, ring, sysobj, bidegree):
    """Slice dimension computed from scratch as the kernel of (action - id)."""
    monos = sorted(ring.monomials_of_bidegree(bidegree), key=grevlex_key, reverse=True)
    index = {mo: i for i, mo in enumerate(monos)}
    field = group.field
    n = len(monos)
    stacked = []
    for gidx in group.gen_indices:
        # columns: image coordinates of each basis monomial under (action - id)
        cols = []
        for mo in monos:
            img = sysobj._act_mono(gidx, mo)
            col = [field.zero] * n
            for e, c in img.d.items():
                col[index[e]] = c
            col[index[mo]] = col[index[mo]] - field.one
            cols.append(col)
        for i in range(n):
            stacked.append([cols[j][i] for j in range(n)])
    return len(kernel_basis(field, stacked, ncols=n))


@pytest.mark.parametrize(
    "name,bidegree",
    [
        ("B2", (2, 2)),
        ("B2", (0, 4)),
        ("B2", (3, 1)),
        ("B2", (1, 2)),
        ("dih6", (2, 2)),
        ("dih6", (0, 3)),
        ("G4", (1, 1)),
        ("G4", (0, 4)),
        ("G4", (3, 3)),
    ],
)
def test_molien_matches_direct_kernel(ctx, name, bidegree):
    g, A, s = ctx(name)
    expect = invariant_dim_direct(g, s.ring, s, bidegree)
    assert s.molien.get(bidegree, 0) == expect


def test_molien_trivial_group():
    g = build_group("mu1")
    mol = C.molien_bigraded(g, 4)
    for d in range(5):
        for e in range(5 - d):
            assert mol.get((d, e), 0) == 1  # everything is invariant


# ------------------------------------------------------- fundamental invariants


def test_b2_invariants_bidegrees(ctx):
    _, _, s = ctx("B2")
    assert s.bidegrees == [(0, 2), (1, 1), (2, 0), (0, 4), (1, 3), (2, 2), (3, 1), (4, 0)]
    assert s.complete


def test_mu2_invariants(ctx):
    _, _, s = ctx("mu2")
    assert [str(p) for p in s.gens] == ["y1^2", "x1*y1", "x1^2"]


def test_g4_invariant_zdegrees(ctx):
    _, _, s = ctx("G4")
    zdegs = sorted(bd[0] - bd[1] for bd in s.bidegrees)
    assert zdegs == [-6, -4, -2, 0, 0, 2, 4, 6]
    assert s.complete


def test_invariants_are_invariant(ctx):
    for name in ["B2", "dih6", "G4"]:
        g, _, s = ctx(name)
        for p in s.gens:
            assert s.is_invariant(p)


def test_invariants_minimal(ctx):
    """No generator lies in the span of products of the others at its bidegree."""
    g, _, s = ctx("B2")
    field = g.field
    for k, (gen, bd) in enumerate(zip(s.gens, s.bidegrees)):
        monos = sorted(s.ring.monomials_of_bidegree(bd), key=grevlex_key, reverse=True)
        index = {mo: i for i, mo in enumerate(monos)}
        span = C._Span(field, len(monos))
        for key in s.gen_monomials(bd):
            if any(i == k for i, _ in key):
                continue
            span.insert(C._vec(s.product(key), index, field))
        assert span.insert(C._vec(gen, index, field)), k


def test_dihedral_invariant_counts(ctx):
    for name, n in [("dih6", 7), ("dih8", 8), ("dih10", 9)]:
        _, _, s = ctx(name)
        assert len(s.gens) == n


# --------------------------------------------------------- center generators


def test_center_generators_cut_down_to_invariants(ctx):
    g, A, s = ctx("B2")
    zg = C.center_generators(A, s)
    for z, f in zip(zg, s.gens):
        assert A.trunc(z) == C.embed_invariant(A, f)


def test_b2_euler_among_generators(ctx):
    g, A, s = ctx("B2")
    zg = C.center_generators(A, s)
    assert zg[1] == A.euler_element()


def test_dih6_center_generators_central(ctx):
    g, A, s = ctx("dih6")
    for z in C.center_generators(A, s):
        assert A.is_central(z)


# ------------------------------------------------------------------- the map


def test_pi_on_variables_and_products(ctx):
    g, A, s = ctx("B2")
    cmap = C.CenterMap(A, s)
    for i in range(len(cmap.zgens)):
        assert cmap.pi(cmap.z_var(i)) == cmap.zgens[i]
    F = cmap.z_var(0) * cmap.z_var(2) + cmap.c_var(0) * cmap.z_var(1)
    want = A.mul(cmap.zgens[0], cmap.zgens[2]) + cmap.zgens[1].scale(A.ring.var(A.iC))
    assert cmap.pi(F) == want


def test_split_c0_simple_cases(ctx):
    g, A, s = ctx("B2")
    cmap = C.CenterMap(A, s)
    eu = A.euler_element()
    u = eu.scale(A.ring.var(A.iC))
    parts = cmap.split_C0(u)
    assert list(parts) == [0] and parts[0] == eu
    assert cmap.split_C0(A.zero()) == {}
    with pytest.raises(C.CenterError):
        cmap.split_C0(eu)  # truncation has a parameter-free term


def test_preimage_of_generators_and_square(ctx):
    g, A, s = ctx("B2")
    cmap = C.CenterMap(A, s)
    for i in [0, 1, 5]:
        F = cmap.preimage(cmap.zgens[i], validate=True)
        assert F == cmap.z_var(i)
    eu = cmap.zgens[1]
    F = cmap.preimage(A.mul(eu, eu), validate=True)
    assert (cmap.pi(F) - A.mul(eu, eu)).is_zero()


def test_preimage_of_poisson_bracket(ctx):
    g, A, s = ctx("B2")
    cmap = C.CenterMap(A, s)
    br = C.poisson_bracket(A, cmap.zgens[1], cmap.zgens[5])
    F = cmap.preimage(br, validate=True)
    assert (cmap.pi(F) - br).is_zero()


# --------------------------------------------------------------- presentation


def test_mu2_presentation(ctx):
    g, A, s = ctx("mu2")
    pres = C.presentation(A, s)
    assert len(pres.relations) == 1
    assert str(pres.relations[0]) == "-C1^2 + z2^2 - z1*z3"


@pytest.fixture(scope="module")
def b2_presentation(ctx):
    g, A, s = ctx("B2")
    return ctx("B2") + (C.presentation(A, s),)


def test_b2_relation_count_and_bidegrees(b2_presentation):
    g, A, s, pres = b2_presentation
    assert len(pres.relations) == 9
    bds = sorted(r.bidegree() for r in pres.relations)
    assert bds == sorted([(2, 4), (3, 3), (4, 2), (2, 6), (3, 5), (4, 4), (4, 4), (5, 3), (6, 2)])


def test_b2_relations_vanish(b2_presentation):
    g, A, s, pres = b2_presentation
    cmap = pres.cmap
    for rho in pres.relations:
        assert cmap.pi(rho).is_zero()


def test_b2_relations_reduce_to_kernel_mod_c(b2_presentation):
    g, A, s, pres = b2_presentation
    for rho, rho0 in zip(pres.relations, pres.rho0):
        cfree = rho.filter_terms(lambda e: not any(e[i] for i in range(pres.cmap.nC)))
        assert cfree == C._lift_z_only(pres.cmap, rho0)


def test_b2_hilbert_series_match(b2_presentation):
    g, A, s, pres = b2_presentation
    dims = C.hilbert_quotient_dims(pres.Zring, pres.kernel_gb, 8)
    for total in range(9):
        for d in range(total + 1):
            e = total - d
            assert dims.get((d, e), 0) == s.molien.get((d, e), 0), (d, e)


def test_dih6_relation_count(ctx):
    g, A, s = ctx("dih6")
    pres = C.presentation(A, s)
    assert len(pres.relations) == 5


@pytest.mark.slow
def test_g4_relation_count_and_bidegrees(ctx):
    g, A, s = ctx("G4")
    pres = C.presentation(A, s)
    assert len(pres.relations) == 9
    bds = sorted(r.bidegree() for r in pres.relations)
    want = [(3, 7), (3, 9), (4, 4), (4, 6), (6, 4), (6, 6), (6, 6), (7, 3), (9, 3)]
    assert bds == sorted(want)


# -------------------------------------------------------------------- Poisson


def test_euler_bracket_eigenvalues(ctx):
    g, A, s = ctx("B2")
    zg = C.center_generators(A, s)
    eu = zg[1]
    for z, bd in zip(zg, s.bidegrees):
        d = bd[0] - bd[1]
        br = C.poisson_bracket(A, eu, z)
        assert br == z.scale(g.field.of(d)), bd


def test_poisson_antisymmetry_and_self(ctx):
    g, A, s = ctx("B2")
    zg = C.center_generators(A, s)
    assert C.poisson_bracket(A, zg[3], zg[3]).is_zero()
    a = C.poisson_bracket(A, zg[0], zg[6])
    b = C.poisson_bracket(A, zg[6], zg[0])
    assert (a + b).is_zero()


def test_poisson_leibniz(ctx):
    g, A, s = ctx("B2")
    zg = C.center_generators(A, s)
    a, b, c = zg[1], zg[0], zg[2]
    lhs = C.poisson_bracket(A, a, A.mul(b, c))
    rhs = A.mul(C.poisson_bracket(A, a, b), c) + A.mul(b, C.poisson_bracket(A, a, c))
    assert (lhs - rhs).is_zero()


def test_poisson_jacobi(ctx):
    g, A, s = ctx("B2")
    zg = C.center_generators(A, s)
    a, b, c = zg[0], zg[1], zg[7]
    total = (
        C.poisson_bracket(A, a, C.poisson_bracket(A, b, c))
        + C.poisson_bracket(A, b, C.poisson_bracket(A, c, a))
        + C.poisson_bracket(A, c, C.poisson_bracket(A, a, b))
    )
    assert total.is_zero()


def test_poisson_parameter_linearity(ctx):
    g, A, s = ctx("B2")
    zg = C.center_generators(A, s)
    cvar = A.ring.var(A.iC)
    lhs = C.poisson_bracket(A, zg[0].scale(cvar), zg[6])
    rhs = C.poisson_bracket(A, zg[0], zg[6]).scale(cvar)
    assert (lhs - rhs).is_zero()


def test_euler_row_of_poisson_matrix(ctx):
    g, A, s = ctx("B2")
    cmap = C.CenterMap(A, s)
    row = []
    for j in range(8):
        br = C.poisson_bracket(A, cmap.zgens[1], cmap.zgens[j])
        row.append(cmap.preimage(br) if br else cmap.ring_z.zero)
    # eigenvalue pattern by Z-degree of each generator
    coeffs = [-2, 0, 2, -4, -2, 0, 2, 4]
    for j, (F, k) in enumerate(zip(row, coeffs)):
        want = cmap.z_var(j).scale(g.field.of(k))
        assert F == want, j
