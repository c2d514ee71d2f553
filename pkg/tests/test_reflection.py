"""Reflection-group layer: closure, reflections, hyperplanes, characters, parameters."""

import json

import pytest

from cherednik.exact import kernel_basis, rat
from cherednik.reflection import (
    GroupSpec,
    GroupSpecError,
    ReflectionGroup,
    available_groups,
    build_group,
    builtin_group_path,
)

EXPECTED_ORDERS = {
    **{"mu%d" % n: n for n in range(1, 13)},
    **{"dih%d" % (2 * d): 2 * d for d in range(3, 9)},
    "B2": 8,
    "G4": 24,
}


def test_shipped_inventory():
    assert set(available_groups()) == set(EXPECTED_ORDERS)


@pytest.mark.parametrize("name", sorted(EXPECTED_ORDERS))
def test_group_loads_and_table_validates(name):
    g = build_group(name)
    assert g.order == EXPECTED_ORDERS[name]
    assert g.validate_character_table() is True
    assert sum(g.class_sizes) == g.order
    assert g.classes[g.class_of[0]] == [0]
    # every element's word multiplies back to the element
    for i in range(g.order):
        assert g.element_of_word(g.words[i]) == i


def test_mu2_structure():
    g = build_group("mu2")
    assert g.order == 2
    assert len(g.reflections) == 1
    assert g.orbit_orders == [2]
    assert len(g.hyperplane_orbits) == 1


def test_b2_structure():
    g = build_group("B2")
    assert g.order == 8
    assert len(g.reflections) == 4
    assert len(g.reflection_classes) == 2
    assert sorted(len(c) for c in g.reflection_classes) == [2, 2]
    assert g.orbit_orders == [2, 2]
    assert sorted(g.character_degrees()) == [1, 1, 1, 1, 2]
    assert g.k_names == ["K1_1", "K2_1"]


def test_g4_structure():
    g = build_group("G4")
    assert g.order == 24
    assert len(g.reflections) == 8
    assert len(g.hyperplane_orbits) == 1
    assert g.orbit_orders == [3]
    assert sorted(g.character_degrees()) == [1, 1, 1, 2, 2, 2, 3]
    center = [
        w
        for w in range(g.order)
        if all(g.mul[w][v] == g.mul[v][w] for v in range(g.order))
    ]
    assert len(center) == 2
    assert g.k_names == ["K1_1", "K1_2"]


@pytest.mark.parametrize("name", ["B2", "G4", "dih6", "dih8", "mu4"])
def test_reflection_geometry(name):
    g = build_group(name)
    f = g.field
    for r in g.reflections:
        M = g.elements[r.index]
        n = g.dim
        # the matrix scales the coroot by its determinant
        img = [sum((M[i][j] * r.coroot[j] for j in range(n)), f.zero) for i in range(n)]
        assert img == [r.eps * a for a in r.coroot]
        # and fixes the hyperplane ker(alpha) pointwise
        for v in kernel_basis(f, [list(r.alpha)]):
            assert [sum((M[i][j] * v[j] for j in range(n)), f.zero) for i in range(n)] == list(v)
        # root/coroot pairing nonzero (denominator of the commutation relation)
        pairing = sum((a * b for a, b in zip(r.coroot, r.alpha)), f.zero)
        assert pairing
        # fixed space has codimension exactly 1
        assert len(kernel_basis(f, [[M[i][j] - (f.one if i == j else f.zero) for j in range(n)] for i in range(n)])) == n - 1


@pytest.mark.parametrize("name", ["B2", "G4", "dih6", "dih8", "mu5"])
def test_parameter_roundtrip(name):
    g = build_group(name)
    f = g.field
    m = g.n_param
    samples = [
        [f.of(rat(i + 1)) for i in range(m)],
        [f.of(rat(3 - 2 * i, 7)) for i in range(m)],
    ]
    for k in samples:
        c = g.c_of_k(k)
        assert g.k_of_c(c) == k
    for i in range(m):
        unit = [f.of(1 if j == i else 0) for j in range(m)]
        assert g.form_k_to_c(g.form_c_to_k(unit)) == unit
        assert g.form_c_to_k(g.form_k_to_c(unit)) == unit
    assert g.c_of_k([f.zero] * m) == [f.zero] * m


def test_mu2_parameter_map_doubles():
    g = build_group("mu2")
    assert g.c_of_k([rat(1)]) == [rat(2)]


def test_regular_vectors():
    b2 = build_group("B2")
    v = [rat(1), rat(2)]
    for alpha in b2.hyperplanes:
        assert sum((a * b for a, b in zip(alpha, v)), b2.field.zero)
    for name in sorted(EXPECTED_ORDERS):
        g = build_group(name)
        w = g.regular_vector(seed=3)
        for alpha in g.hyperplanes:
            assert sum((a * b for a, b in zip(alpha, w)), g.field.zero)
        assert g.regular_vector(seed=3) == w
        assert g.regular_vector(seed=4) is not None


def _convolve(g, a, b):
    out = {}
    for w, cw in a.items():
        for v, cv in b.items():
            u = g.mul[w][v]
            out[u] = out.get(u, g.field.zero) + cw * cv
    return {k: v for k, v in out.items() if v}


@pytest.mark.parametrize("name", ["B2", "G4", "mu6", "dih6"])
def test_stabilizer_idempotents(name):
    g = build_group(name)
    for h in range(len(g.hyperplanes)):
        e = len(g.hyperplane_stabilizers[h])
        total = {}
        for j in range(e):
            idem = g.hyperplane_idempotent(h, j)
            assert _convolve(g, idem, idem) == idem
            for w, c in idem.items():
                total[w] = total.get(w, g.field.zero) + c
        total = {w: c for w, c in total.items() if c}
        assert total == {0: g.field.of(1)}


def test_duplicated_character_row_rejected():
    with open(builtin_group_path("mu3")) as fh:
        data = json.load(fh)
    data["characters"][2] = data["characters"][1]
    with pytest.raises(GroupSpecError):
        ReflectionGroup(GroupSpec(data))


def test_wrong_order_rejected():
    with open(builtin_group_path("mu3")) as fh:
        data = json.load(fh)
    data["order"] = 4
    with pytest.raises(GroupSpecError):
        ReflectionGroup(GroupSpec(data))


def test_non_reflection_group_rejected():
    # the cyclic group generated by a 2x2 rotation of order 4 contains no reflection
    data = {
        "name": "rot4",
        "dim": 2,
        "conductor": 1,
        "order": 4,
        "generators": [[[["0"], ["-1"]], [["1"], ["0"]]]],
    }
    with pytest.raises(GroupSpecError):
        ReflectionGroup(GroupSpec(data))


def test_x_y_actions_are_dual():
    g = build_group("G4")
    f = g.field
    n = g.dim
    for w in range(g.order):
        Y = g.y_images(w)  # columns of M
        X = g.x_images(w)  # rows of M^{-1}
        # <w.x_i, w.y_j> = delta_ij
        for i in range(n):
            for j in range(n):
                s = sum((X[i][k] * Y[j][k] for k in range(n)), f.zero)
                assert s == (f.one if i == j else f.zero)
