import math

from oracles import sl_order

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from expforge.errors import AmbientMismatch, CapExceeded
from expforge.ffield import make_field
from expforge.groups import (
    IndexDomain,
    MatrixElement,
    PermElement,
    TupleElement,
    VectorDomain,
    act_on_points,
    alt_generators,
    element_from_json,
    element_to_json,
    enumerate_group,
    identity_matrix,
    identity_perm,
    perm_parity,
    psl_reduce,
    three_cycle,
    transposition,
)


def sl2_pair(spec):
    a = MatrixElement([[1, 1], [0, 1]], spec)
    b = MatrixElement([[0, 1], [-1, 0]], spec)
    return a, b


def test_matrix_compose_example():
    f3 = make_field(3)
    a = MatrixElement([[1, 1], [0, 1]], f3)
    assert (a * a).rows == MatrixElement([[1, 2], [0, 1]], f3).rows


def test_matrix_inverse_examples():
    f5 = make_field(5)
    a = MatrixElement([[1, 1], [0, 1]], f5)
    assert a.inverse() == MatrixElement([[1, 4], [0, 1]], f5)
    b = MatrixElement([[0, 1], [-1, 0]], f5)
    assert b.inverse() == MatrixElement([[0, -1], [1, 0]], f5)
    assert a * a.inverse() == identity_matrix(f5, 2)


def test_perm_compose_convention():
    # (0 1) composed with (1 2) gives the 3-cycle (0 1 2) under a(b(x))
    a = transposition(3, 0, 1)
    b = transposition(3, 1, 2)
    assert (a * b) == PermElement([1, 2, 0])


def test_perm_inverse_and_tuple():
    g = PermElement([2, 0, 1])
    assert g * g.inverse() == identity_perm(3)
    f3 = make_field(3)
    t = TupleElement((MatrixElement([[1, 1], [0, 1]], f3), MatrixElement([[1, 0], [1, 1]], f3)))
    assert t * t.inverse() == TupleElement((identity_matrix(f3, 2), identity_matrix(f3, 2)))


def test_identity_composition():
    f7 = make_field(7)
    a, b = sl2_pair(f7)
    assert identity_matrix(f7, 2) * a == a
    assert a * identity_matrix(f7, 2) == a
    assert b * identity_matrix(f7, 2) == b


def test_ambient_mismatch():
    f3, f5 = make_field(3), make_field(5)
    with pytest.raises(AmbientMismatch):
        MatrixElement([[1, 0], [0, 1]], f3) * MatrixElement([[1, 0], [0, 1]], f5)
    with pytest.raises(AmbientMismatch):
        PermElement([0, 1]) * PermElement([0, 1, 2])


def test_canonical_key_distinguishes():
    f3 = make_field(3)
    a, b = sl2_pair(f3)
    assert a.key != b.key
    assert a.key == MatrixElement([[1, 1], [0, 1]], f3).key


@pytest.mark.parametrize("q", [2, 3, 5, 7])
def test_enumerate_sl2_orders(q):
    spec = make_field(q)
    a, b = sl2_pair(spec)
    grp = enumerate_group([a, b])
    assert grp.order == sl_order(2, q)
    assert grp.element_at(0) == identity_matrix(spec, 2)


def test_standard_pair_over_extension_generates_prime_subgroup():
    # entries of A, B lie in the prime subfield, so over F_4 they close
    # into a copy of SL_2(F_2); full generation needs a third element
    a, b = sl2_pair(make_field(2, 2))
    assert enumerate_group([a, b]).order == sl_order(2, 2)


def test_enumerate_sl3_f2_order():
    f2 = make_field(2)
    gens = [
        MatrixElement([[1, 1, 0], [0, 1, 0], [0, 0, 1]], f2),
        MatrixElement([[1, 0, 0], [1, 1, 0], [0, 0, 1]], f2),
        MatrixElement([[1, 0, 0], [0, 1, 1], [0, 0, 1]], f2),
        MatrixElement([[1, 0, 0], [0, 1, 0], [0, 1, 1]], f2),
    ]
    assert enumerate_group(gens).order == 168


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_enumerate_alt_orders(n):
    grp = enumerate_group(alt_generators(n))
    assert grp.order == math.factorial(n) // 2


def test_enumerate_identity_only():
    f3 = make_field(3)
    grp = enumerate_group([identity_matrix(f3, 2)])
    assert grp.order == 1


def test_enumerate_cap_exceeded():
    f5 = make_field(5)
    with pytest.raises(CapExceeded):
        enumerate_group(list(sl2_pair(f5)), cap=10)


def test_engine_paths_agree():
    f3 = make_field(3)
    a, b = sl2_pair(f3)
    fast = enumerate_group([a, b], engine="vector")
    slow = enumerate_group([a, b], engine="generic")
    assert fast.order == slow.order == 24
    for i in range(fast.order):
        assert fast.element_at(i) == slow.element_at(i)
    g = a * b
    assert np.array_equal(fast.vertex_perm(g), slow.vertex_perm(g))


def test_engine_paths_agree_perm():
    gens = alt_generators(5)
    fast = enumerate_group(gens, engine="vector")
    slow = enumerate_group(gens, engine="generic")
    assert fast.order == slow.order == 60
    for i in range(0, 60, 7):
        assert fast.element_at(i) == slow.element_at(i)


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_compose_associative_random(data):
    f5 = make_field(5)
    grp = enumerate_group(list(sl2_pair(f5)))
    idx = st.integers(min_value=0, max_value=grp.order - 1)
    a, b, c = (grp.element_at(data.draw(idx)) for _ in range(3))
    assert (a * b) * c == a * (b * c)


def test_compose_associative_bulk_per_kind():
    # 10^4 random triples per element kind
    rng = np.random.default_rng(2024)
    mat_grp = enumerate_group(list(sl2_pair(make_field(5))))
    mats = [mat_grp.element_at(i) for i in range(mat_grp.order)]
    perm_grp = enumerate_group(alt_generators(5))
    perms = [perm_grp.element_at(i) for i in range(perm_grp.order)]
    tuples = [TupleElement((m, m.inverse())) for m in mats[:60]]
    for pool in (mats, perms, tuples):
        picks = rng.integers(0, len(pool), size=(10_000, 3))
        for i, j, k in picks:
            a, b, c = pool[i], pool[j], pool[k]
            assert (a * b) * c == a * (b * c)


@settings(max_examples=100, deadline=None)
@given(st.permutations(list(range(6))), st.permutations(list(range(6))))
def test_perm_act_is_hom(p1, p2):
    a, b = PermElement(p1), PermElement(p2)
    dom = IndexDomain(6)
    assert act_on_points(a * b, dom) == act_on_points(a, dom) * act_on_points(b, dom)


def test_inverse_laws_exhaustive_small():
    f3 = make_field(3)
    grp = enumerate_group(list(sl2_pair(f3)))
    assert grp.order <= 360
    ident = identity_matrix(f3, 2)
    for g in grp.elements():
        assert g * g.inverse() == ident
        assert g.inverse() * g == ident


def test_psl_reduce_sl2_f3():
    f3 = make_field(3)
    grp = enumerate_group(list(sl2_pair(f3)))
    minus = MatrixElement([[-1, 0], [0, -1]], f3)
    reps = set()
    for g in grp.elements():
        r = psl_reduce(g)
        assert r == psl_reduce(minus * g)
        reps.add(r.key)
    assert len(reps) == 12  # |PSL_2(F_3)| = 24 / |{+-I}|

    # homomorphism to the quotient, exhaustive over all 24 x 24 pairs
    reduced = {i: psl_reduce(grp.element_at(i)) for i in range(grp.order)}
    for i in range(grp.order):
        for j in range(grp.order):
            a, b = grp.element_at(i), grp.element_at(j)
            assert psl_reduce(a * b) == psl_reduce(reduced[i] * reduced[j])


def test_psl_reduce_trivial_center():
    f2 = make_field(2)
    a, b = sl2_pair(f2)
    assert psl_reduce(a) == a
    assert psl_reduce(b) == b


def test_act_identity_and_transitivity():
    f5 = make_field(5)
    dom = VectorDomain(f5, 2)
    assert dom.size == 24
    ident = act_on_points(identity_matrix(f5, 2), dom)
    assert ident == identity_perm(24)
    # orbit of the generated permutation group covers all 24 nonzero vectors
    a, b = sl2_pair(f5)
    pa, pb = act_on_points(a, dom), act_on_points(b, dom)
    reached = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for pg in (pa, pb):
                y = pg.apply(x)
                if y not in reached:
                    reached.add(y)
                    nxt.append(y)
        frontier = nxt
    assert len(reached) == 24


def test_sl3_f2_acts_transitively_on_7_points():
    f2 = make_field(2)
    dom = VectorDomain(f2, 3)
    assert dom.size == 7
    gens = [
        MatrixElement([[1, 1, 0], [0, 1, 0], [0, 0, 1]], f2),
        MatrixElement([[0, 0, 1], [1, 0, 0], [0, 1, 0]], f2),
    ]
    perms = [act_on_points(g, dom) for g in gens]
    grp = enumerate_group(perms)
    orbit = {0}
    for g in grp.elements():
        orbit.add(g.apply(0))
    assert orbit == set(range(7))


def test_act_hom_on_vector_domain():
    # 10^3 random pairs on the vector domain
    f3 = make_field(3)
    dom = VectorDomain(f3, 2)
    grp = enumerate_group(list(sl2_pair(f3)))
    cache = {i: act_on_points(grp.element_at(i), dom) for i in range(grp.order)}
    rng = np.random.default_rng(11)
    for _ in range(1000):
        i, j = int(rng.integers(grp.order)), int(rng.integers(grp.order))
        g, h = grp.element_at(i), grp.element_at(j)
        assert act_on_points(g * h, dom) == cache[i] * cache[j]


def test_perm_parity():
    assert perm_parity([0, 1, 2]) == 0
    assert perm_parity([1, 0, 2]) == 1
    assert perm_parity(three_cycle(5, 0, 1, 2).image) == 0


def test_element_json_roundtrip():
    f9 = make_field(3, 2)
    m = MatrixElement([[f9.gen(), f9.one()], [f9.zero(), f9.gen() * f9.gen()]], f9)
    assert element_from_json(element_to_json(m)) == m
    p = PermElement([2, 0, 1])
    assert element_from_json(element_to_json(p)) == p
    t = TupleElement((m, m.inverse()))
    assert element_from_json(element_to_json(t)) == t


def test_index_of_and_contains():
    f3 = make_field(3)
    a, b = sl2_pair(f3)
    grp = enumerate_group([a, b])
    assert grp.index_of(identity_matrix(f3, 2)) == 0
    assert a in grp
    assert grp.element_at(grp.index_of(a * b)) == a * b
    with pytest.raises(AmbientMismatch):
        enumerate_group([identity_matrix(f3, 2)]).index_of(a)
