import pytest

from expforge.errors import OddAction, SeparabilityViolated, TooLarge
from expforge.ffield import make_field
from expforge.gensets import (
    CubeSpec,
    GeneratingSet,
    alt_base_action,
    cube_base_action,
    cube_embeddings,
    elementary_matrix,
    elementary_set,
    nonsplit_torus,
    power_generators,
    restriction_of_scalars,
    search_conjugator,
    sl2_over_extension_plus_conjugator,
    sl2_standard,
    torus_conjugate_set,
)
from expforge.groups import (
    GroupHandle,
    MatrixElement,
    PermElement,
    enumerate_group,
    identity_matrix,
)

from oracles import sl_order


def test_sl2_standard_f2_collapses_to_two_involutions():
    # both A and B square to the identity over F_2, so the closed set has 2 elements
    s = sl2_standard(make_field(2))
    assert len(s) == 2
    for _, g in s:
        assert g * g == identity_matrix(g.spec, 2)


def test_sl2_standard_sizes_and_generation():
    assert len(sl2_standard(make_field(5))) == 4
    for q in (2, 3, 5, 7):
        s = sl2_standard(make_field(q))
        assert enumerate_group(s.members()).order == sl_order(2, q)


@pytest.mark.parametrize(
    "q_args,d,expected",
    [((2, 1), 2, 3), ((3, 1), 2, 4), ((4, None), 2, 5), ((5, 1), 2, 6), ((2, 1), 3, 7)],
)
def test_nonsplit_torus_orders(q_args, d, expected):
    spec = make_field(2, 2) if q_args[0] == 4 else make_field(*q_args)
    torus = nonsplit_torus(spec, d)
    assert len(torus) == expected
    one = spec.one()
    for h in torus:
        assert h.det() == one


def test_nonsplit_torus_f9_is_cyclic():
    torus = nonsplit_torus(make_field(3), 2)
    assert len(torus) == 4
    orders = set()
    ident = identity_matrix(make_field(3), 2)
    for h in torus:
        g, o = h, 1
        while g != ident:
            g, o = g * h, o + 1
        orders.add(o)
    assert 4 in orders  # an order-4 element generates the whole torus


def test_nonsplit_torus_too_large():
    with pytest.raises(TooLarge):
        nonsplit_torus(make_field(2), 25, cap=1000)


def test_torus_conjugate_identity_and_central():
    f3 = make_field(3)
    torus = nonsplit_torus(f3, 2)
    ident = identity_matrix(f3, 2)
    assert len(torus_conjugate_set(torus, ident)) == 1
    minus = MatrixElement([[-1, 0], [0, -1]], f3)
    central = torus_conjugate_set(torus, minus)
    assert set(g.key for _, g in central) == {minus.key}  # -I is its own inverse


def test_torus_conjugate_f3_with_a_generates():
    f3 = make_field(3)
    torus = nonsplit_torus(f3, 2)
    a = MatrixElement([[1, 1], [0, 1]], f3)
    s = torus_conjugate_set(torus, a)
    # the order-4 torus contains -I, which conjugates trivially, so the
    # conjugates coincide in pairs: 4 distinct elements, within the 2|H| bound
    assert len(s) == 4
    assert len(s) <= 2 * len(torus)
    assert enumerate_group(s.members()).order == sl_order(2, 3)


def test_search_conjugator_deterministic():
    torus = nonsplit_torus(make_field(3), 2)
    r1 = search_conjugator(torus, trials=5, seed=11)
    r2 = search_conjugator(torus, trials=5, seed=11)
    assert r1.conjugator == r2.conjugator
    assert r1.lambda2 == r2.lambda2
    assert 0.0 <= r1.lambda2 <= 1.0
    assert r1.n == 24


def test_search_conjugator_improves_with_trials():
    torus = nonsplit_torus(make_field(3), 2)
    few = search_conjugator(torus, trials=2, seed=3)
    many = search_conjugator(torus, trials=30, seed=3)
    assert many.lambda2 <= few.lambda2


def test_restriction_of_scalars_identity_and_scalar():
    f2, f4 = make_field(2), make_field(2, 2)
    ident4 = identity_matrix(f4, 2)
    assert restriction_of_scalars(ident4, f2) == identity_matrix(f2, 4)
    t = f4.gen()
    scalar = MatrixElement([[t, f4.zero()], [f4.zero(), t]], f4)
    image = restriction_of_scalars(scalar, f2)
    ints = [[e.coeffs[0] for e in row] for row in image.rows]
    # block diagonal pair of companion matrices of x^2+x+1
    assert ints == [[0, 1, 0, 0], [1, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 1]]


def test_restriction_of_scalars_homomorphism_exhaustive_sl2_f4():
    f2, f4 = make_field(2), make_field(2, 2)
    group = enumerate_group(elementary_set(2, f4).members())
    assert group.order == 60
    images = {}
    for i in range(group.order):
        g = group.element_at(i)
        images[g.key] = restriction_of_scalars(g, f2)
    assert len(set(m.key for m in images.values())) == 60  # injective
    for i in range(group.order):
        g = group.element_at(i)
        for j in range(group.order):
            h = group.element_at(j)
            assert images[(g * h).key] == images[g.key] * images[h.key]


def test_sl2_over_extension_m1_degenerates():
    s = sl2_over_extension_plus_conjugator(make_field(3), 1, trials=4, seed=5)
    assert s.ambient.degree == 2
    assert len(s) <= 6
    assert enumerate_group(s.members()).order == sl_order(2, 3)


def test_elementary_set_counts():
    f2, f3 = make_field(2), make_field(3)
    s22 = elementary_set(2, f2)
    assert len(s22) == 2
    for _, g in s22:
        assert g.inverse() == g
    assert len(elementary_set(3, f3)) == 12  # 6 positions x 1 value x 2 signs
    assert len(elementary_set(3, make_field(2, 2))) == 12  # 6 positions x {1, t}, char 2


@pytest.mark.parametrize("d,q", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_elementary_set_generates(d, q):
    spec = make_field(q)
    s = elementary_set(d, spec)
    assert enumerate_group(s.members()).order == sl_order(d, q)


def test_power_generators_s1_k1_reduces_to_elementary():
    s = power_generators(1, 1)
    base = elementary_set(3, make_field(2))
    assert {g.key for _, g in s} == {g.key for _, g in base}


def test_power_generators_s2_k1_generates_product():
    s = power_generators(1, 2)
    assert len(s) <= 20
    grp = enumerate_group(s.members())
    assert grp.order == 168 * 168


def test_power_generators_separability():
    with pytest.raises(SeparabilityViolated):
        power_generators(1, 3)  # only 2 linear irreducibles over F_2
    with pytest.raises(SeparabilityViolated):
        power_generators(2, 2)  # only 1 irreducible quadratic over F_2


def test_power_generators_k2_builds():
    s = power_generators(2, 1)
    assert s.ambient.kind == "SL" and s.ambient.degree == 6
    assert len(s) <= 20


def test_cube_spec_validation():
    assert CubeSpec.paper(1).n == 7**6
    with pytest.raises(ValueError):
        CubeSpec(k=1, d=6, m=6, reduced=False)
    with pytest.raises(Exception):
        CubeSpec.reduced_spec(d=100, m=5)  # 10^10 points


def test_cube_m1_reduces_to_base_action():
    gens, domain = cube_base_action(1)
    cube = CubeSpec.reduced_spec(d=7, m=1)
    built = cube_embeddings(cube, gens, domain)
    base_images = {p.key for _, p in built.base_perms}
    assert {g.key for _, g in built.genset} == base_images


def test_cube_d7_m2_transitive_on_49():
    gens, domain = cube_base_action(1)
    cube = CubeSpec.reduced_spec(d=7, m=2)
    built = cube_embeddings(cube, gens, domain)
    assert all(g.n == 49 for _, g in built.genset)
    assert len(built.genset) <= 2 * cube.m * len(gens.symmetrized())
    reached = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for _, g in built.genset:
                y = g.apply(x)
                if y not in reached:
                    reached.add(y)
                    nxt.append(y)
        frontier = nxt
    assert len(reached) == 49


def test_cube_line_preservation_and_hom():
    gens, domain = alt_base_action(5)
    cube = CubeSpec.reduced_spec(d=5, m=3)
    built = cube_embeddings(cube, gens, domain)
    for axis, emb in enumerate(built.embeddings):
        for label, g in built.genset:
            if label.startswith(f"ax{axis}:"):
                assert emb.preserves_lines(g)


def test_cube_rejects_odd_action():
    handle = GroupHandle.sym(4)
    odd = GeneratingSet(handle, [("swap", PermElement([1, 0, 2, 3]))])
    with pytest.raises(OddAction):
        cube_embeddings(CubeSpec.reduced_spec(d=4, m=2), odd)


def test_elementary_matrix_validation():
    f3 = make_field(3)
    e = elementary_matrix(f3, 3, 0, 2, 2)
    assert e.rows[0][2] == f3.element(2)
    with pytest.raises(ValueError):
        elementary_matrix(f3, 3, 1, 1, 1)


def test_genset_json():
    s = sl2_standard(make_field(3))
    data = s.to_json()
    assert data["symmetric"] is True
    assert len(data["elements"]) == 4
    assert data["ambient"]["kind"] == "SL"
