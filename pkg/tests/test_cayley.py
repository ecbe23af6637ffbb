import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from expforge.cayley import (
    build_cayley,
    build_cayley_on,
    build_cayley_with_group,
    build_schreier,
    export_edges,
    load_binary,
    read_edges,
    save_binary,
)
from expforge.errors import CapExceeded
from expforge.ffield import make_field
from expforge.gensets import GeneratingSet, sl2_standard
from expforge.groups import (
    GroupHandle,
    MatrixElement,
    VectorDomain,
    enumerate_group,
    identity_matrix,
    perm_parity,
    three_cycle,
    transposition,
)


def alt3_genset():
    handle = GroupHandle.alt(3)
    rot = three_cycle(3, 0, 1, 2)
    return GeneratingSet(handle, [("r", rot), ("r^-1", rot.inverse())], symmetric=True)


def sym3_transpositions():
    handle = GroupHandle.sym(3)
    gens = [(f"t{i}{j}", transposition(3, i, j)) for i, j in ((0, 1), (0, 2), (1, 2))]
    return GeneratingSet(handle, gens, symmetric=True)


def test_triangle():
    g = build_cayley(alt3_genset())
    assert (g.n, g.degree, g.kind) == (3, 2, "Cayley")
    counts = g.adjacency_counts()
    assert np.array_equal(counts, np.array([[0, 1, 1], [1, 0, 1], [1, 1, 0]]))


def test_sl2_f3_cayley_shape():
    g = build_cayley(sl2_standard(make_field(3)))
    assert (g.n, g.degree) == (24, 4)
    assert g.is_symmetric()
    assert np.array_equal(np.diff(g.csr_offsets), np.full(24, 4))


def test_sym3_transpositions_is_k33():
    graph = build_cayley(sym3_transpositions())
    group = enumerate_group(sym3_transpositions().members())
    assert graph.n == 6 and graph.degree == 3
    parity = np.array([perm_parity(group.element_at(i).image) for i in range(6)])
    counts = graph.adjacency_counts()
    for u in range(6):
        for v in range(6):
            expected = 1 if parity[u] != parity[v] else 0
            assert counts[u, v] == expected


def test_vertex_zero_is_identity():
    graph, group = build_cayley_with_group(sl2_standard(make_field(5)))
    assert group.element_at(0) == identity_matrix(make_field(5), 2)
    assert graph.n == 120


def test_schreier_sl2_f2_on_three_vectors():
    f2 = make_field(2)
    s = sl2_standard(f2)
    dom = VectorDomain(f2, 2)
    g = build_schreier(s, dom)
    # A and B are involutions over F_2, so the closed set has 2 elements
    assert (g.n, g.degree, g.kind) == (3, 2, "Schreier")
    assert g.is_symmetric()
    from expforge.spectral import is_connected

    assert is_connected(g)


def test_schreier_identity_only_self_loops():
    f3 = make_field(3)
    handle = GroupHandle.sl(2, f3)
    s = GeneratingSet(handle, [("id", identity_matrix(f3, 2))], symmetric=True)
    g = build_schreier(s, VectorDomain(f3, 2))
    assert np.array_equal(g.csr_targets, np.arange(g.n, dtype=np.int32))
    from expforge.spectral import is_connected

    assert not is_connected(g)


def test_cayley_on_non_generating_subset_disconnected():
    f3 = make_field(3)
    closed = sl2_standard(f3)
    group = enumerate_group(closed.members())
    a = MatrixElement([[1, 1], [0, 1]], f3)
    sub = GeneratingSet(GroupHandle.sl(2, f3), [("A", a)]).symmetrized()
    g = build_cayley_on(group, sub)
    from expforge.spectral import is_connected

    assert g.n == 24
    assert not is_connected(g)


def test_build_cap():
    with pytest.raises(CapExceeded):
        build_cayley(sl2_standard(make_field(7)), cap=100)


def test_export_header_and_line_count(tmp_path):
    g = build_cayley(alt3_genset())
    path = tmp_path / "k3.tsv"
    export_edges(g, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "# n=3 degree=2 kind=Cayley"
    assert len(lines) == 1 + 6


def test_export_header_sl2_f3(tmp_path):
    g = build_cayley(sl2_standard(make_field(3)))
    path = tmp_path / "sl2f3.tsv"
    export_edges(g, path)
    assert path.read_text().splitlines()[0] == "# n=24 degree=4 kind=Cayley"


def test_text_roundtrip(tmp_path):
    g = build_cayley(sl2_standard(make_field(3)))
    path = tmp_path / "g.tsv"
    export_edges(g, path)
    back = read_edges(path)
    assert back.n == g.n and back.degree == g.degree and back.kind == g.kind
    assert np.array_equal(back.csr_offsets, g.csr_offsets)
    assert np.array_equal(back.csr_targets, g.csr_targets)
    assert np.array_equal(back.edge_labels, g.edge_labels)


def test_binary_roundtrip(tmp_path):
    g = build_cayley(sl2_standard(make_field(5)))
    path = tmp_path / "g.xfrg"
    save_binary(g, path)
    back = load_binary(path)
    assert back.kind == "Cayley"
    assert np.array_equal(back.csr_targets, g.csr_targets)
    assert np.array_equal(back.csr_offsets, g.csr_offsets)
    assert np.array_equal(back.edge_labels, g.edge_labels)
    assert path.read_bytes()[:4] == b"XFRG"


def test_build_is_deterministic():
    a = build_cayley(sl2_standard(make_field(5)))
    b = build_cayley(sl2_standard(make_field(5)))
    assert np.array_equal(a.csr_targets, b.csr_targets)
    assert np.array_equal(a.edge_labels, b.edge_labels)


@settings(max_examples=25, deadline=None)
@given(st.sets(st.integers(min_value=1, max_value=23), min_size=1, max_size=4))
def test_random_subsets_make_symmetric_regular_graphs(indices):
    f3 = make_field(3)
    closed = sl2_standard(f3)
    group = enumerate_group(closed.members())
    gens = [(f"g{i}", group.element_at(i)) for i in sorted(indices)]
    sub = GeneratingSet(GroupHandle.sl(2, f3), gens).symmetrized()
    g = build_cayley_on(group, sub)
    assert g.is_symmetric()
    assert np.array_equal(np.diff(g.csr_offsets), np.full(g.n, g.degree))
