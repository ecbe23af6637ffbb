"""Cayley and Schreier graphs as sparse regular multigraphs.

Vertices are numbered deterministically: the identity (or base point) is
vertex 0 and BFS levels are sorted by canonical key, so graph files and
spectra are byte-identical across runs.  Multi-edges and self-loops are
kept; the normalized adjacency operator averages over the generator
multiset and collapsing parallel edges would change its spectrum.  This
is the single most correctness-critical convention in the package.

Edge slot j of vertex v is the edge (v, s_j * v) for the j-th generator,
so for a symmetric generating set the edge multiset equals its reverse.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .errors import CapExceeded, NotAnAction
from .groups import DEFAULT_ENUM_CAP, EnumeratedGroup, act_on_points, enumerate_group

MAX_VERTICES = (1 << 31) - 1

_MAGIC = b"XFRG"
_KINDS = {"Cayley": 0, "Schreier": 1}
_KINDS_REV = {v: k for k, v in _KINDS.items()}


@dataclass
class SparseGraph:
    """CSR adjacency of a regular multigraph (degree = |S|)."""

    n: int
    degree: int
    csr_offsets: np.ndarray  # int64, length n+1
    csr_targets: np.ndarray  # int32, length n*degree
    edge_labels: np.ndarray  # int32 generator slot per edge
    kind: str  # "Cayley" | "Schreier"

    def __post_init__(self):
        if self.n > MAX_VERTICES:
            raise CapExceeded(MAX_VERTICES, "vertex count exceeds 32-bit index budget")
        assert self.csr_offsets.shape == (self.n + 1,)
        assert self.csr_targets.shape == (self.n * self.degree,)
        # regularity: every vertex has exactly `degree` outgoing slots
        assert np.array_equal(np.diff(self.csr_offsets), np.full(self.n, self.degree))

    @property
    def target_matrix(self) -> np.ndarray:
        """Targets reshaped (n, degree); column j is the j-th generator's action."""
        return self.csr_targets.reshape(self.n, self.degree)

    def neighbors(self, v: int) -> np.ndarray:
        return self.csr_targets[self.csr_offsets[v] : self.csr_offsets[v + 1]]

    def is_symmetric(self) -> bool:
        """Edge multiset equals its reverse (directed pairs with multiplicity)."""
        u = np.repeat(np.arange(self.n, dtype=np.int64), self.degree)
        v = self.csr_targets.astype(np.int64)
        fwd = np.sort(u * self.n + v)
        rev = np.sort(v * self.n + u)
        return np.array_equal(fwd, rev)

    def adjacency_counts(self) -> np.ndarray:
        """Dense integer adjacency with multiplicity (small graphs only)."""
        a = np.zeros((self.n, self.n), dtype=np.int64)
        u = np.repeat(np.arange(self.n), self.degree)
        np.add.at(a, (u, self.csr_targets), 1)
        return a


def _graph_from_columns(columns, kind: str) -> SparseGraph:
    n = columns[0].shape[0]
    degree = len(columns)
    targets = np.stack(columns, axis=1).astype(np.int32).reshape(-1)
    offsets = np.arange(0, n * degree + 1, degree, dtype=np.int64)
    labels = np.tile(np.arange(degree, dtype=np.int32), n)
    return SparseGraph(n, degree, offsets, targets, labels, kind)


def build_cayley(genset, cap: int = DEFAULT_ENUM_CAP) -> SparseGraph:
    """Cayley graph of <S> with edge (v, s*v) for every s in the closed set.

    The generating set is symmetrized first (closed under inverses); the
    graph is connected by construction since vertices are the BFS closure.
    """
    graph, _ = build_cayley_with_group(genset, cap=cap)
    return graph


def build_cayley_with_group(genset, cap: int = DEFAULT_ENUM_CAP):
    """Cayley graph plus the enumerated group behind its vertex order."""
    closed = genset.symmetrized()
    group = enumerate_group([g for _, g in closed.elements], cap=cap)
    return build_cayley_on(group, closed), group


def build_cayley_on(group: EnumeratedGroup, genset) -> SparseGraph:
    """Cayley graph on an already-enumerated vertex set.

    The generating set need not generate the whole group; the result is
    then disconnected, which is how failed generation shows up.
    """
    closed = genset.symmetrized()
    columns = [group.vertex_perm(g) for _, g in closed.elements]
    return _graph_from_columns(columns, "Cayley")


def build_schreier(genset, domain) -> SparseGraph:
    """Schreier graph of the action: vertices are domain points.

    Each generator contributes the edge (x, s*x) per point; parallel
    edges from generators that agree on a point are kept.
    """
    closed = genset.symmetrized()
    columns = []
    for _, g in closed.elements:
        perm = act_on_points(g, domain)
        columns.append(np.asarray(perm.image, dtype=np.int64))
    if not columns:
        raise NotAnAction("empty generating set")
    return _graph_from_columns(columns, "Schreier")


def build_schreier_from_perms(perms, kind: str = "Schreier") -> SparseGraph:
    """Schreier graph directly from permutation generators on {0..n-1}."""
    columns = [np.asarray(p.image, dtype=np.int64) for p in perms]
    return _graph_from_columns(columns, kind)


# ---------------------------------------------------------------------------
# text and binary formats


def export_edges(graph: SparseGraph, path) -> None:
    """Write the edge list: header line, then "u<TAB>v<TAB>label" rows.

    Rows are sorted by (source vertex, edge slot), which is the natural
    CSR order, one row per directed edge.
    """
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"# n={graph.n} degree={graph.degree} kind={graph.kind}\n")
        targets = graph.target_matrix
        labels = graph.edge_labels.reshape(graph.n, graph.degree)
        for u in range(graph.n):
            for slot in range(graph.degree):
                fh.write(f"{u}\t{targets[u, slot]}\t{labels[u, slot]}\n")


def read_edges(path) -> SparseGraph:
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().strip()
        if not header.startswith("# "):
            raise ValueError("missing edge-list header")
        fields = dict(part.split("=", 1) for part in header[2:].split())
        n, degree, kind = int(fields["n"]), int(fields["degree"]), fields["kind"]
        targets = np.empty(n * degree, dtype=np.int32)
        labels = np.empty(n * degree, dtype=np.int32)
        row = 0
        for line in fh:
            u, v, lab = line.split()
            assert int(u) == row // degree
            targets[row] = int(v)
            labels[row] = int(lab)
            row += 1
        if row != n * degree:
            raise ValueError("edge count does not match header")
    offsets = np.arange(0, n * degree + 1, degree, dtype=np.int64)
    return SparseGraph(n, degree, offsets, targets, labels, kind)


def save_binary(graph: SparseGraph, path) -> None:
    """Binary cache: magic XFRG, version, n, degree, kind + 32-bit LE CSR arrays."""
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<III B", 1, graph.n, graph.degree, _KINDS[graph.kind]))
        fh.write(graph.csr_offsets.astype("<u4").tobytes())
        fh.write(graph.csr_targets.astype("<u4").tobytes())
        fh.write(graph.edge_labels.astype("<u4").tobytes())


def load_binary(path) -> SparseGraph:
    with open(path, "rb") as fh:
        if fh.read(4) != _MAGIC:
            raise ValueError("bad magic")
        version, n, degree, kind_code = struct.unpack("<III B", fh.read(13))
        if version != 1:
            raise ValueError(f"unsupported version {version}")
        offsets = np.frombuffer(fh.read(4 * (n + 1)), dtype="<u4").astype(np.int64)
        targets = np.frombuffer(fh.read(4 * n * degree), dtype="<u4").astype(np.int32)
        labels = np.frombuffer(fh.read(4 * n * degree), dtype="<u4").astype(np.int32)
    return SparseGraph(n, degree, offsets, targets, labels, _KINDS_REV[kind_code])
