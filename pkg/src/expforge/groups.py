"""Group elements, canonical serialization, enumeration, and point actions.

Three element variants share one interface: square matrices over a
FieldSpec, permutations of {0..n-1}, and homogeneous tuples over a direct
power.  Every element has a canonical byte key; equal elements have equal
keys, and the byte order of keys fixes one global element order.  All BFS
traversals sort their frontiers by this order, which makes vertex
numbering, graph files and spectra reproducible across runs.

Composition convention: (a * b) means "apply b, then a", so permutations
compose as (a*b)(x) = a(b(x)) and matrices multiply as usual acting on
column vectors.

Elements are immutable values and safe to share between threads.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from . import vecops
from .errors import AmbientMismatch, CapExceeded, NotAnAction
from .ffield import FieldElement, FieldSpec

DEFAULT_ENUM_CAP = 1 << 24


def _residue_width(p: int) -> int:
    return max(1, ((p - 1).bit_length() + 7) // 8)


class MatrixElement:
    """Square matrix over a FieldSpec; rows are tuples of FieldElements."""

    __slots__ = ("rows", "spec", "_key")

    def __init__(self, rows, spec: FieldSpec):
        rows = tuple(tuple(spec.element(e) for e in row) for row in rows)
        d = len(rows)
        if any(len(r) != d for r in rows):
            raise ValueError("matrix must be square")
        self.rows = rows
        self.spec = spec
        self._key = None

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def key(self) -> bytes:
        if self._key is None:
            spec = self.spec
            w = _residue_width(spec.p)
            parts = [b"M", struct.pack(">HH", self.dim, spec.k)]
            for row in self.rows:
                for e in row:
                    for c in e.coeffs:
                        parts.append(c.to_bytes(w, "big"))
            self._key = b"".join(parts)
        return self._key

    def __mul__(self, other):
        if not isinstance(other, MatrixElement) or other.spec != self.spec or other.dim != self.dim:
            raise AmbientMismatch("matrix operands from different ambient groups")
        d = self.dim
        zero = self.spec.zero()
        rows = []
        for i in range(d):
            ai = self.rows[i]
            row = []
            for j in range(d):
                acc = zero
                for l in range(d):
                    acc = acc + ai[l] * other.rows[l][j]
                row.append(acc)
            rows.append(tuple(row))
        return MatrixElement(rows, self.spec)

    def inverse(self) -> "MatrixElement":
        """Inverse by Gaussian elimination on the augmented matrix."""
        d = self.dim
        spec = self.spec
        aug = [list(self.rows[i]) + [spec.one() if j == i else spec.zero() for j in range(d)]
               for i in range(d)]
        for c in range(d):
            pivot = next((r for r in range(c, d) if not aug[r][c].is_zero()), None)
            if pivot is None:
                raise ZeroDivisionError("matrix is singular")
            aug[c], aug[pivot] = aug[pivot], aug[c]
            inv = aug[c][c].inverse()
            aug[c] = [v * inv for v in aug[c]]
            for r in range(d):
                if r != c and not aug[r][c].is_zero():
                    f = aug[r][c]
                    aug[r] = [vr - f * vc for vr, vc in zip(aug[r], aug[c])]
        return MatrixElement([row[d:] for row in aug], spec)

    def det(self) -> FieldElement:
        d = self.dim
        spec = self.spec
        m = [list(row) for row in self.rows]
        det = spec.one()
        for c in range(d):
            pivot = next((r for r in range(c, d) if not m[r][c].is_zero()), None)
            if pivot is None:
                return spec.zero()
            if pivot != c:
                m[c], m[pivot] = m[pivot], m[c]
                det = -det
            det = det * m[c][c]
            inv = m[c][c].inverse()
            for r in range(c + 1, d):
                if not m[r][c].is_zero():
                    f = m[r][c] * inv
                    m[r] = [vr - f * vc for vr, vc in zip(m[r], m[c])]
        return det

    def __eq__(self, other):
        return isinstance(other, MatrixElement) and self.key == other.key and self.spec == other.spec

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        ints = [[list(e.coeffs) if self.spec.k > 1 else e.coeffs[0] for e in row] for row in self.rows]
        return f"Mat({ints}, {self.spec!r})"


class PermElement:
    """Permutation of {0..n-1}, stored as the image array."""

    __slots__ = ("image", "_key")

    def __init__(self, image):
        arr = np.asarray(image, dtype=np.int64)
        if arr.ndim != 1:
            raise ValueError("image must be one-dimensional")
        n = arr.shape[0]
        if not np.array_equal(np.sort(arr), np.arange(n)):
            raise ValueError("image array is not a bijection")
        arr.flags.writeable = False
        self.image = arr
        self._key = None

    @property
    def n(self) -> int:
        return self.image.shape[0]

    @property
    def key(self) -> bytes:
        if self._key is None:
            self._key = b"P" + struct.pack(">I", self.n) + self.image.astype(">u4").tobytes()
        return self._key

    def __mul__(self, other):
        if not isinstance(other, PermElement) or other.n != self.n:
            raise AmbientMismatch("permutation operands of different degree")
        return PermElement(self.image[other.image])

    def inverse(self) -> "PermElement":
        inv = np.empty(self.n, dtype=np.int64)
        inv[self.image] = np.arange(self.n)
        return PermElement(inv)

    def apply(self, point: int) -> int:
        return int(self.image[point])

    def is_even(self) -> bool:
        return perm_parity(self.image) == 0

    def __eq__(self, other):
        return isinstance(other, PermElement) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        if self.n <= 16:
            return f"Perm({list(map(int, self.image))})"
        return f"Perm(n={self.n})"


class TupleElement:
    """Element of a direct power: a homogeneous tuple of components."""

    __slots__ = ("parts", "_key")

    def __init__(self, parts):
        parts = tuple(parts)
        if not parts:
            raise ValueError("tuple element needs at least one component")
        first = parts[0]
        for p in parts[1:]:
            if type(p) is not type(first):
                raise AmbientMismatch("tuple components must share a variant")
            if isinstance(first, MatrixElement) and (p.spec != first.spec or p.dim != first.dim):
                raise AmbientMismatch("tuple components must share matrix shape")
            if isinstance(first, PermElement) and p.n != first.n:
                raise AmbientMismatch("tuple components must share degree")
        self.parts = parts
        self._key = None

    @property
    def key(self) -> bytes:
        if self._key is None:
            chunks = [b"T", struct.pack(">H", len(self.parts))]
            for p in self.parts:
                k = p.key
                chunks.append(struct.pack(">I", len(k)))
                chunks.append(k)
            self._key = b"".join(chunks)
        return self._key

    def __mul__(self, other):
        if not isinstance(other, TupleElement) or len(other.parts) != len(self.parts):
            raise AmbientMismatch("tuple operands of different shape")
        return TupleElement(tuple(a * b for a, b in zip(self.parts, other.parts)))

    def inverse(self) -> "TupleElement":
        return TupleElement(tuple(p.inverse() for p in self.parts))

    def __eq__(self, other):
        return isinstance(other, TupleElement) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"Tuple({list(self.parts)!r})"


GroupElement = (MatrixElement, PermElement, TupleElement)


def compose(a, b):
    """Product a*b, i.e. apply b first, then a."""
    return a * b


def inverse(a):
    return a.inverse()


def canonical_key(a) -> bytes:
    return a.key


def identity_matrix(spec: FieldSpec, d: int) -> MatrixElement:
    return MatrixElement(
        [[spec.one() if i == j else spec.zero() for j in range(d)] for i in range(d)], spec
    )


def identity_perm(n: int) -> PermElement:
    return PermElement(np.arange(n))


def identity_like(g):
    if isinstance(g, MatrixElement):
        return identity_matrix(g.spec, g.dim)
    if isinstance(g, PermElement):
        return identity_perm(g.n)
    return TupleElement(tuple(identity_like(p) for p in g.parts))


def perm_parity(image) -> int:
    """0 for even permutations, 1 for odd."""
    arr = np.asarray(image)
    n = arr.shape[0]
    seen = np.zeros(n, dtype=bool)
    transpositions = 0
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = int(arr[x])
            length += 1
        transpositions += length - 1
    return transpositions % 2


# ---------------------------------------------------------------------------
# group handles


@dataclass
class GroupHandle:
    """Descriptor of an ambient group; `order` is filled on enumeration."""

    kind: str  # SL | PSL | Alt | Sym | DirectPower
    degree: int | None = None  # matrix dimension d, or permutation degree n
    field: FieldSpec | None = None
    base: "GroupHandle | None" = None
    power: int | None = None
    order: int | None = None

    @staticmethod
    def sl(d: int, spec: FieldSpec) -> "GroupHandle":
        return GroupHandle("SL", degree=d, field=spec)

    @staticmethod
    def psl(d: int, spec: FieldSpec) -> "GroupHandle":
        return GroupHandle("PSL", degree=d, field=spec)

    @staticmethod
    def alt(n: int) -> "GroupHandle":
        return GroupHandle("Alt", degree=n)

    @staticmethod
    def sym(n: int) -> "GroupHandle":
        return GroupHandle("Sym", degree=n)

    @staticmethod
    def direct_power(base: "GroupHandle", s: int) -> "GroupHandle":
        return GroupHandle("DirectPower", base=base, power=s)

    def describe(self) -> str:
        if self.kind in ("SL", "PSL"):
            return f"{self.kind}({self.degree}, {self.field!r})"
        if self.kind in ("Alt", "Sym"):
            return f"{self.kind}({self.degree})"
        return f"{self.base.describe()}^{self.power}"

    def to_json(self) -> dict:
        data = {"kind": self.kind}
        if self.degree is not None:
            data["degree"] = self.degree
        if self.field is not None:
            data["field"] = self.field.to_json()
        if self.base is not None:
            data["base"] = self.base.to_json()
            data["power"] = self.power
        if self.order is not None:
            data["order"] = self.order
        return data


# ---------------------------------------------------------------------------
# enumeration


class EnumeratedGroup:
    """BFS-enumerated group with canonical, deterministic vertex indexing.

    Vertex 0 is the identity; each BFS level is sorted by canonical key
    before indices are assigned, so the numbering is independent of
    generator order and parallelism.
    """

    def __init__(self, gens, identity, batch, codes, objects):
        self.gens = list(gens)
        self.identity = identity
        self._batch = batch  # vecops.Batch in index order, or None
        self._codes = codes  # int64 codes in index order, or None
        self._objects = objects  # list of elements in index order, or None
        if objects is not None:
            self.order = len(objects)
            self._index = {e.key: i for i, e in enumerate(objects)}
        else:
            self.order = len(codes)
            self._sorted_codes = np.sort(codes)
            self._argsort = np.argsort(codes, kind="stable")

    def element_at(self, i: int):
        if self._objects is not None:
            return self._objects[i]
        return self._batch.unpack(i)

    def elements(self):
        for i in range(self.order):
            yield self.element_at(i)

    def index_of(self, g) -> int:
        if self._objects is not None:
            try:
                return self._index[g.key]
            except KeyError:
                raise AmbientMismatch("element not in the enumerated group") from None
        code = self._batch.codes(self._batch.pack([g]))[0]
        pos = np.searchsorted(self._sorted_codes, code)
        if pos >= self.order or self._sorted_codes[pos] != code:
            raise AmbientMismatch("element not in the enumerated group")
        return int(self._argsort[pos])

    def __contains__(self, g) -> bool:
        try:
            self.index_of(g)
            return True
        except AmbientMismatch:
            return False

    def vertex_perm(self, g) -> np.ndarray:
        """Index permutation i -> index(g * element_i)."""
        if self._objects is not None:
            out = np.empty(self.order, dtype=np.int64)
            for i, e in enumerate(self._objects):
                try:
                    out[i] = self._index[(g * e).key]
                except KeyError:
                    raise AmbientMismatch("generator leaves the enumerated group") from None
            return out
        prepared = self._batch.prepare(g)
        moved = self._batch.apply(prepared, self._batch.arrays)
        codes = self._batch.codes(moved)
        pos = np.searchsorted(self._sorted_codes, codes)
        if np.any(pos >= self.order) or np.any(self._sorted_codes[np.minimum(pos, self.order - 1)] != codes):
            raise AmbientMismatch("generator leaves the enumerated group")
        return self._argsort[pos]


def _symmetric_moves(gens):
    moves = []
    seen = set()
    for g in gens:
        if g.key not in seen:
            seen.add(g.key)
            moves.append(g)
    for g in list(moves):
        gi = g.inverse()
        if gi.key not in seen:
            seen.add(gi.key)
            moves.append(gi)
    return moves


def enumerate_group(gens, cap: int = DEFAULT_ENUM_CAP, engine: str = "auto") -> EnumeratedGroup:
    """BFS closure of <gens> under left multiplication.

    Closure uses the generators and their inverses; vertex indexing is
    BFS discovery order with every frontier sorted by canonical key.
    Raises CapExceeded when the closure grows past `cap`.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    if cap < 1:
        raise ValueError("cap must be >= 1")
    identity = identity_like(gens[0])
    moves = _symmetric_moves(gens)

    if engine in ("auto", "vector"):
        batch0 = vecops.try_pack([identity] + moves)
        if batch0 is not None:
            batch, codes = vecops.bfs_closure(batch0, moves, cap)
            return EnumeratedGroup(gens, identity, batch, codes, None)
        if engine == "vector":
            raise ValueError("vector engine does not support these elements")

    # generic object path
    seen = {identity.key: 0}
    elements = [identity]
    level = [identity]
    while level:
        candidates = {}
        for v in level:
            for s in moves:
                w = s * v
                if w.key not in seen and w.key not in candidates:
                    candidates[w.key] = w
        level = [candidates[k] for k in sorted(candidates)]
        for e in level:
            seen[e.key] = len(elements)
            elements.append(e)
            if len(elements) > cap:
                raise CapExceeded(cap)
    return EnumeratedGroup(gens, identity, None, None, elements)


# ---------------------------------------------------------------------------
# PSL reduction


def psl_reduce(a: MatrixElement) -> MatrixElement:
    """Canonical representative of the center coset {lambda * a : lambda^d = 1}.

    The representative is the coset element with the smallest canonical
    key, so the reduction is constant on cosets and induces the natural
    quotient map onto PSL_d.
    """
    spec = a.spec
    d = a.dim
    one = spec.one()
    best = a
    for lam in spec.elements():
        if lam.is_zero() or lam**d != one:
            continue
        cand = MatrixElement([[lam * e for e in row] for row in a.rows], spec)
        if cand.key < best.key:
            best = cand
    return best


# ---------------------------------------------------------------------------
# point domains and actions


class VectorDomain:
    """Nonzero vectors of F_q^d in canonical order, acted on by d x d matrices."""

    def __init__(self, spec: FieldSpec, d: int):
        self.spec = spec
        self.d = d
        points = []
        for coeff_tuple in _vector_tuples(spec, d):
            if any(not e.is_zero() for e in coeff_tuple):
                points.append(coeff_tuple)
        self.points = points
        self._index = {tuple(e.coeffs for e in v): i for i, v in enumerate(points)}

    @property
    def size(self) -> int:
        return len(self.points)

    def index(self, vector) -> int:
        return self._index[tuple(e.coeffs for e in vector)]

    def act(self, g: MatrixElement) -> np.ndarray:
        if not isinstance(g, MatrixElement) or g.spec != self.spec or g.dim != self.d:
            raise NotAnAction("matrix does not act on this vector domain")
        zero = self.spec.zero()
        image = np.empty(self.size, dtype=np.int64)
        for i, v in enumerate(self.points):
            w = []
            for r in range(self.d):
                acc = zero
                for c in range(self.d):
                    acc = acc + g.rows[r][c] * v[c]
                w.append(acc)
            image[i] = self._index[tuple(e.coeffs for e in w)]
        return image


def _vector_tuples(spec, d):
    import itertools

    els = list(spec.elements())
    yield from itertools.product(els, repeat=d)


class IndexDomain:
    """Plain point set {0..n-1}, acted on by degree-n permutations."""

    def __init__(self, n: int):
        self.n = n

    @property
    def size(self) -> int:
        return self.n

    def act(self, g: PermElement) -> np.ndarray:
        if not isinstance(g, PermElement) or g.n != self.n:
            raise NotAnAction("permutation does not act on this domain")
        return np.asarray(g.image, dtype=np.int64)


def act_on_points(g, domain) -> PermElement:
    """Permutation of domain indices induced by g; the map is a homomorphism."""
    return PermElement(domain.act(g))


# ---------------------------------------------------------------------------
# small permutation-group helpers


def three_cycle(n: int, a: int, b: int, c: int) -> PermElement:
    image = np.arange(n)
    image[a], image[b], image[c] = b, c, a
    return PermElement(image)


def transposition(n: int, a: int, b: int) -> PermElement:
    image = np.arange(n)
    image[a], image[b] = b, a
    return PermElement(image)


def alt_generators(n: int, points=None) -> list[PermElement]:
    """3-cycle generators of Alt on the given points (default all of 0..n-1)."""
    pts = list(range(n)) if points is None else list(points)
    if len(pts) < 3:
        return []
    return [three_cycle(n, pts[0], pts[1], pts[i]) for i in range(2, len(pts))]


# ---------------------------------------------------------------------------
# JSON literals


def element_to_json(g) -> dict:
    if isinstance(g, MatrixElement):
        return {
            "type": "matrix",
            "field": g.spec.to_json(),
            "entries": [[list(e.coeffs) for e in row] for row in g.rows],
        }
    if isinstance(g, PermElement):
        return {"type": "perm", "image": [int(x) for x in g.image]}
    if isinstance(g, TupleElement):
        return {"type": "tuple", "parts": [element_to_json(p) for p in g.parts]}
    raise TypeError(f"not a group element: {g!r}")


def element_from_json(data: dict):
    from .ffield import FieldSpec

    kind = data["type"]
    if kind == "matrix":
        spec = FieldSpec.from_json(data["field"])
        return MatrixElement(data["entries"], spec)
    if kind == "perm":
        return PermElement(data["image"])
    if kind == "tuple":
        return TupleElement(tuple(element_from_json(p) for p in data["parts"]))
    raise ValueError(f"unknown element type {kind!r}")
