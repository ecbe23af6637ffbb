"""Vectorized batch operations on group elements (internal).

Families of matrices over one FieldSpec, permutations of one degree, and
homogeneous tuples of matrices are packed into integer ndarrays so that
left multiplication by a fixed element becomes one numpy operation, and
each element gets a unique int64 code.  Codes are digit strings in the
canonical entry order with the first digit most significant, so sorting
by code is exactly sorting by canonical key; BFS closures computed here
produce the same vertex numbering as the generic object path.

Falls back to None when a family is unsupported or codes would overflow
63 bits; callers then use the generic path in groups.py.
"""

from __future__ import annotations

import numpy as np

from .errors import CapExceeded


def in_sorted(sorted_arr: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Boolean mask: which values occur in the sorted array."""
    if sorted_arr.size == 0:
        return np.zeros(values.shape, dtype=bool)
    pos = np.searchsorted(sorted_arr, values)
    pos_c = np.minimum(pos, sorted_arr.size - 1)
    return (pos < sorted_arr.size) & (sorted_arr[pos_c] == values)


def _mult_blocks(g):
    """Multiplication matrices of the entries of a MatrixElement.

    Returns int64 array (d, d, k, k): block [i, j] maps coefficient
    vectors x to the coefficients of entries[i][j] * x.
    """
    spec = g.spec
    d, k = g.dim, spec.k
    t = spec.gen() if k > 1 else spec.one()
    basis = [spec.one()]
    for _ in range(k - 1):
        basis.append(basis[-1] * t)
    out = np.empty((d, d, k, k), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            w = g.rows[i][j]
            for b, tb in enumerate(basis):
                out[i, j, :, b] = (w * tb).coeffs
    return out


class MatrixBatch:
    """Batch of d x d matrices over F_{p^k}: arrays (N, d, d, k)."""

    def __init__(self, spec, d, arrays):
        self.spec = spec
        self.d = d
        self.arrays = arrays
        digits = d * d * spec.k
        self._powvec = None
        if digits * max(1, (spec.p - 1)).bit_length() <= 62:
            space = spec.p**digits
            if space < 1 << 62:
                self._powvec = spec.p ** np.arange(digits - 1, -1, -1, dtype=np.int64)

    @property
    def supported(self):
        return self._powvec is not None

    def pack(self, elements):
        n = len(elements)
        out = np.empty((n, self.d, self.d, self.spec.k), dtype=np.int64)
        for idx, g in enumerate(elements):
            for i in range(self.d):
                for j in range(self.d):
                    out[idx, i, j] = g.rows[i][j].coeffs
        return out

    def unpack(self, i):
        from .groups import MatrixElement

        a = self.arrays[i]
        rows = [
            [self.spec.element([int(c) for c in a[r, c_]]) for c_ in range(self.d)]
            for r in range(self.d)
        ]
        return MatrixElement(rows, self.spec)

    def prepare(self, g):
        return _mult_blocks(g)

    def apply(self, prepared, arrays):
        return np.einsum("ijab,njlb->nila", prepared, arrays) % self.spec.p

    def apply_right(self, prepared, arrays):
        # x -> x * g; entries of a field commute, so the same blocks work
        return np.einsum("jlab,nijb->nila", prepared, arrays) % self.spec.p

    def codes(self, arrays):
        flat = arrays.reshape(arrays.shape[0], -1)
        return flat @ self._powvec

    def with_arrays(self, arrays):
        clone = MatrixBatch(self.spec, self.d, arrays)
        return clone


class PermBatch:
    """Batch of degree-n permutations: arrays (N, n)."""

    def __init__(self, n, arrays):
        self.n = n
        self.arrays = arrays
        self._powvec = None
        if n >= 1 and n**n < 1 << 62:
            self._powvec = n ** np.arange(n - 1, -1, -1, dtype=np.int64)

    @property
    def supported(self):
        return self._powvec is not None

    def pack(self, elements):
        return np.stack([np.asarray(g.image, dtype=np.int64) for g in elements])

    def unpack(self, i):
        from .groups import PermElement

        return PermElement(self.arrays[i])

    def prepare(self, g):
        return np.asarray(g.image, dtype=np.int64)

    def apply(self, prepared, arrays):
        return prepared[arrays]

    def apply_right(self, prepared, arrays):
        # (x * g)(i) = x(g(i)): gather columns through g
        return arrays[:, prepared]

    def codes(self, arrays):
        return arrays @ self._powvec

    def with_arrays(self, arrays):
        return PermBatch(self.n, arrays)


class TupleMatrixBatch:
    """Batch of s-tuples of d x d matrices over one field: arrays (N, s, d, d, k)."""

    def __init__(self, spec, d, s, arrays):
        self.spec = spec
        self.d = d
        self.s = s
        self.arrays = arrays
        digits = s * d * d * spec.k
        self._powvec = None
        if digits * max(1, (spec.p - 1)).bit_length() <= 62 and spec.p**digits < 1 << 62:
            self._powvec = spec.p ** np.arange(digits - 1, -1, -1, dtype=np.int64)

    @property
    def supported(self):
        return self._powvec is not None

    def pack(self, elements):
        n = len(elements)
        out = np.empty((n, self.s, self.d, self.d, self.spec.k), dtype=np.int64)
        for idx, g in enumerate(elements):
            for slot, part in enumerate(g.parts):
                for i in range(self.d):
                    for j in range(self.d):
                        out[idx, slot, i, j] = part.rows[i][j].coeffs
        return out

    def unpack(self, i):
        from .groups import MatrixElement, TupleElement

        a = self.arrays[i]
        parts = []
        for slot in range(self.s):
            rows = [
                [self.spec.element([int(c) for c in a[slot, r, c_]]) for c_ in range(self.d)]
                for r in range(self.d)
            ]
            parts.append(MatrixElement(rows, self.spec))
        return TupleElement(tuple(parts))

    def prepare(self, g):
        return np.stack([_mult_blocks(part) for part in g.parts])

    def apply(self, prepared, arrays):
        out = np.empty_like(arrays)
        for slot in range(self.s):
            out[:, slot] = np.einsum("ijab,njlb->nila", prepared[slot], arrays[:, slot]) % self.spec.p
        return out

    def apply_right(self, prepared, arrays):
        out = np.empty_like(arrays)
        for slot in range(self.s):
            out[:, slot] = np.einsum("jlab,nijb->nila", prepared[slot], arrays[:, slot]) % self.spec.p
        return out

    def codes(self, arrays):
        flat = arrays.reshape(arrays.shape[0], -1)
        return flat @ self._powvec

    def with_arrays(self, arrays):
        return TupleMatrixBatch(self.spec, self.d, self.s, arrays)


def try_pack(elements):
    """Pack a homogeneous element family, or return None if unsupported."""
    from .groups import MatrixElement, PermElement, TupleElement

    first = elements[0]
    if isinstance(first, MatrixElement):
        if any(not isinstance(e, MatrixElement) or e.spec != first.spec or e.dim != first.dim
               for e in elements):
            return None
        batch = MatrixBatch(first.spec, first.dim, None)
        if not batch.supported:
            return None
        batch.arrays = batch.pack(elements)
        return batch
    if isinstance(first, PermElement):
        if any(not isinstance(e, PermElement) or e.n != first.n for e in elements):
            return None
        batch = PermBatch(first.n, None)
        if not batch.supported:
            return None
        batch.arrays = batch.pack(elements)
        return batch
    if isinstance(first, TupleElement):
        inner = first.parts[0]
        if not isinstance(inner, MatrixElement):
            return None
        s = len(first.parts)
        if any(
            not isinstance(e, TupleElement)
            or len(e.parts) != s
            or any(not isinstance(p, MatrixElement) or p.spec != inner.spec or p.dim != inner.dim
                   for p in e.parts)
            for e in elements
        ):
            return None
        batch = TupleMatrixBatch(inner.spec, inner.dim, s, None)
        if not batch.supported:
            return None
        batch.arrays = batch.pack(elements)
        return batch
    return None


def bfs_closure(seed_batch, moves, cap, store=True):
    """BFS closure of the first seed element under left multiplication.

    seed_batch holds [identity, move_0, move_1, ...]; moves are the
    corresponding elements.  Returns (batch_in_index_order, codes) where
    index order is BFS discovery order with each level sorted by code
    (equivalently, canonical key).  With store=False the element arrays
    are dropped and only the codes (distances implied by level) are kept.
    """
    prepared = [seed_batch.prepare(m) for m in moves]
    identity_arrays = seed_batch.arrays[:1]
    level_arrays = identity_arrays
    level_codes = seed_batch.codes(identity_arrays)
    seen_sorted = np.sort(level_codes)
    chunks = [level_arrays] if store else None
    code_chunks = [level_codes]
    level_sizes = [1]
    total = 1
    while level_arrays.shape[0]:
        cand_list = [seed_batch.apply(p, level_arrays) for p in prepared]
        cand = np.concatenate(cand_list, axis=0)
        cand_codes = seed_batch.codes(cand)
        uniq, first_idx = np.unique(cand_codes, return_index=True)
        fresh = ~in_sorted(seen_sorted, uniq)
        new_codes = uniq[fresh]
        if new_codes.size == 0:
            break
        level_arrays = cand[first_idx[fresh]]
        level_codes = new_codes
        total += new_codes.size
        if total > cap:
            raise CapExceeded(cap)
        seen_sorted = np.sort(np.concatenate([seen_sorted, new_codes]))
        if store:
            chunks.append(level_arrays)
        code_chunks.append(level_codes)
        level_sizes.append(int(new_codes.size))
    codes = np.concatenate(code_chunks)
    batch = seed_batch.with_arrays(np.concatenate(chunks, axis=0)) if store else None
    return (batch, codes) if store else (level_sizes, codes)


def bfs_level_sizes(seed_batch, moves, cap):
    """Level sizes of the BFS closure (distance histogram from identity)."""
    level_sizes, _ = bfs_closure(seed_batch, moves, cap, store=False)
    return level_sizes


def product_expand_right(batch, current_arrays, factor_elements):
    """One product-set round: {x * k} for k in the factor, deduplicated.

    Returns (arrays, sorted codes) of the resulting set.
    """
    chunks = []
    for k in factor_elements:
        chunks.append(batch.apply_right(batch.prepare(k), current_arrays))
    cand = np.concatenate(chunks, axis=0)
    cand_codes = batch.codes(cand)
    uniq, first_idx = np.unique(cand_codes, return_index=True)
    return cand[first_idx], uniq
