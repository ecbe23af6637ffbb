"""Arithmetic in prime fields Z_p and extension fields F_{p^k}.

An extension field is represented as Z_p[t] modulo a monic irreducible
polynomial of degree k.  Polynomials are little-endian coefficient lists
(constant term first); the prime field uses an empty modulus.  Field
elements are fixed-length coefficient tuples carrying a reference to
their spec, so mixed-spec arithmetic is a hard error rather than an
implicit coercion.

The default modulus is deterministic: the lexicographically smallest
monic irreducible of the requested degree, scanning coefficient tuples
constant term first.  This makes every downstream construction
reproducible byte for byte.

Beyond the four field operations the module provides the norm map of an
extension over a subfield, the matrix of the multiplication-by-x map in
a chosen basis (the regular representation of the extension), and
canonical subfield embeddings.  Specs and elements are immutable and
safe to share between threads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    DegreeMismatch,
    NotASubfield,
    NotPrime,
    Reducible,
    SingularBasis,
    SpecMismatch,
    TooLarge,
)

MAX_ELEMENT_BITS = 64  # k * log2(p) budget per element


def is_prime(n: int) -> bool:
    """Trial-division primality check (fields here are tiny)."""
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# polynomial helpers over Z_p, little-endian coefficient lists


def _trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_add(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def poly_sub(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def poly_divmod(a, b, p):
    """Quotient and remainder of a by b over Z_p; b must be nonzero."""
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        factor = (a[-1] * inv_lead) % p
        q[shift] = factor
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - factor * bi) % p
        _trim(a)
    return _trim(q), a


def poly_mod(a, b, p):
    return poly_divmod(a, b, p)[1]


def poly_xgcd(a, b, p):
    """Extended Euclid: returns (g, u, v) with u*a + v*b = g, g monic."""
    r0, r1 = _trim(list(a)), _trim(list(b))
    u0, u1 = [1], []
    v0, v1 = [], [1]
    while r1:
        q, r = poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        u0, u1 = u1, poly_sub(u0, poly_mul(q, u1, p), p)
        v0, v1 = v1, poly_sub(v0, poly_mul(q, v1, p), p)
    if r0:
        inv_lead = pow(r0[-1], p - 2, p)
        r0 = [(c * inv_lead) % p for c in r0]
        u0 = [(c * inv_lead) % p for c in u0]
        v0 = [(c * inv_lead) % p for c in v0]
    return r0, u0, v0


def poly_powmod(a, e: int, mod, p):
    result = [1]
    base = poly_mod(a, mod, p)
    while e > 0:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), mod, p)
        base = poly_mod(poly_mul(base, base, p), mod, p)
        e >>= 1
    return result


def is_irreducible(poly, p: int) -> bool:
    """Irreducibility of a monic polynomial over Z_p.

    Uses the standard criterion: x^(p^k) == x mod f, and for every prime
    divisor r of k, gcd(x^(p^(k/r)) - x, f) = 1.  Degree-1 polynomials
    are always irreducible.
    """
    k = len(poly) - 1
    if k < 1 or poly[-1] != 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    # x^(p^k) mod f must equal x
    frob = x
    for _ in range(k):
        frob = poly_powmod(frob, p, poly, p)
    if _trim(list(frob)) != x:
        return False
    for r in _prime_divisors(k):
        frob = x
        for _ in range(k // r):
            frob = poly_powmod(frob, p, poly, p)
        g, _, _ = poly_xgcd(poly_sub(frob, x, p), poly, p)
        if len(g) != 1:
            return False
    return True


def _prime_divisors(n: int):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def monic_irreducibles(p: int, k: int):
    """Yield monic irreducible degree-k polynomials over Z_p in canonical order.

    Canonical order is lexicographic on coefficient tuples, constant term
    first (most significant).
    """
    for lower in itertools.product(range(p), repeat=k):
        cand = list(lower) + [1]
        if is_irreducible(cand, p):
            yield cand


# ---------------------------------------------------------------------------
# field spec and elements


@dataclass(frozen=True)
class FieldSpec:
    """Finite field F_{p^k} as Z_p[t] mod a monic irreducible polynomial.

    The modulus is a little-endian coefficient tuple of length k+1; the
    prime field (k=1) uses the empty tuple.
    """

    p: int
    k: int
    modulus: tuple

    @property
    def order(self) -> int:
        return self.p**self.k

    def zero(self) -> "FieldElement":
        return FieldElement(self, (0,) * self.k)

    def one(self) -> "FieldElement":
        return FieldElement(self, (1,) + (0,) * (self.k - 1))

    def gen(self) -> "FieldElement":
        """The canonical generator t (for k=1 this is the constant 1)."""
        if self.k == 1:
            return self.one()
        return FieldElement(self, (0, 1) + (0,) * (self.k - 2))

    def element(self, value) -> "FieldElement":
        """Build an element from an int (constant) or a coefficient list."""
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise SpecMismatch("element belongs to a different field")
            return value
        if isinstance(value, int):
            coeffs = (value % self.p,) + (0,) * (self.k - 1)
            return FieldElement(self, coeffs)
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) > self.k:
            raise DegreeMismatch(f"coefficient list longer than degree {self.k}")
        coeffs = coeffs + (0,) * (self.k - len(coeffs))
        return FieldElement(self, coeffs)

    def elements(self):
        """All field elements in canonical order (coeff tuples, constant first)."""
        for coeffs in itertools.product(range(self.p), repeat=self.k):
            yield FieldElement(self, coeffs)

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    @staticmethod
    def from_json(data: dict) -> "FieldSpec":
        return make_field(data["p"], data["k"], data["modulus"] or None)

    def __repr__(self):
        if self.k == 1:
            return f"F({self.p})"
        return f"F({self.p}^{self.k})"


@lru_cache(maxsize=None)
def _default_modulus(p: int, k: int) -> tuple:
    for cand in monic_irreducibles(p, k):
        return tuple(cand)
    raise Reducible(f"no irreducible of degree {k} over Z_{p}")  # pragma: no cover


def make_field(p: int, k: int = 1, modulus=None) -> FieldSpec:
    """Construct the field F_{p^k}.

    If no modulus is given, the lexicographically smallest monic
    irreducible of degree k over Z_p is selected (constant term most
    significant in the scan).  A supplied modulus must be monic of
    degree k and irreducible.
    """
    if not is_prime(p):
        raise NotPrime(f"NotPrime({p})")
    if k < 1:
        raise DegreeMismatch(f"degree must be >= 1, got {k}")
    if k * p.bit_length() > MAX_ELEMENT_BITS:
        raise TooLarge(f"field F_{{{p}^{k}}} exceeds the element size budget")
    if k == 1:
        if modulus:
            mod = [int(c) % p for c in modulus]
            if len(mod) != 2 or mod[-1] != 1:
                raise DegreeMismatch("prime-field modulus must be monic of degree 1")
            return FieldSpec(p, 1, tuple(mod))
        return FieldSpec(p, 1, ())
    if modulus is None:
        return FieldSpec(p, k, _default_modulus(p, k))
    mod = [int(c) % p for c in modulus]
    if len(mod) != k + 1 or mod[-1] != 1:
        raise DegreeMismatch(f"modulus must be monic of degree {k}")
    if not is_irreducible(mod, p):
        raise Reducible(f"Reducible({mod})")
    return FieldSpec(p, k, tuple(mod))


class FieldElement:
    """Element of a FieldSpec: a length-k tuple of residues mod p."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != spec.k:
            raise DegreeMismatch(f"expected {spec.k} coefficients, got {len(coeffs)}")
        if any(c < 0 or c >= spec.p for c in coeffs):
            raise ValueError("coefficients out of range")
        self.spec = spec
        self.coeffs = coeffs

    def _check(self, other):
        if not isinstance(other, FieldElement) or other.spec != self.spec:
            raise SpecMismatch("operands belong to different field specs")

    def __add__(self, other):
        self._check(other)
        p = self.spec.p
        return FieldElement(self.spec, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        p = self.spec.p
        return FieldElement(self.spec, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        p = self.spec.p
        return FieldElement(self.spec, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        self._check(other)
        spec = self.spec
        prod = poly_mul(list(self.coeffs), list(other.coeffs), spec.p)
        if spec.k > 1:
            prod = poly_mod(prod, list(spec.modulus), spec.p)
        else:
            prod = prod[:1]
        prod = prod + [0] * (spec.k - len(prod))
        return FieldElement(spec, prod)

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        spec = self.spec
        if spec.k == 1:
            return FieldElement(spec, (pow(self.coeffs[0], spec.p - 2, spec.p),))
        g, u, _ = poly_xgcd(list(self.coeffs), list(spec.modulus), spec.p)
        if len(g) != 1:
            raise ZeroDivisionError("element not invertible")  # pragma: no cover
        inv_g = pow(g[0], spec.p - 2, spec.p)
        u = poly_mod([(c * inv_g) % spec.p for c in u], list(spec.modulus), spec.p)
        return FieldElement(spec, u + [0] * (spec.k - len(u)))

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.spec.one()
        base = self
        while e > 0:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, FieldElement)
            and self.spec == other.spec
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.spec.p, self.spec.k, self.spec.modulus, self.coeffs))

    def __repr__(self):
        return f"{self.spec!r}{list(self.coeffs)}"


def arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Dispatch form of the four field operations."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# subfield embeddings, norm, regular representation


def _solve_mod_p(matrix, rhs, p):
    """Solve matrix @ x = rhs over Z_p; returns None if inconsistent.

    matrix: list of rows (length m each), rhs: length len(matrix).
    Returns a solution of length m or None.
    """
    rows = [list(r) + [v % p] for r, v in zip(matrix, rhs)]
    n, m = len(rows), len(matrix[0])
    pivots = []
    r = 0
    for c in range(m):
        pivot = next((i for i in range(r, n) if rows[i][c] % p != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][c] % p, p - 2, p)
        rows[r] = [(v * inv) % p for v in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] % p:
                f = rows[i][c] % p
                rows[i] = [(vi - f * vr) % p for vi, vr in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    for i in range(r, n):
        if rows[i][-1] % p:
            return None
    x = [0] * m
    for i, c in enumerate(pivots):
        x[c] = rows[i][-1] % p
    return x


def _rank_mod_p(matrix, p):
    rows = [list(r) for r in matrix]
    n, m = len(rows), len(rows[0])
    rank = 0
    for c in range(m):
        pivot = next((i for i in range(rank, n) if rows[i][c] % p != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][c] % p, p - 2, p)
        rows[rank] = [(v * inv) % p for v in rows[rank]]
        for i in range(n):
            if i != rank and rows[i][c] % p:
                f = rows[i][c] % p
                rows[i] = [(vi - f * vr) % p for vi, vr in zip(rows[i], rows[rank])]
        rank += 1
        if rank == n:
            break
    return rank


@lru_cache(maxsize=None)
def subfield_embedding(base: FieldSpec, ext: FieldSpec):
    """Canonical embedding of base into ext, with its inverse on the image.

    For a prime base this is the inclusion of constants.  Otherwise the
    base generator is sent to the lexicographically smallest root of the
    base modulus inside ext.  Returns (embed, project) callables; project
    raises NotASubfield on elements outside the image.
    """
    if base.p != ext.p or ext.k % base.k != 0:
        raise NotASubfield(f"{base!r} does not embed into {ext!r}")
    p = base.p
    if base.k == 1:
        def embed(x: FieldElement) -> FieldElement:
            return ext.element((x.coeffs[0],))

        def project(y: FieldElement) -> FieldElement:
            if any(c for c in y.coeffs[1:]):
                raise NotASubfield("element is not a base-field constant")
            return base.element((y.coeffs[0],))

        return embed, project

    if ext.order > 1 << 20:
        raise TooLarge("extension too large for root scan")
    root = None
    for cand in ext.elements():
        acc = ext.zero()
        for coef in reversed(base.modulus):  # Horner, highest degree first
            acc = acc * cand + ext.element(int(coef))
        if acc.is_zero():
            root = cand
            break
    if root is None:
        raise NotASubfield(f"modulus of {base!r} has no root in {ext!r}")  # pragma: no cover

    # columns: ext coordinates of root^i for i < base.k
    powers = [ext.one()]
    for _ in range(base.k - 1):
        powers.append(powers[-1] * root)
    matrix = [[powers[j].coeffs[i] for j in range(base.k)] for i in range(ext.k)]

    def embed(x: FieldElement) -> FieldElement:
        acc = ext.zero()
        for c, pw in zip(x.coeffs, powers):
            if c:
                acc = acc + ext.element(c) * pw
        return acc

    def project(y: FieldElement) -> FieldElement:
        sol = _solve_mod_p(matrix, list(y.coeffs), p)
        if sol is None:
            raise NotASubfield("element lies outside the embedded base field")
        return base.element(sol)

    return embed, project


def norm(x: FieldElement, base: FieldSpec) -> FieldElement:
    """Norm of x in F_{q^d} down to the base field F_q.

    Computed as x^((q^d - 1)/(q - 1)) by square-and-multiply; the result
    is coerced into the base field.  Norm(0) = 0.
    """
    ext = x.spec
    if base.p != ext.p or ext.k % base.k != 0:
        raise NotASubfield(f"{base!r} is not a subfield of {ext!r}")
    if x.is_zero():
        return base.zero()
    q = base.order
    d = ext.k // base.k
    e = (q**d - 1) // (q - 1)
    _, project = subfield_embedding(base, ext)
    return project(x**e)


def default_power_basis(base: FieldSpec, ext: FieldSpec):
    """Power basis 1, t, ..., t^(d-1) of ext over base (t = canonical generator)."""
    d = ext.k // base.k
    t = ext.gen()
    basis = [ext.one()]
    for _ in range(d - 1):
        basis.append(basis[-1] * t)
    return basis


def regular_matrix(x: FieldElement, base: FieldSpec, basis=None):
    """Matrix of the multiplication-by-x map on ext, over the base field.

    Column j holds the base-field coordinates of x * basis[j].  With the
    default power basis, det of the result equals Norm(x).  Returns a
    d x d tuple-of-tuples of base-field elements.
    """
    ext = x.spec
    if base.p != ext.p or ext.k % base.k != 0:
        raise NotASubfield(f"{base!r} is not a subfield of {ext!r}")
    d = ext.k // base.k
    if basis is None:
        basis = default_power_basis(base, ext)
    if len(basis) != d or any(b.spec != ext for b in basis):
        raise SingularBasis(f"basis must consist of {d} elements of {ext!r}")
    embed, _ = subfield_embedding(base, ext)

    # Z_p coordinates of the adapted basis {embed(u^a) * basis[j]}.
    base_powers = [base.one()]
    g = base.gen() if base.k > 1 else base.one()
    for _ in range(base.k - 1):
        base_powers.append(base_powers[-1] * g)
    adapted = []  # column index = j * base.k + a
    for b in basis:
        for u in base_powers:
            adapted.append(embed(u) * b)
    matrix = [[adapted[c].coeffs[i] for c in range(len(adapted))] for i in range(ext.k)]
    if _rank_mod_p(matrix, base.p) < ext.k:
        raise SingularBasis("supplied basis does not span the extension")

    cols = []
    for b in basis:
        y = x * b
        sol = _solve_mod_p(matrix, list(y.coeffs), base.p)
        if sol is None:
            raise SingularBasis("supplied basis does not span the extension")
        col = []
        for j in range(d):
            chunk = sol[j * base.k : (j + 1) * base.k]
            acc = base.zero()
            for c, u in zip(chunk, base_powers):
                if c:
                    acc = acc + base.element(c) * u
            col.append(acc)
        cols.append(col)
    return tuple(tuple(cols[j][i] for j in range(d)) for i in range(d))
