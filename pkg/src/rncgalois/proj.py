"""Moebius transformations, projection centers (pencils), the pullback
dictionary between hyperplane rows and binary forms, and Pluecker
coordinates.

A pencil is a codimension-2 linear center in P^n stored as a canonical
2 x (n+1) reduced-row-echelon matrix of defining equations; its two rows
pull back to the pair of degree-n forms whose ratio is the projection.
"""

from __future__ import annotations

from ._backend import kernel
from .errors import FieldMismatchError, InternalCheckError
from .field import FieldElement, FieldHandle
from . import forms
from .forms import BinaryForm, Divisor, ProjPoint


class MoebiusMap:
    """Invertible 2x2 matrix modulo scalars (element of PGL2).

    Canonically scaled so the first nonzero entry (row-major) is 1.
    """

    __slots__ = ("handle", "m")

    def __init__(self, handle: FieldHandle, entries):
        vals = [handle.element(v).val for v in entries]
        if len(vals) != 4:
            raise ValueError("a Moebius map needs 4 matrix entries")
        ctx = handle.kernel_ctx()
        det = kernel.f_sub(
            ctx, kernel.f_mul(ctx, vals[0], vals[3]), kernel.f_mul(ctx, vals[1], vals[2])
        )
        if det == 0:
            raise ValueError("matrix is singular")
        for v in vals:
            if v != 0:
                inv = kernel.f_inv(ctx, v)
                vals = [kernel.f_mul(ctx, inv, x) for x in vals]
                break
        self.handle = handle
        self.m = tuple(vals)

    @classmethod
    def identity(cls, handle):
        return cls(handle, (1, 0, 0, 1))

    @classmethod
    def diagonal(cls, handle, z):
        """[x:y] -> [z x : y]."""
        return cls(handle, (z, 0, 0, 1))

    @classmethod
    def antidiagonal(cls, handle, b):
        """[x:y] -> [b y : x]."""
        return cls(handle, (0, b, 1, 0))

    # -- group structure -----------------------------------------------------

    def __matmul__(self, other: MoebiusMap) -> MoebiusMap:
        if self.handle is not other.handle:
            raise FieldMismatchError("mixed field handles")
        a, b, c, d = self.m
        e, f, g, h = other.m
        ctx = self.handle.kernel_ctx()
        mul, add = kernel.f_mul, kernel.f_add
        return MoebiusMap(
            self.handle,
            (
                add(ctx, mul(ctx, a, e), mul(ctx, b, g)),
                add(ctx, mul(ctx, a, f), mul(ctx, b, h)),
                add(ctx, mul(ctx, c, e), mul(ctx, d, g)),
                add(ctx, mul(ctx, c, f), mul(ctx, d, h)),
            ),
        )

    def inverse(self) -> MoebiusMap:
        a, b, c, d = self.m
        ctx = self.handle.kernel_ctx()
        neg = kernel.f_neg
        return MoebiusMap(self.handle, (d, neg(ctx, b), neg(ctx, c), a))

    def is_identity(self) -> bool:
        return self.m == (1, 0, 0, 1)

    def order(self) -> int:
        acc = self
        n = 1
        cap = self.handle.q * self.handle.q + self.handle.q + 2
        while not acc.is_identity():
            acc = acc @ self
            n += 1
            if n > cap:  # pragma: no cover - impossible in PGL2(F_q)
                raise InternalCheckError("order iteration did not terminate")
        return n

    def apply(self, t: ProjPoint) -> ProjPoint:
        if self.handle is not t.handle:
            raise FieldMismatchError("mixed field handles")
        a, b, c, d = self.m
        ctx = self.handle.kernel_ctx()
        mul, add = kernel.f_mul, kernel.f_add
        na = add(ctx, mul(ctx, a, t.a), mul(ctx, b, t.c))
        nc = add(ctx, mul(ctx, c, t.a), mul(ctx, d, t.c))
        return ProjPoint(self.handle, na, nc)

    def det(self) -> FieldElement:
        a, b, c, d = self.m
        ctx = self.handle.kernel_ctx()
        return FieldElement(
            self.handle,
            kernel.f_sub(ctx, kernel.f_mul(ctx, a, d), kernel.f_mul(ctx, b, c)),
        )

    def matrix(self):
        a, b, c, d = self.m
        e = lambda v: FieldElement(self.handle, v)  # noqa: E731
        return ((e(a), e(b)), (e(c), e(d)))

    def __eq__(self, other):
        return (
            isinstance(other, MoebiusMap)
            and self.handle is other.handle
            and self.m == other.m
        )

    def __hash__(self):
        return hash((id(self.handle), self.m))

    def __repr__(self):
        a, b, c, d = self.m
        return f"[[{a},{b}],[{c},{d}]]"

    def serialize(self):
        e = lambda v: FieldElement(self.handle, v).serialize()  # noqa: E731
        a, b, c, d = self.m
        return [[e(a), e(b)], [e(c), e(d)]]


def iter_pgl2(handle: FieldHandle):
    """PGL2(F_q) in canonical order (packed entry tuples ascending)."""
    q = handle.q
    for c in range(1, q):
        for d in range(q):
            yield MoebiusMap(handle, (0, 1, c, d))
    ctx = handle.kernel_ctx()
    for b in range(q):
        for c in range(q):
            bc = kernel.f_mul(ctx, b, c)
            for d in range(q):
                if d == bc:
                    continue
                yield MoebiusMap(handle, (1, b, c, d))


class Pencil:
    """Codimension-2 center in P^n as a canonical 2 x (n+1) RREF matrix."""

    __slots__ = ("handle", "n", "rows")

    def __init__(self, handle: FieldHandle, n: int, rows):
        if n < 2:
            raise ValueError("ambient dimension must be >= 2")
        mat = []
        for row in rows:
            vals = [handle.element(v).val for v in row]
            if len(vals) != n + 1:
                raise ValueError("each row needs n + 1 entries")
            mat.append(vals)
        ctx = handle.kernel_ctx()
        red, pivots = kernel.rref(ctx, mat)
        if len(pivots) != 2:
            raise ValueError("pencil matrix must have rank exactly 2")
        self.handle = handle
        self.n = n
        self.rows = (tuple(red[0]), tuple(red[1]))

    def row_forms(self) -> tuple[BinaryForm, BinaryForm]:
        return (
            veronese_pullback(self.handle, self.rows[0], self.n),
            veronese_pullback(self.handle, self.rows[1], self.n),
        )

    def __eq__(self, other):
        return (
            isinstance(other, Pencil)
            and self.handle is other.handle
            and self.n == other.n
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((id(self.handle), self.n, self.rows))

    def __repr__(self):
        return f"Pencil(n={self.n}, rows={[list(r) for r in self.rows]})"

    def serialize(self):
        e = lambda v: FieldElement(self.handle, v).serialize()  # noqa: E731
        return {"n": self.n, "rows": [[e(v) for v in row] for row in self.rows]}


class RationalMap:
    """Self-map of the line given by a coprime pair of equal-degree forms."""

    __slots__ = ("handle", "degree", "p", "q")

    def __init__(self, p: BinaryForm, q: BinaryForm):
        if p.handle is not q.handle:
            raise FieldMismatchError("mixed field handles")
        if p.degree != q.degree or p.degree < 1:
            raise ValueError("need two forms of equal degree >= 1")
        if p.is_zero() or q.is_zero():
            raise ValueError("components must be nonzero")
        g = forms.gcd(p, q)
        if g.degree != 0:
            raise ValueError("components share a common factor")
        h = p.handle
        ctx = h.kernel_ctx()
        lead = next(c for c in p.coeffs if c != 0)
        inv = kernel.f_inv(ctx, lead)
        scale = lambda F: BinaryForm(  # noqa: E731
            h, F.degree, [kernel.f_mul(ctx, inv, c) for c in F.coeffs]
        )
        self.handle = h
        self.degree = p.degree
        self.p = scale(p)
        self.q = scale(q)

    def apply(self, t: ProjPoint) -> ProjPoint:
        pa = forms.evaluate(self.p, t)
        qa = forms.evaluate(self.q, t)
        return ProjPoint(self.handle, pa, qa)

    def precompose(self, sigma: MoebiusMap) -> RationalMap:
        """f o sigma."""
        mat = sigma.matrix()
        return RationalMap(forms.substitute(self.p, mat), forms.substitute(self.q, mat))

    def postcompose(self, sigma: MoebiusMap) -> RationalMap:
        """sigma o f."""
        ((a, b), (c, d)) = sigma.matrix()
        return RationalMap(a * self.p + b * self.q, c * self.p + d * self.q)

    def __eq__(self, other):
        return (
            isinstance(other, RationalMap)
            and self.handle is other.handle
            and self.p == other.p
            and self.q == other.q
        )

    def __hash__(self):
        return hash((self.p, self.q))

    def __repr__(self):
        return f"RationalMap(deg={self.degree}, p={list(self.p.coeffs)}, q={list(self.q.coeffs)})"

    def serialize(self):
        return {
            "degree": self.degree,
            "p": self.p.serialize()["coeffs"],
            "q": self.q.serialize()["coeffs"],
        }


class PlueckerVector:
    """Ordered 2x2 minors of a pencil matrix, first nonzero scaled to 1."""

    __slots__ = ("handle", "vec")

    def __init__(self, handle: FieldHandle, vec):
        vals = [handle.element(v).val for v in vec]
        ctx = handle.kernel_ctx()
        for v in vals:
            if v != 0:
                inv = kernel.f_inv(ctx, v)
                vals = [kernel.f_mul(ctx, inv, x) for x in vals]
                break
        else:
            raise ValueError("zero Pluecker vector")
        self.handle = handle
        self.vec = tuple(vals)

    def __eq__(self, other):
        return (
            isinstance(other, PlueckerVector)
            and self.handle is other.handle
            and self.vec == other.vec
        )

    def __hash__(self):
        return hash((id(self.handle), self.vec))

    def __repr__(self):
        return f"Pluecker{list(self.vec)}"


# ---------------------------------------------------------------------------
# operations


def veronese_pullback(handle: FieldHandle, row, n: int) -> BinaryForm:
    """Row of hyperplane coefficients -> degree-n form (the dictionary is
    the identity on coefficient vectors: a_i multiplies x^(n-i) y^i)."""
    vals = list(row)
    if len(vals) != n + 1:
        raise ValueError("row must have n + 1 coefficients")
    return BinaryForm(handle, n, vals)


def projection_map(W: Pencil):
    """Reduce the pencil to (degree m, coprime map, rational base divisor).

    The base form g = gcd of the two pullbacks has degree n - m; the
    returned divisor is its rational part (all of it when g splits).
    """
    F0, F1 = W.row_forms()
    g = forms.gcd(F0, F1)
    m = W.n - g.degree
    if m < 1:
        raise InternalCheckError("rank-2 pencil cannot reduce below degree 1")
    p = forms.divide_exact(F0, g)
    q = forms.divide_exact(F1, g)
    base = forms.roots(g) if g.degree > 0 else Divisor.empty(W.handle)
    return m, RationalMap(p, q), base


def subspace_from_map(f: RationalMap) -> Pencil:
    """Pencil in G(m-2, m) whose rows are the coefficient vectors of f."""
    return Pencil(f.handle, f.degree, [list(f.p.coeffs), list(f.q.coeffs)])


def moebius_from_three_points(src, dst) -> MoebiusMap:
    """Unique Moebius map with sigma(src_i) = dst_i for three point pairs."""
    if len(src) != 3 or len(dst) != 3:
        raise ValueError("need exactly three source and three target points")
    if len(set(src)) != 3 or len(set(dst)) != 3:
        raise ValueError("points must be pairwise distinct")
    h = src[0].handle
    ctx = h.kernel_ctx()

    def std(p0, p1, p2):
        return kernel.std_matrix(ctx, (p0.a, p0.c), (p1.a, p1.c), (p2.a, p2.c))

    ms = std(*src)
    md = std(*dst)
    inv = (ms[3], kernel.f_neg(ctx, ms[1]), kernel.f_neg(ctx, ms[2]), ms[0])
    mul, add = kernel.f_mul, kernel.f_add
    m00 = add(ctx, mul(ctx, md[0], inv[0]), mul(ctx, md[1], inv[2]))
    m01 = add(ctx, mul(ctx, md[0], inv[1]), mul(ctx, md[1], inv[3]))
    m10 = add(ctx, mul(ctx, md[2], inv[0]), mul(ctx, md[3], inv[2]))
    m11 = add(ctx, mul(ctx, md[2], inv[1]), mul(ctx, md[3], inv[3]))
    return MoebiusMap(h, (m00, m01, m10, m11))


def pluecker(W: Pencil) -> PlueckerVector:
    """Canonical Pluecker coordinates; injective on pencils."""
    ctx = W.handle.kernel_ctx()
    r0, r1 = W.rows
    vec = []
    for i in range(W.n + 1):
        for j in range(i + 1, W.n + 1):
            vec.append(
                kernel.f_sub(
                    ctx,
                    kernel.f_mul(ctx, r0[i], r1[j]),
                    kernel.f_mul(ctx, r0[j], r1[i]),
                )
            )
    return PlueckerVector(W.handle, vec)
