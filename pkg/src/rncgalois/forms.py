"""Binary forms (homogeneous polynomials in two variables) over a field
handle, plus projective points and divisors on the line.

Coefficient convention, fixed across the package: a degree-d form stores
``coeffs[i]`` as the coefficient of ``x^(d-i) y^i``, matching the
coordinate convention of the degree-n embedding in :mod:`rncgalois.proj`.
"""

from __future__ import annotations

from ._backend import kernel
from .errors import FieldMismatchError, FieldTooLargeError
from .field import FieldElement, FieldHandle, TABLE_LIMIT


def _same_handle(a, b):
    if a is not b:
        raise FieldMismatchError("mixed field handles")


class BinaryForm:
    """Degree-d homogeneous form, stored as packed coefficients."""

    __slots__ = ("handle", "degree", "coeffs")

    def __init__(self, handle: FieldHandle, degree: int, coeffs):
        vals = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                _same_handle(c.handle, handle)
                vals.append(c.val)
            else:
                vals.append(handle.element(c).val)
        if len(vals) != degree + 1:
            raise ValueError("coefficient vector must have length degree + 1")
        self.handle = handle
        self.degree = degree
        self.coeffs = tuple(vals)

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, handle, degree):
        return cls(handle, degree, [0] * (degree + 1))

    @classmethod
    def monomial(cls, handle, degree, i):
        """x^(degree-i) y^i."""
        c = [0] * (degree + 1)
        c[i] = 1
        return cls(handle, degree, c)

    @classmethod
    def linear(cls, handle, point: ProjPoint):
        """(c x - a y), the linear form vanishing at the point [a:c]."""
        _same_handle(point.handle, handle)
        ctx = handle.kernel_ctx()
        return cls(handle, 1, [point.c, kernel.f_neg(ctx, point.a)])

    # -- basics -----------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def coefficient(self, i) -> FieldElement:
        return FieldElement(self.handle, self.coeffs[i])

    def __eq__(self, other):
        return (
            isinstance(other, BinaryForm)
            and self.handle is other.handle
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((id(self.handle), self.degree, self.coeffs))

    def __repr__(self):
        return f"BinaryForm(deg={self.degree}, {list(self.coeffs)})"

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        _same_handle(self.handle, other.handle)
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        ctx = self.handle.kernel_ctx()
        return BinaryForm(
            self.handle,
            self.degree,
            [kernel.f_add(ctx, a, b) for a, b in zip(self.coeffs, other.coeffs)],
        )

    def __sub__(self, other):
        _same_handle(self.handle, other.handle)
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        ctx = self.handle.kernel_ctx()
        return BinaryForm(
            self.handle,
            self.degree,
            [kernel.f_sub(ctx, a, b) for a, b in zip(self.coeffs, other.coeffs)],
        )

    def __mul__(self, other):
        ctx = self.handle.kernel_ctx()
        if isinstance(other, BinaryForm):
            _same_handle(self.handle, other.handle)
            return BinaryForm(
                self.handle,
                self.degree + other.degree,
                kernel.form_mul(ctx, list(self.coeffs), list(other.coeffs)),
            )
        s = self.handle.element(other).val
        return BinaryForm(
            self.handle, self.degree, [kernel.f_mul(ctx, s, c) for c in self.coeffs]
        )

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = BinaryForm(self.handle, 0, [1])
        for _ in range(e):
            out = out * self
        return out

    def monic(self) -> BinaryForm:
        """Scale so the first nonzero coefficient is 1."""
        for c in self.coeffs:
            if c != 0:
                ctx = self.handle.kernel_ctx()
                inv = kernel.f_inv(ctx, c)
                return BinaryForm(
                    self.handle,
                    self.degree,
                    [kernel.f_mul(ctx, inv, v) for v in self.coeffs],
                )
        return self

    # -- calculus -------------------------------------------------------------

    def derivative_x(self) -> BinaryForm:
        d = self.degree
        if d == 0:
            return BinaryForm.zero(self.handle, 0)
        ctx = self.handle.kernel_ctx()
        out = [
            kernel.f_mul(ctx, (d - i) % self.handle.p, self.coeffs[i])
            for i in range(d)
        ]
        return BinaryForm(self.handle, d - 1, out)

    def derivative_y(self) -> BinaryForm:
        d = self.degree
        if d == 0:
            return BinaryForm.zero(self.handle, 0)
        ctx = self.handle.kernel_ctx()
        out = [
            kernel.f_mul(ctx, (i + 1) % self.handle.p, self.coeffs[i + 1])
            for i in range(d)
        ]
        return BinaryForm(self.handle, d - 1, out)

    def serialize(self):
        return {
            "degree": self.degree,
            "coeffs": [FieldElement(self.handle, c).serialize() for c in self.coeffs],
        }


class ProjPoint:
    """Point of P^1, normalized so the first nonzero coordinate is 1."""

    __slots__ = ("handle", "a", "c")

    def __init__(self, handle: FieldHandle, a, c):
        av = handle.element(a).val
        cv = handle.element(c).val
        if av == 0 and cv == 0:
            raise ValueError("(0, 0) is not a projective point")
        ctx = handle.kernel_ctx()
        if av != 0:
            inv = kernel.f_inv(ctx, av)
            av, cv = 1, kernel.f_mul(ctx, cv, inv)
        else:
            cv = 1
        self.handle = handle
        self.a = av
        self.c = cv

    def key(self):
        return (self.a, self.c)

    def __eq__(self, other):
        return (
            isinstance(other, ProjPoint)
            and self.handle is other.handle
            and self.key() == other.key()
        )

    def __lt__(self, other):
        return self.key() < other.key()

    def __hash__(self):
        return hash((id(self.handle), self.key()))

    def __repr__(self):
        return f"[{self.a}:{self.c}]"

    def serialize(self):
        return [
            FieldElement(self.handle, self.a).serialize(),
            FieldElement(self.handle, self.c).serialize(),
        ]


def iter_points(handle: FieldHandle):
    """P^1(F_q) in canonical order: [0:1], then [1:t] for ascending t."""
    yield ProjPoint(handle, 0, 1)
    for t in range(handle.q):
        yield ProjPoint(handle, 1, t)


class Divisor:
    """Effective divisor on P^1: sorted distinct points with multiplicities."""

    __slots__ = ("handle", "entries")

    def __init__(self, handle: FieldHandle, entries):
        merged: dict = {}
        for pt, m in entries:
            _same_handle(pt.handle, handle)
            if m < 1:
                raise ValueError("multiplicities must be positive")
            merged[pt] = merged.get(pt, 0) + m
        self.handle = handle
        self.entries = tuple(sorted(merged.items(), key=lambda e: e[0].key()))

    @classmethod
    def empty(cls, handle):
        return cls(handle, [])

    @classmethod
    def single(cls, point: ProjPoint, mult: int = 1):
        return cls(point.handle, [(point, mult)])

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.entries)

    def support(self):
        return [pt for pt, _ in self.entries]

    def __add__(self, other):
        _same_handle(self.handle, other.handle)
        return Divisor(self.handle, list(self.entries) + list(other.entries))

    def __eq__(self, other):
        return (
            isinstance(other, Divisor)
            and self.handle is other.handle
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((id(self.handle), self.entries))

    def __repr__(self):
        return "Divisor(" + " + ".join(f"{m}*{p!r}" for p, m in self.entries) + ")"

    def serialize(self):
        return [[p.serialize(), m] for p, m in self.entries]


# ---------------------------------------------------------------------------
# operations


def evaluate(F: BinaryForm, t: ProjPoint) -> FieldElement:
    _same_handle(F.handle, t.handle)
    ctx = F.handle.kernel_ctx()
    return FieldElement(F.handle, kernel.form_eval(ctx, list(F.coeffs), t.a, t.c))


def substitute(F: BinaryForm, matrix) -> BinaryForm:
    """F(m00 x + m01 y, m10 x + m11 y) for a 2x2 matrix of elements."""
    h = F.handle
    (m00, m01), (m10, m11) = matrix
    vals = [h.element(v).val for v in (m00, m01, m10, m11)]
    ctx = h.kernel_ctx()
    return BinaryForm(h, F.degree, kernel.form_substitute(ctx, list(F.coeffs), *vals))


def _dehom(F: BinaryForm):
    """Ascending coefficients of F(1, t) -- identical to the stored vector."""
    return kernel.pu_trim(list(F.coeffs))


def _rehom(handle, coeffs, degree) -> BinaryForm:
    out = list(coeffs) + [0] * (degree + 1 - len(coeffs))
    return BinaryForm(handle, degree, out)


def gcd(F: BinaryForm, G: BinaryForm) -> BinaryForm:
    """Monic greatest common divisor (full projective content).

    The dehomogenized Euclid handles everything except common powers of
    x (roots at [0:1], i.e. shared trailing structure), which are
    stripped first and multiplied back in.
    """
    _same_handle(F.handle, G.handle)
    if F.is_zero() and G.is_zero():
        raise ValueError("gcd of two zero forms")
    if F.is_zero():
        return G.monic()
    if G.is_zero():
        return F.monic()
    h = F.handle
    ctx = h.kernel_ctx()
    # x-adic valuation = number of trailing zero coefficients
    fx = len(F.coeffs) - len(_dehom(F))
    gx = len(G.coeffs) - len(_dehom(G))
    common_x = min(fx, gx)
    g = kernel.pu_gcd(ctx, _dehom(F), _dehom(G))
    deg = (len(g) - 1) + common_x
    return _rehom(h, g, deg).monic()


def divide_exact(F: BinaryForm, G: BinaryForm) -> BinaryForm:
    """Quotient F / G; raises if the division is not exact."""
    _same_handle(F.handle, G.handle)
    if G.is_zero():
        raise ZeroDivisionError("division by the zero form")
    ctx = F.handle.kernel_ctx()
    quo, rem = kernel.pu_divmod(ctx, _dehom(F), _dehom(G))
    if rem:
        raise ValueError("form division is not exact")
    deg = F.degree - G.degree
    fx = len(F.coeffs) - len(_dehom(F))
    gx = len(G.coeffs) - len(_dehom(G))
    if gx > fx:
        raise ValueError("form division is not exact")
    return _rehom(F.handle, quo, deg)


def resultant(F: BinaryForm, G: BinaryForm) -> FieldElement:
    """Sylvester determinant; zero iff the forms share a projective root."""
    _same_handle(F.handle, G.handle)
    if F.degree < 1 or G.degree < 1:
        raise ValueError("resultant needs degrees >= 1")
    h = F.handle
    ctx = h.kernel_ctx()
    n, m = F.degree, G.degree
    size = n + m
    rows = []
    for i in range(m):
        row = [0] * size
        for j, c in enumerate(F.coeffs):
            row[i + j] = c
        rows.append(row)
    for i in range(n):
        row = [0] * size
        for j, c in enumerate(G.coeffs):
            row[i + j] = c
        rows.append(row)
    # Gaussian elimination tracking the determinant
    det = 1
    for col in range(size):
        sel = -1
        for r in range(col, size):
            if rows[r][col] != 0:
                sel = r
                break
        if sel < 0:
            return h.zero()
        if sel != col:
            rows[col], rows[sel] = rows[sel], rows[col]
            det = kernel.f_neg(ctx, det)
        piv = rows[col][col]
        det = kernel.f_mul(ctx, det, piv)
        inv = kernel.f_inv(ctx, piv)
        for r in range(col + 1, size):
            if rows[r][col] == 0:
                continue
            fac = kernel.f_mul(ctx, rows[r][col], inv)
            rows[r] = [
                kernel.f_sub(ctx, rows[r][j], kernel.f_mul(ctx, fac, rows[col][j]))
                for j in range(size)
            ]
    return FieldElement(h, det)


def wronskian(F: BinaryForm, G: BinaryForm) -> BinaryForm:
    """dF/dx dG/dy - dF/dy dG/dx, degree 2d - 2 (or the zero form)."""
    _same_handle(F.handle, G.handle)
    if F.degree != G.degree or F.degree < 1:
        raise ValueError("wronskian needs two forms of equal degree >= 1")
    return F.derivative_x() * G.derivative_y() - F.derivative_y() * G.derivative_x()


def roots(F: BinaryForm) -> Divisor:
    """All rational zeros with multiplicity by repeated exact division."""
    if F.is_zero():
        raise ValueError("the zero form has no root divisor")
    h = F.handle
    if h.q > TABLE_LIMIT:
        raise FieldTooLargeError(
            "root scan requires q <= 2**20; extend-and-retry is the deck "
            "module's job"
        )
    ctx = h.kernel_ctx()
    found = kernel.roots_scan(ctx, list(F.coeffs))
    return Divisor(h, [(ProjPoint(h, a, c), m) for a, c, m in found])


def is_split(F: BinaryForm) -> bool:
    """Whether the form is a product of rational linear forms."""
    if F.is_zero():
        raise ValueError("the zero form is not classified")
    return bool(kernel.is_split(F.handle.kernel_ctx(), list(F.coeffs)))


def form_from_divisor(D: Divisor, degree: int) -> BinaryForm:
    """Monic product of (c x - a y)^m over the divisor; degree must match."""
    if D.degree != degree:
        raise ValueError(f"divisor degree {D.degree} does not match {degree}")
    h = D.handle
    out = BinaryForm(h, 0, [1])
    for pt, m in D.entries:
        out = out * (BinaryForm.linear(h, pt) ** m)
    return out.monic()
