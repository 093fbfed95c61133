"""Exact arithmetic in GF(p) and GF(p^k), with the root-of-unity and
coset utilities the center constructions depend on.

Elements are stored packed: the integer ``sum c_i p**i`` of the
coefficient vector (least significant first), which is also the
canonical ordering used everywhere a "smallest" element is promised.
Extension fields of size up to 2**20 run on discrete-log tables shared
with the kernels; larger extensions fall back to coefficient-vector
arithmetic (scalar operations only -- the scan-based kernels enforce the
2**20 bound themselves).
"""

from __future__ import annotations

import functools
from array import array

from ._backend import kernel
from .errors import FieldMismatchError, FieldTooLargeError, NoRootOfUnityError

TABLE_LIMIT = 1 << 20


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def _factorize(n: int) -> list[int]:
    """Distinct prime factors by trial division (n < 2**63 desk scale)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


class FieldHandle:
    """Field GF(p^k) with the canonical (packed-smallest) modulus.

    Use the :func:`GF` factory; handles are cached and compared by
    identity.
    """

    __slots__ = (
        "p",
        "k",
        "q",
        "modulus",
        "_ctx",
        "_generator",
        "_sections",
        "__weakref__",
    )

    def __init__(self, p: int, k: int):
        if not _is_prime(p) or p == 2:
            raise ValueError(f"p = {p} is not an odd prime")
        if p >= 1 << 31:
            raise ValueError("p must be below 2**31")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = self._smallest_irreducible() if k > 1 else None
        self._ctx = None
        self._generator = None
        self._sections = {}

    # -- construction helpers -------------------------------------------

    def _smallest_irreducible(self) -> tuple[int, ...]:
        """Monic irreducible of degree k, smallest packed low part."""
        p, k = self.p, self.k
        pctx = (p, 1, p, None, None, None)
        prime_parts = _factorize(k)
        for low in range(p**k):
            coeffs = []
            v = low
            for _ in range(k):
                coeffs.append(v % p)
                v //= p
            poly = coeffs + [1]
            # x^(p^k) == x mod poly, and x^(p^(k/l)) - x coprime for l | k
            xq = kernel.pu_powmod_t(pctx, p**k, poly)
            if xq != [0, 1]:
                continue
            ok = True
            for ell in prime_parts:
                xd = kernel.pu_powmod_t(pctx, p ** (k // ell), poly)
                diff = list(xd)
                while len(diff) < 2:
                    diff.append(0)
                diff[1] = (diff[1] - 1) % p
                g = kernel.pu_gcd(pctx, kernel.pu_trim(diff), poly)
                if len(g) != 1:
                    ok = False
                    break
            if ok:
                return tuple(poly)
        raise RuntimeError("no irreducible polynomial found")  # unreachable

    # -- packed coefficient-vector arithmetic (any size) ----------------

    def unpack(self, v: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            out.append(v % self.p)
            v //= self.p
        return tuple(out)

    def pack(self, vec) -> int:
        v = 0
        for c in reversed(list(vec)):
            v = v * self.p + c % self.p
        return v

    def _vec_mul(self, u, v):
        p, k = self.p, self.k
        prod = [0] * (2 * k - 1)
        for i, ui in enumerate(u):
            if ui == 0:
                continue
            for j, vj in enumerate(v):
                prod[i + j] = (prod[i + j] + ui * vj) % p
        # reduce by the monic modulus
        m = self.modulus
        for i in range(2 * k - 2, k - 1, -1):
            c = prod[i]
            if c == 0:
                continue
            prod[i] = 0
            for j in range(k):
                prod[i - k + j] = (prod[i - k + j] - c * m[j]) % p
        return tuple(prod[:k])

    def _raw_mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        return self.pack(self._vec_mul(self.unpack(a), self.unpack(b)))

    def _raw_add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        u, v = self.unpack(a), self.unpack(b)
        return self.pack((x + y) % self.p for x, y in zip(u, v))

    def _raw_neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return self.pack((-x) % self.p for x in self.unpack(a))

    def _raw_pow(self, a: int, e: int) -> int:
        if self.k == 1:
            return pow(a, e, self.p)
        if e < 0:
            a = self._raw_inv(a)
            e = -e
        r, b = 1, a
        while e:
            if e & 1:
                r = self._raw_mul(r, b)
            b = self._raw_mul(b, b)
            e >>= 1
        return r

    def _raw_inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        return self._raw_pow(a, self.q - 2)

    # -- kernel context ---------------------------------------------------

    def kernel_ctx(self):
        """Context tuple for the kernel backends; builds tables lazily."""
        if self._ctx is None:
            if self.k == 1:
                self._ctx = (self.p, 1, self.p, None, None, None)
            else:
                if self.q > TABLE_LIMIT:
                    raise FieldTooLargeError(
                        f"GF({self.p}^{self.k}) exceeds the 2**20 kernel bound"
                    )
                g = self.generator().val
                q = self.q
                ex = array("q", [0] * (q - 1))
                lg = array("q", [-1] * q)
                acc = 1
                for i in range(q - 1):
                    ex[i] = acc
                    lg[acc] = i
                    acc = self._raw_mul(acc, g)
                zc = array("q", [0] * (q - 1))
                p = self.p
                for t in range(q - 1):
                    w = ex[t]
                    c0 = w % p
                    w1 = w - c0 + (c0 + 1) % p  # add 1 to the constant term
                    zc[t] = -1 if w1 == 0 else lg[w1]
                self._ctx = (self.p, self.k, q, ex, lg, zc)
        return self._ctx

    # -- elements ---------------------------------------------------------

    def element(self, value) -> FieldElement:
        """Element from an int (packed / residue) or coefficient vector."""
        if isinstance(value, FieldElement):
            if value.handle is not self:
                raise FieldMismatchError("element from a different field")
            return value
        if isinstance(value, int):
            if self.k == 1:
                return FieldElement(self, value % self.p)
            if 0 <= value < self.q:
                return FieldElement(self, value)
            if -self.p < value < 0:  # small negatives read as constants
                return FieldElement(self, value % self.p)
            raise ValueError("packed value out of range for extension field")
        return FieldElement(self, self.pack(value))

    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def elements(self):
        """All field elements in canonical (packed) order."""
        for v in range(self.q):
            yield FieldElement(self, v)

    def generator(self) -> FieldElement:
        """Smallest generator of the multiplicative group."""
        if self._generator is None:
            n = self.q - 1
            primes = _factorize(n)
            for v in range(2, self.q):
                if all(self._raw_pow(v, n // ell) != 1 for ell in primes):
                    self._generator = FieldElement(self, v)
                    break
            else:  # pragma: no cover - q >= 3 always has a generator
                raise RuntimeError("no generator found")
        return self._generator

    def __repr__(self):
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"


@functools.lru_cache(maxsize=None)
def GF(p: int, k: int = 1) -> FieldHandle:
    return FieldHandle(p, k)


class FieldElement:
    """Immutable element of a :class:`FieldHandle`."""

    __slots__ = ("handle", "val")

    def __init__(self, handle: FieldHandle, val: int):
        self.handle = handle
        self.val = val

    # -- helpers ----------------------------------------------------------

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.handle is not self.handle:
                raise FieldMismatchError("mixed field handles")
            return other.val
        if isinstance(other, int):
            return other % self.handle.p if self.handle.k == 1 else self.handle.element(other).val
        return NotImplemented

    def _ops(self):
        h = self.handle
        if h.k == 1 or h.q <= TABLE_LIMIT:
            return h.kernel_ctx()
        return None

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        ctx = self._ops()
        if ctx is not None:
            return FieldElement(self.handle, kernel.f_add(ctx, self.val, v))
        return FieldElement(self.handle, self.handle._raw_add(self.val, v))

    __radd__ = __add__

    def __neg__(self):
        ctx = self._ops()
        if ctx is not None:
            return FieldElement(self.handle, kernel.f_neg(ctx, self.val))
        return FieldElement(self.handle, self.handle._raw_neg(self.val))

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        ctx = self._ops()
        if ctx is not None:
            return FieldElement(self.handle, kernel.f_sub(ctx, self.val, v))
        return FieldElement(
            self.handle, self.handle._raw_add(self.val, self.handle._raw_neg(v))
        )

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        ctx = self._ops()
        if ctx is not None:
            return FieldElement(self.handle, kernel.f_mul(ctx, self.val, v))
        return FieldElement(self.handle, self.handle._raw_mul(self.val, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        if v == 0:
            raise ZeroDivisionError("division by zero")
        ctx = self._ops()
        if ctx is not None:
            return FieldElement(
                self.handle, kernel.f_mul(ctx, self.val, kernel.f_inv(ctx, v))
            )
        return FieldElement(
            self.handle, self.handle._raw_mul(self.val, self.handle._raw_inv(v))
        )

    def __rtruediv__(self, other):
        return self.handle.element(other) / self

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        ctx = self._ops()
        if ctx is not None:
            return FieldElement(self.handle, kernel.f_pow(ctx, self.val, e))
        return FieldElement(self.handle, self.handle._raw_pow(self.val, e))

    def inverse(self) -> FieldElement:
        ctx = self._ops()
        if ctx is not None:
            return FieldElement(self.handle, kernel.f_inv(ctx, self.val))
        return FieldElement(self.handle, self.handle._raw_inv(self.val))

    # -- structure ----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.handle is other.handle and self.val == other.val
        if isinstance(other, int):
            return self == self.handle.element(other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.handle), self.val))

    def __bool__(self):
        return self.val != 0

    def repr_vector(self) -> tuple[int, ...]:
        return self.handle.unpack(self.val)

    def multiplicative_order(self) -> int:
        if self.val == 0:
            raise ValueError("zero has no multiplicative order")
        n = self.handle.q - 1
        order = n
        for ell in _factorize(n):
            while order % ell == 0 and self**(order // ell) == 1:
                order //= ell
        return order

    def serialize(self):
        if self.handle.k == 1:
            return str(self.val)
        return [str(c) for c in self.repr_vector()]

    def __repr__(self):
        if self.handle.k == 1:
            return f"{self.val}"
        return f"{list(self.repr_vector())}"


def parse_element(handle: FieldHandle, data) -> FieldElement:
    """Inverse of :meth:`FieldElement.serialize` (also accepts ints)."""
    if isinstance(data, str):
        return handle.element(int(data))
    if isinstance(data, int):
        return handle.element(data)
    return handle.element([int(c) for c in data])


# ---------------------------------------------------------------------------
# root-of-unity and coset utilities


def primitive_root_of_unity(handle: FieldHandle, n: int) -> FieldElement:
    """Smallest element of multiplicative order exactly n."""
    if n < 1:
        raise ValueError("n must be positive")
    if (handle.q - 1) % n != 0:
        raise NoRootOfUnityError(
            f"no primitive {n}-th root: {n} does not divide {handle.q - 1}"
        )
    if n == 1:
        return handle.one()
    primes = _factorize(n)
    if handle.q <= TABLE_LIMIT:
        for v in range(1, handle.q):
            e = handle.element(v)
            if e**n == 1 and all(e ** (n // ell) != 1 for ell in primes):
                return e
        raise NoRootOfUnityError(f"no primitive {n}-th root found")
    # large field: order-n elements are g^((q-1)/n * j), gcd(j, n) = 1
    if n > TABLE_LIMIT:
        raise FieldTooLargeError("root-of-unity scan beyond the desk-scale bound")
    g = handle.generator()
    step = (handle.q - 1) // n
    best = None
    for j in range(1, n):
        if all(j % ell != 0 for ell in primes):
            cand = g ** (step * j)
            if best is None or cand.val < best.val:
                best = cand
    assert best is not None
    return best


def is_square(a: FieldElement) -> bool:
    """Euler criterion; zero counts as a square."""
    if a.val == 0:
        return True
    return a ** ((a.handle.q - 1) // 2) == 1


def sqrt(a: FieldElement) -> FieldElement:
    """Smaller of the two square roots (canonical packed order)."""
    h = a.handle
    if a.val == 0:
        return h.zero()
    if not is_square(a):
        raise ValueError(f"{a!r} is not a square in {h!r}")
    if h.q <= TABLE_LIMIT:
        for v in range(1, h.q):
            if h.element(v) * v == a:
                return h.element(v)
        raise RuntimeError("unreachable: square with no root")
    # Tonelli-Shanks exponent splitting for large prime fields
    q = h.q
    s, m = q - 1, 0
    while s % 2 == 0:
        s //= 2
        m += 1
    z = h.element(2)
    while is_square(z):
        z = h.element(z.val + 1)
    c = z**s
    t = a**s
    r = a ** ((s + 1) // 2)
    while t != 1:
        i, tt = 0, t
        while tt != 1:
            tt = tt * tt
            i += 1
        b = c ** (1 << (m - i - 1))
        m = i
        c = b * b
        t = t * c
        r = r * b
    other = -r
    return r if r.val <= other.val else other


def squares_coset_order(handle: FieldHandle, m: int) -> int:
    """Order of the subgroup generated by the squares and mu_m."""
    n = handle.q - 1
    from math import gcd, lcm

    return lcm(n // 2, gcd(m, n))


def alpha_class_representatives(handle: FieldHandle, m: int) -> list[FieldElement]:
    """Coset representatives of <squares, mu_m> in the unit group.

    The index is 1 or 2; representatives are powers of the canonical
    generator (so 1, and the generator itself when the index is 2).
    """
    n = handle.q - 1
    index = n // squares_coset_order(handle, m)
    if index == 1:
        return [handle.one()]
    return [handle.one(), handle.generator()]


def in_squares_coset(a: FieldElement, m: int) -> bool:
    """Membership in the subgroup generated by squares and mu_m."""
    if a.val == 0:
        raise ValueError("zero is not a unit")
    return a ** squares_coset_order(a.handle, m) == 1


# ---------------------------------------------------------------------------
# embeddings between compatible fields


class Embedding:
    """Deterministic field embedding GF(p^a) -> GF(p^(a*b))."""

    def __init__(self, base: FieldHandle, target: FieldHandle):
        if base.p != target.p or target.k % base.k != 0:
            raise ValueError("no embedding between these fields")
        self.base = base
        self.target = target
        if base.k == 1:
            self._powers = None  # identity on packed values
        else:
            root = self._find_root()
            pw = [target.one().val]
            for _ in range(base.k - 1):
                pw.append(target._raw_mul(pw[-1], root))
            self._powers = pw

    def _find_root(self) -> int:
        """Smallest root of the base modulus inside the target field."""
        ctx = self.target.kernel_ctx()
        mod = [self.target.element(c).val for c in self.base.modulus]
        for v in range(self.target.q):
            acc = 0
            for c in reversed(mod):
                acc = kernel.f_add(ctx, kernel.f_mul(ctx, acc, v), c)
            if acc == 0:
                return v
        raise RuntimeError("modulus has no root in the target field")

    def map_packed(self, v: int) -> int:
        if self._powers is None:
            return v
        out = 0
        t = self.target
        for c, pw in zip(self.base.unpack(v), self._powers):
            out = t._raw_add(out, t._raw_mul(c, pw))
        return out

    def __call__(self, a: FieldElement) -> FieldElement:
        return FieldElement(self.target, self.map_packed(a.val))

    def section_packed(self, v: int):
        """Preimage of a packed target value, or None."""
        if self._powers is None:
            return v if v < self.base.q else None
        sec = self.base._sections.get(self.target)
        if sec is None:
            sec = {self.map_packed(x): x for x in range(self.base.q)}
            self.base._sections[self.target] = sec
        return sec.get(v)


@functools.lru_cache(maxsize=None)
def embedding(base: FieldHandle, target: FieldHandle) -> Embedding:
    return Embedding(base, target)
