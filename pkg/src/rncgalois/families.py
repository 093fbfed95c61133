"""Closed-form Galois centers (cyclic, dihedral) and invariant pencils
of arbitrary finite Moebius groups (Klein, A4, S4, A5), with subgroup
construction and family enumeration.

The cyclic and dihedral pencils come from expanding the invariant
sections as products of linear forms and reading the coefficients back
through the pullback dictionary -- not from transcribing the printed
per-index coefficient patterns, whose index placement is checked
separately by :func:`compare_dihedral_constructions`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from ._backend import kernel
from .errors import InternalCheckError
from .field import (
    FieldElement,
    FieldHandle,
    alpha_class_representatives,
    in_squares_coset,
    is_square,
    primitive_root_of_unity,
)
from . import deck as deck_mod
from . import forms
from .forms import BinaryForm, Divisor, ProjPoint
from .proj import MoebiusMap, Pencil, iter_pgl2, pluecker, projection_map


@dataclass(frozen=True)
class FamilyLabel:
    """Family tag: C_n, D_m^alpha, K^beta, A4, S4 or A5.

    ``n`` is the subscript (the curve degree for C, the half-degree for
    D, and the fixed 4/12/24/60 otherwise); ``class_rep`` is the packed
    alpha/beta representative where one applies.
    """

    family: str
    n: int
    class_rep: int | None = None

    def __post_init__(self):
        if self.family not in ("C", "D", "K", "A4", "S4", "A5"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.family == "C" and self.n < 1:
            raise ValueError("cyclic families need n >= 1")
        if self.family == "D" and self.n < 3:
            raise ValueError("dihedral families need m >= 3")

    @property
    def center_degree(self) -> int:
        return {"C": self.n, "D": 2 * self.n, "K": 4, "A4": 12, "S4": 24,
                "A5": 60}[self.family]

    def __str__(self):
        base = f"{self.family}{self.n}" if self.family in ("C", "D") else self.family
        if self.class_rep is not None:
            return f"{base}[{self.class_rep}]"
        return base

    def serialize(self):
        return {
            "family": self.family,
            "n": self.n,
            "class": None if self.class_rep is None else str(self.class_rep),
        }


class FiniteSubgroup:
    """Closed finite subgroup of PGL2 with designated generators."""

    __slots__ = ("handle", "elements", "generators", "group_type")

    def __init__(self, handle: FieldHandle, elements, generators):
        elems = tuple(elements)
        keys = set(s.m for s in elems)
        if len(keys) != len(elems) or (1, 0, 0, 1) not in keys:
            raise InternalCheckError("subgroup must be duplicate-free with identity")
        for a in elems:
            for b in elems:
                if (a @ b).m not in keys:
                    raise InternalCheckError("subgroup is not closed")
        self.handle = handle
        self.elements = elems
        self.generators = tuple(generators)
        self.group_type = deck_mod.classify_group(elems)

    @property
    def order(self) -> int:
        return len(self.elements)

    def conjugate(self, M: MoebiusMap) -> FiniteSubgroup:
        Minv = M.inverse()
        return FiniteSubgroup(
            self.handle,
            [M @ s @ Minv for s in self.elements],
            [M @ s @ Minv for s in self.generators],
        )


def _close_group(handle, generators, cap):
    seen = {MoebiusMap.identity(handle).m: MoebiusMap.identity(handle)}
    frontier = list(generators)
    for g in generators:
        seen.setdefault(g.m, g)
    while frontier:
        nxt = []
        for g in frontier:
            for h in list(seen.values()):
                for prod in (g @ h, h @ g):
                    if prod.m not in seen:
                        seen[prod.m] = prod
                        nxt.append(prod)
                        if len(seen) > cap:
                            return None
        frontier = nxt
    return list(seen.values())


# ---------------------------------------------------------------------------
# closed-form centers


def _linear_power_row(handle, point: ProjPoint, e: int) -> BinaryForm:
    return BinaryForm.linear(handle, point) ** e


def cyclic_center(handle: FieldHandle, n: int, P: ProjPoint, Q: ProjPoint) -> Pencil:
    """Center cut out by the two hyperplanes pulling back to (cx-ay)^n
    and (dx-by)^n for P = [a:c], Q = [b:d]."""
    if n < 3:
        raise ValueError("cyclic centers need n >= 3")
    primitive_root_of_unity(handle, n)  # existence condition of the theorem
    if P == Q:
        raise ValueError("the two points must be distinct (diagonal excluded)")
    r0 = _linear_power_row(handle, P, n)
    r1 = _linear_power_row(handle, Q, n)
    return Pencil(handle, n, [list(r0.coeffs), list(r1.coeffs)])


def _dihedral_sections(handle, m, abcd, alpha):
    # raw lifts matter: scaling (a,c), (b,d) separately moves the second
    # section within its alpha-class, sweeping the third family dimension
    a, b, c, d = (handle.element(v) for v in abcd)
    n = 2 * m
    lp = BinaryForm(handle, 1, [c, -a])
    lq = BinaryForm(handle, 1, [d, -b])
    s1 = (lp**m) * (lq**m)
    s2 = (alpha**m).val * (lp**n) + (lq**n)
    return s1, s2


def dihedral_center(handle: FieldHandle, m: int, abcd, alpha: FieldElement) -> Pencil:
    """Center whose pullbacks are (cx-ay)^m (dx-by)^m and
    alpha^m (cx-ay)^n + (dx-by)^n, n = 2m."""
    if m < 3:
        raise ValueError("dihedral centers need m >= 3")
    n = 2 * m
    primitive_root_of_unity(handle, n)
    a, b, c, d = (handle.element(v) for v in abcd)
    if a * d - b * c == 0:
        raise ValueError("degenerate parameters: ad - bc = 0")
    alpha = handle.element(alpha)
    if alpha.val == 0:
        raise ValueError("alpha must be a unit")
    s1, s2 = _dihedral_sections(handle, m, abcd, alpha)
    return Pencil(handle, n, [list(s1.coeffs), list(s2.coeffs)])


def _binom_row(handle, n):
    row = [1]
    for i in range(n):
        row.append(row[-1] * (n - i) // (i + 1))
    return [handle.element(v) for v in row]


def dihedral_center_printed(handle: FieldHandle, m: int, abcd,
                            alpha: FieldElement) -> Pencil:
    """Literal per-index coefficient formulas for the dihedral center
    (first-section multinomial over x_{i+2l}, second with a^(n-i) c^i).

    Kept only for the regression comparison in
    :func:`compare_dihedral_constructions`.
    """
    if m < 3:
        raise ValueError("dihedral centers need m >= 3")
    n = 2 * m
    a, b, c, d = (handle.element(v) for v in abcd)
    if a * d - b * c == 0:
        raise ValueError("degenerate parameters: ad - bc = 0")
    alpha = handle.element(alpha)
    # A row: sum over i+j+l = m of (m; i,j,l) (-1)^i (ad+bc)^i (ab)^j (cd)^l x_{i+2l}
    from math import factorial

    rowA = [handle.zero() for _ in range(n + 1)]
    adbc = a * d + b * c
    ab = a * b
    cd = c * d
    for i in range(m + 1):
        for j in range(m - i + 1):
            l = m - i - j
            coef = factorial(m) // (factorial(i) * factorial(j) * factorial(l))
            term = handle.element(coef) * adbc**i * ab**j * cd**l
            if i % 2 == 1:
                term = -term
            rowA[i + 2 * l] = rowA[i + 2 * l] + term
    # B row: sum over i of C(n,i) (-1)^i (alpha^m a^(n-i) c^i + b^(n-i) d^i) x_i
    binom = _binom_row(handle, n)
    am = alpha**m
    rowB = []
    for i in range(n + 1):
        term = binom[i] * (am * a ** (n - i) * c**i + b ** (n - i) * d**i)
        if i % 2 == 1:
            term = -term
        rowB.append(term)
    return Pencil(handle, n, [rowA, rowB])


def compare_dihedral_constructions(handle: FieldHandle, m: int, tuples,
                                   alphas, max_ext: int = 4) -> dict:
    """Machine-checked report comparing the product-expansion rows with
    the literal printed coefficient rows, per parameter tuple.

    Deck verification is the oracle: for each construction the report
    records whether the pencil's projection is Galois with group D_m,
    and whether the two pencils coincide pointwise.
    """
    rows = []
    for abcd, alpha in zip(tuples, alphas):
        entry = {"abcd": [str(v) for v in abcd], "alpha": str(alpha)}
        ok_main, ok_printed, equal = False, False, False
        W = dihedral_center(handle, m, abcd, alpha)
        ok_main = _verified_dihedral(W, m, max_ext)
        try:
            Wp = dihedral_center_printed(handle, m, abcd, alpha)
            ok_printed = _verified_dihedral(Wp, m, max_ext)
            equal = W == Wp
        except ValueError:
            Wp = None
        entry.update(
            {"derived_galois": ok_main, "printed_galois": ok_printed,
             "pencils_equal": equal}
        )
        rows.append(entry)
    total = len(rows)
    return {
        "m": m,
        "field": {"p": handle.p, "k": handle.k},
        "tuples": total,
        "derived_pass": sum(r["derived_galois"] for r in rows),
        "printed_pass": sum(r["printed_galois"] for r in rows),
        "pointwise_equal": sum(r["pencils_equal"] for r in rows),
        "rows": rows,
        "verdict_derived": "pass" if all(r["derived_galois"] for r in rows) else "fail",
    }


def _verified_dihedral(W: Pencil, m: int, max_ext: int) -> bool:
    mm, f, base = projection_map(W)
    if mm != 2 * m or base.degree != 0:
        return False
    res = deck_mod.is_galois(f, max_ext)
    gt = res.group_type
    return res.verdict == deck_mod.GALOIS and gt.kind == "dihedral" and gt.param == m


# ---------------------------------------------------------------------------
# finite subgroups of PGL2


def _two_squares_witness(handle):
    """x, y with x^2 + y^2 = -1; always solvable in an odd finite field."""
    minus1 = -handle.one()
    for xv in range(handle.q):
        x = handle.element(xv)
        rest = minus1 - x * x
        if is_square(rest):
            from .field import sqrt as field_sqrt

            return x, field_sqrt(rest)
    raise InternalCheckError("no sum-of-two-squares witness found")


def _raw_pgl2_tuples(handle):
    """Canonical PGL2 entry tuples without object construction."""
    ctx = handle.kernel_ctx()
    q = handle.q
    for c in range(1, q):
        for d in range(q):
            yield (0, 1, c, d)
    for b in range(q):
        for c in range(q):
            bc = kernel.f_mul(ctx, b, c)
            for d in range(q):
                if d != bc:
                    yield (1, b, c, d)


def _scan_two_three_pairs(handle, t, target_order):
    """First (order-2, order-3) pair in canonical PGL2 order whose
    product has order t and whose closure has the target order.

    Order filters are trace tests: order 2 is trace 0, order 3 is
    trace^2 = det (char != 2, 3 here).
    """
    ctx = handle.kernel_ctx()
    mul, add, sub = kernel.f_mul, kernel.f_add, kernel.f_sub
    order3 = []
    for a, b, c, d in _raw_pgl2_tuples(handle):
        tr = add(ctx, a, d)
        if tr == 0:
            continue
        det = sub(ctx, mul(ctx, a, d), mul(ctx, b, c))
        if mul(ctx, tr, tr) == det:
            order3.append(MoebiusMap(handle, (a, b, c, d)))
    for m4 in _raw_pgl2_tuples(handle):
        if add(ctx, m4[0], m4[3]) != 0:
            continue
        sigma = MoebiusMap(handle, m4)
        for tau in order3:
            prod = sigma @ tau
            if prod.order() != t:
                continue
            closure = _close_group(handle, [sigma, tau], 2 * target_order)
            if closure is not None and len(closure) == target_order:
                return sigma, tau, closure
    raise ValueError(
        f"(2,3,{t}) generation scan exhausted in PGL2(GF({handle.p}^{handle.k}))"
    )


def subgroup_search(handle: FieldHandle, kind: str, param: int = 0,
                    class_rep=None) -> FiniteSubgroup:
    """Deterministic finite subgroup of PGL2 of the requested type.

    kind: "cyclic" (param = n), "klein" (class_rep = beta),
    "dihedral" (param = m, class_rep = alpha), "a4", "s4", "a5".
    """
    if kind == "cyclic":
        n = param
        z = primitive_root_of_unity(handle, n)
        g = MoebiusMap.diagonal(handle, z)
        elems = [MoebiusMap.identity(handle)]
        acc = g
        while not acc.is_identity():
            elems.append(acc)
            acc = acc @ g
        return FiniteSubgroup(handle, elems, [g])
    if kind == "klein":
        beta = handle.element(1 if class_rep is None else class_rep)
        if beta.val == 0:
            raise ValueError("beta must be a unit")
        g1 = MoebiusMap.diagonal(handle, -handle.one())
        g2 = MoebiusMap.antidiagonal(handle, beta)
        return FiniteSubgroup(handle, _close_group(handle, [g1, g2], 8), [g1, g2])
    if kind == "dihedral":
        m = param
        if m < 3:
            raise ValueError("dihedral subgroups here need m >= 3")
        alpha = handle.element(1 if class_rep is None else class_rep)
        if alpha.val == 0:
            raise ValueError("alpha must be a unit")
        z = primitive_root_of_unity(handle, m)
        g1 = MoebiusMap.diagonal(handle, z)
        g2 = MoebiusMap.antidiagonal(handle, alpha)
        grp = _close_group(handle, [g1, g2], 4 * m)
        if grp is None or len(grp) != 2 * m:
            raise InternalCheckError("dihedral closure has the wrong order")
        return FiniteSubgroup(handle, grp, [g1, g2])
    if kind in ("a4", "s4", "a5"):
        target, t = {"a4": (12, 3), "s4": (24, 4), "a5": (60, 5)}[kind]
        if target % handle.p == 0:
            raise ValueError(
                f"characteristic {handle.p} divides the group order {target}"
            )
        _two_squares_witness(handle)  # -1 as a sum of two squares
        if kind == "a5" and not is_square(handle.element(5)):
            raise ValueError(f"5 is not a square in GF({handle.p}^{handle.k})")
        sigma, tau, closure = _scan_two_three_pairs(handle, t, target)
        grp = FiniteSubgroup(handle, closure, [sigma, tau])
        if grp.group_type.kind != kind:
            raise InternalCheckError(f"closure classified as {grp.group_type}")
        return grp
    raise ValueError(f"unknown subgroup kind {kind!r}")


# ---------------------------------------------------------------------------
# invariant pencils


def _lift_matrix(handle, M: MoebiusMap):
    """Determinant-normalized lift when det is a square, else raw."""
    det = M.det()
    if is_square(det):
        from .field import sqrt as field_sqrt

        s = field_sqrt(det).inverse()
        return tuple((s * FieldElement(handle, v)).val for v in M.m)
    return M.m


def _substitution_matrix(handle, lift, N):
    """Action on degree-N forms: column j = coefficients of e_j o lift."""
    ctx = handle.kernel_ctx()
    cols = []
    for j in range(N + 1):
        e = [0] * (N + 1)
        e[j] = 1
        cols.append(kernel.form_substitute(ctx, e, *lift))
    return [[cols[j][i] for j in range(N + 1)] for i in range(N + 1)]


def _matrix_power_scalar(handle, lift, r):
    """Scalar s with lift^r = s * I (r = projective order of the lift)."""
    ctx = handle.kernel_ctx()
    mul, add, sub = kernel.f_mul, kernel.f_add, kernel.f_sub
    acc = (1, 0, 0, 1)
    for _ in range(r):
        a, b, c, d = acc
        e, f_, g, h = lift
        acc = (
            add(ctx, mul(ctx, a, e), mul(ctx, b, g)),
            add(ctx, mul(ctx, a, f_), mul(ctx, b, h)),
            add(ctx, mul(ctx, c, e), mul(ctx, d, g)),
            add(ctx, mul(ctx, c, f_), mul(ctx, d, h)),
        )
    if acc[1] != 0 or acc[2] != 0 or acc[0] != acc[3]:
        raise InternalCheckError("lift power is not scalar at the projective order")
    return acc[0]


def _eigenvalues(handle, lift, A, N, order):
    """All eigenvalues by scanning F_q^*; lambda^order = s^N prunes the
    scan exactly (s the scalar of lift^order)."""
    ctx = handle.kernel_ctx()
    target = kernel.f_pow(ctx, _matrix_power_scalar(handle, lift, order), N)
    out = []
    for lam in range(1, handle.q):
        if kernel.f_pow(ctx, lam, order) != target:
            continue
        shifted = [row[:] for row in A]
        for i in range(N + 1):
            shifted[i][i] = kernel.f_sub(ctx, shifted[i][i], lam)
        basis = kernel.nullspace(ctx, shifted)
        if basis:
            out.append((lam, shifted))
    return out


def invariant_pencil(G: FiniteSubgroup) -> list[Pencil]:
    """Two-dimensional joint eigenspaces of the generator actions on
    degree-N forms, N = |G|, returned as pencils (usually exactly one).

    The projectivization of each returned pencil is fixed pointwise by
    G, so its projection has deck group containing (hence equal to) G.
    """
    handle = G.handle
    N = G.order
    if N < 2:
        raise ValueError("the group must have order >= 2")
    if N % handle.p == 0:
        raise ValueError("characteristic divides the group order")
    if handle.q <= N:
        raise ValueError("field too small for degree-N eigenspace search")
    gens = list(G.generators)
    g1 = gens[0]
    g2 = gens[1] if len(gens) > 1 else gens[0]
    ctx = handle.kernel_ctx()
    l1 = _lift_matrix(handle, g1)
    l2 = _lift_matrix(handle, g2)
    A1 = _substitution_matrix(handle, l1, N)
    A2 = _substitution_matrix(handle, l2, N)
    eigs1 = _eigenvalues(handle, l1, A1, N, g1.order())
    eigs2 = _eigenvalues(handle, l2, A2, N, g2.order())
    out = []
    for lam1, sh1 in eigs1:
        for lam2, sh2 in eigs2:
            stacked = [row[:] for row in sh1] + [row[:] for row in sh2]
            basis = kernel.nullspace(ctx, stacked)
            if len(basis) == 2:
                out.append(Pencil(handle, N, basis))
    if not out:
        raise ValueError(
            "no 2-dimensional joint eigenspace over this field; extend the field"
        )
    return out


# ---------------------------------------------------------------------------
# family enumeration


def _points_off_diagonal_pairs(handle):
    pts = list(forms.iter_points(handle))
    for i, P in enumerate(pts):
        for Q in pts[i + 1:]:
            yield P, Q


def _p3_representatives(handle):
    """P^3(F_q) with the first nonzero coordinate normalized to 1."""
    q = handle.q
    for lead in range(4):
        head = [0] * lead + [1]
        free = 3 - lead
        for v in range(q**free):
            tail = []
            x = v
            for _ in range(free):
                tail.append(x % q)
                x //= q
            yield tuple(head + tail)


def family_sampler(label: FamilyLabel, handle: FieldHandle, limit=None,
                   seed: int | None = None):
    """Stream of distinct canonical pencils of the family (Pluecker
    deduplicated).  C and D are exhaustive parameter enumerations; the
    exceptional families enumerate conjugators in canonical PGL2 order,
    or sample them when seeded."""
    seen = set()

    def emit(W):
        key = pluecker(W).vec
        if key in seen:
            return None
        seen.add(key)
        return W

    count = 0

    def done():
        return limit is not None and count >= limit

    if label.family == "C":
        for P, Q in _points_off_diagonal_pairs(handle):
            if done():
                return
            W = emit(cyclic_center(handle, label.n, P, Q))
            if W is not None:
                count += 1
                yield W
        return
    if label.family == "D":
        alpha = handle.element(1 if label.class_rep is None else label.class_rep)
        for abcd in _p3_representatives(handle):
            if done():
                return
            a, b, c, d = abcd
            ctx = handle.kernel_ctx()
            if kernel.f_mul(ctx, a, d) == kernel.f_mul(ctx, b, c):
                continue
            W = emit(dihedral_center(handle, label.n, abcd, alpha))
            if W is not None:
                count += 1
                yield W
        return
    # exceptional families: conjugation orbit of the base invariant pencil
    kind = {"K": "klein", "A4": "a4", "S4": "s4", "A5": "a5"}[label.family]
    G = subgroup_search(handle, kind, param=0, class_rep=label.class_rep)
    base = invariant_pencil(G)[0]
    N = base.n
    ctx = handle.kernel_ctx()
    if seed is None:
        conjugators = iter_pgl2(handle)
    else:
        rng = random.Random(seed)

        def _sampled():
            while True:
                entries = [rng.randrange(handle.q) for _ in range(4)]
                try:
                    yield MoebiusMap(handle, entries)
                except ValueError:
                    continue

        conjugators = _sampled()
    for M in conjugators:
        if done():
            return
        inv = M.inverse()
        lift = inv.m
        rows = [
            kernel.form_substitute(ctx, list(row), *lift) for row in base.rows
        ]
        W = emit(Pencil(handle, N, rows))
        if W is not None:
            count += 1
            yield W


def cyclic_fiber_statistics(handle: FieldHandle, n: int) -> dict:
    """Measure how many ordered (P, Q) pairs produce each cyclic pencil."""
    counts: dict = {}
    pts = list(forms.iter_points(handle))
    for P in pts:
        for Q in pts:
            if P == Q:
                continue
            key = pluecker(cyclic_center(handle, n, P, Q)).vec
            counts[key] = counts.get(key, 0) + 1
    sizes = sorted(set(counts.values()))
    return {"pencils": len(counts), "fiber_sizes": sizes}
