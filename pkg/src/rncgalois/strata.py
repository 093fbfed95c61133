"""Non-disjoint theory: the reduction of a center meeting the curve to
its lower-degree center, the fiber parametrization by divisor triples,
the full classification decision, point-counting dimension estimates,
and the family inventory table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from itertools import combinations_with_replacement

from .errors import InternalCheckError
from .field import FieldHandle, GF, is_square
from . import deck as deck_mod
from . import forms
from .families import FamilyLabel, family_sampler
from .forms import Divisor, ProjPoint, iter_points
from .proj import Pencil, RationalMap, pluecker, projection_map, subspace_from_map

MAX_ENUMERATION = 10**7


# ---------------------------------------------------------------------------
# reduction and parametrization


def phi(W: Pencil):
    """Reduce to the unique lower-degree center inducing the same map."""
    m, f, _base = projection_map(W)
    if m < 2:
        raise ValueError("reduced degree 1 is handled by classify, not phi")
    return m, subspace_from_map(f)


def theta(D1: Divisor, D2: Divisor, D3: Divisor) -> Pencil:
    """Center spanned by the forms of D1 + D2 and D1 + D3.

    Requires supp(D2) and supp(D3) disjoint and D2 != D3; the projection
    of the result has base divisor exactly D1 and degree deg(D2).
    """
    if D2.degree != D3.degree or D2.degree < 1:
        raise ValueError("residual divisors must have equal positive degree")
    if D2 == D3:
        raise ValueError("residual divisors must differ")
    if set(D2.support()) & set(D3.support()):
        raise ValueError("residual divisors must have disjoint supports")
    n = D1.degree + D2.degree
    F = forms.form_from_divisor(D1 + D2, n)
    G = forms.form_from_divisor(D1 + D3, n)
    return Pencil(D1.handle, n, [list(F.coeffs), list(G.coeffs)])


# ---------------------------------------------------------------------------
# classification


@dataclass
class ClassificationReport:
    pencil: Pencil
    reduced_degree: int
    base: Divisor
    verdict: str  # deck.GALOIS | deck.NOT_GALOIS | deck.UNKNOWN
    group_type: deck_mod.GroupType | None
    label: FamilyLabel | None
    class_note: str | None
    ext_degree: int

    def serialize(self):
        return {
            "pencil": self.pencil.serialize(),
            "m": self.reduced_degree,
            "base": self.base.serialize(),
            "galois": True if self.verdict == deck_mod.GALOIS else (
                False if self.verdict == deck_mod.NOT_GALOIS else "unknown"
            ),
            "type": None if self.group_type is None else str(self.group_type),
            "label": None if self.label is None else self.label.serialize(),
            "class_note": self.class_note,
            "ext_degree": self.ext_degree,
        }


def _class_of_unit(handle, value, m):
    """Representative of the alpha-class of a unit, or None."""
    from .field import alpha_class_representatives, in_squares_coset

    v = handle.element(value)
    if v.val == 0:
        return None
    for rep in alpha_class_representatives(handle, m):
        if in_squares_coset(v / rep, m):
            return rep.val
    return None


def _recover_dihedral_class(group: deck_mod.DeckGroup, m: int):
    """Class of -det over the reflections (order-2 elements outside the
    rotation subgroup); None when they disagree."""
    handle = group.rational_map.handle
    rot = None
    for s in group.elements:
        if s.order() == m:
            rot = s
            break
    if rot is None:
        return None
    rotations = set()
    acc = rot
    for _ in range(m):
        rotations.add(acc.m)
        acc = acc @ rot
    classes = set()
    for s in group.elements:
        if s.m in rotations or s.order() != 2:
            continue
        cls = _class_of_unit(handle, (-s.det()).val, m)
        if cls is None:
            return None
        classes.add(cls)
    if len(classes) == 1:
        return classes.pop()
    return None


def _recover_klein_class(group: deck_mod.DeckGroup):
    """Beta from the multiset of -det square classes of the involutions."""
    handle = group.rational_map.handle
    vals = []
    for s in group.elements:
        if s.is_identity():
            continue
        v = -s.det()
        vals.append(v)
    nontrivial = [v for v in vals if not is_square(v)]
    if not nontrivial:
        return 1  # the class of squares
    reps = set()
    for v in nontrivial:
        reps.add(_class_of_unit(handle, v.val, 1))
    if len(reps) == 1:
        return reps.pop()
    return None


def classify(W: Pencil, max_ext: int = 4) -> ClassificationReport:
    """Full decision: reduce, decide Galois, classify, attach the label."""
    m, f, base = projection_map(W)
    if m == 1:
        return ClassificationReport(
            W, 1, base, deck_mod.GALOIS, deck_mod.TRIVIAL,
            FamilyLabel("C", 1), "reduced map is an automorphism", 1,
        )
    if m == 2:
        # every degree-2 map is Galois in odd characteristic
        try:
            G = deck_mod.deck_group(f, max_ext)
            ext = G.ext_degree
        except Exception:
            ext = 1
        return ClassificationReport(
            W, 2, base, deck_mod.GALOIS, deck_mod.GroupType("cyclic", 2),
            FamilyLabel("C", 2), None, ext,
        )
    res = deck_mod.is_galois(f, max_ext)
    label = None
    note = None
    if res.verdict == deck_mod.GALOIS:
        gt = res.group_type
        if gt.kind == "cyclic":
            label = FamilyLabel("C", m)
        elif gt.kind == "dihedral":
            cls = _recover_dihedral_class(res.group, gt.param)
            note = None if cls is not None else "class: undetermined"
            label = FamilyLabel("D", gt.param, cls)
        elif gt.kind == "klein":
            cls = _recover_klein_class(res.group)
            note = None if cls is not None else "class: undetermined"
            label = FamilyLabel("K", 4, cls)
        elif gt.kind == "a4":
            label = FamilyLabel("A4", 12)
        elif gt.kind == "s4":
            label = FamilyLabel("S4", 24)
        elif gt.kind == "a5":
            label = FamilyLabel("A5", 60)
        else:
            note = "galois with unlisted group"
    return ClassificationReport(
        W, m, base, res.verdict, res.group_type, label, note,
        res.group.ext_degree if res.group else 1,
    )


# ---------------------------------------------------------------------------
# dimension estimation by two-prime point counting


def dimension_estimate(sampler, p1: int, p2: int) -> int:
    """round(log(N2/N1) / log(p2/p1)) over Pluecker-deduplicated counts.

    ``sampler(p)`` must exhaustively enumerate the family's pencils over
    GF(p); for the families here the rounded value is exact.
    """
    if not p1 < p2:
        raise ValueError("need p1 < p2")
    counts = []
    for p in (p1, p2):
        seen = set()
        produced = 0
        for W in sampler(p):
            produced += 1
            if produced > MAX_ENUMERATION:
                raise ValueError("enumeration exceeds the 10^7 budget")
            seen.add(pluecker(W).vec)
        if not seen:
            raise ValueError(f"sampler produced nothing over GF({p})")
        counts.append(len(seen))
    return round(math.log(counts[1] / counts[0]) / math.log(p2 / p1))


def family_counter(label_family: str, n: int, class_index: int = 0):
    """Sampler factory for C_n / D_m family enumeration at a prime."""

    def sampler(p):
        handle = GF(p)
        if label_family == "D":
            from .field import alpha_class_representatives

            reps = alpha_class_representatives(handle, n)
            rep = reps[min(class_index, len(reps) - 1)].val
            label = FamilyLabel("D", n, rep)
        else:
            label = FamilyLabel(label_family, n)
        return family_sampler(label, handle)

    return sampler


def _divisors_of_degree(handle, d):
    """Sym^d of the rational points: all multisets as Divisors."""
    pts = list(iter_points(handle))
    for combo in combinations_with_replacement(range(len(pts)), d):
        entries = {}
        for i in combo:
            entries[i] = entries.get(i, 0) + 1
        yield Divisor(handle, [(pts[i], m) for i, m in entries.items()])


def phi_fiber_sampler(n: int, m: int, d2_spec, d3_spec):
    """Fiber of the reduction over a fixed reduced center: D1 ranges over
    Sym^(n-m), (D2, D3) pinned by integer point labels."""

    def build(handle, spec):
        return Divisor(
            handle,
            [(ProjPoint(handle, a, c), mult) for (a, c), mult in spec],
        )

    def sampler(p):
        handle = GF(p)
        D2 = build(handle, d2_spec)
        D3 = build(handle, d3_spec)
        if D2.degree != m or D3.degree != m:
            raise ValueError("residual divisors must have degree m")
        for D1 in _divisors_of_degree(handle, n - m):
            yield theta(D1, D2, D3)

    return sampler


def x_stratum_sampler(n: int, m: int):
    """All of the degree-m stratum via admissible divisor triples."""

    def sampler(p):
        handle = GF(p)
        d2s = list(_divisors_of_degree(handle, m))
        for D2 in d2s:
            s2 = set(D2.support())
            for D3 in d2s:
                if D2 == D3 or (s2 & set(D3.support())):
                    continue
                for D1 in _divisors_of_degree(handle, n - m):
                    yield theta(D1, D2, D3)

    return sampler


# ---------------------------------------------------------------------------
# the family inventory (Table regression)


@dataclass
class InventoryRow:
    name: str
    family: str
    reduced_degree: int
    dim: int
    constraint: str

    def serialize(self):
        return {
            "label": self.name,
            "family": self.family,
            "m": self.reduced_degree,
            "dim": self.dim,
            "constraint": self.constraint,
        }


@dataclass
class FamilyInventory:
    n: int
    rows: list[InventoryRow] = dc_field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.rows)

    @property
    def max_dim(self) -> int:
        return max(r.dim for r in self.rows)

    def serialize(self):
        return {
            "n": self.n,
            "count": self.count,
            "rows": [r.serialize() for r in self.rows],
        }


def table_inventory(n: int) -> FamilyInventory:
    """All families of Galois centers in G(n-2, n) with their dimensions.

    Row blocks: the automorphism family (dim n-1), the cyclic reductions
    C_k for k = 2..n (dim n-k+2), the dihedral reductions D_k for
    k = 3..floor(n/2) (dim n-2k+3), and the exceptional reductions K
    (n >= 4, dim n-1), A4 (n >= 12, dim n-9), S4 (n >= 24, dim n-21),
    A5 (n >= 60, dim n-57).
    """
    if n < 2:
        raise ValueError("the table starts at n = 2")
    inv = FamilyInventory(n)

    def row(name, family, mdeg, dim, constraint):
        inv.rows.append(InventoryRow(name, family, mdeg, dim, constraint))

    row(f"Phi_{{{n},1}}^-1(C_1)", "C", 1, n - 1, "always")
    for k in range(2, n + 1):
        row(f"Phi_{{{n},{k}}}^-1(C_{k})", "C", k, n - k + 2, "k=2..n")
    for k in range(3, n // 2 + 1):
        row(f"Phi_{{{n},{2 * k}}}^-1(D_{k})", "D", 2 * k, n - 2 * k + 3,
            "k=3..floor(n/2)")
    if n >= 4:
        row(f"Phi_{{{n},4}}^-1(K)", "K", 4, n - 1, "n>=4")
    if n >= 12:
        row(f"Phi_{{{n},12}}^-1(A4)", "A4", 12, n - 9, "n>=12")
    if n >= 24:
        row(f"Phi_{{{n},24}}^-1(S4)", "S4", 24, n - 21, "n>=24")
    if n >= 60:
        row(f"Phi_{{{n},60}}^-1(A5)", "A5", 60, n - 57, "n>=60")

    expected = _expected_count(n)
    if inv.count != expected:
        raise InternalCheckError(
            f"inventory count {inv.count} != closed form {expected}"
        )
    return inv


def _expected_count(n: int) -> int:
    if n in (2, 3):
        return n
    if n <= 11:
        return n + n // 2 - 1
    if n <= 23:
        return n + n // 2
    if n <= 59:
        return n + n // 2 + 1
    return n + n // 2 + 2
