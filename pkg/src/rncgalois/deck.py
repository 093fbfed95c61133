"""Deck transformations of a self-map of the line: computation, the
Galois decision, and classification of the group's isomorphism type.

A degree-m map is Galois exactly when its deck group has order m.  The
search works over the base field first and escalates through extension
fields until the three chosen fibers split, at which point the found
group is provably the full geometric deck group.  When the extension
cap is hit first, the result is flagged as a lower bound and the Galois
verdict becomes UNKNOWN rather than false.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._backend import kernel
from .errors import FieldTooLargeError, FieldTooSmallError, InternalCheckError
from .field import GF, TABLE_LIMIT, FieldHandle, embedding
from . import forms
from .forms import BinaryForm, Divisor, ProjPoint
from .proj import MoebiusMap, RationalMap

GALOIS = "galois"
NOT_GALOIS = "not_galois"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class GroupType:
    """Isomorphism class tag of a finite Moebius group."""

    kind: str  # trivial | cyclic | klein | dihedral | a4 | s4 | a5 | other
    param: int = 0

    def __str__(self):
        if self.kind == "trivial":
            return "C1"
        if self.kind == "cyclic":
            return f"C{self.param}"
        if self.kind == "klein":
            return "K4"
        if self.kind == "dihedral":
            return f"D{self.param}"
        if self.kind == "other":
            return f"G{self.param}"
        return self.kind.upper()

    @property
    def order(self) -> int:
        return {
            "trivial": 1,
            "cyclic": self.param,
            "klein": 4,
            "dihedral": 2 * self.param,
            "a4": 12,
            "s4": 24,
            "a5": 60,
        }.get(self.kind, self.param)


TRIVIAL = GroupType("trivial", 1)


class DeckGroup:
    """Verified group of Moebius maps commuting with a rational map."""

    __slots__ = ("rational_map", "elements", "ext_degree", "complete")

    def __init__(self, rational_map: RationalMap, elements, ext_degree: int,
                 complete: bool, verify: bool = True):
        elems = tuple(elements)
        self.rational_map = rational_map
        self.elements = elems
        self.ext_degree = ext_degree
        self.complete = complete
        if verify:
            self._verify()

    def _verify(self):
        f = self.rational_map
        ctx = f.handle.kernel_ctx()
        P, Q = list(f.p.coeffs), list(f.q.coeffs)
        seen = set()
        for s in self.elements:
            if s.handle is not f.handle:
                raise InternalCheckError("deck element over the wrong field")
            if not kernel.deck_identity_holds(ctx, P, Q, *s.m):
                raise InternalCheckError("deck element fails the exact identity")
            seen.add(s.m)
        if len(seen) != len(self.elements):
            raise InternalCheckError("duplicate deck elements")
        if (1, 0, 0, 1) not in seen:
            raise InternalCheckError("deck group missing the identity")
        for a in self.elements:
            if a.inverse().m not in seen:
                raise InternalCheckError("deck group not closed under inverse")
            for b in self.elements:
                if (a @ b).m not in seen:
                    raise InternalCheckError("deck group not closed under product")
        if f.degree % len(seen) != 0:
            raise InternalCheckError("deck order does not divide the degree")

    @property
    def order(self) -> int:
        return len(self.elements)

    def element_orders(self):
        return sorted(s.order() for s in self.elements)

    def contains(self, sigma: MoebiusMap) -> bool:
        return any(sigma == s for s in self.elements)

    def same_elements(self, other: "DeckGroup") -> bool:
        return set(s.m for s in self.elements) == set(s.m for s in other.elements)

    def serialize(self):
        return {
            "order": self.order,
            "type": str(classify_group(self)),
            "ext_degree": self.ext_degree,
            "complete": self.complete,
            "elements": [s.serialize() for s in self.elements],
        }


# ---------------------------------------------------------------------------
# basic geometry of a map


def critical_points(f: RationalMap) -> Divisor:
    """Rational zeros of the Wronskian of the defining pair."""
    if f.degree < 2:
        raise ValueError("critical points need degree >= 2")
    w = forms.wronskian(f.p, f.q)
    if w.is_zero():  # cannot happen for a coprime pair, kept as a guard
        raise InternalCheckError("zero Wronskian for a coprime pair")
    return forms.roots(w)


def fiber(f: RationalMap, t: ProjPoint) -> Divisor:
    """f^-1(t) with multiplicities: roots of t_c * p - t_a * q."""
    form = t.c * f.p - t.a * f.q
    return forms.roots(form)


def _fiber_form(f: RationalMap, t: ProjPoint) -> BinaryForm:
    return t.c * f.p - t.a * f.q


# ---------------------------------------------------------------------------
# the deck search


def _embed_map(f: RationalMap, emb) -> RationalMap:
    target = emb.target
    lift = lambda F: BinaryForm(  # noqa: E731
        target, F.degree, [emb.map_packed(c) for c in F.coeffs]
    )
    return RationalMap(lift(f.p), lift(f.q))


def _descend_group(elements, base: FieldHandle, emb):
    """Map matrices back to the base field when every entry descends."""
    down = []
    for s in elements:
        vals = [emb.section_packed(v) for v in s.m]
        if any(v is None for v in vals):
            return None
        down.append(MoebiusMap(base, vals))
    return down


def _level_search(f: RationalMap, m: int):
    """One field level: pick three fibers (split preferred) and search.

    Returns (sigmas, complete, enough_points) where complete means the
    three chosen fibers split so the result is the full geometric group.
    """
    h = f.handle
    crit = critical_points(f)
    crit_keys = set(pt.key() for pt in crit.support())
    for pt in crit.support():
        crit_keys.add(f.apply(pt).key())
    split_fibers = []
    plain_fibers = []
    for t in forms.iter_points(h):
        if t.key() in crit_keys:
            continue
        form = _fiber_form(f, t)
        if not forms.is_split(form):
            if len(plain_fibers) < 3:
                fib = forms.roots(form)
                pts = [pt for pt, mult in fib.entries if mult == 1]
                if pts:
                    plain_fibers.append(pts)
            continue
        fib = forms.roots(form)
        pts = [pt for pt, mult in fib.entries if mult == 1]
        if not pts:
            continue
        split_fibers.append(pts)
        if len(split_fibers) == 3:
            break
    chosen = split_fibers + plain_fibers[: 3 - len(split_fibers)]
    if len(chosen) < 3:
        return None, False, False
    complete = len(split_fibers) == 3
    ctx = h.kernel_ctx()
    raw = kernel.deck_search(
        ctx,
        list(f.p.coeffs),
        list(f.q.coeffs),
        [p.key() for p in chosen[0]],
        [p.key() for p in chosen[1]],
        [p.key() for p in chosen[2]],
    )
    sigmas = [MoebiusMap(h, m4) for m4 in raw]
    return sigmas, complete, True


def deck_group(f: RationalMap, max_ext: int = 4) -> DeckGroup:
    """Deck group via the three-fiber triple search with escalation.

    Deterministic: base points are scanned in canonical order, fibers
    that split over the current field are preferred, and the search
    stops at the smallest extension where all three fibers split (the
    result is then exact) or where the order reaches the degree.
    """
    m = f.degree
    if m < 2:
        raise ValueError("deck search needs degree >= 2")
    base = f.handle
    if base.q > TABLE_LIMIT:
        raise FieldTooLargeError("deck search requires q <= 2**20")
    best = None
    best_k = 1
    levels = 0
    for k in range(1, max_ext + 1):
        if base.q**k > TABLE_LIMIT:
            break
        if k == 1:
            fK, emb = f, None
        else:
            K = GF(base.p, base.k * k)
            emb = embedding(base, K)
            fK = _embed_map(f, emb)
        sigmas, complete, enough = _level_search(fK, m)
        if not enough:
            continue
        levels += 1
        if emb is not None:
            down = _descend_group(sigmas, base, emb)
            if down is not None:
                sigmas, fK = down, f
        if complete or len(sigmas) == m:
            return DeckGroup(fK, sigmas, ext_degree=k, complete=True)
        if best is None or len(sigmas) > len(best[0]):
            best = (sigmas, fK)
            best_k = k
    if levels == 0:
        raise FieldTooSmallError(
            "no field level offered three admissible base points; raise p"
        )
    sigmas, fK = best
    return DeckGroup(fK, sigmas, ext_degree=best_k, complete=False)


def brute_force_deck(f: RationalMap) -> DeckGroup:
    """Ground-truth deck group by scanning all of PGL2(F_q)."""
    if f.degree < 2:
        raise ValueError("deck search needs degree >= 2")
    h = f.handle
    if h.q**3 - h.q > 10**7:
        raise FieldTooLargeError("PGL2 enumeration beyond the 10^7 bound")
    ctx = h.kernel_ctx()
    raw = kernel.pgl2_deck_scan(ctx, list(f.p.coeffs), list(f.q.coeffs))
    return DeckGroup(f, [MoebiusMap(h, m4) for m4 in raw], ext_degree=1,
                     complete=False, verify=True)


@dataclass
class GaloisResult:
    """Verdict plus the deck-group certificate."""

    verdict: str  # GALOIS | NOT_GALOIS | UNKNOWN
    group: DeckGroup | None
    group_type: GroupType

    def serialize(self):
        return {
            "galois": True if self.verdict == GALOIS else (
                False if self.verdict == NOT_GALOIS else "unknown"
            ),
            "type": str(self.group_type),
            "certificate": self.group.serialize() if self.group else None,
        }


def is_galois(f: RationalMap, max_ext: int = 4) -> GaloisResult:
    """Galois iff the deck order reaches the degree; degree 1 is trivially
    Galois; an incomplete search below the degree stays UNKNOWN."""
    if f.degree == 1:
        triv = DeckGroup(f, [MoebiusMap.identity(f.handle)], 1, True)
        return GaloisResult(GALOIS, triv, TRIVIAL)
    G = deck_group(f, max_ext)
    if G.order == f.degree:
        return GaloisResult(GALOIS, G, classify_group(G))
    if G.complete:
        return GaloisResult(NOT_GALOIS, G, classify_group(G))
    return GaloisResult(UNKNOWN, G, classify_group(G))


# ---------------------------------------------------------------------------
# classification


def classify_group(G) -> GroupType:
    """Tag by (order, abelianness, element-order multiset).

    Valid for the groups that occur inside PGL2; anything unrecognized
    falls through to Other(order).
    """
    elements = list(G.elements) if hasattr(G, "elements") else list(G)
    n = len(elements)
    if n == 1:
        return TRIVIAL
    orders = sorted(s.order() for s in elements)
    abelian = all(
        (a @ b).m == (b @ a).m for i, a in enumerate(elements)
        for b in elements[i + 1:]
    )
    if abelian and orders[-1] == n:
        return GroupType("cyclic", n)
    if n == 4 and abelian and orders[-1] == 2:
        return GroupType("klein", 4)
    if not abelian and n % 2 == 0 and n >= 6 and (n // 2) in orders:
        return GroupType("dihedral", n // 2)
    if not abelian and n == 12 and orders[-1] == 3:
        return GroupType("a4", 0)
    if not abelian and n == 24 and orders[-1] == 4:
        return GroupType("s4", 0)
    if not abelian and n == 60 and set(orders) <= {1, 2, 3, 5}:
        return GroupType("a5", 0)
    return GroupType("other", n)
