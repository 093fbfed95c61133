"""Command-line front end.

Subcommands: check (classify a pencil from stdin), family (generate
verified centers), table (family inventory), dimension (two-prime
dimension estimate), oracle (deck search vs brute force agreement).

Exit codes: 0 success, 1 input/condition error, 2 UNKNOWN verdict,
3 internal verification failure.  Output is JSON lines unless
``--format table`` is given; identical config plus seed gives
byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .errors import InternalCheckError
from .field import GF, FieldHandle, alpha_class_representatives, parse_element
from . import deck as deck_mod
from . import families, strata
from .forms import BinaryForm, ProjPoint, iter_points
from .proj import Pencil, RationalMap, pluecker, projection_map

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_UNKNOWN = 2
EXIT_INTERNAL = 3


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _emit(obj, fmt):
    if fmt == "json":
        print(_dump(obj))
    else:
        if isinstance(obj, dict):
            width = max(len(k) for k in obj)
            for k in sorted(obj):
                print(f"{k:<{width}}  {obj[k]}")
        else:
            print(obj)
        print("-" * 40)


def _field(args) -> FieldHandle:
    return GF(args.p, getattr(args, "ext", 1) or 1)


def _parse_label(text: str):
    text = text.strip()
    if text in ("K", "A4", "S4", "A5"):
        fixed = {"K": 4, "A4": 12, "S4": 24, "A5": 60}
        return families.FamilyLabel(text, fixed[text])
    if text[0] in ("C", "D") and text[1:].isdigit():
        return families.FamilyLabel(text[0], int(text[1:]))
    raise ValueError(f"unknown family label {text!r}")


def _pencil_from_json(handle, data) -> Pencil:
    if "n" not in data or "rows" not in data:
        raise ValueError("pencil JSON needs fields 'n' and 'rows'")
    n = int(data["n"])
    rows = [[parse_element(handle, v).val for v in row] for row in data["rows"]]
    return Pencil(handle, n, rows)


# ---------------------------------------------------------------------------
# subcommands


def cmd_check(args) -> int:
    handle = _field(args)
    try:
        data = json.load(sys.stdin)
        W = _pencil_from_json(handle, data)
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: invalid pencil input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = strata.classify(W, max_ext=args.max_ext)
    _emit(report.serialize(), args.format)
    if report.verdict == deck_mod.UNKNOWN:
        return EXIT_UNKNOWN
    return EXIT_OK


def _verified_emit(W: Pencil, label, args) -> dict:
    """Re-validate a generated pencil before emission (exit 3 contract)."""
    report = strata.classify(W, max_ext=args.max_ext)
    want = {
        "C": ("cyclic", label.n),
        "D": ("dihedral", label.n),
        "K": ("klein", 4),
        "A4": ("a4", 0),
        "S4": ("s4", 0),
        "A5": ("a5", 0),
    }[label.family]
    gt = report.group_type
    ok = (
        report.verdict == deck_mod.GALOIS
        and report.base.degree == 0
        and gt is not None
        and gt.kind == want[0]
        and (want[0] not in ("cyclic", "dihedral") or gt.param == want[1])
    )
    if not ok:
        raise InternalCheckError(
            f"generated pencil failed verification: {_dump(report.serialize())}"
        )
    out = W.serialize()
    out["galois"] = True
    out["type"] = str(gt)
    out["label"] = label.serialize()
    return out


def cmd_family(args) -> int:
    handle = _field(args)
    label = _parse_label(args.label)
    class_rep = None
    if label.family == "D":
        reps = alpha_class_representatives(handle, label.n)
        if args.alpha_class is not None:
            cand = parse_element(handle, args.alpha_class)
            if all(cand != r for r in reps):
                rep_vals = [str(r) for r in reps]
                print(
                    f"error: --alpha-class must be one of {rep_vals}",
                    file=sys.stderr,
                )
                return EXIT_INPUT
            class_rep = cand.val
        else:
            class_rep = reps[0].val
    elif label.family == "K":
        if args.beta_class is not None:
            class_rep = parse_element(handle, args.beta_class).val
        else:
            class_rep = 1
    label = families.FamilyLabel(label.family, label.n, class_rep)
    count = None if args.all else args.count
    try:
        stream = families.family_sampler(
            label, handle, limit=count,
            seed=args.seed if label.family in ("K", "A4", "S4", "A5") else None,
        )
        results = []
        for W in stream:
            results.append(_verified_emit(W, label, args))
            if count is not None and len(results) >= count:
                break
    except InternalCheckError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    results.sort(key=lambda r: r["rows"])
    for r in results:
        _emit(r, args.format)
    return EXIT_OK


def cmd_table(args) -> int:
    try:
        inv = strata.table_inventory(args.n)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    for row in inv.rows:
        _emit(row.serialize(), args.format)
    _emit({"n": inv.n, "count": inv.count, "max_dim": inv.max_dim}, args.format)
    return EXIT_OK


def cmd_dimension(args) -> int:
    text = args.label.strip()
    try:
        if text.startswith("X") and ":" in text:
            n, m = (int(v) for v in text[1:].split(":"))
            sampler = strata.x_stratum_sampler(n, m)
        elif text.startswith("FIB") and ":" in text:
            n, m = (int(v) for v in text[3:].split(":"))
            pts = [((1, 0), 1), ((0, 1), 1), ((1, 1), 1), ((1, 2), 1), ((1, 3), 1)]
            d2 = pts[:m]
            d3 = [((1, 4 + i), 1) for i in range(m)]
            sampler = strata.phi_fiber_sampler(n, m, d2, d3)
        else:
            label = _parse_label(text)
            if label.family not in ("C", "D"):
                raise ValueError("dimension estimation enumerates C/D/X/FIB labels")
            sampler = strata.family_counter(label.family, label.n)
        dim = strata.dimension_estimate(sampler, args.p1, args.p2)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit({"label": text, "p1": args.p1, "p2": args.p2, "dimension": dim},
          args.format)
    return EXIT_OK


def _random_coprime_map(handle, degree, rng) -> RationalMap:
    from . import forms as forms_mod

    while True:
        P = BinaryForm(handle, degree, [rng.randrange(handle.q) for _ in range(degree + 1)])
        Q = BinaryForm(handle, degree, [rng.randrange(handle.q) for _ in range(degree + 1)])
        if P.is_zero() or Q.is_zero():
            continue
        if forms_mod.gcd(P, Q).degree == 0:
            return RationalMap(P, Q)


def cmd_oracle(args) -> int:
    handle = _field(args)
    rng = random.Random(args.seed)
    agree = 0
    for i in range(args.trials):
        degree = 2 + rng.randrange(5)
        f = _random_coprime_map(handle, degree, rng)
        G = deck_mod.deck_group(f, max_ext=args.max_ext)
        B = deck_mod.brute_force_deck(f)
        same = (
            G.rational_map.handle is handle
            and set(s.m for s in G.elements) == set(s.m for s in B.elements)
        )
        if same:
            agree += 1
        else:
            _emit(
                {"trial": i, "map": f.serialize(), "search": G.serialize(),
                 "brute": B.serialize()},
                args.format,
            )
    _emit({"trials": args.trials, "agree": agree,
           "verdict": f"{agree}/{args.trials} agree"}, args.format)
    return EXIT_OK if agree == args.trials else EXIT_INTERNAL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="rncgalois",
        description="Galois centers of projection for rational normal curves",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, field=True):
        if field:
            sp.add_argument("--p", type=int, required=True, help="prime modulus")
            sp.add_argument("--ext", type=int, default=1, help="extension degree")
        sp.add_argument("--max-ext", dest="max_ext", type=int, default=4)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--format", choices=("json", "table"), default="json")

    sp = sub.add_parser("check", help="classify a pencil read from stdin")
    common(sp)
    sp.add_argument("--n", type=int, default=None, help="expected ambient degree")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("family", help="generate verified family pencils")
    common(sp)
    sp.add_argument("--label", required=True, help="C<n>, D<m>, K, A4, S4, A5")
    sp.add_argument("--alpha-class", dest="alpha_class", default=None)
    sp.add_argument("--beta-class", dest="beta_class", default=None)
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--all", action="store_true", help="enumerate exhaustively")
    sp.set_defaults(func=cmd_family)

    sp = sub.add_parser("table", help="family inventory for a curve degree")
    common(sp, field=False)
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("dimension", help="two-prime dimension estimate")
    common(sp, field=False)
    sp.add_argument("--label", required=True, help="C<n>, D<m>, X<n>:<m>, FIB<n>:<m>")
    sp.add_argument("--p1", type=int, required=True)
    sp.add_argument("--p2", type=int, required=True)
    sp.set_defaults(func=cmd_dimension)

    sp = sub.add_parser("oracle", help="deck search vs PGL2 brute force")
    common(sp)
    sp.add_argument("--trials", type=int, default=20)
    sp.set_defaults(func=cmd_oracle)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InternalCheckError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
