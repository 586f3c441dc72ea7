"""Command-line front end.

Exit status: 0 on success, 2 when the answer is a mathematical "none"
(no rule, no recipe, no generating vector), 1 on any other error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any

from . import actions, bounds, groupspec, signature, tables
from .classify import classify
from .errors import AutBoundError, NoRecipe, NoRule

EXIT_OK, EXIT_ERROR, EXIT_NONE = 0, 1, 2


class NoneFound(AutBoundError):
    """A search that ran to completion and found nothing."""


def _exact(obj: Any) -> Any:
    # no floats cross the boundary; rationals become "p/q" strings
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, float):
        raise TypeError("floating point value in CLI output")
    if isinstance(obj, dict):
        return {str(k): _exact(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [_exact(v) for v in items]
    return obj


def dump_json(doc: dict) -> str:
    return json.dumps(_exact(doc), sort_keys=True, indent=2, ensure_ascii=False)


def _render_text(doc: dict, indent: str = "") -> list[str]:
    lines = []
    for key, value in doc.items():
        value = _exact(value)
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines += _render_text(value, indent + "  ")
        elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            lines.append(f"{indent}{key}:")
            for v in value:
                sub = _render_text(v, indent + "    ")
                sub[0] = indent + "  - " + sub[0].lstrip()
                lines += sub
        elif isinstance(value, list) and any(isinstance(v, str) and " " in v for v in value):
            lines.append(f"{indent}{key}:")
            lines += [f"{indent}  - {v}" for v in value]
        elif isinstance(value, list):
            lines.append(f"{indent}{key}: {', '.join(str(v) for v in value) or '-'}")
        else:
            lines.append(f"{indent}{key}: {'-' if value is None else value}")
    return lines


# ---------------------------------------------------------------------------
# argument parsing


def _context(args) -> bounds.ClassContext:
    return bounds.ClassContext(
        parity="odd" if args.odd else "any",
        min_prime=args.min_prime,
        pq=bounds.parse_pq(args.pq) if args.pq else None,
        p_group=args.p_group,
        not_divisible_by_8=args.not_div_8,
    )


def _add_registry_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--class", dest="cls", required=True, choices=bounds.CLASSES)
    p.add_argument("--genus", "-g", type=int, required=True)
    p.add_argument("--odd", action="store_true", help="restrict to groups of odd order")
    p.add_argument("--min-prime", type=int, help="smallest prime divisor of |G| is at least this prime")
    p.add_argument("--pq", help="two-prime order p^m q^n: 'p,q', 'p,.' or '.,q'")
    p.add_argument("--p-group", type=int, help="|G| is a power of this prime")
    p.add_argument("--not-div-8", action="store_true", help="8 does not divide |G|")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="autbound", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="emit one JSON document")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (
        ("bound", "upper bound on |G| for a class at genus g"),
        ("attainable", "whether the bound is attained"),
        ("witness", "a group and signature attaining the bound"),
    ):
        _add_registry_options(sub.add_parser(name, help=help_text))

    sigs = sub.add_parser("signatures", help="Fuchsian signature tools").add_subparsers(
        dest="action", required=True
    )
    en = sigs.add_parser("enumerate", help="signatures with measure at most a threshold")
    en.add_argument("max_measure", type=Fraction)
    en.add_argument("--orbit-genus-max", type=int)
    en.add_argument("--odd", action="store_true", help="all periods odd")
    en.add_argument("--max-period", type=int)
    ab = sigs.add_parser("abelianize", help="abelianization of a signature")
    ab.add_argument("signature")
    dc = sigs.add_parser("derived-chain", help="iterated derived subgroup signatures")
    dc.add_argument("signature")
    dc.add_argument("--depth", type=int, default=1)

    grp = sub.add_parser("group", help="finite group tools").add_subparsers(dest="action", required=True)
    cl = grp.add_parser("classify", help="class membership with certificates")
    cl.add_argument("group", help="GroupSpec string or table file")
    cl.add_argument("--cap", type=int)
    ac = grp.add_parser("action", help="search a generating vector")
    ac.add_argument("group", help="GroupSpec string or table file")
    ac.add_argument("signature")
    ac.add_argument("--cap", type=int)
    ac.add_argument("--max-r", type=int, default=actions.DEFAULT_MAX_R)

    tb = sub.add_parser("tables", help="signature tables").add_subparsers(dest="action", required=True)
    tv = tb.add_parser("verify", help="regenerate both tables and diff against the fixtures")
    tv.add_argument("--emit", action="store_true", help="also print the regenerated rows in fixture format")
    return parser


# ---------------------------------------------------------------------------
# handlers; each returns a document or raises


def _bound(args) -> dict:
    return bounds.bound(args.cls, _context(args), args.genus).as_dict()


def _attainable(args) -> dict:
    return bounds.attainable(args.cls, _context(args), args.genus).as_dict()


def _witness(args) -> dict:
    w = bounds.witness(args.cls, _context(args), args.genus)
    return {**w.as_dict(), "class": args.cls, "genus": args.genus}


def _signatures(args) -> dict:
    if args.action == "enumerate":
        found = signature.enumerate_signatures(
            args.max_measure,
            orbit_genus_max=args.orbit_genus_max,
            all_periods_odd=args.odd,
            max_period=args.max_period,
        )
        return {
            "max_measure": args.max_measure,
            "count": len(found),
            "signatures": [
                {"signature": str(s), "measure": signature.measure(s), "coefficient": 2 / signature.measure(s)}
                for s in found
            ],
        }
    sig = signature.parse_signature(args.signature)
    if args.action == "abelianize":
        return {"signature": str(sig), "abelianization": str(signature.abelianization(sig))}
    chain = signature.derived_chain(sig, args.depth)
    return {
        "signature": str(sig),
        "status": chain.status,
        "chain": [{"quotient": str(a), "signature": str(s)} for s, a in chain.steps],
    }


def _group(args) -> dict:
    G = groupspec.load_group(args.group, cap=args.cap)
    if args.action == "classify":
        profile = classify(G, cap=args.cap)
        return {"group": G.name or args.group, **profile.as_dict(), "classes": profile.member_classes()}
    # low-genus actions are legitimate here, so spherical and euclidean signatures parse
    sig = signature.parse_signature(args.signature, hyperbolic=False)
    vec = actions.find_generating_vector(G, sig, max_r=args.max_r, cap=args.cap)
    if vec is None:
        raise NoneFound(f"no generating vector of {G.name or args.group} for {sig}")
    return {
        "group": G.name or args.group,
        "order": G.n,
        "signature": str(sig),
        "vector": vec.labels,
        "genus": actions.genus_of_action(G, sig),
    }


def _tables(args) -> dict:
    reports = tables.verify_tables()
    doc: dict[str, Any] = {"ok": all(r.ok for r in reports), "tables": [r.as_dict() for r in reports]}
    if args.emit:
        generated = {"table2": tables.generate_table2(), "table3": tables.generate_table3()}
        doc["generated"] = {
            name: [row.render() for row in t.rows] + [f"perfect | {s}" for s in t.perfect]
            for name, t in generated.items()
        }
    return doc


HANDLERS = {
    "bound": _bound,
    "attainable": _attainable,
    "witness": _witness,
    "signatures": _signatures,
    "group": _group,
    "tables": _tables,
}

NONE_ERRORS = (NoRule, NoRecipe, NoneFound)


def dispatch(args: argparse.Namespace) -> tuple[int, str]:
    """Run one parsed command and return ``(exit status, rendered output)``."""
    try:
        doc = HANDLERS[args.command](args)
        status = EXIT_ERROR if doc.get("ok") is False else EXIT_OK  # table mismatch
    except NONE_ERRORS as exc:
        doc, status = {"error": exc.name, "message": str(exc), "result": "none"}, EXIT_NONE
    except (AutBoundError, ValueError) as exc:
        name = exc.name if isinstance(exc, AutBoundError) else type(exc).__name__
        doc, status = {"error": name, "message": str(exc)}, EXIT_ERROR
    text = dump_json(doc) if args.json else "\n".join(_render_text(doc))
    return status, text


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    status, text = dispatch(args)
    stream = sys.stdout if status == EXIT_OK or args.json else sys.stderr
    print(text, file=stream)
    return status


if __name__ == "__main__":
    sys.exit(main())
