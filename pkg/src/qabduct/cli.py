"""Command-line front end.

Exit codes: 0 for success or a positive verdict, 1 for a negative verdict,
2 for unreadable or invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from . import abduction, reductions
from .errors import InvalidInput, QabductError
from .evaluator import INCONSISTENT, certain_answers, is_certain
from .formats import (
    format_abox, format_query, format_signature, format_tbox, parse_abox, parse_assertion,
    parse_individuals, parse_query, parse_signature, parse_tbox,
)
from .model import QAP, ABox, Assertion, sigma_of
from .reasoner import find_clash, is_consistent_nouna, quotient_nouna
from .rewriter import perfect_reformulation


class _Out:
    def __init__(self, as_json: bool) -> None:
        self.as_json = as_json

    def emit(self, payload: dict, text: str) -> None:
        if self.as_json:
            print(json.dumps(payload, sort_keys=True))
        else:
            print(text, end="" if text.endswith("\n") or not text else "\n")


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None


def _roles_hint(*texts: str) -> set[str]:
    names = set()
    for text in texts:
        if not text:
            continue
        try:
            preds = parse_query(text).predicates
        except InvalidInput:
            try:
                preds = parse_abox(text, allow_anonymous=True).predicates
            except InvalidInput:
                continue
        names |= {p.name for p in preds if p.arity == 2}
    return names


def _load_tbox(args, *others: str):
    return parse_tbox(_read(args.tbox), roles=_roles_hint(*others))


def _abox_lines(abox) -> list[str]:
    return [str(a) for a in abox]


def _load_problem(args) -> QAP:
    abox_text, query_text = _read(args.abox), _read(args.query)
    tbox = _load_tbox(args, abox_text, query_text)
    abox = parse_abox(abox_text)
    query = parse_query(query_text)
    known = sigma_of(tbox, abox, query)
    sigma = parse_signature(args.sigma, known)
    return QAP(tbox, abox, query, parse_individuals(args.tuple), sigma)


def _explanation_payload(e) -> Optional[list[str]]:
    return None if e is None else _abox_lines(e.assertions if hasattr(e, "assertions") else e)


# --------------------------------------------------------------------------- commands


def cmd_check(args, out: _Out) -> int:
    abox_text = _read(args.abox)
    tbox = _load_tbox(args, abox_text)
    abox = parse_abox(abox_text)
    if args.no_una:
        ok = is_consistent_nouna(tbox, abox)
        reason = None if ok else find_clash(tbox, quotient_nouna(tbox, abox))
    else:
        reason = find_clash(tbox, abox)
        ok = reason is None
    text = "consistent" if ok else f"inconsistent: {reason}"
    out.emit({"consistent": ok, "una": not args.no_una, "reason": reason}, text)
    return 0 if ok else 1


def cmd_rewrite(args, out: _Out) -> int:
    query_text = _read(args.query)
    tbox = _load_tbox(args, query_text)
    ref = perfect_reformulation(parse_query(query_text), tbox)
    text = "".join(f"{cq}\n" for cq in ref.disjuncts)
    out.emit({"disjuncts": [str(cq) for cq in ref.disjuncts]}, text)
    return 0


def cmd_cert(args, out: _Out) -> int:
    abox_text, query_text = _read(args.abox), _read(args.query)
    tbox = _load_tbox(args, abox_text, query_text)
    abox, query = parse_abox(abox_text), parse_query(query_text)
    if args.tuple is not None:
        tup = parse_individuals(args.tuple)
        verdict = is_certain(query, tbox, abox, tup)
        out.emit({"tuple": [i.name for i in tup], "certain": verdict}, "yes" if verdict else "no")
        return 0 if verdict else 1
    answers = certain_answers(query, tbox, abox)
    if answers is INCONSISTENT:
        out.emit({"inconsistent": True, "answers": None}, "inconsistent ontology: every tuple is certain")
        return 0
    rows = sorted(tuple(i.name for i in t) for t in answers)
    out.emit({"inconsistent": False, "answers": [list(r) for r in rows]},
             "".join(f"({','.join(r)})\n" for r in rows) or "no answers\n")
    return 0


def _assertion(args) -> Assertion:
    if not args.assertion:
        raise InvalidInput("--assertion is required for this command")
    return parse_assertion(args.assertion, allow_anonymous=True)


def cmd_exist(args, out: _Out) -> int:
    p = _load_problem(args)
    if args.order == "none":
        e = abduction.exists_explanation(p)
    else:
        found = abduction.enumerate_minimal(p, args.order)
        e = found[0] if found else None
    text = "no explanation" if e is None else "explanation:\n" + format_abox(e.assertions)
    out.emit({"exists": e is not None, "order": args.order, "explanation": _explanation_payload(e)}, text)
    return 0 if e is not None else 1


def cmd_rec(args, out: _Out) -> int:
    p = _load_problem(args)
    if not args.explanation:
        raise InvalidInput("--explanation is required for rec")
    e = parse_abox(_read(args.explanation), allow_anonymous=True)
    verdict = abduction.recognize(p, e, args.order)
    out.emit({"explanation": verdict, "order": args.order}, "yes" if verdict else "no")
    return 0 if verdict else 1


def cmd_rel(args, out: _Out) -> int:
    p = _load_problem(args)
    alpha = _assertion(args)
    verdict = abduction.is_relevant(p, alpha, args.order)
    witness = abduction.relevance_witness(p, alpha, args.order) if verdict else None
    text = "yes" if verdict else "no"
    if witness is not None:
        text += "\nwitness:\n" + format_abox(witness.assertions)
    out.emit({"relevant": verdict, "order": args.order, "witness": _explanation_payload(witness)}, text)
    return 0 if verdict else 1


def cmd_nec(args, out: _Out) -> int:
    p = _load_problem(args)
    verdict = abduction.is_necessary(p, _assertion(args), args.order)
    out.emit({"necessary": verdict, "order": args.order}, "yes" if verdict else "no")
    return 0 if verdict else 1


def cmd_enumerate(args, out: _Out) -> int:
    p = _load_problem(args)
    found = abduction.enumerate_minimal(p, args.order)
    text = "\n".join(format_abox(e.assertions) or "(empty)\n" for e in found) or "no explanation\n"
    out.emit({"order": args.order, "explanations": [_abox_lines(e.assertions) for e in found]}, text)
    return 0 if found else 1


def cmd_nonempty(args, out: _Out) -> int:
    query_text = _read(args.query)
    tbox = _load_tbox(args, query_text)
    query = parse_query(query_text)
    sigma = parse_signature(args.sigma, tbox.predicates | query.predicates)
    verdict = reductions.is_query_nonempty(tbox, query, sigma)
    out.emit({"nonempty": verdict}, "yes" if verdict else "no")
    return 0 if verdict else 1


def _parse_graph(vertices: str, edges: str):
    from .testkit.graphs import DirectedGraph

    vs = [v.strip() for v in vertices.split(",") if v.strip()]
    es = []
    for tok in (t.strip() for t in (edges or "").split(",")):
        if not tok:
            continue
        a, sep, b = tok.partition(">")
        if not sep:
            raise InvalidInput(f"edge {tok!r} must look like a>b")
        es.append((a.strip(), b.strip()))
    for v in vs:
        if not v.replace("_", "").isalnum():
            raise InvalidInput(f"vertex name {v!r} must be alphanumeric")
    return DirectedGraph(vs, es)


def write_instance(directory: Path, p: QAP, extra: dict[str, str]) -> dict[str, str]:
    directory.mkdir(parents=True, exist_ok=True)
    roles = {x.name for x in p.sigma | p.abox.predicates | p.query.predicates if x.arity == 2}
    files = {
        "tbox": format_tbox(p.tbox, roles),
        "abox": format_abox(p.abox),
        "query": format_query(p.query),
        "tuple": ",".join(i.name for i in p.tuple) + "\n",
        "sigma": format_signature(p.sigma) + "\n",
    }
    files.update(extra)
    written = {}
    for name, content in files.items():
        path = directory / name
        path.write_text(content)
        written[name] = str(path)
    return written


def cmd_gadget(args, out: _Out) -> int:
    from .testkit import gadgets

    g = _parse_graph(args.vertices, args.edges)
    if args.kind == "vc":
        p, alpha = gadgets.gadget_odd_min_vertex_cover(g)
        extra = {"assertion": f"{alpha}\n"}
    else:
        if args.vertices2 is None:
            raise InvalidInput("--vertices2 is required for this gadget")
        g2 = _parse_graph(args.vertices2, args.edges2)
        make = gadgets.gadget_homomorphism if args.kind == "hom" else gadgets.gadget_hp_nohp
        p, e = make(g, g2)
        extra = {"explanation": format_abox(e)}
    written = write_instance(Path(args.out), p, extra)
    out.emit({"kind": args.kind, "files": written}, "".join(f"{k}: {v}\n" for k, v in sorted(written.items())))
    return 0


def cmd_fuzz(args, out: _Out) -> int:
    from .canon import abox_key
    from .testkit import Profile, brute_force_explanations, random_qap

    profile = Profile(**json.loads(_read(args.profile))) if args.profile else Profile()
    disagreements = []
    for seed in range(args.start, args.start + args.seeds):
        p = random_qap(seed, profile)
        oracle = {abox_key(e) for e in brute_force_explanations(p, minimal_only=True)}
        engine = {abox_key(e.assertions) for e in abduction.enumerate_minimal(p, "subset")}
        if oracle != engine or (abduction.exists_explanation(p) is None) != (not oracle):
            disagreements.append(seed)
    text = f"{args.seeds} instances, {len(disagreements)} disagreement(s)"
    if disagreements:
        text += ": seeds " + ",".join(map(str, disagreements))
    out.emit({"instances": args.seeds, "disagreements": disagreements}, text)
    return 0 if not disagreements else 1


# --------------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qabduct", description="Explain missing answers of ontology queries.")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, abox=True, query=True):
        sp.add_argument("--tbox", required=True)
        if abox:
            sp.add_argument("--abox", required=True)
        if query:
            sp.add_argument("--query", required=True)
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)

    sp = sub.add_parser("check", help="consistency of a TBox and an ABox")
    common(sp, query=False)
    sp.add_argument("--no-una", action="store_true")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("rewrite", help="perfect reformulation of a query")
    common(sp, abox=False)
    sp.set_defaults(func=cmd_rewrite)

    sp = sub.add_parser("cert", help="certain answers, or membership of one tuple")
    common(sp)
    sp.add_argument("--tuple")
    sp.set_defaults(func=cmd_cert)

    for name, func, orders in (("exist", cmd_exist, ("none", "subset", "card")),
                               ("rec", cmd_rec, ("none", "subset", "card")),
                               ("rel", cmd_rel, ("none", "subset", "card")),
                               ("nec", cmd_nec, ("none", "subset", "card")),
                               ("enumerate", cmd_enumerate, ("subset", "card"))):
        sp = sub.add_parser(name)
        common(sp)
        sp.add_argument("--tuple", default="")
        sp.add_argument("--sigma", required=True)
        sp.add_argument("--order", choices=orders, default=orders[0])
        sp.add_argument("--explanation")
        sp.add_argument("--assertion")
        sp.set_defaults(func=func)

    sp = sub.add_parser("nonempty", help="query non-emptiness for a signature")
    common(sp, abox=False)
    sp.add_argument("--sigma", required=True)
    sp.set_defaults(func=cmd_nonempty)

    sp = sub.add_parser("gadget", help="write a hardness-gadget instance")
    sp.add_argument("kind", choices=("hom", "vc", "hp"))
    sp.add_argument("--vertices", required=True, help="comma-separated vertex names")
    sp.add_argument("--edges", default="", help="comma-separated edges a>b")
    sp.add_argument("--vertices2")
    sp.add_argument("--edges2", default="")
    sp.add_argument("--out", required=True, help="output directory")
    sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_gadget)

    sp = sub.add_parser("fuzz", help="compare the engine with brute force on random instances")
    sp.add_argument("--seeds", type=int, default=50)
    sp.add_argument("--start", type=int, default=0)
    sp.add_argument("--profile", help="JSON file with profile fields")
    sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_fuzz)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = _Out(args.json)
    try:
        return args.func(args, out)
    except (QabductError, ValueError, TypeError) as exc:
        if args.json:
            print(json.dumps({"error": str(exc)}, sort_keys=True))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
