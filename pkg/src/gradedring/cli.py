"""Command line front end.

Every command reads one category document (``--input FILE`` or a built-in
``--fixture``), runs builders and checks, and writes one JSON report.  Exit
status is 0 when every verdict passes, 1 on a failed verdict and 2 on bad
input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from collections.abc import Sequence

from .algebra import (
    GradedAlgebra,
    MatrixUnitAlgebra,
    check_filter,
    check_strong,
    check_unital,
    local_units,
)
from .construction import SelectionSpec, build_das, monoid_counterexample, nonfree_example, nonfree_selection
from .errors import CategoryError, GradedRingError, IdentityMorphism, NotLocallyUnital, NotUnital
from .fixtures import FIXTURES, fixture_doc
from .groupoid import (
    FiniteGroupoid,
    as_groupoid,
    closure,
    enumerate_subgroupoids,
    from_doc,
    is_cancellative,
)
from .linalg import format_scalar
from .miyashita import commutant_group_theorem, commutant_groupoid_theorem, sigma_graded


class InputError(Exception):
    pass


class Report:
    def __init__(self, command: str, source: str):
        self.data: dict = {"command": command, "source": source}
        self.verdicts: list[dict] = []

    def verdict(self, check: str, ok: bool, detail: str = "", witness=()) -> bool:
        self.verdicts.append({"check": check, "ok": bool(ok), "detail": detail, "witness": list(witness)})
        return ok

    @property
    def ok(self) -> bool:
        return all(v["ok"] for v in self.verdicts)

    def document(self) -> dict:
        out = dict(self.data)
        out["verdicts"] = self.verdicts
        out["status"] = "pass" if self.ok else "fail"
        return out


# formatting


def _element(alg, v, support: bool):
    if support or not isinstance(alg, MatrixUnitAlgebra):
        return alg.format(v)
    return [[format_scalar(x) for x in row] for row in alg.to_matrix(v)]


def _basis(alg, space, support: bool) -> list:
    return [_element(alg, v, support) for v in space.basis()]


# input handling


def _load_doc(args) -> tuple[dict, str]:
    if args.fixture and args.input:
        raise InputError("give either --fixture or --input, not both")
    if args.fixture:
        if args.fixture not in FIXTURES:
            raise InputError(f"unknown fixture {args.fixture!r}; known: {', '.join(sorted(FIXTURES))}")
        return fixture_doc(args.fixture), f"fixture:{args.fixture}"
    if args.input:
        try:
            with open(args.input, encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise InputError(f"cannot read {args.input}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise InputError(f"{args.input}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
        if not isinstance(doc, dict):
            raise InputError("input document must be a JSON object")
        return doc, args.input
    raise InputError("one of --fixture or --input is required")


def _category(doc):
    try:
        return from_doc(doc)
    except (CategoryError, KeyError, TypeError) as exc:
        raise InputError(f"invalid category: {exc}") from None


def _groupoid(cat) -> FiniteGroupoid:
    try:
        return as_groupoid(cat)
    except CategoryError as exc:
        raise InputError(str(exc)) from None


def _names(text: str | None) -> list[str]:
    if text is None:
        return []
    return [s.strip() for s in text.split(",") if s.strip()]


def _grading(args, doc, cat) -> tuple[GradedAlgebra, list[str] | None]:
    selection = _names(args.selection) or doc.get("selection")
    if selection is None:
        if args.fixture == "monoid-counterexample":
            return monoid_counterexample(), None
        raise InputError("no selection: pass --selection or put one in the document")
    try:
        spec = SelectionSpec.of(cat, [str(s) for s in selection])
    except GradedRingError as exc:
        raise InputError(str(exc)) from None
    ga, _ = build_das(spec)
    return ga, spec.names()


def _morphism(cat, name: str | None) -> int:
    if name is None:
        raise InputError("--morphism is required")
    try:
        return cat.morphism_id(name)
    except (CategoryError, KeyError):
        raise InputError(f"unknown morphism {name!r}") from None


# commands


def cmd_validate(args, report: Report) -> None:
    doc, _ = _load_doc(args)
    try:
        cat = from_doc(doc)
    except CategoryError as exc:
        report.verdict("category", False, f"{type(exc).__name__}: {exc}", [str(w) for w in exc.witness])
        return
    report.verdict("category", True)
    canc = is_cancellative(cat)
    try:
        g = as_groupoid(cat)
        groupoid, missing = True, []
    except CategoryError as exc:
        g, groupoid, missing = None, False, [cat.name(s) for s in exc.witness]
    report.data["category"] = {
        "objects": list(cat.objects),
        "morphisms": [cat.name(s) for s in cat.ids()],
        "groupoid": groupoid,
        "cancellative": bool(canc),
    }
    if g is not None:
        report.data["category"]["inverse"] = {g.name(s): g.name(g.inv(s)) for s in g.ids()}
    if args.require_groupoid:
        report.verdict("groupoid", groupoid, "" if groupoid else "NotAGroupoid", missing)


def _grading_checks(ga: GradedAlgebra, report: Report, support: bool) -> None:
    alg, cat = ga.alg, ga.cat
    report.verdict("direct", ga.is_direct)
    f = check_filter(ga)
    report.verdict("filter", f.ok, f.detail, [str(w) for w in f.witness])
    s = check_strong(ga)
    report.verdict("strong", s.ok, s.detail, [cat.name(w) for w in s.witness])
    try:
        units = local_units(ga)
        report.verdict("locally_unital", True)
        report.data["local_units"] = {cat.objects[e]: _element(alg, u, support) for e, u in sorted(units.items())}
    except NotLocallyUnital as exc:
        report.verdict("locally_unital", False, str(exc), [str(w) for w in exc.witness])
    try:
        one = check_unital(ga)
        report.verdict("unital", True)
        report.data["identity"] = _element(alg, one, support)
    except NotUnital as exc:
        report.verdict("unital", False, str(exc))


def cmd_build(args, report: Report) -> None:
    doc, _ = _load_doc(args)
    cat = _category(doc)
    ga, names = _grading(args, doc, cat)
    report.data["selection"] = names
    report.data["n"] = ga.alg.n if isinstance(ga.alg, MatrixUnitAlgebra) else None
    report.data["dims"] = {ga.cat.name(s): d for s, d in enumerate(ga.dims())}
    if args.bases or args.support:
        report.data["components"] = {
            ga.cat.name(s): _basis(ga.alg, c, args.support) for s, c in enumerate(ga.components)
        }
    _grading_checks(ga, report, args.support)


def _theorem_section(ga, h, requested: list[str] | None, support: bool, off_h: str = "loops") -> dict:
    g = ga.cat
    if g.n_objects == 1:
        res, theorem = commutant_group_theorem(ga, h), "group"
    else:
        res, theorem = commutant_groupoid_theorem(ga, h, off_h), "groupoid"
    section = {
        "subgroupoid": [g.name(s) for s in res.morphisms],
        "theorem": theorem,
        "dim": res.lhs.dim,
        "lhs": _basis(ga.alg, res.lhs, support),
        "rhs": _basis(ga.alg, res.rhs, support),
        "equal": res.equal,
    }
    if theorem == "groupoid":
        section["off_h"] = off_h
        section["outside_nonzero"] = [g.name(s) for s in res.details["outside"] if ga.components[s].dim]
    if requested is not None:
        section["requested"] = requested
        asked = {g.morphism_id(s) for s in requested}
        section["added_by_closure"] = [g.name(s) for s in res.morphisms if s not in asked]
    return section


def cmd_commutant(args, report: Report) -> None:
    doc, _ = _load_doc(args)
    g = _groupoid(_category(doc))
    ga, names = _grading(args, doc, g)
    report.data["selection"] = names
    if not check_strong(ga):
        report.verdict("strong", False, "the theorems need a strong grading")
        return
    if args.all_subgroupoids:
        subs = [(h.morphisms, None) for h in enumerate_subgroupoids(g, limit=args.limit)]
    else:
        requested = _names(args.subgroupoid)
        if not requested:
            raise InputError("pass --subgroupoid NAMES or --all-subgroupoids")
        ids = [_morphism(g, s) for s in requested]
        subs = [(closure(g, ids), requested)]
    sections = []
    for k, (h, requested) in enumerate(subs, start=1):
        section = _theorem_section(ga, h, requested, args.support, args.off_h)
        sections.append(section)
        report.verdict(f"H{k}", section["equal"], "lhs == rhs" if section["equal"] else "lhs != rhs")
    report.data["sections"] = sections


def cmd_sigma(args, report: Report) -> None:
    doc, _ = _load_doc(args)
    g = _groupoid(_category(doc))
    ga, names = _grading(args, doc, g)
    report.data["selection"] = names
    s = _morphism(g, args.morphism)
    report.data["morphism"] = g.name(s)
    sigma = sigma_graded(ga, s)
    report.verdict("sigma", True, "bijective, multiplicative, intertwining")
    alg = ga.alg
    report.data["domain"] = _basis(alg, sigma.source, args.support)
    report.data["codomain"] = _basis(alg, sigma.target, args.support)
    report.data["table"] = [
        {"x": _element(alg, x, args.support), "sigma(x)": _element(alg, y, args.support)}
        for x, y in zip(sigma.source.basis(), sigma.images())
    ]


def cmd_nonfree(args, report: Report) -> None:
    doc, _ = _load_doc(args)
    g = _groupoid(_category(doc))
    t = _morphism(g, args.morphism)
    try:
        ga, cert = nonfree_example(g, t)
    except IdentityMorphism as exc:
        raise InputError(str(exc)) from None
    report.data["morphism"] = g.name(t)
    report.data["selection"] = [g.name(s) for s in nonfree_selection(g, t)]
    report.data["n"] = ga.alg.n
    report.data["dims"] = {g.name(s): d for s, d in enumerate(ga.dims())}
    report.data["certificate"] = {"m": cert.m, "dim_unit": cert.dim_unit, "dim_t": cert.dim_t}
    _grading_checks(ga, report, args.support)
    report.verdict("nonzero_components", all(d > 0 for d in ga.dims()))
    report.verdict("certificate", cert.holds, f"0 < {cert.dim_t} < {cert.dim_unit}")


def cmd_subgroupoids(args, report: Report) -> None:
    doc, _ = _load_doc(args)
    g = _groupoid(_category(doc))
    try:
        subs = enumerate_subgroupoids(g, limit=args.limit)
    except CategoryError as exc:
        raise InputError(str(exc)) from None
    report.data["count"] = len(subs)
    report.data["subgroupoids"] = [h.names() for h in subs]
    report.verdict("enumerated", True)


COMMANDS = {
    "validate": cmd_validate,
    "build": cmd_build,
    "commutant": cmd_commutant,
    "sigma": cmd_sigma,
    "nonfree": cmd_nonfree,
    "subgroupoids": cmd_subgroupoids,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fixture", help=f"built-in document: {', '.join(sorted(FIXTURES))}")
    common.add_argument("--input", help="JSON category document")
    common.add_argument("--output", help="write the report here instead of standard output")
    common.add_argument("--selection", help="comma separated morphism names s_1,...,s_n")
    common.add_argument("--bases", action="store_true", help="include component bases")
    common.add_argument("--support", action="store_true", help="print elements as e11+e33 instead of matrices")
    common.add_argument("--timings", action="store_true", help="add wall-clock time to the report")

    parser = argparse.ArgumentParser(prog="gradedring", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("validate", parents=[common], help="validate a category document")
    p.add_argument("--require-groupoid", action="store_true")
    sub.add_parser("build", parents=[common], help="build the matrix-unit grading for a selection")
    p = sub.add_parser("commutant", parents=[common], help="both sides of the commutant theorem")
    p.add_argument("--subgroupoid", help="comma separated morphism names, closed automatically")
    p.add_argument("--all-subgroupoids", action="store_true")
    p.add_argument("--limit", type=int, default=20, help="morphism bound for enumeration")
    p.add_argument(
        "--off-h",
        choices=["loops", "all"],
        default="loops",
        help="components free away from ob(H): loops only, or every morphism between such objects",
    )
    p = sub.add_parser("sigma", parents=[common], help="the action of one morphism on commutants")
    p.add_argument("--morphism")
    p = sub.add_parser("nonfree", parents=[common], help="grading with a nonfree component R_t")
    p.add_argument("--morphism")
    p = sub.add_parser("subgroupoids", parents=[common], help="list all subgroupoids")
    p.add_argument("--limit", type=int, default=20)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    report = Report(args.command, args.fixture and f"fixture:{args.fixture}" or args.input or "")
    start = time.perf_counter()
    try:
        COMMANDS[args.command](args, report)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GradedRingError as exc:
        report.verdict("error", False, f"{type(exc).__name__}: {exc}", [str(w) for w in exc.witness])
    if args.timings:
        report.data["seconds"] = round(time.perf_counter() - start, 3)
    text = json.dumps(report.document(), indent=2, ensure_ascii=False) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report.ok else 1
