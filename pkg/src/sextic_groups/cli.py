"""Command line interface: ``sextic-groups <command> ...``.

Exit codes: 0 success, 1 a check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import acceptance

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class ScenarioReport:
    scenario: str
    inputs: dict
    singularities: str | None = None
    presentation: str | None = None
    invariants: dict = field(default_factory=dict)
    fingerprint: dict | None = None
    expected: dict | None = None  # {"group": ..., "provenance": ..., "invariants": ...}
    passed: bool | None = None
    stage: str | None = None
    error: str | None = None

    def as_dict(self) -> dict:
        return {k: v for k, v in self.__dict__.items()}

    def text(self) -> str:
        lines = [f"scenario: {self.scenario}"]
        lines += [f"  {k}: {v}" for k, v in self.inputs.items()]
        if self.singularities:
            lines.append(f"singularities: {self.singularities}")
        if self.presentation:
            lines.append(f"presentation: {self.presentation}")
        for k, v in self.invariants.items():
            lines.append(f"  {k}: {v}")
        if self.fingerprint:
            onto = [f"{k} ({v['epis']})" for k, v in self.fingerprint.items() if v["epis"]]
            lines.append("epimorphisms onto: " + (", ".join(onto) or "none"))
        if self.error:
            lines.append(f"error at stage {self.stage}: {self.error}")
        if self.expected:
            verdict = {True: "PASS", False: "FAIL", None: "n/a"}[self.passed]
            lines.append(f"expected: {self.expected['group']} [{self.expected['provenance']}] -> {verdict}")
        return "\n".join(lines)


def _rational(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if value == 0:
        raise argparse.ArgumentTypeError("r must be nonzero")
    return value


def _emit(args, payload: dict, text: str) -> None:
    print(json.dumps(payload, indent=2, default=str) if args.json else text)


# family

def cmd_family(args) -> int:
    from .curves import FAMILY_MEMBERS, NAMED, TrigonalCurve, family_report

    if args.name not in NAMED and args.name not in FAMILY_MEMBERS:
        raise UsageError(f"unknown family {args.name!r}; known: {', '.join([*NAMED, *FAMILY_MEMBERS])}")
    rep = family_report(args.name, TrigonalCurve(args.r))
    sec = rep["section"]
    lines = [
        f"family {rep['family']} at r = {rep['r']}",
        f"section: a = {sec['a']}, b = {sec['b']}, c = {sec['c']}",
        "intersection divisor (total {}):".format(rep["divisor"]["total"]),
    ]
    for p in rep["divisor"]["points"]:
        t = p["t"] if isinstance(p["t"], str) else f"~{p['t']['approx'][0]:.6g}"
        flags = [f for f in ("at_cusp", "vertical_tangency") if p[f]]
        lines.append(f"  t = {t}, multiplicity {p['multiplicity']}" + (f" ({', '.join(flags)})" if flags else ""))
    lines.append("singular fibers:")
    for f in rep["singular_fibers"]:
        pos = f["x"] if f["x"] is not None else f"~{f['approx']:.6g}"
        lines.append(f"  x = {pos} ({f['kind']})")
    lines.append(f"singularities: {rep['singularities']}")
    _emit(args, rep, "\n".join(lines))
    return EXIT_OK


# group

def _suite(p, cap: int) -> dict:
    from .fpgroups.invariants import invariant_suite

    return invariant_suite(p, cap=cap).as_dict()


def _expected_for(group: str, cap: int) -> dict:
    from .fpgroups import corpus

    return {"group": group, "provenance": acceptance.PAPER, "invariants": _suite(corpus.group(group), cap)}


def run_group(name: str, r: Fraction = Fraction(3), corpus_only: bool = False, cap: int = 1_000_000,
              precision_bits: int = 200, with_fingerprint: bool = False) -> ScenarioReport:
    """monodromy, van Kampen, double cover, simplification and invariants,
    compared against the expected group of the family."""
    from .curves import TrigonalCurve, classify_sextic, named_section
    from .fpgroups import corpus
    from .fpgroups.schreier import double_cover
    from .fpgroups.tietze import tietze_simplify

    report = ScenarioReport(f"group {name}", {"r": str(r), "corpus_only": corpus_only, "coset_cap": cap})
    stage = "geometry"
    try:
        curve = TrigonalCurve(r)
        report.singularities = str(classify_sextic(named_section(name, curve), curve))
        if corpus_only:
            stage = "corpus"
            pi_bar = corpus.orbifold_relations(name)
        else:
            from .fpgroups.vankampen import vankampen
            from .monodromy import braid_monodromy, configuration

            stage = "monodromy"
            md = braid_monodromy(configuration(name, r, precision_bits=precision_bits))
            report.inputs["braids"] = [f"x={x:.6g}: {b}" for x, b in md.braids]
            stage = "vankampen"
            pi_bar = vankampen(md, md.k)
        stage = "double_cover"
        cover = double_cover(pi_bar, "delta")
        stage = "tietze"
        p = tietze_simplify(cover)
        report.presentation = p.to_text()
        stage = "invariants"
        report.invariants = _suite(p, cap)
        if with_fingerprint:
            from .fpgroups.homs import fingerprint

            stage = "fingerprint"
            report.fingerprint = fingerprint(p).as_dict()
        stage = "comparison"
        report.expected = _expected_for(corpus.reference_group(name), cap)
        report.passed = report.invariants == report.expected["invariants"]
    except Exception as exc:
        report.stage, report.error, report.passed = stage, f"{type(exc).__name__}: {exc}", False
    return report


def cmd_group(args) -> int:
    from .fpgroups import corpus

    if args.name not in corpus.FAMILIES:
        raise UsageError(f"unknown family {args.name!r}; known: {', '.join(corpus.FAMILIES)}")
    rep = run_group(args.name, args.r, args.corpus_only, args.coset_cap, args.precision_bits, args.fingerprint)
    _emit(args, rep.as_dict(), rep.text())
    return EXIT_OK if rep.passed else EXIT_FAIL


# monodromy

def cmd_monodromy(args) -> int:
    from .curves import NAMED
    from .monodromy import braid_monodromy, configuration, infinity_check

    if args.name not in NAMED:
        raise UsageError(f"unknown family {args.name!r}; known: {', '.join(NAMED)}")
    config = configuration(args.name, args.r, precision_bits=args.precision_bits)
    md = braid_monodromy(config)
    if args.out:
        Path(args.out).write_text(md.to_json())
    payload = md.to_dict()
    lines = [f"basis (by strand position): {', '.join(md.names)}"]
    lines += [f"x = {x:.6g}: {b}" for x, b in md.braids]
    if args.check_infinity:
        chk = infinity_check(md, config)
        payload["infinity"] = chk.as_dict()
        lines.append(f"product is conjugation by rho^{md.k}: {chk.conjugation_by_rho}")
        lines.append(f"product equals the big-circle braid: {chk.matches_boundary}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


# perturb

def _classify(suite: dict, cap: int) -> str | None:
    """Name of the shipped group (or Z6) whose invariants match."""
    from .fpgroups import corpus
    from .fpgroups.presentation import Presentation

    candidates = {"Z6": Presentation.parse("gens: a; rels: a^6;")}
    candidates.update({g: corpus.group(g) for g in corpus.GROUPS})
    hits = [name for name, p in candidates.items() if _suite(p, cap) == suite]
    return hits[0] if len(hits) == 1 else None


# expected outcomes of local perturbations, by (point, local group class)
def _expected_local(group: str, point: str, cls: str) -> str | None:
    from .fpgroups import perturbation as pt

    if point == "E6":
        return {pt.CYCLIC: "Z6", pt.BRAID_B3: "B3"}.get(cls)
    if (group, point) in {("G2.1", "A5"), ("G3", "A2")} and cls in (pt.CYCLIC, pt.ABELIAN):
        return "Z6"
    return None


OUTER_EXPECTED = {
    "3e6+a1:A1->empty": "B3",
    "2e6+2a2+a3:A3->2A1": "G0",
    "2e6+2a2+a3:A3->A1": "B3",
    "2e6+a5+a2.1:A2->A1": "B3",
}


def cmd_perturb(args) -> int:
    from .fpgroups import corpus
    from .fpgroups import perturbation as pt
    from .singularities import SingularitySet

    if args.set:
        try:
            s = SingularitySet.parse(args.set)
            found = pt.enumerate_perturbations(s, strict=False)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        payload = {"set": str(s), "perturbations": [str(t) for t in found]}
        _emit(args, payload, "\n".join([f"one-step perturbations of {s}:", *(f"  {t}" for t in found)]))
        return EXIT_OK

    if args.rule:
        rules = pt.outer_rules()
        if args.rule not in rules:
            raise UsageError(f"unknown rule {args.rule!r}; known: {', '.join(rules)}")
        source, rule = rules[args.rule]
        expected = OUTER_EXPECTED.get(args.rule)
        scenario = f"perturb {args.rule}"
        base = pt.corpus_presentation(source)
    else:
        if len(args.spec) != 3:
            raise UsageError("expected SOURCE POINT RESULT, --rule KEY or --set SET")
        source, point, result = args.spec
        group = corpus.FAMILIES[source][2] if source in corpus.FAMILIES else source
        if group not in corpus.GROUPS:
            raise UsageError(f"unknown group or family {source!r}")
        result = "" if result.lower() in ("empty", "none", "0") else result
        try:
            rule = pt.local_rule(group, point, result)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        expected = _expected_local(group, str(rule.point), rule.local_class)
        scenario = f"perturb {group}: {point} -> {result or 'empty'}"
        base = corpus.group(group)
    report = ScenarioReport(scenario, {"relators": list(rule.relators), "local_class": rule.local_class})
    try:
        p = pt.apply_perturbation(base, rule)
        report.presentation = p.to_text()
        report.invariants = _suite(p, args.coset_cap)
        report.inputs["result_class"] = _classify(report.invariants, args.coset_cap)
        if expected:
            report.expected = {"group": expected, "provenance": acceptance.PAPER}
            report.passed = report.inputs["result_class"] == expected
    except Exception as exc:
        report.stage, report.error, report.passed = "rewriting", f"{type(exc).__name__}: {exc}", False
    _emit(args, report.as_dict(), report.text())
    return EXIT_FAIL if report.passed is False else EXIT_OK


# verify-paper

def cmd_verify(args) -> int:
    opts = acceptance.Options(sig_figs=args.sig_figs, coset_cap=args.coset_cap, corpus_only=args.corpus_only,
                              precision_bits=args.precision_bits, r=args.r)
    outcomes = acceptance.run(opts, part=args.section, numbers=args.criterion)
    if not outcomes:
        raise UsageError("no criteria selected")
    _emit(args, {"criteria": [o.as_dict() for o in outcomes]}, acceptance.format_table(outcomes))
    return EXIT_FAIL if any(o.passed is False for o in outcomes) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--r", type=_rational, default=Fraction(3), help="curve parameter (default 3)")
    common.add_argument("--precision-bits", type=int, default=200, help="bits for the high-precision fallback")
    common.add_argument("--coset-cap", type=int, default=1_000_000, help="coset enumeration limit")
    common.add_argument("--corpus-only", action="store_true", help="use shipped presentations, no numerics")
    common.add_argument("--corpus-dir", help="read corpus files from this directory")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = argparse.ArgumentParser(prog="sextic-groups", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("family", parents=[common], help="geometry of a named family")
    p.add_argument("name")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("group", parents=[common], help="fundamental group of a named family")
    p.add_argument("name")
    p.add_argument("--fingerprint", action="store_true", help="also count homomorphisms to small groups")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("monodromy", parents=[common], help="braid monodromy of a named family")
    p.add_argument("name")
    p.add_argument("--out", help="write the monodromy as JSON to this file")
    p.add_argument("--check-infinity", action="store_true", help="compare the product with rho^k")
    p.set_defaults(func=cmd_monodromy)

    p = sub.add_parser("perturb", parents=[common], help="perturbation experiments")
    p.add_argument("spec", nargs="*", metavar="SOURCE POINT RESULT")
    p.add_argument("--rule", help="a named global rewriting rule")
    p.add_argument("--set", help="enumerate one-step perturbations of a set of singularities")
    p.set_defaults(func=cmd_perturb)

    p = sub.add_parser("verify-paper", parents=[common], help="run the acceptance criteria")
    p.add_argument("--section", type=int, help="only criteria of this part (2, 3, 4 or 5)")
    p.add_argument("--criterion", type=int, action="append", help="only this criterion (repeatable)")
    p.add_argument("--sig-figs", type=int, default=3, help="significant figures for approximate values")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    from .fpgroups import corpus

    if args.corpus_dir:
        corpus.use_data_dir(args.corpus_dir)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if args.corpus_dir:
            corpus.use_data_dir(None)


if __name__ == "__main__":
    sys.exit(main())
