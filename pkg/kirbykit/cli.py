"""The ``kirbykit`` command line."""
import argparse
import json
import logging
import pathlib
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .errors import (
    IllegalMoveError,
    InvariantMismatchError,
    KirbyError,
    MarkingError,
    TemplateError,
    UnsupportedKnotError,
    ValidationError,
)
from .handlebody import (
    AbelianGroup,
    HandleStructure,
    invariants,
    linking_matrix,
    torus_bundle_h1,
)
from .knot import (
    KnotDiagram,
    alexander,
    alexander_fox,
    canonical_name,
    knot_determinant,
    lookup,
    seifert_matrix,
)
from .laurent import LaurentPoly, Monomial, lp_add, lp_mul
from .moves import (
    MoveScript,
    apply_move,
    invariant_deltas,
    random_legal_move,
    random_structure,
    slide,
    verify_script,
)
from .resources import corpus_dir, corpus_env_variable, resolve_corpus_path
from .surgery import (
    format_sw,
    is_fake_pair,
    knot_surgery_diagram,
    load_sw_catalog,
    parse_sw,
    sw_knot_surgery,
    sw_symmetry_check,
)

LOGGER = logging.getLogger(__name__)
LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"

exit_codes = {"pass": 0, "pass-with-assertions": 0, "fail": 1, "error": 2}
failures = (IllegalMoveError, InvariantMismatchError, MarkingError, UnsupportedKnotError)

alexander_suite = {
    "unknot": "1",
    "trefoil": "t - 1 + t^-1",
    "figure-eight": "-t + 3 - t^-1",
    "granny": "t^2 - 2*t + 3 - 2*t^-1 + t^-2",
}


@dataclass
class Report:
    command: str
    subject: str = None
    verdict: str = "pass"
    data: dict = field(default_factory=dict)
    asserted: list = field(default_factory=list)
    message: str = None

    @property
    def exit_code(self):
        return exit_codes[self.verdict]

    def to_dict(self):
        report = {"command": self.command, "subject": self.subject}
        report["verdict"] = self.verdict
        if self.message is not None:
            report["message"] = self.message
        report.update(self.data)
        report["asserted"] = list(self.asserted)

        return report

    def to_text(self):
        lines = [f"{self.command} {self.subject or ''}".rstrip() + f": {self.verdict}"]
        if self.message is not None:
            lines.append(self.message)
        for key, value in self.data.items():
            if isinstance(value, (dict, list)):
                value = json.dumps(value, sort_keys=True)
            lines.append(f"  {key}: {value}")
        if self.asserted:
            lines.append("  asserted:")
            lines.extend(f"    - {condition}" for condition in self.asserted)

        return "\n".join(lines)


def _rendered(summary):
    return {
        key: str(value) if isinstance(value, AbelianGroup) else value
        for key, value in vars(summary).items()
    }


def _verdict(asserted, options):
    if asserted and not options.allow_assertions:
        return "fail", "asserted geometric conditions are not allowed"
    if asserted and options.strict:
        return "pass-with-assertions", None

    return "pass", None


def _load_diagram(knot):
    if pathlib.Path(knot).is_file():
        return KnotDiagram.load(knot)

    return lookup(canonical_name(knot))


def _d3_caveat(X):
    if X.three_handles and X.d3 is None:
        return (
            f"{X.three_handles} 3-handle(s) without d3: their attaching maps are "
            "taken to be zero in H2 and the boundary"
        )

    return None


def cmd_invariants(path, options):
    path = resolve_corpus_path(path)
    X = HandleStructure.load(path)
    summary = invariants(X)
    report = Report("invariants", str(path), data={"invariants": _rendered(summary)})
    caveat = _d3_caveat(X)
    if caveat is not None:
        report.data["caveat"] = caveat

    if X.monodromy is not None and not X.closed:
        bundle = torus_bundle_h1(X.monodromy)
        report.data["torus_bundle_h1"] = str(bundle)
        if bundle != summary.boundary_h1:
            report.verdict = "fail"
            report.message = (
                f"boundary H1 {summary.boundary_h1} differs from the torus bundle "
                f"H1 {bundle}"
            )

    return report


def cmd_check(path, options):
    path = resolve_corpus_path(path)
    script = MoveScript.load(path)
    report = Report("check", str(path))
    caveat = _d3_caveat(script.start)
    if caveat is not None:
        report.data["caveat"] = caveat
    try:
        certificate = verify_script(script.start, script)
    except IllegalMoveError as e:
        report.verdict = "fail"
        report.message = str(e)
        report.data["step"] = e.step
        return report
    except InvariantMismatchError as e:
        report.verdict = "fail"
        report.message = str(e)
        report.data["expected"] = e.expected
        report.data["actual"] = e.actual
        return report

    report.data["certificate"] = certificate.to_dict()
    report.data["final"] = _rendered(certificate.final)
    report.asserted = certificate.asserted
    report.verdict, report.message = _verdict(report.asserted, options)

    return report


def cmd_surgery(path, marking, knot, out, options):
    X = HandleStructure.load(path)
    X_K = knot_surgery_diagram(X, marking, knot)
    before = invariants(X)
    after = invariants(X_K)

    report = Report(
        "surgery",
        str(path),
        data={
            "knot": canonical_name(knot),
            "before": _rendered(before),
            "after": _rendered(after),
        },
    )
    if out is not None:
        X_K.dump(out)
        report.data["output"] = str(out)
    else:
        report.data["structure"] = X_K.to_dict()

    differences = after.differences(before)
    if differences:
        report.verdict = "fail"
        report.message = f"invariants changed: {sorted(differences)}"

    return report


def cmd_alexander(knot, options):
    d = _load_diagram(knot)
    seifert = alexander(d)
    fox = alexander_fox(d)

    report = Report(
        "alexander",
        knot,
        data={
            "alexander": str(seifert),
            "fox": str(fox),
            "agree": seifert == fox,
            "determinant": int(knot_determinant(d)),
        },
    )
    if seifert != fox:
        report.verdict = "fail"
        report.message = "the Seifert matrix and the Fox calculus disagree"

    return report


def _parse_torus_class(text, basis):
    if text is None:
        return basis[0]
    if text in basis:
        return text

    try:
        return [int(value) for value in text.split(",")]
    except ValueError:
        raise ValidationError(
            f"expected a basis name or integer coefficients, got {text!r}",
            field="torus_class",
        ) from None


def cmd_sw(entry, torus_class, knot, options, catalog_path=None):
    catalog = load_sw_catalog(catalog_path)
    try:
        sw = catalog[entry]
    except KeyError:
        raise ValidationError(
            f"no catalog entry {entry!r}, known entries: {sorted(catalog)}",
            field="manifold",
        ) from None

    result = sw_knot_surgery(sw, _parse_torus_class(torus_class, sw.basis), knot)
    symmetric = sw_symmetry_check(result)
    report = Report(
        "sw",
        entry,
        data={
            "knot": canonical_name(knot),
            "epsilon": result.epsilon,
            "basis": list(result.basis),
            "sw": format_sw(result),
            "basic_classes": [list(vector) for vector in result.basic_classes],
            "symmetric": symmetric,
            "fake_pair": is_fake_pair(sw, result),
        },
    )
    if not symmetric:
        report.verdict = "fail"
        report.message = "the surgered polynomial is not symmetric"

    return report


def cmd_knot(knot, options):
    d = _load_diagram(knot)
    return Report(
        "knot",
        knot,
        data={
            "crossings": d.to_json(),
            "crossing_number": d.crossing_number,
            "writhe": d.writhe,
            "seifert_circles": len(d.seifert_circles()),
            "genus_bound": d.genus_bound,
            "seifert_matrix": seifert_matrix(d).to_list(),
        },
    )


def _check_alexander_suite():
    for name, expected in alexander_suite.items():
        d = lookup(canonical_name(name))
        expected = LaurentPoly.parse(expected)
        for method, computed in (("seifert", alexander(d)), ("fox", alexander_fox(d))):
            if computed != expected:
                yield f"{name}: {method} gives {computed}, expected {expected}"


def _check_sw_transform(options):
    k3 = load_sw_catalog()["K3"]
    surgered = sw_knot_surgery(k3, "T", "trefoil")
    if surgered.poly != parse_sw("exp(2T) - 1 + exp(-2T)", ("T",)):
        yield f"K3 with the trefoil gives {format_sw(surgered)}"
    if surgered.basic_classes != [(-2,), (0,), (2,)]:
        yield f"basic classes {surgered.basic_classes}"
    if not sw_symmetry_check(surgered):
        yield "the surgered K3 polynomial is not symmetric"
    if not is_fake_pair(k3, surgered):
        yield "K3 and its trefoil surgery are not told apart"
    if is_fake_pair(k3, sw_knot_surgery(k3, "T", "unknot")):
        yield "unknot surgery changed the K3 polynomial"


def _structures(directory):
    return sorted(pathlib.Path(directory).glob("*.kby"))


def _check_invariant_table(directory):
    path = pathlib.Path(directory) / "expected.json"
    if not path.is_file():
        return

    with open(path) as f:
        table = json.load(f)
    for name, expected in sorted(table.items()):
        X = HandleStructure.load(path.parent / name)
        summary = invariants(X)
        differences = summary.differences(expected)
        if differences:
            yield f"{name}: {differences}"
        if X.monodromy is not None and not X.closed:
            bundle = torus_bundle_h1(X.monodromy)
            if bundle != summary.boundary_h1:
                yield f"{name}: torus bundle H1 {bundle}, boundary H1 {summary.boundary_h1}"


def _check_scripts(directory, asserted):
    for path in sorted(pathlib.Path(directory).glob("*.script")):
        script = MoveScript.load(path)
        try:
            certificate = verify_script(script.start, script)
        except (IllegalMoveError, InvariantMismatchError) as e:
            yield f"{path.name}: {e}"
            continue
        asserted.extend(f"{path.name}: {condition}" for condition in certificate.asserted)


def _check_surgery_invariance(directory):
    for path in _structures(directory):
        X = HandleStructure.load(path)
        if X.marking is None:
            continue

        X_K = knot_surgery_diagram(X, None, "trefoil")
        differences = invariants(X_K).differences(invariants(X))
        if differences:
            yield f"{path.name}: knot surgery changes {differences}"


def _check_random_moves(samples, seed=0, n_moves=4):
    rng = np.random.default_rng(seed)
    for sample in range(samples):
        X = random_structure(rng, n_handles=8)
        before = invariants(X)
        for _ in range(n_moves):
            record = random_legal_move(X, rng)
            Y = apply_move(X, record)
            after = invariants(Y)
            if after.boundary_h1 != before.boundary_h1:
                yield f"sample {sample}: {record} changes the boundary H1"

            if record["op"] == "blow_up":
                deltas = invariant_deltas(before, after)
                if deltas != {"chi": 1, "sigma": record["sign"]}:
                    yield f"sample {sample}: blow up changes (chi, sigma) by {deltas}"
            elif record["op"] == "slide":
                back = slide(Y, record["handle"], record["over"], -record["sign"])
                # geometric flags of the slid handle are dropped, compare the algebra
                if not linking_matrix(back).equals(linking_matrix(X)) or back.d3 != X.d3:
                    yield f"sample {sample}: {record} is not undone by the opposite slide"

            X, before = Y, after


def _random_poly(rng, variables=("t", "u"), n_terms=4, max_exponent=3):
    terms = {}
    for _ in range(int(rng.integers(0, n_terms + 1))):
        exponents = {
            name: int(rng.integers(-max_exponent, max_exponent + 1)) for name in variables
        }
        monomial = Monomial(exponents)
        terms[monomial] = terms.get(monomial, 0) + int(rng.integers(-5, 6))

    return LaurentPoly(terms)


def _check_ring_axioms(samples, seed=0):
    rng = np.random.default_rng(seed)
    for sample in range(samples):
        a, b, c = (_random_poly(rng) for _ in range(3))
        if lp_mul(lp_mul(a, b), c) != lp_mul(a, lp_mul(b, c)):
            yield f"sample {sample}: multiplication is not associative for {a}, {b}, {c}"
        if lp_mul(a, b) != lp_mul(b, a):
            yield f"sample {sample}: multiplication does not commute for {a}, {b}"
        if lp_mul(a, lp_add(b, c)) != lp_add(lp_mul(a, b), lp_mul(a, c)):
            yield f"sample {sample}: distributivity fails for {a}, {b}, {c}"


def cmd_corpus_test(options):
    directory = corpus_dir()
    asserted = []
    checks = {
        "alexander": lambda: _check_alexander_suite(),
        "sw": lambda: _check_sw_transform(options),
        "invariants": lambda: _check_invariant_table(directory),
        "scripts": lambda: _check_scripts(directory, asserted),
        "surgery": lambda: _check_surgery_invariance(directory),
        "random_moves": lambda: _check_random_moves(options.samples),
        "ring_axioms": lambda: _check_ring_axioms(10 * options.samples),
    }

    results = {}
    for name, check in checks.items():
        LOGGER.info("running %s", name)
        try:
            problems = list(check())
        except (KirbyError, OSError) as e:
            problems = [f"{type(e).__name__}: {e}"]
        results[name] = {"verdict": "fail" if problems else "pass", "problems": problems}

    report = Report("corpus-test", str(directory), data={"checks": results})
    report.asserted = asserted
    if any(result["problems"] for result in results.values()):
        report.verdict = "fail"
        failed = sorted(name for name, result in results.items() if result["problems"])
        report.message = f"failed checks: {failed}"
    else:
        report.verdict, report.message = _verdict(asserted, options)

    return report


def _parse_marking(text):
    if text is None:
        return None

    return [id_.strip() for id_ in text.split(",")]


def run(options):
    if options.command == "invariants":
        return cmd_invariants(options.path, options)
    elif options.command == "check":
        return cmd_check(options.path, options)
    elif options.command == "surgery":
        return cmd_surgery(
            options.path, _parse_marking(options.marking), options.knot, options.out, options
        )
    elif options.command == "alexander":
        return cmd_alexander(options.knot, options)
    elif options.command == "sw":
        return cmd_sw(
            options.manifold, options.torus_class, options.knot, options, options.catalog
        )
    elif options.command == "knot":
        return cmd_knot(options.knot, options)
    elif options.command == "corpus-test":
        return cmd_corpus_test(options)

    raise ValueError(f"unknown command: {options.command}")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="kirbykit",
        description="Kirby calculus on handle structures of 4-manifolds.",
        epilog=f"The corpus directory can be overridden with ${corpus_env_variable}.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument(
        "--format",
        choices=["json", "text"],
        default="json",
        help="report format (default: json)",
    )
    parser.add_argument(
        "--strict",
        action="store_true",
        help="flag results that rely on asserted geometric conditions",
    )
    parser.add_argument(
        "--allow-assertions",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="whether asserted geometric conditions may pass (default: allow)",
    )
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="log every move"
    )

    subparsers = parser.add_subparsers(dest="command", required=True)

    invariants_parser = subparsers.add_parser(
        "invariants", help="invariants of a handle structure"
    )
    invariants_parser.add_argument("path", help="a .kby file or a corpus file name")

    check_parser = subparsers.add_parser("check", help="verify a move script")
    check_parser.add_argument("path", help="a .script file or a corpus file name")

    surgery_parser = subparsers.add_parser(
        "surgery", help="knot surgery on a marked torus"
    )
    surgery_parser.add_argument("path", help="a .kby file")
    surgery_parser.add_argument("knot", help="catalog knot name")
    surgery_parser.add_argument(
        "--marking",
        help="ids a,b,t[,gamma[,delta]]; defaults to the marking stored in the file",
        metavar="ids",
    )
    surgery_parser.add_argument(
        "-o", "--out", help="write the result to this .kby file", metavar="filename"
    )

    alexander_parser = subparsers.add_parser(
        "alexander", help="Alexander polynomial by both algorithms"
    )
    alexander_parser.add_argument("knot", help="catalog knot name or diagram file")

    sw_parser = subparsers.add_parser(
        "sw", help="Seiberg–Witten polynomial after knot surgery"
    )
    sw_parser.add_argument("manifold", help="SW catalog entry, e.g. K3")
    sw_parser.add_argument("knot", help="catalog knot name")
    sw_parser.add_argument(
        "--torus-class",
        help="basis name or comma separated coefficients (default: first basis class)",
    )
    sw_parser.add_argument(
        "--catalog", help="SW catalog file (default: the corpus catalog)"
    )

    knot_parser = subparsers.add_parser("knot", help="diagram data of a knot")
    knot_parser.add_argument("knot", help="catalog knot name or diagram file")

    corpus_parser = subparsers.add_parser(
        "corpus-test", help="run the acceptance suite on the corpus"
    )
    corpus_parser.add_argument(
        "--samples",
        type=int,
        default=1000,
        help="number of random move sequences on 8-handle structures "
        "(ring axiom samples: 10x)",
    )

    return parser


def main(argv=None):
    parser = build_parser()
    options = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if options.verbose else logging.WARNING, format=LOG_FORMAT
    )

    try:
        report = run(options)
    except failures as e:
        report = Report(options.command, verdict="fail", message=str(e))
    except (ValidationError, TemplateError, OSError) as e:
        report = Report(options.command, verdict="error", message=str(e))

    if options.format == "json":
        print(json.dumps(report.to_dict(), indent=2, ensure_ascii=False))
    else:
        print(report.to_text())

    raise SystemExit(report.exit_code)
