"""Knot surgery on a marked T²×B², in diagrams and on Seiberg–Witten polynomials."""
import functools
import json
import logging
import re
from collections import defaultdict
from dataclasses import dataclass, field, replace

import sympy
from sympy.parsing.sympy_parser import parse_expr, standard_transformations

from .errors import (
    IllegalMoveError,
    MarkingError,
    TemplateError,
    UnsupportedKnotError,
    ValidationError,
    format_error_message,
)
from .handlebody import Handle, HandleStructure, _parse_handle, invariants
from .knot import alexander, canonical_name, lookup, slice_label
from .laurent import (
    LaurentPoly,
    Monomial,
    lp_evaluate,
    lp_is_symmetric,
    lp_mul,
    lp_substitute,
    variable_re,
)
from .moves import Conditions, cancel_12, register_move
from .resources import corpus_file, load_template

LOGGER = logging.getLogger(__name__)

marking_fields = ("dotted_a", "dotted_b", "framed_t", "cusp_handles")
exp_re = re.compile(r"exp\(([^()]*)\)")
coefficient_re = re.compile(r"(\d)\s*([A-Za-z_])")


@dataclass(frozen=True)
class TorusMarking:
    """handle ids of an embedded T²×B²

    ``dotted_a`` and ``dotted_b`` are its 1-handles, ``framed_t`` its 0-framed
    2-handle. ``cusp_handles`` are the −1-framed handles of a cusp (two) or
    fishtail (one) neighborhood, if any.
    """

    dotted_a: str
    dotted_b: str
    framed_t: str
    cusp_handles: tuple = ()

    @property
    def has_cusp(self):
        return len(self.cusp_handles) == 2

    @property
    def ids(self):
        return (self.dotted_a, self.dotted_b, self.framed_t) + tuple(self.cusp_handles)

    def to_dict(self):
        data = {
            "dotted_a": self.dotted_a,
            "dotted_b": self.dotted_b,
            "framed_t": self.framed_t,
        }
        if self.cusp_handles:
            data["cusp_handles"] = list(self.cusp_handles)

        return data

    @classmethod
    def from_ids(cls, ids):
        """build a marking from a mapping or a sequence ``a, b, t[, γ[, δ]]``"""
        if isinstance(ids, cls):
            return ids

        if isinstance(ids, dict):
            unknown = sorted(set(ids) - set(marking_fields))
            missing = sorted(set(marking_fields[:3]) - set(ids))
            if unknown or missing:
                raise MarkingError(
                    f"unknown fields {unknown}, missing fields {missing}",
                    field="marking",
                )
            return cls(
                ids["dotted_a"],
                ids["dotted_b"],
                ids["framed_t"],
                tuple(ids.get("cusp_handles", ())),
            )

        if isinstance(ids, str):
            ids = [id_.strip() for id_ in ids.split(",")]
        ids = list(ids)
        if len(ids) not in (3, 4, 5):
            raise MarkingError(
                f"expected the ids a, b, t and up to two cusp handles, got {ids!r}",
                field="marking",
            )

        return cls(*ids[:3], cusp_handles=tuple(ids[3:]))


def mark_torus(X, ids=None):
    """validate the T²×B² pattern on the named handles

    Parameters
    ----------
    X : HandleStructure
    ids : TorusMarking, mapping or sequence, optional
        The marked handles. Defaults to the marking stored on ``X``.

    Returns
    -------
    TorusMarking

    Raises
    ------
    MarkingError
        Listing every condition that fails.
    """
    if ids is None:
        ids = X.marking
    if ids is None:
        raise MarkingError(f"{X.name or 'structure'} carries no torus marking")

    marking = TorusMarking.from_ids(ids)
    a, b, t = marking.dotted_a, marking.dotted_b, marking.framed_t

    errors = defaultdict(list)
    if len(set(marking.ids)) != len(marking.ids):
        errors["marking"].append(f"ids repeat in {list(marking.ids)}")
    if len(marking.cusp_handles) > 2:
        errors["marking"].append("at most two cusp handles")
    for handle_id in marking.ids:
        if handle_id not in X:
            errors[handle_id].append("no such handle")

    if not errors:
        for d in (a, b):
            if X[d].kind != "dotted":
                errors[d].append(f"expected a plain dotted circle, got {X[d].kind}")
        if X.link(a, b):
            errors[a].append(f"links {b} {X.link(a, b)} times")

        tau = X[t]
        if not tau.is_framed:
            errors[t].append(f"expected a framed 2-handle, got {tau.kind}")
        else:
            if tau.framing != 0:
                errors[t].append(f"framing {tau.framing}, expected 0")
            for d in (a, b):
                if tau.link(d):
                    errors[t].append(f"links {d} {tau.link(d)} times, expected 0")
                runs = tau.geometric_runs.get(d)
                if runs is None:
                    errors[t].append(f"geometric runs over {d} are not asserted")
                elif runs != 2:
                    errors[t].append(f"runs {runs} times over {d}, expected 2")

        for c in marking.cusp_handles:
            handle = X[c]
            if not handle.is_framed or handle.framing != -1:
                errors[c].append(f"framing {handle.framing}, expected -1")
            linked = [d for d in (a, b) if handle.link(d)]
            if len(linked) != 1 or abs(handle.link(linked[0])) != 1:
                errors[c].append(f"should link exactly one of {a}, {b} once")

    if errors:
        raise MarkingError(
            format_error_message(
                {key: "; ".join(reasons) for key, reasons in errors.items()}, "marking"
            )
        )

    LOGGER.debug("marked torus %s", marking)
    return marking


@dataclass(frozen=True)
class ComplementPresentation:
    """handle presentation of S³ − N(K) used for knot surgery

    ``template`` holds the handles added by the surgery, with ``{dotted_a}``
    and ``{dotted_b}`` standing for the marked 1-handles.
    """

    knot: str
    core_circles: tuple
    template: dict = field(repr=False, compare=False)

    @property
    def genus(self):
        return len(self.core_circles)


def _format_template(obj, fields):
    if isinstance(obj, str):
        return obj.format(**fields)
    if isinstance(obj, dict):
        return {
            _format_template(key, fields): _format_template(value, fields)
            for key, value in obj.items()
        }
    if isinstance(obj, list):
        return [_format_template(item, fields) for item in obj]

    return obj


def _apply_presentation(X, marking, presentation):
    if presentation.genus != 2:
        raise UnsupportedKnotError(
            f"only genus 2 complement presentations are supported, "
            f"{presentation.knot!r} has genus {presentation.genus}"
        )

    template = _format_template(
        presentation.template,
        {"dotted_a": marking.dotted_a, "dotted_b": marking.dotted_b},
    )

    new_handles = []
    for index, record in enumerate(template["handles"]):
        handle, errors = _parse_handle(record)
        if errors:
            raise TemplateError(
                format_error_message(
                    {f"handles[{index}].{key}": value for key, value in errors.items()},
                    "parse",
                )
            )
        new_handles.append(handle)

    collisions = sorted(handle.id for handle in new_handles if handle.id in X)
    if collisions:
        raise ValidationError(
            f"template handle ids {collisions} are already taken", field="handles"
        )

    label = slice_label(presentation.knot)
    handles = []
    for handle in X.handles:
        if handle.id == marking.dotted_a:
            handle = handle.replace(kind="slice", knot=label)
        elif handle.id == marking.framed_t:
            runs = {
                k: v
                for k, v in handle.geometric_runs.items()
                if k not in (marking.dotted_a, marking.dotted_b)
            }
            runs.update(template["framed_t"]["geometric_runs"])
            handle = handle.replace(unknot=False, geometric_runs=runs)
        handles.append(handle)
    handles.extend(new_handles)

    if X.d3 is not None:
        rows = [dict(row) for row in X.d3]
    else:
        rows = [{} for _ in range(X.three_handles)]
    rows.extend(template["d3"])

    return X.replace(
        handles=handles,
        three_handles=X.three_handles + len(template["d3"]),
        d3=rows,
        marking=None,
        name=f"{X.name}_star" if X.name is not None else None,
    )


def _oracle_structures():
    torus = HandleStructure(
        [
            Handle(id="a", kind="dotted"),
            Handle(id="b", kind="dotted"),
            Handle(id="t", kind="framed", framing=0, geometric_runs={"a": 2, "b": 2}),
        ]
    )
    cusp = torus.replace(
        handles=torus.handles
        + (
            Handle(id="g", kind="framed", framing=-1, links={"a": 1}),
            Handle(id="d", kind="framed", framing=-1, links={"b": 1}),
        )
    )
    marking = TorusMarking("a", "b", "t")
    return [(torus, marking), (cusp, replace(marking, cusp_handles=("g", "d")))]


@functools.cache
def presentations():
    """stored complement presentations, validated against the invariants

    Raises
    ------
    TemplateError
        If a presentation changes any invariant of a marked test structure.
    """
    records = load_template("knot_surgery.json")["presentations"]
    result = {}
    for record in records:
        for knot in record["knots"]:
            presentation = ComplementPresentation(
                knot=knot,
                core_circles=tuple(record["core_circles"]),
                template=record,
            )
            if presentation.genus != 2:
                result[knot] = presentation
                continue

            for X, marking in _oracle_structures():
                try:
                    after = invariants(_apply_presentation(X, marking, presentation))
                except ValidationError as e:
                    raise TemplateError(
                        f"complement presentation of {knot!r} is invalid: {e}"
                    ) from e

                differences = after.differences(invariants(X))
                if differences:
                    raise TemplateError(
                        f"complement presentation of {knot!r} changes invariants: "
                        + format_error_message(differences, "expect")
                    )
            result[knot] = presentation

    return result


def complement_presentation(name):
    """stored presentation for a catalog knot

    Raises
    ------
    UnsupportedKnotError
        If the knot is unknown or has no stored presentation.
    """
    knot = canonical_name(name)
    lookup(knot)
    try:
        return presentations()[knot]
    except KeyError:
        raise UnsupportedKnotError(
            f"no complement presentation stored for {name!r}; "
            f"available: {sorted(presentations())}"
        ) from None


def knot_surgery_diagram(X, m, K):
    """replace the marked T²×B² by (S³ − N(K)) × S¹

    The 1-handle ``dotted_a`` becomes a slice 1-handle labeled ``K#-K``, the
    handles of the complement presentation are added and the geometric runs
    of the torus 2-handle are rewritten. Cusp handles are kept with their
    linking.

    Parameters
    ----------
    X : HandleStructure
    m : TorusMarking, mapping or sequence
    K : str or ComplementPresentation

    Returns
    -------
    HandleStructure
    """
    marking = mark_torus(X, m)
    presentation = (
        K if isinstance(K, ComplementPresentation) else complement_presentation(K)
    )

    LOGGER.debug("knot surgery along %s with %s", marking.framed_t, presentation.knot)
    return _apply_presentation(X, marking, presentation)


def reverse_script(marking, K):
    """moves taking X_K back to a structure with the invariants of X

    The slice 1-handle is surgered, the presentation's 1-handles and
    3-handles are cancelled and the dot is put back.
    """
    marking = TorusMarking.from_ids(marking)
    presentation = (
        K if isinstance(K, ComplementPresentation) else complement_presentation(K)
    )
    template = presentation.template
    a = marking.dotted_a

    moves = [{"op": "surger_dot", "target": a}]
    for record in template["handles"]:
        if record["kind"] != "dotted":
            continue
        partner = next(
            other["id"]
            for other in template["handles"]
            if abs(other.get("links", {}).get(record["id"], 0)) == 1
        )
        moves.append({"op": "cancel_12", "dotted": record["id"], "framed": partner})
    for row in template["d3"]:
        (target,) = row
        moves.append(
            {
                "op": "cancel_23",
                "target": target,
                "assert": [{"handle": target, "unknot": True}],
            }
        )
    moves.append(
        {"op": "add_dot", "target": a, "assert": [{"handle": a, "unknot": True}]}
    )

    return moves


@register_move("knot_surgery")
def knot_surgery(X, knot, marking=None, *, conditions=None):
    """knot surgery as a move script step, see :py:func:`knot_surgery_diagram`"""
    move = "knot_surgery"
    conditions = conditions if conditions is not None else Conditions()
    try:
        validated = mark_torus(X, marking)
    except MarkingError as e:
        raise IllegalMoveError(str(e), move=move) from e

    conditions.check(True, f"{validated.framed_t} marks a T²×B²", move)
    conditions.assume(f"the torus of {validated.framed_t} is c-embedded")
    return knot_surgery_diagram(X, validated, knot)


@register_move("undo_dual_handle")
def undo_dual_handle(X, delta, *, conditions=None):
    """remove a cusp handle together with a dot on its dual circle

    Turns a cusp neighborhood into a fishtail neighborhood.
    """
    move = "undo_dual_handle"
    conditions = conditions if conditions is not None else Conditions()
    if delta not in X:
        raise IllegalMoveError(f"no handle named {delta!r}", move=move)

    handle = X[delta]
    conditions.check(
        handle.is_framed and handle.framing == -1,
        f"{delta} is a -1-framed 2-handle",
        move,
        detail=f"{delta} is {handle.kind} with framing {handle.framing}",
    )
    linked = [d for d in X.dotted_ids if handle.link(d)]
    conditions.check(
        len(linked) == 1 and abs(handle.link(linked[0])) == 1,
        f"{delta} links exactly one dotted circle once",
        move,
        detail=f"links {dict(sorted(handle.links.items()))}",
    )
    dual = f"{delta}_dual"
    conditions.check(dual not in X, f"{dual} is a new handle id", move)
    conditions.assume(f"{dual} is the boundary of the cocore disc of {delta}")

    marking = None
    if X.marking is not None:
        marking = dict(X.marking)
        cusp = [c for c in marking.pop("cusp_handles", []) if c != delta]
        if cusp:
            marking["cusp_handles"] = cusp

    handles = [
        h.replace(geometric_runs={**h.geometric_runs, dual: 1}) if h.id == delta else h
        for h in X.handles
    ]
    handles.append(Handle(id=dual, kind="dotted", links={delta: 1}))
    structure = cancel_12(X.replace(handles=handles), dual, delta, conditions=conditions)

    LOGGER.debug("removed cusp handle %s", delta)
    return structure.replace(marking=marking)


def epsilon_of(e, sigma):
    """(e + σ) / 4 for a closed manifold with Euler characteristic e"""
    if (e + sigma) % 4:
        raise ValidationError(f"e + σ = {e + sigma} is not divisible by 4")

    return (e + sigma) // 4


@dataclass(frozen=True)
class SWInvariant:
    """Seiberg–Witten polynomial over a basis of H²

    Parameters
    ----------
    poly : LaurentPoly
        Variables are basis classes, the monomial of the class ``a`` standing
        for exp(a).
    epsilon : int
    basis : tuple of str
    manifold : str, optional
    """

    poly: LaurentPoly
    epsilon: int
    basis: tuple = ("T",)
    manifold: str = None

    @property
    def basic_classes(self):
        return sorted(monomial.vector(self.basis) for monomial in self.poly)

    def to_dict(self):
        data = {
            "basis": list(self.basis),
            "epsilon": self.epsilon,
            "sw": format_sw(self),
        }
        if self.manifold is not None:
            data = {"manifold": self.manifold, **data}

        return data

    @classmethod
    def from_dict(cls, data):
        """parse a catalog entry

        ``euler`` and ``signature`` are checked against ``epsilon`` when given.
        """
        unknown = sorted(
            set(data) - {"manifold", "basis", "epsilon", "sw", "euler", "signature"}
        )
        if unknown:
            raise ValidationError(f"unknown fields {unknown}")

        basis = tuple(data.get("basis", ("T",)))
        epsilon = data["epsilon"]
        if "euler" in data and "signature" in data:
            computed = epsilon_of(data["euler"], data["signature"])
            if computed != epsilon:
                raise ValidationError(
                    f"epsilon {epsilon} but (e + σ)/4 = {computed}", field="epsilon"
                )

        sw = cls(
            poly=parse_sw(data["sw"], basis),
            epsilon=epsilon,
            basis=basis,
            manifold=data.get("manifold"),
        )
        if not sw_symmetry_check(sw):
            raise ValidationError(
                f"{format_sw(sw)} is not symmetric for epsilon {epsilon}", field="sw"
            )

        return sw


def _linear_text(monomial, basis):
    parts = []
    for name in basis:
        exponent = monomial.get(name, 0)
        if not exponent:
            continue

        body = name if abs(exponent) == 1 else f"{abs(exponent)}{name}"
        if not parts:
            parts.append(f"-{body}" if exponent < 0 else body)
        else:
            parts.append(f"- {body}" if exponent < 0 else f"+ {body}")

    return " ".join(parts)


def format_sw(sw):
    """render ``sw.poly`` in exponential notation, e.g. ``exp(2T) - 1 + exp(-2T)``"""
    if sw.poly.is_zero:
        return "0"

    parts = []
    for index, (monomial, coefficient) in enumerate(sw.poly.items()):
        magnitude = abs(coefficient)
        if monomial.is_unit:
            body = str(magnitude)
        else:
            body = f"exp({_linear_text(monomial, sw.basis)})"
            if magnitude != 1:
                body = f"{magnitude}*{body}"

        if index == 0:
            parts.append(f"-{body}" if coefficient < 0 else body)
        else:
            parts.append(f"- {body}" if coefficient < 0 else f"+ {body}")

    return " ".join(parts)


def _exp_to_monomial(match, basis):
    text = match.group(1)
    names = set(variable_re.findall(text))
    if not names <= set(basis):
        raise ValidationError(
            f"unknown classes {sorted(names - set(basis))!r} in exp({text})"
        )

    symbols = [sympy.Symbol(name) for name in basis]
    try:
        expr = parse_expr(
            coefficient_re.sub(r"\1*\2", text),
            local_dict=dict(zip(basis, symbols)),
            transformations=standard_transformations,
        )
        poly = sympy.Poly(expr, *symbols)
    except (SyntaxError, TypeError, ValueError, sympy.SympifyError) as e:
        raise ValidationError(f"cannot parse exp({text}): {e}") from e

    if poly.total_degree() > 1 or poly.coeff_monomial(1) != 0:
        raise ValidationError(f"exp({text}) is not exp of a class")

    exponents = {}
    for name, symbol in zip(basis, symbols):
        coefficient = poly.coeff_monomial(symbol)
        if not coefficient.is_integer:
            raise ValidationError(f"exp({text}) is not exp of an integral class")
        exponents[name] = int(coefficient)

    return f"({Monomial(exponents)})"


def parse_sw(text, basis=("T",)):
    """parse exponential notation like ``exp(F) - exp(-F)``"""
    if not isinstance(text, str):
        raise ValidationError(f"cannot parse {text!r} as a Seiberg–Witten polynomial")

    basis = tuple(basis)
    polynomial_text = exp_re.sub(lambda match: _exp_to_monomial(match, basis), text)
    if "exp" in polynomial_text:
        raise ValidationError(f"nested or malformed exp in {text!r}")

    return LaurentPoly.parse(polynomial_text, variables=basis)


def sw_symmetry_check(sw):
    return lp_is_symmetric(sw.poly, sw.epsilon)


def _torus_vector(sw, torus_class):
    if isinstance(torus_class, str):
        if torus_class not in sw.basis:
            raise ValidationError(
                f"{torus_class!r} is not part of the basis {list(sw.basis)!r}",
                field="torus_class",
            )
        return tuple(int(name == torus_class) for name in sw.basis)

    vector = tuple(int(c) for c in torus_class)
    if len(vector) != len(sw.basis):
        raise ValidationError(
            f"class {list(vector)} does not match basis {list(sw.basis)}",
            field="torus_class",
        )
    if not any(vector):
        raise ValidationError("the torus class must be nonzero", field="torus_class")

    return vector


def _alexander_of(delta):
    if isinstance(delta, str):
        return alexander(lookup(canonical_name(delta)))

    return delta


def sw_knot_surgery(sw, torus_class, delta, manifold=None):
    """SW_X · Δ_K(exp(2[T]))

    Parameters
    ----------
    sw : SWInvariant
    torus_class : str or sequence of int
        The class [T] of the torus, as a basis name or exponent vector.
    delta : LaurentPoly or str
        Alexander polynomial in ``t``, or a catalog knot name.
    manifold : str, optional
        Name of the result.

    Returns
    -------
    SWInvariant
    """
    name = delta if isinstance(delta, str) else None
    delta = _alexander_of(delta)
    if not set(delta.variables) <= {"t"}:
        raise ValidationError(
            f"expected a polynomial in t, got {delta}", field="delta"
        )
    if not lp_is_symmetric(delta, 0) or lp_evaluate(delta, {"t": 1}) != 1:
        raise ValidationError(
            f"Δ must be symmetric with Δ(1) = 1, got {delta}", field="delta"
        )

    vector = _torus_vector(sw, torus_class)
    t = Monomial.from_vector(sw.basis, [2 * c for c in vector])
    poly = lp_mul(sw.poly, lp_substitute(delta, "t", t))

    if manifold is None and sw.manifold is not None:
        manifold = f"{sw.manifold}_{name}" if name is not None else sw.manifold
    result = replace(sw, poly=poly, manifold=manifold)
    if sw_symmetry_check(sw) and not sw_symmetry_check(result):
        raise ValidationError(f"{format_sw(result)} lost its symmetry")

    return result


def sw_iterated_surgery(sw, torus_class, knots):
    """knot surgery along parallel copies of the torus, one per knot"""
    for knot in knots:
        sw = sw_knot_surgery(sw, torus_class, knot)

    return sw


def is_fake_pair(a, b):
    """whether the SW polynomials tell ``a`` and ``b`` apart

    ``False`` is inconclusive.
    """
    if tuple(a.basis) != tuple(b.basis):
        raise ValidationError(
            f"basis {list(a.basis)} differs from {list(b.basis)}", field="basis"
        )

    return a.poly != b.poly


def load_sw_catalog(path=None):
    """manifolds of the SW catalog by name"""
    if path is None:
        path = corpus_file("sw_catalog.json")

    with open(path) as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise ValidationError(
                f"line {e.lineno}, column {e.colno}: {e.msg}", path=path
            ) from e

    catalog = {}
    for index, record in enumerate(data.get("manifolds", [])):
        try:
            sw = SWInvariant.from_dict(record)
        except (KeyError, ValidationError) as e:
            raise ValidationError(
                f"entry {index}: {e}", path=path, field="manifolds"
            ) from e
        catalog[sw.manifold] = sw

    return catalog
