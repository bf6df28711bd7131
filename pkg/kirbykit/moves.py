"""Kirby moves on handle structures and the move-script verifier."""
import inspect
import json
import logging
import pathlib
from dataclasses import dataclass, field
from functools import cache

from .errors import (
    IllegalMoveError,
    InvariantMismatchError,
    TemplateError,
    UnsupportedKnotError,
    ValidationError,
    format_error_message,
)
from .handlebody import Handle, HandleStructure, InvariantSummary, invariants
from .knot import canonical_name, slice_summand
from .resources import corpus_dir, load_template

LOGGER = logging.getLogger(__name__)

moves_registry = {}
cosmetic_fields = ("half_twist", "comment")


def register_move(name):
    """register a move function under ``name`` for use in move scripts"""

    def decorator(func):
        if name in moves_registry:
            raise ValueError(f"a move named {name!r} is already registered")

        moves_registry[name] = func
        return func

    return decorator


class Conditions:
    """conditions established while applying moves

    ``verified`` conditions were checked on the algebraic data, ``asserted``
    ones are geometric facts that were taken on trust.
    """

    def __init__(self):
        self.verified = []
        self.asserted = []

    def check(self, holds, condition, move, detail=None):
        if not holds:
            message = f"{condition} does not hold"
            if detail is not None:
                message = f"{message} ({detail})"
            raise IllegalMoveError(message, move=move)

        self.verified.append(condition)

    def assume(self, condition):
        LOGGER.warning("unverified geometric condition: %s", condition)
        self.asserted.append(condition)


def _conditions(conditions):
    return conditions if conditions is not None else Conditions()


def _require(X, ids, move):
    for handle_id in ids:
        if handle_id not in X:
            raise IllegalMoveError(f"no handle named {handle_id!r}", move=move)


def _fresh_id(X, prefix, suffixes=("",)):
    # the first prefix<N> for which every prefix<N><suffix> is unused
    index = 1
    while any(f"{prefix}{index}{suffix}" in X for suffix in suffixes):
        index += 1
    return f"{prefix}{index}"


def _set_link(links, a, b, value):
    for x, y in ((a, b), (b, a)):
        if value:
            links[x][y] = value
        else:
            links[x].pop(y, None)


def _assume_runs(conditions, X, handle, dotted, expected, move):
    runs = X[handle].geometric_runs.get(dotted)
    condition = f"{handle} runs geometrically {expected} time(s) over {dotted}"
    if runs is not None and runs != expected:
        raise IllegalMoveError(
            f"{condition}, but {runs} runs are asserted", move=move
        )

    conditions.assume(condition if runs is not None else f"{condition} (not flagged)")


def _assume_unknot(conditions, X, handle):
    condition = f"{handle} is an unknot"
    conditions.assume(condition if X[handle].unknot else f"{condition} (not flagged)")


def _d3_column_is_zero(X, handle_id):
    return X.d3 is None or all(row.get(handle_id, 0) == 0 for row in X.d3)


def _remove(X, ids, **changes):
    ids = set(ids)
    handles = [
        handle.replace(
            links={k: v for k, v in handle.links.items() if k not in ids},
            geometric_runs={
                k: v for k, v in handle.geometric_runs.items() if k not in ids
            },
        )
        for handle in X.handles
        if handle.id not in ids
    ]
    if "d3" not in changes and X.d3 is not None:
        changes["d3"] = [
            {k: v for k, v in row.items() if k not in ids} for row in X.d3
        ]
    if "marking" not in changes and X.marking is not None:
        marked = {v for v in X.marking.values() if isinstance(v, str)}
        marked.update(X.marking.get("cusp_handles", []))
        if marked & ids:
            LOGGER.debug("dropping the torus marking, %s left the diagram", marked & ids)
            changes["marking"] = None

    return X.replace(handles=handles, **changes)


def _replace_handle(X, handle, **changes):
    return X.replace(
        handles=[h.replace(**changes) if h.id == handle else h for h in X.handles]
    )


@register_move("slide")
def slide(X, handle, over, sign=1, *, conditions=None):
    """slide the framed handle ``handle`` over the framed handle ``over``

    The linking row of ``handle`` changes by ``sign`` times the row of
    ``over`` and the framing becomes ``f_i + f_j + 2·sign·lk(i, j)``. The
    geometric flags of ``handle`` are dropped.
    """
    move = "slide"
    conditions = _conditions(conditions)
    _require(X, [handle, over], move)
    conditions.check(handle != over, f"{handle} ≠ {over}", move)
    for handle_id in (handle, over):
        conditions.check(
            X[handle_id].is_framed,
            f"{handle_id} is a framed 2-handle",
            move,
            detail=f"{handle_id} is {X[handle_id].kind}",
        )
    conditions.check(sign in (1, -1), "sign is ±1", move, detail=f"got {sign!r}")

    i = X[handle]
    j = X[over]
    links = {h.id: dict(h.links) for h in X.handles}
    for k in X.ids:
        if k not in (handle, over):
            _set_link(links, handle, k, i.link(k) + sign * j.link(k))
    _set_link(links, handle, over, i.link(over) + sign * j.framing)
    framing = i.framing + j.framing + 2 * sign * i.link(over)

    handles = []
    for h in X.handles:
        if h.id == handle:
            h = h.replace(
                framing=framing,
                links=links[h.id],
                knot=None,
                unknot=False,
                geometric_runs={},
            )
        else:
            h = h.replace(
                links=links[h.id],
                geometric_runs={
                    k: v for k, v in h.geometric_runs.items() if k != handle
                },
            )
        handles.append(h)

    d3 = None
    if X.d3 is not None:
        d3 = []
        for row in X.d3:
            row = dict(row)
            row[over] = row.get(over, 0) - sign * row.get(handle, 0)
            d3.append(row)

    LOGGER.debug(
        "slide %s over %s (%+d): framing %d -> %d", handle, over, sign, i.framing, framing
    )
    return X.replace(handles=handles, d3=d3)


@register_move("blow_up")
def blow_up(X, sign=1, id=None, *, conditions=None):
    """add an isolated ±1-framed unknot"""
    move = "blow_up"
    conditions = _conditions(conditions)
    conditions.check(sign in (1, -1), "sign is ±1", move, detail=f"got {sign!r}")

    new_id = id if id is not None else _fresh_id(X, "e")
    conditions.check(new_id not in X, f"{new_id} is a new handle id", move)

    handle = Handle(id=new_id, kind="framed", framing=sign, unknot=True)
    LOGGER.debug("blow up %s with framing %+d", new_id, sign)
    return X.replace(handles=X.handles + (handle,))


@register_move("blow_down")
def blow_down(X, target, *, conditions=None):
    """remove an isolated ±1-framed unknot"""
    move = "blow_down"
    conditions = _conditions(conditions)
    _require(X, [target], move)

    handle = X[target]
    conditions.check(handle.is_framed, f"{target} is a framed 2-handle", move)
    conditions.check(
        handle.framing in (1, -1),
        f"{target} has framing ±1",
        move,
        detail=f"framing {handle.framing}",
    )
    conditions.check(
        not handle.links,
        f"{target} is unlinked from all other handles",
        move,
        detail=f"links {dict(sorted(handle.links.items()))}",
    )
    conditions.check(
        _d3_column_is_zero(X, target), f"no 3-handle runs over {target}", move
    )
    _assume_unknot(conditions, X, target)

    LOGGER.debug("blow down %s", target)
    return _remove(X, [target])


@register_move("cancel_12")
def cancel_12(X, dotted, framed, *, conditions=None):
    """cancel a dotted circle against a 2-handle running over it once

    Every other framed handle linking ``dotted`` is first slid over
    ``framed`` until it no longer does. If ``framed`` carries a slice label
    ``K#-K``, the one other dotted circle it runs over becomes a slice
    1-handle with that label.
    """
    move = "cancel_12"
    conditions = _conditions(conditions)
    _require(X, [dotted, framed], move)

    d = X[dotted]
    h = X[framed]
    conditions.check(
        d.kind == "dotted",
        f"{dotted} is a plain dotted circle",
        move,
        detail=f"{dotted} is {d.kind}",
    )
    conditions.check(h.is_framed, f"{framed} is a framed 2-handle", move)

    epsilon = h.link(dotted)
    conditions.check(
        abs(epsilon) == 1,
        f"lk({framed}, {dotted}) = ±1",
        move,
        detail=f"lk = {epsilon}",
    )
    conditions.check(
        all(X.link(dotted, e) == 0 for e in X.dotted_ids if e != dotted),
        f"{dotted} is unlinked from the other dotted circles",
        move,
    )
    _assume_runs(conditions, X, framed, dotted, 1, move)

    current = X
    for k in X.framed_ids:
        if k == framed:
            continue

        m = current.link(k, dotted)
        sign = -1 if m * epsilon > 0 else 1
        for _ in range(abs(m)):
            current = slide(current, k, framed, sign, conditions=conditions)

    conditions.check(
        _d3_column_is_zero(current, framed), f"no 3-handle runs over {framed}", move
    )

    label = current[framed].knot
    if label is not None and "#" in label:
        partners = [
            e
            for e, runs in current[framed].geometric_runs.items()
            if e != dotted and runs > 0 and e in current and current[e].kind == "dotted"
        ]
        if len(partners) == 1:
            LOGGER.debug("%s becomes the slice 1-handle %s", partners[0], label)
            current = _replace_handle(current, partners[0], kind="slice", knot=label)

    LOGGER.debug("cancel 1-handle %s against 2-handle %s", dotted, framed)
    return _remove(current, [dotted, framed])


@register_move("cancel_23")
def cancel_23(X, target, *, conditions=None):
    """cancel a 0-framed unlinked unknot against a 3-handle"""
    move = "cancel_23"
    conditions = _conditions(conditions)
    _require(X, [target], move)

    handle = X[target]
    conditions.check(handle.is_framed, f"{target} is a framed 2-handle", move)
    conditions.check(
        handle.framing == 0,
        f"{target} is 0-framed",
        move,
        detail=f"framing {handle.framing}",
    )
    conditions.check(
        not handle.links,
        f"{target} is unlinked from all other handles",
        move,
        detail=f"links {dict(sorted(handle.links.items()))}",
    )
    conditions.check(X.three_handles >= 1, "a 3-handle is present", move)
    conditions.check(
        X.d3 is not None,
        "the 3-handle attaching maps are given by d3",
        move,
        detail=f"under the zero default no 3-handle runs over {target}",
    )
    _assume_unknot(conditions, X, target)

    pivot_index = next(
        (index for index, row in enumerate(X.d3) if abs(row.get(target, 0)) == 1),
        None,
    )
    conditions.check(pivot_index is not None, f"a 3-handle runs once over {target}", move)

    pivot = X.d3[pivot_index]
    d3 = []
    for index, row in enumerate(X.d3):
        if index == pivot_index:
            continue

        factor = row.get(target, 0) * pivot[target]
        keys = set(row) | set(pivot)
        d3.append(
            {k: row.get(k, 0) - factor * pivot.get(k, 0) for k in keys if k != target}
        )

    return _remove(X, [target], three_handles=X.three_handles - 1, d3=d3)


@register_move("surger_dot")
def surger_dot(X, target, *, conditions=None):
    """exchange a dotted circle for a 0-framed 2-handle"""
    move = "surger_dot"
    conditions = _conditions(conditions)
    _require(X, [target], move)
    conditions.check(
        X[target].is_dotted,
        f"{target} is a dotted circle",
        move,
        detail=f"{target} is {X[target].kind}",
    )

    LOGGER.debug("surgering the dot of %s", target)
    return _replace_handle(X, target, kind="framed", framing=0)


@register_move("add_dot")
def add_dot(X, target, knot=None, *, conditions=None):
    """put a dot on a 0-framed 2-handle

    The result is a slice 1-handle if a knot label is given or the handle
    carries one and is not asserted to be an unknot, a plain dotted circle
    otherwise.
    """
    move = "add_dot"
    conditions = _conditions(conditions)
    _require(X, [target], move)

    handle = X[target]
    conditions.check(handle.is_framed, f"{target} is a framed 2-handle", move)
    conditions.check(
        handle.framing == 0,
        f"{target} is 0-framed",
        move,
        detail=f"framing {handle.framing}",
    )
    conditions.check(
        _d3_column_is_zero(X, target), f"no 3-handle runs over {target}", move
    )

    if knot is not None:
        kind, label = "slice", knot
    elif handle.knot is not None and not handle.unknot:
        kind, label = "slice", handle.knot
    else:
        kind, label = "dotted", None

    LOGGER.debug("putting a dot on %s (%s)", target, kind)
    structure = _replace_handle(X, target, kind=kind, framing=None, knot=label)
    if X.d3 is not None:
        structure = structure.replace(
            d3=[{k: v for k, v in row.items() if k != target} for row in X.d3]
        )
    return structure


def _find_expansion_template(templates, summand):
    for template in templates:
        if summand in template["knots"]:
            return template

    raise UnsupportedKnotError(f"no slice 1-handle expansion stored for {summand!r}")


def _apply_expansion(X, target, template):
    label = X[target].knot
    dotted_id = template["dotted"].format(id=target)
    record = template["framed"]
    framed_id = record["id"].format(id=target)
    for new_id in (dotted_id, framed_id):
        if new_id in X:
            raise IllegalMoveError(f"handle id {new_id!r} is already taken", move="expand_slice")

    framed = Handle(
        id=framed_id,
        kind="framed",
        framing=record["framing"],
        links={k.format(id=target): v for k, v in record["links"].items()},
        knot=label,
        geometric_runs={
            k.format(id=target): v for k, v in record["geometric_runs"].items()
        },
    )
    handles = []
    for handle in X.handles:
        if handle.id == target:
            handles.append(handle.replace(kind="dotted", knot=None))
            handles.append(Handle(id=dotted_id, kind="dotted"))
            handles.append(framed)
        else:
            handles.append(handle)

    return X.replace(handles=handles)


def _template_oracle_cases(summand):
    label = f"{summand}#-{summand}"
    bare = HandleStructure([Handle(id="s", kind="slice", knot=label)])
    with_spectators = HandleStructure(
        [
            Handle(id="s", kind="slice", knot=label),
            Handle(id="k", kind="framed", framing=-1, links={"s": 2}),
            Handle(id="l", kind="framed", framing=0, links={"k": 1}),
        ]
    )
    return [bare, with_spectators]


@cache
def expansion_templates():
    """stored slice 1-handle expansions, validated against the invariants

    Raises
    ------
    TemplateError
        If a template changes any invariant of a test structure.
    """
    templates = load_template("slice_expansion.json")["templates"]
    for template in templates:
        for summand in template["knots"]:
            for X in _template_oracle_cases(summand):
                before = invariants(X)
                after = invariants(_apply_expansion(X, "s", template))
                differences = after.differences(before)
                if differences:
                    raise TemplateError(
                        f"expansion template for {summand!r} changes invariants: "
                        + format_error_message(differences, "expect")
                    )

    return templates


@register_move("expand_slice")
def expand_slice(X, target, *, conditions=None):
    """draw a slice 1-handle ``K#-K`` as two dotted circles and a 2-handle"""
    move = "expand_slice"
    conditions = _conditions(conditions)
    _require(X, [target], move)
    conditions.check(
        X[target].kind == "slice",
        f"{target} is a slice 1-handle",
        move,
        detail=f"{target} is {X[target].kind}",
    )

    summand = slice_summand(X[target].knot)
    template = _find_expansion_template(expansion_templates(), summand)
    conditions.assume(
        f"{target} is the slice 1-handle of {canonical_name(X[target].knot)} "
        "drawn as the stored expansion"
    )

    LOGGER.debug("expanding slice 1-handle %s (%s)", target, summand)
    return _apply_expansion(X, target, template)


@register_move("add_cancelling_pair")
def add_cancelling_pair(X, kind, ids=None, *, conditions=None):
    """introduce a cancelling 1-2 or 2-3 pair"""
    move = "add_cancelling_pair"
    conditions = _conditions(conditions)
    if kind not in ("1-2", "2-3"):
        raise ValidationError(f"kind must be '1-2' or '2-3', got {kind!r}", field="kind")

    if kind == "1-2":
        if ids is None:
            dotted_id = _fresh_id(X, "c", suffixes=("", "_h"))
            ids = [dotted_id, f"{dotted_id}_h"]
        dotted_id, framed_id = ids
        for new_id in ids:
            conditions.check(new_id not in X, f"{new_id} is a new handle id", move)

        new = (
            Handle(id=dotted_id, kind="dotted"),
            Handle(
                id=framed_id,
                kind="framed",
                framing=0,
                links={dotted_id: 1},
                unknot=True,
                geometric_runs={dotted_id: 1},
            ),
        )
        LOGGER.debug("adding cancelling 1-2 pair %s, %s", dotted_id, framed_id)
        return X.replace(handles=X.handles + new)

    (framed_id,) = ids if ids is not None else [_fresh_id(X, "z")]
    conditions.check(framed_id not in X, f"{framed_id} is a new handle id", move)

    rows = [dict(row) for row in X.d3] if X.d3 is not None else [{}] * X.three_handles
    rows.append({framed_id: 1})
    new = Handle(id=framed_id, kind="framed", framing=0, unknot=True)

    LOGGER.debug("adding cancelling 2-3 pair %s", framed_id)
    return X.replace(
        handles=X.handles + (new,), three_handles=X.three_handles + 1, d3=rows
    )


def apply_assertions(X, records, conditions=None):
    """set asserted geometric flags, recording each as an asserted condition"""
    conditions = _conditions(conditions)
    for record in records:
        if not isinstance(record, dict) or "handle" not in record:
            raise ValidationError(f"invalid assertion {record!r}", field="assert")

        unknown = sorted(set(record) - {"handle", "unknot", "geometric_runs"})
        if unknown:
            raise ValidationError(f"unknown assertion fields {unknown}", field="assert")

        handle_id = record["handle"]
        if handle_id not in X:
            raise ValidationError(
                f"assertion names unknown handle {handle_id!r}", field="assert"
            )

        changes = {}
        if "unknot" in record:
            changes["unknot"] = bool(record["unknot"])
            conditions.assume(
                f"{handle_id} is {'an unknot' if record['unknot'] else 'knotted'}"
            )
        if "geometric_runs" in record:
            runs = dict(X[handle_id].geometric_runs)
            for other, count in sorted(record["geometric_runs"].items()):
                runs[other] = count
                conditions.assume(
                    f"{handle_id} runs geometrically {count} time(s) over {other}"
                )
            changes["geometric_runs"] = runs

        X = _replace_handle(X, handle_id, **changes)

    return X


def apply_move(X, record, conditions=None):
    """apply a move record ``{"op": name, **operands}``"""
    record = dict(record)
    op = record.pop("op", None)
    try:
        func = moves_registry[op]
    except KeyError:
        raise ValidationError(
            f"unknown move {op!r}, known moves: {sorted(moves_registry)}", field="op"
        ) from None

    for name in cosmetic_fields:
        record.pop(name, None)
    assertions = record.pop("assert", [])

    try:
        inspect.signature(func).bind(X, **record)
    except TypeError as e:
        raise ValidationError(f"invalid operands for {op}: {e}") from e

    conditions = _conditions(conditions)
    X = apply_assertions(X, assertions, conditions)
    return func(X, **record, conditions=conditions)


@dataclass(frozen=True)
class Step:
    move: dict
    verified: tuple = ()
    asserted: tuple = ()

    def to_dict(self):
        return {
            "move": self.move,
            "verified": list(self.verified),
            "asserted": list(self.asserted),
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            move=data["move"],
            verified=tuple(data.get("verified", ())),
            asserted=tuple(data.get("asserted", ())),
        )


@dataclass(frozen=True)
class Certificate:
    """record of a verified move sequence

    Conditions checked on the algebraic data are listed under ``verified``,
    geometric facts taken on trust under ``asserted``.
    """

    steps: tuple
    initial: InvariantSummary
    final: InvariantSummary
    expected: dict = None
    assertions: tuple = ()
    assumed: tuple = ()

    @property
    def verified(self):
        return [condition for step in self.steps for condition in step.verified]

    @property
    def asserted(self):
        return list(self.assumed) + [
            condition for step in self.steps for condition in step.asserted
        ]

    def to_dict(self):
        return {
            "steps": [step.to_dict() for step in self.steps],
            "initial": self.initial.to_dict(),
            "final": self.final.to_dict(),
            "expected": self.expected,
            "assertions": list(self.assertions),
            "assumed": list(self.assumed),
            "verified": self.verified,
            "asserted": self.asserted,
        }

    @classmethod
    def from_dict(cls, data):
        steps = tuple(Step.from_dict(step) for step in data["steps"])
        return cls(
            steps=steps,
            initial=InvariantSummary.from_dict(data["initial"]),
            final=InvariantSummary.from_dict(data["final"]),
            expected=data.get("expected"),
            assertions=tuple(data.get("assertions", ())),
            assumed=tuple(data.get("assumed", ())),
        )

    def replay(self, X0):
        """verify the recorded moves again, starting from ``X0``"""
        return verify_script(
            X0,
            [step.move for step in self.steps],
            expected=self.expected,
            assertions=list(self.assertions),
        )


@dataclass
class MoveScript:
    start: HandleStructure
    moves: list = field(default_factory=list)
    expect: dict = None
    assertions: list = field(default_factory=list)
    path: str = None

    @classmethod
    def from_dict(cls, data, base_dir=None, path=None):
        if not isinstance(data, dict):
            raise ValidationError("a move script is a JSON object", path=path)

        errors = {}
        moves = data.get("moves", [])
        if not isinstance(moves, list):
            errors["moves"] = "expected a list of move records"
            moves = []
        for index, record in enumerate(moves):
            if not isinstance(record, dict):
                errors[f"moves[{index}]"] = f"expected a mapping, got {record!r}"
            elif record.get("op") not in moves_registry:
                errors[f"moves[{index}].op"] = (
                    f"unknown move {record.get('op')!r}, "
                    f"known moves: {sorted(moves_registry)}"
                )

        expect = data.get("expect")
        if expect is not None and not isinstance(expect, dict):
            errors["expect"] = "expected a mapping of invariants"
        assertions = data.get("assert", [])
        if not isinstance(assertions, list):
            errors["assert"] = "expected a list of assertions"
        unknown = sorted(set(data) - {"start", "moves", "expect", "assert", "description"})
        if unknown:
            errors["fields"] = f"unknown fields {unknown}"
        if errors:
            raise ValidationError(format_error_message(errors, "parse"), path=path)

        start = _resolve_start(data.get("start"), base_dir, path)
        return cls(
            start=start, moves=moves, expect=expect, assertions=assertions, path=path
        )

    @classmethod
    def load(cls, path):
        path = pathlib.Path(path)
        try:
            with open(path) as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            raise ValidationError(
                f"line {e.lineno}, column {e.colno}: {e.msg}", path=path
            ) from e

        return cls.from_dict(data, base_dir=path.parent, path=str(path))


def _resolve_start(start, base_dir, path):
    if isinstance(start, dict):
        return HandleStructure.from_dict(start)
    if not isinstance(start, str):
        raise ValidationError(
            f"expected a file name or a structure, got {start!r}",
            path=path,
            field="start",
        )

    candidates = []
    if base_dir is not None:
        candidates.append(pathlib.Path(base_dir) / start)
    candidates.append(corpus_dir() / start)
    for candidate in candidates:
        if candidate.is_file():
            return HandleStructure.load(candidate)

    raise ValidationError(
        f"cannot find {start!r} in {[str(c.parent) for c in candidates]}",
        path=path,
        field="start",
    )


def verify_script(X0, script, expected=None, *, assertions=None):
    """apply a move sequence, failing fast, and certify the result

    Parameters
    ----------
    X0 : HandleStructure
        The starting structure.
    script : MoveScript or sequence of dict
        The moves to apply.
    expected : mapping or InvariantSummary, optional
        Invariants the final structure must have. Defaults to the
        expectation of ``script``.
    assertions : sequence of dict, optional
        Geometric assertions applied before the first move. Defaults to the
        assertions of ``script``.

    Returns
    -------
    Certificate

    Raises
    ------
    IllegalMoveError
        With the index of the failing step.
    InvariantMismatchError
        If the final invariants differ from ``expected``.
    """
    if isinstance(script, MoveScript):
        moves = script.moves
        expected = expected if expected is not None else script.expect
        assertions = assertions if assertions is not None else script.assertions
    else:
        moves = list(script)
    if isinstance(expected, InvariantSummary):
        expected = expected.to_dict()

    initial = invariants(X0)
    top = Conditions()
    current = apply_assertions(X0, assertions or [], top)

    steps = []
    previous = initial
    for index, record in enumerate(moves):
        conditions = Conditions()
        op = record.get("op") if isinstance(record, dict) else None
        try:
            current = apply_move(current, record, conditions=conditions)
        except IllegalMoveError as e:
            raise IllegalMoveError(e.reason, move=op, step=index) from e

        summary = invariants(current)
        LOGGER.debug(
            "step %d (%s): chi %+d, sigma %+d",
            index,
            op,
            summary.chi - previous.chi,
            summary.sigma - previous.sigma,
        )
        previous = summary
        steps.append(
            Step(
                move=dict(record),
                verified=tuple(conditions.verified),
                asserted=tuple(conditions.asserted),
            )
        )

    final = previous
    if expected:
        differences = final.differences(expected)
        if differences:
            raise InvariantMismatchError(
                format_error_message(differences, "expect"),
                expected=expected,
                actual=final.to_dict(),
            )

    LOGGER.info("verified %d moves", len(steps))
    return Certificate(
        steps=tuple(steps),
        initial=initial,
        final=final,
        expected=expected,
        assertions=tuple(assertions or ()),
        assumed=tuple(top.asserted),
    )


def random_structure(rng, n_handles=8, max_link=2):
    """random structure of dotted circles and framed handles

    Dotted circles are unlinked from each other.
    """
    n_dotted = int(rng.integers(0, n_handles // 2 + 1))
    ids = [f"d{i}" for i in range(1, n_dotted + 1)] + [
        f"h{i}" for i in range(1, n_handles - n_dotted + 1)
    ]

    links = {id_: {} for id_ in ids}
    for index, a in enumerate(ids):
        for b in ids[index + 1 :]:
            if a.startswith("d") and b.startswith("d"):
                continue
            value = int(rng.integers(-max_link, max_link + 1))
            if value:
                links[a][b] = value
                links[b][a] = value

    handles = [
        Handle(id=id_, kind="dotted", links=links[id_])
        if id_.startswith("d")
        else Handle(
            id=id_, kind="framed", framing=int(rng.integers(-3, 4)), links=links[id_]
        )
        for id_ in ids
    ]
    return HandleStructure(handles)


def _move_candidates(X):
    framed = X.framed_ids
    candidates = [
        {"op": "blow_up", "sign": 1},
        {"op": "blow_up", "sign": -1},
        {"op": "add_cancelling_pair", "kind": "1-2"},
        {"op": "add_cancelling_pair", "kind": "2-3"},
    ]
    candidates.extend(
        {"op": "slide", "handle": a, "over": b, "sign": sign}
        for a in framed
        for b in framed
        if a != b
        for sign in (1, -1)
    )
    candidates.extend({"op": "surger_dot", "target": d} for d in X.dotted_ids)
    for h in framed:
        handle = X[h]
        zero_column = _d3_column_is_zero(X, h)
        if handle.framing == 0 and zero_column:
            candidates.append({"op": "add_dot", "target": h})
        if handle.framing in (1, -1) and not handle.links and zero_column:
            candidates.append({"op": "blow_down", "target": h})
        if (
            handle.framing == 0
            and not handle.links
            and X.d3 is not None
            and any(abs(row.get(h, 0)) == 1 for row in X.d3)
        ):
            candidates.append({"op": "cancel_23", "target": h})

        for d in X.dotted_ids:
            if X[d].kind != "dotted" or abs(handle.link(d)) != 1:
                continue
            if handle.geometric_runs.get(d, 1) != 1:
                continue
            if any(X.link(d, e) for e in X.dotted_ids if e != d):
                continue
            involved = [h] + [k for k in framed if X.link(k, d)]
            if all(_d3_column_is_zero(X, k) for k in involved):
                candidates.append({"op": "cancel_12", "dotted": d, "framed": h})

    return candidates


def random_legal_move(X, rng):
    """a move record whose algebraic preconditions hold on ``X``"""
    candidates = _move_candidates(X)
    return candidates[int(rng.integers(len(candidates)))]


def invariant_deltas(before, after):
    return {"chi": after.chi - before.chi, "sigma": after.sigma - before.sigma}
