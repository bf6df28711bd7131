"""Handle structures of compact 4-manifolds and their invariants.

A structure consists of one 0-handle, dotted circles (1-handles, including
slice 1-handles), framed 2-handles and a number of 3- and 4-handles. Only
the algebraic data is stored: framings, algebraic linking numbers and
optional asserted geometric flags.
"""
import json
import logging
from dataclasses import dataclass, field

import numpy as np
import sympy
import xarray as xr

from .errors import ValidationError, format_error_message

LOGGER = logging.getLogger(__name__)

handle_kinds = ("dotted", "slice", "framed")
one_handle_kinds = ("dotted", "slice")


def integer_matrix(data, shape=None):
    """exact integer matrix as a numpy object array"""
    array = np.array(data, dtype=object)
    if array.size == 0:
        if array.ndim == 2:
            return np.zeros(array.shape, dtype=object)
        if shape is not None:
            return np.zeros(shape, dtype=object)
    if array.ndim != 2:
        raise ValidationError(f"expected a 2-dimensional matrix, got {data!r}")

    for value in array.flat:
        if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
            raise ValidationError(f"matrix entries must be integers, got {value!r}")

    return np.vectorize(int, otypes=[object])(array) if array.size else array


def _nonzero_min_abs(matrix, s):
    position = (None, None)
    minimum = None
    rows, columns = matrix.shape
    for i in range(s, rows):
        for j in range(s, columns):
            if matrix[i, j] == 0:
                continue
            if minimum is None or abs(matrix[i, j]) < minimum:
                position = (i, j)
                minimum = abs(matrix[i, j])

    return position


class _SmithReduction:
    def __init__(self, matrix):
        self.matrix = matrix.copy()
        rows, columns = matrix.shape
        self.left = np.eye(rows, dtype=int).astype(object)
        self.right = np.eye(columns, dtype=int).astype(object)

    def _swap_rows(self, a, b):
        self.left[[a, b]] = self.left[[b, a]]
        self.matrix[[a, b]] = self.matrix[[b, a]]

    def _swap_columns(self, a, b):
        self.right[:, [a, b]] = self.right[:, [b, a]]
        self.matrix[:, [a, b]] = self.matrix[:, [b, a]]

    def _add_row(self, target, source, k):
        self.left[target] += self.left[source] * k
        self.matrix[target] += self.matrix[source] * k

    def _add_column(self, target, source, k):
        self.right[:, target] += self.right[:, source] * k
        self.matrix[:, target] += self.matrix[:, source] * k

    def _negate_row(self, axis):
        self.left[axis] *= -1
        self.matrix[axis] *= -1

    def _find_non_divisible_row(self, s):
        pivot = self.matrix[s, s]
        rows, columns = self.matrix.shape
        for i in range(s + 1, rows):
            for j in range(s + 1, columns):
                if self.matrix[i, j] % pivot != 0:
                    return i
        return None

    def reduce(self):
        s = 0
        while s < min(self.matrix.shape):
            row, column = _nonzero_min_abs(self.matrix, s)
            if row is None:
                break

            self._swap_rows(s, row)
            self._swap_columns(s, column)

            pivot = self.matrix[s, s]
            for i in range(s + 1, self.matrix.shape[0]):
                if self.matrix[i, s] != 0:
                    self._add_row(i, s, -(self.matrix[i, s] // pivot))
            for j in range(s + 1, self.matrix.shape[1]):
                if self.matrix[s, j] != 0:
                    self._add_column(j, s, -(self.matrix[s, j] // pivot))

            if any(self.matrix[s + 1 :, s]) or any(self.matrix[s, s + 1 :]):
                continue

            non_divisible = self._find_non_divisible_row(s)
            if non_divisible is not None:
                self._add_row(s, non_divisible, 1)
                continue

            if self.matrix[s, s] < 0:
                self._negate_row(s)
            s += 1

        return self.matrix, self.left, self.right


def smith_normal_form(M):
    """Smith normal form of an integer matrix

    Parameters
    ----------
    M : array-like of int, shape (m, n)

    Returns
    -------
    diagonal : list of int
        The ``min(m, n)`` diagonal entries, nonnegative and each dividing
        the next (zeros last).
    left, right : numpy.ndarray
        Unimodular object arrays with ``left @ M @ right == D``.
    """
    matrix = integer_matrix(M)
    D, left, right = _SmithReduction(matrix).reduce()
    diagonal = [int(D[i, i]) for i in range(min(D.shape))]

    return diagonal, left, right


def _exact_inverse(matrix):
    if matrix.shape[0] == 0:
        return matrix.copy()

    inverse = sympy.Matrix(matrix.tolist()).inv()
    return np.array(
        [[int(value) for value in row] for row in inverse.tolist()], dtype=object
    ).reshape(matrix.shape)


def kernel_basis(A, n_columns):
    """basis of the integer kernel of ``A`` as the columns of a matrix

    The kernel lattice is saturated: it is spanned by trailing columns of
    the right Smith transform.
    """
    matrix = integer_matrix(A, shape=(0, n_columns))
    diagonal, _, right = smith_normal_form(matrix)
    rank = sum(1 for value in diagonal if value != 0)

    return right[:, rank:], right


@dataclass(frozen=True)
class AbelianGroup:
    """finitely generated abelian group Z^r ⊕ Z/t₁ ⊕ … ⊕ Z/tₖ"""

    free_rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValidationError(f"negative free rank: {self.free_rank}")

        torsion = tuple(int(value) for value in self.torsion)
        if any(value < 2 for value in torsion):
            raise ValidationError(f"torsion coefficients must be ≥ 2: {list(torsion)}")
        if any(b % a != 0 for a, b in zip(torsion, torsion[1:])):
            raise ValidationError(
                f"torsion coefficients must divide each other: {list(torsion)}"
            )
        object.__setattr__(self, "torsion", torsion)

    @classmethod
    def from_diagonal(cls, diagonal, n_generators):
        """cokernel of a matrix with the given Smith diagonal"""
        rank = sum(1 for value in diagonal if value != 0)
        torsion = tuple(abs(value) for value in diagonal if abs(value) > 1)

        return cls(free_rank=n_generators - rank, torsion=torsion)

    @classmethod
    def from_dict(cls, data):
        try:
            return cls(free_rank=data["free_rank"], torsion=tuple(data.get("torsion", ())))
        except (KeyError, TypeError) as e:
            raise ValidationError(f"invalid abelian group: {data!r}") from e

    def to_dict(self):
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{value}" for value in self.torsion)

        return " + ".join(parts) if parts else "0"


def cokernel(A, n_rows):
    """cokernel of ``A: Z^n → Z^m`` with ``m = n_rows``"""
    matrix = integer_matrix(A, shape=(n_rows, 0))
    diagonal, _, _ = smith_normal_form(matrix)
    return AbelianGroup.from_diagonal(diagonal, n_rows)


def subquotient(A, B, n):
    """ker A / im B for ``A: Z^n → Z^m`` and ``B: Z^k → Z^n``

    Raises
    ------
    ValidationError
        If ``A @ B`` is not zero.
    """
    A = integer_matrix(A, shape=(0, n))
    B = integer_matrix(B, shape=(n, 0))
    if (A.dot(B) if A.size and B.size else np.zeros((0, 0))).any():
        raise ValidationError("the image is not contained in the kernel")

    kernel, right = kernel_basis(A, n)
    rank = n - kernel.shape[1]
    if B.shape[1] == 0:
        return AbelianGroup(free_rank=kernel.shape[1])

    coordinates = _exact_inverse(right).dot(B)[rank:]
    return cokernel(coordinates, kernel.shape[1])


def signature_of(Q):
    """signature of a symmetric integer matrix by rational congruence"""
    A = sympy.Matrix(integer_matrix(Q, shape=(0, 0)).tolist())
    positive = negative = 0
    while A.rows:
        n = A.rows
        index = next((i for i in range(n) if A[i, i] != 0), None)
        if index is None:
            pair = next(
                ((i, j) for i in range(n) for j in range(i + 1, n) if A[i, j] != 0),
                None,
            )
            if pair is None:
                break

            i, j = pair
            P = sympy.eye(n)
            P[j, i] = 1
            A = P.T * A * P
            index = i

        pivot = A[index, index]
        if pivot > 0:
            positive += 1
        else:
            negative += 1

        column = A[:, index]
        A = A - column * column.T / pivot
        A.row_del(index)
        A.col_del(index)

    return positive - negative


@dataclass(frozen=True)
class Handle:
    """a 1-handle (dotted circle or slice 1-handle) or a framed 2-handle

    ``links`` maps other handle ids to algebraic linking numbers; zero
    entries are dropped. ``unknot`` and ``geometric_runs`` are asserted
    geometric facts that the algebraic data cannot confirm.
    """

    id: str
    kind: str
    framing: int = None
    links: dict = field(default_factory=dict)
    knot: str = None
    unknot: bool = False
    geometric_runs: dict = field(default_factory=dict)

    @property
    def is_dotted(self):
        return self.kind in one_handle_kinds

    @property
    def is_framed(self):
        return self.kind == "framed"

    def link(self, other):
        return self.links.get(other, 0)

    def replace(self, **changes):
        data = {
            "id": self.id,
            "kind": self.kind,
            "framing": self.framing,
            "links": dict(self.links),
            "knot": self.knot,
            "unknot": self.unknot,
            "geometric_runs": dict(self.geometric_runs),
        }
        data.update(changes)
        return Handle(**data)

    def to_dict(self):
        data = {"id": self.id, "kind": self.kind}
        if self.framing is not None:
            data["framing"] = self.framing
        if self.knot is not None:
            data["knot"] = self.knot
        if self.links:
            data["links"] = dict(sorted(self.links.items()))

        flags = {}
        if self.unknot:
            flags["unknot"] = True
        if self.geometric_runs:
            flags["geometric_runs"] = dict(sorted(self.geometric_runs.items()))
        if flags:
            data["flags"] = flags

        return data


def _is_integer(value):
    return isinstance(value, (int, np.integer)) and not isinstance(value, bool)


def _parse_handle(record):
    """parse a handle record, returning the handle and a mapping of errors"""
    errors = {}
    if not isinstance(record, dict):
        return None, {"record": f"expected a mapping, got {record!r}"}

    handle_id = record.get("id")
    if not isinstance(handle_id, str) or not handle_id:
        errors["id"] = f"expected a non-empty string, got {handle_id!r}"

    kind = record.get("kind")
    if kind not in handle_kinds:
        errors["kind"] = f"expected one of {list(handle_kinds)}, got {kind!r}"

    framing = record.get("framing")
    if kind == "framed" and not _is_integer(framing):
        errors["framing"] = f"framed handles need an integer framing, got {framing!r}"
    elif kind in one_handle_kinds and framing is not None:
        errors["framing"] = "dotted handles carry no framing"

    knot = record.get("knot")
    if kind == "slice" and not isinstance(knot, str):
        errors["knot"] = "slice 1-handles need a knot label"
    elif knot is not None and not isinstance(knot, str):
        errors["knot"] = f"expected a string, got {knot!r}"

    links = record.get("links", {})
    if not isinstance(links, dict) or not all(
        isinstance(key, str) and _is_integer(value) for key, value in links.items()
    ):
        errors["links"] = f"expected a mapping of ids to integers, got {links!r}"
        links = {}

    flags = record.get("flags", {})
    unknot = flags.get("unknot", False) if isinstance(flags, dict) else None
    runs = flags.get("geometric_runs", {}) if isinstance(flags, dict) else None
    if not isinstance(unknot, bool):
        errors["flags.unknot"] = f"expected a boolean, got {unknot!r}"
        unknot = False
    if not isinstance(runs, dict) or not all(
        isinstance(key, str) and _is_integer(value) and value >= 0
        for key, value in runs.items()
    ):
        errors["flags.geometric_runs"] = (
            f"expected a mapping of ids to nonnegative integers, got {runs!r}"
        )
        runs = {}

    unknown = sorted(
        set(record) - {"id", "kind", "framing", "knot", "links", "flags"}
    )
    if unknown:
        errors["fields"] = f"unknown fields {unknown}"

    if errors:
        return None, errors

    handle = Handle(
        id=handle_id,
        kind=kind,
        framing=int(framing) if framing is not None else None,
        links={key: int(value) for key, value in links.items()},
        knot=knot,
        unknot=unknot,
        geometric_runs={key: int(value) for key, value in runs.items()},
    )
    return handle, {}


def _symmetrize_links(handles):
    ids = {handle.id for handle in handles}
    given = {}
    contradictions = {}
    unknown = {}
    for handle in handles:
        for other, value in handle.links.items():
            if other not in ids:
                unknown[handle.id] = f"links to unknown handle {other!r}"
                continue
            if other == handle.id:
                unknown[handle.id] = "links to itself; use the framing instead"
                continue

            key = tuple(sorted((handle.id, other)))
            if key in given and given[key] != value:
                contradictions[key] = (given[key], value)
            given.setdefault(key, value)

    if unknown:
        raise ValidationError(format_error_message(unknown, "parse"))
    if contradictions:
        raise ValidationError(format_error_message(contradictions, "links"))

    links = {handle.id: {} for handle in handles}
    for (a, b), value in given.items():
        if value != 0:
            links[a][b] = value
            links[b][a] = value

    return [handle.replace(links=links[handle.id]) for handle in handles]


class HandleStructure:
    """handle decomposition of a compact, connected 4-manifold

    Parameters
    ----------
    handles : sequence of Handle
        The 1-handles and 2-handles, in diagram order.
    three_handles, four_handles : int, default: 0
        Number of 3- and 4-handles.
    d3 : sequence, optional
        Boundary map of the 3-handles: one row per 3-handle, either a
        mapping of framed ids to coefficients or a list of coefficients over
        the framed handles in order. Treated as zero when omitted.
    closed : bool, default: False
        Whether the structure describes a closed manifold.
    monodromy : array-like, optional
        Monodromy of the boundary torus bundle, informational only.
    marking : mapping, optional
        Handle ids of an embedded T²×B², see :py:func:`kirbykit.surgery.mark_torus`.
    name : str, optional
    """

    def __init__(
        self,
        handles=(),
        three_handles=0,
        four_handles=0,
        d3=None,
        closed=False,
        monodromy=None,
        marking=None,
        name=None,
    ):
        handles = list(handles)
        ids = [handle.id for handle in handles]
        duplicates = sorted({id_ for id_ in ids if ids.count(id_) > 1})
        if duplicates:
            raise ValidationError(f"duplicate handle ids: {duplicates}")

        for count_name, count in (
            ("three_handles", three_handles),
            ("four_handles", four_handles),
        ):
            if not _is_integer(count) or count < 0:
                raise ValidationError(
                    f"expected a nonnegative integer, got {count!r}", field=count_name
                )

        self.handles = tuple(_symmetrize_links(handles))
        self.three_handles = int(three_handles)
        self.four_handles = int(four_handles)
        self.closed = bool(closed)
        self.monodromy = (
            None if monodromy is None else integer_matrix(monodromy).tolist()
        )
        self.name = name
        self._index = {handle.id: handle for handle in self.handles}
        self.marking = self._normalize_marking(marking)

        self._validate_flags()
        self.d3 = self._normalize_d3(d3)

    def _validate_flags(self):
        errors = {}
        for handle in self.handles:
            if handle.is_dotted and handle.framing is not None:
                errors[handle.id] = "dotted handles carry no framing"
            for other, runs in handle.geometric_runs.items():
                if other not in self._index:
                    errors[handle.id] = f"geometric runs over unknown handle {other!r}"
                elif runs < abs(handle.link(other)) or (runs - handle.link(other)) % 2:
                    errors[handle.id] = (
                        f"geometric runs {runs} over {other!r} are incompatible "
                        f"with algebraic linking {handle.link(other)}"
                    )

        if errors:
            raise ValidationError(format_error_message(errors, "parse"))

    def _normalize_marking(self, marking):
        if marking is None:
            return None
        if not isinstance(marking, dict):
            raise ValidationError(f"expected a mapping, got {marking!r}", field="marking")

        named = []
        for key, value in marking.items():
            named.extend(value if key == "cusp_handles" else [value])
        missing = sorted(str(id_) for id_ in named if id_ not in self._index)
        if missing:
            raise ValidationError(f"unknown handles {missing}", field="marking")

        return dict(marking)

    def _normalize_d3(self, d3):
        if d3 is None:
            return None

        framed = self.framed_ids
        rows = []
        for index, row in enumerate(d3):
            if isinstance(row, dict):
                unknown = sorted(set(row) - set(framed))
                if unknown:
                    raise ValidationError(
                        f"row {index} names handles {unknown} that are not framed",
                        field="d3",
                    )
                values = row
            else:
                if len(row) != len(framed):
                    raise ValidationError(
                        f"row {index} has {len(row)} entries for {len(framed)} "
                        "framed handles",
                        field="d3",
                    )
                values = dict(zip(framed, row))

            if not all(_is_integer(value) for value in values.values()):
                raise ValidationError(f"row {index} is not integral", field="d3")
            rows.append({key: int(value) for key, value in values.items() if value})

        if len(rows) != self.three_handles:
            raise ValidationError(
                f"{len(rows)} rows for {self.three_handles} 3-handles", field="d3"
            )

        matrix = self._full_linking_matrix()
        for index, row in enumerate(rows):
            vector = np.array([row.get(id_, 0) for id_ in self.ids], dtype=object)
            if len(vector) and matrix.dot(vector).any():
                raise ValidationError(
                    f"row {index} is not a cycle of the linking form, the 3-handle "
                    "would not be attached along a sphere",
                    field="d3",
                )

        return tuple(rows)

    @property
    def ids(self):
        return [handle.id for handle in self.handles]

    @property
    def dotted_ids(self):
        return [handle.id for handle in self.handles if handle.is_dotted]

    @property
    def framed_ids(self):
        return [handle.id for handle in self.handles if handle.is_framed]

    def __contains__(self, handle_id):
        return handle_id in self._index

    def __getitem__(self, handle_id):
        try:
            return self._index[handle_id]
        except KeyError:
            raise KeyError(f"no handle named {handle_id!r}") from None

    def link(self, a, b):
        return self[a].link(b)

    def replace(self, handles=None, **changes):
        """copy of the structure with some fields replaced"""
        data = {
            "handles": self.handles if handles is None else handles,
            "three_handles": self.three_handles,
            "four_handles": self.four_handles,
            "d3": None if self.d3 is None else [dict(row) for row in self.d3],
            "closed": self.closed,
            "monodromy": self.monodromy,
            "marking": self.marking,
            "name": self.name,
        }
        data.update(changes)
        return type(self)(**data)

    def _full_linking_matrix(self):
        n = len(self.handles)
        matrix = np.zeros((n, n), dtype=object)
        for i, a in enumerate(self.handles):
            for j, b in enumerate(self.handles):
                if i == j:
                    matrix[i, j] = a.framing if a.is_framed else 0
                else:
                    matrix[i, j] = a.link(b.id)

        return matrix

    def boundary_map(self):
        """∂₂ as a (dotted × framed) object array of linking numbers"""
        return np.array(
            [[self.link(h, d) for h in self.framed_ids] for d in self.dotted_ids],
            dtype=object,
        ).reshape(len(self.dotted_ids), len(self.framed_ids))

    def d3_matrix(self):
        """d3 as a (3-handles × framed) object array, zero when omitted"""
        framed = self.framed_ids
        rows = self.d3 if self.d3 is not None else [{}] * self.three_handles
        return np.array(
            [[row.get(h, 0) for h in framed] for row in rows], dtype=object
        ).reshape(len(rows), len(framed))

    @classmethod
    def from_dict(cls, data, name=None):
        if not isinstance(data, dict):
            raise ValidationError("a handle structure is a JSON object")

        records = data.get("handles", [])
        if not isinstance(records, list):
            raise ValidationError("expected a list", field="handles")

        errors = {}
        handles = []
        for index, record in enumerate(records):
            handle, handle_errors = _parse_handle(record)
            for key, message in handle_errors.items():
                errors[f"handles[{index}].{key}"] = message
            if handle is not None:
                handles.append(handle)

        unknown = sorted(
            set(data)
            - {
                "handles",
                "three_handles",
                "four_handles",
                "d3",
                "closed",
                "monodromy",
                "marking",
                "name",
            }
        )
        if unknown:
            errors["fields"] = f"unknown fields {unknown}"
        if errors:
            raise ValidationError(format_error_message(errors, "parse"))

        return cls(
            handles,
            three_handles=data.get("three_handles", 0),
            four_handles=data.get("four_handles", 0),
            d3=data.get("d3"),
            closed=data.get("closed", False),
            monodromy=data.get("monodromy"),
            marking=data.get("marking"),
            name=data.get("name", name),
        )

    def to_dict(self):
        data = {}
        if self.name is not None:
            data["name"] = self.name
        data["handles"] = [handle.to_dict() for handle in self.handles]
        data["three_handles"] = self.three_handles
        data["four_handles"] = self.four_handles
        if self.d3 is not None:
            data["d3"] = self.d3_matrix().tolist()
        if self.closed:
            data["closed"] = True
        if self.monodromy is not None:
            data["monodromy"] = self.monodromy
        if self.marking is not None:
            data["marking"] = self.marking

        return data

    @classmethod
    def loads(cls, text, path=None, name=None):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ValidationError(
                f"line {e.lineno}, column {e.colno}: {e.msg}", path=path
            ) from e

        try:
            return cls.from_dict(data, name=name)
        except ValidationError as e:
            raise ValidationError(str(e), path=path, field=e.field) from e

    @classmethod
    def load(cls, path):
        with open(path) as f:
            text = f.read()

        LOGGER.debug("loading handle structure from %s", path)
        stem = str(path).replace("\\", "/").rsplit("/", 1)[-1].rsplit(".", 1)[0]
        return cls.loads(text, path=path, name=stem)

    def dumps(self):
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def dump(self, path):
        with open(path, "w") as f:
            f.write(self.dumps())

    def __eq__(self, other):
        if not isinstance(other, HandleStructure):
            return NotImplemented

        this = self.to_dict()
        that = other.to_dict()
        this.pop("name", None)
        that.pop("name", None)
        return this == that

    __hash__ = None

    def __repr__(self):
        kinds = ", ".join(f"{h.id}:{h.kind}" for h in self.handles)
        return (
            f"<HandleStructure {self.name or ''} [{kinds}] "
            f"3-handles={self.three_handles} 4-handles={self.four_handles}>"
        )


def euler_characteristic(X):
    n_one = len(X.dotted_ids)
    n_two = len(X.framed_ids)
    return 1 - n_one + n_two - X.three_handles + X.four_handles


def linking_matrix(X):
    """symmetric linking matrix with handle-id coordinates

    Framed handles carry their framing on the diagonal, dotted handles 0.
    """
    ids = X.ids
    return xr.DataArray(
        X._full_linking_matrix().astype("int64").reshape(len(ids), len(ids)),
        dims=("handle", "handle_"),
        coords={"handle": ids, "handle_": ids},
        attrs={"kind": [X[id_].kind for id_ in ids]},
    )


def homology(X):
    """H₁ and H₂ from the cellular chain complex

    Returns
    -------
    h1, h2 : AbelianGroup
    """
    boundary = X.boundary_map()
    n_framed = len(X.framed_ids)

    h1 = cokernel(boundary, len(X.dotted_ids))
    h2 = subquotient(boundary, X.d3_matrix().T, n_framed)

    return h1, h2


def intersection_form(X):
    """linking form of the framed handles restricted to the classes of H₂"""
    framed = X.framed_ids
    kernel, _ = kernel_basis(X.boundary_map(), len(framed))
    form = np.array(
        [[X.link(a, b) if a != b else X[a].framing for b in framed] for a in framed],
        dtype=object,
    ).reshape(len(framed), len(framed))

    return kernel.T.dot(form).dot(kernel) if kernel.size else np.zeros(
        (kernel.shape[1], kernel.shape[1]), dtype=object
    )


def signature(X):
    return signature_of(intersection_form(X))


def boundary_h1(X):
    """H₁ of the boundary from the dot-to-zero surgery description

    3-handles attached along the spheres given by the rows of d3 cut the
    boundary further: the result is ker V / im L where ``L`` is the full
    linking matrix and ``V`` pairs with the 3-handle rows.
    """
    if X.closed:
        return AbelianGroup()

    n = len(X.handles)
    rows = X.d3 if X.d3 is not None else ()
    pairing = np.array(
        [[row.get(id_, 0) for id_ in X.ids] for row in rows], dtype=object
    ).reshape(len(rows), n)

    return subquotient(pairing, X._full_linking_matrix(), n)


def torus_bundle_h1(monodromy):
    """H₁ of the torus bundle over the circle with the given monodromy"""
    A = integer_matrix(monodromy)
    if A.shape != (2, 2):
        raise ValidationError(f"a torus monodromy is 2×2, got {A.shape}")

    fiber = cokernel(A - np.eye(2, dtype=int).astype(object), 2)
    return AbelianGroup(free_rank=fiber.free_rank + 1, torsion=fiber.torsion)


@dataclass(frozen=True)
class InvariantSummary:
    chi: int
    sigma: int
    h1: AbelianGroup
    h2: AbelianGroup
    boundary_h1: AbelianGroup = None

    fields = ("chi", "sigma", "h1", "h2", "boundary_h1")

    def to_dict(self):
        return {
            "chi": self.chi,
            "sigma": self.sigma,
            "h1": self.h1.to_dict(),
            "h2": self.h2.to_dict(),
            "boundary_h1": None
            if self.boundary_h1 is None
            else self.boundary_h1.to_dict(),
        }

    @classmethod
    def from_dict(cls, data):
        def group(value):
            return None if value is None else AbelianGroup.from_dict(value)

        try:
            return cls(
                chi=data["chi"],
                sigma=data["sigma"],
                h1=group(data["h1"]),
                h2=group(data["h2"]),
                boundary_h1=group(data.get("boundary_h1")),
            )
        except (KeyError, TypeError) as e:
            raise ValidationError(f"incomplete invariant summary: {data!r}") from e

    def differences(self, expected):
        """fields whose values differ from a (possibly partial) expectation

        Groups may be given as mappings or in their text form, like ``"Z^2"``.
        Returns a mapping of field name to ``(expected, actual)``.
        """
        actual = self.to_dict()
        if isinstance(expected, InvariantSummary):
            expected = expected.to_dict()

        unknown = sorted(set(expected) - set(self.fields))
        if unknown:
            raise ValidationError(f"unknown invariants {unknown}", field="expect")

        return {
            key: (_render(value), _render(actual[key]))
            for key, value in expected.items()
            if _render(value) != _render(actual[key])
        }

    def to_text(self):
        lines = [
            f"chi = {self.chi}",
            f"sigma = {self.sigma}",
            f"H1 = {self.h1}",
            f"H2 = {self.h2}",
        ]
        if self.boundary_h1 is not None:
            lines.append(f"H1(boundary) = {self.boundary_h1}")

        return "\n".join(lines)


def _render(value):
    if isinstance(value, dict) and "free_rank" in value:
        return str(AbelianGroup.from_dict(value))
    return str(value)


def invariants(X):
    """χ, σ, H₁, H₂ and H₁(∂), the latter omitted for closed structures"""
    h1, h2 = homology(X)
    return InvariantSummary(
        chi=euler_characteristic(X),
        sigma=signature(X),
        h1=h1,
        h2=h2,
        boundary_h1=None if X.closed else boundary_h1(X),
    )
