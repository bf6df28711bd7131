"""Knot diagrams, Seifert matrices and Alexander polynomials.

Diagrams are planar-diagram crossing codes. Each crossing lists four edge
labels counterclockwise starting from the incoming under-strand, so that
``arcs = [i, j, k, l]`` has ``k = i + 1`` along the orientation. The over
strand runs from ``l`` to ``j`` on positive crossings and from ``j`` to ``l``
on negative ones. Edges are numbered ``1..2c`` in the order they are
traversed.
"""
import itertools
import json
import logging
from collections import defaultdict
from dataclasses import dataclass

import numpy as np
import sympy
from sympy.polys.matrices import DomainMatrix

from .errors import UnsupportedKnotError, ValidationError
from .laurent import LaurentPoly, Monomial, lp_evaluate, lp_mul

LOGGER = logging.getLogger(__name__)

t = sympy.Symbol("t")

catalog_braids = {
    "unknot": ((), 1),
    "left-trefoil": ((-1, -1, -1), 2),
    "right-trefoil": ((1, 1, 1), 2),
    "figure-eight": ((1, -2, 1, -2), 3),
    "granny": ((-1, -1, -1, -2, -2, -2), 3),
    "square": ((-1, -1, -1, 2, 2, 2), 3),
}
catalog_aliases = {
    # the trefoil is drawn left handed in the complement presentation
    "trefoil": "left-trefoil",
    "4_1": "figure-eight",
    "3_1": "left-trefoil",
}


@dataclass(frozen=True)
class Crossing:
    arcs: tuple
    sign: int

    @property
    def under_in(self):
        return self.arcs[0]

    @property
    def under_out(self):
        return self.arcs[2]

    @property
    def over_in(self):
        return self.arcs[3] if self.sign > 0 else self.arcs[1]

    @property
    def over_out(self):
        return self.arcs[1] if self.sign > 0 else self.arcs[3]

    def is_outgoing(self, position):
        return position == 2 or position == (1 if self.sign > 0 else 3)

    def to_dict(self):
        return {"arcs": list(self.arcs), "sign": self.sign}


def _parse_crossing(record, index):
    if isinstance(record, Crossing):
        return record

    try:
        arcs = record["arcs"]
        sign = record["sign"]
    except (KeyError, TypeError) as e:
        raise ValidationError(
            f"crossing {index}: expected a mapping with 'arcs' and 'sign'"
        ) from e

    if len(arcs) != 4 or not all(
        isinstance(arc, (int, np.integer)) and not isinstance(arc, bool) for arc in arcs
    ):
        raise ValidationError(f"crossing {index}: 'arcs' must be four integers")
    if sign not in (1, -1) or isinstance(sign, bool):
        raise ValidationError(f"crossing {index}: 'sign' must be +1 or -1")

    return Crossing(arcs=tuple(int(arc) for arc in arcs), sign=int(sign))


class KnotDiagram:
    """oriented single-component knot diagram

    Parameters
    ----------
    crossings : sequence of Crossing or mapping
        Crossing records ``{"arcs": [i, j, k, l], "sign": ±1}``. An empty
        sequence is the crossingless unknot.

    Raises
    ------
    ValidationError
        If an edge label does not appear exactly twice, the crossings are not
        oriented consistently or the edges do not close up into a single
        component.
    """

    def __init__(self, crossings=()):
        self.crossings = tuple(
            _parse_crossing(record, index) for index, record in enumerate(crossings)
        )
        self._validate()

    def _validate(self):
        n_edges = 2 * len(self.crossings)
        counts = defaultdict(int)
        for crossing in self.crossings:
            for arc in crossing.arcs:
                counts[arc] += 1

        errors = {}
        out_of_range = sorted(arc for arc in counts if not 1 <= arc <= n_edges)
        if out_of_range:
            errors["labels"] = f"labels {out_of_range} outside of 1..{n_edges}"
        wrong_count = sorted(arc for arc, count in counts.items() if count != 2)
        if wrong_count:
            errors["counts"] = f"labels {wrong_count} do not appear exactly twice"
        if errors:
            raise ValidationError("; ".join(errors.values()))

        incoming = defaultdict(int)
        for index, crossing in enumerate(self.crossings):
            for edge_in, edge_out in (
                (crossing.under_in, crossing.under_out),
                (crossing.over_in, crossing.over_out),
            ):
                if edge_out != self._next_edge(edge_in):
                    raise ValidationError(
                        f"crossing {index}: edge {edge_in} continues as {edge_out}, "
                        f"expected {self._next_edge(edge_in)}: the edges do not "
                        "close up into a single oriented component"
                    )
                incoming[edge_in] += 1

        doubled = sorted(edge for edge, count in incoming.items() if count != 1)
        if doubled:
            raise ValidationError(f"edges {doubled} enter more than one crossing")

    def _next_edge(self, edge):
        return edge % (2 * len(self.crossings)) + 1

    @classmethod
    def from_braid(cls, word, strands=None):
        """closure of a braid word

        Parameters
        ----------
        word : sequence of int
            Artin generators: ``i`` is a positive crossing between strands
            ``i`` and ``i + 1``, ``-i`` a negative one.
        strands : int, optional
            Number of strands, defaults to one more than the largest
            generator.
        """
        word = tuple(int(g) for g in word)
        if strands is None:
            strands = max((abs(g) for g in word), default=0) + 1
        if any(g == 0 or abs(g) >= strands for g in word):
            raise ValidationError(f"invalid generator in braid word {word!r}")
        if not word:
            if strands != 1:
                raise ValidationError("a trivial braid on several strands is a link")
            return cls()

        current = [("top", position) for position in range(strands)]
        records = []
        for index, generator in enumerate(word):
            a = abs(generator) - 1
            b = a + 1
            out_a = ("edge", index, a)
            out_b = ("edge", index, b)
            if generator > 0:
                records.append(([current[a], out_a, out_b, current[b]], 1))
            else:
                records.append(([current[b], current[a], out_a, out_b], -1))
            current[a], current[b] = out_a, out_b

        closure = {
            bottom: ("top", position) for position, bottom in enumerate(current)
        }
        records = [
            ([closure.get(key, key) for key in arms], sign) for arms, sign in records
        ]

        return cls(_renumber(records))

    @classmethod
    def from_pd(cls, code):
        """diagram from an unsigned planar-diagram code

        Parameters
        ----------
        code : sequence of 4-sequences
            ``[i, j, k, l]`` counterclockwise from the incoming under-strand.
            The sign is read off the direction of the over strand.
        """
        code = [[int(arc) for arc in arcs] for arcs in code]
        if any(len(arcs) != 4 for arcs in code):
            raise ValidationError("every planar-diagram crossing lists four edges")
        n_edges = 2 * len(code)
        return cls(
            [
                {"arcs": arcs, "sign": 1 if arcs[1] == arcs[3] % n_edges + 1 else -1}
                for arcs in code
            ]
        )

    @classmethod
    def from_json(cls, data):
        if isinstance(data, dict):
            data = data.get("crossings", [])
        if not isinstance(data, list):
            raise ValidationError("a knot diagram is a list of crossing records")

        return cls(data)

    @classmethod
    def load(cls, path):
        try:
            with open(path) as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            raise ValidationError(
                f"line {e.lineno}, column {e.colno}: {e.msg}", path=path
            ) from e

        try:
            return cls.from_json(data)
        except ValidationError as e:
            raise ValidationError(str(e), path=path) from e

    def to_json(self):
        return [crossing.to_dict() for crossing in self.crossings]

    @property
    def crossing_number(self):
        return len(self.crossings)

    @property
    def writhe(self):
        return sum(crossing.sign for crossing in self.crossings)

    def seifert_circles(self):
        """cycles of edges obtained by the oriented smoothing of every crossing"""
        if not self.crossings:
            return ((),)

        successor = {}
        for crossing in self.crossings:
            i, j, k, l = crossing.arcs
            if crossing.sign > 0:
                successor[i] = j
                successor[l] = k
            else:
                successor[i] = l
                successor[j] = k

        circles = []
        seen = set()
        for start in sorted(successor):
            if start in seen:
                continue

            circle = []
            edge = start
            while edge not in seen:
                seen.add(edge)
                circle.append(edge)
                edge = successor[edge]
            circles.append(tuple(circle))

        return tuple(circles)

    @property
    def genus_bound(self):
        """genus of the surface produced by Seifert's algorithm"""
        return (self.crossing_number - len(self.seifert_circles()) + 1) // 2

    def __eq__(self, other):
        if not isinstance(other, KnotDiagram):
            return NotImplemented
        return self.crossings == other.crossings

    def __hash__(self):
        return hash(self.crossings)

    def __repr__(self):
        return f"KnotDiagram({self.to_json()!r})"


def _renumber(records):
    """relabel edges ``1..2c`` in traversal order

    ``records`` is a list of ``(arms, sign)`` with arbitrary hashable edge
    keys. Returns crossing records with integer labels.
    """
    continuation = {}
    for arms, sign in records:
        continuation[arms[0]] = arms[2]
        if sign > 0:
            continuation[arms[3]] = arms[1]
        else:
            continuation[arms[1]] = arms[3]

    start = records[0][0][0]
    labels = {}
    key = start
    while key not in labels:
        labels[key] = len(labels) + 1
        key = continuation[key]

    if len(labels) != len(continuation):
        raise ValidationError(
            f"diagram has more than one component ({len(labels)} of "
            f"{len(continuation)} edges reached)"
        )

    return [
        {"arcs": [labels[key] for key in arms], "sign": sign} for arms, sign in records
    ]


def _occurrences(diagram):
    incoming = {}
    outgoing = {}
    for index, crossing in enumerate(diagram.crossings):
        for position, arc in enumerate(crossing.arcs):
            target = outgoing if crossing.is_outgoing(position) else incoming
            target[arc] = (index, position)

    return incoming, outgoing


def _circle_index(diagram):
    return {
        edge: index
        for index, circle in enumerate(diagram.seifert_circles())
        for edge in circle
    }


def _band_sides(diagram, circle_of):
    # (circle with the band on its left, circle with the band on its right)
    sides = []
    for crossing in diagram.crossings:
        i, j, _, l = crossing.arcs
        if crossing.sign > 0:
            sides.append((circle_of[i], circle_of[l]))
        else:
            sides.append((circle_of[j], circle_of[i]))

    return sides


def _braid_chain(diagram):
    """order of the Seifert circles if the diagram is a closed braid

    Returns ``None`` if the circles are not coherently nested. In the
    returned chain every circle has its successor on the left.
    """
    circle_of = _circle_index(diagram)
    n_circles = len(diagram.seifert_circles())
    successors = defaultdict(set)
    predecessors = defaultdict(set)
    for left, right in _band_sides(diagram, circle_of):
        successors[left].add(right)
        predecessors[right].add(left)

    starts = [c for c in range(n_circles) if not predecessors[c]]
    if len(starts) != 1:
        return None

    chain = [starts[0]]
    while successors[chain[-1]]:
        if len(successors[chain[-1]]) != 1:
            return None

        (following,) = successors[chain[-1]]
        if following in chain:
            return None
        chain.append(following)

    if len(chain) != n_circles:
        return None

    return chain


def _faces(diagram):
    """boundary walks of the complementary regions

    Each face is a list of ``(edge, agrees)`` pairs, walked with the face on
    the right. ``agrees`` tells whether the walk follows the edge's
    orientation.
    """
    occurrences = defaultdict(list)
    for index, crossing in enumerate(diagram.crossings):
        for position, arc in enumerate(crossing.arcs):
            occurrences[arc].append((index, position))

    faces = []
    seen = set()
    for corner in itertools.product(range(diagram.crossing_number), range(4)):
        if corner in seen:
            continue

        face = []
        while corner not in seen:
            seen.add(corner)
            index, position = corner
            arm = (index, (position + 1) % 4)
            crossing = diagram.crossings[index]
            edge = crossing.arcs[arm[1]]
            face.append((edge, crossing.is_outgoing(arm[1])))

            first, second = occurrences[edge]
            corner = second if first == arm else first
        faces.append(face)

    return faces


def _find_defect(diagram):
    # two edges walked the same way round one face lie on incoherent circles
    circle_of = _circle_index(diagram)
    for face in _faces(diagram):
        for (e, agrees_e), (f, agrees_f) in itertools.combinations(face, 2):
            if agrees_e == agrees_f and circle_of[e] != circle_of[f]:
                return e, f, agrees_e

    return None


def _braiding_move(diagram, e, f, agrees):
    """push edge ``e`` over edge ``f`` across their common face

    A Reidemeister II move that merges the Seifert circles of ``e`` and ``f``
    and creates one new small circle.
    """
    incoming, _ = _occurrences(diagram)
    records = [
        ([(arc, 0) for arc in crossing.arcs], crossing.sign)
        for crossing in diagram.crossings
    ]

    for edge in (e, f):
        index, position = incoming[edge]
        records[index][0][position] = (edge, 2)

    e1, e2, e3 = ((e, part) for part in range(3))
    f1, f2, f3 = ((f, part) for part in range(3))
    if agrees:
        records.append(([f2, e1, f3, e2], -1))
        records.append(([f1, e3, f2, e2], 1))
    else:
        records.append(([f2, e2, f3, e1], 1))
        records.append(([f1, e2, f2, e3], -1))

    return KnotDiagram(_renumber(records))


def braid(diagram):
    """an equivalent closed-braid diagram and its braid word

    Returns
    -------
    diagram : KnotDiagram
    word : list of int
        Signed generators read along the braid axis.
    """
    if not diagram.crossings:
        return diagram, []

    current = diagram
    limit = (diagram.crossing_number + len(diagram.seifert_circles())) ** 2
    for _ in range(limit):
        chain = _braid_chain(current)
        if chain is not None:
            break

        defect = _find_defect(current)
        if defect is None:
            raise ValidationError("diagram has no braiding move but is not a braid")

        LOGGER.debug("braiding move on edges %s and %s", defect[0], defect[1])
        current = _braiding_move(current, *defect)
    else:
        raise ValidationError("diagram could not be braided")

    if current is not diagram:
        LOGGER.warning(
            "braided a %d-crossing diagram into a %d-crossing closed braid",
            diagram.crossing_number,
            current.crossing_number,
        )

    return current, _read_braid_word(current, chain)


def _read_braid_word(diagram, chain):
    circles = diagram.seifert_circles()
    circle_of = _circle_index(diagram)
    level_of_circle = {circle: level for level, circle in enumerate(chain)}
    sides = _band_sides(diagram, circle_of)
    levels = [level_of_circle[left] for left, _ in sides]

    incoming, _ = _occurrences(diagram)
    order = []
    for level, circle in enumerate(chain):
        along = [incoming[edge][0] for edge in circles[circle]]
        if level == 0:
            start = next(i for i, x in enumerate(along) if levels[x] == 0)
            order = along[start:] + along[:start]
            continue

        lower = {x for x in along if levels[x] == level - 1}
        first = next(x for x in order if x in lower)
        start = along.index(first)
        along = along[start:] + along[:start]

        inserted = defaultdict(list)
        previous = None
        for x in along:
            if x in lower:
                previous = x
            else:
                inserted[previous].append(x)

        order = [y for x in order for y in [x] + inserted.get(x, [])]

    return [(levels[x] + 1) * diagram.crossings[x].sign for x in order]


def _collins_matrix(word):
    positions = defaultdict(list)
    for position, generator in enumerate(word):
        positions[abs(generator)].append(position)
    signs = [1 if generator > 0 else -1 for generator in word]

    loops = [
        (level, start, end)
        for level in sorted(positions)
        for start, end in zip(positions[level], positions[level][1:])
    ]

    size = len(loops)
    matrix = np.zeros((size, size), dtype=object)
    for (a, (la, p1, p2)), (b, (lb, q1, q2)) in itertools.product(
        enumerate(loops), repeat=2
    ):
        if a == b:
            value = -(signs[p1] + signs[p2]) // 2
        elif la == lb and q1 == p2:
            value = (1 + signs[p2]) // 2
        elif la == lb and q2 == p1:
            value = (signs[p1] - 1) // 2
        elif lb == la + 1 and p1 < q1 < p2 < q2:
            value = -1
        elif lb == la + 1 and q1 < p1 < q2 < p2:
            # the chords on the shared disk cross the other way round
            value = 1
        else:
            value = 0

        matrix[a, b] = int(value)

    return matrix


@dataclass(frozen=True, eq=False)
class SeifertMatrix:
    entries: np.ndarray

    def __post_init__(self):
        rows, columns = self.entries.shape
        if rows != columns or rows % 2 != 0:
            raise ValidationError(
                f"a Seifert matrix is square of even size, got {self.entries.shape}"
            )
        if rows and abs(sympy.Matrix(self.entries - self.entries.T).det()) != 1:
            raise ValidationError("V - Vᵀ is not unimodular")

    @property
    def genus(self):
        return self.entries.shape[0] // 2

    def to_list(self):
        return [[int(value) for value in row] for row in self.entries]

    def __eq__(self, other):
        if not isinstance(other, SeifertMatrix):
            return NotImplemented
        return self.to_list() == other.to_list()


def seifert_matrix(d):
    """Seifert matrix of the surface produced by Seifert's algorithm

    Diagrams that are not closed braids are first braided by Reidemeister II
    moves between incoherent Seifert circles; the surface is then built from
    the nested circle disks and one twisted band per crossing.

    Parameters
    ----------
    d : KnotDiagram

    Returns
    -------
    SeifertMatrix
    """
    _, word = braid(d)
    return SeifertMatrix(entries=_collins_matrix(word))


def normalize_alexander(poly):
    """symmetric representative with Δ(1) = 1"""
    if poly.is_zero:
        raise ValidationError("the Alexander polynomial of a knot is never zero")

    low, high = poly.degree_span("t")
    if (low + high) % 2:
        raise ValidationError(f"{poly} cannot be made symmetric")

    shifted = lp_mul(poly, LaurentPoly.monomial({"t": -(low + high) // 2}))
    value = lp_evaluate(shifted, {"t": 1})
    if value not in (1, -1):
        raise ValidationError(f"Δ(1) = {value}, expected ±1")

    return shifted if value == 1 else -shifted


def _polynomial_det(matrix):
    # fraction-free elimination over ZZ[t]
    dm = DomainMatrix.from_Matrix(matrix)
    return sympy.expand(dm.domain.to_sympy(dm.det()))


def alexander(d):
    """Alexander polynomial as det(V − tVᵀ), normalized

    Parameters
    ----------
    d : KnotDiagram

    Returns
    -------
    LaurentPoly
        Symmetric in ``t`` with Δ(1) = 1.
    """
    entries = seifert_matrix(d).entries
    if entries.size == 0:
        return LaurentPoly.constant(1)

    V = sympy.Matrix(entries)
    det = _polynomial_det(V - t * V.T)
    return normalize_alexander(LaurentPoly.from_sympy(det, variables=["t"]))


def _abelian_fox_derivative(word, generator):
    # ∂(uv) = ∂u + u∂v and ∂(x⁻¹) = -x⁻¹, with every generator sent to t
    terms = defaultdict(int)
    exponent = 0
    for letter, power in word:
        if letter == generator:
            if power > 0:
                terms[exponent] += 1
            else:
                terms[exponent - 1] -= 1
        exponent += power

    return LaurentPoly({Monomial(t=e): c for e, c in terms.items()})


def wirtinger_presentation(d):
    """generators (over-arcs) and relators of the knot group

    Returns
    -------
    arcs : dict
        Maps each edge label to its over-arc index.
    relators : list of list of (int, int)
        One relator per crossing, as words of ``(arc, ±1)`` letters.
    """
    parent = {arc: arc for crossing in d.crossings for arc in crossing.arcs}

    def find(arc):
        while parent[arc] != arc:
            parent[arc] = parent[parent[arc]]
            arc = parent[arc]
        return arc

    for crossing in d.crossings:
        parent[find(crossing.over_in)] = find(crossing.over_out)

    roots = sorted({find(arc) for arc in parent}, key=lambda root: min(
        arc for arc in parent if find(arc) == root
    ))
    index = {root: position for position, root in enumerate(roots)}
    arcs = {arc: index[find(arc)] for arc in parent}

    relators = []
    for crossing in d.crossings:
        over = arcs[crossing.over_in]
        sign = crossing.sign
        relators.append(
            [
                (over, sign),
                (arcs[crossing.under_in], 1),
                (over, -sign),
                (arcs[crossing.under_out], -1),
            ]
        )

    return arcs, relators


def alexander_fox(d):
    """Alexander polynomial from Fox derivatives of the Wirtinger presentation

    The abelianized Jacobian of the presentation loses one row and one column
    and its determinant is normalized exactly as in :py:func:`alexander`.
    """
    if not d.crossings:
        return LaurentPoly.constant(1)

    arcs, relators = wirtinger_presentation(d)
    n_generators = len(set(arcs.values()))
    jacobian = sympy.Matrix(
        [
            [
                _abelian_fox_derivative(relator, generator).to_sympy()
                for generator in range(n_generators)
            ]
            for relator in relators
        ]
    )
    minor = jacobian[:-1, :-1]
    det = minor.det(method="berkowitz") if minor.rows else sympy.Integer(1)

    return normalize_alexander(LaurentPoly.from_sympy(det, variables=["t"]))


def knot_determinant(d):
    """|Δ(−1)|"""
    return abs(lp_evaluate(alexander(d), {"t": -1}))


def mirror(d):
    """mirror image, reflecting the diagram in a line of the plane

    The cyclic order of every crossing is reversed, which negates its sign
    while keeping the edge labels.
    """
    return KnotDiagram(
        [
            {"arcs": [i, l, k, j], "sign": -crossing.sign}
            for crossing in d.crossings
            for i, j, k, l in [crossing.arcs]
        ]
    )


def _sum_edge(d, end):
    chain = _braid_chain(d)
    if chain is None:
        return 2 * d.crossing_number if end == "last" else 1

    circle = d.seifert_circles()[chain[-1] if end == "last" else chain[0]]
    return min(circle)


def connected_sum(a, b):
    """connected sum, splicing one edge of each diagram

    The edges are taken on the outermost Seifert circles so that the sum of
    two closed braids is again a closed braid.
    """
    if not a.crossings:
        return b
    if not b.crossings:
        return a

    x = _sum_edge(a, "last")
    y = _sum_edge(b, "first")

    incoming_a, outgoing_a = _occurrences(a)
    incoming_b, outgoing_b = _occurrences(b)

    records_a = [
        ([("a", arc) for arc in crossing.arcs], crossing.sign) for crossing in a.crossings
    ]
    records_b = [
        ([("b", arc) for arc in crossing.arcs], crossing.sign) for crossing in b.crossings
    ]

    for records, (index, position), key in (
        (records_a, outgoing_a[x], "into-b"),
        (records_b, incoming_b[y], "into-b"),
        (records_b, outgoing_b[y], "into-a"),
        (records_a, incoming_a[x], "into-a"),
    ):
        records[index][0][position] = key

    return KnotDiagram(_renumber(records_a + records_b))


def _catalog_diagram(name):
    key = catalog_aliases.get(name, name)
    try:
        word, strands = catalog_braids[key]
    except KeyError:
        raise UnsupportedKnotError(
            f"unknown knot {name!r}; known knots: "
            f"{sorted(set(catalog_braids) | set(catalog_aliases))}"
        ) from None

    return KnotDiagram.from_braid(word, strands)


def canonical_name(name):
    """resolve aliases, keeping ``#`` and ``-`` structure"""
    parts = []
    for part in name.split("#"):
        part = part.strip()
        prefix = "-" if part.startswith("-") else ""
        base = part.removeprefix("-")
        parts.append(prefix + catalog_aliases.get(base, base))

    return "#".join(parts)


def lookup(name):
    """diagram for a catalog name or a ``#``-separated sum like ``"K#-K"``

    A leading ``-`` denotes the mirror image.
    """
    diagram = KnotDiagram()
    for part in name.split("#"):
        part = part.strip()
        if not part:
            raise UnsupportedKnotError(f"invalid knot name {name!r}")

        summand = _catalog_diagram(part.removeprefix("-"))
        if part.startswith("-"):
            summand = mirror(summand)
        diagram = connected_sum(diagram, summand)

    return diagram


def slice_label(name):
    """label of the slice knot ``K#-K``"""
    return f"{name}#-{name}"


def known_knots():
    return sorted(set(catalog_braids) | set(catalog_aliases))


def slice_summand(label):
    """the catalog knot ``K`` of a slice label ``K#-K``

    Raises
    ------
    UnsupportedKnotError
        If the label is not of the form ``K#-K`` with ``K`` in the catalog.
    """
    parts = canonical_name(label).split("#")
    if len(parts) != 2 or parts[1] != "-" + parts[0] or parts[0].startswith("-"):
        raise UnsupportedKnotError(f"{label!r} is not a slice label of the form K#-K")

    summand = parts[0]
    if summand not in catalog_braids:
        raise UnsupportedKnotError(f"unknown knot {summand!r} in {label!r}")

    return summand
