from importlib.metadata import version

from . import moves, surgery, testing  # noqa: F401
from .errors import (
    IllegalMoveError,
    InvariantMismatchError,
    KirbyError,
    MarkingError,
    TemplateError,
    UnsupportedKnotError,
    ValidationError,
)
from .handlebody import Handle, HandleStructure, invariants
from .knot import KnotDiagram, alexander, lookup
from .laurent import LaurentPoly, Monomial
from .moves import Certificate, MoveScript, apply_move, verify_script
from .surgery import (
    SWInvariant,
    TorusMarking,
    knot_surgery_diagram,
    mark_torus,
    sw_knot_surgery,
)

try:
    __version__ = version("kirbykit")
except Exception:
    # Local copy or not installed with setuptools.
    __version__ = "999"


__all__ = [
    "testing",
    "Certificate",
    "Handle",
    "HandleStructure",
    "IllegalMoveError",
    "InvariantMismatchError",
    "KirbyError",
    "KnotDiagram",
    "LaurentPoly",
    "MarkingError",
    "Monomial",
    "MoveScript",
    "SWInvariant",
    "TemplateError",
    "TorusMarking",
    "UnsupportedKnotError",
    "ValidationError",
    "alexander",
    "apply_move",
    "invariants",
    "knot_surgery_diagram",
    "lookup",
    "mark_torus",
    "sw_knot_surgery",
    "verify_script",
]
