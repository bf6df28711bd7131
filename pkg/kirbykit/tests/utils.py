import re
from contextlib import contextmanager

import pytest

from ..handlebody import Handle, HandleStructure
from ..resources import corpus_file
from ..testing import assert_invariants_equal, assert_structures_equal  # noqa: F401


@contextmanager
def raises_regex(error, pattern):
    __tracebackhide__ = True
    with pytest.raises(error) as excinfo:
        yield
    message = str(excinfo.value)
    if not re.search(pattern, message):
        raise AssertionError(
            f"exception {excinfo.value!r} did not match pattern {pattern!r}"
        )


def load_corpus(name):
    return HandleStructure.load(corpus_file(name))


def torus_structure(**changes):
    """the standalone T²×B² with its marking"""
    handles = [
        Handle(id="a", kind="dotted"),
        Handle(id="b", kind="dotted"),
        Handle(id="tau", kind="framed", framing=0, geometric_runs={"a": 2, "b": 2}),
    ]
    data = {
        "marking": {"dotted_a": "a", "dotted_b": "b", "framed_t": "tau"},
        "name": "torus",
    }
    data.update(changes)
    return HandleStructure(handles, **data)


def hopf_pair(framing=0):
    """two framed unknots linking once"""
    return HandleStructure(
        [
            Handle(id="h", kind="framed", framing=framing, links={"k": 1}),
            Handle(id="k", kind="framed", framing=0),
        ]
    )
