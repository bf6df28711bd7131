import xarray as xr

from . import formatting
from .handlebody import AbelianGroup, InvariantSummary, linking_matrix


def _summary_mapping(summary):
    if isinstance(summary, InvariantSummary):
        summary = summary.to_dict()

    return {
        key: str(AbelianGroup.from_dict(value)) if isinstance(value, dict) else value
        for key, value in summary.items()
    }


def assert_invariants_equal(a, b):
    """assert that two invariant summaries are equal

    Raises an :py:exc:`AssertionError` listing every differing invariant.

    Parameters
    ----------
    a, b : InvariantSummary or mapping
        The summaries to compare.
    """

    __tracebackhide__ = True

    invariants_a = _summary_mapping(a)
    invariants_b = _summary_mapping(b)
    assert invariants_a == invariants_b, formatting.diff_mapping_repr(
        invariants_a, invariants_b, "Invariants", formatting.summarize_item
    )


def assert_structures_equal(a, b):
    """assert that two handle structures agree up to the order of the handles

    Compares the kinds, the linking matrices aligned on handle ids, the 3-
    and 4-handle counts and the 3-handle attaching rows. Knot labels and
    geometric flags are ignored.

    Parameters
    ----------
    a, b : HandleStructure
        The structures to compare
    """

    __tracebackhide__ = True

    kinds_a = {handle.id: handle.kind for handle in a.handles}
    kinds_b = {handle.id: handle.kind for handle in b.handles}
    assert kinds_a == kinds_b, formatting.diff_mapping_repr(
        kinds_a, kinds_b, "Handles", formatting.summarize_item
    )

    counts_a = {"three_handles": a.three_handles, "four_handles": a.four_handles}
    counts_b = {"three_handles": b.three_handles, "four_handles": b.four_handles}
    assert counts_a == counts_b, formatting.diff_mapping_repr(
        counts_a, counts_b, "Handle counts", formatting.summarize_item
    )

    matrix_a = linking_matrix(a)
    matrix_b = linking_matrix(b).sel(handle=a.ids, handle_=a.ids)
    xr.testing.assert_equal(matrix_a, matrix_b)

    rows_a = sorted(sorted(row.items()) for row in a.d3 or ())
    rows_b = sorted(sorted(row.items()) for row in b.d3 or ())
    assert rows_a == rows_b, f"different 3-handle rows: {rows_a!r} ←→ {rows_b!r}"
