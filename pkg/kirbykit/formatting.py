from xarray.core.options import OPTIONS


# vendored from xarray.core.formatting
def maybe_truncate(obj, maxlen=500):
    s = str(obj)
    if len(s) > maxlen:
        s = s[: (maxlen - 3)] + "..."
    return s


def summarize_item(key, value):
    """one line summary of a mapping entry"""
    v_str = str(value).replace("\t", "\\t").replace("\n", "\\n")
    return maybe_truncate(f"    {key}: {v_str}", OPTIONS["display_width"])


def _side_only(keys, mapping, title, side, summarizer):
    if not keys:
        return []

    return [f"{title} only on the {side} object:"] + [
        summarizer(key, mapping[key]) for key in sorted(keys)
    ]


def diff_mapping_repr(a_mapping, b_mapping, title, summarizer):
    """describe where two mappings differ, empty if they agree

    Entries present on both sides are prefixed with ``L`` and ``R``.
    """
    shared = sorted(set(a_mapping) & set(b_mapping))
    changed = [key for key in shared if a_mapping[key] != b_mapping[key]]

    lines = []
    if changed:
        lines.append(f"Differing {title.lower()}:")
    for key in changed:
        left = summarizer(key, a_mapping[key])
        right = summarizer(key, b_mapping[key])
        lines.extend(["L" + left[1:], "R" + right[1:]])

    lines.extend(
        _side_only(
            set(a_mapping) - set(b_mapping), a_mapping, title, "left", summarizer
        )
    )
    lines.extend(
        _side_only(
            set(b_mapping) - set(a_mapping), b_mapping, title, "right", summarizer
        )
    )

    return "\n".join(lines)
