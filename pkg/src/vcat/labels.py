"""Label utilities shared by every structure in the package.

A label is either a string atom or a tuple of labels.  Tuples arise from
canonical constructions: pairs from products, tagged pairs from coproducts
(the tag is the summand index rendered as a string), and nested combinations
thereof.
"""

from __future__ import annotations

Label = "str | tuple"


def is_label(value) -> bool:
    if isinstance(value, str):
        return True
    if isinstance(value, tuple):
        return all(is_label(part) for part in value)
    return False


def label_key(label):
    """Total order key over labels; strings sort before tuples."""
    if isinstance(label, str):
        return (0, label)
    if isinstance(label, tuple):
        return (1, tuple(label_key(part) for part in label))
    raise TypeError(f"not a label: {label!r}")


def render_label(label) -> str:
    """Deterministic textual form, parseable back by the fixture reader."""
    if isinstance(label, str):
        return label
    if isinstance(label, tuple):
        return "(" + ",".join(render_label(part) for part in label) + ")"
    raise TypeError(f"not a label: {label!r}")


def sorted_labels(labels):
    return tuple(sorted(labels, key=label_key))
