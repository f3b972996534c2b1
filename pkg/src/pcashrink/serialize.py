"""Deterministic text rendering for reports and persisted models.

Floats are always written with 17 significant digits so the printed
value round-trips to the exact same IEEE-754 double, which is what makes
repeated runs byte-identical.
"""

import json as _json

import numpy as np


def f17(x):
    """Format a float with 17 significant digits."""
    return format(float(x), ".17g")


def csv_line(values):
    """One CSV line; floats go through f17, everything else through str."""
    parts = []
    for v in values:
        if isinstance(v, (float, np.floating)):
            parts.append(f17(v))
        else:
            parts.append(str(v))
    return ",".join(parts)


def json_text(obj):
    """Render ``obj`` as JSON with f17 floats and two-space indents.

    Dict insertion order is preserved, lists are kept on one line, so the
    output is a pure function of the data.
    """
    return _render(obj, 0) + "\n"


def _render(obj, level):
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, str):
        return _json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return f17(obj)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        return "[" + ", ".join(_render(v, level + 1) for v in obj) + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        pad = "  " * (level + 1)
        items = ",\n".join(
            "%s%s: %s" % (pad, _json.dumps(str(k)), _render(v, level + 1))
            for k, v in obj.items()
        )
        return "{\n" + items + "\n" + "  " * level + "}"
    raise TypeError("cannot serialize %r" % (type(obj),))
