"""Deterministic JSON writer: sorted-free, insertion-ordered, 17 significant digits."""

import json
import math

import numpy as np


def _fmt_float(x):
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x + 0.0, ".17g")  # + 0.0 folds -0 into 0


def dumps(obj, indent=2, _level=0):
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, (bool, np.bool_)) or obj is None:
        return json.dumps(bool(obj) if obj is not None else None)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return "[%s, %s]" % (_fmt_float(obj.real), _fmt_float(obj.imag))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            "%s%s: %s" % (pad, json.dumps(str(k)), dumps(v, indent, _level + 1))
            for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        # short numeric rows stay on one line
        if all(isinstance(v, (int, float, np.integer, np.floating)) for v in seq):
            return "[" + ", ".join(dumps(v, indent, _level + 1) for v in seq) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in seq]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError("cannot serialize %r" % type(obj))


def complex_pair(z):
    return [float(np.real(z)), float(np.imag(z))]


def parse_complex(value):
    """Accept ``[re, im]``, a bare number, or ``{"re":..,"im":..}``."""
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError("complex value must be [re, im], got %r" % (value,))
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, dict):
        return complex(float(value["re"]), float(value.get("im", 0.0)))
    return complex(value)
