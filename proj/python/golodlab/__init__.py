"""Golod rings and modules over graded quotients of polynomial rings."""

import json

from ._core import (
    CapError,
    GolodlabError,
    InputError,
    InternalError,
    command_names,
    serre_bound,
    theorem_names,
)
from . import _core

__all__ = [
    "CapError",
    "GolodlabError",
    "InputError",
    "InternalError",
    "betti",
    "command_names",
    "emit_text",
    "golod_module",
    "golod_ring",
    "massey",
    "run",
    "serre_bound",
    "spec",
    "theorem_names",
    "verify_theorem",
]


def spec(variables, ideal, *, field="q", weights=None, module=None, construction=None, h=None, d=None, **extra):
    """Build a schema-1 spec dictionary."""
    ring = {"variables": list(variables), "ideal": list(ideal)}
    if weights is not None:
        ring["weights"] = list(weights)
    doc = {"schema": 1, "field": field, "ring": ring}
    if module is not None:
        doc["module"] = module
    if construction is not None:
        doc["construction"] = construction
    caps = {k: v for k, v in (("h", h), ("d", d)) if v is not None}
    if caps:
        doc["caps"] = caps
    doc.update(extra)
    return doc


def run(doc, command=None, *, max_h=None, max_d=None, field=None):
    """Run a command on a spec dictionary and return the report as a dictionary."""
    text = _core.run_json(json.dumps(doc), command, max_h, max_d, field)
    return json.loads(text)


def emit_text(report):
    return _core.emit_text(json.dumps(report))


def betti(doc, **kw):
    return run(doc, "betti", **kw)


def golod_ring(doc, **kw):
    return run(doc, "golod-ring", **kw)


def golod_module(doc, **kw):
    return run(doc, "golod-module", **kw)


def massey(doc, **kw):
    return run(doc, "massey", **kw)


def verify_theorem(doc, name, **kw):
    return run(dict(doc, theorem=name), "verify-theorem", **kw)
