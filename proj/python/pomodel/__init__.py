"""Partial-order models of concurrent computations.

Models are loaded from the JSON formats in docs/formats.md. Reports come
back as plain dicts.
"""

import json
from pathlib import Path

from . import _core
from ._core import EventModel, Poset, StateModel, equivalent, es_transform, same_state_order

__all__ = [
    "Error",
    "EventModel",
    "Poset",
    "StateModel",
    "check",
    "detect",
    "equivalent",
    "es_transform",
    "load",
    "same_state_order",
    "se_transform",
    "useless_checkpoints",
]


class Error(Exception):
    """Raised for any modelling error; `kind` names it (e.g. CycleError)."""

    def __init__(self, kind, message, witness=(), report=None):
        super().__init__(message)
        self.kind = kind
        self.witness = list(witness)
        self.report = report


def _translate(fn):
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except _core.Error as e:
            kind, message, witness, report = e.args
            raise Error(kind, message, witness,
                        json.loads(report) if report else None) from None

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@_translate
def load(source, allow_empty_process=False):
    """Read a model from a path, a JSON string or a dict."""
    if isinstance(source, dict):
        text = json.dumps(source)
    elif isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        text = Path(source).read_text()
    else:
        text = source
    kind = json.loads(text).get("kind")
    if kind == "event":
        return EventModel.from_json(text, allow_empty_process)
    if kind == "state":
        return StateModel.from_json(text)
    if kind == "poset":
        doc = json.loads(text)
        return Poset(doc["elements"], [tuple(r[:2]) for r in doc.get("relations", [])])
    raise Error("SchemaError", f"cannot load documents of kind {kind!r}")


@_translate
def se_transform(model):
    """Event model for a state model; raises Error with `report` when none exists."""
    return _core.se_transform(model)


@_translate
def check(model, properties="omega1,omega2,omega3,psi,we,ic"):
    if not isinstance(properties, str):
        properties = ",".join(properties)
    return json.loads(model.check(properties))


@_translate
def detect(model, predicate, mode="all"):
    """Width-antichains satisfying `predicate` (a dict in the predicate format)."""
    if "predicate" in predicate:
        predicate = predicate["predicate"]
    return json.loads(model.detect(json.dumps(predicate), mode))


@_translate
def useless_checkpoints(model, marks, engine="fast"):
    return json.loads(model.useless_checkpoints(marks, engine))
