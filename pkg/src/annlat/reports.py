"""Pass/fail reports with witnesses, and their JSON-ready form."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .matrix import FloatMatrix, Matrix
from .scalar import ExactScalar


@dataclass
class Report:
    name: str
    passed: bool
    checked: int = 0
    witness: dict | None = None
    details: dict = field(default_factory=dict)

    def fail(self, **witness) -> "Report":
        """Record the first counterexample; later ones are ignored."""
        if self.passed:
            self.passed = False
            self.witness = witness
        return self

    def to_dict(self) -> dict:
        return jsonable({
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "witness": self.witness,
            "details": self.details,
        })


def jsonable(obj):
    """Convert matrices, fractions and annihilators into plain JSON data."""
    from .annihilators import Annihilator

    if isinstance(obj, Report):
        return obj.to_dict()
    if isinstance(obj, Annihilator):
        return {"unit_projection": jsonable(obj.p)}
    if isinstance(obj, Matrix):
        if obj.re.ndim == 1:
            return [obj[i].to_pair() for i in range(obj.shape[0])]
        return [[x.to_pair() for x in row] for row in obj.entries()]
    if isinstance(obj, FloatMatrix):
        a = np.round(obj.a, 12) + 0.0
        return [[[repr(float(z.real)), repr(float(z.imag))] for z in row] for row in np.atleast_2d(a)]
    if isinstance(obj, ExactScalar):
        return obj.to_pair()
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, complex):
        return [repr(obj.real), repr(obj.imag)]
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj
