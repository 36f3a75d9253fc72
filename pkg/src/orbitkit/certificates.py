"""Dimension certificates from Jacobian ranks.

Two dual routes, kept deliberately separate:

* an **equation system** vanishing on a variety, evaluated at a point of the
  variety: if its Jacobian there has rank r, the variety has dimension at most
  ``ambient - r`` near that point (r independent constraints);
* a **parametrization** into the variety: if its Jacobian at a parameter point
  has rank r, the variety has dimension at least r (an immersed r-fold sits
  inside).

When both routes meet at the same number the dimension is pinned exactly.
Jacobians are assembled exactly with first-order jets unless the system
supplies its own (faster, hand-differentiated) rule, and every rank is a
Bareiss rank over the integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence

from . import linalg
from .jets import Jet, derivative_part, value_part
from .models import BlockElement


def _flatten(output) -> List:
    if isinstance(output, BlockElement):
        return [entry for row in output.matrix() for entry in row]
    if output and isinstance(output[0], (list, tuple)):
        return [entry for row in output for entry in row]
    return list(output)


@dataclass
class Parametrization:
    """A map from named parameters into a variety (or a raw coordinate list)."""

    name: str
    param_names: Sequence[str]
    mapping: Callable[[Dict[str, object]], object]

    def evaluate(self, point: Mapping[str, object]) -> List:
        return _flatten(self.mapping(dict(point)))

    def jacobian(self, point: Mapping[str, object]) -> linalg.Matrix:
        """Columns indexed by param_names, rows by flattened outputs; exact."""
        columns = []
        for active in self.param_names:
            jet_point = {
                name: Jet(value, Fraction(int(name == active)))
                for name, value in point.items()
            }
            columns.append([derivative_part(t) for t in self.evaluate(jet_point)])
        return [list(row) for row in zip(*columns)]


@dataclass
class EquationSystem:
    """Named equations on a named coordinate space, with optional fast Jacobian."""

    name: str
    coord_names: Sequence[str]
    equations: Callable[[Dict[str, object]], List]
    jacobian_rule: Optional[Callable[[Dict[str, object]], linalg.Matrix]] = None

    def evaluate(self, point: Mapping[str, object]) -> List:
        return list(self.equations(dict(point)))

    def jacobian(self, point: Mapping[str, object]) -> linalg.Matrix:
        if self.jacobian_rule is not None:
            return self.jacobian_rule(dict(point))
        columns = []
        for active in self.coord_names:
            jet_point = {
                name: Jet(value, Fraction(int(name == active)))
                for name, value in point.items()
            }
            columns.append([derivative_part(t) for t in self.evaluate(jet_point)])
        return [list(row) for row in zip(*columns)]


@dataclass(frozen=True)
class DimensionCertificate:
    """Outcome of one Jacobian-rank computation at one point."""

    name: str
    kind: str                     # "equations" | "parametrization"
    ambient_dim: int
    jacobian_rank: int
    dimension: int                # ambient - rank, or rank
    point_on_variety: bool        # equations vanished at the point (equations route)
    backend: str = "exact"


def certify_equations(system: EquationSystem, point: Mapping[str, object],
                      backend: str = "exact", rel_tol: float = 1e-8) -> DimensionCertificate:
    values = system.evaluate(point)
    if backend == "exact":
        on_variety = all(value_part(t) == 0 for t in values)
        rank = linalg.rank_exact(system.jacobian(point))
    else:
        scale = 1.0 + max((abs(float(t)) for t in values), default=0.0)
        on_variety = all(abs(float(t)) <= rel_tol * scale for t in values)
        jac = [[float(t) for t in row] for row in system.jacobian(point)]
        rank = linalg.rank_float(jac, rel_tol=rel_tol)
    ambient = len(system.coord_names)
    return DimensionCertificate(
        name=system.name,
        kind="equations",
        ambient_dim=ambient,
        jacobian_rank=rank,
        dimension=ambient - rank,
        point_on_variety=on_variety,
        backend=backend,
    )


def certify_parametrization(param: Parametrization, point: Mapping[str, object],
                            backend: str = "exact", rel_tol: float = 1e-8) -> DimensionCertificate:
    if backend == "exact":
        rank = linalg.rank_exact(param.jacobian(point))
    else:
        jac = [[float(t) for t in row] for row in param.jacobian(point)]
        rank = linalg.rank_float(jac, rel_tol=rel_tol)
    return DimensionCertificate(
        name=param.name,
        kind="parametrization",
        ambient_dim=len(param.param_names),
        jacobian_rank=rank,
        dimension=rank,
        point_on_variety=True,
        backend=backend,
    )
