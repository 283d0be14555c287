"""Thin mixed-integer model container and solver backends.

The model layer is deliberately narrow: add variables, add linear
constraints, set a linear objective, solve with a time limit, read
values.  Backends register under a name; ``WARDROSTER_SOLVER`` selects
one (default ``highs``).
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.optimize import Bounds, LinearConstraint, milp

OPTIMAL = "optimal"
FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
TIMED_OUT = "timed_out_no_solution"


@dataclass
class Variable:
    name: str
    lb: float
    ub: float
    integer: bool


@dataclass
class MilpModel:
    """Linear model with tagged variables and constraints."""

    sense: str = "min"
    variables: list[Variable] = field(default_factory=list)
    rows: list[tuple[list[int], list[float], float, float, str]] = field(default_factory=list)
    objective: dict[int, float] = field(default_factory=dict)

    def add_var(self, name: str, lb: float = 0.0, ub: float = 1.0, integer: bool = True) -> int:
        self.variables.append(Variable(name, lb, ub, integer))
        return len(self.variables) - 1

    def fix_var(self, name: str, value: float) -> int:
        return self.add_var(name, lb=value, ub=value, integer=True)

    def add_constraint(
        self,
        terms: list[tuple[int, float]],
        sense: str,
        rhs: float,
        tag: str = "",
    ) -> None:
        idx = [t[0] for t in terms]
        coef = [float(t[1]) for t in terms]
        if sense == "<=":
            lo, hi = -np.inf, rhs
        elif sense == ">=":
            lo, hi = rhs, np.inf
        elif sense == "==":
            lo, hi = rhs, rhs
        else:
            raise ValueError(f"unknown constraint sense {sense!r}")
        self.rows.append((idx, coef, lo, hi, tag))

    def set_objective(self, terms: dict[int, float], sense: str) -> None:
        if sense not in ("min", "max"):
            raise ValueError(f"unknown objective sense {sense!r}")
        self.sense = sense
        self.objective = dict(terms)

    @property
    def num_vars(self) -> int:
        return len(self.variables)


@dataclass(frozen=True)
class SolveResult:
    status: str
    values: np.ndarray | None
    objective: float | None
    wall_time: float


class HighsBackend:
    """scipy.optimize.milp (HiGHS branch-and-bound)."""

    name = "highs"

    def solve(self, model: MilpModel, time_limit: float | None = None) -> SolveResult:
        t0 = time.monotonic()
        if time_limit is not None and time_limit <= 0:
            return SolveResult(TIMED_OUT, None, None, 0.0)
        nv = model.num_vars
        c = np.zeros(nv)
        for i, coef in model.objective.items():
            c[i] = coef
        if model.sense == "max":
            c = -c
        lb = np.array([v.lb for v in model.variables])
        ub = np.array([v.ub for v in model.variables])
        integrality = np.array([1 if v.integer else 0 for v in model.variables])

        data, ri, ci, clo, chi = [], [], [], [], []
        for rnum, (idx, coef, lo, hi, _tag) in enumerate(model.rows):
            ri.extend([rnum] * len(idx))
            ci.extend(idx)
            data.extend(coef)
            clo.append(lo)
            chi.append(hi)
        constraints = []
        if model.rows:
            A = sp.csc_array((data, (ri, ci)), shape=(len(model.rows), nv))
            constraints = [LinearConstraint(A, np.array(clo), np.array(chi))]

        options = {}
        if time_limit is not None:
            options["time_limit"] = float(time_limit)
        res = milp(
            c=c,
            constraints=constraints,
            integrality=integrality,
            bounds=Bounds(lb, ub),
            options=options,
        )
        if res.status == 2:
            # HiGHS presolve occasionally proves false infeasibility on
            # big-M models; confirm with presolve disabled before
            # reporting it.
            res = milp(
                c=c,
                constraints=constraints,
                integrality=integrality,
                bounds=Bounds(lb, ub),
                options={**options, "presolve": False},
            )
        wall = time.monotonic() - t0
        if res.status == 2:
            return SolveResult(INFEASIBLE, None, None, wall)
        if res.x is None:
            return SolveResult(TIMED_OUT, None, None, wall)
        values = np.asarray(res.x)
        obj = float(c @ values)
        if model.sense == "max":
            obj = -obj
        status = OPTIMAL if res.status == 0 else FEASIBLE
        return SolveResult(status, values, obj, wall)


_BACKENDS = {"highs": HighsBackend}


def get_backend(name: str | None = None):
    name = name or os.environ.get("WARDROSTER_SOLVER", "highs")
    try:
        return _BACKENDS[name]()
    except KeyError:
        raise ValueError(f"unknown solver backend {name!r}; known: {sorted(_BACKENDS)}") from None
