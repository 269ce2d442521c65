"""Deterministic one-dimensional parameter sweeps over a scenario."""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum
from typing import FrozenSet, List, Optional, Tuple

import numpy as np

from ._validation import check_strictly_increasing
from .capacity import CapacityResult, thermo_capacity
from .channel import Scenario, scenario_to_link_spec
from .energy import link_energy_per_bit
from .exceptions import SweepError, ThermoMimoError, ValidationError

__all__ = [
    "SweepVariable",
    "SweepSpec",
    "SweepRecord",
    "OUTPUTS",
    "run_sweep",
    "fig4_sweep",
    "fig5_sweep",
    "fig4_spec",
    "fig5_spec",
    "default_workers",
]

OUTPUTS = ("thermo", "shannon", "lower_bound", "upper_bound", "energy_per_bit")
THREADS_ENV = "THERMOMIMO_THREADS"


class SweepVariable(str, Enum):
    NOISE_DOF = "noise_dof"
    CODING_OVERHEAD = "coding_overhead"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ValidationError(
                f"unknown sweep variable {value!r}; expected 'noise_dof' or 'coding_overhead'"
            ) from None


@dataclass(frozen=True)
class SweepSpec:
    base: Scenario
    variable: SweepVariable
    grid: Tuple[float, ...]
    outputs: FrozenSet[str] = frozenset({"thermo", "shannon"})

    def __post_init__(self):
        variable = SweepVariable.parse(self.variable)
        object.__setattr__(self, "variable", variable)
        grid = check_strictly_increasing(self.grid, "grid")
        if variable is SweepVariable.NOISE_DOF and not (grid > 0).all():
            raise ValidationError("noise_dof grid values must be positive")
        if variable is SweepVariable.CODING_OVERHEAD and not (grid >= 0).all():
            raise ValidationError("coding_overhead grid values must be non-negative")
        object.__setattr__(self, "grid", tuple(grid.tolist()))
        outputs = frozenset(self.outputs)
        unknown = outputs - set(OUTPUTS)
        if unknown or not outputs:
            raise ValidationError(
                f"outputs must be a non-empty subset of {OUTPUTS}, got {sorted(outputs)}"
            )
        object.__setattr__(self, "outputs", outputs)

    def scenario_at(self, value: float) -> Scenario:
        return replace(self.base, **{self.variable.value: value})

    def to_dict(self):
        return {
            "base": self.base.to_dict(),
            "variable": self.variable.value,
            "grid": list(self.grid),
            "outputs": [o for o in OUTPUTS if o in self.outputs],
        }


@dataclass(frozen=True)
class SweepRecord:
    variable_value: float
    capacity_result: CapacityResult
    energy_per_bit: Optional[float] = None


def default_workers() -> int:
    """Worker count from ``THERMOMIMO_THREADS`` (default 1)."""
    raw = os.environ.get(THREADS_ENV, "").strip()
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise ValidationError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    return max(1, n)


def _evaluate(spec: SweepSpec, value: float) -> SweepRecord:
    scenario = spec.scenario_at(value)
    link = scenario_to_link_spec(scenario)
    result = thermo_capacity(link)
    energy = None
    if "energy_per_bit" in spec.outputs:
        energy = link_energy_per_bit(link, scenario.noise_pool_temperature).direct
    return SweepRecord(value, result, energy)


def run_sweep(spec: SweepSpec, max_workers: int = None) -> List[SweepRecord]:
    """Evaluate every grid point of ``spec`` and return the records in grid order.

    Grid points are independent; with ``max_workers > 1`` they run on a
    thread pool.  The first failing point (in grid order) aborts the sweep
    with :class:`~thermomimo.exceptions.SweepError`, which carries the
    records completed before it.
    """
    workers = default_workers() if max_workers is None else max(1, int(max_workers))
    grid = spec.grid

    def failed(i, exc, records):
        return SweepError(i, grid[i], exc, records)

    records = []
    if workers == 1:
        for i, value in enumerate(grid):
            try:
                records.append(_evaluate(spec, value))
            except ThermoMimoError as exc:
                raise failed(i, exc, records) from exc
        return records

    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_evaluate, spec, value) for value in grid]
        for i, fut in enumerate(futures):
            try:
                records.append(fut.result())
            except ThermoMimoError as exc:
                for f in futures[i + 1:]:
                    f.cancel()
                raise failed(i, exc, records) from exc
    return records


def fig4_spec(base: Scenario, num: int = 61, max_noise_dof: float = 1e6) -> SweepSpec:
    """Noise DOF swept log-uniformly from 1 (impulse noise) to ``max_noise_dof``."""
    if num < 50:
        raise ValidationError("the noise-DOF sweep needs at least 50 points")
    grid = np.logspace(0.0, np.log10(max_noise_dof), num)
    grid[0], grid[-1] = 1.0, max_noise_dof
    return SweepSpec(base, SweepVariable.NOISE_DOF, tuple(grid.tolist()),
                     frozenset({"thermo", "shannon"}))


def fig5_spec(base: Scenario, psi_max: float = 2.0, num: int = 41) -> SweepSpec:
    """Coding overhead swept uniformly over ``[0, psi_max]``."""
    if num < 40:
        raise ValidationError("the coding-overhead sweep needs at least 40 points")
    grid = np.linspace(0.0, psi_max, num)
    return SweepSpec(base, SweepVariable.CODING_OVERHEAD, tuple(grid.tolist()),
                     frozenset({"thermo", "shannon", "lower_bound", "upper_bound"}))


def fig4_sweep(base: Scenario, max_workers: int = None, **kwargs) -> List[SweepRecord]:
    return run_sweep(fig4_spec(base, **kwargs), max_workers)


def fig5_sweep(base: Scenario, max_workers: int = None, **kwargs) -> List[SweepRecord]:
    return run_sweep(fig5_spec(base, **kwargs), max_workers)
