"""Per-bit decoding energy for a whole link."""

import math
from typing import NamedTuple

from ._validation import check_positive
from .capacity import LinkSpec
from .constants import DEFAULT_CONSTANTS
from .thermo import (
    ThermoQuantity,
    carnot_efficiency,
    carnot_limited_outputs,
    detector_temperature,
    energy_per_bit,
    landauer_floor,
)

__all__ = ["EnergyReport", "received_quantity", "link_energy_per_bit"]


class EnergyReport(NamedTuple):
    direct: float
    closed_form: float
    floor: float
    t_hi: float
    t_lo: float
    efficiency: float
    decoded_dof: float


def received_quantity(link: LinkSpec, t_hi: float = None, constants=DEFAULT_CONSTANTS) -> ThermoQuantity:
    """Energy reaching the detector during one symbol period, at the detector temperature.

    The energy is the sum of signal, FEC and noise energies over all
    branches.  ``t_hi`` overrides the temperature obtained from DOF
    conservation.
    """
    tau = link.symbol_period
    energy = math.fsum((b.transmit_power + b.noise_power) * tau for b in link.branches)
    if t_hi is None:
        t_hi = detector_temperature(energy, link.branches, link.branches, tau, constants)
    return ThermoQuantity.from_energy_temperature(energy, t_hi, constants)


def link_energy_per_bit(link: LinkSpec, t_lo: float, output_temperature: float = None,
                        t_hi: float = None, reversibility: float = 1.0,
                        constants=DEFAULT_CONSTANTS) -> EnergyReport:
    """Energy dissipated per decoded bit when ``link`` is decoded over a sink at ``t_lo``.

    One decoded output per branch, all at ``output_temperature`` (default:
    the detector temperature), from a decoder running at ``reversibility``
    times the Carnot limit.  Raises :class:`~thermomimo.exceptions.DomainError`
    unless the detector is hotter than the sink.
    """
    t_lo = check_positive(t_lo, "t_lo")
    received = received_quantity(link, t_hi, constants)
    eta = carnot_efficiency(t_lo, received.temperature)
    t_out = received.temperature if output_temperature is None else output_temperature
    outputs = carnot_limited_outputs(received, t_lo, [t_out] * link.num_branches,
                                     reversibility=reversibility)
    e = energy_per_bit(received, outputs, t_lo)
    return EnergyReport(
        direct=e.direct,
        closed_form=e.closed_form,
        floor=landauer_floor(t_lo, constants),
        t_hi=received.temperature,
        t_lo=t_lo,
        efficiency=eta,
        decoded_dof=math.fsum(o.output_dof for o in outputs),
    )
