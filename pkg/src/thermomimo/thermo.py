"""Entropy, energy, temperature and degrees-of-freedom bookkeeping.

Every quantity here is SI: energies in J, temperatures in K, entropies in
J/K.  Degrees of freedom (DOF) are dimensionless bit counts and are tied to
entropy through ``H = U / T = k_B * M * ln 2``.
"""

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from ._validation import (
    check_count,
    check_nonempty,
    check_nonnegative,
    check_positive,
    check_scalar,
)
from .constants import DEFAULT_CONSTANTS, PhysicalConstants
from .exceptions import ConservationError, DomainError, ValidationError

__all__ = [
    "SymbolDistribution",
    "ThermoQuantity",
    "BranchParams",
    "DecodeBranch",
    "DecodeBalance",
    "EnergyPerBit",
    "gibbs_entropy",
    "sequence_entropy",
    "thermo_quantity",
    "total_send_dof",
    "total_noise_dof",
    "detector_temperature",
    "detector_temperature_limits",
    "decode_entropy_balance",
    "carnot_efficiency",
    "energy_per_bit",
    "landauer_floor",
    "carnot_limited_outputs",
]

RTOL_IDENTITY = 1e-9
_SUM_TOL = 1e-12


@dataclass(frozen=True)
class SymbolDistribution:
    """Probabilities of the ``len(probabilities)`` possible symbol states."""

    probabilities: tuple

    def __post_init__(self):
        probs = tuple(float(p) for p in self.probabilities)
        if not probs:
            raise ValidationError("distribution must have at least one state")
        for j, p in enumerate(probs):
            if math.isnan(p) or p < 0.0 or p > 1.0:
                raise ValidationError(f"probability p[{j}] = {p!r} is outside [0, 1]")
        total = math.fsum(probs)
        if abs(total - 1.0) > _SUM_TOL:
            raise ValidationError(
                f"probabilities sum to {total!r}, expected 1 (last entry p[{len(probs) - 1}])"
            )
        object.__setattr__(self, "probabilities", probs)

    @property
    def num_states(self) -> int:
        return len(self.probabilities)


def _as_distribution(dist) -> SymbolDistribution:
    if isinstance(dist, SymbolDistribution):
        return dist
    return SymbolDistribution(tuple(dist))


def gibbs_entropy(dist, constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Gibbs entropy ``-k_B * sum(p ln p)`` of one symbol, in J/K.

    States with ``p == 0`` contribute nothing.
    """
    dist = _as_distribution(dist)
    s = math.fsum(p * math.log(p) for p in dist.probabilities if p > 0.0)
    # -0.0 for deterministic symbols
    return max(0.0, -constants.k_B * s)


def sequence_entropy(num_symbols: int, dist, constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Total entropy of ``num_symbols`` independent, identically distributed symbols."""
    n = check_count(num_symbols, "num_symbols", minimum=0)
    return n * gibbs_entropy(dist, constants)


@dataclass(frozen=True)
class ThermoQuantity:
    """A lump of signal described by energy, temperature, DOF and entropy.

    Build instances through the ``from_*`` constructors or
    :func:`thermo_quantity`; direct construction checks that the four fields
    agree to a relative ``1e-9``.
    """

    energy: float
    temperature: float
    dof: float
    entropy: float
    constants: PhysicalConstants = field(default=DEFAULT_CONSTANTS, repr=False, compare=False)

    def __post_init__(self):
        check_positive(self.temperature, "temperature")
        check_nonnegative(self.energy, "energy")
        check_nonnegative(self.dof, "dof")
        bf = self.constants.bit_factor
        h_from_energy = self.energy / self.temperature
        for label, h in (("entropy", self.entropy), ("bit_factor * dof", bf * self.dof)):
            if not math.isclose(h, h_from_energy, rel_tol=RTOL_IDENTITY, abs_tol=0.0):
                raise ValidationError(
                    f"inconsistent quantity: energy/temperature = {h_from_energy!r} "
                    f"but {label} = {h!r}"
                )

    @classmethod
    def from_energy_temperature(cls, energy, temperature, constants=DEFAULT_CONSTANTS):
        energy = check_nonnegative(energy, "energy", error=DomainError)
        temperature = check_positive(temperature, "temperature")
        entropy = energy / temperature
        return cls(energy, temperature, entropy / constants.bit_factor, entropy, constants)

    @classmethod
    def from_dof_temperature(cls, dof, temperature, constants=DEFAULT_CONSTANTS):
        dof = check_nonnegative(dof, "dof", error=DomainError)
        temperature = check_positive(temperature, "temperature")
        entropy = constants.bit_factor * dof
        return cls(entropy * temperature, temperature, dof, entropy, constants)

    @classmethod
    def from_dof_energy(cls, dof, energy, constants=DEFAULT_CONSTANTS):
        dof = check_positive(dof, "dof")
        energy = check_positive(energy, "energy")
        entropy = constants.bit_factor * dof
        return cls(energy, energy / entropy, dof, entropy, constants)


def thermo_quantity(energy, temperature, constants: PhysicalConstants = DEFAULT_CONSTANTS) -> ThermoQuantity:
    """Shorthand for :meth:`ThermoQuantity.from_energy_temperature`."""
    return ThermoQuantity.from_energy_temperature(energy, temperature, constants)


@dataclass(frozen=True)
class BranchParams:
    """Powers, DOF counts and temperatures of one antenna branch.

    Powers are in W and become energies through ``U = P * tau``.
    ``noise_dof`` may be ``math.inf`` to represent the Gaussian-noise limit.
    """

    signal_power: float
    fec_power: float
    noise_power: float
    signal_dof: float
    fec_dof: float
    noise_dof: float
    signal_temperature: float
    noise_temperature: float

    def __post_init__(self):
        check_nonnegative(self.signal_power, "signal_power")
        check_nonnegative(self.fec_power, "fec_power")
        check_scalar(self.noise_power, "noise_power", min_value=0.0, strict=True,
                     error=ValidationError)
        check_nonnegative(self.signal_dof, "signal_dof")
        check_nonnegative(self.fec_dof, "fec_dof")
        check_scalar(self.noise_dof, "noise_dof", min_value=0.0, strict=True,
                     allow_inf=True, error=ValidationError)
        check_scalar(self.signal_temperature, "signal_temperature", min_value=0.0,
                     strict=True, error=ValidationError)
        check_scalar(self.noise_temperature, "noise_temperature", min_value=0.0,
                     strict=True, error=ValidationError)

    @property
    def transmit_power(self) -> float:
        """Signal plus FEC power."""
        return self.signal_power + self.fec_power

    @property
    def transmit_dof(self) -> float:
        return self.signal_dof + self.fec_dof


def total_send_dof(branches: Sequence[BranchParams], tau: float,
                   constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """DOF launched by all transmit branches, ``sum((S + P_FEC) * tau / (k_B ln2 T))``."""
    branches = check_nonempty(branches, "branches")
    tau = check_positive(tau, "tau")
    bf = constants.bit_factor
    return math.fsum(b.transmit_power * tau / (bf * b.signal_temperature) for b in branches)


def total_noise_dof(branches: Sequence[BranchParams], tau: float,
                    constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """DOF injected by channel noise, ``sum(N * tau / (k_B ln2 T_N))``."""
    branches = check_nonempty(branches, "branches")
    tau = check_positive(tau, "tau")
    return _noise_dof(branches, tau, constants)


def _noise_dof(branches, tau, constants):
    bf = constants.bit_factor
    return math.fsum(b.noise_power * tau / (bf * b.noise_temperature) for b in branches)


def detector_temperature(total_energy: float, send_branches: Sequence[BranchParams],
                         noise_branches: Sequence[BranchParams], tau: float,
                         constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Temperature of the receiver's detector under DOF conservation.

    Solves ``U / T_HI = k_B ln2 * (M_send + M_noise)`` for ``T_HI``.
    ``noise_branches`` may be empty, which models a noiseless channel.
    """
    total_energy = check_positive(total_energy, "total_energy")
    send_branches = check_nonempty(send_branches, "send_branches")
    tau = check_positive(tau, "tau")
    dof = total_send_dof(send_branches, tau, constants)
    if noise_branches:
        dof += _noise_dof(list(noise_branches), tau, constants)
    if dof <= 0.0:
        raise DomainError("total received DOF is zero; detector temperature undefined")
    return total_energy / (constants.bit_factor * dof)


def detector_temperature_limits(send_branches: Sequence[BranchParams],
                                noise_branches: Sequence[BranchParams], tau: float,
                                constants: PhysicalConstants = DEFAULT_CONSTANTS):
    """Asymptotic detector temperatures ``(low_snr_limit, high_snr_limit)``.

    The low-SNR limit keeps only noise terms, the high-SNR limit only signal
    and FEC terms.  Each is the energy-weighted harmonic mean of the
    temperatures involved.
    """
    send_branches = check_nonempty(send_branches, "send_branches")
    noise_branches = check_nonempty(noise_branches, "noise_branches")
    tau = check_positive(tau, "tau")
    bf = constants.bit_factor

    noise_energy = math.fsum(b.noise_power * tau for b in noise_branches)
    low = noise_energy / (bf * _noise_dof(noise_branches, tau, constants))

    send_energy = math.fsum(b.transmit_power * tau for b in send_branches)
    if send_energy <= 0.0:
        raise DomainError("all send branches carry zero energy; high-SNR limit undefined")
    high = send_energy / (bf * total_send_dof(send_branches, tau, constants))
    return low, high


@dataclass(frozen=True)
class DecodeBranch:
    """Decoded output of one receive branch.

    ``output_dof`` is derived from energy and temperature when omitted.
    """

    output_energy: float
    output_temperature: float
    output_dof: float = None
    constants: PhysicalConstants = field(default=DEFAULT_CONSTANTS, repr=False, compare=False)

    def __post_init__(self):
        check_nonnegative(self.output_energy, "output_energy")
        check_scalar(self.output_temperature, "output_temperature", min_value=0.0,
                     strict=True, error=ValidationError)
        dof = self.output_energy / (self.constants.bit_factor * self.output_temperature)
        if self.output_dof is None:
            object.__setattr__(self, "output_dof", dof)
        elif not math.isclose(self.output_dof, dof, rel_tol=RTOL_IDENTITY, abs_tol=0.0):
            raise ValidationError(
                f"output_dof {self.output_dof!r} disagrees with energy/temperature ({dof!r})"
            )

    @property
    def entropy(self) -> float:
        return self.output_energy / self.output_temperature


class DecodeBalance(NamedTuple):
    """Result of :func:`decode_entropy_balance`.

    ``residual`` is ``H_U - (sum(H_O) + H_NS)`` in J/K and
    ``relative_residual`` divides it by ``H_U``.
    """

    noise_sink_dof: float
    residual: float
    relative_residual: float

    @property
    def balanced(self) -> bool:
        return abs(self.relative_residual) <= RTOL_IDENTITY


def _dissipated_energy(received: ThermoQuantity, outputs: Sequence[DecodeBranch]) -> float:
    out = math.fsum(o.output_energy for o in outputs)
    excess = out - received.energy
    if excess > _SUM_TOL * max(received.energy, out):
        raise ConservationError(
            f"decoded energy {out!r} J exceeds received energy {received.energy!r} J"
        )
    return max(received.energy - out, 0.0)


def decode_entropy_balance(received: ThermoQuantity, outputs: Sequence[DecodeBranch],
                           t_lo: float) -> DecodeBalance:
    """DOF dumped into the noise sink during decoding, plus the entropy residual.

    The sink receives the energy not carried by the decoded outputs at
    temperature ``t_lo``.  The residual checks
    ``H_U = sum(H_O) + H_NS``; it is zero (to rounding) only for inputs
    built to satisfy that balance.
    """
    t_lo = check_positive(t_lo, "t_lo")
    outputs = list(outputs)
    dissipated = _dissipated_energy(received, outputs)
    h_sink = dissipated / t_lo
    h_out = math.fsum(o.entropy for o in outputs)
    residual = received.entropy - (h_out + h_sink)
    rel = residual / received.entropy if received.entropy > 0 else (0.0 if residual == 0 else math.inf)
    return DecodeBalance(h_sink / received.constants.bit_factor, residual, rel)


def carnot_efficiency(t_lo: float, t_hi: float) -> float:
    """Carnot efficiency ``1 - t_lo / t_hi`` of a detector at ``t_hi`` over a sink at ``t_lo``."""
    t_lo = check_positive(t_lo, "t_lo")
    t_hi = check_positive(t_hi, "t_hi")
    if t_lo > t_hi:
        raise DomainError(f"t_lo = {t_lo} K exceeds t_hi = {t_hi} K; efficiency would be negative")
    return 1.0 - t_lo / t_hi


class EnergyPerBit(NamedTuple):
    direct: float
    closed_form: float


def landauer_floor(t_lo: float, constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Minimum dissipation per bit, ``k_B * t_lo * ln 2`` (J/bit)."""
    return constants.bit_factor * check_positive(t_lo, "t_lo")


def energy_per_bit(received: ThermoQuantity, outputs: Sequence[DecodeBranch],
                   t_lo: float) -> EnergyPerBit:
    """Energy dissipated per decoded bit.

    Returns
    -------
    EnergyPerBit
        ``direct`` is dissipated energy over total decoded DOF.
        ``closed_form`` is
        ``(1 + sum(T_O) / (n * T_HI)) / (1 - t_lo / T_HI) * k_B * t_lo * ln 2``
        with ``n = len(outputs)`` and ``T_HI = received.temperature``.

    Notes
    -----
    The two values agree only when the decoded DOF equal
    ``(1 + sum(T_O) / (n * T_HI)) * eta_c * M_NS``; they are reported side
    by side rather than reconciled.
    """
    t_lo = check_positive(t_lo, "t_lo")
    outputs = check_nonempty(outputs, "outputs")
    t_hi = received.temperature
    if t_lo >= t_hi:
        raise DomainError(
            f"t_lo = {t_lo} K must be below the detector temperature {t_hi} K"
        )
    m_out = math.fsum(o.output_dof for o in outputs)
    if m_out <= 0.0:
        raise DomainError("decoded outputs carry zero DOF; energy per bit undefined")
    dissipated = _dissipated_energy(received, outputs)
    direct = dissipated / m_out

    n = len(outputs)
    t_out = math.fsum(o.output_temperature for o in outputs)
    closed = (1.0 + t_out / (n * t_hi)) / (1.0 - t_lo / t_hi) * landauer_floor(t_lo, received.constants)
    return EnergyPerBit(direct, closed)


def carnot_limited_outputs(received: ThermoQuantity, t_lo: float,
                           temperatures: Sequence[float], weights: Sequence[float] = None,
                           reversibility: float = 1.0):
    """Decoded outputs of a decoder running at a fraction of the Carnot limit.

    The received energy is split between the noise sink and the outputs so
    that ``sum(M_O) = reversibility * eta_c * M_NS``.  ``weights`` set each
    output's share of the decoded energy (uniform by default) and
    ``temperatures`` its temperature.  ``reversibility = 1`` is the
    reversible decoder; smaller values dissipate more per bit.
    """
    t_lo = check_positive(t_lo, "t_lo")
    temperatures = [check_positive(t, "temperatures") for t in check_nonempty(temperatures, "temperatures")]
    if weights is None:
        weights = [1.0] * len(temperatures)
    weights = [check_nonnegative(w, "weights") for w in weights]
    if len(weights) != len(temperatures):
        raise ValidationError("weights and temperatures must have equal length")
    wsum = math.fsum(weights)
    if wsum <= 0.0:
        raise ValidationError("weights must not all be zero")
    weights = [w / wsum for w in weights]
    r = check_scalar(reversibility, "reversibility", min_value=0.0, strict=True)
    if r > 1.0:
        raise DomainError("reversibility above 1 would beat the Carnot limit")

    eta = carnot_efficiency(t_lo, received.temperature)
    u = received.energy
    k = math.fsum(w / t for w, t in zip(weights, temperatures))
    # (U - D) * k = r * eta * D / t_lo
    dissipated = u * k / (k + r * eta / t_lo)
    decoded = u - dissipated
    return [DecodeBranch(w * decoded, t, constants=received.constants)
            for w, t in zip(weights, temperatures)]
