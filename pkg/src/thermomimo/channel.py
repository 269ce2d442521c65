"""Channel realizations and translation of scenarios into per-branch link parameters."""

import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from ._validation import (
    check_count,
    check_nonnegative,
    check_positive,
    check_scalar,
)
from .capacity import LinkSpec
from .constants import DEFAULT_CONSTANTS, PhysicalConstants
from .exceptions import ValidationError
from .thermo import BranchParams

__all__ = [
    "Modulation",
    "ChannelMode",
    "ChannelMatrix",
    "Scenario",
    "generate_channel",
    "eigenmode_gains",
    "scenario_to_link_spec",
    "thermal_noise_power",
    "signal_power_for_snr",
    "db_to_linear",
    "ROOM_TEMPERATURE",
]

ROOM_TEMPERATURE = 298.15


class Modulation(str, Enum):
    BPSK = "BPSK"
    QPSK = "QPSK"
    QAM16 = "16QAM"
    QAM64 = "64QAM"
    QAM256 = "256QAM"

    @property
    def bits_per_symbol(self) -> int:
        return _BITS_PER_SYMBOL[self]

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).strip().upper().replace("-", "")
        for m in cls:
            if m.value == key:
                return m
        raise ValidationError(
            f"unknown modulation {value!r}; expected one of {[m.value for m in cls]}"
        )


_BITS_PER_SYMBOL = {
    Modulation.BPSK: 1,
    Modulation.QPSK: 2,
    Modulation.QAM16: 4,
    Modulation.QAM64: 6,
    Modulation.QAM256: 8,
}


class ChannelMode(str, Enum):
    UNIT_GAIN = "unit_gain"
    RAYLEIGH = "rayleigh"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ValidationError(
                f"unknown channel mode {value!r}; expected 'unit_gain' or 'rayleigh'"
            ) from None


def db_to_linear(db):
    return 10.0 ** (db / 10.0)


def thermal_noise_power(temperature, bandwidth, constants=DEFAULT_CONSTANTS):
    """Thermal noise power ``k_B * T * B`` in W."""
    return constants.k_B * temperature * bandwidth


def signal_power_for_snr(snr_db, num_branches, noise_temperature, bandwidth,
                         constants=DEFAULT_CONSTANTS):
    """Total signal power giving every branch a source SNR of ``snr_db`` over thermal noise."""
    return num_branches * db_to_linear(snr_db) * thermal_noise_power(
        noise_temperature, bandwidth, constants)


@dataclass(frozen=True, eq=False)
class ChannelMatrix:
    """An ``n_r x n_t`` complex channel realization and the seed that produced it."""

    entries: np.ndarray
    seed: int

    def __post_init__(self):
        h = np.array(self.entries, dtype=complex)
        if h.ndim != 2 or 0 in h.shape:
            raise ValidationError(f"channel matrix must be 2-D and non-empty, got shape {h.shape}")
        h.setflags(write=False)
        object.__setattr__(self, "entries", h)

    @property
    def n_r(self) -> int:
        return self.entries.shape[0]

    @property
    def n_t(self) -> int:
        return self.entries.shape[1]


def generate_channel(n_t: int, n_r: int, seed: int) -> ChannelMatrix:
    """Draw an i.i.d. Rayleigh channel with unit-variance complex Gaussian entries.

    Uniform doubles come from NumPy's PCG64 bit generator seeded with
    ``seed``; each entry is built from one pair ``(u1, u2)`` by the
    Box-Muller transform ``sqrt(-2 ln(1 - u1)) * exp(2j pi u2) / sqrt(2)``,
    filled row-major.
    """
    n_t = check_count(n_t, "n_t")
    n_r = check_count(n_r, "n_r")
    seed = check_count(seed, "seed", minimum=0)
    rng = np.random.Generator(np.random.PCG64(seed))
    u = rng.random(2 * n_r * n_t).reshape(n_r * n_t, 2)
    radius = np.sqrt(-2.0 * np.log1p(-u[:, 0]))
    phase = 2.0 * np.pi * u[:, 1]
    h = radius * (np.cos(phase) + 1j * np.sin(phase)) / math.sqrt(2.0)
    return ChannelMatrix(h.reshape(n_r, n_t), seed)


def eigenmode_gains(channel) -> np.ndarray:
    """Singular values of the channel, in descending order (``min(n_t, n_r)`` of them)."""
    h = channel.entries if isinstance(channel, ChannelMatrix) else np.asarray(channel, dtype=complex)
    if h.ndim != 2 or 0 in h.shape:
        raise ValidationError(f"channel matrix must be 2-D and non-empty, got shape {h.shape}")
    s = np.linalg.svd(h, compute_uv=False)
    return np.sort(np.clip(s, 0.0, None))[::-1]


@dataclass(frozen=True)
class Scenario:
    """High-level description of a MIMO link.

    Parameters
    ----------
    n_t, n_r : int
        Transmit and receive antenna counts.
    bandwidth : float
        Channel bandwidth in Hz.
    symbol_period : float or None
        Symbol period in s; ``None`` means ``1 / bandwidth``.
    modulation : Modulation
        Sets the source DOF per symbol (bits per symbol).
    total_signal_power : float
        Source signal power in W, split evenly over ``min(n_t, n_r)`` branches.
    coding_overhead : float
        Ratio of FEC DOF to source DOF.
    noise_temperature : float
        Temperature of the channel noise in K.
    noise_dof : float
        Noise DOF per branch; ``math.inf`` gives the Gaussian limit.
    noise_pool_temperature : float
        Temperature of the decoder's noise sink in K.
    channel_mode : ChannelMode
        ``unit_gain`` or ``rayleigh``.
    seed : int
        Seed of the Rayleigh realization (ignored for unit gain).
    """

    n_t: int = 128
    n_r: int = 4
    bandwidth: float = 20e6
    symbol_period: float = None
    modulation: Modulation = Modulation.QAM64
    total_signal_power: float = None
    coding_overhead: float = 0.2
    noise_temperature: float = ROOM_TEMPERATURE
    noise_dof: float = 100.0
    noise_pool_temperature: float = ROOM_TEMPERATURE
    channel_mode: ChannelMode = ChannelMode.UNIT_GAIN
    seed: int = 0

    def __post_init__(self):
        check_count(self.n_t, "n_t")
        check_count(self.n_r, "n_r")
        check_positive(self.bandwidth, "bandwidth")
        if self.symbol_period is None:
            object.__setattr__(self, "symbol_period", 1.0 / self.bandwidth)
        check_positive(self.symbol_period, "symbol_period")
        object.__setattr__(self, "modulation", Modulation.parse(self.modulation))
        object.__setattr__(self, "channel_mode", ChannelMode.parse(self.channel_mode))
        if self.total_signal_power is None:
            object.__setattr__(self, "total_signal_power", signal_power_for_snr(
                10.0, min(self.n_t, self.n_r), self.noise_temperature, self.bandwidth))
        check_positive(self.total_signal_power, "total_signal_power")
        check_nonnegative(self.coding_overhead, "coding_overhead")
        check_positive(self.noise_temperature, "noise_temperature")
        check_positive(self.noise_dof, "noise_dof", allow_inf=True)
        check_positive(self.noise_pool_temperature, "noise_pool_temperature")
        check_count(self.seed, "seed", minimum=0)

    @property
    def num_branches(self) -> int:
        return min(self.n_t, self.n_r)

    @classmethod
    def table1(cls, snr_db=10.0, **overrides):
        """The reference setup: 64QAM, 128 x 4 antennas, 20 MHz, noise at 298.15 K.

        Fields the reference setup leaves open get package defaults: 10 dB
        per-branch SNR, coding overhead 0.2, 100 noise DOF per branch and a
        noise sink at room temperature.
        """
        base = cls(**{k: v for k, v in overrides.items() if k != "total_signal_power"})
        power = overrides.get("total_signal_power")
        if power is None:
            power = signal_power_for_snr(snr_db, base.num_branches,
                                         base.noise_temperature, base.bandwidth)
        return replace(base, total_signal_power=power)

    def to_dict(self):
        return {
            "n_t": self.n_t,
            "n_r": self.n_r,
            "bandwidth": self.bandwidth,
            "symbol_period": self.symbol_period,
            "modulation": self.modulation.value,
            "total_signal_power": self.total_signal_power,
            "coding_overhead": self.coding_overhead,
            "noise_temperature": self.noise_temperature,
            "noise_dof": self.noise_dof,
            "noise_pool_temperature": self.noise_pool_temperature,
            "channel_mode": self.channel_mode.value,
            "seed": self.seed,
        }


def scenario_to_link_spec(scenario: Scenario,
                          constants: PhysicalConstants = DEFAULT_CONSTANTS) -> LinkSpec:
    """Build the per-branch parameters of ``scenario``.

    Power is split evenly across the ``min(n_t, n_r)`` branches and the FEC
    bits get the same energy per DOF as the source bits, so
    ``P_FEC = psi * S`` and ``M_FEC = psi * M_S``.  One symbol is sent every
    ``1 / B`` seconds, giving ``M_S = bits_per_symbol * B * tau``.
    """
    s = scenario
    n = s.num_branches
    tau = s.symbol_period
    psi = check_scalar(s.coding_overhead, "coding_overhead", min_value=0.0)

    signal = s.total_signal_power / n
    fec = psi * signal
    noise = thermal_noise_power(s.noise_temperature, s.bandwidth, constants)
    m_s = s.modulation.bits_per_symbol * s.bandwidth * tau
    m_fec = psi * m_s
    t_signal = (signal + fec) * tau / (constants.bit_factor * (m_s + m_fec))

    branch = BranchParams(
        signal_power=signal,
        fec_power=fec,
        noise_power=noise,
        signal_dof=m_s,
        fec_dof=m_fec,
        noise_dof=float(s.noise_dof),
        signal_temperature=t_signal,
        noise_temperature=s.noise_temperature,
    )
    gains = None
    if s.channel_mode is ChannelMode.RAYLEIGH:
        gains = tuple(eigenmode_gains(generate_channel(s.n_t, s.n_r, s.seed)).tolist())
    return LinkSpec(s.bandwidth, tau, (branch,) * n, s.n_t, s.n_r, gains)
