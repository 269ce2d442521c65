"""Thermodynamic capacity model of massive-MIMO links.

Entropy and degrees-of-freedom bookkeeping, Carnot-limited decoding energy,
a thermodynamic channel capacity with bounds, and reproducible parameter
sweeps.
"""

__version__ = "0.1.0"

from .capacity import (  # noqa: E402
    CapacityResult,
    LinkSpec,
    capacity_bounds,
    degenerate_capacity,
    noise_sink_rate,
    shannon_capacity,
    thermo_capacity,
)
from .channel import (  # noqa: E402
    ChannelMatrix,
    ChannelMode,
    Modulation,
    Scenario,
    eigenmode_gains,
    generate_channel,
    scenario_to_link_spec,
)
from .constants import DEFAULT_CONSTANTS, PhysicalConstants  # noqa: E402
from .energy import link_energy_per_bit  # noqa: E402
from .exceptions import (  # noqa: E402
    ConfigError,
    ConservationError,
    DomainError,
    SweepError,
    ThermoMimoError,
    ValidationError,
)
from .sweep import SweepRecord, SweepSpec, fig4_sweep, fig5_sweep, run_sweep  # noqa: E402
from .thermo import (  # noqa: E402
    BranchParams,
    DecodeBranch,
    SymbolDistribution,
    ThermoQuantity,
    carnot_efficiency,
    decode_entropy_balance,
    detector_temperature,
    detector_temperature_limits,
    energy_per_bit,
    gibbs_entropy,
    landauer_floor,
    sequence_entropy,
    thermo_quantity,
    total_noise_dof,
    total_send_dof,
)
