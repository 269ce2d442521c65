"""Shannon and thermodynamic capacity of a set of parallel MIMO subchannels."""

import math
import sys
from dataclasses import dataclass, field
from typing import Sequence, Tuple

import numpy as np

from ._validation import as_float_vector, check_count, check_positive
from .exceptions import DomainError, ValidationError
from .thermo import BranchParams

__all__ = [
    "LinkSpec",
    "CapacityResult",
    "shannon_capacity",
    "noise_sink_rate",
    "thermo_capacity",
    "degenerate_capacity",
    "capacity_bounds",
    "branch_ratios",
    "capacity_from_ratios",
]

# log2 of the largest finite double
_LOG2_MAX = math.log2(sys.float_info.max)


@dataclass(frozen=True)
class LinkSpec:
    """Bandwidth, symbol period and the ``min(n_t, n_r)`` effective branches of a link.

    ``gains`` holds optional per-branch amplitude gains (eigenmode singular
    values); the SNR ratio of branch ``i`` is multiplied by ``gains[i]**2``.
    ``None`` means unit gain on every branch.
    """

    bandwidth: float
    symbol_period: float
    branches: Tuple[BranchParams, ...]
    n_t: int
    n_r: int
    gains: Tuple[float, ...] = None

    def __post_init__(self):
        check_positive(self.bandwidth, "bandwidth")
        check_positive(self.symbol_period, "symbol_period")
        check_count(self.n_t, "n_t")
        check_count(self.n_r, "n_r")
        branches = tuple(self.branches)
        for i, b in enumerate(branches):
            if not isinstance(b, BranchParams):
                raise ValidationError(f"branches[{i}] is not a BranchParams")
        n = min(self.n_t, self.n_r)
        if len(branches) != n:
            raise ValidationError(
                f"expected min(n_t, n_r) = {n} branches, got {len(branches)}"
            )
        object.__setattr__(self, "branches", branches)
        if self.gains is not None:
            gains = tuple(float(g) for g in as_float_vector(self.gains, "gains", min_value=0.0))
            if len(gains) != n:
                raise ValidationError(f"expected {n} gains, got {len(gains)}")
            object.__setattr__(self, "gains", gains)

    @property
    def num_branches(self) -> int:
        return len(self.branches)


@dataclass(frozen=True)
class CapacityResult:
    """Thermodynamic capacity of a link and its reference values (all bit/s)."""

    thermo_capacity: float
    lower_bound: float
    upper_bound: float
    shannon_reference: float
    per_branch_terms: Tuple[Tuple[float, float], ...]
    warnings: Tuple[str, ...] = field(default=())

    def to_dict(self):
        return {
            "thermo_capacity": self.thermo_capacity,
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "shannon_reference": self.shannon_reference,
            "per_branch_terms": [list(t) for t in self.per_branch_terms],
            "warnings": list(self.warnings),
        }


def shannon_capacity(bandwidth: float, gains: Sequence[float], snrs: Sequence[float]) -> float:
    """``B * sum(log2(1 + gain**2 * snr))`` over parallel subchannels, in bit/s."""
    bandwidth = check_positive(bandwidth, "bandwidth")
    lam = as_float_vector(gains, "gains", min_value=0.0)
    rho = as_float_vector(snrs, "snrs", min_value=0.0)
    if lam.shape != rho.shape:
        raise ValidationError(
            f"gains and snrs must have equal length ({lam.size} != {rho.size})"
        )
    return bandwidth * math.fsum(np.log2(1.0 + lam ** 2 * rho).tolist())


def noise_sink_rate(bandwidth: float, tau: float) -> float:
    """DOF one receive branch dumps into the noise sink per symbol period, ``tau * B / ln 2``.

    Follows from a thermal noise power ``k_B T B`` absorbed at temperature
    ``T`` over ``tau`` seconds.
    """
    bandwidth = check_positive(bandwidth, "bandwidth")
    tau = check_positive(tau, "tau")
    return tau * bandwidth / math.log(2.0)


def branch_ratios(spec: LinkSpec):
    """Per-branch SNR ratios ``x`` and DOF ratios ``d`` as float arrays."""
    gains = spec.gains or (1.0,) * spec.num_branches
    x = np.empty(spec.num_branches)
    d = np.empty(spec.num_branches)
    for i, (b, g) in enumerate(zip(spec.branches, gains)):
        if not b.noise_power > 0.0:
            raise DomainError(f"branch {i}: noise power must be positive")
        if not b.noise_dof > 0.0:
            raise DomainError(f"branch {i}: noise DOF must be positive")
        x[i] = g * g * b.transmit_power / b.noise_power
        d[i] = b.transmit_dof / b.noise_dof
    return x, d


def _log2_one_plus_product(values, label, warnings):
    """``log2(1 + prod(values))`` evaluated without forming the product."""
    if (values == 0.0).any():
        return 0.0
    if values.size == 1:
        return float(np.log2(1.0 + values[0]))
    s = math.fsum(np.log2(values).tolist())
    if s > _LOG2_MAX:
        warnings.append(
            f"product of {label} ratios (2**{s:.1f}) exceeds the float range; "
            "evaluated in log domain"
        )
    return float(np.logaddexp2(0.0, s))


def _bounds(bandwidth, x, d, warnings):
    n = x.size
    lower = _log2_one_plus_product(x, "SNR", warnings) - n * float(np.log2(1.0 + math.fsum(d.tolist())))
    upper = n * float(np.log2(1.0 + math.fsum(x.tolist()) / n)) - _log2_one_plus_product(d, "DOF", warnings)
    return bandwidth * lower, bandwidth * upper


def capacity_bounds(spec: LinkSpec):
    """Lower and upper bounds ``(C_LO, C_HI)`` on :func:`thermo_capacity`, in bit/s.

    With ``n`` branches, SNR ratios ``x`` and DOF ratios ``d``::

        C_LO = B * (log2(1 + prod(x)) - n * log2(1 + sum(d)))
        C_HI = B * (n * log2(1 + sum(x) / n) - log2(1 + prod(d)))
    """
    x, d = branch_ratios(spec)
    return _bounds(spec.bandwidth, x, d, [])


def degenerate_capacity(spec: LinkSpec) -> float:
    """Capacity in the limit of infinite noise DOF, i.e. the Shannon form."""
    x, _ = branch_ratios(spec)
    return spec.bandwidth * math.fsum(np.log2(1.0 + x).tolist())


def thermo_capacity(spec: LinkSpec, clamp_negative: bool = False) -> CapacityResult:
    """Thermodynamic channel capacity of ``spec`` with bounds and Shannon reference.

    Each branch contributes ``B * log2(1 + x_i)`` minus ``B * log2(1 + d_i)``.
    A branch whose DOF term outweighs its SNR term yields a negative
    contribution; it is kept as is and reported in ``warnings`` unless
    ``clamp_negative`` is set, in which case that branch contributes zero.
    """
    x, d = branch_ratios(spec)
    return capacity_from_ratios(spec.bandwidth, x, d, clamp_negative)


def capacity_from_ratios(bandwidth, x, d, clamp_negative=False) -> CapacityResult:
    """:func:`thermo_capacity` for precomputed SNR ratios ``x`` and DOF ratios ``d``."""
    bw = check_positive(bandwidth, "bandwidth")
    x = as_float_vector(x, "x", min_value=0.0)
    d = as_float_vector(d, "d", min_value=0.0)
    if x.shape != d.shape:
        raise ValidationError("x and d must have equal length")
    warnings = []
    terms = []
    net = []
    snr_log = np.log2(1.0 + x).tolist()
    dof_log = np.log2(1.0 + d).tolist()
    for i, (snr_bits, dof_bits) in enumerate(zip(snr_log, dof_log)):
        terms.append((bw * snr_bits, bw * dof_bits))
        value = snr_bits - dof_bits
        if value < 0.0:
            action = "clamped to 0" if clamp_negative else "kept"
            warnings.append(
                f"branch {i}: DOF term exceeds SNR term, negative contribution "
                f"{bw * value:.6g} bit/s {action}"
            )
            if clamp_negative:
                value = 0.0
        net.append(value)
    lower, upper = _bounds(bw, x, d, warnings)
    return CapacityResult(
        thermo_capacity=bw * math.fsum(net),
        lower_bound=lower,
        upper_bound=upper,
        shannon_reference=bw * math.fsum(snr_log),
        per_branch_terms=tuple(terms),
        warnings=tuple(warnings),
    )
