"""scikit-learn compatible wrappers around the capacity model.

Both classes follow the usual estimator contract: hyperparameters are
stored untouched in ``__init__``, validation happens in ``fit``, learned
attributes end with an underscore, and ``get_params``/``set_params`` come
from :class:`~sklearn.base.BaseEstimator`.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .capacity import capacity_from_ratios
from .channel import Scenario
from .exceptions import ValidationError
from .sweep import OUTPUTS, SweepSpec, SweepVariable, _evaluate

__all__ = ["ThermoCapacity", "CapacitySweep"]

BRANCH_FEATURES = ("signal_power", "fec_power", "noise_power", "signal_dof", "fec_dof", "noise_dof")


def _check_branch_matrix(X):
    # noise_dof may be +inf (Gaussian limit); NaN is still rejected below
    X = check_array(X, dtype=float, ensure_all_finite=False)
    if X.shape[1] != len(BRANCH_FEATURES):
        raise ValidationError(
            f"expected {len(BRANCH_FEATURES)} columns {BRANCH_FEATURES}, got {X.shape[1]}"
        )
    if np.isnan(X).any():
        raise ValidationError("input contains NaN")
    if np.isinf(X[:, :5]).any():
        raise ValidationError("only the noise_dof column may be infinite")
    if (X < 0).any():
        raise ValidationError("powers and DOF counts must be non-negative")
    if not (X[:, 2] > 0).all() or not (X[:, 5] > 0).all():
        raise ValidationError("noise_power and noise_dof must be positive")
    return X


def _ratios(X):
    x = (X[:, 0] + X[:, 1]) / X[:, 2]
    d = (X[:, 3] + X[:, 4]) / X[:, 5]
    return x, d


class ThermoCapacity(TransformerMixin, BaseEstimator):
    """Thermodynamic capacity of one link whose rows are its parallel branches.

    Columns of ``X`` are ``signal_power, fec_power, noise_power, signal_dof,
    fec_dof, noise_dof``.  ``fit`` evaluates the link formed by all rows;
    ``transform`` returns per-row ``(snr_term, dof_term, net)`` in bit/s and
    ``predict`` the ``net`` column.

    Parameters
    ----------
    bandwidth : float, default=20e6
        Channel bandwidth in Hz.
    clamp_negative : bool, default=False
        Replace negative branch contributions with zero.

    Attributes
    ----------
    result_ : CapacityResult
    capacity_, lower_bound_, upper_bound_, shannon_ : float
    n_features_in_ : int
    """

    def __init__(self, bandwidth=20e6, clamp_negative=False):
        self.bandwidth = bandwidth
        self.clamp_negative = clamp_negative

    def fit(self, X, y=None):
        X = _check_branch_matrix(X)
        x, d = _ratios(X)
        self.result_ = capacity_from_ratios(self.bandwidth, x, d, self.clamp_negative)
        self.capacity_ = self.result_.thermo_capacity
        self.lower_bound_ = self.result_.lower_bound
        self.upper_bound_ = self.result_.upper_bound
        self.shannon_ = self.result_.shannon_reference
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "result_")
        X = _check_branch_matrix(X)
        x, d = _ratios(X)
        snr = self.bandwidth * np.log2(1.0 + x)
        dof = self.bandwidth * np.log2(1.0 + d)
        net = snr - dof
        if self.clamp_negative:
            net = np.maximum(net, 0.0)
        return np.column_stack([snr, dof, net])

    def predict(self, X):
        return self.transform(X)[:, 2]

    def get_feature_names_out(self, input_features=None):
        return np.array(["snr_term", "dof_term", "net"], dtype=object)


class CapacitySweep(BaseEstimator):
    """Map values of one scenario parameter to capacity figures.

    ``transform`` takes a column of ``variable`` values and returns one row
    per value with the requested ``outputs`` (bit/s, or J/bit for
    ``energy_per_bit``).  Rows are evaluated independently, so the input
    need not be sorted.

    Parameters
    ----------
    scenario : Scenario, default=None
        Base scenario; ``None`` means ``Scenario.table1()``.
    variable : {"noise_dof", "coding_overhead"}, default="noise_dof"
    outputs : tuple of str, default=("thermo", "shannon", "lower_bound", "upper_bound")
    """

    def __init__(self, scenario=None, variable="noise_dof",
                 outputs=("thermo", "shannon", "lower_bound", "upper_bound")):
        self.scenario = scenario
        self.variable = variable
        self.outputs = outputs

    def fit(self, X=None, y=None):
        self.scenario_ = Scenario.table1() if self.scenario is None else self.scenario
        if not isinstance(self.scenario_, Scenario):
            raise ValidationError("scenario must be a Scenario instance")
        self.variable_ = SweepVariable.parse(self.variable)
        unknown = set(self.outputs) - set(OUTPUTS)
        if unknown or not self.outputs:
            raise ValidationError(f"unknown outputs {sorted(unknown)}")
        self.outputs_ = tuple(self.outputs)
        self.n_features_in_ = 1
        return self

    def transform(self, X):
        check_is_fitted(self, "scenario_")
        X = check_array(X, dtype=float, ensure_2d=False)
        values = X.reshape(-1) if X.ndim == 1 or X.shape[1] == 1 else None
        if values is None:
            raise ValidationError(f"expected a single column, got shape {X.shape}")
        out = np.empty((values.size, len(self.outputs_)))
        for i, v in enumerate(values.tolist()):
            spec = SweepSpec(self.scenario_, self.variable_, (v,), frozenset(self.outputs_))
            rec = _evaluate(spec, v)
            row = _record_row(rec)
            out[i] = [row[name] for name in self.outputs_]
        return out

    def fit_transform(self, X, y=None):
        return self.fit(X).transform(X)

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "outputs_")
        return np.array(self.outputs_, dtype=object)


def _record_row(rec):
    r = rec.capacity_result
    return {
        "thermo": r.thermo_capacity,
        "shannon": r.shannon_reference,
        "lower_bound": r.lower_bound,
        "upper_bound": r.upper_bound,
        "energy_per_bit": np.nan if rec.energy_per_bit is None else rec.energy_per_bit,
    }
