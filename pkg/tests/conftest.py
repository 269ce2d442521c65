import math

import numpy as np
import pytest

from thermomimo.constants import DEFAULT_CONSTANTS
from thermomimo.thermo import BranchParams

BF = DEFAULT_CONSTANTS.bit_factor
K_B = DEFAULT_CONSTANTS.k_B


def make_branch(signal_power=1e-12, fec_power=0.0, noise_power=1e-13, signal_dof=6.0,
                fec_dof=0.0, noise_dof=100.0, signal_temperature=300.0,
                noise_temperature=298.15):
    return BranchParams(signal_power, fec_power, noise_power, signal_dof, fec_dof,
                        noise_dof, signal_temperature, noise_temperature)


def nested_product_detector_temperature(total_energy, send, noise, tau):
    """Literal transcription of the nested-product closed form for T_HI.

    Numerator ``prod(T_i) * U``; denominator
    ``sum_i prod_{j != i} T_j * (U_i + U_i^FEC)
    + prod(T_i) / prod(T^N) * sum_p U_p^N * prod_{q != p} T_q^N``.
    Only usable for a handful of branches before the products overflow.
    """
    t = [b.signal_temperature for b in send]
    u = [b.transmit_power * tau for b in send]
    tn = [b.noise_temperature for b in noise]
    un = [b.noise_power * tau for b in noise]
    prod_t = math.prod(t)
    first = sum(math.prod(t[:i] + t[i + 1:]) * u[i] for i in range(len(t)))
    second = prod_t / math.prod(tn) * sum(
        un[p] * math.prod(tn[:p] + tn[p + 1:]) for p in range(len(tn)))
    return prod_t * total_energy / (first + second)


def random_branches(rng, n, signal_scale=1.0, noise_scale=1.0):
    out = []
    for _ in range(n):
        out.append(make_branch(
            signal_power=signal_scale * rng.uniform(1e-14, 1e-11),
            fec_power=signal_scale * rng.uniform(0, 1e-12),
            noise_power=noise_scale * rng.uniform(1e-14, 1e-12),
            signal_temperature=rng.uniform(50, 5000),
            noise_temperature=rng.uniform(50, 1000),
        ))
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20221220)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" not in nodeid:
                continue
            if outcome != "error" and rep.when != "call":
                continue
            name = nodeid.split("::test_criterion_", 1)[1]
            number = int(name.split("_", 1)[0])
            lines.append((number, name, "PASS" if outcome == "passed" else "FAIL"))
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, verdict in sorted(lines):
        terminalreporter.write_line(f"criterion {number}: {verdict}  ({name})")
