"""Command-line interface.

Exit codes: 0 success, 2 configuration error, 3 domain or sweep error,
4 I/O error.
"""

import argparse
import json
import sys

from . import __version__
from .capacity import thermo_capacity
from .channel import scenario_to_link_spec
from .config import PRESETS, RunConfig, build_scenario, build_sweep_spec, load_config
from .energy import link_energy_per_bit
from .exceptions import ConfigError, DomainError, SweepError, ThermoMimoError
from .io import atomic_write, format_float, jsonable, records_to_csv, records_to_json
from .sweep import fig4_spec, fig5_spec, run_sweep

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DOMAIN = 3
EXIT_IO = 4


def _float(text):
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _scenario_parent():
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("scenario")
    g.add_argument("--config", metavar="FILE", help="TOML config file")
    g.add_argument("--preset", choices=sorted(PRESETS), default=None,
                   help="preset supplying unset keys (default: table1)")
    g.add_argument("--snr-db", type=_float, help="per-branch source SNR in dB")
    g.add_argument("--total-signal-power", type=_float, help="total source power in W (overrides --snr-db)")
    g.add_argument("--psi", "--coding-overhead", dest="coding_overhead", type=_float,
                   help="coding overhead M_FEC / M_S")
    g.add_argument("--noise-dof", type=_float, help="noise DOF per branch ('inf' allowed)")
    g.add_argument("--n-t", type=int, help="transmit antennas")
    g.add_argument("--n-r", type=int, help="receive antennas")
    g.add_argument("--bandwidth", type=_float, help="bandwidth in Hz")
    g.add_argument("--symbol-period", type=_float, help="symbol period in s (default 1/B)")
    g.add_argument("--modulation", help="BPSK, QPSK, 16QAM, 64QAM or 256QAM")
    g.add_argument("--noise-temperature", type=_float, help="channel noise temperature in K")
    g.add_argument("--t-lo", "--noise-pool-temperature", dest="noise_pool_temperature",
                   type=_float, help="noise sink temperature in K")
    g.add_argument("--channel", choices=["unit_gain", "rayleigh"])
    g.add_argument("--seed", type=int, help="seed of the Rayleigh channel")
    return p


def _resolve(args) -> RunConfig:
    if args.config:
        config = load_config(args.config)
    else:
        preset = args.preset or "table1"
        config = RunConfig(preset, dict(PRESETS[preset]))
    config = config.with_overrides(
        snr_db=args.snr_db,
        total_signal_power=args.total_signal_power,
        coding_overhead=args.coding_overhead,
        noise_dof=args.noise_dof,
        n_t=args.n_t,
        n_r=args.n_r,
        bandwidth=args.bandwidth,
        symbol_period=args.symbol_period,
        modulation=args.modulation,
        noise_temperature=args.noise_temperature,
        noise_pool_temperature=args.noise_pool_temperature,
        channel=args.channel,
        seed=args.seed,
    )
    if args.snr_db is not None and args.total_signal_power is None:
        # an SNR given on the command line beats a power from the config file
        config.settings["total_signal_power"] = None
    return config


def _fmt(value):
    return format_float(value)


def cmd_capacity(args, out):
    config = _resolve(args)
    scenario = build_scenario(config)
    link = scenario_to_link_spec(scenario)
    result = thermo_capacity(link, clamp_negative=args.clamp_negative)
    if args.format == "json":
        doc = {"version": __version__, "config": config.to_dict(), "scenario": scenario.to_dict(),
               "result": result.to_dict()}
        out.write(json.dumps(jsonable(doc), indent=2, sort_keys=True) + "\n")
        return EXIT_OK
    lines = [
        f"thermo_capacity_bps:   {_fmt(result.thermo_capacity)}",
        f"shannon_reference_bps: {_fmt(result.shannon_reference)}",
        f"lower_bound_bps:       {_fmt(result.lower_bound)}",
        f"upper_bound_bps:       {_fmt(result.upper_bound)}",
    ]
    for i, (snr_term, dof_term) in enumerate(result.per_branch_terms):
        lines.append(f"branch {i}: snr_term_bps={_fmt(snr_term)} dof_term_bps={_fmt(dof_term)}")
    if result.warnings:
        lines.extend(f"warning: {w}" for w in result.warnings)
    else:
        lines.append("warnings: none")
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_energy(args, out):
    config = _resolve(args)
    scenario = build_scenario(config)
    link = scenario_to_link_spec(scenario)
    t_lo = scenario.noise_pool_temperature
    report = link_energy_per_bit(link, t_lo, output_temperature=args.output_temperature,
                                 t_hi=args.t_hi, reversibility=args.reversibility)
    t_out = report.t_hi if args.output_temperature is None else args.output_temperature
    premise = report.t_hi >= t_out and report.t_hi >= t_lo
    above_floor = report.direct >= report.floor
    if args.format == "json":
        doc = {**report._asdict(), "output_temperature": t_out,
               "premise_holds": premise, "direct_at_or_above_floor": above_floor,
               "version": __version__}
        out.write(json.dumps(jsonable(doc), indent=2, sort_keys=True) + "\n")
        return EXIT_OK
    lines = [
        f"t_hi_K:                       {_fmt(report.t_hi)}",
        f"t_lo_K:                       {_fmt(report.t_lo)}",
        f"output_temperature_K:         {_fmt(t_out)}",
        f"carnot_efficiency:            {_fmt(report.efficiency)}",
        f"decoded_dof_bits:             {_fmt(report.decoded_dof)}",
        f"energy_per_bit_direct_J:      {_fmt(report.direct)}",
        f"energy_per_bit_closed_form_J: {_fmt(report.closed_form)}",
        f"landauer_floor_J:             {_fmt(report.floor)}",
        "premise T_HI >= T_O and T_HI >= T_LO: " + ("holds" if premise else "VIOLATED"),
        "direct >= floor: " + ("yes" if above_floor else "no"),
    ]
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def _render(records, spec, config, fmt):
    if fmt == "json":
        return records_to_json(records, spec, config.to_dict(), __version__)
    return records_to_csv(records, spec)


def _run_and_write(spec, config, args, out):
    try:
        records = run_sweep(spec, max_workers=args.threads)
    except SweepError as exc:
        text = _render(exc.partial, spec, config, args.format)
        if args.output and args.output != "-":
            try:
                atomic_write(args.output + ".partial", text)
            except OSError as io_exc:
                print(f"error: cannot write partial results: {io_exc}", file=sys.stderr)
        raise
    text = _render(records, spec, config, args.format)
    if args.output and args.output != "-":
        atomic_write(args.output, text)
    else:
        out.write(text)
    return EXIT_OK


def cmd_sweep(args, out):
    config = _resolve(args)
    scenario = build_scenario(config)
    sweep = dict(config.sweep)
    for key in ("variable", "start", "stop", "num", "spacing", "outputs"):
        value = getattr(args, key)
        if value is not None:
            sweep[key] = value
    if args.grid is not None:
        try:
            sweep["grid"] = [float(v) for v in args.grid.split(",") if v.strip()]
        except ValueError:
            raise ConfigError(f"--grid must be comma-separated numbers, got {args.grid!r}") from None
    spec = build_sweep_spec(scenario, sweep)
    return _run_and_write(spec, config, args, out)


def cmd_fig4(args, out):
    config = _resolve(args)
    scenario = build_scenario(config)
    try:
        spec = fig4_spec(scenario, num=args.num)
    except ThermoMimoError as exc:
        raise ConfigError(str(exc)) from None
    return _run_and_write(spec, config, args, out)


def cmd_fig5(args, out):
    config = _resolve(args)
    scenario = build_scenario(config)
    try:
        spec = fig5_spec(scenario, psi_max=args.psi_max, num=args.num)
    except ThermoMimoError as exc:
        raise ConfigError(str(exc)) from None
    return _run_and_write(spec, config, args, out)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="thermomimo",
        description="Thermodynamic capacity and per-bit energy of massive-MIMO links.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    parent = _scenario_parent()

    p = sub.add_parser("capacity", parents=[parent], help="thermodynamic capacity and bounds")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--clamp-negative", action="store_true",
                   help="count negative branch contributions as zero")
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("energy", parents=[parent], help="energy dissipated per decoded bit")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--t-hi", type=_float, help="detector temperature in K (default: from DOF balance)")
    p.add_argument("--output-temperature", type=_float,
                   help="temperature of decoded outputs in K (default: detector temperature)")
    p.add_argument("--reversibility", type=_float, default=1.0,
                   help="fraction of the Carnot limit reached by the decoder (0, 1]")
    p.set_defaults(func=cmd_energy)

    def add_output(p, default_format="csv"):
        p.add_argument("-o", "--output", help="output file ('-' or omitted: stdout)")
        p.add_argument("--format", choices=["csv", "json"], default=default_format)
        p.add_argument("--threads", type=int, default=None,
                       help="worker threads (default: $THERMOMIMO_THREADS or 1)")

    p = sub.add_parser("sweep", parents=[parent], help="generic one-parameter sweep")
    add_output(p)
    p.add_argument("--variable", choices=["noise_dof", "coding_overhead"])
    p.add_argument("--grid", help="comma-separated grid values")
    p.add_argument("--start", type=_float)
    p.add_argument("--stop", type=_float)
    p.add_argument("--num", type=int)
    p.add_argument("--spacing", choices=["log", "linear"])
    p.add_argument("--outputs", help="comma-separated subset of "
                   "thermo,shannon,lower_bound,upper_bound,energy_per_bit")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("fig4", parents=[parent], help="capacity versus noise DOF")
    add_output(p)
    p.add_argument("--num", type=int, default=61)
    p.set_defaults(func=cmd_fig4)

    p = sub.add_parser("fig5", parents=[parent], help="capacity versus coding overhead")
    add_output(p)
    p.add_argument("--num", type=int, default=41)
    p.add_argument("--psi-max", type=_float, default=2.0)
    p.set_defaults(func=cmd_fig5)
    return parser


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SweepError as exc:
        print(f"sweep error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ThermoMimoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
