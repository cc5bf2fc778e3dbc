"""
Command-line interface for the qRAM workbench
"""

import argparse
import logging
import sys
from dataclasses import fields
from typing import Dict, List, Optional, Sequence

import numpy as np
from schema import SchemaError

from core.aggregation import improvement_to_frame, reports_to_frame
from core.calculation import within_oracle_band
from core.errors import (
    ConfigError, Unrepairable, VerificationFailed, WorkbenchError
)
from core.ingestion import RunConfig, build_config, write_config
from core.qec_defect import (
    FabricationModel, QecParams, disabled_components, layout_from_sample, render_layout,
    sample_patch, summarize_layout
)
from core.qram_circuit import (
    READ, UNIFORM, QramLayout, build_layout, build_query_circuit, run_query,
    verify_against_classical
)
from core.repair import (
    DefectMap, FaultAddressTable, build_fat, defect_map_from_outcome, fat_from_text,
    fat_to_text, parse_addresses, translate_address
)
from core.resource_model import breakdowns_to_frame, resource_rows
from core.schema import (
    ImprovementSchema, ResourceComparisonSchema, ResourceSchema, YieldSchema
)
from core.statevec import gate_counts, gate_listing, marginal_probability
from core.yield_engine import (
    ChipSpec, SweepGrid, chip_stream, improvement_series, simulate_chip, simulate_yield, sweep
)
from output.csv_export import write_csv
from output.excel import (
    IMPROVEMENT_SHEET, RESOURCE_SHEET, YIELD_SHEET, create_excel_workbook,
    populate_improvement_sheet, populate_resource_sheet, populate_yield_sheet, save_workbook
)
from output.visualisations import create_visualisation
from utils.defaults import create_default_memory, create_preset_grids, create_resource_axes
from utils.helpers import format_bits, parse_bits

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_VERIFY = 4

PROBABILITY_TOLERANCE = 1e-9


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def _yield_grids(config: RunConfig) -> List[SweepGrid]:
    run = dict(chips_per_rep=config.chips_per_rep, reps=config.reps,
               master_seed=config.master_seed, spares_fallible=config.spares_fallible)
    if config.preset:
        return create_preset_grids(config.preset, **run)
    return [SweepGrid(config.distances, config.logical_counts, config.spare_counts,
                      config.error_rates, **run)]


def cmd_yield(config: RunConfig) -> int:
    """Run a yield sweep and write the yield CSV"""
    grids = _yield_grids(config)
    reports = []
    for grid in grids:
        reports.extend(sweep(grid, point_offset=len(reports)))

    yield_data = reports_to_frame(reports)
    if len(grids) > 1:
        yield_data = yield_data.sort_values(
            [YieldSchema.QEC_DISTANCE, YieldSchema.NUM_LOGICAL,
             YieldSchema.NUM_SPARES, YieldSchema.ERROR_RATE],
            kind='mergesort',
        ).reset_index(drop=True)

    write_csv(yield_data, YieldSchema, config.output)

    if config.svg:
        chart = 'yield_heatmap' if (config.preset or '').startswith('fig7') else 'yield_line'
        create_visualisation(chart, yield_data, config.svg)
    if config.excel:
        wb = create_excel_workbook([YIELD_SHEET])
        populate_yield_sheet(wb, yield_data)
        save_workbook(wb, config.excel)
    return EXIT_OK


def cmd_resource(config: RunConfig) -> int:
    """Write the physical-qubit resource CSV"""
    if config.preset:
        distances, logical_counts, spare_counts = create_resource_axes(config.preset)
    else:
        distances, logical_counts, spare_counts = (
            config.distances, config.logical_counts, config.spare_counts)

    schema = ResourceComparisonSchema if config.literal_mem else ResourceSchema
    resource_data = breakdowns_to_frame(resource_rows(distances, logical_counts, spare_counts),
                                        config.literal_mem)
    write_csv(resource_data, schema, config.output)

    if config.excel:
        wb = create_excel_workbook([RESOURCE_SHEET])
        populate_resource_sheet(wb, resource_data, schema)
        save_workbook(wb, config.excel)
    return EXIT_OK


def cmd_improvement(config: RunConfig) -> int:
    """Write the average-improvement series"""
    points = []
    for rate in config.error_rates:
        logger.info("Computing improvement series at p=%.4f (%s)...", rate, config.method)
        points.extend(improvement_series(
            config.logical_counts, rate, config.distances, config.rr_spares,
            method=config.method, chips_per_rep=config.chips_per_rep, reps=config.reps,
            master_seed=config.master_seed, spares_fallible=config.spares_fallible))

    improvement_data = improvement_to_frame(points)
    write_csv(improvement_data, ImprovementSchema, config.output)

    if config.svg:
        create_visualisation('improvement', improvement_data, config.svg)
    if config.excel:
        wb = create_excel_workbook([IMPROVEMENT_SHEET])
        populate_improvement_sheet(wb, improvement_data)
        save_workbook(wb, config.excel)
    return EXIT_OK


def _demo_table(config: RunConfig, layout: QramLayout) -> FaultAddressTable:
    n = layout.address_bits
    if config.fat_file:
        with open(config.fat_file, 'r', encoding='utf-8') as fh:
            return fat_from_text(fh.read(), n)
    faulty = parse_addresses(config.faults, n)
    return build_fat(DefectMap(n, faulty, config.spare_faults), layout.spare_count)


def _demo_memory(layout: QramLayout, data: Sequence[int],
                 fat: FaultAddressTable) -> List[int]:
    """Physical contents: faulty originals hold garbage, assigned spares hold the data"""
    faulty = set(fat.faulty_addresses)
    originals = [bit ^ 1 if a in faulty else bit for a, bit in enumerate(data)]
    spares = [0] * layout.spare_count
    for fa, spare in fat.entries:
        spares[spare.index] = data[fa]
    return originals + spares


def _print_layout(layout: QramLayout) -> None:
    print(f"Layout n={layout.address_bits} X={layout.spare_count} "
          f"({layout.num_qubits} qubits)")
    for name, qubits in layout.registers().items():
        if qubits:
            print(f"  {name:<14} {', '.join(str(q) for q in qubits)}")


def _check_demo(config: RunConfig, layout: QramLayout, fat: FaultAddressTable,
                data: Sequence[int], memory: Sequence[int], outcome) -> bool:
    """Compare the simulated query with the classical repair oracle"""
    addresses = (range(layout.num_logical) if config.query == UNIFORM
                 else [int(config.query, 2)])
    ok = True
    expected_p = 1.0 / len(addresses)
    for a in addresses:
        if abs(outcome.address_distribution[a] - expected_p) > PROBABILITY_TOLERANCE:
            ok = False
        location, _ = translate_address(fat, a)
        if config.mode == READ:
            expected = float(data[a])
            observed = outcome.conditional_readout.get(a, float('nan'))
            ok &= abs(observed - expected) <= PROBABILITY_TOLERANCE
        else:
            cell = layout.cell_qubit(location)
            cells = layout.memory + layout.spare_memory
            target = memory[cells.index(cell)] ^ config.dq
            assignment = {q: (a >> b) & 1 for b, q in enumerate(layout.address)}
            joint = marginal_probability(outcome.state, {**assignment, cell: target})
            ok &= abs(joint - outcome.address_distribution[a]) <= PROBABILITY_TOLERANCE
    return bool(ok)


def cmd_circuit_demo(config: RunConfig) -> int:
    """Build, run and check one repaired qRAM query"""
    layout = build_layout(config.address_bits, config.spare_count)
    fat = _demo_table(config, layout)

    if config.query == UNIFORM:
        address = UNIFORM
    elif len(config.query) != layout.address_bits:
        raise ConfigError(f"Query '{config.query}' is not {layout.address_bits} bits wide")
    else:
        address = int(config.query, 2)

    # Rejects tables that name spares the layout does not have
    circuit = build_query_circuit(layout, fat, uniform_address=address == UNIFORM)

    data = parse_bits(config.data or create_default_memory(layout.num_logical),
                      layout.num_logical)
    memory = _demo_memory(layout, data, fat)
    outcome = run_query(layout, memory, fat, address, config.mode, config.dq)

    _print_layout(layout)
    print("Fault address table:")
    print(fat_to_text(fat).rstrip() or "  (empty)")
    counts = gate_counts(circuit)
    print(f"Gates ({counts['total']}):")
    print(gate_listing(circuit))
    print("Readout distribution: " + "  ".join(
        f"{bit}: p={p:.3f}" for bit, p in sorted(outcome.readout_distribution.items())))

    verdict = 'MATCH' if _check_demo(config, layout, fat, data, memory, outcome) else 'MISMATCH'
    width = layout.address_bits
    if address == UNIFORM:
        for a, p in sorted(outcome.address_distribution.items()):
            detail = (f"readout=1 p={outcome.conditional_readout.get(a, 0.0):.3f}"
                      if config.mode == READ else f"repair flag p={outcome.repair_flags[a]:.3f}")
            print(f"  address {a:0{width}b}: p={p:.3f} {detail}")
        print(f"Uniform {config.mode} over {layout.num_logical} branch(es), {verdict}")
    elif config.mode == READ:
        bit = max(outcome.readout_distribution, key=outcome.readout_distribution.get)
        print(f"Readout={bit} p={outcome.readout_distribution[bit]:.3f}, {verdict}")
    else:
        n_orig = layout.num_logical
        post = outcome.post_memory
        print(f"Post memory: {format_bits(post[:n_orig])}|{format_bits(post[n_orig:])}, "
              f"{verdict}")

    return EXIT_OK if verdict == 'MATCH' else EXIT_VERIFY


def _oracle_suite(config: RunConfig) -> Dict[str, int]:
    points = SweepGrid(config.distances, config.logical_counts, config.spare_counts,
                       config.error_rates, spares_fallible=config.spares_fallible).points()
    count = min(config.oracle_points, len(points))
    if count == 0:
        return {'points': 0, 'failed': 0}

    rng = np.random.default_rng(config.master_seed)
    chosen = sorted(int(i) for i in rng.choice(len(points), size=count, replace=False))
    chips_per_rep = max(1, config.oracle_chips // config.reps)

    failed = 0
    for index in chosen:
        spec = points[index]
        report = simulate_yield(spec, chips_per_rep, config.reps, config.master_seed,
                                point_index=index)
        # one chip of slack for oracle values pinned near 0 or 100
        ok = within_oracle_band(report.yield_mean_pct, report.analytic_pct, report.total_chips,
                                floor_pct=100.0 / report.total_chips)
        failed += not ok
        print(f"oracle d={spec.qec.distance} N={spec.num_logical} X={spec.num_spares} "
              f"p={spec.fab.error_rate:.6f} mc={report.yield_mean_pct:.2f} "
              f"analytic={report.analytic_pct:.2f} {'PASS' if ok else 'FAIL'}")
    return {'points': count, 'failed': failed}


def cmd_verify(config: RunConfig) -> int:
    """Exhaustive circuit check plus Monte-Carlo against the analytic oracle"""
    if not config.verify_scope and config.oracle_points == 0:
        logger.warning("Verification scope is empty; nothing to check")

    cases = circuit_failed = 0
    for n, x in config.verify_scope:
        report = verify_against_classical(n, x, strict=False)
        cases += report.cases
        circuit_failed += report.failed
        print(f"circuit n={n} X={x} tables={report.tables} cases={report.cases} "
              f"failed={report.failed} {'PASS' if report.ok else 'FAIL'}")
        if report.counterexample:
            print("counterexample " + ' '.join(
                f"{k}={v!r}" for k, v in report.counterexample.items()))

    oracle = _oracle_suite(config)
    status = 'PASS' if circuit_failed == 0 and oracle['failed'] == 0 else 'FAIL'
    print(f"summary circuit_cases={cases} circuit_failed={circuit_failed} "
          f"oracle_points={oracle['points']} oracle_failed={oracle['failed']} status={status}")
    return EXIT_OK if status == 'PASS' else EXIT_VERIFY


def cmd_defects(config: RunConfig) -> int:
    """Sample one patch and one chip and report their defects"""
    distance, rate = config.distances[0], config.error_rates[0]
    params = QecParams(distance)
    sample = sample_patch(params, FabricationModel(rate), chip_stream(config.master_seed, 0, 0, 0))
    layout = layout_from_sample(params, sample)

    print(f"Patch d={distance} p={rate:.6f}: {sample.defect_count} broken site(s), "
          f"{'DEFECTIVE' if sample.defective else 'correctable'}")
    print(render_layout(layout))
    for key, value in summarize_layout(layout).items():
        print(f"  {key}: {value}")
    disabled = sorted(disabled_components(layout))
    print("Disabled: " + (', '.join(disabled) if disabled else 'none'))

    n_logical, spares = config.logical_counts[0], config.spare_counts[0]
    spec = ChipSpec.create(n_logical, spares, distance, rate, config.spares_fallible)
    outcome = simulate_chip(spec, chip_stream(config.master_seed, 0, 0, 1), keep_defects=True)
    print(f"Chip N={n_logical} X={spares}: {outcome.defective_originals} defective original(s), "
          f"{outcome.defective_spares} defective spare(s)")

    if n_logical >= 2 and n_logical & (n_logical - 1) == 0:
        defect_map = defect_map_from_outcome(outcome, n_logical.bit_length() - 1)
        try:
            fat = build_fat(defect_map, spares)
        except Unrepairable as exc:
            print(str(exc))
        else:
            print("Fault address table:")
            print(fat_to_text(fat).rstrip() or "  (empty)")
    return EXIT_OK


COMMAND_HANDLERS = {
    'yield': cmd_yield,
    'resource': cmd_resource,
    'improvement': cmd_improvement,
    'circuit-demo': cmd_circuit_demo,
    'verify': cmd_verify,
    'defects': cmd_defects,
}


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='Config file with [run]/[grid]/... sections')
    common.add_argument('--write-config', metavar='PATH',
                        help='Write the merged configuration to PATH')
    common.add_argument('--verbose', action='store_true', help='Log debug details')
    common.add_argument('--quiet', action='store_true', help='Log warnings only')
    common.add_argument('--seed', dest='master_seed', help='Master random seed')
    common.add_argument('--output', '-o', help='Output CSV path (default: stdout)')
    return common


def _add_grid_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--preset', help='Named experiment grid')
    parser.add_argument('--distances', help='Code distances, e.g. 3,5,7')
    parser.add_argument('--logical', dest='logical_counts', help='Logical qubit counts')
    parser.add_argument('--spares', dest='spare_counts', help='Spare counts')
    parser.add_argument('--rates', dest='error_rates', help='Physical error rates')
    parser.add_argument('--chips', dest='chips_per_rep', help='Chips per repetition')
    parser.add_argument('--reps', help='Repetitions')
    parser.add_argument('--infallible-spares', dest='spares_fallible', action='store_const',
                        const=False, default=None, help='Spares never fail fabrication')


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subcommand per workbench operation"""
    parser = argparse.ArgumentParser(description='qRAM redundancy-repair workbench')
    common = _common_parser()
    sub = parser.add_subparsers(dest='command', required=True)

    p_yield = sub.add_parser('yield', parents=[common], help='Monte-Carlo yield sweep')
    _add_grid_arguments(p_yield)
    p_yield.add_argument('--svg', help='Save a yield chart')
    p_yield.add_argument('--excel', help='Save an Excel workbook')

    p_resource = sub.add_parser('resource', parents=[common], help='Physical-qubit counts')
    _add_grid_arguments(p_resource)
    p_resource.add_argument('--excel', help='Save an Excel workbook')
    p_resource.add_argument('--literal-mem', dest='literal_mem', action='store_const', const=True,
                            default=None, help='Append the literal d*(N+X) memory count')

    p_improvement = sub.add_parser('improvement', parents=[common],
                                   help='Average yield improvement of repair')
    _add_grid_arguments(p_improvement)
    p_improvement.add_argument('--rr-spares', dest='rr_spares', help='Spares of the repaired design')
    p_improvement.add_argument('--method', choices=('analytic', 'monte_carlo'))
    p_improvement.add_argument('--svg', help='Save an improvement chart')
    p_improvement.add_argument('--excel', help='Save an Excel workbook')

    p_demo = sub.add_parser('circuit-demo', parents=[common], help='Simulate one qRAM query')
    p_demo.add_argument('--address-bits', dest='address_bits')
    p_demo.add_argument('--spare-count', dest='spare_count')
    p_demo.add_argument('--faults', help='Faulty addresses, e.g. 10,11')
    p_demo.add_argument('--spare-faults', dest='spare_faults', help='Broken spare indices')
    p_demo.add_argument('--data', help='Logical data bits, cell 0 first')
    p_demo.add_argument('--query', help="Binary address or 'uniform'")
    p_demo.add_argument('--mode', choices=('read', 'write'))
    p_demo.add_argument('--dq', help='Data bit for writes')
    p_demo.add_argument('--fat-file', dest='fat_file', help='Fault address table file')

    p_verify = sub.add_parser('verify', parents=[common], help='Circuit and oracle checks')
    _add_grid_arguments(p_verify)
    p_verify.add_argument('--scope', dest='verify_scope', help="Circuit sizes, e.g. '1:0,2:2'")
    p_verify.add_argument('--oracle-points', dest='oracle_points')
    p_verify.add_argument('--oracle-chips', dest='oracle_chips')

    p_defects = sub.add_parser('defects', parents=[common], help='Sample and draw defects')
    _add_grid_arguments(p_defects)

    return parser


def _configure_logging(verbose: bool, quiet: bool) -> None:
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(level=level, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s', force=True)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Main function to run the workbench from the command line

    Returns:
        Exit code: 0 success, 2 configuration error, 3 I/O error,
        4 verification failure
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose, args.quiet)

    known = {f.name for f in fields(RunConfig)}
    overrides = {k: v for k, v in vars(args).items() if k in known and k != 'command'}

    try:
        config = build_config(args.command, overrides, args.config)
        if args.write_config:
            write_config(config, args.write_config)
        return COMMAND_HANDLERS[args.command](config)
    except VerificationFailed as exc:
        logger.error("Verification failed: %s", exc)
        return EXIT_VERIFY
    except Unrepairable as exc:
        logger.error("%s", exc)
        return EXIT_CONFIG
    except (ConfigError, SchemaError) as exc:
        logger.error("Configuration error: %s", exc)
        return EXIT_CONFIG
    except OSError as exc:
        logger.error("I/O error: %s", exc)
        return EXIT_IO
    except (WorkbenchError, ValueError) as exc:
        logger.error("Invalid input: %s", exc)
        return EXIT_CONFIG
