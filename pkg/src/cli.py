"""
Command-line front end: gen, solve, exact, verify, export-ilp, render, bench.

Machine-readable documents go to stdout; logs go to stderr. Failures print
one JSON line ``{"error": ..., "message": ...}`` and exit nonzero.
"""
import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import numpy as np
from pydantic import ValidationError

from src.config.constants import (
    DEFAULT_A_MAX,
    DEFAULT_ORACLE_MAX_SEGMENTS,
    DEFAULT_ORACLE_MAX_TOURS,
    DEFAULT_ORACLE_NODE_BUDGET,
    DEFAULT_TARGET_TOURS,
    DEFAULT_V_INSP,
    DEFAULT_V_MAX,
    Topology,
    ViolationKind,
)
from src.config.settings import get_settings
from src.core.generator import sample_instance, synthetic_instance
from src.core.planner import InspectionPlanner, build_grasp_config
from src.exceptions import (
    EmptySelectionError,
    InfeasibleInstanceError,
    InvalidArgumentError,
    OracleLimitError,
)
from src.formats.bench_io import BenchRow, load_references, write_bench_csv
from src.formats.instance_io import dump_instance, read_pylons, read_segment_pairs
from src.formats.render import write_render
from src.formats.solution_io import dump_solution, parse_visits, read_solution_document, solution_from_dict, unknown_segments
from src.geometry.instance import KinematicLimits
from src.ilp.encoding import encode_solution
from src.ilp.lp_writer import export_lp, lp_filename
from src.ilp.verify import verify as verify_assignment
from src.oracle.exact import OracleLimits
from src.utils.logger import attach_package_file_handler, set_package_level, setup_logger
from src.utils.validators import sanitize_filename

logger = setup_logger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2
EXIT_INFEASIBLE_INSTANCE = 3
EXIT_ORACLE_REFUSED = 4
EXIT_INTERRUPTED = 130


class ResultFailure(Exception):
    """The command ran but its result is negative (no feasible plan, failed verification)"""


def _emit(text: str, output: Optional[str]) -> None:
    if output and output != "-":
        Path(output).write_text(text, encoding="utf-8")
        logger.info(f"Written to {output}")
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


def _error_line(error: BaseException) -> str:
    return json.dumps({"error": type(error).__name__, "message": str(error)})


def _limits(args: argparse.Namespace) -> KinematicLimits:
    return KinematicLimits(v_max=args.v_max, v_insp=args.v_insp, a_max=args.a_max)


def _solver_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    return {
        "trials": args.trials,
        "seed": args.seed,
        "rcl_fraction": args.rcl,
        "neighborhood_size": args.neighborhood,
        "stop_after": args.stop_after,
        "k_c": args.k_c,
        "w0": args.w0,
        "p1": args.p1,
        "p2": args.p2,
        "reset_period": args.reset_period,
        "tabu_size": args.tabu_size,
        "time_limit": args.time_limit,
        "local_search": False if args.no_tabu else None,
    }


def _oracle_limits(args: argparse.Namespace) -> OracleLimits:
    return OracleLimits(max_segments=args.max_segments, max_tours=args.max_tours, node_budget=args.node_budget)


# ---------------------------------------------------------------- commands

def cmd_gen(args: argparse.Namespace) -> int:
    """Sample an instance from pylon files, or generate a synthetic one."""
    limits = _limits(args)
    if args.pylons:
        if args.d_max is None:
            raise InvalidArgumentError("--d-max is required with --pylons")
        pylons = read_pylons(args.pylons)
        pairs = read_segment_pairs(args.segments) if args.segments else None
        instance = sample_instance(
            pylons,
            d_max=args.d_max,
            pairs=pairs,
            depot=args.depot,
            limits=limits,
            c_max=args.c_max,
            both_endpoints=args.both_endpoints,
            target_tours=args.target_tours,
            name=args.name,
        )
    elif args.synthetic:
        seed = args.seed
        if seed is None:
            seed = int(np.random.SeedSequence().entropy % (2 ** 32))
            logger.info(f"No seed given; using seed {seed}")
        instance = synthetic_instance(
            args.synthetic,
            topology=Topology(args.topology),
            seed=seed,
            limits=limits,
            c_max=args.c_max,
            branches=args.branches,
            target_tours=args.target_tours,
            name=args.name,
        )
    else:
        raise InvalidArgumentError("give --pylons FILE or --synthetic N")

    _emit(dump_instance(instance), args.output)
    return EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    """Run GRASP and print the best Solution JSON."""
    planner = InspectionPlanner.from_file(args.instance)
    config = build_grasp_config(_solver_overrides(args), args.config)
    report = planner.solve(config, n_t_hint=args.n_t, jobs=args.jobs)

    row = planner.bench_row(report)
    logger.info(f"Report: {json.dumps(report.summary())}")
    if args.report:
        write_bench_csv([row], args.report)

    if report.best is None:
        raise ResultFailure(f"no feasible plan found with up to {report.n_t} tours")
    _emit(dump_solution(report.best, planner.instance), args.output)
    return EXIT_OK


def cmd_exact(args: argparse.Namespace) -> int:
    """Solve with the exhaustive oracle."""
    planner = InspectionPlanner.from_file(args.instance)
    result = planner.exact(_oracle_limits(args), n_t=args.n_t)
    if result.solution is None:
        raise ResultFailure(f"no feasible plan with at most {result.n_t} tours")
    logger.info(f"Oracle: n_t={result.n_t}, cost {result.solution.total_cost:.3f}s")
    _emit(dump_solution(result.solution, planner.instance), args.output)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    """Check a Solution JSON against an instance (and optionally the ILP rows)."""
    planner = InspectionPlanner.from_file(args.instance, check_coverable=False)
    document = read_solution_document(args.solution)

    unknown = unknown_segments(parse_visits(document), planner.instance.n_segments)
    if unknown:
        result: Dict[str, Any] = {
            "feasible": False,
            "violations": [{"kind": ViolationKind.UNKNOWN_SEGMENT.value, "segment": s} for s in unknown],
        }
    else:
        solution = solution_from_dict(document, planner.evaluator)
        result = planner.verify(solution).to_dict()
        result["cost"] = solution.total_cost
        result["per_tour_costs"] = [t.cached_cost for t in solution.tours]
        if args.ilp:
            n_t = args.ilp_tours or max(1, solution.n_tours)
            model = planner.ilp(n_t, allow_empty_tours=args.allow_empty_tours)
            assignment = encode_solution(solution, n_t, planner.instance.n_segments, args.allow_empty_tours)
            rows = verify_assignment(model, assignment)
            result["ilp_violations"] = [v.to_dict() for v in rows]
            result["feasible"] = result["feasible"] and not rows

    _emit(json.dumps(result, indent=2) + "\n", args.output)
    return EXIT_OK if result["feasible"] else EXIT_FAILED


def cmd_export_ilp(args: argparse.Namespace) -> int:
    """Write the ILP model in LP format."""
    planner = InspectionPlanner.from_file(args.instance, check_coverable=False)
    model = planner.ilp(args.n_t, allow_empty_tours=args.allow_empty_tours)
    if args.output == "-":
        export_lp(model, sys.stdout)
        return EXIT_OK

    output = args.output
    if output is None:
        output_dir = Path(get_settings().runtime.output_dir)
        output_dir.mkdir(parents=True, exist_ok=True)
        output = output_dir / lp_filename(sanitize_filename(planner.name), args.n_t)
    export_lp(model, output)
    return EXIT_OK


def cmd_render(args: argparse.Namespace) -> int:
    """Draw a solution as SVG and GeoJSON."""
    planner = InspectionPlanner.from_file(args.instance, check_coverable=False)
    solution = planner.load_solution(args.solution)
    stem = Path(args.solution).with_suffix("")
    write_render(
        planner.instance,
        solution,
        svg_path=args.svg or f"{stem}.svg",
        geojson_path=args.geojson or f"{stem}.geojson",
    )
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    """Solve several instances and print the benchmark table as CSV."""
    references = load_references(args.reference) if args.reference else {}
    config = build_grasp_config(_solver_overrides(args), args.config)
    rows: List[BenchRow] = []

    for path in args.instances:
        planner = InspectionPlanner.from_file(path)
        reference = references.get(planner.name, references.get(Path(path).stem))
        if reference is None and args.oracle:
            try:
                oracle = planner.exact(_oracle_limits(args))
                reference = oracle.solution.total_cost
            except OracleLimitError as e:
                logger.warning(f"{planner.name}: no oracle reference ({e})")
        report = planner.solve(config, jobs=args.jobs)
        rows.append(planner.bench_row(report, reference))

    if args.output and args.output != "-":
        write_bench_csv(rows, args.output)
        logger.info(f"Written to {args.output}")
    else:
        write_bench_csv(rows, sys.stdout)
    return EXIT_OK


# ----------------------------------------------------------------- parser

def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--verbose', '-v', action='store_true', help='Enable debug logging')
    parser.add_argument('--log-file', type=str, default=None, help='Also write logs to this file')


def _add_output(parser: argparse.ArgumentParser, help_text: str) -> None:
    parser.add_argument('--output', '-o', type=str, default=None, help=help_text)


def _add_solver_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group('solver')
    group.add_argument('--config', type=str, default=None, help='JSON file with GraspConfig fields')
    group.add_argument('--trials', type=int, default=None, help='Independent trials per tour count (default: 30)')
    group.add_argument('--seed', type=int, default=None, help='Master seed (default: drawn from entropy and logged)')
    group.add_argument('--rcl', type=float, default=None, help='RCL fraction of proposed insertions (default: 0.25)')
    group.add_argument('--neighborhood', type=int, default=None, help='Candidates per tabu iteration (default: n_s)')
    group.add_argument('--stop-after', type=int, default=None, help='Non-improving iterations before stopping (default: 50)')
    group.add_argument('--k-c', type=float, default=None, help='Budget penalty multiplier (default: 1000)')
    group.add_argument('--w0', type=float, default=None, help='Initial move weight (default: 5)')
    group.add_argument('--p1', type=float, default=None, help='Prize for the best neighborhood move (default: 1)')
    group.add_argument('--p2', type=float, default=None, help='Prize for a new global best (default: 5)')
    group.add_argument('--reset-period', type=int, default=None, help='Iterations between weight resets (default: 5)')
    group.add_argument('--tabu-size', type=int, default=None, help='Tabu list capacity (default: ceil(n_s/4))')
    group.add_argument('--time-limit', type=float, default=None, help='Seconds allowed per tabu search')
    group.add_argument('--no-tabu', action='store_true', help='Construction only (greedy random baseline)')
    group.add_argument('--jobs', '-j', type=int, default=None, help='Worker processes (default: LINEPATROL_JOBS or 1)')


def _add_oracle_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group('oracle limits')
    group.add_argument('--max-segments', type=int, default=DEFAULT_ORACLE_MAX_SEGMENTS)
    group.add_argument('--max-tours', type=int, default=DEFAULT_ORACLE_MAX_TOURS)
    group.add_argument('--node-budget', type=int, default=DEFAULT_ORACLE_NODE_BUDGET)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linepatrol",
        description="Plan multi-tour UAV inspections of power line segments",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Synthetic 12-segment star around the depot
  linepatrol gen --synthetic 12 --topology star --seed 7 -o star12.json

  # Sample spans within 500 m of the substation
  linepatrol gen --pylons pylons.csv --d-max 500 -o substation500.json

  # Solve with a fixed seed, then check the result
  linepatrol solve star12.json --seed 1 -o star12.sol.json
  linepatrol verify star12.json star12.sol.json

  # Exact optimum and LP export for a small instance
  linepatrol exact star12.json --max-segments 12
  linepatrol export-ilp star12.json --n-t 2
        """
    )
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser('gen', help='Create an instance')
    _add_common(gen)
    gen.add_argument('--pylons', type=str, default=None, help='Pylon CSV with header id,x,y[,z] (m)')
    gen.add_argument('--segments', type=str, default=None, help='Segment CSV with header a,b (default: consecutive pylons)')
    gen.add_argument('--d-max', type=float, default=None, help='Selection radius around the depot (m)')
    gen.add_argument('--depot', type=float, nargs='+', default=None, metavar='COORD', help='Depot x y [z] (default: origin)')
    gen.add_argument('--both-endpoints', action='store_true', help='Require both span endpoints within d_max')
    gen.add_argument('--synthetic', type=int, default=None, metavar='N', help='Generate N random segments instead')
    gen.add_argument('--topology', choices=[t.value for t in Topology], default=Topology.LINE.value)
    gen.add_argument('--branches', type=int, default=3, help='Lines of a star topology')
    gen.add_argument('--seed', type=int, default=None)
    gen.add_argument('--c-max', type=float, default=None, help='Tour budget (s); derived from --target-tours when omitted')
    gen.add_argument('--target-tours', type=int, default=DEFAULT_TARGET_TOURS)
    gen.add_argument('--v-max', type=float, default=DEFAULT_V_MAX)
    gen.add_argument('--v-insp', type=float, default=DEFAULT_V_INSP)
    gen.add_argument('--a-max', type=float, default=DEFAULT_A_MAX)
    gen.add_argument('--name', type=str, default=None)
    _add_output(gen, 'Instance JSON path (default: stdout)')
    gen.set_defaults(handler=cmd_gen)

    solve = commands.add_parser('solve', help='Solve an instance with GRASP')
    _add_common(solve)
    solve.add_argument('instance', type=str)
    solve.add_argument('--n-t', type=int, default=None, help='First tour count to try (default: workload bound)')
    solve.add_argument('--report', type=str, default=None, help='Write the benchmark row as CSV to this file')
    _add_solver_flags(solve)
    _add_output(solve, 'Solution JSON path (default: stdout)')
    solve.set_defaults(handler=cmd_solve)

    exact = commands.add_parser('exact', help='Solve a small instance exactly')
    _add_common(exact)
    exact.add_argument('instance', type=str)
    exact.add_argument('--n-t', type=int, default=None, help='Fixed tour count (default: smallest feasible)')
    _add_oracle_flags(exact)
    _add_output(exact, 'Solution JSON path (default: stdout)')
    exact.set_defaults(handler=cmd_exact)

    verify = commands.add_parser('verify', help='Check a solution against an instance')
    _add_common(verify)
    verify.add_argument('instance', type=str)
    verify.add_argument('solution', type=str)
    verify.add_argument('--ilp', action='store_true', help='Also check the encoded ILP assignment')
    verify.add_argument('--ilp-tours', type=int, default=None, help='n_t of the ILP model (default: tours in the solution)')
    verify.add_argument('--allow-empty-tours', action='store_true')
    _add_output(verify, 'Report JSON path (default: stdout)')
    verify.set_defaults(handler=cmd_verify)

    export = commands.add_parser('export-ilp', help='Write the ILP model as an LP file')
    _add_common(export)
    export.add_argument('instance', type=str)
    export.add_argument('--n-t', type=int, required=True)
    export.add_argument('--allow-empty-tours', action='store_true', help='Let tours stay unused at zero cost')
    _add_output(export, 'LP path, "-" for stdout (default: <instance>_nt<k>.lp in LINEPATROL_OUTPUT_DIR)')
    export.set_defaults(handler=cmd_export_ilp)

    render = commands.add_parser('render', help='Draw a solution as SVG and GeoJSON')
    _add_common(render)
    render.add_argument('instance', type=str)
    render.add_argument('solution', type=str)
    render.add_argument('--svg', type=str, default=None, help='SVG path (default: next to the solution)')
    render.add_argument('--geojson', type=str, default=None, help='GeoJSON path (default: next to the solution)')
    render.set_defaults(handler=cmd_render)

    bench = commands.add_parser('bench', help='Benchmark GRASP over several instances')
    _add_common(bench)
    bench.add_argument('instances', type=str, nargs='+')
    bench.add_argument('--reference', type=str, default=None, help='JSON object of instance -> reference cost')
    bench.add_argument('--oracle', action='store_true', help='Use oracle optima as references where within limits')
    _add_solver_flags(bench)
    _add_oracle_flags(bench)
    _add_output(bench, 'CSV path (default: stdout)')
    bench.set_defaults(handler=cmd_bench)

    return parser


def _configure_logging(args: argparse.Namespace) -> None:
    set_package_level("DEBUG" if args.verbose else get_settings().runtime.log_level)
    if args.log_file:
        attach_package_file_handler(args.log_file)


def _run(handler: Callable[[argparse.Namespace], int], args: argparse.Namespace) -> int:
    try:
        return handler(args)
    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        return EXIT_INTERRUPTED
    except ResultFailure as e:
        print(_error_line(e))
        logger.error(str(e))
        return EXIT_FAILED
    except InfeasibleInstanceError as e:
        print(_error_line(e))
        logger.error(f"Infeasible instance: {e}")
        return EXIT_INFEASIBLE_INSTANCE
    except OracleLimitError as e:
        print(_error_line(e))
        logger.error(f"Oracle refused: {e}")
        return EXIT_ORACLE_REFUSED
    except (InvalidArgumentError, EmptySelectionError, ValidationError, ValueError, OSError) as e:
        print(_error_line(e))
        logger.error(f"Invalid input: {e}")
        return EXIT_INVALID
    except Exception as e:
        print(_error_line(e))
        logger.error(f"Unexpected error: {e}", exc_info=True)
        return EXIT_FAILED


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point of the ``linepatrol`` console script."""
    args = build_parser().parse_args(argv)
    try:
        _configure_logging(args)
    except ValueError as e:
        print(_error_line(e))
        return EXIT_INVALID
    return _run(args.handler, args)


if __name__ == "__main__":
    sys.exit(main())
