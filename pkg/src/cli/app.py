"""Copyright (c) 2025 Natsurii.

Created Date: Saturday, June 14th 2025, 11:20:37 am
Author: Natsurii

Redistribution and use in source and binary forms, with or without
modification, are permitted provided that the following conditions are
met:

1. Redistributions of source code must retain the above copyright notice,
this list of conditions and the following disclaimer.

2. Redistributions in binary form must reproduce the above copyright
notice, this list of conditions and the following disclaimer in the
documentation and/or other materials provided with the distribution.

3. Neither the name of the copyright holder nor the names of its
contributors may be used to endorse or promote products derived from this
software without specific prior written permission.

THIS SOFTWARE IS PROVIDED BY THE COPYRIGHT HOLDERS AND CONTRIBUTORS AS
IS AND ANY EXPRESS OR IMPLIED WARRANTIES, INCLUDING, BUT NOT LIMITED TO,
THE IMPLIED WARRANTIES OF MERCHANTABILITY AND FITNESS FOR A PARTICULAR
PURPOSE ARE DISCLAIMED. IN NO EVENT SHALL THE COPYRIGHT HOLDER OR
CONTRIBUTORS BE
LIABLE FOR ANY DIRECT, INDIRECT, INCIDENTAL, SPECIAL, EXEMPLARY, OR
CONSEQUENTIAL DAMAGES (INCLUDING, BUT NOT LIMITED TO, PROCUREMENT OF
SUBSTITUTE GOODS OR SERVICES; LOSS OF USE, DATA, OR PROFITS; OR BUSINESS
INTERRUPTION) HOWEVER CAUSED AND ON ANY THEORY OF LIABILITY, WHETHER IN
CONTRACT, STRICT LIABILITY, OR TORT (INCLUDING NEGLIGENCE OR OTHERWISE)
ARISING IN ANY WAY OUT OF THE USE OF THIS SOFTWARE, EVEN IF ADVISED OF
THE POSSIBILITY OF SUCH DAMAGE.

HISTORY:
Date      	By	Comments
----------	---	----------------------------------------------------------
2025-06-14	NAT	Initial file creation
2025-06-16	NAT	Environment settings and spectrum command
"""

import argparse
import json
import logging
import sys
from collections.abc import Callable

import numpy as np
from pydantic import ValidationError

from src.cli.emit import write_table
from src.core.dynamics import Approximation, build_drift, stability
from src.core.scattering import SPECTRUM_COLUMNS, noise_matrix, spectrum_table
from src.core.sweeps import (
    BENCHMARK_COLUMNS,
    Recipe,
    SweepAxis,
    SweepSpec,
    columns,
    evaluate_point,
    recipe_spec,
    run_sweep,
    stability_boundary,
)
from src.core.teleport import fidelity_vs_negativity_benchmark
from src.errors import (
    ConfigError,
    InstabilityError,
    InvalidParameterError,
    InvalidSelectionError,
    InvalidStateError,
    NumericalError,
)
from src.models.chain import TWO_PI
from src.models.config import chain_from_tree, resolve_tree
from src.models.presets import PRESETS, preset_tree
from src.models.settings import Settings, load_settings

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

Handler = Callable[[argparse.Namespace, Settings], int]


def _approximation(args: argparse.Namespace) -> Approximation:
    return Approximation(args.approximation)


def _emit(args: argparse.Namespace, cols: list[str], rows: list[dict]) -> None:
    write_table(cols, rows, args.format, args.out)


def cmd_point(args: argparse.Namespace, settings: Settings) -> int:
    """Evaluate one configuration."""
    spec = SweepSpec(
        base=resolve_tree(args.config, args.preset),
        approximation=_approximation(args),
        filter_center_hz=args.center_hz,
        filter_sigma_hz=args.sigma_hz,
        quadrature_points=args.quadrature_points or settings.quadrature_points,
        fidelity=args.fidelity,
        steering=args.steering,
        r_in=args.r_in,
    )
    row = evaluate_point(spec, {})
    if not row["stable"]:
        msg = f"no steady state: drift margin {row['margin']:.6e} rad/s"
        raise InstabilityError(msg)
    _emit(args, columns(spec), [row])
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace, settings: Settings) -> int:
    """Run a named or custom sweep."""
    recipe = Recipe(args.recipe)
    base = None
    if args.config is not None or args.preset is not None:
        base = resolve_tree(args.config, args.preset)
    axes = tuple(SweepAxis.parse(text) for text in args.axis or ())
    spec = recipe_spec(
        recipe,
        base,
        axes=axes,
        approximation=(
            None if args.approximation is None else _approximation(args)
        ),
        filter_center_hz=args.center_hz,
        filter_sigma_hz=args.sigma_hz,
        quadrature_points=args.quadrature_points or settings.quadrature_points,
        fidelity=args.fidelity or None,
        steering=args.steering or None,
        r_in=args.r_in,
    )
    table = run_sweep(spec, jobs=args.jobs or settings.jobs)
    _emit(args, table.columns, table.rows)
    return EXIT_OK


def cmd_stability(args: argparse.Namespace, _settings: Settings) -> int:
    """Bisect the instability boundary over a log C_mc grid."""
    params = chain_from_tree(resolve_tree(args.config, args.preset))
    grid = np.geomspace(args.cmc_min, args.cmc_max, args.points)
    points = stability_boundary(
        params, list(grid), approximation=_approximation(args),
    )
    rows = [
        {
            "c_mc": point.c_mc,
            "c_ab_critical": point.c_ab_critical,
            "c_ab_closed_form": point.c_ab_closed_form,
            "relative_error": point.relative_error,
        }
        for point in points
    ]
    _emit(args, list(rows[0]) if rows else [], rows)
    return EXIT_OK


def cmd_benchmark(args: argparse.Namespace, _settings: Settings) -> int:
    """Fidelity of TMS resources against their negativity."""
    grid = list(np.linspace(0.0, args.en_max, args.en_points))
    rows = fidelity_vs_negativity_benchmark(
        args.r_in, grid, oracle=not args.no_oracle,
    )
    _emit(args, list(BENCHMARK_COLUMNS), [row.model_dump() for row in rows])
    return EXIT_OK


def cmd_spectrum(args: argparse.Namespace, _settings: Settings) -> int:
    """Dump the a-c covariance entries over a frequency range."""
    params = chain_from_tree(resolve_tree(args.config, args.preset))
    model = build_drift(params, approximation=_approximation(args))
    report = stability(model)
    if not report.stable:
        msg = f"no steady state: drift margin {report.margin:.6e} rad/s"
        raise InstabilityError(msg)
    omegas = TWO_PI * np.linspace(args.start_hz, args.stop_hz, args.points)
    rows = spectrum_table(model, noise_matrix(params), omegas)
    _emit(args, list(SPECTRUM_COLUMNS), rows)
    return EXIT_OK


def cmd_presets(args: argparse.Namespace, _settings: Settings) -> int:
    """List presets or print one as a configuration tree."""
    if args.show is None:
        sys.stdout.write("\n".join(sorted(PRESETS)) + "\n")
    else:
        sys.stdout.write(json.dumps(preset_tree(args.show), indent=2) + "\n")
    return EXIT_OK


def _source_options(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--config", help="JSON configuration file")
    source.add_argument("--preset", choices=sorted(PRESETS))


def _output_options(
    parser: argparse.ArgumentParser,
    settings: Settings,
) -> None:
    parser.add_argument("--out", help="output file (default: stdout)")
    parser.add_argument(
        "--format",
        choices=("csv", "json"),
        default=settings.output_format,
    )


def _quantifier_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--center-hz", type=float, help="filter centre")
    parser.add_argument("--sigma-hz", type=float, help="filter bandwidth")
    parser.add_argument("--quadrature-points", type=int)
    parser.add_argument("--fidelity", action="store_true")
    parser.add_argument("--steering", action="store_true")
    parser.add_argument(
        "--r-in", type=float, default=0.0, help="input squeezing",
    )


def build_parser(settings: Settings) -> argparse.ArgumentParser:
    """Command-line parser with one subcommand per task."""
    parser = argparse.ArgumentParser(
        prog="magnochain",
        description=(
            "Output entanglement and teleportation fidelity of a "
            "photon-phonon-magnon-microwave chain."
        ),
    )
    parser.add_argument("-v", "--verbose", action="count", default=0)
    commands = parser.add_subparsers(dest="command", required=True)
    approximations = [item.value for item in Approximation]

    point = commands.add_parser("point", help="evaluate one configuration")
    _source_options(point)
    _output_options(point, settings)
    _quantifier_options(point)
    point.add_argument(
        "--approximation", choices=approximations, default="resolved",
    )
    point.set_defaults(handler=cmd_point)

    sweep = commands.add_parser("sweep", help="run a parameter sweep")
    _source_options(sweep)
    _output_options(sweep, settings)
    _quantifier_options(sweep)
    sweep.add_argument(
        "--recipe",
        choices=[item.value for item in Recipe],
        default=Recipe.CUSTOM.value,
    )
    sweep.add_argument(
        "--axis",
        action="append",
        metavar="PATH:START:STOP:POINTS[:log]",
    )
    sweep.add_argument("--approximation", choices=approximations)
    sweep.add_argument("--jobs", type=int, help="worker processes")
    sweep.set_defaults(handler=cmd_sweep)

    boundary = commands.add_parser(
        "stability", help="locate the instability boundary",
    )
    _source_options(boundary)
    _output_options(boundary, settings)
    boundary.add_argument("--cmc-min", type=float, default=0.1)
    boundary.add_argument("--cmc-max", type=float, default=1e3)
    boundary.add_argument("--points", type=int, default=20)
    boundary.add_argument(
        "--approximation", choices=approximations, default="resolved",
    )
    boundary.set_defaults(handler=cmd_stability)

    benchmark = commands.add_parser(
        "benchmark", help="TMS fidelity versus negativity",
    )
    _output_options(benchmark, settings)
    benchmark.add_argument(
        "--r-in", type=float, nargs="+", default=[0.0, 0.3, 0.6],
    )
    benchmark.add_argument("--en-max", type=float, default=4.0)
    benchmark.add_argument("--en-points", type=int, default=21)
    benchmark.add_argument("--no-oracle", action="store_true")
    benchmark.set_defaults(handler=cmd_benchmark)

    spectrum = commands.add_parser("spectrum", help="dump output spectra")
    _source_options(spectrum)
    _output_options(spectrum, settings)
    spectrum.add_argument("--start-hz", type=float, required=True)
    spectrum.add_argument("--stop-hz", type=float, required=True)
    spectrum.add_argument("--points", type=int, default=101)
    spectrum.add_argument(
        "--approximation", choices=approximations, default="resolved",
    )
    spectrum.set_defaults(handler=cmd_spectrum)

    presets = commands.add_parser("presets", help="list built-in presets")
    presets.add_argument("--show", choices=sorted(PRESETS))
    presets.set_defaults(handler=cmd_presets)
    return parser


def main(argv: list[str] | None = None) -> int:
    """Parse ``argv``, dispatch, and map failures to exit codes."""
    try:
        settings = load_settings()
    except ConfigError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CONFIG
    args = build_parser(settings).parse_args(argv)
    level = logging.DEBUG if args.verbose > 1 else settings.log_level
    if args.verbose == 1:
        level = logging.INFO
    logging.basicConfig(
        level=level,
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
    )
    try:
        return args.handler(args, settings)
    except (
        ConfigError,
        InvalidParameterError,
        InvalidSelectionError,
        ValidationError,
    ) as exc:
        logger.error("configuration error: %s", exc)  # noqa: TRY400
        return EXIT_CONFIG
    except (NumericalError, InvalidStateError) as exc:
        logger.error("numerical failure: %s", exc)  # noqa: TRY400
        return EXIT_NUMERICAL


def run() -> None:
    """Console-script entry point."""
    sys.exit(main())
