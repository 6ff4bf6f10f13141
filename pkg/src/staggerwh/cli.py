# -*- coding: UTF-8 -*-
from __future__ import annotations
from typing import Any, Callable
import sys
import argparse
from os.path import basename, join as join_path
import numpy as np
from staggerwh import errors
from staggerwh.logs import logger, set_verbosity
from staggerwh.utils import (
    ensure_dir,
    load_config_file,
    dump_json,
    write_table,
    read_table,
    runtime_info,
    memory_rss_mb,
    library_versions,
)
from staggerwh.scenario import ScatteringScenario
from staggerwh.factorize import cauchy_factorize
from staggerwh.problem import ScatteringProblem
from staggerwh.synthesis import (
    FieldSynthesizer,
    solve_reduced,
    stagger_perturbation,
    consistency_report,
    quadrature_check,
    flip_check,
)
from staggerwh.oracle import (
    GridProblem,
    default_ng,
    solve_grid,
    extract_traces,
    self_convergence,
    compare_fields,
    compare_segments,
)
from staggerwh.settings import (
    ConfigSchema,
    DefaultContour,
    DefaultOracle,
    DefaultWindow,
    DefectKind,
    ExitCode,
    Tolerances,
)

__all__ = ["RunConfig", "run_checks", "build_parser", "run", "main"]

# Config tolerance keys mapped onto the `Tolerances` attributes
TOLERANCE_KEYS: dict[str, str] = {
    "wh_residual": "WH_RESIDUAL",
    "reduced_residual": "REDUCED_RESIDUAL",
    "helmholtz": "HELMHOLTZ",
    "oracle_residual": "ORACLE_RESIDUAL",
    "flip": "FLIP",
}
TOLERANCE_DEFAULTS: dict[str, float] = {
    key: getattr(Tolerances, attr) for key, attr in TOLERANCE_KEYS.items()
}


# Config ------------------------------------------------------------------------------------------
def _check_keys(block: dict, allowed: set[str], name: str) -> None:
    if not isinstance(block, dict):
        raise errors.ConfigSchemaError(
            "<RunConfig>\nBlock '{}' must be a mapping, instead got {}.".format(
                name, type(block).__name__
            )
        )
    unknown = set(block) - allowed
    if unknown:
        raise errors.ConfigSchemaError(
            "<RunConfig>\nUnknown keys in '{}': {}, available options: {}.".format(
                name, sorted(unknown), sorted(allowed)
            )
        )


def _as_int(value: Any, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or int(value) != value:
        raise errors.ConfigSchemaError(
            "<RunConfig>\n'{}' must be an integer, instead got {}.".format(name, repr(value))
        )
    return int(value)


def _as_float(value: Any, name: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise errors.ConfigSchemaError(
            "<RunConfig>\n'{}' must be a number, instead got {}.".format(name, repr(value))
        )
    return float(value)


class RunConfig:
    """A validated run configuration: the scenario, the numerical settings
    and the output choices.
    """

    def __init__(self, data: dict) -> None:
        """Validate a configuration mapping.

        :param data: `<dict>` The parsed config with the blocks `scenario`,
            `numerics` and `outputs`. Only `scenario` is required.
        :raises ConfigSchemaError: Unknown keys, wrong types or invalid values.
        """
        _check_keys(data, ConfigSchema.BLOCKS, "config")
        if "scenario" not in data:
            raise errors.ConfigSchemaError("<RunConfig>\nMissing the 'scenario' block.")
        self._scenario: ScatteringScenario = self._parse_scenario(data["scenario"])
        self._parse_numerics(data.get("numerics") or {})
        self._parse_outputs(data.get("outputs") or {})

    @classmethod
    def from_file(cls, path: str) -> RunConfig:
        """(Class method) Load and validate a YAML or JSON config file."""
        return cls(load_config_file(path))

    # Parsing ------------------------------------------------------------------
    def _parse_scenario(self, block: dict) -> ScatteringScenario:
        _check_keys(block, ConfigSchema.SCENARIO, "scenario")
        missing = {"omega_re", "omega_im", "theta_deg", "kind", "N", "M"} - set(block)
        if missing:
            raise errors.ConfigSchemaError(
                "<RunConfig>\nMissing scenario keys: {}.".format(sorted(missing))
            )
        if block["kind"] not in DefectKind.ALL:
            raise errors.ConfigSchemaError(
                "<RunConfig>\nInvalid kind {}, available options: {}.".format(
                    repr(block["kind"]), sorted(DefectKind.ALL)
                )
            )
        omega = complex(_as_float(block["omega_re"], "omega_re"), _as_float(block["omega_im"], "omega_im"))
        amplitude = complex(
            _as_float(block.get("amplitude_re", 1.0), "amplitude_re"),
            _as_float(block.get("amplitude_im", 0.0), "amplitude_im"),
        )
        try:
            return ScatteringScenario.from_degrees(
                omega,
                _as_float(block["theta_deg"], "theta_deg"),
                amplitude,
                block["kind"],
                _as_int(block["N"], "N"),
                _as_int(block["M"], "M"),
                bool(block.get("validation", False)),
            )
        except errors.InvalidScenarioError as err:
            raise errors.ConfigSchemaError("<RunConfig>\n{}".format(err)) from err

    def _parse_numerics(self, block: dict) -> None:
        _check_keys(block, ConfigSchema.NUMERICS, "numerics")
        radius = block.get("contour_radius", "auto")
        if radius == "auto":
            self._contour_radius: float | None = None
        else:
            self._contour_radius = _as_float(radius, "contour_radius")
            if self._contour_radius <= 0:
                raise errors.ConfigSchemaError("<RunConfig>\n'contour_radius' must be positive.")
        samples = _as_int(block.get("samples", DefaultContour.SAMPLES), "samples")
        if samples < DefaultContour.MIN_SAMPLES or samples & (samples - 1):
            raise errors.ConfigSchemaError(
                "<RunConfig>\n'samples' must be a power of two >= {}, instead got {}.".format(
                    DefaultContour.MIN_SAMPLES, samples
                )
            )
        self._samples: int = samples
        ng = block.get("oracle_ng", "auto")
        self._oracle_ng: int = default_ng(self._scenario) if ng == "auto" else _as_int(ng, "oracle_ng")
        solver = block.get("oracle_solver", DefaultOracle.SOLVER)
        if solver not in DefaultOracle.SOLVERS:
            raise errors.ConfigSchemaError(
                "<RunConfig>\nInvalid oracle_solver {}, available options: {}.".format(
                    repr(solver), sorted(DefaultOracle.SOLVERS)
                )
            )
        self._oracle_solver: str = solver
        self._quadrature_check: bool = bool(block.get("quadrature_check", False))
        tolerances = block.get("tolerances") or {}
        _check_keys(tolerances, ConfigSchema.TOLERANCES, "tolerances")
        self._tolerances: dict[str, float] = dict(TOLERANCE_DEFAULTS)
        for key, value in tolerances.items():
            value = _as_float(value, key)
            if value <= 0:
                raise errors.ConfigSchemaError(
                    "<RunConfig>\nTolerance '{}' must be positive, instead got {}.".format(key, value)
                )
            self._tolerances[key] = value

    def _parse_outputs(self, block: dict) -> None:
        _check_keys(block, ConfigSchema.OUTPUTS, "outputs")
        window = (
            _as_int(block.get("x_min", DefaultWindow.X_MIN), "x_min"),
            _as_int(block.get("x_max", DefaultWindow.X_MAX), "x_max"),
            _as_int(block.get("y_min", DefaultWindow.Y_MIN), "y_min"),
            _as_int(block.get("y_max", DefaultWindow.Y_MAX), "y_max"),
        )
        if window[1] < window[0] or window[3] < window[2]:
            raise errors.ConfigSchemaError("<RunConfig>\nEmpty output window {}.".format(window))
        self._window: tuple[int, int, int, int] = window
        fmt = block.get("table_format", "csv")
        if fmt not in ConfigSchema.TABLE_FORMATS:
            raise errors.ConfigSchemaError(
                "<RunConfig>\nInvalid table_format {}, available options: {}.".format(
                    repr(fmt), sorted(ConfigSchema.TABLE_FORMATS)
                )
            )
        self._table_format: str = fmt
        emit = block.get("emit") or []
        if not isinstance(emit, list) or set(emit) - ConfigSchema.EMIT:
            raise errors.ConfigSchemaError(
                "<RunConfig>\nInvalid emit flags {}, available options: {}.".format(
                    repr(emit), sorted(ConfigSchema.EMIT)
                )
            )
        self._emit: set[str] = set(emit)

    # Properties ---------------------------------------------------------------
    @property
    def scenario(self) -> ScatteringScenario:
        """Access the scenario `<ScatteringScenario>`."""
        return self._scenario

    @property
    def contour_radius(self) -> float | None:
        """Access the requested contour radius, `None` for automatic `<float/None>`."""
        return self._contour_radius

    @property
    def samples(self) -> int:
        """Access the initial sample count `<int>`."""
        return self._samples

    @property
    def oracle_ng(self) -> int:
        """Access the grid half-width `<int>`."""
        return self._oracle_ng

    @property
    def oracle_solver(self) -> str:
        """Access the grid solver name `<str>`."""
        return self._oracle_solver

    @property
    def quadrature_check(self) -> bool:
        """Whether the corner quadrature check runs `<bool>`."""
        return self._quadrature_check

    @property
    def tolerances(self) -> dict[str, float]:
        """Access the effective tolerances `<dict>`."""
        return dict(self._tolerances)

    @property
    def window(self) -> tuple[int, int, int, int]:
        """Access the output window `(x_min, x_max, y_min, y_max)` `<tuple>`."""
        return self._window

    @property
    def table_format(self) -> str:
        """Access the table format `<str>`."""
        return self._table_format

    @property
    def emit(self) -> set[str]:
        """Access the optional outputs `<set[str]>`."""
        return set(self._emit)

    # Utils --------------------------------------------------------------------
    def apply_tolerances(self) -> None:
        """Install the configured tolerances as the package-wide values."""
        for key, attr in TOLERANCE_KEYS.items():
            setattr(Tolerances, attr, self._tolerances[key])

    def problem(self, n_sep: int | None = None) -> ScatteringProblem:
        """The run context for this configuration `<ScatteringProblem>`.

        :param n_sep: `<int>` Overrides the configured separation `N`. Defaults to `None`.
        """
        scenario = self._scenario
        if n_sep is not None and n_sep != scenario.n_sep:
            try:
                scenario = scenario.with_separation(n_sep)
            except errors.InvalidScenarioError as err:
                raise errors.ConfigSchemaError("<RunConfig>\n{}".format(err)) from err
        return ScatteringProblem(scenario, self._contour_radius, self._samples)

    def to_dict(self) -> dict[str, Any]:
        """Normalized configuration for manifests `<dict>`."""
        return {
            "scenario": self._scenario.to_dict(),
            "numerics": {
                "contour_radius": self._contour_radius if self._contour_radius else "auto",
                "samples": self._samples,
                "oracle_ng": self._oracle_ng,
                "oracle_solver": self._oracle_solver,
                "quadrature_check": self._quadrature_check,
                "tolerances": dict(self._tolerances),
            },
            "outputs": {
                "x_min": self._window[0],
                "x_max": self._window[1],
                "y_min": self._window[2],
                "y_max": self._window[3],
                "table_format": self._table_format,
                "emit": sorted(self._emit),
            },
        }

    def __repr__(self) -> str:
        return "<%s (scenario=%r)>" % (self.__class__.__name__, self._scenario)


# Manifest ----------------------------------------------------------------------------------------
def _manifest(command: str, config: RunConfig | None, files: list[str], **sections: Any) -> dict:
    data: dict[str, Any] = {
        "command": command,
        "files": sorted(files),
        "versions": library_versions(),
        "runtime": runtime_info(),
    }
    if config is not None:
        data["config"] = config.to_dict()
    data.update(sections)
    return data


def _write(frame: Any, out: str, name: str, config: RunConfig | None, files: list[str]) -> None:
    fmt = config.table_format if config is not None else "csv"
    path = write_table(frame, out, name, fmt)
    files.append(basename(path))


# Commands ----------------------------------------------------------------------------------------
def cmd_factorize(
    config: RunConfig,
    out: str,
    function: str | None = None,
    n_sep: int | None = None,
) -> int:
    """Kernel samples and Wiener-Hopf factors of the configured run.

    :param function: `<str>` Write only this factor pair (`Lk`, `Lc`, `alpha`
        or `beta`). Defaults to `None`, every pair when `factor_tables` is emitted.
    :param n_sep: `<int>` Overrides the configured separation `N`. Defaults to `None`.
    """
    problem = config.problem(n_sep)
    bundle, suite, scenario = problem.bundle, problem.suite, problem.scenario
    files: list[str] = []
    if function is not None:
        names = [function]
    elif "factor_tables" in config.emit:
        names = sorted(ConfigSchema.FACTOR_FUNCTIONS)
    else:
        names = []
    if "kernel_table" in config.emit:
        _write(bundle.to_frame(scenario.n_sep, scenario.kind), out, "kernel", config, files)
    residuals = {} if function is not None else suite.product_residuals()
    for name in names:
        if name in ("alpha", "beta"):
            pair = suite.alpha if name == "alpha" else suite.beta
            residuals[name] = suite.product_residuals()[name]
        else:
            source = bundle.Lk if name == "Lk" else bundle.Lc
            pair = cauchy_factorize(source, problem.grid, name)
            residuals[name] = pair.product_residual(source)
        _write(pair.plus.to_frame(), out, "factor_%s_plus" % name, config, files)
        _write(pair.minus.to_frame(), out, "factor_%s_minus" % name, config, files)
    manifest = _manifest(
        "factorize",
        config,
        files,
        N=scenario.n_sep,
        problem=problem.summary(),
        kernel_identities=bundle.identity_residuals(),
        factor_residuals=residuals,
    )
    dump_json(manifest, join_path(out, "manifest.json"))
    return ExitCode.OK


def cmd_solve(config: RunConfig, out: str) -> int:
    """Solve the reduced system and write the segment table."""
    problem = config.problem()
    solution = solve_reduced(problem)
    files: list[str] = []
    _write(solution.to_frame(), out, "segment", config, files)
    diagnostics: dict[str, Any] = {"reduced": solution.summary()}
    if config.quadrature_check and not problem.scenario.is_crack:
        diagnostics["quadrature"] = quadrature_check(FieldSynthesizer(problem, solution))
    manifest = _manifest("solve", config, files, problem=problem.summary(), diagnostics=diagnostics)
    dump_json(manifest, join_path(out, "manifest.json"))
    return ExitCode.OK


def cmd_field(config: RunConfig, out: str) -> int:
    """Synthesize the field on the output window."""
    problem = config.problem()
    synth = FieldSynthesizer(problem)
    field = synth.field(config.window)
    files: list[str] = []
    _write(field.to_frame(), out, "field", config, files)
    _write(synth.solution.to_frame(), out, "segment", config, files)
    if "split_fields" in config.emit:
        aligned, perturbation = stagger_perturbation(synth, config.window)
        _write(aligned.to_frame(), out, "field_aligned", config, files)
        _write(perturbation.to_frame(), out, "field_perturbation", config, files)
    diagnostics = {
        "reduced": synth.solution.summary(),
        "wh_residual": synth.wh.residual,
        "helmholtz": field.helmholtz_residual(problem.scenario.omega, problem.scenario),
        "constrained_sites": field.constrained_residual(problem.scenario),
        "route": synth.route,
    }
    manifest = _manifest("field", config, files, problem=problem.summary(), diagnostics=diagnostics)
    dump_json(manifest, join_path(out, "manifest.json"))
    return ExitCode.OK


def cmd_oracle(config: RunConfig, out: str, convergence: bool = False) -> int:
    """Direct grid solve, written in the field table layout."""
    scenario = config.scenario
    grid = GridProblem(scenario, config.oracle_ng)
    field = solve_grid(grid, solver=config.oracle_solver, tolerance=config.tolerances["oracle_residual"])
    traces = extract_traces(field, scenario)
    files: list[str] = []
    _write(field.subwindow(*config.window).to_frame(), out, "oracle_field", config, files)
    _write(traces.to_frame(), out, "oracle_segment", config, files)
    diagnostics: dict[str, Any] = {
        "ng": grid.ng,
        "u_m10": traces.u_m10,
        "u_Mm1N": traces.u_Mm1N,
        "helmholtz": field.helmholtz_residual(scenario.omega, scenario),
    }
    if convergence:
        diagnostics["self_convergence"] = self_convergence(
            scenario, grid.ng, solver=config.oracle_solver
        )
    manifest = _manifest("oracle", config, files, diagnostics=diagnostics)
    dump_json(manifest, join_path(out, "manifest.json"))
    return ExitCode.OK


def cmd_compare(first: str, second: str, out: str) -> int:
    """Per-site (field tables) or per-index (segment tables) errors."""
    frame_a, frame_b = read_table(first), read_table(second)
    if "y" in frame_a.columns and "y" in frame_b.columns:
        table, name = compare_fields(frame_a, frame_b), "compare_field"
    else:
        table, name = compare_segments(frame_a, frame_b), "compare_segment"
    files: list[str] = []
    _write(table, out, name, None, files)
    summary = {
        "sites": int(len(table)),
        "max_abs_err": float(table["abs_err"].max()) if len(table) else 0.0,
        "max_rel_err": float(table["rel_err"].max()) if len(table) else 0.0,
    }
    dump_json(_manifest("compare", None, files, inputs=[first, second], summary=summary),
              join_path(out, "manifest.json"))  # fmt: skip
    return ExitCode.OK


# Checks ------------------------------------------------------------------------------------------
def _entry(value: float, limit: float) -> dict[str, Any]:
    value = float(value)
    return {"value": value, "limit": float(limit), "passed": bool(np.isfinite(value) and value < limit)}


def _relative(a: np.ndarray, b: np.ndarray) -> float:
    a, b = np.asarray(a), np.asarray(b)
    if not a.size:
        return 0.0
    scale = max(float(np.max(np.abs(b))), np.finfo(float).tiny)
    return float(np.max(np.abs(a - b))) / scale


def run_checks(config: RunConfig) -> dict[str, dict[str, Any]]:
    """Evaluate the invariant suite of a configured run `<dict>`.

    Each entry holds the measured `value`, its `limit` and a `passed` flag.
    """
    tol = config.tolerances
    scenario = config.scenario
    problem = config.problem()
    bundle, suite = problem.bundle, problem.suite
    checks: dict[str, dict[str, Any]] = {}

    # kernel and factors
    identity = bundle.identity_residuals()
    checks["kernel_lambda_Q"] = _entry(identity["lam_plus_inverse_minus_Q"], 1e-10)
    checks["kernel_lambda_hr"] = _entry(identity["lam_ratio_minus_h_over_r"], 1e-10)
    checks["kernel_h_squared"] = _entry(identity["h_squared_minus_H"], 1e-12)
    checks["kernel_r_squared"] = _entry(identity["r_squared_minus_R"], 1e-12)
    for name, value in suite.product_residuals().items():
        checks["factor_product_%s" % name] = _entry(value, Tolerances.FACTOR_PRODUCT)
    checks["factor_tail_mass"] = _entry(problem.tail_mass, DefaultContour.TAIL_MASS * 10)

    # reduced system and synthesis
    synth = FieldSynthesizer(problem)
    solution = synth.solution
    scale = max(1.0, float(np.linalg.norm(solution.rhs)))
    checks["reduced_residual"] = _entry(solution.residual / scale, tol["reduced_residual"])
    if not scenario.is_crack:
        checks["incident_remainder"] = _entry(solution.ginc, Tolerances.GINC)
    checks["wh_residual"] = _entry(synth.wh.residual, tol["wh_residual"])
    report = consistency_report(synth)
    chi_scale = max(1.0, float(np.max(np.abs(solution.unknowns)))) if len(solution) else 1.0
    checks["segment_conditions"] = _entry(report["segment"] / chi_scale, 1e-6)
    if "routes" in report:
        checks["row_routes"] = _entry(report["routes"], 1e-8)
    if "zq" in report:
        checks["zq_conditions"] = _entry(report["zq"] / chi_scale, 1e-6)
        checks["constrained_rows"] = _entry(report["constrained_rows"] / max(1.0, abs(scenario.amplitude)), 1e-6)
    field = synth.field(config.window)
    checks["helmholtz"] = _entry(field.helmholtz_residual(scenario.omega, scenario), tol["helmholtz"])
    if not scenario.is_crack:
        checks["constrained_sites"] = _entry(field.constrained_residual(scenario), 1e-6)

    # stagger split and symmetries
    aligned, perturbation = stagger_perturbation(synth, config.window)
    checks["stagger_split"] = _entry(_relative((aligned + perturbation).values, field.values), 1e-8)
    flip = flip_check(problem, synth)
    checks["flip"] = _entry(flip["max_deviation"], tol["flip"])
    lo, hi = problem.bounds
    other = problem.with_radius(float(lo ** 0.7 * hi ** 0.3))
    probe = (-10, 10, -3, scenario.n_sep + 3)
    checks["contour_independence"] = _entry(
        _relative(FieldSynthesizer(other).field(probe).values, synth.field(probe).values), 1e-8
    )
    if config.quadrature_check and not scenario.is_crack:
        quad = quadrature_check(synth)
        checks["quadrature"] = _entry(
            max(quad["u_m10_deviation"], quad["u_Mm1N_deviation"]) / chi_scale, 1e-6
        )

    # direct grid solve
    grid_field = solve_grid(
        GridProblem(scenario, config.oracle_ng, wave=problem.wave),
        solver=config.oracle_solver,
        tolerance=tol["oracle_residual"],
    )
    traces = extract_traces(grid_field, scenario)
    reduced = solution.chi
    grid_values = traces.chi
    if not scenario.is_crack:
        reduced = np.append(reduced, [solution.u_m10, solution.u_Mm1N])
        grid_values = np.append(grid_values, [traces.u_m10, traces.u_Mm1N])
    checks["oracle_agreement"] = _entry(_relative(reduced, grid_values), 0.05)
    logger.info("Checks finished, memory %.1f MiB", memory_rss_mb())
    return checks


def cmd_checks(config: RunConfig, out: str) -> int:
    """Run the invariant suite and write `checks.json`."""
    checks = run_checks(config)
    failed = sorted(name for name, entry in checks.items() if not entry["passed"])
    dump_json(
        {"config": config.to_dict(), "checks": checks, "failed": failed, "passed": not failed},
        join_path(out, "checks.json"),
    )
    for name in failed:
        logger.warning("Check '%s' failed: %.3e >= %.1e", name, checks[name]["value"], checks[name]["limit"])
    return ExitCode.NUMERIC if failed else ExitCode.OK


# Entry -------------------------------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    """The command-line parser `<ArgumentParser>`."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default="out", help="output directory (default: out)")
    common.add_argument("--verbose", action="store_true", help="log at DEBUG level")
    common.add_argument("--quiet", action="store_true", help="log warnings and errors only")

    parser = argparse.ArgumentParser(
        prog="staggerwh",
        description="Lattice scattering by a staggered pair of cracks or rigid constraints.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("factorize", "kernel samples and Wiener-Hopf factors"),
        ("solve", "reduced system for the segment unknowns"),
        ("field", "scattered and total field on the output window"),
        ("oracle", "direct solve on a truncated grid"),
        ("checks", "invariant suite, writes checks.json"),
    ):
        cmd = sub.add_parser(name, parents=[common], help=text)
        cmd.add_argument("--config", required=True, help="YAML or JSON run config")
        if name == "oracle":
            cmd.add_argument(
                "--self-convergence",
                action="store_true",
                help="also compare with a grid 20 sites wider",
            )
        if name == "factorize":
            cmd.add_argument(
                "--function",
                choices=sorted(ConfigSchema.FACTOR_FUNCTIONS),
                help="write only this factor pair",
            )
            cmd.add_argument("--N", type=int, dest="n_sep", help="override the separation N")
    compare = sub.add_parser("compare", parents=[common], help="errors between two tables")
    compare.add_argument("first", help="table under test")
    compare.add_argument("second", help="reference table")
    return parser


def _fail(err: errors.StaggerWHError, out: str, code: int) -> int:
    payload = {"error": err.__class__.__name__, "message": str(err), "exit_code": code}
    raw = dump_json(payload)
    try:
        dump_json(payload, join_path(ensure_dir(out), "error.json"))
    except OSError as os_err:
        logger.error("Could not write error.json: %s", os_err)
    sys.stderr.write(raw.decode("utf-8") + "\n")
    return code


def run(argv: list[str] | None = None) -> int:
    """Parse `argv`, run the subcommand and return the exit code `<int>`."""
    args = build_parser().parse_args(argv)
    set_verbosity(args.verbose, args.quiet)
    out = args.out
    try:
        out = ensure_dir(out)
        if args.command == "compare":
            return cmd_compare(args.first, args.second, out)
        config = RunConfig.from_file(args.config)
        config.apply_tolerances()
        logger.info("Running '%s' for %r", args.command, config.scenario)
        commands: dict[str, Callable[[RunConfig, str], int]] = {
            "solve": cmd_solve,
            "field": cmd_field,
            "checks": cmd_checks,
        }
        if args.command == "oracle":
            code = cmd_oracle(config, out, args.self_convergence)
        elif args.command == "factorize":
            code = cmd_factorize(config, out, args.function, args.n_sep)
        else:
            code = commands[args.command](config, out)
        logger.debug("Resident memory %.1f MiB", memory_rss_mb())
        return code
    except errors.ConfigError as err:
        return _fail(err, out, ExitCode.CONFIG)
    except errors.StaggerWHError as err:
        return _fail(err, out, ExitCode.NUMERIC)


def main() -> None:
    sys.exit(run())
