"""CLI interface for sae-radial"""

import logging
import time
from typing import Any, Dict, List, Optional, Tuple

import typer
from rich.console import Console
from rich.markup import escape

from saeradial.bound import SaeParam
from saeradial.config import OutputFormat, RunConfig, Spacing, SweepGrid
from saeradial.errors import DomainError, SaeError

app = typer.Typer(help="sae-radial - self-adjoint extension of the attractive inverse-square potential")

err_console = Console(stderr=True)
logger = logging.getLogger(__name__)

NO_GRID = (None, None, None)


@app.callback()
def main(
    verbose: int = typer.Option(0, "--verbose", "-v", count=True, help="-v for INFO, -vv for DEBUG on stderr"),
):
    """Regime classification, bound level, S-matrix and phase shifts of -V0/r^2"""
    from saeradial.utils import setup_logging
    setup_logging(verbose)


def _fail(error: SaeError):
    """One-line diagnostic on stderr, exit code 1"""
    err_console.print(f"[red]Error: {escape(str(error))}[/red]", soft_wrap=True)
    raise typer.Exit(1)


def _parse_tau(text: str) -> SaeParam:
    try:
        return SaeParam.parse(text)
    except DomainError as e:
        raise typer.BadParameter(str(e), param_hint="--tau")


def _run_config(**fields) -> RunConfig:
    try:
        return RunConfig(**fields)
    except DomainError as e:
        raise typer.BadParameter(str(e))


def _sweep_grid(grid: Tuple[Optional[float], Optional[float], Optional[int]], spacing: Spacing) -> Optional[SweepGrid]:
    if grid is None or grid[0] is None:
        return None
    try:
        return SweepGrid(start=grid[0], stop=grid[1], count=grid[2], spacing=spacing)
    except DomainError as e:
        raise typer.BadParameter(str(e), param_hint="--grid")


def _emit(config: RunConfig, document: Dict[str, Any], title: str):
    """Write a single-result document in the requested format"""
    from saeradial.formats import render_csv, render_json, render_table, write_output

    if config.output_format == OutputFormat.JSON:
        text = render_json(document)
    else:
        flat: Dict[str, Any] = {}
        for key, value in document.items():
            if isinstance(value, complex):
                flat[f"{key}_re"] = value.real
                flat[f"{key}_im"] = value.imag
            elif isinstance(value, list):
                for i, item in enumerate(value):
                    flat[f"{key}_{i}"] = item
            else:
                flat[key] = value
        if config.output_format == OutputFormat.CSV:
            text = render_csv(list(flat), [list(flat.values())])
        else:
            text = render_table(title, ["field", "value"], list(flat.items()))
    write_output(text, config.output_path)


def _emit_rows(config: RunConfig, header: List[str], records: List[Dict[str, Any]], title: str, extra: Dict[str, Any]):
    """Write a multi-row result; JSON wraps the rows with the run parameters"""
    from saeradial.formats import render_csv, render_json, render_table, rows_from_dicts, write_output

    if config.output_format == OutputFormat.JSON:
        document = dict(extra)
        document["rows"] = [{name: record.get(name) for name in header} for record in records]
        text = render_json(document)
    elif config.output_format == OutputFormat.CSV:
        text = render_csv(header, rows_from_dicts(header, records))
    else:
        text = render_table(title, header, rows_from_dicts(header, records))
    write_output(text, config.output_path)


def _header(config: RunConfig) -> Dict[str, Any]:
    from saeradial.potential import compute_p

    spec = config.potential()
    p = compute_p(spec)
    return {"l": spec.l, "mass": spec.mass, "two_m_v0": spec.two_m_v0, "p": p.p}


MASS = typer.Option(1.0, "--mass", help="Particle mass m (hbar = 1)")
V0 = typer.Option(None, "--v0", help="Strength V0 of -V0/r^2 (positive = attractive)")
TWO_M_V0 = typer.Option(None, "--two-m-v0", help="Dimensionless strength 2 m V0 (instead of --v0)")
L = typer.Option(0, "--l", min=0, help="Orbital momentum l")
TAU = typer.Option("0", "--tau", help="Extension parameter tau: a float, 'inf' or '-inf'")
FORMAT = typer.Option(None, "--format", help="Output format (default json)")
OUTPUT = typer.Option(None, "--output", "-o", help="Write the result to this file instead of stdout")


@app.command("classify")
def classify(
    mass: float = MASS,
    v0: Optional[float] = V0,
    two_m_v0: Optional[float] = TWO_M_V0,
    l: int = L,
    output_format: Optional[OutputFormat] = FORMAT,
    output: Optional[str] = OUTPUT,
):
    """
    Classify the regime of one partial wave

    Examples:
        saeradial classify --mass 1 --v0 0.105 --l 0
        saeradial classify --two-m-v0 2.1 --l 1
    """
    from saeradial.potential import additional_window, compute_p

    config = _run_config(
        mass=mass, v0=v0, two_m_v0=two_m_v0, l=l,
        output_format=output_format or OutputFormat.JSON, output_path=output,
    )
    try:
        spec = config.potential()
        p = compute_p(spec)
        document = {
            "l": spec.l,
            "mass": spec.mass,
            "v0": spec.v0,
            "two_m_v0": spec.two_m_v0,
            "p": p.p,
            "p_squared": p.p_squared,
            "regime": p.regime,
            "diagnostic": p.diagnostic,
            "window": list(additional_window(spec.l)),
            "r2_limit": spec.r2_limit(),
        }
    except SaeError as e:
        _fail(e)
    _emit(config, document, "classification")


@app.command("bound-state")
def bound_state(
    mass: float = MASS,
    v0: Optional[float] = V0,
    two_m_v0: Optional[float] = TWO_M_V0,
    l: int = L,
    tau: str = TAU,
    output_format: Optional[OutputFormat] = FORMAT,
    output: Optional[str] = OUTPUT,
):
    """
    The single bound level for tau < 0

    Examples:
        saeradial bound-state --mass 1 --v0 0.09375 --l 0 --tau -1
    """
    from saeradial.bound import bound_energy, node_radius
    from saeradial.potential import compute_p

    config = _run_config(
        mass=mass, v0=v0, two_m_v0=two_m_v0, l=l, tau=_parse_tau(tau),
        output_format=output_format or OutputFormat.JSON, output_path=output,
    )
    try:
        spec = config.potential()
        state = bound_energy(compute_p(spec), spec.mass, config.tau)
        document = _header(config)
        document.update({
            "tau": config.tau.as_float(),
            "energy": state.energy,
            "kappa": state.kappa,
            "node_free": state.node_free,
            "zero_energy_node": node_radius(1.0, config.tau.tau, state.p),
        })
    except SaeError as e:
        _fail(e)
    _emit(config, document, "bound state")


@app.command("wavefunction")
def wavefunction(
    mass: float = MASS,
    v0: Optional[float] = V0,
    two_m_v0: Optional[float] = TWO_M_V0,
    l: int = L,
    tau: str = TAU,
    radius: Optional[List[float]] = typer.Option(None, "--r", help="Radius to sample (repeatable)"),
    grid: Tuple[float, float, int] = typer.Option(NO_GRID, "--grid", help="Radii START STOP COUNT"),
    spacing: Spacing = typer.Option(Spacing.LINEAR, "--spacing", help="Grid spacing"),
    amplitude: float = typer.Option(1.0, "--amplitude", help="Amplitude A of the wave function"),
    normalize: bool = typer.Option(False, "--normalize", help="Use the unit-normalised amplitude"),
    output_format: Optional[OutputFormat] = FORMAT,
    output: Optional[str] = OUTPUT,
):
    """
    Sample the bound-state radial function R(r)

    Examples:
        saeradial wavefunction --two-m-v0 0.1875 --tau -1 --grid 0.1 10 50 --format csv
    """
    from saeradial.bound import bound_energy, bound_wavefunction
    from saeradial.bound import normalize as unit_amplitude
    from saeradial.potential import compute_p

    sweep = _sweep_grid(grid, spacing)
    config = _run_config(
        mass=mass, v0=v0, two_m_v0=two_m_v0, l=l, tau=_parse_tau(tau),
        output_format=output_format or OutputFormat.JSON, output_path=output,
    )
    radii = list(radius or [])
    if sweep is not None:
        radii.extend(float(r) for r in sweep.values())
    if not radii:
        raise typer.BadParameter("give at least one --r or a --grid")
    try:
        spec = config.potential()
        state = bound_energy(compute_p(spec), spec.mass, config.tau)
        scale = unit_amplitude(state) if normalize else amplitude
        records = [{"r": r, "R": bound_wavefunction(state, scale, r)} for r in radii]
    except SaeError as e:
        _fail(e)
    extra = _header(config)
    extra.update({"tau": config.tau.as_float(), "energy": state.energy, "kappa": state.kappa, "amplitude": scale})
    _emit_rows(config, ["r", "R"], records, "bound-state wave function", extra)


@app.command("phase-shift")
def phase_shift(
    mass: float = MASS,
    v0: Optional[float] = V0,
    two_m_v0: Optional[float] = TWO_M_V0,
    l: int = L,
    tau: str = TAU,
    k: float = typer.Option(..., "--k", help="Momentum k"),
    output_format: Optional[OutputFormat] = FORMAT,
    output: Optional[str] = OUTPUT,
):
    """
    Phase shift delta_l = delta_standard + delta_sae at momentum k

    Examples:
        saeradial phase-shift --two-m-v0 0.1875 --tau -1 --k 2
    """
    from saeradial.potential import compute_p
    from saeradial.scattering import phase_shift as partial_wave

    config = _run_config(
        mass=mass, v0=v0, two_m_v0=two_m_v0, l=l, tau=_parse_tau(tau),
        output_format=output_format or OutputFormat.JSON, output_path=output,
    )
    try:
        spec = config.potential()
        wave = partial_wave(spec.l, compute_p(spec), k, config.tau)
        document = _header(config)
        document.update({
            "tau": config.tau.as_float(),
            "k": k,
            "delta_standard": wave.delta_standard,
            "delta_sae": wave.delta_sae,
            "delta_total": wave.delta_total,
            "s_matrix": wave.s_matrix,
            "character": wave.character,
        })
    except SaeError as e:
        _fail(e)
    _emit(config, document, "phase shift")


@app.command("s-matrix")
def s_matrix(
    mass: float = MASS,
    v0: Optional[float] = V0,
    two_m_v0: Optional[float] = TWO_M_V0,
    l: int = L,
    tau: str = TAU,
    k: float = typer.Option(..., "--k", help="Momentum k"),
    output_format: Optional[OutputFormat] = FORMAT,
    output: Optional[str] = OUTPUT,
):
    """
    Partial-wave S-matrix element S_l(k)

    Examples:
        saeradial s-matrix --two-m-v0 0.1875 --tau inf --k 1
    """
    from saeradial.potential import compute_p
    from saeradial.scattering import lambda_of_k
    from saeradial.scattering import s_matrix as element

    config = _run_config(
        mass=mass, v0=v0, two_m_v0=two_m_v0, l=l, tau=_parse_tau(tau),
        output_format=output_format or OutputFormat.JSON, output_path=output,
    )
    try:
        spec = config.potential()
        p = compute_p(spec)
        value = element(spec.l, p, k, config.tau)
        lam = None if config.tau.is_infinite else lambda_of_k(config.tau, p, k).lam
        document = _header(config)
        document.update({
            "tau": config.tau.as_float(),
            "k": k,
            "lambda": lam,
            "s_matrix": value,
            "modulus": abs(value),
        })
    except SaeError as e:
        _fail(e)
    _emit(config, document, "S-matrix")


@app.command("pole")
def pole(
    mass: float = MASS,
    v0: Optional[float] = V0,
    two_m_v0: Optional[float] = TWO_M_V0,
    l: int = L,
    tau: str = TAU,
    output_format: Optional[OutputFormat] = FORMAT,
    output: Optional[str] = OUTPUT,
):
    """
    Bound-state pole of the continued S-matrix

    Examples:
        saeradial pole --two-m-v0 0.1875 --tau -1
    """
    import math

    from saeradial.bound import bound_energy
    from saeradial.potential import compute_p
    from saeradial.scattering import continued_denominator, pole_energy

    config = _run_config(
        mass=mass, v0=v0, two_m_v0=two_m_v0, l=l, tau=_parse_tau(tau),
        output_format=output_format or OutputFormat.JSON, output_path=output,
    )
    try:
        spec = config.potential()
        p = compute_p(spec)
        energy = pole_energy(config.tau, p, spec.mass)
        kappa = math.sqrt(-2.0 * spec.mass * energy)
        level = bound_energy(p, spec.mass, config.tau).energy
        document = _header(config)
        document.update({
            "tau": config.tau.as_float(),
            "pole_energy": energy,
            "kappa": kappa,
            "bound_energy": level,
            "denominator_at_pole": abs(continued_denominator(config.tau, p, kappa)),
        })
    except SaeError as e:
        _fail(e)
    _emit(config, document, "pole")


@app.command("scan")
def scan(
    over: str = typer.Option("k", "--over", help="Sweep variable: k or tau"),
    mass: float = MASS,
    v0: Optional[float] = V0,
    two_m_v0: Optional[float] = TWO_M_V0,
    l: int = L,
    tau: str = TAU,
    k: Optional[float] = typer.Option(None, "--k", help="Fixed momentum for --over tau"),
    grid: Tuple[float, float, int] = typer.Option(NO_GRID, "--grid", help="Sweep START STOP COUNT"),
    spacing: Spacing = typer.Option(Spacing.LINEAR, "--spacing", help="Grid spacing"),
    workers: Optional[int] = typer.Option(None, "--workers", min=1, help="Worker processes (capped by SAE_RADIAL_THREADS)"),
    output_format: Optional[OutputFormat] = FORMAT,
    output: Optional[str] = OUTPUT,
):
    """
    Phase-shift sweep over k or tau (plot-ready CSV)

    Examples:
        saeradial scan --over k --two-m-v0 0.1875 --tau -1 --grid 0.01 10 200 --spacing log
        saeradial scan --over tau --two-m-v0 0.1875 --k 1 --grid -5 5 101
    """
    from saeradial.potential import compute_p, require_transitive
    from saeradial.sweep import SweepPool, phase_row

    if over not in ("k", "tau"):
        raise typer.BadParameter(f"--over must be 'k' or 'tau', got {over!r}", param_hint="--over")
    sweep = _sweep_grid(grid, spacing)
    if sweep is None:
        raise typer.BadParameter("--grid START STOP COUNT is required", param_hint="--grid")
    if over == "tau" and k is None:
        raise typer.BadParameter("--over tau needs a fixed --k", param_hint="--k")
    config = _run_config(
        mass=mass, v0=v0, two_m_v0=two_m_v0, l=l, tau=_parse_tau(tau),
        output_format=output_format or OutputFormat.CSV, output_path=output,
    )

    start = time.time()
    try:
        spec = config.potential()
        p = require_transitive(compute_p(spec))
        if over == "k":
            tasks = [(float(x), config.tau.as_float(), spec.l, p) for x in sweep.values()]
        else:
            tasks = [(k, float(x), spec.l, p) for x in sweep.values()]
        records = SweepPool(workers).map(phase_row, tasks)
    except SaeError as e:
        _fail(e)
    logger.info(f"scan over {over}: {len(records)} points in {time.time() - start:.2f}s")

    header = [over, "delta_standard", "delta_sae", "delta_total", "re_S", "im_S"]
    extra = _header(config)
    extra.update({"over": over})
    if over == "k":
        extra["tau"] = config.tau.as_float()
    else:
        extra["k"] = k
    _emit_rows(config, header, records, f"phase shifts over {over}", extra)


@app.command("verify")
def verify(
    suite: List[str] = typer.Option(["all"], "--suite", help="Suite to run (repeatable): specfun, window, bound, pole, phase, unitarity, orthogonality, uniqueness, all"),
    workers: Optional[int] = typer.Option(None, "--workers", min=1, help="Worker processes (capped by SAE_RADIAL_THREADS)"),
    output_format: Optional[OutputFormat] = FORMAT,
    output: Optional[str] = OUTPUT,
):
    """
    Check closed forms against the numerical oracle; exit 0 only if every check passes

    Examples:
        saeradial verify --suite all
        saeradial verify --suite bound --suite pole --format json
    """
    from saeradial.verify import SUITES, run_suites

    unknown = [name for name in suite if name != "all" and name not in SUITES]
    if unknown:
        raise typer.BadParameter(
            f"unknown suite(s): {', '.join(unknown)}; choose from {', '.join(SUITES)} or all", param_hint="--suite"
        )
    config = _run_config(output_format=output_format or OutputFormat.TABLE, output_path=output)
    start = time.time()
    try:
        results = run_suites(suite, workers)
    except SaeError as e:
        _fail(e)
    logger.info(f"verify finished {len(results)} checks in {time.time() - start:.1f}s")

    header = ["suite", "case", "value", "tolerance", "passed"]
    records = [
        {"suite": row.suite, "case": row.case, "value": row.value, "tolerance": row.tolerance, "passed": row.passed}
        for row in results
    ]
    failed = sum(not row.passed for row in results)
    _emit_rows(config, header, records, "verification", {"suites": suite, "failed": failed})
    if failed:
        err_console.print(f"[red]{failed} of {len(results)} checks failed[/red]", soft_wrap=True)
        raise typer.Exit(1)


if __name__ == "__main__":
    app()
