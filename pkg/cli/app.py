from contextlib import contextmanager
from pathlib import Path
from typing import Annotated, Any, Dict, Iterator, List, Optional, Tuple

import typer
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from cli.config import ExperimentConfig, load_config, parse_float_list, parse_int_list, parse_sigma
from cli.reports import provenance, read_basis_dump, read_json, write_basis_dump, write_json, write_report
from diagnostics.checks import level_summary
from diagnostics.fits import RateReport
from diagnostics.levels import SweepLevel, calibrate_K, collar_width
from diagnostics.operator import run_check
from diagnostics.quadrature import QuadratureGrid
from geometry.extension import extend_pointset
from geometry.io import read_pointset, write_pointset
from geometry.points import PointSet, generate_quasi_uniform, geometry_stats
from interpolation.lagrange import BasisVariant, family_from_functions
from localization.operator import get_basis
from utils.dttm import timed
from utils.errors import FootprintError, LagrangeKitError, NumericalError
from utils.log import logger

app = typer.Typer(help="Full, truncated and local Lagrange bases with decay, stability and Bernstein diagnostics.")
console = Console()

EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_ACCEPTANCE = 4

ConfigOption = Annotated[Optional[Path], typer.Option("--config", help="JSON experiment config")]
OutOption = Annotated[Optional[Path], typer.Option("--out", help="Output directory")]
SeedOption = Annotated[Optional[int], typer.Option("--seed", help="Run seed")]
ThreadsOption = Annotated[Optional[int], typer.Option("--threads", help="Worker threads (env LAGRANGEKIT_THREADS)")]
VariantOption = Annotated[Optional[BasisVariant], typer.Option("--variant", help="Basis variant")]
KOption = Annotated[Optional[float], typer.Option("--K", help="Footprint parameter (calibrated when unset)")]
KListOption = Annotated[Optional[str], typer.Option("--K-list", help="Comma separated K values of the K sweeps")]
SigmaOption = Annotated[Optional[str], typer.Option("--sigma", help="Comma separated orders, e.g. 0,1,m")]
NOption = Annotated[Optional[str], typer.Option("--n", help="Comma separated point counts")]
ChecksOption = Annotated[Optional[str], typer.Option("--checks", help="Comma separated diagnostic checks")]


@contextmanager
def exit_codes() -> Iterator[None]:
    """Map library failures onto the documented exit codes."""
    try:
        yield
    except ValidationError as e:
        console.print(f"[red]Invalid config:[/red] {e}")
        raise typer.Exit(EXIT_CONFIG)
    except FootprintError as e:
        console.print(f"[red]Footprint failures at centers {e.indices}[/red]: {e}")
        raise typer.Exit(EXIT_NUMERICAL)
    except NumericalError as e:
        console.print(f"[red]Numerical failure:[/red] {e}")
        raise typer.Exit(EXIT_NUMERICAL)
    except (LagrangeKitError, ValueError, OSError) as e:
        console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(EXIT_CONFIG)


def resolve(
    config: Optional[Path],
    out: Optional[Path] = None,
    seed: Optional[int] = None,
    threads: Optional[int] = None,
    variant: Optional[BasisVariant] = None,
    K: Optional[float] = None,
    sigma: Optional[str] = None,
    n: Optional[str] = None,
    checks: Optional[str] = None,
    K_list: Optional[str] = None,
) -> ExperimentConfig:
    overrides: Dict[str, Any] = {
        "out": str(out) if out is not None else None,
        "seed": seed,
        "threads": threads,
        "variant": variant,
        "K": K,
        "K_list": parse_float_list(K_list) if K_list else None,
        "sigma": parse_sigma(sigma) if sigma else None,
        "n_list": parse_int_list(n) if n else None,
        "checks": [c.strip() for c in checks.split(",")] if checks else None,
    }
    return load_config(config, overrides)


def level_dir(cfg: ExperimentConfig, n: int) -> Path:
    return Path(cfg.out) / f"n{n}"


def resolve_K(cfg: ExperimentConfig) -> Tuple[float, Dict[str, Any]]:
    """The configured K, or one calibrated on the coarsest level when the config leaves K unset."""
    if cfg.K is not None:
        return cfg.K, {"K": cfg.K, "source": "config"}
    K, fit = calibrate_K(cfg.spec, cfg.region, min(cfg.n_list), cfg.seed, cfg.tau)
    return K, {"K": K, "source": "calibrated", "nu_hat": fit.nu_hat, "r_squared": fit.r_squared, "tau": cfg.tau}


def gen_points(cfg: ExperimentConfig) -> None:
    Omega = cfg.region
    K, footprint_info = resolve_K(cfg)
    for n in cfg.n_list:
        directory = level_dir(cfg, n)
        Xi = generate_quasi_uniform(Omega, n, cfg.seed)
        xi_stats = geometry_stats(Xi, Omega)
        collar = collar_width(K, xi_stats.h) if cfg.extend else 0.0
        X = extend_pointset(Xi, Omega, collar, h=xi_stats.h) if cfg.extend else Xi
        x_stats = geometry_stats(X, X.domain) if cfg.extend else xi_stats
        directory.mkdir(parents=True, exist_ok=True)
        write_pointset(Xi, directory / "xi.csv", provenance(cfg))
        write_pointset(X, directory / "x.csv", provenance(cfg))
        write_json(
            directory / "stats.json",
            {
                "provenance": provenance(cfg),
                "n": n,
                "collar_width": collar,
                "footprint": footprint_info,
                "xi": xi_stats.model_dump(),
                "x": {**x_stats.model_dump(), "size": len(X)},
            },
        )
        logger.info(f"n={n}: h={xi_stats.h:.4g}, q={xi_stats.q:.4g}, rho={xi_stats.rho:.3g}, |X|={len(X)}")


def load_level_points(cfg: ExperimentConfig, n: int) -> Tuple[Dict[str, Any], PointSet, PointSet]:
    directory = level_dir(cfg, n)
    stats = read_json(directory / "stats.json")
    Omega = cfg.region
    Xi = read_pointset(directory / "xi.csv", Omega)
    domain = Omega.dilated(stats["collar_width"]) if stats["collar_width"] > 0 else Omega
    X = read_pointset(directory / "x.csv", domain)
    return stats, Xi, X


def build_basis(cfg: ExperimentConfig) -> None:
    spec = cfg.spec
    for n in cfg.n_list:
        stats, Xi, X = load_level_points(cfg, n)
        h = stats["xi"]["h"]
        K = cfg.K if cfg.K is not None else float(stats["footprint"]["K"])
        timing: Dict[str, float] = {}
        with timed(timing, f"{cfg.variant.value}_basis"):
            functions = get_basis(cfg.variant, spec, X, range(len(Xi)), K=K, h=h, threads=cfg.threads)
        extra = {"variant": cfg.variant.value, "K": K, "h": h, "n": n}
        write_basis_dump(level_dir(cfg, n) / "basis.json", functions, cfg, extra)
        write_json(level_dir(cfg, n) / "timing.json", {"provenance": provenance(cfg), "n": n, "seconds": timing})
        logger.info(f"n={n}: wrote {len(functions)} {cfg.variant.value} Lagrange functions")


def load_level(cfg: ExperimentConfig, n: int) -> SweepLevel:
    stats, Xi, X = load_level_points(cfg, n)
    spec = cfg.spec
    dump = read_json(level_dir(cfg, n) / "basis.json")
    functions = read_basis_dump(level_dir(cfg, n) / "basis.json", spec, X.points)
    h = stats["xi"]["h"]
    return SweepLevel(
        spec=spec,
        Omega=cfg.region,
        Xi=Xi,
        X=X,
        h=h,
        q=stats["xi"]["q"],
        variant=BasisVariant(dump["variant"]),
        K=float(dump["K"]),
        functions=functions,
        family=family_from_functions(functions, X.points),
        grid=QuadratureGrid.for_resolution(cfg.region, h),
    )


def diagnose(cfg: ExperimentConfig) -> List[RateReport]:
    spec = cfg.spec
    levels = [load_level(cfg, n) for n in cfg.n_list]
    reports_dir = Path(cfg.out) / "reports"
    K = cfg.K if cfg.K is not None else levels[0].K
    reports: List[RateReport] = []
    for check in cfg.checks:
        for report in run_check(
            check.value,
            spec,
            cfg.region,
            cfg.n_list,
            K,
            cfg.K_list,
            cfg.sigma,
            cfg.trials,
            cfg.seed,
            cfg.variant,
            cfg.threads,
            levels=levels,
        ):
            report.details.setdefault("K", K)
            write_report(reports_dir, report, cfg)
            reports.append(report)
    write_json(reports_dir / "levels.json", {"provenance": provenance(cfg), "levels": level_summary(levels)})
    print_reports(reports)
    return reports


def print_reports(reports: List[RateReport]) -> None:
    table = Table(title="Diagnostics")
    for column in ("check", "sweep", "slope", "target", "R^2", "pass"):
        table.add_column(column)
    for r in reports:
        target = "-" if r.target is None else f"{r.target:.3g} ± {r.tolerance:g}"
        verdict = "[green]yes[/green]" if r.passed else "[red]no[/red]"
        table.add_row(r.name, r.sweep_variable, f"{r.slope:.4g}", target, f"{r.r_squared:.3f}", verdict)
    console.print(table)


def finish(reports: List[RateReport]) -> None:
    failed = [r.name for r in reports if not r.passed]
    if failed:
        console.print(f"[red]Acceptance failed:[/red] {', '.join(failed)}")
        raise typer.Exit(EXIT_ACCEPTANCE)


@app.command("gen-points")
def cmd_gen_points(
    config: ConfigOption = None, out: OutOption = None, seed: SeedOption = None, K: KOption = None, n: NOption = None
) -> None:
    """Generate Ξ in Ω, its collar extension and their statistics."""
    with exit_codes():
        gen_points(resolve(config, out=out, seed=seed, K=K, n=n))


@app.command("build-basis")
def cmd_build_basis(
    config: ConfigOption = None,
    out: OutOption = None,
    seed: SeedOption = None,
    threads: ThreadsOption = None,
    variant: VariantOption = None,
    K: KOption = None,
    n: NOption = None,
) -> None:
    """Build the full, truncated or local basis of every generated level."""
    with exit_codes():
        build_basis(resolve(config, out=out, seed=seed, threads=threads, variant=variant, K=K, n=n))


@app.command("diagnose")
def cmd_diagnose(
    config: ConfigOption = None,
    out: OutOption = None,
    seed: SeedOption = None,
    threads: ThreadsOption = None,
    variant: VariantOption = None,
    K: KOption = None,
    sigma: SigmaOption = None,
    n: NOption = None,
    checks: ChecksOption = None,
    K_list: KListOption = None,
) -> None:
    """Run the requested diagnostic checks on the built levels."""
    with exit_codes():
        cfg = resolve(config, out, seed, threads, variant, K, sigma, n, checks, K_list)
        reports = diagnose(cfg)
    finish(reports)


@app.command("sweep")
def cmd_sweep(
    config: ConfigOption = None,
    out: OutOption = None,
    seed: SeedOption = None,
    threads: ThreadsOption = None,
    variant: VariantOption = None,
    K: KOption = None,
    sigma: SigmaOption = None,
    n: NOption = None,
    checks: ChecksOption = None,
    K_list: KListOption = None,
) -> None:
    """gen-points, build-basis and diagnose in one run."""
    with exit_codes():
        cfg = resolve(config, out, seed, threads, variant, K, sigma, n, checks, K_list)
        write_json(Path(cfg.out) / "config.json", provenance(cfg))
        gen_points(cfg)
        build_basis(cfg)
        reports = diagnose(cfg)
    finish(reports)


if __name__ == "__main__":
    app()
