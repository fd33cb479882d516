"""
Comandos de la CLI mc-papr.
Cada comando carga un plan, ejecuta el experimento, escribe el CSV e imprime un sobre JSON.
"""

from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import click

from src.config import configure_logging, get_logger, get_settings
from src.config.loader import load_plan
from src.errors import SimulationError
from src.schemas import ErrorResponse, ExperimentKind, ExperimentPlan, RunResponse, Scheme
from src.services.experiments import run_ber, run_ccdf, run_psd, run_summary
from src.services.reporting import (
    default_output_path,
    write_ber_csv,
    write_ccdf_csv,
    write_psd_csv,
    write_summary_csv,
)

logger = get_logger("cli")
settings = get_settings()

# Constantes para textos de ayuda reutilizados
CONFIG_HELP = "Archivo 'clave = valor' con el plan del experimento"
SEED_HELP = "Semilla maestra (sustituye a la del archivo)"
TRIALS_HELP = "Ensayos por esquema (bloques de n_symbols tramas)"
OUT_HELP = "Ruta del CSV de salida (por defecto <output_dir>/<experimento>.csv)"
SCHEME_HELP = "Esquema a comparar; repetir la opción para varios"
MU_HELP = "Factor de compansión μ; repetir la opción para varios"
WORKERS_HELP = "Workers para repartir los ensayos"
LOG_LEVEL_HELP = "Nivel de logging"


def experiment_options(command):
    """Opciones comunes a todos los experimentos."""
    options = [
        click.option("--config", "config_path", type=click.Path(path_type=Path), default=None, help=CONFIG_HELP),
        click.option("--seed", type=click.IntRange(min=0), default=None, help=SEED_HELP),
        click.option("--trials", type=click.IntRange(min=1), default=None, help=TRIALS_HELP),
        click.option("--out", "output", type=click.Path(path_type=Path), default=None, help=OUT_HELP),
        click.option(
            "--scheme",
            "schemes",
            type=click.Choice([scheme.value for scheme in Scheme]),
            multiple=True,
            help=SCHEME_HELP,
        ),
        click.option("--mu", "mus", type=float, multiple=True, help=MU_HELP),
        click.option("--workers", type=click.IntRange(min=1), default=None, help=WORKERS_HELP),
        click.option(
            "--log-level",
            type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"], case_sensitive=False),
            default=None,
            help=LOG_LEVEL_HELP,
        ),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def build_overrides(
    seed: Optional[int],
    trials: Optional[int],
    output: Optional[Path],
    schemes: Tuple[str, ...],
    mus: Tuple[float, ...],
    workers: Optional[int],
) -> Dict[str, Any]:
    """
    Convertir las opciones de la CLI en overrides del plan (None = no sustituir).
    """
    return {
        "seed": seed,
        "trials": trials,
        "output": output,
        "schemes": list(schemes) or None,
        "mus": list(mus) or None,
        "workers": workers,
    }


def run_experiment(plan: ExperimentPlan) -> Tuple[Path, Dict[str, Any]]:
    """
    Ejecutar el experimento del plan y escribir su CSV.

    Args:
        plan: Plan validado

    Returns:
        Ruta escrita y resumen para el sobre JSON
    """
    path = default_output_path(plan.experiment.value, settings.output_dir, plan.output)

    if plan.experiment is ExperimentKind.CCDF:
        table = run_ccdf(plan)
        write_ccdf_csv(table, path)
        return path, {"columns": table.labels, "thresholds": int(table.thresholds_db.size)}

    if plan.experiment is ExperimentKind.PSD:
        estimates = run_psd(plan)
        write_psd_csv(estimates, path)
        return path, {"columns": [estimate.label for estimate in estimates], "bins": estimates[0].segment}

    if plan.experiment is ExperimentKind.BER:
        curve = run_ber(plan)
        write_ber_csv(curve, path)
        return path, {"columns": list(curve.columns), "snr_db": curve.snr_db.tolist(), "channel": plan.channel.value}

    rows = run_summary(plan)
    write_summary_csv(rows, path)
    return path, {"target_ccdf": plan.target_ccdf, "rows": [row.model_dump() for row in rows]}


def execute(
    experiment: ExperimentKind,
    config_path: Optional[Path],
    log_level: Optional[str],
    **options: Any,
) -> None:
    """
    Cargar el plan, ejecutar y reportar; los errores del simulador salen con su código.
    """
    configure_logging(level=log_level)
    ctx = click.get_current_context()
    try:
        plan = load_plan(experiment, config_path, build_overrides(**options))
        path, data = run_experiment(plan)
    except SimulationError as exc:
        logger.error(f"❌ {experiment.value}: {exc.message}")
        error = ErrorResponse(message=exc.message, error_type=type(exc).__name__, exit_code=exc.exit_code)
        click.echo(error.model_dump_json(), err=True)
        ctx.exit(exc.exit_code)

    response = RunResponse(
        message=f"Experimento {experiment.value} completado",
        data=data,
        output=str(path),
    )
    click.echo(response.model_dump_json())


# ===== COMANDOS =====

@click.group(help="Simulador MC-CDMA de reducción de PAPR con precodificación DCT/DWT y compansión ley μ.")
@click.version_option(settings.app_version, prog_name="mc-papr")
def cli():
    """Grupo raíz de comandos."""


@cli.command(help="CCDF del PAPR por esquema y μ. CSV: threshold_db,<esquema×μ>.")
@experiment_options
def ccdf(config_path, log_level, **options):
    execute(ExperimentKind.CCDF, config_path, log_level, **options)


@cli.command(help="PSD de Welch (Hann, segmento 256, solape 50%) por esquema. CSV: bin,<esquema×μ> en dB.")
@experiment_options
def psd(config_path, log_level, **options):
    execute(ExperimentKind.PSD, config_path, log_level, **options)


@cli.command(
    help=(
        "BER frente a SNR por esquema. La SNR se define por muestra sobre la señal "
        "transmitida (después del compander). CSV: snr_db,ebn0_db,<esquema×μ>,theory."
    )
)
@experiment_options
def ber(config_path, log_level, **options):
    execute(ExperimentKind.BER, config_path, log_level, **options)


@cli.command(help="Reducción de PAPR a la probabilidad CCDF objetivo, nivel fuera de banda y amplitud media.")
@experiment_options
def summary(config_path, log_level, **options):
    execute(ExperimentKind.SUMMARY, config_path, log_level, **options)
