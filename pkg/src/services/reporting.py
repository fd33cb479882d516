"""
Escritura de resultados en CSV.
Una fila de cabecera autodescriptiva y valores con 6 cifras significativas.
"""

import csv
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np

from src.config import get_logger
from src.errors import OutputError
from src.schemas import BerCurve, CcdfTable, PaprReduction, PsdEstimate

logger = get_logger("reporting")

SUMMARY_FIELDS = ["label", "papr_db", "reduction_db", "extra_reduction_db", "out_of_band_db", "mean_amplitude"]


def format_value(value: Any) -> str:
    """Formatear un número con 6 cifras significativas (vacío para None)."""
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.6g}"
    return str(value)


def save_rows_csv(path: Union[str, Path], fieldnames: Sequence[str], rows: List[Dict[str, Any]]) -> Path:
    """
    Escribir filas como CSV, creando el directorio si hace falta.

    Args:
        path: Ruta del archivo
        fieldnames: Columnas en orden
        rows: Filas como diccionarios

    Returns:
        Ruta escrita

    Raises:
        OutputError: Si no se puede escribir el archivo
    """
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as handle:
            writer = csv.DictWriter(handle, fieldnames=list(fieldnames), lineterminator="\n")
            writer.writeheader()
            for row in rows:
                writer.writerow({key: format_value(value) for key, value in row.items()})
    except OSError as exc:
        raise OutputError(f"No se pudo escribir {path}: {exc.strerror or exc}") from exc
    logger.info(f"💾 {len(rows)} filas escritas en {path}")
    return path


# ===== TABLAS POR EXPERIMENTO =====

def ccdf_rows(table: CcdfTable) -> List[Dict[str, Any]]:
    """Filas threshold_db + probabilidad por columna."""
    return [
        {"threshold_db": threshold, **{label: probs[i] for label, probs in table.columns.items()}}
        for i, threshold in enumerate(table.thresholds_db)
    ]


def psd_rows(estimates: Sequence[PsdEstimate]) -> List[Dict[str, Any]]:
    """Filas bin + densidad en dB por esquema (bins en orden FFT)."""
    if not estimates:
        return []
    return [
        {"bin": index, **{estimate.label: estimate.density_db[index] for estimate in estimates}}
        for index in range(estimates[0].segment)
    ]


def ber_rows(curve: BerCurve) -> List[Dict[str, Any]]:
    """Filas snr_db, ebn0_db, BER por esquema y curva teórica."""
    rows = []
    for i, snr in enumerate(curve.snr_db):
        row = {"snr_db": snr, "ebn0_db": curve.ebn0_db[i]}
        row.update({label: values[i] for label, values in curve.columns.items()})
        if curve.theory is not None:
            row["theory"] = curve.theory[i]
        rows.append(row)
    return rows


def write_ccdf_csv(table: CcdfTable, path: Union[str, Path]) -> Path:
    """Escribir la tabla CCDF: threshold_db,<columnas>."""
    return save_rows_csv(path, ["threshold_db", *table.labels], ccdf_rows(table))


def write_psd_csv(estimates: Sequence[PsdEstimate], path: Union[str, Path]) -> Path:
    """Escribir las PSD: bin,<columnas>."""
    return save_rows_csv(path, ["bin", *[estimate.label for estimate in estimates]], psd_rows(estimates))


def write_ber_csv(curve: BerCurve, path: Union[str, Path]) -> Path:
    """Escribir la curva BER: snr_db,ebn0_db,<columnas>,theory."""
    fields = ["snr_db", "ebn0_db", *curve.columns]
    if curve.theory is not None:
        fields.append("theory")
    return save_rows_csv(path, fields, ber_rows(curve))


def write_summary_csv(rows: Sequence[PaprReduction], path: Union[str, Path]) -> Path:
    """Escribir el resumen de reducción de PAPR."""
    return save_rows_csv(path, SUMMARY_FIELDS, [row.model_dump() for row in rows])


def default_output_path(experiment: str, output_dir: Path, output: Optional[Path] = None) -> Path:
    """Ruta de salida: la indicada o <output_dir>/<experimento>.csv."""
    return Path(output) if output is not None else Path(output_dir) / f"{experiment}.csv"
