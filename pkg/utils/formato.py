"""
Módulo para formatear y presentar resultados
Tablas CSV reproducibles (línea de comentario + pandas) y resúmenes de texto
"""
import io
import math
from typing import Dict, Iterable, Optional, TextIO, Tuple

import pandas as pd


def log10_seguro(valor: float) -> float:
    """
    log10 que devuelve -inf para cero y NaN para valores no finitos o negativos

    Args:
        valor (float): Probabilidad o cantidad positiva

    Returns:
        float: log10(valor)
    """
    if valor is None or not math.isfinite(valor) or valor < 0:
        return math.nan
    if valor == 0:
        return -math.inf
    return math.log10(valor)


def formatear_componentes(componentes: Dict[str, float]) -> str:
    """
    Serializa los factores logarítmicos de una estimación en una sola celda

    Example:
        >>> formatear_componentes({"J": 0.0, "log_F": -50.0})
        'J=0;log_F=-50'
    """
    return ";".join(f"{nombre}={valor:.10g}" for nombre, valor in componentes.items())


def linea_cabecera(hash_config: str, semilla: Optional[int]) -> str:
    """Línea de comentario que encabeza cada CSV de salida."""
    semilla_txt = "none" if semilla is None else str(int(semilla))
    return f"# config_sha256={hash_config} seed={semilla_txt}\n"


def escribir_csv(
    tabla: pd.DataFrame,
    destino: TextIO,
    hash_config: str,
    semilla: Optional[int],
) -> None:
    """
    Escribe la tabla con una línea de comentario de reproducibilidad

    Los flotantes se escriben con repr de 17 dígitos para que la misma
    configuración y semilla produzcan bytes idénticos.

    Args:
        tabla (pd.DataFrame): Resultados
        destino (TextIO): Archivo o stdout
        hash_config (str): SHA-256 de la configuración canónica
        semilla (int, optional): Semilla usada
    """
    destino.write(linea_cabecera(hash_config, semilla))
    tabla.to_csv(destino, index=False, lineterminator="\n", float_format="%.17g")


def tabla_a_texto_csv(tabla: pd.DataFrame, hash_config: str, semilla: Optional[int]) -> str:
    """Versión en memoria de escribir_csv, útil para pruebas de reproducibilidad."""
    buffer = io.StringIO()
    escribir_csv(tabla, buffer, hash_config, semilla)
    return buffer.getvalue()


def generar_resumen_verificacion(resultados: Iterable[Tuple[str, bool, str]]) -> str:
    """
    Genera el texto del reporte de verificación

    Args:
        resultados (iterable): Tuplas (nombre, ok, detalle)

    Returns:
        str: Reporte con una línea por verificación y el total al final
    """
    lineas = ["VERIFICACIÓN NUMÉRICA", "─" * 58]
    total = 0
    aprobadas = 0
    for nombre, ok, detalle in resultados:
        total += 1
        aprobadas += int(ok)
        marca = "OK " if ok else "FALLO"
        lineas.append(f"   [{marca}] {nombre}: {detalle}")
    lineas.append("─" * 58)
    lineas.append(f"   {aprobadas}/{total} verificaciones aprobadas")
    return "\n".join(lineas) + "\n"
