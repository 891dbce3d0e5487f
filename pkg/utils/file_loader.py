"""
Módulo para carga de experimentos
Archivos TOML con la definición del experimento y valores por defecto
tomados del entorno (.env) con python-dotenv
"""
import hashlib
import json
import logging
import os
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional

from dotenv import load_dotenv

from utils.errores import ErrorCalculo

logger = logging.getLogger(__name__)


class ErrorCargaArchivo(ErrorCalculo):
    """Excepción base para errores de carga de archivos"""
    pass


class ArchivoNoEncontradoError(ErrorCargaArchivo):
    """Excepción cuando la ruta del experimento no existe"""
    pass


class FormatoNoSoportadoError(ErrorCargaArchivo):
    """Excepción cuando el archivo no es TOML válido"""
    pass


class SeccionFaltanteError(ErrorCargaArchivo):
    """Excepción cuando falta una tabla o clave obligatoria"""
    pass


class ErrorConfiguracion(ErrorCargaArchivo):
    """Excepción cuando un valor de configuración es inconsistente"""
    pass


@dataclass(frozen=True)
class ValoresEntorno:
    """Valores por defecto leídos de variables de entorno."""

    semilla: Optional[int]
    hilos: int
    muestras: int
    tol_rel: float
    nivel_log: str


def leer_entorno(ruta_env: Optional[str] = None) -> ValoresEntorno:
    """
    Carga el archivo .env (si existe) y lee los valores MIXTURAS_*

    Args:
        ruta_env (str, optional): Ruta explícita del archivo .env

    Returns:
        ValoresEntorno: Valores con los defaults incorporados

    Raises:
        ErrorConfiguracion: Si una variable no se puede convertir
    """
    load_dotenv(ruta_env)
    try:
        semilla_txt = os.getenv("MIXTURAS_SEMILLA")
        return ValoresEntorno(
            semilla=int(semilla_txt) if semilla_txt not in (None, "") else None,
            hilos=int(os.getenv("MIXTURAS_HILOS", "1")),
            muestras=int(os.getenv("MIXTURAS_MUESTRAS", "100000")),
            tol_rel=float(os.getenv("MIXTURAS_TOL_REL", "1e-8")),
            nivel_log=os.getenv("MIXTURAS_LOG_LEVEL", "WARNING").upper(),
        )
    except ValueError as exc:
        raise ErrorConfiguracion(f"Variable de entorno MIXTURAS_* inválida: {exc}") from exc


class ConfigLoader:
    """
    Clase para cargar y validar archivos de experimento TOML.

    Mantiene la última ruta cargada y calcula el hash canónico de la
    configuración para las cabeceras de los CSV.
    """

    SECCIONES_MODELO = ("angular", "functional")

    def __init__(self):
        """Inicializa el ConfigLoader."""
        self.ultima_ruta: Optional[Path] = None
        self._extensiones_validas = (".toml",)

    def cargar_archivo(self, ruta: str) -> Dict[str, Any]:
        """
        Lee y valida la estructura de un experimento.

        Args:
            ruta (str): Ruta al archivo .toml

        Returns:
            dict: Configuración parseada

        Raises:
            ArchivoNoEncontradoError: Si la ruta no existe
            FormatoNoSoportadoError: Si la extensión o el contenido no son TOML
            SeccionFaltanteError: Si falta `radial` o el modelo
        """
        camino = Path(ruta)
        if not camino.is_file():
            raise ArchivoNoEncontradoError(f"No existe el archivo de experimento: {ruta}")
        if camino.suffix.lower() not in self._extensiones_validas:
            raise FormatoNoSoportadoError(
                f"El formato de archivo no es soportado.\n"
                f"Formatos aceptados: {', '.join(self._extensiones_validas)}\n"
                f"Archivo seleccionado: {ruta}"
            )
        try:
            with camino.open("rb") as archivo:
                config = tomllib.load(archivo)
        except tomllib.TOMLDecodeError as exc:
            raise FormatoNoSoportadoError(f"TOML inválido en {ruta}: {exc}") from exc

        self.validar_estructura(config)
        self.ultima_ruta = camino
        logger.debug("Experimento cargado desde %s", camino)
        return config

    def validar_estructura(self, config: Dict[str, Any]) -> None:
        """Comprueba las tablas obligatorias del esquema."""
        if "radial" not in config or not isinstance(config["radial"], dict):
            raise SeccionFaltanteError("Falta la tabla [radial]")
        if "family" not in config["radial"]:
            raise SeccionFaltanteError("La tabla [radial] requiere la clave 'family'")
        presentes = [s for s in self.SECCIONES_MODELO if s in config]
        if len(presentes) != 1:
            raise SeccionFaltanteError(
                "Se requiere exactamente una tabla [angular] o [functional] "
                f"(encontradas: {presentes or 'ninguna'})"
            )
        modelo = config[presentes[0]]
        if not isinstance(modelo, dict) or "model" not in modelo:
            raise SeccionFaltanteError(f"La tabla [{presentes[0]}] requiere la clave 'model'")
        metodo = config.get("oracle", {}).get("method", "quadrature")
        if metodo not in ("quadrature", "monte_carlo"):
            raise ErrorConfiguracion(f"oracle.method debe ser 'quadrature' o 'monte_carlo' (se recibió {metodo})")

    def obtener_nombre_archivo(self) -> str:
        """Obtiene solo el nombre del archivo de la última ruta cargada."""
        if self.ultima_ruta:
            return self.ultima_ruta.name
        return ""


def hash_configuracion(config: Dict[str, Any]) -> str:
    """
    SHA-256 del volcado JSON canónico (claves ordenadas, sin espacios)

    Example:
        >>> hash_configuracion({"b": 1, "a": 2}) == hash_configuracion({"a": 2, "b": 1})
        True
    """
    canonico = json.dumps(config, sort_keys=True, separators=(",", ":"), ensure_ascii=True, default=str)
    return hashlib.sha256(canonico.encode("utf-8")).hexdigest()


def resolver(bandera, valor_toml, valor_entorno, por_defecto=None):
    """Precedencia: bandera CLI > TOML > entorno > valor por defecto."""
    for candidato in (bandera, valor_toml, valor_entorno):
        if candidato is not None:
            return candidato
    return por_defecto
