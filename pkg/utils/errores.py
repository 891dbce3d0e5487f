"""
Jerarquía de excepciones compartida por utils y por la librería mixturas
Sin dependencias de numpy/scipy - solo tipos de error
"""
from typing import Optional


class ErrorCalculo(Exception):
    """Excepción base para errores de cálculo."""
    pass


class ParametrosInvalidosError(ErrorCalculo, ValueError):
    """Excepción cuando los parámetros violan las precondiciones de la operación."""
    pass


class ModeloNoSoportadoError(ErrorCalculo):
    """Excepción cuando la combinación (modelo, nivel a) no está tratada."""
    pass


class ErrorNumerico(ErrorCalculo):
    """
    Excepción cuando una cuadratura, raíz o simulación no alcanza la tolerancia.

    Args:
        mensaje (str): Descripción del fallo.
        cota (float, optional): Cota de error alcanzada o valor parcial.
    """

    def __init__(self, mensaje: str, cota: Optional[float] = None):
        super().__init__(mensaje)
        self.cota = cota

    def __str__(self) -> str:
        base = super().__str__()
        if self.cota is None:
            return base
        return f"{base} (cota alcanzada: {self.cota:.3e})"
