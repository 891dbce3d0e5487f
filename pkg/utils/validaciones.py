"""
Módulo de validación de parámetros de entrada
Cada validador retorna (es_valido, mensaje); exigir() convierte el
resultado en ParametrosInvalidosError
"""

import math
from typing import Sequence, Tuple

from utils.errores import ParametrosInvalidosError

Resultado = Tuple[bool, str]


def es_numero_finito(valor) -> bool:
    """Indica si el valor es un número real finito (no bool)."""
    if isinstance(valor, bool):
        return False
    try:
        return math.isfinite(float(valor))
    except (TypeError, ValueError):
        return False


def validar_positivo(nombre: str, valor, estricto: bool = True) -> Resultado:
    """
    Valida que un parámetro sea un real finito positivo

    Args:
        nombre (str): Nombre del parámetro para el mensaje
        valor: Valor a validar
        estricto (bool): Si True exige valor > 0, si False valor ≥ 0

    Returns:
        tuple: (es_valido, mensaje_error)
    """
    if not es_numero_finito(valor):
        return False, f"{nombre} debe ser un número real finito"
    if estricto and float(valor) <= 0:
        return False, f"{nombre} debe ser mayor a 0 (se recibió {valor})"
    if not estricto and float(valor) < 0:
        return False, f"{nombre} no puede ser negativo (se recibió {valor})"
    return True, ""


def validar_rango(
    nombre: str,
    valor,
    minimo: float,
    maximo: float,
    incluir_minimo: bool = False,
    incluir_maximo: bool = False,
) -> Resultado:
    """
    Valida que un parámetro esté en un intervalo

    Args:
        nombre (str): Nombre del parámetro
        valor: Valor a validar
        minimo (float): Extremo inferior
        maximo (float): Extremo superior
        incluir_minimo (bool): Intervalo cerrado a la izquierda
        incluir_maximo (bool): Intervalo cerrado a la derecha

    Returns:
        tuple: (es_valido, mensaje_error)
    """
    if not es_numero_finito(valor):
        return False, f"{nombre} debe ser un número real finito"
    v = float(valor)
    debajo = v < minimo if incluir_minimo else v <= minimo
    encima = v > maximo if incluir_maximo else v >= maximo
    if debajo or encima:
        izq = "[" if incluir_minimo else "("
        der = "]" if incluir_maximo else ")"
        return False, f"{nombre} debe estar en {izq}{minimo}, {maximo}{der} (se recibió {valor})"
    return True, ""


def validar_probabilidades(nombre: str, valores: Sequence[float], tolerancia: float = 1e-12) -> Resultado:
    """
    Valida un vector de probabilidades no negativas que suma 1

    Args:
        nombre (str): Nombre del vector
        valores (sequence): Probabilidades
        tolerancia (float): Holgura permitida en la suma

    Returns:
        tuple: (es_valido, mensaje_error)
    """
    if len(valores) == 0:
        return False, f"{nombre} no puede estar vacío"
    for v in valores:
        if not es_numero_finito(v) or float(v) < 0:
            return False, f"{nombre} contiene un valor inválido: {v}"
    suma = sum(float(v) for v in valores)
    if abs(suma - 1.0) > tolerancia:
        return False, f"{nombre} debe sumar 1 (suma={suma:.12g})"
    return True, ""


def validar_malla_creciente(nombre: str, valores: Sequence[float], minimo_puntos: int = 1) -> Resultado:
    """
    Valida una malla estrictamente creciente de reales positivos

    Args:
        nombre (str): Nombre de la malla
        valores (sequence): Puntos de la malla
        minimo_puntos (int): Cantidad mínima de puntos

    Returns:
        tuple: (es_valido, mensaje_error)
    """
    if len(valores) < minimo_puntos:
        return False, f"{nombre} requiere al menos {minimo_puntos} puntos (tiene {len(valores)})"
    for v in valores:
        ok, mensaje = validar_positivo(nombre, v)
        if not ok:
            return False, mensaje
    for previo, actual in zip(valores[:-1], valores[1:]):
        if float(actual) <= float(previo):
            return False, f"{nombre} debe ser estrictamente creciente ({previo} ≥ {actual})"
    return True, ""


def exigir(*resultados: Resultado) -> None:
    """
    Lanza ParametrosInvalidosError con el primer resultado inválido

    Example:
        >>> exigir(validar_positivo("x", 2.0), validar_rango("a", 0.5, 0, 1, incluir_maximo=True))
    """
    for es_valido, mensaje in resultados:
        if not es_valido:
            raise ParametrosInvalidosError(mensaje)
