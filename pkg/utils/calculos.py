"""
Módulo de cálculos numéricos compartidos
Funciones especiales en dominio logarítmico, cuadratura por paneles
y bisección vectorizada para inversas monótonas
"""

import logging
import math
from functools import lru_cache
from typing import Callable, Iterable, Tuple

import numpy as np
from scipy import integrate
from scipy.special import gamma, gammaincc, gammaln, roots_legendre

from utils.errores import ErrorNumerico, ParametrosInvalidosError

logger = logging.getLogger(__name__)

# Por debajo de este valor gammaincc pierde dígitos o se anula
UMBRAL_SUBFLUJO = 1e-280
EPS_MAQUINA = np.finfo(float).eps


@lru_cache(maxsize=1024)
def funcion_gamma(x: float) -> float:
    """
    Calcula Γ(x) para x > 0
    Con caché LRU porque los mismos exponentes se repiten en cada fila

    La implementación de scipy (Cephes, tipo Lanczos) garantiza error
    relativo menor a 1e-12 en (0, 30].

    Args:
        x (float): Argumento positivo

    Returns:
        float: Valor de Γ(x)
    """
    if x <= 0:
        raise ParametrosInvalidosError(f"Γ(x) requiere x > 0, se recibió x={x}")
    return float(gamma(x))


def log_gamma(x: float) -> float:
    """
    Calcula ln Γ(x) para x > 0

    Args:
        x (float): Argumento positivo

    """
    if x <= 0:
        raise ParametrosInvalidosError(f"ln Γ(x) requiere x > 0, se recibió x={x}")
    return float(gammaln(x))


def _log_fraccion_continua_gamma(a: float, z: np.ndarray, max_iter: int = 500) -> np.ndarray:
    """
    Fracción continua de Legendre para Γ(a, z)/Γ(a) evaluada en logaritmos

    Fórmula: ln Q(a,z) = a·ln z − z − ln Γ(a) + ln(FC(a,z))
    """
    grande = 4.503599627370496e15
    grande_inv = 2.22044604925031308085e-16

    z = np.asarray(z, dtype=float)
    y = np.full_like(z, 1.0 - a)
    zz = z + y + 1.0
    c = np.zeros_like(z)
    pkm2 = np.ones_like(z)
    qkm2 = z.copy()
    pkm1 = z + 1.0
    qkm1 = zz * z
    ans = pkm1 / qkm1

    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        for _ in range(max_iter):
            c = c + 1.0
            y = y + 1.0
            zz = zz + 2.0
            yc = y * c
            pk = pkm1 * zz - pkm2 * yc
            qk = qkm1 * zz - qkm2 * yc
            valido = qk != 0
            r = np.where(valido, pk / np.where(valido, qk, 1.0), ans)
            t = np.where(valido, np.abs((ans - r) / r), 1.0)
            ans = r
            pkm2, pkm1 = pkm1, pk
            qkm2, qkm1 = qkm1, qk
            escalar = np.abs(pk) > grande
            pkm2 = np.where(escalar, pkm2 * grande_inv, pkm2)
            pkm1 = np.where(escalar, pkm1 * grande_inv, pkm1)
            qkm2 = np.where(escalar, qkm2 * grande_inv, qkm2)
            qkm1 = np.where(escalar, qkm1 * grande_inv, qkm1)
            if np.all(t <= EPS_MAQUINA):
                break

    return a * np.log(z) - z - gammaln(a) + np.log(ans)


def log_gamma_incompleta_superior(a: float, z) -> np.ndarray:
    """
    Calcula ln Q(a, z), la función gamma incompleta superior regularizada

    Usa gammaincc de scipy mientras el valor es representable y cambia
    a la fracción continua en logaritmos cuando Q cae bajo 1e-280.

    Fórmula: Q(a, z) = Γ(a, z) / Γ(a)

    Args:
        a (float): Parámetro de forma, a > 0
        z (array_like): Puntos de evaluación, z ≥ 0

    Returns:
        np.ndarray: ln Q(a, z)
    """
    if a <= 0:
        raise ParametrosInvalidosError(f"Q(a, z) requiere a > 0, se recibió a={a}")
    z = np.asarray(z, dtype=float)
    q = gammaincc(a, z)
    with np.errstate(divide="ignore"):
        resultado = np.log(q)
    cola = (q < UMBRAL_SUBFLUJO) & (z > a)
    if np.any(cola):
        resultado = np.where(cola, _log_fraccion_continua_gamma(a, np.where(cola, z, a + 1.0)), resultado)
    return resultado


def bordes_paneles(inicio: float, fin: float, quiebres: Iterable[float] = ()) -> np.ndarray:
    """
    Construye los bordes de paneles para la cuadratura adaptativa

    Paneles geométricos desde el inicio (0.25, 0.5, 1, 2, 4, ...) más los
    quiebres conocidos del integrando que caigan dentro del intervalo.

    Args:
        inicio (float): Extremo inferior
        fin (float): Extremo superior
        quiebres (iterable): Puntos de no derivabilidad del integrando

    Returns:
        np.ndarray: Bordes ordenados y sin duplicados
    """
    if fin <= inicio:
        raise ParametrosInvalidosError(f"Intervalo vacío [{inicio}, {fin}]")
    largo = fin - inicio
    pasos = [0.0]
    paso = 0.25
    while paso < largo:
        pasos.append(paso)
        paso *= 2.0
    bordes = [inicio + p for p in pasos] + [fin]
    bordes += [q for q in quiebres if inicio < q < fin]
    return np.unique(np.asarray(bordes, dtype=float))


def integrar_por_paneles(
    funcion: Callable[[float], float],
    bordes: np.ndarray,
    tol_rel: float = 1e-10,
    tol_abs: float = 0.0,
    limite: int = 200,
) -> Tuple[float, float]:
    """
    Integra una función escalar sumando cuadraturas adaptativas por panel

    Cada panel usa scipy.integrate.quad (Gauss-Kronrod adaptativo); la cota
    total es la suma de las cotas de error de cada panel.

    Args:
        funcion (callable): Integrando escalar
        bordes (np.ndarray): Bordes de los paneles, crecientes
        tol_rel (float): Tolerancia relativa por panel
        tol_abs (float): Tolerancia absoluta por panel
        limite (int): Máximo de subdivisiones por panel

    Returns:
        tuple: (valor, cota_de_error)
    """
    total = 0.0
    cota = 0.0
    for izquierdo, derecho in zip(bordes[:-1], bordes[1:]):
        try:
            valor, error = integrate.quad(
                funcion, izquierdo, derecho, epsabs=tol_abs, epsrel=tol_rel, limit=limite
            )
        except (ValueError, ZeroDivisionError, FloatingPointError) as exc:
            raise ErrorNumerico(
                f"Fallo de cuadratura en el panel [{izquierdo:.6g}, {derecho:.6g}]: {exc}",
                cota=total,
            ) from exc
        total += valor
        cota += error
    logger.debug("Cuadratura con %d paneles: valor=%.6e cota=%.3e", len(bordes) - 1, total, cota)
    return total, cota


def biseccion_vectorizada(
    funcion: Callable[[np.ndarray], np.ndarray],
    objetivo: np.ndarray,
    inferior: np.ndarray,
    superior: np.ndarray,
    creciente: bool,
    iteraciones: int = 60,
) -> np.ndarray:
    """
    Resuelve funcion(w) = objetivo elemento a elemento por bisección

    Requiere que la función sea monótona en [inferior, superior] y que el
    objetivo esté en su imagen; cada iteración evalúa la función sobre el
    arreglo completo.

    Args:
        funcion (callable): Función vectorizada y monótona
        objetivo (np.ndarray): Valores a invertir
        inferior (np.ndarray): Extremos izquierdos del corchete
        superior (np.ndarray): Extremos derechos del corchete
        creciente (bool): Sentido de monotonía
        iteraciones (int): Número de bisecciones

    Returns:
        np.ndarray: Raíces aproximadas con error ≤ (superior-inferior)/2^iteraciones
    """
    objetivo = np.asarray(objetivo, dtype=float)
    lo = np.broadcast_to(np.asarray(inferior, dtype=float), objetivo.shape).copy()
    hi = np.broadcast_to(np.asarray(superior, dtype=float), objetivo.shape).copy()
    for _ in range(iteraciones):
        medio = 0.5 * (lo + hi)
        valor = funcion(medio)
        por_encima = valor > objetivo if creciente else valor < objetivo
        hi = np.where(por_encima, medio, hi)
        lo = np.where(por_encima, lo, medio)
    return 0.5 * (lo + hi)


@lru_cache(maxsize=8)
def _nodos_gauss(orden: int) -> Tuple[np.ndarray, np.ndarray]:
    nodos, pesos = roots_legendre(orden)
    return nodos, pesos


def _gauss_intervalo(funcion: Callable[[np.ndarray], np.ndarray], a: float, b: float, orden: int) -> float:
    nodos, pesos = _nodos_gauss(orden)
    medio = 0.5 * (a + b)
    radio = 0.5 * (b - a)
    return float(radio * np.dot(pesos, funcion(medio + radio * nodos)))


def integrar_gauss_adaptativo(
    funcion: Callable[[np.ndarray], np.ndarray],
    bordes: np.ndarray,
    tol_rel: float = 1e-10,
    orden: int = 24,
    profundidad_max: int = 40,
) -> Tuple[float, float]:
    """
    Integra una función vectorizada por Gauss-Legendre con bisección adaptativa

    Cada panel se compara con la suma de sus dos mitades; si la diferencia
    supera la tolerancia se subdivide. La tolerancia absoluta por panel se
    fija con una primera pasada gruesa sobre todos los paneles.

    Args:
        funcion (callable): Integrando que recibe y devuelve arreglos
        bordes (np.ndarray): Bordes crecientes de los paneles
        tol_rel (float): Tolerancia relativa global
        orden (int): Nodos de Gauss-Legendre por intervalo
        profundidad_max (int): Máximo de bisecciones por panel

    Returns:
        tuple: (valor, cota_de_error)

    Raises:
        ErrorNumerico: Si algún panel agota la profundidad sin converger.
    """
    paneles = list(zip(bordes[:-1], bordes[1:]))
    gruesos = [_gauss_intervalo(funcion, a, b, orden) for a, b in paneles]
    total_grueso = abs(math.fsum(gruesos))
    tol_abs = tol_rel * total_grueso / max(len(paneles), 1)

    total = 0.0
    cota = 0.0
    evaluaciones = len(paneles)
    pendientes = [(a, b, g, 0) for (a, b), g in zip(paneles, gruesos)]
    while pendientes:
        a, b, entero, profundidad = pendientes.pop()
        medio = 0.5 * (a + b)
        izquierda = _gauss_intervalo(funcion, a, medio, orden)
        derecha = _gauss_intervalo(funcion, medio, b, orden)
        evaluaciones += 2
        mitades = izquierda + derecha
        diferencia = abs(mitades - entero)
        if not math.isfinite(mitades):
            raise ErrorNumerico(f"Integrando no finito en [{a:.6g}, {b:.6g}]", cota=total)
        if diferencia <= max(tol_rel * abs(mitades), tol_abs):
            total += mitades
            cota += diferencia
        elif profundidad >= profundidad_max:
            raise ErrorNumerico(
                f"Gauss-Legendre sin convergencia en [{a:.6g}, {b:.6g}] tras {profundidad} bisecciones",
                cota=total,
            )
        else:
            pendientes.append((a, medio, izquierda, profundidad + 1))
            pendientes.append((medio, b, derecha, profundidad + 1))
    logger.debug("Gauss adaptativo: %d evaluaciones de bloque, valor=%.6e cota=%.3e", evaluaciones, total, cota)
    return total, cota
