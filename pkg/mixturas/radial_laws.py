"""
Leyes radiales en el dominio de atracción de Gumbel.
Supervivencia, densidad, función de escala w = f/F̄, cuantiles y
muestreo condicionado, todo evaluado en dominio logarítmico.
"""
import logging
import math
from abc import ABC, abstractmethod
from typing import Optional, Sequence

import numpy as np
import pandas as pd
from scipy.optimize import brentq
from scipy.special import gammainccinv, gammaln, log_ndtr, ndtri_exp

from utils.calculos import log_gamma_incompleta_superior
from utils.errores import ErrorNumerico, ParametrosInvalidosError
from utils.validaciones import exigir, validar_malla_creciente, validar_positivo

logger = logging.getLogger(__name__)


def _como_salida(valor, referencia):
    """Retorna float si la entrada era escalar, arreglo en otro caso."""
    if np.ndim(referencia) == 0:
        return float(np.asarray(valor).reshape(()))
    return np.asarray(valor, dtype=float)


class RadialLaw(ABC):
    """
    Ley radial F con extremo superior infinito en el dominio de Gumbel.

    La función de escala es la tasa de riesgo w = f/F̄ (elección de von Mises)
    y v(x) = x·w(x). Las instancias son inmutables después de construirse.

    Example:
        >>> ley = Chi(2)
        >>> round(ley.survival(2.0), 6)
        0.135335
        >>> ley.scaling_v(10.0)
        100.0
    """

    # Tolerancia de residuo en ln F̄ para aceptar la inversa por Newton
    TOLERANCIA_INVERSA = 1e-10

    @property
    @abstractmethod
    def label(self) -> str:
        """Identificador legible de la familia y sus parámetros."""

    @property
    @abstractmethod
    def weibull_index(self) -> Optional[float]:
        """Índice λ con w(x) = x^(λ−1)·L(x)."""

    @abstractmethod
    def log_survival(self, x) -> np.ndarray:
        """ln F̄(x) vectorizado, sin validación."""

    @abstractmethod
    def log_density(self, x) -> np.ndarray:
        """ln f(x) vectorizado, sin validación."""

    @abstractmethod
    def _inversa_log_supervivencia(self, nivel: np.ndarray) -> np.ndarray:
        """Resuelve ln F̄(r) = nivel (nivel ≤ 0) elemento a elemento."""

    def __repr__(self) -> str:
        return self.label

    # ------------------------------------------------------------------
    # Operaciones públicas
    # ------------------------------------------------------------------
    def survival(self, x):
        """
        Calcula la función de supervivencia F̄(x) = 1 − F(x)

        Args:
            x (float | array): Punto(s) de evaluación, x ≥ 0

        Returns:
            float | np.ndarray: F̄(x) ∈ (0, 1]

        Raises:
            ParametrosInvalidosError: Si algún x es negativo.
        """
        arreglo = self._validar_no_negativo(x)
        return _como_salida(np.exp(self.log_survival(arreglo)), x)

    def density(self, x):
        """Calcula la densidad f(x) para x ≥ 0."""
        arreglo = self._validar_no_negativo(x)
        return _como_salida(np.exp(self.log_density(arreglo)), x)

    def scaling_w(self, x):
        """
        Calcula la función de escala w(x) = f(x)/F̄(x)

        Args:
            x (float | array): Punto(s) positivos

        Returns:
            float | np.ndarray: w(x) > 0
        """
        arreglo = self._validar_positivo(x)
        return _como_salida(self._w(arreglo), x)

    def scaling_v(self, x):
        """
        Calcula la función auxiliar v(x) = x·w(x)

        Args:
            x (float | array): Punto(s) positivos

        Returns:
            float | np.ndarray: v(x) > 0

        Raises:
            ParametrosInvalidosError: Si algún x ≤ 0.
        """
        arreglo = self._validar_positivo(x)
        return _como_salida(arreglo * self._w(arreglo), x)

    def quantile(self, p):
        """
        Inversa generalizada F⁻¹(p) para p ∈ [0, 1)

        Args:
            p (float | array): Probabilidad(es)

        Returns:
            float | np.ndarray: Cuantil(es)
        """
        arreglo = np.asarray(p, dtype=float)
        if np.any((arreglo < 0) | (arreglo >= 1)) or np.any(~np.isfinite(arreglo)):
            raise ParametrosInvalidosError("El cuantil requiere p ∈ [0, 1)")
        return _como_salida(self._invertir(np.log1p(-arreglo)), p)

    def quantile_b(self, u):
        """
        Calcula b(u) = F⁻¹(1 − 1/u) sin pasar por 1 − 1/u

        Args:
            u (float | array): Períodos de retorno u > 1

        Returns:
            float | np.ndarray: b(u) con F̄(b(u)) = 1/u

        Raises:
            ParametrosInvalidosError: Si algún u ≤ 1.

        Example:
            >>> round(Chi(2).quantile_b(math.e ** 2), 12)
            2.0
        """
        arreglo = np.asarray(u, dtype=float)
        if np.any(~(arreglo > 1)) or np.any(~np.isfinite(arreglo)):
            raise ParametrosInvalidosError("quantile_b requiere u > 1 finito")
        return _como_salida(self._invertir(-np.log(arreglo)), u)

    def sample_conditional(self, threshold: float, u):
        """
        Muestrea R | R > threshold por inversión en dominio logarítmico

        Fórmula: r = F̄⁻¹(u · F̄(threshold))

        Args:
            threshold (float): Umbral, threshold ≥ 0
            u (float | array): Uniforme(s) en (0, 1]

        Returns:
            float | np.ndarray: r ≥ threshold, monótono en u (decreciente)

        Raises:
            ErrorNumerico: Si ln F̄(threshold) no es finito.
        """
        exigir(validar_positivo("threshold", threshold, estricto=False))
        arreglo = np.asarray(u, dtype=float)
        if np.any(~((arreglo > 0) & (arreglo <= 1))):
            raise ParametrosInvalidosError("sample_conditional requiere u ∈ (0, 1]")
        log_umbral = float(self.log_survival(np.asarray(float(threshold))))
        if not math.isfinite(log_umbral):
            raise ErrorNumerico(
                f"ln F̄({threshold}) no es representable para {self.label}; no se puede condicionar"
            )
        r = self._invertir(np.log(arreglo) + log_umbral)
        return _como_salida(np.maximum(r, float(threshold)), u)

    def mda_diagnostics(self, x_grid: Sequence[float], t_grid: Sequence[float]) -> pd.DataFrame:
        """
        Diagnóstico del dominio de Gumbel y de la propiedad autodespreciable

        Para cada (x, t): razón₁ = F̄(x + t/w(x))/F̄(x) frente a e^(−t) y
        razón₂ = w(x + t/w(x))/w(x) frente a 1.

        Args:
            x_grid (sequence): Umbrales crecientes
            t_grid (sequence): Desplazamientos reales

        Returns:
            pd.DataFrame: Columnas x, t, razon_supervivencia,
                desviacion_supervivencia, razon_escala, desviacion_escala
        """
        exigir(validar_malla_creciente("x_grid", list(x_grid)))
        if len(t_grid) == 0:
            raise ParametrosInvalidosError("t_grid no puede estar vacío")

        filas = []
        for t in t_grid:
            x = np.asarray(x_grid, dtype=float)
            w = self._w(x)
            desplazado = x + float(t) / w
            if np.any(desplazado <= 0):
                raise ParametrosInvalidosError(f"t={t} lleva x + t/w(x) fuera de (0, ∞)")
            razon1 = np.exp(self.log_survival(desplazado) - self.log_survival(x))
            razon2 = self._w(desplazado) / w
            for i in range(len(x)):
                filas.append(
                    {
                        "x": float(x[i]),
                        "t": float(t),
                        "razon_supervivencia": float(razon1[i]),
                        "desviacion_supervivencia": float(abs(razon1[i] - math.exp(-float(t)))),
                        "razon_escala": float(razon2[i]),
                        "desviacion_escala": float(abs(razon2[i] - 1.0)),
                    }
                )
        return pd.DataFrame(filas)

    # ------------------------------------------------------------------
    # Auxiliares
    # ------------------------------------------------------------------
    def _w(self, x: np.ndarray) -> np.ndarray:
        """Tasa de riesgo exp(ln f − ln F̄)."""
        return np.exp(self.log_density(x) - self.log_survival(x))

    def _invertir(self, nivel: np.ndarray) -> np.ndarray:
        nivel = np.asarray(nivel, dtype=float)
        if np.any(nivel > 0) or np.any(np.isnan(nivel)):
            raise ParametrosInvalidosError("El nivel logarítmico de supervivencia debe ser ≤ 0")
        return self._inversa_log_supervivencia(nivel)

    def _invertir_por_newton(self, nivel: np.ndarray, semilla: np.ndarray) -> np.ndarray:
        """
        Newton sobre ln F̄(r) = nivel con paso (ln F̄(r) − nivel)/w(r)

        ln F̄ es cóncava para las familias log-cóncavas, así que tras el primer
        paso las iteraciones quedan a la derecha de la raíz y decrecen.
        Los elementos que no alcanzan el residuo se refinan con brentq.
        """
        r = np.array(semilla, dtype=float, copy=True)
        activo = nivel < 0
        r = np.where(activo, np.maximum(r, 1e-12), 0.0)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            for _ in range(60):
                paso = np.where(activo, (self.log_survival(r) - nivel) / self._w(r), 0.0)
                paso = np.where(np.isfinite(paso), paso, 0.0)
                r = np.where(activo, np.maximum(r + paso, 0.5 * r), r)
                if np.all(np.abs(paso) <= 1e-15 * np.maximum(r, 1.0)):
                    break
            residuo = np.abs(self.log_survival(r) - nivel)
        malos = activo & ~(residuo <= self.TOLERANCIA_INVERSA * np.maximum(1.0, np.abs(nivel)))
        for indice in np.flatnonzero(malos):
            r.flat[indice] = self._raiz_escalar(float(nivel.flat[indice]), float(r.flat[indice]))
        return r

    def _raiz_escalar(self, nivel: float, semilla: float) -> float:
        """Bisección con corchete expandido sobre ln F̄(r) − nivel."""
        def objetivo(r: float) -> float:
            return float(self.log_survival(np.asarray(r))) - nivel

        lo, hi = 0.0, max(semilla, 1.0)
        while objetivo(hi) > 0:
            lo, hi = hi, 2.0 * hi
            if hi > 1e300:
                raise ErrorNumerico(f"No se encontró corchete para ln F̄ = {nivel} en {self.label}")
        return brentq(objetivo, lo, hi, xtol=1e-300, rtol=1e-13, maxiter=500)

    @staticmethod
    def _validar_no_negativo(x) -> np.ndarray:
        arreglo = np.asarray(x, dtype=float)
        if np.any(np.isnan(arreglo)) or np.any(arreglo < 0):
            raise ParametrosInvalidosError("La ley radial se evalúa en x ≥ 0")
        return arreglo

    @staticmethod
    def _validar_positivo(x) -> np.ndarray:
        arreglo = np.asarray(x, dtype=float)
        if np.any(np.isnan(arreglo)) or np.any(arreglo <= 0):
            raise ParametrosInvalidosError("La función de escala requiere x > 0")
        return arreglo


class WeibullTail(RadialLaw):
    """
    Cola tipo Weibull: F̄(x) = exp(−θ·x^τ) en x ≥ 0.

    Fórmula: w(x) = θ·τ·x^(τ−1), λ = τ
    """

    def __init__(self, theta: float, tau: float):
        exigir(validar_positivo("theta", theta), validar_positivo("tau", tau))
        self._theta = float(theta)
        self._tau = float(tau)

    @property
    def theta(self) -> float:
        return self._theta

    @property
    def tau(self) -> float:
        return self._tau

    @property
    def label(self) -> str:
        return f"WeibullTail(theta={self._theta:g}, tau={self._tau:g})"

    @property
    def weibull_index(self) -> float:
        return self._tau

    def log_survival(self, x) -> np.ndarray:
        return -self._theta * np.power(np.asarray(x, dtype=float), self._tau)

    def log_density(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore"):
            return (
                math.log(self._theta * self._tau)
                + (self._tau - 1.0) * np.log(x)
                - self._theta * np.power(x, self._tau)
            )

    def _w(self, x: np.ndarray) -> np.ndarray:
        return self._theta * self._tau * np.power(x, self._tau - 1.0)

    def _inversa_log_supervivencia(self, nivel: np.ndarray) -> np.ndarray:
        return np.power(-nivel / self._theta, 1.0 / self._tau)


class Chi(RadialLaw):
    """
    Norma de un vector gaussiano estándar de dimensión k.

    F̄ vía la gamma incompleta superior regularizada Q(k/2, x²/2); para k = 2
    F̄(x) = exp(−x²/2) y w(x) = x exactamente. λ = 2.
    """

    def __init__(self, k: int):
        if isinstance(k, bool) or not float(k).is_integer() or int(k) < 1:
            raise ParametrosInvalidosError(f"Chi requiere k entero ≥ 1 (se recibió {k})")
        self._k = int(k)
        self._log_constante = (self._k / 2.0 - 1.0) * math.log(2.0) + float(gammaln(self._k / 2.0))

    @property
    def k(self) -> int:
        return self._k

    @property
    def label(self) -> str:
        return f"Chi(k={self._k})"

    @property
    def weibull_index(self) -> float:
        return 2.0

    def log_survival(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self._k == 2:
            return -0.5 * x * x
        return log_gamma_incompleta_superior(self._k / 2.0, 0.5 * x * x)

    def log_density(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore"):
            return (self._k - 1.0) * np.log(x) - 0.5 * x * x - self._log_constante

    def _w(self, x: np.ndarray) -> np.ndarray:
        if self._k == 2:
            return np.asarray(x, dtype=float).copy()
        return super()._w(x)

    def _inversa_log_supervivencia(self, nivel: np.ndarray) -> np.ndarray:
        if self._k == 2:
            return np.sqrt(-2.0 * nivel)
        # Semilla: inversa de scipy mientras exp(nivel) sea representable
        representable = nivel > math.log(1e-300)
        with np.errstate(under="ignore"):
            z = gammainccinv(self._k / 2.0, np.exp(np.where(representable, nivel, 0.0)))
        semilla = np.where(representable, np.sqrt(2.0 * z), np.sqrt(-2.0 * nivel))
        return self._invertir_por_newton(nivel, semilla)


class LogNormal(RadialLaw):
    """
    Ley lognormal: ln R ~ N(μ, σ²).

    F̄(x) = Φ̄((ln x − μ)/σ) con log_ndtr para la cola; λ = 0.
    """

    def __init__(self, mu: float, sigma: float):
        exigir(validar_positivo("sigma", sigma))
        if not math.isfinite(float(mu)):
            raise ParametrosInvalidosError("mu debe ser finito")
        self._mu = float(mu)
        self._sigma = float(sigma)

    @property
    def mu(self) -> float:
        return self._mu

    @property
    def sigma(self) -> float:
        return self._sigma

    @property
    def label(self) -> str:
        return f"LogNormal(mu={self._mu:g}, sigma={self._sigma:g})"

    @property
    def weibull_index(self) -> float:
        return 0.0

    def _z(self, x) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return (np.log(np.asarray(x, dtype=float)) - self._mu) / self._sigma

    def log_survival(self, x) -> np.ndarray:
        return log_ndtr(-self._z(x))

    def log_density(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        z = self._z(x)
        with np.errstate(divide="ignore", invalid="ignore"):
            valor = -np.log(x) - math.log(self._sigma) - 0.5 * math.log(2.0 * math.pi) - 0.5 * z * z
        return np.where(x > 0, valor, -np.inf)

    def _inversa_log_supervivencia(self, nivel: np.ndarray) -> np.ndarray:
        z = -ndtri_exp(nivel)
        with np.errstate(over="ignore"):
            return np.exp(self._mu + self._sigma * z)


FAMILIAS_RADIALES = {
    "weibull": WeibullTail,
    "chi": Chi,
    "lognormal": LogNormal,
}


def crear_ley_radial(family: str, **parametros) -> RadialLaw:
    """
    Construye una ley radial desde su nombre de familia

    Args:
        family (str): "weibull", "chi" o "lognormal"
        **parametros: theta/tau, k o mu/sigma

    Returns:
        RadialLaw: Instancia validada

    Example:
        >>> crear_ley_radial("chi", k=2).label
        'Chi(k=2)'
    """
    clave = str(family).lower()
    if clave not in FAMILIAS_RADIALES:
        raise ParametrosInvalidosError(
            f"Familia radial desconocida '{family}'. Opciones: {', '.join(FAMILIAS_RADIALES)}"
        )
    try:
        return FAMILIAS_RADIALES[clave](**parametros)
    except TypeError as exc:
        raise ParametrosInvalidosError(f"Parámetros inválidos para '{family}': {exc}") from exc
