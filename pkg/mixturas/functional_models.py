"""
Modelos de dependencia funcional (modelo B)

(U₁, U₂) = (I₁·W, ρ·I₁·W + I₂·z*(W)), con z(w) = ρw + z*(w), signos
(I₁, I₂) ∈ {−1, +1}² y W ∈ (0, 1) con ley dada. Incluye la dirección
crítica α, la constante c de pendiente inversa y las probabilidades
condicionales exactas dado R = r.
"""
import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate
from scipy.optimize import brentq, minimize_scalar
from scipy.stats import beta as ley_beta

from utils.calculos import biseccion_vectorizada
from utils.errores import ErrorNumerico, ModeloNoSoportadoError, ParametrosInvalidosError
from utils.validaciones import exigir, validar_positivo, validar_probabilidades, validar_rango

logger = logging.getLogger(__name__)

# Orden de sign_probs: (I₁, I₂) = (−,−), (−,+), (+,−), (+,+)
RAMAS_SIGNO: Tuple[Tuple[int, int], ...] = ((-1, -1), (-1, 1), (1, -1), (1, 1))
PUNTOS_MALLA = 4001


# ----------------------------------------------------------------------
# Leyes de W
# ----------------------------------------------------------------------
class LeyW(ABC):
    """Ley de W en (0, 1) con cdf, supervivencia, densidad y cuantil."""

    @property
    @abstractmethod
    def label(self) -> str:
        """Identificador legible."""

    @abstractmethod
    def cdf(self, w) -> np.ndarray:
        """P(W ≤ w)."""

    @abstractmethod
    def sf(self, w) -> np.ndarray:
        """P(W > w)."""

    @abstractmethod
    def pdf(self, w) -> np.ndarray:
        """Densidad h(w)."""

    @abstractmethod
    def ppf(self, p) -> np.ndarray:
        """Cuantil de W."""

    def exponente_local(self, punto: float) -> float:
        """γ_a de P(W ∈ punto + (K₁s, K₂s]) ~ s^γ_a·L; 1 con densidad continua."""
        return 1.0

    def concentracion(self, punto: float, k1: float, k2: float) -> Optional[float]:
        """Constante L_{K₁,K₂}; None si la densidad no es finita y positiva en el punto."""
        h = float(self.pdf(punto))
        if not (math.isfinite(h) and h > 0):
            return None
        return (k2 - k1) * h

    def __repr__(self) -> str:
        return self.label


class LeyPotenciaBeta(LeyW):
    """
    W = B^(1/k) con B ~ Beta(α, β)

    Densidad h(w) = k·w^(k−1)·g(w^k), g la densidad Beta. Con k = 2 y
    α = β = 1/2 se obtiene h(w) = 2/(π√(1 − w²)); con k = α = β = 1, W uniforme.
    """

    def __init__(self, k: float, alpha: float, beta: float):
        exigir(validar_positivo("k", k), validar_positivo("alpha", alpha), validar_positivo("beta", beta))
        self._k = float(k)
        self._alpha = float(alpha)
        self._beta = float(beta)
        self._ley = ley_beta(self._alpha, self._beta)

    @property
    def label(self) -> str:
        return f"PotenciaBeta(k={self._k:g}, alpha={self._alpha:g}, beta={self._beta:g})"

    @property
    def parametros(self) -> Tuple[float, float, float]:
        return self._k, self._alpha, self._beta

    def cdf(self, w):
        w = np.clip(np.asarray(w, dtype=float), 0.0, 1.0)
        return self._ley.cdf(np.power(w, self._k))

    def sf(self, w):
        w = np.clip(np.asarray(w, dtype=float), 0.0, 1.0)
        return self._ley.sf(np.power(w, self._k))

    def pdf(self, w):
        w = np.asarray(w, dtype=float)
        dentro = (w > 0) & (w < 1)
        wc = np.where(dentro, w, 0.5)
        valor = self._k * np.power(wc, self._k - 1.0) * self._ley.pdf(np.power(wc, self._k))
        return np.where(dentro, valor, 0.0)

    def ppf(self, p):
        return np.power(self._ley.ppf(np.asarray(p, dtype=float)), 1.0 / self._k)


class LeyPicoPotencia(LeyW):
    """
    Ley sintética con densidad C·|w − w₀|^(γ_a − 1) en (0, 1)

    C = γ_a / (w₀^γ_a + (1 − w₀)^γ_a). Alrededor de w₀ la masa escala como
    s^γ_a: P(W ∈ w₀ + (K₁s, K₂s]) = C(|K₁|^γ_a + K₂^γ_a)/γ_a · s^γ_a.
    """

    def __init__(self, w0: float, gamma_a: float):
        exigir(validar_rango("w0", w0, 0.0, 1.0), validar_positivo("gamma_a", gamma_a))
        self._w0 = float(w0)
        self._g = float(gamma_a)
        self._c = self._g / (self._w0 ** self._g + (1.0 - self._w0) ** self._g)

    @property
    def label(self) -> str:
        return f"PicoPotencia(w0={self._w0:.12g}, gamma_a={self._g:g})"

    @property
    def w0(self) -> float:
        return self._w0

    @property
    def gamma_a(self) -> float:
        return self._g

    def cdf(self, w):
        w = np.clip(np.asarray(w, dtype=float), 0.0, 1.0)
        factor = self._c / self._g
        izquierda = factor * (self._w0 ** self._g - np.power(np.maximum(self._w0 - w, 0.0), self._g))
        derecha = factor * (self._w0 ** self._g + np.power(np.maximum(w - self._w0, 0.0), self._g))
        return np.where(w < self._w0, izquierda, derecha)

    def sf(self, w):
        return 1.0 - self.cdf(w)

    def pdf(self, w):
        w = np.asarray(w, dtype=float)
        dentro = (w > 0) & (w < 1)
        with np.errstate(divide="ignore"):
            valor = self._c * np.power(np.abs(w - self._w0), self._g - 1.0)
        return np.where(dentro, valor, 0.0)

    def ppf(self, p):
        p = np.asarray(p, dtype=float)
        masa_izquierda = self._c * self._w0 ** self._g / self._g
        escala = p * self._g / self._c
        izquierda = self._w0 - np.power(np.maximum(self._w0 ** self._g - escala, 0.0), 1.0 / self._g)
        derecha = self._w0 + np.power(np.maximum(escala - self._w0 ** self._g, 0.0), 1.0 / self._g)
        return np.where(p < masa_izquierda, izquierda, derecha)

    def exponente_local(self, punto: float) -> float:
        return self._g if abs(punto - self._w0) < 1e-9 else 1.0

    def concentracion(self, punto, k1, k2):
        if abs(punto - self._w0) < 1e-9:
            return self._c * (abs(k1) ** self._g + abs(k2) ** self._g) / self._g
        return super().concentracion(punto, k1, k2)


# ----------------------------------------------------------------------
# Datos críticos
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class CriticalData:
    """
    Dirección crítica y constantes locales para un nivel a

    Attributes:
        alpha (float): α > 1 con z(1/α) = a/α
        c (float): −1/z'(1/α), pendiente inversa local
        a (float): Nivel en (0, 1]
        K1 (float): −1/α
        K2 (float): c·a/α
        epsilon (float): Semiancho de la ventana monótona V_ε
        c_izq (float): Estimación unilateral izquierda de c
        c_der (float): Estimación unilateral derecha de c
        gamma_a (float): Exponente local de W en 1/α
    """

    alpha: float
    c: float
    a: float
    K1: float
    K2: float
    epsilon: float
    c_izq: float
    c_der: float
    gamma_a: float = 1.0


@dataclass(frozen=True)
class _Rama:
    """Función de signo g(w) con su máximo, para conjuntos {g > t}."""

    i1: int
    i2: int
    prob: float
    funcion: Callable[[np.ndarray], np.ndarray]
    moda: float
    maximo: float


class FunctionalModelB:
    """
    Modelo de dependencia funcional con z*(·), ρ, ley de W y signos.

    Las cuatro funciones de signo g(w) = I₂·z*(w) + ρ·I₁·w deben ser
    cuasicóncavas en su parte positiva, de modo que cada evento
    {g(W) > t}, t > 0, sea un intervalo de W; se verifica en una malla al
    construir el modelo.

    Args:
        rho (float): ρ ∈ (−1, 1)
        zstar (callable): z* vectorizada en [0, 1] con valores en [0, 1]
        ley_w (LeyW): Ley de W
        sign_probs (sequence): [p(−−), p(−+), p(+−), p(++)]
        epsilon_window (float, optional): Semiancho fijo de V_ε
        nombre (str): Etiqueta del modelo

    Raises:
        ParametrosInvalidosError: Si ρ, las probabilidades o z* no cumplen
            las precondiciones.
    """

    def __init__(
        self,
        rho: float,
        zstar: Callable[[np.ndarray], np.ndarray],
        ley_w: LeyW,
        sign_probs: Sequence[float] = (0.25, 0.25, 0.25, 0.25),
        epsilon_window: Optional[float] = None,
        nombre: str = "FunctionalModelB",
    ):
        exigir(validar_rango("rho", rho, -1.0, 1.0), validar_probabilidades("sign_probs", list(sign_probs)))
        if len(sign_probs) != 4:
            raise ParametrosInvalidosError("sign_probs requiere 4 valores [p(−−), p(−+), p(+−), p(++)]")
        if float(sign_probs[3]) <= 0:
            raise ParametrosInvalidosError("P(I₁ = I₂ = 1) debe ser positiva")
        if epsilon_window is not None:
            exigir(validar_rango("epsilon_window", epsilon_window, 0.0, 1.0))

        self._rho = float(rho)
        self._zstar = zstar
        self._ley_w = ley_w
        self._signos = tuple(float(p) for p in sign_probs)
        self._epsilon_fijo = None if epsilon_window is None else float(epsilon_window)
        self._nombre = nombre

        malla = np.linspace(0.0, 1.0, PUNTOS_MALLA)
        valores_z = np.asarray(zstar(malla), dtype=float)
        if np.any(~np.isfinite(valores_z)) or np.any(valores_z < -1e-12) or np.any(valores_z > 1 + 1e-12):
            raise ParametrosInvalidosError("z* debe tomar valores en [0, 1] sobre [0, 1]")
        self._ramas = tuple(self._preparar_rama(i1, i2, p, malla) for (i1, i2), p in zip(RAMAS_SIGNO, self._signos))

    # ------------------------------------------------------------------
    # Propiedades
    # ------------------------------------------------------------------
    @property
    def rho(self) -> float:
        return self._rho

    @property
    def ley_w(self) -> LeyW:
        return self._ley_w

    @property
    def sign_probs(self) -> Tuple[float, ...]:
        return self._signos

    @property
    def p11(self) -> float:
        """P(I₁ = I₂ = 1)."""
        return self._signos[3]

    @property
    def p_i1_positivo(self) -> float:
        """P(I₁ = 1)."""
        return self._signos[2] + self._signos[3]

    @property
    def label(self) -> str:
        return f"{self._nombre}(rho={self._rho:g}, W={self._ley_w.label})"

    def __repr__(self) -> str:
        return self.label

    def zstar(self, w) -> np.ndarray:
        return np.asarray(self._zstar(np.asarray(w, dtype=float)), dtype=float)

    def z(self, w) -> np.ndarray:
        """z(w) = ρw + z*(w)."""
        w = np.asarray(w, dtype=float)
        return self._rho * w + self.zstar(w)

    # ------------------------------------------------------------------
    # Ramas de signo
    # ------------------------------------------------------------------
    def _preparar_rama(self, i1: int, i2: int, prob: float, malla: np.ndarray) -> _Rama:
        rho = self._rho

        def funcion(w, i1=i1, i2=i2):
            w = np.asarray(w, dtype=float)
            return i2 * self.zstar(w) + rho * i1 * w

        valores = funcion(malla)
        positivos = np.maximum(valores, 0.0)
        indice = int(np.argmax(positivos))
        if positivos[indice] <= 0:
            return _Rama(i1, i2, prob, funcion, moda=float(malla[indice]), maximo=float(valores.max()))

        tolerancia = 1e-12
        subida = np.diff(positivos[: indice + 1])
        bajada = np.diff(positivos[indice:])
        if np.any(subida < -tolerancia) or np.any(bajada > tolerancia):
            raise ParametrosInvalidosError(
                f"La rama de signos ({i1:+d}, {i2:+d}) no es unimodal en su parte positiva; "
                "los eventos {g(W) > t} no serían intervalos"
            )
        izquierda = float(malla[max(indice - 1, 0)])
        derecha = float(malla[min(indice + 1, len(malla) - 1)])
        if derecha > izquierda:
            refinado = minimize_scalar(
                lambda w: -float(funcion(w)), bounds=(izquierda, derecha), method="bounded", options={"xatol": 1e-14}
            )
            moda = float(refinado.x)
            if float(funcion(moda)) < positivos[indice]:
                moda = float(malla[indice])
        else:
            moda = float(malla[indice])
        return _Rama(i1, i2, prob, funcion, moda=moda, maximo=float(funcion(moda)))

    def _intervalo_superior(self, rama: _Rama, t: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        Extremos (lo, hi) de {w : g(w) > t} para t > 0 y máscara de no vacíos.
        """
        t = np.asarray(t, dtype=float)
        no_vacio = t < rama.maximo
        objetivo = np.where(no_vacio, t, rama.maximo)
        lo = biseccion_vectorizada(rama.funcion, objetivo, 0.0, rama.moda, creciente=True)
        hi = biseccion_vectorizada(rama.funcion, objetivo, rama.moda, 1.0, creciente=False)
        return lo, hi, no_vacio

    def _prob_rama(self, rama: _Rama, t_w: np.ndarray, t_g: np.ndarray) -> np.ndarray:
        """P(W > t_w, g(W) > t_g) para t_g > 0."""
        lo, hi, no_vacio = self._intervalo_superior(rama, t_g)
        inicio = np.maximum(lo, t_w)
        valor = np.where(no_vacio & (hi > inicio), self._ley_w.sf(inicio) - self._ley_w.sf(hi), 0.0)
        return np.maximum(valor, 0.0)

    # ------------------------------------------------------------------
    # Operaciones
    # ------------------------------------------------------------------
    def w_density_at(self, x: float) -> float:
        """
        Densidad h de W en x ∈ (0, 1)

        Raises:
            ParametrosInvalidosError: Si x ∉ (0, 1).
        """
        exigir(validar_rango("x", x, 0.0, 1.0))
        return float(self._ley_w.pdf(float(x)))

    def probabilidad_condicional(self, x1: float, y1: float, r) -> np.ndarray:
        """
        q(r) = P(r·U₁ > x₁, r·U₂ > y₁) vectorizado en r

        Solo las ramas con I₁ = 1 contribuyen: p(++)·P(W > x₁/r, z(W) > y₁/r)
        + p(+−)·P(W > x₁/r, ρW − z*(W) > y₁/r).
        """
        r = np.asarray(r, dtype=float)
        t1 = x1 / r
        t2 = y1 / r
        total = np.zeros(np.broadcast(t1, t2).shape)
        for rama in self._ramas:
            if rama.i1 != 1 or rama.prob == 0:
                continue
            total = total + rama.prob * self._prob_rama(rama, t1, t2)
        return np.where(t1 >= 1.0, 0.0, total)

    def probabilidad_marginal_condicional(self, which: str, umbral: float, r) -> np.ndarray:
        """P(r·U₁ > umbral) o P(r·U₂ > umbral), sumando todas las ramas de signo."""
        r = np.asarray(r, dtype=float)
        t = umbral / r
        if which == "X":
            return self.p_i1_positivo * np.where(t >= 1.0, 0.0, self._ley_w.sf(t))
        if which != "Y":
            raise ParametrosInvalidosError(f"which debe ser 'X' o 'Y' (se recibió {which})")
        total = np.zeros(np.shape(t))
        for rama in self._ramas:
            if rama.prob == 0:
                continue
            total = total + rama.prob * self._prob_rama(rama, np.zeros_like(t), t)
        return total

    def maximo_angular(self, which: str) -> float:
        """Extremo superior de U₁ (1) o de U₂ (máximo de las ramas con masa)."""
        if which == "X":
            return 1.0
        return max(rama.maximo for rama in self._ramas if rama.prob > 0)

    def radio_minimo(self, x1: float, y1: float) -> float:
        """
        Menor r con P(r·U₁ > x₁, r·U₂ > y₁) > 0

        Minimiza max(x₁/w, y₁/g(w)) sobre las ramas con I₁ = 1 en una malla y
        refina con Brent acotado; devuelve el valor reducido en 1e-7 relativo.
        """
        malla = np.linspace(0.0, 1.0, PUNTOS_MALLA)[1:]
        mejor = math.inf
        for rama in self._ramas:
            if rama.i1 != 1 or rama.prob == 0 or rama.maximo <= 0:
                continue

            def requerido(w, rama=rama):
                g = np.asarray(rama.funcion(w), dtype=float)
                with np.errstate(divide="ignore"):
                    return np.where(g > 0, np.maximum(x1 / w, y1 / np.where(g > 0, g, 1.0)), np.inf)

            valores = requerido(malla)
            indice = int(np.argmin(valores))
            if not math.isfinite(valores[indice]):
                continue
            izquierda = float(malla[max(indice - 1, 0)])
            derecha = float(malla[min(indice + 1, len(malla) - 1)])
            candidato = float(valores[indice])
            if derecha > izquierda:
                refinado = minimize_scalar(
                    lambda w: float(requerido(np.asarray(w))),
                    bounds=(izquierda, derecha),
                    method="bounded",
                    options={"xatol": 1e-15},
                )
                if math.isfinite(refinado.fun):
                    candidato = min(candidato, float(refinado.fun))
            mejor = min(mejor, candidato)
        return mejor * (1.0 - 1e-7)

    def cola_angular(self, which: str, s) -> np.ndarray:
        """P(U_i > 1 − s) para s ∈ (0, 1]."""
        s = np.asarray(s, dtype=float)
        return self.probabilidad_marginal_condicional(which, 1.0, 1.0 / (1.0 - s))

    def joint_tail_given_r(
        self,
        a: float,
        x: float,
        r,
        delta: float = 0.0,
        eta: float = 0.0,
        radial=None,
    ):
        """
        P(X > x(1 + δ/v(αx)), Y > a·x(1 + η/v(αx)) | R = r)

        Args:
            a (float): Nivel en (0, 1]
            x (float): Umbral positivo
            r (float | array): Valor(es) del radio, r > 0
            delta (float): Desplazamiento de X
            eta (float): Desplazamiento de Y
            radial (RadialLaw, optional): Requerida si δ o η son no nulos

        Returns:
            float | np.ndarray: Probabilidad condicional exacta

        Example:
            >>> modelo = LpModel(1.0, ley_w=LeyPotenciaBeta(1.0, 1.0, 1.0))
            >>> round(modelo.joint_tail_given_r(1.0, 1.0, 4.0), 12)
            0.125
        """
        exigir(validar_rango("a", a, 0.0, 1.0, incluir_maximo=True), validar_positivo("x", x))
        r_arr = np.asarray(r, dtype=float)
        if np.any(~(r_arr > 0)):
            raise ParametrosInvalidosError("joint_tail_given_r requiere r > 0")
        x1, y1 = float(x), float(a) * float(x)
        if delta != 0.0 or eta != 0.0:
            if radial is None:
                raise ParametrosInvalidosError("Con δ o η no nulos se requiere la ley radial para v(αx)")
            alpha = self.solve_alpha(a).alpha
            v = radial.scaling_v(alpha * x)
            x1 = x * (1.0 + float(delta) / v)
            y1 = a * x * (1.0 + float(eta) / v)
        valor = self.probabilidad_condicional(x1, y1, r_arr)
        if np.ndim(r) == 0:
            return float(valor)
        return valor

    def sample_functional(self, rng: np.random.Generator, size: int) -> Tuple[np.ndarray, np.ndarray]:
        """
        Extrae (u₁, u₂) = (I₁W, ρI₁W + I₂z*(W)) con W por inversión de su cdf
        """
        w = self._ley_w.ppf(rng.random(size))
        ramas = rng.choice(4, size=size, p=np.asarray(self._signos))
        i1 = np.where(ramas >= 2, 1.0, -1.0)
        i2 = np.where(ramas % 2 == 1, 1.0, -1.0)
        return i1 * w, self._rho * i1 * w + i2 * self.zstar(w)

    # ------------------------------------------------------------------
    # Dirección crítica
    # ------------------------------------------------------------------
    def solve_alpha(self, a: float) -> CriticalData:
        """
        Resuelve z(1/α) = a/α y calcula c = −1/z'(1/α)

        Args:
            a (float): Nivel en (0, 1]; con ρ > 0 se exige a > ρ

        Returns:
            CriticalData: α, c y constantes derivadas

        Raises:
            ErrorNumerico: Sin cambio de signo (no hay dirección crítica),
                raíz no única o estimaciones de c inconsistentes.
            ParametrosInvalidosError: Si falla la condición lateral
                z(w) ≤ a/α en (1/α, 1] o z no decrece cerca de 1/α.
        """
        exigir(validar_rango("a", a, 0.0, 1.0, incluir_maximo=True))
        return _critico_en_cache(self, float(a))

    def _resolver_alpha(self, a: float) -> CriticalData:
        if self._rho > 0 and a / self._rho <= 1.0:
            raise ParametrosInvalidosError(f"Con ρ={self._rho} se requiere a/ρ > 1 (a={a})")

        def phi(alpha: float) -> float:
            return float(self.z(1.0 / alpha)) - a / alpha

        inferior = 1.0
        if phi(inferior) >= 0:
            raise ErrorNumerico(f"No hay dirección crítica: z(1) ≥ a para {self.label}, a={a}")
        if self._rho > 0:
            superior = a / self._rho
        else:
            superior = 2.0
            while phi(superior) <= 0:
                superior *= 2.0
                if superior > 1e12:
                    raise ErrorNumerico(f"No hay dirección crítica en (1, 1e12] para {self.label}, a={a}")
        if phi(superior) <= 0:
            raise ErrorNumerico(f"No hay dirección crítica en (1, {superior:.6g}) para {self.label}, a={a}")

        malla = np.linspace(inferior, superior, 2001)
        signos = np.sign(np.array([phi(alpha) for alpha in malla[1:-1]]))
        cambios = int(np.count_nonzero(np.diff(signos[signos != 0]) != 0))
        if cambios > 1:
            raise ErrorNumerico(f"z(1/α) − a/α cambia de signo {cambios} veces; la raíz no es única")

        alpha = brentq(phi, inferior, superior, xtol=1e-15, rtol=8.9e-16, maxiter=500)
        w0 = 1.0 / alpha
        logger.debug("solve_alpha %s a=%g: α=%.15g en [%g, %g]", self.label, a, alpha, inferior, superior)

        self._verificar_condicion_lateral(w0, a / alpha)
        epsilon = self._ventana_monotona(w0)
        c, c_izq, c_der = self._pendiente_inversa(w0, a / alpha, epsilon)
        datos = CriticalData(
            alpha=alpha,
            c=c,
            a=a,
            K1=-1.0 / alpha,
            K2=c * a / alpha,
            epsilon=epsilon,
            c_izq=c_izq,
            c_der=c_der,
            gamma_a=self._ley_w.exponente_local(w0),
        )
        return datos

    def _verificar_condicion_lateral(self, w0: float, nivel: float) -> None:
        malla = np.linspace(w0, 1.0, 2001)[1:]
        exceso = self.z(malla) - nivel
        if np.any(exceso > 1e-12):
            peor = float(malla[int(np.argmax(exceso))])
            raise ParametrosInvalidosError(
                f"Condición lateral violada: z({peor:.6g}) > a/α = {nivel:.6g} en {self.label}"
            )

    def _ventana_monotona(self, w0: float) -> float:
        """Semiancho ε con z' < 0 en [w0 − ε, w0 + ε] ∩ [0, 1]."""
        malla = np.linspace(0.0, 1.0, 20001)
        derivada = np.gradient(self.z(malla), malla)
        centro = int(np.clip(np.searchsorted(malla, w0), 1, len(malla) - 2))
        if self._epsilon_fijo is not None:
            ventana = (malla >= w0 - self._epsilon_fijo) & (malla <= w0 + self._epsilon_fijo)
            if np.any(derivada[ventana][1:-1] >= 0):
                raise ParametrosInvalidosError(f"z no es decreciente en la ventana ε={self._epsilon_fijo}")
            return self._epsilon_fijo
        if derivada[centro] >= 0:
            raise ParametrosInvalidosError(f"z no es decreciente cerca de 1/α = {w0:.6g}")
        izquierda = centro
        while izquierda > 0 and derivada[izquierda - 1] < 0:
            izquierda -= 1
        derecha = centro
        while derecha < len(malla) - 1 and derivada[derecha + 1] < 0:
            derecha += 1
        semiancho = min(w0 - malla[izquierda], malla[derecha] - w0)
        if semiancho <= 0:
            raise ParametrosInvalidosError(f"Ventana monótona vacía alrededor de 1/α = {w0:.6g}")
        return 0.9 * float(semiancho)

    def _inversa_local(self, y: float, w0: float, epsilon: float) -> float:
        lo = max(0.0, w0 - epsilon)
        hi = min(1.0, w0 + epsilon)

        def objetivo(w):
            return float(self.z(w)) - y

        try:
            return brentq(objetivo, lo, hi, xtol=1e-16, rtol=8.9e-16, maxiter=500)
        except ValueError as exc:
            raise ErrorNumerico(f"La inversa local de z no tiene corchete para y={y:.12g}") from exc

    def _pendiente_inversa(self, w0: float, y0: float, epsilon: float) -> Tuple[float, float, float]:
        """
        c = −(z_ε⁻¹)'(y₀) por diferencias simétricas con extrapolación de
        Richardson; las estimaciones unilaterales deben coincidir.
        """
        def inv(y):
            return self._inversa_local(y, w0, epsilon)

        def simetrica(h):
            return -(inv(y0 + h) - inv(y0 - h)) / (2.0 * h)

        def izquierda(h):
            return -(w0 - inv(y0 - h)) / h

        def derecha(h):
            return -(inv(y0 + h) - w0) / h

        h = 1e-4
        c = (4.0 * simetrica(h / 2.0) - simetrica(h)) / 3.0
        c_izq = 2.0 * izquierda(h / 2.0) - izquierda(h)
        c_der = 2.0 * derecha(h / 2.0) - derecha(h)

        finas = [simetrica(1e-5), simetrica(1e-6)]
        if any(abs(valor - c) > 1e-5 * abs(c) for valor in finas):
            raise ErrorNumerico(f"Diferencias de la inversa local inconsistentes: c={c:.10g}, finas={finas}")
        if not (c > 0) or abs(c_izq - c_der) > 1e-4 * c:
            raise ErrorNumerico(
                f"Pendientes unilaterales inconsistentes (c_izq={c_izq:.10g}, c_der={c_der:.10g})"
            )
        return float(c), float(c_izq), float(c_der)


@lru_cache(maxsize=256)
def _critico_en_cache(modelo: FunctionalModelB, a: float) -> CriticalData:
    """Datos críticos por (modelo, a); los modelos se comparan por identidad."""
    return modelo._resolver_alpha(a)


class EllipticalModel(FunctionalModelB):
    """
    Caso elíptico: z*(w) = √(1 − ρ²)·√(1 − w²), W² ~ Beta(1/2, 1/2)

    Formas cerradas: α = √(1 − 2aρ + a²)/√(1 − ρ²), c = (a − ρ)/(1 − aρ).
    """

    def __init__(
        self,
        rho: float,
        sign_probs: Sequence[float] = (0.25, 0.25, 0.25, 0.25),
        ley_w: Optional[LeyW] = None,
        epsilon_window: Optional[float] = None,
    ):
        exigir(validar_rango("rho", rho, -1.0, 1.0))
        rho_estrella = math.sqrt(1.0 - float(rho) ** 2)

        def zstar(w):
            return rho_estrella * np.sqrt(np.clip(1.0 - np.asarray(w, dtype=float) ** 2, 0.0, 1.0))

        super().__init__(
            rho,
            zstar,
            ley_w if ley_w is not None else LeyPotenciaBeta(2.0, 0.5, 0.5),
            sign_probs=sign_probs,
            epsilon_window=epsilon_window,
            nombre="EllipticalModel",
        )
        self._rho_estrella = rho_estrella

    @property
    def rho_estrella(self) -> float:
        """ρ* = √(1 − ρ²)."""
        return self._rho_estrella

    def alpha_cerrado(self, a: float) -> float:
        return math.sqrt(1.0 - 2.0 * a * self.rho + a * a) / self._rho_estrella

    def c_cerrado(self, a: float) -> float:
        return (a - self.rho) / (1.0 - a * self.rho)


class LpModel(FunctionalModelB):
    """
    Caso ℓ_p: ρ = 0, z*(w) = (1 − w^p)^(1/p)

    W por defecto B^(1/p) con B ~ Beta(1/p, 1/p), de modo que p = 2 recupera
    el círculo y p = 1 la ley uniforme. α = (1 + a^p)^(1/p), c = a^(p−1).
    """

    def __init__(
        self,
        p: float,
        ley_w: Optional[LeyW] = None,
        sign_probs: Sequence[float] = (0.25, 0.25, 0.25, 0.25),
        epsilon_window: Optional[float] = None,
    ):
        exigir(validar_positivo("p", p))
        self._p = float(p)
        potencia = self._p

        def zstar(w):
            w = np.clip(np.asarray(w, dtype=float), 0.0, 1.0)
            return np.power(np.clip(1.0 - np.power(w, potencia), 0.0, 1.0), 1.0 / potencia)

        super().__init__(
            0.0,
            zstar,
            ley_w if ley_w is not None else LeyPotenciaBeta(self._p, 1.0 / self._p, 1.0 / self._p),
            sign_probs=sign_probs,
            epsilon_window=epsilon_window,
            nombre="LpModel",
        )

    @property
    def p(self) -> float:
        return self._p

    def alpha_cerrado(self, a: float) -> float:
        return (1.0 + a ** self._p) ** (1.0 / self._p)

    def c_cerrado(self, a: float) -> float:
        return a ** (self._p - 1.0)


def verificar_normalizacion_w(ley_w: LeyW, tolerancia: float = 1e-8) -> float:
    """
    Integra h sobre (0, 1) y verifica que sume 1

    Returns:
        float: Valor de la integral

    Raises:
        ErrorNumerico: Si |∫h − 1| supera la tolerancia.
    """
    valor, _ = integrate.quad(lambda w: float(ley_w.pdf(w)), 0.0, 1.0, limit=400, epsabs=1e-12, epsrel=1e-12)
    if abs(valor - 1.0) > tolerancia:
        raise ErrorNumerico(f"La densidad de {ley_w.label} integra {valor:.12g} en (0, 1)", cota=abs(valor - 1.0))
    return valor


def crear_ley_w(config: Optional[dict], p: Optional[float] = None) -> Optional[LeyW]:
    """
    Ley de W desde la subtabla `w` del experimento

    Claves: beta_alpha, beta_beta (y k, por defecto p) para PotenciaBeta;
    peak_w0 y gamma_a para la ley sintética de pico.
    """
    if not config:
        return None
    if "gamma_a" in config:
        return LeyPicoPotencia(config.get("peak_w0", 0.5), config["gamma_a"])
    k = config.get("k", p if p is not None else 1.0)
    return LeyPotenciaBeta(k, config.get("beta_alpha", 1.0), config.get("beta_beta", 1.0))


def crear_modelo_funcional(model: str, **parametros) -> FunctionalModelB:
    """
    Construye un modelo funcional desde la tabla [functional] del experimento

    Example:
        >>> crear_modelo_funcional("elliptical", rho=0.5).label
        'EllipticalModel(rho=0.5, W=PotenciaBeta(k=2, alpha=0.5, beta=0.5))'
    """
    clave = str(model).lower()
    signos = parametros.pop("signs", (0.25, 0.25, 0.25, 0.25))
    epsilon = parametros.pop("epsilon_window", None)
    try:
        if clave == "elliptical":
            ley = crear_ley_w(parametros.pop("w", None), p=2.0)
            return EllipticalModel(parametros.pop("rho"), sign_probs=signos, ley_w=ley, epsilon_window=epsilon, **parametros)
        if clave == "lp":
            p = parametros.pop("p")
            ley = crear_ley_w(parametros.pop("w", None), p=p)
            return LpModel(p, ley_w=ley, sign_probs=signos, epsilon_window=epsilon, **parametros)
        if clave == "peaked":
            # Círculo con W de pico en 1/α(a): ejercita la vía general de γ_a
            a = float(parametros.pop("a_peak", 1.0))
            gamma_a = parametros.pop("gamma_a")
            w0 = 1.0 / math.sqrt(1.0 + a * a)
            return LpModel(2.0, ley_w=LeyPicoPotencia(w0, gamma_a), sign_probs=signos, epsilon_window=epsilon, **parametros)
    except KeyError as exc:
        raise ParametrosInvalidosError(f"Falta el parámetro {exc} para el modelo '{model}'") from exc
    except TypeError as exc:
        raise ParametrosInvalidosError(f"Parámetros inválidos para '{model}': {exc}") from exc
    raise ModeloNoSoportadoError(f"Modelo funcional desconocido '{model}'. Opciones: elliptical, lp, peaked")
