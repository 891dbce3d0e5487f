"""
Modelos angulares de dependencia libre (modelo A) para (U₁, U₂).
Colas conjuntas exactas, datos límite (γ, L_a, ξ_a) y muestreadores.

Todas las marginales son de tipo potencia: P(U > 1 − s) = s^γ en s ∈ [0, 1].
"""
import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, List, Tuple

import numpy as np
from scipy import integrate
from scipy.special import beta as funcion_beta
from scipy.special import betainc

from utils.errores import ErrorNumerico, ModeloNoSoportadoError, ParametrosInvalidosError
from utils.validaciones import exigir, validar_positivo, validar_rango

logger = logging.getLogger(__name__)


def cola_potencia(u, gamma: float) -> np.ndarray:
    """
    Ḡ(u) = P(U > u) para la marginal potencia: (1 − u)^γ recortada a [0, 1]

    Con γ = 0 la marginal es una masa puntual en 1.
    """
    u = np.asarray(u, dtype=float)
    with np.errstate(invalid="ignore"):
        valor = np.power(np.clip(1.0 - u, 0.0, 1.0), gamma)
    return np.where(u >= 1.0, 0.0, np.where(u < 0.0, 1.0, valor))


def _parte_positiva(x, exponente: float) -> np.ndarray:
    """(x)₊^e con la convención 1{x > 0} cuando e = 0."""
    x = np.asarray(x, dtype=float)
    if exponente == 0:
        return (x > 0).astype(float)
    return np.power(np.maximum(x, 0.0), exponente)


@dataclass(frozen=True)
class LimitData:
    """
    Datos límite del modelo en la dirección a

    Attributes:
        gamma (float): Exponente γ con P(U_a > 1 − s) = s^γ·L_a(s)
        L (callable): Factor de variación lenta L_a, exacto en s ∈ (0, 1]
        L_cero (float): Límite de L_a cuando s ↓ 0
    """

    gamma: float
    L: Callable[[np.ndarray], np.ndarray]
    L_cero: float


class AngularModelA(ABC):
    """
    Par angular (U₁, U₂) con U₁ ∈ (0, 1] y datos límite cerca de (1, a).

    Las subclases implementan la cola conjunta vectorizada, ξ_a como función
    de (s − δ, s − η) y los datos (γ, L_a). Con esa representación ξ_a queda
    definida también para δ, η negativos y satisface
    ξ_a(s, δ, η) = ξ_a(s − m, δ − m, η − m).
    """

    @property
    @abstractmethod
    def label(self) -> str:
        """Identificador legible del modelo."""

    @abstractmethod
    def joint_tail(self, u1, u2) -> np.ndarray:
        """P(U₁ > u₁, U₂ > u₂) vectorizado, sin validación."""

    @abstractmethod
    def _xi(self, t1: np.ndarray, t2: np.ndarray, a: float) -> np.ndarray:
        """ξ_a expresado en t₁ = s − δ, t₂ = s − η."""

    @abstractmethod
    def limit_data(self, a: float) -> LimitData:
        """(γ, L_a) para la dirección a ∈ (0, 1]."""

    @abstractmethod
    def sample_angular(self, rng: np.random.Generator, size: int) -> Tuple[np.ndarray, np.ndarray]:
        """Extrae `size` pares (u₁, u₂) exactamente de la ley del modelo."""

    def __repr__(self) -> str:
        return self.label

    def joint_tail_exact(self, u1: float, u2: float) -> float:
        """
        Calcula P(U₁ > u₁, U₂ > u₂) para un punto

        Args:
            u1 (float): Umbral de U₁ en [0, 1)
            u2 (float): Umbral de U₂ en [0, 1)

        Returns:
            float: Probabilidad exacta
        """
        exigir(
            validar_rango("u1", u1, 0.0, 1.0, incluir_minimo=True),
            validar_rango("u2", u2, 0.0, 1.0, incluir_minimo=True),
        )
        return float(self.joint_tail(float(u1), float(u2)))

    def xi(self, s, delta: float, eta: float, a: float = 1.0):
        """
        Evalúa la función límite ξ_a(s, δ, η)

        Args:
            s (float | array): Puntos s > 0
            delta (float): Desplazamiento de la primera coordenada
            eta (float): Desplazamiento de la segunda coordenada
            a (float): Dirección absorbente en (0, 1]

        Returns:
            float | np.ndarray: ξ_a ≥ 0, nula para s ≤ δ (y s ≤ η cuando a = 1)
        """
        self._validar_a(a)
        s_arr = np.asarray(s, dtype=float)
        if np.any(~(s_arr > 0)):
            raise ParametrosInvalidosError("ξ se evalúa en s > 0")
        valor = self._xi(s_arr - float(delta), s_arr - float(eta), float(a))
        if np.ndim(s) == 0:
            return float(valor)
        return valor

    def xi_breakpoints(self, delta: float, eta: float, a: float = 1.0) -> List[float]:
        """Puntos en s donde ξ_a no es derivable (bordes de paneles)."""
        return [float(delta), float(eta)]

    def u_a_tail(self, s, a: float = 1.0) -> np.ndarray:
        """P(U_a > 1 − s) con U_a = min(U₁, U₂/a), vía la cola conjunta."""
        s = np.asarray(s, dtype=float)
        return self.joint_tail(1.0 - s, a * (1.0 - s))

    @staticmethod
    def _validar_a(a: float) -> None:
        exigir(validar_rango("a", a, 0.0, 1.0, incluir_maximo=True))


class DegenerateAngular(AngularModelA):
    """U₁ = U₂ ≡ 1: γ = 0, L ≡ 1 y ξ = 1{s > max(δ, η)}."""

    @property
    def label(self) -> str:
        return "DegenerateAngular()"

    def joint_tail(self, u1, u2) -> np.ndarray:
        u1 = np.asarray(u1, dtype=float)
        u2 = np.asarray(u2, dtype=float)
        return ((u1 < 1.0) & (u2 < 1.0)).astype(float)

    def _xi(self, t1, t2, a):
        if a < 1.0:
            return (t1 > 0).astype(float)
        return ((t1 > 0) & (t2 > 0)).astype(float)

    def xi_breakpoints(self, delta, eta, a=1.0):
        return [float(delta)] if a < 1.0 else [float(delta), float(eta)]

    def limit_data(self, a: float) -> LimitData:
        self._validar_a(a)
        return LimitData(gamma=0.0, L=lambda s: np.ones_like(np.asarray(s, dtype=float)), L_cero=1.0)

    def sample_angular(self, rng, size):
        return np.ones(size), np.ones(size)


class MinDominated(AngularModelA):
    """
    U₂ = √U₁ ≥ U₁ con P(U₁ > 1 − s) = s^γ.

    Cola conjunta: Ḡ(max(u₁, u₂²)). Para a = 1 el límite es
    ξ = min(s − δ, 2(s − η))₊^γ, que coincide con (s − δ)₊^γ si δ ≥ η;
    para a < 1 la segunda coordenada deja de restringir y ξ = (s − δ)₊^γ.
    """

    def __init__(self, gamma1: float):
        exigir(validar_positivo("gamma1", gamma1, estricto=False))
        self._gamma1 = float(gamma1)

    @property
    def gamma1(self) -> float:
        return self._gamma1

    @property
    def label(self) -> str:
        return f"MinDominated(gamma1={self._gamma1:g})"

    def joint_tail(self, u1, u2) -> np.ndarray:
        u1 = np.asarray(u1, dtype=float)
        u2 = np.asarray(u2, dtype=float)
        umbral = np.maximum(u1, np.where(u2 > 0, u2 * u2, -np.inf))
        return cola_potencia(umbral, self._gamma1)

    def _xi(self, t1, t2, a):
        if a < 1.0:
            return _parte_positiva(t1, self._gamma1)
        return _parte_positiva(np.minimum(t1, 2.0 * t2), self._gamma1)

    def xi_breakpoints(self, delta, eta, a=1.0):
        puntos = [float(delta)]
        if a >= 1.0:
            # cruce s − δ = 2(s − η)
            puntos += [float(eta), 2.0 * float(eta) - float(delta)]
        return puntos

    def limit_data(self, a: float) -> LimitData:
        self._validar_a(a)
        return LimitData(gamma=self._gamma1, L=lambda s: np.ones_like(np.asarray(s, dtype=float)), L_cero=1.0)

    def sample_angular(self, rng, size):
        v = 1.0 - rng.random(size)
        u1 = 1.0 - np.power(v, 1.0 / self._gamma1) if self._gamma1 > 0 else np.ones(size)
        return u1, np.sqrt(u1)


class FGM(AngularModelA):
    """
    Marginales potencia unidas por la cópula de supervivencia FGM.

    Fórmula: P(U₁ > u₁, U₂ > u₂) = Ḡ₁Ḡ₂·[1 + K·G₁G₂]

    Con a = 1: γ = γ₁ + γ₂, L(s) = 1 + K(1 − s^γ₁)(1 − s^γ₂) y
    ξ = (s − δ)₊^γ₁·(s − η)₊^γ₂. Con a < 1: γ = γ₁ y ξ = (s − δ)₊^γ₁.

    La forma abreviada L(s) = 1 + K·s² no sale de esta cópula: sólo
    coincide con la L implementada en el límite L(0) = 1 + K, que es el
    que gobierna la aproximación cuando L se evalúa en 1/v(x) → 0. Para
    s > 0 se usa la expresión de la cópula de supervivencia, que es la que
    reproduce joint_tail.
    """

    def __init__(self, k: float, gamma1: float, gamma2: float):
        exigir(
            validar_rango("k", k, 0.0, 1.0, incluir_minimo=True),
            validar_positivo("gamma1", gamma1, estricto=False),
            validar_positivo("gamma2", gamma2, estricto=False),
        )
        self._k = float(k)
        self._gamma1 = float(gamma1)
        self._gamma2 = float(gamma2)

    @property
    def k(self) -> float:
        return self._k

    @property
    def gamma1(self) -> float:
        return self._gamma1

    @property
    def gamma2(self) -> float:
        return self._gamma2

    @property
    def label(self) -> str:
        return f"FGM(k={self._k:g}, gamma1={self._gamma1:g}, gamma2={self._gamma2:g})"

    def joint_tail(self, u1, u2) -> np.ndarray:
        c1 = cola_potencia(u1, self._gamma1)
        c2 = cola_potencia(u2, self._gamma2)
        return c1 * c2 * (1.0 + self._k * (1.0 - c1) * (1.0 - c2))

    def _xi(self, t1, t2, a):
        if a < 1.0:
            return _parte_positiva(t1, self._gamma1)
        return _parte_positiva(t1, self._gamma1) * _parte_positiva(t2, self._gamma2)

    def xi_breakpoints(self, delta, eta, a=1.0):
        return [float(delta)] if a < 1.0 else [float(delta), float(eta)]

    def limit_data(self, a: float) -> LimitData:
        self._validar_a(a)
        k, g1, g2 = self._k, self._gamma1, self._gamma2
        if a >= 1.0:
            def L(s):
                s = np.asarray(s, dtype=float)
                return 1.0 + k * (1.0 - np.power(s, g1)) * (1.0 - np.power(s, g2))

            return LimitData(gamma=g1 + g2, L=L, L_cero=1.0 + k * float(g1 > 0) * float(g2 > 0))

        def L_a(s):
            s = np.asarray(s, dtype=float)
            c2 = cola_potencia(a - a * s, g2)
            return c2 * (1.0 + k * (1.0 - np.power(s, g1)) * (1.0 - c2))

        c2_limite = float(cola_potencia(a, g2))
        L_cero = c2_limite * (1.0 + k * float(g1 > 0) * (1.0 - c2_limite))
        return LimitData(gamma=g1, L=L_a, L_cero=L_cero)

    def sample_angular(self, rng, size):
        """
        Método de la distribución condicional sobre la cópula FGM:
        V₁ uniforme y V₂ resuelve ∂C/∂v₁ = p; luego U_i = 1 − V_i^(1/γ_i).
        """
        v1 = 1.0 - rng.random(size)
        p = 1.0 - rng.random(size)
        A = self._k * (1.0 - 2.0 * v1)
        with np.errstate(divide="ignore", invalid="ignore"):
            raiz = np.sqrt(np.maximum((1.0 + A) ** 2 - 4.0 * A * p, 0.0))
            v2 = np.where(np.abs(A) > 1e-12, ((1.0 + A) - raiz) / (2.0 * A), p)
        v2 = np.clip(v2, 0.0, 1.0)
        return self._desde_uniforme(v1, self._gamma1), self._desde_uniforme(v2, self._gamma2)

    @staticmethod
    def _desde_uniforme(v: np.ndarray, gamma: float) -> np.ndarray:
        if gamma == 0:
            return np.ones_like(v)
        return 1.0 - np.power(v, 1.0 / gamma)


class LinearCombo(AngularModelA):
    """
    U_i = λ_i·S₁ + (1 − λ_i)·S₂ con S₁, S₂ independientes de marginal potencia.

    Con D_i = 1 − S_i se tiene P(D_i < s) = s^γ_i y 1 − U_i = λ_i D₁ + λ̄_i D₂.
    Solo se trata la dirección a = 1 y se exige γ₂ > 0.
    """

    TOLERANCIA_CUADRATURA = 1e-10

    def __init__(self, lambda1: float, lambda2: float, gamma1: float, gamma2: float):
        exigir(
            validar_rango("lambda1", lambda1, 0.0, 1.0),
            validar_rango("lambda2", lambda2, 0.0, 1.0),
            validar_positivo("gamma1", gamma1, estricto=False),
            validar_positivo("gamma2", gamma2),
        )
        if float(lambda2) > float(lambda1):
            raise ParametrosInvalidosError(f"LinearCombo requiere λ₁ ≥ λ₂ (λ₁={lambda1}, λ₂={lambda2})")
        self._l1 = float(lambda1)
        self._l2 = float(lambda2)
        self._gamma1 = float(gamma1)
        self._gamma2 = float(gamma2)
        self._normalizador = self._gamma2 * c_constant(self._gamma1, self._gamma2, self._l1, self._l2)

    @property
    def lambdas(self) -> Tuple[float, float]:
        return self._l1, self._l2

    @property
    def gamma1(self) -> float:
        return self._gamma1

    @property
    def gamma2(self) -> float:
        return self._gamma2

    @property
    def normalizador(self) -> float:
        """ξ̃(1, 0, 0) = γ₂·C, divisor que convierte ξ̃ en ξ."""
        return self._normalizador

    @property
    def label(self) -> str:
        return (
            f"LinearCombo(lambda1={self._l1:g}, lambda2={self._l2:g}, "
            f"gamma1={self._gamma1:g}, gamma2={self._gamma2:g})"
        )

    # ------------------------------------------------------------------
    # Cola conjunta
    # ------------------------------------------------------------------
    def _m(self, z, tau1, tau2):
        """min_i (τ_i − λ̄_i z)/λ_i."""
        return np.minimum(
            (tau1 - (1.0 - self._l1) * z) / self._l1,
            (tau2 - (1.0 - self._l2) * z) / self._l2,
        )

    def _pieza(self, tau, lam, p, q):
        """
        ∫_p^q γ₂ z^(γ₂−1) clip(ℓ(z), 0, 1)^γ₁ dz con ℓ(z) = (τ − λ̄z)/λ

        Tramo constante (ℓ ≥ 1) en z ≤ (τ − λ)/λ̄ y tramo beta incompleta
        hasta z = τ/λ̄, donde ℓ se anula.
        """
        g1, g2 = self._gamma1, self._gamma2
        lam_bar = 1.0 - lam
        z_uno = (tau - lam) / lam_bar
        z_cero = tau / lam_bar

        hi1 = np.clip(np.minimum(q, z_uno), p, q)
        constante = np.power(hi1, g2) - np.power(p, g2)

        lo2 = np.clip(np.maximum(p, z_uno), p, q)
        hi2 = np.clip(np.minimum(q, z_cero), p, q)
        activo = (hi2 > lo2) & (z_cero > 0)
        b = np.where(activo, z_cero, 1.0)
        A = np.where(activo, tau / lam, 1.0)
        incremento = betainc(g2, g1 + 1.0, np.clip(hi2 / b, 0.0, 1.0)) - betainc(
            g2, g1 + 1.0, np.clip(lo2 / b, 0.0, 1.0)
        )
        parte_beta = g2 * np.power(A, g1) * np.power(b, g2) * funcion_beta(g2, g1 + 1.0) * incremento
        return constante + np.where(activo, parte_beta, 0.0)

    def joint_tail(self, u1, u2) -> np.ndarray:
        """
        Forma cerrada vectorizada con funciones beta incompletas regularizadas

        Condicionando en D₂ = z: P(D₁ < m(z)) = clip(m(z))^γ₁, integrado contra
        la ley de D₂ y partido en el cruce z_c de las dos rectas.
        """
        u1, u2 = np.broadcast_arrays(np.asarray(u1, dtype=float), np.asarray(u2, dtype=float))
        tau1 = 1.0 - u1
        tau2 = 1.0 - u2
        d0 = tau1 / self._l1 - tau2 / self._l2
        k = 1.0 / self._l2 - 1.0 / self._l1
        if k > 0:
            z_c = -d0 / k
        else:
            z_c = np.where(d0 <= 0, np.inf, -np.inf)
        z_c = np.clip(z_c, 0.0, 1.0)
        cero = np.zeros_like(z_c)
        uno = np.ones_like(z_c)
        valor = self._pieza(tau1, self._l1, cero, z_c) + self._pieza(tau2, self._l2, z_c, uno)
        return np.clip(valor, 0.0, 1.0)

    def joint_tail_exact(self, u1: float, u2: float) -> float:
        """
        Cuadratura adaptativa sobre la ley de S₂ con y = z^γ₂

        Raises:
            ErrorNumerico: Si la cuadratura no alcanza la tolerancia.
        """
        exigir(
            validar_rango("u1", u1, 0.0, 1.0, incluir_minimo=True),
            validar_rango("u2", u2, 0.0, 1.0, incluir_minimo=True),
        )
        tau1, tau2 = 1.0 - float(u1), 1.0 - float(u2)
        g1, g2 = self._gamma1, self._gamma2

        def integrando(y: float) -> float:
            m = float(self._m(y ** (1.0 / g2), tau1, tau2))
            return float(_parte_positiva(min(m, 1.0), g1))

        quiebres = self._quiebres_z(tau1, tau2, tope=1.0)
        puntos = sorted({q ** g2 for q in quiebres if 0.0 < q < 1.0})
        valor, error = integrate.quad(
            integrando, 0.0, 1.0, points=puntos or None, epsabs=1e-13, epsrel=1e-11, limit=200
        )
        if error > 1e-8:
            raise ErrorNumerico(f"Cola conjunta de {self.label} sin convergencia en ({u1}, {u2})", cota=error)
        return valor

    def _quiebres_z(self, s1: float, s2: float, tope: float) -> List[float]:
        """Cruce de rectas, inicio de la meseta ℓ = 1 (si tope) y ceros de ℓ_i."""
        puntos = [s1 / (1.0 - self._l1), s2 / (1.0 - self._l2)]
        if tope == 1.0:
            puntos += [(s1 - self._l1) / (1.0 - self._l1), (s2 - self._l2) / (1.0 - self._l2)]
        k = 1.0 / self._l2 - 1.0 / self._l1
        if k > 0:
            puntos.append((s2 / self._l2 - s1 / self._l1) / k)
        return [p for p in puntos if math.isfinite(p) and p > 0]

    # ------------------------------------------------------------------
    # Datos límite
    # ------------------------------------------------------------------
    def xi_tilde(self, s: float, delta: float, eta: float) -> float:
        """
        ξ̃(s, δ, η) = γ₂ ∫₀^∞ [min_i (s_i − λ̄_i z)/λ_i]₊^γ₁ z^(γ₂−1) dz

        Cuadratura en y = z^γ₂ con los quiebres del integrando como bordes.
        """
        s1, s2 = float(s) - float(delta), float(s) - float(eta)
        if s1 <= 0 or s2 <= 0:
            return 0.0
        g1, g2 = self._gamma1, self._gamma2
        z_fin = min(s1 / (1.0 - self._l1), s2 / (1.0 - self._l2))

        def integrando(y: float) -> float:
            return float(_parte_positiva(self._m(y ** (1.0 / g2), s1, s2), g1))

        puntos = sorted({q ** g2 for q in self._quiebres_z(s1, s2, tope=math.inf) if 0.0 < q < z_fin})
        valor, error = integrate.quad(
            integrando,
            0.0,
            z_fin ** g2,
            points=puntos or None,
            epsabs=self.TOLERANCIA_CUADRATURA,
            epsrel=1e-11,
            limit=200,
        )
        if error > 1e3 * self.TOLERANCIA_CUADRATURA:
            raise ErrorNumerico(f"ξ̃({s}, {delta}, {eta}) sin convergencia", cota=error)
        return valor

    def _xi(self, t1, t2, a):
        if a < 1.0:
            raise ModeloNoSoportadoError("LinearCombo solo está definido para la dirección a = 1")
        t1, t2 = np.broadcast_arrays(t1, t2)
        salida = np.empty(t1.shape)
        for indice in np.ndindex(t1.shape):
            # ξ̃ depende solo de (s − δ, s − η)
            salida[indice] = self.xi_tilde(float(t1[indice]), 0.0, float(t1[indice] - t2[indice]))
        return salida / self._normalizador

    def xi_breakpoints(self, delta, eta, a=1.0):
        return [float(delta), float(eta)]

    def limit_data(self, a: float) -> LimitData:
        self._validar_a(a)
        if a < 1.0:
            raise ModeloNoSoportadoError(
                f"LinearCombo solo está definido para a = 1 (se pidió a={a}): "
                "ambas coordenadas tienen extremo superior 1"
            )
        gamma = self._gamma1 + self._gamma2

        def L(s):
            s = np.asarray(s, dtype=float)
            return self.joint_tail(1.0 - s, 1.0 - s) / np.power(s, gamma)

        return LimitData(gamma=gamma, L=L, L_cero=self._normalizador)

    def sample_angular(self, rng, size):
        d1 = np.power(1.0 - rng.random(size), 1.0 / self._gamma1) if self._gamma1 > 0 else np.zeros(size)
        d2 = np.power(1.0 - rng.random(size), 1.0 / self._gamma2)
        s1, s2 = 1.0 - d1, 1.0 - d2
        return self._l1 * s1 + (1.0 - self._l1) * s2, self._l2 * s1 + (1.0 - self._l2) * s2


def c_constant(gamma1: float, gamma2: float, lambda1: float, lambda2: float) -> float:
    """
    Constante C del comportamiento ξ̃(s, 0, 0) ~ γ₂·C·s^(γ₁+γ₂)

    Fórmula:
        C = λ₁^(−γ₁) ∫₀¹ (1 − λ̄₁t)^γ₁ t^(γ₂−1) dt
            + λ₂^(−γ₁) ∫₁^(1/λ̄₂) (1 − λ̄₂t)^γ₁ t^(γ₂−1) dt

    Args:
        gamma1 (float): γ₁ ≥ 0
        gamma2 (float): γ₂ > 0
        lambda1 (float): λ₁ ∈ (0, 1)
        lambda2 (float): λ₂ ∈ (0, λ₁]

    Returns:
        float: C ∈ (0, ∞)

    Raises:
        ErrorNumerico: Si alguna cuadratura no alcanza la tolerancia.

    Example:
        >>> round(c_constant(1.0, 1.0, 0.5, 0.5), 10)
        2.0
    """
    exigir(
        validar_positivo("gamma1", gamma1, estricto=False),
        validar_positivo("gamma2", gamma2),
        validar_rango("lambda1", lambda1, 0.0, 1.0),
        validar_rango("lambda2", lambda2, 0.0, 1.0),
    )
    if lambda2 > lambda1:
        raise ParametrosInvalidosError("c_constant requiere λ₂ ≤ λ₁")
    g1, g2 = float(gamma1), float(gamma2)
    lb1, lb2 = 1.0 - lambda1, 1.0 - lambda2

    # Peso algebraico t^(γ₂−1) en [0, 1]
    primera, err1 = integrate.quad(
        lambda t: (1.0 - lb1 * t) ** g1, 0.0, 1.0, weight="alg", wvar=(g2 - 1.0, 0.0), epsabs=1e-13, epsrel=1e-12
    )
    # Peso (1/λ̄₂ − t)^γ₁ en [1, 1/λ̄₂]
    segunda, err2 = integrate.quad(
        lambda t: t ** (g2 - 1.0), 1.0, 1.0 / lb2, weight="alg", wvar=(0.0, g1), epsabs=1e-13, epsrel=1e-12
    )
    segunda *= lb2 ** g1
    if err1 + err2 > 1e-9:
        raise ErrorNumerico("c_constant sin convergencia", cota=err1 + err2)
    return lambda1 ** (-g1) * primera + lambda2 ** (-g1) * segunda


MODELOS_ANGULARES = {
    "degenerate": DegenerateAngular,
    "min_dominated": MinDominated,
    "fgm": FGM,
    "linear_combo": LinearCombo,
}


def crear_modelo_angular(model: str, **parametros) -> AngularModelA:
    """
    Construye un modelo angular desde la tabla [angular] del experimento

    Example:
        >>> crear_modelo_angular("fgm", k=0.5, gamma1=1.0, gamma2=1.0).label
        'FGM(k=0.5, gamma1=1, gamma2=1)'
    """
    clave = str(model).lower()
    if clave not in MODELOS_ANGULARES:
        raise ParametrosInvalidosError(
            f"Modelo angular desconocido '{model}'. Opciones: {', '.join(MODELOS_ANGULARES)}"
        )
    try:
        return MODELOS_ANGULARES[clave](**parametros)
    except TypeError as exc:
        raise ParametrosInvalidosError(f"Parámetros inválidos para '{model}': {exc}") from exc
