"""
Aproximaciones asintóticas de colas conjuntas y marginales
Cada estimación se arma en dominio logarítmico a partir de factores
auditables (coeficiente, potencia de v, factor F̄)
"""
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, Optional, Union

import numpy as np
from scipy.special import gammainccinv

from mixturas.angular_models import AngularModelA
from mixturas.functional_models import FunctionalModelB, LpModel
from mixturas.radial_laws import RadialLaw
from utils.calculos import bordes_paneles, integrar_por_paneles, log_gamma
from utils.errores import ErrorNumerico, ModeloNoSoportadoError, ParametrosInvalidosError
from utils.validaciones import es_numero_finito, exigir, validar_positivo, validar_rango

logger = logging.getLogger(__name__)

METODOS = ("theorem1", "model_b", "elliptical_closed", "lp_closed", "marginal", "berman", "quadrature", "monte_carlo")

# Cola relativa despreciada al truncar la integral J
COLA_J = 1e-16


@dataclass
class TailEstimate:
    """
    Estimación de una probabilidad de cola

    Attributes:
        log_value (float): ln p; puede estar muy por debajo del subflujo
        method (str): Fórmula u oráculo que la produjo
        error (float, optional): Error relativo (cota de cuadratura o error
            estándar dividido por el valor)
        components (dict): Factores logarítmicos cuya suma es log_value
    """

    log_value: float
    method: str
    error: Optional[float] = None
    components: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.method not in METODOS:
            raise ParametrosInvalidosError(f"Método de estimación desconocido: {self.method}")
        if math.isnan(self.log_value):
            raise ErrorNumerico(f"Estimación {self.method} con logaritmo NaN")

    @property
    def value(self) -> float:
        return math.exp(self.log_value)

    @property
    def log10_value(self) -> float:
        return self.log_value / math.log(10.0)

    def log_desde_componentes(self) -> float:
        """Reconstruye ln p sumando los componentes."""
        return math.fsum(self.components.values())


def _ensamblar(metodo: str, componentes: Dict[str, float], error: Optional[float] = None) -> TailEstimate:
    return TailEstimate(
        log_value=math.fsum(componentes.values()), method=metodo, error=error, components=dict(componentes)
    )


def _evaluar_L(L: Union[float, Callable], s: float) -> float:
    valor = float(L(s)) if callable(L) else float(L)
    if not (valor > 0 and math.isfinite(valor)):
        raise ErrorNumerico(f"Factor de variación lenta no positivo: L({s:.6g}) = {valor}")
    return valor


def _v_en(radial: RadialLaw, x: float, L=None) -> float:
    """v(x); con L evaluable en s = 1/v se exige v(x) ≥ 1."""
    v = float(radial.scaling_v(x))
    if callable(L) and v < 1.0:
        raise ParametrosInvalidosError(
            f"x={x:g} es demasiado pequeño para la aproximación: v(x)={v:.4g} < 1"
        )
    return v


# ----------------------------------------------------------------------
# Modelo A
# ----------------------------------------------------------------------
def j_integral(model: AngularModelA, a: float, delta: float, eta: float) -> float:
    """
    Calcula J_{δ,η} = ∫ ξ_a(s, δ, η)·e^(−s) ds sobre s > 0

    El intervalo se trunca donde la cola exponencial relativa queda bajo
    1e-16 y se parte en paneles con los quiebres de ξ_a.

    Args:
        model (AngularModelA): Modelo angular
        a (float): Dirección en (0, 1]
        delta (float): Desplazamiento de X (admite negativos)
        eta (float): Desplazamiento de Y (admite negativos)

    Returns:
        float: J > 0

    Raises:
        ErrorNumerico: Si la cuadratura no converge o J ≤ 0.

    Example:
        >>> round(j_integral(MinDominated(1.0), 1.0, 0.0, 0.0), 10)
        1.0
    """
    if not (es_numero_finito(delta) and es_numero_finito(eta)):
        raise ParametrosInvalidosError("δ y η deben ser reales finitos")
    return _j_cacheado(model, float(a), float(delta), float(eta))


@lru_cache(maxsize=512)
def _j_cacheado(model: AngularModelA, a: float, delta: float, eta: float) -> float:
    gamma = model.limit_data(a).gamma
    quiebres = model.xi_breakpoints(delta, eta, a)
    inicio = max(0.0, min(quiebres))
    fin = max(quiebres + [0.0]) + max(float(gammainccinv(gamma + 1.0, COLA_J)), 40.0)
    bordes = bordes_paneles(inicio, fin, quiebres)

    def integrando(s: float) -> float:
        return model.xi(s, delta, eta, a) * math.exp(-s)

    valor, cota = integrar_por_paneles(integrando, bordes, tol_rel=1e-12, tol_abs=1e-15)
    if not valor > 0:
        raise ErrorNumerico(f"J_{{{delta},{eta}}} no positiva para {model.label}", cota=cota)
    logger.debug("J(%s, a=%g, δ=%g, η=%g) = %.12g ± %.2e", model.label, a, delta, eta, valor, cota)
    return valor


def theorem1_approx(
    radial: RadialLaw, model: AngularModelA, a: float, delta: float, eta: float, x: float
) -> TailEstimate:
    """
    Aproximación J_{δ,η}·L_a(1/v(x))·v(x)^(−γ)·F̄(x)

    Args:
        radial (RadialLaw): Ley de R
        model (AngularModelA): Modelo angular
        a (float): Dirección en (0, 1]
        delta (float): Desplazamiento de X, δ ≥ 0
        eta (float): Desplazamiento de Y, η ≥ 0
        x (float): Umbral

    Returns:
        TailEstimate: Método "theorem1" con componentes log_J, log_L,
            log_v_potencia y log_F

    Raises:
        ModeloNoSoportadoError: Si el modelo no trata el nivel a.
    """
    exigir(
        validar_positivo("delta", delta, estricto=False),
        validar_positivo("eta", eta, estricto=False),
        validar_positivo("x", x),
    )
    datos = model.limit_data(a)
    v = _v_en(radial, x, datos.L)
    J = j_integral(model, a, delta, eta)
    return _ensamblar(
        "theorem1",
        {
            "log_J": math.log(J),
            "log_L": math.log(_evaluar_L(datos.L, 1.0 / v)),
            "log_v_potencia": -datos.gamma * math.log(v),
            "log_F": float(radial.log_survival(np.asarray(float(x)))),
        },
    )


def berman_marginal(radial: RadialLaw, gamma: float, L: Union[float, Callable], x: float) -> TailEstimate:
    """
    Cola de R·U con P(U > 1 − s) = s^γ·L(s): Γ(γ+1)·L(1/v(x))·v(x)^(−γ)·F̄(x)

    Example:
        >>> round(berman_marginal(Chi(2), 0.0, 1.0, 3.0).log_value, 12)
        -4.5
    """
    exigir(validar_positivo("gamma", gamma, estricto=False), validar_positivo("x", x))
    v = _v_en(radial, x, L)
    return _ensamblar(
        "berman",
        {
            "log_gamma": log_gamma(gamma + 1.0),
            "log_L": math.log(_evaluar_L(L, 1.0 / v)),
            "log_v_potencia": -gamma * math.log(v),
            "log_F": float(radial.log_survival(np.asarray(float(x)))),
        },
    )


# ----------------------------------------------------------------------
# Modelo B
# ----------------------------------------------------------------------
def _factores_b(radial: RadialLaw, model: FunctionalModelB, a: float, x: float):
    exigir(validar_positivo("x", x))
    critico = model.solve_alpha(a)
    xa = critico.alpha * float(x)
    v = _v_en(radial, xa)
    return critico, xa, v


def densidad_en_critico(model: FunctionalModelB, critico) -> float:
    if critico.gamma_a != 1.0:
        raise ModeloNoSoportadoError(
            f"La fórmula con densidad requiere γ_a = 1; {model.ley_w.label} tiene γ_a={critico.gamma_a:g} en 1/α"
        )
    h = float(model.ley_w.pdf(1.0 / critico.alpha))
    if not (h > 0 and math.isfinite(h)):
        raise ModeloNoSoportadoError(f"{model.ley_w.label} no tiene densidad positiva y finita en 1/α")
    return h


def model_b_approx(
    radial: RadialLaw,
    model: FunctionalModelB,
    a: float,
    x: float,
    gamma_a: Optional[float] = None,
    L: Optional[Union[float, Callable]] = None,
) -> TailEstimate:
    """
    Aproximación p₁₁·Γ(γ_a+1)·L_{K₁,K₂}(1/v(αx))·v(αx)^(−γ_a)·F̄(αx)

    Con densidad continua h en 1/α: γ_a = 1 y L = (ca+1)·h(1/α)/α. Para
    otras leyes de W se toman γ_a y L de la ley o de los argumentos.

    Args:
        radial (RadialLaw): Ley de R
        model (FunctionalModelB): Modelo funcional
        a (float): Nivel en (0, 1]
        x (float): Umbral
        gamma_a (float, optional): Exponente local de W en 1/α
        L (float | callable, optional): Factor L_{K₁,K₂}

    Returns:
        TailEstimate: Método "model_b"

    Raises:
        ModeloNoSoportadoError: Si la ley de W no aporta (γ_a, L) y no se
            suministraron.
    """
    critico, xa, v = _factores_b(radial, model, a, x)
    if gamma_a is None:
        gamma_a = critico.gamma_a
    if L is None:
        L = model.ley_w.concentracion(1.0 / critico.alpha, critico.K1, critico.K2)
        if L is None:
            raise ModeloNoSoportadoError(
                f"{model.ley_w.label} no define L_{{K1,K2}} en 1/α; suministre gamma_a y L"
            )
    exigir(validar_positivo("gamma_a", gamma_a))
    return _ensamblar(
        "model_b",
        {
            "log_p11": math.log(model.p11),
            "log_gamma": log_gamma(float(gamma_a) + 1.0),
            "log_L": math.log(_evaluar_L(L, 1.0 / v)),
            "log_v_potencia": -float(gamma_a) * math.log(v),
            "log_F": float(radial.log_survival(np.asarray(xa))),
        },
    )


def model_b_excess_approx(
    radial: RadialLaw, model: FunctionalModelB, a: float, delta: float, eta: float, x: float
) -> TailEstimate:
    """
    p₁₁·(h(1/α)/α)·(ca+1)·exp(−(caη+δ)/(ca+1))·F̄(αx)/v(αx)

    Los umbrales son x(1 + δ/v(αx)) y ax(1 + η/v(αx)).

    Raises:
        ModeloNoSoportadoError: Fuera del caso con densidad continua.
    """
    exigir(validar_positivo("delta", delta, estricto=False), validar_positivo("eta", eta, estricto=False))
    critico, xa, v = _factores_b(radial, model, a, x)
    h = densidad_en_critico(model, critico)
    ca = critico.c * critico.a
    return _ensamblar(
        "model_b",
        {
            "log_p11": math.log(model.p11),
            "log_coeficiente": math.log(h * (ca + 1.0) / critico.alpha),
            "exponente": -(ca * float(eta) + float(delta)) / (ca + 1.0),
            "log_v_potencia": -math.log(v),
            "log_F": float(radial.log_survival(np.asarray(xa))),
        },
    )


def elliptical_closed_form(
    rho: float, a: float, radial: RadialLaw, x: float, delta: float = 0.0, eta: float = 0.0
) -> TailEstimate:
    """
    Forma cerrada elíptica con signos simétricos (p₁₁ = 1/4)

    Fórmula:
        α²ρ*³ / (2π(1 − aρ)(a − ρ)) · exp(−(a²η + δ − aρ(η + δ))/(ρ*²α²))
        · F̄(αx)/v(αx)
    con α = √(1 − 2aρ + a²)/ρ* y ρ* = √(1 − ρ²).

    Raises:
        ParametrosInvalidosError: Si a ∉ (ρ, 1].

    Example:
        >>> est = elliptical_closed_form(0.0, 1.0, Chi(2), 3.0)
        >>> round(est.value / (math.exp(-9.0) / (18.0 * math.pi)), 12)
        1.0
    """
    exigir(
        validar_rango("rho", rho, -1.0, 1.0),
        validar_positivo("x", x),
        validar_positivo("delta", delta, estricto=False),
        validar_positivo("eta", eta, estricto=False),
    )
    if not (rho < a <= 1.0):
        raise ParametrosInvalidosError(f"La forma cerrada elíptica requiere a ∈ (ρ, 1] (ρ={rho}, a={a})")
    rho_e2 = 1.0 - rho * rho
    alpha = math.sqrt(1.0 - 2.0 * a * rho + a * a) / math.sqrt(rho_e2)
    xa = alpha * float(x)
    v = _v_en(radial, xa)
    return _ensamblar(
        "elliptical_closed",
        {
            "log_coeficiente": math.log(alpha * alpha * rho_e2 ** 1.5 / (2.0 * math.pi * (1.0 - a * rho) * (a - rho))),
            "exponente": -(a * a * eta + delta - a * rho * (eta + delta)) / (rho_e2 * alpha * alpha),
            "log_v_potencia": -math.log(v),
            "log_F": float(radial.log_survival(np.asarray(xa))),
        },
    )


def lp_closed_form(
    model: LpModel, a: float, radial: RadialLaw, x: float, delta: float = 0.0, eta: float = 0.0
) -> TailEstimate:
    """
    Forma cerrada ℓ_p: p₁₁·α^(p−2)·h(1/α)·exp(−(δ + a^p η)/(1 + a^p))·F̄(αx)/(x·w(αx))

    con α = (1 + a^p)^(1/p).
    """
    exigir(
        validar_rango("a", a, 0.0, 1.0, incluir_maximo=True),
        validar_positivo("x", x),
        validar_positivo("delta", delta, estricto=False),
        validar_positivo("eta", eta, estricto=False),
    )
    p = model.p
    alpha = model.alpha_cerrado(a)
    xa = alpha * float(x)
    _v_en(radial, xa)
    h = float(model.ley_w.pdf(1.0 / alpha))
    if not (h > 0 and math.isfinite(h)):
        raise ModeloNoSoportadoError(f"{model.ley_w.label} no tiene densidad positiva y finita en 1/α")
    return _ensamblar(
        "lp_closed",
        {
            "log_p11": math.log(model.p11),
            "log_coeficiente": (p - 2.0) * math.log(alpha) + math.log(h),
            "exponente": -(delta + a ** p * eta) / (1.0 + a ** p),
            "log_x_w": -math.log(float(x) * float(radial.scaling_w(xa))),
            "log_F": float(radial.log_survival(np.asarray(xa))),
        },
    )


# ----------------------------------------------------------------------
# Marginales del modelo B
# ----------------------------------------------------------------------
def exponente_cola_angular(model: FunctionalModelB, which: str, s_chico: float = 1e-8, s_grande: float = 1e-6) -> float:
    """
    Exponente γ de P(U_i > 1 − s) ~ s^γ por cociente logarítmico en dos escalas
    """
    colas = model.cola_angular(which, np.array([s_chico, s_grande]))
    if np.any(colas <= 0):
        raise ErrorNumerico(f"La cola angular de {which} se anula cerca de 1; no se puede estimar γ")
    return float(math.log(colas[1] / colas[0]) / math.log(s_grande / s_chico))


def marginal_tail_approx(
    radial: RadialLaw,
    model: FunctionalModelB,
    which: str,
    x: float,
    gamma: Optional[float] = None,
) -> TailEstimate:
    """
    Cola marginal Γ(γ_i+1)·P(U_i > 1 − 1/v(x))·F̄(x)

    Para X: P(U₁ > 1 − s) = P(I₁ = 1)·P(W > 1 − s). Para Y se usa la cola
    angular completa de U₂ (todas las ramas de signo), que se reduce a
    p₁₁·P(z(W) > 1 − s) cuando z* ≤ b < 1.

    Args:
        radial (RadialLaw): Ley de R
        model (FunctionalModelB): Modelo con ρ ≥ 0
        which (str): "X" o "Y"
        x (float): Umbral
        gamma (float, optional): Exponente γ_i; si falta se estima

    Raises:
        ParametrosInvalidosError: Si ρ < 0 o which no es X/Y.
    """
    if which not in ("X", "Y"):
        raise ParametrosInvalidosError(f"which debe ser 'X' o 'Y' (se recibió {which})")
    if model.rho < 0:
        raise ParametrosInvalidosError("marginal_tail_approx trata ρ ∈ [0, 1)")
    exigir(validar_positivo("x", x))
    v = _v_en(radial, x)
    if gamma is None:
        gamma = exponente_cola_angular(model, which)
    cola = float(model.cola_angular(which, 1.0 / v))
    if not cola > 0:
        raise ErrorNumerico(f"P(U_{which} > 1 − 1/v) se anula en x={x:g}")
    return _ensamblar(
        "marginal",
        {
            "log_gamma": log_gamma(float(gamma) + 1.0),
            "log_cola_angular": math.log(cola),
            "log_F": float(radial.log_survival(np.asarray(float(x)))),
        },
    )
