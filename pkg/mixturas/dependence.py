"""
Dependencia extrema derivada de los modelos
Leyes límite de excesos condicionales, función de dependencia de cola
l(s, t) e índice de dependencia residual η
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from scipy import integrate
from scipy.stats import kstest, linregress, pearsonr

from mixturas.angular_models import AngularModelA
from mixturas.asymptotics import densidad_en_critico, j_integral
from mixturas.functional_models import EllipticalModel, FunctionalModelB
from mixturas.oracle import (
    OracleConfig,
    generador_bloque,
    marginal_quantile,
    muestras_angulares,
    quadrature_joint_thresholds,
    tamanos_bloques,
)
from mixturas.radial_laws import RadialLaw
from utils.calculos import log_gamma
from utils.errores import ErrorNumerico, ModeloNoSoportadoError, ParametrosInvalidosError
from utils.validaciones import exigir, validar_malla_creciente, validar_positivo, validar_rango

logger = logging.getLogger(__name__)

Modelo = Union[AngularModelA, FunctionalModelB]

MINIMO_EXCEDENCIAS = 1000
TOLERANCIA_PENDIENTE = 0.05


# ----------------------------------------------------------------------
# Excesos condicionales
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class ExcessLimit:
    """
    Ley límite de (g(x)(X − x), g(x)(Y − ax)) dado X > x, Y > ax

    Attributes:
        rate_x (float): Tasa D de la exponencial de X
        rate_y (float): Tasa D* de la exponencial de Y
        scaling (str): Descripción de g
    """

    rate_x: float
    rate_y: float
    scaling: str = "w(alpha*x)"

    def __post_init__(self):
        exigir(validar_positivo("rate_x", self.rate_x), validar_positivo("rate_y", self.rate_y))


def excess_limit_rates(model: FunctionalModelB, a: float) -> ExcessLimit:
    """
    Tasas D = α/(ca + 1) y D* = αc/(a(ca + 1))

    En el modelo elíptico se contrasta D con (1 − aρ)/(α(1 − ρ²)) y D* con
    (a − ρ)/(aα(1 − ρ²)).

    Raises:
        ErrorNumerico: Si alguna de las tasas discrepa de su forma elíptica.
    """
    critico = model.solve_alpha(a)
    ca = critico.c * critico.a
    rate_x = critico.alpha / (ca + 1.0)
    rate_y = critico.alpha * critico.c / (critico.a * (ca + 1.0))
    if isinstance(model, EllipticalModel):
        divisor = critico.alpha * model.rho_estrella**2
        cerradas = (
            ("D", rate_x, (1.0 - critico.a * model.rho) / divisor),
            ("D*", rate_y, (critico.a - model.rho) / (critico.a * divisor)),
        )
        for nombre, valor, alternativa in cerradas:
            if abs(alternativa - valor) > 1e-9 * valor:
                raise ErrorNumerico(f"{nombre}={valor:.15g} no coincide con la forma elíptica {alternativa:.15g}")
    logger.debug("Tasas de exceso a=%g: D=%.10g D*=%.10g", a, rate_x, rate_y)
    return ExcessLimit(rate_x=rate_x, rate_y=rate_y)


def excess_limit_survival(lim: ExcessLimit, s: float, t: float) -> float:
    """P(E₁ > s, E₂ > t) = exp(−sD − tD*)."""
    exigir(validar_positivo("s", s, estricto=False), validar_positivo("t", t, estricto=False))
    return math.exp(-float(s) * lim.rate_x - float(t) * lim.rate_y)


@dataclass
class ExcesoEmpirico:
    """Resultado de la simulación de excesos escalados."""

    limite: ExcessLimit
    n_aceptados: int
    ks_x: float
    ks_y: float
    correlacion: float
    escala: float
    tabla: pd.DataFrame = field(repr=False)


def _simular_excedencias(
    radial: RadialLaw, model: FunctionalModelB, x1: float, y1: float, cfg: OracleConfig
) -> Tuple[np.ndarray, np.ndarray]:
    """Pares (X, Y) con X > x₁, Y > y₁ por rechazo sobre R | R > r₀."""
    r0 = model.radio_minimo(x1, y1)

    def bloque(k_n: Tuple[int, int]) -> Tuple[np.ndarray, np.ndarray]:
        k, n = k_n
        rng = generador_bloque(cfg.seed, k)
        r = radial.sample_conditional(r0, 1.0 - rng.random(n))
        u1, u2 = muestras_angulares(model, rng, n)
        x, y = r * u1, r * u2
        aceptado = (x > x1) & (y > y1)
        return x[aceptado], y[aceptado]

    tareas = list(enumerate(tamanos_bloques(cfg.n_samples, cfg.chunks)))
    with ThreadPoolExecutor(max_workers=cfg.threads) as ejecutor:
        partes = list(ejecutor.map(bloque, tareas))
    return np.concatenate([p[0] for p in partes]), np.concatenate([p[1] for p in partes])


def excess_empirical(
    radial: RadialLaw,
    model: FunctionalModelB,
    a: float,
    x: float,
    cfg: OracleConfig = OracleConfig(),
    s_grid: Sequence[float] = (0.25, 0.5, 1.0, 2.0, 4.0),
) -> ExcesoEmpirico:
    """
    Excesos condicionales simulados frente a la ley exponencial producto

    Los excesos (X − x, Y − ax) de los eventos X > x, Y > ax se escalan
    por w(αx) y se comparan con Exp(D) y Exp(D*) por Kolmogorov-Smirnov.

    Args:
        radial (RadialLaw): Ley de R
        model (FunctionalModelB): Modelo funcional en el caso con densidad
        a (float): Nivel en (0, 1]
        x (float): Umbral
        cfg (OracleConfig): Muestras, semilla, bloques e hilos
        s_grid (sequence): Puntos donde se tabulan las supervivencias

    Returns:
        ExcesoEmpirico: Distancias KS, correlación y tabla de supervivencias

    Raises:
        ModeloNoSoportadoError: Fuera del caso con densidad continua.
        ErrorNumerico: Con menos de 1000 excedencias aceptadas.
    """
    exigir(validar_positivo("x", x), validar_malla_creciente("s_grid", list(s_grid)))
    limite = excess_limit_rates(model, a)
    critico = model.solve_alpha(a)
    densidad_en_critico(model, critico)

    xs, ys = _simular_excedencias(radial, model, float(x), critico.a * float(x), cfg)
    if xs.size < MINIMO_EXCEDENCIAS:
        raise ErrorNumerico(
            f"Solo {xs.size} excedencias aceptadas (mínimo {MINIMO_EXCEDENCIAS}); "
            "aumente n_samples o reduzca x"
        )
    escala = float(radial.scaling_w(critico.alpha * float(x)))
    e1 = escala * (xs - float(x))
    e2 = escala * (ys - critico.a * float(x))

    ks_x = float(kstest(e1, "expon", args=(0.0, 1.0 / limite.rate_x)).statistic)
    ks_y = float(kstest(e2, "expon", args=(0.0, 1.0 / limite.rate_y)).statistic)
    correlacion = float(pearsonr(e1, e2).statistic)

    s = np.asarray(s_grid, dtype=float)
    tabla = pd.DataFrame(
        {
            "s": s,
            "supervivencia_x_empirica": [(e1 > v).mean() for v in s],
            "supervivencia_x_limite": np.exp(-s * limite.rate_x),
            "supervivencia_y_empirica": [(e2 > v).mean() for v in s],
            "supervivencia_y_limite": np.exp(-s * limite.rate_y),
        }
    )
    logger.info("Excesos x=%g: n=%d KS=(%.4f, %.4f) corr=%.4f", x, xs.size, ks_x, ks_y, correlacion)
    return ExcesoEmpirico(
        limite=limite,
        n_aceptados=int(xs.size),
        ks_x=ks_x,
        ks_y=ks_y,
        correlacion=correlacion,
        escala=escala,
        tabla=tabla,
    )


def theorem1_excess_limit(model: AngularModelA, a: float) -> Callable[[float, float], float]:
    """
    Supervivencia límite (s, t) ↦ J_{s,t}/J_{0,0} de los excesos escalados por w(x)

    En general no es una ley producto (FGM con a = 1).
    """
    base = j_integral(model, a, 0.0, 0.0)
    if not base > 0:
        raise ErrorNumerico(f"J_(0,0) = {base} no es positiva para {model.label}")

    def supervivencia(s: float, t: float) -> float:
        exigir(validar_positivo("s", s, estricto=False), validar_positivo("t", t, estricto=False))
        return j_integral(model, a, float(s), float(t)) / base

    return supervivencia


# ----------------------------------------------------------------------
# Índice de dependencia residual
# ----------------------------------------------------------------------
def fgm_s_limit(x: float, y: float, gamma1: float, gamma2: float) -> float:
    """
    S(x, y) = ∫₀^∞ (t + ln x)₊^γ₁ (t + ln y)₊^γ₂ e^(−t) dt / Γ(γ₁ + γ₂ + 1)

    Homogénea de grado 1 para x, y ∈ (0, 1]; de ahí η = 1.
    """
    exigir(
        validar_positivo("x", x),
        validar_positivo("y", y),
        validar_positivo("gamma1", gamma1, estricto=False),
        validar_positivo("gamma2", gamma2, estricto=False),
    )
    lx, ly = math.log(x), math.log(y)
    inicio = max(0.0, -lx, -ly)
    fin = inicio + 100.0 + 10.0 * (gamma1 + gamma2)

    def integrando(t: float) -> float:
        return (t + lx) ** gamma1 * (t + ly) ** gamma2 * math.exp(-t)

    valor, _ = integrate.quad(integrando, inicio, fin, epsabs=0.0, epsrel=1e-13, limit=400)
    return valor / math.exp(log_gamma(gamma1 + gamma2 + 1.0))


@dataclass
class ResidualIndex:
    """
    Índice η de dependencia residual

    Attributes:
        eta (float): η en (0, 1] (la estimación empírica puede excederlo por ruido)
        source (str): "closed_form" o "empirical"
        pendiente (float, optional): Pendiente de ln S_u frente a ln u
        u_usados (tuple): Puntos de la ventana de regresión
        brecha (float, optional): w(b₂)(b₂ − b₁) en el mayor u
    """

    eta: float
    source: str
    pendiente: Optional[float] = None
    u_usados: Tuple[float, ...] = ()
    brecha: Optional[float] = None

    def __post_init__(self):
        if self.source not in ("closed_form", "empirical"):
            raise ParametrosInvalidosError(f"source desconocido: {self.source}")
        exigir(validar_positivo("eta", self.eta))
        if self.source == "closed_form":
            exigir(validar_rango("eta", self.eta, 0.0, 1.0, incluir_maximo=True))


def residual_index_model_b(model: FunctionalModelB, radial: RadialLaw, a: float = 1.0) -> ResidualIndex:
    """
    η = α^(−λ) con λ el índice de w(x) = x^(λ−1)L(x)

    Raises:
        ModeloNoSoportadoError: Si la ley radial no define λ.
    """
    lam = radial.weibull_index
    if lam is None:
        raise ModeloNoSoportadoError(f"{radial.label} no tiene índice λ definido; η no está disponible")
    alpha = model.solve_alpha(a).alpha
    return ResidualIndex(eta=alpha ** (-float(lam)), source="closed_form")


def estimate_eta_regression(u: Sequence[float], S: Sequence[float]) -> ResidualIndex:
    """
    η̂ = −1/pendiente de ln S_u frente a ln u

    Descarta los u menores mientras las pendientes locales consecutivas
    difieran en más de 5%, conservando al menos 3 puntos.

    Raises:
        ErrorNumerico: Datos no positivos o pendiente no negativa.
    """
    exigir(validar_malla_creciente("u", list(u), minimo_puntos=3))
    u_arr = np.asarray(u, dtype=float)
    s_arr = np.asarray(S, dtype=float)
    if s_arr.shape != u_arr.shape or np.any(~(s_arr > 0)) or np.any(~np.isfinite(s_arr)):
        raise ErrorNumerico("S_u debe ser positiva y finita en cada punto de la malla")
    log_u, log_s = np.log(u_arr), np.log(s_arr)

    inicio = 0
    while len(log_u) - inicio > 3:
        pendientes = np.diff(log_s[inicio:]) / np.diff(log_u[inicio:])
        if abs(pendientes[0] - pendientes[1]) <= TOLERANCIA_PENDIENTE * abs(pendientes[1]):
            break
        inicio += 1

    ajuste = linregress(log_u[inicio:], log_s[inicio:])
    if not (math.isfinite(ajuste.slope) and ajuste.slope < 0):
        raise ErrorNumerico(f"Regresión degenerada: pendiente {ajuste.slope}")
    eta = -1.0 / ajuste.slope
    if eta > 1.0:
        logger.warning("η empírico %.4f excede 1", eta)
    return ResidualIndex(
        eta=eta, source="empirical", pendiente=float(ajuste.slope), u_usados=tuple(float(v) for v in u_arr[inicio:])
    )


def _es_geometrica(u: Sequence[float]) -> bool:
    razones = np.diff(np.log(np.asarray(u, dtype=float)))
    return bool(np.allclose(razones, razones[0], rtol=1e-6, atol=0.0))


def empirical_eta(
    radial: RadialLaw, model: Modelo, u_grid: Sequence[float], cfg: OracleConfig = OracleConfig()
) -> ResidualIndex:
    """
    η̂ a partir de S_u(1, 1) = P(X > b₁(u), Y > b₂(u)) calculada por cuadratura

    b₁ y b₂ invierten las colas marginales exactas; los puntos de la malla se
    evalúan en paralelo y se reducen en orden.

    Args:
        radial (RadialLaw): Ley de R
        model (AngularModelA | FunctionalModelB): Ley de (U₁, U₂)
        u_grid (sequence): Malla geométrica de al menos 5 períodos u > 1
        cfg (OracleConfig): Tolerancia de cuadratura e hilos

    Returns:
        ResidualIndex: Con la brecha w(b₂)(b₂ − b₁) del mayor u
    """
    exigir(validar_malla_creciente("u_grid", list(u_grid), minimo_puntos=5))
    if not _es_geometrica(u_grid) or min(u_grid) <= 1:
        raise ParametrosInvalidosError("u_grid debe ser geométrica con u > 1")

    def evaluar(u: float) -> Tuple[float, float, float]:
        b1 = marginal_quantile(radial, model, "X", u, cfg)
        b2 = marginal_quantile(radial, model, "Y", u, cfg)
        conjunta = quadrature_joint_thresholds(radial, model, b1, b2, cfg)
        logger.info("u=%g: b1=%.8g b2=%.8g S_u=%.6e", u, b1, b2, conjunta.value)
        return b1, b2, conjunta.value

    with ThreadPoolExecutor(max_workers=cfg.threads) as ejecutor:
        filas = list(ejecutor.map(evaluar, [float(u) for u in u_grid]))

    resultado = estimate_eta_regression(list(u_grid), [f[2] for f in filas])
    b1, b2, _ = filas[-1]
    resultado.brecha = float(radial.scaling_w(b2)) * (b2 - b1)
    return resultado


def tail_dependence_l(
    radial: RadialLaw, model: Modelo, s: float, t: float, u: float, cfg: OracleConfig = OracleConfig()
) -> float:
    """
    l(s, t) a u finito: u·P(X > b₁(u/s), Y > b₂(u/t))/min(s, t)
    """
    exigir(validar_positivo("s", s), validar_positivo("t", t), validar_positivo("u", u))
    if u / s <= 1 or u / t <= 1:
        raise ParametrosInvalidosError("tail_dependence_l requiere u > max(s, t)")
    b1 = marginal_quantile(radial, model, "X", u / s, cfg)
    b2 = marginal_quantile(radial, model, "Y", u / t, cfg)
    conjunta = quadrature_joint_thresholds(radial, model, b1, b2, cfg)
    return float(u) * conjunta.value / min(float(s), float(t))
