"""
Oráculos de referencia para probabilidades de cola a x finito
Integral exacta de la mezcla por cuadratura y Monte Carlo condicionado
(Rao-Blackwell o indicador) con flujos aleatorios deterministas por bloque
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from scipy.optimize import brentq

from mixturas.angular_models import AngularModelA
from mixturas.asymptotics import TailEstimate
from mixturas.functional_models import FunctionalModelB
from mixturas.radial_laws import RadialLaw
from utils.calculos import bordes_paneles, integrar_gauss_adaptativo
from utils.errores import ErrorNumerico, ParametrosInvalidosError
from utils.validaciones import exigir, validar_malla_creciente, validar_positivo, validar_rango

logger = logging.getLogger(__name__)

Modelo = Union[AngularModelA, FunctionalModelB]


@dataclass(frozen=True)
class OracleConfig:
    """
    Parámetros de los oráculos

    Attributes:
        rel_tol (float): Tolerancia relativa de la cuadratura, en (0, 1e-2]
        n_samples (int): Muestras Monte Carlo, ≥ 1000
        seed (int): Semilla maestra
        chunks (int): Bloques con flujo aleatorio propio
        threads (int): Hilos que procesan los bloques
    """

    rel_tol: float = 1e-8
    n_samples: int = 100_000
    seed: int = 20240101
    chunks: int = 8
    threads: int = 1

    def __post_init__(self):
        exigir(validar_rango("rel_tol", self.rel_tol, 0.0, 1e-2, incluir_maximo=True))
        if int(self.n_samples) < 1000:
            raise ParametrosInvalidosError(f"n_samples debe ser ≥ 1000 (se recibió {self.n_samples})")
        if int(self.chunks) < 1 or int(self.threads) < 1:
            raise ParametrosInvalidosError("chunks y threads deben ser ≥ 1")
        if int(self.chunks) > int(self.n_samples):
            raise ParametrosInvalidosError("chunks no puede superar n_samples")


# ----------------------------------------------------------------------
# Umbrales y probabilidad condicional
# ----------------------------------------------------------------------
def umbrales(radial: RadialLaw, model: Modelo, a: float, delta: float, eta: float, x: float) -> Tuple[float, float]:
    """
    Umbrales (x(1 + δ/v), a·x(1 + η/v)) con v = v(x) en el modelo A y
    v = v(αx) en el modelo B
    """
    exigir(
        validar_rango("a", a, 0.0, 1.0, incluir_maximo=True),
        validar_positivo("x", x),
        validar_positivo("delta", delta, estricto=False),
        validar_positivo("eta", eta, estricto=False),
    )
    if isinstance(model, FunctionalModelB):
        v = float(radial.scaling_v(model.solve_alpha(a).alpha * x))
    else:
        v = float(radial.scaling_v(x))
    return x * (1.0 + delta / v), a * x * (1.0 + eta / v)


def condicional_conjunta(model: Modelo, x1: float, y1: float) -> Tuple[Callable[[np.ndarray], np.ndarray], float]:
    """q(r) = P(rU₁ > x₁, rU₂ > y₁) vectorizada y el radio mínimo con q > 0."""
    if isinstance(model, FunctionalModelB):
        return (lambda r: model.probabilidad_condicional(x1, y1, r)), model.radio_minimo(x1, y1)
    return (lambda r: model.joint_tail(x1 / r, y1 / r)), max(x1, y1)


def _condicional_marginal(model: Modelo, which: str, x: float) -> Tuple[Callable[[np.ndarray], np.ndarray], float]:
    if which not in ("X", "Y"):
        raise ParametrosInvalidosError(f"which debe ser 'X' o 'Y' (se recibió {which})")
    if isinstance(model, FunctionalModelB):
        return (lambda r: model.probabilidad_marginal_condicional(which, x, r)), x / model.maximo_angular(which)
    if which == "X":
        return (lambda r: model.joint_tail(x / np.asarray(r, dtype=float), 0.0)), x
    return (lambda r: model.joint_tail(0.0, x / np.asarray(r, dtype=float))), x


# ----------------------------------------------------------------------
# Cuadratura
# ----------------------------------------------------------------------
def _integrar_mezcla(
    radial: RadialLaw, condicional: Callable[[np.ndarray], np.ndarray], r0: float, rel_tol: float
) -> TailEstimate:
    """
    p = F̄(r₀)·∫ q(r(s))·f(r(s))/F̄(r₀)·r₀/v₀ ds con r(s) = r₀(1 + s/v₀)

    El extremo s_max deja una masa radial F̄(r(s_max))/F̄(r₀) por debajo de
    rel_tol·I; si no se alcanza tras varios intentos se informa el valor parcial.
    """
    if not math.isfinite(r0):
        return TailEstimate(log_value=-math.inf, method="quadrature", error=0.0, components={"log_F": -math.inf})
    log_f0 = float(radial.log_survival(np.asarray(r0)))
    if not math.isfinite(log_f0):
        raise ErrorNumerico(f"ln F̄({r0:.6g}) no es finito; el umbral excede el rango de {radial.label}")
    v0 = float(radial.scaling_v(r0))
    escala = r0 / v0

    def integrando(s: np.ndarray) -> np.ndarray:
        r = r0 * (1.0 + s / v0)
        with np.errstate(under="ignore"):
            return condicional(r) * np.exp(radial.log_density(r) - log_f0) * escala

    masa_resto = rel_tol * 1e-2
    valor = cota = 0.0
    for _ in range(6):
        r_max = float(radial.sample_conditional(r0, masa_resto))
        s_max = (r_max / r0 - 1.0) * v0
        if s_max <= 0:
            raise ErrorNumerico(f"Truncamiento degenerado en r₀={r0:.6g}")
        valor, cota = integrar_gauss_adaptativo(integrando, bordes_paneles(0.0, s_max), tol_rel=rel_tol * 0.1)
        if valor > 0 and masa_resto <= rel_tol * valor:
            break
        if valor <= 0:
            return TailEstimate(log_value=-math.inf, method="quadrature", error=0.0, components={"log_F": -math.inf})
        masa_resto = max(rel_tol * valor * 1e-2, 1e-300)
    else:
        raise ErrorNumerico("La cota de truncamiento no se alcanzó en la cuadratura de la mezcla", cota=valor)

    error_relativo = (cota + masa_resto) / valor
    logger.debug("Cuadratura mezcla r0=%.6g s_max=%.4g I=%.10g err_rel=%.2e", r0, s_max, valor, error_relativo)
    return TailEstimate(
        log_value=log_f0 + math.log(valor),
        method="quadrature",
        error=error_relativo,
        components={"log_F": log_f0, "log_integral": math.log(valor)},
    )


def quadrature_joint_tail(
    radial: RadialLaw,
    model: Modelo,
    a: float,
    delta: float,
    eta: float,
    x: float,
    cfg: OracleConfig = OracleConfig(),
) -> TailEstimate:
    """
    Probabilidad conjunta exacta ∫ q(r) dF(r) por cuadratura adaptativa

    Args:
        radial (RadialLaw): Ley de R
        model (AngularModelA | FunctionalModelB): Ley de (U₁, U₂)
        a (float): Nivel en (0, 1]
        delta (float): Desplazamiento de X
        eta (float): Desplazamiento de Y
        x (float): Umbral
        cfg (OracleConfig): Tolerancias

    Returns:
        TailEstimate: Método "quadrature", error = cota relativa

    Raises:
        ErrorNumerico: Si no se alcanza la cota de truncamiento.
    """
    x1, y1 = umbrales(radial, model, a, delta, eta, x)
    return quadrature_joint_thresholds(radial, model, x1, y1, cfg)


def quadrature_joint_thresholds(
    radial: RadialLaw, model: Modelo, x1: float, y1: float, cfg: OracleConfig = OracleConfig()
) -> TailEstimate:
    """P(X > x₁, Y > y₁) para umbrales arbitrarios x₁ > 0, y₁ ≥ 0."""
    exigir(validar_positivo("x1", x1), validar_positivo("y1", y1, estricto=False))
    condicional, r0 = condicional_conjunta(model, float(x1), float(y1))
    return _integrar_mezcla(radial, condicional, r0, cfg.rel_tol)


def quadrature_marginal_tail(
    radial: RadialLaw, model: Modelo, which: str, x: float, cfg: OracleConfig = OracleConfig()
) -> TailEstimate:
    """P(X > x) o P(Y > x) exactas por la misma cuadratura de mezcla."""
    exigir(validar_positivo("x", x))
    condicional, r0 = _condicional_marginal(model, which, float(x))
    return _integrar_mezcla(radial, condicional, r0, cfg.rel_tol)


def marginal_quantile(
    radial: RadialLaw, model: Modelo, which: str, u: float, cfg: OracleConfig = OracleConfig()
) -> float:
    """
    b_i(u) con P(X_i > b) = 1/u, por Brent sobre la cola marginal exacta

    Raises:
        ParametrosInvalidosError: Si u ≤ 1.
        ErrorNumerico: Si no se encuentra corchete.
    """
    if not (u > 1):
        raise ParametrosInvalidosError("marginal_quantile requiere u > 1")
    objetivo = -math.log(u)

    def diferencia(b: float) -> float:
        return quadrature_marginal_tail(radial, model, which, b, cfg).log_value - objetivo

    # P(R·U > b) ≤ F̄(b): el cuantil radial acota por arriba
    superior = 1.01 * float(radial.quantile_b(u))
    inferior = 0.5 * superior
    while diferencia(inferior) < 0:
        superior, inferior = inferior, 0.5 * inferior
        if inferior < 1e-12:
            raise ErrorNumerico(f"Sin corchete para el cuantil marginal de {which} en u={u:g}")
    return brentq(diferencia, inferior, superior, xtol=1e-14, rtol=1e-11, maxiter=200)


# ----------------------------------------------------------------------
# Monte Carlo
# ----------------------------------------------------------------------
def generador_bloque(seed: int, bloque: int) -> np.random.Generator:
    """Flujo Philox con semilla (seed, bloque); independiente del número de hilos."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), int(bloque)])))


def tamanos_bloques(n: int, bloques: int) -> Sequence[int]:
    base, resto = divmod(int(n), int(bloques))
    return [base + (1 if k < resto else 0) for k in range(int(bloques))]


def muestras_angulares(model: Modelo, rng: np.random.Generator, n: int) -> Tuple[np.ndarray, np.ndarray]:
    if isinstance(model, FunctionalModelB):
        return model.sample_functional(rng, n)
    return model.sample_angular(rng, n)


def mc_joint_tail(
    radial: RadialLaw,
    model: Modelo,
    a: float,
    delta: float,
    eta: float,
    x: float,
    cfg: OracleConfig = OracleConfig(),
    metodo: str = "rao_blackwell",
) -> TailEstimate:
    """
    Monte Carlo condicionado a R > r₀

    Rao-Blackwell: p̂ = F̄(r₀)·mean q(r̃ᵢ), r̃ᵢ ~ R | R > r₀. Indicador:
    p̂ = F̄(r₀)·mean 1{r̃ᵢU₁ > x₁, r̃ᵢU₂ > y₁} con (U₁, U₂) muestreados.
    Cada bloque k usa Philox(SeedSequence([seed, k])) y los bloques se
    reducen en orden fijo.

    Returns:
        TailEstimate: Método "monte_carlo", error = error estándar relativo

    Raises:
        ErrorNumerico: Si ninguna muestra aporta.
    """
    if metodo not in ("rao_blackwell", "indicador"):
        raise ParametrosInvalidosError(f"Método MC desconocido: {metodo}")
    x1, y1 = umbrales(radial, model, a, delta, eta, x)
    condicional, r0 = condicional_conjunta(model, x1, y1)
    if not math.isfinite(r0):
        raise ErrorNumerico("Cero muestras efectivas: el evento conjunto es imposible")
    log_f0 = float(radial.log_survival(np.asarray(r0)))

    def bloque(k_n: Tuple[int, int]) -> Tuple[float, float, int]:
        k, n = k_n
        rng = generador_bloque(cfg.seed, k)
        r = radial.sample_conditional(r0, 1.0 - rng.random(n))
        if metodo == "rao_blackwell":
            valores = np.asarray(condicional(r), dtype=float)
        else:
            u1, u2 = muestras_angulares(model, rng, n)
            valores = ((r * u1 > x1) & (r * u2 > y1)).astype(float)
        return math.fsum(valores), math.fsum(valores * valores), n

    tareas = list(enumerate(tamanos_bloques(cfg.n_samples, cfg.chunks)))
    with ThreadPoolExecutor(max_workers=cfg.threads) as ejecutor:
        parciales = list(ejecutor.map(bloque, tareas))

    suma = math.fsum(p[0] for p in parciales)
    suma_cuadrados = math.fsum(p[1] for p in parciales)
    n = sum(p[2] for p in parciales)
    media = suma / n
    if not media > 0:
        raise ErrorNumerico(f"Cero muestras efectivas en {n} simulaciones ({metodo})")
    varianza = max(suma_cuadrados / n - media * media, 0.0) * n / (n - 1)
    error_relativo = math.sqrt(varianza / n) / media
    logger.debug("MC %s n=%d media=%.6e err_rel=%.3e", metodo, n, media, error_relativo)
    return TailEstimate(
        log_value=log_f0 + math.log(media),
        method="monte_carlo",
        error=error_relativo,
        components={"log_F": log_f0, "log_media": math.log(media)},
    )


# ----------------------------------------------------------------------
# Tablas de convergencia
# ----------------------------------------------------------------------
def convergence_table(
    approx: Callable[[float], TailEstimate],
    oracle: Callable[[float], TailEstimate],
    x_grid: Sequence[float],
) -> pd.DataFrame:
    """
    Razones aproximación/oráculo sobre una malla de umbrales

    Args:
        approx (callable): x ↦ TailEstimate asintótica
        oracle (callable): x ↦ TailEstimate de referencia
        x_grid (sequence): Malla creciente con al menos 3 puntos

    Returns:
        pd.DataFrame: Columnas x, log10_aproximacion, log10_oracle, razon,
            desviacion, error_oracle; attrs["tendencia_ok"] indica si
            |razón − 1| no crece en los últimos 3 puntos
    """
    exigir(validar_malla_creciente("x_grid", list(x_grid), minimo_puntos=3))
    filas = []
    for x in x_grid:
        aproximacion = approx(float(x))
        try:
            referencia = oracle(float(x))
        except ErrorNumerico as exc:
            logger.warning("Oráculo fallido en x=%g: %s", x, exc)
            filas.append(
                {
                    "x": float(x),
                    "log10_aproximacion": aproximacion.log10_value,
                    "log10_oracle": math.nan,
                    "razon": math.nan,
                    "desviacion": math.nan,
                    "error_oracle": math.nan,
                }
            )
            continue
        razon = math.exp(aproximacion.log_value - referencia.log_value)
        filas.append(
            {
                "x": float(x),
                "log10_aproximacion": aproximacion.log10_value,
                "log10_oracle": referencia.log10_value,
                "razon": razon,
                "desviacion": abs(razon - 1.0),
                "error_oracle": referencia.error if referencia.error is not None else math.nan,
            }
        )
        logger.info("x=%g razón=%.6f", x, razon)

    tabla = pd.DataFrame(filas)
    ultimas = tabla["desviacion"].to_numpy()[-3:]
    tendencia = bool(np.all(np.isfinite(ultimas)) and np.all(np.diff(ultimas) <= 0))
    if not tendencia:
        logger.warning("La desviación |razón − 1| no decrece en los últimos puntos: %s", ultimas)
    tabla.attrs["tendencia_ok"] = tendencia
    return tabla
