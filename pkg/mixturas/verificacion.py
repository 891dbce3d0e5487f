"""
Batería de verificaciones de identidades y oráculos
Cada verificación devuelve (nombre, aprobada, detalle) con su tolerancia
"""
import logging
import math
from typing import Callable, List, Tuple

import numpy as np
from scipy.stats import norm

from mixturas.angular_models import FGM, DegenerateAngular, MinDominated
from mixturas.asymptotics import elliptical_closed_form, j_integral, lp_closed_form, model_b_approx, theorem1_approx
from mixturas.dependence import (
    empirical_eta,
    excess_empirical,
    excess_limit_rates,
    fgm_s_limit,
    residual_index_model_b,
    tail_dependence_l,
)
from mixturas.functional_models import EllipticalModel, LpModel
from mixturas.oracle import OracleConfig, convergence_table, mc_joint_tail, quadrature_joint_tail
from mixturas.radial_laws import Chi, LogNormal, WeibullTail
from utils.calculos import funcion_gamma
from utils.errores import ErrorCalculo

logger = logging.getLogger(__name__)

Resultado = Tuple[str, bool, str]

MALLA_TENDENCIA = (4.0, 6.0, 8.0, 10.0)
MALLA_U = (1e2, 1e3, 1e4, 1e5, 1e6)


def _identidad_j00() -> Resultado:
    peor = 0.0
    modelos = [(DegenerateAngular(), 0.0)] + [(MinDominated(g), g) for g in (0.5, 1.0, 2.0)]
    for modelo, gamma in modelos:
        peor = max(peor, abs(j_integral(modelo, 1.0, 0.0, 0.0) - funcion_gamma(gamma + 1.0)))
    return "J_00 = Γ(γ+1)", peor <= 1e-8, f"máx |dif| = {peor:.2e}"


def _traslacion_j() -> Resultado:
    peor = 0.0
    for modelo in (MinDominated(1.0), FGM(0.5, 1.0, 1.0)):
        for delta in (0.0, 0.5, 1.0):
            for eta in (0.0, 0.25 * delta, delta):
                izquierda = j_integral(modelo, 1.0, delta, eta)
                derecha = math.exp(-delta) * j_integral(modelo, 1.0, 0.0, eta - delta)
                peor = max(peor, abs(izquierda - derecha))
    return "J_δη = e^(−δ) J_0,η−δ", peor <= 1e-8, f"máx |dif| = {peor:.2e}"


def _reducciones_cerradas() -> Resultado:
    radial = Chi(2)
    peor = 0.0
    for rho in (0.0, 0.3, 0.5):
        modelo = EllipticalModel(rho)
        for a in (0.6, 0.8, 1.0):
            cerrada = elliptical_closed_form(rho, a, radial, 6.0).log_value
            general = model_b_approx(radial, modelo, a, 6.0).log_value
            peor = max(peor, abs(math.expm1(cerrada - general)))
    for p in (1.0, 2.0, 3.0):
        modelo = LpModel(p)
        for a in (0.5, 0.8, 1.0):
            cerrada = lp_closed_form(modelo, a, radial, 6.0).log_value
            general = model_b_approx(radial, modelo, a, 6.0).log_value
            peor = max(peor, abs(math.expm1(cerrada - general)))
    return "formas cerradas = model_b_approx", peor <= 1e-10, f"máx dif relativa = {peor:.2e}"


def _homogeneidad_fgm(semilla: int) -> Resultado:
    rng = np.random.default_rng(semilla)
    peor = 0.0
    for x, y, c, g1, g2 in zip(*(rng.uniform(0.05, 1.0, 20) for _ in range(3)), *(rng.uniform(0.0, 3.0, 20) for _ in range(2))):
        peor = max(peor, abs(fgm_s_limit(c * x, c * y, g1, g2) - c * fgm_s_limit(x, y, g1, g2)))
    return "S(cx, cy) = c·S(x, y)", peor <= 1e-8, f"máx |dif| = {peor:.2e}"


def _tasas_elipticas() -> Resultado:
    limite = excess_limit_rates(EllipticalModel(0.5), 1.0)
    esperado = 1.0 / math.sqrt(0.75) / 2.0
    dif = max(abs(limite.rate_x - esperado), abs(limite.rate_y - esperado))
    return "D = D* = α/2 (ρ=0.5, a=1)", dif <= 1e-10, f"D={limite.rate_x:.12g} D*={limite.rate_y:.12g}"


def _indice_residual() -> Resultado:
    peor = 0.0
    for rho in (0.0, 0.5):
        eta = residual_index_model_b(EllipticalModel(rho), Chi(2)).eta
        peor = max(peor, abs(eta - (1.0 + rho) / 2.0))
    return "η = (1+ρ)/2 elíptico con Chi(2)", peor <= 1e-9, f"máx |dif| = {peor:.2e}"


def _oraculo_degenerado() -> Resultado:
    radial = Chi(2)
    estimacion = quadrature_joint_tail(radial, DegenerateAngular(), 1.0, 0.0, 0.0, 5.0)
    dif = abs(math.expm1(estimacion.log_value - float(radial.log_survival(5.0))))
    return "oráculo degenerado = F̄(x)", dif <= 1e-8, f"dif relativa = {dif:.2e}"


def _oraculo_min_dominado() -> Resultado:
    estimacion = quadrature_joint_tail(Chi(2), MinDominated(1.0), 1.0, 0.0, 0.0, 2.0)
    esperado = math.exp(-2.0) - 2.0 * math.sqrt(2.0 * math.pi) * float(norm.sf(2.0))
    dif = abs(estimacion.value / esperado - 1.0)
    return "oráculo MinDominated x=2", dif <= 1e-7, f"p={estimacion.value:.10g} esperado={esperado:.10g}"


def _acuerdo_oraculos(semilla: int, hilos: int) -> Resultado:
    cfg = OracleConfig(n_samples=200_000, seed=semilla, chunks=8, threads=hilos)
    cuadratura = quadrature_joint_tail(Chi(2), FGM(0.5, 1.0, 1.0), 1.0, 0.0, 0.0, 4.0, cfg)
    mc = mc_joint_tail(Chi(2), FGM(0.5, 1.0, 1.0), 1.0, 0.0, 0.0, 4.0, cfg)
    desvio = abs(mc.value - cuadratura.value) / (mc.error * mc.value)
    repetido = mc_joint_tail(Chi(2), FGM(0.5, 1.0, 1.0), 1.0, 0.0, 0.0, 4.0, cfg)
    ok = desvio <= 3.0 and repetido.log_value == mc.log_value
    return "cuadratura vs Monte Carlo (FGM, x=4)", ok, f"{desvio:.2f} errores estándar; repetible={repetido.log_value == mc.log_value}"


def _tendencia_teorema1() -> Resultado:
    radial, modelo = Chi(2), MinDominated(1.0)
    tabla = convergence_table(
        lambda x: theorem1_approx(radial, modelo, 1.0, 0.0, 0.0, x),
        lambda x: quadrature_joint_tail(radial, modelo, 1.0, 0.0, 0.0, x),
        MALLA_TENDENCIA,
    )
    ok = bool(tabla.attrs["tendencia_ok"]) and float(tabla["desviacion"].iloc[-1]) <= 0.20
    return "tendencia Teorema de aproximación (MinDominated)", ok, f"desviaciones = {tabla['desviacion'].round(4).tolist()}"


def _estrictamente_decreciente(tabla) -> bool:
    desviaciones = tabla["desviacion"].to_numpy(dtype=float)
    return bool(np.all(np.isfinite(desviaciones)) and np.all(np.diff(desviaciones) < 0))


def _convergencia_eliptica() -> Resultado:
    radial, rho, a = Chi(2), 0.3, 0.8
    modelo = EllipticalModel(rho)
    tabla = convergence_table(
        lambda x: elliptical_closed_form(rho, a, radial, x),
        lambda x: quadrature_joint_tail(radial, modelo, a, 0.0, 0.0, x),
        MALLA_TENDENCIA,
    )
    ok = _estrictamente_decreciente(tabla) and float(tabla["desviacion"].iloc[-1]) <= 0.15
    return "convergencia elíptica (ρ=0.3, a=0.8)", ok, f"desviaciones = {tabla['desviacion'].round(4).tolist()}"


def _tendencia_fgm() -> Resultado:
    radial, modelo = Chi(2), FGM(0.5, 1.0, 1.0)
    tabla = convergence_table(
        lambda x: theorem1_approx(radial, modelo, 1.0, 0.0, 0.0, x),
        lambda x: quadrature_joint_tail(radial, modelo, 1.0, 0.0, 0.0, x),
        MALLA_TENDENCIA,
    )
    ok = _estrictamente_decreciente(tabla) and float(tabla["desviacion"].iloc[-1]) <= 0.20
    return "tendencia modelo angular (FGM)", ok, f"desviaciones = {tabla['desviacion'].round(4).tolist()}"


def _excesos_elipticos(semilla: int, hilos: int) -> Resultado:
    cfg = OracleConfig(n_samples=1_000_000, seed=semilla, chunks=8, threads=hilos)
    radial, modelo = Chi(2), EllipticalModel(0.5)
    por_umbral = {x: excess_empirical(radial, modelo, 1.0, x, cfg) for x in (5.0, 8.0, 10.0)}
    medio, inicial, final = por_umbral[8.0], por_umbral[5.0], por_umbral[10.0]
    ok = (
        medio.n_aceptados >= 1000
        and max(medio.ks_x, medio.ks_y) <= 0.05
        and abs(medio.correlacion) <= 0.05
        and final.ks_x < inicial.ks_x
        and final.ks_y < inicial.ks_y
    )
    detalle = "; ".join(
        f"x={x:g}: n={r.n_aceptados} KS=({r.ks_x:.3f}, {r.ks_y:.3f}) corr={r.correlacion:.3f}"
        for x, r in por_umbral.items()
    )
    return "excesos elípticos (ρ=0.5, a=1)", ok, detalle


def _independencia_asintotica() -> Resultado:
    radial = Chi(2)
    u_grid = (1e2, 1e3, 1e4)
    modelos = {
        "elíptico": EllipticalModel(0.5),
        "FGM": FGM(0.5, 1.0, 1.0),
        "MinDominated": MinDominated(1.0),
    }
    valores = {nombre: [tail_dependence_l(radial, m, 1.0, 1.0, u) for u in u_grid] for nombre, m in modelos.items()}
    ok = (
        bool(np.all(np.diff(valores["elíptico"]) < 0))
        and bool(np.all(np.diff(valores["FGM"]) < 0))
        and min(valores["MinDominated"]) > 0.5
    )
    detalle = "; ".join(f"{nombre}: {np.round(v, 4).tolist()}" for nombre, v in valores.items())
    return "l(1,1) según u", ok, detalle


def _eta_empirico(hilos: int) -> Resultado:
    cfg = OracleConfig(rel_tol=1e-9, threads=hilos)
    peor = 0.0
    for rho in (0.0, 0.5):
        estimado = empirical_eta(Chi(2), EllipticalModel(rho), MALLA_U, cfg).eta
        peor = max(peor, abs(estimado - (1.0 + rho) / 2.0))
    return "η empírico ≈ (1+ρ)/2", peor <= 0.05, f"máx |dif| = {peor:.4f}"


def _ida_y_vuelta_cuantil() -> Resultado:
    x = np.array([0.5, 1.0, 3.0, 6.0, 10.0])
    peor = 0.0
    for radial in (WeibullTail(0.5, 2.0), WeibullTail(2.0, 0.7), Chi(2), Chi(5), LogNormal(0.0, 1.0)):
        supervivencia = np.asarray(radial.survival(x), dtype=float)
        vivas = supervivencia > 0
        reconstruida = np.asarray(radial.survival(radial.quantile_b(1.0 / supervivencia[vivas])), dtype=float)
        peor = max(peor, float(np.max(np.abs(reconstruida / supervivencia[vivas] - 1.0))))
    return "F̄(b(1/F̄(x))) = F̄(x)", peor <= 1e-9, f"máx dif relativa = {peor:.2e}"


def ejecutar_verificaciones(semilla: int = 20240101, hilos: int = 1) -> List[Resultado]:
    """
    Ejecuta todas las verificaciones; un error de cálculo cuenta como fallo

    Args:
        semilla (int): Semilla de las verificaciones aleatorias
        hilos (int): Hilos para las simulaciones y la η empírica

    Returns:
        list: Tuplas (nombre, aprobada, detalle) en orden fijo
    """
    verificaciones: List[Tuple[str, Callable[[], Resultado]]] = [
        ("J_00", _identidad_j00),
        ("traslación J", _traslacion_j),
        ("reducciones", _reducciones_cerradas),
        ("homogeneidad S", lambda: _homogeneidad_fgm(semilla)),
        ("tasas", _tasas_elipticas),
        ("η cerrado", _indice_residual),
        ("oráculo degenerado", _oraculo_degenerado),
        ("oráculo MinDominated", _oraculo_min_dominado),
        ("oráculos", lambda: _acuerdo_oraculos(semilla, hilos)),
        ("tendencia", _tendencia_teorema1),
        ("convergencia elíptica", _convergencia_eliptica),
        ("tendencia FGM", _tendencia_fgm),
        ("excesos", lambda: _excesos_elipticos(semilla, hilos)),
        ("l(1,1)", _independencia_asintotica),
        ("η empírico", lambda: _eta_empirico(hilos)),
        ("cuantil", _ida_y_vuelta_cuantil),
    ]
    resultados = []
    for nombre, verificacion in verificaciones:
        try:
            resultado = verificacion()
        except ErrorCalculo as exc:
            resultado = (nombre, False, f"{type(exc).__name__}: {exc}")
        logger.info("%s: %s", "OK" if resultado[1] else "FALLO", resultado[0])
        resultados.append(resultado)
    return resultados
