"""
Ejecutor de experimentos por línea de comandos

Subcomandos approx, compare, excess, eta y verify sobre un experimento TOML;
los resultados salen como CSV con una línea de comentario que registra el
hash de la configuración y la semilla.
"""
import argparse
import logging
import math
import sys
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Union

import pandas as pd

from mixturas.angular_models import FGM, AngularModelA, crear_modelo_angular
from mixturas.asymptotics import (
    TailEstimate,
    elliptical_closed_form,
    lp_closed_form,
    marginal_tail_approx,
    model_b_approx,
    model_b_excess_approx,
    theorem1_approx,
)
from mixturas.dependence import (
    empirical_eta,
    excess_empirical,
    residual_index_model_b,
    theorem1_excess_limit,
)
from mixturas.functional_models import (
    EllipticalModel,
    FunctionalModelB,
    LeyPotenciaBeta,
    LpModel,
    crear_modelo_funcional,
)
from mixturas.oracle import OracleConfig, convergence_table, mc_joint_tail, quadrature_joint_tail
from mixturas.radial_laws import RadialLaw, crear_ley_radial
from mixturas.verificacion import ejecutar_verificaciones
from utils.errores import ErrorCalculo, ErrorNumerico, ModeloNoSoportadoError, ParametrosInvalidosError
from utils.file_loader import (
    ConfigLoader,
    ErrorCargaArchivo,
    ErrorConfiguracion,
    ValoresEntorno,
    hash_configuracion,
    leer_entorno,
    resolver,
)
from utils.formato import escribir_csv, formatear_componentes, generar_resumen_verificacion

logger = logging.getLogger(__name__)

SALIDA_OK = 0
SALIDA_CONFIGURACION = 2
SALIDA_NUMERICA = 3
SALIDA_TENDENCIA = 4

SEMILLA_POR_DEFECTO = 20240101
EXCESO_S = (0.0, 0.5, 1.0, 2.0)


@dataclass
class ExperimentConfig:
    """
    Experimento validado y listo para despachar

    Attributes:
        radial (RadialLaw): Ley de R
        modelo (AngularModelA | FunctionalModelB): Ley de (U₁, U₂)
        a (float): Nivel en (0, 1]
        delta (float): Desplazamiento de X
        eta (float): Desplazamiento de Y
        x_grid (list): Umbrales
        oracle (OracleConfig): Parámetros de los oráculos
        metodo_oraculo (str): "quadrature" o "monte_carlo"
        u_grid (list): Períodos para η empírico
        excess_x_grid (list): Umbrales para excesos
        hash_config (str): SHA-256 de la configuración
    """

    radial: RadialLaw
    modelo: Union[AngularModelA, FunctionalModelB]
    a: float
    delta: float
    eta: float
    x_grid: List[float]
    oracle: OracleConfig
    metodo_oraculo: str = "quadrature"
    u_grid: List[float] = field(default_factory=list)
    excess_x_grid: List[float] = field(default_factory=list)
    excess_oracle: Optional[OracleConfig] = None
    hash_config: str = ""

    @property
    def funcional(self) -> bool:
        return isinstance(self.modelo, FunctionalModelB)

    @property
    def semilla(self) -> int:
        return self.oracle.seed


def _parametros(tabla: Dict[str, Any], excluir: Sequence[str]) -> Dict[str, Any]:
    return {clave: valor for clave, valor in tabla.items() if clave not in excluir}


def construir_experimento(
    config: Dict[str, Any], args: argparse.Namespace, entorno: ValoresEntorno
) -> ExperimentConfig:
    """
    Arma el experimento con la precedencia bandera > TOML > entorno > defecto

    Raises:
        ErrorConfiguracion: Si falta un valor o tiene tipo inválido.
        ParametrosInvalidosError: Si un parámetro viola las precondiciones.
    """
    radial_tabla = config["radial"]
    radial = crear_ley_radial(radial_tabla["family"], **_parametros(radial_tabla, ("family",)))
    if "angular" in config:
        tabla = config["angular"]
        modelo = crear_modelo_angular(tabla["model"], **_parametros(tabla, ("model",)))
    else:
        tabla = config["functional"]
        modelo = crear_modelo_funcional(tabla["model"], **_parametros(tabla, ("model",)))

    oraculo = config.get("oracle", {})
    try:
        semilla = int(resolver(args.seed, oraculo.get("seed"), entorno.semilla, SEMILLA_POR_DEFECTO))
        hilos = int(resolver(args.threads, oraculo.get("threads"), entorno.hilos, 1))
        muestras = int(resolver(None, oraculo.get("n_samples"), entorno.muestras, 100_000))
        cfg = OracleConfig(
            rel_tol=float(resolver(None, oraculo.get("rel_tol"), entorno.tol_rel, 1e-8)),
            n_samples=muestras,
            seed=semilla,
            chunks=int(oraculo.get("chunks", 8)),
            threads=hilos,
        )
        exceso = config.get("excess", {})
        cfg_exceso = OracleConfig(
            rel_tol=cfg.rel_tol,
            n_samples=int(exceso.get("n_samples", muestras)),
            seed=semilla,
            chunks=cfg.chunks,
            threads=hilos,
        )
        x_grid = [float(x) for x in config.get("x_grid", [])]
        if not x_grid:
            raise ErrorConfiguracion("El experimento requiere x_grid no vacío")
        return ExperimentConfig(
            radial=radial,
            modelo=modelo,
            a=float(config.get("a", 1.0)),
            delta=float(config.get("delta", 0.0)),
            eta=float(config.get("eta", 0.0)),
            x_grid=x_grid,
            oracle=cfg,
            metodo_oraculo=oraculo.get("method", "quadrature"),
            u_grid=[float(u) for u in config.get("residual", {}).get("u_grid", [])],
            excess_x_grid=[float(x) for x in exceso.get("x_grid", [])],
            excess_oracle=cfg_exceso,
            hash_config=hash_configuracion(config),
        )
    except ParametrosInvalidosError:
        raise
    except (TypeError, ValueError, AttributeError) as exc:
        raise ErrorConfiguracion(f"Valor de configuración inválido: {exc}") from exc


# ----------------------------------------------------------------------
# Estimadores del experimento
# ----------------------------------------------------------------------
def _es_elipse_uniforme(modelo: FunctionalModelB) -> bool:
    """Signos simétricos y W ~ PotenciaBeta(2, 1/2, 1/2): (U₁, U₂) uniforme en el círculo."""
    if not isinstance(modelo, EllipticalModel) or not isinstance(modelo.ley_w, LeyPotenciaBeta):
        return False
    return modelo.sign_probs == (0.25, 0.25, 0.25, 0.25) and modelo.ley_w.parametros == (2.0, 0.5, 0.5)


def aproximacion_principal(exp: ExperimentConfig) -> Callable[[float], TailEstimate]:
    """Aproximación conjunta por defecto del experimento como función de x."""
    if not exp.funcional:
        return lambda x: theorem1_approx(exp.radial, exp.modelo, exp.a, exp.delta, exp.eta, x)
    if exp.delta == 0.0 and exp.eta == 0.0:
        return lambda x: model_b_approx(exp.radial, exp.modelo, exp.a, x)
    return lambda x: model_b_excess_approx(exp.radial, exp.modelo, exp.a, exp.delta, exp.eta, x)


def oraculo_principal(exp: ExperimentConfig) -> Callable[[float], TailEstimate]:
    if exp.metodo_oraculo == "monte_carlo":
        return lambda x: mc_joint_tail(exp.radial, exp.modelo, exp.a, exp.delta, exp.eta, x, exp.oracle)
    return lambda x: quadrature_joint_tail(exp.radial, exp.modelo, exp.a, exp.delta, exp.eta, x, exp.oracle)


def _fila(x: float, objetivo: str, estimacion: TailEstimate) -> Dict[str, Any]:
    return {
        "x": x,
        "objetivo": objetivo,
        "method": estimacion.method,
        "value_log10": estimacion.log10_value,
        "error": math.nan if estimacion.error is None else estimacion.error,
        "components": formatear_componentes(estimacion.components),
    }


# ----------------------------------------------------------------------
# Subcomandos
# ----------------------------------------------------------------------
def cmd_approx(exp: ExperimentConfig) -> pd.DataFrame:
    """
    Una fila por (x, fórmula aplicable) con los componentes auditables

    Raises:
        ModeloNoSoportadoError: Si el modelo no trata el nivel a.
    """
    principal = aproximacion_principal(exp)
    filas = []
    for x in exp.x_grid:
        filas.append(_fila(x, "conjunta", principal(x)))
        if exp.funcional:
            modelo = exp.modelo
            if _es_elipse_uniforme(modelo):
                filas.append(
                    _fila(x, "conjunta", elliptical_closed_form(modelo.rho, exp.a, exp.radial, x, exp.delta, exp.eta))
                )
            if isinstance(modelo, LpModel):
                filas.append(_fila(x, "conjunta", lp_closed_form(modelo, exp.a, exp.radial, x, exp.delta, exp.eta)))
            if modelo.rho >= 0:
                for which in ("X", "Y"):
                    filas.append(_fila(x, f"marginal_{which}", marginal_tail_approx(exp.radial, modelo, which, x)))
        logger.info("approx x=%g listo", x)
    return pd.DataFrame(filas, columns=["x", "objetivo", "method", "value_log10", "error", "components"])


def cmd_compare(exp: ExperimentConfig) -> pd.DataFrame:
    """Tabla de convergencia aproximación/oráculo con la bandera de tendencia."""
    tabla = convergence_table(aproximacion_principal(exp), oraculo_principal(exp), exp.x_grid)
    tendencia = bool(tabla.attrs["tendencia_ok"])
    tabla["trend_flag"] = tendencia
    tabla.attrs["tendencia_ok"] = tendencia
    return tabla


def cmd_excess(exp: ExperimentConfig) -> pd.DataFrame:
    """
    Modelo B: KS y correlación de los excesos escalados por umbral.
    Modelo A: supervivencia límite J_{s,t}/J_{0,0} frente al producto de marginales.
    """
    if exp.funcional:
        malla = exp.excess_x_grid or exp.x_grid
        filas = []
        for x in malla:
            resultado = excess_empirical(exp.radial, exp.modelo, exp.a, x, exp.excess_oracle or exp.oracle)
            filas.append(
                {
                    "x": x,
                    "n_aceptados": resultado.n_aceptados,
                    "rate_x": resultado.limite.rate_x,
                    "rate_y": resultado.limite.rate_y,
                    "ks_x": resultado.ks_x,
                    "ks_y": resultado.ks_y,
                    "correlacion": resultado.correlacion,
                }
            )
        return pd.DataFrame(filas)

    supervivencia = theorem1_excess_limit(exp.modelo, exp.a)
    filas = []
    for s in EXCESO_S:
        for t in EXCESO_S:
            conjunta = supervivencia(s, t)
            producto = supervivencia(s, 0.0) * supervivencia(0.0, t)
            filas.append({"s": s, "t": t, "supervivencia": conjunta, "producto": producto, "diferencia": conjunta - producto})
    return pd.DataFrame(filas)


def cmd_eta(exp: ExperimentConfig) -> pd.DataFrame:
    """Fila (eta_closed, eta_empirical, abs_diff) con la pendiente y la brecha b₂ − b₁."""
    if not exp.u_grid:
        raise ErrorConfiguracion("cmd eta requiere la tabla [residual] con u_grid")
    if exp.funcional:
        cerrado = residual_index_model_b(exp.modelo, exp.radial).eta
    elif isinstance(exp.modelo, FGM):
        cerrado = 1.0
    else:
        cerrado = math.nan
    empirico = empirical_eta(exp.radial, exp.modelo, exp.u_grid, exp.oracle)
    return pd.DataFrame(
        [
            {
                "eta_closed": cerrado,
                "eta_empirical": empirico.eta,
                "abs_diff": abs(cerrado - empirico.eta) if math.isfinite(cerrado) else math.nan,
                "pendiente": empirico.pendiente,
                "u_min_usado": empirico.u_usados[0],
                "brecha_b2_b1": empirico.brecha,
            }
        ]
    )


def cmd_verify(semilla: int, hilos: int) -> List:
    return ejecutar_verificaciones(semilla=semilla, hilos=hilos)


COMANDOS = {
    "approx": cmd_approx,
    "compare": cmd_compare,
    "excess": cmd_excess,
    "eta": cmd_eta,
}


# ----------------------------------------------------------------------
# Entrada
# ----------------------------------------------------------------------
def crear_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mixturas",
        description="Colas conjuntas de mixturas de escala: aproximaciones, oráculos y dependencia",
    )
    parser.add_argument("comando", choices=[*COMANDOS, "verify"], help="Subcomando a ejecutar")
    parser.add_argument("--config", help="Experimento TOML")
    parser.add_argument("--seed", type=int, help="Semilla maestra")
    parser.add_argument("--threads", type=int, help="Hilos para Monte Carlo y mallas")
    parser.add_argument("--out", help="Archivo CSV de salida (por defecto stdout)")
    parser.add_argument("--env", help="Archivo .env alternativo")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="Más detalle en stderr")
    return parser


def configurar_logging(verbosidad: int, nivel_entorno: str) -> None:
    if verbosidad >= 2:
        nivel = logging.DEBUG
    elif verbosidad == 1:
        nivel = logging.INFO
    else:
        nivel = getattr(logging, nivel_entorno, logging.WARNING)
    logging.basicConfig(
        level=nivel,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


def _emitir(tabla: pd.DataFrame, exp: ExperimentConfig, destino: Optional[str]) -> None:
    if destino:
        with open(destino, "w", encoding="utf-8", newline="") as archivo:
            escribir_csv(tabla, archivo, exp.hash_config, exp.semilla)
    else:
        escribir_csv(tabla, sys.stdout, exp.hash_config, exp.semilla)


def ejecutar(args: argparse.Namespace, entorno: ValoresEntorno) -> int:
    if args.comando == "verify":
        semilla = int(resolver(args.seed, None, entorno.semilla, SEMILLA_POR_DEFECTO))
        hilos = int(resolver(args.threads, None, entorno.hilos, 1))
        resultados = cmd_verify(semilla, hilos)
        reporte = generar_resumen_verificacion(resultados)
        if args.out:
            with open(args.out, "w", encoding="utf-8", newline="") as archivo:
                archivo.write(reporte)
        else:
            sys.stdout.write(reporte)
        return SALIDA_OK if all(ok for _, ok, _ in resultados) else SALIDA_TENDENCIA

    if not args.config:
        raise ErrorConfiguracion(f"El subcomando {args.comando} requiere --config")
    config = ConfigLoader().cargar_archivo(args.config)
    exp = construir_experimento(config, args, entorno)
    logger.info("Experimento %s con %s y %s", args.comando, exp.radial.label, exp.modelo.label)
    tabla = COMANDOS[args.comando](exp)
    _emitir(tabla, exp, args.out)
    if args.comando == "compare" and not tabla.attrs.get("tendencia_ok", True):
        return SALIDA_TENDENCIA
    return SALIDA_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Punto de entrada; devuelve el código de salida

    0 éxito, 2 configuración o modelo inválido, 3 fallo numérico, 4 tendencia
    o verificación fallida.
    """
    args = crear_parser().parse_args(argv)
    try:
        entorno = leer_entorno(args.env)
    except ErrorConfiguracion as exc:
        configurar_logging(args.verbose, "WARNING")
        logger.error("%s", exc)
        return SALIDA_CONFIGURACION
    configurar_logging(args.verbose, entorno.nivel_log)
    try:
        return ejecutar(args, entorno)
    except ErrorCargaArchivo as exc:
        logger.error("Configuración: %s", exc)
        return SALIDA_CONFIGURACION
    except (ParametrosInvalidosError, ModeloNoSoportadoError) as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return SALIDA_CONFIGURACION
    except ErrorNumerico as exc:
        cota = f" (valor parcial {exc.cota:.6g})" if exc.cota is not None else ""
        logger.error("Fallo numérico: %s%s", exc, cota)
        return SALIDA_NUMERICA
    except ErrorCalculo as exc:
        logger.error("%s", exc)
        return SALIDA_NUMERICA


if __name__ == "__main__":
    sys.exit(main())
