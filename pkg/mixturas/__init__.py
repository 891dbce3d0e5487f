"""
Colas conjuntas de mixturas de escala (X, Y) = (R·U₁, R·U₂)

R en el dominio de atracción de Gumbel, (U₁, U₂) angular (modelo A) o de
dependencia funcional (modelo B); aproximaciones asintóticas, oráculos
exactos y cantidades de dependencia extrema.
"""

from utils.errores import (
    ErrorCalculo,
    ParametrosInvalidosError,
    ModeloNoSoportadoError,
    ErrorNumerico,
)

from mixturas.radial_laws import (
    RadialLaw,
    WeibullTail,
    Chi,
    LogNormal,
    crear_ley_radial,
)

from mixturas.angular_models import (
    LimitData,
    AngularModelA,
    DegenerateAngular,
    MinDominated,
    FGM,
    LinearCombo,
    c_constant,
    crear_modelo_angular,
)

from mixturas.functional_models import (
    LeyW,
    LeyPotenciaBeta,
    LeyPicoPotencia,
    CriticalData,
    FunctionalModelB,
    EllipticalModel,
    LpModel,
    verificar_normalizacion_w,
    crear_modelo_funcional,
)

from mixturas.asymptotics import (
    TailEstimate,
    j_integral,
    theorem1_approx,
    berman_marginal,
    model_b_approx,
    model_b_excess_approx,
    elliptical_closed_form,
    lp_closed_form,
    marginal_tail_approx,
)

from mixturas.oracle import (
    OracleConfig,
    quadrature_joint_tail,
    quadrature_joint_thresholds,
    mc_joint_tail,
    convergence_table,
    quadrature_marginal_tail,
    marginal_quantile,
)

from mixturas.dependence import (
    ExcessLimit,
    ResidualIndex,
    excess_limit_rates,
    excess_limit_survival,
    excess_empirical,
    theorem1_excess_limit,
    fgm_s_limit,
    residual_index_model_b,
    estimate_eta_regression,
    empirical_eta,
    tail_dependence_l,
)

__all__ = [
    # Errores
    "ErrorCalculo",
    "ParametrosInvalidosError",
    "ModeloNoSoportadoError",
    "ErrorNumerico",
    # Leyes radiales
    "RadialLaw",
    "WeibullTail",
    "Chi",
    "LogNormal",
    "crear_ley_radial",
    # Modelo A
    "LimitData",
    "AngularModelA",
    "DegenerateAngular",
    "MinDominated",
    "FGM",
    "LinearCombo",
    "c_constant",
    "crear_modelo_angular",
    # Modelo B
    "LeyW",
    "LeyPotenciaBeta",
    "LeyPicoPotencia",
    "CriticalData",
    "FunctionalModelB",
    "EllipticalModel",
    "LpModel",
    "verificar_normalizacion_w",
    "crear_modelo_funcional",
    # Asintótica
    "TailEstimate",
    "j_integral",
    "theorem1_approx",
    "berman_marginal",
    "model_b_approx",
    "model_b_excess_approx",
    "elliptical_closed_form",
    "lp_closed_form",
    "marginal_tail_approx",
    # Oráculos
    "OracleConfig",
    "quadrature_joint_tail",
    "quadrature_joint_thresholds",
    "mc_joint_tail",
    "convergence_table",
    "quadrature_marginal_tail",
    "marginal_quantile",
    # Dependencia
    "ExcessLimit",
    "ResidualIndex",
    "excess_limit_rates",
    "excess_limit_survival",
    "excess_empirical",
    "theorem1_excess_limit",
    "fgm_s_limit",
    "residual_index_model_b",
    "estimate_eta_regression",
    "empirical_eta",
    "tail_dependence_l",
]
