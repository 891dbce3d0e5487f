"""
Pruebas unitarias para las aproximaciones asintóticas
"""

import math

import pytest

from mixturas.angular_models import FGM, DegenerateAngular, LinearCombo, MinDominated
from mixturas.asymptotics import (
    TailEstimate,
    berman_marginal,
    densidad_en_critico,
    elliptical_closed_form,
    exponente_cola_angular,
    j_integral,
    lp_closed_form,
    marginal_tail_approx,
    model_b_approx,
    model_b_excess_approx,
    theorem1_approx,
)
from mixturas.functional_models import EllipticalModel, LeyPotenciaBeta, LpModel, crear_modelo_funcional
from mixturas.radial_laws import Chi, WeibullTail
from utils.errores import ErrorNumerico, ModeloNoSoportadoError, ParametrosInvalidosError

UNIFORME = LeyPotenciaBeta(1.0, 1.0, 1.0)


class TestTailEstimate:
    """Pruebas para el contenedor de estimaciones"""

    def test_valor_y_log10(self):
        estimacion = TailEstimate(log_value=math.log(1e-5), method="theorem1")
        assert estimacion.value == pytest.approx(1e-5, rel=1e-12)
        assert estimacion.log10_value == pytest.approx(-5.0, rel=1e-12)

    def test_subflujo_representable_en_log(self):
        estimacion = TailEstimate(log_value=-5000.0, method="quadrature")
        assert estimacion.value == 0.0
        assert estimacion.log10_value == pytest.approx(-5000.0 / math.log(10.0))

    def test_metodo_desconocido(self):
        with pytest.raises(ParametrosInvalidosError):
            TailEstimate(log_value=-1.0, method="heuristica")

    def test_log_nan(self):
        with pytest.raises(ErrorNumerico):
            TailEstimate(log_value=math.nan, method="berman")


class TestIntegralJ:
    """Pruebas para j_integral"""

    def test_min_dominated(self):
        assert j_integral(MinDominated(1.0), 1.0, 0.0, 0.0) == pytest.approx(1.0, rel=1e-10)

    def test_normalizacion_gamma(self):
        # J₀₀ = Γ(γ + 1)
        assert j_integral(FGM(0.5, 1.0, 1.0), 1.0, 0.0, 0.0) == pytest.approx(2.0, rel=1e-10)
        assert j_integral(FGM(0.5, 0.5, 1.2), 1.0, 0.0, 0.0) == pytest.approx(math.gamma(2.7), rel=1e-9)
        assert j_integral(MinDominated(2.0), 0.5, 0.0, 0.0) == pytest.approx(2.0, rel=1e-10)

    def test_linear_combo_normalizada(self):
        modelo = LinearCombo(0.5, 0.5, 1.0, 1.0)
        assert j_integral(modelo, 1.0, 0.0, 0.0) == pytest.approx(2.0, rel=1e-8)

    def test_fgm_desplazada(self):
        # ∫₁^∞ s(s − 1)e^(−s) ds = 3/e
        assert j_integral(FGM(0.3, 1.0, 1.0), 1.0, 0.0, 1.0) == pytest.approx(3.0 / math.e, rel=1e-10)

    def test_degenerada(self):
        assert j_integral(DegenerateAngular(), 1.0, 0.5, 2.0) == pytest.approx(math.exp(-2.0), rel=1e-10)
        assert j_integral(DegenerateAngular(), 0.5, 0.5, 2.0) == pytest.approx(math.exp(-0.5), rel=1e-10)

    def test_traslacion(self):
        modelo = FGM(0.5, 1.0, 2.0)
        assert j_integral(modelo, 1.0, 0.3, 0.8) == pytest.approx(
            math.exp(-0.3) * j_integral(modelo, 1.0, 0.0, 0.5), rel=1e-9
        )

    def test_min_dominated_cruce(self):
        # ξ = min(s, 2(s − 1))₊ con cruce en s = 2
        esperado = 2.0 * math.exp(-1.0) - math.exp(-2.0)
        assert j_integral(MinDominated(1.0), 1.0, 0.0, 1.0) == pytest.approx(esperado, rel=1e-10)

    def test_desplazamiento_no_finito(self):
        with pytest.raises(ParametrosInvalidosError):
            j_integral(FGM(0.5, 1.0, 1.0), 1.0, math.inf, 0.0)


class TestTheorem1:
    """Pruebas para theorem1_approx y berman_marginal"""

    def test_degenerada_es_la_supervivencia(self):
        estimacion = theorem1_approx(Chi(2), DegenerateAngular(), 1.0, 0.0, 0.0, 7.0)
        assert estimacion.log_value == pytest.approx(-24.5, rel=1e-12)
        assert estimacion.method == "theorem1"

    def test_fgm_componentes(self):
        estimacion = theorem1_approx(Chi(2), FGM(0.5, 1.0, 1.0), 1.0, 0.0, 0.0, 10.0)
        assert estimacion.components["log_J"] == pytest.approx(math.log(2.0), rel=1e-10)
        assert estimacion.components["log_L"] == pytest.approx(math.log(1.0 + 0.5 * 0.99 ** 2), rel=1e-12)
        assert estimacion.components["log_v_potencia"] == pytest.approx(-2.0 * math.log(100.0))
        assert estimacion.components["log_F"] == pytest.approx(-50.0)
        assert estimacion.log_desde_componentes() == pytest.approx(estimacion.log_value, rel=1e-15)

    def test_umbral_demasiado_chico(self):
        with pytest.raises(ParametrosInvalidosError):
            theorem1_approx(Chi(2), MinDominated(1.0), 1.0, 0.0, 0.0, 0.5)

    def test_desplazamiento_negativo(self):
        with pytest.raises(ParametrosInvalidosError):
            theorem1_approx(Chi(2), FGM(0.5, 1.0, 1.0), 1.0, -1.0, 0.0, 5.0)

    def test_linear_combo_solo_a_uno(self):
        with pytest.raises(ModeloNoSoportadoError):
            theorem1_approx(Chi(2), LinearCombo(0.6, 0.4, 1.0, 1.0), 0.5, 0.0, 0.0, 5.0)

    def test_berman(self):
        assert berman_marginal(Chi(2), 0.0, 1.0, 3.0).log_value == pytest.approx(-4.5, rel=1e-12)
        estimacion = berman_marginal(WeibullTail(1.0, 1.0), 1.0, 0.5, 10.0)
        # Γ(2)·0.5·v^(−1)·e^(−10) con v = 10
        assert estimacion.log_value == pytest.approx(math.log(0.05) - 10.0, rel=1e-12)


class TestModeloB:
    """Pruebas para model_b_approx y las formas cerradas"""

    def test_eliptico_frente_a_forma_cerrada(self):
        modelo = EllipticalModel(0.3)
        general = model_b_approx(Chi(2), modelo, 0.8, 5.0)
        cerrada = elliptical_closed_form(0.3, 0.8, Chi(2), 5.0)
        assert general.log_value == pytest.approx(cerrada.log_value, abs=1e-10)

    def test_eliptico_excesos_frente_a_forma_cerrada(self):
        modelo = EllipticalModel(-0.4)
        general = model_b_excess_approx(Chi(3), modelo, 0.9, 0.7, 1.3, 6.0)
        cerrada = elliptical_closed_form(-0.4, 0.9, Chi(3), 6.0, delta=0.7, eta=1.3)
        assert general.log_value == pytest.approx(cerrada.log_value, abs=1e-10)

    def test_lp_frente_a_forma_cerrada(self):
        modelo = LpModel(3.0)
        radial = WeibullTail(0.5, 2.0)
        general = model_b_excess_approx(radial, modelo, 0.5, 0.2, 0.4, 8.0)
        cerrada = lp_closed_form(modelo, 0.5, radial, 8.0, delta=0.2, eta=0.4)
        assert general.log_value == pytest.approx(cerrada.log_value, abs=1e-10)

    def test_forma_cerrada_doc(self):
        estimacion = elliptical_closed_form(0.0, 1.0, Chi(2), 3.0)
        assert estimacion.value == pytest.approx(math.exp(-9.0) / (18.0 * math.pi), rel=1e-12)

    def test_forma_cerrada_requiere_a_mayor_que_rho(self):
        with pytest.raises(ParametrosInvalidosError):
            elliptical_closed_form(0.5, 0.4, Chi(2), 3.0)

    def test_ley_de_pico(self):
        modelo = crear_modelo_funcional("peaked", a_peak=1.0, gamma_a=0.5)
        estimacion = model_b_approx(Chi(2), modelo, 1.0, 5.0)
        assert estimacion.components["log_v_potencia"] == pytest.approx(-0.5 * math.log(50.0), rel=1e-9)
        with pytest.raises(ModeloNoSoportadoError):
            densidad_en_critico(modelo, modelo.solve_alpha(1.0))
        with pytest.raises(ModeloNoSoportadoError):
            model_b_excess_approx(Chi(2), modelo, 1.0, 0.0, 0.0, 5.0)


class TestMarginalesB:
    """Pruebas para marginal_tail_approx"""

    def test_exponente_uniforme(self):
        assert exponente_cola_angular(LpModel(1.0, ley_w=UNIFORME), "X") == pytest.approx(1.0, rel=1e-6)

    def test_marginal_x_uniforme(self):
        estimacion = marginal_tail_approx(Chi(2), LpModel(1.0, ley_w=UNIFORME), "X", 10.0, gamma=1.0)
        assert estimacion.log_value == pytest.approx(math.log(0.005) - 50.0, rel=1e-10)

    def test_rho_negativo(self):
        with pytest.raises(ParametrosInvalidosError):
            marginal_tail_approx(Chi(2), EllipticalModel(-0.3), "X", 5.0)

    def test_which_invalido(self):
        with pytest.raises(ParametrosInvalidosError):
            marginal_tail_approx(Chi(2), EllipticalModel(0.3), "Z", 5.0)
