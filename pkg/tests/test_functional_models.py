"""
Pruebas unitarias para los modelos de dependencia funcional
"""

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from mixturas.functional_models import (
    EllipticalModel,
    FunctionalModelB,
    LeyPicoPotencia,
    LeyPotenciaBeta,
    LpModel,
    crear_modelo_funcional,
    verificar_normalizacion_w,
)
from utils.errores import ErrorNumerico, ModeloNoSoportadoError, ParametrosInvalidosError

UNIFORME = LeyPotenciaBeta(1.0, 1.0, 1.0)


class TestLeyesW:
    """Pruebas para las leyes de W"""

    def test_arcoseno_normalizada(self):
        ley = LeyPotenciaBeta(2.0, 0.5, 0.5)
        assert verificar_normalizacion_w(ley) == pytest.approx(1.0, abs=1e-8)
        assert float(ley.pdf(0.5)) == pytest.approx(2.0 / (math.pi * math.sqrt(0.75)), rel=1e-12)

    def test_uniforme(self):
        assert float(UNIFORME.cdf(0.3)) == pytest.approx(0.3)
        assert float(UNIFORME.sf(0.3)) == pytest.approx(0.7)
        assert UNIFORME.concentracion(0.4, -0.5, 2.0) == pytest.approx(2.5)

    def test_pico_potencia(self):
        ley = LeyPicoPotencia(0.3, 2.0)
        assert verificar_normalizacion_w(ley) == pytest.approx(1.0, abs=1e-8)
        assert float(ley.cdf(1.0)) == pytest.approx(1.0, rel=1e-14)
        w = np.array([0.1, 0.3, 0.65])
        assert ley.ppf(ley.cdf(w)) == pytest.approx(w, abs=1e-12)
        assert ley.exponente_local(0.3) == 2.0
        assert ley.exponente_local(0.5) == 1.0

    def test_pico_concentracion(self):
        ley = LeyPicoPotencia(0.5, 0.5)
        # C·(|K₁|^γ + K₂^γ)/γ con C = γ/(2·0.5^γ)
        constante = 0.5 / (2.0 * 0.5 ** 0.5)
        assert ley.concentracion(0.5, -1.0, 4.0) == pytest.approx(constante * 3.0 / 0.5, rel=1e-12)


class TestDireccionCritica:
    """Pruebas para solve_alpha frente a las formas cerradas"""

    @pytest.mark.parametrize("rho,a", [(0.3, 0.8), (0.0, 1.0), (-0.5, 1.0), (-0.2, 0.4)])
    def test_eliptico(self, rho, a):
        modelo = EllipticalModel(rho)
        critico = modelo.solve_alpha(a)
        assert critico.alpha == pytest.approx(modelo.alpha_cerrado(a), rel=1e-12)
        assert critico.c == pytest.approx(modelo.c_cerrado(a), rel=1e-10)
        assert critico.K1 == pytest.approx(-1.0 / critico.alpha)
        assert critico.K2 == pytest.approx(critico.c * a / critico.alpha)

    @pytest.mark.parametrize("p,a", [(1.0, 1.0), (3.0, 0.5), (1.5, 0.9)])
    def test_lp(self, p, a):
        modelo = LpModel(p)
        critico = modelo.solve_alpha(a)
        assert critico.alpha == pytest.approx(modelo.alpha_cerrado(a), rel=1e-12)
        assert critico.c == pytest.approx(modelo.c_cerrado(a), rel=1e-10)

    def test_pendientes_unilaterales(self):
        critico = EllipticalModel(0.3).solve_alpha(0.8)
        assert critico.c_izq == pytest.approx(critico.c_der, rel=1e-4)
        assert critico.epsilon > 0

    def test_cache_por_nivel(self):
        modelo = EllipticalModel(0.1)
        assert modelo.solve_alpha(0.5) is modelo.solve_alpha(0.5)
        assert not hasattr(modelo, "_cache_criticos")

    def test_cache_compartida_entre_hilos(self):
        modelo = EllipticalModel(0.2)
        with ThreadPoolExecutor(max_workers=4) as ejecutor:
            criticos = list(ejecutor.map(modelo.solve_alpha, [0.7, 0.9, 0.7, 0.9, 1.0, 0.7]))
        for a, critico in zip([0.7, 0.9, 0.7, 0.9, 1.0, 0.7], criticos):
            assert critico.a == a
            assert critico.alpha == pytest.approx(modelo.alpha_cerrado(a), rel=1e-12)
        assert modelo.solve_alpha(0.9) is modelo.solve_alpha(0.9)

    def test_cache_distingue_modelos(self):
        uno, otro = EllipticalModel(0.1), EllipticalModel(0.4)
        assert uno.solve_alpha(0.8).alpha != otro.solve_alpha(0.8).alpha

    def test_a_no_mayor_que_rho(self):
        with pytest.raises(ParametrosInvalidosError):
            EllipticalModel(0.6).solve_alpha(0.5)

    def test_sin_direccion_critica(self):
        modelo = FunctionalModelB(0.0, lambda w: np.ones_like(np.asarray(w, dtype=float)), UNIFORME)
        with pytest.raises(ErrorNumerico):
            modelo.solve_alpha(1.0)

    def test_gamma_local_del_pico(self):
        modelo = crear_modelo_funcional("peaked", a_peak=1.0, gamma_a=0.5)
        assert modelo.solve_alpha(1.0).gamma_a == 0.5


class TestConstruccion:
    """Pruebas de validación al construir un modelo B"""

    def test_zstar_fuera_de_rango(self):
        with pytest.raises(ParametrosInvalidosError):
            FunctionalModelB(0.0, lambda w: 2.0 * np.asarray(w, dtype=float), UNIFORME)

    def test_rama_no_unimodal(self):
        def ondulada(w):
            return 0.5 + 0.4 * np.sin(6.0 * np.pi * np.asarray(w, dtype=float))

        with pytest.raises(ParametrosInvalidosError, match="unimodal"):
            FunctionalModelB(0.0, ondulada, UNIFORME)

    def test_probabilidades_de_signo(self):
        with pytest.raises(ParametrosInvalidosError):
            EllipticalModel(0.0, sign_probs=(0.5, 0.5, 0.0, 0.0))
        with pytest.raises(ParametrosInvalidosError):
            EllipticalModel(0.0, sign_probs=(0.5, 0.5, 0.5, 0.5))

    def test_rho_fuera_de_rango(self):
        with pytest.raises(ParametrosInvalidosError):
            EllipticalModel(1.0)


class TestProbabilidadesCondicionales:
    """Pruebas para las probabilidades exactas dado R = r"""

    def test_ejemplo_uniforme(self):
        modelo = LpModel(1.0, ley_w=UNIFORME)
        assert modelo.joint_tail_given_r(1.0, 1.0, 4.0) == pytest.approx(0.125, rel=1e-10)

    def test_radio_insuficiente(self):
        modelo = LpModel(1.0, ley_w=UNIFORME)
        assert modelo.joint_tail_given_r(1.0, 1.0, 1.5) == 0.0
        assert modelo.joint_tail_given_r(1.0, 1.0, 0.9) == 0.0

    def test_desplazamientos_requieren_ley_radial(self):
        modelo = LpModel(1.0, ley_w=UNIFORME)
        with pytest.raises(ParametrosInvalidosError):
            modelo.joint_tail_given_r(1.0, 1.0, 4.0, delta=1.0)

    def test_muestreo_reproduce_la_condicional(self):
        modelo = EllipticalModel(0.3)
        u1, u2 = modelo.sample_functional(np.random.default_rng(7), 200_000)
        empirica = np.mean((3.0 * u1 > 1.0) & (3.0 * u2 > 0.8))
        assert empirica == pytest.approx(float(modelo.probabilidad_condicional(1.0, 0.8, 3.0)), abs=0.005)

    def test_marginal_x(self):
        modelo = LpModel(1.0, ley_w=UNIFORME)
        assert float(modelo.cola_angular("X", 0.2)) == pytest.approx(0.5 * 0.2, rel=1e-12)

    def test_marginal_y_simetrica(self):
        # ρ = 0 y signos equiprobables: U₂ tiene la misma ley que U₁
        modelo = LpModel(1.0, ley_w=UNIFORME)
        assert float(modelo.cola_angular("Y", 0.2)) == pytest.approx(0.1, rel=1e-9)

    def test_which_invalido(self):
        with pytest.raises(ParametrosInvalidosError):
            LpModel(2.0).probabilidad_marginal_condicional("Z", 1.0, 2.0)

    def test_densidad_en_punto(self):
        assert LpModel(1.0, ley_w=UNIFORME).w_density_at(0.3) == pytest.approx(1.0)
        with pytest.raises(ParametrosInvalidosError):
            LpModel(1.0).w_density_at(1.0)


class TestRadioMinimo:
    """Pruebas para maximo_angular y radio_minimo"""

    def test_maximo_angular(self):
        modelo = EllipticalModel(0.3)
        assert modelo.maximo_angular("X") == 1.0
        assert modelo.maximo_angular("Y") == pytest.approx(1.0, rel=1e-9)

    def test_lp_uno(self):
        modelo = LpModel(1.0, ley_w=UNIFORME)
        assert modelo.radio_minimo(1.0, 1.0) == pytest.approx(2.0 * (1.0 - 1e-7), rel=1e-12)

    def test_circulo(self):
        assert EllipticalModel(0.0).radio_minimo(1.0, 1.0) == pytest.approx(math.sqrt(2.0), rel=1e-6)


class TestFabricaFuncional:
    """Pruebas para crear_modelo_funcional"""

    def test_eliptico(self):
        modelo = crear_modelo_funcional("elliptical", rho=0.5)
        assert modelo.label == "EllipticalModel(rho=0.5, W=PotenciaBeta(k=2, alpha=0.5, beta=0.5))"

    def test_lp_con_ley_propia(self):
        modelo = crear_modelo_funcional("lp", p=3.0, w={"beta_alpha": 2.0, "beta_beta": 1.0})
        assert isinstance(modelo, LpModel)
        assert modelo.ley_w.parametros == (3.0, 2.0, 1.0)

    def test_signos_desde_config(self):
        modelo = crear_modelo_funcional("lp", p=2.0, signs=[0.0, 0.0, 0.0, 1.0])
        assert modelo.p11 == 1.0

    def test_faltante_o_desconocido(self):
        with pytest.raises(ParametrosInvalidosError):
            crear_modelo_funcional("elliptical")
        with pytest.raises(ModeloNoSoportadoError):
            crear_modelo_funcional("hiperbolico", rho=0.1)
