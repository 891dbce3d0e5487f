"""
Pruebas unitarias para los modelos angulares de dependencia libre
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mixturas.angular_models import (
    FGM,
    DegenerateAngular,
    LinearCombo,
    MinDominated,
    c_constant,
    cola_potencia,
    crear_modelo_angular,
)
from utils.errores import ModeloNoSoportadoError, ParametrosInvalidosError


class TestColaPotencia:
    """Pruebas para la marginal de tipo potencia"""

    def test_valores(self):
        assert cola_potencia(0.75, 2.0) == pytest.approx(0.0625)
        assert cola_potencia(1.0, 2.0) == 0.0
        assert cola_potencia(-0.5, 2.0) == 1.0

    def test_gamma_cero_es_masa_en_uno(self):
        assert cola_potencia(0.999, 0.0) == 1.0
        assert cola_potencia(1.0, 0.0) == 0.0


class TestDegenerateAngular:
    """Pruebas para U₁ = U₂ ≡ 1"""

    def test_cola_y_limite(self):
        modelo = DegenerateAngular()
        assert modelo.joint_tail_exact(0.99, 0.5) == 1.0
        datos = modelo.limit_data(1.0)
        assert datos.gamma == 0.0
        assert datos.L_cero == 1.0

    def test_xi_indicadora(self):
        modelo = DegenerateAngular()
        assert modelo.xi(1.0, 0.5, 2.0, a=1.0) == 0.0
        assert modelo.xi(1.0, 0.5, 2.0, a=0.5) == 1.0
        assert modelo.xi_breakpoints(0.5, 2.0, a=0.5) == [0.5]


class TestMinDominated:
    """Pruebas para U₂ = √U₁"""

    def test_cola_conjunta(self):
        modelo = MinDominated(1.0)
        assert modelo.joint_tail_exact(0.2, 0.8) == pytest.approx(0.36, rel=1e-14)
        assert modelo.joint_tail_exact(0.9, 0.1) == pytest.approx(0.1, rel=1e-14)

    def test_xi_segun_direccion(self):
        modelo = MinDominated(1.0)
        assert modelo.xi(1.0, 0.0, 0.8, a=1.0) == pytest.approx(0.4)
        assert modelo.xi(1.0, 0.0, 0.8, a=0.5) == pytest.approx(1.0)
        # δ ≥ η: la primera coordenada manda
        assert modelo.xi(2.0, 1.0, 0.0, a=1.0) == pytest.approx(1.0)

    def test_quiebres_incluyen_cruce(self):
        assert MinDominated(1.0).xi_breakpoints(0.0, 0.8) == [0.0, 0.8, 1.6]

    def test_muestras_sobre_la_curva(self):
        u1, u2 = MinDominated(2.0).sample_angular(np.random.default_rng(3), 1000)
        assert np.allclose(u2, np.sqrt(u1))
        assert np.all((u1 >= 0) & (u1 <= 1))


class TestFGM:
    """Pruebas para la cópula de supervivencia FGM"""

    def test_cola_conjunta(self):
        modelo = FGM(0.5, 1.0, 1.0)
        assert modelo.joint_tail_exact(0.5, 0.5) == pytest.approx(0.28125, rel=1e-14)

    def test_datos_limite_a_uno(self):
        modelo = FGM(0.5, 1.0, 2.0)
        datos = modelo.limit_data(1.0)
        assert datos.gamma == 3.0
        assert datos.L_cero == pytest.approx(1.5)
        s = np.array([0.01, 0.1, 0.5])
        assert modelo.u_a_tail(s, 1.0) == pytest.approx(np.power(s, 3.0) * datos.L(s), rel=1e-12)

    def test_l_de_la_copula_y_forma_abreviada(self):
        # Coinciden en s = 0 y se separan para s > 0
        modelo = FGM(0.5, 1.0, 1.0)
        datos = modelo.limit_data(1.0)
        assert float(datos.L(0.0)) == pytest.approx(1.0 + 0.5, rel=1e-14)
        s = np.array([0.2, 0.8])
        assert datos.L(s) == pytest.approx(1.0 + 0.5 * (1.0 - s) ** 2, rel=1e-14)
        assert np.all(np.abs(datos.L(s) - (1.0 + 0.5 * s**2)) > 0.1)
        assert modelo.u_a_tail(s, 1.0) == pytest.approx(s**2 * datos.L(s), rel=1e-12)

    def test_datos_limite_a_menor(self):
        modelo = FGM(0.8, 1.5, 1.0)
        datos = modelo.limit_data(0.6)
        assert datos.gamma == 1.5
        s = np.array([0.05, 0.2])
        assert modelo.u_a_tail(s, 0.6) == pytest.approx(np.power(s, 1.5) * datos.L(s), rel=1e-12)
        assert datos.L_cero == pytest.approx(0.4 * (1.0 + 0.8 * 0.6), rel=1e-12)

    def test_xi_producto(self):
        modelo = FGM(0.5, 1.0, 1.0)
        assert modelo.xi(2.0, 0.5, 1.0) == pytest.approx(1.5)
        assert modelo.xi(0.9, 0.5, 1.0) == 0.0

    def test_xi_invariante_por_traslacion(self):
        modelo = FGM(0.3, 1.2, 0.7)
        for m in (-1.0, 0.25, 0.5):
            assert modelo.xi(1.5 - m, 0.5 - m, 0.2 - m) == pytest.approx(modelo.xi(1.5, 0.5, 0.2), rel=1e-14)

    def test_muestreo_reproduce_la_cola(self):
        modelo = FGM(0.9, 1.0, 2.0)
        u1, u2 = modelo.sample_angular(np.random.default_rng(11), 200_000)
        empirica = np.mean((u1 > 0.5) & (u2 > 0.4))
        assert empirica == pytest.approx(modelo.joint_tail_exact(0.5, 0.4), abs=0.005)

    def test_k_fuera_de_rango(self):
        with pytest.raises(ParametrosInvalidosError):
            FGM(1.5, 1.0, 1.0)

    @given(
        k=st.floats(min_value=0.0, max_value=0.99),
        u1=st.floats(min_value=0.0, max_value=0.99),
        u2=st.floats(min_value=0.0, max_value=0.99),
    )
    @settings(max_examples=60, deadline=None)
    def test_cota_por_las_marginales(self, k, u1, u2):
        modelo = FGM(k, 1.0, 0.5)
        conjunta = modelo.joint_tail_exact(u1, u2)
        assert 0.0 <= conjunta <= min(cola_potencia(u1, 1.0), cola_potencia(u2, 0.5)) + 1e-15


class TestLinearCombo:
    """Pruebas para la combinación lineal U_i = λ_i S₁ + λ̄_i S₂"""

    def test_forma_cerrada_uniforme(self):
        modelo = LinearCombo(0.5, 0.5, 1.0, 1.0)
        assert modelo.joint_tail_exact(0.75, 0.75) == pytest.approx(0.125, rel=1e-10)
        assert float(modelo.joint_tail(0.75, 0.75)) == pytest.approx(0.125, rel=1e-12)

    def test_forma_cerrada_frente_a_cuadratura(self):
        modelo = LinearCombo(0.7, 0.3, 1.5, 2.0)
        for u1, u2 in [(0.7, 0.8), (0.9, 0.5), (0.95, 0.97)]:
            assert float(modelo.joint_tail(u1, u2)) == pytest.approx(modelo.joint_tail_exact(u1, u2), rel=1e-8)

    def test_L_y_normalizador(self):
        modelo = LinearCombo(0.5, 0.5, 1.0, 1.0)
        datos = modelo.limit_data(1.0)
        assert datos.gamma == 2.0
        assert float(datos.L(0.01)) == pytest.approx(2.0, rel=1e-8)
        assert modelo.normalizador == pytest.approx(2.0, rel=1e-10)

    def test_xi_normalizada(self):
        modelo = LinearCombo(0.6, 0.4, 1.0, 1.5)
        assert modelo.xi(1.0, 0.0, 0.0) == pytest.approx(1.0, rel=1e-8)
        assert modelo.xi(2.0, 0.0, 0.0) == pytest.approx(2.0 ** 2.5, rel=1e-8)

    def test_solo_direccion_uno(self):
        modelo = LinearCombo(0.6, 0.4, 1.0, 1.0)
        with pytest.raises(ModeloNoSoportadoError):
            modelo.limit_data(0.5)
        with pytest.raises(ModeloNoSoportadoError):
            modelo.xi(1.0, 0.0, 0.0, a=0.5)

    def test_orden_de_lambdas(self):
        with pytest.raises(ParametrosInvalidosError):
            LinearCombo(0.3, 0.6, 1.0, 1.0)

    def test_muestreo_reproduce_la_cola(self):
        modelo = LinearCombo(0.7, 0.3, 1.0, 1.0)
        u1, u2 = modelo.sample_angular(np.random.default_rng(5), 200_000)
        empirica = np.mean((u1 > 0.6) & (u2 > 0.6))
        assert empirica == pytest.approx(float(modelo.joint_tail(0.6, 0.6)), abs=0.005)


class TestConstanteC:
    """Pruebas para c_constant"""

    def test_valor_conocido(self):
        assert c_constant(1.0, 1.0, 0.5, 0.5) == pytest.approx(2.0, rel=1e-12)

    def test_gamma1_cero(self):
        # C = ∫₀^(1/λ̄₂) t^(γ₂−1) dt = (1/λ̄₂)^γ₂/γ₂
        assert c_constant(0.0, 2.0, 0.5, 0.2) == pytest.approx((1.0 / 0.8) ** 2 / 2.0, rel=1e-12)

    def test_lambdas_invertidos(self):
        with pytest.raises(ParametrosInvalidosError):
            c_constant(1.0, 1.0, 0.2, 0.5)


class TestFabricaAngular:
    """Pruebas para crear_modelo_angular"""

    def test_construye(self):
        modelo = crear_modelo_angular("fgm", k=0.5, gamma1=1.0, gamma2=1.0)
        assert modelo.label == "FGM(k=0.5, gamma1=1, gamma2=1)"

    def test_nombre_o_parametros_desconocidos(self):
        with pytest.raises(ParametrosInvalidosError):
            crear_modelo_angular("clayton", theta=2)
        with pytest.raises(ParametrosInvalidosError):
            crear_modelo_angular("min_dominated", gamma=1)
