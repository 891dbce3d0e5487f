"""
Pruebas unitarias para las leyes radiales
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mixturas.radial_laws import Chi, LogNormal, WeibullTail, crear_ley_radial
from utils.errores import ParametrosInvalidosError


class TestWeibullTail:
    """Pruebas para la cola tipo Weibull"""

    def test_supervivencia_y_escala(self):
        ley = WeibullTail(theta=0.5, tau=2.0)
        assert ley.survival(2.0) == pytest.approx(math.exp(-2.0), rel=1e-14)
        assert ley.scaling_w(3.0) == pytest.approx(3.0, rel=1e-14)
        assert ley.scaling_v(3.0) == pytest.approx(9.0, rel=1e-14)
        assert ley.weibull_index == 2.0

    def test_exponencial_cuantil(self):
        ley = WeibullTail(1.0, 1.0)
        assert ley.quantile_b(math.e) == pytest.approx(1.0, rel=1e-14)
        assert ley.quantile(0.5) == pytest.approx(math.log(2.0), rel=1e-14)

    def test_densidad_es_w_por_supervivencia(self):
        ley = WeibullTail(2.0, 1.5)
        x = np.array([0.5, 1.0, 3.0])
        assert ley.density(x) == pytest.approx(ley.scaling_w(x) * ley.survival(x), rel=1e-12)

    def test_parametros_invalidos(self):
        with pytest.raises(ParametrosInvalidosError):
            WeibullTail(0.0, 1.0)
        with pytest.raises(ParametrosInvalidosError):
            WeibullTail(1.0, -2.0)

    @given(
        theta=st.floats(min_value=0.1, max_value=5.0),
        tau=st.floats(min_value=0.3, max_value=3.0),
        u=st.floats(min_value=1.5, max_value=1e200),
    )
    @settings(max_examples=50, deadline=None)
    def test_quantile_b_invierte_la_supervivencia(self, theta, tau, u):
        ley = WeibullTail(theta, tau)
        b = ley.quantile_b(u)
        assert float(ley.log_survival(np.asarray(b))) == pytest.approx(-math.log(u), rel=1e-10)


class TestChi:
    """Pruebas para la ley Chi"""

    def test_k2_exacta(self):
        ley = Chi(2)
        assert ley.survival(2.0) == pytest.approx(math.exp(-2.0), rel=1e-14)
        assert ley.scaling_v(10.0) == pytest.approx(100.0, rel=1e-14)
        assert ley.quantile_b(math.e ** 2) == pytest.approx(2.0, rel=1e-12)

    def test_k1_es_media_normal(self):
        # F̄(x) = 2·Φ̄(x) = erfc(x/√2)
        ley = Chi(1)
        assert ley.survival(1.5) == pytest.approx(math.erfc(1.5 / math.sqrt(2.0)), rel=1e-12)

    def test_k3_cola_profunda(self):
        # F̄(x) = 2Φ̄(x) + √(2/π)·x·e^(−x²/2)
        ley = Chi(3)
        assert float(ley.log_survival(np.asarray(40.0))) == pytest.approx(-796.536287, abs=1e-5)

    def test_k3_cuantil_en_rango_no_representable(self):
        ley = Chi(3)
        r = ley.sample_conditional(40.0, 0.5)
        assert r > 40.0
        esperado = math.log(0.5) + float(ley.log_survival(np.asarray(40.0)))
        assert float(ley.log_survival(np.asarray(r))) == pytest.approx(esperado, rel=1e-10)

    def test_k_no_entero(self):
        with pytest.raises(ParametrosInvalidosError):
            Chi(2.5)
        with pytest.raises(ParametrosInvalidosError):
            Chi(0)


class TestLogNormal:
    """Pruebas para la ley lognormal"""

    def test_mediana(self):
        ley = LogNormal(0.0, 1.0)
        assert ley.survival(1.0) == pytest.approx(0.5, rel=1e-14)
        assert ley.quantile(0.5) == pytest.approx(1.0, rel=1e-12)

    def test_indice_cero_y_escala_decreciente_relativa(self):
        ley = LogNormal(0.0, 1.0)
        assert ley.weibull_index == 0.0
        # v(x) = x·w(x) crece como ln x/σ²
        assert ley.scaling_v(1e6) > ley.scaling_v(1e3) > 0

    def test_cuantil_extremo(self):
        ley = LogNormal(1.0, 0.5)
        b = ley.quantile_b(1e250)
        assert float(ley.log_survival(np.asarray(b))) == pytest.approx(-250 * math.log(10.0), rel=1e-10)


class TestOperacionesComunes:
    """Pruebas de validación, muestreo condicionado y diagnóstico"""

    def test_dominio(self):
        ley = Chi(2)
        with pytest.raises(ParametrosInvalidosError):
            ley.survival(-1.0)
        with pytest.raises(ParametrosInvalidosError):
            ley.scaling_w(0.0)
        with pytest.raises(ParametrosInvalidosError):
            ley.quantile_b(1.0)
        with pytest.raises(ParametrosInvalidosError):
            ley.quantile(1.0)

    def test_salida_escalar_o_arreglo(self):
        ley = Chi(2)
        assert isinstance(ley.survival(1.0), float)
        assert ley.survival([1.0, 2.0]).shape == (2,)

    def test_muestreo_condicionado(self):
        ley = Chi(2)
        assert ley.sample_conditional(3.0, 1.0) == pytest.approx(3.0, rel=1e-14)
        assert ley.sample_conditional(3.0, math.exp(-1.0)) == pytest.approx(math.sqrt(11.0), rel=1e-12)
        with pytest.raises(ParametrosInvalidosError):
            ley.sample_conditional(3.0, 0.0)

    def test_muestreo_monotono_en_u(self):
        ley = LogNormal(0.0, 1.0)
        u = np.linspace(0.05, 1.0, 20)
        r = ley.sample_conditional(5.0, u)
        assert np.all(np.diff(r) < 0)
        assert np.all(r >= 5.0)

    def test_diagnostico_exponencial_exacto(self):
        tabla = WeibullTail(1.0, 1.0).mda_diagnostics([1.0, 5.0], [-0.5, 1.0, 2.0])
        assert list(tabla.columns) == [
            "x",
            "t",
            "razon_supervivencia",
            "desviacion_supervivencia",
            "razon_escala",
            "desviacion_escala",
        ]
        assert len(tabla) == 6
        assert tabla["desviacion_supervivencia"].max() == pytest.approx(0.0, abs=1e-14)
        assert tabla["desviacion_escala"].max() == pytest.approx(0.0, abs=1e-14)

    def test_diagnostico_chi_converge(self):
        tabla = Chi(3).mda_diagnostics([2.0, 8.0, 32.0], [1.0])
        desviaciones = tabla["desviacion_supervivencia"].tolist()
        assert desviaciones[0] > desviaciones[1] > desviaciones[2]

    def test_fabrica(self):
        assert crear_ley_radial("CHI", k=2).label == "Chi(k=2)"
        assert isinstance(crear_ley_radial("weibull", theta=1, tau=2), WeibullTail)
        with pytest.raises(ParametrosInvalidosError):
            crear_ley_radial("pareto", alpha=2)
        with pytest.raises(ParametrosInvalidosError):
            crear_ley_radial("chi", grados=2)
