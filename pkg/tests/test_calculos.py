"""
Pruebas unitarias para funciones de cálculo numérico
"""

import math

import numpy as np
import pytest
from scipy.special import gammaincc

from utils.calculos import (
    biseccion_vectorizada,
    bordes_paneles,
    funcion_gamma,
    integrar_gauss_adaptativo,
    integrar_por_paneles,
    log_gamma,
    log_gamma_incompleta_superior,
)
from utils.errores import ErrorNumerico, ParametrosInvalidosError


class TestFuncionGamma:
    """Pruebas para funcion_gamma y log_gamma"""

    def test_valores_enteros(self):
        assert funcion_gamma(1.0) == pytest.approx(1.0, rel=1e-14)
        assert funcion_gamma(5.0) == pytest.approx(24.0, rel=1e-14)

    def test_medio(self):
        assert funcion_gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)

    def test_log_gamma_coincide(self):
        assert log_gamma(7.5) == pytest.approx(math.log(funcion_gamma(7.5)), rel=1e-13)

    def test_argumento_no_positivo(self):
        with pytest.raises(ParametrosInvalidosError):
            funcion_gamma(0.0)
        with pytest.raises(ParametrosInvalidosError):
            log_gamma(-1.0)


class TestGammaIncompletaSuperior:
    """Pruebas para log_gamma_incompleta_superior"""

    def test_coincide_con_scipy_en_rango_representable(self):
        z = np.array([0.1, 1.0, 5.0, 30.0, 200.0])
        esperado = np.log(gammaincc(1.5, z))
        assert log_gamma_incompleta_superior(1.5, z) == pytest.approx(esperado, rel=1e-12)

    def test_cola_profunda_frente_a_asintotica(self):
        # ln Q(a, z) ≈ (a − 1) ln z − z − ln Γ(a) + ln(1 + (a − 1)/z)
        a, z = 1.5, 800.0
        esperado = (a - 1.0) * math.log(z) - z - log_gamma(a) + math.log1p((a - 1.0) / z)
        valor = float(log_gamma_incompleta_superior(a, z))
        assert math.isfinite(valor)
        assert valor == pytest.approx(esperado, abs=1e-5)

    def test_continuidad_en_el_cambio_de_metodo(self):
        z = np.linspace(600.0, 700.0, 201)
        valores = log_gamma_incompleta_superior(2.5, z)
        assert np.all(np.diff(valores) < 0)
        assert np.max(np.abs(np.diff(valores, 2))) < 1e-3

    def test_a_no_positivo(self):
        with pytest.raises(ParametrosInvalidosError):
            log_gamma_incompleta_superior(0.0, 1.0)


class TestBordesPaneles:
    """Pruebas para bordes_paneles"""

    def test_paneles_geometricos(self):
        bordes = bordes_paneles(0.0, 3.0)
        assert bordes.tolist() == [0.0, 0.25, 0.5, 1.0, 2.0, 3.0]

    def test_incluye_quiebres_internos(self):
        bordes = bordes_paneles(1.0, 2.0, quiebres=[1.3, 5.0, 0.5])
        assert 1.3 in bordes
        assert 5.0 not in bordes
        assert bordes[0] == 1.0 and bordes[-1] == 2.0

    def test_intervalo_vacio(self):
        with pytest.raises(ParametrosInvalidosError):
            bordes_paneles(2.0, 2.0)


class TestIntegracion:
    """Pruebas para integrar_por_paneles e integrar_gauss_adaptativo"""

    def test_paneles_exponencial(self):
        valor, cota = integrar_por_paneles(lambda s: math.exp(-s), bordes_paneles(0.0, 60.0), tol_rel=1e-12)
        assert valor == pytest.approx(1.0, rel=1e-12)
        assert cota < 1e-10

    def test_paneles_con_quiebre(self):
        valor, _ = integrar_por_paneles(lambda s: abs(s - 1.0), bordes_paneles(0.0, 2.0, [1.0]))
        assert valor == pytest.approx(1.0, rel=1e-12)

    def test_gauss_exponencial(self):
        valor, cota = integrar_gauss_adaptativo(lambda s: np.exp(-s), bordes_paneles(0.0, 60.0), tol_rel=1e-12)
        assert valor == pytest.approx(1.0, rel=1e-11)
        assert cota <= 1e-10

    def test_gauss_raiz_en_extremo(self):
        valor, _ = integrar_gauss_adaptativo(np.sqrt, bordes_paneles(0.0, 1.0), tol_rel=1e-10)
        assert valor == pytest.approx(2.0 / 3.0, rel=1e-9)

    def test_gauss_integrando_no_finito(self):
        with pytest.raises(ErrorNumerico):
            integrar_gauss_adaptativo(lambda s: np.full_like(s, np.nan), bordes_paneles(0.0, 1.0))


class TestBiseccionVectorizada:
    """Pruebas para biseccion_vectorizada"""

    def test_raices_crecientes(self):
        objetivo = np.array([0.25, 0.5, 0.81])
        raices = biseccion_vectorizada(np.square, objetivo, 0.0, 1.0, creciente=True)
        assert raices == pytest.approx(np.sqrt(objetivo), abs=1e-14)

    def test_raices_decrecientes(self):
        objetivo = np.array([0.1, 0.9])
        raices = biseccion_vectorizada(lambda w: 1.0 - w, objetivo, 0.0, 1.0, creciente=False)
        assert raices == pytest.approx(1.0 - objetivo, abs=1e-14)
