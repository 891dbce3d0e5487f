"""
Módulo de utilidades compartidas por la librería de mixturas de escala
"""

from utils.errores import (
    ErrorCalculo,
    ParametrosInvalidosError,
    ModeloNoSoportadoError,
    ErrorNumerico,
)

from utils.calculos import (
    funcion_gamma,
    log_gamma,
    log_gamma_incompleta_superior,
    bordes_paneles,
    integrar_por_paneles,
    integrar_gauss_adaptativo,
    biseccion_vectorizada,
)

from utils.validaciones import (
    es_numero_finito,
    validar_positivo,
    validar_rango,
    validar_probabilidades,
    validar_malla_creciente,
    exigir,
)

from utils.formato import (
    log10_seguro,
    formatear_componentes,
    escribir_csv,
    tabla_a_texto_csv,
    generar_resumen_verificacion,
)

from utils.file_loader import (
    ConfigLoader,
    ValoresEntorno,
    leer_entorno,
    hash_configuracion,
    resolver,
    ErrorCargaArchivo,
    ArchivoNoEncontradoError,
    FormatoNoSoportadoError,
    SeccionFaltanteError,
    ErrorConfiguracion,
)

__all__ = [
    # Errores
    "ErrorCalculo",
    "ParametrosInvalidosError",
    "ModeloNoSoportadoError",
    "ErrorNumerico",
    # Cálculos
    "funcion_gamma",
    "log_gamma",
    "log_gamma_incompleta_superior",
    "bordes_paneles",
    "integrar_por_paneles",
    "integrar_gauss_adaptativo",
    "biseccion_vectorizada",
    # Validaciones
    "es_numero_finito",
    "validar_positivo",
    "validar_rango",
    "validar_probabilidades",
    "validar_malla_creciente",
    "exigir",
    # Formato
    "log10_seguro",
    "formatear_componentes",
    "escribir_csv",
    "tabla_a_texto_csv",
    "generar_resumen_verificacion",
    # Configuración
    "ConfigLoader",
    "ValoresEntorno",
    "leer_entorno",
    "hash_configuracion",
    "resolver",
    "ErrorCargaArchivo",
    "ArchivoNoEncontradoError",
    "FormatoNoSoportadoError",
    "SeccionFaltanteError",
    "ErrorConfiguracion",
]
