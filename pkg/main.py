"""
Calculadora de colas conjuntas de mixturas de escala

Punto de entrada principal de la aplicación.
"""
import sys

from mixturas.cli import main

if __name__ == "__main__":
    sys.exit(main())
