"""
Punto de entrada del simulador MC-CDMA de reducción de PAPR.
Ejecuta el mismo grupo de comandos que el script 'mc-papr'.
"""

from src.cli import cli


if __name__ == "__main__":
    # Ejemplo: python app.py ccdf --config config/defaults.conf --trials 5
    cli()
