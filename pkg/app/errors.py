"""
Excepciones del dominio

Todas derivan de ValueError o ArithmeticError para que la capa de línea de
comandos pueda distinguir errores de entrada (código 1) de violaciones
matemáticas (código 2).
"""

from typing import Optional, Sequence

import numpy as np


class DegreeError(ValueError):
    """Grado o índice incompatible con la operación solicitada."""


class ConfluentBasisError(ValueError):
    """La base de polinomios incompletos no es de tipo Lagrange (raíces repetidas)."""


class InvalidTransformError(ValueError):
    """La función φ no cumple la condición de convexidad/monotonía muestreada."""


class HullContainmentError(ValueError):
    """
    El punto no pertenece a la envolvente convexa.

    Atributos:
        distance: Distancia euclídea del punto a la envolvente.
    """

    def __init__(self, message: str, distance: float):
        super().__init__(message)
        self.distance = distance


class RootConvergenceError(ArithmeticError):
    """
    El método iterativo no convergió dentro del tope de iteraciones.

    Atributos:
        best: Mejor aproximación obtenida (arreglo de solo lectura).
        residual: Máximo residuo |p(r)| de esa aproximación.
    """

    def __init__(self, message: str, best: Sequence[complex], residual: float):
        super().__init__(message)
        self.best = np.array(best, dtype=np.complex128)
        self.best.setflags(write=False)
        self.residual = residual


class CrossCheckError(ArithmeticError):
    """
    Los dos caminos de cálculo de ceros (expansión directa y companion) no coinciden.
    """

    def __init__(self, message: str, direct: Sequence[complex], companion: Sequence[complex], distance: float):
        super().__init__(message)
        self.direct = list(direct)
        self.companion = list(companion)
        self.distance = distance


class RadicandError(ArithmeticError):
    """Radicando negativo más allá de la tolerancia numérica en el disco de traza."""

    def __init__(self, message: str, radicand: Optional[float] = None):
        super().__init__(message)
        self.radicand = radicand


class RecoveryError(ArithmeticError):
    """Los pesos reconstruidos no anulan la combinación en el punto pedido."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual
