"""
Discos de localización de los ceros de A_n^γ

Objetivo:
    Acotar los ceros con fórmulas cerradas obtenidas de la companion reducida M:

    - Disco de traza: centro tr M/(n-1) y radio √((m-1)/m)·(tr M*M - |tr M|²/m)^{1/2}, m = n-1.
    - Disco de la derivada: caso γⱼ = 1/n, centrado en la media de las raíces.
    - Unión de Geršgorin: un disco por fila de M (n-1 discos, uno por raíz distinta del pivote).

    El pivote es la raíz que hace de zₙ; con n = 2 todos los radios son 0 y los
    centros coinciden con el único cero.
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Literal, Optional, Union

import numpy as np

from app.companion import CompanionMatrix
from app.config import PIVOT_TIE_TOL, RADICAND_TOL
from app.errors import RadicandError
from app.poly_core import root_scale
from app.validators import uniform_weights, validate_index, validate_roots, validate_tolerance, validate_weights

logger = logging.getLogger(__name__)

PivotCriterion = Literal["min-total-area", "min-max-radius"]
PIVOT_CRITERIA = ("min-total-area", "min-max-radius")


@dataclass(frozen=True)
class Disc:
    center: complex
    radius: float

    def __post_init__(self):
        if not math.isfinite(self.radius) or self.radius < 0:
            raise ValueError(f"El radio debe ser finito y no negativo (recibido {self.radius})")

    @property
    def area(self) -> float:
        return math.pi * self.radius ** 2

    def excess(self, z: complex) -> float:
        """Cuánto sobresale z del disco (0 si está dentro)."""
        return max(0.0, abs(complex(z) - self.center) - self.radius)


@dataclass(frozen=True)
class DiscUnion:
    """
    Unión de discos de Geršgorin.

    Atributos:
        discs: Un disco por raíz distinta del pivote, en el orden original
        pivot: Índice 0-based de la raíz que actúa como zₙ
    """

    discs: tuple[Disc, ...]
    pivot: int

    def __post_init__(self):
        if not self.discs:
            raise ValueError("La unión de discos no puede estar vacía")

    @property
    def total_area(self) -> float:
        return math.fsum(d.area for d in self.discs)

    @property
    def max_radius(self) -> float:
        return max(d.radius for d in self.discs)

    def excess(self, z: complex) -> float:
        return min(d.excess(z) for d in self.discs)


@dataclass(frozen=True)
class ContainmentResult:
    holds: bool
    max_violation: float


def _prepare(roots: Iterable[complex], gamma: Iterable[float], pivot: Optional[int]) -> tuple[np.ndarray, np.ndarray, int]:
    values = validate_roots(roots, min_length=2)
    weights = validate_weights(gamma, length=values.size)
    pivot = values.size - 1 if pivot is None else validate_index(pivot, values.size, "pivote")
    return values, weights, pivot


def _exact_sum(values: np.ndarray) -> complex:
    return complex(math.fsum(values.real), math.fsum(values.imag))


def _checked_sqrt(radicand: float, scale: float) -> float:
    if radicand >= 0:
        return math.sqrt(radicand)
    if radicand >= -RADICAND_TOL * scale ** 2:
        return 0.0
    logger.error("Radicando negativo fuera de la guarda: %.3e", radicand)
    raise RadicandError(
        f"El radicando del disco de traza es negativo ({radicand:.3e}); no debería ocurrir",
        radicand=radicand,
    )


def trace_disc(roots: Iterable[complex], gamma: Iterable[float], pivot: Optional[int] = None) -> Disc:
    """
    Disco que contiene todos los ceros de A_n^γ.

    Parámetros:
        roots: Raíces z₁..zₙ (n >= 2)
        gamma: Pesos convexos
        pivot: Índice 0-based de la raíz que actúa como zₙ (por defecto la última)

    Operación:
        - centro = Σⱼ(1-γⱼ)zⱼ/(n-1); con pesos iguales, la media de las raíces.
        - radicando = Σ_{j≠p}|(1-γⱼ)zⱼ+γⱼzₚ|² + (n-2)Σ_{j≠p}γⱼ²|zₚ-zⱼ|² - |Σⱼ(1-γⱼ)zⱼ|²/(n-1)
        - radio = √((n-2)/(n-1))·√radicando; el radicando se recorta a 0 si es
          mayor que -1e-12·escala².

    Raises:
        RadicandError: Si el radicando es negativo más allá de la guarda
    """
    values, weights, pivot = _prepare(roots, gamma, pivot)
    n = values.size
    scale = root_scale(values)

    total = _exact_sum((1 - weights) * values)
    if np.all(weights == weights[0]):
        center = _exact_sum(values) / n
    else:
        center = total / (n - 1)

    keep = np.arange(n) != pivot
    z, w, zp = values[keep], weights[keep], values[pivot]
    diagonal = math.fsum(np.abs((1 - w) * z + w * zp) ** 2)
    off = (n - 2) * math.fsum(w ** 2 * np.abs(zp - z) ** 2)
    radicand = diagonal + off - abs(total) ** 2 / (n - 1)

    radius = math.sqrt((n - 2) / (n - 1)) * _checked_sqrt(radicand, scale)
    return Disc(center=center, radius=radius)


def derivative_disc(roots: Iterable[complex]) -> Disc:
    """Disco que contiene los ceros de p′: el de traza con γⱼ = 1/n."""
    values = validate_roots(roots, min_length=2)
    return trace_disc(values, uniform_weights(values.size))


def corollary_radius(roots: Iterable[complex], pivot: Optional[int] = None) -> float:
    """
    Radio del disco de la derivada evaluado directamente sobre su forma con γ = 1/n.

    √((n-2)/(n-1))·(Σ_{j≠p}|((n-1)zⱼ + zₚ)/n|² + (n-2)/n²·Σ_{j≠p}|zₚ-zⱼ|² - (n-1)/n²·|Σzⱼ|²)^{1/2}
    """
    values = validate_roots(roots, min_length=2)
    n = values.size
    pivot = n - 1 if pivot is None else validate_index(pivot, n, "pivote")
    keep = np.arange(n) != pivot
    z, zp = values[keep], values[pivot]

    first = math.fsum(np.abs(((n - 1) * z + zp) / n) ** 2)
    second = (n - 2) / n ** 2 * math.fsum(np.abs(zp - z) ** 2)
    third = (n - 1) / n ** 2 * abs(_exact_sum(values)) ** 2
    return math.sqrt((n - 2) / (n - 1)) * _checked_sqrt(first + second - third, root_scale(values))


def trace_radius_from_matrix(matrix: CompanionMatrix) -> float:
    """Radio √((m-1)/m)·(tr M*M - |tr M|²/m)^{1/2} calculado entrada a entrada."""
    m = matrix.dimension
    radicand = matrix.frobenius_squared() - abs(matrix.trace()) ** 2 / m
    scale = 1.0 + float(np.max(np.abs(matrix.entries))) if m else 1.0
    return math.sqrt((m - 1) / m) * _checked_sqrt(radicand, scale)


def gershgorin_union(roots: Iterable[complex], gamma: Iterable[float], pivot: Optional[int] = None) -> DiscUnion:
    """
    Discos de fila de M: centro (1-γⱼ)zⱼ + γⱼzₚ y radio (n-2)γⱼ|zₚ-zⱼ| para j ≠ p.

    Raises:
        ValueError: Si el pivote está fuera de rango
    """
    values, weights, pivot = _prepare(roots, gamma, pivot)
    n = values.size
    discs = []
    for j in range(n):
        if j == pivot:
            continue
        zj, gj, zp = values[j], float(weights[j]), values[pivot]
        discs.append(Disc(center=complex((1 - gj) * zj + gj * zp), radius=(n - 2) * gj * abs(zp - zj)))
    return DiscUnion(discs=tuple(discs), pivot=pivot)


def _pivot_score(union: DiscUnion, criterion: str) -> float:
    if criterion == "min-total-area":
        return union.total_area
    return union.max_radius


def best_pivot(roots: Iterable[complex], gamma: Iterable[float], criterion: PivotCriterion = "min-total-area") -> int:
    """
    Pivote que minimiza el criterio sobre las n elecciones posibles.

    Los empates (hasta 1e-12 relativo) se resuelven por el menor índice.

    Raises:
        ValueError: Si el criterio no es "min-total-area" ni "min-max-radius"
    """
    if criterion not in PIVOT_CRITERIA:
        raise ValueError(f"Criterio de pivote desconocido: '{criterion}'")
    values = validate_roots(roots, min_length=2)
    weights = validate_weights(gamma, length=values.size)

    best_index, best_score = 0, math.inf
    for pivot in range(values.size):
        score = _pivot_score(gershgorin_union(values, weights, pivot), criterion)
        if score < best_score - PIVOT_TIE_TOL * max(1.0, abs(best_score) if math.isfinite(best_score) else 1.0):
            best_index, best_score = pivot, score
    logger.debug("Pivote elegido por %s: %d (%.6g)", criterion, best_index, best_score)
    return best_index


def disc_contains_all(d: Union[Disc, DiscUnion], zeros: Iterable[complex], tol: float = 0.0) -> ContainmentResult:
    """
    ¿Está cada cero a distancia <= radio + tol del centro de algún disco?

    Retorna:
        ContainmentResult con el veredicto y el mayor exceso observado.
    """
    tol = validate_tolerance(tol)
    excesses = [d.excess(z) for z in zeros]
    worst = max(excesses) if excesses else 0.0
    return ContainmentResult(holds=worst <= tol, max_violation=worst)
