"""
Matrices D-companion

Objetivo:
    Construir las matrices cuyo polinomio característico es la combinación convexa
    de polinomios incompletos, dando un camino independiente para calcular sus ceros:

    - Completa (n×n):    D(I - ΛJ), con polinomio característico z·A_n^γ(z).
    - Reducida ((n-1)×(n-1)): M = D(I - ΛJ) + zₙΛJ sobre las raíces distintas del
      pivote, con polinomio característico A_n^γ(z).

    D = diag(zⱼ), Λ = diag(γⱼ) y J es la matriz de unos. El pivote es la raíz que
    hace el papel de zₙ; la reindexación se hace sobre copias.
"""

import math
from dataclasses import dataclass
from typing import Iterable, Literal, Optional

import numpy as np

from app.config import MAX_COMPANION_DIM
from app.errors import DegreeError
from app.poly_core import Polynomial, partial_fraction_coefficients
from app.validators import validate_index, validate_roots, validate_weights


@dataclass(frozen=True, eq=False)
class CompanionMatrix:
    """
    Matriz companion densa.

    Atributos:
        entries: Matriz compleja m×m de solo lectura
        kind: "full" (m = n) o "reduced" (m = n-1)
        pivot: Índice 0-based de la raíz que actúa como zₙ (solo reducida)
    """

    entries: np.ndarray
    kind: Literal["full", "reduced"]
    pivot: Optional[int] = None

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]

    def trace(self) -> complex:
        return complex(np.trace(self.entries))

    def frobenius_squared(self) -> float:
        """tr M*M = Σ|mᵢⱼ|²."""
        return math.fsum((np.abs(self.entries) ** 2).ravel())

    def deleted_row_sums(self) -> np.ndarray:
        """Sumas absolutas de cada fila sin el elemento diagonal."""
        absolute = np.abs(self.entries)
        return absolute.sum(axis=1) - np.abs(np.diag(self.entries))


def _freeze(matrix: np.ndarray) -> np.ndarray:
    matrix = np.array(matrix, dtype=np.complex128)
    matrix.setflags(write=False)
    return matrix


def _full_entries(values: np.ndarray, lam: np.ndarray) -> np.ndarray:
    n = values.size
    # D(I - ΛJ): fila i = zᵢ(eᵢ - λᵢ·1)
    return values[:, None] * (np.eye(n) - lam[:, None] * np.ones((1, n)))


def _reduced_entries(values: np.ndarray, lam: np.ndarray, pivot: int) -> np.ndarray:
    keep = np.arange(values.size) != pivot
    z = values[keep]
    weights = lam[keep]
    zn = values[pivot]

    m = z.size
    off = (weights * (zn - z))[:, None] * np.ones((1, m), dtype=np.complex128)
    diag = (1 - weights) * z + weights * zn
    matrix = off.copy()
    matrix[np.arange(m), np.arange(m)] = diag
    return matrix


def build_full(roots: Iterable[complex], gamma: Iterable[float]) -> CompanionMatrix:
    """
    D-companion completa D(I - ΛJ), de entrada (i, j) = zᵢ(δᵢⱼ - γᵢ).

    Raises:
        ValueError: Si n < 2 o las longitudes no coinciden
    """
    values = validate_roots(roots, min_length=2)
    weights = validate_weights(gamma, length=values.size)
    return CompanionMatrix(_freeze(_full_entries(values, weights.astype(np.complex128))), kind="full")


def build_reduced(roots: Iterable[complex], gamma: Iterable[float], pivot: Optional[int] = None) -> CompanionMatrix:
    """
    Companion reducida M de dimensión n-1.

    Entradas:
        - diagonal: (1 - γᵢ)zᵢ + γᵢzₙ
        - fuera de la diagonal (fila i): γᵢ(zₙ - zᵢ)

    Args:
        roots: Raíces z₁..zₙ (n >= 2)
        gamma: Pesos convexos
        pivot: Índice 0-based de la raíz que actúa como zₙ (por defecto la última)

    Raises:
        ValueError: Si el pivote está fuera de rango o los pesos no son válidos
    """
    values = validate_roots(roots, min_length=2)
    weights = validate_weights(gamma, length=values.size)
    pivot = values.size - 1 if pivot is None else validate_index(pivot, values.size, "pivote")
    entries = _reduced_entries(values, weights.astype(np.complex128), pivot)
    return CompanionMatrix(_freeze(entries), kind="reduced", pivot=pivot)


def build_reduced_from_target(roots: Iterable[complex], target: Polynomial, pivot: Optional[int] = None) -> CompanionMatrix:
    """
    Companion reducida para un polinomio mónico arbitrario q de grado n-1.

    Usa los coeficientes de fracciones parciales q/p = Σλⱼ/(z - zⱼ), que pueden
    ser negativos o complejos; su polinomio característico es q.

    Raises:
        ConfluentBasisError: Si las raíces no son distintas
    """
    values = validate_roots(roots, min_length=2)
    lam = partial_fraction_coefficients(values, target)
    pivot = values.size - 1 if pivot is None else validate_index(pivot, values.size, "pivote")
    return CompanionMatrix(_freeze(_reduced_entries(values, lam, pivot)), kind="reduced", pivot=pivot)


def all_reduced(roots: Iterable[complex], gamma: Iterable[float]) -> list[CompanionMatrix]:
    """Companion reducida para cada elección de pivote."""
    values = validate_roots(roots, min_length=2)
    return [build_reduced(values, gamma, pivot) for pivot in range(values.size)]


def char_poly(matrix: CompanionMatrix) -> Polynomial:
    """
    Polinomio característico mónico det(zI - A) por la recurrencia de Faddeev-LeVerrier.

    Operación:
        M₀ = 0, c_m = 1; para k = 1..m:
            Mₖ = A·M_{k-1} + c_{m-k+1}·I
            c_{m-k} = -tr(A·Mₖ)/k

    Raises:
        DegreeError: Si la dimensión supera 64 (límite de precisión)
    """
    a = np.asarray(matrix.entries if isinstance(matrix, CompanionMatrix) else matrix, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DegreeError("La matriz debe ser cuadrada")

    m = a.shape[0]
    if m > MAX_COMPANION_DIM:
        raise DegreeError(f"Dimensión {m} mayor que el máximo soportado ({MAX_COMPANION_DIM})")

    coeffs = np.zeros(m + 1, dtype=np.complex128)
    coeffs[m] = 1.0
    identity = np.eye(m, dtype=np.complex128)
    current = np.zeros((m, m), dtype=np.complex128)
    for k in range(1, m + 1):
        current = a @ current + coeffs[m - k + 1] * identity
        coeffs[m - k] = -np.trace(a @ current) / k
    return Polynomial(coeffs)


def determinant_lemma_poly(roots: Iterable[complex], weights: Iterable[complex], pivot: Optional[int] = None) -> Polynomial:
    """
    Forma cerrada de det(zI - M) por el lema del determinante de rango uno.

    det(zI - D + Λ(D - zₙI)·1·1ᵀ) = Π_{j≠p}(z - zⱼ) + Σ_{k≠p} λₖ(zₖ - zₙ)·Π_{j≠k,p}(z - zⱼ)

    Los pesos pueden ser complejos siempre que sumen 1.
    """
    values = validate_roots(roots, min_length=2)
    lam = np.asarray(list(weights) if not isinstance(weights, np.ndarray) else weights, dtype=np.complex128)
    if lam.size != values.size:
        raise ValueError("La cantidad de pesos no coincide con la cantidad de raíces")
    pivot = values.size - 1 if pivot is None else validate_index(pivot, values.size, "pivote")

    rest = [k for k in range(values.size) if k != pivot]
    zn = values[pivot]

    total = np.zeros(len(rest) + 1, dtype=np.complex128)
    total += _expand_rest(values, rest, None)
    for k in rest:
        total[:-1] += lam[k] * (values[k] - zn) * _expand_rest(values, rest, k)
    return Polynomial(total)


def _expand_rest(values: np.ndarray, rest: list[int], skip: Optional[int]) -> np.ndarray:
    coeffs = np.ones(1, dtype=np.complex128)
    for j in rest:
        if j == skip:
            continue
        nxt = np.zeros(coeffs.size + 1, dtype=np.complex128)
        nxt[1:] += coeffs
        nxt[:-1] -= values[j] * coeffs
        coeffs = nxt
    return coeffs
