"""
Aritmética de polinomios complejos

Objetivo:
    Construir y manipular los polinomios del problema: el polinomio mónico con
    ceros z₁..zₙ, sus polinomios incompletos gₖ (y g_{ij}, g_I), las
    combinaciones convexas A_n^γ = Σγₖgₖ, el polinomio de módulos B_n y la
    descomposición de un polinomio mónico de grado n-1 en la base {gₖ}.

Representación:
    Coeficientes densos complex128 en orden ascendente de grado. Los valores son
    inmutables (arreglos de solo lectura dentro de dataclasses congeladas), de modo
    que todas las funciones son puras y seguras entre hilos.
"""

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from app.config import COEF_ABS_FLOOR, COEF_REL_TOL, DISTINCT_TOL, LAGRANGE_TOL, TRIM_TOL
from app.errors import ConfluentBasisError, DegreeError
from app.validators import validate_index, validate_pair_list, validate_roots, validate_weights

Scalar = Union[complex, float, int]


def _frozen(values: np.ndarray) -> np.ndarray:
    values = np.array(values, dtype=np.complex128)
    values.setflags(write=False)
    return values


def trim_coefficients(coeffs: Sequence[complex]) -> np.ndarray:
    """
    Elimina coeficientes finales con |c| <= 1e-14·max|c|.

    Siempre conserva al menos el término independiente.
    """
    values = np.asarray(coeffs, dtype=np.complex128).ravel()
    if values.size == 0:
        return _frozen(np.zeros(1))

    threshold = TRIM_TOL * float(np.max(np.abs(values)))
    last = values.size - 1
    while last > 0 and abs(values[last]) <= threshold:
        last -= 1
    return _frozen(values[: last + 1])


@dataclass(frozen=True, eq=False)
class Polynomial:
    """
    Polinomio complejo con coeficientes ascendentes.

    Atributos:
        coeffs: Coeficientes c₀..c_d (c_d != 0 salvo el polinomio nulo)
        degenerate: Marca resultados de convención (producto vacío, derivada
            de orden mayor que el grado)
    """

    coeffs: np.ndarray
    degenerate: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", trim_coefficients(self.coeffs))

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    @property
    def leading(self) -> complex:
        return complex(self.coeffs[-1])

    @property
    def is_zero(self) -> bool:
        return self.coeffs.size == 1 and self.coeffs[0] == 0

    def monic(self) -> "Polynomial":
        """Normaliza para que el coeficiente principal sea exactamente 1."""
        if self.is_zero:
            raise DegreeError("El polinomio nulo no se puede normalizar")
        values = np.array(self.coeffs / self.coeffs[-1])
        values[-1] = 1.0
        return Polynomial(values, degenerate=self.degenerate)

    def scaled(self, factor: Scalar) -> "Polynomial":
        return Polynomial(self.coeffs * factor, degenerate=self.degenerate)

    def __call__(self, z):
        return evaluate(self, z)


def constant_one(degenerate: bool = False) -> Polynomial:
    return Polynomial(np.ones(1), degenerate=degenerate)


def coefficients_close(p: Polynomial, q: Polynomial, rel: float = COEF_REL_TOL, floor: float = COEF_ABS_FLOOR) -> bool:
    """
    Igualdad de coeficientes con tolerancia relativa al mayor módulo de ambos.

    Args:
        p, q: Polinomios a comparar
        rel: Tolerancia relativa (por defecto 1e-12)
        floor: Piso absoluto (por defecto 1e-14)
    """
    return coefficient_distance(p, q) <= max(rel * _coefficient_scale(p, q), floor)


def coefficient_distance(p: Polynomial, q: Polynomial) -> float:
    """Máxima diferencia absoluta coeficiente a coeficiente (rellenando con ceros)."""
    size = max(p.coeffs.size, q.coeffs.size)
    a = np.zeros(size, dtype=np.complex128)
    b = np.zeros(size, dtype=np.complex128)
    a[: p.coeffs.size] = p.coeffs
    b[: q.coeffs.size] = q.coeffs
    return float(np.max(np.abs(a - b)))


def relative_coefficient_error(p: Polynomial, q: Polynomial) -> float:
    """Diferencia de coeficientes dividida por la escala de ambos polinomios."""
    scale = _coefficient_scale(p, q)
    distance = coefficient_distance(p, q)
    return distance / scale if scale > 0 else distance


def _coefficient_scale(p: Polynomial, q: Polynomial) -> float:
    return max(float(np.max(np.abs(p.coeffs))), float(np.max(np.abs(q.coeffs))))


def root_scale(roots: Iterable[complex]) -> float:
    """Escala 1 + max|zⱼ| usada por todas las tolerancias."""
    values = np.asarray(list(roots) if not isinstance(roots, np.ndarray) else roots, dtype=np.complex128)
    if values.size == 0:
        return 1.0
    return 1.0 + float(np.max(np.abs(values)))


# ==========================================
# Construcción y evaluación
# ==========================================

def _expand(roots: np.ndarray) -> np.ndarray:
    # Multiplicación secuencial por (z - r) en el orden de entrada
    coeffs = np.ones(1, dtype=np.complex128)
    for r in roots:
        nxt = np.zeros(coeffs.size + 1, dtype=np.complex128)
        nxt[1:] += coeffs
        nxt[:-1] -= r * coeffs
        coeffs = nxt
    return coeffs


def from_roots(roots: Iterable[complex]) -> Polynomial:
    """
    Polinomio mónico Π(z - zⱼ).

    Args:
        roots: Raíces z₁..zₙ (n >= 1)

    Returns:
        Polinomio mónico de grado n

    Raises:
        ValueError: Si la lista de raíces está vacía
    """
    values = validate_roots(roots)
    return Polynomial(_expand(values))


def evaluate(p: Polynomial, z):
    """
    Evalúa p en z por el esquema de Horner.

    Acepta un escalar o un arreglo de puntos.
    """
    if np.ndim(z) == 0:
        acc = 0j
        for c in p.coeffs[::-1]:
            acc = acc * z + c
        return complex(acc)

    points = np.asarray(z, dtype=np.complex128)
    acc = np.zeros(points.shape, dtype=np.complex128)
    for c in p.coeffs[::-1]:
        acc = acc * points + c
    return acc


def derivative(p: Polynomial, order: int = 1) -> Polynomial:
    """
    Derivada de orden `order` por la recurrencia de coeficientes.

    Si el orden supera el grado devuelve el polinomio nulo con la marca
    `degenerate` activa.

    Raises:
        DegreeError: Si el orden no es un entero positivo
    """
    if isinstance(order, bool) or not isinstance(order, (int, np.integer)) or order < 1:
        raise DegreeError("El orden de la derivada debe ser un entero positivo")

    if order > p.degree:
        return Polynomial(np.zeros(1), degenerate=True)

    k = np.arange(order, p.coeffs.size)
    factors = np.array([math.perm(int(i), order) for i in k], dtype=np.float64)
    return Polynomial(p.coeffs[order:] * factors)


# ==========================================
# Polinomios incompletos
# ==========================================

def higher_order_incomplete(roots: Iterable[complex], indices: Iterable[int]) -> Polynomial:
    """
    g_I(z): producto de (z - zⱼ) excluyendo los índices de I (0-based).

    Si se excluyen todas las raíces devuelve la constante 1 marcada como degenerada.

    Raises:
        ValueError: Si algún índice está fuera de rango o repetido
    """
    values = validate_roots(roots)
    removed = [validate_index(i, values.size) for i in indices]
    if len(set(removed)) != len(removed):
        raise ValueError("Los índices a excluir no pueden repetirse")

    keep = np.ones(values.size, dtype=bool)
    keep[removed] = False
    if not np.any(keep):
        return constant_one(degenerate=True)
    return Polynomial(_expand(values[keep]))


def incomplete(roots: Iterable[complex], k: int) -> Polynomial:
    """
    gₖ(z) = Π_{j≠k}(z - zⱼ), mónico de grado n-1 (k 0-based).

    Con n = 1 se aplica la convención del producto vacío (constante 1 degenerada).

    Raises:
        ValueError: Si k está fuera de rango
    """
    return higher_order_incomplete(roots, [k])


def second_order_incomplete(roots: Iterable[complex], i: int, j: int) -> Polynomial:
    """
    g_{ij}(z) = Π_{l≠i,j}(z - z_l), mónico de grado n-2 (índices 0-based, i < j).

    Raises:
        ValueError: Si i >= j o algún índice está fuera de rango
    """
    values = validate_roots(roots, min_length=2)
    validate_index(i, values.size)
    validate_index(j, values.size)
    if i == j:
        raise ValueError("Los índices i y j deben ser distintos")
    if i > j:
        raise ValueError("Se requiere i < j")
    return higher_order_incomplete(values, [i, j])


def elementary_incomplete_sum(roots: Iterable[complex], k: int) -> Polynomial:
    """
    Σ_{|I|=k} g_I(z): forma simétrica elemental de A_n^{(k)}/k!.

    Raises:
        DegreeError: Si k no está en [1, n]
    """
    values = validate_roots(roots)
    n = values.size
    if k < 1 or k > n:
        raise DegreeError(f"k debe estar entre 1 y {n}")

    total = np.zeros(n - k + 1, dtype=np.complex128)
    for subset in combinations(range(n), k):
        keep = np.ones(n, dtype=bool)
        keep[list(subset)] = False
        total += _expand(values[keep])
    return Polynomial(total)


# ==========================================
# Combinaciones convexas
# ==========================================

def _weighted_incomplete_sum(values: np.ndarray, weights: np.ndarray) -> np.ndarray:
    n = values.size
    total = np.zeros(n, dtype=np.complex128)
    for k in range(n):
        if weights[k] == 0:
            continue
        total += weights[k] * _expand(np.delete(values, k))
    return total


def convex_combination(roots: Iterable[complex], gamma: Iterable[float]) -> Polynomial:
    """
    A_n^γ(z) = Σ γₖ gₖ(z), polinomio mónico de grado n-1.

    Args:
        roots: Raíces z₁..zₙ (n >= 2)
        gamma: Pesos no negativos que suman 1

    Raises:
        ValueError: Si las longitudes no coinciden o los pesos no son válidos
    """
    values = validate_roots(roots, min_length=2)
    weights = validate_weights(gamma, length=values.size)
    return Polynomial(_weighted_incomplete_sum(values, weights)).monic()


def second_order_gamma_combination(roots: Iterable[complex], gamma: Iterable[float]) -> Polynomial:
    """
    Σₖ γₖ Σ_{j≠k} g_{kj}(z), es decir Σₖ γₖ gₖ'(z).

    Coincide coeficiente a coeficiente con la derivada de A_n^γ. Se devuelve la
    suma sin normalizar (coeficiente principal n-1).

    Raises:
        DegreeError: Si n < 3
    """
    values = validate_roots(roots)
    if values.size < 3:
        raise DegreeError("Se requieren al menos 3 raíces")
    weights = validate_weights(gamma, length=values.size)

    n = values.size
    total = np.zeros(n - 1, dtype=np.complex128)
    for k in range(n):
        if weights[k] == 0:
            continue
        inner = np.zeros(n - 1, dtype=np.complex128)
        for j in range(n):
            if j == k:
                continue
            keep = np.ones(n, dtype=bool)
            keep[[k, j]] = False
            inner += _expand(values[keep])
        total += weights[k] * inner
    return Polynomial(total)


def pairwise_combination(roots: Iterable[complex], pair_weights: dict[tuple[int, int], float]) -> Polynomial:
    """
    Σ r_{ij} g_{ij}(z) con pesos r no negativos que suman 1 sobre pares i < j.

    Sus ceros pueden quedar fuera de la envolvente convexa de las raíces.

    Args:
        roots: Raíces (n >= 2)
        pair_weights: Diccionario {(i, j): r_ij} con índices 0-based

    Raises:
        ValueError: Si los pares o los pesos no son válidos
    """
    values = validate_roots(roots, min_length=2)
    pairs = validate_pair_list(list(pair_weights.keys()), values.size)
    weights = validate_weights([pair_weights[p] for p in pairs])

    total = np.zeros(values.size - 1, dtype=np.complex128)
    for (i, j), r in zip(pairs, weights):
        keep = np.ones(values.size, dtype=bool)
        keep[[i, j]] = False
        total += r * _expand(values[keep])
    return Polynomial(total).monic()


def absolute_value_poly(roots: Iterable[complex]) -> Polynomial:
    """
    B_n(z) = Π(z - |zⱼ|), con coeficientes reales.
    """
    values = validate_roots(roots)
    moduli = np.abs(values).astype(np.complex128)
    coeffs = _expand(moduli)
    return Polynomial(coeffs.real.astype(np.complex128))


# ==========================================
# Descomposición en la base {gₖ}
# ==========================================

@dataclass(frozen=True)
class OffendingCoefficient:
    """Coeficiente λₖ que impide la representación convexa."""

    index: int
    value: complex
    reason: str


@dataclass(frozen=True, eq=False)
class DecompositionResult:
    """
    Resultado de expresar un polinomio mónico como Σλₖgₖ.

    Exactamente una de las ramas está poblada: `weights` (factible) u
    `offending` (no factible). `coefficients` guarda siempre los λₖ complejos.
    """

    coefficients: np.ndarray
    weights: Optional[np.ndarray] = None
    offending: tuple[OffendingCoefficient, ...] = ()

    @property
    def feasible(self) -> bool:
        return self.weights is not None


def min_pairwise_distance(values: np.ndarray) -> float:
    if values.size < 2:
        return math.inf
    diffs = np.abs(values[:, None] - values[None, :])
    np.fill_diagonal(diffs, np.inf)
    return float(np.min(diffs))


def partial_fraction_coefficients(roots: Iterable[complex], target: Polynomial) -> np.ndarray:
    """
    λₖ = q(zₖ)/gₖ(zₖ) para un objetivo mónico q de grado n-1 y raíces distintas.

    Son los coeficientes de q/p = Σ λₖ/(z - zₖ) y suman 1.

    Raises:
        ConfluentBasisError: Si hay raíces repetidas
        DegreeError: Si el objetivo no es mónico de grado n-1
    """
    values = validate_roots(roots, min_length=2)
    n = values.size

    if min_pairwise_distance(values) <= DISTINCT_TOL * root_scale(values):
        raise ConfluentBasisError("Base confluente no soportada: las raíces deben ser distintas")

    if target.degree != n - 1:
        raise DegreeError(f"El polinomio objetivo debe tener grado {n - 1} (tiene grado {target.degree})")

    if abs(target.leading - 1) > COEF_REL_TOL:
        raise DegreeError("El polinomio objetivo debe ser mónico")

    lam = np.empty(n, dtype=np.complex128)
    for k in range(n):
        lam[k] = evaluate(target, values[k]) / evaluate(incomplete(values, k), values[k])
    lam.setflags(write=False)
    return lam


def lagrange_decompose(roots: Iterable[complex], target: Polynomial) -> DecompositionResult:
    """
    Decide si un polinomio mónico de grado n-1 es combinación convexa de los gₖ.

    Objetivo:
        Resolver el sistema por igualación de coeficientes, que en la base de tipo
        Lagrange {gₖ} tiene solución única λₖ = q(zₖ)/gₖ(zₖ).

    Operación:
        - Calcula los λₖ complejos.
        - Es factible si cada λₖ tiene parte real >= -1e-10 y |Im λₖ| <= 1e-10.
        - Los motivos de rechazo (parte real negativa, parte imaginaria no nula)
          se reportan por separado.

    Retorna:
        DecompositionResult con los pesos o con el certificado de no factibilidad.
    """
    lam = partial_fraction_coefficients(roots, target)

    offending = []
    for k, value in enumerate(lam):
        if value.real < -LAGRANGE_TOL:
            offending.append(OffendingCoefficient(k, complex(value), "parte real negativa"))
        if abs(value.imag) > LAGRANGE_TOL:
            offending.append(OffendingCoefficient(k, complex(value), "parte imaginaria no nula"))

    if offending:
        return DecompositionResult(coefficients=lam, offending=tuple(offending))

    real = np.clip(lam.real, 0.0, None)
    weights = real / math.fsum(real)
    return DecompositionResult(coefficients=lam, weights=validate_weights(weights))
