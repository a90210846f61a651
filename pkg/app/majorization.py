"""
Verificación de cadenas de mayorización entre multiconjuntos de ceros

Objetivo:
    Comprobar, sobre ceros calculados, las desigualdades de prefijos:

    - Producto (log-mayorización débil): Π_{j<=k}|wⱼ| <= Π_{j<=k}|zⱼ|
    - Suma de φ: Σ_{j<=k} φ(|wⱼ|) <= Σ_{j<=k} φ(|zⱼ|), con φ(eᵗ) convexa y creciente
    - Comparación con el polinomio de módulos B_n: w contra v, k = 1..n-1

    Los productos se acumulan en dominio logarítmico; un módulo exactamente cero
    lleva el prefijo de ese lado a -inf.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Literal, Optional

import numpy as np

from app.config import MAJORIZATION_TOL
from app.errors import InvalidTransformError
from app.roots_engine import SortedRoots, real_combination_zeros, sort_desc_modulus, zeros_of_combination
from app.validators import validate_roots, validate_weights

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScalarTransform:
    """
    Función φ: [0, ∞) → ℝ con φ(eᵗ) convexa y no decreciente en t.

    Atributos:
        name: Etiqueta para los reportes
        apply: Función vectorizada sobre arreglos de reales no negativos
    """

    name: str
    apply: Callable[[np.ndarray], np.ndarray]

    def validate(self) -> "ScalarTransform":
        """
        Comprueba por muestreo monotonía en [0, ∞) y convexidad de φ(eᵗ).

        Raises:
            InvalidTransformError: Si alguna de las dos condiciones falla
        """
        grid = np.concatenate(([0.0], np.geomspace(1e-3, 1e3, 63)))
        values = np.asarray(self.apply(grid), dtype=np.float64)
        if not np.all(np.isfinite(values)):
            raise InvalidTransformError(f"φ = {self.name} no es finita en la malla de prueba")

        steps = np.diff(values)
        if np.any(steps < -1e-12 * np.maximum(1.0, np.abs(values[1:]))):
            raise InvalidTransformError(f"φ = {self.name} no es monótona no decreciente")

        t = np.linspace(-6.0, 6.0, 64)
        composed = np.asarray(self.apply(np.exp(t)), dtype=np.float64)
        second = composed[2:] - 2 * composed[1:-1] + composed[:-2]
        if np.any(second < -1e-9 * np.maximum(1.0, np.abs(composed[1:-1]))):
            raise InvalidTransformError(f"φ(eᵗ) no es convexa para φ = {self.name}")

        return self


def power_transform(p: float) -> ScalarTransform:
    """
    φ(t) = t^p con p >= 1.

    Raises:
        InvalidTransformError: Si p < 1
    """
    if not math.isfinite(p) or p < 1:
        raise InvalidTransformError("El exponente de φ(t) = t^p debe ser p >= 1")
    return ScalarTransform(name=f"t^{p:g}", apply=lambda x: np.power(x, p))


def log1p_transform() -> ScalarTransform:
    """φ(t) = log(1 + t); φ(eᵗ) es la función softplus, convexa y creciente."""
    return ScalarTransform(name="log1p", apply=np.log1p)


def transform_by_name(name: str) -> ScalarTransform:
    """
    Resuelve "t", "t^p" (p >= 1) o "log1p".

    Raises:
        InvalidTransformError: Si el nombre no corresponde a ninguna φ conocida
    """
    name = name.strip()
    if name == "t":
        return power_transform(1.0)
    if name == "log1p":
        return log1p_transform()
    if name.startswith("t^"):
        try:
            p = float(name[2:])
        except ValueError:
            raise InvalidTransformError(f"Exponente inválido en '{name}'")
        return power_transform(p)
    raise InvalidTransformError(f"φ desconocida: '{name}' (use t, t^p o log1p)")


@dataclass(frozen=True, eq=False)
class MajorizationReport:
    """
    Resultado de comparar dos multiconjuntos por prefijos.

    Atributos:
        left_moduli / right_moduli: Módulos ordenados de forma descendente
        per_k_margin: Lado derecho menos lado izquierdo por prefijo (en dominio
            logarítmico para el modo producto)
        violated_at: Primer k (1-based) violado, o None
        mode: "product" o "phi-sum"
        phi_name: Etiqueta de φ ("log" en modo producto)
        tolerance: Tolerancia relativa aplicada
    """

    left_moduli: np.ndarray
    right_moduli: np.ndarray
    per_k_margin: np.ndarray
    violated_at: Optional[int]
    mode: Literal["product", "phi-sum"]
    phi_name: str
    tolerance: float

    @property
    def holds(self) -> bool:
        return self.violated_at is None

    @property
    def verdict(self) -> str:
        return "holds" if self.holds else f"violated-at-{self.violated_at}"

    @property
    def worst_margin(self) -> float:
        if self.per_k_margin.size == 0:
            return math.inf
        return float(np.min(self.per_k_margin))


def _aligned(w: SortedRoots, z: SortedRoots, upto: Optional[int]) -> tuple[np.ndarray, np.ndarray, int]:
    left = w.moduli
    right = z.moduli
    if left.size < right.size:
        left = np.concatenate((left, np.zeros(right.size - left.size)))
    if left.size != right.size:
        raise ValueError(
            f"Las listas tienen longitudes incompatibles ({w.roots.size} y {z.roots.size}) aun con relleno"
        )
    count = right.size if upto is None else int(upto)
    if count < 1 or count > right.size:
        raise ValueError(f"El rango de k debe estar entre 1 y {right.size}")
    return left, right, count


def _log_prefix(moduli: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        logs = np.log(moduli)
    return np.cumsum(logs)


def product_majorization(w: SortedRoots, z: SortedRoots, upto: Optional[int] = None, tol: float = MAJORIZATION_TOL) -> MajorizationReport:
    """
    Log-mayorización débil Π_{j<=k}|wⱼ| <= Π_{j<=k}|zⱼ|.

    Operación:
        - Rellena w con ceros exactos hasta la longitud de z (wₙ := 0).
        - Acumula log-módulos; un cero exacto lleva el prefijo a -inf.
        - Un prefijo se cumple si izquierda <= derecha + tol·max(1, derecha),
          evaluado de forma estable en dominio logarítmico.

    Raises:
        ValueError: Si las longitudes no son compatibles
    """
    left, right, count = _aligned(w, z, upto)
    left_log = _log_prefix(left[:count])
    right_log = _log_prefix(right[:count])

    with np.errstate(invalid="ignore"):
        margins = right_log - left_log
    margins = np.where(np.isneginf(right_log) & np.isneginf(left_log), 0.0, margins)

    slack = math.log(tol) if tol > 0 else -math.inf
    bound = np.logaddexp(right_log, slack + np.maximum(0.0, right_log))
    violated = [k + 1 for k in range(count) if left_log[k] > bound[k]]

    report = MajorizationReport(
        left_moduli=left,
        right_moduli=right,
        per_k_margin=margins,
        violated_at=violated[0] if violated else None,
        mode="product",
        phi_name="log",
        tolerance=tol,
    )
    logger.debug("Mayorización de productos: %s", report.verdict)
    return report


def phi_sum_majorization(
    w: SortedRoots,
    z: SortedRoots,
    phi: ScalarTransform,
    upto: Optional[int] = None,
    tol: float = MAJORIZATION_TOL,
) -> MajorizationReport:
    """
    Σ_{j<=k} φ(|wⱼ|) <= Σ_{j<=k} φ(|zⱼ|) para k = 1..upto.

    Raises:
        InvalidTransformError: Si φ no supera la validación por muestreo
        ValueError: Si las longitudes no son compatibles
    """
    phi.validate()
    left, right, count = _aligned(w, z, upto)

    left_sum = np.cumsum(np.asarray(phi.apply(left[:count]), dtype=np.float64))
    right_sum = np.cumsum(np.asarray(phi.apply(right[:count]), dtype=np.float64))
    margins = right_sum - left_sum

    violated = [
        k + 1 for k in range(count) if margins[k] < -tol * max(1.0, abs(right_sum[k]))
    ]

    report = MajorizationReport(
        left_moduli=left,
        right_moduli=right,
        per_k_margin=margins,
        violated_at=violated[0] if violated else None,
        mode="phi-sum",
        phi_name=phi.name,
        tolerance=tol,
    )
    logger.debug("Mayorización de sumas φ=%s: %s", phi.name, report.verdict)
    return report


def combination_vs_roots(
    roots: Iterable[complex],
    gamma: Iterable[float],
    phi: Optional[ScalarTransform] = None,
    pivot: Optional[int] = None,
) -> MajorizationReport:
    """
    Ceros w de A_n^γ contra las raíces z, en el rango con relleno k = 1..n.

    Con `phi` usa la forma de sumas; sin ella, la de productos.
    """
    values = validate_roots(roots, min_length=2)
    w = zeros_of_combination(values, gamma, pivot)
    z = sort_desc_modulus(values)
    if phi is None:
        return product_majorization(w, z)
    return phi_sum_majorization(w, z, phi)


def compare_with_absolute(
    roots: Iterable[complex],
    gamma: Iterable[float],
    phi: Optional[ScalarTransform] = None,
    pivot: Optional[int] = None,
) -> MajorizationReport:
    """
    Ceros w de A_n^γ contra ceros v de B_n^γ (raíces |zⱼ|), k = 1..n-1, sin relleno.

    Los vⱼ son reales: los |zⱼ| repetidos dan ceros exactos y el resto se aísla
    entre módulos distintos consecutivos.
    """
    values = validate_roots(roots, min_length=2)
    weights = validate_weights(gamma, length=values.size)
    w = zeros_of_combination(values, weights, pivot)
    v = sort_desc_modulus(real_combination_zeros(np.abs(values), weights))

    upto = values.size - 1
    if phi is None:
        return product_majorization(w, v, upto=upto)
    return phi_sum_majorization(w, v, phi, upto=upto)
