"""
Validadores de las propiedades de los ceros sobre una instancia

Este módulo contiene las comprobaciones que se ejecutan sobre una instancia
(raíces, pesos, pivote) para verificar las contenciones, identidades de
companion, cadenas de mayorización y discos de localización. Cada comprobación
devuelve un `TheoremVerdict`; un fallo numérico (no convergencia, divergencia
entre caminos de cálculo) se reporta como violación con su mensaje.
"""

import logging
import math
import time
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Optional

import numpy as np

from app.bounds import Disc, disc_contains_all, gershgorin_union, trace_disc, trace_radius_from_matrix
from app.companion import build_full, build_reduced, char_poly
from app.config import IDENTITY_REL_TOL, MAJORIZATION_TOL, RADIUS_CANCELLATION_FRACTION, RADIUS_REL_TOL, RECOVERY_TOL
from app.hull_geometry import Hull, contains, convex_hull, default_tol, distance_to_hull, recover_gamma
from app.majorization import (
    MajorizationReport,
    ScalarTransform,
    compare_with_absolute,
    phi_sum_majorization,
    power_transform,
    product_majorization,
    transform_by_name,
)
from app.poly_core import (
    Polynomial,
    convex_combination,
    evaluate,
    relative_coefficient_error,
    root_scale,
)
from app.roots_engine import SortedRoots, combination_zeros, derivative_zeros, sort_desc_modulus, zeros_of_combination
from app.schemas import TheoremVerdict
from app.validators import uniform_weights, validate_roots, validate_weights

logger = logging.getLogger(__name__)

DEFAULT_PHIS = ("t^1", "t^1.5", "t^2", "t^4")


@dataclass
class CheckContext:
    """
    Instancia bajo verificación, con los cálculos compartidos en caché.

    Atributos:
        roots: Raíces validadas
        gamma: Pesos validados
        pivot: Pivote 0-based (None = última raíz)
        phis: Nombres de las φ para las mayorizaciones de sumas (ver transform_by_name)
    """

    roots: np.ndarray
    gamma: np.ndarray
    pivot: Optional[int] = None
    phis: tuple[str, ...] = field(default=DEFAULT_PHIS)

    @classmethod
    def build(
        cls,
        roots: Iterable[complex],
        gamma: Iterable[float],
        pivot: Optional[int] = None,
        phis: Optional[Iterable[str]] = None,
    ) -> "CheckContext":
        values = validate_roots(roots, min_length=2)
        names = DEFAULT_PHIS if phis is None else tuple(phis)
        ctx = cls(roots=values, gamma=validate_weights(gamma, length=values.size), pivot=pivot, phis=names)
        ctx.transforms  # las φ inválidas fallan aquí, no a mitad de la verificación
        return ctx

    @property
    def n(self) -> int:
        return self.roots.size

    @cached_property
    def transforms(self) -> list[ScalarTransform]:
        return [transform_by_name(name) for name in self.phis]

    @cached_property
    def scale(self) -> float:
        return root_scale(self.roots)

    @cached_property
    def tol(self) -> float:
        return default_tol(self.roots)

    @cached_property
    def hull(self) -> Hull:
        return convex_hull(self.roots)

    @cached_property
    def combination(self) -> Polynomial:
        return convex_combination(self.roots, self.gamma)

    @cached_property
    def zeros(self) -> SortedRoots:
        return zeros_of_combination(self.roots, self.gamma, self.pivot)


def _containment_verdict(name: str, ctx: CheckContext, points: Iterable[complex], detail: Optional[str] = None) -> TheoremVerdict:
    worst = max((distance_to_hull(ctx.hull, z) for z in points), default=0.0)
    return TheoremVerdict(
        theorem=name,
        holds=worst <= ctx.tol,
        margin=ctx.tol - worst,
        tolerance=ctx.tol,
        detail=detail,
    )


def _majorization_verdict(name: str, reports: list[MajorizationReport]) -> TheoremVerdict:
    failed = [r for r in reports if not r.holds]
    detail = None
    if failed:
        first = failed[0]
        detail = f"φ = {first.phi_name}: {first.verdict}"
    return TheoremVerdict(
        theorem=name,
        holds=not failed,
        margin=min(r.worst_margin for r in reports),
        tolerance=MAJORIZATION_TOL,
        detail=detail,
    )


# ==========================================
# Identidades de companion
# ==========================================

def check_full_companion(ctx: CheckContext) -> TheoremVerdict:
    """charpoly(D(I - ΛJ)) = z·A_n^γ(z) coeficiente a coeficiente."""
    expected = Polynomial(np.concatenate(([0.0], ctx.combination.coeffs)))
    error = relative_coefficient_error(char_poly(build_full(ctx.roots, ctx.gamma)), expected)
    return TheoremVerdict(
        theorem="full-companion",
        holds=error <= IDENTITY_REL_TOL,
        margin=IDENTITY_REL_TOL - error,
        tolerance=IDENTITY_REL_TOL,
    )


def check_reduced_companion(ctx: CheckContext) -> TheoremVerdict:
    """charpoly(M) = A_n^γ(z) para cada elección de pivote."""
    worst, worst_pivot = 0.0, 0
    for pivot in range(ctx.n):
        error = relative_coefficient_error(char_poly(build_reduced(ctx.roots, ctx.gamma, pivot)), ctx.combination)
        if error > worst:
            worst, worst_pivot = error, pivot
    holds = worst <= IDENTITY_REL_TOL
    return TheoremVerdict(
        theorem="reduced-companion",
        holds=holds,
        margin=IDENTITY_REL_TOL - worst,
        tolerance=IDENTITY_REL_TOL,
        detail=None if holds else f"pivote {worst_pivot + 1}",
    )


# ==========================================
# Contenciones en la envolvente convexa
# ==========================================

def check_hull_containment(ctx: CheckContext) -> TheoremVerdict:
    """Los ceros de A_n^γ están en H(z₁,…,zₙ)."""
    return _containment_verdict("hull-containment", ctx, ctx.zeros.roots)


def check_derivative_hull(ctx: CheckContext) -> TheoremVerdict:
    """Los ceros de A_n^{(k)}, k = 1..n-1, están en la envolvente."""
    points: list[complex] = []
    for level in derivative_zeros(ctx.roots):
        points.extend(level.roots)
    return _containment_verdict("derivative-hull", ctx, points)


def check_second_order_hull(ctx: CheckContext) -> TheoremVerdict:
    """Los ceros de Σγₖ Σ_{j≠k} g_{kj} están en la envolvente (n >= 3)."""
    if ctx.n < 3:
        return TheoremVerdict(theorem="second-order-hull", holds=True, margin=ctx.tol, tolerance=ctx.tol, detail="n < 3: no aplica")
    # Σγₖ Σ_{j≠k} g_{kj} es (A_n^γ)′: combinación uniforme sobre los ceros de A_n^γ
    q = combination_zeros(ctx.zeros.roots, uniform_weights(ctx.n - 1))
    return _containment_verdict("second-order-hull", ctx, q.roots)


def check_recovery(ctx: CheckContext) -> TheoremVerdict:
    """
    recover_gamma reconstruye pesos válidos para la media de las raíces y para
    el mayor cero de A_n^γ, con residuo <= 1e-9·(1 + escala)^{n-1}.
    """
    bound = RECOVERY_TOL * (1 + ctx.scale) ** (ctx.n - 1)
    worst = 0.0
    for a in (complex(np.mean(ctx.roots)), complex(ctx.zeros.roots[0])):
        if not contains(ctx.hull, a, ctx.tol):
            continue
        gamma = recover_gamma(ctx.roots, a)
        worst = max(worst, abs(evaluate(convex_combination(ctx.roots, gamma), a)))
    return TheoremVerdict(theorem="recovery", holds=worst <= bound, margin=bound - worst, tolerance=bound)


# ==========================================
# Mayorización
# ==========================================

def _padded_pair(ctx: CheckContext) -> tuple[SortedRoots, SortedRoots]:
    return ctx.zeros, sort_desc_modulus(ctx.roots)


def check_product_majorization(ctx: CheckContext) -> TheoremVerdict:
    """Π_{j<=k}|wⱼ| <= Π_{j<=k}|zⱼ|, k = 1..n, con wₙ := 0."""
    w, z = _padded_pair(ctx)
    return _majorization_verdict("product-majorization", [product_majorization(w, z)])


def check_power_majorization(ctx: CheckContext) -> TheoremVerdict:
    """Σ_{j<=k} φ(|wⱼ|) <= Σ_{j<=k} φ(|zⱼ|) para cada φ configurada (t^p por defecto)."""
    w, z = _padded_pair(ctx)
    reports = [phi_sum_majorization(w, z, phi) for phi in ctx.transforms]
    return _majorization_verdict("power-majorization", reports)


def check_absolute_majorization(ctx: CheckContext) -> TheoremVerdict:
    """Π_{j<=k}|wⱼ| <= Π_{j<=k}|vⱼ|, k = 1..n-1, con v los ceros de B_n^γ."""
    return _majorization_verdict(
        "absolute-majorization",
        [compare_with_absolute(ctx.roots, ctx.gamma, pivot=ctx.pivot)],
    )


def check_absolute_power_majorization(ctx: CheckContext) -> TheoremVerdict:
    reports = [
        compare_with_absolute(ctx.roots, ctx.gamma, phi, pivot=ctx.pivot)
        for phi in ctx.transforms
    ]
    return _majorization_verdict("absolute-power-majorization", reports)


# ==========================================
# Discos
# ==========================================

def radius_mismatch(entrywise: float, closed: float, frobenius: float) -> float:
    """
    Discrepancia relativa entre dos radios del disco de traza.

    Con r² < 1e-2·tr M*M el radicando pierde dígitos por cancelación; ahí se
    comparan los cuadrados relativos a tr M*M.
    """
    if entrywise == closed:
        return 0.0
    largest = max(entrywise, closed)
    if largest ** 2 >= RADIUS_CANCELLATION_FRACTION * frobenius:
        return abs(entrywise - closed) / largest
    return abs(entrywise ** 2 - closed ** 2) / frobenius


def check_trace_disc(ctx: CheckContext) -> TheoremVerdict:
    """
    Para cada pivote: el disco de traza contiene los ceros y su radio coincide
    con la evaluación entrada a entrada sobre M.

    Los radios se comparan con tolerancia relativa 1e-12 (ver radius_mismatch).
    """
    worst_excess, worst_mismatch = 0.0, 0.0
    for pivot in range(ctx.n):
        disc = trace_disc(ctx.roots, ctx.gamma, pivot)
        result = disc_contains_all(disc, ctx.zeros.roots)
        worst_excess = max(worst_excess, result.max_violation)

        matrix = build_reduced(ctx.roots, ctx.gamma, pivot)
        mismatch = radius_mismatch(trace_radius_from_matrix(matrix), disc.radius, matrix.frobenius_squared())
        worst_mismatch = max(worst_mismatch, mismatch)

    radius_ok = worst_mismatch <= RADIUS_REL_TOL
    holds = worst_excess <= ctx.tol and radius_ok
    detail = None
    if not radius_ok:
        detail = f"radio inconsistente con tr M*M ({worst_mismatch:.3e})"
    return TheoremVerdict(theorem="trace-disc", holds=holds, margin=ctx.tol - worst_excess, tolerance=ctx.tol, detail=detail)


def check_gershgorin(ctx: CheckContext) -> TheoremVerdict:
    """Para cada pivote, la unión de discos de fila contiene todos los ceros."""
    worst = 0.0
    for pivot in range(ctx.n):
        union = gershgorin_union(ctx.roots, ctx.gamma, pivot)
        worst = max(worst, disc_contains_all(union, ctx.zeros.roots).max_violation)
    return TheoremVerdict(theorem="gershgorin", holds=worst <= ctx.tol, margin=ctx.tol - worst, tolerance=ctx.tol)


CHECKS: dict[str, Callable[[CheckContext], TheoremVerdict]] = {
    "full-companion": check_full_companion,
    "reduced-companion": check_reduced_companion,
    "hull-containment": check_hull_containment,
    "derivative-hull": check_derivative_hull,
    "second-order-hull": check_second_order_hull,
    "product-majorization": check_product_majorization,
    "power-majorization": check_power_majorization,
    "absolute-majorization": check_absolute_majorization,
    "absolute-power-majorization": check_absolute_power_majorization,
    "trace-disc": check_trace_disc,
    "gershgorin": check_gershgorin,
    "recovery": check_recovery,
}


def resolve_selection(selection: Optional[Iterable[str]]) -> list[str]:
    """
    Nombres de comprobaciones en el orden del registro.

    Raises:
        ValueError: Si algún nombre no existe
    """
    if selection is None:
        return list(CHECKS)
    wanted = [name.strip() for name in selection if name.strip()]
    unknown = [name for name in wanted if name not in CHECKS]
    if unknown:
        raise ValueError(f"Comprobaciones desconocidas: {', '.join(unknown)} (disponibles: {', '.join(CHECKS)})")
    return [name for name in CHECKS if name in wanted]


def run_checks(ctx: CheckContext, selection: Optional[Iterable[str]] = None, timings: bool = False) -> list[TheoremVerdict]:
    """
    Ejecuta las comprobaciones seleccionadas, cada una exactamente una vez.

    Un ArithmeticError (no convergencia, divergencia de caminos, radicando
    negativo) se registra como violación de esa comprobación.
    """
    verdicts = []
    for name in resolve_selection(selection):
        started = time.perf_counter()
        try:
            verdict = CHECKS[name](ctx)
        except ArithmeticError as exc:
            logger.warning("La comprobación %s falló numéricamente: %s", name, exc)
            verdict = TheoremVerdict(theorem=name, holds=False, margin=-math.inf, tolerance=0.0, detail=str(exc))
        if timings:
            verdict = verdict.model_copy(update={"runtime": time.perf_counter() - started})
        logger.debug("%s: %s", name, "holds" if verdict.holds else "violated")
        verdicts.append(verdict)
    return verdicts


def self_test_verdicts() -> list[TheoremVerdict]:
    """
    Entradas fabricadas que violan cada verificador; todas deben salir violadas.

    - w = {2} contra z = {1} en mayorización de productos y de sumas.
    - el punto 2 contra la envolvente de {0, 1} y el disco unidad.
    """
    w = sort_desc_modulus([2.0])
    z = sort_desc_modulus([1.0])
    product = product_majorization(w, z)
    power = phi_sum_majorization(w, z, power_transform(2.0))

    hull = convex_hull([0.0, 1.0])
    distance = distance_to_hull(hull, 2.0)
    disc = disc_contains_all(Disc(center=0j, radius=1.0), [2.0])

    return [
        _majorization_verdict("product-majorization", [product]),
        _majorization_verdict("power-majorization", [power]),
        TheoremVerdict(theorem="hull-containment", holds=distance <= 0.0, margin=-distance, tolerance=0.0),
        TheoremVerdict(theorem="trace-disc", holds=disc.holds, margin=-disc.max_violation, tolerance=0.0),
    ]
