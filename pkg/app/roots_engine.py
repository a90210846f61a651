"""
Cálculo de ceros de polinomios y orden por módulo

Objetivo:
    Encontrar todos los ceros de un polinomio complejo por la iteración simultánea
    de Aberth-Ehrlich y proveer el orden canónico por módulo descendente que usan
    todas las desigualdades de mayorización.

Notas:
    - Los ceros de A_n^γ se refinan sobre la forma factorizada Σγₖ Π_{j≠k}(z - zⱼ):
      la expansión de coeficientes solo aporta las semillas.
    - Los ceros múltiples convergen como cúmulos; no se deflaciona.
    - `cluster_roots` es solo para presentación y para la verificación cruzada;
      los cálculos de mayorización usan los valores crudos.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

import numpy as np
from scipy.optimize import brentq, linear_sum_assignment

from app.companion import build_reduced, char_poly
from app.config import (
    CLUSTER_RADIUS,
    CROSS_CHECK_TOL,
    IDENTITY_REL_TOL,
    MAX_DEGREE,
    RESIDUAL_TOL,
    ROOT_INIT_OFFSET,
    ROOT_INIT_SHRINK,
    ROOT_MAX_ITER,
    ROOT_STEP_TOL,
    SEED_REACH,
)
from app.errors import CrossCheckError, DegreeError, RootConvergenceError
from app.poly_core import Polynomial, convex_combination, derivative, evaluate, relative_coefficient_error, root_scale
from app.validators import uniform_weights, validate_roots, validate_weights

logger = logging.getLogger(__name__)

_EPS = np.finfo(np.float64).eps


@dataclass(frozen=True, eq=False)
class SortedRoots:
    """
    Raíces ordenadas por módulo descendente.

    Empates: argumento principal ascendente y luego índice original ascendente.
    Los ceros de relleno (wₙ := 0) llevan índice original -1.

    Atributos:
        roots: Valores ordenados (solo lectura)
        order: Índice original de cada valor
    """

    roots: np.ndarray
    order: tuple[int, ...]

    @property
    def moduli(self) -> np.ndarray:
        return np.abs(self.roots)

    def __len__(self) -> int:
        return self.roots.size


def _principal_argument(z: complex) -> float:
    """Argumento en (-π, π]; el -0.0 imaginario no cambia el lado del corte."""
    angle = math.atan2(z.imag, z.real)
    return math.pi if angle == -math.pi else angle


def sort_desc_modulus(roots: Iterable[complex], pad_to: Optional[int] = None) -> SortedRoots:
    """
    Ordena por módulo descendente con desempate determinista.

    Args:
        roots: Valores a ordenar (puede estar vacío)
        pad_to: Si se indica, agrega ceros exactos al final hasta esa longitud

    Returns:
        SortedRoots
    """
    values = np.array(list(roots) if not isinstance(roots, np.ndarray) else roots, dtype=np.complex128).ravel()
    keys = sorted(range(values.size), key=lambda i: (-abs(values[i]), _principal_argument(values[i]), i))

    ordered = [complex(values[i]) for i in keys]
    order = list(keys)
    if pad_to is not None:
        while len(ordered) < pad_to:
            ordered.append(0j)
            order.append(-1)

    result = np.array(ordered, dtype=np.complex128)
    result.setflags(write=False)
    return SortedRoots(roots=result, order=tuple(order))


def _cauchy_radius(monic: np.ndarray) -> float:
    return 1.0 + float(np.max(np.abs(monic[:-1])))


def _abs_horner(magnitudes: np.ndarray, z: np.ndarray) -> np.ndarray:
    acc = np.zeros(z.shape, dtype=np.float64)
    modulus = np.abs(z)
    for c in magnitudes[::-1]:
        acc = acc * modulus + c
    return acc


def _noise_floor(monic: np.ndarray, z: np.ndarray) -> np.ndarray:
    # Cota del error de redondeo de Horner, evaluada con |aₖ| y |z|
    return 4 * monic.size * _EPS * _abs_horner(np.abs(monic), z)


def _initial_circle(degree: int, radius: float, offset: float) -> np.ndarray:
    angles = 2 * np.pi * np.arange(degree) / degree + offset
    return radius * np.exp(1j * angles)


def _aberth(monic: np.ndarray, start: np.ndarray, max_iter: int) -> tuple[np.ndarray, bool]:
    poly = Polynomial(monic)
    deriv = derivative(poly, 1)
    z = start.astype(np.complex128).copy()
    active = np.ones(z.size, dtype=bool)

    for _ in range(max_iter):
        idx = np.nonzero(active)[0]
        if idx.size == 0:
            return z, True

        values = evaluate(poly, z[idx])
        floor = _noise_floor(monic, z[idx])
        settled = np.abs(values) <= floor

        slopes = evaluate(deriv, z[idx])
        diffs = z[idx][:, None] - z[None, :]
        diffs[np.arange(idx.size), idx] = 1.0
        with np.errstate(divide="ignore", invalid="ignore"):
            inverse = 1.0 / diffs
        inverse[np.arange(idx.size), idx] = 0.0
        repulsion = inverse.sum(axis=1)

        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = values / slopes
            step = ratio / (1.0 - ratio * repulsion)

        # Derivada nula o iterados coincidentes: corrección de Weierstrass y, si
        # tampoco es finita, un desplazamiento pequeño para separar los iterados
        bad = ~np.isfinite(step)
        if np.any(bad):
            with np.errstate(divide="ignore", invalid="ignore"):
                weierstrass = values / np.prod(diffs, axis=1)
            step = np.where(bad, weierstrass, step)
            nudge = 1e-6 * (1 + np.abs(z[idx])) * np.exp(1j * (idx + 1))
            step = np.where(np.isfinite(step), step, nudge)

        z[idx] = z[idx] - np.where(settled, 0.0, step)

        done = settled | (np.abs(step) <= ROOT_STEP_TOL * (1 + np.abs(z[idx])))
        active[idx[done]] = False

    return z, not np.any(active)


def _durand_kerner(monic: np.ndarray, start: np.ndarray, max_iter: int) -> tuple[np.ndarray, bool]:
    poly = Polynomial(monic)
    z = start.astype(np.complex128).copy()
    for _ in range(max_iter):
        values = evaluate(poly, z)
        diffs = z[:, None] - z[None, :]
        np.fill_diagonal(diffs, 1.0)
        denom = np.prod(diffs, axis=1)
        step = values / denom
        z = z - step
        settled = np.abs(evaluate(poly, z)) <= _noise_floor(monic, z)
        if np.all(settled | (np.abs(step) <= ROOT_STEP_TOL * (1 + np.abs(z)))):
            return z, True
    return z, False


def residual_bound(p: Polynomial, r: complex) -> float:
    """Cota de residuo aceptable 1e-9·max|aₖ|·(1+|r|)^d."""
    return RESIDUAL_TOL * float(np.max(np.abs(p.coeffs))) * (1 + abs(r)) ** p.degree


def find_roots(p: Polynomial, max_iter: Optional[int] = None) -> np.ndarray:
    """
    Todos los ceros de p (con multiplicidad) por Aberth-Ehrlich.

    Objetivo:
        Devolver exactamente grado(p) aproximaciones cuyo residuo cumpla
        |p(r)| <= 1e-9·max|aₖ|·(1+|r|)^d.

    Operación:
        - Normaliza a mónico e inicializa en el círculo de radio 0.9·(cota de Cauchy)
          con ángulos 2πk/d + 0.376.
        - Itera hasta que cada corrección cumpla |Δ| <= 1e-13·(1+|z|) o el residuo
          alcance el piso de redondeo; tope de iteraciones 500.
        - Si falla, reinicia una vez con Durand-Kerner desde un círculo perturbado.

    Raises:
        DegreeError: Si el grado es 0 o mayor que 64
        RootConvergenceError: Si tampoco converge el reinicio
    """
    if p.is_zero or p.degree < 1:
        raise DegreeError("Se requiere un polinomio de grado >= 1")
    if p.degree > MAX_DEGREE:
        raise DegreeError(f"Grado {p.degree} mayor que el máximo soportado ({MAX_DEGREE})")

    max_iter = ROOT_MAX_ITER if max_iter is None else max_iter
    monic = p.monic().coeffs

    if p.degree == 1:
        roots = np.array([-monic[0]], dtype=np.complex128)
        roots.setflags(write=False)
        return roots

    radius = _cauchy_radius(monic)
    start = _initial_circle(p.degree, ROOT_INIT_SHRINK * radius, ROOT_INIT_OFFSET)
    roots, converged = _aberth(monic, start, max_iter)

    if not converged:
        logger.warning("Aberth-Ehrlich no convergió en %d iteraciones (grado %d); reinicio con Durand-Kerner", max_iter, p.degree)
        perturbed = _initial_circle(p.degree, 1.1 * radius, ROOT_INIT_OFFSET + 0.5)
        restart, converged = _durand_kerner(monic, perturbed, max_iter)
        if converged:
            roots = restart

    residuals = np.abs(evaluate(p, roots))
    bounds = np.array([residual_bound(p, r) for r in roots])
    if not converged and np.any(residuals > bounds):
        raise RootConvergenceError(
            f"No se alcanzó la convergencia para el polinomio de grado {p.degree}",
            best=roots,
            residual=float(np.max(residuals)),
        )

    roots = np.array(roots, dtype=np.complex128)
    roots.setflags(write=False)
    return roots


def residuals(p: Polynomial, roots: Iterable[complex]) -> np.ndarray:
    """|p(r)| para cada raíz."""
    return np.abs(evaluate(p, np.asarray(list(roots) if not isinstance(roots, np.ndarray) else roots, dtype=np.complex128)))


def inclusion_radii(p: Polynomial, approximations: Iterable[complex], perturbation: Optional[np.ndarray] = None) -> np.ndarray:
    """
    Radios d·(max(|p(zᵢ)|, ruido) + Σ|δₖ||zᵢ|ᵏ)/|Π_{j≠i}(zᵢ - zⱼ)| sobre p mónico.

    perturbation (δ) acota el error de los coeficientes de p, ascendente.

    La unión de los discos contiene todos los ceros de p, y cada componente
    conexa con k discos contiene k ceros. Aproximaciones repetidas tienen radio infinito.
    """
    monic = p.monic().coeffs
    z = np.asarray(list(approximations) if not isinstance(approximations, np.ndarray) else approximations, dtype=np.complex128)
    values = np.maximum(np.abs(evaluate(Polynomial(monic), z)), _noise_floor(monic, z))
    if perturbation is not None:
        values = values + _abs_horner(np.abs(perturbation), z)
    diffs = z[:, None] - z[None, :]
    np.fill_diagonal(diffs, 1.0)
    denominator = np.abs(np.prod(diffs, axis=1))
    with np.errstate(divide="ignore", invalid="ignore"):
        radii = p.degree * values / denominator
    return np.where(denominator > 0, radii, np.inf)


def _components(values: np.ndarray, linked: Callable[[int, int], bool]) -> list[list[int]]:
    n = values.size
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if linked(i, j):
                parent[find(j)] = find(i)

    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def cluster_roots(roots: Iterable[complex], radius: float, spread: Optional[Iterable[float]] = None) -> np.ndarray:
    """
    Sustituye cada cúmulo (enlace simple) por su centroide.

    Dos valores se enlazan si su distancia es <= max(radius, spreadᵢ + spreadⱼ);
    spread es la incertidumbre de cada valor (0 si no se indica).
    La longitud y el orden de la lista se conservan.
    """
    values = np.array(list(roots) if not isinstance(roots, np.ndarray) else roots, dtype=np.complex128)
    reach = np.zeros(values.size) if spread is None else np.asarray(list(spread), dtype=np.float64)

    result = values.copy()
    for members in _components(values, lambda i, j: abs(values[i] - values[j]) <= max(radius, reach[i] + reach[j])):
        if len(members) > 1:
            result[members] = values[members].mean()
    return result


def match_multisets(a: Iterable[complex], b: Iterable[complex]) -> float:
    """
    Máxima distancia entre dos multiconjuntos bajo la asignación óptima.

    Raises:
        ValueError: Si los tamaños difieren
    """
    left = np.asarray(list(a) if not isinstance(a, np.ndarray) else a, dtype=np.complex128)
    right = np.asarray(list(b) if not isinstance(b, np.ndarray) else b, dtype=np.complex128)
    if left.size != right.size:
        raise ValueError(f"Los multiconjuntos tienen tamaños distintos ({left.size} y {right.size})")
    if left.size == 0:
        return 0.0

    cost = np.abs(left[:, None] - right[None, :])
    # Minimiza la suma de cuadrados; el máximo de la asignación resultante es el reportado
    rows, cols = linear_sum_assignment(cost ** 2)
    return float(np.max(cost[rows, cols]))


def seed_excess(p: Polynomial, seeds: np.ndarray, zeros: np.ndarray, floor: float, perturbation: Optional[np.ndarray] = None) -> float:
    """
    Cuánto se alejan los ceros de p calculados (seeds) de los ceros refinados.

    Cada semilla admite una distancia max(floor, 2·Σ radios de su componente de
    inclusión). Devuelve la mayor distancia relativa a ese alcance bajo la
    asignación óptima: > 1 significa que p no tiene esos ceros.
    """
    if seeds.size == 0:
        return 0.0
    radii = inclusion_radii(p, seeds, perturbation)
    reach = np.full(seeds.size, floor)
    for members in _components(seeds, lambda i, j: abs(seeds[i] - seeds[j]) <= radii[i] + radii[j]):
        reach[members] = max(floor, 2 * float(np.sum(radii[members])))

    relative = np.abs(seeds[:, None] - zeros[None, :]) / reach[:, None]
    rows, cols = linear_sum_assignment(np.minimum(relative, 1e150) ** 2)
    return float(np.max(relative[rows, cols]))


# ==========================================
# Forma factorizada de A_n^γ
# ==========================================

@dataclass(frozen=True, eq=False)
class FactoredCombination:
    """
    A_n^γ(z) = Π(z - eᵢ)·R(z), con R(z) = Σᵢ Γᵢ Π_{l≠i}(z - u_l).

    Cada raíz distinta aparece una sola vez: sus copias repetidas son ceros
    exactos, y si su peso agregado es 0 también lo es ella misma. R no se anula
    en ningún nodo, así que sus grado(R) ceros son los restantes.

    Atributos:
        nodes: Raíces distintas con peso agregado positivo (u)
        weights: Peso agregado Γ de cada nodo
        exact: Ceros exactos e
    """

    nodes: np.ndarray
    weights: np.ndarray
    exact: np.ndarray

    @property
    def degree(self) -> int:
        """Grado de R."""
        return self.nodes.size - 1

    def terms(self, z: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """
        Sumas que dan R y R′ sin expandir coeficientes.

        Returns:
            s = ΣΓᵢ/(z-uᵢ) (R/Π(z-u)), t = Σ1/(z-uᵢ), s2 = ΣΓᵢ/(z-uᵢ)²
            y la cota de redondeo de s
        """
        inverse = 1.0 / (z[:, None] - self.nodes[None, :])
        weighted = self.weights[None, :] * inverse
        floor = 4 * self.nodes.size * _EPS * np.abs(weighted).sum(axis=1)
        return weighted.sum(axis=1), inverse.sum(axis=1), (weighted * inverse).sum(axis=1), floor

    def newton_correction(self, z: np.ndarray) -> np.ndarray:
        """R/R′ = s/(t·s - s2); 0 donde R se anula por debajo del redondeo."""
        s, t, s2, floor = self.terms(z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = s / (t * s - s2)
        return np.where((np.abs(s) <= floor) | ~np.isfinite(ratio), 0.0, ratio)


@dataclass(frozen=True, eq=False)
class RefinedZeros:
    """
    Ceros de A_n^γ refinados sobre la forma factorizada.

    Atributos:
        zeros: Ceros exactos seguidos de los de R
        spread: Incertidumbre de cada cero (grado(R)·|R/R′|; 0 en los exactos)
        converged: Si todas las iteraciones terminaron antes del tope
    """

    zeros: np.ndarray
    spread: np.ndarray
    converged: bool


def factor_combination(roots: Iterable[complex], gamma: Iterable[float]) -> FactoredCombination:
    """
    Separa A_n^γ en ceros exactos y el factor R.

    Raises:
        ValueError: Si las raíces o los pesos no son válidos
    """
    values = validate_roots(roots, min_length=2)
    weights = validate_weights(gamma, length=values.size)

    groups: dict[complex, list[int]] = {}
    for i, z in enumerate(values):
        groups.setdefault(complex(z), []).append(i)

    nodes, node_weights, exact = [], [], []
    for z, members in groups.items():
        total = math.fsum(weights[members])
        exact.extend([z] * (len(members) - 1))
        if total > 0:
            nodes.append(z)
            node_weights.append(total)
        else:
            exact.append(z)

    arrays = [
        np.array(nodes, dtype=np.complex128),
        np.array(node_weights, dtype=np.float64),
        np.array(exact, dtype=np.complex128),
    ]
    for array in arrays:
        array.setflags(write=False)
    return FactoredCombination(nodes=arrays[0], weights=arrays[1], exact=arrays[2])


def _secular_aberth(form: FactoredCombination, start: np.ndarray, max_iter: int) -> tuple[np.ndarray, bool]:
    z = start.astype(np.complex128).copy()
    active = np.ones(z.size, dtype=bool)

    for _ in range(max_iter):
        idx = np.nonzero(active)[0]
        if idx.size == 0:
            return z, True

        # Un iterado sobre un nodo deja s indefinido
        on_node = np.any(z[idx][:, None] == form.nodes[None, :], axis=1)
        if np.any(on_node):
            z[idx] = np.where(on_node, z[idx] + 1e-6 * (1 + np.abs(z[idx])) * np.exp(1j * (idx + 1)), z[idx])

        current = z[idx]
        s, t, s2, floor = form.terms(current)
        settled = np.abs(s) <= floor

        diffs = current[:, None] - z[None, :]
        diffs[np.arange(idx.size), idx] = 1.0
        with np.errstate(divide="ignore", invalid="ignore"):
            inverse = 1.0 / diffs
        inverse[np.arange(idx.size), idx] = 0.0
        repulsion = inverse.sum(axis=1)

        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = s / (t * s - s2)
            step = ratio / (1.0 - ratio * repulsion)

        # Iterados coincidentes o R′ nula: desplazamiento pequeño para separarlos
        bad = ~np.isfinite(step) | ~np.isfinite(repulsion)
        if np.any(bad):
            nudge = 1e-6 * (1 + np.abs(current)) * np.exp(1j * (idx + 1))
            step = np.where(bad, nudge, step)
            settled = settled & ~bad

        z[idx] = current - np.where(settled, 0.0, step)

        done = settled | (~bad & (np.abs(step) <= ROOT_STEP_TOL * (1 + np.abs(z[idx]))))
        active[idx[done]] = False

    return z, not np.any(active)


def _default_seeds(form: FactoredCombination) -> np.ndarray:
    center = complex(np.sum(form.weights * form.nodes))
    radius = float(np.max(np.abs(form.nodes - center)))
    return center + _initial_circle(form.degree, ROOT_INIT_SHRINK * radius, ROOT_INIT_OFFSET)


def refine_zeros(form: FactoredCombination, seeds: Optional[Iterable[complex]] = None, max_iter: Optional[int] = None) -> RefinedZeros:
    """
    Ceros de A_n^γ por Aberth-Ehrlich sobre R, sin expandir coeficientes.

    Operación:
        - Cada cero exacto toma la semilla más cercana (asignación óptima).
        - Las semillas restantes arrancan la iteración sobre R; sin semillas,
          un círculo alrededor de ΣΓᵢuᵢ.
        - grado(R) = 1 se resuelve en forma cerrada.

    Raises:
        ValueError: Si el número de semillas no es n - 1
    """
    max_iter = ROOT_MAX_ITER if max_iter is None else max_iter

    if seeds is None:
        start = _default_seeds(form) if form.degree > 1 else np.zeros(0, dtype=np.complex128)
    else:
        pool = np.asarray(list(seeds) if not isinstance(seeds, np.ndarray) else seeds, dtype=np.complex128)
        expected = form.exact.size + form.degree
        if pool.size != expected:
            raise ValueError(f"Se esperaban {expected} semillas (recibidas {pool.size})")
        free = np.ones(pool.size, dtype=bool)
        if form.exact.size:
            _, cols = linear_sum_assignment(np.abs(form.exact[:, None] - pool[None, :]) ** 2)
            free[cols] = False
        start = pool[free]

    converged = True
    if form.degree == 1:
        (u1, u2), (g1, g2) = form.nodes, form.weights
        found = np.array([(g1 * u2 + g2 * u1) / (g1 + g2)], dtype=np.complex128)
    elif form.degree > 1:
        found, converged = _secular_aberth(form, start, max_iter)
    else:
        found = np.zeros(0, dtype=np.complex128)

    uncertainty = form.degree * np.abs(form.newton_correction(found)) if found.size else np.zeros(0)
    zeros = np.concatenate([form.exact, found])
    zeros.setflags(write=False)
    return RefinedZeros(zeros=zeros, spread=np.concatenate([np.zeros(form.exact.size), uncertainty]), converged=converged)


def combination_zeros(roots: Iterable[complex], gamma: Iterable[float]) -> SortedRoots:
    """
    Ceros de A_n^γ sobre la forma factorizada, sin verificación cruzada.

    Raises:
        RootConvergenceError: Si la iteración sobre R no converge
    """
    form = factor_combination(roots, gamma)
    refined = refine_zeros(form)
    if not refined.converged:
        s, _, _, _ = form.terms(refined.zeros[form.exact.size:])
        raise RootConvergenceError(
            f"No se alcanzó la convergencia para la combinación de grado {refined.zeros.size}",
            best=refined.zeros,
            residual=float(np.max(np.abs(s))),
        )
    return sort_desc_modulus(refined.zeros)


def derivative_zeros(roots: Iterable[complex]) -> list[SortedRoots]:
    """
    Ceros de p′, p″, …, p^{(n-1)} para p = Π(z - zⱼ).

    p^{(k)} es proporcional a la combinación uniforme sobre los ceros de
    p^{(k-1)}, así que cada nivel parte de los ceros del anterior.
    """
    current = validate_roots(roots, min_length=2)
    levels = []
    while current.size >= 2:
        level = combination_zeros(current, uniform_weights(current.size))
        levels.append(level)
        current = level.roots
    return levels


def real_combination_zeros(nodes: Iterable[float], gamma: Iterable[float]) -> np.ndarray:
    """
    Ceros de Σγₖ Π_{j≠k}(x - rⱼ) para rⱼ reales: todos reales.

    Operación:
        - Los rⱼ repetidos y los de peso agregado 0 dan ceros exactos.
        - Entre dos nodos consecutivos de peso positivo R cambia de signo; cada
          cero se aísla con brentq en ese intervalo.

    Returns:
        Arreglo float64 de n - 1 ceros: los exactos y luego los aislados, ascendentes

    Raises:
        ValueError: Si algún nodo no es real finito
    """
    values = np.asarray(list(nodes) if not isinstance(nodes, np.ndarray) else nodes)
    if np.iscomplexobj(values) or not np.all(np.isfinite(values)):
        raise ValueError("Los nodos deben ser reales finitos")
    form = factor_combination(values.astype(np.float64), gamma)
    order = np.argsort(form.nodes.real)
    r, g = form.nodes.real[order], form.weights[order]

    def factored(x: float) -> float:
        gaps = x - r
        return math.fsum(g[i] * float(np.prod(np.delete(gaps, i))) for i in range(r.size))

    found = [
        brentq(factored, r[i], r[i + 1], xtol=_EPS * max(abs(r[i]), abs(r[i + 1])), rtol=4 * _EPS, maxiter=ROOT_MAX_ITER)
        for i in range(r.size - 1)
    ]
    zeros = np.concatenate([form.exact.real, np.array(found, dtype=np.float64)])
    zeros.setflags(write=False)
    return zeros


def _divergence(direct: np.ndarray, companion: np.ndarray, distance: float, reason: str) -> CrossCheckError:
    logger.error("Divergencia entre caminos de cálculo (%s): %.3e", reason, distance)
    return CrossCheckError(
        f"Los ceros por expansión directa y por la companion difieren en {distance:.3e}",
        direct=direct,
        companion=companion,
        distance=distance,
    )


def _monic_gap(p: Polynomial, q: Polynomial) -> np.ndarray:
    a, b = p.monic().coeffs, q.monic().coeffs
    gap = np.zeros(max(a.size, b.size), dtype=np.complex128)
    gap[: a.size] += a
    gap[: b.size] -= b
    return np.abs(gap)


def zeros_of_combination(roots: Iterable[complex], gamma: Iterable[float], pivot: Optional[int] = None) -> SortedRoots:
    """
    Ceros de A_n^γ con verificación cruzada entre dos caminos de cálculo.

    Operación:
        - Camino directo: expansión de coeficientes + find_roots.
        - Camino companion: char_poly(build_reduced) + find_roots.
        - Los coeficientes de ambos caminos coinciden a 1e-10 relativo.
        - Cada camino se refina sobre la forma factorizada partiendo de sus
          propios ceros, que deben quedar dentro de su alcance de redondeo
          (seed_excess <= 1, con piso 1e-3·escala y la diferencia de
          coeficientes como perturbación).
        - Compara ambos multiconjuntos refinados (cúmulos por incertidumbre) a 1e-7·escala.

    Retorna:
        Los ceros refinados del camino directo, ordenados por módulo descendente.

    Raises:
        CrossCheckError: Si los dos caminos divergen
    """
    values = validate_roots(roots, min_length=2)
    weights = validate_weights(gamma, length=values.size)
    scale = root_scale(values)
    form = factor_combination(values, weights)

    direct_poly = convex_combination(values, weights)
    companion_poly = char_poly(build_reduced(values, weights, pivot))
    direct_seeds = find_roots(direct_poly)
    companion_seeds = find_roots(companion_poly)
    if relative_coefficient_error(direct_poly, companion_poly) > IDENTITY_REL_TOL:
        raise _divergence(direct_seeds, companion_seeds, match_multisets(direct_seeds, companion_seeds), "coeficientes")

    gap = _monic_gap(direct_poly, companion_poly)
    direct = refine_zeros(form, direct_seeds)
    via_companion = refine_zeros(form, companion_seeds)
    excess = max(
        seed_excess(direct_poly, direct_seeds, direct.zeros, SEED_REACH * scale, gap),
        seed_excess(companion_poly, companion_seeds, via_companion.zeros, SEED_REACH * scale, gap),
    )
    if excess > 1 or not (direct.converged and via_companion.converged):
        raise _divergence(direct_seeds, companion_seeds, match_multisets(direct_seeds, companion_seeds), "refinamiento")

    radius = CLUSTER_RADIUS * scale
    distance = match_multisets(
        cluster_roots(direct.zeros, radius, direct.spread),
        cluster_roots(via_companion.zeros, radius, via_companion.spread),
    )
    if distance > CROSS_CHECK_TOL * scale:
        raise _divergence(direct.zeros, via_companion.zeros, distance, "ceros refinados")

    return sort_desc_modulus(direct.zeros)


def zeros_of(p: Polynomial) -> SortedRoots:
    """Ceros de un polinomio cualquiera, ordenados por módulo descendente."""
    return sort_desc_modulus(find_roots(p))


def max_residual_ratio(p: Polynomial, roots: Iterable[complex]) -> float:
    """Máximo de |p(r)| / cota aceptable; <= 1 significa residuo dentro de contrato."""
    ratios = [abs(evaluate(p, r)) / residual_bound(p, r) for r in roots]
    return max(ratios) if ratios else 0.0


def is_finite_list(values: Iterable[complex]) -> bool:
    return all(math.isfinite(v.real) and math.isfinite(v.imag) for v in values)
