"""
Envolventes convexas en el plano complejo

Objetivo:
    Calcular H(z₁,…,zₙ) con conciencia de casos degenerados (punto, segmento,
    polígono), decidir pertenencia con tolerancia y reconstruir, para un punto a
    de la envolvente, pesos γ tales que A_n^γ(a) = 0.
"""

import math
from dataclasses import dataclass
from typing import Iterable, Literal, Optional

import numpy as np

from app.config import BARYCENTRIC_CLAMP, COINCIDENCE_TOL, COLLINEAR_TOL, HULL_TOL, RECOVERY_TOL
from app.errors import HullContainmentError, RecoveryError
from app.poly_core import convex_combination, evaluate, root_scale
from app.validators import validate_roots, validate_tolerance, validate_weights


@dataclass(frozen=True, eq=False)
class Hull:
    """
    Envolvente convexa.

    Atributos:
        kind: "point", "segment" o "polygon"
        vertices: Cadena de vértices en sentido antihorario, empezando por el
            lexicográficamente menor
        source_indices: Para cada vértice, el primer índice de la lista original
            con ese valor
    """

    kind: Literal["point", "segment", "polygon"]
    vertices: np.ndarray
    source_indices: tuple[int, ...]


def default_tol(roots: Iterable[complex]) -> float:
    """Tolerancia de frontera 1e-9·(1 + max|zⱼ|)."""
    return HULL_TOL * root_scale(roots)


def _cross(o: complex, a: complex, b: complex) -> float:
    return (a.real - o.real) * (b.imag - o.imag) - (a.imag - o.imag) * (b.real - o.real)


def convex_hull(points: Iterable[complex]) -> Hull:
    """
    Envolvente convexa por cadena monótona sobre el orden lexicográfico (re, im).

    Operación:
        - Ordena los puntos y construye las cadenas inferior y superior.
        - Descarta giros con producto cruz <= 1e-12·escala² (colineales).
        - Devuelve tipo punto si todos coinciden y segmento si son colineales.
    """
    values = validate_roots(points)
    scale = root_scale(values)
    threshold = COLLINEAR_TOL * scale ** 2

    ordered = sorted({(float(v.real), float(v.imag)) for v in values})
    pts = [complex(x, y) for x, y in ordered]

    if len(pts) == 1 or max(abs(p - pts[0]) for p in pts) <= COINCIDENCE_TOL * scale:
        return _make_hull("point", [pts[0]], values)

    lower: list[complex] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= threshold:
            lower.pop()
        lower.append(p)

    upper: list[complex] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= threshold:
            upper.pop()
        upper.append(p)

    chain = lower[:-1] + upper[:-1]
    if len(chain) <= 2:
        return _make_hull("segment", [pts[0], pts[-1]], values)
    return _make_hull("polygon", chain, values)


def _make_hull(kind: str, vertices: list[complex], values: np.ndarray) -> Hull:
    indices = []
    for v in vertices:
        matches = np.nonzero(values == v)[0]
        indices.append(int(matches[0]))
    array = np.array(vertices, dtype=np.complex128)
    array.setflags(write=False)
    return Hull(kind=kind, vertices=array, source_indices=tuple(indices))


def _segment_distance(z: complex, a: complex, b: complex) -> float:
    direction = b - a
    length_sq = abs(direction) ** 2
    if length_sq == 0:
        return abs(z - a)
    s = ((z - a) * direction.conjugate()).real / length_sq
    s = min(1.0, max(0.0, s))
    return abs(z - (a + s * direction))


def signed_distance(h: Hull, z: complex) -> float:
    """
    Distancia con signo de z a la envolvente: positiva dentro, negativa fuera.

    Los tipos punto y segmento no tienen interior: devuelven 0 sobre ellos.
    """
    z = complex(z)
    if h.kind == "point":
        return -abs(z - h.vertices[0])

    if h.kind == "segment":
        return -_segment_distance(z, h.vertices[0], h.vertices[1])

    verts = list(h.vertices)
    m = len(verts)
    edges = [(verts[i], verts[(i + 1) % m]) for i in range(m)]
    nearest = min(_segment_distance(z, a, b) for a, b in edges)
    inside = all(_cross(a, b, z) >= 0 for a, b in edges)
    return nearest if inside else -nearest


def distance_to_hull(h: Hull, z: complex) -> float:
    """Distancia euclídea de z a la envolvente (0 si pertenece)."""
    return max(0.0, -signed_distance(h, z))


def contains(h: Hull, z: complex, tol: float = 0.0) -> bool:
    """
    Pertenencia "en o sobre" la envolvente: distancia con signo >= -tol.

    Raises:
        ValueError: Si tol es negativa
    """
    tol = validate_tolerance(tol)
    return signed_distance(h, z) >= -tol


def _check_inside(values: np.ndarray, a: complex, tol: Optional[float]) -> Hull:
    hull = convex_hull(values)
    tol = default_tol(values) if tol is None else validate_tolerance(tol)
    distance = distance_to_hull(hull, a)
    if distance > tol:
        raise HullContainmentError(
            f"El punto {a} está fuera de la envolvente convexa (distancia {distance:.6g})",
            distance=distance,
        )
    return hull


def barycentric_t(roots: Iterable[complex], a: complex, tol: Optional[float] = None) -> np.ndarray:
    """
    Representación de Carathéodory: t >= 0, Σt = 1, Σtᵢ(a - zᵢ) = 0, soporte <= 3.

    Operación:
        - Triangula la envolvente en abanico desde su vértice lexicográficamente menor.
        - Localiza el triángulo que contiene a (el de mayor coordenada mínima).
        - Resuelve el sistema baricéntrico 2×2, recorta negativos y renormaliza.
        - Asigna cada coordenada al primer índice original del vértice.

    Raises:
        HullContainmentError: Si a está fuera de la envolvente más allá de la tolerancia
    """
    values = validate_roots(roots)
    a = complex(a)
    hull = _check_inside(values, a, tol)
    n = values.size
    verts = hull.vertices
    src = hull.source_indices

    local: list[tuple[int, float]]
    if hull.kind == "point":
        local = [(src[0], 1.0)]
    elif hull.kind == "segment":
        direction = verts[1] - verts[0]
        s = ((a - verts[0]) * direction.conjugate()).real / abs(direction) ** 2
        s = min(1.0, max(0.0, s))
        local = [(src[0], 1.0 - s), (src[1], s)]
    else:
        local = _fan_coordinates(verts, src, a)

    t = np.zeros(n, dtype=np.float64)
    for index, weight in local:
        t[index] += weight
    t = np.where(t < 0, 0.0, t)
    t = t / math.fsum(t)
    return validate_weights(t)


def _fan_coordinates(verts: np.ndarray, src: tuple[int, ...], a: complex) -> list[tuple[int, float]]:
    origin = verts[0]
    best = None
    for i in range(1, len(verts) - 1):
        u = verts[i] - origin
        v = verts[i + 1] - origin
        system = np.array([[u.real, v.real], [u.imag, v.imag]])
        rhs = np.array([(a - origin).real, (a - origin).imag])
        s, r = np.linalg.solve(system, rhs)
        coords = (1.0 - s - r, s, r)
        score = min(coords)
        if best is None or score > best[0]:
            best = (score, i, coords)
        if score >= 0:
            break

    _, i, coords = best
    clamped = [0.0 if -BARYCENTRIC_CLAMP <= c < 0 else c for c in coords]
    clamped = [max(0.0, c) for c in clamped]
    return [(src[0], clamped[0]), (src[i], clamped[1]), (src[i + 1], clamped[2])]


def recover_gamma(roots: Iterable[complex], a: complex, tol: Optional[float] = None) -> np.ndarray:
    """
    Pesos γ tales que a es cero de A_n^γ, para cualquier a en la envolvente.

    Objetivo:
        Hacer constructiva la igualdad entre la envolvente convexa y el conjunto de
        todos los ceros de combinaciones convexas de polinomios incompletos.

    Operación:
        - Si a coincide con alguna raíz zₖ (1e-12·escala): γₖ = 0 y el resto uniforme.
        - Si no: t = barycentric_t(roots, a) y γᵢ ∝ tᵢ|a - zᵢ|².
        - Verifica |A_n^γ(a)| <= 1e-9·(1 + escala)^{n-1}.

    Retorna:
        Pesos γ válidos (suman 1).

    Raises:
        HullContainmentError: Si a está fuera de la envolvente
        RecoveryError: Si el residuo supera la cota
    """
    values = validate_roots(roots, min_length=2)
    a = complex(a)
    n = values.size
    scale = root_scale(values)

    gaps = np.abs(values - a)
    if float(np.min(gaps)) <= COINCIDENCE_TOL * scale:
        k = int(np.argmin(gaps))
        gamma = np.full(n, 1.0 / (n - 1))
        gamma[k] = 0.0
        return validate_weights(gamma)

    t = barycentric_t(values, a, tol)
    raw = t * gaps ** 2
    gamma = validate_weights(raw / math.fsum(raw))

    residual = abs(evaluate(convex_combination(values, gamma), a))
    bound = RECOVERY_TOL * (1 + scale) ** (n - 1)
    if residual > bound:
        raise RecoveryError(
            f"Los pesos reconstruidos dejan un residuo {residual:.3e} mayor que la cota {bound:.3e}",
            residual=residual,
        )
    return gamma
