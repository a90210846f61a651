"""
Reproducción de los dos contraejemplos conocidos

1. Combinaciones de polinomios incompletos de segundo orden: para p(z) = z²(z-i)²,
   (1/3)(z² + z(z-i) + (z-i)²) tiene ceros i/2 ± 1/(2√3), a distancia 1/(2√3)
   del segmento H(0, i).
2. Descomposición: z(z - 1/2) sobre las raíces {0, 1, i} exige coeficientes
   λ = (0, 1/4 + i/4, 3/4 - i/4), que no son pesos convexos.
"""

import math

import numpy as np

from app.hull_geometry import convex_hull, distance_to_hull
from app.poly_core import Polynomial, lagrange_decompose, pairwise_combination
from app.roots_engine import match_multisets, sort_desc_modulus, zeros_of
from app.schemas import CounterexampleReport, to_pairs

ESCAPE_ROOTS = (0j, 0j, 1j, 1j)
# g_{34} = z², g_{13} = z(z - i), g_{12} = (z - i)², con índices 0-based
ESCAPE_PAIRS = {(2, 3): 1 / 3, (0, 2): 1 / 3, (0, 1): 1 / 3}
EXPECTED_ESCAPE = 1 / (2 * math.sqrt(3))
ESCAPE_TOL = 1e-9

DECOMPOSITION_ROOTS = (0j, 1 + 0j, 1j)
# z² - z/2 en orden ascendente
DECOMPOSITION_TARGET = (0j, -0.5 + 0j, 1 + 0j)
EXPECTED_COEFFICIENTS = (0j, 0.25 + 0.25j, 0.75 - 0.25j)
COEFFICIENT_TOL = 1e-12


def escape_zeros() -> np.ndarray:
    return zeros_of(pairwise_combination(ESCAPE_ROOTS, ESCAPE_PAIRS)).roots


def run_counterexamples() -> CounterexampleReport:
    """
    Reproduce ambos contraejemplos y compara contra los valores esperados.

    Retorna:
        CounterexampleReport con `all_reproduced` verdadero si ambos coinciden.
    """
    zeros = escape_zeros()
    hull = convex_hull(ESCAPE_ROOTS)
    distance = max(distance_to_hull(hull, w) for w in zeros)
    expected_zeros = [0.5j + EXPECTED_ESCAPE, 0.5j - EXPECTED_ESCAPE]
    escape_ok = (
        abs(distance - EXPECTED_ESCAPE) <= ESCAPE_TOL
        and match_multisets(zeros, expected_zeros) <= ESCAPE_TOL
    )

    result = lagrange_decompose(DECOMPOSITION_ROOTS, Polynomial(np.array(DECOMPOSITION_TARGET)))
    gap = float(np.max(np.abs(result.coefficients - np.array(EXPECTED_COEFFICIENTS))))
    decomposition_ok = not result.feasible and gap <= COEFFICIENT_TOL

    return CounterexampleReport(
        escape_zeros=to_pairs(sort_desc_modulus(zeros).roots),
        escape_distance=distance,
        expected_escape_distance=EXPECTED_ESCAPE,
        escape_reproduced=escape_ok,
        decomposition_coefficients=to_pairs(result.coefficients),
        expected_coefficients=to_pairs(EXPECTED_COEFFICIENTS),
        decomposition_reproduced=decomposition_ok,
        all_reproduced=escape_ok and decomposition_ok,
    )
