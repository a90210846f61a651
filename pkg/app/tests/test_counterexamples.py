"""
Tests para la reproducción de los contraejemplos (app/counterexamples.py)
"""

import math

import pytest

from app.counterexamples import EXPECTED_ESCAPE, escape_zeros, run_counterexamples
from app.hull_geometry import convex_hull, distance_to_hull


class TestContraejemplos:
    """Tests para los dos contraejemplos conocidos"""

    def test_distancia_esperada(self):
        """Debe valer 1/(2√3) ≈ 0.288675"""
        assert EXPECTED_ESCAPE == pytest.approx(0.288675, abs=1e-6)

    def test_ceros_fuera_de_la_envolvente(self):
        """Debe producir ceros i/2 ± 1/(2√3) fuera del segmento [0, i]"""
        hull = convex_hull([0, 1j])
        for w in escape_zeros():
            assert w.imag == pytest.approx(0.5)
            assert abs(w.real) == pytest.approx(1 / (2 * math.sqrt(3)))
            assert distance_to_hull(hull, w) > 0.28

    def test_reporte(self):
        """Debe reproducir ambos contraejemplos"""
        report = run_counterexamples()
        assert report.escape_reproduced
        assert report.decomposition_reproduced
        assert report.all_reproduced
        assert report.escape_distance == pytest.approx(0.288675, abs=1e-6)
        assert report.decomposition_coefficients[1] == pytest.approx((0.25, 0.25))
        assert report.decomposition_coefficients[2] == pytest.approx((0.75, -0.25))
