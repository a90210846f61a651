"""
Tests unitarios para los discos de localización (app/bounds.py)
"""

import math

import numpy as np
import pytest

from app.bounds import (
    Disc,
    DiscUnion,
    _checked_sqrt,
    best_pivot,
    corollary_radius,
    derivative_disc,
    disc_contains_all,
    gershgorin_union,
    trace_disc,
    trace_radius_from_matrix,
)
from app.companion import build_reduced
from app.errors import RadicandError
from app.hull_geometry import default_tol
from app.poly_core import derivative, from_roots
from app.roots_engine import find_roots, zeros_of_combination
from app.validators import uniform_weights

RAIZ_10_6 = math.sqrt(10) / 6


# ==========================================
# Tests para Disc y DiscUnion
# ==========================================

class TestDiscos:
    """Tests para los tipos de disco"""

    def test_exceso(self):
        """Debe medir cuánto sobresale un punto"""
        d = Disc(0, 1)
        assert d.excess(2) == 1.0
        assert d.excess(0.5j) == 0.0

    def test_radio_negativo(self):
        """Debe rechazar radios negativos"""
        with pytest.raises(ValueError):
            Disc(0, -0.1)

    def test_radio_no_finito(self):
        """Debe rechazar radios NaN"""
        with pytest.raises(ValueError):
            Disc(0, float("nan"))

    def test_union_vacia(self):
        """Debe rechazar una unión sin discos"""
        with pytest.raises(ValueError):
            DiscUnion(discs=(), pivot=0)

    def test_union_metricas(self):
        """Debe sumar áreas y tomar el mayor radio"""
        union = DiscUnion(discs=(Disc(0, 1), Disc(3, 2)), pivot=2)
        assert union.total_area == pytest.approx(5 * math.pi)
        assert union.max_radius == 2
        assert union.excess(6) == pytest.approx(1.0)

    def test_violacion_fabricada(self):
        """Debe reportar Disc(0, 1) contra {2} con violación 1"""
        result = disc_contains_all(Disc(0, 1), [2])
        assert not result.holds
        assert result.max_violation == 1.0

    def test_sin_ceros(self):
        """Debe cumplirse trivialmente sin ceros"""
        assert disc_contains_all(Disc(0, 1), []).holds


# ==========================================
# Tests para trace_disc() y derivative_disc()
# ==========================================

class TestDiscoDeTraza:
    """Tests para el disco de traza"""

    def test_triangulo(self, triangulo):
        """Debe dar centro (1+i)/3 y radio √10/6"""
        d = trace_disc(triangulo, uniform_weights(3))
        assert d.center == pytest.approx((1 + 1j) / 3)
        assert d.radius == pytest.approx(RAIZ_10_6)

    def test_igual_a_la_matriz(self, triangulo):
        """Debe coincidir la forma cerrada con el cálculo entrada a entrada"""
        m = build_reduced(triangulo, uniform_weights(3))
        assert trace_radius_from_matrix(m) == pytest.approx(RAIZ_10_6)

    def test_contiene_los_ceros(self):
        """Debe contener los ceros para todo pivote"""
        roots = [1.5 + 0.5j, -0.75 + 1j, 0.25 - 1.25j, -1.1 - 0.2j, 0.6j]
        gamma = [0.3, 0.1, 0.25, 0.15, 0.2]
        zeros = zeros_of_combination(roots, gamma).roots
        for pivot in range(len(roots)):
            assert disc_contains_all(trace_disc(roots, gamma, pivot), zeros, tol=default_tol(roots)).holds

    def test_dos_raices(self):
        """Debe reducirse al único cero con radio 0"""
        d = trace_disc([0, 2], [0.25, 0.75])
        assert d.center == pytest.approx(0.5)
        assert d.radius == 0.0

    def test_centro_exacto_pesos_iguales(self):
        """Debe usar la media exacta de las raíces con pesos iguales"""
        roots = [0.1, 0.2, 0.3]
        d = trace_disc(roots, uniform_weights(3))
        assert d.center == complex(math.fsum(roots) / 3)

    def test_derivada(self, triangulo):
        """Debe contener los ceros de p′"""
        d = derivative_disc(triangulo)
        zeros = find_roots(derivative(from_roots(triangulo)))
        assert disc_contains_all(d, zeros, tol=1e-12).holds

    def test_corolario(self):
        """Debe coincidir el radio explícito con el disco de la derivada"""
        roots = [2, -1 + 1j, 0.5j, -0.3 - 0.9j]
        assert corollary_radius(roots) == pytest.approx(derivative_disc(roots).radius, rel=1e-12)
        assert corollary_radius(roots, pivot=0) == pytest.approx(trace_disc(roots, uniform_weights(4), 0).radius)

    def test_corolario_triangulo(self, triangulo):
        """Debe dar √10/6 para {0, 1, i}"""
        assert corollary_radius(triangulo) == pytest.approx(RAIZ_10_6)

    def test_radicando_recortado(self):
        """Debe recortar a 0 radicandos levemente negativos"""
        assert _checked_sqrt(-1e-14, 1.0) == 0.0

    def test_radicando_negativo(self, caplog):
        """Debe lanzar RadicandError fuera de la guarda"""
        with pytest.raises(RadicandError) as exc_info:
            _checked_sqrt(-1e-3, 1.0)
        assert exc_info.value.radicand == -1e-3
        assert "Radicando negativo" in caplog.text


# ==========================================
# Tests para gershgorin_union() y best_pivot()
# ==========================================

class TestGershgorin:
    """Tests para los discos de fila"""

    def test_triangulo(self, triangulo):
        """Debe dar los discos (i/3, 1/3) y ((2+i)/3, √2/3)"""
        union = gershgorin_union(triangulo, uniform_weights(3))
        assert union.pivot == 2
        assert len(union.discs) == 2
        assert union.discs[0].center == pytest.approx(1j / 3)
        assert union.discs[0].radius == pytest.approx(1 / 3)
        assert union.discs[1].center == pytest.approx((2 + 1j) / 3)
        assert union.discs[1].radius == pytest.approx(math.sqrt(2) / 3)

    def test_coincide_con_las_filas(self, triangulo):
        """Debe coincidir con diagonal y sumas de fila de la companion"""
        m = build_reduced(triangulo, uniform_weights(3))
        union = gershgorin_union(triangulo, uniform_weights(3))
        np.testing.assert_allclose([d.center for d in union.discs], np.diag(m.entries))
        np.testing.assert_allclose([d.radius for d in union.discs], m.deleted_row_sums())

    def test_contiene_los_ceros(self, triangulo):
        """Debe contener cada cero en algún disco"""
        zeros = zeros_of_combination(triangulo, uniform_weights(3)).roots
        union = gershgorin_union(triangulo, uniform_weights(3))
        assert disc_contains_all(union, zeros, tol=default_tol(triangulo)).holds

    def test_pivote_raices_cuartas(self, raices_cuartas):
        """Debe elegir el menor índice ante empates"""
        assert best_pivot(raices_cuartas, uniform_weights(4)) == 0
        assert best_pivot(raices_cuartas, uniform_weights(4), "min-max-radius") == 0

    def test_pivote_optimo(self):
        """Debe elegir la raíz central de {0, 1, 10}"""
        assert best_pivot([0, 1, 10], uniform_weights(3)) == 1
        assert best_pivot([0, 1, 10], uniform_weights(3), "min-max-radius") == 1

    def test_criterio_desconocido(self, triangulo):
        """Debe rechazar criterios desconocidos"""
        with pytest.raises(ValueError):
            best_pivot(triangulo, uniform_weights(3), "min-perimeter")


# ==========================================
# Homogeneidad y casos sembrados
# ==========================================

def _semilla_grado_8(seed=42):
    rng = np.random.default_rng(seed)
    roots = 2 * np.sqrt(rng.uniform(size=8)) * np.exp(2j * np.pi * rng.uniform(size=8))
    return roots, rng.dirichlet(np.ones(8))


class TestEscalado:
    """Tests para la homogeneidad de los discos bajo z ↦ s·z"""

    @pytest.mark.parametrize("s", [0.25, 3.0, 1e3])
    def test_disco_de_traza(self, s):
        """Debe escalar centro y radio del disco de traza por s en cada pivote"""
        roots, gamma = _semilla_grado_8()
        for pivot in range(roots.size):
            base = trace_disc(roots, gamma, pivot)
            scaled = trace_disc(s * roots, gamma, pivot)
            assert scaled.center == pytest.approx(s * base.center, rel=1e-12)
            assert scaled.radius == pytest.approx(s * base.radius, rel=1e-12)

    @pytest.mark.parametrize("s", [0.25, 3.0, 1e3])
    def test_gershgorin(self, s):
        """Debe escalar centro y radio de cada disco de fila por s en cada pivote"""
        roots, gamma = _semilla_grado_8()
        for pivot in range(roots.size):
            base = gershgorin_union(roots, gamma, pivot)
            scaled = gershgorin_union(s * roots, gamma, pivot)
            np.testing.assert_allclose([d.center for d in scaled.discs], [s * d.center for d in base.discs], rtol=1e-12)
            np.testing.assert_allclose([d.radius for d in scaled.discs], [s * d.radius for d in base.discs], rtol=1e-12)

    def test_grado_8_contiene_los_ceros(self):
        """Debe contener los ceros de una instancia sembrada de grado 8 con holgura 1e-9"""
        roots, gamma = _semilla_grado_8()
        zeros = zeros_of_combination(roots, gamma).roots
        for pivot in range(roots.size):
            assert disc_contains_all(trace_disc(roots, gamma, pivot), zeros, tol=default_tol(roots)).holds
            assert disc_contains_all(gershgorin_union(roots, gamma, pivot), zeros, tol=default_tol(roots)).holds
