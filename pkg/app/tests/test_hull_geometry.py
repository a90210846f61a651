"""
Tests unitarios para envolventes convexas y reconstrucción de pesos (app/hull_geometry.py)
"""

import numpy as np
import pytest

from app.errors import HullContainmentError
from app.hull_geometry import (
    barycentric_t,
    contains,
    convex_hull,
    default_tol,
    distance_to_hull,
    recover_gamma,
    signed_distance,
)
from app.poly_core import convex_combination, evaluate, root_scale
from app.scripts.random_instances import hull_point_pairs


# ==========================================
# Tests para convex_hull()
# ==========================================

class TestConvexHull:
    """Tests para la cadena monótona y los casos degenerados"""

    def test_triangulo(self, triangulo):
        """Debe devolver los tres vértices en sentido antihorario"""
        hull = convex_hull(triangulo)
        assert hull.kind == "polygon"
        assert list(hull.vertices) == [0, 1, 1j]
        assert hull.source_indices == (0, 1, 2)

    def test_punto_interior_descartado(self):
        """Debe omitir los puntos interiores"""
        hull = convex_hull([0, 2, 2 + 2j, 2j, 1 + 1j])
        assert hull.vertices.size == 4
        assert 1 + 1j not in list(hull.vertices)

    def test_colineales(self):
        """Debe reducir puntos colineales a un segmento entre los extremos"""
        hull = convex_hull([1, 0, 2, 0.5])
        assert hull.kind == "segment"
        assert list(hull.vertices) == [0, 2]
        assert hull.source_indices == (1, 2)

    def test_punto(self):
        """Debe reconocer raíces todas iguales"""
        hull = convex_hull([1j, 1j, 1j])
        assert hull.kind == "point"
        assert hull.source_indices == (0,)

    def test_repetidas_primer_indice(self, raices_dobles):
        """Debe asignar a cada vértice el primer índice con ese valor"""
        hull = convex_hull(raices_dobles)
        assert hull.kind == "segment"
        assert hull.source_indices == (0, 2)

    def test_tolerancia_por_defecto(self):
        """Debe escalar con 1 + max|zⱼ|"""
        assert default_tol([3j]) == pytest.approx(4e-9)


# ==========================================
# Tests para signed_distance() y contains()
# ==========================================

class TestPertenencia:
    """Tests para la distancia con signo"""

    def test_interior_positivo(self, triangulo):
        """Debe ser positiva dentro del polígono"""
        hull = convex_hull(triangulo)
        assert signed_distance(hull, 0.25 + 0.25j) == pytest.approx(0.25)

    def test_exterior_negativo(self, triangulo):
        """Debe ser negativa fuera del polígono"""
        hull = convex_hull(triangulo)
        assert signed_distance(hull, 2) == pytest.approx(-1.0)
        assert distance_to_hull(hull, 2) == pytest.approx(1.0)

    def test_frontera(self, triangulo):
        """Debe considerar los vértices y las aristas como contenidos"""
        hull = convex_hull(triangulo)
        assert contains(hull, 0.5 + 0.5j)
        assert contains(hull, 1j)

    def test_segmento(self):
        """Debe medir la distancia al segmento más cercano"""
        hull = convex_hull([0, 1])
        assert distance_to_hull(hull, 2) == pytest.approx(1.0)
        assert contains(hull, 0.5)
        assert not contains(hull, 0.5 + 1e-3j)

    def test_punto(self):
        """Debe medir la distancia al punto"""
        hull = convex_hull([1, 1])
        assert distance_to_hull(hull, 1 + 3j) == pytest.approx(3.0)

    def test_tolerancia(self):
        """Debe aceptar puntos dentro de la tolerancia"""
        hull = convex_hull([0, 1])
        assert contains(hull, 1 + 1e-10, tol=1e-9)

    def test_tolerancia_negativa(self, triangulo):
        """Debe rechazar tolerancias negativas"""
        with pytest.raises(ValueError):
            contains(convex_hull(triangulo), 0, tol=-1)


# ==========================================
# Tests para barycentric_t()
# ==========================================

class TestBaricentricas:
    """Tests para la representación de Carathéodory"""

    def test_centroide(self, triangulo):
        """Debe dar coordenadas uniformes en el baricentro"""
        t = barycentric_t(triangulo, (1 + 1j) / 3)
        np.testing.assert_allclose(t, [1 / 3] * 3, atol=1e-15)

    def test_combinacion_reproduce_el_punto(self):
        """Debe cumplir Σtᵢzᵢ = a con soporte <= 3"""
        roots = np.array([0, 2, 2 + 2j, 2j, 1 + 0.5j])
        a = 1.2 + 1.5j
        t = barycentric_t(roots, a)
        assert complex(np.dot(t, roots)) == pytest.approx(a, abs=1e-12)
        assert np.count_nonzero(t) <= 3

    def test_segmento(self):
        """Debe interpolar sobre el segmento"""
        np.testing.assert_allclose(barycentric_t([0, 2], 0.5), [0.75, 0.25])

    def test_exterior(self, triangulo):
        """Debe lanzar HullContainmentError con la distancia"""
        with pytest.raises(HullContainmentError) as exc_info:
            barycentric_t(triangulo, 2)
        assert exc_info.value.distance == pytest.approx(1.0)


# ==========================================
# Tests para recover_gamma()
# ==========================================

class TestRecoverGamma:
    """Tests para la reconstrucción constructiva de pesos"""

    def test_baricentro_triangulo(self, triangulo):
        """Debe recuperar γ = (1/6, 5/12, 5/12) en a = (1+i)/3"""
        gamma = recover_gamma(triangulo, (1 + 1j) / 3)
        np.testing.assert_allclose(gamma, [1 / 6, 5 / 12, 5 / 12], atol=1e-12)

    def test_anula_la_combinacion(self):
        """Debe producir A_n^γ(a) = 0"""
        roots = [0, 2, 2 + 2j, 2j, 1 + 0.5j]
        a = 0.3 + 1.7j
        gamma = recover_gamma(roots, a)
        assert abs(evaluate(convex_combination(roots, gamma), a)) < 1e-11

    def test_punto_coincide_con_raiz(self, triangulo):
        """Debe anular el peso de la raíz y repartir el resto"""
        gamma = recover_gamma(triangulo, 1)
        np.testing.assert_allclose(gamma, [0.5, 0, 0.5])

    def test_segmento_dos_raices(self):
        """Debe dar z - 1/2 sobre {0, 2}"""
        np.testing.assert_allclose(recover_gamma([0, 2], 0.5), [0.25, 0.75])

    def test_raices_repetidas(self, raices_dobles):
        """Debe anular la combinación en i/2 con raíces dobles"""
        gamma = recover_gamma(raices_dobles, 0.5j)
        assert gamma.sum() == pytest.approx(1.0)
        assert abs(evaluate(convex_combination(raices_dobles, gamma), 0.5j)) < 1e-12

    def test_exterior(self, triangulo):
        """Debe rechazar puntos fuera de la envolvente"""
        with pytest.raises(HullContainmentError):
            recover_gamma(triangulo, -1 - 1j)

    def test_una_raiz(self):
        """Debe exigir al menos dos raíces"""
        with pytest.raises(ValueError):
            recover_gamma([1], 1)


# ==========================================
# Pruebas de corpus
# ==========================================

class TestCorpusReconstruccion:
    """Reconstrucción sobre pares (instancia, punto) sembrados"""

    @pytest.mark.slow
    def test_doscientos_pares(self):
        """Debe anular A_n^γ en 200 puntos de envolventes aleatorias"""
        for instance, point in hull_point_pairs(1, 200, "all"):
            roots = instance.complex_roots()
            gamma = recover_gamma(roots, point)
            bound = 1e-9 * (1 + root_scale(roots)) ** (roots.size - 1)
            assert abs(evaluate(convex_combination(roots, gamma), point)) <= bound, instance.label
