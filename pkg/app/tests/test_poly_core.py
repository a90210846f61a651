"""
Tests unitarios para la aritmética de polinomios (app/poly_core.py)
"""

import math
from fractions import Fraction

import numpy as np
import pytest

from app.errors import ConfluentBasisError, DegreeError
from app.poly_core import (
    Polynomial,
    absolute_value_poly,
    coefficients_close,
    convex_combination,
    derivative,
    elementary_incomplete_sum,
    evaluate,
    from_roots,
    higher_order_incomplete,
    incomplete,
    lagrange_decompose,
    pairwise_combination,
    partial_fraction_coefficients,
    relative_coefficient_error,
    root_scale,
    second_order_gamma_combination,
    second_order_incomplete,
    trim_coefficients,
)
from app.validators import uniform_weights


# ==========================================
# Tests para Polynomial y trim_coefficients()
# ==========================================

class TestPolynomial:
    """Tests para la representación de coeficientes"""

    def test_recorta_ceros_finales(self):
        """Debe eliminar coeficientes finales despreciables"""
        p = Polynomial([1, 2, 1e-20])
        assert p.degree == 1

    def test_polinomio_nulo(self):
        """Debe conservar el término independiente del polinomio nulo"""
        assert trim_coefficients([0, 0]).tolist() == [0]
        assert Polynomial([0, 0]).is_zero

    def test_monico_exacto(self):
        """Debe dejar el coeficiente principal exactamente en 1"""
        p = Polynomial([1, 3, 3]).monic()
        assert p.leading == 1
        assert p.coeffs[0] == pytest.approx(1 / 3)

    def test_monico_nulo(self):
        """Debe rechazar normalizar el polinomio nulo"""
        with pytest.raises(DegreeError):
            Polynomial([0]).monic()

    def test_coeficientes_inmutables(self):
        """Debe impedir modificar los coeficientes"""
        p = Polynomial([1, 1])
        with pytest.raises(ValueError):
            p.coeffs[0] = 2


# ==========================================
# Tests para from_roots(), evaluate() y derivative()
# ==========================================

class TestConstruccionYEvaluacion:
    """Tests para expansión, Horner y derivadas"""

    def test_from_roots_triangulo(self, triangulo):
        """Debe expandir z(z - 1)(z - i) = z³ - (1+i)z² + iz"""
        p = from_roots(triangulo)
        np.testing.assert_allclose(p.coeffs, [0, 1j, -(1 + 1j), 1])

    def test_evaluate_en_las_raices(self, triangulo):
        """Debe anularse en cada raíz"""
        p = from_roots(triangulo)
        assert np.all(np.abs(evaluate(p, triangulo)) < 1e-15)

    def test_evaluate_escalar(self):
        """Debe devolver un complex para entrada escalar"""
        p = Polynomial([1, 0, 1])
        assert evaluate(p, 1j) == 0
        assert isinstance(p(2), complex)

    def test_derivada_primera(self):
        """Debe derivar z³ como 3z²"""
        d = derivative(Polynomial([0, 0, 0, 1]))
        np.testing.assert_allclose(d.coeffs, [0, 0, 3])

    def test_derivada_segunda(self):
        """Debe derivar z³ dos veces como 6z"""
        d = derivative(Polynomial([0, 0, 0, 1]), 2)
        np.testing.assert_allclose(d.coeffs, [0, 6])

    def test_derivada_orden_mayor_que_grado(self):
        """Debe devolver el polinomio nulo degenerado"""
        d = derivative(Polynomial([1, 1]), 3)
        assert d.is_zero
        assert d.degenerate

    def test_derivada_orden_invalido(self):
        """Debe rechazar órdenes no positivos"""
        with pytest.raises(DegreeError):
            derivative(Polynomial([1, 1]), 0)

    def test_from_roots_contra_producto_exacto(self):
        """Debe coincidir a 1e-12 relativo con la multiplicación secuencial exacta (8 raíces, semilla 42)"""
        rng = np.random.default_rng(42)
        roots = 2 * np.sqrt(rng.uniform(size=8)) * np.exp(2j * np.pi * rng.uniform(size=8))

        # coeficientes ascendentes como pares (re, im) racionales exactos
        exact = [(Fraction(1), Fraction(0))]
        for z in roots:
            zr, zi = Fraction(float(z.real)), Fraction(float(z.imag))
            shifted = [(Fraction(0), Fraction(0))] + exact
            exact = [
                (shifted[k][0] - (zr * c[0] - zi * c[1]), shifted[k][1] - (zr * c[1] + zi * c[0]))
                for k, c in enumerate(exact + [(Fraction(0), Fraction(0))])
            ]
        expected = np.array([complex(float(re), float(im)) for re, im in exact])

        coeffs = from_roots(roots).coeffs
        assert coeffs.size == 9
        assert np.max(np.abs(coeffs - expected)) <= 1e-12 * np.max(np.abs(expected))

    def test_escala(self):
        """Debe usar 1 + max|zⱼ|"""
        assert root_scale([3, -4j]) == 5.0


# ==========================================
# Tests para los polinomios incompletos
# ==========================================

class TestIncompletos:
    """Tests para gₖ, g_{ij} y g_I"""

    def test_incompleto_primero(self, triangulo):
        """Debe quitar el factor z: g₁ = (z - 1)(z - i)"""
        np.testing.assert_allclose(incomplete(triangulo, 0).coeffs, [1j, -(1 + 1j), 1])

    def test_incompleto_una_raiz(self):
        """Debe aplicar la convención del producto vacío con n = 1"""
        g = incomplete([5], 0)
        assert g.coeffs.tolist() == [1]
        assert g.degenerate

    def test_segundo_orden(self, raices_dobles):
        """Debe quitar dos factores: g_{12} = (z - i)²"""
        g = second_order_incomplete(raices_dobles, 0, 1)
        np.testing.assert_allclose(g.coeffs, [-1, -2j, 1])

    def test_segundo_orden_indices_desordenados(self, triangulo):
        """Debe exigir i < j"""
        with pytest.raises(ValueError):
            second_order_incomplete(triangulo, 2, 1)

    def test_orden_superior(self, triangulo):
        """Debe quitar todos los índices listados"""
        g = higher_order_incomplete(triangulo, [0, 2])
        np.testing.assert_allclose(g.coeffs, [-1, 1])

    def test_orden_superior_indices_repetidos(self, triangulo):
        """Debe rechazar índices repetidos"""
        with pytest.raises(ValueError):
            higher_order_incomplete(triangulo, [1, 1])

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_suma_elemental_es_derivada(self, k):
        """Debe coincidir con A_n^{(k)}/k! coeficiente a coeficiente"""
        roots = [0.5, -1 + 1j, 2j, -0.25 - 0.75j]
        expected = derivative(from_roots(roots), k).scaled(1 / math.factorial(k))
        assert coefficients_close(elementary_incomplete_sum(roots, k), expected)

    def test_suma_elemental_fuera_de_rango(self, triangulo):
        """Debe rechazar k > n"""
        with pytest.raises(DegreeError):
            elementary_incomplete_sum(triangulo, 4)


# ==========================================
# Tests para las combinaciones
# ==========================================

class TestCombinaciones:
    """Tests para A_n^γ, Σγₖgₖ' y Σ r_ij g_ij"""

    def test_uniforme_es_derivada_normalizada(self, triangulo):
        """Debe coincidir con p'/n para γ = 1/n"""
        expected = derivative(from_roots(triangulo)).scaled(1 / 3)
        assert coefficients_close(convex_combination(triangulo, uniform_weights(3)), expected)

    def test_indicador_es_incompleto(self, triangulo):
        """Debe reducirse a gₖ con γ = eₖ"""
        assert coefficients_close(convex_combination(triangulo, [0, 1, 0]), incomplete(triangulo, 1))

    def test_dos_raices(self):
        """Debe dar z - (γ₂z₁ + γ₁z₂) con n = 2"""
        a = convex_combination([0, 1], [0.25, 0.75])
        np.testing.assert_allclose(a.coeffs, [-0.25, 1])

    def test_es_monica(self, triangulo):
        """Debe tener coeficiente principal exactamente 1"""
        assert convex_combination(triangulo, [0.2, 0.3, 0.5]).leading == 1

    def test_pesos_invalidos(self, triangulo):
        """Debe rechazar pesos que no suman 1"""
        with pytest.raises(ValueError):
            convex_combination(triangulo, [0.2, 0.2, 0.2])

    def test_segundo_orden_es_derivada(self):
        """Debe igualar la derivada de A_n^γ"""
        roots = [1, -1j, 0.5 + 0.5j, -2]
        gamma = [0.1, 0.2, 0.3, 0.4]
        expected = derivative(convex_combination(roots, gamma))
        assert coefficients_close(second_order_gamma_combination(roots, gamma), expected)

    def test_segundo_orden_requiere_tres(self):
        """Debe rechazar n < 3"""
        with pytest.raises(DegreeError):
            second_order_gamma_combination([0, 1], [0.5, 0.5])

    def test_pares_contraejemplo(self, raices_dobles):
        """Debe construir z² - iz - 1/3 para el contraejemplo de pares"""
        q = pairwise_combination(raices_dobles, {(2, 3): 1 / 3, (0, 2): 1 / 3, (0, 1): 1 / 3})
        np.testing.assert_allclose(q.coeffs, [-1 / 3, -1j, 1], atol=1e-15)

    def test_modulos(self):
        """Debe construir Π(z - |zⱼ|) con coeficientes reales"""
        b = absolute_value_poly([1j, -1])
        np.testing.assert_allclose(b.coeffs, [1, -2, 1])
        assert np.all(b.coeffs.imag == 0)

    def test_error_relativo(self):
        """Debe ser 0 para polinomios iguales"""
        p = Polynomial([1, 2, 3])
        assert relative_coefficient_error(p, p) == 0


# ==========================================
# Tests para la descomposición en la base {gₖ}
# ==========================================

class TestDescomposicion:
    """Tests para partial_fraction_coefficients() y lagrange_decompose()"""

    def test_contraejemplo_no_factible(self, triangulo):
        """Debe rechazar z(z - 1/2) con λ = (0, 1/4 + i/4, 3/4 - i/4)"""
        result = lagrange_decompose(triangulo, Polynomial([0, -0.5, 1]))
        assert not result.feasible
        np.testing.assert_allclose(result.coefficients, [0, 0.25 + 0.25j, 0.75 - 0.25j], atol=1e-12)
        reasons = {(item.index, item.reason) for item in result.offending}
        assert (1, "parte imaginaria no nula") in reasons
        assert (2, "parte imaginaria no nula") in reasons

    def test_derivada_factible_uniforme(self, triangulo):
        """Debe recuperar γ uniforme para p'/3"""
        target = derivative(from_roots(triangulo)).monic()
        result = lagrange_decompose(triangulo, target)
        assert result.feasible
        np.testing.assert_allclose(result.weights, [1 / 3] * 3, atol=1e-12)

    def test_coeficientes_suman_uno(self):
        """Debe cumplir Σλₖ = 1 para un objetivo mónico"""
        lam = partial_fraction_coefficients([1, 2, 4], Polynomial([7, 0, 1]))
        assert lam.sum() == pytest.approx(1.0)

    def test_parte_real_negativa(self):
        """Debe reportar λ reales negativos"""
        # λₖ = q(zₖ)/gₖ(zₖ) con q = z² + 7 sobre {1, 2, 4}: λ₂ < 0
        result = lagrange_decompose([1, 2, 4], Polynomial([7, 0, 1]))
        assert not result.feasible
        assert any(item.reason == "parte real negativa" for item in result.offending)

    def test_raices_repetidas(self, raices_dobles):
        """Debe rechazar una base confluente"""
        with pytest.raises(ConfluentBasisError):
            lagrange_decompose(raices_dobles, Polynomial([0, 0, 0, 1]))

    def test_grado_incorrecto(self, triangulo):
        """Debe exigir grado n - 1"""
        with pytest.raises(DegreeError):
            lagrange_decompose(triangulo, Polynomial([0, 1]))

    def test_no_monico(self, triangulo):
        """Debe exigir objetivo mónico"""
        with pytest.raises(DegreeError):
            lagrange_decompose(triangulo, Polynomial([0, 0, 2]))
