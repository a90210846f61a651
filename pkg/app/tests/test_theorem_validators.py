"""
Tests para las comprobaciones sobre instancias (app/theorem_validators.py)
"""

import math

import pytest

import app.theorem_validators as theorem_validators
from app.errors import CrossCheckError, InvalidTransformError
from app.theorem_validators import (
    CHECKS,
    CheckContext,
    check_derivative_hull,
    check_recovery,
    check_second_order_hull,
    check_trace_disc,
    radius_mismatch,
    resolve_selection,
    run_checks,
    self_test_verdicts,
)
from app.scripts.random_instances import generate_corpus
from app.validators import uniform_weights


# ==========================================
# Tests para resolve_selection()
# ==========================================

class TestSeleccion:
    """Tests para la selección de comprobaciones"""

    def test_todas_por_defecto(self):
        """Debe devolver todas en el orden del registro"""
        assert resolve_selection(None) == list(CHECKS)

    def test_orden_del_registro(self):
        """Debe ignorar el orden pedido y usar el del registro"""
        assert resolve_selection(["gershgorin", "full-companion"]) == ["full-companion", "gershgorin"]

    def test_desconocida(self):
        """Debe rechazar nombres inexistentes"""
        with pytest.raises(ValueError) as exc_info:
            resolve_selection(["hull-containment", "riemann"])
        assert "riemann" in str(exc_info.value)


# ==========================================
# Tests para run_checks()
# ==========================================

class TestRunChecks:
    """Tests de las comprobaciones sobre instancias conocidas"""

    def test_triangulo_todas_se_cumplen(self, triangulo):
        """Debe cumplir todas las comprobaciones sobre {0, 1, i}"""
        verdicts = run_checks(CheckContext.build(triangulo, uniform_weights(3)))
        assert [v.theorem for v in verdicts] == list(CHECKS)
        failed = [v.theorem for v in verdicts if not v.holds]
        assert failed == []

    def test_raices_dobles(self, raices_dobles):
        """Debe cumplir todas las comprobaciones con raíces repetidas"""
        verdicts = run_checks(CheckContext.build(raices_dobles, [0.1, 0.2, 0.3, 0.4]))
        assert all(v.holds for v in verdicts), [v for v in verdicts if not v.holds]

    def test_pivote_explicito(self, raices_cuartas):
        """Debe aceptar un pivote distinto del último"""
        ctx = CheckContext.build(raices_cuartas, uniform_weights(4), pivot=0)
        assert all(v.holds for v in run_checks(ctx, ["hull-containment", "trace-disc"]))

    def test_tiempos(self, triangulo):
        """Debe registrar el tiempo solo con timings"""
        ctx = CheckContext.build(triangulo, uniform_weights(3))
        assert run_checks(ctx, ["gershgorin"])[0].runtime is None
        assert run_checks(ctx, ["gershgorin"], timings=True)[0].runtime >= 0

    def test_fallo_numerico_es_violacion(self, triangulo, mocker):
        """Debe convertir un ArithmeticError en violación con margen -inf"""
        failing = mocker.Mock(side_effect=CrossCheckError("divergencia", direct=[], companion=[], distance=1.0))
        mocker.patch.dict(CHECKS, {"gershgorin": failing})
        verdict = run_checks(CheckContext.build(triangulo, uniform_weights(3)), ["gershgorin"])[0]
        assert not verdict.holds
        assert verdict.margin == -math.inf
        assert verdict.detail == "divergencia"

    def test_segundo_orden_no_aplica(self):
        """Debe cumplirse trivialmente con n < 3"""
        verdict = check_second_order_hull(CheckContext.build([0, 1], [0.5, 0.5]))
        assert verdict.holds
        assert "no aplica" in verdict.detail

    def test_reconstruccion(self, triangulo):
        """Debe reconstruir pesos con residuo dentro de la cota"""
        verdict = check_recovery(CheckContext.build(triangulo, [0.2, 0.3, 0.5]))
        assert verdict.holds
        assert verdict.margin > 0

    def test_cache_de_ceros(self, triangulo, mocker):
        """Debe calcular los ceros una sola vez por instancia"""
        spy = mocker.spy(theorem_validators, "zeros_of_combination")
        run_checks(CheckContext.build(triangulo, uniform_weights(3)), ["hull-containment", "gershgorin", "trace-disc"])
        assert spy.call_count == 1

    def test_phi_configurable(self, raices_dobles):
        """Debe usar las φ pedidas en las mayorizaciones de sumas"""
        ctx = CheckContext.build(raices_dobles, uniform_weights(4), phis=["log1p", "t^3"])
        assert [phi.name for phi in ctx.transforms] == ["log1p", "t^3"]
        verdicts = run_checks(ctx, ["power-majorization", "absolute-power-majorization"])
        assert all(v.holds for v in verdicts)

    def test_phi_invalida(self, triangulo):
        """Debe rechazar φ desconocidas al construir el contexto"""
        with pytest.raises(InvalidTransformError):
            CheckContext.build(triangulo, uniform_weights(3), phis=["t^0.5"])


# ==========================================
# Tests para las contenciones de derivadas y el disco de traza
# ==========================================

class TestDerivadasYTraza:
    """Tests para check_derivative_hull(), check_second_order_hull() y check_trace_disc()"""

    def test_derivadas_en_cumulos(self):
        """Debe contener los ceros de todas las derivadas en instancias con cúmulos"""
        for instance in generate_corpus(1, 40, "clustered"):
            ctx = CheckContext.build(instance.complex_roots(), instance.weights(), instance.pivot_index())
            assert check_derivative_hull(ctx).holds, instance.label

    def test_derivadas_por_cadena(self, triangulo, mocker):
        """Debe obtener las derivadas como cadena de combinaciones uniformes"""
        spy = mocker.spy(theorem_validators, "derivative_zeros")
        assert check_derivative_hull(CheckContext.build(triangulo, uniform_weights(3))).holds
        assert spy.call_count == 1

    def test_segundo_orden_en_cumulos(self):
        """Debe contener los ceros de segundo orden en instancias con cúmulos"""
        for instance in generate_corpus(2, 40, "clustered"):
            ctx = CheckContext.build(instance.complex_roots(), instance.weights(), instance.pivot_index())
            assert check_second_order_hull(ctx).holds, instance.label

    def test_radio_relativo(self):
        """Debe medir la discrepancia del radio en relativo"""
        assert radius_mismatch(1.0, 1.0, 1.0) == 0.0
        assert radius_mismatch(1.0, 1.0 + 1e-11, 2.0) == pytest.approx(1e-11, rel=1e-3)
        assert radius_mismatch(0.0, 0.0, 0.0) == 0.0

    def test_radio_con_cancelacion(self):
        """Debe comparar al cuadrado cuando r² < 1e-2·tr M*M"""
        assert radius_mismatch(0.0, 1e-7, 1.0) == pytest.approx(1e-14)
        assert radius_mismatch(1e-6, 2e-6, 1.0) == pytest.approx(3e-12)

    def test_radio_inconsistente(self, triangulo, mocker):
        """Debe fallar si el radio entrada a entrada difiere en 1e-9 relativo"""
        original = theorem_validators.trace_radius_from_matrix
        mocker.patch.object(theorem_validators, "trace_radius_from_matrix", side_effect=lambda m: original(m) * (1 + 1e-9))
        verdict = check_trace_disc(CheckContext.build(triangulo, uniform_weights(3)))
        assert not verdict.holds
        assert "radio inconsistente" in verdict.detail


# ==========================================
# Tests para self_test_verdicts()
# ==========================================

class TestAutoprueba:
    """Tests para las violaciones fabricadas"""

    def test_todas_violadas(self):
        """Debe reportar como violada cada entrada fabricada"""
        verdicts = self_test_verdicts()
        assert len(verdicts) == 4
        assert not any(v.holds for v in verdicts)

    def test_margenes(self):
        """Debe reportar los márgenes esperados"""
        by_name = {v.theorem: v for v in self_test_verdicts()}
        assert by_name["product-majorization"].margin == pytest.approx(-math.log(2))
        assert by_name["power-majorization"].margin == pytest.approx(-3.0)
        assert by_name["hull-containment"].margin == pytest.approx(-1.0)
        assert by_name["trace-disc"].margin == pytest.approx(-1.0)


# ==========================================
# Pruebas de corpus
# ==========================================

def _failures(instances):
    failures = []
    for instance in instances:
        ctx = CheckContext.build(instance.complex_roots(), instance.weights(), instance.pivot_index())
        failures.extend((instance.label, v.theorem, v.detail) for v in run_checks(ctx) if not v.holds)
    return failures


class TestCorpus:
    """Todas las comprobaciones sobre instancias sembradas"""

    def test_corpus_pequeno(self, corpus_pequeno):
        """Debe cumplir todas las comprobaciones en 60 instancias"""
        assert _failures(corpus_pequeno) == []

    @pytest.mark.slow
    def test_corpus_completo(self, corpus):
        """Debe cumplir todas las comprobaciones en 1000 instancias"""
        assert _failures(corpus) == []
