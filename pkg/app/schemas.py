from typing import List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from app.config import ARTIFACT_VERSION
from app.validators import uniform_weights, validate_roots, validate_weights

ComplexPair = Tuple[float, float]


def to_pair(z: complex) -> ComplexPair:
    z = complex(z)
    return (float(z.real), float(z.imag))


def to_pairs(values) -> List[ComplexPair]:
    return [to_pair(z) for z in values]


class InstanceSpec(BaseModel):
    """
    Instancia de entrada

    Objetivo:
        Describir un problema concreto: las raíces z₁..zₙ de A_n, los pesos γ
        y, opcionalmente, la raíz que actúa como pivote zₙ de la companion reducida.

    Parámetros:
        - roots (list[[re, im]]): Raíces, repetidas permitidas.
        - gamma (list[float] | None): Pesos convexos; uniformes si se omiten.
        - pivot (int | None): Índice 1-based del pivote; la última raíz si se omite.
        - seed (int | None): Semilla que generó la instancia (solo metadatos).
        - label (str | None): Etiqueta libre (familia, número de prueba...).

    Operación:
        - Las raíces pasan por `validate_roots` y los pesos por `validate_weights`.
        - La longitud de gamma y el rango del pivote se comprueban contra n.

    Retorna:
        - Instancia de `InstanceSpec` lista para `complex_roots()` y `weights()`.
    """

    roots: List[ComplexPair] = Field(..., min_length=1)
    gamma: Optional[List[float]] = None
    pivot: Optional[int] = None
    seed: Optional[int] = None
    label: Optional[str] = None

    @field_validator('roots')
    @classmethod
    def validate_roots_finite(cls, v):
        """Valida que todas las raíces sean finitas"""
        validate_roots([complex(re, im) for re, im in v])
        return v

    @model_validator(mode='after')
    def validate_gamma_and_pivot(self):
        """Valida la longitud y el símplex de gamma, y el rango del pivote"""
        n = len(self.roots)
        if self.gamma is not None:
            validate_weights(self.gamma, length=n)
        if self.pivot is not None and not 1 <= self.pivot <= n:
            raise ValueError(f"El pivote {self.pivot} está fuera de rango [1, {n}]")
        return self

    def complex_roots(self) -> np.ndarray:
        return validate_roots([complex(re, im) for re, im in self.roots])

    def weights(self) -> np.ndarray:
        if self.gamma is None:
            return uniform_weights(len(self.roots))
        return validate_weights(self.gamma, length=len(self.roots))

    def pivot_index(self) -> Optional[int]:
        """Pivote 0-based para la biblioteca."""
        return None if self.pivot is None else self.pivot - 1


class TheoremVerdict(BaseModel):
    """
    Veredicto de una comprobación

    - theorem: Identificador de la comprobación (p. ej. "hull-containment").
    - holds: Si la desigualdad o contención se cumple.
    - margin: Holgura mínima observada (negativa = violación).
    - tolerance: Tolerancia aplicada.
    - detail: Mensaje opcional (p. ej. el primer k violado).
    - runtime: Segundos empleados; solo con --timings.
    """

    theorem: str
    holds: bool
    margin: float
    tolerance: float
    detail: Optional[str] = None
    runtime: Optional[float] = None


class VerificationReport(BaseModel):
    artifact_version: str = ARTIFACT_VERSION
    seed: Optional[int] = None
    instance: Optional[InstanceSpec] = None
    checks: List[TheoremVerdict]
    all_hold: bool


class RootsReport(BaseModel):
    """
    Ceros de la combinación

    - mode: "convex" para A_n^γ, "pairwise" para Σ r_ij g_ij.
    - zeros: Ceros ordenados por módulo descendente.
    - residuals: |A(w)| para cada cero.
    - hull_distance: Distancia máxima de un cero a la envolvente (0 si todos están dentro).
    """

    artifact_version: str = ARTIFACT_VERSION
    mode: Literal["convex", "pairwise"] = "convex"
    pivot: Optional[int] = None
    zeros: List[ComplexPair]
    residuals: List[float]
    hull_distance: float
    escapes_hull: bool


class RecoveryReport(BaseModel):
    artifact_version: str = ARTIFACT_VERSION
    point: ComplexPair
    gamma: List[float]
    residual: float
    bound: float


class OffendingCoefficientOut(BaseModel):
    index: int
    value: ComplexPair
    reason: str


class DecompositionReport(BaseModel):
    """
    Descomposición de un polinomio mónico de grado n-1 en la base {gₖ}

    - feasible: Si los coeficientes forman un vector de pesos convexos.
    - coefficients: λₖ (complejos) tales que q = Σλₖgₖ.
    - gamma: Los pesos, cuando la descomposición es factible.
    - offending: Certificado de infactibilidad (índices 1-based).
    """

    artifact_version: str = ARTIFACT_VERSION
    feasible: bool
    coefficients: List[ComplexPair]
    gamma: Optional[List[float]] = None
    offending: List[OffendingCoefficientOut] = []


class DiscOut(BaseModel):
    center: ComplexPair
    radius: float = Field(..., ge=0)


class ContainmentOut(BaseModel):
    holds: bool
    max_violation: float


class DiscReport(BaseModel):
    artifact_version: str = ARTIFACT_VERSION
    pivot: int
    criterion: Optional[str] = None
    zeros: List[ComplexPair]
    trace_disc: DiscOut
    trace_containment: ContainmentOut
    gershgorin: List[DiscOut]
    gershgorin_containment: ContainmentOut


class TheoremTally(BaseModel):
    theorem: str
    checked: int
    violated: int
    worst_margin: float


class FuzzReport(BaseModel):
    """
    Resumen de una campaña de fuzzing

    - tallies: Una fila por comprobación, en orden estable.
    - reproducers: Instancias mínimas que reproducen cada violación.
    """

    artifact_version: str = ARTIFACT_VERSION
    seed: int
    trials: int
    family: str
    violations: int
    tallies: List[TheoremTally]
    reproducers: List[InstanceSpec] = []
    runtime: Optional[float] = None


class CounterexampleReport(BaseModel):
    artifact_version: str = ARTIFACT_VERSION
    escape_zeros: List[ComplexPair]
    escape_distance: float
    expected_escape_distance: float
    escape_reproduced: bool
    decomposition_coefficients: List[ComplexPair]
    expected_coefficients: List[ComplexPair]
    decomposition_reproduced: bool
    all_reproduced: bool
