"""
Validadores de entrada

Este módulo contiene los validadores que se aplican a raíces, pesos, índices
y tolerancias antes de cualquier cálculo, para garantizar que ninguna operación
pública reciba NaN, infinitos o pesos fuera del símplex.
"""

import math
from typing import Iterable, Optional, Sequence

import numpy as np

from app.config import WEIGHT_CLAMP_TOL, WEIGHT_SUM_TOL


def validate_roots(roots: Iterable[complex], min_length: int = 1) -> np.ndarray:
    """
    Valida y normaliza una lista de raíces complejas.

    Reglas:
    - Al menos `min_length` elementos
    - Partes real e imaginaria finitas
    - Se admiten repetidas (el orden identifica a cada gₖ)

    Args:
        roots: Secuencia de números complejos
        min_length: Longitud mínima exigida

    Returns:
        Arreglo complex128 de solo lectura

    Raises:
        ValueError: Si la lista es corta o contiene valores no finitos
    """
    values = np.array(list(roots) if not isinstance(roots, np.ndarray) else roots, dtype=np.complex128).ravel()

    if values.size < min_length:
        if min_length == 1:
            raise ValueError("La lista de raíces no puede estar vacía")
        raise ValueError(f"Se requieren al menos {min_length} raíces (recibidas {values.size})")

    if not np.all(np.isfinite(values)):
        raise ValueError("Las raíces deben tener partes real e imaginaria finitas")

    values = values.copy()
    values.setflags(write=False)
    return values


def validate_weights(weights: Iterable[float], length: Optional[int] = None) -> np.ndarray:
    """
    Valida un vector de pesos convexos (γ, λ o t).

    Reglas:
    - Entradas finitas y no negativas; las que caen en [-1e-14, 0) se llevan a 0
    - Suma igual a 1 con tolerancia absoluta 1e-12; luego se renormaliza
    - Longitud igual a `length` si se indica

    Args:
        weights: Secuencia de reales
        length: Longitud esperada (número de raíces)

    Returns:
        Arreglo float64 de solo lectura que suma 1

    Raises:
        ValueError: Si algún peso es negativo, no finito o la suma no es 1
    """
    values = np.array(list(weights) if not isinstance(weights, np.ndarray) else weights, dtype=np.float64).ravel()

    if values.size == 0:
        raise ValueError("El vector de pesos no puede estar vacío")

    if length is not None and values.size != length:
        raise ValueError(
            f"La cantidad de pesos ({values.size}) no coincide con la cantidad de raíces ({length})"
        )

    if not np.all(np.isfinite(values)):
        raise ValueError("Los pesos deben ser finitos")

    if np.any(values < -WEIGHT_CLAMP_TOL):
        raise ValueError("Los pesos deben ser no negativos")

    values = np.where(values < 0, 0.0, values)

    total = math.fsum(values)
    if abs(total - 1.0) > WEIGHT_SUM_TOL:
        raise ValueError(f"Los pesos deben sumar 1 (suman {total!r})")

    if total != 1.0:
        values = values / total

    values.setflags(write=False)
    return values


def uniform_weights(n: int) -> np.ndarray:
    """Pesos uniformes 1/n (caso de la derivada normalizada)."""
    if n < 1:
        raise ValueError("Se requiere al menos un peso")
    values = np.full(n, 1.0 / n)
    values.setflags(write=False)
    return values


def validate_index(index: int, length: int, name: str = "índice") -> int:
    """
    Valida un índice 0-based dentro de [0, length).

    Raises:
        ValueError: Si el índice está fuera de rango
    """
    if isinstance(index, bool) or not isinstance(index, (int, np.integer)):
        raise ValueError(f"El {name} debe ser un entero")

    if index < 0 or index >= length:
        raise ValueError(f"El {name} {index} está fuera de rango [0, {length - 1}]")

    return int(index)


def validate_tolerance(tol: float) -> float:
    """
    Valida una tolerancia: real finito y no negativo.

    Raises:
        ValueError: Si la tolerancia es negativa o no finita
    """
    if tol is None or not math.isfinite(tol) or tol < 0:
        raise ValueError("La tolerancia debe ser un real finito mayor o igual a 0")
    return float(tol)


def validate_pair_list(pairs: Sequence[tuple[int, int]], n: int) -> list[tuple[int, int]]:
    """
    Valida pares (i, j) 0-based con i < j < n, sin repetir.

    Raises:
        ValueError: Si algún par es inválido o está repetido
    """
    seen = set()
    result = []
    for i, j in pairs:
        validate_index(i, n)
        validate_index(j, n)
        if i >= j:
            raise ValueError(f"Cada par debe cumplir i < j (recibido {i}, {j})")
        if (i, j) in seen:
            raise ValueError(f"El par ({i}, {j}) está repetido")
        seen.add((i, j))
        result.append((int(i), int(j)))
    return result


def parse_complex(text: str) -> complex:
    """
    Convierte "re,im" o una literal compleja de Python ("0.5+1j") en complex.

    Raises:
        ValueError: Si el texto no representa un complejo finito
    """
    text = text.strip()
    if not text:
        raise ValueError("Se esperaba un número complejo")

    try:
        if "," in text:
            re_part, im_part = text.split(",", 1)
            value = complex(float(re_part), float(im_part))
        else:
            value = complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise ValueError(f"'{text}' no es un número complejo válido")

    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ValueError("El número complejo debe ser finito")

    return value


def parse_csv_floats(text: str) -> list[float]:
    """
    Convierte "0.25,0.75" en una lista de reales finitos.

    Raises:
        ValueError: Si algún elemento no es un real finito
    """
    values = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            value = float(item)
        except ValueError:
            raise ValueError(f"'{item}' no es un número real válido")
        if not math.isfinite(value):
            raise ValueError("Los valores deben ser finitos")
        values.append(value)

    if not values:
        raise ValueError("La lista de valores está vacía")

    return values
