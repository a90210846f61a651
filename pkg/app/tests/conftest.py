"""
Fixtures compartidas por los tests
"""

import math

import numpy as np
import pytest

from app.scripts.random_instances import generate_corpus

CORPUS_SEED = 1
CORPUS_SIZE = 1000


@pytest.fixture
def triangulo():
    """Raíces {0, 1, i}: la instancia verificada a mano"""
    return np.array([0, 1, 1j], dtype=np.complex128)


@pytest.fixture
def raices_dobles():
    """Raíces {0, 0, i, i}: p(z) = z²(z - i)²"""
    return np.array([0, 0, 1j, 1j], dtype=np.complex128)


@pytest.fixture
def raices_cubicas():
    """Raíces cúbicas de la unidad"""
    return np.exp(2j * math.pi * np.arange(3) / 3)


@pytest.fixture
def raices_cuartas():
    """Raíces cuartas de la unidad"""
    return np.array([1, 1j, -1, -1j], dtype=np.complex128)


@pytest.fixture(scope="session")
def corpus():
    """1000 instancias sembradas, alternando todas las familias"""
    return generate_corpus(CORPUS_SEED, CORPUS_SIZE, "all")


@pytest.fixture(scope="session")
def corpus_pequeno():
    """60 instancias sembradas para las pruebas rápidas"""
    return generate_corpus(CORPUS_SEED, 60, "all")
