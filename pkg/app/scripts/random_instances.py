"""Genera instancias aleatorias reproducibles para el fuzzing y las pruebas de corpus.

El generador es un xorshift64* propio, sembrado con splitmix64, para que una
misma semilla produzca la misma secuencia en cualquier plataforma. Cada prueba
deriva su propio flujo a partir de (semilla, número de prueba), de modo que las
pruebas son independientes y pueden ejecutarse en paralelo.
"""

import math
from typing import Callable, Sequence

from app.schemas import InstanceSpec

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
XORSHIFT_MULTIPLIER = 0x2545F4914F6CDD1D

DISC_RADIUS = 2.0
MIN_ROOTS = 2
MAX_ROOTS = 12
CLUSTER_SPREAD = 1e-2


def splitmix64(value: int) -> int:
    """Mezclador splitmix64: convierte semillas cercanas en estados lejanos."""
    z = (value + GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class XorShift64Star:
    """
    Generador xorshift64* (desplazamientos 12, 25, 27).

    Parámetros:
        seed: Entero sin signo de 64 bits; se mezcla con splitmix64 y nunca
            deja el estado en 0.
    """

    def __init__(self, seed: int):
        state = splitmix64(seed & MASK64)
        self.state = state or GOLDEN_GAMMA

    @classmethod
    def for_trial(cls, seed: int, trial: int) -> "XorShift64Star":
        return cls((seed + trial * GOLDEN_GAMMA) & MASK64)

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * XORSHIFT_MULTIPLIER) & MASK64

    def uniform(self) -> float:
        """Real en [0, 1) con 53 bits de precisión."""
        return (self.next_u64() >> 11) * 2.0 ** -53

    def randint(self, low: int, high: int) -> int:
        """Entero en [low, high], ambos incluidos."""
        return low + self.next_u64() % (high - low + 1)

    def disc_point(self, radius: float = DISC_RADIUS) -> complex:
        """Punto uniforme en el disco: radio R·√u, ángulo uniforme."""
        r = radius * math.sqrt(self.uniform())
        theta = 2 * math.pi * self.uniform()
        return complex(r * math.cos(theta), r * math.sin(theta))

    def simplex(self, n: int) -> list[float]:
        """Pesos uniformes en el símplex (exponenciales normalizadas)."""
        draws = [-math.log(1.0 - self.uniform()) for _ in range(n)]
        total = math.fsum(draws)
        return [d / total for d in draws]


# ==========================================
# Familias de instancias
# ==========================================

def _uniform_disc(rng: XorShift64Star, n: int) -> tuple[list[complex], list[float]]:
    return [rng.disc_point() for _ in range(n)], rng.simplex(n)


def _real_rooted(rng: XorShift64Star, n: int) -> tuple[list[complex], list[float]]:
    roots = [complex(DISC_RADIUS * (2 * rng.uniform() - 1), 0.0) for _ in range(n)]
    return roots, rng.simplex(n)


def _clustered(rng: XorShift64Star, n: int) -> tuple[list[complex], list[float]]:
    centers = [rng.disc_point() for _ in range(rng.randint(1, 3))]
    roots = [centers[rng.randint(0, len(centers) - 1)] + rng.disc_point(CLUSTER_SPREAD) for _ in range(n)]
    return roots, rng.simplex(n)


def _repeated_roots(rng: XorShift64Star, n: int) -> tuple[list[complex], list[float]]:
    # multiplicidad <= 2
    roots: list[complex] = []
    while len(roots) < n:
        base = rng.disc_point()
        copies = 2 if len(roots) + 2 <= n and rng.uniform() < 0.5 else 1
        roots.extend([base] * copies)
    order = sorted(range(n), key=lambda _: rng.next_u64())
    return [roots[i] for i in order], rng.simplex(n)


def _boundary_gamma(rng: XorShift64Star, n: int) -> tuple[list[complex], list[float]]:
    roots = [rng.disc_point() for _ in range(n)]
    mode = rng.randint(0, 2)
    gamma = [0.0] * n
    if mode == 0:
        gamma[rng.randint(0, n - 1)] = 1.0
    elif mode == 1:
        i = rng.randint(0, n - 1)
        j = (i + rng.randint(1, n - 1)) % n
        t = rng.uniform()
        gamma[i], gamma[j] = t, 1.0 - t
    else:
        weights = rng.simplex(n)
        keep = [rng.uniform() < 0.5 for _ in range(n)]
        keep[rng.randint(0, n - 1)] = True
        total = math.fsum(w for w, k in zip(weights, keep) if k)
        gamma = [w / total if k else 0.0 for w, k in zip(weights, keep)]
    return roots, gamma


FAMILIES: dict[str, Callable[[XorShift64Star, int], tuple[list[complex], list[float]]]] = {
    "uniform-disc": _uniform_disc,
    "real-rooted": _real_rooted,
    "clustered": _clustered,
    "repeated-roots": _repeated_roots,
    "boundary-gamma": _boundary_gamma,
}


def validate_family(family: str) -> str:
    if family != "all" and family not in FAMILIES:
        raise ValueError(f"Familia desconocida: '{family}' (disponibles: all, {', '.join(FAMILIES)})")
    return family


def generate_instance(seed: int, trial: int, family: str = "uniform-disc") -> InstanceSpec:
    """
    Instancia número `trial` de la campaña con semilla `seed`.

    Con family = "all" las familias se alternan por número de prueba.
    """
    validate_family(family)
    if family == "all":
        family = list(FAMILIES)[trial % len(FAMILIES)]
    rng = XorShift64Star.for_trial(seed, trial)
    n = rng.randint(MIN_ROOTS, MAX_ROOTS)
    roots, gamma = FAMILIES[family](rng, n)
    return InstanceSpec(
        roots=[(z.real, z.imag) for z in roots],
        gamma=gamma,
        seed=seed,
        label=f"{family}#{trial}",
    )


def generate_corpus(seed: int, count: int, family: str = "all") -> list[InstanceSpec]:
    return [generate_instance(seed, trial, family) for trial in range(count)]


def random_hull_point(rng: XorShift64Star, roots: Sequence[complex]) -> complex:
    """Combinación convexa aleatoria de las raíces (siempre dentro de la envolvente)."""
    weights = rng.simplex(len(roots))
    return complex(
        math.fsum(w * z.real for w, z in zip(weights, roots)),
        math.fsum(w * z.imag for w, z in zip(weights, roots)),
    )


def hull_point_pairs(seed: int, count: int, family: str = "uniform-disc") -> list[tuple[InstanceSpec, complex]]:
    """Pares (instancia, punto de su envolvente) para la reconstrucción de pesos."""
    pairs = []
    for trial in range(count):
        instance = generate_instance(seed, trial, family)
        rng = XorShift64Star.for_trial(seed ^ 0xA5A5A5A5, trial)
        pairs.append((instance, random_hull_point(rng, list(instance.complex_roots()))))
    return pairs
