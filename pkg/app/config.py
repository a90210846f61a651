import os
from dotenv import load_dotenv

load_dotenv()

"""
Configuración y constantes numéricas

- LOG_LEVEL: Nivel de logging para la salida de diagnóstico (stderr).
- ROOT_MAX_ITER: Tope de iteraciones del método de Aberth-Ehrlich.
- FUZZ_DEFAULT_SEED / FUZZ_WORKERS: Semilla y número de procesos para el fuzzing.
- SVG_SIZE: Lado del viewport cuadrado de los gráficos SVG.

Las tolerancias que forman parte del contrato matemático no se leen del entorno.
"""

# Variables leídas desde .env
LOG_LEVEL = os.getenv("LOG_LEVEL", "WARNING").upper()
ROOT_MAX_ITER = int(os.getenv("ROOT_MAX_ITER", 500))
FUZZ_DEFAULT_SEED = int(os.getenv("FUZZ_DEFAULT_SEED", 1))
FUZZ_WORKERS = int(os.getenv("FUZZ_WORKERS", 1))
SVG_SIZE = int(os.getenv("SVG_SIZE", 800))

ARTIFACT_VERSION = "1.0.0"

# Coeficientes
TRIM_TOL = 1e-14
COEF_REL_TOL = 1e-12
COEF_ABS_FLOOR = 1e-14

# Pesos
WEIGHT_SUM_TOL = 1e-12
WEIGHT_CLAMP_TOL = 1e-14

# Descomposición en la base de polinomios incompletos
LAGRANGE_TOL = 1e-10
DISTINCT_TOL = 1e-10

# Companion
MAX_COMPANION_DIM = 64
IDENTITY_REL_TOL = 1e-10

# Raíces
MAX_DEGREE = 64
ROOT_STEP_TOL = 1e-13
ROOT_INIT_SHRINK = 0.9
ROOT_INIT_OFFSET = 0.376
CROSS_CHECK_TOL = 1e-7
CLUSTER_RADIUS = 1e-8
SEED_REACH = 1e-3
RESIDUAL_TOL = 1e-9

# Geometría
HULL_TOL = 1e-9
COLLINEAR_TOL = 1e-12
BARYCENTRIC_CLAMP = 1e-12
COINCIDENCE_TOL = 1e-12
RECOVERY_TOL = 1e-9

# Mayorización y discos
MAJORIZATION_TOL = 1e-9
RADICAND_TOL = 1e-12
RADIUS_REL_TOL = 1e-12
RADIUS_CANCELLATION_FRACTION = 1e-2
PIVOT_TIE_TOL = 1e-12
