"""
Punto de entrada de línea de comandos

Subcomandos: roots | verify | recover | decompose | discs | fuzz | counterexamples

Contrato de códigos de salida:
    0: todas las comprobaciones se cumplen
    1: error de uso o de lectura de la entrada
    2: una comprobación matemática falla o un contraejemplo no se reproduce

La salida estándar lleva solo JSON determinista; los diagnósticos y los errores
van a stderr.
"""

import argparse
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
import pandas as pd
from pydantic import ValidationError

from app.bounds import PIVOT_CRITERIA, best_pivot, disc_contains_all, gershgorin_union, trace_disc
from app.config import ARTIFACT_VERSION, FUZZ_DEFAULT_SEED, FUZZ_WORKERS, LOG_LEVEL, RECOVERY_TOL
from app.counterexamples import run_counterexamples
from app.errors import ConfluentBasisError, HullContainmentError, RecoveryError
from app.export_svg import render_svg, write_svg
from app.hull_geometry import convex_hull, default_tol, distance_to_hull, recover_gamma
from app.majorization import transform_by_name
from app.poly_core import Polynomial, convex_combination, evaluate, lagrange_decompose, pairwise_combination, root_scale
from app.roots_engine import residuals, zeros_of, zeros_of_combination
from app.schemas import (
    ContainmentOut,
    DecompositionReport,
    DiscOut,
    DiscReport,
    FuzzReport,
    InstanceSpec,
    OffendingCoefficientOut,
    RecoveryReport,
    RootsReport,
    TheoremTally,
    VerificationReport,
    to_pair,
    to_pairs,
)
from app.scripts.random_instances import FAMILIES, generate_instance, validate_family
from app.theorem_validators import CheckContext, resolve_selection, run_checks, self_test_verdicts
from app.utils import to_json
from app.validators import parse_complex, parse_csv_floats

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2
MAX_REPRODUCERS = 10


class CliError(Exception):
    """
    Error de frontera de la línea de comandos.

    Atributos:
        exit_code: Código de salida (1 uso, 2 violación)
        detail: Mensaje o estructura que se emite en stderr como {"detail": ...}
    """

    def __init__(self, exit_code: int, detail):
        super().__init__(str(detail))
        self.exit_code = exit_code
        self.detail = detail


class _Parser(argparse.ArgumentParser):
    """argparse sale con 2 ante errores de uso; aquí el contrato exige 1."""

    def error(self, message):
        raise CliError(EXIT_USAGE, message)


# ==========================================
# Lectura de la entrada
# ==========================================

def load_instance(args: argparse.Namespace) -> InstanceSpec:
    """
    Lee --instance y aplica --gamma / --pivot si se indican.

    Raises:
        CliError: Si falta el archivo o no es una instancia válida
    """
    if not args.instance:
        raise CliError(EXIT_USAGE, "Se requiere --instance <archivo.json>")

    raw = json.loads(Path(args.instance).read_text(encoding="utf-8"))
    if not isinstance(raw, dict):
        raise CliError(EXIT_USAGE, "La instancia debe ser un objeto JSON")
    if getattr(args, "gamma", None):
        raw["gamma"] = parse_csv_floats(args.gamma)
    pivot = getattr(args, "pivot", None)
    if pivot not in (None, "best"):
        try:
            raw["pivot"] = int(pivot)
        except ValueError:
            raise CliError(EXIT_USAGE, f"--pivot debe ser un índice o 'best' (recibido '{pivot}')")
    return InstanceSpec.model_validate(raw)


def resolve_pivot(instance: InstanceSpec, args: argparse.Namespace) -> int:
    """Pivote 0-based: el de la instancia, el mejor según --criterion o la última raíz."""
    roots = instance.complex_roots()
    if getattr(args, "pivot", None) == "best":
        return best_pivot(roots, instance.weights(), args.criterion)
    index = instance.pivot_index()
    return roots.size - 1 if index is None else index


def parse_target(text: str) -> Polynomial:
    """--target "re,im;re,im;..." con coeficientes en orden ascendente."""
    coefficients = [parse_complex(item) for item in text.split(";") if item.strip()]
    if not coefficients:
        raise CliError(EXIT_USAGE, "--target no contiene coeficientes")
    return Polynomial(np.array(coefficients, dtype=np.complex128))


def parse_pairs(text: str) -> dict[tuple[int, int], float]:
    """--pairs "1-2:0.5,3-4:0.5" con índices 1-based."""
    pairs: dict[tuple[int, int], float] = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            indices, weight = item.split(":")
            i, j = (int(part) - 1 for part in indices.split("-"))
            pairs[(i, j)] = float(weight)
        except ValueError:
            raise CliError(EXIT_USAGE, f"Par inválido '{item}' (formato i-j:peso)")
    return pairs


def parse_phis(text: Optional[str]) -> Optional[list[str]]:
    """--phi "t^2,log1p": φ para las mayorizaciones de sumas (None = las de por defecto)."""
    if not text:
        return None
    return [item.strip() for item in text.split(",") if item.strip()]


def emit(model) -> None:
    sys.stdout.write(to_json(model) + "\n")


# ==========================================
# Subcomandos
# ==========================================

def cmd_roots(args: argparse.Namespace) -> int:
    """Ceros de A_n^γ (o de Σ r_ij g_ij con --pairs) con sus residuos."""
    instance = load_instance(args)
    roots = instance.complex_roots()

    if args.pairs:
        polynomial = pairwise_combination(roots, parse_pairs(args.pairs))
        zeros = zeros_of(polynomial).roots
        mode, pivot = "pairwise", None
    else:
        pivot = resolve_pivot(instance, args)
        polynomial = convex_combination(roots, instance.weights())
        zeros = zeros_of_combination(roots, instance.weights(), pivot).roots
        mode = "convex"

    hull = convex_hull(roots)
    distance = max((distance_to_hull(hull, w) for w in zeros), default=0.0)
    emit(RootsReport(
        mode=mode,
        pivot=None if pivot is None else pivot + 1,
        zeros=to_pairs(zeros),
        residuals=[float(r) for r in residuals(polynomial, zeros)],
        hull_distance=distance,
        escapes_hull=distance > default_tol(roots),
    ))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    """Ejecuta las comprobaciones seleccionadas; sale con 2 si alguna falla."""
    if args.self_test:
        checks = self_test_verdicts()
        # todas deben salir violadas: el verificador no es vacuamente cierto
        report = VerificationReport(checks=checks, all_hold=all(c.holds for c in checks))
        emit(report)
        return EXIT_OK if report.all_hold else EXIT_VIOLATION

    instance = load_instance(args)
    selection = resolve_selection(args.theorems.split(",")) if args.theorems else None
    ctx = CheckContext.build(instance.complex_roots(), instance.weights(), resolve_pivot(instance, args), parse_phis(args.phi))
    checks = run_checks(ctx, selection, timings=args.timings)
    report = VerificationReport(seed=instance.seed, instance=instance, checks=checks, all_hold=all(c.holds for c in checks))
    emit(report)
    return EXIT_OK if report.all_hold else EXIT_VIOLATION


def cmd_recover(args: argparse.Namespace) -> int:
    """Pesos γ con A_n^γ(a) = 0 para un punto a de la envolvente."""
    instance = load_instance(args)
    if not args.point:
        raise CliError(EXIT_USAGE, "Se requiere --point re,im")
    roots = instance.complex_roots()
    a = parse_complex(args.point)

    try:
        gamma = recover_gamma(roots, a)
    except HullContainmentError as exc:
        raise CliError(EXIT_VIOLATION, {"message": str(exc), "distance": exc.distance})
    except RecoveryError as exc:
        raise CliError(EXIT_VIOLATION, {"message": str(exc), "residual": exc.residual})

    residual = abs(evaluate(convex_combination(roots, gamma), a))
    emit(RecoveryReport(
        point=to_pair(a),
        gamma=[float(g) for g in gamma],
        residual=residual,
        bound=RECOVERY_TOL * (1 + root_scale(roots)) ** (roots.size - 1),
    ))
    return EXIT_OK


def cmd_decompose(args: argparse.Namespace) -> int:
    """Expresa un polinomio mónico de grado n-1 en la base {gₖ}."""
    instance = load_instance(args)
    if not args.target:
        raise CliError(EXIT_USAGE, "Se requiere --target re,im;re,im;...")
    try:
        result = lagrange_decompose(instance.complex_roots(), parse_target(args.target))
    except ConfluentBasisError as exc:
        raise CliError(EXIT_USAGE, str(exc))

    emit(DecompositionReport(
        feasible=result.feasible,
        coefficients=to_pairs(result.coefficients),
        gamma=None if result.weights is None else [float(g) for g in result.weights],
        offending=[
            OffendingCoefficientOut(index=item.index + 1, value=to_pair(item.value), reason=item.reason)
            for item in result.offending
        ],
    ))
    return EXIT_OK


def cmd_discs(args: argparse.Namespace) -> int:
    """Disco de traza y unión de Geršgorin para el pivote elegido, con SVG opcional."""
    instance = load_instance(args)
    roots, gamma = instance.complex_roots(), instance.weights()
    pivot = resolve_pivot(instance, args)
    zeros = zeros_of_combination(roots, gamma, pivot).roots
    tol = default_tol(roots)

    disc = trace_disc(roots, gamma, pivot)
    union = gershgorin_union(roots, gamma, pivot)
    trace_result = disc_contains_all(disc, zeros, tol)
    union_result = disc_contains_all(union, zeros, tol)

    if args.svg:
        write_svg(args.svg, render_svg(roots, zeros, convex_hull(roots), [disc, union]))
        logger.info("SVG escrito en %s", args.svg)

    emit(DiscReport(
        pivot=pivot + 1,
        criterion=args.criterion if args.pivot == "best" else None,
        zeros=to_pairs(zeros),
        trace_disc=DiscOut(center=to_pair(disc.center), radius=disc.radius),
        trace_containment=ContainmentOut(holds=trace_result.holds, max_violation=trace_result.max_violation),
        gershgorin=[DiscOut(center=to_pair(d.center), radius=d.radius) for d in union.discs],
        gershgorin_containment=ContainmentOut(holds=union_result.holds, max_violation=union_result.max_violation),
    ))
    return EXIT_OK if trace_result.holds and union_result.holds else EXIT_VIOLATION


def _run_trial(task: tuple[int, int, str, Optional[list[str]], Optional[list[str]]]) -> tuple[int, InstanceSpec, list]:
    seed, trial, family, selection, phis = task
    instance = generate_instance(seed, trial, family)
    ctx = CheckContext.build(instance.complex_roots(), instance.weights(), phis=phis)
    return trial, instance, run_checks(ctx, selection)


def fuzz_table(results: Sequence[tuple[int, InstanceSpec, list]]) -> pd.DataFrame:
    """Una fila por (prueba, comprobación)."""
    rows = [
        {
            "trial": trial,
            "label": instance.label,
            "n": len(instance.roots),
            "theorem": verdict.theorem,
            "holds": verdict.holds,
            "margin": verdict.margin,
        }
        for trial, instance, verdicts in results
        for verdict in verdicts
    ]
    return pd.DataFrame(rows, columns=["trial", "label", "n", "theorem", "holds", "margin"])


def cmd_fuzz(args: argparse.Namespace) -> int:
    """Campaña determinista de instancias aleatorias; sale con 2 si hay violaciones."""
    if args.trials < 1:
        raise CliError(EXIT_USAGE, "--trials debe ser >= 1")
    validate_family(args.family)
    selection = resolve_selection(args.theorems.split(",")) if args.theorems else None

    phis = parse_phis(args.phi)
    for name in phis or ():
        transform_by_name(name)

    started = time.perf_counter()
    tasks = [(args.seed, trial, args.family, selection, phis) for trial in range(args.trials)]
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            results = list(pool.map(_run_trial, tasks, chunksize=16))
    else:
        results = [_run_trial(task) for task in tasks]
    results.sort(key=lambda item: item[0])
    logger.info("Fuzzing: %d pruebas de la familia %s", args.trials, args.family)

    table = fuzz_table(results)
    if args.csv:
        table.to_csv(args.csv, index=False)

    order = resolve_selection(selection)
    grouped = table.groupby("theorem", sort=False).agg(
        checked=("holds", "size"),
        violated=("holds", lambda s: int((~s.astype(bool)).sum())),
        worst_margin=("margin", "min"),
    )
    tallies = [
        TheoremTally(
            theorem=name,
            checked=int(grouped.loc[name, "checked"]),
            violated=int(grouped.loc[name, "violated"]),
            worst_margin=float(grouped.loc[name, "worst_margin"]),
        )
        for name in order
        if name in grouped.index
    ]

    failing = [instance for _, instance, verdicts in results if not all(v.holds for v in verdicts)]
    report = FuzzReport(
        seed=args.seed,
        trials=args.trials,
        family=args.family,
        violations=sum(t.violated for t in tallies),
        tallies=tallies,
        reproducers=failing[:MAX_REPRODUCERS],
        runtime=time.perf_counter() - started if args.timings else None,
    )
    emit(report)
    return EXIT_OK if report.violations == 0 else EXIT_VIOLATION


def cmd_counterexamples(args: argparse.Namespace) -> int:
    report = run_counterexamples()
    emit(report)
    return EXIT_OK if report.all_reproduced else EXIT_VIOLATION


COMMANDS = {
    "roots": cmd_roots,
    "verify": cmd_verify,
    "recover": cmd_recover,
    "decompose": cmd_decompose,
    "discs": cmd_discs,
    "fuzz": cmd_fuzz,
    "counterexamples": cmd_counterexamples,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="python -m app", description="Ceros de combinaciones convexas de polinomios incompletos")
    parser.add_argument("--version", action="version", version=ARTIFACT_VERSION)
    parser.add_argument("--log-level", default=LOG_LEVEL, help="Nivel de logging en stderr (por defecto LOG_LEVEL)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def instance_command(name: str, help_text: str) -> argparse.ArgumentParser:
        command = sub.add_parser(name, help=help_text)
        command.add_argument("--instance", help="Archivo JSON con la instancia")
        command.add_argument("--gamma", help="Pesos separados por comas (sustituye a los de la instancia)")
        command.add_argument("--pivot", help="Índice 1-based del pivote o 'best'")
        command.add_argument("--criterion", choices=PIVOT_CRITERIA, default="min-total-area")
        return command

    roots = instance_command("roots", "Ceros de la combinación")
    roots.add_argument("--pairs", help="Modo de pares: i-j:peso,... (índices 1-based)")

    verify = instance_command("verify", "Ejecuta las comprobaciones sobre una instancia")
    verify.add_argument("--theorems", help="Comprobaciones separadas por comas")
    verify.add_argument("--timings", action="store_true")
    verify.add_argument("--phi", help="φ separadas por comas: t, t^p (p >= 1) o log1p")
    verify.add_argument("--self-test", action="store_true", help="Verifica entradas fabricadas que deben fallar")

    recover = instance_command("recover", "Pesos γ para un punto de la envolvente")
    recover.add_argument("--point", help="Punto a como re,im")

    decompose = instance_command("decompose", "Descomposición de un polinomio en la base {gₖ}")
    decompose.add_argument("--target", help="Coeficientes ascendentes re,im;re,im;...")

    discs = instance_command("discs", "Discos de localización")
    discs.add_argument("--svg", help="Archivo SVG de salida")

    fuzz = sub.add_parser("fuzz", help="Campaña de instancias aleatorias")
    fuzz.add_argument("--seed", type=int, default=FUZZ_DEFAULT_SEED)
    fuzz.add_argument("--trials", type=int, default=100)
    fuzz.add_argument("--family", default="uniform-disc", choices=["all", *FAMILIES])
    fuzz.add_argument("--theorems", help="Comprobaciones separadas por comas")
    fuzz.add_argument("--phi", help="φ separadas por comas: t, t^p (p >= 1) o log1p")
    fuzz.add_argument("--workers", type=int, default=FUZZ_WORKERS)
    fuzz.add_argument("--csv", help="Tabla por prueba y comprobación")
    fuzz.add_argument("--timings", action="store_true")

    sub.add_parser("counterexamples", help="Reproduce los contraejemplos conocidos")
    return parser


def configure_logging(level: str) -> None:
    logging.basicConfig(
        stream=sys.stderr,
        level=getattr(logging, str(level).upper(), logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def _fail(exit_code: int, detail) -> int:
    sys.stderr.write(json.dumps({"detail": detail}, ensure_ascii=False) + "\n")
    return exit_code


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Ejecuta un subcomando y traduce las excepciones al contrato de salida.

    - CliError: su propio código.
    - ValidationError, ValueError, OSError, JSON inválido: 1.
    - ArithmeticError (no convergencia, divergencia de caminos): 2.
    """
    try:
        args = build_parser().parse_args(argv)
        configure_logging(args.log_level)
        return COMMANDS[args.command](args)
    except CliError as exc:
        return _fail(exc.exit_code, exc.detail)
    except ValidationError as exc:
        return _fail(EXIT_USAGE, [e["msg"] for e in exc.errors()])
    except (ValueError, OSError) as exc:
        # json.JSONDecodeError es subclase de ValueError
        return _fail(EXIT_USAGE, str(exc))
    except ArithmeticError as exc:
        logger.error("Fallo numérico: %s", exc)
        return _fail(EXIT_VIOLATION, str(exc))
