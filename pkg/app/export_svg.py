# export_svg.py
"""
Módulo para exportar una instancia a SVG con matplotlib.

Características:
- Lienzo cuadrado de SVG_SIZE puntos (800 por defecto), misma escala en ambos ejes
- Envolvente convexa en contorno (polígono, segmento o punto)
- Raíces de A_n como marcadores rellenos
- Ceros de la combinación como cruces
- Discos de localización como circunferencias discontinuas
- Salida determinista: sal de hash fija y sin fecha en los metadatos

Cada elemento lleva un id (gid) estable: hull-<tipo>, roots, zeros,
trace-disc, gershgorin-<k>.
"""

import io
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

import matplotlib
import numpy as np
from matplotlib.figure import Figure
from matplotlib.patches import Circle, Polygon

from app.bounds import Disc, DiscUnion
from app.config import SVG_SIZE
from app.hull_geometry import Hull

POINTS_PER_INCH = 72
MARGIN = 0.08
HASH_SALT = "incomplete-polynomials"

COLORS = {
    "hull": "#1f4e79",
    "root": "#000000",
    "zero": "#c00000",
    "disc": "#548235",
    "trace": "#7f6000",
}


def _disc_items(discs: Optional[Sequence[Union[Disc, DiscUnion]]]) -> list[tuple[Disc, str, str]]:
    items: list[tuple[Disc, str, str]] = []
    for entry in discs or ():
        if isinstance(entry, DiscUnion):
            items.extend((d, COLORS["disc"], f"gershgorin-{k}") for k, d in enumerate(entry.discs, start=1))
        else:
            items.append((entry, COLORS["trace"], "trace-disc"))
    return items


def render_svg(
    roots: Iterable[complex],
    zeros: Iterable[complex],
    hull: Hull,
    discs: Optional[Sequence[Union[Disc, DiscUnion]]] = None,
    size: int = SVG_SIZE,
) -> str:
    """
    Genera el documento SVG como texto.

    Args:
        roots: Raíces z₁..zₙ
        zeros: Ceros de la combinación
        hull: Envolvente convexa de las raíces
        discs: Discos de traza (Disc) y uniones de Geršgorin (DiscUnion)
        size: Lado del lienzo en puntos

    Returns:
        Texto XML de un documento SVG 1.1
    """
    root_values = np.asarray(list(roots), dtype=np.complex128)
    zero_values = np.asarray(list(zeros), dtype=np.complex128)

    side = size / POINTS_PER_INCH
    fig = Figure(figsize=(side, side))
    ax = fig.add_axes((MARGIN, MARGIN, 1 - 2 * MARGIN, 1 - 2 * MARGIN))
    ax.set_aspect("equal", adjustable="datalim")
    ax.grid(True, alpha=0.3)
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")

    for d, color, gid in _disc_items(discs):
        ax.add_patch(Circle(
            (d.center.real, d.center.imag), d.radius,
            fill=False, edgecolor=color, linestyle="--", linewidth=1.2, gid=gid,
        ))

    vertices = np.column_stack((hull.vertices.real, hull.vertices.imag))
    if hull.kind == "polygon":
        ax.add_patch(Polygon(vertices, closed=True, fill=False, edgecolor=COLORS["hull"], linewidth=2, gid="hull-polygon"))
    elif hull.kind == "segment":
        ax.plot(vertices[:, 0], vertices[:, 1], color=COLORS["hull"], linewidth=2, gid="hull-segment")

    ax.plot(root_values.real, root_values.imag, linestyle="none", marker="o", color=COLORS["root"], gid="roots")
    if zero_values.size:
        ax.plot(zero_values.real, zero_values.imag, linestyle="none", marker="x", markersize=8, color=COLORS["zero"], gid="zeros")

    ax.autoscale_view()
    buffer = io.StringIO()
    with matplotlib.rc_context({"svg.hashsalt": HASH_SALT, "svg.fonttype": "none"}):
        fig.savefig(buffer, format="svg", metadata={"Date": None})
    return buffer.getvalue()


def write_svg(path: Union[str, Path], document: str) -> Path:
    """Escribe el documento en disco (UTF-8) y devuelve la ruta."""
    target = Path(path)
    target.write_text(document, encoding="utf-8")
    return target
