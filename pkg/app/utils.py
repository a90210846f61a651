import json
from typing import Any

import numpy as np
from pydantic import BaseModel

"""
Emisión de JSON

Objetivo:
    Serializar los reportes con orden de campos estable y sin pérdida de
    precisión, de modo que la misma entrada produzca exactamente los mismos bytes.

Operación:
    - Los modelos pydantic se vuelcan con `model_dump()` (orden de declaración).
    - Los complejos se escriben como pares [re, im]; los escalares numpy como float.
    - Los float usan la representación más corta que recupera el mismo double
      (a lo sumo 17 dígitos significativos); ±inf se escribe Infinity/-Infinity.
"""


def _plain(value: Any) -> Any:
    if isinstance(value, BaseModel):
        return _plain(value.model_dump())
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_plain(v) for v in value.tolist()]
    if isinstance(value, (complex, np.complexfloating)):
        return [_plain(float(value.real)), _plain(float(value.imag))]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        # -0.0 y 0.0 deben serializar igual
        return 0.0 if value == 0 else value
    return value


def to_json(value: Any) -> str:
    """Serializa un modelo, dict o lista a JSON determinista con sangría de 2 espacios."""
    return json.dumps(_plain(value), indent=2, ensure_ascii=False, allow_nan=True)


def from_json(text: str) -> Any:
    """Inversa de `to_json`: acepta Infinity/-Infinity."""
    return json.loads(text)
