from typing import Any, Dict, List

from ..core.errors import ArtifactError
from .models import ExpPoly, ExpTerm


def complex_to_json(z: complex) -> List[float]:
    z = complex(z)
    return [z.real, z.imag]


def complex_from_json(value: Any) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    raise ArtifactError(f"Complex value must be [re, im], got {value!r}")


def term_to_json(t: ExpTerm) -> Dict[str, Any]:
    return {"c": complex_to_json(t.coeff), "m": t.power, "k": complex_to_json(t.rate)}


def poly_to_json(p: ExpPoly) -> List[Dict[str, Any]]:
    return [term_to_json(t) for t in p.terms]


def poly_from_json(data: Any) -> ExpPoly:
    if not isinstance(data, list):
        raise ArtifactError(f"ExpPoly must be a list of terms, got {type(data).__name__}")
    terms = []
    for item in data:
        try:
            terms.append(ExpTerm(complex_from_json(item["c"]), int(item["m"]),
                                 complex_from_json(item["k"])))
        except (KeyError, TypeError) as e:
            raise ArtifactError(f"Malformed term {item!r}: {e}") from e
    return ExpPoly.from_terms(terms)
