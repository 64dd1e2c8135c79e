from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional
import json


@dataclass
class Check:
    """One decided identity.

    ``exact`` is the pass flag. For ``method == "exact"`` it comes from a
    structural zero test; for ``"grid"`` and ``"numeric"`` from a tolerance.
    ``residual`` is the worst absolute value seen on the diagnostic grid.
    """

    name: str
    exact: bool
    residual: float = 0.0
    location: Optional[str] = None
    informational: bool = False
    method: str = "exact"

    def to_dict(self) -> Dict[str, Any]:
        out = asdict(self)
        out["exact"] = bool(self.exact)
        out["residual"] = float(self.residual)
        return out


@dataclass
class VerificationReport:
    checks: List[Check] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(c.exact for c in self.checks if not c.informational)

    def add(self, check: Check) -> "VerificationReport":
        self.checks.append(check)
        return self

    def extend(self, other: "VerificationReport") -> "VerificationReport":
        self.checks.extend(other.checks)
        return self

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.exact and not c.informational]

    def get(self, name: str) -> Optional[Check]:
        for c in self.checks:
            if c.name == name:
                return c
        return None

    def changed_checks(self, other: "VerificationReport") -> List[str]:
        """Names whose pass flag differs from ``other``, or that only one report has."""
        mine = {c.name: c.exact for c in self.checks}
        theirs = {c.name: c.exact for c in other.checks}
        return sorted(n for n in mine.keys() | theirs.keys() if mine.get(n) != theirs.get(n))

    def to_dict(self) -> Dict[str, Any]:
        return {"overall": self.overall, "checks": [c.to_dict() for c in self.checks]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "VerificationReport":
        return cls([Check(**c) for c in data.get("checks", [])])
