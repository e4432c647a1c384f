"""One-line PASS/FAIL records shared by the verification checks."""
from __future__ import annotations

from dataclasses import dataclass, field


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.6e}"
    return str(v)


@dataclass
class CheckReport:
    name: str
    lhs: float
    rhs: float
    slack: float
    passed: bool
    params: dict = field(default_factory=dict)

    @property
    def ratio(self) -> float:
        if self.rhs == 0:
            return 0.0 if self.lhs == 0 else float("inf")
        return self.lhs / self.rhs

    def line(self) -> str:
        params = " ".join(f"{k}={_fmt(v)}" for k, v in self.params.items())
        status = "PASS" if self.passed else "FAIL"
        return (f"{self.name} [{params}] lhs={self.lhs:.6e} rhs={self.rhs:.6e} "
                f"slack={self.slack:.1e} {status}")

    def to_record(self) -> dict:
        return {"name": self.name, "params": dict(self.params), "lhs": self.lhs,
                "rhs": self.rhs, "slack": self.slack, "passed": self.passed}


def inequality(name: str, lhs: float, rhs: float, slack: float, **params) -> CheckReport:
    """``lhs <= rhs * (1 + slack)`` with a tiny absolute floor for 0 <= 0."""
    lhs, rhs = float(lhs), float(rhs)
    ok = lhs <= rhs * (1.0 + slack) + 1e-300
    return CheckReport(name, lhs, rhs, slack, bool(ok), params)


def closeness(name: str, residual: float, tol: float, **params) -> CheckReport:
    residual = float(residual)
    return CheckReport(name, residual, float(tol), 0.0, bool(residual <= tol), params)
