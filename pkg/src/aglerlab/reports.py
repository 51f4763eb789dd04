"""Verified-inequality records shared by the transfer, bounds, and harness layers."""

from __future__ import annotations

from dataclasses import dataclass, field

__all__ = ["BoundReport"]


@dataclass(frozen=True)
class BoundReport:
    """One verified inequality instance: LHS <= RHS with provenance tag.

    ``slack = rhs - lhs`` is the quantity campaigns assert on;
    ``ratio = lhs / rhs`` (0 when rhs is 0) measures sharpness.  Flags mark
    records that are reported but not asserted (near-boundary points,
    ill-conditioned resolvents, observational campaigns).
    """

    theorem_tag: str
    z: tuple[complex, ...]
    alpha: tuple[int, ...] | None
    lhs: float
    rhs: float
    flags: tuple[str, ...] = field(default=())

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    @property
    def ratio(self) -> float:
        return self.lhs / self.rhs if self.rhs != 0.0 else 0.0

    def __str__(self):
        a = "" if self.alpha is None else f" alpha={self.alpha}"
        return (
            f"{self.theorem_tag:<24}{a} lhs={self.lhs:.6e} rhs={self.rhs:.6e} "
            f"slack={self.slack:+.3e} ratio={self.ratio:.4f}"
        )
