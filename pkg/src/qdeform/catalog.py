"""Reference parameter points used by the verification suites and the CLI ``verify`` command.

Every point has bound states, keeps its shallowest level at least 1e-3 below the
continuum threshold, and (for half-line kinds) keeps the centrifugal index at the
wall at 3/2 or more so that the grid oracle converges at its nominal O(h^2) rate.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .potentials import Kind, PotentialSpec


@dataclass(frozen=True)
class CatalogPoint:
    kind: Kind
    params: dict = field(hash=False)
    q: float = 1.0
    span: float | None = None  # oracle half-width (full line) or length (half line)
    n_points: int = 20000  # oracle grid points for the raw-grid tolerance

    @property
    def spec(self) -> PotentialSpec:
        return PotentialSpec(self.kind, dict(self.params), q=self.q)

    @property
    def label(self) -> str:
        p = ",".join(f"{k}={v:g}" for k, v in self.params.items())
        return f"{self.kind.value}[{p};q={self.q:g}]"


CATALOG: tuple[CatalogPoint, ...] = (
    CatalogPoint(Kind.V1, {"nu": 2.5}),
    CatalogPoint(Kind.V1, {"nu": 2.5}, q=4.0),
    CatalogPoint(Kind.V1, {"nu": 4.5}, q=0.5, n_points=40000),
    CatalogPoint(Kind.V2, {"eta": 1.5, "nu": 7.5}),
    CatalogPoint(Kind.V2, {"eta": 2.5, "nu": 9.5}, q=2.0),
    CatalogPoint(Kind.V2, {"eta": 1.5, "nu": 6.0}, q=0.5, n_points=30000),
    CatalogPoint(Kind.V3, {"alpha": 40.0, "lambda": 1.5}, span=20.0, n_points=120000),
    CatalogPoint(Kind.V3, {"alpha": 40.0, "lambda": 1.5}, q=0.5, span=20.0, n_points=60000),
    CatalogPoint(Kind.V3, {"alpha": 60.0, "lambda": 2.5}, q=2.0, span=30.0, n_points=150000),
    CatalogPoint(Kind.V4, {"beta": 1.0, "lambda": 3.5}),
    CatalogPoint(Kind.V4, {"beta": 3.0, "lambda": 4.5}, q=2.0),
    CatalogPoint(Kind.V4, {"beta": -2.0, "lambda": 5.5}, q=0.5, n_points=40000),
    CatalogPoint(Kind.V5, {"V0": 0.0, "V1": 16.0, "V2": -14.0}),
    CatalogPoint(Kind.V5, {"V0": 0.0, "V1": 25.0, "V2": -20.0}),
    CatalogPoint(Kind.V5, {"V0": 1.0, "V1": 20.0, "V2": -15.0}, q=2.0),
    CatalogPoint(Kind.V6, {"V0": 0.0, "V1": 2.0, "V2": 8.0}),
    CatalogPoint(Kind.V6, {"V0": 0.0, "V1": 3.0, "V2": 10.0}, q=2.0),
    CatalogPoint(Kind.V6, {"V0": -1.0, "V1": 1.5, "V2": 5.0}, q=0.5),
    CatalogPoint(Kind.V7, {"A": 10.0, "B": -7.0}, span=40.0),
    CatalogPoint(Kind.V7, {"A": 30.0, "B": -20.0}, span=40.0),
    CatalogPoint(Kind.V7, {"A": 20.0, "B": -14.0}, q=2.0, span=40.0),
    CatalogPoint(Kind.V8, {"f": 12.0, "h1": 3.0}),
    CatalogPoint(Kind.V8, {"f": 30.0, "h1": -4.0}, n_points=60000),
    CatalogPoint(Kind.V8, {"f": 20.0, "h1": 1.5}, n_points=40000),
    CatalogPoint(Kind.V8, {"f": 12.0, "h1": 0.0}, q=2.0),
)


def catalog(kind: Kind | str | None = None) -> list[CatalogPoint]:
    """All catalog points, or those of one kind."""
    if kind is None:
        return list(CATALOG)
    kind = Kind(kind)
    return [p for p in CATALOG if p.kind is kind]


__all__ = ["CatalogPoint", "CATALOG", "catalog"]
