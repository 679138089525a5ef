"""Static catalog of Kuznetsov-component lattice data per Fano threefold.

One immutable entry per deformation type covered: index 2 of every degree
1..5, and index 1 of the even genera with degree 10..22.  Each entry
freezes a basis of the rank-2 lattice, the Euler pairing and Serre
operator in that basis, the global-dimension bound of the stability
condition, and the base set of classes whose moduli spaces are known
non-empty; these feed the non-emptiness certifier.  Components equivalent
to the derived category of a curve carry the curve genus instead of a
canonical-family letter; the two Kronecker-quiver components are recorded
but flagged non-certifiable.

The data ships as a versioned JSON file next to the code so it can be
inspected (and diffed) without running Python.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .errors import Uncovered
from .euler_forms import EulerForm, SerreIsometry

__all__ = ["FanoKuEntry", "lookup", "entries", "catalog_version", "curve_pairing"]


@dataclass(frozen=True)
class FanoKuEntry:
    index: int
    degree: int
    name: str
    basis: str
    euler_matrix: EulerForm
    serre: SerreIsometry
    serre_relation: str
    gldim_bound: Fraction
    gldim_strict: bool
    family: str | None
    n_chi: int | None
    base_chi_min: int | None
    base_description: str
    serre_orbit_base_chi: tuple[int, ...]
    curve_genus: int | None
    certifiable: bool
    reconstructed_serre: bool
    notes: tuple[str, ...]

    @property
    def label(self) -> tuple[int, int]:
        return (self.index, self.degree)

    def base_hit(self, chi_self: int, unit_norm: bool) -> str | None:
        """Whether a class with the given self-pairing (or unit norm in the
        catalog basis) lies in the base set; returns the reason or None."""
        if self.base_chi_min is not None and chi_self >= self.base_chi_min:
            if chi_self in self.serre_orbit_base_chi:
                return "serre-orbit-of-base"
            return "threshold-hit"
        if unit_norm:
            return "unit-norm"
        return None


def _parse_entry(raw: dict) -> FanoKuEntry:
    return FanoKuEntry(
        index=raw["index"],
        degree=raw["degree"],
        name=raw["name"],
        basis=raw["basis"],
        euler_matrix=EulerForm.from_matrix(tuple(map(tuple, raw["euler_matrix"]))),
        serre=SerreIsometry.from_matrix(tuple(map(tuple, raw["serre"]))),
        serre_relation=raw["serre_relation"],
        gldim_bound=Fraction(raw["gldim_bound"]),
        gldim_strict=raw["gldim_strict"],
        family=raw["family"],
        n_chi=raw["n_chi"],
        base_chi_min=raw["base_chi_min"],
        base_description=raw["base_description"],
        serre_orbit_base_chi=tuple(raw["serre_orbit_base_chi"]),
        curve_genus=raw["curve_genus"],
        certifiable=raw["certifiable"],
        reconstructed_serre=raw["reconstructed_serre"],
        notes=tuple(raw["notes"]),
    )


@lru_cache(maxsize=1)
def _load() -> tuple[int, tuple[FanoKuEntry, ...]]:
    raw = json.loads(resources.files("kunum.data").joinpath("catalog.json").read_text())
    return raw["version"], tuple(_parse_entry(e) for e in raw["entries"])


def catalog_version() -> int:
    return _load()[0]


def entries() -> tuple[FanoKuEntry, ...]:
    return _load()[1]


def lookup(index: int, degree: int) -> FanoKuEntry:
    for entry in entries():
        if entry.index == index and entry.degree == degree:
            return entry
    if index == 1 and degree <= 8:
        raise Uncovered(
            f"index 1, degree {degree}: the Kuznetsov-component convention is "
            "floating in this range and no lattice data is recorded"
        )
    raise Uncovered(f"no catalog entry for index {index}, degree {degree}")


def curve_pairing(g: int, v1: tuple[int, int], v2: tuple[int, int]) -> int:
    """Euler pairing on a genus-g curve in (rank, degree) coordinates:
    chi(v1, v2) = (r1*d2 - r2*d1) - (g-1)*r1*r2 by Riemann-Roch."""
    r1, d1 = v1
    r2, d2 = v2
    return (r1 * d2 - r2 * d1) - (g - 1) * r1 * r2
