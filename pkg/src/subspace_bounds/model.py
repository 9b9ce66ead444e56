"""Parameter points, bound records, table cells and view arithmetic."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .qcalc import PRIME_POWERS, InvalidParameter, gauss_binom

LOWER = "lower"
UPPER = "upper"
EXACT = "exact"
DIRECTIONS = (LOWER, UPPER, EXACT)

MAX_N = 19


class UndefinedView(ValueError):
    pass


@dataclass(frozen=True, order=True)
class CdcParams:
    q: int
    n: int
    d: int
    k: int

    def validate(self) -> "CdcParams":
        if self.q not in PRIME_POWERS:
            raise InvalidParameter(f"q={self.q} is not a supported prime power")
        if not 1 <= self.n <= MAX_N:
            raise InvalidParameter(f"n={self.n} outside 1..{MAX_N}")
        if not 1 <= self.d <= 2 * self.n:
            raise InvalidParameter(f"d={self.d} outside 1..{2 * self.n}")
        if not 0 <= self.k <= self.n:
            raise InvalidParameter(f"k={self.k} outside 0..{self.n}")
        return self


@dataclass(frozen=True, order=True)
class MdcParams:
    q: int
    n: int
    d: int

    def validate(self) -> "MdcParams":
        if self.q not in PRIME_POWERS:
            raise InvalidParameter(f"q={self.q} is not a supported prime power")
        if not 1 <= self.n <= MAX_N:
            raise InvalidParameter(f"n={self.n} outside 1..{MAX_N}")
        if not 1 <= self.d <= self.n:
            raise InvalidParameter(f"d={self.d} outside 1..{self.n}")
        return self


@dataclass(frozen=True)
class BoundRecord:
    constraint: str
    parameter: str
    value: int
    direction: str
    source: str = "derived"

    def __post_init__(self):
        if self.direction not in DIRECTIONS:
            raise ValueError(f"bad direction {self.direction}")
        if self.value < 0:
            raise ValueError(f"negative bound value for {self.constraint}")

    def is_lower(self) -> bool:
        return self.direction in (LOWER, EXACT)

    def is_upper(self) -> bool:
        return self.direction in (UPPER, EXACT)


@dataclass
class Cell:
    best_lower: int
    best_upper: int
    records: list = field(default_factory=list)
    classified: bool = False
    iso_types: Optional[str] = None
    lifted_mrd_bound: Optional[int] = None
    comments: str = ""

    @property
    def exact(self) -> bool:
        return self.best_lower == self.best_upper


@dataclass(frozen=True)
class Normalized:
    params: CdcParams
    trivial_value: Optional[int] = None


def normalize_cdc(p: CdcParams) -> Normalized:
    """Map a point to its canonical representative and flag trivial cases."""
    q, n, d, k = p.q, p.n, p.d, p.k
    k = min(k, n - k)
    if d % 2:
        d += 1
    canon = CdcParams(q, n, d, k)
    if k <= 0:
        return Normalized(canon, 1)
    if d > 2 * k:
        return Normalized(canon, 1)
    if d <= 2:
        return Normalized(canon, gauss_binom(n, k, q))
    return Normalized(canon, None)


def relative_gap(cell: Cell) -> Fraction:
    if cell.best_lower < 1:
        raise UndefinedView("relative gap needs a positive lower bound")
    return Fraction(cell.best_upper - cell.best_lower, cell.best_lower)


def ratio_of_bounds(cell: Cell) -> Fraction:
    if cell.best_lower < 1:
        raise UndefinedView("ratio of bounds needs a positive lower bound")
    return Fraction(cell.best_lower, cell.best_upper)


def density(cell: Cell, anticode: int) -> Fraction:
    if anticode < 1:
        raise UndefinedView("anticode value must be positive")
    return Fraction(cell.best_upper, anticode)


def realized_density(cell: Cell, anticode: int) -> Fraction:
    if anticode < 1:
        raise UndefinedView("anticode value must be positive")
    return Fraction(cell.best_lower, anticode)
