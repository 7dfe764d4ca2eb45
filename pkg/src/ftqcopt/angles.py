"""Rotation angles stored as exact rational multiples of pi, with a float fallback."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

SNAP_TOL = 1e-10
# Largest denominator recognised when snapping a float onto a rational multiple of pi.
MAX_SNAP_DENOMINATOR = 1024


class AngleClass(enum.Enum):
    IDENTITY = "identity"
    CLIFFORD = "clifford"
    T_LIKE = "t_like"
    ARBITRARY = "arbitrary"


def _wrap_fraction(f: Fraction) -> Fraction:
    # Reduce modulo 2 (i.e. 2*pi) into (-1, 1].
    f = f - 2 * math.floor((f + 1) / 2)
    if f == -1:
        f = Fraction(1)
    return f


def _wrap_radians(x: float) -> float:
    if -math.pi < x <= math.pi:
        return x
    x = math.remainder(x, 2 * math.pi)
    return math.pi if x == -math.pi else x


@dataclass(frozen=True)
class Angle:
    """An angle that is either ``pi_multiple * pi`` exactly or a float in radians.

    Exact angles are kept in lowest terms with the multiple wrapped into (-1, 1].
    Use :meth:`exact` and :meth:`from_radians` instead of the raw constructor.
    """

    pi_multiple: Fraction | None = None
    radians_: float | None = None

    def __post_init__(self):
        if (self.pi_multiple is None) == (self.radians_ is None):
            raise ValueError("Angle needs exactly one of pi_multiple or radians_")
        if self.pi_multiple is not None:
            object.__setattr__(self, "pi_multiple", _wrap_fraction(Fraction(self.pi_multiple)))
        else:
            object.__setattr__(self, "radians_", _wrap_radians(float(self.radians_)))

    @classmethod
    def exact(cls, numerator: int, denominator: int = 1) -> Angle:
        if denominator == 0:
            raise ZeroDivisionError("angle denominator is zero")
        return cls(pi_multiple=Fraction(numerator, denominator))

    @classmethod
    def zero(cls) -> Angle:
        return cls(pi_multiple=Fraction(0))

    @classmethod
    def from_radians(cls, x: float, snap: bool = True) -> Angle:
        """Build from radians; with ``snap`` a value within SNAP_TOL of a
        rational multiple of pi becomes exact."""
        if not math.isfinite(x):
            raise ValueError(f"non-finite angle {x!r}")
        if snap:
            f = snap_to_fraction(x)
            if f is not None:
                return cls(pi_multiple=f)
        return cls(radians_=x)

    @property
    def is_exact(self) -> bool:
        return self.pi_multiple is not None

    @property
    def numerator(self) -> int | None:
        return None if self.pi_multiple is None else self.pi_multiple.numerator

    @property
    def denominator(self) -> int | None:
        return None if self.pi_multiple is None else self.pi_multiple.denominator

    @property
    def radians(self) -> float:
        if self.pi_multiple is not None:
            return float(self.pi_multiple) * math.pi
        return self.radians_

    def __neg__(self) -> Angle:
        if self.pi_multiple is not None:
            return Angle(pi_multiple=-self.pi_multiple)
        return Angle(radians_=-self.radians_)

    def __add__(self, other: Angle) -> Angle:
        return add_angles(self, other)

    def __sub__(self, other: Angle) -> Angle:
        return add_angles(self, -other)

    def scaled(self, factor: Fraction | int) -> Angle:
        if self.pi_multiple is not None:
            return Angle(pi_multiple=self.pi_multiple * factor)
        return Angle(radians_=self.radians_ * float(factor))

    def __str__(self) -> str:
        if self.pi_multiple is None:
            return repr(self.radians_)
        n, d = self.pi_multiple.numerator, self.pi_multiple.denominator
        if n == 0:
            return "0"
        head = "pi" if abs(n) == 1 else f"{abs(n)}*pi"
        sign = "-" if n < 0 else ""
        return f"{sign}{head}" if d == 1 else f"{sign}{head}/{d}"


def snap_to_fraction(x: float, tol: float = SNAP_TOL) -> Fraction | None:
    """Return f with |f*pi - x| <= tol and small denominator, or None."""
    f = Fraction(x / math.pi).limit_denominator(MAX_SNAP_DENOMINATOR)
    if abs(float(f) * math.pi - x) <= tol:
        return f
    return None


def add_angles(a: Angle, b: Angle) -> Angle:
    if a.pi_multiple is not None and b.pi_multiple is not None:
        return Angle(pi_multiple=a.pi_multiple + b.pi_multiple)
    return Angle(radians_=a.radians + b.radians)


def classify_angle(a: Angle) -> AngleClass:
    if a.pi_multiple is not None:
        quarters = a.pi_multiple * 4
        if quarters.denominator != 1:
            return AngleClass.ARBITRARY
        k = quarters.numerator % 8
    else:
        q = a.radians_ / (math.pi / 4)
        k = round(q)
        if abs(a.radians_ - k * math.pi / 4) > SNAP_TOL:
            return AngleClass.ARBITRARY
        k %= 8
    if k == 0:
        return AngleClass.IDENTITY
    if k % 2 == 0:
        return AngleClass.CLIFFORD
    return AngleClass.T_LIKE
