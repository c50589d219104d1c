"""Outward-rounded interval arithmetic over floats.

Every operation rounds its result outward with :func:`math.nextafter`.  The
four field operations and ``sqrt`` are correctly rounded in IEEE 754, so one
step outward suffices; for ``log``, ``exp`` and ``atan2`` the platform libm
is trusted to within one ulp and the result is widened by ``LIBM_ULPS``
steps.  No rounding-mode state is touched, so intervals are safe to use from
concurrent solves.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_CEILING, ROUND_FLOOR, Context, Decimal

LIBM_ULPS = 4
_INF = math.inf


def _down(x: float, k: int = 1) -> float:
    for _ in range(k):
        x = math.nextafter(x, -_INF)
    return x


def _up(x: float, k: int = 1) -> float:
    for _ in range(k):
        x = math.nextafter(x, _INF)
    return x


def decimal_string(x: float, upward: bool, digits: int = 17) -> str:
    """``x`` as a decimal string rounded toward +inf (``upward``) or -inf."""
    ctx = Context(prec=digits, rounding=ROUND_CEILING if upward else ROUND_FLOOR)
    return str(ctx.plus(Decimal(x)))


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not (self.lo <= self.hi):
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    # -- construction ---------------------------------------------------------
    @staticmethod
    def point(x) -> "Interval":
        """Smallest float interval containing the number ``x``."""
        if isinstance(x, Interval):
            return x
        if isinstance(x, int):
            f = float(x)
            if int(f) == x:
                return Interval(f, f)
            return Interval(_down(f), _up(f))
        f = float(x)
        return Interval(f, f)

    @staticmethod
    def around(x: float, r: float) -> "Interval":
        return Interval(_down(x - r), _up(x + r))

    @staticmethod
    def pi() -> "Interval":
        return Interval(_down(math.pi), _up(math.pi))

    # -- queries --------------------------------------------------------------
    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def width(self) -> float:
        return _up(self.hi - self.lo)

    @property
    def rad(self) -> float:
        return _up(0.5 * (self.hi - self.lo))

    def mag(self) -> float:
        """Upper bound of |x| over the interval."""
        return max(abs(self.lo), abs(self.hi))

    def mig(self) -> float:
        """Lower bound of |x| over the interval."""
        if self.lo <= 0 <= self.hi:
            return 0.0
        return min(abs(self.lo), abs(self.hi))

    def contains(self, x) -> bool:
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    def overlaps(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def hull(self, other: "Interval") -> "Interval":
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    def as_strings(self) -> list:
        return [decimal_string(self.lo, False), decimal_string(self.hi, True)]

    def __repr__(self):
        return f"[{self.lo!r}, {self.hi!r}]"

    # -- arithmetic -----------------------------------------------------------
    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __add__(self, other):
        o = Interval.point(other)
        return Interval(_down(self.lo + o.lo), _up(self.hi + o.hi))

    __radd__ = __add__

    def __sub__(self, other):
        o = Interval.point(other)
        return Interval(_down(self.lo - o.hi), _up(self.hi - o.lo))

    def __rsub__(self, other):
        return Interval.point(other) - self

    def __mul__(self, other):
        o = Interval.point(other)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(_down(min(ps)), _up(max(ps)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Interval.point(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("interval division by an interval containing 0")
        qs = (self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi)
        return Interval(_down(min(qs)), _up(max(qs)))

    def __rtruediv__(self, other):
        return Interval.point(other) / self

    def sqr(self) -> "Interval":
        lo, hi = self.mig(), self.mag()
        return Interval(_down(lo * lo) if lo else 0.0, _up(hi * hi))

    def sqrt(self) -> "Interval":
        if self.lo < 0:
            raise ValueError("sqrt of an interval reaching below 0")
        return Interval(max(0.0, _down(math.sqrt(self.lo))), _up(math.sqrt(self.hi)))

    def log(self) -> "Interval":
        if self.lo <= 0:
            raise ValueError("log of an interval reaching 0")
        return Interval(_down(math.log(self.lo), LIBM_ULPS), _up(math.log(self.hi), LIBM_ULPS))

    def exp(self) -> "Interval":
        return Interval(max(0.0, _down(math.exp(self.lo), LIBM_ULPS)), _up(math.exp(self.hi), LIBM_ULPS))

    def abs(self) -> "Interval":
        return Interval(self.mig(), self.mag())


def atan2_range(y: Interval, x: Interval) -> Interval:
    """Enclosure of arg(x + iy) over a box that avoids the branch cut (-inf, 0].

    On such a box arg is monotone along every edge, so its extremes sit at
    corners.
    """
    if not (y.lo > 0 or y.hi < 0 or x.lo > 0):
        raise ValueError("box meets the branch cut of arg")
    vals = [math.atan2(b, a) for a in (x.lo, x.hi) for b in (y.lo, y.hi)]
    return Interval(_down(min(vals), LIBM_ULPS), _up(max(vals), LIBM_ULPS))


@dataclass(frozen=True)
class CInterval:
    """A rectangle re x im in the complex plane."""

    re: Interval
    im: Interval

    @staticmethod
    def point(z) -> "CInterval":
        if isinstance(z, CInterval):
            return z
        z = complex(z)
        return CInterval(Interval.point(z.real), Interval.point(z.imag))

    @staticmethod
    def around(z: complex, r: float) -> "CInterval":
        """The box of half-width ``r`` in each real coordinate."""
        return CInterval(Interval.around(z.real, r), Interval.around(z.imag, r))

    @property
    def mid(self) -> complex:
        return complex(self.re.mid, self.im.mid)

    def contains(self, z) -> bool:
        if isinstance(z, CInterval):
            return self.re.contains(z.re) and self.im.contains(z.im)
        z = complex(z)
        return self.re.contains(z.real) and self.im.contains(z.imag)

    def overlaps(self, other: "CInterval") -> bool:
        return self.re.overlaps(other.re) and self.im.overlaps(other.im)

    def abs_sq(self) -> Interval:
        return self.re.sqr() + self.im.sqr()

    def abs(self) -> Interval:
        return self.abs_sq().sqrt()

    def conj(self) -> "CInterval":
        return CInterval(self.re, -self.im)

    def __neg__(self):
        return CInterval(-self.re, -self.im)

    def __add__(self, other):
        o = CInterval.point(other)
        return CInterval(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = CInterval.point(other)
        return CInterval(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return CInterval.point(other) - self

    def __mul__(self, other):
        if isinstance(other, Interval):
            return CInterval(self.re * other, self.im * other)
        o = CInterval.point(other)
        return CInterval(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def inv(self) -> "CInterval":
        d = self.abs_sq()
        return CInterval(self.re / d, -self.im / d)

    def __truediv__(self, other):
        return self * CInterval.point(other).inv()

    def __rtruediv__(self, other):
        return CInterval.point(other) * self.inv()

    def log(self) -> "CInterval":
        """Principal logarithm; the box must avoid (-inf, 0]."""
        return CInterval(self.abs_sq().log() * 0.5, atan2_range(self.im, self.re))

    def as_strings(self) -> dict:
        return {"re": self.re.as_strings(), "im": self.im.as_strings()}

    def __repr__(self):
        return f"({self.re!r} + i{self.im!r})"
