"""Volume and cusp shapes of a certified structure."""
from __future__ import annotations

import math

import mpmath

from ..errors import IncompleteStructure
from .certify import CertifiedSolution, evaluate
from .gluing import GluingSystem, develop_cusp
from .interval import CInterval, Interval, _up

# slack added to the mpmath value of D, far above its error at 40 digits
DILOG_SLACK = 1e-25
V_REGULAR = 1.0149416064096536  # volume of the regular ideal tetrahedron


def bloch_wigner(z: complex) -> float:
    """D(z) = Im Li_2(z) + arg(1 - z) log|z|, the volume of the ideal tetrahedron z."""
    with mpmath.workdps(40):
        w = mpmath.mpc(z.real, z.imag)
        return float(mpmath.im(mpmath.polylog(2, w)) + mpmath.arg(1 - w) * mpmath.log(abs(w)))


def bloch_wigner_interval(box: CInterval) -> Interval:
    """Enclosure of D over a box.

    dD = log|z| d arg(1-z) - log|1-z| d arg z, and |d arg w| <= |dw| / |w|,
    so |grad D| <= |log|z|| / |1-z| + |log|1-z|| / |z| bounds the change
    from the centre.
    """
    c = box.mid
    d0 = bloch_wigner(c)
    lz = (box.abs_sq().log() * 0.5).mag()
    l1 = ((1 - box).abs_sq().log() * 0.5).mag()
    grad = _up(lz / (1 - box).abs().lo + l1 / box.abs().lo)
    dz = math.hypot(max(box.re.hi - c.real, c.real - box.re.lo), max(box.im.hi - c.imag, c.imag - box.im.lo))
    r = _up(_up(grad * _up(dz)) + DILOG_SLACK)
    return Interval.around(d0, r)


def volume(sol: CertifiedSolution) -> Interval:
    """Certified hyperbolic volume: the interval sum of D over the shapes."""
    total = Interval.point(0.0)
    for box in sol.boxes():
        total = total + bloch_wigner_interval(box)
    return total


def _reduce_modulus(tau: CInterval) -> CInterval:
    """Move tau into |Re tau| <= 1/2, |tau| >= 1 by steps chosen on the centre.

    On the boundary the representative with Re tau in [-1/2, 1/2) is used,
    and Re tau <= 0 on the unit arc.  "On the boundary" means within a few
    interval radii, so equivalent moduli get overlapping intervals.
    """
    if tau.mid.imag < 0:
        tau = -tau
    for _ in range(200):
        shift = round(tau.mid.real)
        if shift:
            tau = tau - shift
        m = tau.mid
        if abs(m) < 1 - 1e-15:
            tau = -tau.inv()
            continue
        break
    tol = max(1e-12, 4 * max(tau.re.rad, tau.im.rad))
    if tau.mid.real > 0.5 - tol:
        tau = tau - 1
    if abs(tau.mid) < 1 + tol and tau.mid.real > tol:
        tau = -tau.inv()
    return tau


def _check_complete(sol: CertifiedSolution):
    sys = sol.system
    cusp_rows = [r for pair in sys.cusp_rows for r in pair]
    reduced = sys.reduced_rows()
    if not all(r in reduced for r in (pair[0] for pair in sys.cusp_rows)):
        raise IncompleteStructure("completeness rows were not part of the solved system")
    for f in evaluate(sys, sol.boxes(), cusp_rows):
        if not (f.re.contains(0.0) and f.im.contains(0.0)):
            raise IncompleteStructure("a cusp holonomy is not certified to vanish")


def cusp_shapes(sol: CertifiedSolution, sys: GluingSystem | None = None) -> list:
    """Per cusp, the modulus longitude / meridian translation, reduced."""
    if sys is not None and sys is not sol.system:
        raise ValueError("solution was certified for a different system")
    _check_complete(sol)
    boxes = sol.boxes()
    out = []
    for c in range(len(sol.system.cusps)):
        m, l = develop_cusp(sol.system, c, boxes)["translations"]
        out.append(_reduce_modulus(l / m))
    return out


def cusp_areas(sys: GluingSystem, z) -> list:
    """Area of each developed cusp torus with the root triangle's first side of length 1."""
    out = []
    for c in range(len(sys.cusps)):
        m, l = develop_cusp(sys, c, z)["translations"]
        out.append(abs((m.conjugate() * l).imag))
    return out
