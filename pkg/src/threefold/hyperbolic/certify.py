"""Newton-Kantorovich-Neuberger certification of approximate shapes.

Write the square reduced system as a real map F on R^{2t} with coordinates
(Re z, Im z) and work in the max norm, whose balls are boxes.  The theorem
used: if DF is non-singular on the box B of radius eps around x0 and
||DF(x)^{-1} F(x0)|| < eps for all x in B, there is exactly one zero of F in
B.  Along the continuous Newton path x0 moves by at most that supremum, so
the zero lies within the same bound of x0, which is usually far smaller
than eps.

The supremum is bounded through an approximate inverse R of DF(x0):

    ||I - R DF(x)|| <= ||I - R DF(x0)|| + ||R|| L eps =: delta,
    ||DF(x)^{-1} F(x0)|| <= ||R F(x0)|| / (1 - delta)        (delta < 1),

where L is a Lipschitz constant for DF on a box of radius rho >= eps,
obtained from the second derivatives -a/z^2 - b/(1-z)^2 of the equations.
Every quantity on the right is evaluated in outward-rounded interval
arithmetic.  Since every bound only grows with the radius, a certificate
found with Lipschitz radius rho certifies every eps' between eps and rho
as well; rho is recorded as ``valid_up_to``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import CannotCertify, SingularJacobian
from .gluing import GluingSystem, ShapeVector
from .interval import CInterval, Interval, _up


@dataclass
class CertifiedSolution:
    shapes: ShapeVector
    epsilon: float
    residual_bound: float  # ||F(x0)|| (max norm, upper bound)
    df_inverse_bound: float  # ||DF(x0)^{-1}|| (upper bound)
    lipschitz: float  # Lipschitz constant of DF on the box of radius valid_up_to
    contraction: float  # delta above
    newton_bound: float  # upper bound of sup_x ||DF(x)^{-1} F(x0)||
    valid_up_to: float
    system: GluingSystem
    certified: bool = True

    @property
    def inclusion_radius(self) -> float:
        """The exact solution lies within this max-norm distance of x0."""
        return self.newton_bound

    def boxes(self, radius: float | None = None) -> list:
        """Complex boxes around each shape; by default the inclusion radius."""
        r = self.inclusion_radius if radius is None else radius
        return [CInterval.around(z, r) for z in self.shapes.z]

    def as_dict(self) -> dict:
        return {
            "certified": self.certified,
            "epsilon": self.epsilon,
            "residual_bound": self.residual_bound,
            "df_inverse_bound": self.df_inverse_bound,
            "lipschitz": self.lipschitz,
            "contraction": self.contraction,
            "newton_bound": self.newton_bound,
            "valid_up_to": self.valid_up_to,
            "shapes": [b.as_strings() for b in self.boxes()],
        }


def _complex_log_terms(row, boxes) -> CInterval:
    """Interval enclosure of sum a log z + b log(1-z) - i pi c."""
    s = CInterval(Interval.point(0.0), -Interval.pi() * row.c)
    for a, b, z in zip(row.a, row.b, boxes):
        if a:
            s = s + z.log() * Interval.point(a)
        if b:
            s = s + (1 - z).log() * Interval.point(b)
    return s


def evaluate(sys: GluingSystem, boxes, rows=None) -> list:
    """Interval values of the given rows (default: every row) over shape boxes."""
    rows = sys.all_rows() if rows is None else rows
    return [_complex_log_terms(r, boxes) for r in rows]


def _real_jacobian_intervals(rows, boxes) -> list:
    """Interval DF in real coordinates."""
    t = len(boxes)
    J = [[None] * (2 * t) for _ in range(2 * t)]
    for k, row in enumerate(rows):
        for j, z in enumerate(boxes):
            g = CInterval.point(0)
            if row.a[j]:
                g = g + z.inv() * Interval.point(row.a[j])
            if row.b[j]:
                g = g - (1 - z).inv() * Interval.point(row.b[j])
            J[k][j], J[k][t + j] = g.re, -g.im
            J[t + k][j], J[t + k][t + j] = g.im, g.re
    return J


def _norm_inf_upper(M) -> float:
    best = 0.0
    for row in M:
        s = 0.0
        for x in row:
            s = _up(s + (x.mag() if isinstance(x, Interval) else abs(x)))
        best = max(best, s)
    return best


def _matmul_point_interval(R, J) -> list:
    n = len(R)
    out = []
    for i in range(n):
        row = []
        for j in range(len(J[0])):
            s = Interval.point(0.0)
            for k in range(n):
                if R[i][k]:
                    s = s + J[k][j] * float(R[i][k])
            row.append(s)
        out.append(row)
    return out


def certify(
    sys: GluingSystem,
    x0: ShapeVector,
    eps: float,
    lipschitz_radius: float | None = None,
) -> CertifiedSolution:
    """Prove a unique exact solution of the reduced system within ``eps`` of x0.

    Raises CannotCertify when the bound does not close at this radius, and
    SingularJacobian when DF(x0) cannot be inverted numerically.
    """
    if not (eps > 0) or math.isinf(eps):
        raise ValueError("eps must be a positive finite radius")
    rho = max(eps, lipschitz_radius or eps)
    rows = sys.reduced_rows()
    t = sys.t
    z0 = list(x0.z)
    big = [CInterval.around(z, rho) for z in z0]
    for b in big:
        if b.im.lo <= 0:
            raise CannotCertify(f"box of radius {rho:g} leaves the upper half plane")
    pts = [CInterval.point(z) for z in z0]

    # approximate inverse of DF(x0)
    Jf = np.array([[x.mid for x in row] for row in _real_jacobian_intervals(rows, pts)])
    try:
        if np.linalg.cond(Jf) > 1e14:
            raise SingularJacobian("Jacobian at x0 is numerically singular")
        R = np.linalg.inv(Jf)
    except np.linalg.LinAlgError as exc:
        raise SingularJacobian(str(exc)) from exc
    R = R.tolist()

    J0 = _real_jacobian_intervals(rows, pts)
    RJ0 = _matmul_point_interval(R, J0)
    E0 = [[(Interval.point(1.0) if i == j else Interval.point(0.0)) - RJ0[i][j] for j in range(2 * t)] for i in range(2 * t)]
    delta0 = _norm_inf_upper(E0)
    r_norm = _norm_inf_upper(R)
    if delta0 >= 1:
        raise CannotCertify("approximate inverse is too inaccurate")
    df_inv = _up(r_norm / (1 - delta0))

    F = evaluate(sys, pts, rows)
    Fr = [f.re for f in F] + [f.im for f in F]
    residual = max(x.mag() for x in Fr)
    RF = [sum((Fr[k] * float(R[i][k]) for k in range(2 * t)), Interval.point(0.0)) for i in range(2 * t)]
    rf_norm = max(x.mag() for x in RF)

    # Lipschitz constant of DF on the big box from |g'| <= |a|/|z|^2 + |b|/|1-z|^2
    lip = 0.0
    for row in rows:
        s = 0.0
        for a, b, z in zip(row.a, row.b, big):
            if a:
                s = _up(s + abs(a) / z.abs_sq().lo)
            if b:
                s = _up(s + abs(b) / (1 - z).abs_sq().lo)
        lip = max(lip, s)
    lip = _up(2 * lip)

    delta = _up(delta0 + _up(_up(r_norm * lip) * rho))
    if delta >= 1:
        raise CannotCertify(f"DF is not controlled on the box (delta = {delta:.3e})")
    bound = _up(rf_norm / (1 - delta))
    if not bound < eps:
        raise CannotCertify(f"Newton bound {bound:.3e} is not below eps = {eps:g}")
    return CertifiedSolution(
        shapes=x0,
        epsilon=eps,
        residual_bound=residual,
        df_inverse_bound=df_inv,
        lipschitz=lip,
        contraction=delta,
        newton_bound=bound,
        valid_up_to=rho,
        system=sys,
    )
