"""Damped Newton iteration on the reduced gluing system."""
from __future__ import annotations

import numpy as np

from ..errors import DegenerateShape, NonConvergence, SingularJacobian
from .gluing import REGULAR, GluingSystem, ShapeVector

TOLERANCE = 1e-13
MAX_ITERATIONS = 100
MAX_HALVINGS = 40
MIN_IMAG = 1e-12
CONDITION_LIMIT = 1e14


def _values(rows, z):
    return np.array([r.value(z) for r in rows], dtype=complex)


def _jacobian(rows, z):
    return np.array([r.gradient(z) for r in rows], dtype=complex)


def _admissible(z) -> bool:
    return all(x.imag > MIN_IMAG and abs(x) > MIN_IMAG and abs(1 - x) > MIN_IMAG for x in z)


def newton_solve(
    sys: GluingSystem,
    initial: ShapeVector | None = None,
    tol: float = TOLERANCE,
    max_iterations: int = MAX_ITERATIONS,
) -> ShapeVector:
    """Solve the square reduced system from ``initial`` (default: all regular).

    The principal branches of log z and log(1 - z) are analytic on the
    upper half plane, so keeping Im z > 0 keeps every branch fixed; a step
    that would leave the upper half plane, or fail to reduce the residual,
    is halved.  The returned vector records the iteration count and the
    residual over every row, including those dropped from the square system.
    """
    rows = sys.reduced_rows()
    z = list(initial.z) if initial is not None else [REGULAR] * sys.t
    if len(z) != sys.t:
        raise ValueError(f"expected {sys.t} shapes, got {len(z)}")
    if not _admissible(z):
        raise DegenerateShape("initial shapes must lie in the upper half plane away from 0 and 1")
    F = _values(rows, z)
    res = float(np.max(np.abs(F)))
    it = 0
    while res >= tol:
        if it >= max_iterations:
            raise NonConvergence(f"residual {res:.3e} after {it} iterations")
        J = _jacobian(rows, z)
        try:
            if np.linalg.cond(J) > CONDITION_LIMIT:
                raise SingularJacobian(f"Jacobian condition number above {CONDITION_LIMIT:.0e}")
            step = np.linalg.solve(J, -F)
        except np.linalg.LinAlgError as exc:
            raise SingularJacobian(str(exc)) from exc
        lam = 1.0
        for _ in range(MAX_HALVINGS):
            cand = [zj + lam * dj for zj, dj in zip(z, step)]
            if _admissible(cand):
                Fc = _values(rows, cand)
                rc = float(np.max(np.abs(Fc)))
                if rc < res or rc < tol:
                    break
            lam *= 0.5
        else:
            raise DegenerateShape("no damped step keeps the shapes in the upper half plane")
        z, F, res = cand, Fc, rc
        it += 1
    return ShapeVector(tuple(z), iterations=it, residual=sys.residual(z))
