from dataclasses import dataclass


@dataclass(frozen=True)
class ToleranceConfig:
    """Centralized numerical tolerances.

    tol_unit bounds the deviation of direction vectors from unit length,
    tol_geom is the incidence/coplanarity threshold and tol_opt is the
    optimality tolerance used by the solvers.
    """

    tol_unit: float = 1e-12
    tol_geom: float = 1e-9
    tol_opt: float = 1e-8

    def __post_init__(self):
        for name in ("tol_unit", "tol_geom", "tol_opt"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")


DEFAULT_TOL = ToleranceConfig()
