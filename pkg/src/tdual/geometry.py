"""Moment-map geometry of projective space and its dual torus fibration.

Projective space carries the torus-invariant map

    phi(z_0 : ... : z_n) = (|z_1|^2, ..., |z_n|^2) / sum_i |z_i|^2

onto the closed simplex {x_i >= 0, sum x_i <= 1}.  Over an interior point x
the fiber is an n-torus of radii r_j = sqrt(x_j / (1 - sum x_i)); the dual
fibration replaces each fiber torus by its dual and is coordinatized by pairs
(r, gamma) with gamma in (R/Z)^n.  The complex coordinates of the dual total
space,

    z_j = exp(-2 pi r_j^2 / (1 + sum r_i^2) + 2 pi i gamma_j),

take values in the punctured unit disc, and carry the potential

    W(z) = z_1 + ... + z_n + e^{-2 pi} / (z_1 ... z_n),

whose critical points all lie on the equal-coordinate locus.  In the
logarithmic coordinates y_j = log r_j with angles gamma_j, the reference
two-form is (2 pi)^n sum_i dy_i ^ dgamma_i.

Everything here is plain floating-point numerics; exact-arithmetic work lives
in :mod:`tdual.oracle`.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

# Relative tolerance for projective-point comparison after normalization.
POINT_RTOL = 1e-12


@dataclass(frozen=True)
class ProjectivePoint:
    """A point of complex projective n-space in homogeneous coordinates.

    `homogeneous` holds n+1 complex entries, not all zero.  Two points are
    compared after normalizing by the first nonzero coordinate.

    >>> p = ProjectivePoint((2 + 0j, 2 + 0j))
    >>> p.normalized().homogeneous
    ((1+0j), (1+0j))
    """

    homogeneous: tuple[complex, ...]

    def __post_init__(self) -> None:
        coords = tuple(complex(c) for c in self.homogeneous)
        if len(coords) < 2:
            raise ValueError("need at least two homogeneous coordinates")
        if all(c == 0 for c in coords):
            raise ValueError("homogeneous coordinates must not all vanish")
        object.__setattr__(self, "homogeneous", coords)

    @property
    def n(self) -> int:
        return len(self.homogeneous) - 1

    def normalized(self) -> "ProjectivePoint":
        """Scale so the first nonzero coordinate becomes 1."""
        pivot = next(c for c in self.homogeneous if c != 0)
        return ProjectivePoint(tuple(c / pivot for c in self.homogeneous))

    def same_point(self, other: "ProjectivePoint", rtol: float = POINT_RTOL) -> bool:
        """Projective equality up to a relative tolerance."""
        if self.n != other.n:
            return False
        a = np.array(self.normalized().homogeneous)
        b = np.array(other.normalized().homogeneous)
        scale = max(np.abs(a).max(), np.abs(b).max(), 1.0)
        return bool(np.abs(a - b).max() <= rtol * scale)

    def to_dict(self) -> dict:
        return {"homogeneous": [[c.real, c.imag] for c in self.homogeneous]}


@dataclass(frozen=True)
class MomentImage:
    """A point x of the closed moment simplex {x_i >= 0, sum x_i <= 1}."""

    x: tuple[float, ...]

    def __post_init__(self) -> None:
        vals = tuple(float(v) for v in self.x)
        if any(v < 0 for v in vals):
            raise ValueError(f"moment coordinates must be nonnegative: {vals}")
        if sum(vals) > 1 + 1e-15:
            raise ValueError(f"moment coordinates must sum to at most 1: {vals}")
        object.__setattr__(self, "x", vals)

    @property
    def n(self) -> int:
        return len(self.x)

    def is_interior(self) -> bool:
        return all(v > 0 for v in self.x) and sum(self.x) < 1

    def to_dict(self) -> dict:
        return {"x": list(self.x)}


@dataclass(frozen=True)
class TorusFiber:
    """Radii r of a fiber torus over an interior moment point; all r_j > 0."""

    r: tuple[float, ...]

    def __post_init__(self) -> None:
        vals = tuple(float(v) for v in self.r)
        if any(v <= 0 for v in vals):
            raise ValueError(f"fiber radii must be positive: {vals}")
        object.__setattr__(self, "r", vals)

    @property
    def n(self) -> int:
        return len(self.r)

    def to_dict(self) -> dict:
        return {"r": list(self.r)}


@dataclass(frozen=True)
class MirrorPoint:
    """A point of the dual fibration: radii r with angles gamma in [0, 1)^n.

    The logarithmic coordinate y = log r and the complex coordinate z are
    derived on access.
    """

    r: tuple[float, ...]
    gamma: tuple[float, ...]

    def __post_init__(self) -> None:
        rv = tuple(float(v) for v in self.r)
        gv = tuple(float(v) % 1.0 for v in self.gamma)
        if len(rv) != len(gv):
            raise ValueError("r and gamma must have the same length")
        if any(v <= 0 for v in rv):
            raise ValueError(f"fiber radii must be positive: {rv}")
        object.__setattr__(self, "r", rv)
        object.__setattr__(self, "gamma", gv)

    @property
    def n(self) -> int:
        return len(self.r)

    @property
    def y(self) -> tuple[float, ...]:
        """Logarithmic radii log r_j."""
        return tuple(math.log(v) for v in self.r)

    @property
    def z(self) -> tuple[complex, ...]:
        return mirror_coordinates(self)

    def to_dict(self) -> dict:
        return {
            "r": list(self.r),
            "gamma": list(self.gamma),
            "y": list(self.y),
            "z": [[c.real, c.imag] for c in self.z],
        }


@dataclass(frozen=True)
class TangentVector:
    """Tangent vector at a mirror point, in (y, gamma) components."""

    y: tuple[float, ...]
    gamma: tuple[float, ...]

    def __post_init__(self) -> None:
        yv = tuple(float(v) for v in self.y)
        gv = tuple(float(v) for v in self.gamma)
        if len(yv) != len(gv):
            raise ValueError("y and gamma components must have the same length")
        object.__setattr__(self, "y", yv)
        object.__setattr__(self, "gamma", gv)

    @property
    def n(self) -> int:
        return len(self.y)


def moment_map(p: ProjectivePoint) -> MomentImage:
    """Image of a projective point under the torus moment map.

    Returns (|z_1|^2, ..., |z_n|^2) / sum_{i=0}^{n} |z_i|^2.

    >>> moment_map(ProjectivePoint((1, 1))).x
    (0.5,)
    >>> moment_map(ProjectivePoint((1, 1, 1))).x
    (0.3333333333333333, 0.3333333333333333)
    """
    sq = [abs(c) ** 2 for c in p.homogeneous]
    total = sum(sq)
    return MomentImage(tuple(v / total for v in sq[1:]))


def fiber_radii_from_moment(x: MomentImage) -> TorusFiber:
    """Radii of the fiber torus over an interior moment point.

    Inverts the restriction of the moment map to a fiber with all |z_j| = r_j
    and z_0 = 1:  r_j = sqrt(x_j / (1 - sum_i x_i)).  Raises ValueError on the
    boundary of the simplex, where the fiber degenerates.

    >>> fiber_radii_from_moment(MomentImage((0.5,))).r
    (1.0,)
    """
    if not x.is_interior():
        raise ValueError(f"moment point must be interior to the simplex: {x.x}")
    rest = 1.0 - sum(x.x)
    return TorusFiber(tuple(math.sqrt(v / rest) for v in x.x))


def mirror_coordinates(m: MirrorPoint) -> tuple[complex, ...]:
    """Complex coordinates z_j = exp(-2 pi r_j^2/(1 + sum r_i^2) + 2 pi i gamma_j).

    Each |z_j| lies in (0, 1), and -log|z_j| / (2 pi) recovers the j-th moment
    coordinate of the underlying fiber.
    """
    s = sum(v * v for v in m.r)
    return tuple(
        cmath.exp(complex(-2 * math.pi * rj * rj / (1 + s), 2 * math.pi * gj))
        for rj, gj in zip(m.r, m.gamma)
    )


def superpotential(z: tuple[complex, ...] | np.ndarray) -> complex:
    """W(z) = z_1 + ... + z_n + e^{-2 pi} / (z_1 ... z_n).

    Raises ValueError if any coordinate vanishes.

    >>> abs(superpotential((1.0, 1.0)) - (2 + math.exp(-2 * math.pi))) < 1e-15
    True
    """
    zs = [complex(c) for c in z]
    if any(c == 0 for c in zs):
        raise ValueError("superpotential undefined where a coordinate vanishes")
    prod = 1.0 + 0j
    for c in zs:
        prod *= c
    return sum(zs) + math.exp(-2 * math.pi) / prod


def superpotential_gradient(z: tuple[complex, ...] | np.ndarray) -> tuple[complex, ...]:
    """Holomorphic gradient (dW/dz_1, ..., dW/dz_n); dW/dz_j = 1 - e^{-2 pi}/(z_j prod z)."""
    zs = [complex(c) for c in z]
    if any(c == 0 for c in zs):
        raise ValueError("superpotential undefined where a coordinate vanishes")
    prod = 1.0 + 0j
    for c in zs:
        prod *= c
    return tuple(1.0 - math.exp(-2 * math.pi) / (c * prod) for c in zs)


def superpotential_critical_points(
    n: int, residual_tol: float = 1e-10
) -> list[tuple[tuple[complex, ...], complex]]:
    """All critical points of W for given n, with their critical values.

    On the equal-coordinate locus z_j = z the critical equations collapse to
    z^{n+1} = e^{-2 pi}, giving the n+1 points z = zeta * e^{-2 pi/(n+1)} over
    the (n+1)-th roots of unity zeta, with value W = (n+1) z.  Each returned
    point is residual-checked against the analytic gradient.

    Returns a list of (point, value) pairs ordered by root index.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    radius = math.exp(-2 * math.pi / (n + 1))
    out = []
    for l in range(n + 1):
        zval = radius * cmath.exp(2j * math.pi * l / (n + 1))
        point = (zval,) * n
        grad = superpotential_gradient(point)
        residual = math.sqrt(sum(abs(g) ** 2 for g in grad))
        if residual >= residual_tol:
            raise ArithmeticError(
                f"critical point {point} fails residual check: {residual}"
            )
        out.append((point, (n + 1) * zval))
    return out


def symplectic_form_eval(base: MirrorPoint, u: TangentVector, v: TangentVector) -> float:
    """Evaluate (2 pi)^n sum_i (dy_i ^ dgamma_i) on a pair of tangent vectors.

    The form is constant in (y, gamma) coordinates, so `base` fixes only the
    dimension; it is retained in the signature because the vectors live in its
    tangent space.

    >>> p = MirrorPoint((1.0,), (0.0,))
    >>> symplectic_form_eval(p, TangentVector((1.0,), (0.0,)),
    ...                      TangentVector((0.0,), (1.0,)))
    6.283185307179586
    """
    n = base.n
    if u.n != n or v.n != n:
        raise ValueError("tangent vectors must match the base dimension")
    total = 0.0
    for uy, ug, vy, vg in zip(u.y, u.gamma, v.y, v.gamma):
        total += uy * vg - ug * vy
    return (2 * math.pi) ** n * total
