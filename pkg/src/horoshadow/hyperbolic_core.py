"""Hyperbolic geometry of the disk seen from a fixed base point.

The chart is fixed once and for all: the upper half-plane with base point i is
sent to the unit disk by the Cayley map z -> (z - i)/(z + i), so the base
point sits at the disk centre and geodesic rays from it are Euclidean radii.
All boundary bookkeeping happens in disk angles in [0, 2*pi); Lebesgue
measure is arc length normalised to total mass 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

from scipy.integrate import quad

TWO_PI = 2.0 * math.pi

# endpoint tolerance for interval comparisons, radians
ANGLE_TOL = 1e-12

# horoballs narrower than this are below the resolution of the chart
MIN_HOROBALL_SIZE = 1e-14


def wrap_angle(a: float) -> float:
    """Reduce an angle to [0, 2*pi)."""
    a = math.fmod(a, TWO_PI)
    if a < 0.0:
        a += TWO_PI
    if a >= TWO_PI:
        a = 0.0
    return a


def signed_gap(a: float, b: float) -> float:
    """Signed angular difference a - b wrapped to (-pi, pi]."""
    d = math.fmod(a - b, TWO_PI)
    if d <= -math.pi:
        d += TWO_PI
    elif d > math.pi:
        d -= TWO_PI
    return d


def _scaled_atan2(y: int, x: int) -> float:
    """atan2 of a pair of (possibly huge) integers, scaled jointly."""
    shift = max(abs(y).bit_length(), abs(x).bit_length()) - 53
    if shift > 0:
        sy, sx = -1 if y < 0 else 1, -1 if x < 0 else 1
        y = sy * (abs(y) >> shift)
        x = sx * (abs(x) >> shift)
    return math.atan2(float(y), float(x))


def cayley_boundary(t: float) -> float:
    """Disk angle of the boundary point with half-plane coordinate t.

    t may be +-inf; both map to the image of infinity, which is angle 0.
    The map is strictly increasing from 0 to 2*pi as t runs over the
    extended real line.
    """
    if math.isinf(t):
        return 0.0
    return wrap_angle(math.atan2(-2.0 * t, t * t - 1.0))


def cayley_boundary_inverse(angle: float) -> float:
    """Half-plane coordinate of a disk-boundary angle (inf at angle 0)."""
    a = wrap_angle(angle)
    if a == 0.0:
        return math.inf
    return -1.0 / math.tan(a / 2.0)


def rational_angle(p: int, q: int) -> float:
    """Disk angle of the boundary rational p/q (q = 0 encodes infinity)."""
    return wrap_angle(_scaled_atan2(-2 * p * q, p * p - q * q))


def halfplane_to_disk(z: complex) -> complex:
    return (z - 1j) / (z + 1j)


def disk_to_halfplane(w: complex) -> complex:
    return 1j * (1.0 + w) / (1.0 - w)


def hyperbolic_distance(z: complex, w: complex) -> float:
    """Distance between two upper half-plane points."""
    if z.imag <= 0.0 or w.imag <= 0.0:
        raise ValueError("points must lie in the open upper half-plane")
    return 2.0 * math.asinh(abs(z - w) / (2.0 * math.sqrt(z.imag * w.imag)))


@dataclass(frozen=True)
class BoundaryPoint:
    """A point of the boundary circle, with an optional exact rational tag."""

    angle: float
    exact: Optional[tuple[int, int]] = None

    @classmethod
    def from_rational(cls, p: int, q: int) -> "BoundaryPoint":
        if q < 0:
            p, q = -p, -q
        if q == 0:
            if p == 0:
                raise ValueError("0/0 is not a boundary point")
            p = 1
        g = math.gcd(p, q)
        if g > 1:
            p, q = p // g, q // g
        return cls(rational_angle(p, q), (p, q))

    @classmethod
    def infinity(cls) -> "BoundaryPoint":
        return cls(0.0, (1, 0))

    @property
    def is_infinity(self) -> bool:
        return self.exact == (1, 0)

    def halfplane(self) -> float:
        if self.exact is not None:
            p, q = self.exact
            return math.inf if q == 0 else p / q
        return cayley_boundary_inverse(self.angle)


@dataclass(frozen=True)
class CircleInterval:
    """Counter-clockwise arc of the boundary circle.

    start is wrapped to [0, 2*pi); width lies in (0, 2*pi].  Containment and
    disjointness are decided on endpoints up to ANGLE_TOL.
    """

    start: float
    width: float

    def __post_init__(self):
        if not (0.0 < self.width <= TWO_PI + ANGLE_TOL):
            raise ValueError(f"interval width {self.width} out of (0, 2*pi]")
        object.__setattr__(self, "start", wrap_angle(self.start))
        object.__setattr__(self, "width", min(self.width, TWO_PI))

    @classmethod
    def full_circle(cls) -> "CircleInterval":
        return cls(0.0, TWO_PI)

    @property
    def end(self) -> float:
        return wrap_angle(self.start + self.width)

    @property
    def midpoint(self) -> float:
        return wrap_angle(self.start + 0.5 * self.width)

    @property
    def is_full(self) -> bool:
        return self.width >= TWO_PI

    def leb(self) -> float:
        """Normalised Lebesgue measure (total circle mass 1)."""
        return self.width / TWO_PI

    def offset_of(self, angle: float) -> float:
        """Position of an angle relative to start, in [0, 2*pi)."""
        return wrap_angle(angle - self.start)

    def contains_angle(self, angle: float, tol: float = ANGLE_TOL) -> bool:
        if self.is_full:
            return True
        off = self.offset_of(angle)
        return off <= self.width + tol or off >= TWO_PI - tol

    def contains_interval(self, other: "CircleInterval", tol: float = ANGLE_TOL) -> bool:
        if self.is_full:
            return True
        if other.width > self.width + tol:
            return False
        off = self.offset_of(other.start)
        if off >= TWO_PI - tol:
            off = 0.0
        return off + other.width <= self.width + tol

    def interiors_disjoint(self, other: "CircleInterval", tol: float = ANGLE_TOL) -> bool:
        if self.is_full or other.is_full:
            return False
        off = self.offset_of(other.start)
        # other starts inside self's interior
        if off < self.width - tol:
            return False
        # self starts inside other's interior
        off2 = other.offset_of(self.start)
        return off2 >= other.width - tol

    def overlaps(self, other: "CircleInterval", tol: float = ANGLE_TOL) -> bool:
        return not self.interiors_disjoint(other, tol)


def mobius_normalize(a: float, b: float, c: float, d: float) -> tuple[float, float, float, float]:
    det = a * d - b * c
    if det <= 1e-300:
        raise ValueError(f"matrix is not orientation-preserving unimodular (det={det})")
    s = 1.0 / math.sqrt(det)
    return a * s, b * s, c * s, d * s


@dataclass(frozen=True)
class RealIsometry:
    """Element of SL(2, R) acting on the upper half-plane."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        a, b, c, d = mobius_normalize(self.a, self.b, self.c, self.d)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    @classmethod
    def identity(cls) -> "RealIsometry":
        return cls(1.0, 0.0, 0.0, 1.0)

    def compose(self, other: "RealIsometry") -> "RealIsometry":
        return RealIsometry(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "RealIsometry":
        return RealIsometry(self.d, -self.b, -self.c, self.a)

    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    def apply_plane(self, z: complex) -> complex:
        return (self.a * z + self.b) / (self.c * z + self.d)

    def apply_halfplane_boundary(self, t: float) -> float:
        if math.isinf(t):
            return math.inf if self.c == 0.0 else self.a / self.c
        den = self.c * t + self.d
        if den == 0.0:
            return math.inf
        return (self.a * t + self.b) / den


def mobius_compose(g: RealIsometry, h: RealIsometry) -> RealIsometry:
    return g.compose(h)


def mobius_apply(g: RealIsometry, z: Union[complex, BoundaryPoint]) -> Union[complex, BoundaryPoint]:
    """Apply an isometry to an interior point (complex) or a BoundaryPoint."""
    if isinstance(z, BoundaryPoint):
        t = g.apply_halfplane_boundary(z.halfplane())
        return BoundaryPoint(cayley_boundary(t))
    return g.apply_plane(z)


class Horoball:
    """Horoball tangent to the boundary circle, disjoint from the base point.

    Stored in disk coordinates: the tangency point and the Euclidean diameter
    ``size`` of the horoball disk.  size = 1 is the degenerate case whose
    horocycle passes through the base point; anything larger would swallow
    the base point and is rejected.
    """

    __slots__ = ("tangency", "size")

    def __init__(self, tangency: BoundaryPoint, size: float):
        if size <= MIN_HOROBALL_SIZE:
            raise ValueError(f"degenerate horoball: size {size} below resolution")
        if size > 1.0:
            raise ValueError("base point not in thick part")
        self.tangency = tangency
        self.size = size

    def __repr__(self):
        return f"Horoball(angle={self.tangency.angle!r}, size={self.size!r})"

    def __eq__(self, other):
        return (
            isinstance(other, Horoball)
            and self.tangency.angle == other.tangency.angle
            and self.size == other.size
        )

    @classmethod
    def at_infinity(cls, height: float) -> "Horoball":
        """The half-plane region {im > height}, as a disk horoball."""
        return cls(BoundaryPoint.infinity(), 2.0 / (height + 1.0))

    @classmethod
    def from_halfplane(cls, t: float, diameter: float) -> "Horoball":
        """Horoball tangent at finite half-plane coordinate t with Euclidean
        diameter ``diameter``."""
        size = 2.0 * diameter / (t * t + 1.0 + diameter)
        return cls(BoundaryPoint(cayley_boundary(t)), size)

    @classmethod
    def from_disk_point(cls, tangency: BoundaryPoint, w: complex) -> "Horoball":
        """Horoball tangent at ``tangency`` whose horocycle passes through w."""
        zeta = complex(math.cos(tangency.angle), math.sin(tangency.angle))
        num = abs(w - zeta) ** 2
        den = 1.0 - (w.real * zeta.real + w.imag * zeta.imag)
        if den <= 0.0:
            raise ValueError("point does not define a horoball through this tangency")
        return cls(tangency, num / den)

    @property
    def disk_radius(self) -> float:
        return 0.5 * self.size

    @property
    def disk_center(self) -> complex:
        a = self.tangency.angle
        r = 1.0 - self.disk_radius
        return complex(r * math.cos(a), r * math.sin(a))

    @property
    def edge_sine(self) -> float:
        """sin of the half-width of the tangent-ray shadow."""
        return self.size / (2.0 - self.size)

    def base_distance(self) -> float:
        """Hyperbolic distance from the base point to the horoball."""
        return math.log((2.0 - self.size) / self.size)


def horoball_image(g: RealIsometry, H: Horoball) -> Horoball:
    """Image horoball under a half-plane isometry, recomputed from the mapped
    tangency and a mapped horocycle point."""
    new_tangency = mobius_apply(g, H.tangency)
    a = H.tangency.angle
    w0 = complex((1.0 - H.size) * math.cos(a), (1.0 - H.size) * math.sin(a))
    z0 = disk_to_halfplane(w0)
    w0_new = halfplane_to_disk(g.apply_plane(z0))
    return Horoball.from_disk_point(new_tangency, w0_new)


def excursion_length(theta: float, H: Horoball) -> Optional[float]:
    """Length, along the horocycle, of the crossing of H by the ray at angle
    theta from the base point.

    Returns None when the ray misses H, 0.0 at tangency, and +inf for the ray
    aimed straight at the tangency point of H.
    """
    if H.size > 1.0:
        raise ValueError("base point not in thick part")
    delta = signed_gap(theta, H.tangency.angle)
    if delta == 0.0:
        return math.inf
    if abs(delta) >= 0.5 * math.pi:
        return None
    # e^depth at the deepest point of the crossing
    x = H.edge_sine / math.sin(abs(delta))
    if x < 1.0:
        return None
    if x == 1.0:
        return 0.0
    return 2.0 * math.sqrt(x * x - 1.0)


def excursion_arclength(theta: float, H: Horoball, epsrel: float = 1e-11) -> Optional[float]:
    """Excursion length by direct arc-length quadrature along the horocycle.

    The ray is intersected with the horocycle circle, and the hyperbolic
    length of the horocycle arc between the two crossing points (the arc that
    avoids the tangency point, where the horocycle has infinite length) is
    integrated numerically.  Serves as the independent cross-check for
    excursion_length.
    """
    rho = H.disk_radius
    delta = signed_gap(theta, H.tangency.angle)
    if delta == 0.0:
        return math.inf
    m = (1.0 - rho) * math.cos(delta)
    if m <= 0.0:
        return None
    disc = m * m - (1.0 - 2.0 * rho)
    if disc < 0.0:
        return None
    root = math.sqrt(disc)
    psis = []
    for u in (m - root, m + root):
        wx = u * math.cos(delta) - (1.0 - rho)
        wy = u * math.sin(delta)
        psis.append(math.atan2(wy, wx))
    lo, hi = min(psis), max(psis)

    def integrand(psi: float) -> float:
        s = math.sin(0.5 * psi)
        return 1.0 / (2.0 * (1.0 - rho) * s * s)

    if lo < 0.0 < hi:
        # crossing points straddle the tangency: integrate through pi
        v1, _ = quad(integrand, hi, math.pi, epsabs=0.0, epsrel=epsrel, limit=400)
        v2, _ = quad(integrand, -math.pi, lo, epsabs=0.0, epsrel=epsrel, limit=400)
        return v1 + v2
    val, _ = quad(integrand, lo, hi, epsabs=0.0, epsrel=epsrel, limit=400)
    return val


def shadow(H: Horoball, r: float) -> CircleInterval:
    """The interval of ray directions whose excursion in H is at least r.

    r = 0 is the closed-form radial projection of the horoball disk; for
    r > 0 the endpoints solve excursion_length = r by bisection on each side
    of the tangency angle (the two sides are mirror images).
    """
    phi = H.tangency.angle
    hw0 = math.asin(min(H.edge_sine, 1.0))
    if r <= 0.0:
        return CircleInterval(phi - hw0, 2.0 * hw0)
    q0 = H.edge_sine

    def excess(delta: float) -> float:
        x = q0 / math.sin(delta)
        if x <= 1.0:
            return -r
        return 2.0 * math.sqrt(x * x - 1.0) - r

    lo, hi = 0.0, hw0
    for _ in range(64):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if excess(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    half = 0.5 * (lo + hi)
    return CircleInterval(phi - half, 2.0 * half)


def shadow_ratio(H: Horoball, r: float) -> float:
    """leb(shadow(H, r)) / leb(shadow(H, 0))."""
    return shadow(H, r).width / shadow(H, 0.0).width
