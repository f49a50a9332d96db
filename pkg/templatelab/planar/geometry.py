#  BSD 3-Clause License.
# 
#  Copyright (c) 2019-2024 Robert A. Milton. All rights reserved.
# 
#  Redistribution and use in source and binary forms, with or without modification, are permitted provided that the following conditions are met:
# 
#  1. Redistributions of source code must retain the above copyright notice, this list of conditions and the following disclaimer.
# 
#  2. Redistributions in binary form must reproduce the above copyright notice, this list of conditions and the following disclaimer in the
#     documentation and/or other materials provided with the distribution.
# 
#  3. Neither the name of the copyright holder nor the names of its contributors may be used to endorse or promote products derived from this
#     software without specific prior written permission.
# 
#  THIS SOFTWARE IS PROVIDED BY THE COPYRIGHT HOLDERS AND CONTRIBUTORS "AS IS" AND ANY EXPRESS OR IMPLIED WARRANTIES, INCLUDING, BUT NOT LIMITED TO,
#  THE IMPLIED WARRANTIES OF MERCHANTABILITY AND FITNESS FOR A PARTICULAR PURPOSE ARE DISCLAIMED. IN NO EVENT SHALL THE COPYRIGHT HOLDER OR
#  CONTRIBUTORS BE LIABLE FOR ANY DIRECT, INDIRECT, INCIDENTAL, SPECIAL, EXEMPLARY, OR CONSEQUENTIAL DAMAGES (INCLUDING, BUT NOT LIMITED TO,
#  PROCUREMENT OF SUBSTITUTE GOODS OR SERVICES; LOSS OF USE, DATA, OR PROFITS; OR BUSINESS INTERRUPTION) HOWEVER CAUSED AND ON ANY THEORY OF
#  LIABILITY, WHETHER IN CONTRACT, STRICT LIABILITY, OR TORT (INCLUDING NEGLIGENCE OR OTHERWISE) ARISING IN ANY WAY OUT OF THE USE OF THIS SOFTWARE,
#  EVEN IF ADVISED OF THE POSSIBILITY OF SUCH DAMAGE.

""" Robust planar primitives: points, oriented lines, rigid motions and angle arithmetic.

All comparisons against zero go through a ToleranceConfig. Angles are normalized to (-pi, pi], with pi taking the positive sign.
"""

from __future__ import annotations

from templatelab.base.definitions import *


def normalize_angle(theta: float) -> float:
    """ Normalize an angle to (-pi, pi].

    Args:
        theta: Any angle in radians.
    Returns: The equivalent angle in (-pi, pi].
    """
    result = math.remainder(theta, TWO_PI)
    return math.pi if result <= -math.pi else result


class PlanarPoint(NamedTuple):
    """ A point, or a free vector, in the Euclidean plane."""
    x: float
    y: float

    @classmethod
    def polar(cls, theta: float, radius: float = 1.0) -> PlanarPoint:
        """ The point at angle ``theta`` and distance ``radius`` from the origin."""
        return cls(radius * math.cos(theta), radius * math.sin(theta))

    def __add__(self, other: PlanarPoint) -> PlanarPoint:
        return PlanarPoint(self.x + other[0], self.y + other[1])

    def __sub__(self, other: PlanarPoint) -> PlanarPoint:
        return PlanarPoint(self.x - other[0], self.y - other[1])

    def __mul__(self, scalar: float) -> PlanarPoint:
        return PlanarPoint(scalar * self.x, scalar * self.y)

    __rmul__ = __mul__

    def __neg__(self) -> PlanarPoint:
        return PlanarPoint(-self.x, -self.y)

    def dot(self, other: PlanarPoint) -> float:
        return self.x * other[0] + self.y * other[1]

    def cross(self, other: PlanarPoint) -> float:
        """ The z-component of ``self x other``, positive when ``other`` is counterclockwise of ``self``."""
        return self.x * other[1] - self.y * other[0]

    @property
    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    @property
    def angle(self) -> float:
        """ The polar angle of this vector, in (-pi, pi]."""
        return normalize_angle(math.atan2(self.y, self.x))

    @property
    def perp(self) -> PlanarPoint:
        """ This vector rotated by +pi/2."""
        return PlanarPoint(-self.y, self.x)

    def unit(self, tol: ToleranceConfig = DEFAULT_TOLERANCE) -> PlanarPoint:
        """ This vector normalized to unit length.

        Raises:
            ValueError: If this vector is shorter than ``tol.eps_length``.
        """
        norm = self.norm
        if norm <= tol.eps_length:
            raise ValueError(f'Cannot normalize the null vector {self}.')
        return PlanarPoint(self.x / norm, self.y / norm)

    def rotate(self, theta: float) -> PlanarPoint:
        c, s = math.cos(theta), math.sin(theta)
        return PlanarPoint(c * self.x - s * self.y, s * self.x + c * self.y)

    def distance(self, other: PlanarPoint) -> float:
        return math.hypot(self.x - other[0], self.y - other[1])

    def is_close(self, other: PlanarPoint, tol: ToleranceConfig = DEFAULT_TOLERANCE) -> bool:
        return self.distance(other) <= tol.eps_length


ORIGIN = PlanarPoint(0.0, 0.0)  #: The planar origin.


def signed_angle(start: PlanarPoint, end: PlanarPoint) -> float:
    """ The rotation angle taking the unit vector ``start`` to the unit vector ``end``.

    Args:
        start: A unit vector.
        end: A unit vector.
    Returns: The angle in (-pi, pi]. Antiparallel vectors give +pi.
    """
    return normalize_angle(math.atan2(start.cross(end), start.dot(end)))


def unsigned_line_angle(u: PlanarPoint, v: PlanarPoint) -> float:
    """ The angle in [0, pi] between the directions ``u`` and ``v``."""
    return abs(signed_angle(u, v))


class OrientedLine(NamedTuple):
    """ An oriented line through ``anchor`` with unit ``direction``."""
    anchor: PlanarPoint
    direction: PlanarPoint

    @classmethod
    def through(cls, anchor: PlanarPoint, theta: float) -> OrientedLine:
        """ The line through ``anchor`` oriented at angle ``theta``."""
        return cls(PlanarPoint(*anchor), PlanarPoint.polar(theta))

    @property
    def theta(self) -> float:
        return self.direction.angle

    @property
    def normal(self) -> PlanarPoint:
        """ The unit normal pointing to the left of this line."""
        return self.direction.perp

    def side(self, point: PlanarPoint) -> float:
        """ Signed distance of ``point`` from this line, positive on the left. Antisymmetric under orientation flip."""
        return self.direction.cross(PlanarPoint(*point) - self.anchor)

    def coordinate(self, point: PlanarPoint) -> float:
        """ The parameter of the orthogonal projection of ``point`` along this line, measured from ``anchor``."""
        return self.direction.dot(PlanarPoint(*point) - self.anchor)

    def at(self, s: float) -> PlanarPoint:
        """ The point at parameter ``s`` along this line."""
        return self.anchor + s * self.direction

    def flipped(self) -> OrientedLine:
        return OrientedLine(self.anchor, -self.direction)

    def shifted(self, offset: float) -> OrientedLine:
        """ The parallel line at signed distance ``offset`` to the left, with the anchor moved perpendicularly."""
        return OrientedLine(self.anchor + offset * self.normal, self.direction)

    def is_unit(self, tol: ToleranceConfig = DEFAULT_TOLERANCE) -> bool:
        return abs(self.direction.norm - 1.0) <= tol.eps_length


def intersect_ray_line(origin: PlanarPoint, direction: PlanarPoint, line: OrientedLine,
                       tol: ToleranceConfig = DEFAULT_TOLERANCE) -> Optional[Tuple[float, PlanarPoint]]:
    """ Intersect the forward ray ``origin + t * direction``, ``t >= 0``, with ``line``.

    Args:
        origin: The ray's origin.
        direction: The ray's unit direction.
        line: The line to intersect.
        tol: The tolerance policy.
    Returns: ``(t, point)`` for the forward intersection, or None if the ray is parallel to the line within ``tol.eps_angle``
        or the intersection lies behind the ray origin.
    """
    origin = PlanarPoint(*origin)
    direction = PlanarPoint(*direction)
    denominator = direction.cross(line.direction)
    if abs(denominator) <= tol.eps_angle:
        return None
    t = (line.anchor - origin).cross(line.direction) / denominator
    if t < -tol.eps_length:
        return None
    t = max(t, 0.0)
    return t, origin + t * direction


class RigidMotion(NamedTuple):
    """ The isometry ``x -> R(angle) F x + translation``, where F is reflection in the x-axis if ``reflection`` else the identity."""
    angle: float = 0.0
    translation: PlanarPoint = ORIGIN
    reflection: bool = False

    @classmethod
    def rotation_about(cls, centre: PlanarPoint, angle: float) -> RigidMotion:
        centre = PlanarPoint(*centre)
        return cls(normalize_angle(angle), centre - centre.rotate(angle), False)

    @classmethod
    def reflection_across(cls, line: OrientedLine) -> RigidMotion:
        """ Reflection across ``line``."""
        angle = normalize_angle(2.0 * line.theta)
        linear = cls(angle, ORIGIN, True)
        return cls(angle, line.anchor - linear.linear(line.anchor), True)

    def linear(self, vector: PlanarPoint) -> PlanarPoint:
        """ Apply the linear part only, for free vectors."""
        vector = PlanarPoint(*vector)
        if self.reflection:
            vector = PlanarPoint(vector.x, -vector.y)
        return vector.rotate(self.angle)

    def __call__(self, point: PlanarPoint) -> PlanarPoint:
        return self.linear(point) + self.translation

    def line(self, line: OrientedLine) -> OrientedLine:
        return OrientedLine(self(line.anchor), self.linear(line.direction))

    def compose(self, other: RigidMotion) -> RigidMotion:
        """ The motion ``self o other``, applying ``other`` first."""
        angle = self.angle + (-other.angle if self.reflection else other.angle)
        return RigidMotion(normalize_angle(angle), self(other.translation), self.reflection != other.reflection)

    def inverse(self) -> RigidMotion:
        angle = self.angle if self.reflection else -self.angle
        linear = RigidMotion(normalize_angle(angle), ORIGIN, self.reflection)
        return RigidMotion(linear.angle, -linear.linear(self.translation), self.reflection)

    def is_close(self, other: RigidMotion, tol: ToleranceConfig = DEFAULT_TOLERANCE) -> bool:
        """ Whether two motions agree, tested on a frame of three points."""
        return all(self(p).is_close(other(p), tol) for p in (ORIGIN, PlanarPoint(1.0, 0.0), PlanarPoint(0.0, 1.0)))
