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

""" Contains tests of the planar package."""

from __future__ import annotations

import math
import pytest

from templatelab.base.definitions import ToleranceConfig, DEFAULT_TOLERANCE
from templatelab.planar.geometry import PlanarPoint, OrientedLine, RigidMotion, intersect_ray_line, signed_angle, normalize_angle


def test_intersect_axis_aligned():
    t, point = intersect_ray_line(PlanarPoint(0, 0), PlanarPoint(1, 0), OrientedLine(PlanarPoint(1, -1), PlanarPoint(0, 1)))
    assert t == pytest.approx(1.0)
    assert point.is_close(PlanarPoint(1, 0))


def test_intersect_parallel_is_absent():
    assert intersect_ray_line(PlanarPoint(0, 0), PlanarPoint(1, 0), OrientedLine(PlanarPoint(0, 1), PlanarPoint(1, 0))) is None


def test_intersect_behind_is_absent():
    assert intersect_ray_line(PlanarPoint(0, 0), PlanarPoint(1, 0), OrientedLine(PlanarPoint(-1, -1), PlanarPoint(0, 1))) is None


@pytest.mark.parametrize('start, end, expected', [((1, 0), (0, 1), math.pi / 2), ((1, 0), (1, 0), 0.0), ((1, 0), (-1, 0), math.pi),
                                                  ((0, 1), (1, 0), -math.pi / 2)])
def test_signed_angle(start, end, expected):
    assert signed_angle(PlanarPoint(*start), PlanarPoint(*end)) == pytest.approx(expected)


def test_signed_angle_antisymmetry():
    for a, b in ((0.3, 2.1), (-2.9, 1.0), (0.0, -3.0)):
        u, v = PlanarPoint.polar(a), PlanarPoint.polar(b)
        total = signed_angle(u, v) + signed_angle(v, u)
        assert abs(math.remainder(total, 2 * math.pi)) < 1e-12


def test_normalize_angle_assigns_pi_positive():
    assert normalize_angle(-math.pi) == math.pi
    assert normalize_angle(3 * math.pi) == pytest.approx(math.pi)
    assert normalize_angle(0.5 + 4 * math.pi) == pytest.approx(0.5)


def test_side_is_antisymmetric_under_flip():
    line = OrientedLine.through(PlanarPoint(1, 2), 0.7)
    point = PlanarPoint(-3, 5)
    assert line.side(point) == pytest.approx(-line.flipped().side(point))
    assert line.side(point) > 0


def test_intersection_is_invariant_under_rigid_motion():
    motion = RigidMotion(1.1, PlanarPoint(3.0, -2.0), True)
    origin, direction = PlanarPoint(0.2, 0.1), PlanarPoint.polar(0.4)
    line = OrientedLine.through(PlanarPoint(2, -1), 1.9)
    t, point = intersect_ray_line(origin, direction, line)
    t_moved, point_moved = intersect_ray_line(motion(origin), motion.linear(direction), motion.line(line))
    assert t_moved == pytest.approx(t)
    assert motion(point).is_close(point_moved)


def test_motion_inverse_and_associativity():
    a = RigidMotion(0.4, PlanarPoint(1, 2), False)
    b = RigidMotion(-2.2, PlanarPoint(-1, 0.5), True)
    c = RigidMotion.reflection_across(OrientedLine.through(PlanarPoint(1, 1), 0.3))
    identity = RigidMotion()
    for motion in (a, b, c):
        assert motion.inverse().compose(motion).is_close(identity)
    assert a.compose(b).compose(c).is_close(a.compose(b.compose(c)))


def test_reflection_fixes_its_line():
    line = OrientedLine.through(PlanarPoint(1, 1), 0.3)
    reflection = RigidMotion.reflection_across(line)
    assert reflection(line.at(2.5)).is_close(line.at(2.5))
    off = line.at(1.0) + line.normal
    assert line.side(reflection(off)) == pytest.approx(-1.0)


def test_tolerance_config_rejects_nonpositive():
    with pytest.raises(ValueError):
        ToleranceConfig.make(eps_length=0.0)
    assert ToleranceConfig.make() == DEFAULT_TOLERANCE
