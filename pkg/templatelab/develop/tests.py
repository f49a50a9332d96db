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

""" Contains tests of the develop package."""

from __future__ import annotations

import math
import pytest
import xml.etree.ElementTree as ET

from templatelab.base.definitions import DevelopmentInconsistency
from templatelab.planar.geometry import PlanarPoint, RigidMotion, unsigned_line_angle
from templatelab.template.models import TemplateData, SelfSimilarData, WallSpec, StripSpec
from templatelab.develop.chains import QuarterPlaneCase, SignSequence, develop_chain
from templatelab.develop.selfsimilar import develop_self_similar, valid_cases
from templatelab.develop.svg import Overlay, emit_svg

CASE_I = SelfSimilarData(1.0, 1.0, math.tan(1.2), 1.0, math.tan(0.1))
TRIVIAL = SelfSimilarData(math.pi / 2, 1.0, 0.0, 1.0, 0.0)


def chain_template(alphas=(0.7, 2.0, 1.3), widths=(1.0, 0.5, 2.0, 1.5), epss=(0.3, -0.2, 0.0, 1.1)) -> TemplateData:
    return TemplateData(TemplateData.Kind.HALF, (WallSpec(None),) + tuple(WallSpec(a) for a in alphas),
                        tuple(StripSpec(w, e) for w, e in zip(widths, epss)))


def test_two_walls():
    t = TemplateData(TemplateData.Kind.FINITE, (WallSpec(None), WallSpec(None)), (StripSpec(1.0, 0.0),))
    chain = develop_chain(t, SignSequence(()))
    assert chain.walls[0].exit.direction.is_close(PlanarPoint(1, 0))
    assert chain.walls[1].origin.is_close(PlanarPoint(0, 1))
    assert chain.walls[1].entry.side(PlanarPoint(5, 1)) == pytest.approx(0.0)


def test_right_angle_exit_is_vertical():
    t = TemplateData(TemplateData.Kind.HALF, (WallSpec(None), WallSpec(math.pi / 2)), (StripSpec(1.0, 0.0),))
    exit_line = develop_chain(t, SignSequence((1,))).walls[1].exit
    assert abs(exit_line.direction.x) < 1e-12
    assert exit_line.side(PlanarPoint(0, 1)) == pytest.approx(0.0)


def test_sign_count_mismatch():
    with pytest.raises(ValueError):
        develop_chain(chain_template(), SignSequence((1, 1)))


@pytest.mark.parametrize('signs', [(1, 1, 1), (-1, 1, -1), (1, -1, -1)])
def test_chain_invariants(signs):
    t = chain_template()
    chain = develop_chain(t, SignSequence(signs))
    for wall in chain.walls[1:]:
        assert wall.exit.side(wall.origin) == pytest.approx(0.0, abs=1e-12)
        assert unsigned_line_angle(wall.entry.direction, wall.exit.direction) == pytest.approx(t.walls[wall.index].alpha)
    for strip in chain.strips:
        assert strip.near.direction.is_close(strip.far.direction)
        assert strip.normal.dot(strip.far.anchor - strip.near.anchor) == pytest.approx(strip.width)
        assert strip.near.coordinate(strip.far.anchor) == pytest.approx(strip.eps)


def test_anchor_shifts_first_origin():
    anchored = chain_template()._replace(anchor=0.7)
    chain = develop_chain(anchored, SignSequence((1, -1, 1)))
    assert chain.walls[0].origin.is_close(PlanarPoint(-0.7, 0.0))
    assert chain.walls[1].origin.is_close(PlanarPoint(0.3, 1.0))
    moved = chain_template(epss=(1.0, -0.2, 0.0, 1.1))
    assert moved.offset(0) == pytest.approx(anchored.offset(0))
    reference = develop_chain(moved, SignSequence((1, -1, 1)))
    for wall, other in zip(chain.walls, reference.walls):
        assert (wall.origin + PlanarPoint(0.7, 0.0)).is_close(other.origin)


def test_sign_flip_reflects_suffix():
    t = chain_template()
    chain = develop_chain(t, SignSequence((1, 1, -1)))
    flipped = develop_chain(t, SignSequence((-1, 1, -1)))
    reflection = RigidMotion.reflection_across(chain.walls[1].entry)
    for wall, other in zip(chain.walls[2:], flipped.walls[2:]):
        assert reflection(wall.origin).is_close(other.origin)
    assert reflection(chain.walls[1].exit.at(3.0)).is_close(flipped.walls[1].exit.at(3.0))


def test_case_i_development():
    development = develop_self_similar(CASE_I, QuarterPlaneCase.I, 10)
    assert development.is_cone
    assert 0.0 < development.angle <= CASE_I.beta
    assert development.angle == pytest.approx(0.01134, abs=1e-4)
    for i in range(8):
        image = development.origins[i + 2]
        assert (image - 2.0 * development.origins[i]).norm <= 1e-9 * image.norm


def test_even_origins_lie_on_the_even_ray():
    development = develop_self_similar(CASE_I, QuarterPlaneCase.I, 8)
    for i, origin in enumerate(development.origins):
        ray = development.r_even if i % 2 == 0 else development.r_odd
        assert abs(ray.cross(origin)) <= 1e-9 * origin.norm


def test_trivial_data_has_no_cone():
    assert valid_cases(TRIVIAL) == []
    assert [d.case for d in valid_cases(CASE_I)][:1] == [QuarterPlaneCase.I]


def test_mixed_pattern_is_inconsistent(monkeypatch):
    from templatelab.develop import selfsimilar
    monkeypatch.setitem(selfsimilar.PATTERNS, QuarterPlaneCase.II, (QuarterPlaneCase.II, QuarterPlaneCase.IV))
    with pytest.raises(DevelopmentInconsistency):
        develop_self_similar(CASE_I, QuarterPlaneCase.II, 6)


def test_too_few_origins():
    with pytest.raises(ValueError):
        develop_self_similar(CASE_I, QuarterPlaneCase.I, 3)


def test_emit_svg(tmp_path):
    chain = develop_chain(chain_template(), SignSequence((1, -1, 1)))
    path = emit_svg(chain, [], tmp_path / 'chain.svg')
    root = ET.parse(path).getroot()
    assert root.get('viewBox') == '0 0 1000 1000'
    assert len(root.findall('.//{http://www.w3.org/2000/svg}polygon')) == len(chain.strips)
    path = emit_svg(chain, [Overlay.ray(PlanarPoint(0, 0), PlanarPoint.polar(1.0))], tmp_path / 'ray.svg')
    overlays = [g for g in ET.parse(path).getroot() if g.get('id') == 'overlays'][0]
    assert len(overlays) == 1


def test_emit_svg_reports_path(tmp_path):
    chain = develop_chain(chain_template(), SignSequence((1, 1, 1)))
    with pytest.raises(OSError, match='missing'):
        emit_svg(chain, [], tmp_path / 'missing' / 'chain.svg')
