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

""" Contains tests of the groups package."""

from __future__ import annotations

import math
import pytest

from templatelab.template.models import expand_self_similar, validate
from templatelab.groups.graphs import (VertexGeometricData, EdgeSpec, AdmissibleGraphSpec, ScaleAssignment, ScaleVerdict, from_dict,
                                       to_dict, read, write, check_scale_assignment, apply_scale_assignment)
from templatelab.groups.special import special_ray_data, periodic_template, check_pqrs

V1 = VertexGeometricData(1.0, 2.0, 0.5, 1.0)
V2 = VertexGeometricData(1.0, 3.0, 0.0, 2.0)
EDGE = AdmissibleGraphSpec({'v1': V1, 'v2': V2}, (EdgeSpec('v1', 'v2', 1.3),))
LOOP = AdmissibleGraphSpec({'v1': V1}, (EdgeSpec('v1', 'v1', 0.9),))


def cycle(n: int, beta: float = math.pi / 2) -> AdmissibleGraphSpec:
    names = [f'v{i}' for i in range(n)]
    return AdmissibleGraphSpec({name: V1 for name in names}, tuple(EdgeSpec(names[i], names[(i + 1) % n], beta) for i in range(n)))


def test_example():
    rays = special_ray_data(EDGE, 0, (1, 1, 1, 1), 6)
    assert [rays.l_hat(i) for i in range(1, 5)] == [3.0, 3.0, 6.0, 6.0]
    assert rays.eps_hat(2) == 2.0
    assert rays.eps_hat(3) == 3.0
    assert rays.eps_hat(1) == 0.0
    assert rays.template.alphas == (None,) + (1.3,) * 5


def test_doubling_law():
    rays = special_ray_data(EDGE, 0, (0.7, -1.2, 2.5, 0.3), 12)
    for i in range(1, 10):
        assert rays.l_hat(i + 2) == 2 * rays.l_hat(i)
        if i >= 2:
            assert rays.eps_hat(i + 2) == 2 * rays.eps_hat(i)


def test_loop_uses_one_vertex():
    rays = special_ray_data(LOOP, 0, (1, 1, 1, 1), 6)
    assert rays.l_hat(2) == V1.mls_delta
    assert rays.eps_hat(2) == V1.tau_zeta
    assert rays.template.alphas[1:] == (0.9,) * 5


def test_self_similar_bridge():
    rays = special_ray_data(EDGE, 0, (0.4, 0.9, 1.7, -0.6), 14)
    expanded = expand_self_similar(rays.self_similar, 12, 0)
    assert rays.template.strips[2:] == expanded.strips[:11]


@pytest.mark.parametrize('pqrs', [(0, 1, 1, 1), (1, 1, -1, 1), (1, 1, 1), (1, math.nan, 1, 1)])
def test_outside_R40(pqrs):
    with pytest.raises(ValueError):
        check_pqrs(pqrs)
    with pytest.raises(ValueError):
        special_ray_data(EDGE, 0, pqrs, 6)


def test_bad_edge():
    with pytest.raises(ValueError):
        special_ray_data(EDGE, 1, (1, 1, 1, 1), 6)
    with pytest.raises(ValueError):
        special_ray_data(EDGE, EdgeSpec('v2', 'v1', 1.3), (1, 1, 1, 1), 6)


@pytest.mark.parametrize('spec', [AdmissibleGraphSpec({'v1': V1}, ()),
                                  AdmissibleGraphSpec({'v1': V1, 'v2': V2}, (EdgeSpec('v1', 'v1', 1.0),)),
                                  AdmissibleGraphSpec({'v1': V1}, (EdgeSpec('v1', 'v3', 1.0),)),
                                  AdmissibleGraphSpec({'v1': V1}, (EdgeSpec('v1', 'v1', math.pi),)),
                                  AdmissibleGraphSpec({'v1': V1._replace(tau_zeta=0.0)}, (EdgeSpec('v1', 'v1', 1.0),))])
def test_inadmissible(spec):
    with pytest.raises(ValueError):
        spec.check()


def test_graph_file(tmp_path):
    path = write(EDGE, tmp_path / 'graph.json')
    assert read(path) == EDGE
    assert to_dict(EDGE)['edges'] == [{'from': 'v1', 'to': 'v2', 'beta': 1.3}]
    with pytest.raises(ValueError):
        from_dict({'vertices': {}})


def test_torus_shell():
    overrides = [(0.0, (2 * n + 1) * math.pi) for n in range(8)]
    t = periodic_template(cycle(4), [0, 1, 2, 3], overrides, 9, degenerate_ok=True)
    assert t.alphas == (None,) + (math.pi / 2,) * 8
    assert t.widths == (0.0,) * 8
    assert all(round(eps / math.pi) % 2 == 1 for eps in t.epss)
    assert validate(t) == []


def test_period_two():
    t = periodic_template(EDGE, [0, 0], [(1.0, 0.5)], 10)
    assert validate(t) == []
    assert set(t.strips) == {t.strips[0]}


def test_overrides_reproduce_special_rays():
    rays = special_ray_data(EDGE, 0, (0.7, -1.2, 2.5, 0.3), 9)
    overrides = [(strip.width, strip.eps) for strip in rays.template.strips]
    assert periodic_template(EDGE, [0], overrides, 9) == rays.template


def test_non_adjacent_itinerary():
    spec = AdmissibleGraphSpec({name: V1 for name in 'abcd'}, (EdgeSpec('a', 'b', 1.0), EdgeSpec('b', 'c', 1.0), EdgeSpec('c', 'd', 1.0)))
    with pytest.raises(ValueError, match='share no vertex'):
        periodic_template(spec, [0, 2], [(1.0, 0.0)], 5)


def test_uniform():
    spec = cycle(3)
    verdict = check_scale_assignment(spec, ScaleAssignment({name: 2.0 for name in spec.vertices}, {name: 2.0 for name in spec.vertices}))
    assert verdict == ScaleVerdict(ScaleVerdict.Kind.UNIFORM, (2.0,), ())


def test_bipartite():
    spec = cycle(4)
    lam = {'v0': 2.0, 'v1': 3.0, 'v2': 2.0, 'v3': 3.0}
    mu = {'v0': 3.0, 'v1': 2.0, 'v2': 3.0, 'v3': 2.0}
    verdict = check_scale_assignment(spec, ScaleAssignment(lam, mu))
    assert verdict.kind == ScaleVerdict.Kind.BIPARTITE
    assert verdict.values == (2.0, 3.0)


def test_odd_cycle():
    spec = cycle(3)
    lam = {'v0': 2.0, 'v1': 3.0, 'v2': 2.0}
    mu = {'v0': 3.0, 'v1': 2.0, 'v2': 3.0}
    verdict = check_scale_assignment(spec, ScaleAssignment(lam, mu))
    assert verdict.kind == ScaleVerdict.Kind.INVALID
    assert sorted(verdict.witness) == ['v0', 'v1', 'v2']


def test_loop_is_odd():
    verdict = check_scale_assignment(LOOP, ScaleAssignment({'v1': 2.0}, {'v1': 3.0}))
    assert verdict == ScaleVerdict(ScaleVerdict.Kind.INVALID, (), ('v1',))


def test_mismatched_edge():
    spec = cycle(4)
    lam = {'v0': 2.0, 'v1': 3.0, 'v2': 2.0, 'v3': 5.0}
    mu = {'v0': 3.0, 'v1': 2.0, 'v2': 3.0, 'v3': 2.0}
    verdict = check_scale_assignment(spec, ScaleAssignment(lam, mu))
    assert verdict.kind == ScaleVerdict.Kind.INVALID
    assert len(verdict.witness) == 2


def test_missing_factor():
    with pytest.raises(ValueError):
        check_scale_assignment(EDGE, ScaleAssignment({'v1': 1.0}, {'v1': 1.0, 'v2': 1.0}))
    with pytest.raises(ValueError):
        check_scale_assignment(EDGE, ScaleAssignment({'v1': 1.0, 'v2': -1.0}, {'v1': 1.0, 'v2': 1.0}))


def test_apply_scale_assignment():
    scaled = apply_scale_assignment(EDGE, ScaleAssignment({'v1': 2.0, 'v2': 3.0}, {'v1': 3.0, 'v2': 2.0}))
    assert scaled.vertices['v1'] == VertexGeometricData(2.0, 4.0, 1.5, 3.0)
    assert scaled.edges == EDGE.edges
    original = special_ray_data(EDGE, 0, (1, 1, 1, 1), 6).self_similar
    rescaled = special_ray_data(scaled, 0, (1, 1, 1, 1), 6).self_similar
    assert rescaled.l0 / rescaled.l1 == pytest.approx(original.l0 / original.l1 * 2.0 / 3.0)
