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

""" Contains tests of the torus package."""

from __future__ import annotations

import math
import numpy as np
import pandas as pd
import pytest

from templatelab.base.classes import Report
from templatelab.template.models import validate
from templatelab.develop.chains import QuarterPlaneCase
from templatelab.torus.complex import (TorusComplexConfig, build_torus_template, apply_shift_map, best_line, best_ray_deviation,
                                       divergence_experiment, torus_graph)


@pytest.fixture(scope='module')
def report():
    return divergence_experiment(TorusComplexConfig(r=0.1, horizon=1024))


@pytest.fixture(scope='module')
def torus():
    return build_torus_template(TorusComplexConfig(horizon=64))


def test_staircase(torus):
    t = torus.template
    assert t.n_walls == 65
    assert t.alphas == (None,) + (math.pi / 2,) * 64
    assert t.widths == (0.0,) * 64
    multiples = [eps / math.pi for eps in t.epss]
    assert all(abs(m - round(m)) < 1e-9 and round(m) % 2 == 1 and m > 0 for m in multiples)
    assert validate(t) == []


def test_first_choices(torus):
    assert torus.template.epss[:3] == pytest.approx((math.pi, 3 * math.pi, 5 * math.pi))
    assert all(later > earlier for earlier, later in zip(torus.lengths, torus.lengths[1:]))
    assert all(length >= i for i, length in enumerate(torus.lengths, start=1))
    assert torus.margin > 0.0


def test_trace(torus):
    trace = torus.trace()
    assert trace.depth == 64
    assert set(trace.cases) == {QuarterPlaneCase.II}
    for crossing, length in zip(trace.crossings[1:-1], torus.lengths):
        assert crossing.t_exit - crossing.t_entry == pytest.approx(length)


def test_seed_moves_basepoint():
    assert TorusComplexConfig(itinerary_seed=1).basepoint != TorusComplexConfig(itinerary_seed=2).basepoint
    assert TorusComplexConfig(itinerary_seed=3).basepoint == TorusComplexConfig(itinerary_seed=3).basepoint


def test_zero_shift_is_the_ray(torus):
    trace = torus.trace()
    path = apply_shift_map(torus.template, trace, 0.0)
    for vertex in path.vertices():
        assert abs(trace.direction.cross(vertex - trace.basepoint)) < 1e-9


def test_jumps(torus):
    trace = torus.trace()
    path = apply_shift_map(torus.template, trace, 0.1)
    assert path.jumps == tuple(range(4, 65, 4))
    assert path.times == tuple(crossing.t_entry for crossing in trace.crossings if crossing.index in path.jumps)
    end = path.vertices()[-1] - trace.point(path.end)
    assert end.norm == pytest.approx(16 * 0.1)
    assert abs(end.dot(trace.direction)) < 1e-9
    assert path.frame(32)[-1].tolist() == [trace.crossings[32].t_entry, pytest.approx(0.8)]


def test_trace_beyond_template(torus):
    with pytest.raises(ValueError):
        apply_shift_map(torus.template.prefix(10), torus.trace(), 0.1)


def test_best_ray_deviation():
    assert best_ray_deviation(np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 0.0]])) == pytest.approx(0.5)
    assert best_ray_deviation(np.array([[0.0, 0.0], [1.0, 0.0], [3.0, 0.0]])) == 0.0
    assert best_ray_deviation(np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0], [3.0, 3.5]])) == pytest.approx(1 / 6)


def test_best_line():
    assert best_line(np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 0.0]])) == pytest.approx((0.5, 0.0, 0.5))
    assert best_line(np.array([[0.0, 0.2], [1.0, 0.2]])) == (0.0, 0.0, 0.2)


def test_divergence(report):
    assert [row.k for row in report.rows] == list(range(5, 11))
    assert [row.jumps for row in report.rows] == [2 ** k // 4 for k in range(5, 11)]
    deviations = report.deviations
    assert all(later > earlier for earlier, later in zip(deviations, deviations[1:]))
    assert deviations[-1] > 1.0


def test_zero_shift():
    assert divergence_experiment(TorusComplexConfig(r=0.0, horizon=256)).deviations == (0.0,) * 4


def test_homogeneity():
    single, double = (divergence_experiment(TorusComplexConfig(r=r, horizon=256)).deviations for r in (0.1, 0.2))
    for d, d2 in zip(single, double):
        assert abs(d2 - 2 * d) <= 1e-9 * d2


def test_negative_shift():
    positive, negative = (divergence_experiment(TorusComplexConfig(r=r, horizon=128)).deviations for r in (0.1, -0.1))
    assert negative == pytest.approx(positive, rel=1e-9)


def test_report_files(tmp_path):
    report = divergence_experiment(TorusComplexConfig(r=0.1, horizon=64), csv=tmp_path / 'divergence.csv', svg=tmp_path / 'torus.svg')
    df = pd.read_csv(tmp_path / 'divergence.csv')
    assert list(df.columns) == ['k', 'horizon', 'jumps', 'best_ray_deviation']
    assert df['horizon'].tolist() == [32, 64]
    assert df['best_ray_deviation'].tolist() == pytest.approx(list(report.deviations))
    assert '<svg' in (tmp_path / 'torus.svg').read_text(encoding='utf-8')


def test_report_folder(tmp_path):
    cfg = TorusComplexConfig(r=0.1, horizon=64)
    report = divergence_experiment(cfg, folder=tmp_path / 'divergence')
    stored = Report(tmp_path / 'divergence')
    assert stored.meta == cfg._asdict() | {'margin': report.torus.margin, 'jumps': len(report.path.jumps)}
    assert stored.frame('divergence').df['best_ray_deviation'].tolist() == pytest.approx(list(report.deviations))
    assert '<svg' in (tmp_path / 'divergence' / 'torus.svg').read_text(encoding='utf-8')


@pytest.mark.parametrize('cfg', [TorusComplexConfig(r=1.0), TorusComplexConfig(horizon=16), TorusComplexConfig(theta=0.0),
                                 TorusComplexConfig(theta=math.pi / 2), TorusComplexConfig(r=math.nan)])
def test_invalid_config(cfg):
    with pytest.raises(ValueError):
        build_torus_template(cfg)


def test_torus_graph():
    spec = torus_graph()
    spec.check()
    assert len(spec.vertices) == 4
    assert {edge.beta for edge in spec.edges} == {math.pi / 2}
