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

""" Contains tests of the user package."""

from __future__ import annotations

import json
import logging
import math
import pandas as pd
import pytest

from templatelab.template.models import TemplateData, SelfSimilarData, WallSpec, StripSpec
from templatelab.template import storage
from templatelab.recovery.oracles import SyntheticOracle
from templatelab.groups.graphs import VertexGeometricData, EdgeSpec, AdmissibleGraphSpec, write
from templatelab.base.classes import Report
from templatelab.user.cli import RunConfig, main
from templatelab.user.contexts import Timer

TEMPLATE = TemplateData(TemplateData.Kind.HALF, (WallSpec(None),) + (WallSpec(1.2),) * 6, (StripSpec(1.0, 0.3),) * 6)
CLUSTER = TemplateData(TemplateData.Kind.FINITE,
                       (WallSpec(None),) + tuple(WallSpec(1.0 if k % 2 else 2.0) for k in range(10)) + (WallSpec(None),),
                       (StripSpec(0.02, 0.0),) * 11)


def run(capsys, *argv) -> tuple:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, json.loads(captured.out) if code == 0 else captured.err


@pytest.fixture
def template(tmp_path):
    return storage.write(TEMPLATE, tmp_path / 'template.json')


def test_selfsim(capsys):
    code, content = run(capsys, 'selfsim', '--beta', '1.5707963', '--l0', '1', '--eps0', '0', '--l1', '1', '--eps1', '0')
    assert code == 0
    assert content['trivial'] is True
    assert content['tits_angle'] == 0.0


def test_selfsim_nontrivial(capsys):
    code, content = run(capsys, 'selfsim', '--beta', '1.0', '--l0', '1', '--eps0', str(math.tan(1.2)), '--l1', '1', '--eps1', str(math.tan(0.1)))
    assert code == 0
    assert content['trivial'] is False
    assert content['case'] == 'I'
    assert content['tits_angle'] > 0.0


def test_validate(capsys, template, tmp_path):
    assert run(capsys, 'validate', str(template)) == (0, {'valid': True, 'violations': []})
    bad = storage.write(TEMPLATE._replace(walls=(WallSpec(None), WallSpec(0.0)) + TEMPLATE.walls[2:]), tmp_path / 'bad.json')
    assert main(['validate', str(bad)]) == 1
    assert 'alpha out of (0,π) at wall 1' in json.loads(capsys.readouterr().out)['violations']


def test_unknown_flag(capsys):
    assert main(['selfsim', '--gamma', '1']) == 1
    assert 'usage' in capsys.readouterr().err


def test_missing_file(capsys, tmp_path):
    assert main(['validate', str(tmp_path / 'missing.json')]) == 1


def test_develop(capsys, template, tmp_path):
    code, content = run(capsys, 'develop', str(template), '--signs', '+,-,+,-,+,-', '--svg', str(tmp_path / 'chain.svg'))
    assert code == 0
    assert len(content['origins']) == 7
    assert content['cases'] == ['I', 'IV'] * 3
    assert (tmp_path / 'chain.svg').exists()


def test_develop_sign_mismatch(capsys, template):
    assert main(['develop', str(template), '--signs', '+,-']) == 1


def test_shoot(capsys, template):
    code, content = run(capsys, 'shoot', str(template), '--dir', '1.5', '--walls', '4')
    assert code == 0
    assert 'crossed' in content
    assert content['crossings'][0]['index'] == 0


def test_boundary(capsys, tmp_path):
    path = storage.write(SelfSimilarData(1.0, 1.0, math.tan(1.2), 1.0, math.tan(0.1)), tmp_path / 'selfsim.json')
    code, content = run(capsys, 'boundary', str(path), '--depth', '12', '--csv', str(tmp_path / 'boundary.csv'))
    assert code == 0
    assert 0.0 <= content['theta_lo'] <= content['theta_hi']
    assert list(pd.read_csv(tmp_path / 'boundary.csv').columns) == ['depth', 'theta_lo', 'theta_hi', 'branches']


def test_recover(capsys, tmp_path):
    oracle = SyntheticOracle(1.0, (1.0, 1.0, 1.0, 1.0), (0.5, -0.3)).write(tmp_path / 'oracle.json')
    code, content = run(capsys, 'recover', '--oracle', str(oracle), '--residual', '1e-6', '--out', str(tmp_path / 'recovered.json'))
    assert code == 0
    assert content['beta_hat'] == pytest.approx(1.0, abs=1e-4)
    assert json.loads((tmp_path / 'recovered.json').read_text(encoding='utf-8')) == content


def test_recover_residual_flag():
    assert RunConfig.parse(['recover', '--oracle', 'o.json', '--residual', '1e-4']).arguments['residual'] == 1e-4
    assert RunConfig.parse(['recover', '--oracle', 'o.json', '--tol', '1e-5']).arguments['residual'] == 1e-5
    assert RunConfig.parse(['recover', '--oracle', 'o.json']).arguments['residual'] == 1e-6


def test_recover_failure_exits_2(capsys, tmp_path):
    oracle = SyntheticOracle(1.0, (1.0, 1.0, 1.0, 1.0), (0.5, -0.3)).write(tmp_path / 'oracle.json')
    assert main(['recover', '--oracle', str(oracle), '--budget', '100']) == 2
    assert 'BudgetExhausted' in capsys.readouterr().err


def test_special_rays(capsys, tmp_path):
    spec = AdmissibleGraphSpec({'v1': VertexGeometricData(1.0, 2.0, 0.5, 1.0), 'v2': VertexGeometricData(1.0, 3.0, 0.0, 2.0)},
                               (EdgeSpec('v1', 'v2', 1.3),))
    graph = write(spec, tmp_path / 'graph.json')
    code, content = run(capsys, 'special-rays', '--graph', str(graph), '--edge', '0', '--pqrs', '1,1,1,1', '--walls', '6',
                        '--out', str(tmp_path / 'ray.json'))
    assert code == 0
    assert isinstance(content['trivial'], bool)
    assert storage.from_dict(content['self_similar']).beta == pytest.approx(1.3)
    assert storage.read(tmp_path / 'ray.json') == storage.from_dict(content['template'])


def test_torus_demo(capsys, tmp_path):
    code, content = run(capsys, 'torus-demo', '--r', '0.1', '--kmax', '6', '--csv', str(tmp_path / 'torus.csv'))
    assert code == 0
    assert [row['k'] for row in content['rows']] == [5, 6]
    assert pd.read_csv(tmp_path / 'torus.csv')['jumps'].tolist() == [8, 16]
    assert main(['torus-demo', '--kmax', '4']) == 1


def test_torus_demo_report(capsys, tmp_path):
    code, content = run(capsys, '--seed', '2', 'torus-demo', '--kmax', '6', '--report', str(tmp_path / 'torus'))
    assert code == 0
    report = Report(tmp_path / 'torus')
    assert report.meta['r'] == 0.1 and report.meta['horizon'] == 64 and report.meta['itinerary_seed'] == 2
    assert report.frame('divergence').df['jumps'].tolist() == [row['jumps'] for row in content['rows']]
    assert (tmp_path / 'torus' / 'torus.svg').exists()


def test_cluster_exp(capsys, tmp_path):
    path = storage.write(CLUSTER, tmp_path / 'cluster.json')
    argv = ['cluster-exp', str(path), '--range', '2..10', '--centre-wall', '1', '--radius', '0.3', '--samples', '1']
    code, content = run(capsys, *argv, '--rprime-mult', '4', '--report', str(tmp_path / 'cluster'))
    assert code == 0
    assert content['n_span'] == 8 and content['R_prime'] == pytest.approx(1.2)
    report = Report(tmp_path / 'cluster')
    assert report.meta['command'] == 'cluster-exp' and report.meta['n1'] == 4.0
    assert report.meta['min_normalized_excess'] == pytest.approx(content['normalized_excess'])
    assert list(report.frame('cluster').df.columns) == ['n_span', 'R_prime', 'excess', 'normalized_excess']
    assert main(argv + ['--rprime-mult', '2']) == 1


def test_deterministic(capsys, tmp_path):
    outputs = []
    for _ in range(2):
        assert main(['torus-demo', '--kmax', '5', '--csv', str(tmp_path / 'torus.csv')]) == 0
        outputs.append((capsys.readouterr().out, (tmp_path / 'torus.csv').read_bytes()))
    assert outputs[0] == outputs[1]


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv('TEMPLATE_LAB_SEED', '7')
    assert RunConfig.parse(['--seed', '3', 'torus-demo']).seed == 7
    monkeypatch.setenv('TEMPLATE_LAB_SEED', 'seven')
    with pytest.raises(ValueError):
        RunConfig.parse(['torus-demo'])


def test_log_level(monkeypatch):
    monkeypatch.setenv('TEMPLATE_LAB_LOG_LEVEL', 'debug')
    assert RunConfig.parse(['torus-demo']).log_level == 'DEBUG'
    assert RunConfig.parse(['--log-level', 'info', 'torus-demo']).log_level == 'INFO'
    with pytest.raises(ValueError):
        RunConfig.parse(['--log-level', 'loud', 'torus-demo'])


def test_timer(caplog):
    with caplog.at_level(logging.INFO, logger='templatelab'):
        with Timer('work'):
            pass
        with Timer('more work', is_inline=False):
            pass
        with Timer():
            pass
    assert [record.getMessage() for record in caplog.records] == ['Running work took 0:00:00.', 'Running more work...', '...took 0:00:00.']
