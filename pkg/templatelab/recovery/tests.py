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

""" Contains tests of the recovery package."""

from __future__ import annotations

import math
import numpy as np
import pytest

from templatelab.base.definitions import OracleError, BudgetExhausted, DEFAULT_TOLERANCE
from templatelab.selfsim.analysis import triviality
from templatelab.groups.graphs import VertexGeometricData, EdgeSpec, AdmissibleGraphSpec
from templatelab.groups.special import special_ray_data
from templatelab.recovery.oracles import SyntheticOracle, QueryCounter, build_oracle_from_geometric_data, check_query
from templatelab.recovery.recover import META, RecoveredData, recover, _start, _locate

EXAMPLE = SyntheticOracle(1.0, (1.0, 1.0, 1.0, 1.0), (0.5, -0.3))
V1 = VertexGeometricData(1.5, 2.0, 0.7, 1.3)
V2 = VertexGeometricData(1.0, 0.8, -0.2, 0.6)


def random_oracle(rng: np.random.Generator) -> SyntheticOracle:
    beta = rng.choice([rng.uniform(0.05, math.pi / 2 - 0.05), rng.uniform(math.pi / 2 + 0.05, math.pi - 0.05)])
    return SyntheticOracle(float(beta), tuple(rng.uniform(0.5, 2.0, 4).tolist()),
                           (float(rng.uniform(0.2, 2.0)), float(rng.uniform(-2.0, 2.0)))).check()


def assert_recovered(result: RecoveredData, oracle: SyntheticOracle, tolerance: float = 1e-3):
    r1, r2, c1, c2 = oracle.ratios
    assert result.beta_hat == pytest.approx(oracle.beta, abs=1e-4)
    assert result.r1 == pytest.approx(r1, abs=tolerance)
    assert result.r2 == pytest.approx(r2, abs=tolerance)
    assert result.cross is not None
    assert result.cross == pytest.approx((c1, c2), abs=tolerance)
    assert result.residual <= 1e-6


def test_example_membership():
    assert EXAMPLE((1.0, 0.3, 1.0, 0.0))
    assert EXAMPLE((1.0, 0.3, 1.0, 1.0))
    assert not EXAMPLE((1.0, 0.3, 1.0, 2.0))
    assert EXAMPLE.psi((1.0, 1.8, 1.0, 1.0)) == pytest.approx((math.atan(1.0), math.pi / 4))


@pytest.mark.parametrize('x', [(0.0, 1.0, 1.0, 1.0), (1.0, 1.0, -1.0, 1.0), (1.0, math.inf, 1.0, 1.0), (1.0, 1.0, 1.0)])
def test_query_outside_domain(x):
    with pytest.raises(ValueError):
        check_query(x)


@pytest.mark.parametrize('parameters', [(0.0, (1, 1, 1, 1), (1, 0)), (1.0, (1, 0, 1, 1), (1, 0)), (1.0, (1, 1, 1, 1), (-1, 0)),
                                        (1.0, (1, 1, 1), (1, 0))])
def test_invalid_oracle(parameters):
    with pytest.raises(ValueError):
        SyntheticOracle(*parameters).check()


def test_oracle_file(tmp_path):
    path = EXAMPLE.write(tmp_path / 'oracle.json')
    assert SyntheticOracle.read(path) == EXAMPLE
    with pytest.raises(ValueError):
        SyntheticOracle.from_dict({'beta': 1.0, 'a': [1, 1, 1, 1]})


def test_query_counter():
    query = QueryCounter(EXAMPLE, 2)
    query(1.0, 0.3, 1.0, 0.0)
    query(1.0, 0.3, 1.0, 0.0)
    assert query.count == 2
    with pytest.raises(BudgetExhausted):
        query(1.0, 0.3, 1.0, 0.0)


def test_example_levels():
    query = QueryCounter(EXAMPLE, 400000)
    located = _locate(query, *_start(query, META), META)
    assert located.x4_0 == pytest.approx(1.0 / math.tan(1.0), abs=1e-6)
    assert located.x4_0 == pytest.approx(0.6421, abs=1e-4)
    assert located.x4_1 == pytest.approx(-0.4577, abs=1e-4)
    assert located.x2_1 == pytest.approx(1.5 / math.tan(1.0) + 0.3, abs=1e-6)


def test_example():
    result = recover(EXAMPLE)
    assert_recovered(result, EXAMPLE)
    assert result.cross == pytest.approx((0.5, -0.3), abs=1e-3)
    assert 0 < result.queries <= 400000


def test_beta_above_half_pi():
    oracle = SyntheticOracle(2.2, (0.7, 1.6, 1.2, 0.9), (1.1, 0.4))
    assert_recovered(recover(oracle), oracle)


def test_half_pi_has_no_cross_ratios():
    oracle = SyntheticOracle(math.pi / 2, (1.3, 0.8, 1.0, 1.7), (0.5, -0.3))
    result = recover(oracle)
    assert result.beta_hat == math.pi / 2
    assert result.cross is None
    assert result.r1 == pytest.approx(0.5 / 1.3, abs=1e-3)
    assert result.r2 == pytest.approx(-0.3 / 0.8, abs=1e-3)
    assert result.residual <= 1e-6


def test_cross_contract():
    for oracle in (EXAMPLE, SyntheticOracle(math.pi / 2, (1.0, 1.0, 1.0, 1.0), (0.5, -0.3))):
        result = recover(oracle)
        assert (result.cross is not None) == (abs(result.beta_hat - math.pi / 2) > 10 * DEFAULT_TOLERANCE.eps_angle)


def test_all_member():
    with pytest.raises(OracleError, match='degenerate oracle'):
        recover(lambda x: True)


def test_none_member():
    with pytest.raises(OracleError, match='degenerate oracle'):
        recover(lambda x: False)


def test_inconsistent():
    def oracle(x):
        return EXAMPLE(x) != (x[0] > 5.0)

    with pytest.raises(OracleError, match='residual'):
        recover(oracle)


def test_budget():
    with pytest.raises(BudgetExhausted):
        recover(EXAMPLE, probe_budget=500)


def test_deterministic():
    assert recover(EXAMPLE) == recover(EXAMPLE)


def test_report(tmp_path):
    result = recover(EXAMPLE)
    path = result.write(tmp_path / 'recovered.json')
    assert path.read_text(encoding='utf-8').count('"beta_hat"') == 1
    assert result.to_dict()['cross'] == list(result.cross)


def test_round_trip():
    rng = np.random.default_rng(0)
    for _ in range(50):
        oracle = random_oracle(rng)
        assert_recovered(recover(oracle), oracle)


def test_geometric_oracle_matches_special_rays():
    spec = AdmissibleGraphSpec({'v1': V1, 'v2': V2}, (EdgeSpec('v1', 'v2', 1.2),))
    oracle = build_oracle_from_geometric_data(V1, V2, 1.2)
    rng = np.random.default_rng(1)
    for _ in range(200):
        pqrs = (float(rng.uniform(0.01, 3.0)), float(rng.normal(scale=2.0)), float(rng.uniform(0.01, 3.0)), float(rng.normal(scale=2.0)))
        rays = special_ray_data(spec, 0, pqrs, 6)
        verdict = triviality(rays.self_similar)
        if abs(verdict.margin) > 1e-9:
            assert oracle(pqrs) == verdict.trivial


@pytest.mark.parametrize('flipped', ['v1', 'v2'])
def test_negative_tau_zeta_is_reoriented(flipped, caplog):
    v1 = V1._replace(tau_zeta=-V1.tau_zeta) if flipped == 'v1' else V1
    v2 = V2._replace(tau_zeta=-V2.tau_zeta) if flipped == 'v2' else V2
    with caplog.at_level('INFO', logger='templatelab.recovery.oracles'):
        oracle = build_oracle_from_geometric_data(v1, v2, 1.2)
    assert 'Reorienting zeta' in caplog.text
    assert oracle == build_oracle_from_geometric_data(V1, V2, 1.2)
    assert oracle.a[1] > 0.0 and oracle.a[3] > 0.0
    spec = AdmissibleGraphSpec({'v1': v1, 'v2': v2}, (EdgeSpec('v1', 'v2', 1.2),))
    rng = np.random.default_rng(2)
    checked = 0
    for _ in range(200):
        p, q, r, s = (float(rng.uniform(0.01, 3.0)), float(rng.normal(scale=2.0)), float(rng.uniform(0.01, 3.0)), float(rng.normal(scale=2.0)))
        mirrored = (p, -q, r, s) if flipped == 'v1' else (p, q, r, -s)
        verdict = triviality(special_ray_data(spec, 0, mirrored, 6).self_similar)
        if abs(verdict.margin) > 1e-9:
            assert oracle((p, q, r, s)) == verdict.trivial
            checked += 1
    assert checked > 100


def test_positive_tau_zeta_is_silent(caplog):
    with caplog.at_level('INFO', logger='templatelab.recovery.oracles'):
        build_oracle_from_geometric_data(V1, V2, 1.2)
    assert 'Reorienting zeta' not in caplog.text


def test_geometric_round_trip():
    result = recover(build_oracle_from_geometric_data(V1, V2, 1.2))
    assert result.beta_hat == pytest.approx(1.2, abs=1e-4)
    assert result.r1 == pytest.approx(V1.mls_sigma / V1.mls_delta, abs=1e-3)
    assert result.r2 == pytest.approx(V1.tau_sigma / V1.tau_zeta, abs=1e-3)
    assert result.cross == pytest.approx((V1.mls_sigma / V1.tau_zeta, V1.tau_sigma / V1.mls_delta), abs=1e-3)


def test_geometric_half_pi():
    result = recover(build_oracle_from_geometric_data(V1, V2, math.pi / 2))
    assert result.cross is None
    assert result.r1 == pytest.approx(V1.mls_sigma / V1.mls_delta, abs=1e-3)
    assert result.r2 == pytest.approx(V1.tau_sigma / V1.tau_zeta, abs=1e-3)


def test_geometric_scale_invariance():
    plain, scaled = (recover(build_oracle_from_geometric_data(v1, V2, 0.9)) for v1 in (V1, V1.scaled(5.0, 5.0)))
    assert scaled.r1 == pytest.approx(plain.r1, abs=1e-6)
    assert scaled.r2 == pytest.approx(plain.r2, abs=1e-6)


def test_invalid_geometric_data():
    with pytest.raises(ValueError):
        build_oracle_from_geometric_data(VertexGeometricData(0.0, 1.0, 0.0, 1.0), V2, 1.0)
    with pytest.raises(ValueError):
        build_oracle_from_geometric_data(V1, VertexGeometricData(1.0, 1.0, 0.0, 0.0), 1.0)
