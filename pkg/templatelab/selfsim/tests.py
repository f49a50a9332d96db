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

""" Contains tests of the selfsim package."""

from __future__ import annotations

import math
import numpy as np
import pytest

from templatelab.template.models import SelfSimilarData
from templatelab.develop.chains import QuarterPlaneCase
from templatelab.selfsim.analysis import (PsiPair, in_A_beta, a_beta_slice, triviality, exact_tits_angle, case_I_angle_condition,
                                          a_halfpi_symmetry_check)

CASE_I = SelfSimilarData(1.0, 1.0, math.tan(1.2), 1.0, math.tan(0.1))
TRIVIAL = SelfSimilarData(math.pi / 2, 1.0, 0.0, 1.0, 0.0)


def from_psi(beta: float, psi0: float, psi1: float, l0: float = 1.0, l1: float = 1.0) -> SelfSimilarData:
    return SelfSimilarData(beta, l0, l0 * math.tan(psi0), l1, l1 * math.tan(psi1))


@pytest.mark.parametrize('beta', [0.2, 1.0, math.pi / 2, 2.5])
def test_centre_is_member(beta):
    membership = in_A_beta(PsiPair(0.0, 0.0), beta)
    assert membership.member
    assert membership.margin == pytest.approx(min(beta, math.pi - beta))


def test_out_of_square_rejected():
    with pytest.raises(ValueError):
        in_A_beta(PsiPair(math.pi / 2, 0.0), 1.0)
    with pytest.raises(ValueError):
        in_A_beta(PsiPair(0.0, 0.0), math.pi)


def test_level_of_large_x():
    beta = 1.1
    x = math.pi / 2 - 1e-7
    assert in_A_beta(PsiPair(x, math.pi / 2 - beta), beta).member
    assert not in_A_beta(PsiPair(x, math.pi / 2 - beta + 1e-3), beta).member
    assert not in_A_beta(PsiPair(x, math.pi / 2 - beta - 1e-3), beta).member


def test_corner_at_three_fifths_pi():
    beta = 3 * math.pi / 5
    assert in_A_beta(PsiPair(-math.pi / 10, math.pi / 2 - 1e-6), beta).margin == pytest.approx(1e-6, abs=1e-9)


def test_slice_matches_membership():
    beta = 0.8
    for x in np.linspace(-1.5, 1.5, 13):
        lo, hi = a_beta_slice(x, beta)
        assert lo <= hi
        for y in np.linspace(-1.55, 1.55, 63):
            assert in_A_beta(PsiPair(x, y), beta).member == (lo <= y <= hi)


def test_trivial_verdict():
    verdict = triviality(TRIVIAL)
    assert verdict.trivial and verdict.case is None and verdict.margin > 0
    assert exact_tits_angle(TRIVIAL) == 0.0


def test_case_i_verdict():
    verdict = triviality(CASE_I)
    assert not verdict.trivial
    assert verdict.case == QuarterPlaneCase.I
    assert verdict.margin == pytest.approx(-0.1)
    assert exact_tits_angle(CASE_I) == pytest.approx(0.01134, abs=1e-4)


@pytest.mark.parametrize('psi0, psi1, case', [(1.2, 0.1, QuarterPlaneCase.I), (-1.2, -1.2, QuarterPlaneCase.II),
                                              (0.1, 1.2, QuarterPlaneCase.III), (1.2, 1.2, QuarterPlaneCase.IV)])
def test_cases_and_angles(psi0, psi1, case):
    s = from_psi(1.0, psi0, psi1)
    verdict = triviality(s)
    assert verdict.case == case
    angle = exact_tits_angle(s)
    assert 0.0 < angle <= s.beta


@pytest.mark.parametrize('c', [0.1, 3.0, 17.0])
def test_tits_angle_is_homothety_invariant(c):
    for s in (CASE_I, from_psi(1.0, 1.2, 1.2, 2.0, 0.5)):
        assert exact_tits_angle(s.scaled(c)) == pytest.approx(exact_tits_angle(s), abs=1e-10)


def test_tits_angle_is_monotone_in_psi0():
    def angle(psi0: float) -> float:
        return exact_tits_angle(SelfSimilarData(1.0, math.cos(psi0), math.sin(psi0), math.cos(0.1), math.sin(0.1)))

    values = [angle(psi0) for psi0 in (1.2, 1.3, 1.4, 1.5, 1.55)]
    assert values == sorted(values)
    assert values[0] == pytest.approx(0.0167, abs=1e-3)
    assert values[-1] == pytest.approx(0.0758, abs=1e-3)


def test_case_i_condition():
    condition = case_I_angle_condition(CASE_I)
    assert condition.theta0 + condition.theta1 + condition.theta2 == pytest.approx(math.pi - 0.1)
    assert condition.satisfied and not condition.boundary
    assert not case_I_angle_condition(TRIVIAL).satisfied


def test_case_i_condition_agrees_with_verdict():
    for beta in (0.5, 1.0, 2.0):
        for psi0 in np.linspace(-1.4, 1.4, 9):
            for psi1 in np.linspace(-1.4, 1.4, 9):
                s = from_psi(beta, psi0, psi1)
                verdict = triviality(s)
                assert case_I_angle_condition(s).satisfied == (verdict.case == QuarterPlaneCase.I)


def test_halfpi_symmetry():
    rng = np.random.default_rng(7)
    samples = [PsiPair(*xy) for xy in rng.uniform(-1.5, 1.5, size=(1000, 2))]
    assert all(a_halfpi_symmetry_check(1.0, sample, 1.0) for sample in samples)
    assert all(a_halfpi_symmetry_check(3.0, sample) for sample in samples)


def test_halfpi_symmetry_fails_off_halfpi():
    assert not a_halfpi_symmetry_check(3.0, PsiPair(0.0, 0.95), 1.0)
