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

""" **Closed form triviality** of self-similar templates, and their exact Tits angles.

The boundary set of the self-similar template with data ``(beta; l0, eps0, l1, eps1)`` is a single point exactly when
``(arctan(eps0 / l0), arctan(eps1 / l1))`` lies in the region ``A_beta`` cut out of the open square ``(-pi/2, pi/2)^2`` by

    ``x + beta >= y >= x - beta``   and   ``-x + (pi - beta) >= y >= -x - (pi - beta)``.

Otherwise the point lies in one of four components of the complement, labelled by the quarter-plane case of the development
whose even and odd origins span a convex cone. The cone angle is the Tits angle.
"""

from __future__ import annotations

from templatelab.base.definitions import *
from templatelab.template.models import SelfSimilarData
from templatelab.develop.chains import QuarterPlaneCase
from templatelab.develop.selfsimilar import develop_self_similar

logger = logging.getLogger(__name__)


class PsiPair(NamedTuple):
    """ The angles ``psi_i = arctan(eps_i / l_i)``."""
    psi0: float
    psi1: float

    @classmethod
    def of(cls, s: SelfSimilarData) -> PsiPair:
        return cls(math.atan2(s.eps0, s.l0), math.atan2(s.eps1, s.l1))


class Membership(NamedTuple):
    member: bool
    margin: float   #: The least of the four slacks. Non-negative iff ``member``.
    slacks: Tuple[float, float, float, float]   #: ``(x + beta - y, y - x + beta, pi - beta - x - y, x + y + pi - beta)``.


class TrivialityVerdict(NamedTuple):
    trivial: bool
    case: Optional[QuarterPlaneCase]    #: The component of the complement of A_beta, present iff not ``trivial``.
    margin: float   #: Least slack of the PsiPair against A_beta; its sign matches ``trivial``.
    psi: PsiPair


class CaseICondition(NamedTuple):
    theta0: float
    theta1: float
    theta2: float
    satisfied: bool     #: Whether ``theta0 + theta1 + theta2 < pi``.
    boundary: bool      #: Whether the sum equals pi within tolerance, in which case ``satisfied`` follows the margin sign.


#: The slack whose negativity places a point in each component of the complement of A_beta.
_CASE_OF_SLACK = (QuarterPlaneCase.III, QuarterPlaneCase.I, QuarterPlaneCase.IV, QuarterPlaneCase.II)


def _check_beta(beta: float):
    if not (math.isfinite(beta) and 0.0 < beta < math.pi):
        raise ValueError(f'beta = {beta} is outside (0, pi).')


def in_A_beta(p: PsiPair, beta: float) -> Membership:
    """ Test membership of ``p`` in the closed region A_beta.

    Args:
        p: A point of the open square ``(-pi/2, pi/2)^2``.
        beta: An angle in ``(0, pi)``.
    Returns: The Membership, with margin the least of the four slacks.
    Raises:
        ValueError: If ``p`` is outside the open square or ``beta`` outside ``(0, pi)``.
    """
    _check_beta(beta)
    x, y = p
    if not (abs(x) < HALF_PI and abs(y) < HALF_PI):
        raise ValueError(f'{p} is outside the open square (-pi/2, pi/2)^2.')
    slacks = (x + beta - y, y - x + beta, math.pi - beta - x - y, x + y + math.pi - beta)
    margin = min(slacks)
    return Membership(margin >= 0.0, margin, slacks)


def a_beta_slice(x: float, beta: float) -> Tuple[float, float]:
    """ The interval of ``y`` with ``(x, y)`` in the closure of A_beta. Never empty for ``|x| <= pi/2``."""
    return max(x - beta, -x - math.pi + beta, -HALF_PI), min(x + beta, math.pi - beta - x, HALF_PI)


def triviality(s: SelfSimilarData) -> TrivialityVerdict:
    """ Decide whether the self-similar template ``s`` has a one point boundary set.

    Raises:
        ValueError: If ``s`` is invalid.
    """
    s.check()
    psi = PsiPair.of(s)
    membership = in_A_beta(psi, s.beta)
    if membership.member:
        return TrivialityVerdict(True, None, membership.margin, psi)
    return TrivialityVerdict(False, _CASE_OF_SLACK[membership.slacks.index(membership.margin)], membership.margin, psi)


def exact_tits_angle(s: SelfSimilarData, n_origins: int = 8, tol: ToleranceConfig = DEFAULT_TOLERANCE) -> float:
    """ The Tits angle of the boundary interval of ``s``: 0 if trivial, else the angle of the developed cone.

    Raises:
        ValueError: If ``s`` is invalid.
        DevelopmentInconsistency: If the development under the verdict's case fails to double, or spans no cone.
    """
    verdict = triviality(s)
    if verdict.trivial:
        return 0.0
    development = develop_self_similar(s, verdict.case, n_origins, tol)
    if not development.is_cone:
        raise DevelopmentInconsistency(f'Case {verdict.case.name} development of {s} spans no cone, margin = {verdict.margin}.')
    return development.angle


def case_I_angle_condition(s: SelfSimilarData, tol: ToleranceConfig = DEFAULT_TOLERANCE) -> CaseICondition:
    """ The three angles of the triangle argument for case I, and whether they sum to less than pi."""
    psi = PsiPair.of(s.check())
    theta0, theta1, theta2 = HALF_PI - psi.psi0, s.beta, HALF_PI - math.atan2(-s.eps1, s.l1)
    excess = math.pi - (theta0 + theta1 + theta2)
    slack = psi.psi1 - psi.psi0 + s.beta
    return CaseICondition(theta0, theta1, theta2, slack < 0.0, abs(excess) <= tol.eps_angle)


def a_halfpi_symmetry_check(c: float, sample: PsiPair, beta: float = HALF_PI, tol: ToleranceConfig = DEFAULT_TOLERANCE) -> bool:
    """ Whether ``(x, y) -> (arctan(tan(x) / c), arctan(c tan(y)))`` preserves membership of ``sample`` in A_beta.

    Points within ``tol.boundary_margin`` of the boundary, before or after mapping, count as agreeing.

    Raises:
        ValueError: If ``c <= 0``.
    """
    if not c > 0.0:
        raise ValueError(f'c = {c} must be positive.')
    image = PsiPair(math.atan(math.tan(sample.psi0) / c), math.atan(c * math.tan(sample.psi1)))
    before, after = in_A_beta(sample, beta), in_A_beta(image, beta)
    if min(abs(before.margin), abs(after.margin)) <= tol.boundary_margin:
        return True
    return before.member == after.member
