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

""" Quarter-plane developments of self-similar templates, which conjugate the doubling of the template to multiplication by 2."""

from __future__ import annotations

from templatelab.base.definitions import *
from templatelab.planar.geometry import PlanarPoint, signed_angle
from templatelab.template.models import SelfSimilarData, expand_self_similar
from templatelab.develop.chains import QuarterPlaneCase, DevelopedChain, develop_chain

logger = logging.getLogger(__name__)

#: The quarter planes crossed at (even, odd) walls when the development is taken under each case.
PATTERNS: Dict[QuarterPlaneCase, Tuple[QuarterPlaneCase, QuarterPlaneCase]] = {
    QuarterPlaneCase.I: (QuarterPlaneCase.I, QuarterPlaneCase.III),
    QuarterPlaneCase.II: (QuarterPlaneCase.IV, QuarterPlaneCase.IV),
    QuarterPlaneCase.III: (QuarterPlaneCase.III, QuarterPlaneCase.I),
    QuarterPlaneCase.IV: (QuarterPlaneCase.II, QuarterPlaneCase.II),
}


class SelfSimilarDevelopment(NamedTuple):
    """ A self-similar development with its base vertex translated to the planar origin."""
    case: QuarterPlaneCase
    chain: DevelopedChain       #: The development in chain coordinates, before translation.
    vertex: PlanarPoint         #: The base vertex in chain coordinates.
    origins: Tuple[PlanarPoint, ...]    #: ``D(o_i) - vertex``.
    r_even: PlanarPoint         #: Unit direction of the ray through the even origins.
    r_odd: PlanarPoint          #: Unit direction of the ray through the odd origins.
    is_cone: bool               #: Whether the segment from ``o_0`` to ``o_2`` passes through the quarter plane at ``o_1``.

    @property
    def angle(self) -> float:
        """ The angle between ``r_even`` and ``r_odd``."""
        return abs(signed_angle(self.r_even, self.r_odd))


def wall_cases(case: QuarterPlaneCase, n_walls: int) -> Tuple[QuarterPlaneCase, ...]:
    """ The quarter planes crossed at walls ``1 .. n_walls - 1`` of a half template under ``case``."""
    pattern = PATTERNS[case]
    return tuple(pattern[i % 2] for i in range(1, n_walls))


def _crosses_open_cone(a: PlanarPoint, b: PlanarPoint, apex: PlanarPoint, u: PlanarPoint, v: PlanarPoint) -> bool:
    """ Whether the open segment ``ab`` meets the open cone spanned by ``u, v`` at ``apex``."""
    det = u.cross(v)
    if det == 0.0:
        return False

    def coordinates(point: PlanarPoint) -> Tuple[float, float]:
        w = point - apex
        return w.cross(v) / det, u.cross(w) / det

    lo, hi = 0.0, 1.0
    for start, end in zip(coordinates(a), coordinates(b)):
        # start + lam * (end - start) > 0 on (lo, hi).
        slope = end - start
        if slope == 0.0:
            if start <= 0.0:
                return False
            continue
        root = -start / slope
        if slope > 0.0:
            lo = max(lo, root)
        else:
            hi = min(hi, root)
    return hi > lo


def develop_self_similar(s: SelfSimilarData, case: QuarterPlaneCase, n_origins: int = 8,
                         tol: ToleranceConfig = DEFAULT_TOLERANCE) -> SelfSimilarDevelopment:
    """ Develop the self-similar template ``s`` through the quarter-plane pattern of ``case``.

    Args:
        s: The self-similar data.
        case: The component of the complement of A_beta whose pattern is followed.
        n_origins: The number of origins developed, at least 4.
        tol: The tolerance policy.
    Returns: The development, translated so the base vertex ``2 D(o_0) - D(o_2)`` is the planar origin.
    Raises:
        ValueError: If ``n_origins < 4`` or ``s`` is invalid.
        DevelopmentInconsistency: If some ``D(o_{i+2})`` is not ``2 D(o_i)`` within ``tol.eps_length`` relative.
    """
    if n_origins < 4:
        raise ValueError(f'n_origins = {n_origins} must be at least 4.')
    t = expand_self_similar(s, n_origins)
    chain = develop_chain(t, wall_cases(case, n_origins), tol)
    vertex = 2.0 * chain.origins[0] - chain.origins[2]
    origins = tuple(origin - vertex for origin in chain.origins)
    for i in range(n_origins - 2):
        gap = (origins[i + 2] - 2.0 * origins[i]).norm
        if gap > tol.eps_length * max(origins[i + 2].norm, 1.0):
            raise DevelopmentInconsistency(f'Case {case.name}: D(o_{i + 2}) - 2 D(o_{i}) has norm {gap:.3e}.')
    wall = chain.walls[1]
    u, v = wall.quarter_plane
    is_cone = _crosses_open_cone(chain.origins[0], chain.origins[2], wall.origin, u, v)
    logger.debug(f'Developed {s} under case {case.name}: cone = {is_cone}.')
    return SelfSimilarDevelopment(case, chain, vertex, origins, origins[2].unit(tol), origins[1].unit(tol), is_cone)


def valid_cases(s: SelfSimilarData, n_origins: int = 8, tol: ToleranceConfig = DEFAULT_TOLERANCE) -> List[SelfSimilarDevelopment]:
    """ The developments of ``s`` which span a genuine convex cone. Empty when ``s`` is trivial."""
    result = []
    for case in QuarterPlaneCase:
        try:
            development = develop_self_similar(s, case, n_origins, tol)
        except DevelopmentInconsistency as error:
            logger.debug(str(error))
            continue
        if development.is_cone and development.angle > tol.eps_angle:
            result.append(development)
    return result
