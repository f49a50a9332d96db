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

""" **Special rays** and periodic itineraries: half templates generated from the geometric data of an admissible graph.

A special ray of an edge ``e = (v1, v2)`` and ``(p, q, r, s)`` alternates between the vertex spaces of ``v1`` and ``v2``, its
``2^(i-1)``-th returns translating by ``sigma delta^p zeta^q`` at ``v1`` and ``delta^r zeta^s`` at ``v2``. Its template has
every interior angle ``beta_e`` and strips, indexed from 1,

    ``l_(2i-1) = 2^(i-1) (MLS_v1(sigma) + |p| MLS_v1(delta))``,    ``l_(2i) = 2^(i-1) |r| MLS_v2(delta)``,
    ``eps_(2i+1) = 2^i (tau_v1(sigma) + q tau_v1(zeta))``,          ``eps_(2i) = 2^(i-1) s tau_v2(zeta)``.

A loop uses the data of ``v1`` at even indices too. ``eps_1`` is never defined and is set to 0, the anchor convention.
"""

from __future__ import annotations

from templatelab.base.definitions import *
from templatelab.template.models import TemplateData, WallSpec, StripSpec, SelfSimilarData
from templatelab.groups.graphs import AdmissibleGraphSpec, EdgeSpec, VertexGeometricData

logger = logging.getLogger(__name__)


class SpecialRays(NamedTuple):
    """ The half template of a special ray, whose strip ``j`` is strip ``j + 1`` of the ray."""
    template: TemplateData
    edge: EdgeSpec
    pqrs: Tuple[float, float, float, float]

    def l_hat(self, i: int) -> float:
        """ The width of strip ``i >= 1``."""
        return self.template.strips[i - 1].width

    def eps_hat(self, i: int) -> float:
        """ The displacement of strip ``i >= 1``."""
        return self.template.strips[i - 1].eps

    @property
    def self_similar(self) -> SelfSimilarData:
        """ The self-similar data ``(beta_e; l_3, eps_3, l_4, eps_4)`` whose expansion agrees with strips 3 onwards."""
        return SelfSimilarData(self.edge.beta, self.l_hat(3), self.eps_hat(3), self.l_hat(4), self.eps_hat(4))


def check_pqrs(pqrs: Sequence[float]) -> Tuple[float, float, float, float]:
    """ Returns ``pqrs`` as a tuple.

    Raises:
        ValueError: Unless ``pqrs`` is a finite point of ``R^4_0``, having ``p, r > 0``.
    """
    if len(pqrs) != 4:
        raise ValueError(f'{pqrs} is not a point of R^4.')
    p, q, r, s = (float(value) for value in pqrs)
    if not all(math.isfinite(value) for value in (p, q, r, s)):
        raise ValueError(f'{pqrs} is not finite.')
    if not (p > 0.0 and r > 0.0):
        raise ValueError(f'{pqrs} is outside R^4_0, which requires p > 0 and r > 0.')
    return p, q, r, s


def special_strip(v1: VertexGeometricData, v2: VertexGeometricData, pqrs: Tuple[float, float, float, float], i: int) -> StripSpec:
    """ Strip ``i >= 1`` of the special ray with data ``v1`` at odd and ``v2`` at even indices."""
    p, q, r, s = pqrs
    if i % 2:
        doublings = (i - 1) // 2
        eps = 0.0 if i == 1 else math.ldexp(v1.tau_sigma + q * v1.tau_zeta, doublings)
        return StripSpec(math.ldexp(v1.mls_sigma + abs(p) * v1.mls_delta, doublings), eps)
    doublings = i // 2 - 1
    return StripSpec(math.ldexp(abs(r) * v2.mls_delta, doublings), math.ldexp(s * v2.tau_zeta, doublings))


def special_ray_data(spec: AdmissibleGraphSpec, edge: int | EdgeSpec, pqrs: Sequence[float], n_walls: int) -> SpecialRays:
    """ The template of the special ray of ``edge`` and ``pqrs``.

    Args:
        spec: An admissible graph.
        edge: An edge of ``spec``, or its index. Its source is ``v1``.
        pqrs: ``(p, q, r, s)`` in ``R^4_0``.
        n_walls: The number of walls, at least 5 so strips 3 and 4 exist.
    Returns: The SpecialRays.
    Raises:
        ValueError: If ``pqrs`` is outside ``R^4_0``, ``n_walls < 5``, or ``edge`` is not an edge of ``spec``.
    """
    spec.check()
    edge, pqrs = spec.edge(edge), check_pqrs(pqrs)
    if n_walls < 5:
        raise ValueError(f'n_walls = {n_walls} must be at least 5.')
    v1 = spec.vertices[edge.source]
    v2 = v1 if edge.is_loop else spec.vertices[edge.target]
    walls = (WallSpec(None),) + (WallSpec(edge.beta),) * (n_walls - 1)
    strips = tuple(special_strip(v1, v2, pqrs, i) for i in range(1, n_walls))
    logger.debug(f'Special ray of {edge} at {pqrs}: l_3 = {strips[2].width}, eps_3 = {strips[2].eps}.')
    return SpecialRays(TemplateData(TemplateData.Kind.HALF, walls, strips), edge, pqrs)


def check_itinerary(spec: AdmissibleGraphSpec, itinerary: Sequence[int]) -> Tuple[EdgeSpec, ...]:
    """ The edges of a cyclic itinerary.

    Raises:
        ValueError: If the itinerary is empty, names an unknown edge, or two cyclically consecutive edges share no vertex.
    """
    if not itinerary:
        raise ValueError('An itinerary needs at least one edge.')
    edges = tuple(spec.edge(e) for e in itinerary)
    for i, edge in enumerate(edges):
        following = edges[(i + 1) % len(edges)]
        if not {edge.source, edge.target} & {following.source, following.target}:
            raise ValueError(f'Itinerary edges {itinerary[i]} and {itinerary[(i + 1) % len(edges)]} at positions {i}, '
                             f'{(i + 1) % len(edges)} share no vertex.')
    return edges


def periodic_template(spec: AdmissibleGraphSpec, itinerary: Sequence[int], overrides: Sequence[Tuple[float, float]], n_walls: int,
                      degenerate_ok: bool = False) -> TemplateData:
    """ A standard half template following a cyclic itinerary.

    Wall ``j >= 1`` lies between strips ``j - 1`` and ``j``, and carries the angle of the edge strip ``j - 1`` crosses. Strip
    widths and displacements are read cyclically from ``overrides``, which stand in for the ambient geometry.

    Args:
        spec: An admissible graph.
        itinerary: Edge indices, repeated cyclically.
        overrides: ``(width, eps)`` pairs, repeated cyclically. Pass at least ``n_walls - 1`` to set every strip.
        n_walls: The number of walls, at least 2.
        degenerate_ok: Whether strips may have width 0.
    Returns: The half template.
    Raises:
        ValueError: If consecutive edges share no vertex, ``overrides`` is empty, or ``n_walls < 2``.
    """
    spec.check()
    edges = check_itinerary(spec, itinerary)
    if not overrides:
        raise ValueError('overrides must hold at least one (width, eps) pair.')
    if n_walls < 2:
        raise ValueError(f'n_walls = {n_walls} must be at least 2.')
    walls = (WallSpec(None),) + tuple(WallSpec(edges[(j - 1) % len(edges)].beta) for j in range(1, n_walls))
    strips = tuple(StripSpec(*overrides[j % len(overrides)], degenerate_ok) for j in range(n_walls - 1))
    return TemplateData(TemplateData.Kind.HALF, walls, strips)
