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

""" **Two point geodesics** in templates, and the angles measured with them.

A geodesic between points of a template is straight in some development of the pieces between them, or else bends only at
wall origins. So the search first tries every straight development, pruning quarter-plane prefixes whose directions are
empty, then runs a shortest path over the origins between the points.
"""

from __future__ import annotations

from templatelab.base.definitions import *
from templatelab.planar.geometry import PlanarPoint, ORIGIN
from templatelab.template.models import TemplateData, require_valid
from templatelab.develop.chains import QuarterPlaneCase, ChainState, START
from templatelab.geodesic.rays import Piece, TemplatePoint, Span, CrossingTrace, Tracer
from templatelab.geodesic.boundary import behind, pass_through
from enum import IntEnum, auto
import networkx as nx

logger = logging.getLogger(__name__)

META: Dict[str, Any] = {'branch_cap': 64}     #: Default keyword arguments.


class GeodesicResult(NamedTuple):
    """ A geodesic from the earlier to the later of two points along the chain."""

    class Kind(IntEnum):
        STRAIGHT = auto()
        BENT = auto()

    length: float
    breakpoints: Tuple[TemplatePoint, ...]  #: The wall origins the geodesic bends at.
    pieces: Tuple[CrossingTrace, ...]   #: One straight developed trace per piece between breakpoints.
    kind: GeodesicResult.Kind

    def point_at(self, tau: float) -> TemplatePoint:
        """ The point at arc length ``tau`` along this geodesic, clamped to its ends."""
        tau = min(max(tau, 0.0), self.length)
        for piece in self.pieces:
            if tau <= piece.reach:
                return piece.locate(tau)
            tau -= piece.reach
        return self.pieces[-1].locate(self.pieces[-1].reach)


class _Start(NamedTuple):
    point: PlanarPoint  #: The developed start point.
    state: ChainState   #: The near line of the first strip.
    span: Span
    leaves: bool        #: Whether the start point lies in a wall, which the trace must leave across ``state``.


def canonical(t: TemplateData, p: TemplatePoint, tol: ToleranceConfig = DEFAULT_TOLERANCE) -> TemplatePoint:
    """ Move a point on the boundary line of a strip to the wall glued there.

    Raises:
        ValueError: If ``p`` cannot be located in ``t``.
    """
    p = TemplatePoint(*p).check(t, tol)
    if p.piece == Piece.WALL:
        return p
    strip = t.strips[p.index]
    if p.h <= tol.eps_length:
        alpha = t.walls[p.index].alpha
        return TemplatePoint.on_wall(p.index, p.s) if alpha is None else TemplatePoint.on_wall(p.index, p.s * math.cos(alpha),
                                                                                               p.s * math.sin(alpha))
    if p.h >= strip.width - tol.eps_length:
        return TemplatePoint.on_wall(p.index + 1, p.s - t.offset(p.index))
    return p


def _starts(t: TemplateData, x: TemplatePoint, tol: ToleranceConfig) -> List[_Start]:
    """ The developments of ``x`` and the line it leaves its piece across. A start on a wall's exit line has two."""
    if x.piece == Piece.STRIP:
        return [_Start(PlanarPoint(x.s, x.h), START, Span(0.0, 0.0, Piece.STRIP, x.index, ORIGIN, START.direction, 1), False)]
    if x.index == 0:
        sign = -1 if x.h > 0.0 else 1
        return [_Start(PlanarPoint(x.s, -abs(x.h)), START, Span(0.0, 0.0, Piece.WALL, 0, ORIGIN, START.direction, sign), True)]
    alpha = t.walls[x.index].alpha
    if alpha is None:
        raise ValueError(f'Wall {x.index} has no exit line to leave across.')
    point, exit = PlanarPoint(x.s, x.h), START.direction.rotate(alpha)
    span = Span(0.0, 0.0, Piece.WALL, x.index, ORIGIN, START.direction, 1)
    cross = exit.cross(point)
    sides = (1, -1) if abs(cross) <= tol.eps_length else (-1 if cross > 0.0 else 1,)
    return [_Start(point, ChainState(ORIGIN, exit, side), span, True) for side in sides]


def _end(y: TemplatePoint, state: ChainState) -> PlanarPoint:
    """ The development of ``y``, from the exit state of the previous wall (on a strip) or the entered state (on a wall)."""
    if y.piece == Piece.STRIP:
        return state.origin + y.s * state.direction + y.h * state.normal
    return state.origin + y.s * state.direction + abs(y.h) * state.normal


def _verify(t: TemplateData, x: TemplatePoint, y: TemplatePoint, start: _Start, cases: Sequence[QuarterPlaneCase], end: PlanarPoint,
            tol: ToleranceConfig) -> Optional[CrossingTrace]:
    """ Trace the developed segment from ``start`` to ``end``, returning it if it is a path of the template."""
    length = (end - start.point).norm
    if length <= tol.eps_length:
        return None
    tracer = Tracer(start.point, (end - start.point) * (1.0 / length), start.span, tol)
    if start.leaves and tracer.leave(start.state, x.index) is not None:
        return None
    state, cases = start.state, iter(cases)
    for k in range(x.index + 1, y.index + 1):
        strip = t.strips[k - 1]
        entered = state.cross_strip(strip.width, t.offset(k - 1))
        if y.piece == Piece.WALL and k == y.index:
            chirality = entered.side * (-1 if y.h < 0.0 else 1)
            if tracer.enter(entered, k, None, chirality, check_origin=False) is not None:
                return None
            break
        case = next(cases)
        state = entered.turn(t.walls[k].alpha, case)
        if tracer.enter(entered, k, case.signs[0], case.signs[1] * entered.side) or tracer.exit(state, k, case):
            return None
    if tracer.t > length + tol.eps_length:
        return None
    return tracer.trace(length)


def _intrinsic(x: TemplatePoint, y: TemplatePoint) -> CrossingTrace:
    """ The straight segment between two points of one piece, in its intrinsic coordinates."""
    start, end = PlanarPoint(x.s, x.h), PlanarPoint(y.s, y.h)
    length = (end - start).norm
    direction = (end - start) * (1.0 / length) if length > 0.0 else START.direction
    return CrossingTrace(start, direction, (), (), (Span(0.0, length, x.piece, x.index, ORIGIN, START.direction, 1),))


def straight_segment(t: TemplateData, x: TemplatePoint, y: TemplatePoint, tol: ToleranceConfig = DEFAULT_TOLERANCE, **kwargs
                     ) -> Optional[CrossingTrace]:
    """ The shortest straight developed segment from ``x`` to ``y``, if any development makes one.

    Args:
        t: A valid template.
        x: The earlier point along the chain, canonical.
        y: The later point along the chain, canonical.
        tol: The tolerance policy.
        **kwargs: ``branch_cap``, the most quarter-plane prefixes kept alive.
    Returns: The CrossingTrace from ``x`` with reach its length, or None.
    Raises:
        BranchOverflow: If more than ``branch_cap`` prefixes survive some wall.
    """
    if x.piece == y.piece and x.index == y.index:
        return _intrinsic(x, y)
    options = META | kwargs
    best = None
    for start in _starts(t, x, tol):
        normal = start.state.normal.angle
        branches = [((), start.state, normal - HALF_PI, normal + HALF_PI)]
        for k in range(x.index + 1, y.index + 1):
            strip, survivors = t.strips[k - 1], []
            for cases, state, lo, hi in branches:
                entered = state.cross_strip(strip.width, t.offset(k - 1))
                if not behind(start.point, entered, tol):
                    continue
                if y.piece == Piece.WALL and k == y.index:
                    survivors.append((cases, entered, lo, hi))
                    continue
                for case in QuarterPlaneCase:
                    turned, new_lo, new_hi = pass_through(start.point, lo, hi, entered, t.walls[k].alpha, case, tol)
                    if new_hi - new_lo > tol.eps_angle:
                        survivors.append((cases + (case,), turned, new_lo, new_hi))
            if len(survivors) > options['branch_cap']:
                raise BranchOverflow(f'{len(survivors)} developments from {x} to {y} survive wall {k}.')
            branches = survivors
        for cases, state, _, _ in branches:
            trace = _verify(t, x, y, start, cases, _end(y, state), tol)
            if trace is not None and (best is None or trace.reach < best.reach):
                best = trace
    return best


def _bent(t: TemplateData, x: TemplatePoint, y: TemplatePoint, tol: ToleranceConfig, **kwargs) -> GeodesicResult:
    """ The shortest path from ``x`` to ``y`` which is straight between wall origins."""
    nodes = [x] + [TemplatePoint.on_wall(k) for k in range(x.index, y.index + 1) if x.position < 2 * k < y.position] + [y]
    graph = nx.DiGraph()
    for i, start in enumerate(nodes):
        for j in range(i + 1, len(nodes)):
            trace = straight_segment(t, start, nodes[j], tol, **kwargs)
            if trace is not None:
                graph.add_edge(i, j, weight=trace.reach, trace=trace)
    try:
        path = nx.dijkstra_path(graph, 0, len(nodes) - 1, weight='weight')
    except (nx.NetworkXNoPath, nx.NodeNotFound):
        raise ComputationError(f'No path of straight pieces joins {x} to {y} through wall origins.') from None
    pieces = tuple(graph.edges[i, j]['trace'] for i, j in zip(path[:-1], path[1:]))
    return GeodesicResult(sum(piece.reach for piece in pieces), tuple(nodes[i] for i in path[1:-1]), pieces, GeodesicResult.Kind.BENT)


def geodesic(t: TemplateData, x: TemplatePoint, y: TemplatePoint, tol: ToleranceConfig = DEFAULT_TOLERANCE, **kwargs) -> GeodesicResult:
    """ The geodesic between two points of a template.

    Args:
        t: A valid template.
        x: A point of ``t``.
        y: A point of ``t``.
        tol: The tolerance policy.
        **kwargs: ``branch_cap`` for the straight segment search.
    Returns: The GeodesicResult, running from whichever of ``x``, ``y`` comes first along the chain.
    Raises:
        ValueError: If ``t`` is invalid or either point cannot be located in it.
        BranchOverflow: If the straight segment search exceeds its cap.
    """
    require_valid(t, tol)
    x, y = sorted((canonical(t, x, tol), canonical(t, y, tol)), key=lambda point: point.position)
    trace = straight_segment(t, x, y, tol, **kwargs)
    if trace is not None:
        return GeodesicResult(trace.reach, (), (trace,), GeodesicResult.Kind.STRAIGHT)
    result = _bent(t, x, y, tol, **kwargs)
    logger.debug(f'Geodesic from {x} to {y} bends at {len(result.breakpoints)} origins.')
    return result


def distance(t: TemplateData, x: TemplatePoint, y: TemplatePoint, tol: ToleranceConfig = DEFAULT_TOLERANCE, **kwargs) -> float:
    return geodesic(t, x, y, tol, **kwargs).length


def law_of_cosines(a: float, b: float, c: float) -> float:
    """ The Euclidean angle opposite ``c`` in a triangle of sides ``a, b, c``, clipped for degenerate triangles."""
    if not (a > 0.0 and b > 0.0):
        raise ValueError(f'A comparison angle needs positive sides at its vertex, not {a} and {b}.')
    return math.acos(min(max((a * a + b * b - c * c) / (2.0 * a * b), -1.0), 1.0))


def comparison_angle(t: TemplateData, p: TemplatePoint, x: TemplatePoint, y: TemplatePoint, tol: ToleranceConfig = DEFAULT_TOLERANCE,
                     **kwargs) -> float:
    """ The angle at ``p`` of the Euclidean triangle with the side lengths of the geodesic triangle ``p, x, y``.

    Raises:
        ValueError: If ``x`` or ``y`` coincides with ``p``.
    """
    return law_of_cosines(distance(t, p, x, tol, **kwargs), distance(t, p, y, tol, **kwargs), distance(t, x, y, tol, **kwargs))


def tits_angle_estimate(t: TemplateData, ray1: CrossingTrace, ray2: CrossingTrace, horizon: float,
                        tol: ToleranceConfig = DEFAULT_TOLERANCE, **kwargs) -> float:
    """ Estimate the Tits angle between two rays by the comparison angle at their basepoint of their points at ``horizon``.

    Args:
        t: The half template both rays were shot in.
        ray1: A ray traced by ``shoot``.
        ray2: A ray traced by ``shoot`` from the same basepoint.
        horizon: The parameter of the points compared, within the walls both rays cross.
        tol: The tolerance policy.
    Returns: The comparison angle, nondecreasing in ``horizon``.
    Raises:
        ValueError: If the rays start at different points, or ``horizon`` is beyond the last wall either ray enters.
    """
    if not ray1.basepoint.is_close(ray2.basepoint, tol):
        raise ValueError(f'Rays start at different points {ray1.basepoint} and {ray2.basepoint}.')
    for ray in (ray1, ray2):
        if not 0.0 < horizon <= ray.crossings[-1].t_entry:
            raise ValueError(f'Horizon {horizon} is beyond the last wall entered, at {ray.crossings[-1].t_entry}.')
    basepoint = TemplatePoint.on_wall(0, *ray1.basepoint)
    return comparison_angle(t, basepoint, ray1.locate(horizon), ray2.locate(horizon), tol, **kwargs)


def horizon_schedule(start: float, count: int) -> List[float]:
    """ The doubling horizons ``start * 2^k`` for ``k < count``."""
    return [math.ldexp(start, k) for k in range(count)]
