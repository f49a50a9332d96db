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

""" **Geodesic rays** in templates, traced as straight lines in a development.

A straight developed ray is a geodesic of the template while it crosses each strip from its near line to its far line, and
passes through each wall inside the quarter plane of the development: in across the entry half-ray, out across the exit
half-ray.
"""

from __future__ import annotations

from templatelab.base.definitions import *
from templatelab.planar.geometry import PlanarPoint, ORIGIN
from templatelab.template.models import TemplateData, require_valid
from templatelab.develop.chains import QuarterPlaneCase, ChainState, Cases, as_cases, start_state
from enum import IntEnum, auto
import copy

logger = logging.getLogger(__name__)


class Piece(IntEnum):
    WALL = auto()
    STRIP = auto()


class TemplatePoint(NamedTuple):
    """ A point of a template in the intrinsic coordinates of its piece.

    On strip ``i``, ``s`` runs along the strip direction from the backward wall's origin and ``h`` in ``[0, width_i]`` is the
    distance from the backward gluing line. On wall ``i``, ``s`` runs along the entry gluing line from the origin and ``h`` is the
    signed distance from it, positive on the half-plane where the exit line's orientation points. On wall 0 the coordinates
    are those of its exit line, and strip 0 is glued on the side ``h > 0``. Wall 0 and strip 0 measure ``s`` from coordinate 0
    of that line, which lies ``anchor`` behind the anchor.
    """
    piece: Piece
    index: int
    s: float
    h: float

    @classmethod
    def on_wall(cls, index: int, s: float = 0.0, h: float = 0.0) -> TemplatePoint:
        return cls(Piece.WALL, index, float(s), float(h))

    @classmethod
    def on_strip(cls, index: int, s: float, h: float) -> TemplatePoint:
        return cls(Piece.STRIP, index, float(s), float(h))

    @property
    def position(self) -> int:
        """ The order of this point's piece along the chain: wall ``i`` is ``2i``, strip ``i`` is ``2i + 1``."""
        return 2 * self.index + (self.piece == Piece.STRIP)

    def check(self, t: TemplateData, tol: ToleranceConfig = DEFAULT_TOLERANCE) -> TemplatePoint:
        """ Returns ``self``, for chaining calls.

        Raises:
            ValueError: If this point cannot be located in ``t``.
        """
        pieces = t.n_walls if self.piece == Piece.WALL else len(t.strips)
        if not (0 <= self.index < pieces and math.isfinite(self.s) and math.isfinite(self.h)):
            raise ValueError(f'Cannot locate {self} in a template of {t.n_walls} walls.')
        if self.piece == Piece.STRIP and not -tol.eps_length <= self.h <= t.strips[self.index].width + tol.eps_length:
            raise ValueError(f'Cannot locate {self}: h is outside [0, {t.strips[self.index].width}].')
        return self


class Span(NamedTuple):
    """ The stretch ``[t0, t1]`` of a developed line spent in one piece, with the frame which locates its points."""
    t0: float
    t1: float
    piece: Piece
    index: int
    origin: PlanarPoint
    axis: PlanarPoint
    sign: int

    def locate(self, point: PlanarPoint) -> TemplatePoint:
        relative = point - self.origin
        return TemplatePoint(self.piece, self.index, self.axis.dot(relative), self.sign * self.axis.perp.dot(relative))


class FailureReason(IntEnum):
    PARALLEL = auto()
    BACKWARD = auto()
    BAND_NOT_CROSSED = auto()
    ORDER_VIOLATED = auto()
    ORIGIN_HIT = auto()


class WallCrossing(NamedTuple):
    index: int
    entry: Optional[PlanarPoint]
    exit: Optional[PlanarPoint]
    t_entry: float
    t_exit: float


class CrossingTrace(NamedTuple):
    """ A straight developed ray or segment, with its crossings and the pieces it passes through."""
    basepoint: PlanarPoint
    direction: PlanarPoint
    crossings: Tuple[WallCrossing, ...]
    cases: Tuple[QuarterPlaneCase, ...]
    spans: Tuple[Span, ...]

    @property
    def theta(self) -> float:
        return self.direction.angle

    @property
    def depth(self) -> int:
        """ The index of the last wall entered."""
        return self.crossings[-1].index

    @property
    def reach(self) -> float:
        """ The largest parameter at which the trace is located."""
        return self.spans[-1].t1

    def point(self, tau: float) -> PlanarPoint:
        return self.basepoint + tau * self.direction

    def locate(self, tau: float) -> TemplatePoint:
        """ The template point at parameter ``tau``.

        Raises:
            ValueError: If ``tau`` is beyond the traced stretch.
        """
        for span in self.spans:
            if span.t0 <= tau <= span.t1:
                return span.locate(self.point(tau))
        raise ValueError(f'Parameter {tau} is outside the traced stretch [0, {self.reach}].')


class ShotFailure(NamedTuple):
    wall: int
    reason: FailureReason
    partial: CrossingTrace

    @property
    def degenerate(self) -> bool:
        """ Whether the ray hits a wall origin."""
        return self.reason == FailureReason.ORIGIN_HIT


class Tracer:
    """ Intersects a straight developed line with successive gluing lines, checking the crossing predicates as it goes."""

    @property
    def t(self) -> float:
        """ The parameter of the last crossing."""
        return self._t

    @property
    def failure(self) -> Optional[Tuple[int, FailureReason]]:
        return self._failure

    def trace(self, end: float = math.inf) -> CrossingTrace:
        """ The trace so far, with its last span closed at parameter ``end``."""
        spans = self._spans + [Span(self._t, end, *self._open)]
        return CrossingTrace(self._origin, self._direction, tuple(self._crossings), tuple(self._cases), tuple(spans))

    def fork(self) -> Tracer:
        result = copy.copy(self)
        result._crossings, result._spans, result._cases = list(self._crossings), list(self._spans), list(self._cases)
        return result

    def _fail(self, index: int, reason: FailureReason) -> FailureReason:
        self._failure = (index, reason)
        return reason

    def _hit(self, state: ChainState, index: int) -> Tuple[Optional[FailureReason], float, PlanarPoint]:
        normal = state.normal
        rate = self._direction.dot(normal)
        if abs(rate) <= self._tol.eps_angle:
            return self._fail(index, FailureReason.PARALLEL), math.nan, ORIGIN
        if rate < 0.0:
            return self._fail(index, FailureReason.BACKWARD if not self._crossings else FailureReason.BAND_NOT_CROSSED), math.nan, ORIGIN
        t = normal.dot(state.origin - self._origin) / rate
        if t < self._t - self._tol.eps_length:
            return self._fail(index, FailureReason.BACKWARD if not self._crossings else FailureReason.ORDER_VIOLATED), math.nan, ORIGIN
        t = max(t, self._t)
        return None, t, self._origin + t * self._direction

    def _half_ray(self, state: ChainState, point: PlanarPoint, sign: Optional[int], index: int, check_origin: bool) -> Optional[FailureReason]:
        s = state.direction.dot(point - state.origin)
        if check_origin and abs(s) <= self._tol.eps_length:
            return self._fail(index, FailureReason.ORIGIN_HIT)
        if sign is not None and s * sign < 0.0:
            return self._fail(index, FailureReason.ORDER_VIOLATED)
        return None

    def _move(self, t: float, piece: Piece, index: int, origin: PlanarPoint, axis: PlanarPoint, sign: int):
        self._spans.append(Span(self._t, t, *self._open))
        self._open = (piece, index, origin, axis, sign)
        self._t = t

    def leave(self, state: ChainState, index: int) -> Optional[FailureReason]:
        """ Cross the exit line ``state`` of the starting wall ``index`` anywhere."""
        reason, t, point = self._hit(state, index)
        if reason is None:
            self._crossings.append(WallCrossing(index, None, point, math.nan, t))
            self._move(t, Piece.STRIP, index, state.origin, state.direction, state.side)
        return reason

    def enter(self, entered: ChainState, index: int, u: Optional[int], chirality: int, check_origin: bool = True
              ) -> Optional[FailureReason]:
        """ Cross the entry line ``entered`` of wall ``index``, on the half-ray ``u`` unless ``u`` is None."""
        reason, t, point = self._hit(entered, index)
        reason = reason or self._half_ray(entered, point, u, index, check_origin)
        if reason is None:
            self._crossings.append(WallCrossing(index, point, None, t, math.nan))
            self._move(t, Piece.WALL, index, entered.origin, entered.direction, chirality)
        return reason

    def exit(self, turned: ChainState, index: int, case: QuarterPlaneCase) -> Optional[FailureReason]:
        """ Cross the exit line ``turned`` of wall ``index`` on the half-ray of ``case``."""
        reason, t, point = self._hit(turned, index)
        reason = reason or self._half_ray(turned, point, case.signs[1], index, True)
        if reason is None:
            self._crossings[-1] = self._crossings[-1]._replace(exit=point, t_exit=t)
            self._cases.append(case)
            self._move(t, Piece.STRIP, index, turned.origin, turned.direction, turned.side)
        return reason

    def __init__(self, origin: PlanarPoint, direction: PlanarPoint, start: Span, tol: ToleranceConfig = DEFAULT_TOLERANCE):
        """ Start tracing.

        Args:
            origin: The developed start point.
            direction: The unit direction.
            start: The span of the starting piece. Its parameters are ignored.
            tol: The tolerance policy.
        """
        self._origin, self._direction, self._tol = PlanarPoint(*origin), PlanarPoint(*direction), tol
        self._t = 0.0
        self._open = tuple(start[2:])
        self._crossings: List[WallCrossing] = []
        self._spans: List[Span] = []
        self._cases: List[QuarterPlaneCase] = []
        self._failure: Optional[Tuple[int, FailureReason]] = None


def wall_0(t: TemplateData) -> Span:
    """ The frame of wall 0 of ``t`` in chain coordinates."""
    start = start_state(t)
    return Span(0.0, 0.0, Piece.WALL, 0, start.origin, start.direction, 1)


def _check_shot(t: TemplateData, basepoint: PlanarPoint, max_walls: int, tol: ToleranceConfig):
    require_valid(t, tol)
    if not 1 <= max_walls <= t.n_walls - 1:
        raise ValueError(f'max_walls = {max_walls} is outside [1, {t.n_walls - 1}].')
    if basepoint[1] > tol.eps_length:
        raise ValueError(f'Basepoint {basepoint} does not lie on wall 0, below its gluing line.')
    missing = [i for i in range(1, max_walls) if t.walls[i].alpha is None]
    if missing:
        raise ValueError(f'Cannot shoot through boundary wall {missing[0]}.')


def shoot(t: TemplateData, basepoint: PlanarPoint, direction: float, signs: Cases | str, max_walls: int,
          tol: ToleranceConfig = DEFAULT_TOLERANCE, **kwargs) -> CrossingTrace | ShotFailure:
    """ Trace the developed straight ray from ``basepoint`` at angle ``direction`` through walls ``1 .. max_walls``.

    Walls before ``max_walls`` are crossed in and out; wall ``max_walls`` is only entered.

    Args:
        t: A valid template.
        basepoint: A point of wall 0 in chain coordinates, so with ``y <= 0``.
        direction: The ray's angle in chain coordinates.
        signs: The quarter planes of walls ``1 .. max_walls - 1`` as a SignSequence or cases, or ``'auto'`` to search all four
            quarter planes per wall.
        max_walls: The last wall entered.
        tol: The tolerance policy.
        **kwargs: ``branch_cap`` for ``'auto'``.
    Returns: The CrossingTrace if every predicate holds, else the ShotFailure at the first failing wall.
    Raises:
        ValueError: If the template, basepoint, max_walls or signs are invalid.
        BranchOverflow: If ``'auto'`` holds more than ``branch_cap`` live developments.
    """
    basepoint = PlanarPoint(*basepoint)
    _check_shot(t, basepoint, max_walls, tol)
    ray = PlanarPoint.polar(direction)
    if isinstance(signs, str):
        if signs != 'auto':
            raise ValueError(f'Signs must be a sequence or "auto", not {signs!r}.')
        return _shoot_auto(t, basepoint, ray, max_walls, tol, kwargs.get('branch_cap', 64))
    cases = as_cases(signs)
    if len(cases) < max_walls - 1:
        raise ValueError(f'{len(cases)} signs given for {max_walls - 1} walls crossed.')
    tracer = Tracer(basepoint, ray, wall_0(t), tol)
    state = start_state(t)
    if tracer.leave(state, 0) is None:
        for i in range(1, max_walls + 1):
            strip = t.strips[i - 1]
            entered = state.cross_strip(strip.width, t.offset(i - 1))
            if i == max_walls:
                tracer.enter(entered, i, None, entered.side)
                break
            case = cases[i - 1]
            state = entered.turn(t.walls[i].alpha, case)
            if tracer.enter(entered, i, case.signs[0], case.signs[1] * entered.side) or tracer.exit(state, i, case):
                break
    if tracer.failure is not None:
        return ShotFailure(*tracer.failure, tracer.trace(tracer.t))
    return tracer.trace()


def _shoot_auto(t: TemplateData, basepoint: PlanarPoint, ray: PlanarPoint, max_walls: int, tol: ToleranceConfig, branch_cap: int
                ) -> CrossingTrace | ShotFailure:
    tracer, state = Tracer(basepoint, ray, wall_0(t), tol), start_state(t)
    if tracer.leave(state, 0) is not None:
        return ShotFailure(*tracer.failure, tracer.trace(tracer.t))
    live = [(tracer, state)]
    for i in range(1, max_walls + 1):
        strip = t.strips[i - 1]
        survivors, failure = [], None
        for tracer, state in live:
            entered = state.cross_strip(strip.width, t.offset(i - 1))
            if i == max_walls:
                tracer = tracer.fork()
                if tracer.enter(entered, i, None, entered.side) is None:
                    survivors.append((tracer, entered))
                failure = failure or tracer
                continue
            for case in QuarterPlaneCase:
                fork = tracer.fork()
                turned = entered.turn(t.walls[i].alpha, case)
                if fork.enter(entered, i, case.signs[0], case.signs[1] * entered.side) or fork.exit(turned, i, case):
                    failure = failure or fork
                else:
                    survivors.append((fork, turned))
        if not survivors:
            return ShotFailure(*failure.failure, failure.trace(failure.t))
        if len(survivors) > branch_cap:
            raise BranchOverflow(f'{len(survivors)} developments of the ray at angle {ray.angle} survive wall {i}.')
        live = survivors
    logger.debug(f'{len(live)} developments of the ray at angle {ray.angle} survive {max_walls} walls.')
    return live[0][0].trace()
