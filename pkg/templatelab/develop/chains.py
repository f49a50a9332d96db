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

""" **Development** of a chain of walls and strips into the plane.

A transversal geodesic crosses wall ``i`` through one of the four quarter planes cut out by the wall's gluing lines at its
origin ``o_i``. The quarter plane is labelled by signs ``(u, v)``: it is spanned by ``u * d`` and ``v * e``, where ``d`` orients
the entry line and ``e`` the exit line. With ``b`` the side of the entry line the wall lies on (``+1`` for left), the exit line
is ``e = R(v * b * alpha) d`` and the next strip lies on side ``u * v * b`` of it.
"""

from __future__ import annotations

from templatelab.base.definitions import *
from templatelab.planar.geometry import PlanarPoint, OrientedLine, ORIGIN
from templatelab.template.models import TemplateData, require_valid
from enum import IntEnum


class QuarterPlaneCase(IntEnum):
    """ Quarter planes at a wall origin, labelled counterclockwise from the one spanned by the entry and exit orientations."""
    I = 1
    II = 2
    III = 3
    IV = 4

    @property
    def signs(self) -> Tuple[int, int]:
        """ ``(u, v)``: the quarter plane is spanned by ``u * d`` and ``v * e``."""
        return {1: (1, 1), 2: (-1, 1), 3: (-1, -1), 4: (1, -1)}[self.value]

    @classmethod
    def from_sign(cls, sign: int) -> QuarterPlaneCase:
        """ The quarter plane selected by a wall-reflection sign: ``+1`` is I, ``-1`` is IV."""
        if sign not in (1, -1):
            raise ValueError(f'A wall sign must be +1 or -1, not {sign}.')
        return cls.I if sign == 1 else cls.IV

    @classmethod
    def parse(cls, label: str | int | QuarterPlaneCase) -> QuarterPlaneCase:
        if isinstance(label, cls):
            return label
        if isinstance(label, int):
            return cls(label)
        try:
            return cls[str(label).strip().upper()]
        except KeyError:
            raise ValueError(f'Unknown quarter plane case {label!r}.') from None


class SignSequence(NamedTuple):
    """ One wall-reflection sign per interior wall."""
    signs: Tuple[int, ...]

    @classmethod
    def parse(cls, text: str) -> SignSequence:
        """ Parse a comma separated list such as ``+,-,+`` or ``1,-1,1``."""
        tokens = [token.strip() for token in text.split(',') if token.strip()]
        mapping = {'+': 1, '+1': 1, '1': 1, '-': -1, '-1': -1}
        try:
            return cls(tuple(mapping[token] for token in tokens))
        except KeyError as error:
            raise ValueError(f'Cannot parse sign {error.args[0]!r} in {text!r}.') from None

    @property
    def cases(self) -> Tuple[QuarterPlaneCase, ...]:
        return tuple(QuarterPlaneCase.from_sign(sign) for sign in self.signs)


Cases = Union[SignSequence, Sequence[QuarterPlaneCase]]


def as_cases(signs: Cases) -> Tuple[QuarterPlaneCase, ...]:
    return signs.cases if isinstance(signs, SignSequence) else tuple(QuarterPlaneCase.parse(case) for case in signs)


class ChainState(NamedTuple):
    """ The developed exit line of a wall (or the near line of a strip): origin, orientation, and the side the strip lies on."""
    origin: PlanarPoint
    direction: PlanarPoint
    side: int

    @property
    def line(self) -> OrientedLine:
        return OrientedLine(self.origin, self.direction)

    @property
    def normal(self) -> PlanarPoint:
        """ Unit normal pointing into the strip."""
        return self.side * self.direction.perp

    def cross_strip(self, width: float, eps: float) -> ChainState:
        """ Cross a strip to the next wall's origin. The result's direction orients the entry line and its side is the wall's side."""
        return ChainState(self.origin + width * self.normal + eps * self.direction, self.direction, self.side)

    def turn(self, alpha: float, case: QuarterPlaneCase) -> ChainState:
        """ Cross a wall, entered along ``self``, through quarter plane ``case``."""
        u, v = case.signs
        return ChainState(self.origin, self.direction.rotate(v * self.side * alpha), u * v * self.side)


START = ChainState(ORIGIN, PlanarPoint(1.0, 0.0), 1)    #: Exit line of wall 0: the x-axis, with strip 0 above it.


def start_state(t: TemplateData) -> ChainState:
    """ The exit state of wall 0 of ``t`` in chain coordinates, whose origin is coordinate 0 of the first gluing line.

    The anchor lies at the planar origin, so the origin sits ``anchor`` behind it along the x-axis.
    """
    return START if t.anchor == 0.0 else ChainState(PlanarPoint(-t.anchor, 0.0), START.direction, START.side)


class DevelopedWall(NamedTuple):
    """ A developed wall. The boundary wall 0 has no entry line, the last wall of a finite template no exit line."""
    index: int
    origin: PlanarPoint
    entry: Optional[OrientedLine]   #: The developed entry line, oriented by the incoming strip.
    exit: Optional[OrientedLine]    #: The developed exit line, oriented by the outgoing strip.
    side: int                       #: The side of ``entry`` the wall lies on.
    case: Optional[QuarterPlaneCase]

    @property
    def quarter_plane(self) -> Tuple[PlanarPoint, PlanarPoint]:
        """ The two unit vectors spanning the quarter plane traversed."""
        u, v = self.case.signs
        return u * self.entry.direction, v * self.exit.direction

    @property
    def chirality(self) -> int:
        """ ``c`` such that wall coordinates ``(s, h)`` develop to ``origin + s * d + h * c * J d``."""
        return self.case.signs[1] * self.side if self.case is not None else self.side


class DevelopedStrip(NamedTuple):
    """ A developed strip: a parallel band between its near and far lines."""
    index: int
    near: OrientedLine
    far: OrientedLine
    side: int       #: The side of ``near`` the band lies on.
    width: float
    eps: float

    @property
    def normal(self) -> PlanarPoint:
        return self.side * self.near.direction.perp

    def contains(self, point: PlanarPoint, tol: ToleranceConfig = DEFAULT_TOLERANCE) -> bool:
        h = self.normal.dot(PlanarPoint(*point) - self.near.anchor)
        return -tol.eps_length <= h <= self.width + tol.eps_length


class DevelopedChain(NamedTuple):
    """ The planar images of the gluing lines, origins and strip bands of a template under a choice of quarter planes."""
    walls: Tuple[DevelopedWall, ...]
    strips: Tuple[DevelopedStrip, ...]
    cases: Tuple[QuarterPlaneCase, ...]

    @property
    def origins(self) -> Tuple[PlanarPoint, ...]:
        return tuple(wall.origin for wall in self.walls)

    def state(self, i: int) -> ChainState:
        """ The exit state of wall ``i``, equivalently the near line of strip ``i``."""
        strip = self.strips[i]
        return ChainState(strip.near.anchor, strip.near.direction, strip.side)


def develop_from(t: TemplateData, start: int, state: ChainState, cases: Sequence[QuarterPlaneCase], stop: int | None = None
                 ) -> Tuple[Tuple[DevelopedWall, ...], Tuple[DevelopedStrip, ...]]:
    """ Develop walls ``start+1 .. stop`` of ``t``, given the exit state of wall ``start``.

    Args:
        t: The template.
        start: The wall whose exit state is given.
        state: The exit state of wall ``start``.
        cases: Quarter planes for the walls after ``start`` which have an exit line, in order.
        stop: The last wall developed, by default the last wall of ``t``.
    Returns: The developed walls ``start+1 .. stop`` and strips ``start .. stop-1``.
    """
    stop = t.n_walls - 1 if stop is None else stop
    walls, strips = [], []
    cases = iter(cases)
    for i in range(start, stop):
        strip = t.strips[i]
        entered = state.cross_strip(strip.width, t.offset(i))
        strips.append(DevelopedStrip(i, state.line, entered.line, state.side, strip.width, strip.eps))
        alpha = t.walls[i + 1].alpha
        case = next(cases, None) if alpha is not None else None
        if alpha is not None and case is None:
            raise ValueError(f'No quarter plane given for wall {i + 1}.')
        state = entered.turn(alpha, case) if case is not None else entered
        walls.append(DevelopedWall(i + 1, entered.origin, entered.line, None if case is None else state.line, entered.side, case))
    return tuple(walls), tuple(strips)


def develop_chain(t: TemplateData, signs: Cases, tol: ToleranceConfig = DEFAULT_TOLERANCE) -> DevelopedChain:
    """ Develop ``t`` isometrically into the plane.

    The exit line of wall 0 is the x-axis oriented +x with the anchor at the planar origin, and strip 0 occupies
    ``0 <= y <= width_0``.

    Args:
        t: A valid template.
        signs: A SignSequence, or a sequence of QuarterPlaneCases, with one entry per interior wall.
        tol: The tolerance policy.
    Returns: The DevelopedChain.
    Raises:
        ValueError: If ``t`` is invalid or the number of signs does not match the number of interior walls.
    """
    require_valid(t, tol)
    cases = as_cases(signs)
    if len(cases) != len(t.interior):
        raise ValueError(f'{len(cases)} signs given for {len(t.interior)} interior walls.')
    start = start_state(t)
    first = DevelopedWall(0, start.origin, None, start.line, -1, None)
    walls, strips = develop_from(t, 0, start, cases)
    return DevelopedChain((first,) + walls, strips, cases)
