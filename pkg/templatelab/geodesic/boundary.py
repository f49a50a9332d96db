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

""" **Boundary intervals** of half templates, by branch-and-bound over the quarter planes crossed at each wall.

For each surviving branch (a prefix of quarter-plane cases) the directions at the basepoint whose developed rays cross every
wall so far form an open interval: the intersection, over walls, of the arcs of directions hitting the entry and exit
half-rays of each quarter plane. Empty intervals are pruned. The boundary set's Tits length is bracketed by the measure of
the union of surviving intervals.
"""

from __future__ import annotations

from templatelab.base.definitions import *
from templatelab.base.classes import Frame
from templatelab.planar.geometry import PlanarPoint, ORIGIN, signed_angle
from templatelab.template.models import TemplateData, require_valid
from templatelab.develop.chains import QuarterPlaneCase, ChainState, start_state

logger = logging.getLogger(__name__)

META: Dict[str, Any] = {'branch_cap': 64}     #: Default keyword arguments.
COLUMNS = ('depth', 'theta_lo', 'theta_hi', 'branches')    #: Boundary report header.


class DirectionInterval(NamedTuple):
    """ An open interval of ray angles at the basepoint."""
    lo: float
    hi: float
    wall_depth: int

    @property
    def width(self) -> float:
        return max(self.hi - self.lo, 0.0)


class BoundaryEstimate(NamedTuple):
    theta_lo: float
    theta_hi: float
    depth: int
    surviving_branches: int
    intervals: Tuple[DirectionInterval, ...]    #: The disjoint components of the union of surviving intervals.

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.theta_lo + self.theta_hi)


class Branch(NamedTuple):
    cases: Tuple[QuarterPlaneCase, ...]
    state: ChainState   #: The exit state of the last wall crossed.
    lo: float
    hi: float


def half_ray_arc(point: PlanarPoint, apex: PlanarPoint, direction: PlanarPoint, tol: ToleranceConfig = DEFAULT_TOLERANCE
                 ) -> Optional[Tuple[float, float]]:
    """ The open arc of angles at ``point`` of rays meeting the half-ray ``apex + s * direction``, ``s > 0``.

    Returns: ``(start, end)`` with ``start`` in (-pi, pi] and ``end - start`` in [0, pi), or None if ``point`` is on the line.
    """
    relative = apex - point
    cross = relative.cross(direction)
    if abs(cross) <= tol.eps_length * max(relative.norm, 1.0):
        return None
    length = abs(signed_angle(relative.unit(tol), direction))
    start = relative.angle if cross > 0.0 else direction.angle
    return start, start + length


def clip(lo: float, hi: float, arc: Optional[Tuple[float, float]]) -> Tuple[float, float]:
    """ Intersect ``(lo, hi)``, an interval of length at most pi, with ``arc`` shifted by whole turns to meet it."""
    if arc is None:
        return lo, lo
    start = lo - math.pi + (arc[0] - lo + math.pi) % TWO_PI
    return max(lo, start), min(hi, start + arc[1] - arc[0])


def behind(point: PlanarPoint, state: ChainState, tol: ToleranceConfig = DEFAULT_TOLERANCE) -> bool:
    """ Whether ``point`` is strictly on the side of ``state``'s line which its normal points away from."""
    return state.normal.dot(point - state.origin) < -tol.eps_length


def pass_through(point: PlanarPoint, lo: float, hi: float, entered: ChainState, alpha: float, case: QuarterPlaneCase,
                 tol: ToleranceConfig = DEFAULT_TOLERANCE) -> Tuple[ChainState, float, float]:
    """ Restrict the directions ``(lo, hi)`` at ``point`` to those passing through the quarter plane ``case`` of a wall.

    Returns: The wall's exit state and the restricted interval, which may be empty.
    """
    u, v = case.signs
    turned = entered.turn(alpha, case)
    if not behind(point, turned, tol):
        return turned, lo, lo
    lo, hi = clip(lo, hi, half_ray_arc(point, entered.origin, u * entered.direction, tol))
    lo, hi = clip(lo, hi, half_ray_arc(point, turned.origin, v * turned.direction, tol))
    return turned, lo, hi


def union(branches: Sequence[Branch], depth: int) -> Tuple[DirectionInterval, ...]:
    """ The disjoint components of the union of the branches' intervals."""
    merged = []
    for lo, hi in sorted((branch.lo, branch.hi) for branch in branches):
        if merged and lo <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    return tuple(DirectionInterval(lo, hi, depth) for lo, hi in merged)


def refine(t: TemplateData, basepoint: PlanarPoint, depth: int, tol: ToleranceConfig = DEFAULT_TOLERANCE, **kwargs
           ) -> Iterator[Tuple[int, List[Branch]]]:
    """ Yield the surviving branches after each wall ``1 .. depth``, sorted by case prefix.

    Raises:
        BranchOverflow: If more than ``branch_cap`` branches survive some wall.
    """
    options = META | kwargs
    point = PlanarPoint(*basepoint)
    branches = [Branch((), start_state(t), 0.0, math.pi)]
    for i in range(1, depth + 1):
        strip, alpha = t.strips[i - 1], t.walls[i].alpha
        survivors: Dict[Tuple, Branch] = {}
        for branch in branches:
            entered = branch.state.cross_strip(strip.width, t.offset(i - 1))
            if not behind(point, entered, tol):
                continue
            for case in QuarterPlaneCase:
                turned, lo, hi = pass_through(point, branch.lo, branch.hi, entered, alpha, case, tol)
                if hi - lo <= tol.eps_angle:
                    continue
                key = (round(lo, 12), round(hi, 12), round(turned.origin.x, 9), round(turned.origin.y, 9),
                       round(turned.direction.x, 12), round(turned.direction.y, 12), turned.side)
                survivors.setdefault(key, Branch(branch.cases + (case,), turned, lo, hi))
        branches = sorted(survivors.values(), key=lambda item: item.cases)
        if len(branches) > options['branch_cap']:
            raise BranchOverflow(f'{len(branches)} branches survive wall {i}, exceeding the cap of {options["branch_cap"]}.')
        logger.debug(f'{len(branches)} branches survive wall {i}.')
        yield i, branches


def _check(t: TemplateData, basepoint: PlanarPoint, depth: int, tol: ToleranceConfig):
    require_valid(t, tol)
    if depth < 2:
        raise ValueError(f'depth = {depth} must be at least 2.')
    if depth > t.n_walls - 1 or t.walls[depth].alpha is None:
        raise ValueError(f'depth = {depth} needs {depth + 1} walls with wall {depth} interior, but the template has {t.n_walls} walls.')
    if basepoint[1] > tol.eps_length:
        raise ValueError(f'Basepoint {basepoint} does not lie on wall 0, below its gluing line.')


def _estimates(t: TemplateData, basepoint: PlanarPoint, depth: int, tol: ToleranceConfig, **kwargs) -> Iterator[BoundaryEstimate]:
    measures = [math.pi]
    for i, branches in refine(t, basepoint, depth, tol, **kwargs):
        intervals = union(branches, i)
        theta_hi = sum(interval.width for interval in intervals)
        measures.append(theta_hi)
        theta_lo = min(max(0.0, 2.0 * theta_hi - measures[math.ceil(i / 2)]), theta_hi)
        yield BoundaryEstimate(theta_lo, theta_hi, i, len(branches), intervals)
        if not branches:
            for j in range(i + 1, depth + 1):
                yield BoundaryEstimate(0.0, 0.0, j, 0, ())
            return


def boundary_interval(t: TemplateData, basepoint: PlanarPoint = ORIGIN, depth: int = 50, tol: ToleranceConfig = DEFAULT_TOLERANCE,
                      **kwargs) -> BoundaryEstimate:
    """ Bracket the Tits length of the boundary set of the half template ``t``.

    Args:
        t: A valid half template with at least ``depth + 1`` walls.
        basepoint: A point of wall 0 in chain coordinates.
        depth: The number of walls crossed, at least 2.
        tol: The tolerance policy.
        **kwargs: ``branch_cap``, the most branches allowed to survive any wall.
    Returns: The BoundaryEstimate at ``depth``.
    Raises:
        ValueError: If ``depth < 2`` or the template is too short.
        BranchOverflow: If the branch cap is exceeded.
    """
    _check(t, basepoint, depth, tol)
    estimate = None
    for estimate in _estimates(t, basepoint, depth, tol, **kwargs):
        pass
    return estimate


def boundary_report(t: TemplateData, csv: Path | str, depths: Sequence[int] | None = None, basepoint: PlanarPoint = ORIGIN,
                    tol: ToleranceConfig = DEFAULT_TOLERANCE, **kwargs) -> Frame:
    """ Write the brackets at each of ``depths`` (by default every depth from 2 to the template's last wall) to ``csv``.

    Returns: The Frame written, with header ``depth,theta_lo,theta_hi,branches``.
    """
    depths = sorted(set(depths)) if depths else list(range(2, t.n_walls))
    _check(t, basepoint, depths[-1], tol)
    rows = [(estimate.depth, estimate.theta_lo, estimate.theta_hi, estimate.surviving_branches)
            for estimate in _estimates(t, basepoint, depths[-1], tol, **kwargs) if estimate.depth in depths]
    return Frame(csv, pd.DataFrame(rows, columns=COLUMNS))


def directions_inside(estimate: BoundaryEstimate, count: int) -> List[float]:
    """ ``count`` ray angles at the midpoints of equal parts of each surviving interval."""
    fractions = (np.arange(count) + 0.5) / count
    return [float(interval.lo + fraction * interval.width) for interval in estimate.intervals for fraction in fractions]
