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

""" **Torus complexes** glued from four flat square tori in a cycle, and the divergence of their shifted geodesics.

Each gluing circle is a strip of width 0 and every wall meets its two circles at a right angle, so the development of a
geodesic is a staircase of quarter planes with origins an odd multiple of pi apart. Shifting the gluing of the fourth
torus to the first by ``r`` moves the developed path by ``r`` at every fourth wall, and no straight ray follows the result
to within bounded distance.
"""

from __future__ import annotations

from templatelab.base.definitions import *
from templatelab.base.classes import Frame, Report
from templatelab.planar.geometry import PlanarPoint
from templatelab.template.models import TemplateData
from templatelab.develop.chains import QuarterPlaneCase, ChainState, DevelopedChain, START, develop_chain
from templatelab.develop.svg import Overlay, emit_svg
from templatelab.geodesic.rays import CrossingTrace, shoot
from templatelab.groups.graphs import VertexGeometricData, EdgeSpec, AdmissibleGraphSpec
from templatelab.groups.special import periodic_template
from scipy.spatial import ConvexHull
import bisect

logger = logging.getLogger(__name__)

CASE = QuarterPlaneCase.II      #: The staircase turns through this quarter plane at every wall.
PERIOD = 4                      #: Walls per circuit of the four tori.
COLUMNS = ('k', 'horizon', 'jumps', 'best_ray_deviation')    #: Divergence report header.


def torus_graph() -> AdmissibleGraphSpec:
    """ Four square tori of side ``2 pi`` in a cycle, edge ``j`` gluing torus ``j`` to torus ``j + 1`` at a right angle."""
    square = VertexGeometricData(TWO_PI, TWO_PI, 0.0, TWO_PI)
    names = tuple(f'T{j}' for j in range(1, PERIOD + 1))
    return AdmissibleGraphSpec({name: square for name in names},
                               tuple(EdgeSpec(names[j], names[(j + 1) % PERIOD], HALF_PI) for j in range(PERIOD)))


class TorusComplexConfig(NamedTuple):
    r: float = 0.1              #: The shift of the gluing of the fourth torus to the first.
    horizon: int = 1024         #: The number of walls the ray crosses.
    itinerary_seed: int = 0     #: Seeds the ray's basepoint on wall 0.
    theta: float = 0.25 * math.pi   #: The ray's direction, in (0, pi/2).

    @property
    def K(self) -> int:
        """ The largest ``k`` with ``2^k <= horizon``."""
        return int(self.horizon).bit_length() - 1

    @property
    def basepoint(self) -> PlanarPoint:
        """ A point one unit below the gluing line of wall 0, within one unit to the left of its origin."""
        return PlanarPoint(-float(np.random.default_rng(self.itinerary_seed).uniform(0.0, 1.0)), -1.0)

    def check(self) -> TorusComplexConfig:
        """ Returns ``self``, for chaining calls.

        Raises:
            ValueError: Unless ``|r| < pi/4``, ``horizon >= 32`` and ``0 < theta < pi/2``.
        """
        if not (math.isfinite(self.r) and abs(self.r) < 0.25 * math.pi):
            raise ValueError(f'The shift r = {self.r} must satisfy |r| < pi/4.')
        if self.horizon < 2 ** 5:
            raise ValueError(f'horizon = {self.horizon} must be at least 32.')
        if not 0.0 < self.theta < HALF_PI:
            raise ValueError(f'The ray direction {self.theta} is outside (0, pi/2).')
        return self


class TorusTemplate(NamedTuple):
    """ The staircase template of a ray, with the crossing length of each wall ``1 .. horizon``."""
    template: TemplateData
    theta: float
    basepoint: PlanarPoint
    lengths: Tuple[float, ...]
    margin: float   #: The least distance from the ray to an origin.

    @property
    def horizon(self) -> int:
        return self.template.n_walls - 1

    def trace(self, tol: Optional[ToleranceConfig] = None) -> CrossingTrace:
        """ The ray shot through the template, crossing walls ``1 .. horizon - 1`` and entering wall ``horizon``.

        Args:
            tol: The tolerance policy, by default one whose length tolerance grows with the extent of the staircase.
        Raises:
            DevelopmentInconsistency: If the ray fails to cross the staircase.
        """
        if tol is None:
            tol = DEFAULT_TOLERANCE._replace(eps_length=max(DEFAULT_TOLERANCE.eps_length, 1e-14 * sum(self.template.epss)))
        result = shoot(self.template, self.basepoint, self.theta, (CASE,) * (self.horizon - 1), self.horizon, tol)
        if not isinstance(result, CrossingTrace):
            raise DevelopmentInconsistency(f'The torus ray fails at wall {result.wall}: {result.reason.name}.')
        return result

    def chain(self, n_walls: int) -> DevelopedChain:
        """ The development of the first ``n_walls`` walls."""
        prefix = self.template.prefix(n_walls)
        return develop_chain(prefix, (CASE,) * (n_walls - 1))


def _crossing(basepoint: PlanarPoint, ray: PlanarPoint, state: ChainState, eps: float) -> Optional[Tuple[float, float, float, ChainState]]:
    """ Where the ray enters and leaves the wall after a degenerate strip of displacement ``eps``, and how far it passes from
    the wall's origin. None unless it crosses both lines on the half-rays of ``CASE``."""
    entered = state.cross_strip(0.0, eps)
    turned = entered.turn(HALF_PI, CASE)
    times = []
    for line, sign in zip((entered, turned), CASE.signs):
        rate = ray.dot(line.normal)
        if rate <= 0.0:
            return None
        t = line.normal.dot(line.origin - basepoint) / rate
        if sign * line.direction.dot(basepoint + t * ray - line.origin) <= 0.0:
            return None
        times.append(t)
    return times[0], times[1], abs(ray.cross(entered.origin - basepoint)), turned


def build_torus_template(cfg: TorusComplexConfig, **kwargs) -> TorusTemplate:
    """ Choose the displacements of a staircase template greedily, so that a ray of slope ``cfg.theta`` crosses every
    quarter plane in a segment longer than the last, and at least as long as the wall's index.

    Each displacement is the least odd multiple of pi which achieves this, found by bisection since a longer displacement
    only lengthens the crossing. Only positive multiples keep the ray inside the staircase.

    Args:
        cfg: The configuration.
        **kwargs: ``max_multiple``, bounding the multiples of pi tried.
    Returns: The TorusTemplate, whose template has ``cfg.horizon + 1`` walls.
    Raises:
        ValueError: If ``cfg`` is invalid.
        ConvergenceError: If no multiple below ``max_multiple`` works.
    """
    cfg = cfg.check()
    options = {'max_multiple': 2 ** 40} | kwargs
    basepoint, ray = cfg.basepoint, PlanarPoint.polar(cfg.theta)
    state, last = START, 0.0
    displacements, lengths, margins = [], [], []
    for i in range(1, cfg.horizon + 1):
        shortest = max(float(i), math.nextafter(last, math.inf))

        def crossing(n: int) -> Optional[Tuple[float, float, float, ChainState]]:
            return _crossing(basepoint, ray, state, (2 * n + 1) * math.pi)

        def long_enough(n: int) -> bool:
            result = crossing(n)
            return result is not None and result[1] - result[0] >= shortest

        n = bisect.bisect_left(range(options['max_multiple']), True, key=long_enough)
        if n == options['max_multiple']:
            raise ConvergenceError(f'No odd multiple of pi below {2 * n + 1} keeps the ray inside quarter plane {i}.')
        t_in, t_out, margin, state = crossing(n)
        last = t_out - t_in
        displacements.append((2 * n + 1) * math.pi)
        lengths.append(last)
        margins.append(margin)
    logger.info(f'Torus staircase of {cfg.horizon} walls at theta = {cfg.theta}: displacements from {displacements[0]} to '
                f'{displacements[-1]}.')
    template = periodic_template(torus_graph(), tuple(range(PERIOD)), [(0.0, eps) for eps in displacements], cfg.horizon + 1,
                                 degenerate_ok=True)
    return TorusTemplate(template, cfg.theta, basepoint, tuple(lengths), min(margins))


class ShiftedPath(NamedTuple):
    """ A developed ray translated by ``r``, perpendicular to itself and to its left, as it enters each wall of ``jumps``."""
    trace: CrossingTrace
    r: float
    jumps: Tuple[int, ...]          #: The walls at which the path jumps.
    times: Tuple[float, ...]        #: The ray parameter of each jump.

    @property
    def end(self) -> float:
        """ The parameter at which the ray enters its last wall."""
        return self.trace.crossings[-1].t_entry

    @property
    def normal(self) -> PlanarPoint:
        return self.trace.direction.perp

    def frame(self, horizon: Optional[int] = None) -> NP.Matrix:
        """ The path's vertices up to entering wall ``horizon``, as ``(parameter along the ray, offset from the ray)`` rows.

        The first row is the basepoint; each jump contributes the rows before and after it; the last row is the end.
        """
        horizon = self.trace.depth if horizon is None else horizon
        count = sum(1 for wall in self.jumps if wall <= horizon)
        end = next(crossing.t_entry for crossing in self.trace.crossings if crossing.index == horizon)
        rows = [(0.0, 0.0)]
        for m, t in enumerate(self.times[:count]):
            rows += [(t, m * self.r), (t, (m + 1) * self.r)]
        rows.append((end, count * self.r))
        return np.array(rows)

    def vertices(self, horizon: Optional[int] = None) -> Tuple[PlanarPoint, ...]:
        """ The developed polyline up to entering wall ``horizon``."""
        return tuple(self.trace.point(float(t)) + float(y) * self.normal for t, y in self.frame(horizon))


def apply_shift_map(t: TemplateData, trace: CrossingTrace, r: float) -> ShiftedPath:
    """ Shift the developed ``trace`` by ``r`` where it passes from the fourth torus to the first, on entering each wall
    whose index is a positive multiple of 4.

    Raises:
        ValueError: If ``trace`` goes beyond ``t``, or ``r`` is not finite.
    """
    if not math.isfinite(r):
        raise ValueError(f'The shift r = {r} is not finite.')
    if trace.depth >= t.n_walls:
        raise ValueError(f'A trace to wall {trace.depth} does not belong to a template of {t.n_walls} walls.')
    crossings = [crossing for crossing in trace.crossings if crossing.index > 0 and crossing.index % PERIOD == 0]
    return ShiftedPath(trace, float(r), tuple(crossing.index for crossing in crossings), tuple(crossing.t_entry for crossing in crossings))


class BestLine(NamedTuple):
    """ The line ``offset = intercept + slope * parameter`` in a ray frame, and the greatest offset of the polyline from it."""
    deviation: float
    slope: float
    intercept: float


def best_line(frame: NP.Matrix) -> BestLine:
    """ The straight line minimising the greatest offset of a vertex of the polyline ``frame`` from it, offsets measured across
    the unshifted ray.

    Offset from a line is linear along each segment, so only vertices matter. The best line runs parallel to an edge of the
    convex hull of the vertices, midway across the hull.
    """
    if np.ptp(frame[:, 1]) == 0.0:
        return BestLine(0.0, 0.0, float(frame[0, 1]))
    edges = ConvexHull(frame).simplices
    start, end = frame[edges[:, 0]], frame[edges[:, 1]]
    run = end[:, 0] - start[:, 0]
    start, end, run = start[run != 0.0], end[run != 0.0], run[run != 0.0]
    slopes = (end[:, 1] - start[:, 1]) / run
    offsets = frame[:, 1:] - start[:, 1] - slopes * (frame[:, :1] - start[:, 0])
    highest, lowest = offsets.max(axis=0), offsets.min(axis=0)
    best = int(np.argmin(highest - lowest))
    intercept = start[best, 1] - slopes[best] * start[best, 0] + 0.5 * (highest[best] + lowest[best])
    return BestLine(0.5 * float(highest[best] - lowest[best]), float(slopes[best]), float(intercept))


def best_ray_deviation(frame: NP.Matrix) -> float:
    """ The least, over all straight lines, of the greatest offset of a vertex of the polyline ``frame`` from the line."""
    return best_line(frame).deviation


class DivergenceRow(NamedTuple):
    k: int
    horizon: int
    jumps: int
    best_ray_deviation: float


class DivergenceReport(NamedTuple):
    rows: Tuple[DivergenceRow, ...]
    torus: TorusTemplate
    path: ShiftedPath

    @property
    def deviations(self) -> Tuple[float, ...]:
        return tuple(row.best_ray_deviation for row in self.rows)

    def write(self, csv: Path | str) -> Frame:
        return Frame(csv, pd.DataFrame(self.rows, columns=COLUMNS))

    def store(self, folder: Path | str, meta: Dict[str, Any]) -> Report:
        """ Write a Report to ``folder``: ``meta`` with the torus margin, the ``divergence`` Frame and ``torus.svg``."""
        report = Report(folder, meta | {'margin': self.torus.margin, 'jumps': len(self.path.jumps)})
        report.frame('divergence', pd.DataFrame(self.rows, columns=COLUMNS))
        emit_torus_svg(self, report.folder / 'torus.svg')
        return report


def divergence_experiment(cfg: TorusComplexConfig, csv: Optional[Path | str] = None, svg: Optional[Path | str] = None,
                          folder: Optional[Path | str] = None, **kwargs) -> DivergenceReport:
    """ Measure how far the shifted path strays from every straight ray, up to each horizon ``2^k`` for ``k = 5 .. K``.

    Args:
        cfg: The configuration.
        csv: An optional file to receive the ``k,horizon,jumps,best_ray_deviation`` table.
        svg: An optional file to receive a picture of the first 32 walls, the shifted path, and its best ray.
        folder: An optional Report folder, receiving the configuration in ``meta.json`` with the table and picture.
        **kwargs: Passed to ``build_torus_template``.
    Returns: The DivergenceReport.
    Raises:
        ValueError: If ``cfg`` is invalid.
        ComputationError: If the staircase cannot be built or crossed.
    """
    cfg = cfg.check()
    torus = build_torus_template(cfg._replace(horizon=2 ** cfg.K), **kwargs)
    path = apply_shift_map(torus.template, torus.trace(), cfg.r)
    rows = []
    for k in range(5, cfg.K + 1):
        frame = path.frame(2 ** k)
        rows.append(DivergenceRow(k, 2 ** k, sum(1 for wall in path.jumps if wall <= 2 ** k), best_ray_deviation(frame)))
        logger.debug(f'Horizon {2 ** k}: {rows[-1].jumps} jumps, deviation {rows[-1].best_ray_deviation}.')
    if not all(math.isfinite(row.best_ray_deviation) for row in rows):
        raise ConvergenceError(f'Non-finite best ray deviations {[row.best_ray_deviation for row in rows]}.')
    report = DivergenceReport(tuple(rows), torus, path)
    if csv is not None:
        report.write(csv)
    if svg is not None:
        emit_torus_svg(report, svg)
    if folder is not None:
        report.store(folder, cfg._asdict())
    return report


def emit_torus_svg(report: DivergenceReport, path: Path | str, horizon: int = 2 ** 5) -> Path:
    """ Draw the first ``horizon`` walls with the shifted path, and the ray following the path most closely, over them."""
    shifted = report.path
    path_vertices = shifted.vertices(horizon)
    overlays = [Overlay.segment(start, end) for start, end in zip(path_vertices[:-1], path_vertices[1:])]
    line = best_line(shifted.frame(horizon))
    direction = shifted.trace.direction + line.slope * shifted.normal
    overlays.append(Overlay.ray(shifted.trace.basepoint + line.intercept * shifted.normal, direction.unit()))
    return emit_svg(report.torus.chain(horizon + 1), overlays, path)
