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

""" Experiments on the coarse geometry of templates: angle and excess bounds, and the excess of paths avoiding clusters."""

from __future__ import annotations

from templatelab.base.definitions import *
from templatelab.base.classes import Frame, Report
from templatelab.template.models import TemplateData
from templatelab.geodesic.rays import Piece, TemplatePoint
from templatelab.geodesic.paths import geodesic, distance
from templatelab.geodesic.oracle import MeshGraph
import networkx as nx
import scipy.optimize

logger = logging.getLogger(__name__)

META: Dict[str, Any] = {'n1': 4.0}     #: Default keyword arguments. ``n1`` is the least ratio R_prime / R.

CLUSTER_COLUMNS = ('n_span', 'R_prime', 'excess', 'normalized_excess')     #: Cluster report header.


class ExcessCheck(NamedTuple):
    L: float        #: ``d(x, z)``.
    E: float        #: ``d(x, y) + d(y, z) - d(x, z)``.
    gap: float      #: ``d(y, xz)``, the distance from ``y`` to the geodesic ``xz``.
    bound: float    #: ``excess_bound(L, E)``.
    holds: bool     #: Whether ``gap <= sqrt(L E) + slack``, vacuous when ``E > 2L``.


class ClusterReport(NamedTuple):
    n_span: int
    R_prime: float
    excess: float   #: The least excess observed over the paths sampled.
    normalized_excess: float    #: ``excess / (n_span * R_prime)``.


class CorollaryReport(NamedTuple):
    multiplier: float   #: The least ``M`` such that every sampled geodesic meets ``B(p, M R)``.
    samples: int


def three_wall_angle_bound(t: TemplateData) -> float:
    """ ``pi - beta`` for the largest ``beta`` with every interior angle of ``t`` in ``[beta, pi - beta]``."""
    return math.pi - t.beta_max


def excess_bound(L: float, E: float) -> float:
    """ The greatest distance from the third vertex to the side of length ``L`` of a Euclidean triangle with excess ``E``.

    This is at most ``sqrt(L E)`` when ``E <= 2L``.
    """
    if L <= 0.0:
        return 0.5 * E
    return 0.5 * math.sqrt(2.0 * L * E) * math.sqrt(1.0 + E / (2.0 * L))


def excess_check(t: TemplateData, x: TemplatePoint, y: TemplatePoint, z: TemplatePoint, slack: float = 0.0, samples: int = 16,
                 tol: ToleranceConfig = DEFAULT_TOLERANCE) -> ExcessCheck:
    """ Measure ``d(y, xz)`` against the excess of the triangle ``x, y, z``.

    The distance is minimised over ``samples + 1`` equally spaced points of ``xz``, then refined by bounded scalar
    minimisation about the best of them.
    """
    xz = geodesic(t, x, z, tol)
    L, E = xz.length, distance(t, x, y, tol) + distance(t, y, z, tol) - xz.length
    E = max(E, 0.0)
    if L <= tol.eps_length:
        gap = distance(t, y, x, tol)
    else:
        def gap_at(tau: float) -> float:
            return distance(t, y, xz.point_at(tau), tol)

        taus = np.linspace(0.0, L, samples + 1)
        gaps = [gap_at(tau) for tau in taus]
        best = int(np.argmin(gaps))
        result = scipy.optimize.minimize_scalar(gap_at, bounds=(taus[max(best - 1, 0)], taus[min(best + 1, samples)]), method='bounded',
                                                options={'xatol': tol.eps_length})
        gap = min(gaps[best], float(result.fun))
    holds = E > 2.0 * L or gap <= math.sqrt(L * E) + slack
    return ExcessCheck(L, E, gap, excess_bound(L, E), holds)


def _cluster_mesh(t: TemplateData, p: TemplatePoint, R: float, wall_range: Tuple[int, int], mesh_step: float, reach: float,
                  tol: ToleranceConfig, **kwargs) -> Tuple[MeshGraph, Hashable, Dict[Hashable, float]]:
    """ Mesh ``t`` out to ``reach`` beyond ``p``, and check every wall of ``wall_range`` meets ``B(p, R)``."""
    n0, n1 = wall_range
    if not 0 <= n0 < n1 < t.n_walls:
        raise ValueError(f'Wall range {n0}..{n1} is not an increasing range of walls of a template with {t.n_walls} walls.')
    if not R > 0.0:
        raise ValueError(f'R = {R} must be positive.')
    radius = kwargs.pop('radius', None)
    if radius is None:
        radius = math.hypot(p[2], p[3]) + reach + abs(t.anchor) + sum(strip.width + abs(strip.eps) for strip in t.strips)
    mesh = MeshGraph(t, mesh_step, radius, (p,), tol, **kwargs)
    source = mesh.attach(p)
    distances = nx.single_source_dijkstra_path_length(mesh.graph, source, weight='weight')
    slack = kwargs.get('link', MeshGraph.META['link']) * mesh_step
    for k in range(n0, n1 + 1):
        nearest = min(distances.get(node, math.inf) for node in mesh.piece_nodes(Piece.WALL, k).tolist())
        if nearest > R + slack:
            raise ValueError(f'Infeasible cluster: wall {k} is {nearest} from {p}, outside B(p, {R}).')
    return mesh, source, distances


def cluster_excess_experiment(t: TemplateData, p: TemplatePoint, R: float, wall_range: Tuple[int, int], R_prime: float,
                              samples: int = 8, mesh_step: float = 0.1, seed: int = 0, tol: ToleranceConfig = DEFAULT_TOLERANCE,
                              **kwargs) -> ClusterReport:
    """ The excess of the shortest mesh paths from wall ``n0`` to wall ``n1`` avoiding ``B(p, R_prime)``.

    Args:
        t: A valid template.
        p: The cluster centre.
        R: A radius such that every wall of ``wall_range`` meets ``B(p, R)``.
        wall_range: ``(n0, n1)``.
        R_prime: The avoided radius, at least ``n1 * R``.
        samples: The number of single random starting nodes tried, besides the best start on wall ``n0``.
        mesh_step: The MeshGraph spacing.
        seed: Seeds the choice of starting nodes.
        tol: The tolerance policy.
        **kwargs: ``n1``, the multiplier of ``R`` which ``R_prime`` must reach, at least 1; ``radius`` and the MeshGraph options.
    Returns: The ClusterReport of the least excess found.
    Raises:
        ValueError: If the configuration is infeasible, ``R_prime < n1 * R``, or no avoiding path exists in the mesh.
    """
    options = META | kwargs
    multiplier = options.pop('n1')
    if not multiplier >= 1.0:
        raise ValueError(f'n1 = {multiplier} must be at least 1.')
    if not R_prime >= multiplier * R - tol.eps_length:
        raise ValueError(f'R_prime = {R_prime} must be at least n1 * R = {multiplier * R}.')
    n0, n1 = wall_range
    mesh, source, distances = _cluster_mesh(t, p, R, wall_range, mesh_step, 1.5 * R_prime, tol, **options)
    restricted = mesh.graph.copy()
    restricted.remove_nodes_from([node for node, value in distances.items() if value < R_prime])
    restricted.add_weighted_edges_from(('sink', node, 0.0) for node in mesh.piece_nodes(Piece.WALL, n1).tolist() if node in restricted)
    starts = [node for node in mesh.piece_nodes(Piece.WALL, n0).tolist() if node in restricted]
    if not starts:
        raise ValueError(f'The mesh of radius {mesh.radius} has no nodes of wall {n0} outside B(p, {R_prime}).')
    rng = np.random.default_rng(seed)
    trials = [starts] + [[int(node)] for node in rng.choice(starts, size=samples)]
    excess = math.inf
    for sources in trials:
        try:
            length, path = nx.multi_source_dijkstra(restricted, set(sources), target='sink', weight='weight')
        except nx.NetworkXNoPath:
            raise ValueError(f'No path from wall {n0} to wall {n1} avoids B(p, {R_prime}) within radius {mesh.radius}.') from None
        excess = min(excess, length - nx.dijkstra_path_length(mesh.graph, path[0], path[-2], weight='weight'))
    n_span = n1 - n0
    logger.info(f'Cluster walls {n0}..{n1} avoiding B(p, {R_prime}): excess {excess}.')
    return ClusterReport(n_span, R_prime, excess, excess / (n_span * R_prime))


def cluster_corollary_check(t: TemplateData, p: TemplatePoint, R: float, wall_range: Tuple[int, int], R_prime: float, samples: int = 20,
                            mesh_step: float = 0.1, seed: int = 0, tol: ToleranceConfig = DEFAULT_TOLERANCE, **kwargs) -> CorollaryReport:
    """ The least multiplier ``M`` such that every sampled mesh geodesic from wall ``n0`` to wall ``n1``, with both ends outside
    ``B(p, R_prime)``, meets ``B(p, M R)``.

    Raises:
        ValueError: If the configuration is infeasible.
    """
    n0, n1 = wall_range
    mesh, source, distances = _cluster_mesh(t, p, R, wall_range, mesh_step, 1.5 * R_prime, tol, **kwargs)
    ends = [[node for node in mesh.piece_nodes(Piece.WALL, k).tolist() if distances.get(node, 0.0) >= R_prime] for k in (n0, n1)]
    if not (ends[0] and ends[1]):
        raise ValueError(f'The mesh of radius {mesh.radius} has no nodes of walls {n0} and {n1} outside B(p, {R_prime}).')
    rng = np.random.default_rng(seed)
    multiplier = 0.0
    for a, b in zip(rng.choice(ends[0], size=samples), rng.choice(ends[1], size=samples)):
        path = nx.dijkstra_path(mesh.graph, int(a), int(b), weight='weight')
        multiplier = max(multiplier, min(distances[node] for node in path) / R)
    return CorollaryReport(multiplier, samples)


def cluster_report(reports: Sequence[ClusterReport], csv: Path | str) -> Frame:
    """ Write ClusterReports to ``csv``, with header ``n_span,R_prime,excess,normalized_excess``."""
    return Frame(csv, pd.DataFrame([tuple(report) for report in reports], columns=CLUSTER_COLUMNS))


def cluster_store(reports: Sequence[ClusterReport], folder: Path | str, meta: Dict[str, Any]) -> Report:
    """ Write a Report to ``folder``, holding ``meta`` and the ``cluster`` Frame of ``reports``.

    Raises:
        ValueError: If ``reports`` is empty.
    """
    if not reports:
        raise ValueError('No cluster reports to store.')
    least = min(r.normalized_excess for r in reports)
    report = Report(folder, {'n1': META['n1']} | meta | {'min_normalized_excess': least})
    report.frame('cluster', pd.DataFrame([tuple(r) for r in reports], columns=CLUSTER_COLUMNS))
    return report
