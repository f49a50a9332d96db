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

""" A brute force **distance oracle**: shortest paths in a weighted graph meshing each piece of a template.

Walls are meshed by square grids on a disc about the origin, strips by rectangular grids whose first and last rows lie on
the gluing lines. Grid nodes are joined to every node a primitive stencil offset away, and each boundary row node is joined
to the wall grid nodes near its image in the wall.
"""

from __future__ import annotations

from templatelab.base.definitions import *
from templatelab.template.models import TemplateData, require_valid
from templatelab.geodesic.rays import Piece, TemplatePoint
import networkx as nx

logger = logging.getLogger(__name__)


def stencil_offsets(reach: int) -> List[Tuple[int, int]]:
    """ The primitive grid offsets ``(a, b)`` with ``max(|a|, |b|) <= reach``, one of each pair ``+-(a, b)``."""
    return [(a, b) for a in range(0, reach + 1) for b in range(-reach, reach + 1)
            if (a > 0 or b > 0) and math.gcd(a, abs(b)) == 1]


def _shift(n: int, d: int) -> Tuple[slice, slice]:
    return slice(max(0, -d), n - max(0, d)), slice(max(0, d), n - max(0, -d))


class MeshGraph:
    """ A networkx graph approximating the metric of a template, restricted to a disc about the wall origins."""

    META: Dict[str, Any] = {'stencil': 3, 'link': 2.0, 'slack': 1.0}    #: Default keyword arguments.

    @property
    def graph(self) -> nx.Graph:
        return self._graph

    @property
    def mesh_step(self) -> float:
        return self._h

    @property
    def radius(self) -> float:
        return self._radius

    def piece_nodes(self, piece: Piece, index: int) -> NP.Array:
        """ The grid nodes of a piece."""
        table = self._tables[piece, index]
        return table[table >= 0]

    def attach(self, point: TemplatePoint) -> Hashable:
        """ Add a node at ``point``, joined to the grid nodes of its piece within ``link`` mesh steps.

        Raises:
            ValueError: If ``point`` is outside the meshed region.
        """
        point = TemplatePoint(*point)
        key = ('point', point)
        if key in self._graph:
            return key
        if point.piece == Piece.WALL and math.hypot(point.s, point.h) > self._radius - self._link * self._h:
            raise ValueError(f'Truncation radius {self._radius} is too small to mesh {point}.')
        if point.piece == Piece.STRIP and abs(point.s) > self._radius - self._link * self._h:
            raise ValueError(f'Truncation radius {self._radius} is too small to mesh {point}.')
        ids, weights = self._near(point.piece, point.index, np.array([[point.s, point.h]]))
        edges = [(key, int(node), float(weight)) for node, weight in zip(ids[0], weights[0]) if node >= 0]
        if not edges:
            raise ValueError(f'No grid node lies within {self._link} mesh steps of {point}.')
        self._graph.add_weighted_edges_from(edges)
        return key

    def distance(self, x: TemplatePoint, y: TemplatePoint) -> float:
        """ The length of the shortest path in the mesh from ``x`` to ``y``.

        Raises:
            ValueError: If either point is outside the meshed region, or the mesh does not join them.
        """
        try:
            return nx.dijkstra_path_length(self._graph, self.attach(x), self.attach(y), weight='weight')
        except (nx.NetworkXNoPath, nx.NodeNotFound):
            raise ValueError(f'Truncation radius {self._radius} is too small to join {x} to {y}.') from None

    def _spacing(self, piece: Piece, index: int) -> Tuple[float, float]:
        return (self._h, self._h) if piece == Piece.WALL else (self._h, self._rows[index])

    def _near(self, piece: Piece, index: int, coordinates: NP.Matrix) -> Tuple[NP.Matrix, NP.Matrix]:
        """ Grid nodes of a piece within ``link`` mesh steps of each of ``coordinates``, as ``-1`` padded arrays."""
        table, (hs, hh) = self._tables[piece, index], self._spacing(piece, index)
        hh = hh or hs
        lower = (-self._m * hs, 0.0 if piece == Piece.STRIP else -self._m * hh)
        reach = int(math.ceil(self._link * self._h / min(hs, hh)))
        centre = np.rint((coordinates - np.array(lower)) / np.array([hs, hh])).astype(int)
        ids, weights = [], []
        for da in range(-reach, reach + 1):
            for db in range(-reach, reach + 1):
                a, b = centre[:, 0] + da, centre[:, 1] + db
                inside = (a >= 0) & (a < table.shape[0]) & (b >= 0) & (b < table.shape[1])
                node = np.full(len(coordinates), -1)
                node[inside] = table[a[inside], b[inside]]
                weight = np.hypot(lower[0] + a * hs - coordinates[:, 0], lower[1] + b * hh - coordinates[:, 1])
                node[weight > self._link * self._h] = -1
                ids.append(node)
                weights.append(weight)
        return np.stack(ids, axis=1), np.stack(weights, axis=1)

    def _grid(self, piece: Piece, index: int, table: NP.Matrix):
        hs, hh = self._spacing(piece, index)
        for da, db in self._offsets:
            (sa, ta), (sb, tb) = _shift(table.shape[0], da), _shift(table.shape[1], db)
            u, v = table[sa, sb].ravel(), table[ta, tb].ravel()
            keep = (u >= 0) & (v >= 0)
            self._graph.add_weighted_edges_from(zip(u[keep].tolist(), v[keep].tolist(), [math.hypot(da * hs, db * hh)] * int(keep.sum())))

    def _glue(self, row: NP.Array, wall: int, coordinates: NP.Matrix):
        """ Join each node of a strip's boundary ``row`` to the grid of ``wall`` near its image ``coordinates``."""
        ids, weights = self._near(Piece.WALL, wall, coordinates)
        rows = np.broadcast_to(row[:, None], ids.shape)
        keep = ids >= 0
        self._graph.add_weighted_edges_from(zip(rows[keep].tolist(), ids[keep].tolist(), weights[keep].tolist()))

    def _next(self, shape: Tuple[int, ...]) -> NP.Matrix:
        count = int(np.prod(shape))
        result = np.arange(self._count, self._count + count).reshape(shape)
        self._count += count
        return result

    def __init__(self, t: TemplateData, mesh_step: float, radius: float | None = None, points: Sequence[TemplatePoint] = (),
                 tol: ToleranceConfig = DEFAULT_TOLERANCE, **kwargs):
        """ Mesh a template.

        Args:
            t: A valid template.
            mesh_step: The grid spacing, positive.
            radius: The truncation radius about each wall origin. By default it covers ``points`` and every origin, plus ``slack``.
            points: Points the radius must cover.
            tol: The tolerance policy.
            **kwargs: ``stencil``, the largest grid offset joined; ``link``, the joining distance across gluing lines in mesh
                steps; ``slack``, added to the default radius.
        Raises:
            ValueError: If ``mesh_step`` is not positive, or ``radius`` does not cover ``points``.
        """
        require_valid(t, tol)
        if not mesh_step > 0.0:
            raise ValueError(f'mesh_step = {mesh_step} must be positive.')
        options = self.META | kwargs
        self._h, self._link, self._offsets = float(mesh_step), float(options['link']), stencil_offsets(options['stencil'])
        extent = max((math.hypot(p[2], p[3]) for p in points), default=0.0)
        if radius is None:
            radius = extent + abs(t.anchor) + sum(strip.width + abs(strip.eps) for strip in t.strips) + options['slack']
        elif radius < extent + self._link * self._h:
            raise ValueError(f'Truncation radius {radius} is too small to cover points at distance {extent}.')
        self._radius = float(radius)
        self._m = int(math.ceil(self._radius / self._h))
        self._graph, self._count, self._tables, self._rows = nx.Graph(), 0, {}, {}
        a, b = np.meshgrid(np.arange(-self._m, self._m + 1), np.arange(-self._m, self._m + 1), indexing='ij')
        disc = np.hypot(a, b) * self._h <= self._radius
        for i in range(t.n_walls):
            table = np.full(disc.shape, -1)
            table[disc] = self._next((int(disc.sum()),))
            self._tables[Piece.WALL, i] = table
            self._graph.add_nodes_from(table[disc].tolist())
            self._grid(Piece.WALL, i, table)
        s = np.arange(-self._m, self._m + 1) * self._h
        for i, strip in enumerate(t.strips):
            rows = max(1, int(math.ceil(strip.width / self._h)))
            self._rows[i] = strip.width / rows
            table = self._next((len(s), rows + 1))
            self._tables[Piece.STRIP, i] = table
            self._graph.add_nodes_from(table.ravel().tolist())
            self._grid(Piece.STRIP, i, table)
            alpha = t.walls[i].alpha
            near = np.stack([s, np.zeros_like(s)] if alpha is None else [s * math.cos(alpha), s * math.sin(alpha)], axis=1)
            self._glue(table[:, 0], i, near)
            self._glue(table[:, -1], i + 1, np.stack([s - t.offset(i), np.zeros_like(s)], axis=1))
        logger.debug(f'Meshed {t.n_walls} walls at step {self._h} and radius {self._radius}: {self._graph.number_of_nodes()} nodes.')


def dijkstra_oracle(t: TemplateData, x: TemplatePoint, y: TemplatePoint, mesh_step: float, tol: ToleranceConfig = DEFAULT_TOLERANCE,
                    **kwargs) -> float:
    """ Approximate the distance from ``x`` to ``y`` by a shortest path in a MeshGraph of ``t``.

    Args:
        t: A valid template.
        x: A point of ``t``.
        y: A point of ``t``.
        mesh_step: The grid spacing.
        tol: The tolerance policy.
        **kwargs: ``radius`` and the MeshGraph options.
    Returns: The mesh distance, within a few percent of the true distance for the default stencil.
    Raises:
        ValueError: If the radius is too small, or ``mesh_step`` is not positive.
    """
    x, y = TemplatePoint(*x).check(t, tol), TemplatePoint(*y).check(t, tol)
    radius = kwargs.pop('radius', None)
    return MeshGraph(t, mesh_step, radius, (x, y), tol, **kwargs).distance(x, y)
