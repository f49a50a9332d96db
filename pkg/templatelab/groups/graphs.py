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

""" **Admissible graph descriptions**: per-vertex geometric data, edge angles, and the equivalence of geometric data under
vertexwise rescaling.

Group elements never appear. Each vertex carries only the numbers the special rays consume: the minimal lengths of the
translations of ``sigma`` and ``delta_v`` on the vertex space's tree-like factor, and the translation lengths of ``sigma``
and of the central generator ``zeta_v`` along its line factor. ``tau_v(delta_v) = 0`` is implicit.
"""

from __future__ import annotations

from templatelab.base.definitions import *
from enum import IntEnum, auto
import json
import networkx as nx

logger = logging.getLogger(__name__)


class VertexGeometricData(NamedTuple):
    mls_sigma: float    #: ``MLS_v(sigma) > 0``.
    mls_delta: float    #: ``MLS_v(delta_v) > 0``.
    tau_sigma: float    #: ``tau_v(sigma)``.
    tau_zeta: float     #: ``tau_v(zeta_v) != 0``.

    def check(self, name: str = '') -> VertexGeometricData:
        """ Returns ``self``, for chaining calls.

        Raises:
            ValueError: Unless every value is finite, both MLS values are positive and ``tau_zeta != 0``.
        """
        if not all(math.isfinite(value) for value in self):
            raise ValueError(f'Non-finite geometric data {self} at vertex {name!r}.')
        if not (self.mls_sigma > 0.0 and self.mls_delta > 0.0):
            raise ValueError(f'MLS values of vertex {name!r} must be positive, not {self.mls_sigma}, {self.mls_delta}.')
        if self.tau_zeta == 0.0:
            raise ValueError(f'tau_zeta of vertex {name!r} must be non-zero.')
        return self

    def scaled(self, lam: float, mu: float) -> VertexGeometricData:
        """ Multiply the MLS values by ``lam`` and the translation lengths by ``mu``."""
        return VertexGeometricData(lam * self.mls_sigma, lam * self.mls_delta, mu * self.tau_sigma, mu * self.tau_zeta)


class EdgeSpec(NamedTuple):
    """ An edge of an admissible graph. A loop has ``source == target``."""
    source: str
    target: str
    beta: float     #: The Tits angle in (0, pi) between the line factors meeting across the edge.

    @property
    def is_loop(self) -> bool:
        return self.source == self.target

    def other(self, vertex: str) -> str:
        """ The end of this edge opposite ``vertex``."""
        return self.target if vertex == self.source else self.source


class AdmissibleGraphSpec(NamedTuple):
    """ A finite connected graph with at least one edge, loops and multiple edges allowed, decorated with geometric data."""
    vertices: Dict[str, VertexGeometricData]
    edges: Tuple[EdgeSpec, ...]

    @property
    def graph(self) -> nx.MultiGraph:
        """ The underlying networkx multigraph, edges keyed by their index in ``edges``."""
        result = nx.MultiGraph()
        result.add_nodes_from(self.vertices)
        result.add_edges_from((edge.source, edge.target, i) for i, edge in enumerate(self.edges))
        return result

    def edge(self, e: int | EdgeSpec) -> EdgeSpec:
        """ The edge with index ``e``, or ``e`` itself once checked to belong to this graph.

        Raises:
            ValueError: If there is no such edge.
        """
        if isinstance(e, EdgeSpec):
            if e not in self.edges:
                raise ValueError(f'{e} is not an edge of this graph.')
            return e
        if not 0 <= e < len(self.edges):
            raise ValueError(f'Edge index {e} is out of range for a graph of {len(self.edges)} edges.')
        return self.edges[e]

    def check(self) -> AdmissibleGraphSpec:
        """ Returns ``self``, for chaining calls.

        Raises:
            ValueError: If the graph has no edge, is disconnected, has an edge with an unknown end or an angle outside
                (0, pi), or carries invalid geometric data.
        """
        if not self.edges:
            raise ValueError('An admissible graph needs at least one edge.')
        for name, data in self.vertices.items():
            data.check(name)
        for i, edge in enumerate(self.edges):
            for end in (edge.source, edge.target):
                if end not in self.vertices:
                    raise ValueError(f'Edge {i} ends at unknown vertex {end!r}.')
            if not (math.isfinite(edge.beta) and 0.0 < edge.beta < math.pi):
                raise ValueError(f'Edge {i} has beta = {edge.beta}, outside (0, pi).')
        if not nx.is_connected(self.graph):
            raise ValueError(f'The graph on vertices {sorted(self.vertices)} is not connected.')
        return self


def from_dict(content: Dict[str, Any]) -> AdmissibleGraphSpec:
    """ Parse ``{"vertices": {name: {field: value}}, "edges": [{"from": v1, "to": v2, "beta": b}]}``.

    Raises:
        ValueError: If the content is malformed or the graph is not admissible.
    """
    try:
        vertices = {str(name): VertexGeometricData(*(float(data[field]) for field in VertexGeometricData._fields))
                    for name, data in content['vertices'].items()}
        edges = tuple(EdgeSpec(str(edge['from']), str(edge['to']), float(edge['beta'])) for edge in content['edges'])
    except (KeyError, TypeError, AttributeError) as error:
        raise ValueError(f'Malformed graph content: {error!r}.') from error
    return AdmissibleGraphSpec(vertices, edges).check()


def to_dict(spec: AdmissibleGraphSpec) -> Dict[str, Any]:
    return {'vertices': {name: data._asdict() for name, data in spec.vertices.items()},
            'edges': [{'from': edge.source, 'to': edge.target, 'beta': edge.beta} for edge in spec.edges]}


def read(path: Path | str) -> AdmissibleGraphSpec:
    """ Read a graph spec from a JSON file.

    Raises:
        OSError: If ``path`` cannot be read.
        ValueError: If the content is not an admissible graph spec.
    """
    path = Path(path)
    try:
        content = json.loads(path.read_text(encoding='utf-8'))
    except json.JSONDecodeError as error:
        raise ValueError(f'{path} is not valid JSON: {error}.') from error
    return from_dict(content)


def write(spec: AdmissibleGraphSpec, path: Path | str) -> Path:
    path = Path(path)
    with open(path, mode='w', encoding='utf-8') as file:
        json.dump(to_dict(spec), file, indent=8)
    return path


class ScaleAssignment(NamedTuple):
    """ Vertexwise factors taking geometric data ``(MLS_v, tau_v)`` to ``(lam(v) MLS_v, mu(v) tau_v)``."""
    lam: Dict[str, float]
    mu: Dict[str, float]


class ScaleVerdict(NamedTuple):

    class Kind(IntEnum):
        """ Enum to specify the outcome of a scale assignment check."""
        UNIFORM = auto()
        BIPARTITE = auto()
        INVALID = auto()

    kind: ScaleVerdict.Kind
    values: Tuple[float, ...]   #: ``(a,)`` if uniform, ``(a, b)`` if bipartite with ``lam = a`` on the colour of the first vertex.
    witness: Tuple[str, ...]    #: If invalid, an offending edge ``(v1, v2)`` or the vertices of an odd cycle.


def _check_assignment(spec: AdmissibleGraphSpec, s: ScaleAssignment):
    for name in spec.vertices:
        for label, factors in (('lam', s.lam), ('mu', s.mu)):
            if name not in factors:
                raise ValueError(f'{label} is undefined at vertex {name!r}.')
            if not (math.isfinite(factors[name]) and factors[name] > 0.0):
                raise ValueError(f'{label}({name!r}) = {factors[name]} must be positive.')


def _odd_cycle(graph: nx.MultiGraph) -> Tuple[str, ...]:
    simple = nx.Graph(graph)
    for cycle in nx.cycle_basis(simple):
        if len(cycle) % 2:
            return tuple(cycle)
    return ()


def check_scale_assignment(spec: AdmissibleGraphSpec, s: ScaleAssignment, tol: ToleranceConfig = DEFAULT_TOLERANCE) -> ScaleVerdict:
    """ Classify a scale assignment as taking geometric data to equivalent geometric data, or not.

    Equivalent data are rescaled by one constant throughout, or by constants ``a, b`` swapping ``lam`` and ``mu`` across every
    edge of a 2-colouring.

    Args:
        spec: The graph.
        s: Positive factors defined at every vertex.
        tol: Values within ``eps_length`` relative error count as equal.
    Returns: The ScaleVerdict.
    Raises:
        ValueError: If a factor is missing or not positive.
    """
    _check_assignment(spec, s)

    def equal(a: float, b: float) -> bool:
        return abs(a - b) <= tol.eps_length * max(abs(a), abs(b))

    first = next(iter(spec.vertices))
    a = s.lam[first]
    if all(equal(s.lam[name], a) and equal(s.mu[name], a) for name in spec.vertices):
        return ScaleVerdict(ScaleVerdict.Kind.UNIFORM, (a,), ())
    graph = spec.graph
    loops = [edge.source for edge in spec.edges if edge.is_loop]
    if loops:
        return ScaleVerdict(ScaleVerdict.Kind.INVALID, (), (loops[0],))
    if not nx.is_bipartite(graph):
        return ScaleVerdict(ScaleVerdict.Kind.INVALID, (), _odd_cycle(graph))
    for edge in spec.edges:
        u, w = edge.source, edge.target
        if not (equal(s.lam[u], s.mu[w]) and equal(s.lam[w], s.mu[u])):
            return ScaleVerdict(ScaleVerdict.Kind.INVALID, (), (u, w))
    return ScaleVerdict(ScaleVerdict.Kind.BIPARTITE, (a, s.mu[first]), ())


def apply_scale_assignment(spec: AdmissibleGraphSpec, s: ScaleAssignment) -> AdmissibleGraphSpec:
    """ Rescale the geometric data of ``spec`` vertexwise. Edge angles are unchanged.

    Raises:
        ValueError: If a factor is missing or not positive.
    """
    _check_assignment(spec, s)
    return spec._replace(vertices={name: data.scaled(s.lam[name], s.mu[name]) for name, data in spec.vertices.items()})
