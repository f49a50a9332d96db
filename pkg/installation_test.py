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


""" Exercise every template-lab command on small inputs, writing the results to a folder. """


from __future__ import annotations

from templatelab.base.definitions import *
from templatelab.template.models import TemplateData, SelfSimilarData, WallSpec, StripSpec
from templatelab.template import storage
from templatelab.recovery.oracles import SyntheticOracle
from templatelab.groups import graphs
from templatelab.user.cli import main
from templatelab import user

#: Inputs.
TEMPLATE: TemplateData = TemplateData(TemplateData.Kind.HALF, (WallSpec(None),) + (WallSpec(1.2),) * 8, (StripSpec(1.0, 0.3),) * 8)   #: A half template.
SELF_SIMILAR: SelfSimilarData = SelfSimilarData(1.0, 1.0, math.tan(1.2), 1.0, math.tan(0.1))   #: Self-similar data with a non-trivial boundary.
ORACLE: SyntheticOracle = SyntheticOracle(1.0, (1.0, 1.0, 1.0, 1.0), (0.5, -0.3))  #: Hidden parameters to recover.
GRAPH: graphs.AdmissibleGraphSpec = graphs.AdmissibleGraphSpec(
    {'v1': graphs.VertexGeometricData(1.0, 2.0, 0.5, 1.0), 'v2': graphs.VertexGeometricData(1.0, 3.0, 0.0, 2.0)},
    (graphs.EdgeSpec('v1', 'v2', 1.3),))   #: A single edge admissible graph.
#: Parameters of the demonstrations.
TORUS_KMAX: int = 8  #: The largest power of 2 of the torus horizon.
CLUSTER_RANGE: str = '3..6'  #: The walls of the cluster.


def run(root: str | Path) -> Path:
    """ Run every command, writing inputs and outputs to ``root``.

    Args:
        root: The root folder.
    Returns: The root path written to.
    Raises:
        RuntimeError: If any command exits non-zero.
    """
    root = Path(root)
    root.mkdir(parents=True, exist_ok=True)
    template, self_similar = storage.write(TEMPLATE, root / 'template.json'), storage.write(SELF_SIMILAR, root / 'self_similar.json')
    oracle, graph = ORACLE.write(root / 'oracle.json'), graphs.write(GRAPH, root / 'graph.json')
    commands = {'validate': ['validate', str(template)],
                'develop': ['develop', str(self_similar), '--svg', str(root / 'develop.svg')],
                'shoot': ['shoot', str(template), '--dir', '1.5', '--walls', '6'],
                'boundary': ['boundary', str(self_similar), '--depth', '20', '--csv', str(root / 'boundary.csv')],
                'selfsim': ['selfsim'] + [f'--{name}={value}' for name, value in SELF_SIMILAR._asdict().items()],
                'recover': ['recover', '--oracle', str(oracle), '--out', str(root / 'recovered.json')],
                'special-rays': ['special-rays', '--graph', str(graph), '--edge', '0', '--pqrs', '1,1,1,1', '--out', str(root / 'ray.json')],
                'torus-demo': ['torus-demo', '--kmax', str(TORUS_KMAX), '--csv', str(root / 'torus.csv'), '--svg', str(root / 'torus.svg'),
                               '--report', str(root / 'torus_report')],
                'cluster-exp': ['cluster-exp', str(self_similar), '--range', CLUSTER_RANGE, '--csv', str(root / 'cluster.csv'),
                                '--report', str(root / 'cluster_report')]}
    for name, argv in commands.items():
        with user.contexts.Timer(name):
            code = main(argv)
        if code != 0:
            raise RuntimeError(f'template-lab {" ".join(argv)} exited with {code}.')
    return root


if __name__ == '__main__':

    # Run the code.
    logging.basicConfig(level='INFO')
    root = Path('installation_test')
    print(f'Root path is {run(root)}')
