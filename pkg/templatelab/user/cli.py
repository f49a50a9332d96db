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

""" **Command line interface** wiring templates, geodesics, recovery and the demonstrations into reproducible runs.

Results are printed to stdout as JSON; logging goes to stderr. The exit code is 0 on success, 1 on invalid input and 2 on a
computation failure.
"""

from __future__ import annotations

from templatelab.base.definitions import *
from templatelab.planar.geometry import PlanarPoint
from templatelab.template.models import TemplateData, SelfSimilarData, validate, expand_self_similar
from templatelab.template import storage
from templatelab.develop.chains import QuarterPlaneCase, SignSequence, develop_chain
from templatelab.develop.svg import emit_svg
from templatelab.selfsim.analysis import triviality, exact_tits_angle
from templatelab.geodesic.rays import TemplatePoint, CrossingTrace, shoot
from templatelab.geodesic.boundary import boundary_interval, boundary_report
from templatelab.geodesic.experiments import cluster_excess_experiment, cluster_report, cluster_store
from templatelab.recovery.oracles import SyntheticOracle
from templatelab.recovery.recover import recover
from templatelab.groups import graphs
from templatelab.groups.special import special_ray_data
from templatelab.torus.complex import TorusComplexConfig, divergence_experiment
from templatelab.user.contexts import Timer
import argparse
import json
import os
import sys

logger = logging.getLogger(__name__)

SEED_VARIABLE = 'TEMPLATE_LAB_SEED'
LOG_LEVEL_VARIABLE = 'TEMPLATE_LAB_LOG_LEVEL'


class RunConfig(NamedTuple):
    """ A parsed invocation."""
    command: str
    arguments: Dict[str, Any]   #: The command's flags and paths, by name.
    seed: int
    log_level: str

    @classmethod
    def parse(cls, argv: Sequence[str]) -> RunConfig:
        """ Parse ``argv``, letting the environment override the seed and supply the default log level.

        Raises:
            ValueError: If ``argv`` or the environment is malformed, with the usage text already written to stderr.
        """
        namespace = vars(_parser().parse_args(list(argv)))
        seed = os.environ.get(SEED_VARIABLE)
        try:
            seed = namespace.pop('seed') if seed is None else int(seed)
        except ValueError:
            raise ValueError(f'{SEED_VARIABLE} = {seed!r} is not an integer.') from None
        log_level = namespace.pop('log_level') or os.environ.get(LOG_LEVEL_VARIABLE, 'WARNING')
        if not isinstance(logging.getLevelName(log_level.upper()), int):
            raise ValueError(f'Unknown log level {log_level!r}.')
        return cls(namespace.pop('command'), namespace, seed, log_level.upper())


class _Parser(argparse.ArgumentParser):
    """ An ArgumentParser which raises ValueError instead of exiting."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise ValueError(f'{self.prog}: {message}')


def _floats(text: str) -> Tuple[float, ...]:
    try:
        return tuple(float(token) for token in text.split(','))
    except ValueError:
        raise argparse.ArgumentTypeError(f'{text!r} is not a comma separated list of numbers.') from None


def _wall_range(text: str) -> Tuple[int, int]:
    try:
        n0, n1 = (int(token) for token in text.split('..'))
    except ValueError:
        raise argparse.ArgumentTypeError(f'{text!r} is not a wall range such as 3..20.') from None
    return n0, n1


def _parser() -> _Parser:
    parser = _Parser(prog='template-lab', description='Geodesics, boundaries and geometric data of CAT(0) templates.')
    parser.add_argument('--seed', type=int, default=0, help=f'Random seed, overridden by {SEED_VARIABLE}.')
    parser.add_argument('--log-level', default=None, help=f'Logging level, by default {LOG_LEVEL_VARIABLE} or WARNING.')
    commands = parser.add_subparsers(dest='command', required=True)
    command = commands.add_parser('validate', help='List the violations of a template file.')
    command.add_argument('template', type=Path)
    command = commands.add_parser('develop', help='Develop a template into the plane.')
    command.add_argument('template', type=Path)
    command.add_argument('--signs', default=None, help='Comma separated signs such as +,-,+ or cases such as I,II. Default all +.')
    command.add_argument('--walls', type=int, default=12, help='Walls expanded from self-similar data.')
    command.add_argument('--svg', type=Path, default=None)
    command = commands.add_parser('shoot', help='Trace a straight developed ray through a template.')
    command.add_argument('template', type=Path)
    command.add_argument('--dir', type=float, required=True, help='The ray angle in chain coordinates.')
    command.add_argument('--walls', type=int, required=True, help='The last wall entered.')
    command.add_argument('--signs', default='auto', help='Comma separated signs or cases, or auto.')
    command.add_argument('--basepoint', type=_floats, default=(0.0, 0.0), help='x,y on wall 0.')
    command = commands.add_parser('boundary', help='Bracket the Tits length of the boundary set of a half template.')
    command.add_argument('template', type=Path)
    command.add_argument('--depth', type=int, default=50)
    command.add_argument('--csv', type=Path, default=None)
    command = commands.add_parser('selfsim', help='Decide triviality of self-similar data.')
    for name in ('beta', 'l0', 'eps0', 'l1', 'eps1'):
        command.add_argument(f'--{name}', type=float, required=True)
    command = commands.add_parser('recover', help='Recover geometric data from a synthetic membership oracle.')
    command.add_argument('--oracle', type=Path, required=True)
    command.add_argument('--residual', '--tol', dest='residual', type=float, default=1e-6,
                         help='The largest A_beta margin of a disagreeing validation query accepted. --tol is an alias.')
    command.add_argument('--budget', type=int, default=400000, help='The most oracle queries.')
    command.add_argument('--out', type=Path, default=None)
    command = commands.add_parser('special-rays', help='Write the template of a special ray.')
    command.add_argument('--graph', type=Path, required=True)
    command.add_argument('--edge', type=int, required=True, help='The edge index.')
    command.add_argument('--pqrs', type=_floats, required=True)
    command.add_argument('--walls', type=int, default=12)
    command.add_argument('--out', type=Path, default=None)
    command = commands.add_parser('torus-demo', help='Measure the divergence of shifted geodesics in a torus complex.')
    command.add_argument('--r', type=float, default=0.1)
    command.add_argument('--kmax', type=int, default=10)
    command.add_argument('--csv', type=Path, default=None)
    command.add_argument('--svg', type=Path, default=None)
    command.add_argument('--report', type=Path, default=None, help='A folder to receive meta.json, the table and the picture.')
    command = commands.add_parser('cluster-exp', help='Measure the excess of paths avoiding a cluster of walls.')
    command.add_argument('template', type=Path)
    command.add_argument('--range', type=_wall_range, required=True, help='n0..n1')
    command.add_argument('--rprime-mult', type=float, default=8.0, help='R_prime as a multiple of R, at least 4.')
    command.add_argument('--radius', type=float, default=0.3, help='R.')
    command.add_argument('--centre-wall', type=int, default=None, help='The wall of the cluster centre, by default n0 - 1.')
    command.add_argument('--mesh-step', type=float, default=0.1)
    command.add_argument('--samples', type=int, default=8)
    command.add_argument('--csv', type=Path, default=None)
    command.add_argument('--report', type=Path, default=None, help='A folder to receive meta.json and the table.')
    return parser


def _template(path: Path, n_walls: int) -> TemplateData:
    """ The template in ``path``, expanding self-similar data to ``n_walls`` walls."""
    data = storage.read(path)
    return expand_self_similar(data, n_walls) if isinstance(data, SelfSimilarData) else data


def _cases(text: str) -> Tuple[QuarterPlaneCase, ...] | SignSequence:
    tokens = [token.strip() for token in text.split(',') if token.strip()]
    if all(token.upper() in QuarterPlaneCase.__members__ for token in tokens):
        return tuple(QuarterPlaneCase.parse(token) for token in tokens)
    return SignSequence.parse(text)


def _trace_content(trace: CrossingTrace) -> Dict[str, Any]:
    return {'theta': trace.theta, 'cases': [case.name for case in trace.cases],
            'crossings': [{'index': crossing.index, 't_entry': None if math.isnan(crossing.t_entry) else crossing.t_entry,
                           't_exit': None if math.isnan(crossing.t_exit) else crossing.t_exit} for crossing in trace.crossings]}


def _validate(config: RunConfig) -> Tuple[Dict[str, Any], int]:
    data = storage.read(config.arguments['template'])
    if isinstance(data, SelfSimilarData):
        data.check()
        return {'valid': True, 'violations': []}, 0
    violations = validate(data)
    return {'valid': not violations, 'violations': violations}, 1 if violations else 0


def _develop(config: RunConfig) -> Tuple[Dict[str, Any], int]:
    t = _template(config.arguments['template'], config.arguments['walls'])
    signs = config.arguments['signs'] or ','.join('+' * len(t.interior))
    chain = develop_chain(t, _cases(signs))
    if config.arguments['svg'] is not None:
        emit_svg(chain, (), config.arguments['svg'])
    return {'origins': [list(origin) for origin in chain.origins], 'cases': [case.name for case in chain.cases]}, 0


def _shoot(config: RunConfig) -> Tuple[Dict[str, Any], int]:
    walls = config.arguments['walls']
    t = _template(config.arguments['template'], walls + 1)
    signs = config.arguments['signs']
    result = shoot(t, PlanarPoint(*config.arguments['basepoint']), config.arguments['dir'], signs if signs == 'auto' else _cases(signs), walls)
    if isinstance(result, CrossingTrace):
        return {'crossed': True} | _trace_content(result), 0
    return {'crossed': False, 'wall': result.wall, 'reason': result.reason.name} | _trace_content(result.partial), 0


def _boundary(config: RunConfig) -> Tuple[Dict[str, Any], int]:
    depth = config.arguments['depth']
    t = _template(config.arguments['template'], depth + 1)
    estimate = boundary_interval(t, depth=depth)
    if config.arguments['csv'] is not None:
        boundary_report(t, config.arguments['csv'], range(2, depth + 1))
    return {'theta_lo': estimate.theta_lo, 'theta_hi': estimate.theta_hi, 'depth': estimate.depth,
            'branches': estimate.surviving_branches, 'intervals': [[interval.lo, interval.hi] for interval in estimate.intervals]}, 0


def _selfsim(config: RunConfig) -> Tuple[Dict[str, Any], int]:
    s = SelfSimilarData(*(config.arguments[name] for name in ('beta', 'l0', 'eps0', 'l1', 'eps1'))).check()
    verdict = triviality(s)
    return {'trivial': verdict.trivial, 'case': None if verdict.case is None else verdict.case.name, 'margin': verdict.margin,
            'psi': list(verdict.psi), 'tits_angle': exact_tits_angle(s)}, 0


def _recover(config: RunConfig) -> Tuple[Dict[str, Any], int]:
    oracle = SyntheticOracle.read(config.arguments['oracle'])
    result = recover(oracle, probe_budget=config.arguments['budget'], residual_threshold=config.arguments['residual'], seed=config.seed)
    if config.arguments['out'] is not None:
        result.write(config.arguments['out'])
    return result.to_dict(), 0


def _special_rays(config: RunConfig) -> Tuple[Dict[str, Any], int]:
    spec = graphs.read(config.arguments['graph'])
    rays = special_ray_data(spec, config.arguments['edge'], config.arguments['pqrs'], config.arguments['walls'])
    if config.arguments['out'] is not None:
        storage.write(rays.template, config.arguments['out'])
    return {'template': storage.to_dict(rays.template), 'self_similar': storage.to_dict(rays.self_similar),
            'trivial': triviality(rays.self_similar).trivial}, 0


def _torus_demo(config: RunConfig) -> Tuple[Dict[str, Any], int]:
    if config.arguments['kmax'] < 5:
        raise ValueError(f'kmax = {config.arguments["kmax"]} must be at least 5.')
    cfg = TorusComplexConfig(r=config.arguments['r'], horizon=2 ** config.arguments['kmax'], itinerary_seed=config.seed)
    report = divergence_experiment(cfg, config.arguments['csv'], config.arguments['svg'], config.arguments['report'])
    return {'r': cfg.r, 'theta': report.torus.theta, 'rows': [row._asdict() for row in report.rows]}, 0


def _meta(config: RunConfig) -> Dict[str, Any]:
    """ The invocation, as json-ready meta data."""
    arguments = {key: value if value is None or isinstance(value, (bool, int, float, str)) else str(value)
                 for key, value in config.arguments.items()}
    return {'command': config.command, 'seed': config.seed} | arguments


def _cluster_exp(config: RunConfig) -> Tuple[Dict[str, Any], int]:
    n0, n1 = config.arguments['range']
    t = _template(config.arguments['template'], n1 + 2)
    centre = config.arguments['centre_wall']
    R = config.arguments['radius']
    report = cluster_excess_experiment(t, TemplatePoint.on_wall(max(n0 - 1, 0) if centre is None else centre), R, (n0, n1),
                                       config.arguments['rprime_mult'] * R, samples=config.arguments['samples'],
                                       mesh_step=config.arguments['mesh_step'], seed=config.seed)
    if config.arguments['csv'] is not None:
        cluster_report([report], config.arguments['csv'])
    if config.arguments['report'] is not None:
        cluster_store([report], config.arguments['report'], _meta(config))
    return report._asdict(), 0


COMMANDS: Dict[str, Callable[[RunConfig], Tuple[Dict[str, Any], int]]] = {
    'validate': _validate, 'develop': _develop, 'shoot': _shoot, 'boundary': _boundary, 'selfsim': _selfsim, 'recover': _recover,
    'special-rays': _special_rays, 'torus-demo': _torus_demo, 'cluster-exp': _cluster_exp}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """ Run one command.

    Args:
        argv: The arguments after the program name, by default ``sys.argv[1:]``.
    Returns: The exit code: 0 on success, 1 on invalid input, 2 on a computation failure.
    """
    try:
        config = RunConfig.parse(sys.argv[1:] if argv is None else argv)
    except ValueError as error:
        print(error, file=sys.stderr)
        return 1
    logging.basicConfig(level=config.log_level, stream=sys.stderr, format='%(levelname)s %(name)s: %(message)s')
    try:
        with Timer(config.command):
            content, code = COMMANDS[config.command](config)
    except ComputationError as error:
        logger.warning(f'{config.command} failed: {error}')
        print(f'{type(error).__name__}: {error}', file=sys.stderr)
        return 2
    except (ValueError, OSError) as error:
        print(f'{type(error).__name__}: {error}', file=sys.stderr)
        return 1
    print(json.dumps(content, indent=8, ensure_ascii=False))
    return code
