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

""" **Recovery** of ``beta`` and the ratios ``b1/a1``, ``b2/a2`` (and ``b1/a2``, ``b2/a1`` unless ``beta = pi/2``) from a
membership oracle.

Writing ``psi0 = arctan((a2 x2 + b2) / (a1 x1 + b1))`` and ``psi1 = arctan(k x4 / x3)`` with ``k = a4/a3``, a query is a member
iff ``(psi0, psi1)`` lies in A_beta. The search runs at ``x1 = x3 = 1`` unless stated otherwise.

1. As ``x2`` grows the ``x4``-slice shrinks onto the level ``psi1 = pi/2 - beta``. Following its midpoint out to large ``x2``
   locates ``x4_0 = cot(beta) / k``.
2. Symmetrically, as ``x4`` grows the ``x2``-slice shrinks onto ``x2_1``, where ``psi0 = pi/2 - beta``.
3. The ``x4``-slice at ``x2_1`` is bounded below by ``x4_1``, where ``psi1`` is ``pi/2 - 2 beta`` if ``beta < pi/2`` or
   ``2 beta - 3 pi/2`` if ``beta > pi/2``, and unbounded below iff ``beta = pi/2``. Otherwise
   ``k = (x4_0^2 - 2 sign(x4_0) x4_0 x4_1)^(-1/2)`` and ``beta = pi/2 - arctan(k x4_0)``.
4. At a few ``(x1, x2)`` the ``psi1`` endpoints of the ``x4``-slice determine ``psi0`` through the shape of A_beta (up to
   sign when ``beta = pi/2``, the sign being that of ``x2 - x2_1``). ``tan(psi0)`` is affine in ``x2`` for each ``x1``, with
   root ``-b2/a2`` and slope ``(a2/a1) / (x1 + b1/a1)``, whence the ratios.
"""

from __future__ import annotations

from templatelab.base.definitions import *
from templatelab.selfsim.analysis import PsiPair, in_A_beta, a_beta_slice
from templatelab.recovery.oracles import MembershipOracle, QueryCounter
import json
import scipy.optimize

logger = logging.getLogger(__name__)

#: Default keyword arguments.
META: Dict[str, Any] = {'iterations': 60, 'large': (1.0E3, 1.0E4, 1.0E5), 'escalations': 2, 'agreement': 1.0E-6, 'reach': 1.0E6,
                        'min_step': 1.0E-9, 'grid': 121, 'design': ((1.0, 2.0), (-1.0, 1.0)), 'residual_threshold': 1.0E-6,
                        'validation_samples': 2000, 'seed': 0}

Slice = Tuple[float, float]


class RecoveredData(NamedTuple):
    beta_hat: float
    r1: float   #: ``b1/a1``.
    r2: float   #: ``b2/a2``.
    cross: Optional[Tuple[float, float]]    #: ``(b1/a2, b2/a1)``, present iff ``beta_hat`` is not ``pi/2``.
    residual: float     #: The largest A_beta margin of a validation query on which the oracle and the recovered data disagree.
    queries: int = 0    #: The number of oracle calls made.

    def to_dict(self) -> Dict[str, Any]:
        return self._asdict() | {'cross': None if self.cross is None else list(self.cross)}

    def write(self, path: Path | str) -> Path:
        path = Path(path)
        with open(path, mode='w', encoding='utf-8') as file:
            json.dump(self.to_dict(), file, indent=8)
        return path


class _Located(NamedTuple):
    x4_0: float
    x2_1: float
    x4_1: float     #: ``-inf`` if the slice is unbounded below.


def _sign(member: bool) -> float:
    return 1.0 if member else -1.0


def _edge(member: Callable[[float], bool], inside: float, direction: float, options: Dict[str, Any]) -> float:
    """ The end of the interval ``{w : member(w)}`` containing ``inside`` in ``direction``, or an infinity beyond ``reach``."""
    step, inner = 1.0, inside
    outer = inside + direction * step
    while member(outer):
        if abs(outer) > options['reach']:
            return math.copysign(math.inf, direction)
        inner, step = outer, 2.0 * step
        outer = inside + direction * step
    return float(scipy.optimize.bisect(lambda w: _sign(member(w)), inner, outer, xtol=EFFECTIVELY_ZERO, rtol=4.0 * np.finfo(float).eps,
                                       maxiter=options['iterations'], disp=False))


def _slice(member: Callable[[float], bool], inside: float, options: Dict[str, Any]) -> Slice:
    return _edge(member, inside, -1.0, options), _edge(member, inside, 1.0, options)


def _middle(s: Slice, inside: float, options: Dict[str, Any]) -> float:
    lo, hi = max(s[0], inside - options['reach']), min(s[1], inside + options['reach'])
    return 0.5 * (lo + hi)


def _track(member: Callable[[float, float], bool], u: float, v: float, options: Dict[str, Any]) -> float:
    """ Follow the ``v``-slice of ``member`` as ``u`` increases, until its midpoints at consecutive large ``u`` agree.

    Returns: The last midpoint.
    Raises:
        ConvergenceError: If the slice is lost, or the midpoints never agree.
    """
    targets, midpoints, step = list(options['large']), [], 1.0
    current = _slice(lambda w: member(u, w), v, options)
    while targets:
        target = targets.pop(0)
        while u < target:
            trial, v = min(u + step, target), _middle(current, v, options)
            if member(trial, v):
                u, step = trial, 2.0 * step
                current = _slice(lambda w: member(u, w), v, options)
            else:
                step *= 0.5
                if step < options['min_step'] * max(1.0, abs(u)):
                    raise ConvergenceError(f'Lost the slice through {v} at {u}.')
        midpoints.append(_middle(current, v, options))
        if not targets and len(midpoints) >= 2:
            if abs(midpoints[-1] - midpoints[-2]) > options['agreement'] * max(1.0, abs(midpoints[-1])):
                if len(midpoints) >= len(options['large']) + options['escalations']:
                    raise ConvergenceError(f'Slice midpoints {midpoints} disagree at every query up to {u}.')
                logger.info(f'Slice midpoints {midpoints[-2:]} disagree: escalating beyond {u}.')
                targets.append(10.0 * u)
    return midpoints[-1]


def _start(query: QueryCounter, options: Dict[str, Any]) -> Tuple[float, float]:
    """ A member ``(x2, x4)`` at ``x1 = x3 = 1``, searched on a grid uniform in ``arctan(x2)`` and ``arctan(x4)``, rows nearest
    ``x4 = 0`` first.

    Raises:
        OracleError: If the oracle is degenerate.
    """
    far = options['large'][-1]
    corners = [query(1.0, u * far, 1.0, w * far) for u in (-1.0, 1.0) for w in (-1.0, 1.0)]
    if all(corners):
        raise OracleError('degenerate oracle: every query is a member.')
    if any(corners):
        raise OracleError(f'Inconsistent oracle: a member at a corner of the query square of side {far}.')
    values = np.tan(np.linspace(-HALF_PI, HALF_PI, 4 * options['grid'] + 3)[1:-1])
    for x4 in sorted(values, key=abs):
        for x2 in values:
            if query(1.0, float(x2), 1.0, float(x4)):
                return float(x2), float(x4)
    raise OracleError('degenerate oracle: no query is a member.')


def _locate(query: QueryCounter, x2: float, x4: float, options: Dict[str, Any]) -> _Located:
    x4_0 = _track(lambda u, w: query(1.0, u, 1.0, w), x2, x4, options)
    logger.info(f'Located the level pi/2 - beta at x4 = {x4_0}.')
    x2_1 = _track(lambda u, w: query(1.0, w, 1.0, u), x4, x2, options)
    logger.info(f'Located psi0 = pi/2 - beta at x2 = {x2_1}.')
    inside = max(options['large'][-1], x4)
    if not query(1.0, x2_1, 1.0, inside):
        raise OracleError(f'Inconsistent oracle: (1, {x2_1}, 1, {inside}) is not a member.')
    x4_1 = _edge(lambda w: query(1.0, x2_1, 1.0, w), inside, -1.0, options)
    logger.info(f'Located the second level at x4 = {x4_1}.')
    return _Located(x4_0, x2_1, x4_1)


def _beta(located: _Located) -> Tuple[float, Optional[float]]:
    """ ``(beta, k)``, with ``k`` None when ``beta = pi/2``.

    Raises:
        OracleError: If the located levels are inconsistent.
    """
    if math.isinf(located.x4_1):
        return HALF_PI, None
    x0, x1 = located.x4_0, located.x4_1
    denominator = x0 * x0 - 2.0 * math.copysign(1.0, x0) * x0 * x1
    if not denominator > 0.0:
        raise OracleError(f'Inconsistent oracle: levels x4 = {x0}, {x1} fit no beta.')
    k = 1.0 / math.sqrt(denominator)
    return HALF_PI - math.atan(k * x0), k


def _psi0(query: QueryCounter, x1: float, x2: float, beta: float, k: float, x2_1: float, options: Dict[str, Any],
          tol: ToleranceConfig) -> float:
    """ ``psi0(x1, x2)`` from the ``psi1`` endpoints of the ``x4``-slice at ``x3 = 1``.

    Raises:
        OracleError: If the slice is empty or fits no ``psi0``.
    """
    def member(x4: float) -> bool:
        return query(x1, x2, 1.0, x4)

    angles = np.linspace(-HALF_PI, HALF_PI, options['grid'] + 2)[1:-1]
    inside = next((float(x4) for x4 in np.tan(angles) / k if member(float(x4))), None)
    if inside is None:
        raise OracleError(f'Inconsistent oracle: no member at x1 = {x1}, x2 = {x2}.')
    lo, hi = (math.atan(k * end) if math.isfinite(end) else math.copysign(HALF_PI, end) for end in _slice(member, inside, options))
    if beta == HALF_PI:
        return math.copysign(HALF_PI - 0.5 * (hi - lo), x2 - x2_1)
    candidates = [c for c in (lo + beta, hi - beta, math.pi - beta - hi, beta - math.pi - lo) if abs(c) < HALF_PI]
    errors = [max(abs(slice_lo - lo), abs(slice_hi - hi)) for slice_lo, slice_hi in (a_beta_slice(c, beta) for c in candidates)]
    if not candidates:
        raise OracleError(f'Inconsistent oracle: the slice ({lo}, {hi}) at x1 = {x1}, x2 = {x2} fits no psi0.')
    best = int(np.argmin(errors))
    rivals = [c for c, error in zip(candidates, errors) if error <= tol.boundary_margin and abs(c - candidates[best]) > tol.boundary_margin]
    if rivals:
        logger.warning(f'The slice ({lo}, {hi}) at x1 = {x1}, x2 = {x2} fits psi0 = {candidates[best]} and {rivals}.')
    return candidates[best]


def _fit(tangents: Dict[Tuple[float, float], float]) -> Tuple[float, float, float]:
    """ ``(q, r1, r2)`` with ``tan(psi0) = q (x2 + r2) / (x1 + r1)``, from ``tan(psi0)`` at two ``x1`` by two ``x2``.

    Raises:
        OracleError: If the tangents are not affine in that form.
    """
    (x1a, x1b), (x2a, x2b) = sorted({key[0] for key in tangents}), sorted({key[1] for key in tangents})
    slopes, roots = [], []
    for x1 in (x1a, x1b):
        slope = (tangents[x1, x2b] - tangents[x1, x2a]) / (x2b - x2a)
        if not slope > 0.0:
            raise OracleError(f'Inconsistent oracle: tan(psi0) is not increasing in x2 at x1 = {x1}.')
        slopes.append(slope)
        roots.append(x2a - tangents[x1, x2a] / slope)
    run = 1.0 / slopes[1] - 1.0 / slopes[0]
    if not run > 0.0:
        raise OracleError(f'Inconsistent oracle: tan(psi0) does not flatten as x1 grows.')
    q = (x1b - x1a) / run
    return q, q / slopes[0] - x1a, -0.5 * (roots[0] + roots[1])


def _residual(query: QueryCounter, beta: float, k: float, q: float, r1: float, r2: float, options: Dict[str, Any]) -> float:
    """ The largest margin of a validation query on which the oracle disagrees with the recovered data.

    Queries are sampled uniformly in ``(psi0, psi1)`` and log-uniformly in ``x1, x3`` on ``[0.1, 10]``.
    """
    rng = np.random.default_rng(options['seed'])
    n = options['validation_samples']
    psi = rng.uniform(-HALF_PI, HALF_PI, size=(n, 2)) * (1.0 - 1.0E-9)
    x1, x3 = 10.0 ** rng.uniform(-1.0, 1.0, size=(2, n))
    x2, x4 = np.tan(psi[:, 0]) * (x1 + r1) / q - r2, np.tan(psi[:, 1]) * x3 / k
    residual = 0.0
    for i in range(n):
        recovered = in_A_beta(PsiPair(math.atan2(q * (x2[i] + r2), x1[i] + r1), math.atan2(k * x4[i], x3[i])), beta)
        if recovered.member != query(float(x1[i]), float(x2[i]), float(x3[i]), float(x4[i])):
            residual = max(residual, abs(recovered.margin))
    return residual


def recover(oracle: MembershipOracle, tol: ToleranceConfig = DEFAULT_TOLERANCE, probe_budget: int = 400000, **kwargs) -> RecoveredData:
    """ Recover ``beta`` and the ratios from a membership oracle.

    Args:
        oracle: A predicate on ``(x1, x2, x3, x4)`` in ``R^4_0``.
        tol: The tolerance policy. Cross ratios are recovered iff ``|beta_hat - pi/2| > 10 eps_angle``.
        probe_budget: The most oracle calls allowed.
        **kwargs: Overrides of ``META``.
    Returns: The RecoveredData.
    Raises:
        OracleError: If the oracle is degenerate, or inconsistent with every parameter tuple.
        BudgetExhausted: If the query budget runs out.
        ConvergenceError: If a limiting slice cannot be followed.
    """
    options = META | kwargs
    query = QueryCounter(oracle, probe_budget)
    try:
        located = _locate(query, *_start(query, options), options)
        beta, k = _beta(located)
        half = abs(beta - HALF_PI) <= 10.0 * tol.eps_angle
        if half:
            beta, k = HALF_PI, 1.0
        logger.info(f'beta = {beta}, k = {k}.')
        (x1s, x2s) = options['design']
        tangents = {(x1, located.x2_1 + dx2): math.tan(_psi0(query, x1, located.x2_1 + dx2, beta, k, located.x2_1, options, tol))
                    for x1 in x1s for dx2 in x2s}
        q, r1, r2 = _fit(tangents)
        residual = _residual(query, beta, k, q, r1, r2, options)
    except (OracleError, BudgetExhausted, ConvergenceError) as error:
        logger.warning(f'Recovery failed after {query.count} queries: {error}')
        raise
    if residual > options['residual_threshold']:
        logger.warning(f'Recovery residual {residual} exceeds {options["residual_threshold"]}.')
        raise OracleError(f'Inconsistent oracle: residual {residual} exceeds {options["residual_threshold"]}.')
    cross = None if half else (r1 / q, r2 * q)
    logger.info(f'Recovered beta = {beta}, r1 = {r1}, r2 = {r2}, cross = {cross} from {query.count} queries.')
    return RecoveredData(beta, r1, r2, cross, residual, query.count)
