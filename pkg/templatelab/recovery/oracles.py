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

""" **Membership oracles** for subsets of ``R^4_0 = {(x1, x2, x3, x4) : x1 > 0, x3 > 0}``.

A consistent oracle answers whether ``(a1 x1 + b1, a2 x2 + b2, a3 x3, a4 x4)`` is self-similar data of a template with a one
point boundary set, for hidden ``beta`` in (0, pi), ``a1..a4 > 0``, ``b1 > 0`` and real ``b2``.
"""

from __future__ import annotations

from templatelab.base.definitions import *
from templatelab.selfsim.analysis import PsiPair, in_A_beta
from templatelab.groups.graphs import VertexGeometricData
import json

logger = logging.getLogger(__name__)

Query = Tuple[float, float, float, float]
MembershipOracle = Callable[[Query], bool]


def check_query(x: Sequence[float]) -> Query:
    """ Returns ``x`` as a tuple of floats.

    Raises:
        ValueError: Unless ``x`` is a finite point of ``R^4_0``.
    """
    if len(x) != 4:
        raise ValueError(f'{x} is not a point of R^4.')
    x = tuple(float(value) for value in x)
    if not all(math.isfinite(value) for value in x):
        raise ValueError(f'{x} is not finite.')
    if not (x[0] > 0.0 and x[2] > 0.0):
        raise ValueError(f'{x} is outside R^4_0, which requires x1 > 0 and x3 > 0.')
    return x


class SyntheticOracle(NamedTuple):
    """ The membership oracle of hidden parameters. Calling it tests a query."""
    beta: float
    a: Tuple[float, float, float, float]
    b: Tuple[float, float]

    def check(self) -> SyntheticOracle:
        """ Returns ``self``, for chaining calls.

        Raises:
            ValueError: Unless ``0 < beta < pi``, every ``a_i > 0`` and ``b1 > 0``, all finite.
        """
        if len(self.a) != 4 or len(self.b) != 2:
            raise ValueError(f'An oracle needs four a and two b parameters, not {self.a}, {self.b}.')
        if not all(math.isfinite(value) for value in (self.beta,) + tuple(self.a) + tuple(self.b)):
            raise ValueError(f'Non-finite oracle parameters {self}.')
        if not 0.0 < self.beta < math.pi:
            raise ValueError(f'beta = {self.beta} is outside (0, pi).')
        if not (min(self.a) > 0.0 and self.b[0] > 0.0):
            raise ValueError(f'Oracle parameters need a_i > 0 and b1 > 0, not a = {self.a}, b = {self.b}.')
        return self

    def psi(self, x: Query) -> PsiPair:
        x1, x2, x3, x4 = check_query(x)
        a1, a2, a3, a4 = self.a
        b1, b2 = self.b
        return PsiPair(math.atan2(a2 * x2 + b2, a1 * x1 + b1), math.atan2(a4 * x4, a3 * x3))

    @property
    def ratios(self) -> Tuple[float, float, float, float]:
        """ ``(b1/a1, b2/a2, b1/a2, b2/a1)``."""
        (a1, a2, _, _), (b1, b2) = self.a, self.b
        return b1 / a1, b2 / a2, b1 / a2, b2 / a1

    def __call__(self, x: Query) -> bool:
        return in_A_beta(self.psi(x), self.beta).member

    def to_dict(self) -> Dict[str, Any]:
        return {'beta': self.beta, 'a': list(self.a), 'b': list(self.b)}

    @classmethod
    def from_dict(cls, content: Dict[str, Any]) -> SyntheticOracle:
        """ Parse ``{"beta": 1.0, "a": [1, 1, 1, 1], "b": [0.5, -0.3]}``.

        Raises:
            ValueError: If the content is malformed or the parameters invalid.
        """
        try:
            return cls(float(content['beta']), tuple(float(value) for value in content['a']),
                       tuple(float(value) for value in content['b'])).check()
        except (KeyError, TypeError) as error:
            raise ValueError(f'Malformed oracle content: {error!r}.') from error

    @classmethod
    def read(cls, path: Path | str) -> SyntheticOracle:
        path = Path(path)
        try:
            content = json.loads(path.read_text(encoding='utf-8'))
        except json.JSONDecodeError as error:
            raise ValueError(f'{path} is not valid JSON: {error}.') from error
        return cls.from_dict(content)

    def write(self, path: Path | str) -> Path:
        path = Path(path)
        with open(path, mode='w', encoding='utf-8') as file:
            json.dump(self.to_dict(), file, indent=8)
        return path


class QueryCounter:
    """ An oracle wrapper counting queries against a budget."""

    @property
    def count(self) -> int:
        return self._count

    @property
    def budget(self) -> int:
        return self._budget

    def __call__(self, x1: float, x2: float, x3: float, x4: float) -> bool:
        """ Query ``(x1, x2, x3, x4)``.

        Raises:
            BudgetExhausted: If the budget is already spent.
        """
        if self._count >= self._budget:
            raise BudgetExhausted(f'The query budget of {self._budget} is exhausted.')
        self._count += 1
        return bool(self._oracle((x1, x2, x3, x4)))

    def __init__(self, oracle: MembershipOracle, budget: int):
        if budget < 1:
            raise ValueError(f'Query budget {budget} must be positive.')
        self._oracle, self._budget, self._count = oracle, int(budget), 0


def build_oracle_from_geometric_data(v1: VertexGeometricData, v2: VertexGeometricData, beta: float) -> SyntheticOracle:
    """ The oracle answering, at ``(p, q, r, s)``, whether the special ray of an edge from ``v1`` to ``v2`` with angle ``beta``
    has a one point boundary set. The ray's self-similar data ``(beta; l_3, eps_3, l_4, eps_4)`` is ``2 (a1 p + b1, a2 q + b2,
    a3 r, a4 s)`` with

        ``a1 = MLS_v1(delta)``, ``b1 = MLS_v1(sigma)``, ``a2 = tau_v1(zeta)``, ``b2 = tau_v1(sigma)``,
        ``a3 = MLS_v2(delta)``, ``a4 = tau_v2(zeta)``,

    and the common factor 2 does not affect triviality. Each ``zeta_v`` is reoriented so ``tau_v(zeta_v) > 0``: only
    ``|tau_v(zeta_v)|`` enters the oracle. So when ``v1.tau_zeta < 0`` the oracle at ``(p, q, r, s)`` answers for the special ray
    of the given data at ``(p, -q, r, s)``, and likewise ``v2.tau_zeta < 0`` negates ``s``.

    Raises:
        ValueError: If the geometric data or ``beta`` are invalid.
    """
    v1, v2 = v1.check('v1'), v2.check('v2')
    if v1.tau_zeta < 0.0 or v2.tau_zeta < 0.0:
        logger.info('Reorienting zeta to make tau(zeta) positive.')
    return SyntheticOracle(float(beta), (v1.mls_delta, abs(v1.tau_zeta), v2.mls_delta, abs(v2.tau_zeta)),
                           (v1.mls_sigma, v1.tau_sigma)).check()
